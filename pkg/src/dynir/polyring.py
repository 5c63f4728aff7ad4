"""Dense univariate polynomials over any level of a field tower.

Provides ring arithmetic, composition and iteration, affine conjugation,
resultants and discriminants, a Rabin irreducibility test, and a complete
factorization oracle (squarefree split + distinct-degree + randomized
equal-degree splitting with a caller-supplied seed).
"""

from __future__ import annotations

import ast
import random
import re
from dataclasses import dataclass

from . import _dense
from .errors import (
    ConstantPolynomial,
    DivisionByZero,
    FieldMismatch,
    ReducibleG,
    VanishingDerivative,
    ZeroPolynomial,
    ZeroScale,
)
from .ffield import FieldDesc, FieldElem, extend_field, lift


class Poly:
    """Dense polynomial; coefficients live at one tower level of one field.

    Coefficients are stored low degree first with trailing zeros stripped,
    as canonical element indices.  Instances are immutable and hashable.
    """

    __slots__ = ("field", "level", "coeffs")

    def __init__(self, field: FieldDesc, coeffs, level: int | None = None):
        level = field.top if level is None else level
        field._check_level(level)
        idxs = []
        for c in coeffs:
            idxs.append(_coerce_idx(c, field, level))
        while idxs and idxs[-1] == 0:
            idxs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", tuple(idxs))

    def __setattr__(self, *a):  # immutability
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, field, level, idxs: list[int]) -> "Poly":
        self = object.__new__(cls)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", tuple(idxs))
        return self

    @classmethod
    def x(cls, field: FieldDesc, level: int | None = None) -> "Poly":
        return cls(field, [0, 1], level)

    @classmethod
    def constant(cls, value, field: FieldDesc, level: int | None = None) -> "Poly":
        return cls(field, [value], level)

    # -- structure ----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> FieldElem:
        if not self.coeffs:
            raise ZeroPolynomial("the zero polynomial has no leading coefficient")
        return FieldElem(self.field, self.level, self.coeffs[-1])

    def coeff(self, i: int) -> FieldElem:
        idx = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
        return FieldElem(self.field, self.level, idx)

    def _ops(self):
        return self.field.levels[self.level]

    def _lst(self) -> list[int]:
        return list(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.level == other.level and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.key, self.level, self.coeffs))

    def __repr__(self):
        return f"Poly({to_string(self)!r} over {self.field!r} level {self.level})"

    # -- arithmetic -----------------------------------------------------------

    def _match(self, other) -> "Poly":
        if isinstance(other, (int, FieldElem)):
            other = Poly(self.field, [other], self.level)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.field != other.field or self.level != other.level:
            raise FieldMismatch("polynomials over different fields or levels")
        return other

    def __add__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.field, self.level,
                         _dense.add(self._lst(), other._lst(), self._ops()))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.field, self.level,
                         _dense.sub(self._lst(), other._lst(), self._ops()))

    def __rsub__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.field, self.level,
                         _dense.sub(other._lst(), self._lst(), self._ops()))

    def __neg__(self):
        return Poly._raw(self.field, self.level,
                         _dense.neg(self._lst(), self._ops()))

    def __mul__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.field, self.level,
                         _dense.mul(self._lst(), other._lst(), self._ops()))

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroPolynomial("division by the zero polynomial")
        q, r = _dense.divmod_(self._lst(), other._lst(), self._ops())
        return (Poly._raw(self.field, self.level, q),
                Poly._raw(self.field, self.level, r))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Poly(self.field, [1], self.level)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __call__(self, point):
        """Evaluate; the point may live at the same or a higher level."""
        if isinstance(point, int):
            point = self.field.elem(point, self.level)
        if point.level < self.level:
            point = lift(point, self.field, self.level)
        acc = point.field.zero(point.level)
        for idx in reversed(self.coeffs):
            c = lift(FieldElem(self.field, self.level, idx),
                     point.field, point.level)
            acc = acc * point + c
        return acc

    def derivative(self) -> "Poly":
        ops = self._ops()
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(ops.mul(self.coeffs[i], ops.embed_int(i)))
        return Poly._raw(self.field, self.level, _dense.trim(out))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        m, _ = _dense.monic(self._lst(), self._ops())
        return Poly._raw(self.field, self.level, m)

    def gcd(self, other: "Poly") -> "Poly":
        other = self._match(other)
        return Poly._raw(self.field, self.level,
                         _dense.gcd(self._lst(), other._lst(), self._ops()))

    def shift_constant(self, delta) -> "Poly":
        """self + delta as polynomials (delta a constant)."""
        return self + Poly(self.field, [delta], self.level)


def _coerce_idx(c, field: FieldDesc, level: int) -> int:
    if isinstance(c, FieldElem):
        return lift(c, field, level).idx
    if isinstance(c, int):
        return field.levels[level].embed_int(c)
    if isinstance(c, (list, tuple)):
        return field.elem(c, level).idx
    raise TypeError(f"bad coefficient {c!r}")


def lift_poly(f: Poly, field: FieldDesc, level: int | None = None) -> Poly:
    """Reinterpret the coefficients at a compatible higher level."""
    level = field.top if level is None else level
    if not field.compatible_prefix(f.field, f.level):
        raise FieldMismatch("towers disagree below the polynomial's level")
    if level < f.level:
        raise FieldMismatch("cannot lift a polynomial downward")
    return Poly._raw(field, level, list(f.coeffs))


# ---------------------------------------------------------------------------
# composition and conjugation
# ---------------------------------------------------------------------------

def compose(g: Poly, f: Poly) -> Poly:
    """g(f(x)) by Horner's rule."""
    g._match(f)
    acc = Poly(g.field, [], g.level)
    for idx in reversed(g.coeffs):
        acc = acc * f + Poly._raw(g.field, g.level, [idx] if idx else [])
    return acc


def iterate(f: Poly, n: int) -> Poly:
    """n-fold self-composition; iterate(f, 0) = x."""
    if n < 0:
        raise ValueError("iteration count must be nonnegative")
    acc = Poly.x(f.field, f.level)
    for _ in range(n):
        acc = compose(f, acc)
    return acc


def affine_conjugate(f: Poly, c, alpha) -> Poly:
    """phi o f o phi^-1 for phi(x) = c*x + alpha, c nonzero."""
    c = f.field.elem(c, f.level)
    alpha = f.field.elem(alpha, f.level)
    if c.is_zero():
        raise ZeroScale("conjugation scale must be nonzero")
    cinv = c.inverse()
    inner = Poly(f.field, [-alpha * cinv, cinv], f.level)  # phi^-1
    out = compose(f, inner) * Poly(f.field, [c], f.level)
    return out.shift_constant(alpha)


# ---------------------------------------------------------------------------
# resultant and discriminant
# ---------------------------------------------------------------------------

def resultant(f: Poly, g: Poly) -> FieldElem:
    """Res(f, g) = lc(f)^deg(g) * prod g(root_i), via Euclidean reduction."""
    f._match(g)
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant needs nonzero polynomials")
    field, level = f.field, f.level
    acc = field.one(level)
    a, b = f, g
    while True:
        if a.degree == 0:
            return acc * a.lc ** b.degree
        if b.degree == 0:
            return acc * b.lc ** a.degree
        if a.degree < b.degree:
            if (a.degree * b.degree) % 2:
                acc = -acc
            a, b = b, a
        r = a % b
        if r.is_zero():
            return field.zero(level)
        if (a.degree * b.degree) % 2:
            acc = -acc
        acc = acc * b.lc ** (a.degree - r.degree)
        a, b = b, r


def discriminant(f: Poly) -> FieldElem:
    """(-1)^(d(d-1)/2) * lc^(d-k-2) * Res(f, f') with k = deg f'."""
    if f.degree < 2:
        raise ConstantPolynomial("discriminant needs degree >= 2")
    fp = f.derivative()
    if fp.is_zero():
        raise VanishingDerivative("inseparable polynomial")
    d, k = f.degree, fp.degree
    res = resultant(f, fp)
    out = f.lc ** (d - k - 2) * res
    if (d * (d - 1) // 2) % 2:
        out = -out
    return out


# ---------------------------------------------------------------------------
# irreducibility and factorization
# ---------------------------------------------------------------------------

def is_irreducible(f: Poly) -> bool:
    if f.degree < 1:
        raise ConstantPolynomial("irreducibility is for degree >= 1")
    return _dense.is_irreducible(f._lst(), f._ops(),
                                 f.field.cardinality(f.level))


@dataclass(frozen=True)
class FactorList:
    """Complete factorization: unit * prod(factor^multiplicity)."""

    factors: tuple[tuple[Poly, int], ...]
    unit: FieldElem
    seed: int = 0

    def expand(self) -> Poly:
        field = self.unit.field
        out = Poly(field, [self.unit], self.unit.level)
        for poly, mult in self.factors:
            out = out * poly ** mult
        return out


def factor(f: Poly, seed: int = 0) -> FactorList:
    """Factor into monic irreducibles (squarefree + DDF + seeded EDF)."""
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    field, level, ops = f.field, f.level, f._ops()
    unit = f.lc
    if f.degree == 0:
        return FactorList((), unit, seed)
    rng = random.Random(seed)
    work = f.monic()._lst()
    q = field.cardinality(level)
    distinct: list[list[int]] = []
    while _dense.deg(work) > 0:
        deriv = _deriv(work, ops)
        if not deriv:
            work = _pth_root(work, ops, q, field.p)
            continue
        sf = _dense.divmod_(work, _dense.gcd(work, deriv, ops), ops)[0]
        new = _factor_squarefree(sf, ops, q, field.p, rng)
        for phi in new:
            if phi not in distinct:
                distinct.append(phi)
            while True:
                quo, rem_ = _dense.divmod_(work, phi, ops)
                if rem_:
                    break
                work = quo
    pairs = []
    original = f.monic()._lst()
    for phi in distinct:
        mult = 0
        cur = original
        while True:
            quo, rem_ = _dense.divmod_(cur, phi, ops)
            if rem_:
                break
            cur = quo
            mult += 1
        pairs.append((Poly._raw(field, level, phi), mult))
    pairs.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return FactorList(tuple(pairs), unit, seed)


def _deriv(c: list[int], ops) -> list[int]:
    out = [ops.mul(c[i], ops.embed_int(i)) for i in range(1, len(c))]
    return _dense.trim(out)


def _pth_root(c: list[int], ops, q: int, p: int) -> list[int]:
    # c is a polynomial in x^p; take the p-th root coefficient-wise
    e = q // p
    out = []
    for i in range(0, len(c), p):
        out.append(ops.pow_idx(c[i], e) if hasattr(ops, "pow_idx")
                   else pow(c[i], e, p))
    return _dense.trim(out)


def _factor_squarefree(sf, ops, q, p, rng) -> list[list[int]]:
    """Distinct-degree then equal-degree factorization of a monic
    squarefree polynomial; returns monic irreducible factors."""
    out = []
    rest = list(sf)
    x = [0, 1]
    h = x
    i = 1
    while 2 * i <= _dense.deg(rest):
        ctx = _dense.ModCtx(rest, ops)
        h = ctx.powmod(h, q)
        g = _dense.gcd(_dense.sub(h, x, ops), rest, ops)
        if _dense.deg(g) > 0:
            out.extend(_edf(g, i, ops, q, p, rng))
            rest = _dense.divmod_(rest, g, ops)[0]
            h = _dense.rem(h, rest, ops) if _dense.deg(rest) > 0 else h
        i += 1
    if _dense.deg(rest) > 0:
        out.append(rest)
    return out


def _edf(g, k, ops, q, p, rng) -> list[list[int]]:
    """Split a squarefree product of degree-k irreducibles."""
    if _dense.deg(g) == k:
        return [g]
    ctx = _dense.ModCtx(g, ops)
    n = _dense.deg(g)
    while True:
        r = _dense.trim([rng.randrange(q) for _ in range(n)])
        if _dense.deg(r) < 1:
            continue
        r = [_idx_from_rand(c, ops, q) for c in r]
        if p == 2:
            t = q.bit_length() - 1
            h = list(r)
            acc = list(r)
            for _ in range(k * t - 1):
                h = ctx.mulmod(h, h)
                acc = _dense.add(acc, h, ops)
            cand = _dense.gcd(acc, g, ops)
        else:
            h = ctx.powmod(r, (q ** k - 1) // 2)
            cand = _dense.gcd(_dense.sub(h, [1], ops), g, ops)
        if 0 < _dense.deg(cand) < _dense.deg(g):
            rest = _dense.divmod_(g, cand, ops)[0]
            return (_edf(cand, k, ops, q, p, rng)
                    + _edf(rest, k, ops, q, p, rng))


def _idx_from_rand(c: int, ops, q: int) -> int:
    # random draws are already uniform indices in [0, q)
    return c % q


def roots_in_field(f: Poly) -> list[FieldElem]:
    """Roots in the polynomial's own coefficient field, with multiplicity."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has every root")
    field, level, ops = f.field, f.level, f._ops()
    if f.degree == 0:
        return []
    q = field.cardinality(level)
    m = f.monic()._lst()
    ctx = _dense.ModCtx(m, ops)
    xq = ctx.powmod([0, 1], q)
    lin = _dense.gcd(_dense.sub(xq, [0, 1], ops), m, ops)
    roots = []
    for phi in _edf_all_linear(lin, ops, q, field.p):
        root = FieldElem(field, level, ops.neg(phi[0]))
        mult = 0
        cur = list(f.coeffs)
        while True:
            quo, rem_ = _dense.divmod_(cur, phi, ops)
            if rem_:
                break
            cur = quo
            mult += 1
        roots.extend([root] * mult)
    roots.sort(key=FieldElem.lex_key)
    return roots


def _edf_all_linear(lin, ops, q, p) -> list[list[int]]:
    if _dense.deg(lin) < 1:
        return []
    rng = random.Random(0x5eed)
    return _edf(lin, 1, ops, q, p, rng)


def capelli_consistency(g: Poly, f: Poly) -> bool:
    """Check that irreducibility of g(f(x)) over the base field equals
    irreducibility of f(x) - beta over the extension defined by g.
    A self-test of the composition criterion: always true for irreducible g.
    """
    g._match(f)
    if not is_irreducible(g):
        raise ReducibleG("the outer polynomial must be irreducible")
    lhs = is_irreducible(compose(g, f))
    base = g.field.prefix(g.level)
    ext = extend_field(base, g.monic()._lst(), verify=False)
    beta = ext.gen()
    f_up = lift_poly(f, ext, ext.top)
    rhs = is_irreducible(f_up - Poly(ext, [beta]))
    return lhs == rhs


# ---------------------------------------------------------------------------
# text and JSON forms
# ---------------------------------------------------------------------------

def to_string(f: Poly) -> str:
    """Human form a_d*x^d + ... + a_0 (integer coefficients at level 0,
    nested coefficient vectors in brackets above it)."""
    if f.is_zero():
        return "0"
    parts = []
    for i in range(f.degree, -1, -1):
        idx = f.coeffs[i] if i < len(f.coeffs) else 0
        if idx == 0:
            continue
        c = FieldElem(f.field, f.level, idx)
        cs = str(c.vector()) if f.level > 0 else str(c.vector())
        if i == 0:
            parts.append(cs)
        else:
            xs = "x" if i == 1 else f"x^{i}"
            parts.append(xs if idx == 1 else f"{cs}*{xs}")
    return " + ".join(parts)


_TERM_RE = re.compile(
    r"^(?P<coeff>\[.*\]|\d+)?\s*\*?\s*(?P<x>x(?:\^(?P<exp>\d+))?)?$")


def from_string(s: str, field: FieldDesc, level: int | None = None) -> Poly:
    """Parse integer-coefficient expressions in x (optionally with
    bracketed coefficient vectors for extension levels)."""
    level = field.top if level is None else level
    terms = _split_terms(s)
    if not terms:
        raise ValueError(f"cannot parse polynomial {s!r}")
    acc: dict[int, FieldElem] = {}
    for sign, body in terms:
        m = _TERM_RE.match(body.strip())
        if not m or (m.group("coeff") is None and m.group("x") is None):
            raise ValueError(f"cannot parse term {body!r} in {s!r}")
        coeff_s = m.group("coeff")
        if coeff_s is None:
            c = field.one(level)
        elif coeff_s.startswith("["):
            c = field.elem(ast.literal_eval(coeff_s), level)
        else:
            c = field.elem(int(coeff_s), level)
        if sign == "-":
            c = -c
        exp = 0
        if m.group("x"):
            exp = int(m.group("exp")) if m.group("exp") else 1
        acc[exp] = acc.get(exp, field.zero(level)) + c
    n = max(acc) + 1
    coeffs = [acc.get(i, field.zero(level)) for i in range(n)]
    return Poly(field, coeffs, level)


def _split_terms(s: str) -> list[tuple[str, str]]:
    out = []
    sign, buf, depth = "+", [], 0
    for ch in s.replace(" ", ""):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch in "+-" and depth == 0 and buf:
            out.append((sign, "".join(buf)))
            sign, buf = ch, []
        elif ch in "+-" and depth == 0:
            sign = "-" if (sign == "-") != (ch == "-") else "+"
        else:
            buf.append(ch)
    if buf:
        out.append((sign, "".join(buf)))
    return out


def poly_to_json(f: Poly) -> dict:
    return {
        "field": {
            "p": f.field.p,
            "tower_degrees": [f.field.levels[k].degree
                              for k in range(1, f.level + 1)],
        },
        "coeffs": [FieldElem(f.field, f.level, i).vector() for i in f.coeffs],
    }


def poly_from_json(data: dict, field: FieldDesc) -> Poly:
    level = len(data["field"]["tower_degrees"])
    if data["field"]["p"] != field.p:
        raise FieldMismatch("characteristic disagrees with the field")
    coeffs = data["coeffs"]
    if level == 0:
        return Poly(field, [int(c) for c in coeffs], 0)
    return Poly(field, coeffs, level)
