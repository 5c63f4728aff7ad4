"""Finite fields presented as towers of extensions.

A field is described by a prime p and an ordered list of monic irreducible
moduli; modulus i is a polynomial over the field determined by the moduli
below it.  Level 0 is the prime field, level k the quotient by modulus k.

Elements are stored as a single mixed-radix index: an element of level k
with reduced coefficient vector (c_0, ..., c_{d-1}) over level k-1 has
index sum(idx(c_i) * Q_{k-1}^i).  Under this encoding the embedding of a
lower level into a higher one is the identity on indices, and membership
in the tower subfield of cardinality Q_j is exactly ``index < Q_j``.

Canonical order.  Wherever a deterministic choice among field elements is
needed (smallest irreducible modulus, canonical square root, residue
witnesses, auxiliary nonresidues) we use one total order: lexicographic
comparison of reduced coefficient vectors, lowest-degree coefficient
first, applied recursively down the tower.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import _dense
from .errors import (
    BadModulus,
    CharacteristicThree,
    CompositeCharacteristic,
    DegreeZero,
    DivisionByZero,
    EvenCharacteristic,
    ExponentSharesCharacteristic,
    FieldMismatch,
)

_TABLE_LIMIT = 64  # cache full op tables for levels with at most this many elements

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class _PrimeLevel:
    """Level 0: residues mod p.  Serves as its own coefficient-ops adapter."""

    __slots__ = ("p", "order", "char", "prime_p", "_nonres")

    def __init__(self, p: int):
        self.p = p
        self.order = p
        self.char = p
        self.prime_p = p
        self._nonres = {}

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def embed_int(self, n: int) -> int:
        return n % self.p

    def pow_idx(self, a, e: int):
        if e < 0 and a == 0:
            raise DivisionByZero("negative power of zero")
        return pow(a, e, self.p)

    def lex_key(self, a):
        return a

    def enumerate_canonical(self):
        return iter(range(self.p))

    def idx_to_vec(self, a):
        return [a] if a else []

    def vec_to_idx(self, vec):
        return vec[0] if vec else 0


class _ExtLevel:
    """Extension level: quotient of the level below by a monic modulus."""

    __slots__ = ("below", "modulus", "degree", "order", "radix", "char",
                 "prime_p", "ctx", "_mul_t", "_add_t", "_neg_t", "_inv_t",
                 "_nonres")

    def __init__(self, below, modulus):
        self.below = below
        self.modulus = tuple(modulus)
        self.degree = len(modulus) - 1
        self.radix = below.order
        self.order = below.order ** self.degree
        self.char = below.char
        self.prime_p = None
        self.ctx = _dense.ModCtx(list(modulus), below)
        self._mul_t = self._add_t = self._neg_t = self._inv_t = None
        self._nonres = {}

    # -- index <-> coefficient-vector ------------------------------------

    def idx_to_vec(self, a: int) -> list[int]:
        vec = []
        while a:
            a, r = divmod(a, self.radix)
            vec.append(r)
        return vec

    def vec_to_idx(self, vec) -> int:
        a = 0
        for c in reversed(vec):
            a = a * self.radix + c
        return a

    # -- op tables for small levels ---------------------------------------

    def _build_tables(self):
        n = self.order
        mul_t = [[0] * n for _ in range(n)]
        add_t = [[0] * n for _ in range(n)]
        vecs = [self.idx_to_vec(i) for i in range(n)]
        for i in range(n):
            for j in range(i, n):
                m = self.vec_to_idx(self.ctx.mulmod(vecs[i], vecs[j]))
                mul_t[i][j] = mul_t[j][i] = m
                s = self.vec_to_idx(_dense.add(vecs[i], vecs[j], self.below))
                add_t[i][j] = add_t[j][i] = s
        self._neg_t = [self.vec_to_idx(_dense.neg(v, self.below)) for v in vecs]
        self._inv_t = [0] + [
            self.vec_to_idx(_dense.invmod(vecs[i], list(self.modulus), self.below))
            for i in range(1, n)
        ]
        self._mul_t, self._add_t = mul_t, add_t

    def _tables_ready(self) -> bool:
        if self._mul_t is None and self.order <= _TABLE_LIMIT:
            self._build_tables()
        return self._mul_t is not None

    # -- element ops on indices -------------------------------------------

    def add(self, a, b):
        if self._tables_ready():
            return self._add_t[a][b]
        return self.vec_to_idx(
            _dense.add(self.idx_to_vec(a), self.idx_to_vec(b), self.below))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        if self._tables_ready():
            return self._neg_t[a]
        return self.vec_to_idx(_dense.neg(self.idx_to_vec(a), self.below))

    def mul(self, a, b):
        if self._tables_ready():
            return self._mul_t[a][b]
        return self.vec_to_idx(
            self.ctx.mulmod(self.idx_to_vec(a), self.idx_to_vec(b)))

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self._tables_ready():
            return self._inv_t[a]
        return self.vec_to_idx(
            _dense.invmod(self.idx_to_vec(a), list(self.modulus), self.below))

    def embed_int(self, n: int) -> int:
        return self.below.embed_int(n)

    def pow_idx(self, a, e: int):
        if a == 0:
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return 0 if e else 1
        try:
            return self.vec_to_idx(self.ctx.powmod(self.idx_to_vec(a), e))
        except ZeroDivisionError:  # pragma: no cover - a != 0 is invertible
            raise DivisionByZero("negative power of zero") from None

    def lex_key(self, a):
        vec = self.idx_to_vec(a)
        vec += [0] * (self.degree - len(vec))
        return tuple(self.below.lex_key(c) for c in vec)

    def enumerate_canonical(self):
        # Lexicographic, lowest coefficient most significant; lazy odometer
        # so huge levels can be scanned from the front.
        d = self.degree
        digits: list[int] = []
        stack = [self.below.enumerate_canonical()]
        while stack:
            try:
                v = next(stack[-1])
            except StopIteration:
                stack.pop()
                if digits:
                    digits.pop()
                continue
            if len(stack) == d:
                yield self.vec_to_idx(digits + [v])
            else:
                digits.append(v)
                stack.append(self.below.enumerate_canonical())


class FieldDesc:
    """A finite field with its tower of defining moduli.

    Value object: two descriptions with the same characteristic and the
    same moduli are the same field, and their elements interoperate.
    """

    __slots__ = ("p", "levels", "key", "top")

    def __init__(self, p: int, levels: tuple, key: tuple):
        self.p = p
        self.levels = levels
        self.key = key
        self.top = len(levels) - 1

    # -- construction ------------------------------------------------------

    @staticmethod
    def _make(p: int, moduli: tuple[tuple[int, ...], ...]) -> "FieldDesc":
        levels: list = [_PrimeLevel(p)]
        for m in moduli:
            levels.append(_ExtLevel(levels[-1], m))
        return FieldDesc(p, tuple(levels), (p, tuple(moduli)))

    def _extended(self, modulus: tuple[int, ...]) -> "FieldDesc":
        levels = self.levels + (_ExtLevel(self.levels[-1], modulus),)
        return FieldDesc(self.p, levels, (self.p, self.key[1] + (modulus,)))

    def prefix(self, level: int) -> "FieldDesc":
        """The subtower consisting of levels 0..level."""
        self._check_level(level)
        if level == self.top:
            return self
        return FieldDesc(self.p, self.levels[:level + 1],
                         (self.p, self.key[1][:level]))

    # -- structure ----------------------------------------------------------

    def _check_level(self, level: int):
        if not 0 <= level <= self.top:
            raise FieldMismatch(f"no level {level} in a {self.top + 1}-level tower")

    def cardinality(self, level: int | None = None) -> int:
        level = self.top if level is None else level
        self._check_level(level)
        return self.levels[level].order

    def degree_of(self, level: int) -> int:
        """Degree of the modulus defining `level` (1 for the prime level)."""
        self._check_level(level)
        return 1 if level == 0 else self.levels[level].degree

    def extension_degree(self, hi: int, lo: int) -> int:
        self._check_level(hi)
        self._check_level(lo)
        d = 1
        for k in range(lo + 1, hi + 1):
            d *= self.levels[k].degree
        return d

    def total_degree(self, level: int | None = None) -> int:
        level = self.top if level is None else level
        return self.extension_degree(level, 0)

    def modulus_vector(self, level: int) -> tuple[int, ...]:
        self._check_level(level)
        if level == 0:
            raise FieldMismatch("the prime level has no modulus")
        return self.levels[level].modulus

    def compatible_prefix(self, other: "FieldDesc", level: int) -> bool:
        """True if both towers agree on levels 0..level."""
        return (self.p == other.p
                and level <= min(self.top, other.top)
                and self.key[1][:level] == other.key[1][:level])

    # -- element constructors -----------------------------------------------

    def elem(self, value, level: int | None = None) -> "FieldElem":
        level = self.top if level is None else level
        self._check_level(level)
        if isinstance(value, FieldElem):
            return lift(value, self, level)
        if isinstance(value, int):
            return FieldElem(self, level, self.levels[level].embed_int(value))
        if isinstance(value, (list, tuple)):
            return FieldElem(self, level, self._vec_value(value, level))
        raise TypeError(f"cannot make a field element from {value!r}")

    def _vec_value(self, vec, level: int) -> int:
        lv = self.levels[level]
        if level == 0:
            raise FieldMismatch("prime-level elements are plain integers")
        if len(vec) > lv.degree:
            raise FieldMismatch("coefficient vector longer than the level degree")
        digits = []
        for c in vec:
            if isinstance(c, int):
                digits.append(self.levels[level - 1].embed_int(c))
            else:
                digits.append(self._vec_value(c, level - 1))
        return lv.vec_to_idx(digits)

    def zero(self, level: int | None = None) -> "FieldElem":
        return FieldElem(self, self.top if level is None else level, 0)

    def one(self, level: int | None = None) -> "FieldElem":
        return FieldElem(self, self.top if level is None else level, 1)

    def gen(self, level: int | None = None) -> "FieldElem":
        """Residue class of x at the given level."""
        level = self.top if level is None else level
        self._check_level(level)
        if level == 0:
            raise FieldMismatch("the prime level has no generator")
        lv = self.levels[level]
        if lv.degree == 1:  # x reduces to the constant -modulus[0]
            return FieldElem(self, level, lv.below.neg(lv.modulus[0]))
        return FieldElem(self, level, lv.radix)

    def from_index(self, idx: int, level: int | None = None) -> "FieldElem":
        level = self.top if level is None else level
        self._check_level(level)
        if not 0 <= idx < self.levels[level].order:
            raise FieldMismatch("index out of range for this level")
        return FieldElem(self, level, idx)

    def elements(self, level: int | None = None):
        """All elements at a level, in canonical order."""
        level = self.top if level is None else level
        self._check_level(level)
        for idx in self.levels[level].enumerate_canonical():
            yield FieldElem(self, level, idx)

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldDesc) and (
            self is other or self.key == other.key)

    def __hash__(self):
        return hash(self.key)

    def __reduce__(self):
        return (FieldDesc._make, (self.p, self.key[1]))

    def __repr__(self):
        d = self.total_degree()
        name = f"GF({self.p})" if d == 1 else f"GF({self.p}^{d})"
        degs = [self.levels[k].degree for k in range(1, self.top + 1)]
        return f"{name} tower{degs}" if degs else name


@dataclass(frozen=True, slots=True, eq=False)
class FieldElem:
    """An element of one level of a field tower, in canonical reduced form.

    Equality and hashing look only at the tower below the element's level,
    so the same element seen through two towers with a common prefix
    compares equal.
    """

    field: FieldDesc
    level: int
    idx: int

    def _id_key(self):
        return (self.field.p, self.field.key[1][:self.level],
                self.level, self.idx)

    def __eq__(self, other):
        return isinstance(other, FieldElem) and self._id_key() == other._id_key()

    def __hash__(self):
        return hash(self._id_key())

    # -- representation -----------------------------------------------------

    def vector(self):
        """Nested reduced coefficient lists (a plain int at the prime level)."""
        return _nested_vec(self.field.levels, self.level, self.idx)

    def lex_key(self):
        return self.field.levels[self.level].lex_key(self.idx)

    def is_zero(self) -> bool:
        return self.idx == 0

    def in_subfield(self, level: int) -> bool:
        """Membership in the tower subfield at the given lower level."""
        self.field._check_level(level)
        return self.idx < self.field.cardinality(level)

    def __bool__(self):
        return self.idx != 0

    def __repr__(self):
        d = self.field.total_degree(self.level)
        name = f"F{self.field.p}" if d == 1 else f"F{self.field.p}^{d}"
        return f"{name}:{self.vector()!r}"

    # -- arithmetic -----------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, int):
            other = self.field.elem(other, self.level)
        if not isinstance(other, FieldElem):
            return None, None
        a, b = self, other
        if a.field is not b.field and a.field != b.field:
            # distinct towers may still share a prefix up to the lower level
            lo = min(a.level, b.level)
            if not a.field.compatible_prefix(b.field, lo):
                raise FieldMismatch("elements of unrelated fields")
        if a.level < b.level:
            a = lift(a, b.field, b.level)
        elif b.level < a.level:
            b = lift(b, a.field, a.level)
        elif a.field != b.field:
            raise FieldMismatch("same level but different towers")
        return a, b

    def _binop(self, other, opname):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        lv = a.field.levels[a.level]
        return FieldElem(a.field, a.level, getattr(lv, opname)(a.idx, b.idx))

    def __add__(self, other):
        return self._binop(other, "add")

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, "sub")

    def __rsub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        lv = a.field.levels[a.level]
        return FieldElem(a.field, a.level, lv.sub(b.idx, a.idx))

    def __mul__(self, other):
        return self._binop(other, "mul")

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        lv = a.field.levels[a.level]
        return FieldElem(a.field, a.level, lv.mul(a.idx, lv.inv(b.idx)))

    def __rtruediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        lv = a.field.levels[a.level]
        return FieldElem(a.field, a.level, lv.mul(b.idx, lv.inv(a.idx)))

    def __neg__(self):
        lv = self.field.levels[self.level]
        return FieldElem(self.field, self.level, lv.neg(self.idx))

    def __pow__(self, e: int):
        lv = self.field.levels[self.level]
        return FieldElem(self.field, self.level, lv.pow_idx(self.idx, e))

    def inverse(self):
        lv = self.field.levels[self.level]
        return FieldElem(self.field, self.level, lv.inv(self.idx))


def _nested_vec(levels, level, idx):
    if level == 0:
        return idx
    lv = levels[level]
    vec = lv.idx_to_vec(idx)
    vec += [0] * (lv.degree - len(vec))
    return [_nested_vec(levels, level - 1, c) for c in vec]


@dataclass(frozen=True, slots=True)
class ResidueVerdict:
    """Outcome of an r-th-power test, with an explicit root when one exists."""

    value: FieldElem
    r: int
    is_rth_power: bool
    witness: FieldElem | None = None


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def build_field(p: int, degrees: list[int] | None = None) -> FieldDesc:
    """Build the tower F_p < F_p^d1 < ... with deterministic moduli.

    Each step uses the lexicographically smallest monic irreducible
    polynomial of the requested degree over the level beneath it
    (coefficients compared lowest degree first).  Degree-1 steps are the
    field itself and add no level, so ``build_field(p, [1])`` is F_p.
    """
    if not is_prime(p):
        raise CompositeCharacteristic(f"{p} is not prime")
    degrees = [1] if degrees is None else list(degrees)
    if not degrees:
        raise DegreeZero("degrees must be nonempty")
    for d in degrees:
        if not isinstance(d, int) or d < 1:
            raise DegreeZero(f"invalid extension degree {d!r}")
    desc = FieldDesc._make(p, ())
    for d in degrees:
        if d == 1:
            continue
        desc = desc._extended(_smallest_irreducible(desc.levels[-1], d))
    return desc


def _smallest_irreducible(level, d: int) -> tuple[int, ...]:
    elems = list(level.enumerate_canonical())
    for lower in itertools.product(elems, repeat=d):
        cand = list(lower) + [1]
        if cand[0] == 0:
            continue  # divisible by x
        if _dense.is_irreducible(cand, level, level.order):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def extend_field(field: FieldDesc, modulus, *, verify: bool = True) -> FieldDesc:
    """Extend the tower at the top by a given monic modulus.

    `modulus` is a low-first coefficient list (ints or FieldElems at the
    current top level).  With ``verify=False`` the irreducibility check is
    skipped; callers use this when irreducibility is guaranteed by
    construction (e.g. inductive tower steps).
    """
    top = field.levels[-1]
    coeffs = []
    for c in modulus:
        if isinstance(c, FieldElem):
            c = lift(c, field, field.top).idx
        elif isinstance(c, int):
            c = top.embed_int(c)
        elif isinstance(c, (list, tuple)):
            c = field._vec_value(c, field.top) if field.top else top.embed_int(c[0])
        else:
            raise TypeError(f"bad modulus coefficient {c!r}")
        coeffs.append(c)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        raise DegreeZero("modulus must have degree >= 1")
    if coeffs[-1] != 1:
        raise BadModulus("modulus must be monic")
    if verify and not _dense.is_irreducible(coeffs, top, top.order):
        raise BadModulus("modulus is reducible over the level beneath it")
    return field._extended(tuple(coeffs))


def lift(a: FieldElem, field: FieldDesc, level: int | None = None) -> FieldElem:
    """Embed an element into a compatible tower at the same or higher level."""
    level = field.top if level is None else level
    field._check_level(level)
    if level < a.level:
        raise FieldMismatch("cannot lift to a lower level; use lower()")
    if not field.compatible_prefix(a.field, a.level):
        raise FieldMismatch("towers disagree below the element's level")
    return FieldElem(field, level, a.idx)


def lower(a: FieldElem, level: int) -> FieldElem:
    """Rewrite an element at a lower tower level it actually belongs to."""
    a.field._check_level(level)
    if level > a.level:
        raise FieldMismatch("use lift() to go up")
    if not a.in_subfield(level):
        raise FieldMismatch("element does not lie in that subfield")
    return FieldElem(a.field, level, a.idx)


# ---------------------------------------------------------------------------
# arithmetic entry points
# ---------------------------------------------------------------------------

def arith(a: FieldElem, b, op: str) -> FieldElem:
    """Dispatch {add, sub, mul, div, pow}; pow takes an integer exponent."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        if not isinstance(b, int):
            raise TypeError("pow exponent must be an integer")
        return a ** b
    raise ValueError(f"unknown operation {op!r}")


def frobenius(a: FieldElem, base_level: int) -> FieldElem:
    """a^Q for Q the cardinality of the tower field at base_level."""
    a.field._check_level(base_level)
    if base_level > a.level:
        raise FieldMismatch("base level must lie at or below the element")
    return a ** a.field.cardinality(base_level)


def norm(a: FieldElem, down_to: int) -> FieldElem:
    """Product of Galois conjugates, returned at the lower level."""
    a.field._check_level(down_to)
    if down_to > a.level:
        raise FieldMismatch("norm target must lie at or below the element")
    if a.idx == 0:
        return a.field.zero(down_to)
    q_top = a.field.cardinality(a.level)
    q_down = a.field.cardinality(down_to)
    w = a ** ((q_top - 1) // (q_down - 1))
    assert w.idx < q_down, "norm landed outside the target subfield"
    return FieldElem(a.field, down_to, w.idx)


def trace(a: FieldElem, down_to: int) -> FieldElem:
    """Sum of Galois conjugates, returned at the lower level."""
    a.field._check_level(down_to)
    if down_to > a.level:
        raise FieldMismatch("trace target must lie at or below the element")
    q_down = a.field.cardinality(down_to)
    m = a.field.extension_degree(a.level, down_to)
    acc = a
    conj = a
    for _ in range(m - 1):
        conj = conj ** q_down
        acc = acc + conj
    assert acc.idx < q_down, "trace landed outside the target subfield"
    return FieldElem(a.field, down_to, acc.idx)


# ---------------------------------------------------------------------------
# square roots and power residues
# ---------------------------------------------------------------------------

def _min_lex(elems):
    return min(elems, key=FieldElem.lex_key)


def _nonresidue(field: FieldDesc, level: int, ell: int) -> FieldElem:
    """Lexicographically smallest non-ell-th-power at the level (cached)."""
    lv = field.levels[level]
    cached = lv._nonres.get(ell)
    if cached is not None:
        return FieldElem(field, level, cached)
    q1 = lv.order - 1
    e = q1 // ell
    for idx in lv.enumerate_canonical():
        if idx == 0:
            continue
        if lv.pow_idx(idx, e) != 1:
            lv._nonres[ell] = idx
            return FieldElem(field, level, idx)
    raise AssertionError(f"no non-{ell}th-residue found")  # pragma: no cover


def sqrt(a: FieldElem) -> FieldElem | None:
    """Canonical square root (lex-smaller of the pair), or None.

    Deterministic Tonelli-Shanks; the auxiliary nonresidue is the
    lexicographically smallest one.
    """
    field = a.field
    if field.p == 2:
        raise EvenCharacteristic("square roots here require odd characteristic")
    if a.idx == 0:
        return a
    q = field.cardinality(a.level)
    if a ** ((q - 1) // 2) != field.one(a.level):
        return None
    m, e = q - 1, 0
    while m % 2 == 0:
        m //= 2
        e += 1
    if e == 1:
        w = a ** ((q + 1) // 4)
    else:
        z = _nonresidue(field, a.level, 2)
        c = z ** m
        t = a ** m
        w = a ** ((m + 1) // 2)
        one = field.one(a.level)
        while t != one:
            t2 = t
            i = 0
            while t2 != one:
                t2 = t2 * t2
                i += 1
            b = c ** (1 << (e - i - 1))
            w = w * b
            c = b * b
            t = t * c
            e = i
    return _min_lex([w, -w])


def _all_lth_roots(a: FieldElem, ell: int) -> list[FieldElem]:
    field, level = a.field, a.level
    q1 = field.cardinality(level) - 1
    if a.idx == 0:
        return [a]
    e = 0
    m = q1
    while m % ell == 0:
        m //= ell
        e += 1
    if e == 0:
        return [a ** pow(ell, -1, q1)]
    if a ** (q1 // ell) != field.one(level):
        return []
    root = _amm_root(a, ell, e, m)
    zeta = _nonresidue(field, level, ell) ** (q1 // ell)
    out = []
    w = root
    for _ in range(ell):
        out.append(w)
        w = w * zeta
    return out


def _amm_root(a: FieldElem, ell: int, e: int, m: int) -> FieldElem:
    """One ell-th root of a known ell-th power (Q-1 = ell^e * m, ell !| m)."""
    field, level = a.field, a.level
    le = ell ** e
    # split a into its mu_m and mu_{ell^e} components
    g, alpha, beta = _gcdext_int(le, m)
    assert g == 1
    u = a ** (alpha * le % (le * m))
    v = a ** (beta * m % (le * m))
    root_u = u ** pow(ell, -1, m) if m > 1 else field.one(level)
    # discrete log of v in the cyclic ell^e-torsion, digit by digit
    zeta_e = _nonresidue(field, level, ell) ** m
    omega = zeta_e ** (ell ** (e - 1))
    omega_pows = {}
    w = field.one(level)
    for t in range(ell):
        omega_pows[w.idx] = t
        w = w * omega
    k = 0
    for j in range(e):
        w = (v * zeta_e ** (-k % le)) ** (ell ** (e - 1 - j))
        k += omega_pows[w.idx] * ell ** j
    assert k % ell == 0, "not an ell-th power in the ell-torsion"
    root_v = zeta_e ** (k // ell)
    return root_u * root_v


def _gcdext_int(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def is_rth_power(a: FieldElem, r: int, *, witness: bool = True) -> ResidueVerdict:
    """Decide membership in the image of x -> x^r; optionally extract a root.

    The criterion is a^((Q-1)/g) = 1 with g = gcd(r, Q-1); when
    gcd(r, Q-1) = 1 the power map is a bijection and the answer is always
    true.  Zero counts as an r-th power with witness zero.  The witness is
    the lexicographically smallest r-th root.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if r % a.field.p == 0:
        raise ExponentSharesCharacteristic(
            f"r = {r} shares the characteristic {a.field.p}")
    if a.idx == 0:
        return ResidueVerdict(a, r, True, a)
    q1 = a.field.cardinality(a.level) - 1
    g = math.gcd(r, q1)
    ok = a ** (q1 // g) == a.field.one(a.level)
    if not ok:
        return ResidueVerdict(a, r, False, None)
    if not witness:
        return ResidueVerdict(a, r, True, None)
    roots = {a}
    for ell in _prime_factorization(r):
        roots = {w for s in roots for w in _all_lth_roots(s, ell)}
    assert roots, "residue test passed but no root found"
    return ResidueVerdict(a, r, True, _min_lex(roots))


def _prime_factorization(n: int) -> list[int]:
    """Prime factors with multiplicity, ascending."""
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def adjoin_sqrt_minus3(field: FieldDesc, level: int | None = None):
    """Return (field', level', sqrt(-3)); extends by x^2 + 3 when needed.

    When -3 is already a square the same tower comes back with the
    canonical root; otherwise the prefix up to `level` is extended by the
    (then irreducible) modulus x^2 + 3.
    """
    level = field.top if level is None else level
    field._check_level(level)
    if field.p == 3:
        raise CharacteristicThree("-3 is zero in characteristic three")
    if field.p == 2:
        raise EvenCharacteristic("requires odd characteristic")
    w = sqrt(field.elem(-3, level))
    if w is not None:
        return field, level, w
    base = field.prefix(level)
    ext = extend_field(base, [3, 0, 1], verify=False)
    return ext, ext.top, ext.gen()


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def elem_to_json(a: FieldElem) -> dict:
    return {
        "p": a.field.p,
        "tower_degrees": [a.field.levels[k].degree
                          for k in range(1, a.level + 1)],
        "coeffs": a.vector(),
    }


def elem_from_json(data: dict, field: FieldDesc) -> FieldElem:
    degrees = list(data["tower_degrees"])
    level = len(degrees)
    if data["p"] != field.p:
        raise FieldMismatch("characteristic disagrees with the field")
    field._check_level(level)
    if degrees != [field.levels[k].degree for k in range(1, level + 1)]:
        raise FieldMismatch("tower degrees disagree with the field")
    coeffs = data["coeffs"]
    if level == 0:
        return field.elem(int(coeffs), 0)
    return field.elem(coeffs, level)
