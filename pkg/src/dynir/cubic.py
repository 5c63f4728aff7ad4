"""Cubic-specific irreducibility machinery.

For a depressed cubic pair (h, beta0) with h = b3*x^3 + b1*x + b0 over a
field of odd cardinality q (characteristic > 3), iterate n+1 is
irreducible given iterate n is, exactly when

  (1) -3*(h^(n+1)(g1) - beta0)*(h^(n+1)(g2) - beta0) is a nonzero square
      in the base field (g1, g2 the critical points of h), and
  (2) (-(b0 - beta_n)/b3 + mu_n*sqrt(-3))/2 is not a cube in the field
      obtained by adjoining a root beta_n of h^n(x) - beta0 (and sqrt(-3)
      when needed), where 81*mu_n^2 equals the level-n square quantity.

Condition (1) runs entirely in the base field through a symmetric-function
recurrence on the critical pair, so the two critical points never need to
be represented individually; cycle detection decides it for every n at
once.  Condition (2) is checked level by level: the field F_q(beta_n) is
realized as the single-step extension by the monic scaling of
h^n(x) - beta0 (beta_n is the residue class of x; irreducibility of the
modulus is exactly the inductive hypothesis, so no root finding and no
verification pass is needed).  Cube-ness is decided by norm reduction to
the base field when q = 1 mod 3 and by a direct power-residue test above
the sqrt(-3) quadratic step when q = 2 mod 3.

Indexing: sequence entry k and level-state n both gate iterate k = n + 1;
reports index by the iterate number they certify or refute.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

from .errors import (
    BothCoefficientsZero,
    CharacteristicLEQ3,
    ConstantDerivative,
    ExcludedG,
    InseparableDerivative,
    ReducibleG,
    SquareRootMissing,
)
from .ffield import (
    FieldDesc,
    FieldElem,
    adjoin_sqrt_minus3,
    extend_field,
    is_rth_power,
    lift,
    norm,
    sqrt,
)
from .polyring import (
    Poly,
    compose,
    discriminant,
    is_irreducible,
    iterate,
    lift_poly,
    resultant,
)
from .unicritical import Verdict


@dataclass
class DepressedCubic:
    """b3*x^3 + b1*x + b0 with the pair target beta0 (zero when testing the
    polynomial itself; a2/(3*a3) when derived from a general cubic)."""

    b3: FieldElem
    b1: FieldElem
    b0: FieldElem
    beta0: FieldElem
    source: Poly | None = None

    @property
    def field(self) -> FieldDesc:
        return self.b3.field

    @property
    def level(self) -> int:
        return self.b3.level

    def poly(self) -> Poly:
        return Poly(self.field, [self.b0, self.b1, 0, self.b3], self.level)


def _require_char_gt3(field: FieldDesc):
    if field.p <= 3:
        raise CharacteristicLEQ3(f"characteristic {field.p} is not > 3")


def depress(f: Poly) -> DepressedCubic:
    """Shift x by a2/(3*a3) to kill the quadratic term; the shift value is
    also the pair target that makes verdicts about f and (h, beta0) agree."""
    if f.degree != 3:
        raise ValueError("expected a cubic")
    _require_char_gt3(f.field)
    a3, a2 = f.lc, f.coeff(2)
    beta0 = a2 / (3 * a3)
    from .polyring import affine_conjugate
    h = affine_conjugate(f, 1, beta0)
    assert h.coeff(2).is_zero(), "depression kept the quadratic term"
    return DepressedCubic(b3=h.lc, b1=h.coeff(1), b0=h.coeff(0),
                          beta0=beta0, source=f)


def make_depressed(field: FieldDesc, b3, b1, b0, beta0=0,
                   level: int | None = None) -> DepressedCubic:
    level = field.top if level is None else level
    _require_char_gt3(field)
    b3 = field.elem(b3, level)
    if b3.is_zero():
        raise ValueError("b3 must be nonzero")
    return DepressedCubic(b3, field.elem(b1, level), field.elem(b0, level),
                          field.elem(beta0, level))


# ---------------------------------------------------------------------------
# Dickson's criterion for one cubic
# ---------------------------------------------------------------------------

@dataclass
class DicksonResult:
    irreducible: bool
    reason: str
    disc: FieldElem | None = None
    mu_pair: tuple[FieldElem, FieldElem] | None = None
    cube_values: tuple | None = None
    cube_norms: tuple | None = None


def dickson_test(a1: FieldElem | int, a0: FieldElem | int,
                 field: FieldDesc, level: int | None = None) -> DicksonResult:
    """Irreducibility of x^3 + a1*x + a0: the quantity -4*a1^3 - 27*a0^2
    must be a nonzero square, and (-a0 + mu*sqrt(-3))/2 must not be a cube
    in the field extended by sqrt(-3).

    When a1 = 0 the square root of a0^2 inside the cube value must be
    taken as -a0 (the nonzero branch), which reduces the second condition
    to "-a0 is not a cube".  A zero a0 with nonzero a1 means x divides the
    cubic; that is reported as reducible rather than raised.
    """
    _require_char_gt3(field)
    level = field.top if level is None else level
    a1 = field.elem(a1, level)
    a0 = field.elem(a0, level)
    if a1.is_zero() and a0.is_zero():
        raise BothCoefficientsZero("x^3 has no residue test")
    if a0.is_zero():
        return DicksonResult(False, "root-at-zero")
    disc_q = -4 * a1 ** 3 - 27 * a0 ** 2
    if disc_q.is_zero():
        return DicksonResult(False, "square-condition-failure", disc=disc_q)
    mu = sqrt(disc_q / 81)
    if mu is None:
        return DicksonResult(False, "square-condition-failure", disc=disc_q)
    mu_pair = (mu, -mu)
    ext, lvl, s3 = adjoin_sqrt_minus3(field, level)
    a0e = lift(a0, ext, lvl)
    values = tuple((-a0e + lift(m, ext, lvl) * s3) / 2 for m in mu_pair)
    if a1.is_zero():
        # keep only the nonzero branch, which equals -a0
        values = tuple(v for v in values if not v.is_zero())
        assert values and values[0] == -a0e
    cubes = [is_rth_power(v, 3, witness=False).is_rth_power for v in values]
    assert all(c == cubes[0] for c in cubes), "cube verdict depends on branch"
    norms = tuple(norm(v, level) for v in values)
    return DicksonResult(
        irreducible=not cubes[0],
        reason="cube-condition-failure" if cubes[0] else "dickson-irreducible",
        disc=disc_q, mu_pair=mu_pair, cube_values=values, cube_norms=norms)


# ---------------------------------------------------------------------------
# condition (1): the base-field square sequence
# ---------------------------------------------------------------------------

@dataclass
class Cond1Report:
    """Values s_k = -3*(h^k(g1)-beta0)*(h^k(g2)-beta0) for k = 1, 2, ...

    `values` runs up to the orbit closure (or the cap); when the critical
    pair orbit closes without a failure the all-n verdict is exact.
    """

    values: list[FieldElem]
    all_square: bool
    decided_for_all_n: bool
    first_failure: int | None
    periodic_certificate: tuple[int, int] | None  # (tail length, cycle length)

    def value_at(self, k: int) -> FieldElem:
        if k < 1:
            raise IndexError("sequence starts at 1")
        if k <= len(self.values):
            return self.values[k - 1]
        if self.periodic_certificate is None:
            raise IndexError(f"sequence computed only up to {len(self.values)}")
        tail, cyc = self.periodic_certificate
        return self.values[tail + (k - 1 - tail) % cyc]


def condition1_sequence(h: DepressedCubic, n_max: int | None = None) -> Cond1Report:
    """Run the symmetric-pair recurrence with cycle detection.

    The state (u, v) = (h^n(g1)+h^n(g2), h^n(g1)*h^n(g2)) starts at
    (0, b1/(3*b3)) and stays in the base field; a repeated state closes
    the sequence exactly.
    """
    field, level = h.field, h.level
    _require_char_gt3(field)
    b3, b1, b0 = h.b3, h.b1, h.b0
    if (3 * b3).is_zero():
        raise InseparableDerivative("derivative has no critical pair")
    beta0 = h.beta0
    u = field.zero(level)
    v = b1 / (3 * b3)
    seen = {(u.idx, v.idx): 0}
    values: list[FieldElem] = []
    first_failure = None
    cert = None
    k = 0
    while True:
        k += 1
        u3 = u ** 3
        uv3 = 3 * u * v
        u_next = b3 * (u3 - uv3) + b1 * u + 2 * b0
        v_next = (b3 ** 2 * v ** 3 + b3 * b1 * v * (u * u - 2 * v)
                  + b3 * b0 * (u3 - uv3) + b1 ** 2 * v + b1 * b0 * u
                  + b0 ** 2)
        u, v = u_next, v_next
        s = -3 * (v - beta0 * u + beta0 * beta0)
        values.append(s)
        if s.is_zero() or not is_rth_power(s, 2, witness=False).is_rth_power:
            first_failure = k
            break
        state = (u.idx, v.idx)
        if state in seen:
            cert = (seen[state], k - seen[state])
            break
        seen[state] = k
        if n_max is not None and k >= n_max:
            break
    return Cond1Report(
        values=values,
        all_square=first_failure is None,
        decided_for_all_n=cert is not None and first_failure is None,
        first_failure=first_failure,
        periodic_certificate=cert,
    )


# ---------------------------------------------------------------------------
# condition (2): cube tests up the tower
# ---------------------------------------------------------------------------

@dataclass
class CubicLevelState:
    """Everything computed at one level of the recursive test."""

    n: int
    field: FieldDesc
    level: int
    beta_n: FieldElem
    cond1_value: FieldElem
    mu_n: FieldElem | None = None
    sqrtm3: FieldElem | None = None
    cond2_norm: FieldElem | None = None
    cond2_norm_alt: FieldElem | None = None
    cond2_is_cube: bool | None = None
    oracle_irreducible: bool | None = None


@dataclass
class Cond2Result:
    passes: bool
    norm_value: FieldElem | None
    norm_alt: FieldElem | None
    mu: FieldElem
    sqrtm3: FieldElem


def _level_field(h: DepressedCubic, n: int, iterate_poly: Poly | None = None):
    """Realize F_q(beta_n) as the base field extended by the monic scaling
    of h^n(x) - beta0; beta_n is the residue class of x.  For n = 0 the
    base field itself comes back with beta_0."""
    base = h.field.prefix(h.level)
    if n == 0:
        return base, base.top, lift(h.beta0, base, base.top)
    hn = iterate(h.poly(), n) if iterate_poly is None else iterate_poly
    modulus = (hn - Poly(hn.field, [h.beta0], hn.level)).monic()
    ext = extend_field(base, modulus._lst(), verify=False)
    return ext, ext.top, ext.gen()


def condition2_check(h: DepressedCubic, state_field: FieldDesc,
                     state_level: int, beta_n: FieldElem) -> Cond2Result:
    """Cube test at one level; both mu branches and both sqrt(-3)
    embeddings are evaluated and must agree."""
    base_level = h.level
    q = h.field.cardinality(base_level)
    b3 = lift(h.b3, state_field, state_level)
    b1 = lift(h.b1, state_field, state_level)
    b0 = lift(h.b0, state_field, state_level)
    A1 = b1 / b3
    A0 = (b0 - beta_n) / b3
    disc_n = -4 * A1 ** 3 - 27 * A0 ** 2
    mu = sqrt(disc_n / 81)
    if mu is None:
        raise SquareRootMissing(
            "level quantity is not a square: the square condition failed here")
    if q % 3 == 1:
        s3 = sqrt(state_field.elem(-3, base_level))
        assert s3 is not None
        s3 = lift(s3, state_field, state_level)
        v_can = (-A0 + mu * s3) / 2
        v_alt = (-A0 - mu * s3) / 2
        w_can = norm(v_can, base_level)
        w_alt = norm(v_alt, base_level)
        cube_can = is_rth_power(w_can, 3, witness=False).is_rth_power
        cube_alt = is_rth_power(w_alt, 3, witness=False).is_rth_power
        assert cube_can == cube_alt, "cube verdict depends on the branch"
        return Cond2Result(not cube_can, w_can, w_alt, mu, s3)
    # q = 2 mod 3: -3 stays a nonsquare in the odd-degree level, so x^2 + 3
    # is irreducible over it; test directly above the quadratic step.
    quad = extend_field(state_field, [3, 0, 1], verify=False)
    s3 = quad.gen()
    A0q = lift(A0, quad, quad.top)
    muq = lift(mu, quad, quad.top)
    v_can = (-A0q + muq * s3) / 2
    v_alt = (-A0q - muq * s3) / 2
    cube_can = is_rth_power(v_can, 3, witness=False).is_rth_power
    cube_alt = is_rth_power(v_alt, 3, witness=False).is_rth_power
    assert cube_can == cube_alt, "cube verdict depends on the branch"
    return Cond2Result(not cube_can, None, None, mu, s3)


# ---------------------------------------------------------------------------
# the recursive driver
# ---------------------------------------------------------------------------

@dataclass
class RecursiveReport:
    verdict: Verdict
    levels: list[CubicLevelState] = dfield(default_factory=list)
    cond1: Cond1Report | None = None


def recursive_test(h: DepressedCubic, n_max: int = 10,
                   oracle_max_level: int = 5) -> RecursiveReport:
    """Level-by-level driver: gate iterate n+1 by the square condition,
    then by the cube condition; stop at the first failure.  When the
    square sequence is certified periodic and every cube check through
    the bound passes, the result is IrreducibleThrough(n_max + 1),
    inconclusive beyond (no terminating certificate exists for the cube
    condition).  Levels with iterate degree within the oracle bound are
    cross-validated against the factorization oracle.
    """
    _require_char_gt3(h.field)
    cond1 = condition1_sequence(h)
    levels: list[CubicLevelState] = []
    hp = h.poly()
    hn = Poly.x(hp.field, hp.level)  # h^n, built incrementally
    verdict = None
    for n in range(0, n_max + 1):
        k = n + 1  # iterate gated at this level
        if cond1.first_failure is not None and cond1.first_failure <= k:
            kk = cond1.first_failure
            verdict = Verdict.reducible_at(
                kk, "square-condition-failure",
                value=cond1.values[kk - 1])
            break
        s_value = cond1.value_at(k)
        field_n, level_n, beta_n = _level_field(h, n, iterate_poly=hn)
        state = CubicLevelState(n=n, field=field_n, level=level_n,
                                beta_n=beta_n, cond1_value=s_value)
        try:
            c2 = condition2_check(h, field_n, level_n, beta_n)
        except SquareRootMissing:
            # the level-n square quantity and s_{n+1} agree up to squares,
            # so this mirrors a condition-1 failure at k
            verdict = Verdict.reducible_at(k, "square-condition-failure",
                                           value=s_value)
            levels.append(state)
            break
        state.mu_n = c2.mu
        state.sqrtm3 = c2.sqrtm3
        state.cond2_norm = c2.norm_value
        state.cond2_norm_alt = c2.norm_alt
        state.cond2_is_cube = not c2.passes
        if k <= oracle_max_level:
            ora = is_irreducible(iterate(hp, k)
                                 - Poly(hp.field, [h.beta0], hp.level))
            state.oracle_irreducible = ora
            expected = c2.passes
            assert ora == expected, (
                f"oracle disagrees with the criteria at iterate {k}")
        levels.append(state)
        if not c2.passes:
            verdict = Verdict.reducible_at(
                k, "cube-condition-failure",
                norm=c2.norm_value, norm_alt=c2.norm_alt)
            break
        hn = compose(hp, hn)
    if verdict is None:
        reason = ("criteria-passed-through-bound"
                  if cond1.decided_for_all_n else "bound-reached")
        verdict = Verdict.through(n_max + 1, reason,
                                  cond1_periodic=cond1.decided_for_all_n)
    return RecursiveReport(verdict=verdict, levels=levels, cond1=cond1)


# ---------------------------------------------------------------------------
# parity-of-factors necessary condition
# ---------------------------------------------------------------------------

@dataclass
class GnosReport:
    passed: bool
    first_violation: int | None
    values: list[FieldElem]


def gnos_check(f: Poly, n_max: int = 10) -> GnosReport:
    """Necessary condition only: for odd degree, the discriminant and the
    sign-adjusted resultants of f^n with f' must all be squares (for even
    degree, nonsquares).  A violation at n certifies iterate n reducible;
    passing proves nothing.
    """
    if f.field.p == 2:
        raise ValueError("odd characteristic required")
    if f.degree < 2:
        raise ValueError("degree >= 2 required")
    fp = f.derivative()
    if fp.degree < 1:
        raise ConstantDerivative("the parity criterion needs deg f' >= 1")
    d, k = f.degree, fp.degree
    ad = f.lc
    odd = d % 2 == 1
    sign = -1 if odd and ((d - 1) // 2) % 2 else 1
    values: list[FieldElem] = []
    fn = f
    for n in range(1, n_max + 1):
        if n == 1:
            val = discriminant(f)
        else:
            fn = compose(f, fn)
            val = ad ** ((n - 1) * k + 1) * resultant(fn, fp)
            if sign < 0:
                val = -val
            if not odd:
                val = ad ** k * resultant(fn, fp)
        values.append(val)
        square = (not val.is_zero()
                  and is_rth_power(val, 2, witness=False).is_rth_power)
        violated = (not square) if odd else (square or val.is_zero())
        if violated:
            return GnosReport(False, n, values)
    return GnosReport(True, None, values)


# ---------------------------------------------------------------------------
# the conjugated tower family with a complete first-level test
# ---------------------------------------------------------------------------

def chu_polynomial(alpha: FieldElem | int, field: FieldDesc,
                   level: int | None = None) -> Poly:
    """x^3 + 3a*x^2 + (3a^2-3)*x + (a^3-4a), the conjugate of x^3 - 3x
    moved so that dynamical irreducibility becomes testable at one level."""
    level = field.top if level is None else level
    a = field.elem(alpha, level)
    return Poly(field, [a ** 3 - 4 * a, 3 * a * a - 3, 3 * a, 1], level)


def chu_test(alpha: FieldElem | int, field: FieldDesc,
             level: int | None = None) -> Verdict:
    """Complete decision for the family: -3*(alpha^2 - 4) must be a nonzero
    square and the roots (alpha +/- sqrt(alpha^2 - 4))/2 of
    x^2 - alpha*x + 1 must not be cubes after adjoining sqrt(-3)."""
    _require_char_gt3(field)
    level = field.top if level is None else level
    a = field.elem(alpha, level)
    if a == field.elem(2, level) or a == field.elem(-2, level):
        return Verdict.reducible_at(1, "root-at-zero",
                                    note="the family degenerates to x*(x+-3)^2")
    t = -3 * (a * a - 4)
    if t.is_zero():
        return Verdict.reducible_at(1, "square-condition-failure", value=t)
    s = sqrt(t)
    if s is None:
        return Verdict.reducible_at(1, "square-condition-failure", value=t)
    ext, lvl, s3 = adjoin_sqrt_minus3(field, level)
    delta = lift(s / 3, ext, lvl) * s3        # a square root of alpha^2 - 4
    ae = lift(a, ext, lvl)
    roots = ((ae + delta) / 2, (ae - delta) / 2)
    cubes = [is_rth_power(r, 3, witness=False).is_rth_power for r in roots]
    assert cubes[0] == cubes[1], "reciprocal roots must share cube-ness"
    if cubes[0]:
        return Verdict.reducible_at(1, "cube-condition-failure",
                                    roots=roots)
    return Verdict.proved("tower-family-criterion", square_value=t,
                          roots=roots)


@dataclass
class ChuSequenceReport:
    polys: list[Poly]
    irreducible: list[bool]
    criterion_pass: bool


def chu_sequence(g: Poly, k_max: int) -> ChuSequenceReport:
    """Materialize f_0 = g, f_{k+1} = f_k(x^3 - 3x) and oracle-check each;
    when the root criterion holds for g, every entry must be irreducible."""
    _require_char_gt3(g.field)
    if g.degree < 1:
        raise ReducibleG("constant seed")
    if not is_irreducible(g):
        raise ReducibleG("the seed polynomial must be irreducible")
    if g.degree == 1:
        root = -g.coeff(0) / g.lc
        if root == g.field.elem(2, g.level) or root == g.field.elem(-2, g.level):
            raise ExcludedG("seeds x - 2 and x + 2 are excluded")
    field, level = g.field, g.level
    base = field.prefix(level)
    if g.degree == 1:
        ext, alpha = base, -g.coeff(0) / g.lc
        ext_level = base.top
    else:
        ext = extend_field(base, g.monic()._lst(), verify=False)
        ext_level = ext.top
        alpha = ext.gen()
    # criterion for a root alpha of g
    t = -3 * (alpha * alpha - 4)
    crit = False
    if not t.is_zero():
        s = sqrt(t)
        if s is not None:
            e2, l2, s3 = adjoin_sqrt_minus3(ext, ext_level)
            delta = lift(s / 3, e2, l2) * s3
            ae = lift(alpha, e2, l2)
            r1 = (ae + delta) / 2
            crit = not is_rth_power(r1, 3, witness=False).is_rth_power
    inner = Poly(field, [0, -3, 0, 1], level)  # x^3 - 3x
    polys = [g]
    flags = [True]
    for _ in range(k_max):
        polys.append(compose(polys[-1], inner))
        flags.append(is_irreducible(polys[-1]))
    return ChuSequenceReport(polys, flags, crit)
