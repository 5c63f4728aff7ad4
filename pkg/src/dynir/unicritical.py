"""Complete dynamical-irreducibility decision for unicritical polynomials.

A polynomial with a single affine critical point gamma is conjugate to the
centered form a*x^d + c.  Over a field whose cardinality is 1 mod every
prime divisor of d (and 1 mod 4 when 4 | d), the pair (h, beta) is
dynamically irreducible exactly when none of the tested orbit values is an
r-th power; the orbit is finite, so cycle detection turns this into a
complete decision procedure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dfield

from ._dense import small_prime_factors
from .errors import (
    CharacteristicDividesDegree,
    ConstantPolynomial,
    HypothesisFailure,
    NotCentered,
    PreviousIterateReducible,
)
from .ffield import FieldDesc, FieldElem, ResidueVerdict, is_rth_power
from .polyring import Poly, affine_conjugate, is_irreducible, iterate, roots_in_field


class VerdictKind(enum.Enum):
    PROVED_DYNAMICALLY_IRREDUCIBLE = "proved-dynamically-irreducible"
    REDUCIBLE_AT_ITERATE = "reducible-at-iterate"
    IRREDUCIBLE_THROUGH = "irreducible-through"


@dataclass
class Verdict:
    """Three-valued outcome of an irreducibility analysis.

    REDUCIBLE_AT_ITERATE carries the least witnessed iterate and a
    machine-checkable reason; IRREDUCIBLE_THROUGH is a bounded,
    inconclusive result.
    """

    kind: VerdictKind
    iterate: int | None
    reason: str
    details: dict = dfield(default_factory=dict)

    @classmethod
    def proved(cls, reason: str, **details) -> "Verdict":
        return cls(VerdictKind.PROVED_DYNAMICALLY_IRREDUCIBLE, None,
                   reason, details)

    @classmethod
    def reducible_at(cls, n: int, reason: str, **details) -> "Verdict":
        return cls(VerdictKind.REDUCIBLE_AT_ITERATE, n, reason, details)

    @classmethod
    def through(cls, n: int, reason: str, **details) -> "Verdict":
        return cls(VerdictKind.IRREDUCIBLE_THROUGH, n, reason, details)

    @property
    def is_proved(self) -> bool:
        return self.kind is VerdictKind.PROVED_DYNAMICALLY_IRREDUCIBLE

    @property
    def is_reducible(self) -> bool:
        return self.kind is VerdictKind.REDUCIBLE_AT_ITERATE


@dataclass
class HypothesisReport:
    """Result of the cardinality congruence checks for degree d."""

    ok: bool
    fails: tuple[tuple[int, int], ...]  # (modulus r, q mod r) for each failure


@dataclass
class UnicriticalForm:
    """A unicritical polynomial together with its centered conjugate."""

    original: Poly
    gamma: FieldElem      # the unique affine critical point
    a: FieldElem          # lead coefficient
    centered: Poly        # a*x^d + c, critical point moved to 0
    c: FieldElem
    beta: FieldElem       # pair target; -gamma when testing the original


@dataclass
class OrbitReport:
    """Forward critical orbit split into tail + cycle, with the adjusted
    values, their residue verdicts, and the resulting verdict."""

    seed: FieldElem
    tail: list[FieldElem]
    cycle: list[FieldElem]
    adjusted_values: list[tuple[int, FieldElem, dict[int, ResidueVerdict]]]
    verdict: Verdict


def _test_exponents(d: int) -> list[int]:
    rs = small_prime_factors(d)
    if d % 4 == 0:
        rs.append(4)
    return rs


def hypothesis_check(d: int, field: FieldDesc, level: int | None = None) -> HypothesisReport:
    """Check q = 1 mod r for each prime r | d, and q = 1 mod 4 when 4 | d.

    When a check fails the power map x -> x^r is a bijection, h(x) - beta
    has a root, and the caller's verdict is reducible at the first iterate.
    """
    q = field.cardinality(level)
    fails = tuple((r, q % r) for r in _test_exponents(d) if q % r != 1)
    return HypothesisReport(not fails, fails)


def detect_unicritical(f: Poly) -> UnicriticalForm | None:
    """Extract (gamma, a, c) when f' has a single root of multiplicity d-1."""
    d = f.degree
    if d < 2:
        raise ConstantPolynomial("unicritical detection needs degree >= 2")
    if d % f.field.p == 0:
        raise CharacteristicDividesDegree(
            "the derivative degenerates when the characteristic divides the degree")
    roots = roots_in_field(f.derivative())
    if len(roots) != d - 1 or any(r != roots[0] for r in roots):
        return None
    gamma = roots[0]
    centered = affine_conjugate(f, 1, -gamma)
    assert all(centered.coeffs[i] == 0 for i in range(1, d)), \
        "centered form kept a middle coefficient"
    return UnicriticalForm(
        original=f, gamma=gamma, a=f.lc, centered=centered,
        c=centered.coeff(0), beta=-gamma)


def _forward_orbit(f: Poly, seed: FieldElem):
    """Orbit of seed under f as (points, cycle_start)."""
    seen = {seed: 0}
    points = [seed]
    t = seed
    while True:
        t = f(t)
        if t in seen:
            return points, seen[t]
        seen[t] = len(points)
        points.append(t)


def adjusted_critical_orbit(u: UnicriticalForm, r_set: list[int] | None = None) -> OrbitReport:
    """Decide via the adjusted critical orbit {-f(gamma)/a} u {f^n(gamma)/a}.

    The forward orbit of gamma is computed with stored-set cycle detection;
    each adjusted value is tested as an r-th power for every r in the test
    set.  Terminates in at most |field| steps.
    """
    f, gamma, a = u.original, u.gamma, u.a
    d = f.degree
    rs = _test_exponents(d) if r_set is None else list(r_set)
    hyp = hypothesis_check(d, f.field, f.level)
    if not hyp.ok:
        raise HypothesisFailure(f"cardinality congruence fails: {hyp.fails}")
    points, cycle_start = _forward_orbit(f, gamma)
    tail, cycle = points[:cycle_start], points[cycle_start:]
    # f^n(gamma) for any n >= 0
    def at(n: int) -> FieldElem:
        if n < len(points):
            return points[n]
        return cycle[(n - cycle_start) % len(cycle)]

    adjusted: list[tuple[int, FieldElem, dict[int, ResidueVerdict]]] = []
    seen_values: set[FieldElem] = set()
    verdict = None
    last_n = len(points) + 1  # covers re-tests of positions 0 and 1 in cycle
    for n in range(1, last_n + 1):
        value = -at(1) / a if n == 1 else at(n) / a
        if n > 1 and value in seen_values:
            continue
        seen_values.add(value)
        checks = {r: is_rth_power(value, r) for r in rs}
        adjusted.append((n, value, checks))
        if verdict is None:
            for r, rv in checks.items():
                if rv.is_rth_power:
                    verdict = Verdict.reducible_at(
                        n, "rth-power-in-adjusted-orbit",
                        r=r, value=value, witness=rv.witness)
                    break
        if verdict is not None:
            break
    if verdict is None:
        verdict = Verdict.proved(
            "adjusted-critical-orbit-free-of-rth-powers",
            orbit={"tail": len(tail), "cycle": len(cycle)}, exponents=rs)
    return OrbitReport(gamma, tail, cycle, adjusted, verdict)


def _require_centered(h: Poly):
    d = h.degree
    if d < 2:
        raise NotCentered("centered form needs degree >= 2")
    if any(h.coeffs[i] != 0 for i in range(1, d)):
        raise NotCentered("middle coefficients must vanish")


def pair_test(h: Poly, beta) -> Verdict:
    """Complete decision for the pair (h, beta), h = a*x^d + c.

    Tests -(c-beta)/a and then (h^(n-1)(c)-beta)/a over the finite,
    cycle-detected orbit of c; with 4 | d the extra fourth-power checks
    are included.  Returns the proved verdict or the least reducible
    iterate.
    """
    _require_centered(h)
    beta = h.field.elem(beta, h.level)
    d = h.degree
    hyp = hypothesis_check(d, h.field, h.level)
    if not hyp.ok:
        raise HypothesisFailure(f"cardinality congruence fails: {hyp.fails}")
    a, c = h.lc, h.coeff(0)
    rs = small_prime_factors(d)
    four = d % 4 == 0

    def hit(value: FieldElem, n: int, exps: list[int]) -> Verdict | None:
        for r in exps:
            rv = is_rth_power(value, r)
            if rv.is_rth_power:
                return Verdict.reducible_at(n, "rth-power-at-step",
                                            r=r, value=value, witness=rv.witness)
        return None

    v = hit(-(c - beta) / a, 1, rs)
    if v is None and four:
        v = hit((c - beta) / (4 * a), 1, [4])
    if v is not None:
        return v

    exps = rs + ([4] if four else [])
    seen = {c}
    t = c
    n = 2
    while True:
        t = h(t)
        v = hit((t - beta) / a, n, exps)
        if v is not None:
            return v
        if t in seen:
            return Verdict.proved("orbit-values-free-of-rth-powers",
                                  exponents=exps, orbit_size=len(seen))
        seen.add(t)
        n += 1


def step_test(g: Poly, h: Poly, n: int) -> bool:
    """Is g o h^n irreducible, given that g o h^(n-1) is?

    Evaluated purely in the base field with the step constants
    C = (-a)^k * lc(g) for n = 1 and C = a^k * lc(g) for n > 1 (and the
    fourth-power variant D = (4a)^k * lc(g) when 4 | d).
    """
    g._match(h)
    _require_centered(h)
    if n < 1:
        raise ValueError("n must be >= 1")
    hyp = hypothesis_check(h.degree, h.field, h.level)
    if not hyp.ok:
        raise HypothesisFailure(f"cardinality congruence fails: {hyp.fails}")
    if not is_irreducible(compose_iterate(g, h, n - 1)):
        raise PreviousIterateReducible(
            f"g o h^{n - 1} must be irreducible before the step to {n}")
    a, c = h.lc, h.coeff(0)
    k, lg = g.degree, g.lc
    point = c
    for _ in range(n - 1):
        point = h(point)
    top = g(point)
    C = ((-a) ** k if n == 1 else a ** k) * lg
    for r in small_prime_factors(h.degree):
        if is_rth_power(top / C, r).is_rth_power:
            return False
    if h.degree % 4 == 0:
        D = ((4 * a) ** k if n == 1 else a ** k) * lg
        if is_rth_power(top / D, 4).is_rth_power:
            return False
    return True


def compose_iterate(g: Poly, h: Poly, n: int) -> Poly:
    """g o h^n as a polynomial."""
    return g if n == 0 else _compose(g, iterate(h, n))


def _compose(g: Poly, f: Poly) -> Poly:
    from .polyring import compose
    return compose(g, f)


def unicritical_verdict(f: Poly):
    """Full pipeline for a polynomial: detect the form, check hypotheses,
    run the orbit test.  Returns (form, report) or None when f is not
    unicritical over its field."""
    u = detect_unicritical(f)
    if u is None:
        return None
    hyp = hypothesis_check(f.degree, f.field, f.level)
    if not hyp.ok:
        points, cycle_start = _forward_orbit(f, u.gamma)
        verdict = Verdict.reducible_at(
            1, "hypothesis-failure",
            fails=list(hyp.fails),
            note="the r-th power map is a bijection, so h(x) - beta has a root")
        report = OrbitReport(u.gamma, points[:cycle_start],
                             points[cycle_start:], [], verdict)
        return u, report
    return u, adjusted_critical_orbit(u)
