"""Shifted linearized polynomials a_p*x^p - a_1*x - a_0 in characteristic p.

The monic form x^p - a_1*x - a_0 is irreducible over F_q exactly when
a_1 = A^(p-1) for some A in F_q and Tr_{F_q/F_p}(a_0 / A^p) != 0.  No such
polynomial is ever dynamically irreducible: the second iterate is
reducible for p >= 3 and the third for p = 2.  This module implements the
irreducibility test, the trace obstruction that forces those iterates to
be reducible, and an exhaustive (or seeded-sample) verification harness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import MalformedShape, NoWitnessA, ReducibleInput
from .ffield import FieldDesc, FieldElem, extend_field, lift, trace
from .polyring import Poly, is_irreducible, iterate, roots_in_field
from .unicritical import Verdict

EXHAUSTIVE_LIMIT = 100_000
SAMPLE_SIZE = 10_000


@dataclass
class ShiftedLinearized:
    """a_p*x^p - a_1*x - a_0 with a_p*a_1 != 0; degree = characteristic."""

    a_p: FieldElem
    a_1: FieldElem
    a_0: FieldElem

    @property
    def field(self) -> FieldDesc:
        return self.a_p.field

    @property
    def level(self) -> int:
        return self.a_p.level

    @property
    def p(self) -> int:
        return self.field.p

    def poly(self) -> Poly:
        coeffs = [-self.a_0, -self.a_1] + [0] * (self.p - 2) + [self.a_p]
        return Poly(self.field, coeffs, self.level)

    def monic_form(self) -> Poly:
        coeffs = ([-self.a_0 / self.a_p, -self.a_1 / self.a_p]
                  + [0] * (self.p - 2) + [1])
        return Poly(self.field, coeffs, self.level)


def from_poly(f: Poly) -> ShiftedLinearized:
    """Recognize the shape; only the monomials x^p, x, 1 may appear."""
    p = f.field.p
    if f.degree != p:
        raise MalformedShape(f"degree {f.degree} != characteristic {p}")
    for i in range(2, p):
        if f.coeffs[i] != 0:
            raise MalformedShape(f"monomial x^{i} is not allowed")
    a_p = f.lc
    a_1 = -f.coeff(1)
    a_0 = -f.coeff(0)
    if a_1.is_zero():
        raise MalformedShape("a_1 must be nonzero")
    return ShiftedLinearized(a_p, a_1, a_0)


def matches_shape(f: Poly) -> bool:
    try:
        from_poly(f)
        return True
    except MalformedShape:
        return False


@dataclass
class CohenWitness:
    """A with A^(p-1) = a_1 (when one exists) and the decisive trace."""

    A: FieldElem | None
    trace_value: FieldElem | None


@dataclass
class CohenResult:
    irreducible: bool
    witness: CohenWitness


def cohen_test(f: ShiftedLinearized) -> CohenResult:
    """Irreducibility of the monic form x^p - a_1*x - a_0 over F_q.

    A exists iff a_1^((q-1)/(p-1)) = 1; it is extracted as the smallest
    root of x^(p-1) - a_1 in F_q.  The verdict transfers to f itself since
    scaling by the unit a_p preserves irreducibility.
    """
    field, level, p = f.field, f.level, f.p
    q = field.cardinality(level)
    a1 = f.a_1 / f.a_p
    a0 = f.a_0 / f.a_p
    if a1 ** ((q - 1) // (p - 1)) != field.one(level):
        return CohenResult(False, CohenWitness(None, None))
    rts = roots_in_field(Poly(field, [-a1] + [0] * (p - 2) + [1], level))
    assert rts, "the power criterion promised a root of x^(p-1) - a_1"
    A = rts[0]
    tr = trace(a0 / A ** p, 0)
    return CohenResult(not tr.is_zero(), CohenWitness(A, tr))


def linearized_verdict(f: ShiftedLinearized, *, oracle: bool = False) -> Verdict:
    """Minimal reducible iterate: 1 when the shape itself is reducible,
    else 2 for p >= 3; for p = 2 either 2 or 3 (the quadratic witness with
    irreducible square exists only in characteristic 2)."""
    res = cohen_test(f)
    if not res.irreducible:
        return Verdict.reducible_at(1, "cohen-criterion-failure",
                                    has_A=res.witness.A is not None)
    if f.p >= 3:
        if oracle:
            assert not is_irreducible(iterate(f.poly(), 2))
        return Verdict.reducible_at(2, "shifted-linearized-second-iterate")
    if is_irreducible(iterate(f.poly(), 2)):
        if oracle:
            assert not is_irreducible(iterate(f.poly(), 3))
        return Verdict.reducible_at(3, "shifted-linearized-third-iterate")
    return Verdict.reducible_at(2, "shifted-linearized-second-iterate")


def trace_obstruction(f: ShiftedLinearized, iterate_n: int | None = None) -> FieldElem:
    """Tr_{F_p} of gamma/(a_p*A^p) for gamma a root of the given iterate.

    For p >= 3 with iterate 1 (and p = 2 with iterate 2) the missing
    x^(p-1) coefficient forces this trace to be zero, which is exactly the
    contradiction showing the next iterate cannot be irreducible.
    """
    if iterate_n is None:
        iterate_n = 1 if f.p >= 3 else 2
    res = cohen_test(f)
    if not res.irreducible:
        raise ReducibleInput("the polynomial itself is reducible")
    if res.witness.A is None:
        raise NoWitnessA("no (p-1)-st root of a_1")
    fn = iterate(f.monic_form(), iterate_n) if iterate_n > 1 else f.monic_form()
    if iterate_n > 1:
        fn = iterate(f.poly(), iterate_n).monic()
        if not is_irreducible(fn):
            raise ReducibleInput(f"iterate {iterate_n} is reducible")
    base = f.field.prefix(f.level)
    ext = extend_field(base, fn._lst(), verify=False)
    gamma = ext.gen()
    denom = lift(f.a_p * res.witness.A ** f.p, ext, ext.top)
    return trace(gamma / denom, 0)


def verify_theorem52(field: FieldDesc, *, seed: int = 0,
                     exhaustive_limit: int = EXHAUSTIVE_LIMIT,
                     sample_size: int = SAMPLE_SIZE) -> dict:
    """Sweep (a_p, a_1, a_0) with a_p*a_1 != 0 and oracle-check that the
    second iterate (third for p = 2) is reducible.  Exhaustive below the
    triple-count limit, seeded sampling above it.  The report lists counts
    and any counterexample (expected none)."""
    p = field.p
    q = field.cardinality()
    total_space = (q - 1) * (q - 1) * q
    exhaustive = total_space <= exhaustive_limit
    units = [e for e in field.elements() if not e.is_zero()]
    everything = list(field.elements())
    if exhaustive:
        triples = [(ap, a1, a0) for ap in units for a1 in units
                   for a0 in everything]
    else:
        rng = random.Random(seed)
        triples = [(rng.choice(units), rng.choice(units), rng.choice(everything))
                   for _ in range(sample_size)]
    red2 = red3 = 0
    counterexamples = []
    for ap, a1, a0 in triples:
        f = ShiftedLinearized(ap, a1, a0)
        fp = f.poly()
        f2_red = not is_irreducible(iterate(fp, 2))
        if f2_red:
            red2 += 1
        if p == 2:
            if f2_red:
                red3 += 1  # reducibility propagates through composition
            elif not is_irreducible(iterate(fp, 3)):
                red3 += 1
            else:
                counterexamples.append([ap.vector(), a1.vector(), a0.vector()])
        elif not f2_red:
            counterexamples.append([ap.vector(), a1.vector(), a0.vector()])
    return {
        "field": {"p": p, "degree": field.total_degree(), "cardinality": q},
        "total": len(triples),
        "exhaustive": exhaustive,
        "seed": None if exhaustive else seed,
        "reducible_at_2": red2,
        "reducible_at_3": red3 if p == 2 else None,
        "counterexamples": counterexamples,
    }
