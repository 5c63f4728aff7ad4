import itertools
import random

import pytest

from dynir.errors import (
    CharacteristicDividesDegree,
    HypothesisFailure,
    NotCentered,
    PreviousIterateReducible,
)
from dynir.ffield import build_field
from dynir.polyring import (
    Poly,
    affine_conjugate,
    from_string,
    is_irreducible,
    iterate,
    roots_in_field,
)
from dynir.unicritical import (
    Verdict,
    VerdictKind,
    adjusted_critical_orbit,
    detect_unicritical,
    hypothesis_check,
    pair_test,
    step_test,
    unicritical_verdict,
)

import property_checks as pc

TABLE1 = {
    frozenset({2, 4}): {(1, 3), (2, 6), (4, 5), (3, 2), (5, 1), (6, 4)},
    frozenset({3, 5}): {(1, 4), (2, 1), (4, 2), (3, 5), (5, 6), (6, 3)},
}


class TestDetect:
    def test_centered_cubic(self, F7):
        u = detect_unicritical(from_string("x^3+3", F7))
        assert u is not None
        assert u.gamma == F7.zero() and u.a == F7.one() and u.c == F7.elem(3)
        assert u.beta == F7.zero()

    def test_two_critical_points_not_unicritical(self, F7):
        assert detect_unicritical(from_string("x^3+6x+2", F7)) is None

    def test_shifted_form(self, F7):
        # a*(x-1)^3 + 5 expanded, a = 3
        f = Poly(F7, [5, 0, 0, 0]) + Poly(F7, [-1, 1]) ** 3 * 3
        u = detect_unicritical(f)
        assert u.gamma == F7.one()
        assert u.c == F7.elem(5) - F7.one()  # centered constant = f(gamma)-gamma
        assert u.centered.coeff(1).is_zero()

    def test_characteristic_divides_degree(self, F3):
        with pytest.raises(CharacteristicDividesDegree):
            detect_unicritical(from_string("x^3+1", F3))

    def test_quadratics_always_unicritical(self, F7):
        for b, c in itertools.product(range(7), repeat=2):
            f = Poly(F7, [c, b, 1])
            assert detect_unicritical(f) is not None


class TestHypothesisCheck:
    def test_degree3_F7_ok(self, F7):
        assert hypothesis_check(3, F7).ok

    def test_degree3_F5_fails(self, F5):
        rep = hypothesis_check(3, F5)
        assert not rep.ok and rep.fails == ((3, 2),)

    def test_degree4_F13_ok(self, F13):
        assert hypothesis_check(4, F13).ok

    def test_degree4_includes_mod4(self):
        F11 = build_field(11)
        rep = hypothesis_check(4, F11)
        assert not rep.ok
        assert (4, 3) in rep.fails  # 11 = 3 mod 4

    def test_failure_implies_root_exhaustive_F5(self, F5):
        assert pc.check_hypothesis_failure_has_root(F5) == 100


class TestAdjustedOrbit:
    def test_published_orbit_and_set(self, F7):
        u = detect_unicritical(from_string("x^3+3", F7))
        rep = adjusted_critical_orbit(u)
        assert [e.vector() for e in rep.tail] == [0, 3, 2]
        assert [e.vector() for e in rep.cycle] == [4]
        assert {v.vector() for _, v, _ in rep.adjusted_values} == {2, 4}
        assert rep.verdict.is_proved

    def test_sibling_orbit_set(self, F7):
        u = detect_unicritical(from_string("x^3+4", F7))
        rep = adjusted_critical_orbit(u)
        assert {v.vector() for _, v, _ in rep.adjusted_values} == {3, 5}
        assert rep.verdict.is_proved

    def test_cube_in_orbit_refutes_at_one(self, F7):
        u = detect_unicritical(from_string("x^3+1", F7))
        rep = adjusted_critical_orbit(u)
        assert rep.verdict.is_reducible and rep.verdict.iterate == 1
        assert not is_irreducible(from_string("x^3+1", F7))

    def test_orbit_replay(self, F7):
        u = detect_unicritical(from_string("2x^3+5", F7))
        rep = adjusted_critical_orbit(u)
        f = u.original
        seq = rep.tail + rep.cycle
        t = u.gamma
        for n in range(3 * len(seq)):
            expected = seq[n] if n < len(seq) else \
                rep.cycle[(n - len(rep.tail)) % len(rep.cycle)]
            assert t == expected
            t = f(t)

    def test_hypothesis_failure_raises(self, F5):
        u = detect_unicritical(from_string("x^3+2", F5))
        with pytest.raises(HypothesisFailure):
            adjusted_critical_orbit(u)


class TestPairTest:
    def test_table1_pair(self, F7):
        assert pair_test(from_string("x^3+3", F7), 0).is_proved

    def test_beta_equals_c_is_degenerate(self, F7):
        v = pair_test(from_string("x^3+3", F7), 3)
        assert v.is_reducible and v.iterate == 1

    def test_non_monic_member(self, F7):
        assert pair_test(from_string("2x^3+6", F7), 0).is_proved

    def test_not_centered_rejected(self, F7):
        with pytest.raises(NotCentered):
            pair_test(from_string("x^3+x+1", F7), 0)

    def test_degree4_pairs_vs_oracle(self, F13):
        # 13 = 1 mod 4 and mod 2: the quartic criterion is complete
        for c in range(1, 13):
            h = Poly(F13, [c, 0, 0, 0, 1])
            v = pair_test(h, 0)
            for n in (1, 2):
                oracle = is_irreducible(iterate(h, n))
                assert oracle == (v.is_proved or n < v.iterate)

    def test_completeness_vs_oracle_F7(self, F7):
        assert pc.check_pair_vs_oracle_F7(F7) == 144


class TestStepTest:
    def test_first_step_matches_pair(self, F7):
        h = from_string("x^3+3", F7)
        assert step_test(Poly.x(F7), h, 1)

    def test_shifted_g_detects_cube(self, F7):
        h = from_string("x^3+3", F7)
        g = from_string("x+3", F7)  # x - 4
        assert not step_test(g, h, 1)
        assert not is_irreducible(h - Poly(F7, [4]))

    def test_second_step(self, F7):
        h = from_string("x^3+3", F7)
        assert step_test(Poly.x(F7), h, 2)

    def test_previous_iterate_must_be_irreducible(self, F7):
        h = from_string("x^3+1", F7)
        with pytest.raises(PreviousIterateReducible):
            step_test(Poly.x(F7), h, 2)

    def test_chain_matches_oracle(self, F7):
        h = from_string("x^3+5", F7)
        g = Poly.x(F7)
        n = 1
        while n <= 3:
            ok = step_test(g, h, n)
            assert ok == is_irreducible(iterate(h, n))
            if not ok:
                break
            n += 1


class TestTable1:
    def test_exact_reproduction(self, F7):
        got = {}
        for a, c in itertools.product(range(1, 7), repeat=2):
            res = unicritical_verdict(Poly(F7, [c, 0, 0, a]))
            _, rep = res
            if rep.verdict.is_proved:
                key = frozenset(v.vector() for _, v, _ in rep.adjusted_values)
                got.setdefault(key, set()).add((a, c))
        assert got == TABLE1

    def test_reduction_theorem_agreement(self, F7):
        # pair_test on (centered, -gamma) equals the orbit verdict
        rng = random.Random(12)
        for _ in range(20):
            a = rng.randrange(1, 7)
            gamma = rng.randrange(7)
            c = rng.randrange(7)
            f = Poly(F7, [c, 0, 0, a])
            f = affine_conjugate(f, 1, -F7.elem(gamma))
            u = detect_unicritical(f)
            rep = adjusted_critical_orbit(u)
            v = pair_test(u.centered, u.beta)
            assert v.kind == rep.verdict.kind
            if v.is_reducible:
                assert v.iterate == rep.verdict.iterate

    def test_conjugation_stability(self, F7):
        assert pc.check_conjugation_invariance_table1(F7) == 36


class TestVerdictType:
    def test_constructors(self):
        v = Verdict.reducible_at(3, "why", r=2)
        assert v.kind is VerdictKind.REDUCIBLE_AT_ITERATE
        assert v.iterate == 3 and v.details["r"] == 2
        assert Verdict.proved("ok").is_proved
        assert Verdict.through(10, "bound").kind is VerdictKind.IRREDUCIBLE_THROUGH
