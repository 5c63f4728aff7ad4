import itertools

import pytest

from dynir.errors import (
    BothCoefficientsZero,
    CharacteristicLEQ3,
    ExcludedG,
    ReducibleG,
)
from dynir.cubic import (
    chu_polynomial,
    chu_sequence,
    chu_test,
    condition1_sequence,
    condition2_check,
    depress,
    dickson_test,
    gnos_check,
    make_depressed,
    recursive_test,
)
from dynir.ffield import build_field, extend_field, is_rth_power, lift, norm, sqrt
from dynir.polyring import (
    Poly,
    affine_conjugate,
    discriminant,
    from_string,
    is_irreducible,
    iterate,
    lift_poly,
    to_string,
)

import property_checks as pc


def qr_class_equal(a, b):
    """Same quadratic residue class: both zero, or a nonzero square ratio."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return is_rth_power(a / b, 2, witness=False).is_rth_power


class TestDepress:
    def test_already_depressed(self, F7):
        h = depress(from_string("x^3+6x+2", F7))
        assert (h.b3, h.b1, h.b0) == (F7.one(), F7.elem(6), F7.elem(2))
        assert h.beta0 == F7.zero()

    def test_family_form_with_shift(self, F7):
        h = depress(from_string("x^3+3x^2+4", F7))
        assert h.beta0 == F7.one()
        assert h.b1 == F7.elem(-3) and h.b0.is_zero() and h.b3 == F7.one()

    def test_lead_coefficient_preserved(self, F7):
        h = depress(from_string("2x^3+4x^2+x+5", F7))
        assert h.b3 == F7.elem(2)
        assert h.b1 == F7.elem(1) - F7.elem(4) ** 2 / (3 * F7.elem(2))

    def test_char3_rejected(self, F3):
        with pytest.raises(CharacteristicLEQ3):
            depress(from_string("x^3+x+1", F3))

    def test_roundtrip_identity_exhaustive_F5(self, F5):
        # h(x) = f(x - beta0) + beta0, and the inverse shift reconstructs f
        for a3 in (1, 2):
            for a2, a1, a0 in itertools.product(range(5), repeat=3):
                f = Poly(F5, [a0, a1, a2, a3])
                h = depress(f)
                back = affine_conjugate(h.poly(), 1, -h.beta0)
                assert back == f


class TestDickson:
    def test_worked_example_F7(self, F7):
        r = dickson_test(6, 2, F7)
        assert r.irreducible
        assert r.disc == F7.one()
        assert {m.vector() for m in r.mu_pair} == {3, 4}
        assert {v.vector() for v in r.cube_values} == {2, 3}

    def test_worked_example_F19(self, F19):
        r = dickson_test(1, 1, F19)
        assert r.irreducible
        assert r.disc == F19.elem(7)
        assert {m.vector() for m in r.mu_pair} == {3, 16}
        assert {v.vector() for v in r.cube_values} == {15, 3}

    def test_unicritical_adjustment(self, F7):
        r = dickson_test(0, -3, F7)
        assert r.irreducible
        assert [v.vector() for v in r.cube_values] == [3]  # -a0
        assert is_irreducible(from_string("x^3+4", F7))

    def test_both_zero_rejected(self, F7):
        with pytest.raises(BothCoefficientsZero):
            dickson_test(0, 0, F7)

    def test_zero_constant_reducible(self, F7):
        r = dickson_test(3, 0, F7)
        assert not r.irreducible and r.reason == "root-at-zero"

    @pytest.mark.parametrize("p", [7, 13, 19])
    def test_vs_oracle_exhaustive(self, p):
        field = build_field(p)
        assert pc.check_dickson_vs_oracle(field) == p * p - 1

    def test_vs_oracle_q_2_mod_3(self, F5):
        # 5 = 2 mod 3 exercises the quadratic sqrt(-3) step
        assert pc.check_dickson_vs_oracle(F5) == 24


class TestCondition1:
    def test_published_F7_sequence(self, F7):
        c1 = condition1_sequence(make_depressed(F7, 1, 6, 2))
        assert [v.vector() for v in c1.values] == [4, 2, 1, 2]
        assert c1.all_square and c1.decided_for_all_n
        assert c1.periodic_certificate == (2, 2)
        # replay: (4, 2, 1, 2, 1, 2, ...)
        assert [c1.value_at(k).vector() for k in range(1, 8)] == \
            [4, 2, 1, 2, 1, 2, 1]

    def test_published_F19_failure(self, F19):
        c1 = condition1_sequence(make_depressed(F19, 1, 1, 1))
        assert [v.vector() for v in c1.values] == [5, 1, 8]
        assert c1.first_failure == 3 and not c1.all_square

    def test_zero_value_fails(self, F7):
        # critical point 1 maps to the pair target: the product vanishes
        h = make_depressed(F7, 1, -3, 0, beta0=F7.elem(-2))
        c1 = condition1_sequence(h)
        assert c1.first_failure == 1
        assert c1.values[0].is_zero()

    def test_matches_direct_orbit_computation(self, F19):
        # gamma = +-5 in F_19: compare with explicit critical values
        h = make_depressed(F19, 1, 1, 1)
        c1 = condition1_sequence(h)
        g1, g2 = F19.elem(5), F19.elem(14)
        hp = h.poly()
        t1, t2 = g1, g2
        for k in range(1, 6):
            t1, t2 = hp(t1), hp(t2)
            assert c1.value_at(k) == -3 * t1 * t2


class TestCondition2:
    def test_level1_norm_pair(self, F7):
        h = make_depressed(F7, 1, 6, 2)
        rep = recursive_test(h, n_max=2)
        lvl1 = rep.levels[1]
        assert lvl1.cond2_norm.vector() == 4
        assert lvl1.cond2_norm_alt.vector() == 5
        assert not lvl1.cond2_is_cube

    def test_canonical_norm_sequence_with_cube_at_level4(self, F7):
        h = make_depressed(F7, 1, 6, 2)
        rep = recursive_test(h, n_max=10)
        norms = [st.cond2_norm.vector() for st in rep.levels[1:]]
        alts = [st.cond2_norm_alt.vector() for st in rep.levels[1:]]
        assert norms == [4, 2, 2, 1]
        assert alts == [5, 3, 3, 6]
        # one fixed branch reaches the cube 1 at level 4; both branches agree
        assert norms[3] == 1
        cubes = {1, 6}  # cubes of F_7^x
        assert alts[3] in cubes

    def test_mu_invariant_on_levels(self, F7):
        h = make_depressed(F7, 1, 6, 2)
        rep = recursive_test(h, n_max=4)
        for st in rep.levels:
            A1 = lift(h.b1, st.field, st.level) / lift(h.b3, st.field, st.level)
            A0 = (lift(h.b0, st.field, st.level) - st.beta_n) / \
                lift(h.b3, st.field, st.level)
            assert 81 * st.mu_n ** 2 == -4 * A1 ** 3 - 27 * A0 ** 2

    def test_level0_values_match_dickson(self, F19):
        h = make_depressed(F19, 1, 1, 1)
        rep = recursive_test(h, n_max=1)
        lvl0 = rep.levels[0]
        assert {lvl0.cond2_norm.vector(), lvl0.cond2_norm_alt.vector()} == \
            {15, 3}

    def test_flat_vs_nested_tower_agreement(self, F7):
        # level-2 norms computed in the nested tower (modulus h - beta_1
        # over level 1) match the single-step realization
        h = make_depressed(F7, 1, 6, 2)
        rep = recursive_test(h, n_max=3)
        flat = {rep.levels[2].cond2_norm.vector(),
                rep.levels[2].cond2_norm_alt.vector()}
        T1 = extend_field(build_field(7), [2, 6, 0, 1])  # F_7(beta_1)
        b1 = T1.gen()
        T2 = extend_field(T1, [2 - b1, 6, 0, 1])         # h(x) - beta_1
        b2 = T2.gen()
        A0 = F7.elem(2) - b2
        disc = -4 * T2.elem(6) ** 3 - 27 * A0 ** 2
        mu = sqrt(disc / 81)
        s3 = lift(F7.elem(2), T2, 2)
        nested = set()
        for m in (mu, -mu):
            for s in (s3, -s3):
                v = (-A0 + m * s) / 2
                nested.add(norm(v, 0).vector())
        assert nested == flat


class TestRecursiveTest:
    def test_published_F7_run(self, F7):
        rep = recursive_test(make_depressed(F7, 1, 6, 2), n_max=10)
        assert rep.verdict.is_reducible and rep.verdict.iterate == 5
        assert rep.verdict.reason == "cube-condition-failure"
        assert [st.oracle_irreducible for st in rep.levels] == \
            [True, True, True, True, False]

    def test_published_F19_run(self, F19):
        rep = recursive_test(make_depressed(F19, 1, 1, 1), n_max=10)
        assert rep.verdict.is_reducible and rep.verdict.iterate == 3
        assert rep.verdict.reason == "square-condition-failure"

    def test_square_disc_example_vs_oracle(self, F7):
        h = make_depressed(F7, 1, 2, 1)
        assert discriminant(h.poly()) == F7.elem(4)
        rep = recursive_test(h, n_max=4, oracle_max_level=4)
        for st in rep.levels:
            if st.oracle_irreducible is not None and st.cond2_is_cube is not None:
                assert st.oracle_irreducible == (not st.cond2_is_cube)

    def test_char3_rejected(self, F3):
        with pytest.raises(CharacteristicLEQ3):
            recursive_test(make_depressed(build_field(7), 1, 1, 1, 0))
            # the guard fires on construction for F_3
        with pytest.raises(CharacteristicLEQ3):
            make_depressed(F3, 1, 1, 1)

    def test_exhaustive_vs_oracle_F7_through_3(self, F7):
        for a1, a0 in itertools.product(range(7), repeat=2):
            if a1 == 0 and a0 == 0:
                continue
            h = make_depressed(F7, 1, a1, a0)
            rep = recursive_test(h, n_max=3, oracle_max_level=0)
            for n in range(1, 4):
                oracle = is_irreducible(iterate(h.poly(), n))
                if rep.verdict.is_reducible:
                    predicted = n < rep.verdict.iterate
                else:
                    predicted = True
                assert oracle == predicted, f"a1={a1}, a0={a0}, n={n}"

    def test_pair_target_changes_verdict(self, F7):
        # (x^3+6x+2, beta0=4): the first iterate h - 4 factors
        h = make_depressed(F7, 1, 6, 2, beta0=4)
        rep = recursive_test(h, n_max=3, oracle_max_level=0)
        assert rep.verdict.is_reducible and rep.verdict.iterate == 1
        assert not is_irreducible(from_string("x^3+6x+5", F7))

    def test_branch_independence_suite(self, F7, F19):
        assert pc.check_branch_independence_examples(F7, F19) > 0


class TestCond1Exactness:
    def test_tower_disc_norm_square_class(self, F7):
        # s_{n+1} equals N(Disc((1/b3)(h - beta_n))) up to squares
        h = make_depressed(F7, 1, 6, 2)
        rep = recursive_test(h, n_max=3)
        for st in rep.levels[:4]:
            f_level = Poly(st.field, [(lift(h.b0, st.field, st.level)
                                       - st.beta_n) / lift(h.b3, st.field, st.level),
                                      lift(h.b1, st.field, st.level)
                                      / lift(h.b3, st.field, st.level),
                                      0, 1], st.level)
            d = discriminant(f_level)
            assert qr_class_equal(norm(d, 0), st.cond1_value)


class TestGnos:
    def test_published_F19_violation(self, F19):
        rep = gnos_check(from_string("x^3+x+1", F19), 10)
        assert not rep.passed and rep.first_violation == 3

    def test_nonsquare_disc_violates_at_one(self, F19):
        f = from_string("x^3+2x+3", F19)
        assert not is_rth_power(discriminant(f), 2).is_rth_power
        rep = gnos_check(f, 5)
        assert rep.first_violation == 1

    def test_periodic_pass_F7(self, F7):
        rep = gnos_check(from_string("x^3+6x+2", F7), 10)
        assert rep.passed and rep.first_violation is None

    def test_necessity_exhaustive_F7(self, F7):
        # a violation at n is only fired when iterate n is truly reducible
        for a1, a0 in itertools.product(range(7), repeat=2):
            f = Poly(F7, [a0, a1, 0, 1])
            if f.derivative().degree < 1:
                continue
            rep = gnos_check(f, 3)
            if rep.first_violation is not None and rep.first_violation <= 3:
                assert not is_irreducible(iterate(f, rep.first_violation)), \
                    f"gnos overfired at a1={a1}, a0={a0}"

    def test_even_degree_branch(self, F7):
        # x^4 + x has nonsquare-ness requirements flipped; smoke only
        rep = gnos_check(from_string("x^4+x+1", F7), 2)
        assert rep.first_violation in (None, 1, 2)


class TestChu:
    def test_alpha_one_proved(self, F7):
        v = chu_test(1, F7)
        assert v.is_proved
        assert to_string(chu_polynomial(1, F7)) == "x^3 + 3*x^2 + 4"

    def test_alpha_two_degenerate(self, F7):
        v = chu_test(2, F7)
        assert v.is_reducible and v.iterate == 1
        f = chu_polynomial(2, F7)
        assert f.coeff(0).is_zero()  # 0 is a root

    def test_sweep_exactly_plus_minus_one(self, F7):
        winners = [a for a in range(7) if chu_test(a, F7).is_proved]
        assert winners == [1, 6]

    def test_sweep_F13(self, F13):
        # consistency: every survivor's conjugated polynomial passes the
        # oracle through iterate 3
        for a in range(13):
            v = chu_test(a, F13)
            if v.is_proved:
                f = chu_polynomial(a, F13)
                for n in (1, 2, 3):
                    assert is_irreducible(iterate(f, n))

    def test_proved_matches_oracle_iterates(self, F7):
        for a in (1, 6):
            f = chu_polynomial(a, F7)
            for n in (1, 2, 3, 4):
                assert is_irreducible(iterate(f, n))

    def test_sequence_seed_x_minus_1(self, F7):
        rep = chu_sequence(from_string("x+6", F7), 3)
        assert [p.degree for p in rep.polys] == [1, 3, 9, 27]
        assert rep.irreducible == [True, True, True, True]
        assert rep.criterion_pass

    def test_sequence_excluded_seed(self, F7):
        with pytest.raises(ExcludedG):
            chu_sequence(from_string("x+5", F7), 2)  # x - 2
        with pytest.raises(ExcludedG):
            chu_sequence(from_string("x+2", F7), 2)

    def test_sequence_reducible_seed_rejected(self, F7):
        with pytest.raises(ReducibleG):
            chu_sequence(from_string("x^3+1", F7), 2)

    def test_sequence_criterion_matches_flags(self, F7):
        rep = chu_sequence(from_string("x+4", F7), 2)  # seed x - 3
        assert not rep.criterion_pass
        assert not all(rep.irreducible)

    def test_quadratic_seed(self, F7):
        rep = chu_sequence(from_string("x^2+1", F7), 2)
        if rep.criterion_pass:
            assert all(rep.irreducible)
