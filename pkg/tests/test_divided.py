"""Divided powers on GW and the concrete f/g invariant families."""

import random
from itertools import combinations

import pytest

from gwinv.cohomology import symbol
from gwinv.divided import (
    H_TARGET,
    W_TARGET,
    eps_value,
    eval_f,
    eval_f_all,
    eval_fixed_dim,
    eval_g,
    eval_pi,
    eval_pi_series,
    eval_sw,
    f1_of,
    p_fixed,
    unit_value,
    zero_value,
)
from gwinv.fields import minus_one, parse_field, parse_sc, sc_one
from gwinv.sampling import (
    rand_diag,
    rand_in_In,
    rand_in_In_data,
    rand_pfister_slots,
    rand_sc,
    standard_fields,
)
from gwinv.witt import (
    GwElement,
    MembershipError,
    gpfister,
    gw_equal,
    pfister,
    witt_canonical,
    witt_one,
    witt_zero,
)

R = parse_field("R")
RTT = parse_field("R((t1))((t2))")
T1, T2 = parse_sc("t1", RTT), parse_sc("t2", RTT)
BOTH = (W_TARGET, H_TARGET)


class TestPi:
    def test_degree_one_is_identity(self):
        rng = random.Random(0)
        for F in standard_fields(2):
            x = GwElement.diag(rand_sc(rng, F), rand_sc(rng, F)) - GwElement.diag(
                rand_sc(rng, F)
            )
            for n in (1, 2, 3):
                assert gw_equal(eval_pi(n, 1, x), x)

    def test_kills_pfister_lifts(self):
        rng = random.Random(1)
        for F in standard_fields(2):
            for n in (1, 2, 3):
                g = gpfister(list(rand_pfister_slots(rng, F, n)))
                series = eval_pi_series(n, 4, g)
                for d in (2, 3, 4):
                    v = series.coeff(d)
                    assert v.dim == 0 and witt_canonical(v).is_zero

    def test_pairwise_product_on_sums(self):
        g1, g2 = gpfister([T1]), gpfister([T2])
        assert gw_equal(eval_pi(1, 2, g1 + g2), g1 * g2)

    def test_elementary_symmetric_brute_force(self):
        rng = random.Random(2)
        for F in standard_fields(2):
            for n in (1, 2):
                lifts = [
                    gpfister(list(rand_pfister_slots(rng, F, n))) for _ in range(3)
                ]
                total = lifts[0] + lifts[1] + lifts[2]
                series = eval_pi_series(n, 3, total)
                for d in (2, 3):
                    sym = GwElement.zero(F)
                    for combo in combinations(range(3), d):
                        term = GwElement.unit(F)
                        for i in combo:
                            term = term * lifts[i]
                        sym = sym + term
                    assert gw_equal(series.coeff(d), sym)

    def test_not_a_lambda_structure(self):
        # the divided powers do not kill the unit in degrees >= 2
        one = GwElement.unit(R)
        assert not witt_canonical(eval_pi(1, 2, one)).is_zero


class TestEvalF:
    def test_pfister_vanishing(self):
        rng = random.Random(3)
        for F in standard_fields(2):
            for n in (1, 2, 3):
                q = witt_canonical(pfister(rand_pfister_slots(rng, F, n)))
                for d in (2, 3):
                    for target in BOTH:
                        assert eval_f(n, d, q, target).is_zero

    def test_opposite_pfister_formula(self):
        rng = random.Random(4)
        for F in standard_fields(2):
            for n in (1, 2):
                slots = rand_pfister_slots(rng, F, n)
                q = witt_canonical(pfister(slots))
                for d in range(1, 5):
                    for target in BOTH:
                        want = eps_value(F, n * (d - 1), target) * f1_of(slots, target)
                        if d % 2 and target.mode == "W":
                            want = -want
                        assert eval_f(n, d, -q, target) == want

    def test_two_pfister_sum_in_cohomology(self):
        q = witt_canonical(pfister([T1])) + witt_canonical(pfister([T2]))
        assert eval_f(1, 2, q, H_TARGET) == symbol([T1, T2])

    def test_degree_zero_unit(self):
        q = witt_zero(RTT)
        assert eval_f(2, 0, q, W_TARGET) == witt_one(RTT)
        assert eval_f(2, 0, q, H_TARGET) == unit_value(RTT, H_TARGET)

    def test_membership_guard(self):
        with pytest.raises(MembershipError):
            eval_f(2, 1, witt_canonical(pfister([T1])), W_TARGET)

    def test_sum_rule(self):
        rng = random.Random(5)
        for F in standard_fields(2):
            for target in BOTH:
                n = rng.randint(1, 2)
                d = rng.randint(0, 4)
                q1 = rand_in_In(rng, F, n)
                q2 = rand_in_In(rng, F, n)
                f1 = eval_f_all(n, q1, target, d)
                f2 = eval_f_all(n, q2, target, d)
                want = zero_value(F, target)
                for k in range(d + 1):
                    want = want + f1[k] * f2[d - k]
                assert eval_f(n, d, q1 + q2, target) == want


class TestEvalG:
    def test_degree_one_is_f(self):
        rng = random.Random(6)
        for F in standard_fields(2):
            q = rand_in_In(rng, F, 2)
            for target in BOTH:
                assert eval_g(2, 1, q, target) == eval_f(2, 1, q, target)

    def test_pfister_dies_at_three(self):
        q = witt_canonical(pfister([T1, T2]))
        for target in BOTH:
            assert eval_g(2, 3, q, target).is_zero

    def test_bounded_support(self):
        rng = random.Random(7)
        for F in standard_fields(2):
            for target in BOTH:
                n = rng.randint(1, 2)
                s, t = rng.randint(0, 2), rng.randint(0, 2)
                q, _ = rand_in_In_data(rng, F, n, s, t)
                bound = 2 * max(s, t)
                assert eval_g(n, bound + 1, q, target).is_zero
                assert eval_g(n, bound + 2, q, target).is_zero

    def test_bound_attained_over_real_tower(self):
        q = -witt_canonical(pfister([minus_one(R)]))
        for target in BOTH:
            assert not eval_g(1, 2, q, target).is_zero


class TestStiefelWhitney:
    def test_single_entry(self):
        x = GwElement.diag(T1)
        assert eval_sw(1, x, H_TARGET) == symbol([T1])
        assert eval_sw(1, x, W_TARGET) == witt_canonical(pfister([T1]))

    def test_elementary_symmetric_expansion(self):
        rng = random.Random(8)
        for F in standard_fields(2):
            entries = [rand_sc(rng, F) for _ in range(4)]
            x = GwElement.diag(*entries)
            for d in range(5):
                want = zero_value(F, H_TARGET)
                for combo in combinations(range(4), d):
                    term = unit_value(F, H_TARGET)
                    for i in combo:
                        term = term * symbol([entries[i]])
                    want = want + term
                assert eval_sw(d, x, H_TARGET) == want

    def test_group_morphism_on_differences(self):
        rng = random.Random(9)
        for F in standard_fields(1):
            x = rand_diag(rng, F, 3)
            y = rand_diag(rng, F, 2)
            for target in BOTH:
                sx = eval_sw(1, x - y, target)
                # degree-1 coefficient subtracts
                assert sx == eval_sw(1, x, target) - eval_sw(1, y, target)

    def test_fixed_dim_expansion_matches_group_law(self):
        # eq-p route, cross-checked against the series route
        a, b = T1, parse_sc("-1", RTT)
        x = GwElement.diag(a, b)
        got = p_fixed(2, x)
        want = (
            GwElement.unit(RTT) - GwElement.diag(a, b) + GwElement.diag(a * b)
        )
        assert gw_equal(got, want)
        assert witt_canonical(got) == eval_sw(2, x, W_TARGET)


class TestFixedDim:
    def test_binary_degree_one(self):
        # eps - sw_1(<a,b>) realizes the Witt class itself / the class (-ab)
        a, b = T1, parse_sc("-t2", RTT)
        x = GwElement.diag(a, b)
        q = witt_canonical(x)
        assert eval_fixed_dim(1, x, W_TARGET, "f") == q
        assert eval_fixed_dim(1, x, H_TARGET, "f") == symbol([-(a * b)])

    def test_matches_direct_evaluation(self):
        rng = random.Random(10)
        for F in standard_fields(2):
            for m in (2, 4, 6):
                x = rand_diag(rng, F, m)
                q = witt_canonical(x)
                for d in range(0, 9, 2):
                    for target in BOTH:
                        assert eval_fixed_dim(d, x, target, "f") == eval_f(
                            1, d, q, target
                        )
                        assert eval_fixed_dim(d, x, target, "g") == eval_g(
                            1, d, q, target
                        )

    def test_g_vanishes_beyond_dimension(self):
        rng = random.Random(11)
        x = rand_diag(rng, RTT, 4)
        for d in (5, 6, 7):
            for target in BOTH:
                assert eval_fixed_dim(d, x, target, "g").is_zero

    def test_hyperbolic_normalized(self):
        hyp = GwElement.diag(sc_one(RTT), -sc_one(RTT))
        for d in range(1, 5):
            for target in BOTH:
                assert eval_fixed_dim(d, hyp, target, "f").is_zero

    def test_odd_dimension_rejected(self):
        with pytest.raises(ValueError):
            eval_fixed_dim(1, GwElement.diag(T1), W_TARGET)
