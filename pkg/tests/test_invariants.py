"""Symbolic invariant algebra: basis changes, operators, and agreement of
every symbolic action with its pointwise contract."""

import random

import pytest

from gwinv.divided import H_TARGET, W_TARGET, eval_f, eval_g, f1_of
from gwinv.fields import parse_field, parse_sc
from gwinv.invariants import (
    F2Poly,
    InvariantSyntaxError,
    SymbolicInvariant,
    change_basis,
    coeff_at_zero,
    coeff_ops,
    coeff_value,
    evaluate,
    extract_coeffs,
    is_normalized,
    omega_t,
    parse_invariant,
    phi,
    product,
    psi_tilde,
    psi_tilde_closed_f,
    render_invariant,
    restrict,
    shift,
    to_basis,
)
from gwinv.sampling import (
    rand_diag,
    rand_in_In,
    rand_pfister_slots,
    rand_sc,
    rand_symbolic,
    standard_fields,
)
from gwinv.witt import (
    GwElement,
    MembershipError,
    pfister,
    signed_disc,
    witt_canonical,
    witt_zero,
)

R = parse_field("R")
RTT = parse_field("R((t1))((t2))")


def gen(n, mode, basis, d):
    return SymbolicInvariant.generator(n, mode, basis, d)


class TestF2Poly:
    def test_char_two(self):
        x = F2Poly(0b101)
        assert (x + x).is_zero

    def test_carryless_product(self):
        # (1 + eps)(1 + eps) = 1 + eps^2
        x = F2Poly(0b11)
        assert x * x == F2Poly(0b101)

    def test_render(self):
        assert str(F2Poly(0b110)) == "eps+eps^2"


class TestBasisChange:
    @pytest.mark.parametrize("mode", ["W", "H"])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_round_trip_generators(self, mode, n):
        for d in range(10):
            f = gen(n, mode, "f", d)
            g = gen(n, mode, "g", d)
            assert to_basis(to_basis(f, "g"), "f") == f
            assert to_basis(to_basis(g, "f"), "g") == g

    def test_degree_one_agree(self):
        assert to_basis(gen(2, "W", "g", 1), "f") == gen(2, "W", "f", 1)

    def test_degree_three(self):
        got = to_basis(gen(2, "W", "g", 3), "f")
        ops = coeff_ops("W")
        want = SymbolicInvariant(2, "W", "f", {3: 1, 2: ops.eps_pow(2)})
        assert got == want

    def test_round_trip_random(self):
        rng = random.Random(0)
        for mode in ("W", "H"):
            for _ in range(100):
                alpha = rand_symbolic(rng, rng.randint(1, 3), mode, "f", 9, 4)
                assert change_basis(change_basis(alpha)) == alpha

    def test_unipotent_triangular(self):
        # g^d = f^d + (lower f-degrees)
        for n in (1, 2):
            for d in range(1, 9):
                coeffs = to_basis(gen(n, "W", "g", d), "f").coeffs
                assert coeffs.get(d) == 1
                assert max(coeffs) == d


class TestPhi:
    def test_plus_shifts_f(self):
        assert phi(gen(1, "W", "f", 4), 1) == gen(1, "W", "f", 3)
        assert not phi(gen(1, "W", "f", 0), 1).coeffs

    def test_minus_on_f2(self):
        ops = coeff_ops("W")
        got = phi(gen(3, "W", "f", 2), -1)
        want = SymbolicInvariant(3, "W", "f", {0: -ops.eps_pow(3), 1: 1})
        assert got == want

    def test_g_actions_match_defining_parity(self):
        # odd degree: the minus shift steps down; even degree: the plus one
        for n in (1, 2):
            for m in range(0, 4):
                assert phi(gen(n, "W", "g", 2 * m + 1), -1) == gen(n, "W", "g", 2 * m)
                if m >= 1:
                    assert phi(gen(n, "W", "g", 2 * m), 1) == gen(
                        n, "W", "g", 2 * m - 1
                    )

    def test_g_cross_actions(self):
        # the non-defining shifts pick up an eps^n correction
        ops = coeff_ops("W")
        got = phi(gen(2, "W", "g", 4), -1)
        want = SymbolicInvariant(2, "W", "g", {3: 1, 2: -ops.eps_pow(2)})
        assert got == want
        got_plus = phi(gen(2, "W", "g", 3), 1)
        want_plus = SymbolicInvariant(2, "W", "g", {2: 1, 1: ops.eps_pow(2)})
        assert got_plus == want_plus

    def test_double_shift_steps_two(self):
        for n in (1, 2):
            for d in range(2, 8):
                assert shift(gen(n, "W", "g", d), plus=1, minus=1) == gen(
                    n, "W", "g", d - 2
                )

    def test_commutation_and_difference(self):
        rng = random.Random(1)
        for mode in ("W", "H"):
            for _ in range(60):
                n = rng.randint(1, 3)
                alpha = rand_symbolic(rng, n, mode, "f", 8, 4)
                pm = phi(phi(alpha, 1), -1)
                assert pm == phi(phi(alpha, -1), 1)
                assert phi(alpha, 1) - phi(alpha, -1) == pm.scale(
                    alpha.ops.eps_pow(n)
                )

    def test_kernel_is_constants(self):
        for mode in ("W", "H"):
            const = SymbolicInvariant(2, mode, "g", {0: coeff_ops(mode).one})
            assert not phi(const, 1).coeffs
            assert not phi(const, -1).coeffs
            probe = gen(2, mode, "g", 3)
            assert phi(probe, 1).coeffs and phi(probe, -1).coeffs

    def test_pointwise_contract(self):
        rng = random.Random(2)
        for F in standard_fields(2):
            for target in (W_TARGET, H_TARGET):
                n = rng.randint(1, 2)
                d = rng.randint(0, 4)
                alpha = gen(n, target.mode, "f", d)
                q = rand_in_In(rng, F, n, max_terms=1)
                slots = rand_pfister_slots(rng, F, n)
                pw = witt_canonical(pfister(slots))
                for sign in (1, -1):
                    shifted_q = q + pw if sign == 1 else q - pw
                    corr = f1_of(slots, target) * evaluate(phi(alpha, sign), q)
                    want = evaluate(alpha, q)
                    want = (
                        want + corr
                        if sign == 1 or target.mode == "H"
                        else want - corr
                    )
                    assert evaluate(alpha, shifted_q) == want


class TestClassification:
    def test_extracts_g_coefficients(self):
        rng = random.Random(3)
        for mode in ("W", "H"):
            for _ in range(60):
                n = rng.randint(1, 3)
                alpha = rand_symbolic(rng, n, mode, "g", 6, 4)
                got = extract_coeffs(alpha, 6)
                for d in range(7):
                    assert got[d] == alpha.coeffs.get(d, alpha.ops.zero)

    def test_pointwise_at_zero(self):
        rng = random.Random(4)
        F = parse_field("R((t1))")
        for mode, target in (("W", W_TARGET), ("H", H_TARGET)):
            for _ in range(20):
                alpha = rand_symbolic(rng, 2, mode, "g", 5, 3)
                d = rng.randint(0, 5)
                m = d // 2
                shifted = shift(alpha, plus=m + d % 2, minus=m)
                assert evaluate(shifted, witt_zero(F)) == coeff_value(
                    coeff_at_zero(shifted), mode, F, target
                )

    def test_normalization_split(self):
        alpha = SymbolicInvariant(1, "W", "g", {0: 5, 2: 1})
        assert not is_normalized(alpha)
        assert is_normalized(SymbolicInvariant(1, "W", "g", {2: 1}))


class TestProduct:
    def test_f11_squared(self):
        ops = coeff_ops("W")
        got = product(gen(1, "W", "f", 1), gen(1, "W", "f", 1))
        want = SymbolicInvariant(1, "W", "f", {1: ops.eps_pow(1), 2: 2})
        assert got == want

    def test_cohomology_single_term(self):
        for n in (1, 2, 3):
            for s in range(5):
                for t in range(5):
                    got = product(gen(n, "H", "f", s), gen(n, "H", "f", t))
                    want = SymbolicInvariant(
                        n, "H", "f", {s | t: coeff_ops("H").eps_pow(n * (s & t))}
                    )
                    assert got == want

    def test_pointwise(self):
        rng = random.Random(5)
        for F in standard_fields(2):
            for target in (W_TARGET, H_TARGET):
                n = rng.randint(1, 2)
                a = rand_symbolic(rng, n, target.mode, "f", 3, 2)
                b = rand_symbolic(rng, n, target.mode, "f", 3, 2)
                q = rand_in_In(rng, F, n, max_terms=1)
                assert evaluate(product(a, b), q) == evaluate(a, q) * evaluate(b, q)

    def test_unit(self):
        a = SymbolicInvariant(2, "W", "f", {0: 1, 3: -2})
        assert product(a, gen(2, "W", "f", 0)) == a


class TestPsiTilde:
    def test_even_steps_down(self):
        ops = coeff_ops("W")
        got = psi_tilde(gen(2, "W", "g", 4))
        assert got == SymbolicInvariant(2, "W", "g", {3: ops.eps_pow(1)})

    def test_odd_negates_in_witt_mode(self):
        assert psi_tilde(gen(2, "W", "g", 5)) == gen(2, "W", "g", 5).scale(-1)

    def test_odd_dies_in_cohomology_mode(self):
        assert not psi_tilde(gen(2, "H", "g", 5)).coeffs

    def test_involution_relation(self):
        rng = random.Random(6)
        for mode, delta in (("W", 1), ("H", 0)):
            for _ in range(40):
                alpha = rand_symbolic(rng, rng.randint(1, 3), mode, "g", 8, 4)
                lhs = psi_tilde(psi_tilde(alpha))
                rhs = psi_tilde(alpha).scale(alpha.ops.from_int(-delta))
                assert lhs == rhs

    def test_closed_form_cross_check(self):
        rng = random.Random(7)
        for mode in ("W", "H"):
            for _ in range(60):
                alpha = rand_symbolic(rng, rng.randint(1, 3), mode, "f", 8, 4)
                assert psi_tilde_closed_f(alpha) == psi_tilde(alpha)

    def test_pointwise_similitude(self):
        rng = random.Random(8)
        for F in standard_fields(2):
            for target in (W_TARGET, H_TARGET):
                n = rng.randint(1, 2)
                d = rng.randint(0, 5)
                alpha = gen(n, target.mode, "g", d)
                q = rand_in_In(rng, F, n, max_terms=1)
                lam = rand_sc(rng, F)
                want = evaluate(alpha, q) + f1_of([lam], target) * evaluate(
                    psi_tilde(alpha), q
                )
                assert evaluate(alpha, q.scale_sq(lam)) == want

    def test_similarity_class_criterion(self):
        rng = random.Random(9)
        for mode, delta in (("W", 1), ("H", 0)):
            ops = coeff_ops(mode)
            for _ in range(60):
                n = rng.randint(1, 3)
                alpha = rand_symbolic(rng, n, mode, "g", 7, 4)
                crit = all(
                    ops.eps_pow(n - 1) * alpha.coeffs.get(2 * i + 2, ops.zero)
                    == ops.from_int(delta) * alpha.coeffs.get(2 * i + 1, ops.zero)
                    for i in range(5)
                )
                assert crit == (not psi_tilde(alpha).coeffs)


class TestRestrict:
    def test_witt_mode_formula_instance(self):
        # degree 2 at level 1: binomial weights 1, 1 and trivial eps powers
        got = restrict(gen(1, "W", "f", 2))
        assert got == SymbolicInvariant(2, "W", "f", {1: 1, 2: 1})

    def test_cohomology_even_survives(self):
        for d in range(5):
            assert restrict(gen(1, "H", "f", 2 * d)) == gen(2, "H", "f", d)

    def test_cohomology_odd_dies(self):
        for d in (1, 3, 5):
            assert not restrict(gen(1, "H", "f", d)).coeffs

    def test_pointwise(self):
        rng = random.Random(10)
        for F in standard_fields(2):
            for target in (W_TARGET, H_TARGET):
                n = rng.randint(1, 2)
                d = rng.randint(0, 5)
                alpha = gen(n, target.mode, "f", d)
                q = rand_in_In(rng, F, n + 1, max_terms=1)
                assert evaluate(alpha, q) == evaluate(restrict(alpha), q)


class TestOmega:
    def test_degree_one_untwisted(self):
        assert omega_t(gen(3, "W", "f", 1), 2) == gen(1, "W", "f", 1)

    def test_degree_two_picks_up_eps(self):
        ops = coeff_ops("W")
        got = omega_t(gen(2, "W", "f", 2), 1)
        assert got == SymbolicInvariant(1, "W", "f", {2: ops.eps_pow(1)})

    def test_constants_untouched(self):
        const = SymbolicInvariant(3, "W", "f", {0: 7})
        assert omega_t(const, 2) == SymbolicInvariant(1, "W", "f", {0: 7})

    def test_depth_guard(self):
        with pytest.raises(ValueError):
            omega_t(gen(2, "W", "f", 1), 2)

    def test_composes(self):
        alpha = gen(3, "W", "f", 4)
        assert omega_t(omega_t(alpha, 1), 1) == omega_t(alpha, 2)


class TestEvaluate:
    def test_unit_invariant(self):
        from gwinv.divided import unit_value

        q = witt_zero(RTT)
        assert evaluate(gen(2, "W", "f", 0), q) == unit_value(RTT, W_TARGET)

    def test_matches_direct_family_values(self):
        rng = random.Random(11)
        for F in standard_fields(2):
            for target in (W_TARGET, H_TARGET):
                n = rng.randint(1, 2)
                d = rng.randint(0, 4)
                q = rand_in_In(rng, F, n, max_terms=1)
                assert evaluate(gen(n, target.mode, "f", d), q) == eval_f(
                    n, d, q, target
                )
                assert evaluate(gen(n, target.mode, "g", d), q) == eval_g(
                    n, d, q, target
                )

    def test_membership_guard(self):
        q = witt_canonical(pfister([parse_sc("t1", RTT)]))
        with pytest.raises(MembershipError):
            evaluate(gen(2, "W", "f", 1), q)

    def test_disc_example_over_nonreal_towers(self):
        # the alternating f-sum stabilizes to the signed-discriminant class
        rng = random.Random(12)
        for F in (parse_field("C((t1))"), parse_field("F5((t1))"), parse_field("F3")):
            for _ in range(10):
                x = rand_diag(rng, F, rng.choice((2, 4)))
                q = witt_canonical(x)
                total = witt_zero(F)
                for d in range(x.dim + 2):
                    v = eval_f(1, d, q, W_TARGET)
                    total = total + (v if d % 2 == 0 else -v)
                assert total == witt_canonical(GwElement.diag(signed_disc(x)))


class TestLiterals:
    def test_basic_generator(self):
        assert parse_invariant("f[2,3]", "W") == gen(2, "W", "f", 3)

    def test_sum_with_eps(self):
        got = parse_invariant("g[2,3] + eps^2*f[2,1]", "W")
        want = gen(2, "W", "g", 3) + gen(2, "W", "f", 1).scale(4)
        assert got == want

    def test_pure_g_stays_g(self):
        got = parse_invariant("g[1,2] + 3*g[1,0]", "W")
        assert got.basis == "g"

    def test_product_literal(self):
        got = parse_invariant("f[1,1]*f[1,1]", "W")
        assert got == product(gen(1, "W", "f", 1), gen(1, "W", "f", 1))

    def test_negative_coefficient(self):
        got = parse_invariant("-2*f[1,1]", "W")
        assert got == gen(1, "W", "f", 1).scale(-2)

    def test_h_mode_coefficients(self):
        got = parse_invariant("eps*f[1,2] + f[1,2]", "H")
        ops = coeff_ops("H")
        assert got == SymbolicInvariant(1, "H", "f", {2: ops.eps_pow(1) + ops.one})

    def test_errors(self):
        with pytest.raises(InvariantSyntaxError):
            parse_invariant("eps", "W")
        with pytest.raises(InvariantSyntaxError):
            parse_invariant("f[1,1] + g[2,1]", "W")
        with pytest.raises(InvariantSyntaxError):
            parse_invariant("spam[1,1]", "W")

    def test_render_round_trip(self):
        alpha = parse_invariant("g[2,3] + eps^2*f[2,1]", "W")
        again = parse_invariant(render_invariant(alpha).replace("(", "").replace(")", ""), "W")
        assert again == alpha
