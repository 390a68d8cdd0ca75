"""Mod-2 cohomology: symbols, cup products, the degree-n invariants of the
filtration, and residues."""

import random

import pytest

from gwinv.cohomology import (
    CohClass,
    coh_residue,
    cup,
    e_n,
    minus_one_class,
    minus_one_power,
    render_coh,
    symbol,
)
from gwinv.fields import enumerate_sc, minus_one, parse_field, parse_sc, sc_gen, sc_one
from gwinv.sampling import rand_in_In, rand_pfister_slots, rand_sc, standard_fields
from gwinv.witt import (
    GwElement,
    MembershipError,
    pfister,
    second_residue,
    witt_canonical,
    witt_one,
)

R = parse_field("R")
RT = parse_field("R((t1))")
RTT = parse_field("R((t1))((t2))")


class TestSymbol:
    def test_one_kills(self):
        assert symbol([sc_one(RT)]).is_zero

    def test_square_rewrite(self):
        t = parse_sc("t1", RT)
        assert symbol([t, t]) == cup(minus_one_class(RT), symbol([t]))

    def test_finite_square_vanishes(self):
        # over F_5 (where -1 is a square) the square of the base symbol dies
        F = parse_field("F5((t1))")
        u = sc_gen(F, "u")
        assert symbol([u, u]).is_zero
        # over F_3 it dies too: base cohomology stops in degree 1
        F3 = parse_field("F3((t1))")
        u3 = sc_gen(F3, "u")
        assert symbol([u3, u3]).is_zero

    def test_additivity_in_each_slot(self):
        for F in standard_fields(2):
            if len(enumerate_sc(F)) > 16:
                continue
            for a in enumerate_sc(F):
                for b in enumerate_sc(F):
                    assert symbol([a * b]) == symbol([a]) + symbol([b])

    def test_quad_closed_minus_one_trivial(self):
        F = parse_field("C((t1))")
        assert minus_one_class(F).is_zero
        assert symbol([-sc_gen(F, "t1")]) == symbol([sc_gen(F, "t1")])


class TestCup:
    def test_basis_monomial(self):
        t1, t2 = parse_sc("t1", RTT), parse_sc("t2", RTT)
        got = cup(symbol([t1]), symbol([t2]))
        assert got == symbol([t1, t2])
        assert render_coh(got) == "(t1).(t2)"

    def test_real_polynomial_ring(self):
        for a in range(4):
            for b in range(4):
                assert cup(minus_one_power(R, a), minus_one_power(R, b)) == (
                    minus_one_power(R, a + b)
                )
                assert not minus_one_power(R, a + b).is_zero

    def test_self_cup_rewrites(self):
        t = parse_sc("t1", RT)
        assert cup(symbol([t]), symbol([t])) == cup(minus_one_class(RT), symbol([t]))

    def test_commutative(self):
        rng = random.Random(3)
        for F in standard_fields(2):
            for _ in range(10):
                x = symbol([rand_sc(rng, F)]) + minus_one_power(F, rng.randint(0, 2))
                y = symbol([rand_sc(rng, F)])
                assert cup(x, y) == cup(y, x)

    def test_grading(self):
        t1, t2 = parse_sc("t1", RTT), parse_sc("t2", RTT)
        x = cup(cup(symbol([t1]), symbol([t2])), minus_one_class(RTT))
        (grade, part), = x.grades().items()
        assert grade == 3 and part == x


class TestEn:
    def test_normalizes_pfister_to_symbol(self):
        rng = random.Random(5)
        for F in standard_fields(2):
            for n in (1, 2, 3):
                slots = rand_pfister_slots(rng, F, n)
                q = witt_canonical(pfister(slots))
                assert e_n(q, n) == symbol(list(slots))

    def test_e2_of_quaternionic_class_over_R(self):
        m1 = minus_one(R)
        q = witt_canonical(pfister([m1, m1]))
        got = e_n(q, 2)
        assert got == minus_one_power(R, 2)
        assert not got.is_zero

    def test_additive_on_I_n(self):
        rng = random.Random(7)
        for F in standard_fields(2):
            for n in (1, 2):
                q1 = rand_in_In(rng, F, n, max_terms=1)
                q2 = rand_in_In(rng, F, n, max_terms=1)
                assert e_n(q1 + q2, n) == e_n(q1, n) + e_n(q2, n)

    def test_e0_is_dim_parity(self):
        assert e_n(witt_one(R), 0) == CohClass.one(R)

    def test_membership_guard(self):
        with pytest.raises(MembershipError):
            e_n(witt_one(R), 1)

    def test_e1_is_signed_discriminant_over_finite(self):
        F = parse_field("F3")
        one = sc_one(F)
        q = witt_canonical(GwElement.diag(one, one))
        # d(<1,1>) = -1 = u over F_3
        assert e_n(q, 1) == symbol([minus_one(F)])
        assert not e_n(q, 1).is_zero


class TestResidue:
    def test_defining_case(self):
        F = parse_field("F3((t1))")
        t, u = sc_gen(F, "t1"), sc_gen(F, "u")
        got = coh_residue(symbol([t, u]))
        assert got == symbol([sc_gen(parse_field("F3"), "u")])

    def test_unramified_dies(self):
        F = parse_field("F3((t1))")
        assert coh_residue(symbol([sc_gen(F, "u")])).is_zero

    def test_depth_zero_rejected(self):
        with pytest.raises(ValueError):
            coh_residue(CohClass.one(R))

    def test_commutes_with_witt_residue(self):
        rng = random.Random(11)
        fields = [F for F in standard_fields(2) if F.depth >= 1]
        for _ in range(60):
            F = rng.choice(fields)
            d = rng.randint(1, 3)
            q = rand_in_In(rng, F, d, max_terms=2)
            assert coh_residue(e_n(q, d)) == e_n(second_residue(q), d - 1)


class TestRendering:
    def test_zero_and_one(self):
        assert render_coh(CohClass.zero(R)) == "0"
        assert render_coh(CohClass.one(R)) == "1"

    def test_power_notation(self):
        assert render_coh(minus_one_power(R, 2)) == "(-1)^2"
        x = cup(minus_one_power(RT, 2), symbol([parse_sc("t1", RT)]))
        assert render_coh(x) == "(-1)^2.(t1)"
