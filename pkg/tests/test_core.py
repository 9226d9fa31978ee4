"""Exact types, bracket evaluation, verification, and transforms."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gpte.core import (
    NON_SYMMETRIC,
    SYMMETRIC,
    ExponentSpec,
    GpteSolution,
    Side,
    classify_symmetry,
    equivalent_transform,
    extended_power_sum,
    is_trivial,
    make_solution,
    mirror_transform,
    normalize,
    verify_equal,
)
from gpte.errors import NotApplicable, ZeroWithNonpositiveExponent


class TestExponentSpec:
    def test_basic_properties(self):
        spec = ExponentSpec((1, 2, 3))
        assert spec.degree == 3
        assert spec.side_size == 4
        assert spec.is_consecutive_from_1
        assert not spec.has_nonpositive
        assert str(spec) == "1,2,3"

    def test_nonpositive_and_negated(self):
        spec = ExponentSpec((-1, 1, 2, 3))
        assert spec.has_nonpositive
        assert not spec.is_consecutive_from_1
        assert spec.negated().exponents == (-3, -2, -1, 1)

    def test_rejects_unordered(self):
        with pytest.raises(ValueError):
            ExponentSpec((2, 1))
        with pytest.raises(ValueError):
            ExponentSpec((1, 1))
        with pytest.raises(ValueError):
            ExponentSpec(())


class TestSide:
    def test_sorts_on_construction(self):
        assert Side((3, 1, 2)).values == (1, 2, 3)

    def test_str_is_comma_list(self):
        assert str(Side((5, 0, 22, 6))) == "0,5,6,22"


class TestBracket:
    def test_positive_exponent_is_power_sum(self):
        assert extended_power_sum(Side((1, 2, 3)), 2) == 14

    def test_zero_exponent_is_product(self):
        assert extended_power_sum(Side((2, 3, 7)), 0) == 42

    def test_negative_exponent_is_reciprocal_sum(self):
        got = extended_power_sum(Side((2, 4)), -1)
        assert got == Fraction(3, 4)

    def test_zero_with_nonpositive_exponent_raises(self):
        for k in (0, -1, -3):
            with pytest.raises(ZeroWithNonpositiveExponent):
                extended_power_sum(Side((0, 5)), k)

    @given(st.lists(st.integers(-30, 30), min_size=1, max_size=6),
           st.integers(1, 7))
    def test_matches_naive_sum(self, vals, k):
        assert extended_power_sum(Side(tuple(vals)), k) == sum(
            Fraction(v) ** k for v in vals)


class TestVerification:
    def test_known_solution_verifies(self):
        assert verify_equal(Side((0, 4, 7, 11)), Side((1, 2, 9, 10)),
                            ExponentSpec((1, 2, 3)))

    def test_perturbed_solution_fails(self):
        assert not verify_equal(Side((0, 4, 7, 12)), Side((1, 2, 9, 10)),
                                ExponentSpec((1, 2, 3)))

    def test_product_spec(self):
        # equal sums and equal products: {1,6,6} vs {2,2,9}
        assert verify_equal(Side((1, 6, 6)), Side((2, 2, 9)),
                            ExponentSpec((0, 1)))
        assert not verify_equal(Side((1, 6, 6)), Side((2, 3, 8)),
                                ExponentSpec((0, 1)))

    def test_make_solution_rejects_trivial(self):
        with pytest.raises(ValueError):
            make_solution((1, 2), [1, 5, 6], [6, 5, 1])

    def test_make_solution_rejects_nonverifying(self):
        with pytest.raises(ValueError):
            make_solution((1, 2), [1, 5, 6], [2, 3, 8])

    def test_is_trivial_is_multiset_equality(self):
        assert is_trivial(Side((1, 2, 2)), Side((2, 1, 2)))
        assert not is_trivial(Side((1, 2, 2)), Side((1, 2, 3)))


class TestSymmetry:
    def test_even_degree_symmetric(self):
        # degree 2: pairing runs across sides
        sol = make_solution((1, 2), [0, 3, 3], [1, 1, 4])
        assert classify_symmetry(sol) == SYMMETRIC

    def test_odd_degree_symmetric(self):
        sol = make_solution((1, 2, 3), [0, 4, 7, 11], [1, 2, 9, 10])
        assert classify_symmetry(sol) == SYMMETRIC

    def test_non_symmetric(self):
        sol = make_solution((1, 2), [0, 16, 17], [1, 12, 20])
        assert classify_symmetry(sol) == NON_SYMMETRIC

    def test_requires_consecutive_spec(self):
        sol = make_solution((1, 3), [0, 7, 8], [1, 5, 9])
        with pytest.raises(NotApplicable):
            classify_symmetry(sol)


class TestTransforms:
    def test_equivalent_transform_preserves_verification(self):
        sol = make_solution((1, 2), [0, 16, 17], [1, 12, 20])
        out = equivalent_transform(sol)
        assert verify_equal(out.lhs, out.rhs, out.spec)
        assert equivalent_transform(out).lhs.values in (
            sol.lhs.values, sol.rhs.values)

    def test_normalize_removes_gcd_and_offset(self):
        sol = GpteSolution(ExponentSpec((1, 2)),
                           Side((10, 170, 180)), Side((20, 130, 210)))
        out = normalize(sol)
        assert min(min(out.lhs), min(out.rhs)) == 0
        from math import gcd
        assert gcd(*out.lhs.values, *out.rhs.values) == 1
        assert verify_equal(out.lhs, out.rhs, out.spec)

    def test_mirror_transform_verifies_under_negated_spec(self):
        sol = make_solution((-1, 1, 2, 3), [-5, 10, 15, 30], [-3, 4, 21, 28])
        out = mirror_transform(sol)
        assert out.spec.exponents == (-3, -2, -1, 1)
        assert verify_equal(out.lhs, out.rhs, out.spec)

    def test_mirror_is_involution_up_to_scale(self):
        sol = make_solution((-1, 1, 2, 3), [-5, 10, 15, 30], [-3, 4, 21, 28])
        back = mirror_transform(mirror_transform(sol))
        assert back.spec == sol.spec
        # same solution up to a common rational scale
        ratio = Fraction(back.lhs.values[0], sol.lhs.values[0])
        assert all(Fraction(x, y) == ratio
                   for x, y in zip(back.lhs.values + back.rhs.values,
                                   sol.lhs.values + sol.rhs.values))

    @given(st.integers(1, 40), st.integers(1, 40))
    def test_translation_invariance_consecutive(self, t, s):
        # k=1..n systems are translation and scale invariant
        base_a, base_b = (0, 16, 17), (1, 12, 20)
        spec = ExponentSpec((1, 2))
        a = Side(tuple(s * (v + t) for v in base_a))
        b = Side(tuple(s * (v + t) for v in base_b))
        assert verify_equal(a, b, spec)

    def test_record_string_round_trips_values(self):
        sol = make_solution((1, 2, 3), [0, 4, 7, 11], [1, 2, 9, 10])
        assert str(sol) == "k=1,2,3 | 0,4,7,11 | 1,2,9,10"
