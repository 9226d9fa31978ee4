"""Power-sum / elementary-symmetric identity machinery, all exact."""

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from gpte import newton
from gpte.errors import PreconditionViolated, SingularBase, UnsupportedGapPattern

values_lists = st.lists(st.integers(-20, 20), min_size=1, max_size=6)
nonzero_lists = st.lists(st.integers(-20, 20).filter(bool),
                         min_size=1, max_size=6)


def elementary_oracle(vals, k):
    """e_k by direct summation over subsets."""
    return sum((
        __import__("math").prod(c) for c in combinations(vals, k)),
        Fraction(0))


def signed_elementary_oracle(vals):
    return [Fraction((-1) ** k) * elementary_oracle(vals, k)
            for k in range(1, len(vals) + 1)]


class TestDeterminant:
    @given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3),
                    min_size=3, max_size=3))
    def test_matches_cofactor_expansion(self, m):
        a, b, c = m
        oracle = (a[0] * (b[1] * c[2] - b[2] * c[1])
                  - a[1] * (b[0] * c[2] - b[2] * c[0])
                  + a[2] * (b[0] * c[1] - b[1] * c[0]))
        assert newton.det(m) == oracle

    def test_singular(self):
        assert newton.det([[1, 2], [2, 4]]) == 0


class TestFourForms:
    """The four S_k evaluators agree with each other and the subset oracle."""

    @settings(max_examples=200)
    @given(values_lists)
    def test_recursive_matches_oracle(self, vals):
        P = newton.power_sums(vals, range(1, len(vals) + 1))
        assert newton.elementary_recursive(P) == signed_elementary_oracle(vals)

    @settings(max_examples=150)
    @given(values_lists)
    def test_determinant_form_agrees(self, vals):
        P = newton.power_sums(vals, range(1, len(vals) + 1))
        S = newton.elementary_recursive(P)
        got = [newton.elementary_determinant(P, k)
               for k in range(1, len(P) + 1)]
        assert got == S

    @settings(max_examples=150)
    @given(values_lists)
    def test_factorial_form_agrees(self, vals):
        P = newton.power_sums(vals, range(1, len(vals) + 1))
        assert newton.elementary_factorial(P) == newton.elementary_recursive(P)

    @settings(max_examples=150)
    @given(values_lists)
    def test_inclusion_exclusion_form_agrees(self, vals):
        P = newton.power_sums(vals, range(1, len(vals) + 1))
        assert (newton.elementary_inclusion_exclusion(P)
                == newton.elementary_recursive(P))

    @settings(max_examples=150)
    @given(st.lists(st.fractions(min_value=-10, max_value=10,
                                 max_denominator=6),
                    min_size=1, max_size=5))
    def test_forms_agree_on_arbitrary_rational_input(self, P):
        # agreement is an algebraic identity in P, not only for real data
        a = newton.elementary_recursive(P)
        assert newton.elementary_factorial(P) == a
        assert newton.elementary_inclusion_exclusion(P) == a
        assert [newton.elementary_determinant(P, k)
                for k in range(1, len(P) + 1)] == a


class TestVanishing:
    @settings(max_examples=200)
    @given(values_lists)
    def test_s_vanishes_above_n(self, vals):
        # S_k = 0 exactly for n < k <= n+3 when P comes from n numbers
        n = len(vals)
        P = newton.power_sums(vals, range(1, n + 4))
        S = newton.elementary_recursive(P)
        assert S[n:] == [Fraction(0)] * 3

    @settings(max_examples=200)
    @given(st.lists(st.integers(-25, 25), min_size=6, max_size=6))
    def test_s7_of_six_numbers_vanishes(self, vals):
        P = newton.power_sums(vals, range(1, 8))
        assert newton.elementary_recursive(P)[6] == 0

    @settings(max_examples=200)
    @given(values_lists)
    def test_predict_power_sum(self, vals):
        n = len(vals)
        P = newton.power_sums(vals, range(1, n + 2))
        assert newton.predict_power_sum(P[:n], n) == P[n]

    @settings(max_examples=150)
    @given(st.lists(st.integers(-20, 20), min_size=5, max_size=5),
           st.integers(-50, 50))
    def test_zero_sum_forces_p7_independent_of_p6(self, partial, fake_p6):
        # six numbers with zero sum: P_7 is forced by P_2..P_5 alone,
        # so solving S_7 = 0 for P_7 works with P_6 replaced arbitrarily
        vals = partial + [-sum(partial)]
        P = newton.power_sums(vals, range(1, 8))
        assert P[0] == 0
        trial = P[:5] + [Fraction(fake_p6), Fraction(0)]
        s7_at_zero = newton.elementary_recursive(trial)[6]
        # S_7 is -P_7/7 plus terms free of P_7
        assert 7 * s7_at_zero == P[6]


class TestExtended:
    @settings(max_examples=200)
    @given(nonzero_lists)
    def test_t_residuals_vanish_on_real_data(self, vals):
        n = len(vals)
        ks = list(range(-n, 2 * n + 1))
        P = {k: newton.power_sums(vals, [k])[0] for k in ks}
        T = newton.extended_residuals(P, n)
        assert T and all(v == 0 for v in T.values())

    def test_requires_product(self):
        with pytest.raises(ValueError):
            newton.extended_elementary({1: Fraction(3)}, 1)


class TestTwoSided:
    @settings(max_examples=200)
    @given(st.lists(st.integers(1, 12), min_size=3, max_size=3, unique=True),
           st.lists(st.integers(1, 12), min_size=4, max_size=4, unique=True))
    def test_w_ratio_law(self, a, b):
        # W_{12+r} / W_12 = e_r(a) for |a| = 3, |b| = 4
        if set(a) & set(b):
            return
        n, m = 3, 4
        P = newton.two_sided_power_sums(a, b, range(1, n + m + 1))
        try:
            ratios = newton.w_ratios(P, n, m)
        except SingularBase:
            return
        assert ratios == [elementary_oracle(a, r) for r in range(1, n + 1)]

    def test_singular_base_when_sides_share_value(self):
        a, b = [2, 5, 9], [2, 6, 7, 11]
        P = newton.two_sided_power_sums(a, b, range(1, 8))
        with pytest.raises(SingularBase):
            newton.w_ratios(P, 3, 4)

    @settings(max_examples=100)
    @given(st.lists(st.integers(1, 10), min_size=3, max_size=3, unique=True),
           st.lists(st.integers(1, 10), min_size=3, max_size=3, unique=True))
    def test_gap_sum_product(self, a, b):
        if set(a) & set(b):
            return
        n = m = 3
        # window 1..7 with exponent 6 missing
        P = newton.two_sided_power_sums(a, b, [1, 2, 3, 4, 5, 7])
        base, mod = newton.gap_sum_product(P, n, m, gap=6, k0=3)
        if base == 0:
            return
        assert mod / base == sum(a) * sum(b)
        t1 = Fraction(sum(a) - sum(b))
        assert t1 ** 2 + 4 * mod / base == Fraction(sum(a) + sum(b)) ** 2

    def test_gap_pattern_restriction(self):
        P = newton.two_sided_power_sums([1, 2, 3], [4, 5, 6], [1, 2, 3, 5, 6, 7])
        with pytest.raises(UnsupportedGapPattern):
            newton.gap_sum_product(P, 3, 3, gap=4, k0=3)


class TestOddExponents:
    @settings(max_examples=200)
    @given(st.lists(st.integers(-15, 15), min_size=1, max_size=6))
    def test_square_sum_recovery(self, vals):
        n = len(vals)
        odd = newton.power_sums(vals, range(1, 2 * n, 2))
        G = newton.odd_g_sequence(odd)
        try:
            got = newton.odd_square_recovery(G, n)
        except SingularBase:
            return
        assert got == sum(Fraction(v) ** 2 for v in vals)

    def test_g_window_limit(self):
        with pytest.raises(ValueError):
            newton.odd_g_sequence(list(range(10)))


# sides of the shared-power-sum family with h = 1, 2, 4 and zero sums
CHAIN_SIDES_124 = [(-48, 23, 25), (-47, 15, 32), (-45, 8, 37), (-43, 3, 40)]


class Test6108:
    @settings(max_examples=500)
    @given(st.sampled_from(list(combinations(CHAIN_SIDES_124, 2))),
           st.integers(1, 60), st.booleans())
    def test_residual_vanishes_on_chain_pairs(self, pair, scale, flip):
        (a, b) = pair if not flip else (pair[1], pair[0])
        A = [scale * v for v in a]
        B = [scale * v for v in b]
        assert newton.check_6_10_8(A, B) == 0

    def test_preconditions(self):
        with pytest.raises(PreconditionViolated):
            newton.check_6_10_8([1, 2], [3, 4])
        with pytest.raises(PreconditionViolated):
            newton.check_6_10_8([1, 2, 3], [4, 5, 6])
        with pytest.raises(PreconditionViolated):
            # identical sides: P_3 = 0 is degenerate
            newton.check_6_10_8([-48, 23, 25], [-48, 23, 25])
