"""Girard-Newton identity machinery.

Power sums P_k are converted to (signed) elementary symmetric values S_k
in four equivalent forms, extended to zero and negative exponents, to
two-sided differences with the W-determinant ratio laws, and to the
odd-exponent G-sequence.  All values are exact rationals; nothing here is
ever rounded.

Sign convention: S_k = (-1)^k e_k, so that x^n + S_1 x^{n-1} + ... + S_n
is the monic polynomial with the given roots.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .errors import PreconditionViolated, SingularBase, UnsupportedGapPattern

Rat = Fraction


def _frac(x) -> Rat:
    return x if isinstance(x, Fraction) else Fraction(x)


def det(matrix: Sequence[Sequence[Rat]]) -> Rat:
    """Exact determinant by fraction-free style Gaussian elimination."""
    n = len(matrix)
    m = [[_frac(x) for x in row] for row in matrix]
    sign = 1
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            sign = -sign
        pivot = m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / pivot
            if factor == 0:
                continue
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    result = Fraction(sign)
    for i in range(n):
        result *= m[i][i]
    return result


# ---------------------------------------------------------------------------
# Identity 2: four equivalent P -> S conversions


def elementary_recursive(P: Sequence) -> list[Rat]:
    """S_1..S_K by the recursive form S_k = -(P_k + sum S_i P_{k-i}) / k."""
    P = [_frac(p) for p in P]
    S: list[Rat] = []
    for k in range(1, len(P) + 1):
        acc = P[k - 1]
        for i in range(1, k):
            acc += S[i - 1] * P[k - i - 1]
        S.append(-acc / k)
    return S


def elementary_determinant(P: Sequence, k: int) -> Rat:
    """S_k as the (-1)^k / k! prefixed k x k Hessenberg determinant."""
    P = [_frac(p) for p in P]
    if k < 1 or k > len(P):
        raise ValueError("k out of range")
    m = [[Fraction(0)] * k for _ in range(k)]
    for r in range(k):
        for c in range(r + 2, k):
            m[r][c] = Fraction(0)
        if r + 1 < k:
            m[r][r + 1] = Fraction(r + 1)
        for c in range(r + 1):
            m[r][c] = P[r - c]
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return Fraction((-1) ** k, fact) * det(m)


def _partitions(total: int, max_part: int, part_cap: Mapping[int, int] | None):
    """Yield multiplicity vectors {part: count} with sum part*count = total."""
    def rec(remaining: int, part: int, acc: dict[int, int]):
        if remaining == 0:
            yield dict(acc)
            return
        if part == 0:
            return
        cap = remaining // part
        if part_cap is not None and part in part_cap:
            cap = min(cap, part_cap[part])
        for count in range(cap, -1, -1):
            if count:
                acc[part] = count
            yield from rec(remaining - part * count, part - 1, acc)
            acc.pop(part, None)

    yield from rec(total, max_part, {})


def elementary_factorial(P: Sequence) -> list[Rat]:
    """S_1..S_K by the factorial-polynomial form.

    F_1 = -P_1 and F_k = (P_1^k - P_k)/k; S_k sums F-monomials over the
    partitions of k in which part 1 appears at most once, each weighted
    by the reciprocal product of multiplicity factorials.
    """
    P = [_frac(p) for p in P]
    K = len(P)
    F = {1: -P[0]}
    for k in range(2, K + 1):
        F[k] = (P[0] ** k - P[k - 1]) / k
    out = []
    for k in range(1, K + 1):
        total = Fraction(0)
        for mult in _partitions(k, k, {1: 1}):
            term = Fraction(1)
            for part, count in mult.items():
                term *= F[part] ** count
                fact = 1
                for i in range(2, count + 1):
                    fact *= i
                term /= fact
            total += term
        out.append(total)
    return out


def elementary_inclusion_exclusion(P: Sequence) -> list[Rat]:
    """S_1..S_K by the inclusion-exclusion factorial form.

    D_1 = -P_1; for k > 1,
        D_k = (P_1^k - P_k)/k + sum over non-trivial factors f of k of
              (-1)^f D_{k/f}^f / f.
    S_k sums plain D-monomials over partitions of k into distinct parts.
    """
    P = [_frac(p) for p in P]
    K = len(P)
    D = {1: -P[0]}
    for k in range(2, K + 1):
        val = (P[0] ** k - P[k - 1]) / k
        for f in range(2, k):
            if k % f == 0:
                val += Fraction((-1) ** f, f) * D[k // f] ** f
        D[k] = val
    out = []
    for k in range(1, K + 1):
        total = Fraction(0)
        for mult in _partitions(k, k, {p: 1 for p in range(1, k + 1)}):
            term = Fraction(1)
            for part in mult:
                term *= D[part]
            total += term
        out.append(total)
    return out


def predict_power_sum(P: Sequence, n: int) -> Rat:
    """P_{n+1} forced by S_{n+1} = 0 when P_1..P_n come from n numbers."""
    P = [_frac(p) for p in P[:n]]
    if len(P) < n:
        raise ValueError("need P_1..P_n")
    S = elementary_recursive(P)
    # S_{n+1} = -(P_{n+1} + S_1 P_n + ... + S_n P_1)/(n+1) = 0
    return -sum(S[i] * P[n - 1 - i] for i in range(n))


def power_sums(values: Sequence[int], ks) -> list[Rat]:
    """Convenience oracle: [sum v^k for k in ks] over exact rationals."""
    out = []
    for k in ks:
        if k == 0:
            prod = Fraction(1)
            for v in values:
                prod *= v
            out.append(prod)
        else:
            out.append(sum((Fraction(v) ** k for v in values), Fraction(0)))
    return out


# ---------------------------------------------------------------------------
# Identity 3: all-integer exponents (one multiset, with product as P_0)


def extended_elementary(P: Mapping[int, Rat], n: int) -> dict[int, Rat]:
    """S-values of the all-integer-exponent generalization.

    P maps exponent -> power sum, with P[0] the product of the n numbers
    and negative keys the reciprocal-power sums.  Returns every S_k
    computable from the supplied window.
    """
    if 0 not in P:
        raise ValueError("P_0 (the product) is required")
    P = {k: _frac(v) for k, v in P.items()}
    S: dict[int, Rat] = {0: -P[0]}
    k = 1
    while k in P:
        acc = P[k]
        for i in range(1, k):
            acc += S[i] * P[k - i]
        S[k] = -acc / k
        k += 1
    if -1 in P:
        S[-1] = P[0] * P[-1]
        k = -2
        while k in P:
            acc = -P[0] * P[k]
            for j in range(-1, k, -1):
                acc += S[j] * P[k - j]
            S[k] = acc / k
            k -= 1
    return S


def extended_residuals(P: Mapping[int, Rat], n: int) -> dict[int, Rat]:
    """T_k residuals of the all-integer generalization; each must be 0."""
    S = extended_elementary(P, n)
    sign = (-1) ** n
    T: dict[int, Rat] = {}
    for k in range(min(S) + n, max(S) + 1):
        if k <= -1:
            T[k] = sign * S[k - n]
        elif k == 0:
            T[k] = 1 + sign * S[-n] if -n in S else None
        elif k <= n:
            T[k] = S[k] + sign * S[k - n] if k - n in S else None
        else:
            T[k] = S[k]
    return {k: v for k, v in T.items() if v is not None}


# ---------------------------------------------------------------------------
# Identity 4: two-sided differences and the W determinants


def two_sided_power_sums(a: Sequence[int], b: Sequence[int],
                         ks) -> dict[int, Rat]:
    """P_k = sum a^k - sum b^k (k != 0); P_0 = -(prod b)/(prod a)."""
    out: dict[int, Rat] = {}
    for k in ks:
        if k == 0:
            num = Fraction(1)
            den = Fraction(1)
            for v in b:
                num *= v
            for v in a:
                den *= v
            out[0] = -num / den
        else:
            out[k] = (sum((Fraction(v) ** k for v in a), Fraction(0))
                      - sum((Fraction(v) ** k for v in b), Fraction(0)))
    return out


def two_sided_t(P: Mapping[int, Rat]) -> dict[int, Rat]:
    """T-values of the two-sided generalization (positive-sign recursion)."""
    P = {k: _frac(v) for k, v in P.items()}
    T: dict[int, Rat] = {}
    if 0 in P:
        T[0] = P[0]
    k = 1
    while k in P:
        acc = P[k]
        for i in range(1, k):
            acc += T[i] * P[k - i]
        T[k] = acc / k
        k += 1
    if 0 in P and -1 in P:
        T[-1] = P[0] * P[-1]
        k = -2
        while k in P:
            acc = P[0] * P[k]
            for j in range(-1, k, -1):
                acc += T[j] * P[k - j]
            T[k] = acc / -k
            k -= 1
    return T


def two_sided_s(P: Mapping[int, Rat], n: int, m: int) -> dict[int, Rat]:
    """S_k = gamma_k + delta_k over the computable T window.

    gamma is 0 / 1 / T_k for k negative / zero / positive; delta adds
    (-1)^(m-n) T_{k-m+n} for k <= m-n.  When no P_0 is supplied only the
    strictly positive window (where delta never applies for m > n) is
    produced.
    """
    T = two_sided_t(P)
    d = m - n
    S: dict[int, Rat] = {}
    lo = (min(T) if min(T) <= 0 else 1) if T else 1
    for k in range(lo, max(T) + 1):
        gamma = Fraction(0) if k < 0 else Fraction(1) if k == 0 else T.get(k)
        if gamma is None:
            continue
        if k <= d:
            if k - d not in T:
                continue
            delta = Fraction((-1) ** d) * T[k - d]
        else:
            delta = Fraction(0)
        S[k] = gamma + delta
    return S


def hankel_w(S: Mapping[int, Rat], n: int, window: int) -> Rat:
    """The determinant W_{window} (window = n*k + r, 0 <= r < n).

    Rows are the n+1 consecutive Hankel rows starting at S_k with the
    (n-r)-th skipped; columns step the index down by one.
    """
    k, r = divmod(window, n)
    rows = [i for i in range(n + 1) if i != n - r]
    needed = []
    matrix = []
    for i in rows:
        row = []
        for j in range(n):
            idx = k + i - j
            if idx not in S:
                needed.append(idx)
            else:
                row.append(S[idx])
        matrix.append(row)
    if needed:
        raise UnsupportedGapPattern(f"missing S indices {sorted(set(needed))}")
    return det(matrix)


def w_ratios(P: Mapping[int, Rat], n: int, m: int) -> list[Rat]:
    """Ratios W_{nm+r}/W_{nm}, r = 1..n, from a two-sided P window.

    P holds the difference power sums of an n-multiset A against an
    m-multiset B (exponents 1..n+m at least, plus 0 / negatives when the
    window reaches them).  The ratios are the elementary symmetric
    functions e_r(A).  Raises SingularBase when the base determinant
    vanishes.
    """
    S = two_sided_s(P, n, m)
    base = hankel_w(S, n, n * m)
    if base == 0:
        raise SingularBase("base W determinant vanished")
    return [hankel_w(S, n, n * m + r) / base for r in range(1, n + 1)]


def hankel_w_gap(S: Mapping[int, Rat], n: int, k0: int, t1: Rat) -> Rat:
    """Gap-eliminating variant of the W determinant anchored at base k0.

    Rows i = 0..n with i = n-1 skipped; the leading column holds
    S_{k0+i+1} - t1 * S_{k0+i} (t1 being the T_1 value), which cancels a
    single unknown power sum below the top exponent.  The ratio of this
    determinant to hankel_w(S, n, n*k0) equals (sum A)(sum B).
    """
    rows = [i for i in range(n + 1) if i != n - 1]
    matrix = []
    for i in rows:
        for j in range(-1, n):
            if k0 + i - j not in S:
                raise UnsupportedGapPattern(
                    f"missing S index {k0 + i - j}")
        row = [S[k0 + i + 1] - _frac(t1) * S[k0 + i]]
        row += [S[k0 + i - j] for j in range(1, n)]
        matrix.append(row)
    return det(matrix)


def gap_sum_product(P: Mapping[int, Rat], n: int, m: int,
                    gap: int, k0: int) -> tuple[Rat, Rat]:
    """(W_base, W_mod) when exponent `gap` is missing from the window.

    Supported pattern: exactly one missing exponent, one below the top
    of the window (gap = max exponent - 1).  The missing power sum is
    set to zero -- it cancels identically in W_mod -- and then
        W_mod / W_base = (sum A)(sum B),
        T_1^2 + 4 W_mod / W_base = (sum A + sum B)^2.
    """
    ks = [k for k in P if k != 0]
    if gap in P or gap != max(ks) - 1:
        raise UnsupportedGapPattern(
            "only a single missing exponent just below the top is supported")
    filled = {k: _frac(v) for k, v in P.items()}
    filled[gap] = Fraction(0)
    T = two_sided_t(filled)
    S = two_sided_s(filled, n, m)
    base = hankel_w(S, n, n * k0)
    return base, hankel_w_gap(S, n, k0, T[1])


# ---------------------------------------------------------------------------
# Identity 5: odd exponents


def odd_g_sequence(P_odd: Sequence) -> list[Rat]:
    """G_1, G_3, ... from the odd power sums P_1, P_3, ...

    Implements the explicit window up to G_17, with the partition
    correction terms written out.
    """
    P = [_frac(p) for p in P_odd]
    T = len(P)
    if T > 9:
        raise ValueError("G-window implemented up to G_17 (9 odd power sums)")
    p1 = P[0]
    G: list[Rat] = []

    def base(t):  # (P_1^(2t+1) - P_{2t+1}) / (2t+1)
        return (p1 ** (2 * t + 1) - P[t]) / (2 * t + 1)

    for t in range(T):
        if t == 0:
            G.append(-p1)
        elif t <= 3:
            G.append(base(t))
        elif t == 4:
            G.append(base(4) - G[1] ** 3 / 3)
        elif t == 5:
            G.append(base(5) - G[1] ** 2 * G[2])
        elif t == 6:
            G.append(base(6) - (G[3] * G[1] ** 2 + G[2] ** 2 * G[1]))
        elif t == 7:
            G.append(base(7) - (G[1] ** 5 / 5 + G[4] * G[1] ** 2
                                + 2 * G[2] * G[3] * G[1] + G[2] ** 3 / 3))
        else:
            G.append(base(8) - (G[2] * G[1] ** 4 + G[5] * G[1] ** 2
                                + G[3] ** 2 * G[1] + 2 * G[2] * G[4] * G[1]
                                + G[2] ** 2 * G[3]))
    return G


def _g_at(G: Sequence[Rat], idx: int) -> Rat:
    """G_idx for odd idx >= 1 from the list [G_1, G_3, ...]."""
    pos = (idx - 1) // 2
    if pos >= len(G):
        raise ValueError(f"G_{idx} outside the computed window")
    return G[pos]


def _v_odd(G: Sequence[Rat], idx: int) -> Rat:
    """V_{2t+1} = G_1^{2t+1} + G_3 G_1^{2t-2} + ... + G_{2t+1}."""
    g1 = _g_at(G, 1)
    total = g1 ** idx
    for j in range(3, idx + 1, 2):
        total += _g_at(G, j) * g1 ** (idx - j)
    return total


def _v_even(G: Sequence[Rat], idx: int) -> Rat:
    """V_{2t} = G_1^{2t} + G_3 G_1^{2t-3} + ... + G_{2t-1} G_1."""
    g1 = _g_at(G, 1)
    total = g1 ** idx
    for j in range(3, idx, 2):
        total += _g_at(G, j) * g1 ** (idx - j)
    return total


def u_determinants(G: Sequence[Rat], n: int) -> tuple[Rat, Rat]:
    """(U_{n,0}, U_{n,2}) for an n-element multiset's G-sequence."""
    if n < 2:
        raise ValueError("U determinants need n >= 2")
    if n % 2 == 0:
        q = n // 2
        u0, u2 = [], []
        for i in range(q):
            g_cols0 = [_g_at(G, n - 1 + 2 * i - 2 * j) for j in range(q - 1)]
            row0 = g_cols0 + [_v_odd(G, 1 + 2 * i)]
            if q == 1:
                row2 = [_g_at(G, n + 1 + 2 * i)]
            else:
                row2 = ([_g_at(G, n + 1 + 2 * i)] + g_cols0[1:]
                        + [_v_odd(G, 1 + 2 * i)])
            u0.append(row0)
            u2.append(row2)
        return det(u0), det(u2)
    q = (n + 1) // 2
    u0, u2 = [], []
    for i in range(q):
        if i == 0:
            # first row: G_{n-2}, ..., G_3, 0, 1 (the G_1 slot is literal 0)
            tail = [Fraction(0), Fraction(1)]
            g_cols0 = [_g_at(G, n - 2 - 2 * j) for j in range(q - 2)]
            row0 = g_cols0 + tail
            row2 = [_g_at(G, n)] + g_cols0[1:] + tail if q >= 2 else row0
            if q == 2:
                row2 = [_g_at(G, n), Fraction(1)]
        else:
            g_cols0 = [_g_at(G, n - 2 + 2 * i - 2 * j) for j in range(q - 1)]
            row0 = g_cols0 + [_v_even(G, 2 * i)]
            row2 = ([_g_at(G, n + 2 * i)] + g_cols0[1:]
                    + [_v_even(G, 2 * i)])
        u0.append(row0)
        u2.append(row2)
    return det(u0), det(u2)


def odd_square_recovery(G: Sequence[Rat], n: int) -> Rat:
    """Sum of squares of the n numbers from their G-sequence:
    G_1^2 + 2 U_{n,2} / U_{n,0}."""
    g1 = _g_at(G, 1)
    if n == 1:
        return g1 ** 2
    u0, u2 = u_determinants(G, n)
    if u0 == 0:
        raise SingularBase("U_{n,0} vanished")
    return g1 ** 2 + 2 * u2 / u0


# ---------------------------------------------------------------------------
# Corollary: the 6-10-8 relation


def check_6_10_8(A: Sequence[int], B: Sequence[int]) -> Rat:
    """Residual 64 P_6 P_10 - 45 P_8^2, which must vanish whenever
    P_1 = P_2 = P_4 = 0 and P_3 != 0 for the 3+3 difference data."""
    if len(A) != 3 or len(B) != 3:
        raise PreconditionViolated("need |A| = |B| = 3")
    P = {k: (sum(Fraction(v) ** k for v in A)
             - sum(Fraction(v) ** k for v in B))
         for k in (1, 2, 3, 4, 6, 8, 10)}
    bad = [k for k in (1, 2, 4) if P[k] != 0]
    if bad:
        raise PreconditionViolated(f"P_{bad} nonzero")
    if P[3] == 0:
        raise PreconditionViolated("P_3 = 0 (degenerate)")
    return 64 * P[6] * P[10] - 45 * P[8] ** 2
