"""Constant-C identities and factor-based pruning.

Four exponent-set families admit a polynomial identity whose difference
collapses to a nonzero constant C; every pairwise element difference
then divides C (after the family's scaling), which yields a powerful
search filter when combined with a largest-prime-factor table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .core import ExponentSpec, GpteSolution
from .errors import OutOfTable, TrivialSolution, UnsupportedFamily

PTE = "PTE"
SHIFTED_CONSECUTIVE = "ShiftedConsecutive"
GAP_CONSECUTIVE = "GapConsecutive"
ODD_SPACED = "OddSpaced"


@dataclass(frozen=True)
class CFamily:
    """An exponent-set family with a constant-C identity.

    kind is one of PTE / ShiftedConsecutive / GapConsecutive /
    OddSpaced; m is the power of the x^m denominator in the identity
    (0 for plain PTE).
    """
    kind: str
    m: int


def family_of(spec: ExponentSpec) -> CFamily | None:
    """Classify an exponent set into its constant-C family, or None."""
    ks = spec.exponents
    n = len(ks)
    k1 = ks[0]
    steps = [ks[i + 1] - ks[i] for i in range(n - 1)]
    # consecutive run k1 .. k1+n-1 with k1 in {-n+1, ..., 1}
    if all(s == 1 for s in steps) and -n + 1 <= k1 <= 1:
        if k1 == 1:
            return CFamily(PTE, 0)
        return CFamily(SHIFTED_CONSECUTIVE, 1 - k1)
    # odd-spaced: step 2 from an odd k1 in {-2n+1, ..., 1}
    if n > 1 and all(s == 2 for s in steps) and k1 % 2 == 1 \
            and -2 * n + 1 <= k1 <= 1:
        return CFamily(ODD_SPACED, 2 - k1)
    # consecutive with the second-from-top exponent missing:
    # k1 .. k1+n-2, k1+n with k1 in {-n+2, ..., 1}
    if n > 1 and all(s == 1 for s in steps[:-1]) and steps[-1] == 2 \
            and -n + 2 <= k1 <= 1:
        return CFamily(GAP_CONSECUTIVE, 1 - k1)
    return None


def _elementary(values: Sequence[int], r: int) -> int:
    """e_r over integer values, by the product-polynomial recurrence."""
    coeffs = [1]  # coefficients of prod (1 + v t), lowest degree first
    for v in values:
        nxt = coeffs + [0]
        for i in range(len(coeffs)):
            nxt[i + 1] += coeffs[i] * v
        coeffs = nxt
    return coeffs[r] if 0 <= r < len(coeffs) else 0


def half_sum(sol: GpteSolution) -> Fraction:
    """s = half the sum of all elements on both sides."""
    return Fraction(sum(sol.lhs) + sum(sol.rhs), 2)


def constant_c(sol: GpteSolution):
    """The constant C of the solution's family identity (exact).

    C is reported as a positive integer: swapping the two sides flips
    its sign, so the canonical value is the absolute one.  For the
    odd-spaced family C is half the x^m coefficient of the difference
    product prod(x+a)(x-b) - prod(x-a)(x+b).
    Raises UnsupportedFamily when the exponent set fits no family and
    TrivialSolution when C comes out zero.
    """
    fam = family_of(sol.spec)
    if fam is None:
        raise UnsupportedFamily(str(sol.spec))
    a, b = list(sol.lhs), list(sol.rhs)
    n = sol.spec.degree
    if fam.kind in (PTE, SHIFTED_CONSECUTIVE):
        r = n + 1 - fam.m
        c = (-1) ** (n + 1 - fam.m) * (_elementary(a, r) - _elementary(b, r))
    elif fam.kind == GAP_CONSECUTIVE:
        r = n - fam.m
        c = (-1) ** (n + 1 - fam.m) * (_elementary(a, r) - _elementary(b, r))
    else:  # ODD_SPACED: pair up odd/even elementary functions
        target = 2 * n + 2 - fam.m
        c = 0
        for i in range(1, n + 2, 2):
            j = target - i
            if 0 <= j <= n + 1 and j % 2 == 0:
                c += (_elementary(a, i) * _elementary(b, j)
                      - _elementary(b, i) * _elementary(a, j))
    if c == 0:
        raise TrivialSolution("constant C vanished")
    return abs(c)


def c_divisibility_residues(sol: GpteSolution) -> list[Fraction]:
    """Per-element scaled difference products; each equals C or -C.

    For each element the product of its differences against the whole
    opposite side (for the odd-spaced family, also the sums against its
    own side), scaled by the family's denominator.  Elements whose
    scaling denominator vanishes are skipped.
    """
    fam = family_of(sol.spec)
    if fam is None:
        raise UnsupportedFamily(str(sol.spec))
    a, b = list(sol.lhs), list(sol.rhs)
    m = fam.m
    out: list[Fraction] = []
    if fam.kind in (PTE, SHIFTED_CONSECUTIVE, GAP_CONSECUTIVE):
        s = half_sum(sol) if fam.kind == GAP_CONSECUTIVE else None
        for side, other in ((a, b), (b, a)):
            for x in side:
                den = Fraction(x) ** m if m else Fraction(1)
                if fam.kind == GAP_CONSECUTIVE:
                    den *= s - x
                if den == 0:
                    continue
                prod = Fraction(1)
                for y in other:
                    prod *= x - y
                out.append(prod / den)
    else:  # ODD_SPACED: the raw difference-sum product carries a factor 2
        for side, other, sign in ((a, b, 1), (b, a, -1)):
            for j, x in enumerate(side):
                if x == 0:
                    continue
                prod = Fraction(1, 2) / Fraction(x) ** m
                for i, y in enumerate(side):
                    prod *= 2 * x if i == j else x + y
                for y in other:
                    prod *= x - y
                out.append(sign * prod)
    return out


class FactorTable:
    """Largest-prime-factor lookup for 1..limit."""

    def __init__(self, entries: Sequence[int]):
        self._entries = list(entries)  # index 0 unused
        self.limit = len(self._entries) - 1

    def __getitem__(self, v: int) -> int:
        if not 1 <= v <= self.limit:
            raise OutOfTable(f"{v} outside 1..{self.limit}")
        return self._entries[v]

    def __len__(self) -> int:
        return self.limit


def build_factor_table(N: int) -> FactorTable:
    """Sieve the largest prime factor of every integer in 1..N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    lpf = list(range(N + 1))
    lpf[1] = 1
    for p in range(2, N + 1):
        if lpf[p] == p:  # p prime; later primes overwrite smaller ones
            for mult in range(2 * p, N + 1, p):
                lpf[mult] = p
    return FactorTable(lpf)


def fmax_admissible(v: int, fmax: int, table: FactorTable) -> bool:
    """True iff the largest prime factor of |v| is at most fmax."""
    v = abs(v)
    if v == 0:
        raise ValueError("v must be nonzero")
    return table[v] <= fmax


def save_factor_table(table: FactorTable, path) -> None:
    """One integer per line, entries for 1..limit."""
    with open(path, "w") as fh:
        for v in range(1, table.limit + 1):
            fh.write(f"{table[v]}\n")


def load_factor_table(path) -> FactorTable:
    entries = [0]
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                entries.append(int(line))
    return FactorTable(entries)
