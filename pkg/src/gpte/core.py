"""Exact arithmetic types and the verification/transformation layer.

Everything here is a pure function over immutable values.  A system is a
pair of integer multisets ("sides") together with an ordered set of
distinct integer exponents.  The bracket value of a side at exponent k is
the k-th power sum for k != 0 and the plain product for k = 0; negative k
gives exact rational reciprocal-power sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import NotApplicable, ZeroElement, ZeroWithNonpositiveExponent

# Exact rational value of a bracket.  Plain ints are acceptable wherever a
# PowerValue is expected; Fraction normalises gcd and sign for us.
PowerValue = Fraction


@dataclass(frozen=True)
class ExponentSpec:
    """Ordered set of distinct integer exponents defining a system type."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(k) for k in self.exponents)
        if len(exps) < 1:
            raise ValueError("need at least one exponent")
        if any(b <= a for a, b in zip(exps, exps[1:])):
            raise ValueError("exponents must be strictly increasing")
        object.__setattr__(self, "exponents", exps)

    @property
    def degree(self) -> int:
        return len(self.exponents)

    @property
    def side_size(self) -> int:
        """Side size of an ideal solution (one more than the degree)."""
        return self.degree + 1

    @property
    def is_consecutive_from_1(self) -> bool:
        return self.exponents == tuple(range(1, self.degree + 1))

    @property
    def has_nonpositive(self) -> bool:
        return self.exponents[0] <= 0

    def negated(self) -> "ExponentSpec":
        return ExponentSpec(tuple(sorted(-k for k in self.exponents)))

    def __str__(self) -> str:
        return ",".join(str(k) for k in self.exponents)


@dataclass(frozen=True)
class Side:
    """Sorted multiset of exact integers forming one side of a system."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(sorted(int(v) for v in self.values)))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.values)


@dataclass(frozen=True)
class GpteSolution:
    """A verified pair of sides under an exponent spec.

    Sides may differ in length by one (the Fermat-form variant)."""

    spec: ExponentSpec
    lhs: Side
    rhs: Side

    def __str__(self) -> str:
        return f"k={self.spec} | {self.lhs} | {self.rhs}"


def extended_power_sum(side: Side | Iterable[int], k: int) -> PowerValue:
    """The bracket [v1,...,vm]^k: power sum for k != 0, product for k = 0."""
    values = side.values if isinstance(side, Side) else tuple(side)
    if k <= 0 and any(v == 0 for v in values):
        raise ZeroWithNonpositiveExponent(
            f"zero element with exponent {k} <= 0")
    if k == 0:
        return Fraction(math.prod(values))
    if k > 0:
        return Fraction(sum(v ** k for v in values))
    # k < 0: sum of 1/v^|k| as an exact rational
    return sum((Fraction(1, v ** -k) for v in values), Fraction(0))


def verify_equal(lhs: Side, rhs: Side, spec: ExponentSpec) -> bool:
    """True iff both sides agree at every exponent, compared exactly."""
    return all(
        extended_power_sum(lhs, k) == extended_power_sum(rhs, k)
        for k in spec.exponents
    )


def is_trivial(lhs: Side, rhs: Side) -> bool:
    """True iff the sides are equal as multisets."""
    return sorted(lhs) == sorted(rhs)


def make_solution(spec: ExponentSpec, lhs: Side, rhs: Side) -> GpteSolution:
    """Construct a solution, insisting it verifies and is non-trivial."""
    if not isinstance(spec, ExponentSpec):
        spec = ExponentSpec(tuple(spec))
    if not isinstance(lhs, Side):
        lhs = Side(tuple(lhs))
    if not isinstance(rhs, Side):
        rhs = Side(tuple(rhs))
    if is_trivial(lhs, rhs):
        raise ValueError("trivial solution (sides equal as multisets)")
    if not verify_equal(lhs, rhs, spec):
        raise ValueError(f"sides do not verify for k={spec}")
    return GpteSolution(spec, lhs, rhs)


SYMMETRIC = "Symmetric"
NON_SYMMETRIC = "NonSymmetric"


def classify_symmetry(sol: GpteSolution) -> str:
    """Classify a PTE solution by its pairing structure.

    For odd degree n the pairing is within each side (a_i + a_{n+2-i}
    constant, same for b); for even n it runs across sides
    (a_i + b_{n+2-i} constant).  Defined only for k = 1..n with full
    side size n+1.
    """
    spec = sol.spec
    n = spec.degree
    if not spec.is_consecutive_from_1:
        raise NotApplicable("symmetry is defined only for k=1..n")
    if len(sol.lhs) != n + 1 or len(sol.rhs) != n + 1:
        raise NotApplicable("symmetry needs ideal side size n+1")
    a, b = sol.lhs.values, sol.rhs.values
    if n % 2 == 1:
        sums_a = {a[i] + a[n - i] for i in range(n + 1)}
        sums_b = {b[i] + b[n - i] for i in range(n + 1)}
        ok = len(sums_a) == 1 and sums_a == sums_b
    else:
        ok = len({a[i] + b[n - i] for i in range(n + 1)}) == 1
    return SYMMETRIC if ok else NON_SYMMETRIC


def equivalent_transform(sol: GpteSolution) -> GpteSolution:
    """Subtract every element from the shared maximum and re-sort.

    Valid for translation-invariant (k = 1..n) specs only.  Sides are
    re-ordered so the side containing the smaller minimum comes first.
    """
    if not sol.spec.is_consecutive_from_1:
        raise NotApplicable("equivalent transform needs k=1..n")
    top = max(max(sol.lhs), max(sol.rhs))
    new_a = Side(tuple(top - v for v in sol.lhs))
    new_b = Side(tuple(top - v for v in sol.rhs))
    if new_b.values < new_a.values:
        new_a, new_b = new_b, new_a
    return GpteSolution(sol.spec, new_a, new_b)


def normalize(sol: GpteSolution) -> GpteSolution:
    """Remove the common gcd; for k = 1..n also translate the minimum to 0."""
    a = list(sol.lhs)
    b = list(sol.rhs)
    if sol.spec.is_consecutive_from_1:
        low = min(min(a), min(b))
        a = [v - low for v in a]
        b = [v - low for v in b]
    g = math.gcd(*a, *b)
    if g > 1:
        a = [v // g for v in a]
        b = [v // g for v in b]
    return GpteSolution(sol.spec, Side(tuple(a)), Side(tuple(b)))


def mirror_transform(sol: GpteSolution) -> GpteSolution:
    """Map every element v to C/v with C = lcm of all elements, negating
    the exponent set.  Reciprocal-power sums swap roles with power sums."""
    vals = list(sol.lhs) + list(sol.rhs)
    if any(v == 0 for v in vals):
        raise ZeroElement("mirror transform needs nonzero elements")
    c = math.lcm(*(abs(v) for v in vals))
    new_a = Side(tuple(c // v for v in sol.lhs))
    new_b = Side(tuple(c // v for v in sol.rhs))
    return GpteSolution(sol.spec.negated(), new_a, new_b)
