"""Corpus handling and higher-level analyses.

Reads and re-verifies solution record files, groups sides that share an
exact power-sum signature into chains, tests solutions for all-prime
elements, and implements four parametric generators of known solution
families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

import sympy

from .core import (
    ExponentSpec,
    GpteSolution,
    Side,
    extended_power_sum,
    is_trivial,
    verify_equal,
)
from .errors import (
    DegenerateParameters,
    IoError,
    NonSquareSeed,
    NotApplicable,
    OutOfPositivityWindow,
    ParseError,
    VerificationFailed,
)

try:
    import gmpy2
except ImportError:  # pragma: no cover
    gmpy2 = None


# ---------------------------------------------------------------------------
# Records


@dataclass(frozen=True)
class SolutionRecord:
    """A verified solution plus a provenance tag (catalog label or
    generator name; empty for anonymous records)."""

    solution: GpteSolution
    tag: str = ""


def parse_record(line: str, line_no: Optional[int] = None) -> SolutionRecord:
    """Parse one ``k=<exponents> | <lhs> | <rhs>`` line.

    An optional trailing ``# tag`` carries the provenance label.  The
    parsed solution is re-verified; a trivial or non-verifying line
    raises VerificationFailed citing the line number when given.
    """
    where = f"line {line_no}: " if line_no is not None else ""
    body, tag = line, ""
    if "#" in line:
        body, tag = line.split("#", 1)
        tag = tag.strip()
    parts = [p.strip() for p in body.split("|")]
    if len(parts) != 3 or not parts[0].startswith("k="):
        raise ParseError(where + f"malformed record {line!r}")
    try:
        spec = ExponentSpec(tuple(int(t) for t in parts[0][2:].split(",")))
        lhs = Side(tuple(int(t) for t in parts[1].split(",")))
        rhs = Side(tuple(int(t) for t in parts[2].split(",")))
    except (ValueError, IndexError) as exc:
        raise ParseError(where + str(exc)) from exc
    if is_trivial(lhs, rhs):
        raise VerificationFailed(where + "trivial record (sides equal)")
    if not verify_equal(lhs, rhs, spec):
        raise VerificationFailed(where + f"record does not verify: {body.strip()}")
    return SolutionRecord(GpteSolution(spec, lhs, rhs), tag)


def emit_record(rec: SolutionRecord) -> str:
    line = str(rec.solution)
    if rec.tag:
        line += f"  # {rec.tag}"
    return line


class CatalogReport(NamedTuple):
    total: int
    passed: int
    failures: list  # (line number, message) pairs


def verify_catalog(path) -> CatalogReport:
    """Re-verify every record in a file; blank and comment lines skip."""
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    total = passed = 0
    failures = []
    for no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        total += 1
        try:
            parse_record(line, line_no=no)
            passed += 1
        except (ParseError, VerificationFailed) as exc:
            failures.append((no, str(exc)))
    return CatalogReport(total, passed, failures)


def load_catalog(path) -> list[SolutionRecord]:
    """Parse every record in a file, raising on the first bad line."""
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    out = []
    for no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(parse_record(line, line_no=no))
    return out


# ---------------------------------------------------------------------------
# Chains


@dataclass(frozen=True)
class Chain:
    """Sides sharing one exact power-sum signature, sorted by smallest
    element; any two of them form a valid solution."""

    spec: ExponentSpec
    sides: tuple[Side, ...]

    @property
    def length(self) -> int:
        return len(self.sides)


def _signature(side: Side, spec: ExponentSpec):
    sig = []
    for k in spec.exponents:
        v = extended_power_sum(side, k)
        sig.append((v.numerator, v.denominator))
    return tuple(sig)


def find_chains(records: Iterable[SolutionRecord]) -> list[Chain]:
    """Group all sides of same-spec records by exact signature.

    Returns every maximal group of two or more pairwise-distinct sides,
    ordered by smallest member.
    """
    groups: dict = {}
    spec = None
    for rec in records:
        sol = rec.solution if isinstance(rec, SolutionRecord) else rec
        if spec is None:
            spec = sol.spec
        elif sol.spec != spec:
            raise ValueError("records must share one exponent spec")
        for side in (sol.lhs, sol.rhs):
            groups.setdefault(_signature(side, spec), {})[side.values] = side
    chains = []
    for members in groups.values():
        if len(members) >= 2:
            sides = tuple(sorted(members.values(), key=lambda s: s.values))
            chains.append(Chain(spec, sides))
    chains.sort(key=lambda c: c.sides[0].values)
    return chains


# ---------------------------------------------------------------------------
# Primality


PRIME = "prime"
PROBABLE_PRIME = "probable prime"
COMPOSITE = "composite"

_DETERMINISTIC_LIMIT = 2 ** 64


def primality(n: int) -> str:
    """Classify n: deterministic below 2^64, 64-round probable above."""
    if n < 2:
        return COMPOSITE
    if n < _DETERMINISTIC_LIMIT:
        return PRIME if sympy.isprime(n) else COMPOSITE
    if gmpy2 is not None:
        ok = gmpy2.is_prime(gmpy2.mpz(n), 64)
    else:  # pragma: no cover
        ok = sympy.isprime(n)
    return PROBABLE_PRIME if ok else COMPOSITE


def is_prime_solution(sol: GpteSolution) -> bool:
    """True iff every element on both sides is (probably) prime."""
    if any(k <= 0 for k in sol.spec.exponents):
        raise NotApplicable("prime solutions need all exponents positive")
    values = tuple(sol.lhs) + tuple(sol.rhs)
    if any(v <= 0 for v in values):
        raise NotApplicable("prime solutions need all elements positive")
    return all(primality(v) != COMPOSITE for v in values)


def prime_report(sol: GpteSolution) -> dict:
    """Per-element primality classification."""
    return {v: primality(v) for v in tuple(sol.lhs) + tuple(sol.rhs)}


# ---------------------------------------------------------------------------
# Parametric generators


def _primitive(values: Sequence[int]) -> list[int]:
    g = math.gcd(*values)
    return [v // g for v in values] if g > 1 else list(values)


def _build(spec, a_vals, b_vals, normalize=True) -> GpteSolution:
    vals = list(a_vals) + list(b_vals)
    if spec.has_nonpositive and any(v == 0 for v in vals):
        raise DegenerateParameters("zero element")
    if normalize:
        vals = _primitive(vals)
    m = len(a_vals)
    lhs, rhs = Side(tuple(vals[:m])), Side(tuple(vals[m:]))
    if is_trivial(lhs, rhs):
        raise DegenerateParameters("sides coincide")
    sol = GpteSolution(spec, lhs, rhs)
    if not verify_equal(lhs, rhs, spec):
        raise VerificationFailed(f"generator output does not verify: {sol}")
    return sol


def gen_choudhry(m: int, n: int, p: int, q: int,
                 degree: int = 4) -> GpteSolution:
    """Two-parameter-pair family of ideal integer solutions.

    degree=4 gives the (h=-1,1,2,3) quadruples, degree=6 the companion
    (h=-1,1,2,3,4,5) sextuples.  Output is reduced to primitive form.
    """
    if degree == 4:
        x = p * p + q * q
        y = m * m + n * n
        a = [m * (m - n) * x, n * (m + n) * x,
             (n - m) * n * x, m * (m + n) * x]
        b = [p * (p - q) * y, q * (p + q) * y,
             (q - p) * q * y, p * (p + q) * y]
        spec = ExponentSpec((-1, 1, 2, 3))
    elif degree == 6:
        x = p * p + p * q + q * q
        y = m * m + m * n + n * n
        a = [m * (m - n) * x, n * (m + 2 * n) * x,
             (m + n) * (2 * m + n) * x, n * (n - m) * x,
             m * (2 * m + n) * x, (m + n) * (m + 2 * n) * x]
        b = [p * (p - q) * y, q * (p + 2 * q) * y,
             (p + q) * (2 * p + q) * y, q * (q - p) * y,
             p * (2 * p + q) * y, (p + q) * (p + 2 * q) * y]
        spec = ExponentSpec((-1, 1, 2, 3, 4, 5))
    else:
        raise ValueError("degree must be 4 or 6")
    return _build(spec, a, b)


def gen_prime_k23(m: int, n: int):
    """Quadratic-form family for k=2,3 designed to land on primes.

    Elements are all positive only for 0.50146073 < m/n < 0.50764144.
    Returns (solution, per-element primality report).
    """
    a = [668607 * m * m - 606430 * m * n + 135971 * n * n,
         3 * (331215 * m * m - 356278 * m * n + 95579 * n * n),
         -140793 * m * m + 157762 * m * n - 43109 * n * n]
    b = [971067 * m * m - 1050038 * m * n + 282799 * n * n,
         3 * (237495 * m * m - 218822 * m * n + 50083 * n * n),
         -59853 * m * m + 39050 * m * n - 3817 * n * n]
    if any(v <= 0 for v in a + b):
        raise OutOfPositivityWindow(
            "m/n outside (0.50146073, 0.50764144): nonpositive element")
    sol = _build(ExponentSpec((2, 3)), a, b)
    return sol, prime_report(sol)


def gen_k15(r: int, s: int, t: int) -> GpteSolution:
    """Three-parameter family for k=1,5, reduced to primitive form."""
    if r ** 4 == t ** 4:
        raise DegenerateParameters("r^4 - t^4 = 0")
    p = ((r + s) * (r * r + s * s) * (s + t) * (s * s + t * t)
         * (r * r + r * t + t * t))
    q = ((r ** 4 - t ** 4)
         * (r * r * s * s + r * r * s * t + r * s * s * t
            + r * r * t * t + r * s * t * t + s * s * t * t))
    if p == q:
        raise DegenerateParameters("p - q = 0")
    m = Fraction(p + q, p - q)
    n = (r ** 4 * m - s ** 4 * m + s ** 4 - t ** 4) / (r ** 4 - t ** 4)
    u = (s * s - t * t + r * r * m ** 3 - s * s * m ** 3
         - r * r * n ** 3 + t * t * n ** 3)
    v = s - t + r * m ** 4 - s * m ** 4 - r * n ** 4 + t * n ** 4
    a = [-2 * m * u + r * v, 2 * n * u - r * v, -2 * n * u + t * v]
    b = [-2 * m * u + s * v, -2 * u + t * v, 2 * u - s * v]
    scale = math.lcm(*(f.denominator for f in a + b))
    ints = [int(f * scale) for f in a + b]
    # both exponents are odd, so a negative element on one side equals
    # its absolute value moved to the other side; prefer the positive form
    a_vals, b_vals = [], []
    for v in ints[:3]:
        (a_vals if v > 0 else b_vals).append(abs(v))
    for v in ints[3:]:
        (b_vals if v > 0 else a_vals).append(abs(v))
    return _build(ExponentSpec((1, 5)), a_vals, b_vals)


def _pell_step(u: int, mult: int, root_mult: int, const: int) -> int:
    rad = 3 * u * u - const
    root = math.isqrt(rad)
    if rad < 0 or root * root != rad:
        raise NonSquareSeed(f"3*{u}^2 - {const} is not a perfect square")
    return mult * u + root_mult * root


_K12345 = ExponentSpec((1, 2, 3, 4, 5))


def gen_pell_k12345(u0: int, iterations: int) -> GpteSolution:
    """Recurrence family u <- 7u + 4*sqrt(3u^2 - 11) for k=1..5.

    Valid seeds make 3u^2 - 11 a perfect square (67, 37, ...).  Each
    iteration scales the solution by about 2 + sqrt(3) squared.
    """
    u = u0
    for _ in range(max(iterations, 1)):
        u = _pell_step(u, 7, 4, 11)
    v = math.isqrt(3 * u * u - 11) // 2
    a = [0, (u - 1) // 2, (u + 1) // 2, (3 * u - 1) // 2, (3 * u + 1) // 2,
         2 * u]
    b = [u - v - 1, u - v + 1, u - 2, u + 2, u + v - 1, u + v + 1]
    return _build(_K12345, a, b, normalize=False)


def gen_pell_k12345_alt(u0: int, iterations: int) -> GpteSolution:
    """Companion recurrence u <- 2u + sqrt(3u^2 - 8) (seed 6).

    The unit coefficient on the root is the automorphism of
    3u^2 - w^2 = 8; a larger coefficient would leave the invariant."""
    u = u0
    for _ in range(max(iterations, 1)):
        u = _pell_step(u, 2, 1, 8)
    v = math.isqrt(3 * u * u - 8) // 2
    a = [0, (u - 2) // 4, (u + 2) // 4, (3 * u - 2) // 4, (3 * u + 2) // 4, u]
    b = [(u - v - 1) // 2, (u - v + 1) // 2, (u - 2) // 2, (u + 2) // 2,
         (u + v - 1) // 2, (u + v + 1) // 2]
    return _build(_K12345, a, b, normalize=False)
