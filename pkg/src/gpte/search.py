"""Pruned exhaustive enumeration of ideal equal-power-sum systems.

Two engines share one public entry point.  Consecutive specs (k = 1..n)
get the interlaced prefix enumeration with exact symmetric-function
back-solving of the remaining block; every other spec falls back to a
generic prune-and-verify enumerator.  Audit mode restricts itself to
provably complete windows; Fast mode layers the conjectural bound-table,
seesaw, threshold and divisor-filter cuts on top.
"""

from __future__ import annotations

import math
import multiprocessing
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from . import newton
from .bounds import (
    BoundTable,
    ThresholdParams,
    build_bound_table,
    interlace_order,
    solve_beta_top_min,
    threshold_params,
)
from .core import (
    SYMMETRIC,
    ExponentSpec,
    GpteSolution,
    Side,
    classify_symmetry,
    is_trivial,
    normalize,
    verify_equal,
)
from .errors import (
    ConfigError,
    CorruptProgressFile,
    NonIntegerRoot,
    NonSquareDiscriminant,
    OutOfRange,
    SingularBase,
    UnsupportedGapPattern,
    VerificationFailed,
)
from .prunec import build_factor_table

try:  # vector kernel for the depth-4 hot path
    import numpy as _np
except ImportError:  # pragma: no cover - numpy is a hard dependency
    _np = None

FAST = "Fast"
AUDIT = "Audit"

_TABLE_SCALE = 10 ** 4
_ENTRY_SCALE = 10 ** 6


# ---------------------------------------------------------------------------
# Progress plumbing


@dataclass
class Progress:
    """Checkpoint on the outermost search variable."""

    current: int
    end: int
    timestamp: float = field(default_factory=time.time)

    def __post_init__(self):
        if self.current > self.end:
            raise ValueError("progress current exceeds end")


def save_progress(p: Progress, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{p.current} {p.end}\n")


def load_progress(path) -> Progress:
    try:
        with open(path) as fh:
            text = fh.read()
        parts = text.split()
        if len(parts) != 2:
            raise ValueError("expected two fields")
        current, end = int(parts[0]), int(parts[1])
        return Progress(current, end)
    except (OSError, ValueError) as exc:
        raise CorruptProgressFile(f"{path}: {exc}") from exc


@dataclass
class SearchConfig:
    spec: ExponentSpec
    max_value: int
    mode: str = AUDIT
    fmax: Optional[int] = None
    bound_table: Optional[BoundTable] = None
    threshold: Optional[ThresholdParams] = None
    resume: Optional[Progress] = None
    worker_count: int = 1
    timing_log: Optional[str] = None
    progress_path: Optional[str] = None


# ---------------------------------------------------------------------------
# Exact integer root helpers


def _iroot_floor(x: int, k: int) -> int:
    """floor(x ** (1/k)) for x >= 0 (exact)."""
    if x < 0:
        raise ValueError("negative radicand")
    if k == 1:
        return x
    if k == 2:
        return math.isqrt(x)
    r = round(x ** (1.0 / k)) if x < (1 << 48) else round(x ** (1.0 / k))
    r = max(r, 0)
    while r ** k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def _iroot_ceil(x: int, k: int) -> int:
    if x <= 0:
        return 0
    r = _iroot_floor(x, k)
    return r if r ** k == x else r + 1


def _exact_root(x: int, k: int) -> Optional[int]:
    if x < 0:
        return None
    r = _iroot_floor(x, k)
    return r if r ** k == x else None


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


# ---------------------------------------------------------------------------
# Integrality test and back-solving


def _prefix_roles(spec: ExponentSpec) -> tuple[list[tuple[str, int]], str]:
    order = interlace_order(spec)
    zero_side = order[-1][0]
    return order, zero_side


def _block_sizes(spec: ExponentSpec) -> tuple[int, int]:
    """Sizes (w, p) of the two back-solved blocks after an (n+1)-prefix.

    w counts the unknowns that share a side with the pinned zero
    (excluding the zero itself); p counts the other side's unknowns.
    """
    n = spec.degree
    m = n + 1
    order, zero_side = _prefix_roles(spec)
    zero_fixed = sum(1 for side, _ in order[:m] if side == zero_side)
    w = (m - 1) - zero_fixed
    return w, n - w


def _prefix_power_sums(spec: ExponentSpec, fixed: Sequence[int]) -> dict[int, int]:
    """Difference power sums of the fixed prefix (non-zero side minus
    the pinned-zero side) for k = 1..n."""
    n = spec.degree
    order, zero_side = _prefix_roles(spec)
    out = {}
    for k in range(1, n + 1):
        acc = 0
        for (side, _), v in zip(order, fixed):
            acc += -(v ** k) if side == zero_side else v ** k
        out[k] = acc
    return out


def integrality_test(fixed: Sequence[int],
                     spec: ExponentSpec) -> Optional[tuple[int, ...]]:
    """Exact divisibility test on the interlaced prefix.

    fixed holds the first n+1 values in interlaced descending order
    (largest element first).  Returns the elementary symmetric values of
    the unknown block beside the pinned zero when every determinant
    ratio is a positive integer, or None to reject the prefix.
    """
    if not spec.is_consecutive_from_1:
        raise UnsupportedGapPattern(
            "integrality machinery needs consecutive exponents 1..n")
    n = spec.degree
    if len(fixed) != n + 1:
        raise ValueError(f"prefix must fix exactly {n + 1} values")
    w, p = _block_sizes(spec)
    if w == 0:
        return ()
    P = {k: Fraction(v) for k, v in _prefix_power_sums(spec, fixed).items()}
    try:
        ratios = newton.w_ratios(P, w, p)
    except SingularBase:
        return None
    out = []
    for r in ratios:
        if r.denominator != 1 or r <= 0:
            return None
        out.append(int(r))
    return tuple(out)


def _integer_roots_of_elementary(e: Sequence[int]) -> list[int]:
    """All roots of x^m - e1 x^(m-1) + ... +- e_m, requiring every root
    to be an integer (with multiplicity)."""
    m = len(e)
    if m == 0:
        return []
    if m == 1:
        return [e[0]]
    if m == 2:
        disc = e[0] * e[0] - 4 * e[1]
        if disc < 0:
            raise NonSquareDiscriminant(f"discriminant {disc} negative")
        s = math.isqrt(disc)
        if s * s != disc:
            raise NonSquareDiscriminant(f"{disc} is not a perfect square")
        if (e[0] + s) % 2:
            raise NonIntegerRoot("quadratic roots are half-integers")
        return sorted([(e[0] - s) // 2, (e[0] + s) // 2])
    # general case: deflate integer roots off the monic polynomial
    coeffs = [1]
    for i, ei in enumerate(e):
        coeffs.append((-1) ** (i + 1) * ei)
    roots = []
    for _ in range(m):
        root = _find_integer_root(coeffs)
        if root is None:
            raise NonIntegerRoot("monic polynomial has a non-integer root")
        roots.append(root)
        coeffs = _deflate(coeffs, root)
    return sorted(roots)


def _find_integer_root(coeffs: list[int]) -> Optional[int]:
    if coeffs[-1] == 0:
        return 0
    for d in _divisors(abs(coeffs[-1])):
        for cand in (d, -d):
            if _poly_eval(coeffs, cand) == 0:
                return cand
    return None


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _poly_eval(coeffs: list[int], x: int) -> int:
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _deflate(coeffs: list[int], root: int) -> list[int]:
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(out[-1] * root + c)
    return out


def recover_remaining(symfuncs: Sequence[int],
                      linear_data: Optional[dict],
                      value_range: tuple[int, int]):
    """Back-solve both unknown blocks from exact symmetric functions.

    symfuncs are the elementary symmetric values of the block beside the
    pinned zero; linear_data maps exponent -> difference power sum of
    the fixed prefix (non-zero side minus zero side).  Returns
    (zero_block, other_block), each sorted ascending.  When linear_data
    is None only the first block is recovered.
    """
    lo, hi = value_range
    zero_block = _integer_roots_of_elementary(list(symfuncs))
    for r in zero_block:
        if not lo <= r <= hi:
            raise OutOfRange(f"recovered value {r} outside [{lo}, {hi}]")
    if not linear_data:
        return sorted(zero_block), []
    P = {int(k): int(v) for k, v in linear_data.items()}
    n = max(P)
    p = n - len(zero_block)
    Q = {k: sum(r ** k for r in zero_block) - P[k] for k in range(1, p + 1)}
    e = [1]
    for r in range(1, p + 1):
        acc = 0
        for i in range(1, r + 1):
            acc += (-1) ** (i - 1) * e[r - i] * Q[i]
        if acc % r:
            raise NonIntegerRoot(f"elementary value e_{r} not integral")
        e.append(acc // r)
    other = _integer_roots_of_elementary(e[1:])
    for r in other:
        if not lo <= r <= hi:
            raise OutOfRange(f"recovered value {r} outside [{lo}, {hi}]")
    return sorted(zero_block), sorted(other)


# ---------------------------------------------------------------------------
# Fast-mode context (plain picklable payload)


@dataclass
class _FastCtx:
    beta6: int                      # floor(1e6 * minimal top ratio)
    table_entries: dict             # scaled-key -> scaled lower bound
    table_step: int                 # key granularity
    table_min_key: int
    ceilings: dict                  # (level, exponent) -> float ratio ceiling
    kn: int
    fmax: Optional[int]             # None = dynamic floor(a_max / 2)
    lpf: Optional[list] = None      # largest prime factor, index by value

    def b_top_min(self, a_max: int) -> int:
        # beta6 truncates the exact ratio, so the floor is a safe lower
        # bound; the boundary itself is attainable by tied solutions.
        return (self.beta6 * a_max) // _ENTRY_SCALE

    def b_next_min(self, a_max: int, b_top: int) -> int:
        key = (_TABLE_SCALE * b_top) // a_max
        key -= key % self.table_step
        if key < self.table_min_key:
            key = self.table_min_key
        entry = self.table_entries.get(key)
        if entry is None:
            return 0
        return (a_max * entry) // _ENTRY_SCALE

    def effective_fmax(self, a_max: int) -> int:
        return self.fmax if self.fmax is not None else a_max // 2

    def smooth(self, v: int, fmax: int) -> bool:
        """Divisor filter: reject shared values and rough differences."""
        if v == 0:
            return False
        return self.lpf[v] <= fmax


def _make_fast_ctx(spec: ExponentSpec, max_value: int,
                   table: BoundTable, thr: ThresholdParams,
                   fmax: Optional[int]) -> _FastCtx:
    beta6 = int(solve_beta_top_min(spec, precision=30) * _ENTRY_SCALE)
    entries = {int(k): int(v) for k, v in table.entries.items()}
    step = _TABLE_SCALE // table.resolution.denominator * table.resolution.numerator
    kn = spec.exponents[-1]
    ceilings = {key: float(v) for key, v in thr.ceilings.items()}
    lpf = None
    if spec.is_consecutive_from_1:
        lpf = build_factor_table(max(max_value, 1))._entries
    return _FastCtx(beta6=beta6, table_entries=entries, table_step=step,
                    table_min_key=min(entries), ceilings=ceilings,
                    kn=kn, fmax=fmax, lpf=lpf)


def _threshold_ok(ctx: _FastCtx, level: int, tsums) -> bool:
    """Partial-sum ratio law at one interlacing depth.

    tsums maps each exponent to the alternating partial sum over the
    `level` largest elements, oriented so the seesaw value is positive.
    Odd levels require the ratio to exceed 1, even levels 0.
    """
    kn = ctx.kn
    t_kn = tsums[kn]
    if t_kn <= 0:
        return True
    lower = 1.0 - 1e-9 if level % 2 == 1 else -1.0
    tknf = float(t_kn)
    for ki, t_ki in tsums.items():
        if ki == kn:
            continue
        ceiling = ctx.ceilings.get((level, ki))
        if ceiling is None:
            continue
        if t_ki < 0:
            return False
        q = float(t_ki) ** kn / tknf ** ki
        if q <= lower or q > ceiling * (1.0 + 1e-9):
            return False
    return True


# ---------------------------------------------------------------------------
# Consecutive-spec engine (generic degree, exact integer arithmetic)


def _audit_window(ks, own_sums, opp_sums, r_own, r_opp, opp_cap, hi0):
    """Provable [lo, hi] for the next descending value of one side."""
    lo, hi = 0, hi0
    for k in ks:
        d = opp_sums[k] - own_sums[k]
        u = d + r_opp * opp_cap ** k
        if u < 0:
            return None
        hi = min(hi, _iroot_floor(u, k))
        if d > 0:
            lo = max(lo, _iroot_ceil(_ceil_div(d, r_own), k))
        if lo > hi:
            return None
    return lo, hi


def _consecutive_block(spec: ExponentSpec, max_value: int, mode: str,
                       a_lo: int, a_hi: int,
                       ctx: Optional[_FastCtx]) -> list[GpteSolution]:
    if spec.degree == 4 and _np is not None:
        return _depth4_block(spec, max_value, mode, a_lo, a_hi, ctx)
    return _consecutive_block_py(spec, max_value, mode, a_lo, a_hi, ctx)


def _consecutive_block_py(spec: ExponentSpec, max_value: int, mode: str,
                          a_lo: int, a_hi: int,
                          ctx: Optional[_FastCtx]) -> list[GpteSolution]:
    n = spec.degree
    m = n + 1
    ks = spec.exponents
    order, zero_side = _prefix_roles(spec)
    w, p = _block_sizes(spec)
    results: list[GpteSolution] = []

    for a_max in range(max(a_lo, 1), a_hi + 1):
        fmax_eff = None
        if ctx is not None and ctx.lpf is not None:
            fmax_eff = ctx.effective_fmax(a_max)
            if not ctx.smooth(a_max, fmax_eff):
                continue
        sums = {"a": {k: a_max ** k for k in ks},
                "b": {k: 0 for k in ks}}
        counts = {"a": 1, "b": 0}
        counts[zero_side] += 1  # the pinned zero
        prev = {"a": a_max, "b": a_max - 1}
        fixed: list[int] = [a_max]

        def other(side: str) -> str:
            return "b" if side == "a" else "a"

        def emit(lhs_vals, rhs_vals):
            lhs, rhs = Side(tuple(lhs_vals)), Side(tuple(rhs_vals))
            if is_trivial(lhs, rhs):
                return
            if not verify_equal(lhs, rhs, spec):
                raise VerificationFailed(f"engine produced {lhs} | {rhs}")
            results.append(GpteSolution(spec, lhs, rhs))

        def finish_prefix():
            P = _prefix_power_sums(spec, fixed)
            Pf = {k: Fraction(v) for k, v in P.items()}
            if w > 0:
                try:
                    ratios = newton.w_ratios(Pf, w, p)
                except SingularBase:
                    # The base determinant is the product of pairwise
                    # differences across the residual blocks; it is zero
                    # only for completions that share a value between
                    # the sides, which are necessarily trivial.
                    return
                D = []
                for r in ratios:
                    if r.denominator != 1 or r <= 0:
                        return
                    D.append(int(r))
            else:
                D = []
            try:
                zero_block, other_block = recover_remaining(
                    D, P, (0, max_value))
            except (NonSquareDiscriminant, NonIntegerRoot, OutOfRange):
                return
            if zero_block and zero_block[-1] > prev[zero_side]:
                return
            nz = other(zero_side)
            if other_block and other_block[-1] > prev[nz]:
                return
            parts = {zero_side: [0] + zero_block, nz: other_block}
            for (side, _), v in zip(order, fixed):
                parts[side].append(v)
            emit(parts["a"], parts["b"])

        def solve_last(side: str):
            opp = other(side)
            k0 = ks[0]
            d = sums[opp][k0] - sums[side][k0]
            v = _exact_root(d, k0) if d >= 0 else None
            if v is None or v > prev[side]:
                return
            if any(sums[opp][k] - sums[side][k] != v ** k for k in ks):
                return
            parts = {"a": [], "b": []}
            if zero_side == "a":
                parts["a"].append(0)
            else:
                parts["b"].append(0)
            parts[side].append(v)
            for (s, _), u in zip(order, fixed):
                parts[s].append(u)
            emit(parts["a"], parts["b"])

        def descend(pos: int):
            if pos == 2 * m - 2:
                solve_last(order[pos][0])
                return
            side = order[pos][0]
            opp = other(side)
            win = _audit_window(ks, sums[side], sums[opp],
                                m - counts[side], m - counts[opp],
                                prev[opp], prev[side])
            if win is None:
                return
            lo, hi = win
            if ctx is not None:
                lo, hi = _fast_tighten(ctx, spec, pos, fixed, lo, hi,
                                       a_max, fmax_eff)
                if lo > hi:
                    return
            for v in range(hi, lo - 1, -1):
                if ctx is not None and ctx.lpf is not None:
                    if not _fast_cross_ok(ctx, fmax_eff, order, fixed,
                                          zero_side, side, v):
                        continue
                fixed.append(v)
                counts[side] += 1
                old_prev = prev[side]
                prev[side] = v
                for k in ks:
                    sums[side][k] += v ** k
                if pos + 1 == m:
                    finish_prefix()
                else:
                    descend(pos + 1)
                for k in ks:
                    sums[side][k] -= v ** k
                prev[side] = old_prev
                counts[side] -= 1
                fixed.pop()

        descend(1)
    return results


def _fast_tighten(ctx: _FastCtx, spec: ExponentSpec, pos: int,
                  fixed: list[int], lo: int, hi: int,
                  a_max: int, fmax_eff) -> tuple[int, int]:
    """Conjectural cuts applied on top of the provable window."""
    ks = spec.exponents
    order = interlace_order(spec)
    side = order[pos][0]
    opens_pair = order[pos - 1][0] != side
    own = {k: sum(v ** k for (s, _), v in zip(order, fixed) if s == side)
           for k in ks}
    opp = {k: sum(v ** k for (s, _), v in zip(order, fixed) if s != side)
           for k in ks}
    for k in ks:
        deficit = opp[k] - own[k]
        if opens_pair:
            # v^k in [deficit/2, deficit]; boundaries kept since tied
            # pairs attain them exactly
            if deficit < 0:
                return 1, 0
            lo = max(lo, _iroot_ceil(_ceil_div(deficit, 2), k))
            hi = min(hi, _iroot_floor(deficit, k))
        else:
            # v^k in [deficit, prev_own^k]
            if deficit > 0:
                lo = max(lo, _iroot_ceil(deficit, k))
        if lo > hi:
            return lo, hi
    if pos == 1:
        lo = max(lo, ctx.b_top_min(a_max))
    elif pos == 2:
        lo = max(lo, ctx.b_next_min(a_max, fixed[1]))
    return lo, hi


def _fast_cross_ok(ctx: _FastCtx, fmax_eff: int, order, fixed,
                   zero_side: str, side: str, v: int) -> bool:
    """Divisor filter on cross-side differences with the new value,
    plus the ratio law at the depth the new value completes."""
    for (s, _), u in zip(order, fixed):
        if s != side and not ctx.smooth(abs(v - u), fmax_eff):
            return False
    if side != zero_side and not ctx.smooth(v, fmax_eff):
        return False
    level = len(fixed) + 1
    if level >= 3:
        lean = "b" if ((level - 3) // 2) % 2 == 0 else "a"
        roles = list(zip(order, fixed)) + [(order[level - 1], v)]
        tsums = {}
        for k in range(1, ctx.kn + 1):
            tsums[k] = sum(u ** k if s == lean else -(u ** k)
                           for (s, _), u in roles)
        if not _threshold_ok(ctx, level, tsums):
            return False
    return True


# ---------------------------------------------------------------------------
# Depth-4 vector kernel


def _depth4_block(spec: ExponentSpec, max_value: int, mode: str,
                  a_lo: int, a_hi: int,
                  ctx: Optional[_FastCtx]) -> list[GpteSolution]:
    """Vector kernel for k = 1..4.

    Candidate (a4, a3) cells surviving the exact power-sum windows are
    screened in float64.  Every quantity through the base determinant is
    an integer below 2**53 and therefore exact; only the top determinant
    ratio carries a bounded rounding error, which the acceptance
    tolerance covers, so no true candidate is ever screened out.  The
    few survivors are re-derived in exact integer arithmetic.
    """
    np = _np
    results: list[GpteSolution] = []
    cap = max_value
    vals = np.arange(0, cap + 1, dtype=np.int64)
    pow_np = {k: vals ** k for k in (2, 3, 4)}
    lpf_np = None
    if ctx is not None and ctx.lpf is not None:
        lpf_np = np.array(ctx.lpf, dtype=np.int64)

    for A in range(max(a_lo, 1), a_hi + 1):
        fmax_eff = None
        if ctx is not None:
            fmax_eff = ctx.effective_fmax(A)
            if lpf_np is not None and not ctx.smooth(A, fmax_eff):
                continue
        Ak = [0] + [A ** k for k in (1, 2, 3, 4)]
        # --- b_top window ---
        b5_lo, b5_hi = 0, A - 1
        for k in (1, 2, 3, 4):
            b5_lo = max(b5_lo, _iroot_ceil(_ceil_div(Ak[k], 4), k))
        if ctx is not None:
            b5_lo = max(b5_lo, ctx.b_top_min(A))
            for k in (1, 2, 3, 4):  # open-pair window [A^k/2, A^k]
                b5_lo = max(b5_lo, _iroot_ceil(_ceil_div(Ak[k], 2), k))
        for b5 in range(b5_hi, b5_lo - 1, -1):
            if ctx is not None and not ctx.smooth(A - b5, fmax_eff):
                continue
            b5k = [0] + [b5 ** k for k in (1, 2, 3, 4)]
            # --- b_next window ---
            b4_lo, b4_hi = 0, b5
            for k in (1, 2, 3, 4):
                d = Ak[k] - b5k[k]
                b4_lo = max(b4_lo, _iroot_ceil(_ceil_div(d, 3), k))
            if ctx is not None:
                b4_lo = max(b4_lo, ctx.b_next_min(A, b5))
                for k in (1, 2, 3, 4):  # close-pair window [d, b5^k]
                    d = Ak[k] - b5k[k]
                    if d > 0:
                        b4_lo = max(b4_lo, _iroot_ceil(d, k))
            for b4 in range(b4_hi, b4_lo - 1, -1):
                b4k = [0] + [b4 ** k for k in (1, 2, 3, 4)]
                sb = [0] + [b5k[k] + b4k[k] for k in (1, 2, 3, 4)]
                if ctx is not None:
                    if not ctx.smooth(A - b4, fmax_eff):
                        continue
                    if not _threshold_ok(
                            ctx, 3, {k: sb[k] - Ak[k] for k in (1, 2, 3, 4)}):
                        continue
                # --- a4 window (scalar) ---
                a4_lo, a4_hi = 0, A
                ok = True
                for k in (1, 2, 3, 4):
                    d = sb[k] - Ak[k]
                    u = d + 2 * b4k[k]
                    if u < 0:
                        ok = False
                        break
                    a4_hi = min(a4_hi, _iroot_floor(u, k))
                    if d > 0:
                        a4_lo = max(a4_lo, _iroot_ceil(_ceil_div(d, 4), k))
                    if ctx is not None:
                        # seesaw pair window: a4^k in [d/2, d]
                        if d < 0:
                            ok = False
                            break
                        a4_lo = max(a4_lo, _iroot_ceil(_ceil_div(d, 2), k))
                        a4_hi = min(a4_hi, _iroot_floor(d, k))
                if not ok or a4_lo > a4_hi:
                    continue
                a4v = np.arange(a4_lo, a4_hi + 1, dtype=np.int64)
                if ctx is not None:
                    # depth-4 ratio law, vectorized over the a4 window
                    t4 = (sb[4] - Ak[4]) - pow_np[4][a4v]
                    t4f = t4.astype(np.float64)
                    m4 = np.ones(len(a4v), dtype=bool)
                    pos4 = t4 > 0
                    for ki in (1, 2, 3):
                        ti = (sb[ki] - Ak[ki]) - \
                            (a4v if ki == 1 else pow_np[ki][a4v])
                        m4 &= ti >= 0
                        ceiling = ctx.ceilings.get((4, ki))
                        if ceiling is None:
                            continue
                        with np.errstate(divide="ignore", invalid="ignore"):
                            q = ti.astype(np.float64) ** 4 / t4f ** ki
                        m4 &= ~(pos4 & (q > ceiling * (1.0 + 1e-9)))
                    a4v = a4v[m4]
                    if len(a4v) == 0:
                        continue
                # --- joint (a4, a3) candidates via per-a4 windows ---
                lo3 = np.zeros(len(a4v), dtype=np.int64)
                hi3 = a4v.copy()
                for k in (2, 3, 4):
                    d2 = sb[k] - Ak[k] - pow_np[k][a4v]
                    ub = d2 + 2 * b4k[k]
                    hi_k = np.searchsorted(pow_np[k], ub, side="right") - 1
                    if ctx is not None:
                        lb = d2  # close pair: a3^k at least d2
                    else:
                        lb = -((-d2) // 3)  # ceil(d2 / 3)
                    lo_k = np.searchsorted(pow_np[k], lb, side="left")
                    np.minimum(hi3, hi_k, out=hi3)
                    np.maximum(lo3, lo_k, out=lo3)
                d2 = sb[1] - Ak[1] - a4v
                np.minimum(hi3, d2 + 2 * b4, out=hi3)
                np.maximum(lo3, d2 if ctx is not None
                           else -((-d2) // 3), out=lo3)
                counts = hi3 - lo3 + 1
                keep = counts > 0
                if not keep.any():
                    continue
                a4v, lo3, counts = a4v[keep], lo3[keep], counts[keep]
                a4i = np.repeat(a4v, counts)
                offsets = np.concatenate(([0], np.cumsum(counts)[:-1]))
                a3i = (np.arange(len(a4i), dtype=np.int64)
                       - np.repeat(offsets, counts)
                       + np.repeat(lo3, counts))
                if lpf_np is not None:
                    mask = (a4i > 0) & (a3i > 0) & (a4i != b5) & \
                        (a4i != b4) & (a3i != b5) & (a3i != b4)
                    a4i, a3i = a4i[mask], a3i[mask]
                    if len(a4i) == 0:
                        continue
                    mask = ((lpf_np[a4i] <= fmax_eff)
                            & (lpf_np[a3i] <= fmax_eff)
                            & (lpf_np[np.abs(b5 - a4i)] <= fmax_eff)
                            & (lpf_np[np.abs(b4 - a4i)] <= fmax_eff)
                            & (lpf_np[np.abs(b5 - a3i)] <= fmax_eff)
                            & (lpf_np[np.abs(b4 - a3i)] <= fmax_eff))
                    a4i, a3i = a4i[mask], a3i[mask]
                if len(a4i) == 0:
                    continue
                # --- float64 determinant-ratio screen ---
                y = a4i.astype(np.float64)
                x = a3i.astype(np.float64)
                y2 = y * y
                x2 = x * x
                p1 = (x + y) + float(A - sb[1])
                p2 = (x2 + y2) + float(Ak[2] - sb[2])
                y2 *= y          # y^3
                x2 *= x          # x^3
                p3 = (x2 + y2) + float(Ak[3] - sb[3])
                y2 *= y          # y^4
                x2 *= x          # x^4
                p4 = (x2 + y2) + float(Ak[4] - sb[4])
                t2 = p2 + p1 * p1
                t3 = 2.0 * p3 + p1 * (2.0 * p2 + t2)
                t4 = 6.0 * p4 + p1 * (6.0 * p3 + t3) + 3.0 * t2 * p2
                w4 = 3.0 * t2 * t2 - 2.0 * t3 * p1
                w5 = 2.0 * t3 * t2 - t4 * p1
                den = np.abs(w4)
                den += den
                m5 = None
                if ctx is not None:
                    # depth-5 ratio law on the prefix power sums
                    m5 = (p1 > 0.5) & (p2 > 0.5) & (p3 > 0.5) & (p4 > 0.5)
                    with np.errstate(divide="ignore", invalid="ignore"):
                        for ki, pi in ((1, p1), (2, p2), (3, p3)):
                            ceiling = ctx.ceilings.get((5, ki))
                            if ceiling is None:
                                continue
                            q = pi ** 4 / p4 ** ki
                            m5 &= (q > 1.0 - 1e-9) & \
                                (q <= ceiling * (1.0 + 1e-9))
                with np.errstate(divide="ignore", invalid="ignore"):
                    d1 = w5 / den
                    err = np.abs(d1 - np.rint(d1))
                    tol = 16.0 / den + 1e-9
                    # A vanishing base determinant means the residual
                    # blocks would share a value across sides, which a
                    # nontrivial ideal solution never does, so den == 0
                    # cells are rejected.  The remaining masks are the
                    # integer range conditions on the two elementary
                    # symmetric ratios, slackened by the rounding
                    # tolerance so no exact candidate is lost.
                    hit = ((den > 0.0) & (err <= tol)
                           & (d1 > -tol)
                           & (d1 < 2.0 * b4 + 0.5 + tol)
                           & (d1 - p1 > -0.5 - tol)
                           & (d1 - p1 < 2.0 * x + 0.5 + tol))
                    if m5 is not None:
                        hit &= m5
                for i in np.flatnonzero(hit).tolist():
                    results.extend(_depth4_complete(
                        spec, cap, A, b5, b4, int(a4i[i]), int(a3i[i])))
    return results


def _depth4_complete(spec, cap, A, b5, b4, a4, a3) -> list[GpteSolution]:
    """Exact integer completion of a depth-4 prefix."""
    P = {k: A ** k + a4 ** k + a3 ** k - b5 ** k - b4 ** k
         for k in (1, 2, 3, 4)}
    T2 = P[2] + P[1] ** 2
    T3 = 2 * P[3] + 2 * P[1] * P[2] + T2 * P[1]
    T4 = 6 * P[4] + 6 * P[1] * P[3] + 3 * T2 * P[2] + T3 * P[1]
    W4 = 3 * T2 * T2 - 2 * T3 * P[1]
    if W4 == 0:
        # The base determinant factors as the product of pairwise
        # differences between the two residual blocks, so it vanishes
        # only when the completed sides would share a value -- which
        # collapses the side-product difference to zero and forces a
        # trivial solution.  Nothing to recover here.
        return []
    W5 = 2 * T3 * T2 - T4 * P[1]
    if W5 % (2 * W4):
        return []
    D1 = W5 // (2 * W4)
    if not 0 < D1 <= 2 * b4 or not 0 <= D1 - P[1] <= 2 * a3:
        return []
    W6 = 4 * T3 * T3 - 3 * T4 * T2
    if W6 % (12 * W4):
        return []
    D2 = W6 // (12 * W4)
    if D2 <= 0:
        return []
    try:
        zero_block, other_block = recover_remaining((D1, D2), P, (0, cap))
    except (NonSquareDiscriminant, NonIntegerRoot, OutOfRange):
        return []
    if zero_block[-1] > b4 or other_block[-1] > a3:
        return []
    lhs = Side((A, a4, a3) + tuple(other_block))
    rhs = Side((b5, b4, 0) + tuple(zero_block))
    if is_trivial(lhs, rhs):
        return []
    if not verify_equal(lhs, rhs, spec):
        return []
    return [GpteSolution(spec, lhs, rhs)]


# ---------------------------------------------------------------------------
# Generic engine (non-consecutive exponent sets)


def _generic_block(spec: ExponentSpec, max_value: int, mode: str,
                   a_lo: int, a_hi: int,
                   ctx: Optional[_FastCtx]) -> list[GpteSolution]:
    ks = spec.exponents
    m = spec.side_size
    k0 = ks[0]
    results: list[GpteSolution] = []

    def emit(a_vals, b_vals):
        if math.gcd(*(a_vals + b_vals)) != 1:
            return
        lhs, rhs = Side(tuple(a_vals)), Side(tuple(b_vals))
        if is_trivial(lhs, rhs):
            return
        if not verify_equal(lhs, rhs, spec):
            raise VerificationFailed(f"engine produced {lhs} | {rhs}")
        results.append(GpteSolution(spec, lhs, rhs))

    def descend_b(a_vals, sa, b_vals, sb, prev):
        rem = m - len(b_vals)
        d = {k: sa[k] - sb[k] for k in ks}
        if rem == 1:
            v = _exact_root(d[k0], k0) if d[k0] >= 0 else None
            if v is None or v > prev:
                return
            if all(d[k] == v ** k for k in ks):
                emit(a_vals, b_vals + [v])
            return
        lo, hi = 0, prev
        for k in ks:
            if d[k] < 0:
                return
            hi = min(hi, _iroot_floor(d[k], k))
            lo = max(lo, _iroot_ceil(_ceil_div(d[k], rem), k))
        if lo > hi:
            return
        if rem == 2:
            for x in range(hi, lo - 1, -1):
                r = d[k0] - x ** k0
                y = _exact_root(r, k0) if r >= 0 else None
                if y is None or y > x:
                    continue
                if all(d[k] == x ** k + y ** k for k in ks):
                    emit(a_vals, b_vals + [x, y])
            return
        for v in range(hi, lo - 1, -1):
            for k in ks:
                sb[k] += v ** k
            descend_b(a_vals, sa, b_vals + [v], sb, v)
            for k in ks:
                sb[k] -= v ** k

    def descend_a(a_vals, sa, prev):
        if len(a_vals) == m:
            b_cap = a_vals[0] - 1
            if ctx is not None:
                b_lo = ctx.b_top_min(a_vals[0])
                if b_lo > b_cap:
                    return
            descend_b(a_vals, sa, [], {k: 0 for k in ks}, b_cap)
            return
        for v in range(prev, -1, -1):
            for k in ks:
                sa[k] += v ** k
            descend_a(a_vals + [v], sa, v)
            for k in ks:
                sa[k] -= v ** k

    for a_max in range(max(a_lo, 1), a_hi + 1):
        descend_a([a_max], {k: a_max ** k for k in ks}, a_max)
    return results


# ---------------------------------------------------------------------------
# Public entry points


def _run_block(args) -> list[GpteSolution]:
    spec, max_value, mode, lo, hi, ctx = args
    if spec.is_consecutive_from_1:
        return _consecutive_block(spec, max_value, mode, lo, hi, ctx)
    return _generic_block(spec, max_value, mode, lo, hi, ctx)


def _outer_chunks(lo: int, hi: int, pieces: int) -> list[tuple[int, int]]:
    """Contiguous chunks of the outer range, weighted toward balance."""
    weights = [(a, a ** 4) for a in range(lo, hi + 1)]
    total = sum(w for _, w in weights)
    if total == 0 or pieces <= 1:
        return [(lo, hi)]
    target = total / pieces
    chunks = []
    start, acc = lo, 0
    for a, wgt in weights:
        acc += wgt
        if acc >= target and a < hi:
            chunks.append((start, a))
            start, acc = a + 1, 0
    chunks.append((start, hi))
    return chunks


def search(config: SearchConfig) -> Iterator[GpteSolution]:
    """Enumerate every surviving solution of the configured search.

    Emissions are exactly verified; pruning conjectures can therefore
    only remove solutions (Fast mode), never admit false ones.  Audit
    mode restricts pruning to provable windows and is complete within
    the configured range.
    """
    spec = config.spec
    if any(k < 1 for k in spec.exponents):
        raise ConfigError("search requires all exponents >= 1")
    if config.max_value < 1:
        raise ConfigError("max_value must be positive")
    mode = config.mode.capitalize() if isinstance(config.mode, str) else config.mode
    if mode not in (FAST, AUDIT):
        raise ConfigError(f"unknown mode {config.mode!r}")

    ctx = None
    if mode == FAST:
        table = config.bound_table or build_bound_table(spec)
        thr = config.threshold or threshold_params(spec)
        ctx = _make_fast_ctx(spec, config.max_value, table, thr, config.fmax)

    lo, hi = 1, config.max_value
    if config.resume is not None:
        lo = config.resume.current + 1
        hi = min(hi, config.resume.end)
    if lo > hi:
        return

    workers = max(1, config.worker_count)
    if workers == 1:
        for a in range(lo, hi + 1):
            for sol in _run_block((spec, config.max_value, mode, a, a, ctx)):
                yield sol
            if config.timing_log:
                stamp = datetime.now(timezone.utc).isoformat()
                with open(config.timing_log, "a") as fh:
                    fh.write(f"{a} {stamp}\n")
            if config.progress_path:
                save_progress(Progress(a, hi), config.progress_path)
    else:
        chunks = _outer_chunks(lo, hi, workers * 4)
        jobs = [(spec, config.max_value, mode, c_lo, c_hi, ctx)
                for c_lo, c_hi in chunks]
        with multiprocessing.Pool(workers) as pool:
            for (c_lo, c_hi), block in zip(chunks, pool.imap(_run_block, jobs)):
                yield from block
                if config.progress_path:
                    save_progress(Progress(c_hi, hi), config.progress_path)


class Census(tuple):
    """Counts (total, coprime_classes, symmetric, non_symmetric)."""

    __slots__ = ()

    def __new__(cls, total, coprime_classes, symmetric, non_symmetric):
        return super().__new__(cls, (total, coprime_classes,
                                     symmetric, non_symmetric))

    total = property(lambda self: self[0])
    coprime_classes = property(lambda self: self[1])
    symmetric = property(lambda self: self[2])
    non_symmetric = property(lambda self: self[3])


def census(solutions: Iterable[GpteSolution]) -> Census:
    """Group one spec's solutions into coprime classes and classify."""
    sols = list(solutions)
    classes: dict[tuple, GpteSolution] = {}
    for sol in sols:
        rep = normalize(sol)
        classes.setdefault((rep.lhs.values, rep.rhs.values), rep)
    symmetric = sum(1 for rep in classes.values()
                    if classify_symmetry(rep) == SYMMETRIC)
    return Census(len(sols), len(classes), symmetric,
                  len(classes) - symmetric)
