"""Search bounds from the normalized two-sided power-sum systems.

All solutions are scaled by their largest element into [0,1].  At the
extremal configurations the remaining elements collapse into equal
pairs, leaving an n-unknown square system ("the doubled system") whose
solution yields: the global minimum of the largest rhs element, the
conditional minimum of the next element as a lookup table, threshold
ratio ceilings, and conservative partial-sum intervals.  Everything the
integer search consumes is precomputed here at extended precision.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import mpmath as mp

from .core import ExponentSpec
from .errors import (EmptyInterval, NoConvergence, OutOfDomain, OutOfTable,
                     ParseError, UnsupportedSpec)

EPSILON_DEFAULT = mp.mpf("1e-50")


# ---------------------------------------------------------------------------
# The doubled system


def _needs_epsilon(spec: ExponentSpec) -> bool:
    return spec.exponents[0] <= 0


def _doubled_template(n: int):
    """(a_terms, b_terms) for the doubled configuration.

    Each term is (kind, payload, multiplicity) with kind one of
    'const' (payload is the constant), 'var' (payload is the unknown
    index into the ascending unknown vector u_0..u_{n-1}).
    Even n:  a = [u0 x2, u2 x2, ..., 1],  b = [eps, u1 x2, ..., u_{n-1} x2]
    Odd n:   a = [eps, u1 x2, ..., 1],    b = [u0 x2, u2 x2, ..., u_{n-1} x2]
    """
    a_terms, b_terms = [], []
    if n % 2 == 0:
        b_terms.append(("const", "eps", 1))
        for t in range(n):
            term = ("var", t, 2)
            (a_terms if t % 2 == 0 else b_terms).append(term)
        a_terms.append(("const", "one", 1))
    else:
        a_terms.append(("const", "eps", 1))
        for t in range(n):
            term = ("var", t, 2)
            (b_terms if t % 2 == 0 else a_terms).append(term)
        a_terms.append(("const", "one", 1))
    return a_terms, b_terms


def _eval_terms(terms, u, eps):
    out = []
    for kind, payload, mult in terms:
        if kind == "var":
            v = u[payload]
        elif payload == "eps":
            v = eps
        elif payload == "one":
            v = mp.mpf(1)
        else:
            v = mp.mpf(payload)
        out.append((kind, payload, mult, v))
    return out


def _residuals(ks, a_terms, b_terms, u, eps, with_scale=False):
    res, scales = [], []
    for k in ks:
        if k == 0:
            pa = mp.mpf(1)
            for _, _, m, v in _eval_terms(a_terms, u, eps):
                pa *= v ** m
            pb = mp.mpf(1)
            for _, _, m, v in _eval_terms(b_terms, u, eps):
                pb *= v ** m
            res.append(pa - pb)
            scales.append(max(abs(pa), abs(pb)))
        else:
            s = mp.mpf(0)
            scale = mp.mpf(1)
            for _, _, m, v in _eval_terms(a_terms, u, eps):
                t = m * v ** k
                s += t
                scale = max(scale, abs(t))
            for _, _, m, v in _eval_terms(b_terms, u, eps):
                t = m * v ** k
                s -= t
                scale = max(scale, abs(t))
            res.append(s)
            scales.append(scale)
    return (res, scales) if with_scale else res


def _jacobian(ks, a_terms, b_terms, u, eps):
    n = len(u)
    J = mp.zeros(len(ks), n)
    for r, k in enumerate(ks):
        if k == 0:
            pa = mp.mpf(1)
            for _, _, m, v in _eval_terms(a_terms, u, eps):
                pa *= v ** m
            pb = mp.mpf(1)
            for _, _, m, v in _eval_terms(b_terms, u, eps):
                pb *= v ** m
            for kind, payload, m, v in _eval_terms(a_terms, u, eps):
                if kind == "var":
                    J[r, payload] += m * pa / v
            for kind, payload, m, v in _eval_terms(b_terms, u, eps):
                if kind == "var":
                    J[r, payload] -= m * pb / v
        else:
            for kind, payload, m, v in _eval_terms(a_terms, u, eps):
                if kind == "var":
                    J[r, payload] += m * k * v ** (k - 1)
            for kind, payload, m, v in _eval_terms(b_terms, u, eps):
                if kind == "var":
                    J[r, payload] -= m * k * v ** (k - 1)
    return J


def _newton(ks, a_terms, b_terms, u0, eps, max_iter=200):
    """Damped Newton iteration; returns the solution vector or None.

    Works on the logarithms of the unknowns so that solutions clustered
    many orders of magnitude below one (the epsilon-scale cluster forced
    by negative exponents) remain reachable.  Convergence is judged per
    equation relative to the magnitude of its largest term.
    """
    n = len(u0)
    w = [mp.log(mp.mpf(x)) for x in u0]
    tol = mp.mpf(10) ** (-(mp.mp.dps - 8))

    def rel_norm(vec):
        F, S = _residuals(ks, a_terms, b_terms, vec, eps, with_scale=True)
        return F, max(abs(f) / s for f, s in zip(F, S))

    for _ in range(max_iter):
        u = [mp.e ** x for x in w]
        F, norm = rel_norm(u)
        if norm < tol:
            return u
        J = _jacobian(ks, a_terms, b_terms, u, eps)
        for r in range(len(ks)):
            for c in range(n):
                J[r, c] *= u[c]
        try:
            step = mp.lu_solve(J, mp.matrix(F))
        except ZeroDivisionError:
            return None
        lam = mp.mpf(1)
        improved = False
        for _ in range(80):
            trial = [w[i] - lam * step[i] for i in range(n)]
            if all(t < 0 for t in trial):
                _, tnorm = rel_norm([mp.e ** t for t in trial])
                if tnorm < norm:
                    w = trial
                    improved = True
                    break
            lam /= 2
        if not improved:
            return None
    return None


def _solve_doubled(spec: ExponentSpec, precision: int):
    """Solve the doubled system; returns the ascending unknown vector."""
    n = spec.degree
    if n < 1:
        raise UnsupportedSpec("degree must be >= 1")
    use_eps = _needs_epsilon(spec)
    dps = _working_digits(spec, precision)
    with mp.workdps(dps):
        eps = EPSILON_DEFAULT if use_eps else mp.mpf(0)
        a_terms, b_terms = _doubled_template(n)
        ks = list(spec.exponents)
        base = [mp.sin(t * mp.pi / (2 * n + 2)) ** 2 for t in range(1, n + 1)]
        rng = random.Random(12345)
        starts = [base]
        for _ in range(15):
            starts.append([x * (1 + mp.mpf(rng.uniform(-0.05, 0.05)))
                           for x in base])
        last_err = None
        for u0 in starts:
            if any(k < 0 for k in ks):
                u = _homotopy_solve(ks, a_terms, b_terms, u0, eps)
            else:
                u = _newton(ks, a_terms, b_terms, u0, eps)
            if u is None:
                continue
            if all(u[i] < u[i + 1] for i in range(n - 1)) and u[-1] < 1:
                return [mp.mpf(x) for x in u]
            last_err = "converged to a misordered configuration"
        raise NoConvergence(last_err or "Newton iteration failed to converge")


def _working_digits(spec: ExponentSpec, precision: int) -> int:
    dps = precision + 40
    if _needs_epsilon(spec):
        dps += 40
    k_min = spec.exponents[0]
    if k_min < 0:
        # the smallest element sits at the epsilon scale, so terms reach
        # epsilon**k_min; keep enough digits to resolve order-one residuals
        dps += 50 * (-k_min)
    return dps


def _homotopy_solve(ks, a_terms, b_terms, u0, eps):
    """Deform an all-positive exponent system into the requested one.

    Negative exponents pin the smallest unknowns to the epsilon scale,
    far outside the Newton basin of any order-one initial guess.  The
    system with exponents 1..n is solved first, then the exponent vector
    is moved linearly toward the target with adaptive step halving.
    """
    n = len(u0)
    easy = [mp.mpf(j) for j in range(1, len(ks) + 1)]
    target = [mp.mpf(k) for k in ks]

    def at(t):
        out = []
        for s, k in zip(easy, target):
            v = (1 - t) * s + t * k
            if v == 0 and t != 1:
                v = mp.mpf("1e-9")  # dodge the degenerate constant row
            out.append(int(v) if t == 1 else v)
        return out

    u = _newton(at(mp.mpf(0)), a_terms, b_terms, u0, eps)
    if u is None:
        return None
    t = mp.mpf(0)
    dt = mp.mpf(1) / 8
    while t < 1:
        t_next = min(t + dt, mp.mpf(1))
        u_next = _newton(at(t_next), a_terms, b_terms, u, eps)
        if u_next is None:
            dt /= 2
            if dt < mp.mpf(1) / 2 ** 16:
                return None
            continue
        u, t = u_next, t_next
        dt = min(dt * 2, mp.mpf(1) / 8)
    return u


def solve_beta_top_min(spec: ExponentSpec, precision: int = 80) -> mp.mpf:
    """Minimum of the largest rhs element in the normalized system."""
    u = _solve_doubled(spec, precision)
    with mp.workdps(precision):
        return +u[-1]


def solve_beta_next_min(spec: ExponentSpec, beta_top, precision: int = 80,
                        _warm: Sequence | None = None) -> mp.mpf:
    """Minimum of the second-largest rhs element given the largest."""
    n = spec.degree
    bmin = solve_beta_top_min(spec, precision)
    with mp.workdps(precision + 40):
        bt = mp.mpf(beta_top)
        if bt < bmin - mp.mpf(10) ** (-precision // 2):
            raise OutOfDomain(f"beta_top {beta_top} below the minimum {bmin}")
        u = _solve_doubled(spec, precision)  # doubled configuration
        if _warm is not None:
            u = [mp.mpf(x) for x in _warm]
            sol = _solve_conditional(spec, bt, u, precision)
            if sol is not None:
                return sol[0]
        # continuation from the doubled point up to the requested value
        steps = 24
        current = u[-1]
        for i in range(1, steps + 1):
            target = current + (bt - current) * mp.mpf(i) / steps
            sol = _solve_conditional(spec, target, u, precision)
            if sol is None:
                raise NoConvergence(f"continuation stalled at {target}")
            y, u = sol
        with mp.workdps(precision):
            return +y


def _solve_conditional(spec: ExponentSpec, beta_top, u_start, precision):
    """One conditional solve; returns (y_next, unknown vector) or None."""
    n = spec.degree
    use_eps = _needs_epsilon(spec)
    eps = EPSILON_DEFAULT if use_eps else mp.mpf(0)
    a_terms, b_terms = _doubled_template(n)
    new_b = []
    for kind, payload, mult in b_terms:
        if kind == "var" and payload == n - 1:
            new_b.append(("var", n - 1, 1))
        else:
            new_b.append((kind, payload, mult))
    ks = list(spec.exponents)
    bt = mp.mpf(beta_top)

    def F(u):
        out = []
        for k in ks:
            if k == 0:
                pa = mp.mpf(1)
                for _, p, m, v in _eval_terms(a_terms, u, eps):
                    pa *= v ** m
                pb = bt
                for _, p, m, v in _eval_terms(new_b, u, eps):
                    pb *= v ** m
                out.append(pa - pb)
            else:
                s = -(bt ** k)
                for _, p, m, v in _eval_terms(a_terms, u, eps):
                    s += m * v ** k
                for _, p, m, v in _eval_terms(new_b, u, eps):
                    s -= m * v ** k
                out.append(s)
        return out

    def Jac(u):
        J = _jacobian(ks, a_terms, new_b, u, eps)
        for r, k in enumerate(ks):
            if k == 0:
                pb = bt
                for _, p, m, v in _eval_terms(new_b, u, eps):
                    pb *= v ** m
                # correct the product row: _jacobian used pb without bt
                pb_plain = pb / bt if bt != 0 else pb
                for kind, payload, m, v in _eval_terms(new_b, u, eps):
                    if kind == "var":
                        J[r, payload] -= m * (pb - pb_plain) / v
        return J

    u = [mp.mpf(x) for x in u_start]
    tol = mp.mpf(10) ** (-(mp.mp.dps - 5))
    for _ in range(200):
        Fv = F(u)
        norm = max(abs(f) for f in Fv)
        if norm < tol:
            ordered = all(u[i] < u[i + 1] for i in range(len(u) - 1)) \
                and u[-1] <= bt + tol
            # the admissible root satisfies beta_top^k + y^k > 1 for all
            # positive exponents; anything else is a spurious branch
            admissible = all(bt ** k + u[-1] ** k > 1
                             for k in ks if k > 0)
            if ordered and admissible:
                return u[-1], u
            return None
        try:
            step = mp.lu_solve(Jac(u), mp.matrix(Fv))
        except ZeroDivisionError:
            return None
        lam = mp.mpf(1)
        moved = False
        for _ in range(60):
            trial = [u[i] - lam * step[i] for i in range(len(u))]
            if all(0 < t < 1 for t in trial):
                if max(abs(f) for f in F(trial)) < norm:
                    u = trial
                    moved = True
                    break
            lam /= 2
        if not moved:
            return None
    return None


def solve_alpha_interval(spec: ExponentSpec, beta_top, beta_next,
                         precision: int = 40) -> tuple[mp.mpf, mp.mpf]:
    """Extremal values of the second-largest lhs element.

    Given the two largest rhs elements, the second-largest lhs element
    ranges over [alpha_min, alpha_max]; each endpoint comes from its own
    partially-doubled configuration.  Library-only: the search engine
    intentionally uses the cheap conservative intervals instead.
    """
    n = spec.degree
    if n < 2:
        raise UnsupportedSpec("need degree >= 2")
    lo = _solve_alpha(spec, beta_top, beta_next, precision, minimum=True)
    hi = _solve_alpha(spec, beta_top, beta_next, precision, minimum=False)
    if lo > hi:
        raise NoConvergence("alpha endpoints came back crossed")
    return lo, hi


def _alpha_template(n: int, minimum: bool, use_eps: bool):
    """Terms for the extremal-alpha system; unknown n-1 is alpha_n.

    Minimum: the lhs doubles fully into pairs below the unit element and
    the rhs keeps one free singleton at the bottom.  Maximum: the lhs
    keeps two free singles at the top (alpha_n above alpha_{n-1}) and
    the rhs bottom drops to 0/epsilon.  Unknown count is n either way;
    the two fixed rhs values enter as constants elsewhere.
    """
    a_terms, b_terms = [], []
    if minimum:
        if n % 2 == 0:
            b_terms.append(("var", 0, 1))
            free = list(range(1, n - 1))
        else:
            a_terms.append(("var", 0, 1))
            free = list(range(1, n - 1))
        for pos, t in enumerate(free):
            if pos % 2 == (0 if n % 2 == 0 else 1):
                a_terms.append(("var", t, 2))
            else:
                b_terms.append(("var", t, 2))
        a_terms.append(("var", n - 1, 2))
    else:
        (b_terms if n % 2 == 0 else a_terms).append(("const", "eps", 1))
        for pos, t in enumerate(range(0, n - 2)):
            if pos % 2 == (0 if n % 2 == 0 else 1):
                a_terms.append(("var", t, 2))
            else:
                b_terms.append(("var", t, 2))
        a_terms.append(("var", n - 2, 1))
        a_terms.append(("var", n - 1, 1))
    a_terms.append(("const", "one", 1))
    return a_terms, b_terms


def _solve_alpha(spec, beta_top, beta_next, precision, minimum):
    n = spec.degree
    use_eps = _needs_epsilon(spec)
    dps = _working_digits(spec, precision)
    with mp.workdps(dps):
        eps = EPSILON_DEFAULT if use_eps else mp.mpf(0)
        bt, bn = mp.mpf(beta_top), mp.mpf(beta_next)
        a_terms, b_terms = _alpha_template(n, minimum, use_eps)
        b_terms = b_terms + [("const", bn, 1), ("const", bt, 1)]
        ks = list(spec.exponents)
        kn = max(ks)
        rng = random.Random(777)
        base = [mp.sin(t * mp.pi / (2 * n + 2)) ** 2 for t in range(1, n + 1)]
        starts = [base]
        for _ in range(15):
            starts.append([x * (1 + mp.mpf(rng.uniform(-0.1, 0.1)))
                           for x in base])
        lo_k = (bn ** kn + bt ** kn - 1) / 2
        for u0 in starts:
            u = _newton(ks, a_terms, b_terms, u0, eps)
            if u is None:
                continue
            alpha = u[n - 1]
            if not all(u[i] <= u[i + 1] + mp.mpf("1e-20")
                       for i in range(n - 1)):
                continue
            # root selection: the conservative window on alpha_n
            if lo_k < alpha ** kn < 2 * lo_k:
                with mp.workdps(precision):
                    return +alpha
        raise NoConvergence("no admissible extremal-alpha configuration")


# ---------------------------------------------------------------------------
# Lookup tables


@dataclass
class BoundTable:
    """Grid of conditional minima: scaled beta -> floor(bound * 1e6)."""
    spec: ExponentSpec
    resolution: Fraction
    entries: dict[int, int] = field(default_factory=dict)

    def lookup(self, scaled_beta: int) -> int:
        key_step = int(self.resolution * 10 ** 4)
        key = scaled_beta - scaled_beta % key_step
        if key not in self.entries:
            if scaled_beta >= max(self.entries, default=-1):
                raise OutOfTable(f"{scaled_beta} beyond table domain")
            key = min(self.entries)
        return self.entries[key]


def build_bound_table(spec: ExponentSpec, resolution=Fraction(1, 10 ** 4),
                      precision: int = 40) -> BoundTable:
    """Tabulate conditional minima of the second-largest rhs element."""
    resolution = Fraction(resolution)
    if resolution not in (Fraction(1, 1000), Fraction(1, 10000)):
        raise ValueError("resolution must be 1e-3 or 1e-4")
    step = int(resolution * 10 ** 4)
    bmin = solve_beta_top_min(spec, precision)
    with mp.workdps(precision + 40):
        start = int(mp.ceil(bmin * 10 ** 4))
        start += (-start) % step
        table = BoundTable(spec, resolution)
        warm = None
        u = _solve_doubled(spec, precision)
        for scaled in range(start, 10 ** 4, step):
            bt = mp.mpf(scaled) / 10 ** 4
            sol = _solve_conditional(spec, bt, warm if warm else u, precision)
            if sol is None:
                sol = _solve_conditional(spec, bt, u, precision)
            if sol is None:
                raise NoConvergence(f"table solve failed at {scaled}")
            y, warm = sol
            table.entries[scaled] = int(mp.floor(y * 10 ** 6))
        return table


def save_bound_table(table: BoundTable, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"# gpte-bound-table k={table.spec} "
                 f"res={float(table.resolution):g}\n")
        for scaled in sorted(table.entries):
            fh.write(f"{scaled} {table.entries[scaled]}\n")


def load_bound_table(path, spec: ExponentSpec | None = None) -> BoundTable:
    entries = {}
    resolution = Fraction(1, 10 ** 4)
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"bad bound-table line: {line!r}")
            entries[int(parts[0])] = int(parts[1])
    keys = sorted(entries)
    if len(keys) >= 2:
        resolution = Fraction(keys[1] - keys[0], 10 ** 4)
    table = BoundTable(spec, resolution)
    table.entries = entries
    return table


# ---------------------------------------------------------------------------
# Threshold parameters


@dataclass
class ThresholdParams:
    """Boundary values of the doubled system plus ratio ceilings.

    alphas/betas are the pair values {alpha_n, alpha_{n-2}, ...} and
    {beta_{n+1}, beta_{n-1}, ...} (descending).  ceilings maps
    (level, k_i) to the admissible upper bound of the partial-sum ratio
    q = T^{k_n} / (T at k_n)^{k_i}; levels count assigned elements in
    the interlaced order, starting at 3.
    """
    spec: ExponentSpec
    alphas: list
    betas: list
    ceilings: dict[tuple[int, int], mp.mpf]

    def lower(self, level: int) -> int:
        return 1 if level % 2 == 1 else 0


def _threshold_partial(level: int, values_desc: Sequence, k):
    """T_level(k): alternating partial sum over the top `level` elements.

    values_desc lists the normalized elements descending with their side
    ('a' or 'b'); orientation is chosen so the seesaw value is positive.
    """
    s = mp.mpf(0)
    for side, v in values_desc[:level]:
        s += (v ** k) if side == "b" else -(v ** k)
    # orientation alternates pair by pair: levels 3-4 lean b, 5-6 lean a,
    # 7-8 lean b again, and so on
    if ((level - 3) // 2) % 2 == 1:
        s = -s
    return s


def _desc_config(spec: ExponentSpec, u) -> list:
    """Normalized doubled configuration, descending, with side labels."""
    n = spec.degree
    out = [("a", mp.mpf(1))]
    side = "b"
    for t in range(n - 1, -1, -1):
        out.append((side, u[t]))
        out.append((side, u[t]))
        side = "a" if side == "b" else "b"
    out.append(("b" if n % 2 == 0 else "a",
                EPSILON_DEFAULT if _needs_epsilon(spec) else mp.mpf(0)))
    return out


def threshold_params(spec: ExponentSpec, precision: int = 40) -> ThresholdParams:
    """Solve the doubled system and derive the ratio ceilings."""
    kn = spec.exponents[-1]
    if kn <= 0:
        raise UnsupportedSpec("largest exponent must be positive")
    n = spec.degree
    u = _solve_doubled(spec, precision)
    with mp.workdps(precision + 20):
        config = _desc_config(spec, u)
        betas = [u[t] for t in range(n - 1, -1, -2)]
        alphas = [u[t] for t in range(n - 2, -1, -2)]
        ceilings: dict[tuple[int, int], mp.mpf] = {}
        pos_ks = [k for k in spec.exponents[:-1] if k > 0]
        for level in range(3, 2 * n + 1):
            t_kn = _threshold_partial(level, config, kn)
            if t_kn <= 0:
                continue
            for ki in pos_ks:
                t_ki = _threshold_partial(level, config, ki)
                ceilings[(level, ki)] = (t_ki ** kn) / (t_kn ** ki)
        return ThresholdParams(spec, [+a for a in alphas],
                               [+b for b in betas], ceilings)


def threshold_check(params: ThresholdParams,
                    partials: Mapping[int, Mapping[int, int]]) -> bool:
    """True iff every supplied partial-sum ratio lies in its window.

    partials maps level -> {k: integer partial sum T_level(k)}, each
    mapping required to include the top exponent k_n.
    """
    kn = params.spec.exponents[-1]
    for level, sums in partials.items():
        t_kn = sums[kn]
        lower = params.lower(level)
        if t_kn <= 0:
            return False
        for ki, t_ki in sums.items():
            if ki == kn:
                continue
            if (level, ki) not in params.ceilings:
                continue
            if t_ki < 0 or (lower == 1 and t_ki <= 0):
                return False
            q = mp.mpf(t_ki) ** kn / mp.mpf(t_kn) ** ki
            if not (lower < q <= params.ceilings[(level, ki)] *
                    (1 + mp.mpf("1e-12"))):
                return False
    return True


# ---------------------------------------------------------------------------
# Conservative intervals and interlacing


def interlace_order(spec: ExponentSpec) -> list[tuple[str, int]]:
    """Descending assignment order of roles as (side, index) pairs.

    Index n+1 is the largest element of each side.  Even degree:
    a_{n+1} > b_{n+1} >= b_n > a_n >= a_{n-1} > ... > a_1 > b_1;
    odd degree ends ... > b_2 >= b_1 > a_1.
    """
    n = spec.degree
    order = [("a", n + 1)]
    hi = n + 1
    side = "b"
    while hi >= 2:
        order.append((side, hi))
        order.append((side, hi - 1))
        side = "a" if side == "b" else "b"
        hi -= 1
    order.append((side, 1))
    return order


def conservative_interval(spec: ExponentSpec, k: int,
                          fixed: Sequence[int]) -> tuple[Fraction, Fraction]:
    """Exact bounds on the k-th power of the next element to assign.

    fixed holds the already-assigned values in the interlaced descending
    order (starting with the largest element of the a side).  Returns
    (low, high) for v^k: low is always exclusive; high is exclusive when
    the next element opens a pair and inclusive when it closes one.
    Raises EmptyInterval when the window is empty (prune).
    """
    if k <= 0 or k not in spec.exponents:
        raise ValueError("k must be a positive exponent of the spec")
    order = interlace_order(spec)
    pos = len(fixed)
    if pos < 1 or pos >= len(order):
        raise ValueError("fixed must cover a_{n+1} and leave work to do")
    own_side = order[pos][0]
    own = sum(Fraction(fixed[i]) ** k
              for i in range(pos) if order[i][0] == own_side)
    opp = sum(Fraction(fixed[i]) ** k
              for i in range(pos) if order[i][0] != own_side)
    deficit = opp - own
    opens_pair = order[pos - 1][0] != own_side
    if opens_pair:
        low, high = deficit / 2, deficit
    else:
        low, high = deficit, Fraction(fixed[-1]) ** k
    if low >= high or high <= 0:
        raise EmptyInterval(f"empty window for {order[pos]}")
    return low, high
