"""Command-line front end.

Subcommands: verify, search, bounds, constc, chains, primes, gen,
catalog-check.  Exit codes: 0 success, 1 verification failure, 2 parse
error, 3 solver failure.  All configuration is explicit flags; the
environment is never consulted, so identical invocations produce
identical output.
"""

from __future__ import annotations

import os
import sys
from importlib import resources

import click
import mpmath as mp
import sympy

from . import bounds as bounds_mod
from . import catalog as catalog_mod
from . import prunec
from . import search as search_mod
from .core import ExponentSpec, make_solution, verify_equal, Side
from .errors import (
    ConfigError,
    CorruptProgressFile,
    DegenerateParameters,
    GpteError,
    IoError,
    NonSquareSeed,
    NoConvergence,
    NotApplicable,
    OutOfDomain,
    OutOfPositivityWindow,
    ParseError,
    TrivialSolution,
    UnsupportedFamily,
    VerificationFailed,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_SOLVER = 3


def _parse_spec(text: str) -> ExponentSpec:
    try:
        return ExponentSpec(tuple(int(t) for t in text.split(",")))
    except (ValueError, GpteError) as exc:
        raise SystemExit(_fail(EXIT_PARSE, f"bad exponent list {text!r}: {exc}"))


def _parse_values(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise SystemExit(_fail(EXIT_PARSE, f"bad value list {text!r}: {exc}"))


def _fail(code: int, message: str) -> int:
    click.echo(message, err=True)
    return code


def truncate_decimal(x, digits: int = 20) -> str:
    """Decimal string of x, round-toward-zero at `digits` places.

    Truncation (not rounding) keeps every printed digit a prefix of the
    true value.
    """
    with mp.workdps(digits + 25):
        v = mp.mpf(x)
        sign = "-" if v < 0 else ""
        v = abs(v)
        scaled = int(mp.floor(v * mp.mpf(10) ** digits))
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


@click.group()
def main():
    """Workbench for equal-sums-of-like-powers systems."""


# ---------------------------------------------------------------------------


@main.command()
@click.option("--in", "in_path", type=click.Path(), default=None,
              help="Record file to verify (one record per line).")
@click.option("--k", "k_text", default=None, help="Exponent list, e.g. 1,2,3.")
@click.option("--lhs", default=None, help="Left side values, comma separated.")
@click.option("--rhs", default=None, help="Right side values, comma separated.")
def verify(in_path, k_text, lhs, rhs):
    """Exactly re-verify records from a file or a single inline system."""
    if in_path is not None and (k_text or lhs or rhs):
        raise SystemExit(_fail(EXIT_PARSE, "--in conflicts with --k/--lhs/--rhs"))
    if in_path is not None:
        try:
            report = catalog_mod.verify_catalog(in_path)
        except IoError as exc:
            raise SystemExit(_fail(EXIT_PARSE, str(exc)))
        for no, message in report.failures:
            click.echo(f"FAIL {message}")
        click.echo(f"{report.passed}/{report.total} passed")
        raise SystemExit(EXIT_OK if report.passed == report.total else EXIT_VERIFY)
    if not (k_text and lhs and rhs):
        raise SystemExit(_fail(EXIT_PARSE, "need --in or all of --k/--lhs/--rhs"))
    spec = _parse_spec(k_text)
    a, b = _parse_values(lhs), _parse_values(rhs)
    if verify_equal(Side(tuple(a)), Side(tuple(b)), spec):
        click.echo("verified")
        raise SystemExit(EXIT_OK)
    click.echo("verification failed")
    raise SystemExit(EXIT_VERIFY)


# ---------------------------------------------------------------------------


@main.command()
@click.option("--k", "k_text", required=True, help="Exponent list, e.g. 1,2,3,4.")
@click.option("--max", "max_value", required=True, type=int,
              help="Inclusive upper limit on the largest element.")
@click.option("--mode", type=click.Choice(["fast", "audit"]), default="audit",
              show_default=True)
@click.option("--fmax", default="auto", show_default=True,
              help="Divisor-filter limit: an integer, 'auto', or 'off'.")
@click.option("--table", "table_path", type=click.Path(), default=None,
              help="Precomputed bound-table file (fast mode).")
@click.option("--resume", "resume_path", type=click.Path(), default=None,
              help="Progress file; created/updated as the run advances.")
@click.option("--threads", type=int, default=None,
              help="Worker count [default: available parallelism].")
@click.option("--out", "out_path", type=click.Path(), required=True,
              help="Output file for the sorted solution records.")
def search(k_text, max_value, mode, fmax, table_path, resume_path, threads,
           out_path):
    """Enumerate solutions up to --max and write them sorted to --out."""
    spec = _parse_spec(k_text)
    if fmax in ("auto", "off"):
        fmax_value = None
    else:
        try:
            fmax_value = int(fmax)
        except ValueError:
            raise SystemExit(_fail(EXIT_PARSE, f"bad --fmax {fmax!r}"))
    table = None
    if table_path is not None:
        try:
            table = bounds_mod.load_bound_table(table_path, spec)
        except (IoError, GpteError, OSError) as exc:
            raise SystemExit(_fail(EXIT_PARSE, f"bad bound table: {exc}"))
    resume = None
    if resume_path is not None and os.path.exists(resume_path):
        try:
            resume = search_mod.load_progress(resume_path)
        except CorruptProgressFile as exc:
            raise SystemExit(_fail(EXIT_PARSE, str(exc)))
    workers = threads if threads is not None else (os.cpu_count() or 1)
    config = search_mod.SearchConfig(
        spec=spec,
        max_value=max_value,
        mode=mode,
        fmax=fmax_value,
        bound_table=table,
        resume=resume,
        worker_count=max(1, workers),
        progress_path=resume_path,
    )
    try:
        solutions = sorted(
            search_mod.search(config),
            key=lambda s: (s.lhs.values, s.rhs.values),
        )
    except (ConfigError, GpteError) as exc:
        raise SystemExit(_fail(EXIT_SOLVER, str(exc)))
    with open(out_path, "w") as fh:
        for sol in solutions:
            fh.write(str(sol) + "\n")
    cen = search_mod.census(solutions)
    click.echo(f"census: total={cen.total} coprime={cen.coprime_classes} "
               f"symmetric={cen.symmetric} non-symmetric={cen.non_symmetric}")
    raise SystemExit(EXIT_OK)


# ---------------------------------------------------------------------------


@main.command()
@click.option("--k", "k_text", required=True, help="Exponent list.")
@click.option("--beta", type=str, default=None,
              help="Largest-element ratio; prints the conditional bound.")
@click.option("--table", "want_table", is_flag=True,
              help="Write the scaled lookup table instead of one constant.")
@click.option("--res", default="1e-4", show_default=True,
              help="Table resolution (with --table).")
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Table output path (with --table).")
@click.option("--precision", type=int, default=20, show_default=True,
              help="Printed decimal digits (truncated, never rounded).")
def bounds(k_text, beta, want_table, res, out_path, precision):
    """Print extremal-ratio bounds, or write the scaled bound table."""
    spec = _parse_spec(k_text)
    try:
        if want_table:
            if out_path is None:
                raise SystemExit(_fail(EXIT_PARSE, "--table needs --out"))
            from fractions import Fraction
            resolution = Fraction(res)
            table = bounds_mod.build_bound_table(spec, resolution=resolution)
            bounds_mod.save_bound_table(table, out_path)
            click.echo(f"wrote {len(table.entries)} rows to {out_path}")
        elif beta is not None:
            top = bounds_mod.solve_beta_top_min(spec, precision=precision + 20)
            value = bounds_mod.solve_beta_next_min(
                spec, mp.mpf(beta), precision=precision + 20)
            click.echo(truncate_decimal(value, precision))
        else:
            value = bounds_mod.solve_beta_top_min(spec, precision=precision + 20)
            click.echo(truncate_decimal(value, precision))
    except (NoConvergence, OutOfDomain, GpteError) as exc:
        raise SystemExit(_fail(EXIT_SOLVER, f"solver failure: {exc}"))
    raise SystemExit(EXIT_OK)


# ---------------------------------------------------------------------------


def _load_records(in_path):
    try:
        return catalog_mod.load_catalog(in_path)
    except ParseError as exc:
        raise SystemExit(_fail(EXIT_PARSE, str(exc)))
    except VerificationFailed as exc:
        raise SystemExit(_fail(EXIT_VERIFY, str(exc)))
    except IoError as exc:
        raise SystemExit(_fail(EXIT_PARSE, str(exc)))


def _format_factorization(n: int) -> str:
    return " * ".join(
        str(p) if e == 1 else f"{p}^{e}"
        for p, e in sorted(sympy.factorint(n).items())
    )


@main.command()
@click.option("--in", "in_path", type=click.Path(), required=True,
              help="Record file.")
def constc(in_path):
    """Report the family constant C, factored, for each record."""
    records = _load_records(in_path)
    status = EXIT_OK
    for rec in records:
        sol = rec.solution
        try:
            c = prunec.constant_c(sol)
        except UnsupportedFamily:
            click.echo(f"{sol} | C: n/a (no family)")
            continue
        except TrivialSolution:
            click.echo(f"{sol} | C = 0")
            status = EXIT_VERIFY
            continue
        click.echo(f"{sol} | C = {c} = {_format_factorization(c)}")
    raise SystemExit(status)


@main.command()
@click.option("--in", "in_path", type=click.Path(), required=True,
              help="Record file.")
@click.option("--min-length", type=int, default=3, show_default=True,
              help="Smallest chain length to report.")
def chains(in_path, min_length):
    """Group record sides sharing exact power sums into chains."""
    records = _load_records(in_path)
    by_spec: dict[ExponentSpec, list] = {}
    for rec in records:
        by_spec.setdefault(rec.solution.spec, []).append(rec)
    found = 0
    for spec in sorted(by_spec, key=lambda s: s.exponents):
        for chain in catalog_mod.find_chains(by_spec[spec]):
            if chain.length < min_length:
                continue
            found += 1
            sides = " = ".join(str(s) for s in chain.sides)
            click.echo(f"k={spec} length {chain.length}: {sides}")
    click.echo(f"{found} chains of length >= {min_length}")
    raise SystemExit(EXIT_OK)


@main.command()
@click.option("--in", "in_path", type=click.Path(), required=True,
              help="Record file.")
def primes(in_path):
    """Flag records whose elements are all (probable) primes."""
    records = _load_records(in_path)
    for rec in records:
        sol = rec.solution
        try:
            if catalog_mod.is_prime_solution(sol):
                kinds = set(catalog_mod.prime_report(sol).values())
                label = ("all-prime" if kinds == {catalog_mod.PRIME}
                         else "all-prime (probable)")
            else:
                label = "not all prime"
        except NotApplicable:
            label = "n/a"
        click.echo(f"{sol} | {label}")
    raise SystemExit(EXIT_OK)


# ---------------------------------------------------------------------------


_FAMILIES = {
    "choudhry4": (catalog_mod.gen_choudhry, 4, "m n p q"),
    "choudhry6": (catalog_mod.gen_choudhry, 6, "m n p q"),
    "prime-k23": (catalog_mod.gen_prime_k23, None, "m n"),
    "k15": (catalog_mod.gen_k15, None, "r s t"),
    "pell": (catalog_mod.gen_pell_k12345, None, "u0 iterations"),
    "pell-alt": (catalog_mod.gen_pell_k12345_alt, None, "u0 iterations"),
}


@main.command()
@click.argument("family", type=click.Choice(sorted(_FAMILIES)))
@click.argument("params", nargs=-1, type=int)
def gen(family, params):
    """Generate a solution from one of the parametric families."""
    fn, degree, arity = _FAMILIES[family]
    expected = len(arity.split())
    if len(params) != expected:
        raise SystemExit(_fail(
            EXIT_PARSE, f"{family} takes {expected} parameters: {arity}"))
    try:
        if family.startswith("choudhry"):
            result = fn(*params, degree=degree)
        else:
            result = fn(*params)
    except (DegenerateParameters, NonSquareSeed,
            OutOfPositivityWindow) as exc:
        raise SystemExit(_fail(EXIT_SOLVER, f"{type(exc).__name__}: {exc}"))
    if family == "prime-k23":
        sol, report = result
        kinds = set(report.values())
        label = ("+all-prime" if kinds <= {catalog_mod.PRIME,
                                           catalog_mod.PROBABLE_PRIME}
                 else "not all prime")
        click.echo(f"{sol}  # {label}")
    else:
        click.echo(str(result))
    raise SystemExit(EXIT_OK)


@main.command("catalog-check")
@click.option("--in", "in_path", type=click.Path(), default=None,
              help="Record file [default: the packaged corpus].")
def catalog_check(in_path):
    """Re-verify a record file (the shipped corpus by default)."""
    if in_path is None:
        ref = resources.files("gpte").joinpath("data/corpus.txt")
        with resources.as_file(ref) as path:
            report = catalog_mod.verify_catalog(path)
    else:
        try:
            report = catalog_mod.verify_catalog(in_path)
        except IoError as exc:
            raise SystemExit(_fail(EXIT_PARSE, str(exc)))
    for no, message in report.failures:
        click.echo(f"FAIL {message}")
    click.echo(f"{report.passed}/{report.total} passed")
    raise SystemExit(EXIT_OK if report.passed == report.total else EXIT_VERIFY)


if __name__ == "__main__":
    main()
