"""Command line entry point: ``trilift <subcommand>``.

Exit status is 0 when every enabled audit passes, 1 on an audit failure and
2 on usage errors (bad flags, malformed input, size caps).
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path

import click

from . import reports
from .arrangement import DEFAULT_MAX_POINTS, check_size, diagnostics_csv
from .census import THREADS_ENV, HypothesisViolation
from .exact import PointFormatError, PointSet, format_points, parse_points
from .generators import grid, half_line_config, mirror, random_rational
from .keys import KeyKind
from .oracle import DEFAULT_CAP

KINDS = [k.value for k in KeyKind]


class AuditFailure(click.ClickException):
    exit_code = 1


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _load(input_path, grid_m, random_n, seed) -> PointSet:
    chosen = sum(x is not None for x in (input_path, grid_m, random_n))
    if chosen != 1:
        raise click.UsageError("give exactly one of --input, --grid, --random")
    try:
        if input_path is not None:
            text = sys.stdin.read() if input_path == "-" else Path(input_path).read_text(encoding="utf-8")
            return parse_points(text)
        if grid_m is not None:
            return grid(grid_m)
        return random_rational(random_n, seed)
    except (PointFormatError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc


def input_options(f):
    f = click.option("--seed", type=int, default=0, show_default=True, help="Seed for --random.")(f)
    f = click.option("--random", "random_n", type=int, help="Use N seeded random dyadic points.")(f)
    f = click.option("--grid", "grid_m", type=int, help="Use the m x m integer grid.")(f)
    f = click.option("--input", "input_path", type=str, help="Point-set file ('-' for stdin).")(f)
    return f


threads_option = click.option(
    "--threads", type=click.IntRange(min=1), envvar=THREADS_ENV, default=1, show_default=True, help="Worker processes."
)
out_option = click.option("--out", type=click.Path(dir_okay=False, writable=True), help="Write to file instead of stdout.")


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def main(verbose: bool):
    """Triangle congruence and similarity classes of planar point sets."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(levelname)s %(message)s")


@main.command()
@click.option("--family", type=click.Choice(["grid", "random", "half-line", "mirror"]), required=True)
@click.option("--m", type=int, default=4, show_default=True, help="Grid side.")
@click.option("--n", type=int, default=8, show_default=True, help="Point count (random, half-line).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), help="Set to mirror.")
@out_option
def generate(family, m, n, seed, input_path, out):
    """Emit a point set in the text format."""
    try:
        if family == "grid":
            P, note = grid(m), f"grid m={m}"
        elif family == "random":
            P, note = random_rational(n, seed), f"random n={n} seed={seed}"
        elif family == "half-line":
            P, note = half_line_config(n), f"half-line n={n}"
        else:
            if input_path is None:
                raise click.UsageError("--family mirror needs --input")
            P, note = mirror(parse_points(Path(input_path).read_text(encoding="utf-8"))), f"mirror of {Path(input_path).name}"
    except (PointFormatError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    _emit(format_points(P, note), out)


@main.command("census")
@input_options
@click.option("--kind", type=click.Choice(KINDS), default=KeyKind.CONGRUENCE_FULL.value, show_default=True)
@click.option("--include-degenerate", is_flag=True, help="Count collinear triples as triangles.")
@click.option("--strict", is_flag=True, help="Fail if a line holds more than N/2 points.")
@threads_option
@out_option
def census_cmd(input_path, grid_m, random_n, seed, kind, include_degenerate, strict, threads, out):
    """Class multiplicities, pair count Q and the Cauchy-Schwarz bound (JSON)."""
    P = _load(input_path, grid_m, random_n, seed)
    try:
        payload = reports.census_payload(P, KeyKind(kind), workers=threads, include_degenerate=include_degenerate, strict=strict)
    except HypothesisViolation as exc:
        raise AuditFailure(str(exc)) from exc
    _emit(reports.dumps(payload), out)


@main.command("arrangement")
@input_options
@click.option("--lift", type=click.Choice(["motion", "conformal"]), default="motion", show_default=True)
@click.option("--reflections", is_flag=True, help="Conformal lift of z -> a conj(z) + b.")
@click.option("--include-identity-lines/--exclude-identity-lines", default=True, show_default=True)
@click.option("--regime", type=click.Choice(["GK", "ST"]), help="Envelope (default GK for motion, ST for conformal).")
@click.option("--coplanarity", is_flag=True, help="Brute-force coplanarity audit (motion lift, at most 12 points).")
@click.option("--max-points", type=int, default=DEFAULT_MAX_POINTS, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@threads_option
@out_option
def arrangement_cmd(
    input_path, grid_m, random_n, seed, lift, reflections, include_identity_lines, regime, coplanarity, max_points, fmt, threads, out
):
    """Rich points of the lifted line arrangement with audits."""
    P = _load(input_path, grid_m, random_n, seed)
    try:
        check_size(len(P), max_points)
        payload, rows, ok = reports.arrangement_summary(
            P,
            lift,
            reflections=reflections,
            include_identity_lines=include_identity_lines,
            regime=regime,
            workers=threads,
            coplanarity=coplanarity,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    if fmt == "csv":
        _emit(diagnostics_csv(rows), out)
    else:
        _emit(reports.dumps(payload), out)
    if not ok:
        raise AuditFailure("arrangement audit failed")


@main.command("oracle-check")
@input_options
@click.option("--include-degenerate", is_flag=True)
@click.option("--max-points", type=int, default=DEFAULT_CAP, show_default=True)
@click.option("--no-lifts", is_flag=True, help="Skip the lift-vs-oracle triple count comparison.")
@out_option
def oracle_check_cmd(input_path, grid_m, random_n, seed, include_degenerate, max_points, no_lifts, out):
    """Keys against pairwise tests, lifts against enumerated motions."""
    P = _load(input_path, grid_m, random_n, seed)
    if len(P) > max_points:
        raise click.UsageError(f"oracle check is capped at {max_points} points (got {len(P)})")
    payload, ok = reports.oracle_check(P, include_degenerate=include_degenerate, cap=max_points, lifts=not no_lifts)
    _emit(reports.dumps(payload), out)
    if not ok:
        raise AuditFailure("oracle mismatch")


@main.command()
@click.option("--m-start", type=click.IntRange(min=2), default=4, show_default=True)
@click.option("--m-stop", type=click.IntRange(min=2), default=12, show_default=True, help="Inclusive.")
@click.option("--m-step", type=click.IntRange(min=1), default=2, show_default=True)
@click.option("--kind", type=click.Choice(KINDS), default=KeyKind.CONGRUENCE_FULL.value, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="csv", show_default=True)
@threads_option
@out_option
def sweep(m_start, m_stop, m_step, kind, fmt, threads, out):
    """Class counts over square lattice sections."""
    ms = range(m_start, m_stop + 1, m_step)
    rows = reports.sweep_rows(((m, grid(m)) for m in ms), KeyKind(kind), workers=threads)
    if fmt == "csv":
        _emit(reports.to_csv(rows, reports.SWEEP_FIELDS), out)
    else:
        _emit(reports.dumps({"kind": kind, "rows": rows}), out)


@main.command()
@input_options
@click.option("--out-dir", type=click.Path(file_okay=False), required=True)
@click.option("--max-points", type=int, default=DEFAULT_MAX_POINTS, show_default=True, help="Arrangement cap.")
@click.option("--oracle-max-points", type=int, default=DEFAULT_CAP, show_default=True)
@threads_option
def report(input_path, grid_m, random_n, seed, out_dir, max_points, oracle_max_points, threads):
    """Bundle: censuses of all kinds, both arrangements and the oracle check."""
    P = _load(input_path, grid_m, random_n, seed)
    d = Path(out_dir)
    d.mkdir(parents=True, exist_ok=True)
    (d / "points.txt").write_text(format_points(P), encoding="utf-8")
    ok = True
    bundle = {"hypothesis": reports.hypothesis_payload(P), "census": {}, "files": ["points.txt"]}
    for kind in KeyKind:
        bundle["census"][kind.value] = reports.census_payload(P, kind, workers=threads)
    if len(P) <= max_points:
        for lift in ("motion", "conformal"):
            payload, rows, lift_ok = reports.arrangement_summary(P, lift, workers=threads)
            name = f"arrangement_{lift}.csv"
            (d / name).write_text(diagnostics_csv(rows), encoding="utf-8")
            bundle["files"].append(name)
            bundle[f"arrangement_{lift}"] = payload
            ok = ok and lift_ok
    else:
        bundle["arrangement_skipped"] = f"more than {max_points} points"
    if len(P) <= oracle_max_points:
        payload, oracle_ok = reports.oracle_check(P, cap=oracle_max_points)
        bundle["oracle"] = payload
        ok = ok and oracle_ok
    else:
        bundle["oracle_skipped"] = f"more than {oracle_max_points} points"
    bundle["ok"] = ok
    (d / "report.json").write_text(reports.dumps(bundle), encoding="utf-8")
    click.echo(str(d / "report.json"))
    if not ok:
        raise AuditFailure("report audits failed")


if __name__ == "__main__":
    main()
