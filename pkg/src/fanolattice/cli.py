"""Command line interface.

Exit codes: 0 ok, 1 usage, 2 invalid input, 3 invariant violation.
"""
from __future__ import annotations

import logging
import sys

import click

from .canonical import canonical_form
from .classify import (
    MAX_ENUMERATION_DIM,
    ClassificationRow,
    analyze,
    classify_all,
    conjecture_check,
    load_source,
    property_suite,
    row_order,
)
from .errors import ClassificationUnavailable, FanoLatticeError, InvariantViolation
from .io import ResultStore, atomic_write, read_polytope_file, record_line
from .search import REFERENCE_COUNTS, enumerate_smooth_fano

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_INVARIANT = 0, 1, 2, 3


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, tuple):
        return "(" + ", ".join(str(x) for x in value) + ")"
    return str(value)


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def cli(verbose: bool) -> None:
    """Exact analysis of smooth toric Fano polytopes."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")


@cli.command("analyze")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--record-only", is_flag=True, help="Print only the structured record.")
def analyze_cmd(path: str, record_only: bool) -> None:
    """Report every predicate for the polytope in PATH."""
    entry = read_polytope_file(path)
    report = analyze(entry.polytope)
    if not record_only:
        rows = [
            ("dimension", report.dim), ("vertices", report.vertex_count),
            ("simplicial", report.simplicial), ("smooth", report.smooth),
            ("reflexive", report.reflexive), ("terminal", report.terminal),
            ("picard rank", report.picard_rank), ("|Aut|", report.aut_order),
            ("t (vertex orbits)", report.t), ("k (fixed dim)", report.k),
            ("fibre-like", report.fibre_like), ("barycentre", report.barycentre),
            ("vertex sum", report.vertex_sum), ("K-stable", report.k_stable),
            ("catalog name", report.catalog_name),
        ]
        width = max(len(k) for k, _ in rows)
        for k, v in rows:
            click.echo(f"{k:<{width}}  {_fmt(v)}")
    click.echo(record_line(report))


@cli.command("enumerate")
@click.option("--dim", "dim", type=click.IntRange(1, MAX_ENUMERATION_DIM), required=True)
@click.option("--bound", type=click.IntRange(1), default=None, help="Coordinate bound of the candidate pool (default: dim).")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write canonical forms here instead of stdout.")
@click.option("--node-limit", type=click.IntRange(1), default=None)
def enumerate_cmd(dim: int, bound: int | None, out: str | None, node_limit: int | None) -> None:
    """Enumerate smooth Fano polytopes of dimension DIM."""
    res = enumerate_smooth_fano(dim, bound, node_limit)
    text = "".join(_form_block(f) for f in res.forms)
    if out:
        atomic_write(out, text)
    else:
        click.echo(text, nl=False)
    summary = {"dim": dim, "bound": res.bound, "classes": len(res.forms),
               "reference": REFERENCE_COUNTS.get(dim), "status": res.status, "nodes": res.nodes}
    click.echo(record_line(summary), err=out is None)


def _form_block(form) -> str:
    lines = [f"# key {form.key}", f"dim {form.dim}", f"vertices {form.vertex_count}"]
    lines += [" ".join(str(x) for x in v) for v in form.vertices()]
    return "\n".join(lines) + "\n"


def _rows_with_store(entries, jobs: int, store: ResultStore | None):
    """Rows for all entries, reusing and extending the result store."""
    keys = [canonical_form(e.polytope).key for e in entries]
    rows = [None] * len(entries)
    todo = []
    for i, (e, key) in enumerate(zip(entries, keys)):
        rec = store.get(key) if store is not None else None
        if rec is not None:
            fields = {k: v for k, v in rec.items() if k != "key"}
            fields["external_id"] = e.external_id
            rows[i] = ClassificationRow(**fields)
        else:
            todo.append(i)
    fresh = classify_all([entries[i] for i in todo], jobs)
    for i, row in zip(todo, fresh):
        rows[i] = row
    if store is not None:
        store.add_many((keys[i], rows[i]) for i in sorted(range(len(entries)), key=lambda i: keys[i]))
    return rows


@cli.command("classify")
@click.option("--dim", "dim", type=click.IntRange(1), required=True)
@click.option("--source", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Database file; default is the built-in enumeration (dim <= 6).")
@click.option("--jobs", type=click.IntRange(1), default=1, show_default=True)
@click.option("--bound", type=click.IntRange(1), default=None)
@click.option("--store/--no-store", default=True, show_default=True,
              help="Reuse and extend the result store in $FANOLATTICE_CACHE.")
@click.option("--records", is_flag=True, help="Print structured records instead of a table.")
def classify_cmd(dim: int, source: str | None, jobs: int, bound: int | None, store: bool, records: bool) -> None:
    """Table of fibre-like smooth Fano polytopes of dimension DIM."""
    entries = load_source(dim, source, bound)
    rs = ResultStore() if store else None
    rows = _rows_with_store(entries, jobs, rs)
    for row, e in zip(rows, entries):
        if row.fibre_like and row.barycentre_zero is False:
            raise InvariantViolation("fibre-like polytope with nonzero barycentre", e.polytope)
    table = sorted((r for r in rows if r.fibre_like), key=row_order)
    if records:
        for r in table:
            click.echo(record_line(r))
        return
    click.echo(f"{'Dimension':>9}  {'#Vertices':>9}  {'Description':<14}  ID")
    for r in table:
        click.echo(f"{r.dim:>9}  {r.vertex_count:>9}  {r.catalog_name or '-':<14}  {r.external_id or '-'}")
    click.echo(f"{len(table)} fibre-like of {len(rows)} smooth Fano polytopes", err=True)


@cli.command("check")
@click.option("--dim", "dim", type=click.IntRange(1), required=True)
@click.option("--source", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--bound", type=click.IntRange(1), default=None)
def check_cmd(dim: int, source: str | None, bound: int | None) -> None:
    """Run the structural property suite; exit 3 on any violation."""
    entries = load_source(dim, source, bound)
    report = property_suite(e.polytope for e in entries)
    summary = {"dim": dim, "checked": report.checked, "violations": len(report.violations)}
    click.echo(record_line(summary))
    if not report.ok:
        for reason, p in report.violations:
            click.echo(f"violation: {reason}: {[list(v) for v in p.vertices]}", err=True)
        raise InvariantViolation(report.violations[0][0], report.violations[0][1])


@cli.command("conjecture")
@click.option("--dim", "dim", type=click.IntRange(1), required=True)
@click.option("--source", type=click.Path(exists=True, dir_okay=False), default=None)
def conjecture_cmd(dim: int, source: str | None) -> None:
    """Whether the fibre-like classes in odd prime DIM are P^d and (P^1)^d only."""
    try:
        verdict = conjecture_check(dim, source)
    except ValueError as exc:
        if isinstance(exc, FanoLatticeError):
            raise
        raise click.UsageError(str(exc)) from None
    click.echo(record_line({"dim": dim, "holds": verdict}))


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, prog_name="fanolattice", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except ClassificationUnavailable as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    except InvariantViolation as exc:
        click.echo(f"invariant violation: {exc}", err=True)
        if exc.polytope is not None:
            click.echo(f"polytope: {[list(v) for v in exc.polytope.vertices]}", err=True)
        return EXIT_INVARIANT
    except (FanoLatticeError, OSError) as exc:
        click.echo(f"invalid input: {type(exc).__name__}: {exc}", err=True)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
