"""Per-polytope analysis, fibre-like classification and the table query."""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .canonical import CanonicalForm, canonical_form
from .catalog import UNNAMED_FIBRE_LIKE, catalog_entries, power, projective_space
from .errors import ClassificationUnavailable, InvariantViolation
from .kstability import k_stability, main_theorem_check
from .polytope import LatticePolytope, centroid, vertex_sum
from .primitive import primitive_relations
from .search import REFERENCE_COUNTS, enumerate_smooth_fano
from .symmetry import automorphism_group, burnside_check, orbit_data
from .toric import is_reflexive, is_smooth, is_terminal, picard_rank

logger = logging.getLogger(__name__)

#: Largest dimension the built-in enumerator accepts.
MAX_ENUMERATION_DIM = 6


@dataclass(frozen=True)
class ClassificationRow:
    dim: int
    vertex_count: int
    picard_rank: int
    aut_order: int
    t: int
    k: int
    fibre_like: bool
    barycentre_zero: bool | None
    catalog_name: str | None = None
    external_id: str | None = None

    def as_record(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class AnalysisReport:
    dim: int
    vertex_count: int
    simplicial: bool
    smooth: bool
    reflexive: bool
    terminal: bool
    picard_rank: int | None
    aut_order: int
    t: int
    k: int
    fibre_like: bool | None  # None: the t - k test is only conclusive for smooth input
    barycentre: tuple[Fraction, ...]
    vertex_sum: tuple[int, ...]
    k_stable: bool | None  # None: barycentre criterion needs a reflexive polytope
    catalog_name: str | None = None


@dataclass
class SourceEntry:
    polytope: LatticePolytope
    external_id: str | None = None
    name: str | None = None


@lru_cache(maxsize=None)
def _catalog_index(dim: int) -> dict[CanonicalForm, str]:
    return {canonical_form(e.polytope): e.name for e in catalog_entries(dim)}


def catalog_name(p: LatticePolytope) -> str | None:
    return _catalog_index(p.dim).get(canonical_form(p))


def analyze(p: LatticePolytope) -> AnalysisReport:
    smooth = is_smooth(p)
    simplicial = p.is_simplicial
    data = orbit_data(p)
    verdict = k_stability(p)
    return AnalysisReport(
        dim=p.dim,
        vertex_count=len(p.vertices),
        simplicial=simplicial,
        smooth=smooth,
        reflexive=is_reflexive(p),
        terminal=is_terminal(p),
        picard_rank=picard_rank(p) if simplicial else None,
        aut_order=automorphism_group(p).order,
        t=data.t,
        k=data.k,
        fibre_like=(data.invariant_ns_dim == 1) if smooth else None,
        barycentre=verdict.barycentre,
        vertex_sum=vertex_sum(p),
        k_stable=verdict.k_stable,
        catalog_name=catalog_name(p),
    )


def classification_row(p: LatticePolytope, external_id: str | None = None) -> ClassificationRow:
    """Row for a smooth Fano polytope.  The barycentre is only computed for
    fibre-like input, where it is the quantity of interest."""
    data = orbit_data(p)
    fibre_like = data.invariant_ns_dim == 1
    bz = None
    if fibre_like:
        bz = all(x == 0 for x in centroid(p))
    name = catalog_name(p)
    if name is None and fibre_like:
        name = UNNAMED_FIBRE_LIKE.get((p.dim, len(p.vertices)))
    return ClassificationRow(p.dim, len(p.vertices), picard_rank(p), automorphism_group(p).order,
                             data.t, data.k, fibre_like, bz, name, external_id)


def _row_task(args):
    vertices, external_id = args
    return classification_row(LatticePolytope(vertices), external_id)


def load_source(d: int, source: str | Path | Sequence[SourceEntry] | None = None,
                bound: int | None = None) -> list[SourceEntry]:
    """Smooth Fano d-polytopes from a database file, an explicit list, or
    the built-in enumeration (d <= 6)."""
    if source is None:
        if d > MAX_ENUMERATION_DIM:
            raise ClassificationUnavailable(
                f"no built-in classification for dimension {d}; supply a database file")
        res = enumerate_smooth_fano(d, bound)
        if res.status in ("incomplete", "bound-limited"):
            logger.warning("dimension %d enumeration is %s (%d classes)", d, res.status, len(res.forms))
        return [SourceEntry(f.polytope()) for f in res.forms]
    if isinstance(source, (str, Path)):
        from .io import ingest_database

        report = ingest_database(source, d)
        for failure in report.failures:
            logger.warning("skipped entry: %s", failure)
        out = []
        for e in report.entries:
            if not is_smooth(e.polytope):
                logger.warning("skipped entry at line %d (id %s): not smooth", e.line, e.external_id)
                continue
            out.append(SourceEntry(e.polytope, e.external_id, e.name))
        return out
    return list(source)


def classify_all(entries: Iterable[SourceEntry], jobs: int = 1) -> list[ClassificationRow]:
    """Rows for every entry, in input order."""
    entries = list(entries)
    if jobs > 1 and len(entries) > 1:
        tasks = [(e.polytope.vertices, e.external_id) for e in entries]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_row_task, tasks, chunksize=16))
    return [classification_row(e.polytope, e.external_id) for e in entries]


def row_order(row: ClassificationRow):
    return (row.dim, row.vertex_count, row.catalog_name or "", row.external_id or "",
            row.aut_order, row.t, row.k)


def classify_fibre_like(d: int, source=None, *, jobs: int = 1, bound: int | None = None) -> list[ClassificationRow]:
    """Fibre-like rows of dimension ``d`` sorted by (dim, vertex_count)."""
    entries = load_source(d, source, bound)
    rows = classify_all(entries, jobs)
    for row, e in zip(rows, entries):
        if row.fibre_like and row.barycentre_zero is False:
            raise InvariantViolation("fibre-like polytope with nonzero barycentre", e.polytope)
    return sorted((r for r in rows if r.fibre_like), key=row_order)


def fibre_like_forms(d: int, source=None, bound: int | None = None) -> set[CanonicalForm]:
    entries = load_source(d, source, bound)
    return {canonical_form(e.polytope) for e in entries if orbit_data(e.polytope).invariant_ns_dim == 1}


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(n ** 0.5) + 1))


def conjecture_check(d: int, source=None) -> bool:
    """For an odd prime ``d``: whether the fibre-like classes are exactly
    P^d and (P^1)^d."""
    if d % 2 == 0 or not _is_prime(d):
        raise ValueError(f"the check is stated for odd primes, got {d}")
    expected = {canonical_form(projective_space(d)), canonical_form(power(projective_space(1), d))}
    return fibre_like_forms(d, source) == expected


@dataclass
class PropertyReport:
    checked: int = 0
    violations: list[tuple[str, LatticePolytope]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def property_suite(polytopes: Iterable[LatticePolytope]) -> PropertyReport:
    """Statements that hold for every smooth Fano polytope: positive
    degrees, a trivial-focus collection, t - k >= 1, Burnside agreement,
    and fibre-like => barycentre 0."""
    report = PropertyReport()
    for p in polytopes:
        report.checked += 1
        rels = primitive_relations(p)
        if any(r.degree <= 0 for r in rels):
            report.violations.append(("primitive relation of degree <= 0", p))
        if not any(not r.focus for r in rels):
            report.violations.append(("no trivial-focus primitive collection", p))
        data = orbit_data(p)
        if data.t - data.k < 1:
            report.violations.append(("t - k < 1", p))
        if not burnside_check(automorphism_group(p), data):
            report.violations.append(("Burnside averages disagree with orbit data", p))
        if not main_theorem_check(p):
            report.violations.append(("fibre-like with nonzero barycentre", p))
    return report


def reference_count(d: int) -> int | None:
    return REFERENCE_COUNTS.get(d)


__all__ = [
    "AnalysisReport", "ClassificationRow", "MAX_ENUMERATION_DIM", "PropertyReport", "SourceEntry",
    "analyze", "catalog_name", "classification_row", "classify_all", "classify_fibre_like",
    "conjecture_check", "fibre_like_forms", "load_source", "property_suite", "reference_count",
    "row_order",
]
