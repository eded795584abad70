"""Regenerate the bundled test fixtures from the built-in enumerator.

    python3 scripts/make_fixtures.py 2 3 4 5      # a few minutes for dim 5
    python3 scripts/make_fixtures.py 6            # several hours

A finished long run can also be rendered from a JSON-lines log of canonical
forms (one ``{"matrix": [[...], ...]}`` object per line):

    python3 scripts/make_fixtures.py 6 --forms-log dim6_forms.jsonl

Each fixture is a block-format file of canonical forms, one block per
lattice-equivalence class, in canonical order.
"""
from __future__ import annotations

import argparse
import json
from pathlib import Path

from fanolattice.canonical import CanonicalForm, canonical_form
from fanolattice.io import atomic_write, format_polytope
from fanolattice.search import REFERENCE_COUNTS, enumerate_smooth_fano

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def save(d: int, forms: list[CanonicalForm], status: str) -> Path:
    header = f"# smooth Fano polytopes of dimension {d}: {len(forms)} classes ({status})\n"
    text = header + "".join(format_polytope(f.polytope()) for f in sorted(forms))
    path = OUT / f"smooth_fano_dim{d}.txt"
    atomic_write(path, text)
    return path


def write_fixture(d: int) -> Path:
    res = enumerate_smooth_fano(d)
    if res.status not in ("complete", "validated"):
        raise SystemExit(f"dimension {d}: enumeration is {res.status}, not writing a fixture")
    return save(d, res.forms, res.status)


def write_from_log(d: int, log: Path) -> Path:
    forms = set()
    for line in log.read_text().splitlines():
        m = tuple(tuple(row) for row in json.loads(line)["matrix"])
        f = CanonicalForm(d, len(m[0]), m)
        # the log is trusted only as far as it re-canonicalises to itself
        if canonical_form(f.polytope()) != f:
            raise SystemExit(f"log entry is not a canonical form: {m}")
        forms.add(f)
    if len(forms) != REFERENCE_COUNTS.get(d):
        raise SystemExit(f"dimension {d}: log has {len(forms)} classes, expected {REFERENCE_COUNTS.get(d)}")
    return save(d, list(forms), "validated")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("dims", nargs="*", type=int, default=[2])
    ap.add_argument("--forms-log", type=Path)
    args = ap.parse_args()
    for d in args.dims:
        print(write_from_log(d, args.forms_log) if args.forms_log else write_fixture(d))
