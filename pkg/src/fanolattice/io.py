"""Text formats, database ingestion and the on-disk result store.

Two polytope formats are read:

* blocks::

      dim 2
      vertices 3
      id 5            (optional, opaque string)
      name P^2        (optional)
      1 0
      0 1
      -1 -1

  A block ends where the declared number of rows has been read.  Blank
  lines and ``#`` comments are ignored.  When the whole text is a single
  line, `` / `` separates lines.

* one matrix per line, optionally preceded by an identifier::

      [[1,0,-1],[0,1,-1]]
      7: [[1,0],[0,1],[-1,-1]]

  Row-per-vertex and column (dim rows) layouts are told apart by shape:
  a Fano polytope always has more vertices than its dimension.
"""
from __future__ import annotations

import json
import os
import re
import tempfile
from dataclasses import dataclass, field, fields, is_dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Iterator

from .errors import DimensionMismatchError, ParseError, PolytopeError
from .polytope import LatticePolytope

_MATRIX_LINE = re.compile(r"^\s*(?:(?P<id>[^\s\[:]+)\s*:?\s*)?(?P<matrix>\[.*\])\s*$")


@dataclass
class DatabaseEntry:
    polytope: LatticePolytope
    external_id: str | None = None
    name: str | None = None
    line: int | None = None


@dataclass
class IngestFailure:
    line: int | None
    error: str  # exception class name
    message: str
    external_id: str | None = None

    def __str__(self):
        where = f"line {self.line}" if self.line is not None else "unknown line"
        tag = f" [{self.external_id}]" if self.external_id else ""
        return f"{where}{tag}: {self.error}: {self.message}"


@dataclass
class IngestReport:
    entries: list[DatabaseEntry] = field(default_factory=list)
    failures: list[IngestFailure] = field(default_factory=list)

    @property
    def polytopes(self) -> list[LatticePolytope]:
        return [e.polytope for e in self.entries]

    def __len__(self):
        return len(self.entries)

    def __iter__(self) -> Iterator[LatticePolytope]:
        return iter(self.polytopes)


# -- parsing ---------------------------------------------------------------

def _lines(text: str) -> list[tuple[int, str]]:
    raw = text.split("\n")
    if len(raw) == 1 and " / " in text:
        raw = text.split(" / ")
    out = []
    for no, line in enumerate(raw, start=1):
        line = line.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def _ints(tokens: list[str], line: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", line=line) from None


def _build(rows: list[list[int]], row_lines: list[int], header_line: int) -> LatticePolytope:
    try:
        return LatticePolytope(rows)
    except PolytopeError as exc:
        line = row_lines[exc.index] if exc.index is not None else header_line
        raise exc.at_line(line) from None


def _parse_blocks(lines: list[tuple[int, str]]) -> Iterator[tuple[int, Any]]:
    """Yield (header line, DatabaseEntry or PolytopeError) per block."""
    i = 0
    while i < len(lines):
        start, head = lines[i]
        parts = head.split()
        if parts[0].lower() != "dim" or len(parts) != 2:
            yield start, ParseError(f"expected 'dim <n>', got {head!r}", line=start)
            i += 1
            while i < len(lines) and not lines[i][1].lower().startswith("dim"):
                i += 1
            continue
        meta: dict[str, str] = {}
        try:
            dim = _ints(parts[1:], start)[0]
            i += 1
            if i >= len(lines):
                raise ParseError("missing 'vertices <m>' line", line=start)
            vno, vline = lines[i]
            vparts = vline.split()
            if vparts[0].lower() != "vertices" or len(vparts) != 2:
                raise ParseError(f"expected 'vertices <m>', got {vline!r}", line=vno)
            count = _ints(vparts[1:], vno)[0]
            if dim < 1 or count < 1:
                raise ParseError("dimension and vertex count must be positive", line=vno)
            i += 1
            while i < len(lines) and lines[i][1].split()[0].lower() in ("id", "name"):
                key, _, value = lines[i][1].partition(" ")
                meta[key.lower()] = value.strip()
                i += 1
            rows, row_lines = [], []
            while len(rows) < count:
                if i >= len(lines) or lines[i][1].split()[0].lower() == "dim":
                    got = len(rows)
                    raise ParseError(f"header declares {count} vertices, found {got}",
                                     line=lines[i - 1][0] if i else start)
                no, text = lines[i]
                row = _ints(text.split(), no)
                if len(row) != dim:
                    raise DimensionMismatchError(f"row has {len(row)} entries, expected {dim}", line=no)
                rows.append(row)
                row_lines.append(no)
                i += 1
            if i < len(lines) and lines[i][1].split()[0].lower() not in ("dim",):
                no, text = lines[i]
                raise ParseError(f"header declares {count} vertices, found more", line=no)
            p = _build(rows, row_lines, start)
            yield start, DatabaseEntry(p, meta.get("id"), meta.get("name"), start)
        except PolytopeError as exc:
            exc.external_id = meta.get("id")
            yield start, exc
            while i < len(lines) and lines[i][1].split()[0].lower() != "dim":
                i += 1


def _parse_matrix_line(no: int, line: str, dim: int | None = None) -> DatabaseEntry:
    m = _MATRIX_LINE.match(line)
    if not m:
        raise ParseError(f"not a matrix line: {line[:60]!r}", line=no)
    try:
        mat = json.loads(m.group("matrix"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad matrix syntax: {exc.msg}", line=no) from None
    if not (isinstance(mat, list) and mat and all(isinstance(r, list) and r for r in mat)):
        raise ParseError("matrix must be a nonempty list of nonempty lists", line=no)
    if any(not isinstance(x, int) or isinstance(x, bool) for r in mat for x in r):
        raise ParseError("matrix entries must be integers", line=no)
    if len({len(r) for r in mat}) != 1:
        raise DimensionMismatchError("matrix rows have different lengths", line=no)
    r, c = len(mat), len(mat[0])
    if dim is not None:
        if c == dim and r != dim:
            rows = mat
        elif r == dim and c != dim:
            rows = [list(col) for col in zip(*mat)]
        else:
            raise DimensionMismatchError(f"a {r}x{c} matrix does not fit dimension {dim}", line=no)
    elif r > c:
        rows = mat
    elif c > r:
        rows = [list(col) for col in zip(*mat)]
    else:
        raise DimensionMismatchError(f"square {r}x{c} matrix cannot list a Fano polytope", line=no)
    p = _build(rows, [no] * len(rows), no)
    return DatabaseEntry(p, m.group("id"), None, no)


def _is_block_format(lines: list[tuple[int, str]]) -> bool:
    return bool(lines) and lines[0][1].split()[0].lower() == "dim"


def parse_entries(text: str, dim: int | None = None) -> IngestReport:
    """Parse every polytope in ``text``, collecting failures."""
    lines = _lines(text)
    report = IngestReport()

    def accept(no, item):
        if isinstance(item, PolytopeError):
            report.failures.append(IngestFailure(item.line if item.line is not None else no,
                                                 type(item).__name__, item.message,
                                                 getattr(item, "external_id", None)))
        elif dim is not None and item.polytope.dim != dim:
            report.failures.append(IngestFailure(no, "DimensionMismatchError",
                                                 f"polytope has dimension {item.polytope.dim}, expected {dim}",
                                                 item.external_id))
        else:
            report.entries.append(item)

    if _is_block_format(lines):
        for no, item in _parse_blocks(lines):
            accept(no, item)
    else:
        for no, line in lines:
            try:
                item = _parse_matrix_line(no, line, dim)
            except PolytopeError as exc:
                item = exc
            accept(no, item)
    return report


def parse_polytope(text: str) -> LatticePolytope:
    """Exactly one polytope in either format; errors carry line numbers."""
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", line=1)
    if _is_block_format(lines):
        items = list(_parse_blocks(lines))
    else:
        items = []
        for no, line in lines:
            try:
                items.append((no, _parse_matrix_line(no, line)))
            except PolytopeError as exc:
                items.append((no, exc))
    if len(items) != 1:
        raise ParseError(f"expected one polytope, found {len(items)}", line=items[1][0] if len(items) > 1 else 1)
    no, item = items[0]
    if isinstance(item, PolytopeError):
        raise item
    return item.polytope


def read_polytope_file(path: str | Path) -> DatabaseEntry:
    text = Path(path).read_text()
    p = parse_polytope(text)
    report = parse_entries(text)
    e = report.entries[0]
    return DatabaseEntry(p, e.external_id, e.name, e.line)


def ingest_database(path: str | Path, dim: int | None = None) -> IngestReport:
    """Read a database file.  An unreadable file raises; malformed or invalid
    entries are recorded in ``failures`` and skipped."""
    text = Path(path).read_text()
    return parse_entries(text, dim)


def format_polytope(p: LatticePolytope, external_id: str | None = None, name: str | None = None) -> str:
    out = [f"dim {p.dim}", f"vertices {len(p.vertices)}"]
    if external_id is not None:
        out.append(f"id {external_id}")
    if name is not None:
        out.append(f"name {name}")
    out.extend(" ".join(str(x) for x in v) for v in p.vertices)
    return "\n".join(out) + "\n"


def format_matrix_line(p: LatticePolytope, external_id: str | None = None) -> str:
    cols = [list(c) for c in zip(*p.vertices)]
    body = json.dumps(cols, separators=(",", ":"))
    return f"{external_id}: {body}" if external_id is not None else body


# -- structured records ------------------------------------------------------

def _plain(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    return value


def to_record(obj) -> dict:
    """Dataclass or mapping to a JSON-ready dict in declaration order;
    rationals become "num/den" strings."""
    if is_dataclass(obj):
        return {f.name: _plain(getattr(obj, f.name)) for f in fields(obj)}
    return _plain(dict(obj))


def record_line(obj) -> str:
    return json.dumps(to_record(obj), separators=(", ", ": "))


def atomic_write(path: str | Path, data: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def default_store_dir() -> Path:
    env = os.environ.get("FANOLATTICE_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "fanolattice"


class ResultStore:
    """Append-only record file keyed by canonical-form hash.

    Each line is ``{"key": ..., <row fields>}``.  Adding a key that is
    already present is a no-op, so repeated runs leave the file
    byte-identical.  Every write replaces the file atomically.
    """

    FILENAME = "results.jsonl"

    def __init__(self, directory: str | Path | None = None):
        self.directory = Path(directory) if directory is not None else default_store_dir()
        self.path = self.directory / self.FILENAME
        self._records: dict[str, dict] = {}
        self._lines: list[str] = []
        if self.path.exists():
            for no, line in enumerate(self.path.read_text().splitlines(), start=1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    raise ParseError("corrupt result store record", line=no) from None
                self._records.setdefault(rec["key"], rec)
                self._lines.append(line)

    def __contains__(self, key: str) -> bool:
        return key in self._records

    def __len__(self):
        return len(self._records)

    def get(self, key: str) -> dict | None:
        return self._records.get(key)

    def keys(self) -> list[str]:
        return list(self._records)

    def add_many(self, items: Iterable[tuple[str, Any]]) -> int:
        """Append records for unseen keys; returns how many were new."""
        new = []
        pending: set[str] = set()
        for key, obj in items:
            if key in self._records or key in pending:
                continue
            pending.add(key)
            rec = {"key": key}
            rec.update(to_record(obj))
            new.append((key, rec))
        if not new:
            return 0
        lines = self._lines + [json.dumps(rec, separators=(", ", ": ")) for _, rec in new]
        atomic_write(self.path, "\n".join(lines) + "\n")
        self._lines = lines
        for key, rec in new:
            self._records[key] = rec
        return len(new)

    def add(self, key: str, obj) -> bool:
        return self.add_many([(key, obj)]) == 1
