"""Normal form of a lattice polytope under GL(n, Z) and vertex relabelling."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterator

import numpy as np

from . import exact_linalg as la
from .polytope import LatticePolytope
from .symmetry import refined_colours


@dataclass(frozen=True)
class CanonicalForm:
    """``matrix`` is ``dim`` rows by ``vertex_count`` columns; its columns
    are the vertices of a polytope lattice-equivalent to the input."""

    dim: int
    vertex_count: int
    matrix: tuple[tuple[int, ...], ...]

    @property
    def key(self) -> str:
        text = ";".join(",".join(map(str, row)) for row in self.matrix)
        return hashlib.sha256(f"{self.dim}|{text}".encode()).hexdigest()[:20]

    def vertices(self) -> list[tuple[int, ...]]:
        return [tuple(col) for col in zip(*self.matrix)]

    def polytope(self) -> LatticePolytope:
        return LatticePolytope(self.vertices())

    def __lt__(self, other: "CanonicalForm") -> bool:
        return (self.dim, self.vertex_count, self.matrix) < (other.dim, other.vertex_count, other.matrix)


def _colour_orderings(verts: tuple[int, ...], vcol: list[int]) -> Iterator[tuple[int, ...]]:
    """Orderings of ``verts`` with nondecreasing colour."""
    groups: dict[int, list[int]] = {}
    for v in verts:
        groups.setdefault(vcol[v], []).append(v)
    blocks = [groups[c] for c in sorted(groups)]
    for parts in product(*(permutations(b) for b in blocks)):
        yield tuple(v for part in parts for v in part)


def _best_for_facet(p: LatticePolytope, basis: tuple[int, ...], orderings: list[tuple[int, ...]]):
    """Lexicographically least coordinate key over the given orderings of
    one basis.  Returns (det, key rows, ordering) with key rows being the
    sorted non-basis columns of ``d * B^{-1} V``."""
    n = p.dim
    cols = [list(c) for c in zip(*(p.vertices[i] for i in basis))]
    d, r = la.scaled_inverse(cols)
    if d < 0:
        d, r = -d, [[-x for x in row] for row in r]
    rest = [i for i in range(len(p.vertices)) if i not in basis]
    coords = la.matmul(r, [list(c) for c in zip(*(p.vertices[i] for i in rest))])  # n x |rest|
    if not rest:
        return d, (), orderings[0]
    pos = {v: k for k, v in enumerate(basis)}
    perm_idx = np.array([[pos[v] for v in o] for o in orderings], dtype=np.int64)
    c = np.array(coords, dtype=object if _too_big(coords, n) else np.int64)
    if c.dtype == object:
        best = None
        for o, pi in zip(orderings, perm_idx):
            rows = [coords[k] for k in pi]
            key = tuple(sorted(zip(*rows)))
            if best is None or key < best[1]:
                best = (o, key)
        return d, best[1], best[0]
    lo = int(c.min())
    radix = int(c.max()) - lo + 1
    stacked = c[perm_idx]  # (K, n, |rest|)
    weights = radix ** np.arange(n - 1, -1, -1, dtype=np.int64)
    enc = np.einsum("knr,n->kr", stacked - lo, weights)
    enc.sort(axis=1)
    order = np.lexsort(enc.T[::-1])
    k0 = int(order[0])
    rows = stacked[k0]
    key = tuple(sorted(tuple(int(x) for x in col) for col in rows.T))
    return d, key, orderings[k0]


def _too_big(coords, n) -> bool:
    flat = [x for row in coords for x in row]
    radix = max(flat) - min(flat) + 1
    return radix ** n >= 2 ** 62


def canonical_form(p: LatticePolytope) -> CanonicalForm:
    """Normal form under unimodular maps and vertex relabelling.

    Candidates are ordered bases taken from the facets of least refined
    colour, with vertex colours nondecreasing along the basis.  Each
    candidate orders the vertices as basis first, then the rest by their
    coordinates in that basis.  The winner minimises (|det B|, coordinate
    key, Hermite form of the ordered vertex matrix); every piece is
    invariant, so the result is too.
    """
    cached = p.__dict__.get("_canonical_form")
    if cached is not None:
        return cached
    n = p.dim
    vcol, fcol = refined_colours(p)
    fmin = min(fcol)
    results = []
    for f, fc in zip(p.facets, fcol):
        if fc != fmin:
            continue
        verts = f.vertex_indices
        if len(verts) == n:
            bases = [tuple(verts)]
        else:
            bases = []
            for sub in combinations(verts, n):
                if la.rank([p.vertices[i] for i in sub]) == n:
                    bases.append(sub)
        for b in bases:
            orderings = list(_colour_orderings(b, vcol))
            # orderings must be compared by colour sequence first
            cseq = min(tuple(vcol[v] for v in o) for o in orderings)
            orderings = [o for o in orderings if tuple(vcol[v] for v in o) == cseq]
            d, key, ordering = _best_for_facet(p, b, orderings)
            results.append(((cseq, d, key), ordering))
    best_key = min(r[0] for r in results)
    winners = [o for k, o in results if k == best_key]
    forms = set()
    for o in winners:
        forms.add(_form_for_ordering(p, o, best_key[1]))
    matrix = min(forms)
    form = CanonicalForm(n, len(p.vertices), matrix)
    p.__dict__["_canonical_form"] = form
    return form


def _form_for_ordering(p: LatticePolytope, ordering: tuple[int, ...], d: int):
    n = p.dim
    cols = [list(c) for c in zip(*(p.vertices[i] for i in ordering))]
    dd, r = la.scaled_inverse(cols)
    if dd < 0:
        dd, r = -dd, [[-x for x in row] for row in r]
    rest = [i for i in range(len(p.vertices)) if i not in ordering]
    keyed = sorted((tuple(la.matvec(r, p.vertices[i])), i) for i in rest)
    full_order = list(ordering) + [i for _, i in keyed]
    if dd == 1:
        mat = [list(row) for row in la.identity(n)]
        for k, (coord, _) in enumerate(keyed):
            for i in range(n):
                mat[i].append(coord[i])
        return tuple(tuple(row) for row in mat)
    vmat = [list(c) for c in zip(*(p.vertices[i] for i in full_order))]
    h, _ = la.hermite_normal_form(vmat)
    return tuple(tuple(row) for row in h)
