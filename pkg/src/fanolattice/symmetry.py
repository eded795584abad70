"""Lattice automorphisms of a polytope and the orbit data they determine."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import numpy as np

from . import exact_linalg as la
from .errors import NotSmoothError, SearchBudgetExceeded
from .polytope import LatticePolytope
from .toric import is_smooth

#: Hard cap on candidate image tuples examined by :func:`automorphism_group`.
MAX_CANDIDATES = 2_000_000
#: Largest group whose element list :attr:`LatticeAutGroup.elements` will build.
MAX_ELEMENTS = 500_000


@dataclass(frozen=True)
class AutElement:
    matrix: tuple[tuple[int, ...], ...]
    perm: tuple[int, ...]  # vertex i is sent to vertex perm[i]



@dataclass(frozen=True)
class LatticeAutGroup:
    """A finite group of lattice automorphisms, kept as generators.

    ``order`` is exact.  The full element list is built on demand by
    :attr:`elements`; orbit and fixed-space computations only need the
    generators.
    """

    dim: int
    n_vertices: int
    generators: tuple[AutElement, ...]
    order: int

    @classmethod
    def from_elements(cls, dim: int, n_vertices: int, elements: Sequence[AutElement]) -> "LatticeAutGroup":
        g = cls(dim, n_vertices, tuple(elements), len(elements))
        g.__dict__["elements"] = tuple(elements)
        return g

    @cached_property
    def elements(self) -> tuple[AutElement, ...]:
        """Every group element, sorted by vertex permutation."""
        if self.order > MAX_ELEMENTS:
            raise SearchBudgetExceeded(f"group of order {self.order} is too large to list")
        ident = AutElement(tuple(tuple(r) for r in la.identity(self.dim)), tuple(range(self.n_vertices)))
        found = {ident.perm: ident}
        todo = [ident]
        while todo:
            x = todo.pop()
            for s in self.generators:
                perm = tuple(s.perm[i] for i in x.perm)
                if perm not in found:
                    y = AutElement(tuple(tuple(r) for r in la.matmul(s.matrix, x.matrix)), perm)
                    found[perm] = y
                    todo.append(y)
        return tuple(found[k] for k in sorted(found))

    def matrices(self):
        return [e.matrix for e in self.elements]

    def subgroup(self, elements: Sequence[AutElement]) -> "LatticeAutGroup":
        return LatticeAutGroup.from_elements(self.dim, self.n_vertices, elements)

    def is_closed(self) -> bool:
        perms = {e.perm for e in self.elements}
        for a in self.elements:
            for b in self.elements:
                if tuple(a.perm[i] for i in b.perm) not in perms:
                    return False
        return True

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        todo = [point]
        while todo:
            x = todo.pop()
            for s in self.generators:
                y = s.perm[x]
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return sorted(seen)


@dataclass(frozen=True)
class OrbitData:
    orbits: tuple[tuple[int, ...], ...]
    t: int
    k: int

    @property
    def invariant_ns_dim(self) -> int:
        return self.t - self.k


def trivial_group(p: LatticePolytope) -> LatticeAutGroup:
    n = p.dim
    return LatticeAutGroup.from_elements(n, len(p.vertices), (
        AutElement(tuple(tuple(r) for r in la.identity(n)), tuple(range(len(p.vertices)))),))


def vertex_fingerprint(p: LatticePolytope, i: int) -> tuple:
    """GL(n, Z)-invariant signature of vertex ``i``.

    The multiset of pairings ``<u_F, v>`` alone does not separate the two
    antipodal vertices of Bl_1 P^2, so it is combined with the pairing
    profile (sorted column of the pairing matrix) of each incident facet.
    """
    v = p.vertices[i]
    own = tuple(sorted((la.dot(f.normal, v), f.offset) for f in p.facets))
    incident = tuple(sorted(
        (f.offset, tuple(sorted(la.dot(f.normal, w) for w in p.vertices)))
        for f in p.facets if i in f.vertex_indices))
    return own, incident


def refined_colours(p: LatticePolytope) -> tuple[list[int], list[int]]:
    """Colour refinement on the vertex/facet pairing graph.

    Returns (vertex colours, facet colours).  Colours are ranks of sorted
    signatures, so isomorphic inputs receive identical colourings.
    """
    cached = p.__dict__.get("_refined_colours")
    if cached is not None:
        return cached
    pair = p.pairing_matrix()
    m, nf = len(p.vertices), len(p.facets)
    vcol = [0] * m
    fcol_sig = [f.offset for f in p.facets]
    keys = sorted(set(fcol_sig))
    fcol = [keys.index(x) for x in fcol_sig]
    nv_cls, nf_cls = 1, len(keys)
    while True:
        vsig = [(vcol[i], tuple(sorted((pair[i][j], fcol[j]) for j in range(nf)))) for i in range(m)]
        vkeys = sorted(set(vsig))
        vrank = {s: r for r, s in enumerate(vkeys)}
        vcol = [vrank[s] for s in vsig]
        fsig = [(fcol[j], tuple(sorted((pair[i][j], vcol[i]) for i in range(m)))) for j in range(nf)]
        fkeys = sorted(set(fsig))
        frank = {s: r for r, s in enumerate(fkeys)}
        fcol = [frank[s] for s in fsig]
        if len(vkeys) == nv_cls and len(fkeys) == nf_cls:
            break
        nv_cls, nf_cls = len(vkeys), len(fkeys)
    p.__dict__["_refined_colours"] = (vcol, fcol)
    return vcol, fcol


def _base_tuple(p: LatticePolytope) -> tuple[int, ...]:
    first = p.facets[0].vertex_indices
    for sub in combinations(first, p.dim):
        if la.rank([p.vertices[i] for i in sub]) == p.dim:
            return sub
    raise AssertionError("a facet always contains a basis of the ambient space")


def _pair_labels(p: LatticePolytope) -> list[list[int]]:
    """Integer label of each ordered vertex pair ``(u, v)``, preserved by
    every lattice automorphism: the multiset of ``<a_F, v>`` over the facets
    ``F`` through ``u``."""
    cached = p.__dict__.get("_pair_labels")
    if cached is not None:
        return cached
    pair = p.pairing_matrix()
    m = len(p.vertices)
    through = [[j for j, f in enumerate(p.facets) if pair[u][j] == f.offset] for u in range(m)]
    sigs = [[tuple(sorted(pair[v][j] for j in through[u])) for v in range(m)] for u in range(m)]
    ids: dict = {}
    labels = [[ids.setdefault(sig, len(ids)) for sig in row] for row in sigs]
    p.__dict__["_pair_labels"] = labels
    return labels


def _candidate_tuples(p: LatticePolytope, base: tuple[int, ...], prune: bool, prefix: tuple[int, ...] = ()):
    """Ordered vertex tuples that could be the image of ``base``, starting
    with ``prefix``: drawn from facets like the base facet.  With ``prune``
    the refined colours and pair labels of ``base`` must be matched too."""
    n = p.dim
    base_facet = p.facets[0]
    fixed = set(prefix)
    if prune:
        vcol, fcol = refined_colours(p)
        lab = _pair_labels(p)
        fwant = fcol[0]
        k0 = len(prefix)
        if any(vcol[a] != vcol[b] for a, b in zip(prefix, base)):
            return
        if any(lab[prefix[i]][prefix[j]] != lab[base[i]][base[j]] for i in range(k0) for j in range(k0)):
            return
    for j, f in enumerate(p.facets):
        if len(f.vertex_indices) != len(base_facet.vertex_indices) or f.offset != base_facet.offset:
            continue
        if prune and fcol[j] != fwant:
            continue
        verts = f.vertex_indices
        if not fixed <= set(verts):
            continue
        rest = [v for v in verts if v not in fixed]
        if not prune:
            for tail in product(rest, repeat=n - len(prefix)):
                if len(set(tail)) == len(tail):
                    yield prefix + tail
            continue
        tup = list(prefix)

        def extend(k: int):
            if k == n:
                yield tuple(tup)
                return
            b = base[k]
            for v in rest:
                if vcol[v] != vcol[b] or v in tup:
                    continue
                if lab[v][v] != lab[b][b]:
                    continue
                if any(lab[tup[i]][v] != lab[base[i]][b] or lab[v][tup[i]] != lab[b][base[i]] for i in range(k)):
                    continue
                tup.append(v)
                yield from extend(k + 1)
                tup.pop()

        yield from extend(len(prefix))


def automorphism_group(p: LatticePolytope, prune: bool = True) -> LatticeAutGroup:
    """All ``W`` in GL(n, Z) with ``W V = V``, as generators and order.

    ``W`` is fixed by the image ``T`` of a basis tuple ``B`` of vertices
    taken from the first facet: ``W = T B^{-1}``, kept when integral and
    permuting the vertices.  The search runs down the stabiliser chain of
    ``B``: at level ``i`` the images of ``B[:i]`` are fixed and one element
    is sought for every image of ``B[i]`` outside the orbit generated so
    far.  The order is the product of the orbit lengths.  Each candidate
    tuple is examined at most once.  With ``prune`` only tuples respecting
    the refined vertex colours are tried.
    """
    cached = p.__dict__.get("_aut_group") if prune else None
    if cached is not None:
        return cached
    n = p.dim
    m = len(p.vertices)
    base = _base_tuple(p)
    bmat = [list(col) for col in zip(*(p.vertices[i] for i in base))]
    d, r = la.scaled_inverse(bmat)
    vt = [list(col) for col in zip(*p.vertices)]  # n x m
    coords = la.matmul(r, vt)  # d * (B^{-1} V)

    lo = min(min(v) for v in p.vertices)
    span = max(max(v) for v in p.vertices) - lo + 1
    weights = np.array([span ** i for i in range(n)], dtype=np.int64)
    verts_np = np.array(p.vertices, dtype=np.int64)
    keys = (verts_np - lo) @ weights
    key_to_index = {int(k): i for i, k in enumerate(keys)}
    sorted_keys = np.sort(keys)
    r_np = np.array(r, dtype=np.int64)
    coords_np = np.array(coords, dtype=np.int64)
    examined = 0

    def first_valid(batch) -> AutElement | None:
        t = verts_np[np.array(batch)].transpose(0, 2, 1)  # (K, n, n) columns are images
        img = t @ coords_np  # (K, n, m) equals d * W V
        wd = t @ r_np  # (K, n, n) equals d * W
        ok = np.all(img % d == 0, axis=(1, 2)) & np.all(wd % d == 0, axis=(1, 2))
        for idx in np.nonzero(ok)[0]:
            cols = (img[idx] // d).T
            if np.any(cols < lo) or np.any(cols - lo >= span):
                continue
            ks = (cols - lo) @ weights
            pos = np.minimum(np.searchsorted(sorted_keys, ks), m - 1)
            if not np.all(sorted_keys[pos] == ks):
                continue
            perm = tuple(key_to_index[int(k)] for k in ks)
            if len(set(perm)) != m:
                continue
            w = wd[idx] // d
            return AutElement(tuple(tuple(int(x) for x in row) for row in w), perm)
        return None

    def search(prefix: tuple[int, ...]) -> AutElement | None:
        nonlocal examined
        batch: list = []
        for tup in _candidate_tuples(p, base, prune, prefix):
            batch.append(tup)
            examined += 1
            if examined > MAX_CANDIDATES:
                raise SearchBudgetExceeded(f"more than {MAX_CANDIDATES} candidate images")
            if len(batch) >= 256:
                found = first_valid(batch)
                if found is not None:
                    return found
                batch.clear()
        return first_valid(batch) if batch else None

    vcol = refined_colours(p)[0] if prune else None
    gens: list[AutElement] = []
    order = 1
    for level in reversed(range(n)):
        b = base[level]
        group = LatticeAutGroup(n, m, tuple(gens), 0)
        orbit = set(group.orbit(b))
        for c in range(m):
            if c in orbit or (prune and vcol[c] != vcol[b]):
                continue
            e = search(base[:level] + (c,))
            if e is not None:
                gens.append(e)
                orbit = set(LatticeAutGroup(n, m, tuple(gens), 0).orbit(b))
        order *= len(orbit)
    result = LatticeAutGroup(n, m, tuple(gens), order)
    if prune:
        p.__dict__["_aut_group"] = result
    return result


def orbit_data(p: LatticePolytope, g: LatticeAutGroup | None = None) -> OrbitData:
    """Vertex orbits and fixed-space dimension; both only need generators."""
    if g is None:
        g = automorphism_group(p)
    return _orbit_data(g)


def _orbit_data(g: LatticeAutGroup) -> OrbitData:
    seen: set[int] = set()
    orbits = []
    for i in range(g.n_vertices):
        if i not in seen:
            orb = g.orbit(i)
            seen.update(orb)
            orbits.append(tuple(orb))
    mats = [e.matrix for e in g.generators]
    k = la.fixed_space_dimension(mats) if mats else g.dim
    return OrbitData(tuple(orbits), len(orbits), k)


def is_fibre_like(p: LatticePolytope) -> bool:
    """Whether the smooth toric Fano variety of ``p`` is fibre-like.

    Uses the orbit criterion ``t - k == 1``; the criterion needs rigidity,
    which is only available for smooth inputs, so anything else is refused.
    """
    if not is_smooth(p):
        raise NotSmoothError("fibre-likeness via t - k needs a smooth (hence rigid) toric Fano; "
                             "use orbit_data for a non-conclusive diagnostic")
    return orbit_data(p).invariant_ns_dim == 1


def burnside_check(g: LatticeAutGroup, orbits: OrbitData | None = None) -> bool:
    """Cross-check orbit count and fixed-space dimension against character
    averages over the full element list."""
    data = orbits if orbits is not None else _orbit_data(g)
    elements = g.elements
    order = len(elements)
    if order != g.order:
        return False
    fixed = sum(sum(1 for i, j in enumerate(e.perm) if i == j) for e in elements)
    trace = sum(sum(e.matrix[i][i] for i in range(g.dim)) for e in elements)
    return Fraction(fixed, order) == data.t and Fraction(trace, order) == data.k
