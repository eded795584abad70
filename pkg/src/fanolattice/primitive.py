"""Primitive collections and primitive relations of a simplicial face fan."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from . import exact_linalg as la
from .errors import InvariantViolation, NotSimplicialError, NotSmoothError
from .polytope import LatticePolytope


@dataclass(frozen=True)
class PrimitiveCollection:
    indices: tuple[int, ...]

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)


@dataclass(frozen=True)
class PrimitiveRelation:
    collection: PrimitiveCollection
    focus: tuple[int, ...]
    coefficients: tuple[int, ...]
    degree: int

    @property
    def length(self) -> int:
        return len(self.collection)


def _require_simplicial(p: LatticePolytope) -> None:
    if not p.is_simplicial:
        raise NotSimplicialError("primitive collections need a simplicial fan")


def _faces(p: LatticePolytope) -> set[frozenset]:
    faces: set[frozenset] = set()
    for f in p._facet_sets:
        items = sorted(f)
        for k in range(len(items) + 1):
            for sub in combinations(items, k):
                faces.add(frozenset(sub))
    return faces


def primitive_collections(p: LatticePolytope) -> list[PrimitiveCollection]:
    """Minimal vertex sets that span no cone, sorted."""
    _require_simplicial(p)
    faces = _faces(p)
    found: set[frozenset] = set()
    m = len(p.vertices)
    for s in faces:
        for v in range(m):
            if v in s:
                continue
            t = s | {v}
            if t in faces or t in found:
                continue
            if all(t - {x} in faces for x in t):
                found.add(t)
    return sorted((PrimitiveCollection(tuple(sorted(t))) for t in found),
                  key=lambda c: (len(c.indices), c.indices))


def _facet_inverses(p: LatticePolytope):
    cache = p.__dict__.get("_facet_inverse_cache")
    if cache is None:
        cache = []
        for f in p.facets:
            cols = [list(r) for r in zip(*(p.vertices[i] for i in f.vertex_indices))]
            cache.append((f.vertex_indices, la.scaled_inverse(cols)))
        p.__dict__["_facet_inverse_cache"] = cache
    return cache


def primitive_relation(p: LatticePolytope, c: PrimitiveCollection | Sequence[int]) -> PrimitiveRelation:
    """Express the vertex sum of ``c`` in the minimal cone containing it."""
    _require_simplicial(p)
    if not isinstance(c, PrimitiveCollection):
        c = PrimitiveCollection(tuple(sorted(c)))
    s = [sum(p.vertices[i][k] for i in c) for k in range(p.dim)]
    if not any(s):
        return PrimitiveRelation(c, (), (), len(c))
    for verts, (d, inv) in _facet_inverses(p):
        coords = [la.dot(row, s) for row in inv]
        if d < 0:
            coords = [-x for x in coords]
        if any(x < 0 for x in coords):
            continue
        ad = abs(d)
        if any(x % ad for x in coords):
            raise NotSmoothError(
                f"relation coefficients for {c.indices} are not integral; input is not smooth")
        focus, coeffs = [], []
        for i, x in zip(verts, coords):
            if x:
                focus.append(i)
                coeffs.append(x // ad)
        order = sorted(range(len(focus)), key=focus.__getitem__)
        focus = tuple(focus[i] for i in order)
        coeffs = tuple(coeffs[i] for i in order)
        return PrimitiveRelation(c, focus, coeffs, len(c) - sum(coeffs))
    raise InvariantViolation(f"vertex sum {s} lies in no maximal cone; fan is not complete", p)


def primitive_relations(p: LatticePolytope) -> list[PrimitiveRelation]:
    return [primitive_relation(p, c) for c in primitive_collections(p)]


def trivial_focus_collections(p: LatticePolytope) -> list[PrimitiveCollection]:
    """Primitive collections whose vertices sum to zero.

    A smooth Fano polytope always has at least one; an empty answer is
    raised as an :class:`InvariantViolation`.
    """
    out = [r.collection for r in primitive_relations(p) if not r.focus]
    if not out:
        raise InvariantViolation("no primitive collection with trivial focus", p)
    return out


def violates_cone_condition(p: LatticePolytope, lhs: Sequence[int], lhs_coeffs: Sequence[int],
                            rhs: Sequence[int], rhs_coeffs: Sequence[int]) -> bool:
    """Whether ``lhs`` spans a cone although it appears in a relation
    ``sum a_i x_i = sum b_j y_j`` with positive integers and
    ``sum a_i >= sum b_j``.  For a valid Fano fan this never happens, so a
    ``True`` answer flags a contradiction."""
    if len(lhs) != len(lhs_coeffs) or len(rhs) != len(rhs_coeffs):
        raise ValueError("index and coefficient lists differ in length")
    if any(a <= 0 for a in lhs_coeffs) or any(b <= 0 for b in rhs_coeffs):
        raise ValueError("coefficients must be positive integers")
    if sum(lhs_coeffs) < sum(rhs_coeffs):
        raise ValueError("need sum of left coefficients >= sum of right coefficients")
    left = [sum(a * p.vertices[i][k] for i, a in zip(lhs, lhs_coeffs)) for k in range(p.dim)]
    right = [sum(b * p.vertices[j][k] for j, b in zip(rhs, rhs_coeffs)) for k in range(p.dim)]
    if left != right:
        raise ValueError(f"relation does not hold: {left} != {right}")
    return p.spans_face(lhs)


def collection_orbit(p: LatticePolytope, c: PrimitiveCollection, group) -> list[PrimitiveCollection]:
    """Distinct images of ``c`` under a group of vertex permutations
    (anything with ``generators`` carrying ``perm``), sorted."""
    start = tuple(sorted(c))
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for s in group.generators:
            y = tuple(sorted(s.perm[i] for i in x))
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return [PrimitiveCollection(t) for t in sorted(seen)]


def orbit_partitions_vertices(p: LatticePolytope, c: PrimitiveCollection, group) -> bool:
    """Whether the images of ``c`` are pairwise disjoint and cover every
    vertex."""
    orbit = collection_orbit(p, c, group)
    seen: set[int] = set()
    for img in orbit:
        if seen & set(img.indices):
            return False
        seen |= set(img.indices)
    return len(seen) == len(p.vertices)
