"""Full-dimensional lattice polytopes with the origin in the interior."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import factorial
from typing import Iterable, Sequence

from . import exact_linalg as la
from .errors import (
    DegeneratePolytopeError,
    DimensionMismatchError,
    DuplicateVertexError,
    NonPrimitiveVertexError,
    NotAVertexError,
    NotSimplicialError,
    OriginNotInteriorError,
    PolytopeError,
)


@dataclass(frozen=True)
class Facet:
    """A facet ``{x : <normal, x> = offset}`` with ``<normal, x> <= offset``
    on the whole polytope.  ``normal`` is a primitive integer vector."""

    vertex_indices: tuple[int, ...]
    normal: tuple[int, ...]
    offset: Fraction


# Facet enumeration on raw integer point lists.  A working facet is a triple
# (contact index set, primitive integer normal a, integer offset c) meaning
# <a, x> <= c with equality exactly on the contact set.


def _affine_rank(points: Sequence[Sequence[int]]) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return la.rank([[x - y for x, y in zip(p, p0)] for p in points[1:]])


def _facets_exhaustive(points: Sequence[Sequence[int]]) -> list[tuple[frozenset, tuple, int]]:
    n = len(points[0])
    found: dict[frozenset, tuple[frozenset, tuple, int]] = {}
    for subset in combinations(range(len(points)), n):
        base = points[subset[0]]
        diffs = [[x - y for x, y in zip(points[i], base)] for i in subset[1:]]
        if n > 1 and la.rank(diffs) < n - 1:
            continue
        a = la.integer_kernel_vector(diffs) if n > 1 else (1,)
        c = la.dot(a, base)
        vals = [la.dot(a, p) for p in points]
        if all(v <= c for v in vals):
            pass
        elif all(v >= c for v in vals):
            a = tuple(-x for x in a)
            c = -c
            vals = [-v for v in vals]
        else:
            continue
        contact = frozenset(i for i, v in enumerate(vals) if v == c)
        found.setdefault(contact, (contact, a, c))
    return list(found.values())


def _rotate(points, a, c, g):
    """Tilt the supporting hyperplane ``<a,x> <= c`` about its contact set.

    ``g`` must vanish on the contact set.  The origin is assumed interior
    (``c > 0``).  Returns the new (contact, a, c).
    """
    best = None
    for p in points:
        gp = la.dot(g, p)
        if gp > 0:
            s = Fraction(c - la.dot(a, p), c * gp)
            if best is None or s < best:
                best = s
    if best is None:
        raise OriginNotInteriorError("origin is not in the interior of the convex hull")
    num, den = best.numerator, best.denominator
    new = la.primitive_part([x * den + c * num * y for x, y in zip(a, g)])
    vals = [la.dot(new, p) for p in points]
    c_new = max(vals)
    contact = frozenset(i for i, v in enumerate(vals) if v == c_new)
    return contact, new, c_new


def _initial_facet(points):
    n = len(points[0])
    a = (1,) + (0,) * (n - 1)
    vals = [p[0] for p in points]
    c = max(vals)
    if c <= 0:
        raise OriginNotInteriorError("origin is not in the interior of the convex hull")
    contact = frozenset(i for i, v in enumerate(vals) if v == c)
    while la.rank([points[i] for i in contact]) < n:
        ker = la.nullspace([points[i] for i in sorted(contact)])
        g = ker[0]
        den = 1
        for x in g:
            den = den * x.denominator // _gcd(den, x.denominator)
        g = la.primitive_part([int(x * den) for x in g])
        contact, a, c = _rotate(points, a, c, g)
    return contact, a, c


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _ridges(points, contact, a):
    """Yield (ridge index set, g) with g vanishing on the ridge and negative
    on the rest of the facet."""
    n = len(points[0])
    idx = sorted(contact)
    if len(idx) == n:
        d, inv = la.scaled_inverse([list(col) for col in zip(*(points[i] for i in idx))])
        sgn = 1 if d > 0 else -1
        for k in range(n):
            g = tuple(-sgn * x for x in inv[k])
            yield frozenset(idx[:k] + idx[k + 1:]), la.primitive_part(g)
        return
    seen = set()
    for sub in combinations(idx, n - 1):
        rows = [points[i] for i in sub]
        if la.rank(rows) < n - 1:
            continue
        g = la.integer_kernel_vector(rows)
        vals = {i: la.dot(g, points[i]) for i in idx}
        if all(v <= 0 for v in vals.values()):
            pass
        elif all(v >= 0 for v in vals.values()):
            g = tuple(-x for x in g)
        else:
            continue
        ridge = frozenset(i for i in idx if vals[i] == 0)
        if ridge not in seen:
            seen.add(ridge)
            yield ridge, g


def _facets_giftwrap(points):
    """Facets of conv(points) by pivoting across ridges.  Requires the
    origin strictly inside."""
    first = _initial_facet(points)
    found = {first[0]: first}
    queue = [first]
    while queue:
        contact, a, c = queue.pop()
        for ridge, g in _ridges(points, contact, a):
            nxt = _rotate(points, a, c, g)
            if nxt[0] not in found:
                found[nxt[0]] = nxt
                queue.append(nxt)
    return list(found.values())


def compute_facets(points: Sequence[Sequence[int]], method: str | None = None) -> list[Facet]:
    """Facets of the convex hull of integer points.

    The hull must be full-dimensional.  ``method`` is ``"exhaustive"`` or
    ``"giftwrap"``; by default exhaustive search is used up to dimension 3.
    The origin need not be interior: pivoting works around an interior
    point obtained from the vertex average.
    """
    points = [tuple(p) for p in points]
    n = len(points[0])
    m = len(points)
    if m < n + 1 or _affine_rank(points) < n:
        raise DegeneratePolytopeError("points do not span a full-dimensional polytope")
    if method is None:
        method = "exhaustive" if n <= 3 else "giftwrap"
    if method == "exhaustive":
        raw = _facets_exhaustive(points)
        result = [(contact, a, c) for contact, a, c in raw]
    elif method == "giftwrap":
        total = [sum(col) for col in zip(*points)]
        shifted = [tuple(m * x - s for x, s in zip(p, total)) for p in points]
        raw = _facets_giftwrap(shifted)
        result = [(contact, a, la.dot(a, points[min(contact)])) for contact, a, _ in raw]
    else:
        raise ValueError(f"unknown facet method {method!r}")
    facets = [Facet(tuple(sorted(contact)), tuple(a), Fraction(c)) for contact, a, c in result]
    facets.sort(key=lambda f: f.vertex_indices)
    return facets


@dataclass(frozen=True)
class RationalPolytope:
    dim: int
    vertices: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        verts = tuple(tuple(Fraction(x) for x in v) for v in self.vertices)
        if len(set(verts)) != len(verts):
            raise DuplicateVertexError("duplicate vertices")
        object.__setattr__(self, "vertices", verts)

    def _scaled(self) -> tuple[int, list[tuple[int, ...]]]:
        den = 1
        for v in self.vertices:
            for x in v:
                den = den * x.denominator // _gcd(den, x.denominator)
        return den, [tuple(int(x * den) for x in v) for v in self.vertices]

    def facets(self) -> list[Facet]:
        _, pts = self._scaled()
        return compute_facets(pts)

    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    def polar_dual(self) -> "RationalPolytope":
        den, pts = self._scaled()
        verts = []
        for f in compute_facets(pts):
            if f.offset <= 0:
                raise OriginNotInteriorError("origin is not interior")
            verts.append(tuple(Fraction(den * x) / f.offset for x in f.normal))
        return RationalPolytope(self.dim, tuple(verts))

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)


class LatticePolytope:
    """Convex hull of primitive lattice vectors with the origin inside.

    Vertex order is preserved as given; every other index-based object in
    the package refers to it.
    """

    def __init__(self, vertices: Iterable[Sequence[int]], *, facet_method: str | None = None):
        verts = tuple(tuple(int(x) for x in v) for v in vertices)
        if not verts:
            raise PolytopeError("no vertices")
        n = len(verts[0])
        if n == 0:
            raise DimensionMismatchError("vertices must have positive length")
        for i, v in enumerate(verts):
            if len(v) != n:
                raise DimensionMismatchError(f"vertex {i} has length {len(v)}, expected {n}", index=i)
        seen: dict[tuple, int] = {}
        for i, v in enumerate(verts):
            if v in seen:
                raise DuplicateVertexError(f"vertex {i} duplicates vertex {seen[v]}", index=i)
            seen[v] = i
            if not la.is_primitive(v):
                raise NonPrimitiveVertexError(f"vertex {i} = {v} is not primitive", index=i)
        self.dim = n
        self.vertices = verts
        self._facet_method = facet_method
        self._index = seen
        facets = self.facets  # validates full dimension and interior origin
        for f in facets:
            if f.offset <= 0:
                raise OriginNotInteriorError("origin is not in the interior")
        on = [[] for _ in verts]
        for f in facets:
            for i in f.vertex_indices:
                on[i].append(f.normal)
        for i, normals in enumerate(on):
            if len(normals) < n or la.rank(normals) < n:
                raise NotAVertexError(f"point {i} = {verts[i]} is not a vertex", index=i)

    @classmethod
    def _trusted(cls, vertices, facets: list[Facet]) -> "LatticePolytope":
        """Build from vertices whose facet list is already known and valid."""
        self = object.__new__(cls)
        self.vertices = tuple(tuple(v) for v in vertices)
        self.dim = len(self.vertices[0])
        self._facet_method = None
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self.__dict__["facets"] = facets
        return self

    def __repr__(self):
        return f"LatticePolytope({[list(v) for v in self.vertices]})"

    def __eq__(self, other):
        return isinstance(other, LatticePolytope) and set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash(frozenset(self.vertices))

    def __len__(self):
        return len(self.vertices)

    def index(self, v: Sequence[int]) -> int:
        return self._index[tuple(v)]

    @cached_property
    def facets(self) -> list[Facet]:
        return compute_facets(self.vertices, self._facet_method)

    @cached_property
    def is_simplicial(self) -> bool:
        return all(len(f.vertex_indices) == self.dim for f in self.facets)

    @cached_property
    def _facet_sets(self) -> list[frozenset]:
        return [frozenset(f.vertex_indices) for f in self.facets]

    def spans_face(self, indices: Iterable[int]) -> bool:
        """Whether the vertices span a cone of the face fan (simplicial only)."""
        if not self.is_simplicial:
            raise NotSimplicialError("spans_face is only defined for simplicial polytopes")
        s = frozenset(indices)
        return any(s <= f for f in self._facet_sets)

    def transform(self, w: Sequence[Sequence[int]]) -> "LatticePolytope":
        """Image under an integer matrix acting on column vectors."""
        return LatticePolytope([la.matvec(w, v) for v in self.vertices])

    def pairing_matrix(self) -> list[list[int]]:
        """Entry [i][j] is <normal_j, vertex_i>."""
        return [[la.dot(f.normal, v) for f in self.facets] for v in self.vertices]


def facets(p: LatticePolytope) -> list[Facet]:
    return p.facets


def spans_face(p: LatticePolytope, indices: Iterable[int]) -> bool:
    return p.spans_face(indices)


def polar_dual(p: LatticePolytope) -> RationalPolytope:
    return RationalPolytope(p.dim, tuple(
        tuple(Fraction(x) / f.offset for x in f.normal) for f in p.facets))


def vertex_sum(p: LatticePolytope) -> tuple[int, ...]:
    return tuple(sum(col) for col in zip(*p.vertices))


def lattice_points(p: LatticePolytope) -> list[tuple[int, ...]]:
    """All lattice points of ``p``, sorted.

    Scans the bounding box coordinate by coordinate and prunes a prefix as
    soon as some facet inequality cannot be met by any completion.
    """
    n = p.dim
    lo = [min(v[i] for v in p.vertices) for i in range(n)]
    hi = [max(v[i] for v in p.vertices) for i in range(n)]
    ineqs = [(f.normal, f.offset) for f in p.facets]
    # tail_min[k][j]: least value of sum_{i>=k} a_i x_i over the box
    tail_min = []
    for a, _ in ineqs:
        t = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            t[i] = t[i + 1] + min(a[i] * lo[i], a[i] * hi[i])
        tail_min.append(t)
    out = []
    x = [0] * n
    partial = [0] * len(ineqs)

    def rec(k):
        if k == n:
            out.append(tuple(x))
            return
        for val in range(lo[k], hi[k] + 1):
            ok = True
            for j, (a, c) in enumerate(ineqs):
                if partial[j] + a[k] * val + tail_min[j][k + 1] > c:
                    ok = False
                    break
            if not ok:
                continue
            x[k] = val
            for j, (a, _) in enumerate(ineqs):
                partial[j] += a[k] * val
            rec(k + 1)
            for j, (a, _) in enumerate(ineqs):
                partial[j] -= a[k] * val

    rec(0)
    return out


def _face_triangulation(p: LatticePolytope, face: frozenset, k: int, pick) -> list[frozenset]:
    """Pulling triangulation of a k-dimensional face given by vertex set."""
    if len(face) == k + 1:
        return [face]
    apex = pick(face)
    subfaces = set()
    for f in p._facet_sets:
        s = face & f
        if s != face and len(s) >= k and apex not in s:
            subfaces.add(s)
    simplices = []
    for s in subfaces:
        if _affine_rank([p.vertices[i] for i in sorted(s)]) != k - 1:
            continue
        for t in _face_triangulation(p, s, k - 1, pick):
            simplices.append(t | {apex})
    return simplices


def triangulate_boundary(p: LatticePolytope, apex: str = "min") -> list[frozenset]:
    """Triangulate every facet into (dim-1)-simplices, as vertex index sets.

    Non-simplicial facets are split by pulling from their least (or
    greatest, with ``apex="max"``) vertex index, recursively over faces.
    """
    pick = min if apex == "min" else max
    out = []
    for f in p._facet_sets:
        out.extend(_face_triangulation(p, f, p.dim - 1, pick))
    return out


def volume(p: LatticePolytope) -> Fraction:
    n = p.dim
    total = 0
    for s in triangulate_boundary(p):
        total += abs(la.determinant([p.vertices[i] for i in sorted(s)]))
    return Fraction(total, factorial(n))


def centroid(p: LatticePolytope, apex: str = "min") -> tuple[Fraction, ...]:
    """Exact volume barycentre, by coning a boundary triangulation to 0."""
    n = p.dim
    weight = 0
    acc = [0] * n
    for s in triangulate_boundary(p, apex):
        pts = [p.vertices[i] for i in sorted(s)]
        w = abs(la.determinant(pts))
        weight += w
        for i in range(n):
            acc[i] += w * sum(v[i] for v in pts)
    return tuple(Fraction(x, weight * (n + 1)) for x in acc)
