"""Independent reference computations used by several test modules."""
from __future__ import annotations

import math
from math import gcd


def _det(u, v):
    return u[0] * v[1] - u[1] * v[0]


def smooth_fano_polygons(r: int = 3) -> list[list[tuple[int, int]]]:
    """Every smooth Fano polygon with vertices in [-r, r]^2, as a
    counterclockwise vertex cycle starting at the vertex of least angle.

    Consecutive vertices must form a lattice basis (det = 1) and every
    vertex must be a strict corner, i.e. ``v_{i-1} + v_{i+1} = a_i v_i``
    with ``a_i <= 1``.
    """
    pts = [(x, y) for x in range(-r, r + 1) for y in range(-r, r + 1) if gcd(x, y) == 1]
    ang = {p: math.atan2(p[1], p[0]) % (2 * math.pi) for p in pts}
    out = []

    def extend(cycle):
        last = cycle[-1]
        for w in pts:
            if _det(last, w) != 1:
                continue
            if w == cycle[0]:
                if len(cycle) >= 3 and _corners_ok(cycle):
                    out.append(list(cycle))
                continue
            if ang[w] <= ang[last]:
                continue
            if len(cycle) >= 2 and not _corner(cycle[-2], last, w):
                continue
            cycle.append(w)
            extend(cycle)
            cycle.pop()

    for v in pts:
        extend([v])
    return out


def self_intersections(cycle) -> list[int]:
    m = len(cycle)
    out = []
    for i in range(m):
        a, v, b = cycle[i - 1], cycle[i], cycle[(i + 1) % m]
        s = (a[0] + b[0], a[1] + b[1])
        k = s[0] // v[0] if v[0] else s[1] // v[1]
        assert (k * v[0], k * v[1]) == s
        out.append(k)
    return out


def _corner(a, v, b) -> bool:
    s = (a[0] + b[0], a[1] + b[1])
    k = s[0] // v[0] if v[0] else s[1] // v[1]
    return (k * v[0], k * v[1]) == s and k <= 1


def _corners_ok(cycle) -> bool:
    return all(a <= 1 for a in self_intersections(cycle))


def cyclic_class(cycle) -> tuple[int, ...]:
    """The cyclic sequence of self-intersection numbers up to rotation and
    reflection: a complete invariant of smooth complete plane fans."""
    seq = self_intersections(cycle)
    variants = []
    for s in (seq, seq[::-1]):
        for i in range(len(s)):
            variants.append(tuple(s[i:] + s[:i]))
    return min(variants)
