"""Constructors for the named smooth Fano polytopes and a few singular ones."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Sequence

from . import exact_linalg as la
from .polytope import LatticePolytope


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: tuple
    polytope: LatticePolytope


def _unit(n: int, i: int, sign: int = 1) -> tuple[int, ...]:
    return tuple(sign if j == i else 0 for j in range(n))


def projective_space(n: int) -> LatticePolytope:
    if n < 1:
        raise ValueError("projective space needs n >= 1")
    verts = [_unit(n, i) for i in range(n)]
    verts.append(tuple([-1] * n))
    return LatticePolytope(verts)


def product(p: LatticePolytope, q: LatticePolytope) -> LatticePolytope:
    """Polytope whose face fan is the product fan: V(p) + 0 and 0 + V(q)."""
    a, b = p.dim, q.dim
    verts = [tuple(v) + (0,) * b for v in p.vertices]
    verts += [(0,) * a + tuple(w) for w in q.vertices]
    return LatticePolytope(verts)


def power(p: LatticePolytope, k: int) -> LatticePolytope:
    if k < 1:
        raise ValueError("power needs k >= 1")
    out = p
    for _ in range(k - 1):
        out = product(out, p)
    return out


def del_pezzo_polytope(d: int) -> LatticePolytope:
    """conv(+-e_i, +-(e_1 + ... + e_d)) for even d."""
    if d < 2 or d % 2:
        raise ValueError("del Pezzo polytopes V_d need an even d >= 2")
    verts = [_unit(d, i) for i in range(d)] + [_unit(d, i, -1) for i in range(d)]
    verts += [tuple([1] * d), tuple([-1] * d)]
    return LatticePolytope(verts)


def weighted_projective(weights: Sequence[int]) -> LatticePolytope:
    """Fan polytope of P(q_0, ..., q_n).

    The rays are the images of the standard basis of Z^{n+1} in the
    quotient lattice Z^{n+1} / Z q.  A unimodular U with U q = (1, 0..0)
    gives coordinates on the quotient through its last n rows; a final
    Hermite reduction fixes the basis.
    """
    q = [int(x) for x in weights]
    if len(q) < 2 or any(x <= 0 for x in q):
        raise ValueError("weights must be at least two positive integers")
    n = len(q) - 1
    for sub in combinations(range(len(q)), n):
        g = 0
        for i in sub:
            g = gcd(g, q[i])
        if g != 1:
            raise ValueError(f"weights {tuple(q)} are not well formed")
    _, u = la.hermite_normal_form([[x] for x in q])
    proj = u[1:]
    rays = [list(col) for col in zip(*proj)]  # rays[i] = image of e_i
    h, _ = la.hermite_normal_form([list(c) for c in zip(*rays)])
    return LatticePolytope([tuple(c) for c in zip(*h)])


def _power_name(base: str, k: int) -> str:
    if k == 1:
        return base
    if k == 2 and base != "P^1":
        return f"{base} x {base}"
    return f"({base})^{k}"


def catalog_entries(dim: int) -> list[CatalogEntry]:
    """Named smooth Fano polytopes of dimension ``dim``: powers of projective
    spaces and of del Pezzo polytopes."""
    out = []
    for m in range(1, dim + 1):
        if dim % m:
            continue
        k = dim // m
        out.append(CatalogEntry(_power_name(f"P^{m}", k), ("P", m, k), power(projective_space(m), k)))
        if m % 2 == 0:
            out.append(CatalogEntry(_power_name(f"V_{m}", k), ("V", m, k), power(del_pezzo_polytope(m), k)))
    return out


#: Fibre-like classes without a classical construction, keyed by
#: (dimension, vertex count).  Used only to label otherwise unnamed rows.
UNNAMED_FIBRE_LIKE = {(6, 12): "W_1", (8, 15): "W_2", (8, 12): "W_3"}
