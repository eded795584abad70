"""Face fan of a Fano polytope and the basic toric predicates."""
from __future__ import annotations

from dataclasses import dataclass

from . import exact_linalg as la
from .errors import NotSimplicialError
from .polytope import LatticePolytope, lattice_points


@dataclass(frozen=True)
class FaceFan:
    polytope: LatticePolytope
    max_cones: tuple[tuple[int, ...], ...]

    @property
    def rays(self):
        return self.polytope.vertices


@dataclass(frozen=True)
class ToricProfile:
    is_fano_polytope: bool
    is_simplicial: bool
    is_smooth: bool
    is_reflexive: bool
    is_terminal: bool
    picard_rank: int | None


def face_fan(p: LatticePolytope) -> FaceFan:
    return FaceFan(p, tuple(f.vertex_indices for f in p.facets))


def is_smooth(fan: FaceFan | LatticePolytope) -> bool:
    if isinstance(fan, LatticePolytope):
        fan = face_fan(fan)
    p = fan.polytope
    for cone in fan.max_cones:
        if len(cone) != p.dim:
            return False
        if not la.is_unimodular([p.vertices[i] for i in cone]):
            return False
    return True


def is_reflexive(p: LatticePolytope) -> bool:
    return all(f.offset == 1 for f in p.facets)


def is_terminal(p: LatticePolytope) -> bool:
    allowed = set(p.vertices)
    allowed.add((0,) * p.dim)
    pts = lattice_points(p)
    return len(pts) == len(allowed) and set(pts) == allowed


def picard_rank(p: LatticePolytope) -> int:
    if not p.is_simplicial:
        raise NotSimplicialError("Picard rank is only computed for simplicial (Q-factorial) fans")
    return len(p.vertices) - p.dim


def toric_profile(p: LatticePolytope) -> ToricProfile:
    simplicial = p.is_simplicial
    return ToricProfile(
        is_fano_polytope=True,
        is_simplicial=simplicial,
        is_smooth=is_smooth(p),
        is_reflexive=is_reflexive(p),
        is_terminal=is_terminal(p),
        picard_rank=picard_rank(p) if simplicial else None,
    )
