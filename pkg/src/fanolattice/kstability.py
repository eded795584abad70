"""Barycentre test for K-stability and the fibre-like => barycentre 0 check."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .polytope import LatticePolytope, centroid
from .symmetry import is_fibre_like
from .toric import is_reflexive

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KStabilityVerdict:
    barycentre: tuple[Fraction, ...]
    is_zero: bool
    applicable: bool  # the criterion is only a theorem for reflexive input

    @property
    def k_stable(self) -> bool | None:
        """True/False for reflexive input, None when the test does not apply."""
        return self.is_zero if self.applicable else None


def k_stability(p: LatticePolytope) -> KStabilityVerdict:
    c = centroid(p)
    return KStabilityVerdict(c, all(x == 0 for x in c), is_reflexive(p))


def main_theorem_check(p: LatticePolytope) -> bool:
    """``not fibre_like or centroid == 0`` for a smooth Fano polytope.

    A ``False`` return would be a counterexample, so it is logged together
    with the full vertex list.
    """
    if not is_fibre_like(p):
        return True
    c = centroid(p)
    if all(x == 0 for x in c):
        return True
    logger.error("fibre-like polytope with nonzero barycentre %s: vertices %s",
                 [str(x) for x in c], list(p.vertices))
    return False
