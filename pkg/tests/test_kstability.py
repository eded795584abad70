from __future__ import annotations

from fractions import Fraction

import pytest

from fanolattice import automorphism_group, centroid, k_stability, main_theorem_check, orbit_data
from fanolattice import exact_linalg as la
from fanolattice.catalog import power, product, projective_space, weighted_projective


def test_verdicts(p2, bl1p2):
    v = k_stability(p2)
    assert v.barycentre == (0, 0) and v.is_zero and v.k_stable is True
    v = k_stability(bl1p2)
    assert v.barycentre == (Fraction(1, 6), Fraction(1, 6))
    assert v.k_stable is False


def test_weighted_projective_not_k_stable():
    v = k_stability(weighted_projective((1, 1, 1, 1, 2)))
    assert v.applicable and not v.is_zero and v.k_stable is False


def test_non_reflexive_not_applicable():
    from fanolattice import LatticePolytope

    v = k_stability(LatticePolytope([(1, 0), (0, 1), (-1, -3)]))
    assert not v.applicable and v.k_stable is None


def test_main_theorem_examples(bl1p2):
    assert main_theorem_check(power(projective_space(1), 4))
    assert centroid(power(projective_space(1), 4)) == (0,) * 4
    assert main_theorem_check(bl1p2)


def test_converse_fails_for_p1_x_p2():
    p = product(projective_space(1), projective_space(2))
    assert k_stability(p).k_stable is True
    d = orbit_data(p)
    assert (d.t, d.k) == (2, 0)
    assert d.invariant_ns_dim == 2


@pytest.mark.parametrize("d", [2, 3, 4])
def test_main_theorem_on_enumerated(smooth_polytopes, d):
    for p in smooth_polytopes[d]:
        assert main_theorem_check(p)
        g = automorphism_group(p)
        if la.fixed_space_dimension(g.matrices()) == 0:
            assert not any(centroid(p))  # the centroid is a fixed point
