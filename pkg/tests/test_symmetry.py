from __future__ import annotations

from itertools import combinations
from itertools import product as cartesian

import pytest

from conftest import random_unimodular
from fanolattice import automorphism_group, burnside_check, is_fibre_like, orbit_data, vertex_sum
from fanolattice import exact_linalg as la
from fanolattice.catalog import del_pezzo_polytope, power, product, projective_space, weighted_projective
from fanolattice.errors import NotSmoothError
from fanolattice.symmetry import trivial_group, vertex_fingerprint


def brute_force_aut_order(p, r=3):
    """Count 2x2 integer matrices with entries in [-r, r] permuting V."""
    verts = set(p.vertices)
    count = 0
    for a, b, c, d in cartesian(range(-r, r + 1), repeat=4):
        if abs(a * d - b * c) != 1:
            continue
        if all((a * x + b * y, c * x + d * y) in verts for x, y in verts):
            count += 1
    return count


def test_aut_orders(p2, hexagon, square, bl1p2):
    assert automorphism_group(p2).order == 6
    assert automorphism_group(hexagon).order == 12
    assert automorphism_group(square).order == 8
    assert not any(e.matrix == ((-1, 0), (0, -1)) for e in automorphism_group(p2).elements)
    for p in (p2, hexagon, square, bl1p2):
        assert automorphism_group(p).order == brute_force_aut_order(p)


def test_group_elements_valid(hexagon):
    g = automorphism_group(hexagon)
    assert g.is_closed()
    assert any(e.perm == tuple(range(6)) for e in g.elements)
    for e in g.elements:
        assert la.is_unimodular(e.matrix)
        for i, v in enumerate(hexagon.vertices):
            assert la.matvec(e.matrix, v) == hexagon.vertices[e.perm[i]]


def test_fingerprints(p2, bl1p2, rng):
    assert len({vertex_fingerprint(p2, i) for i in range(3)}) == 1
    assert vertex_fingerprint(bl1p2, 3) != vertex_fingerprint(bl1p2, 2)
    p = power(projective_space(2), 2)
    q = p.transform(random_unimodular(4, rng))
    assert sorted(vertex_fingerprint(p, i) for i in range(6)) == sorted(vertex_fingerprint(q, i) for i in range(6))


def test_orbit_data_examples(p2, bl1p2):
    d = orbit_data(p2)
    assert (d.t, d.k, d.invariant_ns_dim) == (1, 0, 1)
    d = orbit_data(bl1p2)
    assert (d.t, d.k, d.invariant_ns_dim) == (3, 1, 2)
    d = orbit_data(p2, trivial_group(p2))
    assert (d.t, d.k, d.invariant_ns_dim) == (3, 2, 1)


def test_is_fibre_like_examples(p2, hexagon, bl1p2):
    assert is_fibre_like(p2)
    assert is_fibre_like(hexagon)
    assert not is_fibre_like(bl1p2)
    with pytest.raises(NotSmoothError):
        is_fibre_like(weighted_projective((1, 1, 1, 1, 2)))
    # the raw diagnostic is still available
    assert orbit_data(weighted_projective((1, 1, 1, 1, 2))).t >= 1


def test_burnside(p2, hexagon):
    assert burnside_check(trivial_group(p2))
    assert orbit_data(p2, trivial_group(p2)).t == 3
    assert burnside_check(automorphism_group(p2))
    assert burnside_check(automorphism_group(hexagon))


@pytest.mark.parametrize("d", [2, 3])
def test_pruning_is_lossless(smooth_polytopes, d):
    for p in smooth_polytopes[d]:
        a = {e.matrix for e in automorphism_group(p).elements}
        b = {e.matrix for e in automorphism_group(p, prune=False).elements}
        assert a == b


@pytest.mark.parametrize("d", [2, 3, 4])
def test_orbit_invariants(smooth_polytopes, d):
    for p in smooth_polytopes[d]:
        g = automorphism_group(p)
        data = orbit_data(p, g)
        assert data.t - data.k >= 1
        assert burnside_check(g, data)
        if data.invariant_ns_dim == 1:
            assert not any(vertex_sum(p))
            # any k orbits lie on a common proper face
            for chosen in combinations(data.orbits, data.k):
                support = set().union(*chosen) if chosen else set()
                assert any(support <= f for f in p._facet_sets)


def test_fibre_like_basis_invariant(rng):
    for p in (del_pezzo_polytope(2), product(projective_space(1), projective_space(2)), power(projective_space(1), 3)):
        expected = is_fibre_like(p)
        for _ in range(3):
            assert is_fibre_like(p.transform(random_unimodular(p.dim, rng))) == expected


def test_dual_action_has_same_invariants():
    # k from inverse-transpose matrices equals k from the action on N
    g = automorphism_group(power(projective_space(2), 2))
    duals = [la.transpose(la.integer_inverse(e.matrix)) for e in g.elements]
    assert la.fixed_space_dimension(duals) == la.fixed_space_dimension(g.matrices())
    trace = lambda m: sum(m[i][i] for i in range(len(m)))  # noqa: E731
    assert sum(map(trace, duals)) == sum(map(trace, g.matrices()))


@pytest.mark.parametrize("factor, k, expected", [
    (projective_space(1), 8, 2**8 * 40320),  # hyperoctahedral group
    (projective_space(2), 4, 6**4 * 24),  # S3 wreath S4
    (del_pezzo_polytope(2), 3, 12**3 * 6),
])
def test_wreath_product_orders(factor, k, expected):
    g = automorphism_group(power(factor, k))
    assert g.order == expected
    assert len(g.generators) < 20
