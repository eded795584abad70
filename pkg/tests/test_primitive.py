from __future__ import annotations

from itertools import combinations

import pytest

from fanolattice import (
    primitive_collections,
    primitive_relation,
    primitive_relations,
    trivial_focus_collections,
)
from fanolattice.catalog import power, projective_space
from fanolattice.errors import NotSimplicialError, NotSmoothError
from fanolattice.primitive import orbit_partitions_vertices, violates_cone_condition
from fanolattice import LatticePolytope, automorphism_group, is_fibre_like


def colls(p):
    return [set(c.indices) for c in primitive_collections(p)]


def test_primitive_collections_examples(p2, square, bl1p2):
    assert colls(p2) == [{0, 1, 2}]
    pairs = {frozenset(c) for c in colls(square)}
    assert pairs == {frozenset({square.index((1, 0)), square.index((-1, 0))}),
                     frozenset({square.index((0, 1)), square.index((0, -1))})}
    assert {frozenset(c) for c in colls(bl1p2)} == {frozenset({0, 1}), frozenset({2, 3})}


def test_primitive_relation_examples(p2, bl1p2):
    r = primitive_relation(p2, (0, 1, 2))
    assert r.focus == () and r.degree == 3
    r = primitive_relation(bl1p2, (0, 1))
    assert r.focus == (3,) and r.coefficients == (1,) and r.degree == 1
    r = primitive_relation(bl1p2, (2, 3))
    assert r.focus == () and r.degree == 2


def test_trivial_focus(p2, bl1p2):
    assert [c.indices for c in trivial_focus_collections(p2)] == [(0, 1, 2)]
    assert [c.indices for c in trivial_focus_collections(bl1p2)] == [(2, 3)]
    assert len(trivial_focus_collections(power(projective_space(1), 3))) == 3


def test_non_simplicial_rejected():
    cube = LatticePolytope([(a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)])
    with pytest.raises(NotSimplicialError):
        primitive_collections(cube)


def test_singular_relation_rejected():
    # cone over (1,0),(-1,-2) has index 2, so 3 * (0, 1) is not an integral combination
    with pytest.raises(NotSmoothError):
        primitive_relations(LatticePolytope([(1, 0), (0, 1), (-1, -2)]))


def test_cone_condition(p2, bl1p2):
    assert not violates_cone_condition(bl1p2, (2, 3), (1, 1), (), ())
    assert not violates_cone_condition(p2, (0, 1, 2), (1, 1, 1), (), ())
    with pytest.raises(ValueError):
        violates_cone_condition(p2, (0, 1), (1, 1), (), ())


@pytest.mark.parametrize("d", [2, 3, 4])
def test_relations_on_enumerated(smooth_polytopes, d):
    for p in smooth_polytopes[d]:
        faces = p._facet_sets
        for r in primitive_relations(p):
            c = set(r.collection.indices)
            assert not any(c <= f for f in faces)
            assert all(any(set(sub) <= f for f in faces) for sub in combinations(c, len(c) - 1))
            lhs = [sum(p.vertices[i][k] for i in c) for k in range(d)]
            rhs = [sum(b * p.vertices[j][k] for j, b in zip(r.focus, r.coefficients)) for k in range(d)]
            assert lhs == rhs
            assert all(b > 0 for b in r.coefficients)
            assert r.degree == len(c) - sum(r.coefficients) > 0
            if r.focus:
                assert p.spans_face(r.focus)
        assert trivial_focus_collections(p)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_fibre_like_orbit_partition(smooth_polytopes, d):
    for p in smooth_polytopes[d]:
        if not is_fibre_like(p):
            continue
        g = automorphism_group(p)
        assert any(orbit_partitions_vertices(p, c, g) for c in trivial_focus_collections(p))
