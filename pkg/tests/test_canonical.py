from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_unimodular
from fanolattice import LatticePolytope, canonical_form
from fanolattice.catalog import del_pezzo_polytope, power, product, projective_space


def test_examples(p2, bl1p2):
    assert canonical_form(p2.transform([[1, 1], [0, 1]])) == canonical_form(p2)
    assert canonical_form(p2) != canonical_form(bl1p2)
    a = LatticePolytope([(1, 0), (0, 1), (-1, -1)])
    b = LatticePolytope([(0, 1), (1, 0), (-1, -1)])
    assert canonical_form(a) == canonical_form(b)


def test_form_is_a_representative(hexagon):
    f = canonical_form(hexagon)
    q = f.polytope()
    assert canonical_form(q) == f
    assert f.vertex_count == 6 and f.dim == 2
    assert len(f.key) == 20


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from(["p3", "p1p2", "v2p1", "p1cube"]))
def test_invariance_under_relabeling_and_basis_change(rnd, name):
    p = {"p3": projective_space(3), "p1p2": product(projective_space(1), projective_space(2)),
         "v2p1": product(del_pezzo_polytope(2), projective_space(1)),
         "p1cube": power(projective_space(1), 3)}[name]
    verts = list(p.vertices)
    rnd.shuffle(verts)
    q = LatticePolytope(verts).transform(random_unimodular(3, rnd))
    assert canonical_form(q) == canonical_form(p)


def test_distinct_forms_on_enumerated(smooth_polytopes):
    for d in (2, 3, 4):
        forms = [canonical_form(p) for p in smooth_polytopes[d]]
        assert len(set(forms)) == len(forms)
        assert len({f.key for f in forms}) == len(forms)
