from __future__ import annotations

import pytest

from fanolattice import canonical_form, is_fibre_like, is_reflexive, is_smooth, is_terminal, picard_rank
from fanolattice.catalog import (
    catalog_entries,
    del_pezzo_polytope,
    power,
    product,
    projective_space,
    weighted_projective,
)
from fanolattice.polytope import centroid
from fanolattice.symmetry import orbit_data


def test_projective_space():
    p = projective_space(2)
    assert is_smooth(p) and picard_rank(p) == 1 and is_fibre_like(p)
    p4 = projective_space(4)
    assert len(p4.vertices) == 5 and is_fibre_like(p4)
    assert projective_space(1).vertices == ((1,), (-1,))
    with pytest.raises(ValueError):
        projective_space(0)


def test_product():
    p1 = projective_space(1)
    assert set(product(p1, p1).vertices) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    p22 = product(projective_space(2), projective_space(2))
    assert p22.dim == 4 and len(p22.vertices) == 6 and is_fibre_like(p22)
    p12 = product(p1, projective_space(2))
    assert len(p12.vertices) == 5 and not any(centroid(p12)) and not is_fibre_like(p12)


def test_product_commutes_up_to_equivalence():
    a, b = projective_space(1), del_pezzo_polytope(2)
    assert canonical_form(product(a, b)) == canonical_form(product(b, a))


@pytest.mark.parametrize("d, count", [(2, 6), (4, 10), (6, 14)])
def test_del_pezzo(d, count):
    p = del_pezzo_polytope(d)
    assert len(p.vertices) == count
    assert is_smooth(p)
    if d <= 4:
        data = orbit_data(p)
        assert (data.t, data.k) == (1, 0)


def test_del_pezzo_rejects_odd():
    with pytest.raises(ValueError):
        del_pezzo_polytope(3)


def test_equal_factor_products_are_fibre_like():
    assert is_fibre_like(power(del_pezzo_polytope(2), 2))
    assert is_fibre_like(power(projective_space(2), 2))


def test_weighted_projective():
    assert canonical_form(weighted_projective((1, 1, 1))) == canonical_form(projective_space(2))
    w = weighted_projective((1, 1, 1, 1, 2))
    assert is_reflexive(w) and is_terminal(w) and w.is_simplicial and not is_smooth(w)
    assert any(centroid(w))
    w112 = weighted_projective((1, 1, 2))
    assert is_reflexive(w112) and not is_smooth(w112)
    with pytest.raises(ValueError):
        weighted_projective((2, 2, 1))
    with pytest.raises(ValueError):
        weighted_projective((1, 0, 1))


def test_catalog_entries_are_smooth_and_named():
    names = {e.name for e in catalog_entries(4)}
    assert {"P^4", "P^2 x P^2", "(P^1)^4", "V_4", "V_2 x V_2"} <= names
    for e in catalog_entries(4):
        assert is_smooth(e.polytope)
