from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fanolattice import exact_linalg as la


def leibniz(m):
    """Permutation-expansion determinant, used as an independent oracle."""
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = -1 if inversions % 2 else 1
        for i, j in enumerate(perm):
            term *= m[i][j]
        total += term
    return total


def square_matrices(max_n=4, lo=-5, hi=5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n))


def test_determinant_examples():
    assert la.determinant(la.identity(3)) == 1
    assert la.determinant([[1, 0], [1, 1]]) == 1
    assert la.determinant([[0, 1], [-1, -1]]) == 1


def test_determinant_rejects_non_square():
    with pytest.raises(ValueError):
        la.determinant([[1, 2, 3], [4, 5, 6]])


@given(square_matrices())
def test_determinant_matches_leibniz(m):
    assert la.determinant(m) == leibniz(m)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    *[st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)] * 2)))
def test_determinant_multiplicative(pair):
    a, b = pair
    assert la.determinant(la.matmul(a, b)) == la.determinant(a) * la.determinant(b)


def test_hnf_examples():
    assert la.hermite_normal_form(la.identity(2)) == (la.identity(2), la.identity(2))
    h, _ = la.hermite_normal_form([[2, 0], [0, 1]])
    assert h == [[2, 0], [0, 1]]
    m = [[1, 1], [0, 1]]
    h, u = la.hermite_normal_form(m)
    assert la.matmul(u, m) == h
    assert abs(la.determinant(u)) == 1


@settings(max_examples=150)
@given(st.integers(1, 4).flatmap(lambda n: st.integers(1, 5).flatmap(
    lambda k: st.lists(st.lists(st.integers(-20, 20), min_size=k, max_size=k), min_size=n, max_size=n))))
def test_hnf_properties(m):
    h, u = la.hermite_normal_form(m)
    assert la.matmul(u, m) == h
    assert abs(la.determinant(u)) == 1
    assert la.hermite_normal_form(h)[0] == h
    # echelon shape with reduced entries above positive pivots
    last = -1
    for i, row in enumerate(h):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            assert all(not any(r) for r in h[i:])
            break
        j = nz[0]
        assert j > last and row[j] > 0
        assert all(0 <= h[r][j] < row[j] for r in range(i))
        last = j


def test_rational_solve_examples():
    b = (Fraction(3, 2), Fraction(-7))
    assert la.rational_solve(la.identity(2), b) == b
    assert la.rational_solve([[1, 1], [1, -1]], (2, 0)) == (1, 1)
    assert la.rational_solve([[1, 0], [0, 1], [1, 1]], (1, 1, 3)) is None


@given(square_matrices(lo=-6, hi=6), st.data())
def test_rational_solve_round_trip(a, data):
    n = len(a)
    x = data.draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=n, max_size=n))
    b = [sum(Fraction(ai) * xi for ai, xi in zip(row, x)) for row in a]
    sol = la.rational_solve(a, b)
    assert sol is not None
    assert [sum(ai * si for ai, si in zip(row, sol)) for row in a] == b
    if la.determinant(a) != 0:
        assert tuple(sol) == tuple(x)


def test_fixed_space_examples():
    assert la.fixed_space_dimension([la.identity(3)]) == 3
    assert la.fixed_space_dimension([[[-1, 0], [0, -1]]]) == 0
    assert la.fixed_space_dimension([[[0, 1], [1, 0]]]) == 1
    with pytest.raises(ValueError):
        la.fixed_space_dimension([la.identity(2), la.identity(3)])


def cycle_count(perm):
    seen, cycles = set(), 0
    for s in range(len(perm)):
        if s not in seen:
            cycles += 1
            while s not in seen:
                seen.add(s)
                s = perm[s]
    return cycles


@given(st.permutations(list(range(6))))
def test_fixed_space_of_permutation_is_cycle_count(perm):
    n = len(perm)
    mat = [[int(perm[j] == i) for j in range(n)] for i in range(n)]
    assert la.fixed_space_dimension([mat]) == cycle_count(perm)


def test_is_unimodular_examples():
    assert la.is_unimodular(la.identity(4))
    assert not la.is_unimodular([[2, 0], [0, 1]])
    assert la.is_unimodular([[1, 1], [0, 1]])


@given(square_matrices(max_n=4, lo=-3, hi=3))
def test_inverse_and_scaled_inverse(m):
    d = la.determinant(m)
    if d == 0:
        with pytest.raises(ZeroDivisionError):
            la.scaled_inverse(m)
        return
    s, r = la.scaled_inverse(m)
    assert abs(s) == abs(d)
    n = len(m)
    assert la.matmul(r, m) == [[s * int(i == j) for j in range(n)] for i in range(n)]
    inv = la.inverse(m)
    assert la.matmul(inv, m) == la.identity(n)


def test_rationals_normalised():
    x = la.rational_solve([[2]], (Fraction(4, 6),))
    assert x == (Fraction(1, 3),)
    assert x[0].denominator == 3
