from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperfan import ratgeom as rg
from hyperfan.errors import DimensionMismatch, PreconditionError
from oracles import cramer

small = st.fractions(min_value=-20, max_value=20, max_denominator=6)


def cone(*rays):
    return rg.SimplicialCone(tuple(rays), len(rays[0]) if rays else 2)


def test_to_rational_refuses_floats_and_bools():
    assert rg.to_rational("3/4") == F(3, 4)
    assert rg.to_rational(2) == F(2)
    with pytest.raises(TypeError):
        rg.to_rational(0.5)
    with pytest.raises(TypeError):
        rg.to_rational(True)


@pytest.mark.parametrize(
    "vectors, expected",
    [([(1, 0), (0, 1)], 2), ([(1, 0), (2, 0)], 1), ([], 0)],
)
def test_rank_examples(vectors, expected):
    assert rg.rank([rg.as_vector(v) for v in vectors]) == expected


def test_rank_mixed_dimensions():
    with pytest.raises(DimensionMismatch):
        rg.rank([rg.vec(1, 0), rg.vec(1, 0, 0)])


def test_solve_nonneg_examples():
    assert rg.solve_nonneg([(1, 0), (0, 1)], (2, 3)) == [2, 3]
    assert rg.solve_nonneg([(1, 0), (0, 1)], (-1, 0)) is None
    # frozen from Cramer's rule: (3,1) = 2*(1,0) + 1*(1,1)
    assert cramer([(1, 0), (1, 1)], rg.vec(3, 1)) == [2, 1]
    assert rg.solve_nonneg([(1, 0), (1, 1)], (3, 1)) == [2, 1]


def test_solve_nonneg_dependent_rays():
    with pytest.raises(PreconditionError):
        rg.solve_nonneg([(1, 0), (2, 0)], (1, 0))


def test_relative_interior_examples():
    q = cone((1, 0), (0, 1))
    assert rg.in_relative_interior(q, (1, 1))
    assert not rg.in_relative_interior(q, (1, 0))
    assert rg.in_relative_interior(rg.SimplicialCone((), 2), (0, 0))
    assert not rg.in_relative_interior(rg.SimplicialCone((), 2), (1, 0))


def test_relint_disjoint_examples():
    assert rg.relint_disjoint(cone((1, 0)), cone((0, 1)))
    assert not rg.relint_disjoint(cone((1, 0), (0, 1)), cone((1, 0), (1, 1)))
    assert rg.solve_nonneg([(1, 0), (0, 1)], (2, 1)) == [2, 1]
    assert rg.solve_nonneg([(1, 0), (1, 1)], (2, 1)) == [1, 1]
    assert rg.relint_disjoint(cone((1, 0), (0, 1)), cone((0, 1), (-1, -1)))


def test_relint_disjoint_zero_and_self():
    z = rg.SimplicialCone((), 2)
    assert not rg.relint_disjoint(z, z)
    assert rg.relint_disjoint(z, cone((1, 0)))
    assert not rg.relint_disjoint(cone((1, 2)), cone((2, 4)))


def test_cone_rejects_bad_rays():
    with pytest.raises(PreconditionError):
        rg.SimplicialCone(((0, 0),), 2)
    with pytest.raises(PreconditionError):
        rg.SimplicialCone(((1, 1), (2, 2)), 2)


def test_find_nonneg_solution():
    assert rg.find_nonneg_solution([[1, 1]], [-1]) is None
    x = rg.find_nonneg_solution([[1, -1, 0], [0, 1, -1]], [2, 3])
    assert x is not None and all(v >= 0 for v in x)
    assert x[0] - x[1] == 2 and x[1] - x[2] == 3


def test_determinant_and_nullspace():
    assert rg.determinant([[2, 1], [1, 1]]) == 1
    ns = rg.nullspace([rg.vec(1, 1, 0)], 3)
    assert len(ns) == 2 and all(rg.dot(v, rg.vec(1, 1, 0)) == 0 for v in ns)


@given(st.lists(st.tuples(small, small), min_size=2, max_size=2), st.tuples(small, small))
def test_solve_nonneg_round_trip(rays, w):
    if rg.rank(list(rays)) < 2:
        return
    alpha = rg.solve_nonneg(rays, w)
    exact = cramer(rays, w)
    if alpha is None:
        assert any(c < 0 for c in exact)
    else:
        assert all(c >= 0 for c in alpha)
        assert rg.combo(alpha, rays, 2) == w
        assert alpha == exact


@given(st.lists(st.tuples(small, small, small), max_size=4), st.integers(1, 5))
def test_rank_invariant_under_scaling(vectors, k):
    vs = [rg.as_vector(v) for v in vectors]
    r = rg.rank(vs) if vs else 0
    assert rg.rank([rg.scale(k, v) for v in vs] if vs else []) == r
    assert r <= 3


@given(st.lists(st.tuples(small, small), min_size=1, max_size=2), st.lists(st.tuples(small, small), min_size=1, max_size=2))
def test_relint_disjoint_symmetric_and_witnessed(a, b):
    if any(rg.is_zero(v) for v in a + b) or not rg.independent(a) or not rg.independent(b):
        return
    ca, cb = cone(*a), cone(*b)
    d = rg.relint_disjoint(ca, cb)
    assert d == rg.relint_disjoint(cb, ca)
    # a point with all-ones coefficients on one side is a witness whenever it sits in the other
    x = rg.combo([1] * len(a), a, 2)
    if rg.in_relative_interior(cb, x):
        assert not d
