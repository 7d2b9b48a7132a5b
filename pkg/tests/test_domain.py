import random

from hypothesis import given
from hypothesis import strategies as st

from hyperfan import fan as fm
from hyperfan.domain import HERT, domain_from_fan, euler_domain, hert_of_cell
from oracles import euler_domain_oracle


def test_cells_by_dimension():
    assert domain_from_fan(fm.triangle_fan()).cells_by_dim() == [3, 3, 1]
    assert domain_from_fan(fm.cross_fan(2)).cells_by_dim() == [4, 4, 1]
    assert domain_from_fan(fm.cross_fan(3)).cells_by_dim() == [8, 12, 6, 1]


def test_euler_examples():
    assert euler_domain(domain_from_fan(fm.triangle_fan())) == 1
    assert euler_domain(domain_from_fan(fm.cross_fan(3))) == 1


def test_hert_of_cells():
    d2 = domain_from_fan(fm.triangle_fan())
    assert hert_of_cell(d2, frozenset({1})) == HERT(1, 0, 1, 0)
    assert hert_of_cell(d2, frozenset()) == HERT(0, 0, 2, 0)
    d3 = domain_from_fan(fm.cross_fan(3))
    assert hert_of_cell(d3, frozenset({0, 1, 2})) == HERT(3, 0, 0, 0)


def test_closure_and_facets():
    d = domain_from_fan(fm.triangle_fan())
    top = d.top_cell
    assert d.dim(top) == 2
    assert sorted(map(sorted, d.facets_of(top))) == [[0], [1], [2]]
    assert d.in_closure(frozenset({0, 1}), frozenset({0}))
    assert not d.in_closure(frozenset({0}), frozenset({0, 1}))
    assert d.polytopal is True
    assert domain_from_fan(fm.cross_fan(3)).polytopal is True


@given(st.integers(3, 10), st.integers(0, 10**6))
def test_domain_contractible_shadow(m, seed):
    f = fm.random_fan_2d(random.Random(seed), m)
    d = domain_from_fan(f)
    assert euler_domain(d) == 1 == euler_domain_oracle(f)
    assert d.cells_by_dim() == [m, m, 1]


@given(st.integers(3, 10), st.integers(0, 10**6))
def test_hert_consistency(m, seed):
    d = domain_from_fan(fm.random_fan_2d(random.Random(seed), m))
    for cell in d.cones:
        h = hert_of_cell(d, cell)
        assert h.h + 2 * h.e + h.r + h.t == 2
        assert h.r == d.dim(cell)
