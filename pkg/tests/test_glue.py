import random
from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperfan import fan as fm
from hyperfan import fixtures
from hyperfan import ratgeom as rg
from hyperfan.domain import domain_from_fan
from hyperfan.errors import CapacityError, PreconditionError
from hyperfan.glue import (
    IsoCandidate,
    euler_closed,
    fan_condition,
    realizable_2d,
    reflection_glue,
    tiling_from_fan,
    validate_tiling2d,
    verify_isomorphism,
)
from oracles import GRID, euler_glued_oracle, glued_counts_oracle, grid_realization, is_plane_fan_by_angles

# frozen from the explicit coset enumeration oracle
POLYGON_EULER = {3: 2, 4: 0, 5: -8, 6: -32, 7: -96, 8: -256}


def test_glue_cell_counts():
    tri = reflection_glue(fm.triangle_fan())
    assert tri.cell_counts() == [6, 12, 8] == glued_counts_oracle(fm.triangle_fan())
    assert reflection_glue(fm.cross_fan(2)).cell_counts() == [16, 32, 16]
    line = reflection_glue(fm.cross_fan(1))
    assert line.cell_counts() == [4, 4] and euler_closed(line) == 0


def test_glue_euler_examples():
    assert euler_closed(reflection_glue(fm.triangle_fan())) == 2
    assert euler_closed(reflection_glue(fm.cross_fan(2))) == 0
    assert euler_closed(reflection_glue(fm.cross_fan(3))) == 0


@pytest.mark.parametrize("m", range(3, 9))
def test_polygon_euler(m):
    f = fm.polygon_fan(m)
    c = reflection_glue(f)
    assert euler_glued_oracle(f) == POLYGON_EULER[m]
    assert euler_closed(c) == c.euler_from_cells() == POLYGON_EULER[m]
    assert POLYGON_EULER[m] == 2 ** (m - 2) * (4 - m)
    assert c.connected()


def test_glue_rejects_invalid_fan():
    with pytest.raises(PreconditionError):
        reflection_glue(fixtures.load("overlap.fan").body)


def test_closure_relation_and_adjacency():
    c = reflection_glue(fm.triangle_fan())
    adj = c.top_adjacency()
    assert all(len(v) == 3 for v in adj.values())
    vertex = (frozenset({0, 1}), 0b100)
    tops = [cell for cell in c.cells if len(cell[0]) == 0 and c.in_closure(vertex, cell)]
    assert len(tops) == 4


@given(st.integers(3, 7), st.integers(0, 10**6))
def test_glue_properties_on_random_fans(m, seed):
    f = fm.random_fan_2d(random.Random(seed), m)
    c = reflection_glue(f)
    assert euler_closed(c) == c.euler_from_cells() == 2 ** (m - 2) * (4 - m)
    assert c.connected()
    d = domain_from_fan(f)
    collapsed = c.collapse()
    assert set(collapsed) == set(d.cones)
    assert all(collapsed[s] == 2 ** (m - len(s)) for s in d.cones)


def test_glue_three_dimensional():
    c = reflection_glue(fm.cross_fan(3))
    assert c.cell_counts() == glued_counts_oracle(fm.cross_fan(3)) == [64, 192, 192, 64]


# plane fans from cyclic vectors


@pytest.mark.parametrize(
    "vectors, ok",
    [
        ([(1, 0), (0, 1), (-1, -1)], True),
        ([(1, 0), (-1, -1), (0, 1)], True),
        ([(1, 0), (0, 1)], False),
        ([(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)], False),
        ([(1, 0), (0, 1), (-1, 0), (0, -1), (1, 0), (0, 1), (-1, 0), (0, -1)], False),
        ([(1, 0), (1, 1), (0, 1)], False),
        ([(1, 0), (-1, 0), (0, 1)], False),
    ],
)
def test_fan_condition_examples(vectors, ok):
    assert (fan_condition([rg.as_vector(v) for v in vectors]) is None) == ok
    assert is_plane_fan_by_angles(vectors) == ok


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=6))
def test_fan_condition_matches_angle_oracle(vectors):
    if any(v == (0, 0) for v in vectors):
        return
    assert (fan_condition([rg.as_vector(v) for v in vectors]) is None) == is_plane_fan_by_angles(vectors)


# tilings


def test_sphere_tiling_valid():
    t = fixtures.load("sphere8.tiling").body
    assert validate_tiling2d(t).valid
    assert (len(t.faces), len(t.edges), len(t.vertices)) == (8, 12, 6)
    assert t.euler() == 2


def test_tiling_from_square_fan():
    t = tiling_from_fan(fm.cross_fan(2))
    assert validate_tiling2d(t).valid
    assert t.euler() == 0 and len(t.curves) == 8


@given(st.integers(3, 6), st.integers(0, 10**6))
def test_glued_tilings_validate(m, seed):
    f = fm.random_fan_2d(random.Random(seed), m)
    t = tiling_from_fan(f)
    assert validate_tiling2d(t).valid
    assert t.euler() == 2 ** (m - 2) * (4 - m)


def test_bigon_rejected():
    rep = validate_tiling2d(fixtures.load("bigon.tiling").body)
    assert rep.conditions() == {"face-fan"}


def test_missing_vectors_is_an_error():
    with pytest.raises(PreconditionError):
        validate_tiling2d(fixtures.load("sphere8_bare.tiling").body)


def test_impossible3_invalid_for_grid_assignments():
    t = fixtures.load("impossible3.tiling").body
    rng = random.Random(5)
    for _ in range(200):
        vs = {c: rng.choice(GRID) for c in t.curves}
        assert not validate_tiling2d(t.with_vectors(vs)).valid


def test_surface_violations():
    t = fixtures.load("sphere8.tiling").body
    f0 = sorted(t.faces)[0]
    broken = replace(t, faces={k: v for k, v in t.faces.items() if k != f0})
    assert "surface" in validate_tiling2d(broken).conditions()
    open_ = replace(broken, closed=False)
    assert "surface" not in validate_tiling2d(open_).conditions()


def test_vertex_condition_parallel_crossing():
    t = fixtures.load("sphere8.tiling").body
    vs = dict(t.curves)
    vs["c1"] = rg.scale(3, vs["c0"])
    rep = validate_tiling2d(t.with_vectors(vs))
    assert not rep.valid


# realizability


@pytest.mark.parametrize("name", ["impossible3.tiling", "impossible6.tiling", "sphere12.tiling"])
def test_impossible_configurations(name):
    t = fixtures.load(name).body
    r = realizable_2d(t)
    assert not r.feasible and r.witness is None and r.explored > 0
    assert grid_realization(t) is None


def test_sphere_realizable_with_valid_witness():
    t = fixtures.load("sphere8_bare.tiling").body
    r = realizable_2d(t)
    assert r.feasible
    assert validate_tiling2d(t.with_vectors(r.witness)).valid
    assert grid_realization(t) is not None


@given(st.integers(0, 10**6))
def test_realize_witnesses_validate(seed):
    # three-ray fans are the ones whose gluing stays within the search bound
    t = tiling_from_fan(fm.random_fan_2d(random.Random(seed), 3)).without_vectors()
    r = realizable_2d(t)
    assert r.feasible
    assert validate_tiling2d(t.with_vectors(r.witness)).valid


def test_realize_capacity_bound():
    t = tiling_from_fan(fm.polygon_fan(5)).without_vectors()
    with pytest.raises(CapacityError):
        realizable_2d(t, max_curves=len(t.curves) - 1)


# isomorphisms


def _load(*names):
    return [fixtures.load(n).body for n in names]


def test_identity_and_rotation():
    s8, rot, ident, rot90 = _load("sphere8.tiling", "sphere8_rot.tiling", "sphere8_identity.iso", "sphere8_rot90.iso")
    assert verify_isomorphism(s8, s8, ident)
    assert verify_isomorphism(s8, rot, rot90)
    assert not verify_isomorphism(s8, rot, ident)


def test_changed_vector_not_isomorphic():
    s8, changed, ident = _load("sphere8.tiling", "sphere8_changed.tiling", "sphere8_identity.iso")
    assert not verify_isomorphism(s8, changed, ident)


def test_malformed_candidate():
    s8, ident = _load("sphere8.tiling", "sphere8_identity.iso")
    faces = dict(ident.faces)
    faces.pop(next(iter(faces)))
    with pytest.raises(PreconditionError):
        verify_isomorphism(s8, s8, IsoCandidate(faces, ident.edges, ident.curves, ident.linear))
    with pytest.raises(PreconditionError):
        verify_isomorphism(s8, s8, IsoCandidate(ident.faces, ident.edges, ident.curves, ((1, 0), (2, 0))))


def test_face_swap_breaks_isomorphism():
    s8, ident = _load("sphere8.tiling", "sphere8_identity.iso")
    a, b = sorted(s8.faces)[:2]
    faces = {**ident.faces, a: b, b: a}
    assert not verify_isomorphism(s8, s8, IsoCandidate(faces, ident.edges, ident.curves, ident.linear))
