import json
import random
from itertools import product
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from ehrhart.geometry import (
    DegeneratePolytope,
    Facet,
    _certify_complete,
    _exhaustive_facets,
    _qhull_facets,
    build_polytope,
    count_lattice_points,
    dilate,
    facet_enumeration,
    lattice_points,
    load_polytope,
)
from ehrhart.zoo import cross_polytope, cube, cyclic, order_polytope, standard_simplex

from oracles import brute_count, brute_interior_count, cross_count, cube_count, order_count, simplex_count

UNIT_SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]


def float_facet_count(points):
    """Distinct supporting planes reported by qhull (float oracle)."""
    hull = ConvexHull(np.array(points, dtype=float))
    return len({tuple(np.round(e, 6)) for e in hull.equations})


# ---------------------------------------------------------------- facets


def test_square_facets():
    facets = facet_enumeration(UNIT_SQUARE)
    assert set(facets) == {Facet((-1, 0), 0), Facet((1, 0), 1), Facet((0, -1), 0), Facet((0, 1), 1)}


def test_interval():
    assert facet_enumeration([(3,), (-2,), (1,)]) == [Facet((-1,), 2), Facet((1,), 3)]


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_cube_and_cross_facets(d):
    assert len(facet_enumeration(cube(d))) == 2 * d
    assert len(facet_enumeration(cross_polytope(d))) == 2**d


@pytest.mark.parametrize("n,d", [(5, 3), (6, 3), (7, 4), (8, 4)])
def test_cyclic_facets_match_qhull(n, d):
    pts = cyclic(n, d)
    assert len(facet_enumeration(pts)) == float_facet_count(pts)


def test_facets_are_primitive_and_supporting():
    pts = cyclic(7, 3)
    for f in facet_enumeration(pts):
        assert gcd(*f.normal) == 1
        vals = [f.value(p) for p in pts]
        assert max(vals) == f.offset
        assert sum(v == f.offset for v in vals) >= 3


@pytest.mark.parametrize("pts", [cube(5), order_polytope(6), cross_polytope(6)])
def test_qhull_path_agrees_with_exhaustive(pts):
    pts = sorted(set(pts))
    q = _qhull_facets(pts)
    assert q is not None
    if len(pts) <= 16:
        assert q == _exhaustive_facets(pts)
    else:
        assert len(q) == float_facet_count(pts)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 4]))
def test_qhull_path_random(seed, d):
    rng = random.Random(seed)
    pts = sorted({tuple(rng.randint(-4, 4) for _ in range(d)) for _ in range(rng.randint(d + 3, 22))})
    try:
        exact = facet_enumeration(pts)
    except DegeneratePolytope:
        return
    q = _qhull_facets(pts)
    assert q is None or q == exact
    assert exact == _exhaustive_facets(pts)


def test_certificate_rejects_missing_facet():
    pts = sorted(cube(3))
    facets = _exhaustive_facets(pts)
    assert _certify_complete(pts, facets)
    for k in range(len(facets)):
        assert not _certify_complete(pts, facets[:k] + facets[k + 1:])


# ---------------------------------------------------------------- construction


def test_nonvertices_dropped():
    P = build_polytope([(0, 0), (2, 0), (0, 2), (1, 0), (1, 1), (0, 1)])
    assert set(P.vertices) == {(0, 0), (2, 0), (0, 2)}


@pytest.mark.parametrize("pts", [
    [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)],
    [(0, 0), (1, 1), (2, 2)],
    [(1, 1)],
])
def test_degenerate(pts):
    with pytest.raises(DegeneratePolytope):
        build_polytope(pts)


def test_non_integer_rejected():
    with pytest.raises(ValueError):
        build_polytope([(0, 0), (0.5, 0), (0, 1)])
    with pytest.raises(ValueError):
        build_polytope([(0, 0), (1, 0, 0), (0, 1)])


def test_integral_floats_accepted():
    P = build_polytope([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])
    assert P.vertices == ((0, 0), (0, 1), (1, 0))


def test_load_polytope(tmp_path):
    f = tmp_path / "tri.json"
    f.write_text(json.dumps({"name": "tri", "vertices": [[0, 0], [3, 0], [0, 3]]}))
    P = load_polytope(f)
    assert P.name == "tri" and P.dimension == 2
    assert json.loads(json.dumps(P.to_json()))["vertices"] == [[0, 0], [0, 3], [3, 0]]
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    with pytest.raises(ValueError):
        load_polytope(bad)


def test_contains_and_dilate():
    P = build_polytope(standard_simplex(2))
    assert P.contains((0, 1)) and not P.contains((0, 1), strict=True)
    Q = dilate(P, 3)
    assert Q.contains((1, 1), strict=True)
    assert set(Q.vertices) == {(0, 0), (3, 0), (0, 3)}
    with pytest.raises(ValueError):
        dilate(P, -1)


# ---------------------------------------------------------------- counting


@pytest.mark.parametrize("d", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_closed_form_counts(d, n):
    assert count_lattice_points(build_polytope(standard_simplex(d)), n) == simplex_count(d, n)
    assert count_lattice_points(build_polytope(cube(d)), n) == cube_count(d, n)
    assert count_lattice_points(build_polytope(cross_polytope(d)), n) == cross_count(d, n)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_order_polytope_counts(d):
    P = build_polytope(order_polytope(d))
    for n in range(4):
        assert count_lattice_points(P, n) == order_count(d, n)


@pytest.mark.parametrize("name,pts,n", [
    ("cyclic(5,3)", cyclic(5, 3), 1),
    ("cyclic(6,2)", cyclic(6, 2), 1),
    ("cyclic(6,2)", cyclic(6, 2), 2),
    ("odd triangle", [(0, 0), (5, 2), (2, 7)], 1),
    ("odd triangle", [(0, 0), (5, 2), (2, 7)], 3),
    ("skew tetra", [(0, 0, 0), (2, 1, 0), (1, 3, 1), (0, 1, 2)], 1),
    ("skew tetra", [(0, 0, 0), (2, 1, 0), (1, 3, 1), (0, 1, 2)], 3),
])
def test_counts_against_barycentric_oracle(name, pts, n):
    P = build_polytope(pts)
    assert count_lattice_points(P, n) == brute_count(pts, n)
    assert count_lattice_points(P, n, interior=True) == brute_interior_count(pts, n)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)), min_size=4, max_size=7),
       st.integers(1, 2))
def test_random_counts_against_oracle(pts, n):
    try:
        P = build_polytope(pts)
    except DegeneratePolytope:
        return
    assert count_lattice_points(P, n) == brute_count(list(P.vertices), n)


def test_lattice_points_generator():
    P = build_polytope(UNIT_SQUARE)
    assert sorted(lattice_points(P, 2)) == sorted(product(range(3), repeat=2))
    assert list(lattice_points(P, 2, interior=True)) == [(1, 1)]
    assert count_lattice_points(P, 0) == 1
    assert count_lattice_points(P, 0, interior=True) == 0


def test_levels_are_projections():
    P = build_polytope(cyclic(6, 3))
    assert len(P.levels) == 3
    assert P.levels[-1] == P.facets
    proj = {v[:2] for v in P.vertices}
    assert list(P.levels[1]) == facet_enumeration(proj)
