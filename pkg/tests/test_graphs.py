"""Decomposing-function spaces on geometric graphs.

The cycle-space route is cross-checked against the naive full system
(one block of equations per edge over all vertex images), which has the
same kernel dimension because the edge scalars are determined by the
images and vice versa up to translation.
"""

from fractions import Fraction

import pytest

from minkdecomp.constructors import cube, octahedron, simplex
from minkdecomp.errors import InvalidInputError
from minkdecomp.graphs import (
    DecomposingFunction,
    GeometricGraph,
    decomposing_space,
    decomposing_system_matrix,
    homothety_residue,
    is_homothety,
    is_indecomposable_graph,
    oracle_verdict,
    skeleton,
    touches_every_facet,
)
from minkdecomp.linalg import Vec, rank_and_kernel


def graph(points, edges):
    pts = {i: Vec(p) for i, p in enumerate(points)}
    return GeometricGraph(dim=len(points[0]), vertices=pts, edges=tuple(edges))


def naive_dimension(g):
    rows, ncols = decomposing_system_matrix(g)
    _, basis = rank_and_kernel(rows, ncols=ncols)
    return len(basis)


TRIANGLE = graph([(0, 0), (2, 0), (0, 2)], [(0, 1), (0, 2), (1, 2)])
SQUARE = graph([(0, 0), (1, 0), (1, 1), (0, 1)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def test_single_edge_dimension():
    g = graph([(0, 0), (1, 0)], [(0, 1)])
    dim, basis = decomposing_space(g)
    assert dim == 3 == len(basis)
    assert naive_dimension(g) == 3


def test_triangle_is_rigid():
    dim, basis = decomposing_space(TRIANGLE)
    assert dim == 3
    assert naive_dimension(TRIANGLE) == 3
    assert is_indecomposable_graph(TRIANGLE)


def test_square_cycle_is_flexible():
    dim, _ = decomposing_space(SQUARE)
    assert dim == 4
    assert naive_dimension(SQUARE) == 4
    assert not is_indecomposable_graph(SQUARE)


def test_polytope_skeleta_dimensions():
    octa = skeleton(octahedron())
    assert decomposing_space(octa)[0] == 4
    box = skeleton(cube(3))
    assert decomposing_space(box)[0] == 6


@pytest.mark.parametrize(
    "p",
    [simplex(2), simplex(3), simplex(4), cube(2), cube(3), octahedron()],
    ids=["simplex2", "simplex3", "simplex4", "cube2", "cube3", "octahedron"],
)
def test_cycle_route_matches_naive_system(p):
    g = skeleton(p)
    dim, basis = decomposing_space(g)
    assert naive_dimension(g) == dim
    for f in basis:
        assert f.check(g)


def test_basis_is_independent():
    g = skeleton(cube(3))
    dim, basis = decomposing_space(g)
    vids = sorted(g.vertices)
    rows = [[c for v in vids for c in f.images[v]] for f in basis]
    rank, _ = rank_and_kernel(rows, ncols=len(vids) * g.dim)
    assert rank == dim


def test_disconnected_graph_components_add_up():
    g = graph(
        [(0, 0), (2, 0), (0, 2), (5, 5), (6, 5)],
        [(0, 1), (0, 2), (1, 2), (3, 4)],
    )
    assert len(g.components()) == 2
    dim, _ = decomposing_space(g)
    assert dim == 3 + 3
    assert naive_dimension(g) == 6
    with pytest.raises(InvalidInputError):
        is_indecomposable_graph(g)


def test_non_spanning_graph_rejected():
    g = graph([(0, 0), (1, 0), (2, 0)], [(0, 1), (1, 2)])
    with pytest.raises(InvalidInputError):
        is_indecomposable_graph(g)


def test_edgeless_graph_rejected():
    g = GeometricGraph(dim=2, vertices={0: Vec((0, 0))}, edges=())
    with pytest.raises(InvalidInputError):
        decomposing_space(g)


def test_graph_validation():
    with pytest.raises(InvalidInputError):
        graph([(0, 0), (1, 0)], [(0, 0)])
    with pytest.raises(InvalidInputError):
        graph([(0, 0), (1, 0)], [(0, 2)])
    with pytest.raises(InvalidInputError):
        GeometricGraph(
            dim=2,
            vertices={0: Vec((0, 0)), 1: Vec((0, 0))},
            edges=((0, 1),),
        )


def test_from_images_rejects_non_decomposing_map():
    images = {0: Vec((0, 0)), 1: Vec((0, 1)), 2: Vec((1, 0))}
    with pytest.raises(InvalidInputError):
        DecomposingFunction.from_images(TRIANGLE, images)


def test_check_detects_wrong_scalars():
    images = {v: TRIANGLE.vertices[v] * 2 for v in TRIANGLE.vertices}
    f = DecomposingFunction.from_images(TRIANGLE, images)
    assert f.check(TRIANGLE)
    bad = DecomposingFunction(f.images, {e: Fraction(7) for e in f.edge_scalars})
    assert not bad.check(TRIANGLE)


def test_homothety_detection():
    shift = Vec((3, -2))
    images = {v: TRIANGLE.vertices[v] * Fraction(5, 2) + shift for v in TRIANGLE.vertices}
    f = DecomposingFunction.from_images(TRIANGLE, images)
    assert is_homothety(TRIANGLE, f)
    assert all(img.is_zero() for img in homothety_residue(TRIANGLE, f).images.values())

    # Collapse one side of the square: decomposing but not a homothety.
    g = SQUARE
    images = {0: Vec((0, 0)), 1: Vec((1, 0)), 2: Vec((1, 0)), 3: Vec((0, 0))}
    w = DecomposingFunction.from_images(g, images)
    assert not is_homothety(g, w)


def test_oracle_on_indecomposable_input():
    res = oracle_verdict(simplex(3))
    assert res.verdict == "Indecomposable"
    assert res.dimension == 4
    assert res.witness is None


def test_oracle_witness_is_valid():
    p = cube(3)
    res = oracle_verdict(p)
    assert res.verdict == "Decomposable"
    assert res.dimension == 6
    g = skeleton(p)
    assert res.witness is not None
    assert res.witness.check(g)
    assert not is_homothety(g, res.witness)


def test_touches_every_facet():
    p = cube(2)
    assert touches_every_facet(range(4), p)
    assert not touches_every_facet([0], p)
