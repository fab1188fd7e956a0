from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vgfunctors import fixtures as fx
from vgfunctors.complex import (
    EmptyFacet, NotFaceClosed, SimplicialComplex, VertexOutOfRange, barycentric_subdivision,
    close_under_faces, component_of, connected_components, is_connected, maximal_tree, skeleton,
)


def test_close_under_faces_examples():
    K = close_under_faces([[0, 1], [1, 2], [0, 2]], 3)
    assert len(K.vertices) == 3 and len(K.edges) == 3 and len(K.simplices) == 6
    assert len(close_under_faces([[0]], 1).simplices) == 1
    assert len(close_under_faces([[0, 1, 2, 3]], 4).simplices) == 15


def test_close_under_faces_errors():
    with pytest.raises(EmptyFacet):
        close_under_faces([[]], 2)
    with pytest.raises(VertexOutOfRange):
        close_under_faces([[0, 3]], 3)
    with pytest.raises(NotFaceClosed):
        SimplicialComplex(2, ((0,), (0, 1)))


def test_skeleton_examples():
    S = skeleton(fx.tetra(), 1)
    assert len(S.vertices) == 4 and len(S.edges) == 6 and not S.triangles
    assert skeleton(fx.torus7(), 0).simplices == tuple((v,) for v in range(7))
    assert skeleton(fx.circle3(), 5) == fx.circle3()


def test_subdivision_examples():
    H = barycentric_subdivision(fx.circle3())
    assert len(H.vertices) == 6 and len(H.edges) == 6
    assert len(barycentric_subdivision(close_under_faces([[0]], 1)).simplices) == 1
    T = barycentric_subdivision(close_under_faces([[0, 1, 2]], 3))
    assert (len(T.vertices), len(T.edges), len(T.triangles)) == (7, 12, 6)


def test_components():
    assert connected_components(fx.circle3()) == [[0, 1, 2]]
    assert connected_components(fx.two_points()) == [[0], [1]]
    assert connected_components(fx.circle3_plus_edge()) == [[0, 1, 2], [3, 4]]
    assert component_of(fx.circle3_plus_edge())[4] == 3
    assert not is_connected(fx.circle3_plus_edge())


def test_maximal_tree_examples():
    assert maximal_tree(fx.circle3(), 0).edges == {(0, 1), (0, 2)}
    assert maximal_tree(close_under_faces([[0]], 1), 0).edges == frozenset()
    K4 = skeleton(fx.tetra(), 1)
    assert maximal_tree(K4, 0).edges == {(0, 1), (0, 2), (0, 3)}


@pytest.mark.parametrize("name", list(fx.COMPLEXES))
def test_maximal_tree_spans(name):
    K = fx.COMPLEXES[name]()
    for root in K.vertices:
        T = maximal_tree(K, root)
        assert len(T.edges) == len(K.vertices) - 1
        assert {v for e in T.edges for v in e} == set(K.vertices)


@pytest.mark.parametrize("name, chi", [("circle3", 0), ("tetra", 2), ("torus7", 0), ("rp2-6", 1)])
def test_fixture_euler_characteristic(name, chi):
    assert fx.COMPLEXES[name]().euler_characteristic() == chi


@pytest.mark.parametrize("name", ["tetra", "torus7", "rp2-6"])
def test_closed_surfaces(name):
    K = fx.COMPLEXES[name]()
    for e in K.edges:
        assert sum(1 for t in K.triangles if set(e) <= set(t)) == 2
    assert is_connected(K)


def test_fixture_counts():
    assert fx.torus7().f_vector() == [7, 21, 14]
    assert fx.rp2_6().f_vector() == [6, 15, 10]
    assert fx.tetra().f_vector() == [4, 6, 4]


facet_lists = st.lists(
    st.lists(st.integers(0, 5), min_size=1, max_size=4, unique=True), min_size=1, max_size=6
)


@settings(max_examples=80, deadline=None)
@given(facet_lists)
def test_closure_idempotent(facets):
    K = close_under_faces(facets, 6)
    assert close_under_faces(K.simplices, 6) == K
    assert close_under_faces(K.facets(), 6) == K


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 4), min_size=1, max_size=3, unique=True),
                min_size=1, max_size=4))
def test_subdivision_invariants(facets):
    K = close_under_faces(facets, 5)
    B = barycentric_subdivision(K)
    assert B.euler_characteristic() == K.euler_characteristic()
    assert len(connected_components(B)) == len(connected_components(K))
    assert B.dimension == K.dimension
