from __future__ import annotations

import pytest

from vgfunctors import fixtures as fx
from vgfunctors.cover import cover_poset
from vgfunctors.equivalence import psi_path
from vgfunctors.exactla import Matrix
from vgfunctors.functor import (
    CO, CONTRA, NaturalTransformation, NotAFace, NotVeryGood, SizeMismatch, VeryGoodFunctor,
    check_naturality, check_very_good, constant_functor, dualize, evaluate_inclusion,
    finite_limit, gauge_twist, require_natural, reverse_variance,
)
from vgfunctors.groupoid import EdgePath, random_path


def with_map(F, edge, m):
    maps = dict(F.maps)
    maps[edge] = m
    return VeryGoodFunctor(F.poset, F.variance, F.dims, maps)


def test_mobius_is_very_good():
    rep = check_very_good(fx.mobius_functor(-1))
    assert rep.passed and rep.lines() == []


def test_zero_edge_fails_invertibility():
    F = with_map(fx.mobius_functor(-1), ((1,), (1, 2)), Matrix([[0]]))
    rep = check_very_good(F)
    assert not rep.passed
    assert rep.non_invertible == [((1,), (1, 2))]
    assert rep.lines()[0].startswith("Invertibility")


def test_perturbed_tetra_fails_coherence():
    P = cover_poset(fx.tetra())
    F = with_map(constant_functor(P, 1), ((0, 1), (0, 1, 2)), Matrix([[2]]))
    rep = check_very_good(F)
    assert not rep.passed and not rep.non_invertible
    assert all((0, 1) in sq and sq[3] == (0, 1, 2) for sq in rep.incoherent)
    assert any(line.startswith("Coherence") and "(0, 1, 2)" in line for line in rep.lines())
    with pytest.raises(NotVeryGood):
        evaluate_inclusion(F, (0,), (0, 1, 2))


def test_shape_validation():
    P = cover_poset(fx.circle3())
    maps = {e: Matrix([[1]]) for e in P.hasse_edges}
    maps[((0,), (0, 1))] = Matrix([[1, 0]])
    with pytest.raises(SizeMismatch):
        VeryGoodFunctor(P, CONTRA, {s: 1 for s in P.objects}, maps)


def test_evaluate_inclusion(rng):
    F = fx.random_very_good_functor("tetra", rng)
    a = F.edge_map((1,), (0, 1)) @ F.edge_map((0, 1), (0, 1, 2))
    b = F.edge_map((1,), (1, 2)) @ F.edge_map((1, 2), (0, 1, 2))
    assert a == b == evaluate_inclusion(F, (1,), (0, 1, 2))
    assert evaluate_inclusion(F, (0, 2), (0, 2)).is_identity()
    assert evaluate_inclusion(fx.mobius_functor(-1), (0,), (0, 2)) == Matrix([[-1]])
    with pytest.raises(NotAFace):
        evaluate_inclusion(F, (3,), (0, 1, 2))


def test_gauge_twist_examples(rng):
    M = fx.mobius_functor(-1)
    assert gauge_twist(M, {s: Matrix.identity(1) for s in M.poset.objects}) == M
    loop = EdgePath.of(0, 1, 2, 0)
    T = gauge_twist(M, {s: Matrix([[3]]) for s in M.poset.objects})
    assert psi_path(T, loop) == Matrix([[-1]])
    P = cover_poset(fx.torus7())
    C = constant_functor(P, 2)
    A = {s: fx.random_invertible(rng, 2) for s in P.objects}
    CT = gauge_twist(C, A)
    assert check_very_good(CT).passed
    for _ in range(20):
        v = rng.choice(P.complex.vertices)
        assert psi_path(CT, random_path(P.complex, rng, 8, start=v, end=v)).is_identity()
    # the gauge is a natural isomorphism onto the twisted functor
    assert check_naturality(NaturalTransformation(C, CT, A)).passed


def test_gauge_twist_covariant(rng):
    F = fx.random_bundle_morphism("circle3", rng).source
    A = {s: fx.random_invertible(rng, F.dim(s)) for s in F.poset.objects}
    assert check_naturality(NaturalTransformation(F, gauge_twist(F, A), A)).passed


def test_dualize():
    F = fx.mobius_functor(-1)
    D = dualize(F)
    assert D.variance == CO and D.maps[((0,), (0, 2))] == Matrix([[-1]])
    P = cover_poset(fx.circle3())
    G = with_map(constant_functor(P, 2), ((0,), (0, 1)), Matrix([[1, 2], [0, 1]]))
    assert dualize(G).maps[((0,), (0, 1))] == Matrix([[1, 0], [2, 1]])
    assert dualize(dualize(G)) == G


def test_reverse_variance_keeps_naturality(rng):
    eta = fx.random_functor_morphism("circle3", rng)
    rev = NaturalTransformation(reverse_variance(eta.source), reverse_variance(eta.target),
                                eta.components)
    assert check_naturality(rev).passed


def test_finite_limit_examples():
    P = cover_poset(fx.circle3())
    L = finite_limit(constant_functor(P, 2))
    assert L.dim == 2 and all(m.is_invertible() for m in L.projections.values())
    assert finite_limit(fx.mobius_functor(-1)).dim == 0
    assert finite_limit(fx.mobius_functor(1)).dim == 1
    Q = cover_poset(fx.circle3_plus_edge())
    assert finite_limit(constant_functor(Q, 1)).dim == 2


def test_finite_limit_is_a_cone(rng):
    F = fx.random_very_good_functor("torus7", rng, 2)
    L = finite_limit(F)
    for s, t in F.poset.hasse_edges:
        assert F.edge_map(s, t) @ L.projections[t] == L.projections[s]


def test_naturality_examples():
    P = cover_poset(fx.circle3())
    C = constant_functor(P, 1)
    assert check_naturality(NaturalTransformation.identity(C)).passed
    two = NaturalTransformation(C, C, {s: Matrix([[2]]) for s in P.objects})
    assert check_naturality(two).passed
    comps = dict(two.components)
    comps[(1,)] = Matrix([[3]])
    bad = NaturalTransformation(C, C, comps)
    rep = check_naturality(bad)
    assert set(rep.failing) == {((1,), (0, 1)), ((1,), (1, 2))}
    with pytest.raises(Exception):
        require_natural(bad)


def test_natural_transformation_algebra(rng):
    eta = fx.random_functor_morphism("circle3", rng)
    ident = NaturalTransformation.identity(eta.source)
    assert ident.then(eta) == eta
    zero = NaturalTransformation.zero(eta.source, eta.target)
    assert all(m.is_zero() for m in zero.components.values())
    F = fx.random_very_good_functor("circle3", rng)
    A = {s: fx.random_invertible(rng, F.dim(s)) for s in F.poset.objects}
    iso = NaturalTransformation(F, gauge_twist(F, A), A)
    assert iso.is_iso()
    assert iso.then(iso.inverse()) == NaturalTransformation.identity(F)
