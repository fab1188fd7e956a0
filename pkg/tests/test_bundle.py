from __future__ import annotations

import pytest

from vgfunctors import fixtures as fx
from vgfunctors.bundle import (
    BundleMorphism, NotRankOne, PosetMismatch, VeryGoodBundle, ZeroScale, biproduct,
    bundle_monodromy, cokernel_bundle, factor_through_cokernel, factor_through_kernel,
    identity_morphism, iso_check_rank_one, kernel_bundle, mobius_fixture, mono_epi_check,
    rank_profile, zero_bundle, zero_morphism,
)
from vgfunctors.cover import cover_poset
from vgfunctors.exactla import Matrix
from vgfunctors.functor import (
    CO, FunctorError, NotNatural, constant_functor, gauge_twist,
)
from vgfunctors.groupoid import EdgePath

LOOP = EdgePath.of(0, 1, 2, 0)


def const(name, dim) -> VeryGoodBundle:
    return VeryGoodBundle(constant_functor(cover_poset(fx.COMPLEXES[name]()), dim, CO))


def split_morphism() -> BundleMorphism:
    A = const("circle3", 2)
    m = Matrix([[1, 0], [0, 0]])
    return BundleMorphism.between(A, A, {s: m for s in A.poset.objects})


def test_bundle_requires_covariant():
    with pytest.raises(FunctorError):
        VeryGoodBundle(fx.mobius_functor(-1))


def test_zero_bundle():
    P = cover_poset(fx.circle3())
    Z = zero_bundle(P)
    assert all(Z.dim(s) == 0 for s in P.objects)
    M = mobius_fixture(-1)
    into, out = zero_morphism(Z, M), zero_morphism(M, Z)
    assert all(m.shape == (1, 0) for m in into.eta.components.values())
    assert all(m.shape == (0, 1) for m in out.eta.components.values())


def test_biproduct_examples():
    M = mobius_fixture(-1)
    S = biproduct(M, M).bundle
    assert all(S.dim(s) == 2 for s in S.poset.objects)
    assert bundle_monodromy(S, LOOP) == Matrix.diag([-1, -1])
    S = biproduct(const("circle3", 2), const("circle3", 3)).bundle
    assert all(S.dim(s) == 5 for s in S.poset.objects)
    with pytest.raises(PosetMismatch):
        biproduct(M, const("tetra", 1))


def test_kernel_examples():
    M = mobius_fixture(-1)
    k = kernel_bundle(zero_morphism(M, M))
    assert bundle_monodromy(k.bundle, LOOP) == Matrix([[-1]])
    assert all(k.inclusion[s].is_identity() for s in M.poset.objects)
    assert all(kernel_bundle(identity_morphism(M)).bundle.dim(s) == 0 for s in M.poset.objects)
    k = kernel_bundle(split_morphism())
    assert all(k.bundle.dim(s) == 1 for s in k.bundle.poset.objects)
    assert all(m.is_identity() for m in k.bundle.functor.maps.values())


def test_cokernel_examples():
    M = mobius_fixture(-1)
    assert all(cokernel_bundle(identity_morphism(M)).bundle.dim(s) == 0 for s in M.poset.objects)
    c = cokernel_bundle(zero_morphism(M, M))
    assert iso_check_rank_one(c.bundle, M).isomorphic
    c = cokernel_bundle(split_morphism())
    assert all(c.bundle.dim(s) == 1 for s in c.bundle.poset.objects)
    assert all(c.projection[s] == Matrix([[0, 1]]) for s in c.bundle.poset.objects)


def test_rank_profile_examples():
    rp = rank_profile(split_morphism())
    assert len(rp.ranks) == 6 and set(rp.ranks.values()) == {1} and rp.constant
    M = mobius_fixture(-1)
    assert set(rank_profile(identity_morphism(M)).ranks.values()) == {1}
    A = const("circle3", 2)
    comps = {s: Matrix.identity(2) for s in A.poset.objects}
    comps[(0,)] = Matrix([[1, 0], [0, 0]])
    with pytest.raises(NotNatural):
        BundleMorphism.between(A, A, comps)


def test_mono_epi_examples():
    k = kernel_bundle(split_morphism())
    rep = mono_epi_check(k.inclusion)
    assert rep.mono and rep.mono_is_kernel_of_cokernel
    rep = mono_epi_check(identity_morphism(mobius_fixture(-2)))
    assert rep.mono and rep.epi and rep.passed
    M = mobius_fixture(-1)
    rep = mono_epi_check(zero_morphism(M, M))
    assert not rep.mono and not rep.epi
    assert rep.lines() == ["mono: False", "epi: False"]


def test_universal_properties(rng):
    for _ in range(5):
        m = BundleMorphism(fx.random_bundle_morphism("circle3", rng))
        k, c = kernel_bundle(m), cokernel_bundle(m)
        # the kernel inclusion factors through itself, the cokernel projection likewise
        u = factor_through_kernel(k, k.inclusion)
        assert all(u[s].is_identity() for s in m.eta.source.poset.objects)
        v = factor_through_cokernel(c, c.projection)
        assert all(v[s].is_identity() for s in m.eta.source.poset.objects)


def test_monodromy_examples():
    assert bundle_monodromy(mobius_fixture(-1), LOOP) == Matrix([[-1]])
    assert bundle_monodromy(mobius_fixture(-2), LOOP) == Matrix([[-2]])
    assert bundle_monodromy(mobius_fixture(1), LOOP) == Matrix([[1]])
    assert bundle_monodromy(const("torus7", 2), EdgePath.of(0, 1, 2, 0)).is_identity()
    # going round the other way inverts the transport
    assert bundle_monodromy(mobius_fixture(-2), LOOP.reversed()) @ Matrix([[-2]]) == Matrix([[1]])


def test_iso_check_examples(rng):
    m1, m2 = mobius_fixture(-1), mobius_fixture(-2)
    v = iso_check_rank_one(m1, m2)
    assert not v.isomorphic and v.witness is None
    A = {s: Matrix([[fx.random_rational(rng) or 2]]) for s in m1.poset.objects}
    v = iso_check_rank_one(m1, VeryGoodBundle(gauge_twist(m1.functor, A)))
    assert v.isomorphic and v.witness.eta.is_iso()
    t = const("circle3", 1)
    assert iso_check_rank_one(t, t).isomorphic
    with pytest.raises(NotRankOne):
        iso_check_rank_one(const("circle3", 2), const("circle3", 2))


def test_mobius_fixture():
    with pytest.raises(ZeroScale):
        mobius_fixture(0)
    assert mobius_fixture(1).functor == constant_functor(cover_poset(fx.circle3()), 1, CO)
