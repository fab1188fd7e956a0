"""Very good vector bundles as covariant very good functors.

A bundle is stored only through its covariant functor of local fibres; total
spaces and trivialisations are never materialised. Kernels, cokernels and
biproducts are computed object by object; since edge maps are isomorphisms
and squares commute, the objectwise constructions inherit invertible edge
maps and the rank of a morphism is constant on each component.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complex import Simplex, is_connected
from .cover import CoverPoset
from .exactla import Matrix, cokernel_projection, kernel_basis
from .functor import (
    CO, FunctorError, NaturalTransformation, NotNatural, NotVeryGood, VeryGoodFunctor,
    check_naturality, components_by_vertex_component, reverse_variance,
)
from .groupoid import Disconnected, EdgePath, pi1_presentation, tree_path
from . import equivalence, fixtures


class BundleError(ValueError):
    pass


class PosetMismatch(BundleError):
    pass


class NotRankOne(BundleError):
    pass


class ZeroScale(BundleError):
    pass


@dataclass(frozen=True)
class VeryGoodBundle:
    functor: VeryGoodFunctor

    def __post_init__(self):
        if self.functor.variance != CO:
            raise FunctorError("a bundle is described by a covariant functor")
        rep = self.functor.report
        if not rep.passed:
            raise NotVeryGood("; ".join(rep.lines()))

    @property
    def poset(self) -> CoverPoset:
        return self.functor.poset

    def dim(self, s) -> int:
        return self.functor.dim(s)


@dataclass(frozen=True)
class BundleMorphism:
    eta: NaturalTransformation

    def __post_init__(self):
        rep = check_naturality(self.eta)
        if not rep.passed:
            raise NotNatural("; ".join(rep.lines()))

    @classmethod
    def between(cls, source: VeryGoodBundle, target: VeryGoodBundle, components) -> BundleMorphism:
        return cls(NaturalTransformation(source.functor, target.functor, components))

    @property
    def source(self) -> VeryGoodBundle:
        return VeryGoodBundle(self.eta.source)

    @property
    def target(self) -> VeryGoodBundle:
        return VeryGoodBundle(self.eta.target)

    def __getitem__(self, s) -> Matrix:
        return self.eta[s]

    def then(self, other: BundleMorphism) -> BundleMorphism:
        return BundleMorphism(self.eta.then(other.eta))


def zero_bundle(P: CoverPoset) -> VeryGoodBundle:
    return VeryGoodBundle(VeryGoodFunctor(
        P, CO, {s: 0 for s in P.objects}, {e: Matrix.zeros(0, 0) for e in P.hasse_edges}
    ))


def zero_morphism(A: VeryGoodBundle, B: VeryGoodBundle) -> BundleMorphism:
    return BundleMorphism(NaturalTransformation.zero(A.functor, B.functor))


def identity_morphism(A: VeryGoodBundle) -> BundleMorphism:
    return BundleMorphism(NaturalTransformation.identity(A.functor))


@dataclass(frozen=True)
class Biproduct:
    bundle: VeryGoodBundle
    injections: tuple[BundleMorphism, BundleMorphism]
    projections: tuple[BundleMorphism, BundleMorphism]


def biproduct(A: VeryGoodBundle, B: VeryGoodBundle) -> Biproduct:
    if A.poset.complex != B.poset.complex:
        raise PosetMismatch("bundles live on different complexes")
    P = A.poset
    FA, FB = A.functor, B.functor
    S = VeryGoodBundle(VeryGoodFunctor(
        P, CO, {s: FA.dim(s) + FB.dim(s) for s in P.objects},
        {e: Matrix.block_diag([FA.maps[e], FB.maps[e]]) for e in P.hasse_edges},
    ))
    i1, i2, p1, p2 = {}, {}, {}, {}
    for s in P.objects:
        a, b = FA.dim(s), FB.dim(s)
        i1[s] = Matrix.vstack([Matrix.identity(a), Matrix.zeros(b, a)], cols=a)
        i2[s] = Matrix.vstack([Matrix.zeros(a, b), Matrix.identity(b)], cols=b)
        p1[s] = i1[s].T
        p2[s] = i2[s].T
    return Biproduct(
        S,
        (BundleMorphism.between(A, S, i1), BundleMorphism.between(B, S, i2)),
        (BundleMorphism.between(S, A, p1), BundleMorphism.between(S, B, p2)),
    )


@dataclass(frozen=True)
class KernelData:
    bundle: VeryGoodBundle
    inclusion: BundleMorphism


@dataclass(frozen=True)
class CokernelData:
    bundle: VeryGoodBundle
    projection: BundleMorphism


def kernel_bundle(m: BundleMorphism) -> KernelData:
    """``ker eta[s]`` at every object, with edge maps restricted from the source."""
    F = m.eta.source
    P = F.poset
    inc = {s: kernel_basis(m[s]) for s in P.objects}
    maps = {}
    for s, t in P.hasse_edges:
        # F(s<t) inc_s = inc_t X
        maps[(s, t)] = inc[t].solve(F.edge_map(s, t) @ inc[s])
    K = VeryGoodBundle(VeryGoodFunctor(P, CO, {s: inc[s].cols for s in P.objects}, maps))
    return KernelData(K, BundleMorphism.between(K, m.source, inc))


def cokernel_bundle(m: BundleMorphism) -> CokernelData:
    """``target / im eta[s]`` at every object, with induced edge maps."""
    G = m.eta.target
    P = G.poset
    proj = {s: cokernel_projection(m[s])[1] for s in P.objects}
    maps = {}
    for s, t in P.hasse_edges:
        # Y proj_s = proj_t G(s<t)
        rhs = proj[t] @ G.edge_map(s, t)
        maps[(s, t)] = proj[s].T.solve(rhs.T).T
    C = VeryGoodBundle(VeryGoodFunctor(P, CO, {s: proj[s].rows for s in P.objects}, maps))
    return CokernelData(C, BundleMorphism.between(m.target, C, proj))


def factor_through_kernel(k: KernelData, g: BundleMorphism) -> BundleMorphism:
    """The unique ``u`` with ``inclusion . u == g``; ``g`` must be killed by the morphism."""
    return BundleMorphism.between(
        g.source, k.bundle, {s: k.inclusion[s].solve(g[s]) for s in k.bundle.poset.objects}
    )


def factor_through_cokernel(c: CokernelData, g: BundleMorphism) -> BundleMorphism:
    """The unique ``u`` with ``u . projection == g``; ``g`` must kill the morphism."""
    return BundleMorphism.between(
        c.bundle, g.target,
        {s: c.projection[s].T.solve(g[s].T).T for s in c.bundle.poset.objects},
    )


@dataclass
class RankProfile:
    ranks: dict[Simplex, int]
    per_component: dict[int, set[int]]

    @property
    def constant(self) -> bool:
        return all(len(r) == 1 for r in self.per_component.values())


def rank_profile(m: BundleMorphism) -> RankProfile:
    ranks = {s: m[s].rank() for s in m.eta.source.poset.objects}
    comp = components_by_vertex_component(m.eta.source)
    per: dict[int, set[int]] = {}
    for s, r in ranks.items():
        per.setdefault(comp[s], set()).add(r)
    return RankProfile(ranks, per)


@dataclass
class MonoEpiReport:
    mono: bool
    epi: bool
    mono_is_kernel_of_cokernel: bool | None = None
    epi_is_cokernel_of_kernel: bool | None = None
    comparisons: dict[str, BundleMorphism] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.mono_is_kernel_of_cokernel is not False and self.epi_is_cokernel_of_kernel is not False

    def lines(self) -> list[str]:
        out = [f"mono: {self.mono}", f"epi: {self.epi}"]
        if self.mono_is_kernel_of_cokernel is not None:
            out.append(f"mono = ker(coker): {'PASS' if self.mono_is_kernel_of_cokernel else 'FAIL'}")
        if self.epi_is_cokernel_of_kernel is not None:
            out.append(f"epi = coker(ker): {'PASS' if self.epi_is_cokernel_of_kernel else 'FAIL'}")
        return out


def mono_epi_check(m: BundleMorphism) -> MonoEpiReport:
    objs = m.eta.source.poset.objects
    mono = all(m[s].rank() == m[s].cols for s in objs)
    epi = all(m[s].rank() == m[s].rows for s in objs)
    rep = MonoEpiReport(mono, epi)
    if mono:
        kc = kernel_bundle(cokernel_bundle(m).projection)
        # phi : source -> ker(coker m) with inclusion . phi = m
        comps = {s: kc.inclusion[s].solve(m[s]) for s in objs}
        ok = all(comps[s].is_invertible() and kc.inclusion[s] @ comps[s] == m[s] for s in objs)
        try:
            cmp_ = BundleMorphism.between(m.source, kc.bundle, comps)
        except NotNatural:
            ok = False
        else:
            rep.comparisons["mono"] = cmp_
        rep.mono_is_kernel_of_cokernel = ok
    if epi:
        ck = cokernel_bundle(kernel_bundle(m).inclusion)
        # psi : coker(ker m) -> target with psi . projection = m
        comps = {s: ck.projection[s].T.solve(m[s].T).T for s in objs}
        ok = all(comps[s].is_invertible() and comps[s] @ ck.projection[s] == m[s] for s in objs)
        try:
            cmp_ = BundleMorphism.between(ck.bundle, m.target, comps)
        except NotNatural:
            ok = False
        else:
            rep.comparisons["epi"] = cmp_
        rep.epi_is_cokernel_of_kernel = ok
    return rep


def bundle_monodromy(F: VeryGoodBundle, loop: EdgePath) -> Matrix:
    """Parallel transport along ``loop`` read as a map from the last fibre to the first.

    Each step ``(a, b)`` contributes ``F(a < ab)^-1 F(b < ab)``. This agrees
    with ``psi_path`` applied to the contravariant functor obtained by
    inverting every edge map.
    """
    return equivalence.psi_path(reverse_variance(F.functor), loop)


@dataclass
class IsoVerdict:
    isomorphic: bool
    monodromy: dict[Simplex, tuple[Fraction, Fraction]]
    witness: BundleMorphism | None = None


def iso_check_rank_one(A: VeryGoodBundle, B: VeryGoodBundle) -> IsoVerdict:
    """Line bundles are isomorphic exactly when their monodromy scalars agree."""
    if A.poset.complex != B.poset.complex:
        raise PosetMismatch("bundles live on different complexes")
    K = A.poset.complex
    for X in (A, B):
        if any(X.dim(s) != 1 for s in K.simplices):
            raise NotRankOne("every fibre must be one-dimensional")
    if not is_connected(K):
        raise Disconnected("rank-one comparison needs a connected complex")
    w = K.vertices[0]
    P = pi1_presentation(K, w)
    mono = {}
    for i, g in enumerate(P.generators):
        loop = P.generator_loop(i)
        mono[g] = (bundle_monodromy(A, loop)[0, 0], bundle_monodromy(B, loop)[0, 0])
    if any(x != y for x, y in mono.values()):
        return IsoVerdict(False, mono)
    # transport both bundles back to w along the tree
    FA, FB = A.functor, B.functor
    comps = {}
    for v in K.vertices:
        g = tree_path(P.tree, w, v)
        comps[(v,)] = bundle_monodromy(B, g).invert() @ bundle_monodromy(A, g)
    for s in K.simplices:
        if len(s) > 1:
            v = (s[0],)
            comps[s] = FB.evaluate_inclusion(v, s) @ comps[v] @ FA.evaluate_inclusion(v, s).invert()
    return IsoVerdict(True, mono, BundleMorphism.between(A, B, comps))


def mobius_fixture(scale) -> VeryGoodBundle:
    """Line bundle on the 3-vertex circle with ``[[scale]]`` on ``(0,) < (0, 2)``."""
    scale = Fraction(scale)
    if scale == 0:
        raise ZeroScale("the twisting scalar must be nonzero")
    return VeryGoodBundle(fixtures.mobius_functor(scale, CO))
