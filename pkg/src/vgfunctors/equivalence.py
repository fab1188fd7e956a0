"""Explicit equivalences between the three descriptions of a local system.

* ``psi`` / ``phi`` go between contravariant very good functors on the cover
  poset and functors on the edge-path groupoid. ``psi(phi(G)) == G`` on the
  nose; ``beta`` is the natural isomorphism ``phi(psi(F)) -> F``.
* ``theta`` / ``lambda_rep`` go between groupoid functors on a connected
  complex and representations of the fundamental group at a basepoint.

Inside ``phi`` a simplex ``(v0, .., vk)`` is always read in ascending vertex
order; its ``i``-th face ``d^i`` drops ``vi``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .complex import Simplex
from .cover import CoverPoset, cover_poset
from .exactla import Matrix
from .functor import (
    CONTRA, FunctorError, NaturalTransformation, NotNatural, NotVeryGood, VeryGoodFunctor,
    check_naturality, check_very_good,
)
from .groupoid import (
    EdgePath, GroupoidFunctor, InvalidRep, RelationViolated, Representation,
    check_groupoid_naturality, check_path, pi1_presentation, rep_evaluate, rep_validate,
    tree_path,
)


def _require_contra_very_good(F: VeryGoodFunctor) -> None:
    if F.variance != CONTRA:
        raise FunctorError("expected a contravariant functor")
    if not F.report.passed:
        raise NotVeryGood("; ".join(F.report.lines()))


def _edge_factor(F: VeryGoodFunctor, a: int, b: int) -> Matrix:
    """``F(p) F(q)^-1 : F(b) -> F(a)`` through the edge star ``U_ab``."""
    e = (min(a, b), max(a, b))
    return F.edge_map((a,), e) @ F.edge_map((b,), e).invert()


def psi(F: VeryGoodFunctor) -> GroupoidFunctor:
    _require_contra_very_good(F)
    K = F.poset.complex
    return GroupoidFunctor(
        K, {v: F.dim((v,)) for v in K.vertices},
        {(a, b): _edge_factor(F, a, b) for a, b in K.edges},
    )


def psi_path(F: VeryGoodFunctor, f: EdgePath) -> Matrix:
    """Composite along ``v0 -> v0v1 <- v1 -> ... vr``, a map ``F(vr) -> F(v0)``."""
    _require_contra_very_good(F)
    check_path(F.poset.complex, f)
    out = Matrix.identity(F.dim((f.start,)))
    for a, b in f.steps():
        out = out @ _edge_factor(F, a, b)
    return out


def psi_on_morphism(eta: NaturalTransformation) -> dict[int, Matrix]:
    rep = check_naturality(eta)
    if not rep.passed:
        raise NotNatural("; ".join(rep.lines()))
    return {v: eta[(v,)] for v in eta.source.poset.complex.vertices}


def phi(G: GroupoidFunctor, poset: CoverPoset | None = None) -> VeryGoodFunctor:
    """Extend ``G`` skeleton by skeleton to a very good functor on the cover.

    The value at ``(v0, .., vk)`` is ``G(vk)``; the face map dropping ``v0`` is
    the identity. On an edge the face map from ``(v0,)`` is ``G((v0, v1))``;
    in dimension ``k >= 2`` the face map dropping ``vi`` is
    ``F(t_0i < t_i)^-1 F(t_0i < t_0)`` where ``t_0``, ``t_i``, ``t_0i`` drop
    ``v0``, ``vi`` and both.
    """
    K = G.complex
    bad = G.relation_violations()
    if bad:
        raise RelationViolated(f"triangle relation fails on {bad}")
    P = poset if poset is not None else cover_poset(K)
    dims = {s: G.dims[s[-1]] for s in K.simplices}
    maps: dict[tuple[Simplex, Simplex], Matrix] = {}
    for s in K.simplices:
        k = len(s) - 1
        if k == 0:
            continue
        t0 = s[1:]
        maps[(t0, s)] = Matrix.identity(dims[s])
        if k == 1:
            maps[((s[0],), s)] = G.edge_matrices[s]
            continue
        for i in range(1, k + 1):
            ti = s[:i] + s[i + 1:]
            t0i = ti[1:]
            maps[(ti, s)] = maps[(t0i, ti)].invert() @ maps[(t0i, t0)]
    return VeryGoodFunctor(P, CONTRA, dims, maps)


def phi_on_morphism(G: GroupoidFunctor, H: GroupoidFunctor,
                    eta: Mapping[int, Matrix]) -> NaturalTransformation:
    """Component at ``(v0, .., vk)`` is ``eta[vk]``."""
    bad = check_groupoid_naturality(G, H, eta)
    if bad:
        raise NotNatural(f"not natural on edges {bad}")
    FG, FH = phi(G), phi(H)
    return NaturalTransformation(FG, FH, {s: eta[s[-1]] for s in G.complex.simplices})


def beta(F: VeryGoodFunctor) -> NaturalTransformation:
    """The natural isomorphism ``phi(psi(F)) -> F``.

    Identity on vertices, then ``F(d^0)^-1 beta[(v1, .., vk)]`` upwards.
    """
    _require_contra_very_good(F)
    comps: dict[Simplex, Matrix] = {}
    for s in F.poset.complex.simplices:
        if len(s) == 1:
            comps[s] = Matrix.identity(F.dim(s))
        else:
            comps[s] = F.edge_map(s[1:], s).invert() @ comps[s[1:]]
    return NaturalTransformation(phi(psi(F), F.poset), F, comps)


def theta(G: GroupoidFunctor, w: int) -> Representation:
    """Restrict ``G`` to loops at ``w``; generators act by their tree-conjugated loops."""
    P = pi1_presentation(G.complex, w)
    mats = {g: G.evaluate(P.generator_loop(i)) for i, g in enumerate(P.generators)}
    return Representation(P, G.dims[w], mats)


def theta_on_morphism(eta: Mapping[int, Matrix], w: int) -> Matrix:
    return eta[w]


def lambda_rep(rho: Representation) -> GroupoidFunctor:
    """Spread ``rho`` over every vertex; edge ``(a, b)`` acts by ``rho`` of its tree-conjugated loop."""
    P = rho.presentation
    report = rep_validate(P, rho)
    if not report.passed:
        raise InvalidRep("; ".join(report.lines()))
    K = P.complex
    return GroupoidFunctor(
        K, {v: rho.dim for v in K.vertices},
        {(a, b): rep_evaluate(P, rho, P.edge_loop(a, b)) for a, b in K.edges},
    )


def lambda_theta_iso(G: GroupoidFunctor, w: int) -> dict[int, Matrix]:
    """Components ``G(g_{w,v})`` of the natural isomorphism ``G -> lambda(theta(G))``."""
    P = pi1_presentation(G.complex, w)
    return {v: G.evaluate(tree_path(P.tree, w, v)) for v in G.complex.vertices}


@dataclass
class RoundtripReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, ok, detail))

    def lines(self) -> list[str]:
        return [f"{name}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail and not ok else "")
                for name, ok, detail in self.checks]


def roundtrip_report(obj) -> RoundtripReport:
    """Run the round trips on a representation or on a contravariant functor."""
    rep = RoundtripReport()
    if isinstance(obj, Representation):
        rho = obj
        G = lambda_rep(rho)
        rep.add("Λ output satisfies triangle relations", G.is_valid())
        F = phi(G)
        vg = check_very_good(F)
        rep.add("Φ output very good", vg.passed, "; ".join(vg.lines()))
        G2 = psi(F)
        rep.add("ΨΦ exact", G2 == G)
        rho2 = theta(G2, rho.basepoint)
        mism = [g for g in rho.presentation.generators
                if rho2.gen_matrices[g] != rho.gen_matrices[g]]
        rep.add("ΘΨΦΛ exact", rho2 == rho, f"generators differ: {mism}")
        return rep
    if isinstance(obj, VeryGoodFunctor):
        F = obj
        vg = check_very_good(F)
        rep.add("input very good", vg.passed, "; ".join(vg.lines()))
        if not vg.passed:
            return rep
        G = psi(F)
        rep.add("ΨΦ exact", psi(phi(G)) == G)
        b = beta(F)
        nat = check_naturality(b)
        rep.add("β natural", nat.passed, "; ".join(nat.lines()))
        rep.add("β invertible", b.is_iso())
        return rep
    raise TypeError(f"cannot round-trip a {type(obj).__name__}")
