"""Very good functors on the cover poset, with values in finite-dimensional
rational vector spaces.

A functor is stored by its dimension at every simplex and one matrix per Hasse
edge ``s < t``. Contravariant functors carry ``F(t) -> F(s)``, covariant ones
``F(s) -> F(t)``. Inclusions of higher codimension are composed on demand,
which is well defined exactly when every codimension-two square commutes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .complex import Simplex, component_of
from .cover import CoverPoset, HasseEdge, canonical_chain
from .exactla import Matrix, kernel_basis

CONTRA = "contra"
CO = "co"


class FunctorError(ValueError):
    pass


class SizeMismatch(FunctorError):
    pass


class NotVeryGood(FunctorError):
    pass


class NotAFace(FunctorError):
    pass


class NotNatural(FunctorError):
    pass


@dataclass(frozen=True, eq=False)
class VeryGoodFunctor:
    poset: CoverPoset
    variance: str
    dims: Mapping[Simplex, int]
    maps: Mapping[HasseEdge, Matrix]

    def __post_init__(self):
        if self.variance not in (CONTRA, CO):
            raise FunctorError(f"variance must be {CONTRA!r} or {CO!r}")
        dims = {tuple(s): int(d) for s, d in self.dims.items()}
        maps = {(tuple(s), tuple(t)): m for (s, t), m in self.maps.items()}
        objs = set(self.poset.objects)
        if set(dims) != objs:
            missing = objs - set(dims)
            extra = set(dims) - objs
            raise SizeMismatch(f"dims must cover every simplex (missing {sorted(missing)}, extra {sorted(extra)})")
        if any(d < 0 for d in dims.values()):
            raise SizeMismatch("negative dimension")
        edges = set(self.poset.hasse_edges)
        if set(maps) != edges:
            missing = edges - set(maps)
            extra = set(maps) - edges
            raise SizeMismatch(f"maps must cover every Hasse edge (missing {sorted(missing)}, extra {sorted(extra)})")
        for (s, t), m in maps.items():
            want = (dims[s], dims[t]) if self.variance == CONTRA else (dims[t], dims[s])
            if m.shape != want:
                raise SizeMismatch(f"map on {s}<{t} has shape {m.shape}, expected {want}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", maps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VeryGoodFunctor):
            return NotImplemented
        return (self.poset.complex == other.poset.complex and self.variance == other.variance
                and self.dims == other.dims and self.maps == other.maps)

    def dim(self, s) -> int:
        return self.dims[tuple(s)]

    def edge_map(self, s, t) -> Matrix:
        return self.maps[(tuple(s), tuple(t))]

    @cached_property
    def report(self) -> VeryGoodReport:
        return check_very_good(self)

    def evaluate_inclusion(self, s, t) -> Matrix:
        return evaluate_inclusion(self, s, t)


@dataclass
class VeryGoodReport:
    non_invertible: list[HasseEdge] = field(default_factory=list)
    incoherent: list[tuple[Simplex, Simplex, Simplex, Simplex]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.non_invertible and not self.incoherent

    def lines(self) -> list[str]:
        out = [f"Invertibility: {s}<{t} not invertible" for s, t in self.non_invertible]
        out += [f"Coherence: {s}<{t1}<{u} != {s}<{t2}<{u}" for s, t1, t2, u in self.incoherent]
        return out


def _compose_chain(F: VeryGoodFunctor, chain: list[Simplex]) -> Matrix:
    out = Matrix.identity(F.dim(chain[0] if F.variance == CONTRA else chain[-1]))
    steps = list(zip(chain, chain[1:]))
    if F.variance == CONTRA:
        # F(c0<ck) = F(c0<c1) F(c1<c2) ... : F(ck) -> F(c0)
        for s, t in steps:
            out = out @ F.edge_map(s, t)
    else:
        for s, t in reversed(steps):
            out = out @ F.edge_map(s, t)
    return out


def check_very_good(F: VeryGoodFunctor) -> VeryGoodReport:
    rep = VeryGoodReport()
    for e in F.poset.hasse_edges:
        if not F.maps[e].is_invertible():
            rep.non_invertible.append(e)
    for s, t1, t2, u in F.poset.codim2_squares():
        if _compose_chain(F, [s, t1, u]) != _compose_chain(F, [s, t2, u]):
            rep.incoherent.append((s, t1, t2, u))
    return rep


def evaluate_inclusion(F: VeryGoodFunctor, s, t) -> Matrix:
    """``F(s <= t)`` composed along a Hasse chain."""
    s, t = F.poset.require(s), F.poset.require(t)
    if not set(s) <= set(t):
        raise NotAFace(f"{s} is not a face of {t}")
    if not F.report.passed:
        raise NotVeryGood("; ".join(F.report.lines()))
    return _compose_chain(F, canonical_chain(s, t))


def _require_invertible(m: Matrix, what: str) -> Matrix:
    try:
        return m.invert()
    except ValueError as exc:
        raise NotVeryGood(f"{what}: {exc}") from exc


def gauge_twist(F: VeryGoodFunctor, A: Mapping[Simplex, Matrix]) -> VeryGoodFunctor:
    """Conjugate every edge map by the per-object isomorphisms ``A``.

    ``A`` itself is then a natural isomorphism from ``F`` to the result.
    """
    A = {tuple(s): m for s, m in A.items()}
    inv = {}
    for s in F.poset.objects:
        a = A.get(s, Matrix.identity(F.dim(s)))
        if a.shape != (F.dim(s), F.dim(s)):
            raise SizeMismatch(f"gauge at {s} has shape {a.shape}, expected {(F.dim(s),) * 2}")
        A[s] = a
        inv[s] = a.invert()
    maps = {}
    for (s, t), m in F.maps.items():
        if F.variance == CONTRA:
            maps[(s, t)] = A[s] @ m @ inv[t]
        else:
            maps[(s, t)] = A[t] @ m @ inv[s]
    return VeryGoodFunctor(F.poset, F.variance, F.dims, maps)


def dualize(F: VeryGoodFunctor) -> VeryGoodFunctor:
    """Objectwise dual: transpose every edge map and flip the variance."""
    return VeryGoodFunctor(
        F.poset, CO if F.variance == CONTRA else CONTRA, F.dims,
        {e: m.T for e, m in F.maps.items()},
    )


def reverse_variance(F: VeryGoodFunctor) -> VeryGoodFunctor:
    """Invert every edge map and flip the variance.

    Unlike :func:`dualize` this keeps the direction of natural
    transformations, so it is an isomorphism of functor categories.
    """
    return VeryGoodFunctor(
        F.poset, CO if F.variance == CONTRA else CONTRA, F.dims,
        {e: _require_invertible(m, f"edge {e}") for e, m in F.maps.items()},
    )


def constant_functor(P: CoverPoset, dim: int, variance: str = CONTRA) -> VeryGoodFunctor:
    return VeryGoodFunctor(
        P, variance, {s: dim for s in P.objects},
        {e: Matrix.identity(dim) for e in P.hasse_edges},
    )


@dataclass(frozen=True)
class FiniteLimit:
    dim: int
    projections: dict[Simplex, Matrix]


def finite_limit(F: VeryGoodFunctor) -> FiniteLimit:
    """Limit of ``F`` over the cover poset.

    A point of the limit is a family ``x_s`` with ``F(s<t) x_t = x_s`` on every
    Hasse edge (``F(s<t) x_s = x_t`` when covariant). The solution space of this
    system, with its coordinate projections, is the limit cone.
    """
    objs = list(F.poset.objects)
    offset = {}
    n = 0
    for s in objs:
        offset[s] = n
        n += F.dim(s)
    rows = []
    for (s, t), m in F.maps.items():
        src, dst = (t, s) if F.variance == CONTRA else (s, t)
        for i in range(m.rows):
            row = [0] * n
            for j in range(m.cols):
                row[offset[src] + j] += m[i, j]
            row[offset[dst] + i] -= 1
            rows.append(row)
    system = Matrix(rows, cols=n)
    basis = kernel_basis(system)
    projections = {
        s: basis.submatrix(range(offset[s], offset[s] + F.dim(s)), range(basis.cols))
        for s in objs
    }
    return FiniteLimit(basis.cols, projections)


@dataclass(frozen=True, eq=False)
class NaturalTransformation:
    source: VeryGoodFunctor
    target: VeryGoodFunctor
    components: Mapping[Simplex, Matrix]

    def __post_init__(self):
        if self.source.poset.complex != self.target.poset.complex:
            raise SizeMismatch("source and target live on different posets")
        if self.source.variance != self.target.variance:
            raise SizeMismatch("source and target have different variance")
        comps = {tuple(s): m for s, m in self.components.items()}
        if set(comps) != set(self.source.poset.objects):
            raise SizeMismatch("components must cover every simplex")
        for s, m in comps.items():
            want = (self.target.dim(s), self.source.dim(s))
            if m.shape != want:
                raise SizeMismatch(f"component at {s} has shape {m.shape}, expected {want}")
        object.__setattr__(self, "components", comps)

    def __getitem__(self, s) -> Matrix:
        return self.components[tuple(s)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, NaturalTransformation):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.components == other.components)

    def then(self, other: NaturalTransformation) -> NaturalTransformation:
        """``other . self``."""
        return NaturalTransformation(
            self.source, other.target,
            {s: other[s] @ self[s] for s in self.components},
        )

    def is_iso(self) -> bool:
        return all(m.is_invertible() for m in self.components.values())

    def inverse(self) -> NaturalTransformation:
        return NaturalTransformation(
            self.target, self.source, {s: m.invert() for s, m in self.components.items()}
        )

    @classmethod
    def identity(cls, F: VeryGoodFunctor) -> NaturalTransformation:
        return cls(F, F, {s: Matrix.identity(F.dim(s)) for s in F.poset.objects})

    @classmethod
    def zero(cls, F: VeryGoodFunctor, G: VeryGoodFunctor) -> NaturalTransformation:
        return cls(F, G, {s: Matrix.zeros(G.dim(s), F.dim(s)) for s in F.poset.objects})


@dataclass
class NaturalityReport:
    failing: list[HasseEdge] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failing

    def lines(self) -> list[str]:
        return [f"Naturality: square over {s}<{t} does not commute" for s, t in self.failing]


def check_naturality(eta: NaturalTransformation) -> NaturalityReport:
    F, G = eta.source, eta.target
    rep = NaturalityReport()
    for s, t in F.poset.hasse_edges:
        if F.variance == CONTRA:
            ok = eta[s] @ F.edge_map(s, t) == G.edge_map(s, t) @ eta[t]
        else:
            ok = eta[t] @ F.edge_map(s, t) == G.edge_map(s, t) @ eta[s]
        if not ok:
            rep.failing.append((s, t))
    return rep


def require_natural(eta: NaturalTransformation) -> NaturalTransformation:
    rep = check_naturality(eta)
    if not rep.passed:
        raise NotNatural("; ".join(rep.lines()))
    return eta


def components_by_vertex_component(F: VeryGoodFunctor) -> dict[Simplex, int]:
    """Label each simplex by the smallest vertex of its connected component."""
    comp = component_of(F.poset.complex)
    return {s: comp[s[0]] for s in F.poset.objects}
