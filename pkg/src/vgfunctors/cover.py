"""The star-cover poset of a triangulation and zigzag composition.

The open star neighbourhoods ``U_s`` of a triangulated space are ordered
exactly like the faces of the complex: ``U_s`` sits inside ``U_t`` when ``s``
is a face of ``t``, and ``U_s & U_t`` is ``U_{s & t}`` (or empty). So the
whole cover is modelled by the face poset, with codimension-one inclusions as
its Hasse diagram.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .complex import Simplex, SimplicialComplex
from .exactla import Matrix


class UnknownSimplex(KeyError):
    pass


class IncompatibleZigzag(ValueError):
    pass


HasseEdge = tuple[Simplex, Simplex]


@dataclass(frozen=True)
class CoverPoset:
    complex: SimplicialComplex

    @property
    def objects(self) -> tuple[Simplex, ...]:
        return self.complex.simplices

    @cached_property
    def hasse_edges(self) -> tuple[HasseEdge, ...]:
        out = []
        for t in self.complex.simplices:
            if len(t) > 1:
                for s in combinations(t, len(t) - 1):
                    out.append((s, t))
        return tuple(sorted(out, key=lambda e: (len(e[1]), e[1], e[0])))

    @cached_property
    def _facets(self) -> dict[Simplex, list[Simplex]]:
        out: dict[Simplex, list[Simplex]] = {s: [] for s in self.objects}
        for s, t in self.hasse_edges:
            out[t].append(s)
        return out

    @cached_property
    def _cofacets(self) -> dict[Simplex, list[Simplex]]:
        out: dict[Simplex, list[Simplex]] = {s: [] for s in self.objects}
        for s, t in self.hasse_edges:
            out[s].append(t)
        return out

    def require(self, s) -> Simplex:
        s = tuple(s)
        if s not in self.complex:
            raise UnknownSimplex(s)
        return s

    def facets_of(self, t: Simplex) -> list[Simplex]:
        return list(self._facets[self.require(t)])

    def cofacets_of(self, s: Simplex) -> list[Simplex]:
        return list(self._cofacets[self.require(s)])

    def leq(self, s: Simplex, t: Simplex) -> bool:
        """``U_s`` is contained in ``U_t``."""
        return set(self.require(s)) <= set(self.require(t))

    def codim2_squares(self) -> list[tuple[Simplex, Simplex, Simplex, Simplex]]:
        """Every ``(s, t1, t2, u)`` with ``s < t1, t2 < u`` and ``|u| = |s| + 2``."""
        out = []
        for u in self.objects:
            if len(u) < 3:
                continue
            for i, j in combinations(range(len(u)), 2):
                s = tuple(v for k, v in enumerate(u) if k not in (i, j))
                t1 = tuple(v for k, v in enumerate(u) if k != j)
                t2 = tuple(v for k, v in enumerate(u) if k != i)
                out.append((s, t1, t2, u))
        return out


def cover_poset(K: SimplicialComplex) -> CoverPoset:
    return CoverPoset(K)


def cover_intersection(P: CoverPoset, s1, s2) -> Simplex | None:
    """``U_s1 & U_s2`` as a simplex, or ``None`` when the stars are disjoint."""
    a, b = P.require(s1), P.require(s2)
    common = tuple(sorted(set(a) & set(b)))
    return common or None


def canonical_chain(s: Simplex, t: Simplex) -> list[Simplex]:
    """Hasse chain from ``s`` up to ``t`` adding missing vertices in ascending order."""
    extra = sorted(set(t) - set(s))
    chain = [tuple(s)]
    cur = set(s)
    for v in extra:
        cur.add(v)
        chain.append(tuple(sorted(cur)))
    return chain


@dataclass(frozen=True)
class Zigzag:
    """A walk in the cover poset.

    ``objects[0]`` is the start; each later object must be comparable with the
    one before it. A step to a larger simplex is a forward hop, a step to a
    smaller one a backward hop.
    """

    objects: tuple[Simplex, ...]

    def __post_init__(self):
        if not self.objects:
            raise IncompatibleZigzag("a zigzag needs at least one object")
        objs = tuple(tuple(o) for o in self.objects)
        object.__setattr__(self, "objects", objs)
        for a, b in zip(objs, objs[1:]):
            if not (set(a) <= set(b) or set(b) <= set(a)):
                raise IncompatibleZigzag(f"{a} and {b} are not comparable")

    @property
    def start(self) -> Simplex:
        return self.objects[0]

    @property
    def end(self) -> Simplex:
        return self.objects[-1]

    def hops(self) -> list[tuple[Simplex, Simplex, bool]]:
        """``(a, b, forward)`` triples."""
        return [(a, b, set(a) <= set(b)) for a, b in zip(self.objects, self.objects[1:])]

    @classmethod
    def from_edge_path(cls, vertices: Sequence[int]) -> Zigzag:
        """``v0 -> v0v1 <- v1 -> v1v2 <- ... vr``."""
        objs = [(vertices[0],)]
        for a, b in zip(vertices, vertices[1:]):
            objs.append((min(a, b), max(a, b)))
            objs.append((b,))
        return cls(tuple(objs))


def compose_zigzag(F, z: Zigzag):
    """Composite of ``F`` along ``z``, a map ``F(z.end) -> F(z.start)``.

    Forward hops contribute ``F(a <= b)`` for a contravariant ``F`` and its
    inverse for a covariant one; backward hops the other way round.
    """
    for o in z.objects:
        if o not in F.poset.complex:
            raise IncompatibleZigzag(f"{o} is not an object of the functor's poset")
    out = Matrix.identity(F.dim(z.start))
    contra = F.variance == "contra"
    for a, b, forward in z.hops():
        if forward:
            m = F.evaluate_inclusion(a, b)
            step = m if contra else m.invert()
        else:
            m = F.evaluate_inclusion(b, a)
            step = m.invert() if contra else m
        out = out @ step
    return out
