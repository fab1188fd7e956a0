"""Finite abstract simplicial complexes."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Simplex = tuple[int, ...]


class ComplexError(ValueError):
    pass


class EmptyFacet(ComplexError):
    pass


class VertexOutOfRange(ComplexError):
    pass


class NotFaceClosed(ComplexError):
    pass


def simplex_key(s: Simplex) -> tuple:
    return (len(s), s)


@dataclass(frozen=True)
class SimplicialComplex:
    """A face-closed set of simplices on vertices ``0 .. vertex_count-1``.

    Simplices are ascending vertex tuples, stored sorted by dimension and then
    lexicographically. Use :func:`close_under_faces` to build one from facets.
    """

    vertex_count: int
    simplices: tuple[Simplex, ...]

    def __post_init__(self):
        seen = set()
        for s in self.simplices:
            if not s:
                raise EmptyFacet("empty simplex")
            if list(s) != sorted(set(s)):
                raise ComplexError(f"simplex {s} is not strictly ascending")
            if s[0] < 0 or s[-1] >= self.vertex_count:
                raise VertexOutOfRange(f"simplex {s} uses a vertex outside 0..{self.vertex_count - 1}")
            if s in seen:
                raise ComplexError(f"duplicate simplex {s}")
            seen.add(s)
        for s in self.simplices:
            if len(s) > 1:
                for face in combinations(s, len(s) - 1):
                    if face not in seen:
                        raise NotFaceClosed(f"face {face} of {s} is missing")
        ordered = tuple(sorted(self.simplices, key=simplex_key))
        object.__setattr__(self, "simplices", ordered)

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.simplices)

    @cached_property
    def index(self) -> dict[Simplex, int]:
        return {s: i for i, s in enumerate(self.simplices)}

    def __contains__(self, s) -> bool:
        return tuple(s) in self._set

    def __len__(self) -> int:
        return len(self.simplices)

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def simplices_of_dim(self, k: int) -> list[Simplex]:
        return [s for s in self.simplices if len(s) == k + 1]

    @property
    def vertices(self) -> list[int]:
        return [s[0] for s in self.simplices if len(s) == 1]

    @property
    def edges(self) -> list[Simplex]:
        return self.simplices_of_dim(1)

    @property
    def triangles(self) -> list[Simplex]:
        return self.simplices_of_dim(2)

    @cached_property
    def neighbours(self) -> dict[int, list[int]]:
        nb: dict[int, list[int]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            nb[a].append(b)
            nb[b].append(a)
        return {v: sorted(ns) for v, ns in nb.items()}

    def facets(self) -> list[Simplex]:
        """Maximal simplices."""
        cofaces = set()
        for s in self.simplices:
            for face in combinations(s, len(s) - 1):
                if face:
                    cofaces.add(face)
        return [s for s in self.simplices if s not in cofaces]

    def f_vector(self) -> list[int]:
        return [len(self.simplices_of_dim(k)) for k in range(self.dimension + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices)

    def is_edge(self, a: int, b: int) -> bool:
        return a != b and (min(a, b), max(a, b)) in self._set


def close_under_faces(facets: Iterable[Sequence[int]], vertex_count: int) -> SimplicialComplex:
    """The smallest complex containing every given facet."""
    out = set()
    for facet in facets:
        f = tuple(sorted(set(facet)))
        if not f:
            raise EmptyFacet("facets must be nonempty")
        if f[0] < 0 or f[-1] >= vertex_count:
            raise VertexOutOfRange(f"facet {list(facet)} has a vertex outside 0..{vertex_count - 1}")
        for k in range(1, len(f) + 1):
            out.update(combinations(f, k))
    return SimplicialComplex(vertex_count, tuple(out))


def skeleton(K: SimplicialComplex, p: int) -> SimplicialComplex:
    if p < 0:
        raise ValueError("skeleton dimension must be nonnegative")
    return SimplicialComplex(K.vertex_count, tuple(s for s in K.simplices if len(s) <= p + 1))


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """First barycentric subdivision.

    Vertex ``i`` of the result is the barycentre of ``K.simplices[i]``; its
    simplices are the strict chains of faces of ``K``.
    """
    idx = K.index
    # proper cofaces one dimension up
    up: dict[Simplex, list[Simplex]] = {s: [] for s in K.simplices}
    for s in K.simplices:
        for face in combinations(s, len(s) - 1):
            if face:
                up[face].append(s)

    chains = set()

    def extend(chain: tuple[Simplex, ...]):
        chains.add(tuple(sorted(idx[s] for s in chain)))
        for t in _all_cofaces(chain[-1], up):
            extend(chain + (t,))

    for s in K.simplices:
        extend((s,))
    return SimplicialComplex(len(K.simplices), tuple(chains))


def _all_cofaces(s: Simplex, up: dict[Simplex, list[Simplex]]) -> set[Simplex]:
    out = set()
    todo = list(up[s])
    while todo:
        t = todo.pop()
        if t not in out:
            out.add(t)
            todo.extend(up[t])
    return out


def connected_components(K: SimplicialComplex) -> list[list[int]]:
    """Vertex sets of the components of the 1-skeleton, ordered by smallest vertex."""
    parent = {v: v for v in K.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in K.edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for v in K.vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def component_of(K: SimplicialComplex) -> dict[int, int]:
    """Map each vertex to the smallest vertex of its component."""
    return {v: comp[0] for comp in connected_components(K) for v in comp}


def is_connected(K: SimplicialComplex) -> bool:
    return len(connected_components(K)) <= 1


@dataclass(frozen=True)
class MaximalTree:
    root: int
    edges: frozenset[Simplex]
    parent: dict[int, int | None] = field(compare=False, repr=False)

    @property
    def vertices(self) -> list[int]:
        return sorted(self.parent)

    def __contains__(self, edge) -> bool:
        a, b = edge
        return (min(a, b), max(a, b)) in self.edges

    def path_to_root(self, v: int) -> list[int]:
        if v not in self.parent:
            raise KeyError(v)
        out = [v]
        while self.parent[out[-1]] is not None:
            out.append(self.parent[out[-1]])
        return out


def maximal_tree(K: SimplicialComplex, root: int) -> MaximalTree:
    """Breadth-first spanning tree of the component of ``root``.

    Neighbours are visited in ascending order, so the tree is deterministic.
    """
    if (root,) not in K:
        raise VertexOutOfRange(f"{root} is not a vertex of the complex")
    parent: dict[int, int | None] = {root: None}
    edges = set()
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in K.neighbours[u]:
            if v not in parent:
                parent[v] = u
                edges.add((min(u, v), max(u, v)))
                queue.append(v)
    return MaximalTree(root, frozenset(edges), parent)
