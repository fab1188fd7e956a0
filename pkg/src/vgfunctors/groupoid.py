"""Edge-path groupoid of a simplicial complex and its representations.

Morphisms of the groupoid are edge-paths modulo two moves: removing a
backtrack ``(a, b, a) -> (a)`` and shortcutting ``(a, b, c) -> (a, c)`` across
a 2-simplex. A contravariant functor on it is determined by one invertible
matrix ``G((a, b)) : G(b) -> G(a)`` per edge ``a < b`` subject to
``G((a, b)) G((b, c)) = G((a, c))`` on every triangle ``a < b < c``.

Composition is pinned as ``G(f . g) = G(f) G(g)``, so evaluating a path
``(v0, ..., vr)`` multiplies edge matrices left to right and yields a map
``G(vr) -> G(v0)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .complex import MaximalTree, Simplex, SimplicialComplex, is_connected, maximal_tree
from .exactla import Matrix


class GroupoidError(ValueError):
    pass


class EndpointMismatch(GroupoidError):
    pass


class InvalidPath(GroupoidError):
    pass


class NotInComponent(GroupoidError):
    pass


class Disconnected(GroupoidError):
    pass


class NotALoop(GroupoidError):
    pass


class InvalidRep(GroupoidError):
    pass


class RelationViolated(GroupoidError):
    pass


@dataclass(frozen=True)
class EdgePath:
    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(int(v) for v in self.vertices)
        if not vs:
            raise InvalidPath("an edge-path needs at least one vertex")
        for a, b in zip(vs, vs[1:]):
            if a == b:
                raise InvalidPath(f"repeated vertex {a} is not an edge step")
        object.__setattr__(self, "vertices", vs)

    @classmethod
    def of(cls, *vs: int) -> EdgePath:
        return cls(tuple(vs))

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def is_loop(self) -> bool:
        return self.start == self.end

    def steps(self) -> list[tuple[int, int]]:
        return list(zip(self.vertices, self.vertices[1:]))

    def reversed(self) -> EdgePath:
        return EdgePath(self.vertices[::-1])

    def __mul__(self, other: EdgePath) -> EdgePath:
        return concatenate(self, other)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.vertices)) + ")"


def check_path(K: SimplicialComplex, f: EdgePath) -> EdgePath:
    if (f.start,) not in K:
        raise InvalidPath(f"{f.start} is not a vertex")
    for a, b in f.steps():
        if not K.is_edge(a, b):
            raise InvalidPath(f"({a},{b}) is not an edge of the complex")
    return f


def concatenate(f: EdgePath, g: EdgePath) -> EdgePath:
    if f.end != g.start:
        raise EndpointMismatch(f"{f} ends at {f.end} but {g} starts at {g.start}")
    return EdgePath(f.vertices + g.vertices[1:])


# relation moves

def remove_backtrack(f: EdgePath, i: int) -> EdgePath:
    """``(.., a, b, a, ..) -> (.., a, ..)`` at position ``i``."""
    vs = f.vertices
    if not (0 <= i and i + 2 < len(vs) and vs[i] == vs[i + 2]):
        raise InvalidPath(f"no backtrack at position {i} of {f}")
    return EdgePath(vs[: i + 1] + vs[i + 3:])


def insert_backtrack(K: SimplicialComplex, f: EdgePath, i: int, b: int) -> EdgePath:
    """``(.., a, ..) -> (.., a, b, a, ..)`` at position ``i``."""
    a = f.vertices[i]
    if not K.is_edge(a, b):
        raise InvalidPath(f"({a},{b}) is not an edge")
    vs = f.vertices
    return EdgePath(vs[: i + 1] + (b, a) + vs[i + 1:])


def contract_triangle(K: SimplicialComplex, f: EdgePath, i: int) -> EdgePath:
    """``(.., a, b, c, ..) -> (.., a, c, ..)`` when ``{a, b, c}`` is a 2-simplex."""
    vs = f.vertices
    if not (0 <= i and i + 2 < len(vs)):
        raise InvalidPath(f"no triple at position {i} of {f}")
    a, b, c = vs[i: i + 3]
    if a == c or tuple(sorted((a, b, c))) not in K:
        raise InvalidPath(f"({a},{b},{c}) does not span a 2-simplex")
    return EdgePath(vs[: i + 1] + vs[i + 2:])


def expand_triangle(K: SimplicialComplex, f: EdgePath, i: int, b: int) -> EdgePath:
    """``(.., a, c, ..) -> (.., a, b, c, ..)`` when ``{a, b, c}`` is a 2-simplex."""
    vs = f.vertices
    a, c = vs[i], vs[i + 1]
    if b in (a, c) or tuple(sorted((a, b, c))) not in K:
        raise InvalidPath(f"({a},{b},{c}) does not span a 2-simplex")
    return EdgePath(vs[: i + 1] + (b,) + vs[i + 1:])


def reduce_path(K: SimplicialComplex, f: EdgePath) -> EdgePath:
    """Apply backtrack removals and triangle shortcuts until none applies.

    Sound but not complete: equivalent paths may reduce to different results.
    """
    check_path(K, f)
    vs = list(f.vertices)
    changed = True
    while changed:
        changed = False
        for i in range(len(vs) - 2):
            a, b, c = vs[i: i + 3]
            if a == c:
                del vs[i + 1: i + 3]
                changed = True
                break
            if tuple(sorted((a, b, c))) in K:
                del vs[i + 1]
                changed = True
                break
    return EdgePath(tuple(vs))


def tree_path(T: MaximalTree, v: int, w: int) -> EdgePath:
    """The unique reduced path from ``v`` to ``w`` inside the tree."""
    if v not in T.parent or w not in T.parent:
        raise NotInComponent(f"{v} or {w} is outside the tree rooted at {T.root}")
    up_v = T.path_to_root(v)
    up_w = T.path_to_root(w)
    common = set(up_v) & set(up_w)
    meet = next(x for x in up_v if x in common)
    left = up_v[: up_v.index(meet) + 1]
    right = up_w[: up_w.index(meet)]
    return EdgePath(tuple(left + right[::-1]))


# groupoid functors

@dataclass(frozen=True, eq=False)
class GroupoidFunctor:
    complex: SimplicialComplex
    dims: Mapping[int, int]
    edge_matrices: Mapping[Simplex, Matrix]

    def __post_init__(self):
        dims = {int(v): int(d) for v, d in self.dims.items()}
        mats = {tuple(e): m for e, m in self.edge_matrices.items()}
        if set(dims) != set(self.complex.vertices):
            raise GroupoidError("dims must cover every vertex")
        if set(mats) != set(self.complex.edges):
            raise GroupoidError("edge_matrices must cover every edge")
        for (a, b), m in mats.items():
            if m.shape != (dims[a], dims[b]):
                raise GroupoidError(f"G(({a},{b})) has shape {m.shape}, expected {(dims[a], dims[b])}")
            if not m.is_invertible():
                raise GroupoidError(f"G(({a},{b})) is not invertible")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "edge_matrices", mats)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupoidFunctor):
            return NotImplemented
        return (self.complex == other.complex and self.dims == other.dims
                and self.edge_matrices == other.edge_matrices)

    @cached_property
    def _inverses(self) -> dict[Simplex, Matrix]:
        return {e: m.invert() for e, m in self.edge_matrices.items()}

    def arrow(self, a: int, b: int) -> Matrix:
        """``G((a, b)) : G(b) -> G(a)`` for either orientation."""
        if a < b:
            return self.edge_matrices[(a, b)]
        return self._inverses[(b, a)]

    def evaluate(self, f: EdgePath) -> Matrix:
        check_path(self.complex, f)
        out = Matrix.identity(self.dims[f.start])
        for a, b in f.steps():
            out = out @ self.arrow(a, b)
        return out

    def relation_violations(self) -> list[Simplex]:
        return [
            (a, b, c) for a, b, c in self.complex.triangles
            if self.arrow(a, b) @ self.arrow(b, c) != self.arrow(a, c)
        ]

    def is_valid(self) -> bool:
        return not self.relation_violations()


def groupoid_gauge(G: GroupoidFunctor, A: Mapping[int, Matrix]) -> GroupoidFunctor:
    """``G'((a,b)) = A_a G((a,b)) A_b^-1``; ``A`` is then an isomorphism ``G -> G'``."""
    return GroupoidFunctor(
        G.complex, G.dims,
        {(a, b): A[a] @ m @ A[b].invert() for (a, b), m in G.edge_matrices.items()},
    )


def check_groupoid_naturality(G: GroupoidFunctor, H: GroupoidFunctor,
                              eta: Mapping[int, Matrix]) -> list[Simplex]:
    """Edges where ``eta[a] G((a,b)) != H((a,b)) eta[b]``."""
    return [
        (a, b) for (a, b) in G.complex.edges
        if eta[a] @ G.arrow(a, b) != H.arrow(a, b) @ eta[b]
    ]


# fundamental group

Word = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Pi1Presentation:
    complex: SimplicialComplex
    basepoint: int
    tree: MaximalTree
    generators: tuple[Simplex, ...]
    relations: tuple[tuple[Simplex, Word], ...]

    @cached_property
    def generator_index(self) -> dict[Simplex, int]:
        return {g: i for i, g in enumerate(self.generators)}

    def generator_loop(self, i: int) -> EdgePath:
        """Tree-conjugated loop ``g_{w,a} . (a,b) . g_{b,w}`` for generator ``(a, b)``."""
        a, b = self.generators[i]
        return self.edge_loop(a, b)

    def edge_loop(self, a: int, b: int) -> EdgePath:
        w = self.basepoint
        return concatenate(concatenate(tree_path(self.tree, w, a), EdgePath.of(a, b)),
                           tree_path(self.tree, b, w))

    def format_word(self, word: Word) -> str:
        if not word:
            return "1"
        return " ".join(
            f"g{self.generators[i][0]}_{self.generators[i][1]}" + ("" if e == 1 else "^-1")
            for i, e in word
        )


def _word_of_steps(P: Pi1Presentation, steps: Iterable[tuple[int, int]]) -> Word:
    out = []
    for u, v in steps:
        if (u, v) in P.tree:
            continue
        key = (min(u, v), max(u, v))
        out.append((P.generator_index[key], 1 if u < v else -1))
    return tuple(out)


def pi1_presentation(K: SimplicialComplex, w: int) -> Pi1Presentation:
    if not is_connected(K):
        raise Disconnected("the fundamental group needs a connected complex")
    T = maximal_tree(K, w)
    gens = tuple(e for e in K.edges if e not in T.edges)
    P = Pi1Presentation(K, w, T, gens, ())
    rels = tuple(
        ((a, b, c), _word_of_steps(P, [(a, b), (b, c), (c, a)]))
        for a, b, c in K.triangles
    )
    return Pi1Presentation(K, w, T, gens, rels)


def loop_to_generator_word(P: Pi1Presentation, loop: EdgePath) -> Word:
    if not (loop.is_loop() and loop.start == P.basepoint):
        raise NotALoop(f"{loop} is not a loop at {P.basepoint}")
    check_path(P.complex, loop)
    return _word_of_steps(P, loop.steps())


def relation_matrix(P: Pi1Presentation) -> Matrix:
    """Exponent sums: one row per relation, one column per generator."""
    rows = []
    for _, word in P.relations:
        row = [0] * len(P.generators)
        for i, e in word:
            row[i] += e
        rows.append(row)
    return Matrix(rows, cols=len(P.generators))


@dataclass
class DerivationStep:
    generator: Simplex
    triangle: Simplex
    relation: str
    known_trivial: list[Simplex]

    def __str__(self) -> str:
        a, b = self.generator
        if self.known_trivial:
            known = ", ".join(f"g{x}_{y}" for x, y in self.known_trivial)
            return f"g{a}_{b} = 1 from relation {self.relation} of {self.triangle} given {known} = 1"
        return f"g{a}_{b} = 1 from relation {self.relation} of {self.triangle}"


def trivial_generator_derivation(P: Pi1Presentation) -> list[DerivationStep]:
    """Kill generators one at a time using relations with a single unknown letter.

    Returns the derivation steps in order; generators not reached are not
    provably trivial by this procedure.
    """
    dead: set[int] = set()
    steps = []
    progress = True
    while progress:
        progress = False
        for tri, word in P.relations:
            alive = {i for i, _ in word if i not in dead}
            if len(alive) != 1:
                continue
            (i,) = alive
            if sum(e for j, e in word if j == i) == 0:
                continue
            known = sorted({P.generators[j] for j, _ in word if j in dead})
            steps.append(DerivationStep(P.generators[i], tri, P.format_word(word), known))
            dead.add(i)
            progress = True
    return steps


# representations

@dataclass(frozen=True, eq=False)
class Representation:
    presentation: Pi1Presentation
    dim: int
    gen_matrices: Mapping[Simplex, Matrix]

    def __post_init__(self):
        mats = {tuple(g): m for g, m in self.gen_matrices.items()}
        if set(mats) != set(self.presentation.generators):
            raise InvalidRep("a matrix is needed for every generator")
        for g, m in mats.items():
            if m.shape != (self.dim, self.dim):
                raise InvalidRep(f"generator {g} has shape {m.shape}, expected {(self.dim, self.dim)}")
        object.__setattr__(self, "gen_matrices", mats)

    @property
    def basepoint(self) -> int:
        return self.presentation.basepoint

    def __eq__(self, other) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.presentation.complex == other.presentation.complex
                and self.basepoint == other.basepoint and self.dim == other.dim
                and self.gen_matrices == other.gen_matrices)

    def word(self, word: Word) -> Matrix:
        out = Matrix.identity(self.dim)
        for i, e in word:
            m = self.gen_matrices[self.presentation.generators[i]]
            out = out @ (m if e == 1 else m.invert())
        return out


@dataclass
class RepReport:
    non_invertible: list[Simplex] = field(default_factory=list)
    failing_relations: list[Simplex] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.non_invertible and not self.failing_relations

    def lines(self) -> list[str]:
        out = [f"generator {g} is not invertible" for g in self.non_invertible]
        out += [f"relation of triangle {t} fails" for t in self.failing_relations]
        return out


def rep_validate(P: Pi1Presentation, rho: Representation) -> RepReport:
    rep = RepReport()
    for g in P.generators:
        if not rho.gen_matrices[g].is_invertible():
            rep.non_invertible.append(g)
    if rep.non_invertible:
        return rep
    for tri, word in P.relations:
        if not rho.word(word).is_identity():
            rep.failing_relations.append(tri)
    return rep


def rep_evaluate(P: Pi1Presentation, rho: Representation, loop: EdgePath) -> Matrix:
    word = loop_to_generator_word(P, loop)
    report = rep_validate(P, rho)
    if not report.passed:
        raise InvalidRep("; ".join(report.lines()))
    return rho.word(word)


def random_path(K: SimplicialComplex, rng, length: int, start: int | None = None,
                end: int | None = None) -> EdgePath:
    """Random walk of ``length`` steps; if ``end`` is given, close it with a tree path."""
    vs = [start if start is not None else rng.choice(K.vertices)]
    for _ in range(length):
        nb = K.neighbours[vs[-1]]
        if not nb:
            break
        vs.append(rng.choice(nb))
    f = EdgePath(tuple(vs))
    if end is not None and f.end != end:
        f = concatenate(f, tree_path(maximal_tree(K, end), f.end, end))
    return f


def random_moves(K: SimplicialComplex, f: EdgePath, rng, count: int) -> EdgePath:
    """Apply ``count`` random relation moves (in either direction) to ``f``."""
    for _ in range(count):
        options = []
        vs = f.vertices
        for i in range(len(vs) - 2):
            if vs[i] == vs[i + 2]:
                options.append(("rm_back", i, None))
            elif tuple(sorted(vs[i: i + 3])) in K:
                options.append(("contract", i, None))
        for i, a in enumerate(vs):
            for b in K.neighbours[a]:
                options.append(("ins_back", i, b))
        for i in range(len(vs) - 1):
            a, c = vs[i], vs[i + 1]
            for b in K.neighbours[a]:
                if b != c and tuple(sorted((a, b, c))) in K:
                    options.append(("expand", i, b))
        if not options:
            break
        kind, i, b = rng.choice(options)
        if kind == "rm_back":
            f = remove_backtrack(f, i)
        elif kind == "contract":
            f = contract_triangle(K, f, i)
        elif kind == "ins_back":
            f = insert_backtrack(K, f, i, b)
        else:
            f = expand_triangle(K, f, i, b)
    return f

