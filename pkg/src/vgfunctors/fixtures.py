"""Named complexes, the Möbius functor, and random generators for tests.

Random objects are produced with a caller-supplied ``random.Random`` so that
every run is reproducible from its seed.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .complex import SimplicialComplex, close_under_faces
from .cover import cover_poset
from .exactla import Matrix, kernel_basis
from .functor import (
    CO, CONTRA, NaturalTransformation, VeryGoodFunctor, constant_functor, gauge_twist,
    reverse_variance,
)
from .groupoid import (
    GroupoidFunctor, Pi1Presentation, Representation, groupoid_gauge, pi1_presentation,
    relation_matrix,
)


def circle3() -> SimplicialComplex:
    return close_under_faces([[0, 1], [1, 2], [0, 2]], 3)


def tetra() -> SimplicialComplex:
    """Boundary of the tetrahedron, a 2-sphere."""
    return close_under_faces([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]], 4)


def torus7() -> SimplicialComplex:
    """The 7-vertex torus: triangles ``{i, i+1, i+3}`` and ``{i, i+2, i+3}`` mod 7."""
    tris = []
    for i in range(7):
        tris.append([i, (i + 1) % 7, (i + 3) % 7])
        tris.append([i, (i + 2) % 7, (i + 3) % 7])
    return close_under_faces(tris, 7)


def rp2_6() -> SimplicialComplex:
    """The 6-vertex real projective plane (half of the icosahedron)."""
    tris = [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
        [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5],
    ]
    return close_under_faces(tris, 6)


def two_points() -> SimplicialComplex:
    return close_under_faces([[0], [1]], 2)


def circle3_plus_edge() -> SimplicialComplex:
    return close_under_faces([[0, 1], [1, 2], [0, 2], [3, 4]], 5)


COMPLEXES = {
    "circle3": circle3,
    "tetra": tetra,
    "torus7": torus7,
    "rp2-6": rp2_6,
}


def mobius_functor(scale=-1, variance: str = CONTRA) -> VeryGoodFunctor:
    """Rank-one functor on ``circle3`` with ``[[scale]]`` on ``(0,) < (0, 2)``, identity elsewhere."""
    P = cover_poset(circle3())
    maps = {e: Matrix([[1]]) for e in P.hasse_edges}
    maps[((0,), (0, 2))] = Matrix([[Fraction(scale)]])
    return VeryGoodFunctor(P, variance, {s: 1 for s in P.objects}, maps)


# random generators

def random_rational(rng: random.Random, span: int = 5) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 3))


def random_matrix(rng: random.Random, rows: int, cols: int, span: int = 5) -> Matrix:
    return Matrix([[random_rational(rng, span) for _ in range(cols)] for _ in range(rows)], cols=cols)


def random_invertible(rng: random.Random, n: int, span: int = 3) -> Matrix:
    """Product of a random unit lower and upper triangular matrix with a nonzero diagonal."""
    lower = [[Fraction(rng.randint(-span, span)) if j < i else Fraction(int(i == j)) for j in range(n)]
             for i in range(n)]
    upper = [[Fraction(rng.randint(-span, span)) if j > i else Fraction(0) for j in range(n)]
             for i in range(n)]
    for i in range(n):
        upper[i][i] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 2))
    m = Matrix(lower, cols=n) @ Matrix(upper, cols=n)
    perm = list(range(n))
    rng.shuffle(perm)
    return m.submatrix(perm, range(n))


def random_diagonal(rng: random.Random, n: int) -> Matrix:
    return Matrix.diag([Fraction(rng.choice([-3, -2, -1, 2, 3, 5]), rng.randint(1, 2)) for _ in range(n)])


def random_involution(rng: random.Random, n: int) -> Matrix:
    signs = [rng.choice([1, -1]) for _ in range(n)]
    if n and all(s == 1 for s in signs):
        signs[rng.randrange(n)] = -1
    S = random_invertible(rng, n)
    return S @ Matrix.diag(signs) @ S.invert()


def integer_cocycles(P: Pi1Presentation) -> list[list[int]]:
    """Integer basis vectors of the rational null space of the relation exponent matrix.

    Each vector assigns an exponent to every generator such that all relation
    words have exponent sum zero, i.e. a homomorphism to the integers.
    """
    R = relation_matrix(P)
    if R.rows == 0:
        R = Matrix.zeros(1, len(P.generators))
    basis = kernel_basis(R)
    out = []
    for j in range(basis.cols):
        col = [basis[i, j] for i in range(basis.rows)]
        den = math.lcm(*(q.denominator for q in col))
        out.append([int(q * den) for q in col])
    return out


def mod2_cocycles(P: Pi1Presentation) -> list[list[int]]:
    """Basis of the GF(2) solutions of the relation exponent system."""
    n = len(P.generators)
    rows = []
    for _, word in P.relations:
        r = [0] * n
        for i, e in word:
            r[i] ^= 1
        rows.append(r)
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = [x ^ y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    out = []
    for f in (c for c in range(n) if c not in pivots):
        v = [0] * n
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = rows[i][f]
        out.append(v)
    return out


def abelian_representation(P: Pi1Presentation, exponents: list[list[int]],
                           matrices: list[Matrix]) -> Representation:
    """``rho(g) = prod_k matrices[k] ** exponents[k][g]`` for pairwise commuting matrices."""
    dim = matrices[0].rows if matrices else 0
    gens = {}
    for i, g in enumerate(P.generators):
        m = Matrix.identity(dim)
        for exps, A in zip(exponents, matrices):
            m = m @ (A ** exps[i])
        gens[g] = m
    return Representation(P, dim, gens)


def random_representation(name: str, rng: random.Random, dim: int | None = None,
                          basepoint: int = 0) -> Representation:
    """A random valid representation for one of the named fixtures.

    circle3: arbitrary invertible generator; torus7: commuting diagonal pair;
    rp2-6: random involution on the nontrivial class; tetra: trivial.
    """
    K = COMPLEXES[name]()
    P = pi1_presentation(K, basepoint)
    if dim is None:
        dim = rng.randint(1, 3)
    if name == "circle3":
        (g,) = P.generators
        return Representation(P, dim, {g: random_invertible(rng, dim)})
    if name == "torus7":
        A, B = random_diagonal(rng, dim), random_diagonal(rng, dim)
        return abelian_representation(P, integer_cocycles(P), [A, B])
    if name == "rp2-6":
        cocycles = mod2_cocycles(P)
        # tree edges are gauged to zero, so the single solution is the nontrivial class
        return abelian_representation(P, cocycles[:1], [random_involution(rng, dim)])
    return Representation(P, dim, {g: Matrix.identity(dim) for g in P.generators})


def random_groupoid_functor(name: str, rng: random.Random, dim: int | None = None) -> GroupoidFunctor:
    """``lambda`` of a random representation, then a random vertex gauge."""
    from .equivalence import lambda_rep

    G = lambda_rep(random_representation(name, rng, dim))
    n = G.dims[G.complex.vertices[0]]
    return groupoid_gauge(G, {v: random_invertible(rng, n) for v in G.complex.vertices})


def random_very_good_functor(name: str, rng: random.Random, dim: int | None = None) -> VeryGoodFunctor:
    """``phi`` of a random groupoid functor, then a random gauge twist on the cover."""
    from .equivalence import phi

    F = phi(random_groupoid_functor(name, rng, dim))
    return gauge_twist(F, {s: random_invertible(rng, F.dim(s)) for s in F.poset.objects})


def _block_rep(P: Pi1Presentation, parts: list[Representation], S: Matrix) -> Representation:
    dim = sum(r.dim for r in parts)
    Si = S.invert()
    gens = {g: S @ Matrix.block_diag([r.gen_matrices[g] for r in parts]) @ Si for g in P.generators}
    return Representation(P, dim, gens)


def random_functor_morphism(name: str, rng: random.Random) -> NaturalTransformation:
    """A random natural transformation between contravariant very good functors.

    Two representations ``S1 (rho_a + rho_b) S1^-1`` and ``S2 (rho_a + rho_c) S2^-1``
    share the summand ``rho_a``; ``S2 [[c, 0], [0, 0]] S1^-1`` intertwines them.
    The intertwiner is spread over the groupoid, gauged at every vertex, pushed
    through ``phi`` and finally gauged on the cover.
    """
    from .equivalence import lambda_rep, phi_on_morphism

    K = COMPLEXES[name]()
    P = pi1_presentation(K, 0)
    a, b, c = rng.choice([0, 1, 2, 2]), rng.randint(0, 1), rng.randint(0, 1)
    if a + b == 0:
        b = 1
    if a + c == 0:
        c = 1
    ra = random_representation(name, rng, a) if a else None
    parts1 = [r for r in (ra, random_representation(name, rng, b) if b else None) if r]
    parts2 = [r for r in (ra, random_representation(name, rng, c) if c else None) if r]
    n1, n2 = a + b, a + c
    S1, S2 = random_invertible(rng, n1), random_invertible(rng, n2)
    rho1, rho2 = _block_rep(P, parts1, S1), _block_rep(P, parts2, S2)
    scale = Fraction(rng.choice([0, 1, -1, -2, 3, 5]), rng.randint(1, 2)) if a else Fraction(0)
    core = Matrix.zeros(n2, n1)
    if a:
        core = Matrix.block_diag([Matrix.scalar(a, scale), Matrix.zeros(c, b)])
    mid = S2 @ core @ S1.invert()
    A1 = {v: random_invertible(rng, n1) for v in K.vertices}
    A2 = {v: random_invertible(rng, n2) for v in K.vertices}
    G1 = groupoid_gauge(lambda_rep(rho1), A1)
    G2 = groupoid_gauge(lambda_rep(rho2), A2)
    eta = phi_on_morphism(G1, G2, {v: A2[v] @ mid @ A1[v].invert() for v in K.vertices})
    return twist_morphism(eta, rng)


def twist_morphism(eta: NaturalTransformation, rng: random.Random) -> NaturalTransformation:
    """Gauge both ends of ``eta`` by random isomorphisms and carry the components along."""
    F, G = eta.source, eta.target
    objs = F.poset.objects
    A = {s: random_invertible(rng, F.dim(s)) for s in objs}
    B = {s: random_invertible(rng, G.dim(s)) for s in objs}
    return NaturalTransformation(
        gauge_twist(F, A), gauge_twist(G, B),
        {s: B[s] @ eta[s] @ A[s].invert() for s in objs},
    )


def constant_rank_morphism(name: str, rng: random.Random, variance: str = CONTRA) -> NaturalTransformation:
    """The same random matrix at every object between two constant functors, then twisted."""
    P = cover_poset(COMPLEXES[name]())
    n, m = rng.randint(1, 3), rng.randint(1, 3)
    r = rng.randint(0, min(n, m))
    M = random_matrix(rng, m, r) @ random_matrix(rng, r, n) if r else Matrix.zeros(m, n)
    eta = NaturalTransformation(constant_functor(P, n, variance), constant_functor(P, m, variance),
                                {s: M for s in P.objects})
    return twist_morphism(eta, rng)


def random_bundle_morphism(name: str, rng: random.Random, constant: bool = False) -> NaturalTransformation:
    """Covariant counterpart of :func:`random_functor_morphism` or :func:`constant_rank_morphism`."""
    eta = constant_rank_morphism(name, rng, CO) if constant else random_functor_morphism(name, rng)
    if eta.source.variance == CO:
        return eta
    return NaturalTransformation(reverse_variance(eta.source), reverse_variance(eta.target),
                                 {s: eta[s] for s in eta.source.poset.objects})
