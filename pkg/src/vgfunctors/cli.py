"""Command-line front end: manifests in, exact reports out.

Exit status is 0 when a command succeeds or a check passes, 1 when a check
fails and 2 when the input cannot be used (bad usage, unreadable or
schema-invalid manifests, wrong kind of object).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import bundle as bdl
from . import equivalence, fixtures
from .complex import (
    ComplexError, barycentric_subdivision, connected_components, is_connected, skeleton,
)
from .exactla import LinAlgError, Matrix, format_rational
from .functor import CO, CONTRA, FunctorError, check_very_good, finite_limit
from .groupoid import EdgePath, GroupoidError, Representation, pi1_presentation, rep_validate
from .serialize import SchemaError, dumps, load, simplex_key

OK, FAILED, BAD_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


def format_matrix(m: Matrix) -> str:
    if m.rows == 0 or m.cols == 0:
        return f"[] ({m.rows}x{m.cols})"
    return "[" + ", ".join(
        "[" + ", ".join(format_rational(x) for x in m.row(i)) + "]" for i in range(m.rows)
    ) + "]"


def _parse_path(text: str) -> EdgePath:
    try:
        return EdgePath(tuple(int(x) for x in text.split(",")))
    except ValueError:
        raise InputError(f"bad path {text!r}; expected comma-separated vertices") from None


def _complex_of(path):
    kind, obj = load(path)
    if kind == "complex":
        return obj
    if kind == "functor":
        return obj.poset.complex
    if kind == "representation":
        return obj.presentation.complex
    return obj.source.poset.complex


def _emit(obj, out: str | None) -> None:
    text = dumps(obj)
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")
        print(f"wrote {out}")


def _bundle(path) -> bdl.VeryGoodBundle:
    _, F = load(path, "functor")
    if F.variance != CO:
        raise InputError(f"{path}: a bundle must be a covariant functor")
    rep = check_very_good(F)
    if not rep.passed:
        raise InputError(f"{path}: not very good: " + "; ".join(rep.lines()))
    return bdl.VeryGoodBundle(F)


def _morphism(path) -> bdl.BundleMorphism:
    _, eta = load(path, "morphism")
    for F in (eta.source, eta.target):
        if F.variance != CO:
            raise InputError(f"{path}: bundle morphisms go between covariant functors")
    return bdl.BundleMorphism(eta)


def _rank_summary(B: bdl.VeryGoodBundle) -> str:
    K = B.poset.complex
    ranks = [B.dim((c[0],)) for c in connected_components(K)]
    return "ranks per component: " + ", ".join(map(str, ranks))


# commands

def cmd_complex(args) -> int:
    K = _complex_of(args.file)
    if args.action == "check":
        print(f"vertices: {K.vertex_count}")
        print(f"dimension: {K.dimension}")
        print("f-vector: " + ", ".join(map(str, K.f_vector())))
        print(f"euler characteristic: {K.euler_characteristic()}")
        print(f"facets: {len(K.facets())}")
        print(f"connected: {'yes' if is_connected(K) else 'no'}")
        return OK
    if args.action == "components":
        comps = connected_components(K)
        print(f"components: {len(comps)}")
        for c in comps:
            print(" ".join(map(str, c)))
        return OK
    if args.action == "skeleton":
        if args.p is None:
            raise InputError("skeleton needs -p/--dimension")
        _emit(skeleton(K, args.p), args.output)
        return OK
    _emit(barycentric_subdivision(K), args.output)
    return OK


def cmd_pi1(args) -> int:
    K = _complex_of(args.file)
    if (args.basepoint,) not in K:
        raise InputError(f"basepoint {args.basepoint} is not a vertex")
    P = pi1_presentation(K, args.basepoint)
    print(f"generators: {len(P.generators)}, relations: {len(P.relations)}")
    print("tree: " + " ".join(simplex_key(e) for e in sorted(P.tree.edges)))
    for a, b in P.generators:
        print(f"generator g{a}_{b}: edge {a},{b}")
    for tri, word in P.relations:
        print(f"relation {simplex_key(tri)}: {P.format_word(word)}")
    return OK


def cmd_phi(args) -> int:
    _, rho = load(args.file, "representation")
    rep = rep_validate(rho.presentation, rho)
    if not rep.passed:
        for line in rep.lines():
            print(line)
        return FAILED
    _emit(equivalence.phi(equivalence.lambda_rep(rho)), args.output)
    return OK


def cmd_psi(args) -> int:
    _, F = load(args.file, "functor")
    if F.variance != CONTRA:
        raise InputError(f"{args.file}: psi needs a contravariant functor")
    rep = check_very_good(F)
    if not rep.passed:
        for line in rep.lines():
            print(line)
        return FAILED
    if args.path is not None:
        f = _parse_path(args.path)
        print(f"psi({f}) = {format_matrix(equivalence.psi_path(F, f))}")
        return OK
    G = equivalence.psi(F)
    for a, b in G.complex.edges:
        print(f"G({a},{b}) = {format_matrix(G.edge_matrices[(a, b)])}")
    return OK


def cmd_roundtrip(args) -> int:
    kind, obj = load(args.file)
    if kind == "functor" and obj.variance != CONTRA:
        raise InputError(f"{args.file}: round trips need a contravariant functor")
    if kind not in ("functor", "representation"):
        raise InputError(f"{args.file}: expected a representation or functor manifest")
    if kind == "representation":
        rep = rep_validate(obj.presentation, obj)
        if not rep.passed:
            for line in rep.lines():
                print(line)
            return FAILED
    report = equivalence.roundtrip_report(obj)
    for line in report.lines():
        print(line)
    return OK if report.passed else FAILED


def cmd_limit(args) -> int:
    _, F = load(args.file, "functor")
    L = finite_limit(F)
    print(f"dim: {L.dim}")
    for s in F.poset.objects:
        print(f"projection {simplex_key(s)}: {format_matrix(L.projections[s])}")
    return OK


def cmd_bundle(args) -> int:
    a = args.action
    need = {"kernel": 1, "cokernel": 1, "biproduct": 2, "monodromy": 1, "iso1": 2}[a]
    if len(args.files) != need:
        raise InputError(f"bundle {a} takes {need} file(s)")
    if a in ("kernel", "cokernel"):
        m = _morphism(args.files[0])
        B = bdl.kernel_bundle(m).bundle if a == "kernel" else bdl.cokernel_bundle(m).bundle
        if args.output is None:
            _emit(B.functor, None)
        else:
            _emit(B.functor, args.output)
            print(_rank_summary(B))
        return OK
    if a == "biproduct":
        A, B = (_bundle(f) for f in args.files)
        S = bdl.biproduct(A, B).bundle
        _emit(S.functor, args.output)
        return OK
    if a == "monodromy":
        B = _bundle(args.files[0])
        K = B.poset.complex
        if args.loop is not None:
            loop = _parse_path(args.loop)
            if not loop.is_loop():
                raise InputError(f"{loop} is not a loop")
            loops = [loop]
        else:
            P = pi1_presentation(K, K.vertices[0] if args.basepoint is None else args.basepoint)
            loops = [P.generator_loop(i) for i in range(len(P.generators))]
        for loop in loops:
            print(f"monodromy {loop}: {format_matrix(bdl.bundle_monodromy(B, loop))}")
        return OK
    A, B = (_bundle(f) for f in args.files)
    verdict = bdl.iso_check_rank_one(A, B)
    for (x, y), (p, q) in verdict.monodromy.items():
        print(f"monodromy g{x}_{y}: {format_rational(p)} vs {format_rational(q)}")
    print("isomorphic" if verdict.isomorphic else "NOT isomorphic")
    return OK if verdict.isomorphic else FAILED


def _fixture(name: str):
    if name in fixtures.COMPLEXES:
        return fixtures.COMPLEXES[name]()
    head, sep, tail = name.partition(":")
    if sep and head in ("mobius", "mobius-rep"):
        try:
            scale = Fraction(tail)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad scalar in {name!r}") from None
        if scale == 0:
            raise InputError("the twisting scalar must be nonzero")
        if head == "mobius":
            return bdl.mobius_fixture(scale).functor
        P = pi1_presentation(fixtures.circle3(), 0)
        return Representation(P, 1, {g: Matrix([[scale]]) for g in P.generators})
    raise InputError(f"unknown fixture {name!r}; try 'fixtures list'")


FIXTURE_HELP = [
    ("circle3", "boundary of a triangle"),
    ("tetra", "boundary of the tetrahedron"),
    ("torus7", "7-vertex torus"),
    ("rp2-6", "6-vertex projective plane"),
    ("mobius:S", "line bundle on circle3 twisted by S (e.g. mobius:-1, mobius:-2)"),
    ("mobius-rep:S", "representation of circle3 sending the generator to [[S]]"),
]


def cmd_fixtures(args) -> int:
    if args.action == "list":
        for name, text in FIXTURE_HELP:
            print(f"{name}: {text}")
        return OK
    if args.name is None:
        raise InputError("fixtures emit needs a name")
    _emit(_fixture(args.name), args.output)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vgfunctors", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("complex", help="inspect or transform a simplicial complex")
    c.add_argument("action", choices=["check", "skeleton", "subdivide", "components"])
    c.add_argument("file")
    c.add_argument("-p", "--dimension", dest="p", type=int, help="skeleton dimension")
    c.add_argument("-o", "--output")
    c.set_defaults(run=cmd_complex)

    c = sub.add_parser("pi1", help="presentation of the fundamental group")
    c.add_argument("file")
    c.add_argument("--basepoint", type=int, default=0)
    c.set_defaults(run=cmd_pi1)

    c = sub.add_parser("phi", help="representation to very good functor")
    c.add_argument("file")
    c.add_argument("-o", "--output")
    c.set_defaults(run=cmd_phi)

    c = sub.add_parser("psi", help="very good functor to groupoid functor")
    c.add_argument("file")
    c.add_argument("--path", help="evaluate along an edge path, e.g. 0,1,2,0")
    c.set_defaults(run=cmd_psi)

    c = sub.add_parser("roundtrip", help="check the round trips exactly")
    c.add_argument("file")
    c.set_defaults(run=cmd_roundtrip)

    c = sub.add_parser("limit", help="limit of a functor over the cover poset")
    c.add_argument("file")
    c.set_defaults(run=cmd_limit)

    c = sub.add_parser("bundle", help="operations on very good vector bundles")
    c.add_argument("action", choices=["kernel", "cokernel", "biproduct", "monodromy", "iso1"])
    c.add_argument("files", nargs="+")
    c.add_argument("--loop", help="loop for monodromy, e.g. 0,1,2,0")
    c.add_argument("--basepoint", type=int)
    c.add_argument("-o", "--output")
    c.set_defaults(run=cmd_bundle)

    c = sub.add_parser("fixtures", help="list or emit built-in fixtures")
    c.add_argument("action", choices=["list", "emit"])
    c.add_argument("name", nargs="?")
    c.add_argument("-o", "--output")
    c.set_defaults(run=cmd_fixtures)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.run(args)
    except (SchemaError, InputError, ComplexError, GroupoidError, FunctorError,
            LinAlgError, bdl.BundleError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


run = main


if __name__ == "__main__":
    sys.exit(main())
