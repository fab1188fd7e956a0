"""JSON manifests for complexes, functors, representations and morphisms.

Simplices are keyed by their ascending vertices joined with commas
(``"0,2"``), Hasse edges by ``"face|simplex"`` (``"0|0,2"``), and matrices are
row-major lists of rational strings. A ``"complex"`` field may hold the
complex inline or a path relative to the manifest's directory.
"""

from __future__ import annotations

import json
from pathlib import Path

from .complex import ComplexError, Simplex, SimplicialComplex, close_under_faces
from .cover import cover_poset
from .exactla import Matrix, format_rational, parse_rational
from .functor import CO, CONTRA, FunctorError, NaturalTransformation, VeryGoodFunctor
from .groupoid import GroupoidError, Representation, pi1_presentation

KINDS = ("complex", "functor", "representation", "morphism")


class SchemaError(ValueError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def simplex_key(s: Simplex) -> str:
    return ",".join(map(str, s))


def parse_simplex(text: str, where: str) -> Simplex:
    try:
        vs = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise SchemaError(where, f"bad simplex key {text!r}") from None
    if list(vs) != sorted(set(vs)):
        raise SchemaError(where, f"simplex key {text!r} is not strictly ascending")
    return vs


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[format_rational(x) for x in m.row(i)] for i in range(m.rows)]


def matrix_from_json(obj, rows: int, cols: int, where: str) -> Matrix:
    if not isinstance(obj, list) or len(obj) != rows:
        raise SchemaError(where, f"expected a list of {rows} rows")
    data = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != cols:
            raise SchemaError(f"{where}[{i}]", f"expected {cols} entries")
        try:
            data.append([parse_rational(x) for x in row])
        except ValueError as exc:
            raise SchemaError(f"{where}[{i}]", str(exc)) from None
    return Matrix(data, cols=cols)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _require(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise SchemaError(where, "expected an object")
    if key not in obj:
        raise SchemaError(where, f"missing field {key!r}")
    return obj[key]


# complexes

def complex_to_json(K: SimplicialComplex) -> dict:
    return {"kind": "complex", "vertex_count": K.vertex_count,
            "facets": [list(f) for f in K.facets()]}


def complex_from_json(obj, base: Path | None = None, where: str = "complex") -> SimplicialComplex:
    if isinstance(obj, str):
        path = (base or Path(".")) / obj
        return complex_from_json(read_json(path), path.parent, f"{path}")
    n = _require(obj, "vertex_count", where)
    facets = _require(obj, "facets", where)
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise SchemaError(f"{where}.vertex_count", "expected a nonnegative integer")
    if not isinstance(facets, list) or not all(
            isinstance(f, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in f)
            for f in facets):
        raise SchemaError(f"{where}.facets", "expected a list of integer lists")
    try:
        return close_under_faces(facets, n)
    except ComplexError as exc:
        raise SchemaError(f"{where}.facets", str(exc)) from None


# functors

def functor_to_json(F: VeryGoodFunctor) -> dict:
    P = F.poset
    return {
        "kind": "functor",
        "complex": complex_to_json(P.complex),
        "variance": F.variance,
        "dims": {simplex_key(s): F.dim(s) for s in P.objects},
        "maps": {f"{simplex_key(s)}|{simplex_key(t)}": matrix_to_json(F.maps[(s, t)])
                 for s, t in P.hasse_edges},
    }


def functor_from_json(obj, base: Path | None = None, where: str = "functor") -> VeryGoodFunctor:
    K = complex_from_json(_require(obj, "complex", where), base, f"{where}.complex")
    P = cover_poset(K)
    variance = _require(obj, "variance", where)
    if variance not in (CONTRA, CO):
        raise SchemaError(f"{where}.variance", f"expected {CONTRA!r} or {CO!r}")
    raw_dims = _require(obj, "dims", where)
    if not isinstance(raw_dims, dict):
        raise SchemaError(f"{where}.dims", "expected an object")
    dims = {}
    for key, d in raw_dims.items():
        s = parse_simplex(key, f"{where}.dims")
        if s not in K:
            raise SchemaError(f"{where}.dims[{key!r}]", "not a simplex of the complex")
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise SchemaError(f"{where}.dims[{key!r}]", "expected a nonnegative integer")
        dims[s] = d
    for s in K.simplices:
        if s not in dims:
            raise SchemaError(f"{where}.dims", f"missing simplex {simplex_key(s)!r}")
    raw_maps = _require(obj, "maps", where)
    if not isinstance(raw_maps, dict):
        raise SchemaError(f"{where}.maps", "expected an object")
    maps = {}
    for key, m in raw_maps.items():
        w = f"{where}.maps[{key!r}]"
        if key.count("|") != 1:
            raise SchemaError(w, "expected a key of the form 'face|simplex'")
        a, b = key.split("|")
        s, t = parse_simplex(a, w), parse_simplex(b, w)
        if (s, t) not in set(P.hasse_edges):
            raise SchemaError(w, "not a codimension-one face inclusion of the complex")
        rows, cols = (dims[s], dims[t]) if variance == CONTRA else (dims[t], dims[s])
        maps[(s, t)] = matrix_from_json(m, rows, cols, w)
    for s, t in P.hasse_edges:
        if (s, t) not in maps:
            raise SchemaError(f"{where}.maps", f"missing edge {simplex_key(s)}|{simplex_key(t)}")
    try:
        return VeryGoodFunctor(P, variance, dims, maps)
    except FunctorError as exc:
        raise SchemaError(where, str(exc)) from None


# representations

def representation_to_json(rho: Representation) -> dict:
    P = rho.presentation
    return {
        "kind": "representation",
        "complex": complex_to_json(P.complex),
        "basepoint": P.basepoint,
        "dim": rho.dim,
        "generators": {simplex_key(g): matrix_to_json(rho.gen_matrices[g]) for g in P.generators},
    }


def representation_from_json(obj, base: Path | None = None,
                             where: str = "representation") -> Representation:
    K = complex_from_json(_require(obj, "complex", where), base, f"{where}.complex")
    w = _require(obj, "basepoint", where)
    if not isinstance(w, int) or (w,) not in K:
        raise SchemaError(f"{where}.basepoint", "not a vertex of the complex")
    dim = _require(obj, "dim", where)
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise SchemaError(f"{where}.dim", "expected a nonnegative integer")
    try:
        P = pi1_presentation(K, w)
    except GroupoidError as exc:
        raise SchemaError(f"{where}.complex", str(exc)) from None
    raw = _require(obj, "generators", where)
    if not isinstance(raw, dict):
        raise SchemaError(f"{where}.generators", "expected an object")
    gens = {}
    for key, m in raw.items():
        g = parse_simplex(key, f"{where}.generators")
        if g not in P.generator_index:
            raise SchemaError(f"{where}.generators[{key!r}]",
                              "not a generator (generators are the non-tree edges)")
        gens[g] = matrix_from_json(m, dim, dim, f"{where}.generators[{key!r}]")
    for g in P.generators:
        if g not in gens:
            raise SchemaError(f"{where}.generators", f"missing generator {simplex_key(g)!r}")
    return Representation(P, dim, gens)


# morphisms

def morphism_to_json(eta: NaturalTransformation) -> dict:
    return {
        "kind": "morphism",
        "source": functor_to_json(eta.source),
        "target": functor_to_json(eta.target),
        "components": {simplex_key(s): matrix_to_json(eta[s]) for s in eta.source.poset.objects},
    }


def _functor_field(obj, base, where):
    if isinstance(obj, str):
        path = (base or Path(".")) / obj
        return functor_from_json(read_json(path), path.parent, str(path))
    return functor_from_json(obj, base, where)


def morphism_from_json(obj, base: Path | None = None, where: str = "morphism") -> NaturalTransformation:
    F = _functor_field(_require(obj, "source", where), base, f"{where}.source")
    G = _functor_field(_require(obj, "target", where), base, f"{where}.target")
    raw = _require(obj, "components", where)
    if not isinstance(raw, dict):
        raise SchemaError(f"{where}.components", "expected an object")
    comps = {}
    for key, m in raw.items():
        s = parse_simplex(key, f"{where}.components")
        if s not in F.poset.complex:
            raise SchemaError(f"{where}.components[{key!r}]", "not a simplex of the complex")
        comps[s] = matrix_from_json(m, G.dim(s), F.dim(s), f"{where}.components[{key!r}]")
    for s in F.poset.objects:
        if s not in comps:
            raise SchemaError(f"{where}.components", f"missing simplex {simplex_key(s)!r}")
    try:
        return NaturalTransformation(F, G, comps)
    except FunctorError as exc:
        raise SchemaError(where, str(exc)) from None


# files

def read_json(path: Path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(str(path), f"cannot read file: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None


def infer_kind(obj) -> str:
    if not isinstance(obj, dict):
        raise SchemaError("manifest", "expected a JSON object")
    kind = obj.get("kind")
    if kind is not None:
        if kind not in KINDS:
            raise SchemaError("manifest.kind", f"expected one of {', '.join(KINDS)}")
        return kind
    if "components" in obj:
        return "morphism"
    if "generators" in obj:
        return "representation"
    if "maps" in obj:
        return "functor"
    if "facets" in obj:
        return "complex"
    raise SchemaError("manifest", "cannot tell what kind of manifest this is")


_READERS = {
    "complex": complex_from_json,
    "functor": functor_from_json,
    "representation": representation_from_json,
    "morphism": morphism_from_json,
}

_WRITERS = {
    SimplicialComplex: complex_to_json,
    VeryGoodFunctor: functor_to_json,
    Representation: representation_to_json,
    NaturalTransformation: morphism_to_json,
}


def load(path, expect: str | None = None):
    """Read a manifest and return ``(kind, object)``."""
    path = Path(path)
    obj = read_json(path)
    kind = infer_kind(obj)
    if expect is not None and kind != expect:
        raise SchemaError(str(path), f"expected a {expect} manifest, got {kind}")
    return kind, _READERS[kind](obj, path.parent, str(path))


def dumps(x) -> str:
    for cls, writer in _WRITERS.items():
        if isinstance(x, cls):
            return _dump(writer(x))
    raise TypeError(f"cannot serialise a {type(x).__name__}")


def loads(text: str, base: Path | None = None):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"<string>:{exc.lineno}:{exc.colno}", exc.msg) from None
    kind = infer_kind(obj)
    return _READERS[kind](obj, base, kind)
