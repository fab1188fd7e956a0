from __future__ import annotations

import json

import pytest

from vgfunctors import fixtures as fx
from vgfunctors.bundle import mobius_fixture
from vgfunctors.cli import main
from vgfunctors.equivalence import lambda_rep, phi
from vgfunctors.exactla import Matrix
from vgfunctors.groupoid import Representation, pi1_presentation
from vgfunctors.serialize import SchemaError, dumps, load, loads

FIXTURE_NAMES = ["circle3", "tetra", "torus7", "rp2-6", "mobius:-1", "mobius:-2", "mobius-rep:-1"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for name in FIXTURE_NAMES:
        p = tmp_path / (name.replace(":", "_") + ".json")
        assert main(["fixtures", "emit", name, "-o", str(p)]) == 0
        paths[name] = p
    capsys.readouterr()
    return paths


def test_fixtures_list(capsys):
    code, out, _ = run(capsys, "fixtures", "list")
    assert code == 0
    for name in ["circle3", "tetra", "torus7", "rp2-6", "mobius:S"]:
        assert name in out


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_emit_parse_emit_is_byte_identical(files, name):
    text = files[name].read_text(encoding="utf-8")
    _, obj = load(files[name])
    assert dumps(obj) == text


def test_round_trip_random_objects(rng, tmp_path):
    F = fx.random_very_good_functor("torus7", rng, 2)
    eta = fx.random_bundle_morphism("circle3", rng)
    rho = fx.random_representation("rp2-6", rng, 2)
    for obj in (F, eta, rho, fx.torus7()):
        text = dumps(obj)
        assert dumps(loads(text)) == text
        assert loads(text) == obj


def test_pi1(capsys, files):
    code, out, _ = run(capsys, "pi1", str(files["circle3"]), "--basepoint", "0")
    assert code == 0
    assert out.splitlines()[0] == "generators: 1, relations: 0"
    code, out, _ = run(capsys, "pi1", str(files["tetra"]))
    assert out.splitlines()[0] == "generators: 3, relations: 4"
    code, _, err = run(capsys, "pi1", str(files["tetra"]), "--basepoint", "9")
    assert code == 2 and "basepoint" in err


def test_roundtrip_command(capsys, files):
    code, out, _ = run(capsys, "roundtrip", str(files["mobius-rep:-1"]))
    assert code == 0
    assert "ΘΨΦΛ exact: PASS" in out.splitlines()


def test_iso1(capsys, files):
    code, out, _ = run(capsys, "bundle", "iso1", str(files["mobius:-1"]), str(files["mobius:-2"]))
    assert code == 1
    assert out.splitlines()[-1] == "NOT isomorphic"
    code, out, _ = run(capsys, "bundle", "iso1", str(files["mobius:-1"]), str(files["mobius:-1"]))
    assert code == 0 and out.splitlines()[-1] == "isomorphic"


def test_monodromy_command(capsys, files):
    code, out, _ = run(capsys, "bundle", "monodromy", str(files["mobius:-2"]), "--loop", "0,1,2,0")
    assert code == 0 and out.strip() == "monodromy (0,1,2,0): [[-2]]"
    code, out, _ = run(capsys, "bundle", "monodromy", str(files["mobius:-1"]))
    assert out.strip() == "monodromy (0,1,2,0): [[-1]]"
    code, _, _ = run(capsys, "bundle", "monodromy", str(files["mobius:-1"]), "--loop", "0,1")
    assert code == 2


def test_phi_psi_commands(capsys, files, tmp_path):
    out_file = tmp_path / "F.json"
    code, _, _ = run(capsys, "phi", str(files["mobius-rep:-1"]), "-o", str(out_file))
    assert code == 0
    _, F = load(out_file)
    assert F == phi(lambda_rep(load(files["mobius-rep:-1"])[1]))
    code, out, _ = run(capsys, "psi", str(out_file), "--path", "0,1,2,0")
    assert code == 0 and out.strip() == "psi((0,1,2,0)) = [[-1]]"
    code, out, _ = run(capsys, "psi", str(out_file))
    assert out.splitlines() == ["G(0,1) = [[1]]", "G(0,2) = [[1]]", "G(1,2) = [[-1]]"]
    code, out, _ = run(capsys, "roundtrip", str(out_file))
    assert code == 0 and "β invertible: PASS" in out
    # psi wants a contravariant functor
    code, _, _ = run(capsys, "psi", str(files["mobius:-1"]))
    assert code == 2


def test_limit_command(capsys, files, tmp_path):
    code, out, _ = run(capsys, "limit", str(files["mobius:-1"]))
    assert code == 0 and out.splitlines()[0] == "dim: 0"
    code, out, _ = run(capsys, "limit", str(files["mobius-rep:-1"]))
    assert code == 2
    trivial = tmp_path / "trivial.json"
    assert main(["fixtures", "emit", "mobius:1", "-o", str(trivial)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "limit", str(trivial))
    assert code == 0
    assert out.splitlines()[:2] == ["dim: 1", "projection 0: [[1]]"]


def test_complex_commands(capsys, files, tmp_path):
    code, out, _ = run(capsys, "complex", "check", str(files["torus7"]))
    assert code == 0
    assert "f-vector: 7, 21, 14" in out and "euler characteristic: 0" in out
    code, out, _ = run(capsys, "complex", "components", str(files["rp2-6"]))
    assert out.splitlines()[0] == "components: 1"
    code, out, _ = run(capsys, "complex", "skeleton", str(files["tetra"]), "-p", "1")
    K = loads(out)
    assert len(K.edges) == 6 and not K.triangles
    code, out, _ = run(capsys, "complex", "subdivide", str(files["circle3"]))
    assert len(loads(out).vertices) == 6
    code, _, _ = run(capsys, "complex", "skeleton", str(files["tetra"]))
    assert code == 2


def test_bundle_kernel_cokernel_biproduct(capsys, files, tmp_path, rng):
    m = tmp_path / "m.json"
    m.write_text(dumps(fx.random_bundle_morphism("circle3", rng, constant=True)), encoding="utf-8")
    for action in ("kernel", "cokernel"):
        code, out, _ = run(capsys, "bundle", action, str(m))
        assert code == 0 and loads(out).variance == "co"
    code, out, _ = run(capsys, "bundle", "biproduct", str(files["mobius:-1"]), str(files["mobius:-2"]))
    assert code == 0
    S = loads(out)
    assert all(S.dim(s) == 2 for s in S.poset.objects)
    code, _, _ = run(capsys, "bundle", "kernel", str(files["mobius:-1"]))
    assert code == 2


def test_complex_path_reference(capsys, files, tmp_path):
    doc = json.loads(files["mobius:-1"].read_text())
    doc["complex"] = files["circle3"].name
    p = files["circle3"].parent / "by_ref.json"
    p.write_text(json.dumps(doc), encoding="utf-8")
    _, F = load(p)
    assert F == mobius_fixture(-1).functor


def test_kind_inference(files):
    doc = json.loads(files["mobius-rep:-1"].read_text())
    del doc["kind"]
    assert loads(json.dumps(doc)).dim == 1


@pytest.mark.parametrize("text, where", [
    ('{"kind": "complex", "vertex_count": 3}', "missing field 'facets'"),
    ('{"kind": "complex", "vertex_count": 2, "facets": [[0, 2]]}', "complex.facets"),
    ('{"kind": "potato"}', "manifest.kind"),
    ('[1, 2]', "expected a JSON object"),
    ('{"kind": "complex",\n "vertex_count": 2,\n "facets": [[0, 1]]\n', "<string>:4"),
])
def test_schema_errors(text, where):
    with pytest.raises(SchemaError) as exc:
        loads(text)
    assert where in str(exc.value)


def test_schema_errors_in_maps(files):
    doc = json.loads(files["mobius:-1"].read_text())
    doc["maps"]["0|0,2"] = [["0.5"]]
    with pytest.raises(SchemaError, match=r"maps\['0\|0,2'\]\[0\]"):
        loads(json.dumps(doc))
    doc["maps"]["0|0,2"] = [["1", "2"]]
    with pytest.raises(SchemaError, match="expected 1 entries"):
        loads(json.dumps(doc))
    doc["maps"]["0|0,2"] = [["-1"]]
    doc["maps"]["0|1,2"] = [["1"]]
    with pytest.raises(SchemaError, match="not a codimension-one"):
        loads(json.dumps(doc))


def test_exit_codes_on_bad_input(capsys, tmp_path):
    assert main([]) == 2
    assert main(["nope"]) == 2
    assert main(["pi1", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    assert main(["complex", "check", str(bad)]) == 2
    assert main(["fixtures", "emit", "klein"]) == 2
    assert main(["fixtures", "emit", "mobius:0"]) == 2
    assert main(["--help"]) == 0
    capsys.readouterr()


def test_failed_checks_exit_one(capsys, tmp_path):
    P = pi1_presentation(fx.tetra(), 0)
    gens = {g: Matrix([[1]]) for g in P.generators}
    gens[(1, 2)] = Matrix([[2]])
    p = tmp_path / "bad_rep.json"
    p.write_text(dumps(Representation(P, 1, gens)), encoding="utf-8")
    code, out, _ = run(capsys, "roundtrip", str(p))
    assert code == 1 and "relation of triangle (0, 1, 2) fails" in out
    code, _, _ = run(capsys, "phi", str(p))
    assert code == 1
