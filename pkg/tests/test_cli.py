from __future__ import annotations

import json
import subprocess
import sys

import pytest

import kummer_genus.genus_core as gc
from kummer_genus.cli import main
from kummer_genus.errors import SchemaError
from kummer_genus.fq_arith import make_field
from kummer_genus.schema import load_spec, render_spec
from kummer_genus.suites import random_component, regression_specs
from kummer_genus.genus_core import ExtensionSpec

THREAD = {"field": {"p": 5, "f": 1},
          "components": [{"l": 2, "n": 2, "gamma": "2", "factors": [{"poly": [0, 1], "alpha": 1}]}]}


def write(tmp_path, doc, name="spec.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_valid_thread():
    spec = load_spec(json.dumps(THREAD))
    assert spec.field.q == 5
    assert spec.components[0].gamma == spec.field(2)


@pytest.mark.parametrize("mutate,path", [
    (lambda d: d["components"][0].pop("n"), "components[0].n"),
    (lambda d: d["components"][0]["factors"][0].update(alpha=4), "components[0].factors[0].alpha"),
    (lambda d: d.update(extra=1), "extra"),
    (lambda d: d["field"].update(p=4), "field"),
    (lambda d: d["components"][0]["factors"][0].update(poly=[1, 0, 1]), "components[0].factors[0].poly"),
    (lambda d: d["components"][0].update(gamma="0"), "components[0].gamma"),
    (lambda d: d["components"][0].update(l="2"), "components[0].l"),
])
def test_schema_errors(mutate, path):
    doc = json.loads(json.dumps(THREAD))
    mutate(doc)
    with pytest.raises(SchemaError) as info:
        load_spec(json.dumps(doc))
    assert info.value.path.startswith(path)


def test_analyze_thread(tmp_path, capsys):
    code, out, _ = run(["analyze", write(tmp_path, THREAD)], capsys)
    assert code == 0
    doc = json.loads(out)
    comp = doc["components"][0]
    assert comp["case"] == "Exceptional"
    assert comp["data"]["H_order"] == 4
    assert comp["degrees"]["geK"] // comp["degrees"]["gK"] == 4
    assert comp["constants"]["KH+"] == 4
    assert doc["ok"] and all(doc["identities"].values())


def test_analyze_cyclotomic(tmp_path, capsys):
    spec = json.loads(json.dumps(THREAD))
    spec["components"][0]["gamma"] = "4"
    code, out, _ = run(["analyze", write(tmp_path, spec)], capsys)
    comp = json.loads(out)["components"][0]
    assert code == 0
    assert comp["data"]["H_order"] == 1
    assert comp["lattices"]["K"] == comp["lattices"]["E"]
    assert comp["lattices"]["geK"] == comp["lattices"]["geE"]


def test_analyze_two_components(tmp_path, capsys):
    spec = json.loads(json.dumps(THREAD))
    spec["components"].append({"l": 2, "n": 1, "gamma": "1", "factors": [{"poly": [1, 1], "alpha": 1}]})
    code, out, _ = run(["analyze", write(tmp_path, spec)], capsys)
    doc = json.loads(out)
    assert code == 0 and len(doc["components"]) == 2 and "compositum" in doc


def test_analyze_text(tmp_path, capsys):
    code, out, _ = run(["analyze", "--text", write(tmp_path, THREAD)], capsys)
    assert code == 0 and "Exceptional" in out and "identities: all hold" in out


def test_exit_codes(tmp_path, capsys):
    bad = json.loads(json.dumps(THREAD))
    bad["components"][0]["n"] = 3
    code, _, err = run(["analyze", write(tmp_path, bad)], capsys)
    assert code == 1 and json.loads(err)["error"] == "ScopeViolation"
    missing = json.loads(json.dumps(THREAD))
    del missing["components"][0]["n"]
    code, _, err = run(["analyze", write(tmp_path, missing)], capsys)
    assert code == 2 and json.loads(err)["path"] == "components[0].n"
    code, _, _ = run(["analyze", str(tmp_path / "nope.json")], capsys)
    assert code == 2
    code, _, _ = run(["verify", "--suite", "no-such-suite"], capsys)
    assert code == 2
    code, _, _ = run(["frobnicate"], capsys)
    assert code == 2


def test_verify_empty_suite(capsys):
    code, out, _ = run(["verify", "--suite", "empty"], capsys)
    assert code == 0 and json.loads(out)["trials"] == 0


def test_verify_spec(tmp_path, capsys):
    code, out, _ = run(["verify", "--spec", write(tmp_path, THREAD)], capsys)
    assert code == 0 and json.loads(out)["failures"] == []


def test_fault_injection_fails_verification(capsys, monkeypatch):
    real = gc._explicit_factor

    def corrupted(cd, j):
        g = real(cd, j)
        if cd.factor_branch(j) != "before":
            return g
        return gc.RadicalGenerator(g.coeff, tuple((P, e + 1) for P, e in g.exponents), g.root_order)

    monkeypatch.setattr(gc, "_explicit_factor", corrupted)
    code, out, _ = run(["verify", "--suite", "kummer-small", "--seed", "7"], capsys)
    assert code == 3
    checks = {f["check"] for f in json.loads(out)["failures"]}
    assert checks & {"gE_unramified", "oracle.gE", "e_inf_gE", "E_in_gE_in_geE"}


def test_irreducibles(capsys):
    code, out, _ = run(["irreducibles", "--q", "5", "--deg", "1"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 5


def test_round_trip():
    import random

    specs = list(regression_specs())
    rng = random.Random(1)
    for q in (5, 9, 13):
        F = make_field(3, 2, (1, 0, 1)) if q == 9 else make_field(q)
        specs.append(ExtensionSpec(F, (random_component(rng, F, 2, 1), random_component(rng, F, 2, 1))))
    for spec in specs:
        assert load_spec(render_spec(spec)) == spec


def test_byte_reproducible_analyze(tmp_path):
    path = write(tmp_path, THREAD)
    cmd = [sys.executable, "-m", "kummer_genus", "analyze", path]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.endswith(b"\n")
