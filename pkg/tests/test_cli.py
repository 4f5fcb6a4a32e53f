import json

import pytest

from davis_forge.cli import main
from davis_forge.complex import from_maximal

RP2 = from_maximal("123456", ["124", "126", "135", "136", "145", "234", "235", "256", "346", "456"])


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, json.loads(out) if out.strip().startswith("{") else out, err
    return _run


@pytest.fixture
def files(tmp_path, run):
    code, doc, _ = run("example", "export", "poincare", "4cycle-c2", "2pts-ab", "circle-halves",
                       "path-edges", "--out", tmp_path)
    assert code == 0 and len(doc["written"]) == 12
    (tmp_path / "rp2.json").write_text(RP2.dumps())
    return tmp_path


def test_example_list(run):
    code, doc, _ = run("example", "list")
    assert code == 0 and doc["examples"][0] == "poincare" and "4cycle-c2" in doc["examples"]


def test_export_is_byte_identical(files, run, tmp_path_factory):
    other = tmp_path_factory.mktemp("again")
    run("example", "poincare", "--out", other)
    for name in ("complex", "action", "quotient", "presentation"):
        f = f"poincare_{name}.json"
        assert (files / f).read_bytes() == (other / f).read_bytes()
    a, b = files / "sd_a.json", files / "sd_b.json"
    run("export", "subdivision", files / "4cycle-c2_complex.json", "--out", a)
    run("export", "subdivision", files / "4cycle-c2_complex.json", "--out", b)
    assert a.read_bytes() == b.read_bytes()


def test_homology(files, run):
    code, doc, _ = run("homology", files / "rp2.json", "--p", 2)
    assert code == 0 and doc["groups"][1]["betti"] == 1
    code, doc, _ = run("--p", "2", "homology", files / "rp2.json")
    assert doc["groups"][2]["betti"] == 1
    code, doc, _ = run("homology", files / "rp2.json")
    assert doc["groups"][1]["torsion"] == [2]
    code, doc, _ = run("homology", files / "rp2.json", "--cohomology", "--format", "text")
    assert "groups.2.torsion: [2]" in doc


def test_flag_and_subdivide(files, run):
    code, doc, _ = run("flag", files / "rp2.json", "--completion")
    assert code == 0 and not doc["flag"] and "completion" in doc
    code, doc, _ = run("flag", files / "4cycle-c2_complex.json")
    assert doc == {"flag": True, "flag_no_square": False}
    code, doc, _ = run("subdivide", files / "4cycle-c2_complex.json", "--action", files / "4cycle-c2_action.json")
    assert doc["f_vector"] == [8, 8] and "action" in doc


def test_davis_and_splitting(files, run):
    L = files / "4cycle-c2_complex.json"
    code, doc, _ = run("davis", L, "--quotient", files / "4cycle-c2_quotient.json")
    assert code == 0 and doc["f_vector"][0] == doc["vertex_count_formula"]
    code, doc, _ = run("davis", L, "--quotient", "parity", "--emit")
    assert doc["quotient_order"] == 2 and "complex" in doc
    code, doc, _ = run("splitting-check", L, "--quotient", "abelianization", "--sub", L)
    assert code == 0 and doc["ok"]
    code, doc, err = run("splitting-check", L, "--quotient", "trivial")
    assert code == 2 and json.loads(err)["error"] == "PARITY_UNDEFINED"


def test_certify(files, run):
    code, doc, _ = run("certify", files / "4cycle-c2_complex.json", files / "4cycle-c2_action.json",
                       "--quotient", files / "4cycle-c2_quotient.json")
    assert code == 0 and doc["verified"]
    code, doc, _ = run("certify", files / "poincare_complex.json", files / "poincare_action.json",
                       "--quotient", files / "poincare_quotient.json", "--barycenter", "p0", "--strict")
    assert code == 0 and doc["groups"]["H^n(L, L^sing)"]["group"] == "Z^60"
    code, _, err = run("certify", files / "4cycle-c2_complex.json", files / "4cycle-c2_action.json",
                       "--quotient", "parity", "--strict")
    assert code == 2 and json.loads(err)["error"] == "HYPOTHESIS_FAILED"


def test_singular(files, run):
    code, doc, _ = run("singular", files / "poincare_complex.json", files / "poincare_action.json",
                       "--quotient", "parity")
    assert code == 0 and doc["f_vector"] == [21, 80] and not doc["full"]


def test_nerve(files, run):
    code, doc, _ = run("nerve", files / "path-edges_cover.json")
    assert code == 0 and doc["applicable"] and doc["equal"]
    code, doc, _ = run("nerve", files / "circle-halves_cover.json")
    assert code == 0 and not doc["applicable"]


def test_pi1(files, run, tmp_path):
    code, doc, _ = run("pi1", files / "poincare_presentation.json")
    assert code == 0 and doc["order"] == 120
    code, doc, _ = run("pi1", files / "rp2.json")
    assert doc["order"] == 2
    out = tmp_path / "pres.json"
    run("export", "presentation", files / "rp2.json", "--out", out)
    code, doc, _ = run("pi1", out, "--output", tmp_path / "rep.json")
    assert code == 0 and json.loads((tmp_path / "rep.json").read_text())["order"] == 2
    free = tmp_path / "free.json"
    free.write_text(json.dumps({"generators": ["a"], "relators": []}))
    code, _, err = run("pi1", free, "--max-cosets", 50)
    assert code == 3 and json.loads(err)["error"] == "COSET_LIMIT_EXCEEDED"


def test_export_kinds(files, run):
    L = files / "2pts-ab_complex.json"
    code, doc, _ = run("export", "davis", L, "--quotient", "abelianization")
    assert code == 0 and len(doc["vertices"]) == 8
    code, doc, _ = run("export", "sing", L, "--quotient", "abelianization")
    assert len(doc["vertices"]) == 4
    code, _, err = run("export", "davis", L)
    assert code == 2


def test_bad_input_and_caps(files, run, tmp_path, monkeypatch):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run("homology", bad)
    assert code == 2 and json.loads(err)["error"] == "PARSE_ERROR"
    code, _, err = run("homology", tmp_path / "missing.json")
    assert code == 2
    code, _, err = run("davis", files / "rp2.json", "--quotient", "parity")
    assert code == 2 and json.loads(err)["error"] == "NOT_FLAG"
    monkeypatch.setenv("DAVIS_FORGE_CAPS", "quotient=2")
    code, _, err = run("davis", files / "4cycle-c2_complex.json", "--quotient", "abelianization")
    assert code == 3
