import io
import json

import pytest

from groupdiam import config
from groupdiam.cli import describe, main, parse_group
from groupdiam import constructions as C

A5 = "A5@5:a=(0 1 2 3 4),b=(0 1 2)"


@pytest.fixture(autouse=True)
def _keep_budgets(monkeypatch):
    # main() writes the budget flags into config; keep tests isolated
    monkeypatch.setattr(config, "STATE_BUDGET", config.STATE_BUDGET)
    monkeypatch.setattr(config, "GENSET_BUDGET", config.GENSET_BUDGET)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def kv(out):
    return dict(line.split("=", 1) for line in out.splitlines() if "=" in line)


def test_parse_group_forms():
    G = parse_group(A5)
    assert (G.name, G.degree, G.order()) == ("A5", 5, 60)
    G = parse_group("(0 1 2),(0 1)")
    assert G.degree == 3 and G.order() == 6
    assert list(G.genset.labels) == ["a", "b"]
    assert parse_group("symmetric:4").order() == 24
    assert parse_group("label:dihedral:4").order() == 8


def test_describe_round_trip():
    for label in ["symmetric:4", "grigorchuk:h=3", "affine:n=4,p=3"]:
        G = C.construct(label)
        back = parse_group(describe(G))
        assert back.order() == G.order() and back.degree == G.degree


def test_diameter_a5(capsys):
    code, out, _ = run(capsys, "diameter", "--group", A5)
    rec = kv(out)
    assert code == 0
    assert rec["diameter"] == "6" and rec["order"] == "60"


def test_info_json(capsys):
    code, out, _ = run(capsys, "info", "--group", "symmetric:4", "--json")
    rec = json.loads(out)
    assert code == 0
    assert rec["order"] == 24 and rec["soluble"] and rec["derived_length"] == 3
    assert rec["composition_factors"] == ["C2", "C3", "C2", "C2"]


def test_construct_piped_into_info(capsys, monkeypatch):
    code, out, _ = run(capsys, "construct", "--label", "grigorchuk:h=3")
    assert code == 0
    monkeypatch.setattr("sys.stdin", io.StringIO(out))
    code, out, _ = run(capsys, "info")
    assert code == 0 and kv(out)["order"] == "128"


def test_worst_diameter_and_growth(capsys):
    code, out, _ = run(capsys, "worst-diameter", "--group", "symmetric:3")
    assert code == 0 and kv(out)["worst_diameter"] == "3"
    code, out, _ = run(capsys, "growth", "--group", "cyclic:6", "--radius", "4", "--json")
    rec = json.loads(out)
    assert rec["ball_sizes"] == [1, 3, 5, 6, 6]


def test_invariants_and_bounds(capsys):
    code, out, _ = run(capsys, "invariants", "--group", "symmetric:5", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["mu"]["mu_na"] == 5
    code, out, _ = run(capsys, "bounds", "--group", "symmetric:5", "--context", "primitive", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["context"] == "primitive"


@pytest.mark.parametrize("method", ["schreier", "milnor", "soluble"])
def test_synthesize_methods(capsys, method):
    args = ["synthesize", "--group", "symmetric:4", "--target", "(0 1 2)", "--method", method]
    if method in ("schreier", "milnor"):
        args += ["--normal", "(0 1 2),(1 2 3)"]
    code, out, _ = run(capsys, *args)
    assert code == 0 and kv(out)["valid"] == "true"


def test_certificate_file_round_trip(capsys, tmp_path):
    path = tmp_path / "cert.json"
    code, _, _ = run(capsys, "synthesize", "--group", A5, "--target", "(0 2 4)",
                     "--method", "direct-product", "--out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "verify", "--certificate", str(path))
    assert code == 0 and kv(out)["valid"] == "true"
    doc = json.loads(path.read_text())
    doc["certificate"]["element"] = [1, 2, 0, 3, 4]
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", "--certificate", str(path))
    assert code == 1


def test_verify_paper_numbers(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "paper-numbers")
    assert code == 0
    assert out.splitlines()[-1].endswith("failed 0")


def test_verify_lemmas_small(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemmas", "--instances", "3", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["failed"] == 0 and rec["passed"] > 0


@pytest.mark.parametrize("argv", [
    ["info", "--group", "nosuch:3"],
    ["info", "--group", "A5@5:a=(0 1 2 3 4"],
    ["synthesize", "--group", "alternating:5", "--target", "(0 1 2)", "--method", "soluble"],
    ["verify", "--certificate", "/nonexistent/cert.json"],
    ["verify"],
])
def test_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("groupdiam: error")


def test_budget_exit_three(capsys):
    code, _, err = run(capsys, "diameter", "--group", "grigorchuk:h=5", "--budget", "100")
    assert code == 3 and "capacity" in err


def test_output_is_deterministic(capsys):
    outs = [run(capsys, "invariants", "--group", "sl23")[1] for _ in range(2)]
    assert outs[0] == outs[1]
