import csv
import json

import pytest

from lattice_slopes import exact_linalg as xl
from lattice_slopes.cli import main
from lattice_slopes.corpus import corpus, corpus_names
from lattice_slopes.fuzz import FuzzConfig, random_lattice, run_campaign, trial_rng, write_csv
from lattice_slopes.serialization import SchemaError, entry_from_json, entry_to_json, load_entry, save_entry


def test_corpus_examples():
    assert corpus("a2").gram == xl.rat_matrix([[2, 1], [1, 2]])
    assert corpus("e8").lattice.det == 1
    assert corpus("d4").lattice.det == 4
    assert corpus("a4").lattice.det == 5
    with pytest.raises(KeyError):
        corpus("q7")


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_entries_load_through_validation(name, tmp_path):
    e = corpus(name)
    act = e.action()
    assert act is None or act.order >= 2
    path = tmp_path / f"{name}.json"
    save_entry(e, path)
    assert load_entry(path) == e


def test_schema_errors():
    with pytest.raises(SchemaError):
        entry_from_json({"name": "x"})
    with pytest.raises(SchemaError):
        entry_from_json({"gram": [["1", "a"], ["0", "1"]]})
    with pytest.raises(ValueError):
        entry_from_json({"gram": [[1, 2], [2, 1]]})  # not positive definite
    e = entry_from_json({"gram": [["1/2", "0"], ["0", "3"]]})
    assert entry_to_json(e)["gram"] == [["1/2", "0"], ["0", "3"]]


def test_random_lattice_determinism():
    a = random_lattice(trial_rng(42, 0), 2)
    b = random_lattice(trial_rng(42, 0), 2)
    assert a.gram == b.gram and a.det > 0
    one = random_lattice(trial_rng(7, 3), 1)
    assert one.rank == 1 and one.gram[0][0] >= 1
    assert all(v.denominator == 1 for row in a.gram for v in row)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_mumin(tmp_path, capsys):
    path = tmp_path / "a2.json"
    save_entry(corpus("a2"), path)
    code, out, _ = run(capsys, "mumin", path)
    assert code == 0 and out.strip() == "(3, 2) ≈ 1.31607"
    code, out, _ = run(capsys, "mumin", "a2p2a2", "--method", "invariant", "--json", tmp_path / "r.json")
    assert code == 0 and out.startswith("(3, 2)")
    assert json.loads((tmp_path / "r.json").read_text())["value"]["vol_sq"] == "3"


def test_cli_slope_filtration_semistable(tmp_path, capsys):
    assert run(capsys, "slope", "e8")[1].strip() == "(1, 8) ≈ 1"
    code, out, _ = run(capsys, "filtration", "diag1_4", "--json", tmp_path / "f.json")
    assert code == 0 and out.count("S") == 2
    assert json.loads((tmp_path / "f.json").read_text())
    code, out, _ = run(capsys, "semistable", "diag1_4")
    assert code == 0 and out.startswith("not semistable")
    assert run(capsys, "semistable", "e8")[1].startswith("semistable")


def test_cli_dual_and_tensor(tmp_path, capsys):
    code, out, _ = run(capsys, "dual", "a2")
    assert code == 0
    d = json.loads(out)
    assert d["gram"] == [["2/3", "-1/3"], ["-1/3", "2/3"]]
    assert load_entry_from_text(tmp_path, out).action().order == 6
    out_path = tmp_path / "t.json"
    assert run(capsys, "tensor", "a2", "diag1_2", "-o", out_path)[0] == 0
    t = load_entry(out_path)
    assert len(t.gram) == 4 and t.action() is not None


def load_entry_from_text(tmp_path, text):
    p = tmp_path / "tmp.json"
    p.write_text(text)
    return load_entry(p)


def minus_identity_file(tmp_path):
    p = tmp_path / "pm.json"
    p.write_text(json.dumps({"gram": [[1, 0], [0, 1]], "group_generators": [[[-1, 0], [0, -1]]]}))
    return p


def test_cli_decompose(tmp_path, capsys):
    code, out, _ = run(capsys, "decompose", "a2p2a2")
    assert code == 0 and out.startswith("multiplicity-free: r = 2")
    code, out, _ = run(capsys, "decompose", minus_identity_file(tmp_path))
    assert code == 0 and out.startswith("not multiplicity-free")


def test_cli_conjecture_audit(tmp_path, capsys):
    for name in ("a2p2a2", "a3"):
        save_entry(corpus(name), tmp_path / f"{name}.json")
    code, out, _ = run(capsys, "conjecture", tmp_path / "a2p2a2.json", tmp_path / "a3.json", "--audit",
                       "--json", tmp_path / "c.json")
    assert code == 0
    assert "verdict: Equal" in out and "[ok] x*t*x' = a^m b^l" in out and "FAIL" not in out
    rep = json.loads((tmp_path / "c.json").read_text())
    assert rep["verdict"] == "Equal" and rep["audit"][0]["passed"]
    code, out, _ = run(capsys, "conjecture", "diag1_2", "diag1_3", "--audit", "--all-splits")
    assert code == 0 and out.count("audit at masks") == 4


def test_cli_input_errors(tmp_path, capsys):
    code, _, err = run(capsys, "slope", "no_such_lattice")
    assert code == 1 and "no such file" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "slope", bad)[0] == 1
    bad.write_text(json.dumps({"gram": [[1, 0], [0, 1]], "group_generators": [[[2, 0], [0, 1]]]}))
    code, _, err = run(capsys, "decompose", bad)
    assert code == 1 and "unimodular" in err
    assert run(capsys, "decompose", "e8")[0] == 0
    assert run(capsys, "conjecture", minus_identity_file(tmp_path), "a2")[0] == 1
    assert run(capsys, "corpus", "emit")[0] == 1


def test_cli_corpus(tmp_path, capsys):
    code, out, _ = run(capsys, "corpus", "list")
    assert code == 0 and "e8" in out and "glued2" in out
    assert run(capsys, "corpus", "emit", "d4", "-o", tmp_path / "d4.json")[0] == 0
    assert load_entry(tmp_path / "d4.json") == corpus("d4")


def test_cli_fuzz(tmp_path, capsys):
    code, out, _ = run(capsys, "fuzz", "parallelogram", "--seed", 1, "--trials", 1000,
                       "--csv", tmp_path / "s.csv")
    assert code == 0 and out.strip() == "1000/1000 OK"
    rows = list(csv.DictReader(open(tmp_path / "s.csv")))
    assert rows[0]["campaign"] == "parallelogram" and rows[0]["failed"] == "0"


def test_campaigns_are_reproducible():
    cfg = FuzzConfig(seed=9, trials=20)
    a, b = run_campaign("identities", cfg), run_campaign("identities", cfg)
    assert a.ok and a.summary() == b.summary() == "20/20 OK"


def test_failing_campaign_writes_reproducer(tmp_path, monkeypatch):
    from lattice_slopes import fuzz

    def broken(rng, cfg):
        L = random_lattice(rng, 2)
        return L.det < 0, {"gram": [[str(a) for a in r] for r in L.gram]}

    monkeypatch.setitem(fuzz.CAMPAIGNS, "broken", broken)
    res = run_campaign("broken", FuzzConfig(seed=3, trials=2), reproducer_dir=tmp_path)
    assert not res.ok and res.summary() == "0/2 FAILED (2)"
    rep = json.loads((tmp_path / "repro_broken_3_1.json").read_text())
    assert rep["seed"] == 3 and rep["trial"] == 1
    # the reproducer replays the same instance
    assert broken(trial_rng(3, 1), None)[1] == rep["instance"]
    write_csv([res], tmp_path / "s.csv")
    assert "broken,3,2,0,2" in (tmp_path / "s.csv").read_text()
