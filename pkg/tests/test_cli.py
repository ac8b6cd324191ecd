import json

import pytest

from dnnt.cli import main
from dnnt.netmodel import load_assignment, load_instance


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def report(text):
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line)


def test_gen_is_deterministic(tmp_path, capsys):
    for name in ("a.json", "b.json"):
        code, _, _ = run(capsys, "gen", "--problem", "subset-sum", "--random", "--seed", 11, "--out", tmp_path / name)
        assert code == 0
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    meta = json.loads((tmp_path / "a.json").read_text())["meta"]
    assert meta["seed"] == 11 and meta["generator"] == "random.Random"


def test_gen_solve_eval_reduce_pipeline(tmp_path, capsys):
    src = tmp_path / "ss.json"
    src.write_text(json.dumps({"format_version": 1, "problem": "subset-sum", "items": ["3", "5", "8"], "target": "8"}))
    inst, wit = tmp_path / "inst.json", tmp_path / "wit.json"
    assert run(capsys, "gen", "--problem", "subset-sum", "--in", src, "--out", inst)[0] == 0

    code, out, _ = run(capsys, "solve", inst, "--method", "dp", "--emit-witness", wit)
    assert code == 0 and report(out)["decision"] == "yes" and report(out)["loss"] == "0"
    code, out, _ = run(capsys, "eval", inst, wit)
    assert code == 0 and report(out)["total_loss"] == "0"

    cont, lifted = tmp_path / "cont.json", tmp_path / "lifted.json"
    code, out, _ = run(capsys, "reduce", inst, "--out", cont, "--assignment", wit, "--assignment-out", lifted)
    assert code == 0 and report(out)["kind"] == "continuous"
    gamma = report(out)["gamma"]
    code, out, _ = run(capsys, "eval", cont, lifted)
    assert code == 0 and report(out)["total_loss"] == gamma
    assert load_instance(cont).params.continuous
    assert len(load_assignment(lifted)[("s", "h1")].weights) == 3


def test_solve_no_instance(tmp_path, capsys):
    src = tmp_path / "ss.json"
    src.write_text(json.dumps({"format_version": 1, "problem": "subset-sum", "items": ["2", "4"], "target": "7"}))
    inst = tmp_path / "inst.json"
    run(capsys, "gen", "--problem", "subset-sum", "--in", src, "--out", inst)
    code, out, _ = run(capsys, "solve", inst)
    assert code == 1 and report(out)["decision"] == "no"


def test_exit_codes(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    run(capsys, "gen", "--problem", "subset-sum", "--random", "--seed", 1, "--size", "n=12", "--out", inst)
    assert run(capsys, "solve", inst, "--budget", 3)[0] == 5

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "solve", bad)[0] == 2
    assert run(capsys, "solve", tmp_path / "missing.json")[0] == 2

    wit = tmp_path / "wit.json"
    run(capsys, "solve", inst, "--emit-witness", wit)
    doc = json.loads(wit.read_text())
    doc["edges"][0]["weights"] = ["12345"] * len(doc["edges"][0]["weights"])
    wit.write_text(json.dumps(doc))
    assert run(capsys, "eval", inst, wit)[0] == 4

    deep = tmp_path / "deep.json"
    run(capsys, "gen", "--problem", "slp", "--random", "--seed", 2, "--len", 4, "--out", deep)
    assert run(capsys, "solve", deep, "--method", "dp")[0] == 6
    assert run(capsys, "reduce", deep, "--out", tmp_path / "c.json")[0] == 6


def test_validation_exit_code(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    run(capsys, "gen", "--problem", "subset-sum", "--random", "--seed", 1, "--out", inst)
    doc = json.loads(inst.read_text())
    doc["dataset"]["points"][0]["x"] = ["1", "2"]
    inst.write_text(json.dumps(doc))
    code, _, err = run(capsys, "solve", inst)
    assert code == 3 and "expected 1" in err


def test_bad_size_key(tmp_path, capsys):
    code, _, err = run(capsys, "corpus", "--problem", "csp", "--size", "bogus=3", "--out", tmp_path)
    assert code == 2 and "vertices" in err


@pytest.mark.parametrize("problem", ["subset-sum", "csp", "exact-cover", "slp"])
def test_corpus_and_verify(tmp_path, capsys, problem):
    code, _, _ = run(capsys, "corpus", "--problem", problem, "--count", 8, "--seed", 5, "--out", tmp_path)
    assert code == 0 and len(list(tmp_path.glob("*.json"))) == 8
    code, out, _ = run(capsys, "verify", "--corpus", tmp_path)
    assert code == 0 and report(out)["passed"] == "8"


def test_corpus_is_deterministic(tmp_path, capsys):
    for name in ("a", "b"):
        run(capsys, "corpus", "--problem", "exact-cover", "--count", 5, "--seed", 3, "--out", tmp_path / name)
    for f in sorted((tmp_path / "a").iterdir()):
        assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()


def test_gen_shift_gadget(tmp_path, capsys):
    out = tmp_path / "p.json"
    code, text, _ = run(capsys, "gen", "--problem", "slp", "--random", "--seed", 3, "--gadget", "shift", "--out", out)
    assert code == 0 and load_instance(out).meta["gadget"] == "shift"
    assert report(text)["restricted"] == "true"
