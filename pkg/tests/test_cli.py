import json

import pytest

from pureorder import cli
from pureorder.orders import power_order
from pureorder.exactmath import IntPoly


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_analyze_11_9_json(capsys):
    code, obj = run_json(capsys, "analyze", "--p", "11", "--a", "9")
    assert code == 0
    assert obj["schema_version"] == cli.SCHEMA_VERSION
    assert obj["disc"] == "-3^10·11^9"
    assert obj["disc_value"] == str(-(3**10) * 11**9)
    assert obj["disc_matches_formula"] is True
    labels = [b["label"] for b in obj["basis"]]
    assert labels[:6] == ["1", "alpha", "alpha^2", "alpha^3", "alpha^4", "alpha^5"]
    assert labels[6:10] == [f"alpha^{k}/3" for k in range(6, 10)]
    assert all(isinstance(c, str) for b in obj["basis"] for c in b["num"])
    assert obj["field"]["factorization"] == [["3", 2]]


def test_analyze_text(capsys):
    code, out = run(capsys, "analyze", "--p", "3", "--a", "19")
    assert code == 0
    assert "wieferich    true" in out
    assert "-3*19^2" in out and "WARNING" not in out


def test_analyze_normalizes(capsys):
    code, obj = run_json(capsys, "analyze", "--p", "3", "--a", str(-4 * 27))
    assert code == 0
    assert obj["field"]["a"] == "4" and obj["field"]["a_input"] == str(-108)


def test_analyze_explain(capsys):
    code, obj = run_json(capsys, "analyze", "--p", "3", "--a", "19", "--explain")
    assert code == 0
    assert obj["explain"]["chi"]["chi"] == ["-1732800", "43681", "-361", "1"]
    code, obj = run_json(capsys, "analyze", "--p", "5", "--a", "2", "--explain")
    assert "chi" not in obj["explain"]


@pytest.mark.parametrize("argv", [["analyze", "--p", "3", "--a", "8"], ["analyze", "--p", "4", "--a", "2"],
                                  ["analyze", "--p", "3", "--a", "1"], ["wieferich", "1", "3"]])
def test_invalid_input_exit_2(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == 2


def test_factor_budget_exit_3(capsys):
    code, _ = run(capsys, "analyze", "--p", "3", "--a", str(1000003 * 1000033), "--factor-budget", "1")
    assert code == 3


def test_wieferich(capsys):
    assert run_json(capsys, "wieferich", "11", "3")[1]["wieferich"] is True
    assert run_json(capsys, "wieferich", "5", "2")[1]["wieferich"] is False


def test_disc_and_basis_commands(capsys):
    code, obj = run_json(capsys, "disc", "--p", "5", "--a", "7")
    assert code == 0 and obj["disc"] == "5^3·7^4"
    code, obj = run_json(capsys, "basis", "--p", "3", "--a", "4")
    assert [b["label"] for b in obj["basis"]] == ["1", "alpha", "alpha^2/2"]


def test_monogenic(capsys):
    code, obj = run_json(capsys, "monogenic", "--q1", "2", "--q2", "17")
    assert code == 0 and obj["status"] == "Monogenic" and obj["solutions"][0] == ["1", "2"]
    code, obj = run_json(capsys, "monogenic", "--p", "3", "--a", "4")
    assert obj["generator"]["label"] == "alpha^2/2"
    code, _ = run(capsys, "monogenic", "--p", "5", "--q1", "2", "--q2", "17")
    assert code == 2


def test_verify_pipeline(capsys):
    code, out = run(capsys, "verify", "--p", "11", "--a", "9")
    assert code == 0 and out.strip().endswith("verified")


def test_verify_lattice_file(capsys, tmp_path):
    _, obj = run_json(capsys, "analyze", "--p", "3", "--a", "4")
    good = tmp_path / "good.json"
    good.write_text(json.dumps(obj["order"]))
    code, rep = run_json(capsys, "verify", "--p", "3", "--a", "4", "--lattice", str(good))
    assert code == 0 and rep["passed"]

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(power_order(IntPoly.x_pow_minus(3, 4)).to_json()))
    code, rep = run_json(capsys, "verify", "--p", "3", "--a", "4", "--lattice", str(bad))
    assert code == 1
    failed = {c["name"] for c in rep["checks"] if not c["passed"]}
    assert failed == {"lattice_equality", "per_prime_maximality"}


def test_sweep_jsonl(capsys):
    code, out = run(capsys, "sweep", "--p", "3,5", "--a", "2..12")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert len(recs) == 2 * 11
    by = {(r["p"], r["a"]): r for r in recs}
    assert by[("3", "8")]["status"] == "invalid"
    assert by[("3", "10")]["wieferich"] is True
    ok = [r for r in recs if r["status"] == "ok"]
    assert all(r["pipeline_equals_oracle"] and r["disc_matches_formula"] for r in ok)
    assert all(r["schema_version"] == cli.SCHEMA_VERSION for r in recs)


def test_sweep_deterministic_across_jobs(capsys):
    _, serial = run(capsys, "sweep", "--p", "3", "--a", "2..40")
    _, again = run(capsys, "sweep", "--p", "3", "--a", "2..40")
    _, parallel = run(capsys, "sweep", "--p", "3", "--a", "2..40", "--jobs", "2")
    assert serial == again == parallel


def test_out_file(capsys, tmp_path):
    target = tmp_path / "o.json"
    code, out = run(capsys, "disc", "--p", "3", "--a", "4", "--json", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["disc"] == "-2^2·3^3"


def test_env_overrides(capsys, monkeypatch):
    monkeypatch.setenv("PUREORDER_JSON", "1")
    code, out = run(capsys, "wieferich", "3", "19")
    assert json.loads(out)["wieferich"] is True
    monkeypatch.setenv("PUREORDER_FACTOR_BUDGET", "1")
    code, _ = run(capsys, "analyze", "--p", "3", "--a", str(1000003 * 1000033))
    assert code == 3
