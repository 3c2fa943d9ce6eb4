"""Command surface: JSON output, determinism, exit codes."""

import io
import json
from contextlib import redirect_stdout

from qheis.cli import main


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def lines_of(text):
    return [json.loads(line) for line in text.strip().splitlines()]


def test_nf_smash_relation():
    code, out = run_cli(["nf", "--algebra", "Dq", "--m", "1", "--n", "1", "E*c"])
    assert code == 0
    (rec,) = lines_of(out)
    assert rec["terms"] == [
        {"coeff": "1", "mono": {"E": 1, "c": 1}},
        {"coeff": "q^-1", "mono": {"K": 1, "a": -1}},
    ]


def test_pair_value():
    code, out = run_cli(["pair", "--m", "1", "--n", "1", "K", "a"])
    assert code == 0
    (rec,) = lines_of(out)
    assert rec["value"] == "q^-1"


def test_act_value():
    code, out = run_cli(["act", "--m", "1", "--n", "2", "F", "b"])
    assert code == 0
    (rec,) = lines_of(out)
    assert rec["terms"] == [{"coeff": "1", "mono": {"a": 2}}]


def test_counit_and_antipode():
    code, out = run_cli(["counit", "--algebra", "Oq", "3*q*a + c"])
    assert code == 0
    (rec,) = lines_of(out)
    assert rec["value"] == "3*q"
    code, out = run_cli(["antipode", "--algebra", "Oq", "--m", "1", "--n", "1", "b"])
    (rec,) = lines_of(out)
    assert rec["terms"] == [{"coeff": "-q^-1", "mono": {"b": 1}}]


def test_comm_command():
    code, out = run_cli(["comm", "--algebra", "S", "--m", "1", "--n", "1", "Ep", "cp"])
    assert code == 0
    (rec,) = lines_of(out)
    assert rec["text"] == "(-q^-2 + 1)*Ep*cp + q^-2"


def test_smash_command():
    code, out = run_cli(["smash", "--m", "1", "--n", "1"])
    assert code == 0
    recs = lines_of(out)
    assert len(recs) == 16
    assert all(r["ok"] for r in recs)


def test_ideal_member():
    code, out = run_cli(
        ["ideal", "member", "--ideal", "I3", "--m", "1", "--n", "1", "--deg", "6", "1"]
    )
    assert code == 0
    (rec,) = lines_of(out)
    assert rec["status"] == "NotDetected"
    code, out = run_cli(
        ["ideal", "member", "--ideal", "I1", "--m", "1", "--n", "1", "--deg", "6", "phi1"]
    )
    (rec,) = lines_of(out)
    assert rec["status"] == "Verified"


def test_ideal_contain_and_span():
    code, out = run_cli(
        ["ideal", "contain", "--ideal", "I1", "--other", "I3", "--m", "1", "--n", "1", "--deg", "6"]
    )
    assert code == 0
    (rec,) = lines_of(out)
    assert rec["status"] == "Contained"
    code, out = run_cli(
        ["ideal", "span", "--gens", "phi1", "--m", "1", "--n", "1", "--deg", "4"]
    )
    (rec,) = lines_of(out)
    assert rec["dimension"] > 0


def test_spec_diagram():
    code, out = run_cli(["spec", "diagram", "--m", "1", "--n", "1", "--deg", "6"])
    assert code == 0
    recs = lines_of(out)
    statuses = {(r["from"], r["to"]): r["status"] for r in recs}
    assert statuses[("I1", "I3")] == "Contained"


def test_module_commands():
    code, out = run_cli(
        ["module", "act", "--family", "J1", "--m", "1", "--n", "1", "Fp"]
    )
    assert code == 0
    (rec,) = lines_of(out)
    assert rec["vector"] == "1*Fp^1.v"
    code, out = run_cli(
        ["module", "probe", "--family", "J2", "--m", "1", "--n", "1", "--deg", "4", "Fp"]
    )
    (rec,) = lines_of(out)
    assert rec["verdict"] == "Cyclic"
    code, out = run_cli(
        ["module", "growth", "--family", "J1", "--m", "1", "--n", "1", "--deg", "24"]
    )
    (rec,) = lines_of(out)
    assert 1.7 <= rec["exponent"] <= 2.3


def test_module_support_window():
    code, out = run_cli(
        ["module", "support", "--kind", "K", "--window", "1", "--eigenvalue", "2"]
    )
    assert code == 0
    (rec,) = lines_of(out)
    assert sorted(rec["support"]) == sorted(["2", "2*q", "2*q^-1"])


def test_aut_failure_exit_code():
    code, out = run_cli(["aut", "check", "--family", "tau", "--m", "1", "--n", "2"])
    assert code == 2  # constraint violation is a usage error


def test_rational_q_mode():
    code, out = run_cli(
        ["nf", "--algebra", "Dq", "--m", "1", "--n", "1", "--q", "3/2", "E*c"]
    )
    assert code == 0
    (rec,) = lines_of(out)
    assert rec["terms"][1]["coeff"] == "2/3"


def test_rational_q_mode_ideal():
    code, out = run_cli(
        ["ideal", "member", "--ideal", "I1", "--deg", "6", "--q", "3/2", "phi1"]
    )
    assert code == 0
    (rec,) = lines_of(out)
    assert rec["status"] == "Verified"


def test_verify_deterministic_and_exit_zero():
    args = ["verify", "--suite", "confluence,smash", "--m", "1", "--n", "1", "--seed", "3"]
    code1, out1 = run_cli(args)
    code2, out2 = run_cli(args)
    assert code1 == code2 == 0
    assert out1 == out2
    summary = lines_of(out1)[-1]
    assert summary["failed"] == 0


def test_verify_unknown_suite():
    code, _ = run_cli(["verify", "--suite", "bogus"])
    assert code == 2


def test_parse_error_exit():
    code, _ = run_cli(["nf", "--algebra", "Oq", "b^-1"])
    assert code == 2
    code, _ = run_cli(["nf", "--algebra", "Oq", "a +"])
    assert code == 2


def test_env_seed(monkeypatch):
    monkeypatch.setenv("QHEIS_SEED", "11")
    code, out = run_cli(["verify", "--suite", "smash"])
    assert code == 0
    assert lines_of(out)[-1]["seed"] == 11
