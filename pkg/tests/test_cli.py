import io
import json
import subprocess
import sys

import pytest

from deodhar_lab.cli import EXIT_CAP, EXIT_CHECK, EXIT_OK, EXIT_USAGE, run


def call(*argv, env=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--output", "json", "--no-timing")
    return code, (json.loads(out) if out else None), err


def test_klpoly_golden():
    code, doc, _ = call_json("klpoly", "--group", "A3", "--x", "2", "--y", "2 1 3 2")
    assert code == EXIT_OK
    assert set(doc) == {"group", "command", "inputs", "result", "checks", "elapsed_ms"}
    assert doc["result"]["h"] == "1:1,0,1" and doc["result"]["p"] == "0:1,1" and doc["result"]["mu"] == 1
    assert doc["inputs"] == {"x": "2", "y": "2 1 3 2"}
    assert all(c["ok"] for c in doc["checks"])


def test_klpoly_trivial():
    code, doc, _ = call_json("klpoly", "--group", "A2", "--x", "1", "--y", "1")
    assert code == EXIT_OK and doc["result"]["h"] == "0:1" and doc["result"]["mu"] == 0


def test_deodhar_golden():
    code, doc, _ = call_json("deodhar", "--group", "A2", "--word", "1 2 1", "--x", "1")
    r = doc["result"]
    assert code == EXIT_OK
    assert len(r["subexpressions"]) == 2 and r["gdim"] == "0:1,0,1"
    assert r["solutions"]["count"] == "1" and r["solutions"]["forced"] is True
    assert r["solutions"]["witness"] == ["001"]
    assert r["subexpressions"][1] == {"bits": "100", "decorations": "U1 U0 D0", "element": "1", "defect": 0}


def test_deodhar_non_reduced_has_no_census():
    code, doc, _ = call_json("deodhar", "--group", "A2", "--word", "1 1", "--x", "1")
    assert code == EXIT_OK and doc["result"]["solutions"] is None and doc["result"]["gdim"] == "-1:1,0,1"


def test_table_output():
    code, out, _ = call("deodhar", "--group", "A3", "--word", "2 1 3 2", "--x", "2")
    assert code == EXIT_OK
    assert "U1 U0 U0 D0" in out and "solutions = 1, forced = true" in out and "[PASS]" in out


@pytest.mark.parametrize(
    "cmd, key",
    [
        (["identity-check", "--group", "I2(5)", "--max-len", "5"], "checked"),
        (["lemma-hom", "--group", "A2", "--max-len", "3"], "pairs"),
        (["classify", "--group", "A3", "--max-len", "4"], "pairs"),
    ],
)
def test_sweeps_are_deterministic(cmd, key):
    a = call(*cmd, "--json", "--no-timing")
    b = call(*cmd, "--json", "--no-timing")
    assert a[0] == EXIT_OK and a[1] == b[1]
    assert key in json.loads(a[1])["result"]


def test_classify_finds_the_a3_singular_pairs():
    _, doc, _ = call_json("classify", "--group", "A3", "--max-len", "4")
    assert doc["result"]["not_rationally_smooth"] == [{"x": "e", "y": "2 1 3 2"}, {"x": "2", "y": "2 1 3 2"}]


def test_bs_command():
    code, doc, _ = call_json("bs", "--group", "A2", "--word", "1 2")
    r = doc["result"]
    assert code == EXIT_OK
    assert r["grk"] == "-2:1,0,2,0,1" and r["m_chain_c_bot"] == "1" and r["c_bot_degree"] == -2
    assert [row["cll_degree"] for row in r["rows"]] == [row["defect"] for row in r["rows"]]


@pytest.mark.parametrize(
    "argv",
    [
        ["klpoly", "--group", "A3", "--x", "2"],
        ["klpoly", "--group", "Q7", "--x", "1", "--y", "1"],
        ["klpoly", "--group", "A3", "--x", "5", "--y", "1"],
        ["frobnicate", "--group", "A3"],
        ["bs", "--group", "I2(5)", "--word", "1 2"],
        ["identity-check", "--group", "A2", "--max-len", "-1"],
        ["identity-check", "--group", "A2", "--max-len", "2", "--len-cap", "0"],
        [],
    ],
)
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == EXIT_USAGE and out == "" and err


@pytest.mark.parametrize(
    "argv",
    [
        ["identity-check", "--group", "A3", "--max-len", "20"],
        ["deodhar", "--group", "A2", "--word", "1 2 1 2", "--x", "e", "--max-subexpr", "3"],
        ["bs", "--group", "A2", "--word", "1 2 1", "--max-bs", "2"],
        ["classify", "--group", "At2", "--max-len", "6", "--max-elements", "20"],
    ],
)
def test_resource_caps(argv):
    code, _, err = call(*argv)
    assert code == EXIT_CAP and "resource limit" in err


def test_check_failure_exit_code(monkeypatch):
    import deodhar_lab.cli as cli
    from deodhar_lab.sweeps import IdentitySweep

    monkeypatch.setattr(cli, "identity_sweep", lambda W, L, **kw: IdentitySweep(1, [_FakeReport()]))
    code, out, _ = call("identity-check", "--group", "A2", "--max-len", "1")
    assert code == EXIT_CHECK and "[FAIL]" in out


class _FakeReport:
    def as_dict(self):
        return {"expression": "1", "ok": False, "discrepancies": []}


def test_console_script_module_entry():
    res = subprocess.run(
        [sys.executable, "-m", "deodhar_lab.cli", "klpoly", "--group", "A2", "--x", "e", "--y", "1 2 1", "--json"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["result"]["h"] == "3:1"
