import io
import json
import subprocess
import sys

from sqmirror.cli import main


def run_cli(*args):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(args), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


class TestTable1:
    def test_default_matches_goldens(self):
        code, out, err = run_cli("table1")
        assert code == 0
        assert err == ""
        assert len(out.strip().splitlines()) == 6  # header + 5 rows

    def test_single_row(self):
        code, out, _ = run_cli("table1", "--d-max", "1")
        assert code == 0
        row = out.strip().splitlines()[-1].split()
        assert row == ["1", "2875", "3850", "2875", "2875"]

    def test_csv(self):
        code, out, _ = run_cli("table1", "--d-max", "2", "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("d,")
        assert lines[1] == "1,2875,3850,2875,2875"
        assert lines[2].split(",")[1] == "4876875/8"

    def test_json(self):
        code, out, _ = run_cli("table1", "--d-max", "1", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload[0]["sq_tau0"] == "3850/1"

    def test_deterministic_bytes(self):
        a = run_cli("table1", "--d-max", "3", "--format", "json")
        b = run_cli("table1", "--d-max", "3", "--format", "json")
        assert a == b


class TestInvariant:
    def test_sq_value(self):
        code, out, _ = run_cli(
            "invariant", "--n", "5", "--a", "5", "--flavor", "SQ", "--d", "2", "--p", "0"
        )
        assert code == 0
        assert "3589125" in out

    def test_gw_json(self):
        code, out, _ = run_cli(
            "invariant",
            "--n", "5", "--a", "5",
            "--flavor", "GW", "--d", "3", "--p", "1",
            "--format", "json",
        )
        assert code == 0
        record = json.loads(out)
        assert record["value"] == "8564575000/9"

    def test_stability_example(self):
        code, out, _ = run_cli(
            "invariant",
            "--n", "6", "--a", "5,1",
            "--flavor", "SQ", "--d", "1", "--p", "0",
            "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["value"] == "3850/1"

    def test_range_error_is_usage_error(self):
        code, _, err = run_cli(
            "invariant", "--n", "5", "--a", "5", "--flavor", "SQ", "--d", "1", "--p", "9"
        )
        assert code == 2
        assert "descendant power" in err

    def test_missing_tuple(self):
        code, _, err = run_cli("invariant", "--flavor", "SQ", "--d", "1", "--p", "0")
        assert code == 2

    def test_bad_tuple_entry(self):
        code, _, err = run_cli(
            "invariant", "--n", "5", "--a", "5,0", "--flavor", "SQ", "--d", "1", "--p", "0"
        )
        assert code == 2


class TestVerify:
    def test_lemma24(self):
        code, out, _ = run_cli("verify", "--suite", "lemma24", "--format", "json")
        assert code == 0
        assert json.loads(out)[0]["pass"] is True

    def test_l0(self):
        code, out, _ = run_cli("verify", "--suite", "l0")
        assert code == 0
        assert "[pass]" in out

    def test_recursivity_single_tuple(self):
        code, out, _ = run_cli(
            "verify",
            "--suite", "recursivity",
            "--n", "2", "--a", "",
            "--d-max", "2", "--frames", "1",
            "--format", "json",
        )
        assert code == 0
        records = json.loads(out)
        assert all(r["pass"] for r in records)

    def test_mirror_single_tuple(self):
        code, out, _ = run_cli(
            "verify",
            "--suite", "mirror",
            "--n", "4", "--a", "2",
            "--d-max", "2", "--frames", "1",
            "--format", "json",
        )
        assert code == 0

    def test_deterministic_bytes(self):
        args = (
            "verify", "--suite", "recursivity",
            "--n", "3", "--a", "2",
            "--d-max", "2", "--frames", "2", "--seed", "5",
            "--format", "json",
        )
        assert run_cli(*args) == run_cli(*args)

    def test_usage_error_on_bad_dmax(self):
        code, _, err = run_cli("verify", "--suite", "l0", "--d-max", "0")
        assert code == 2
        assert "d-max" in err


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "sqmirror", "table1", "--d-max", "1", "--format", "csv"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "2875" in proc.stdout

    def test_unknown_command_exits_2(self):
        proc = subprocess.run(
            [sys.executable, "-m", "sqmirror", "frobnicate"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 2
