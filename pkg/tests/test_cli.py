import json
from pathlib import Path

import jsonschema

from pegboard.cli import EXIT_INVALID, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main

SCHEMA = json.loads(
    (Path(__file__).resolve().parents[1] / "src" / "pegboard" / "schemas" / "report.schema.json")
    .read_text()
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    return code, payload


class TestBasicCommands:
    def test_zoo_list(self, capsys):
        code, payload = run_json(capsys, "zoo", "list")
        assert code == EXIT_OK
        assert "trefoil" in payload["names"]

    def test_pair_json(self, capsys):
        code, payload = run_json(capsys, "pair", "trefoil", "5/1")
        assert code == EXIT_OK
        assert payload["total"] == 5
        assert payload["cancelled_bigons"] == 0

    def test_pair_multiple_slopes_text(self, capsys):
        code, out, _ = run(capsys, "pair", "unknot", "1/1", "3/2")
        assert code == EXIT_OK
        assert "dim = 1" in out and "dim = 3" in out

    def test_hfk_vertical(self, capsys):
        code, payload = run_json(capsys, "hfk", "figure_eight", "1/0")
        assert code == EXIT_OK
        assert payload["dims"] == {"1": 1, "0": 3, "-1": 1}

    def test_vertical_refused_elsewhere(self, capsys):
        code, _, err = run(capsys, "pair", "trefoil", "1/0")
        assert code == EXIT_USAGE
        assert "hfk" in err

    def test_invariants(self, capsys):
        code, payload = run_json(capsys, "invariants", "unknot")
        assert code == EXIT_OK
        assert (payload["genus"], payload["tau"], payload["epsilon"]) == (0, 0, 0)

    def test_diff_ok(self, capsys):
        code, payload = run_json(capsys, "diff", "trefoil", "1/1")
        assert code == EXIT_OK
        assert all(row["ok"] for row in payload["gradings"])

    def test_scan_simple(self, capsys):
        code, payload = run_json(capsys, "scan-simple", "trefoil", "--pmax", "3", "--qmax", "2")
        assert code == EXIT_OK
        flagged = [e["slope"] for e in payload["entries"] if e["dually_simple"]]
        assert set(flagged) == {"2/1", "3/1", "3/2"}

    def test_demo_poincare(self, capsys):
        code, payload = run_json(capsys, "demo", "poincare")
        assert code == EXIT_OK
        assert payload["result"]["conditional_value"] == 1
        assert payload["result"]["lower_bound"] == 3

    def test_usage_error_on_bad_slope(self, capsys):
        code, _, err = run(capsys, "pair", "trefoil", "x/y")
        assert code == EXIT_USAGE

    def test_unknown_knot(self, capsys):
        code, _, err = run(capsys, "pair", "granny", "1/1")
        assert code == EXIT_USAGE


class TestLedgerCommands:
    def test_quasi_alt(self, capsys):
        code, out, _ = run(capsys, "ledger", "quasi-alt", "3")
        assert code == EXIT_OK
        assert "Z^4 + (Z/2)^1" in out

    def test_torsion_half_json(self, capsys):
        code, payload = run_json(capsys, "ledger", "torsion-half", "1", "3")
        assert code == EXIT_OK
        assert payload["certificate"]["lower_bound"] == 5
        assert payload["certificate"]["rule"] == "L3.5"

    def test_dual_one(self, capsys):
        code, payload = run_json(capsys, "ledger", "dual-one", "1", "1")
        assert code == EXIT_OK
        assert payload["result"]["khi_lower"] == 3
        assert payload["certificate"]["lower_bound"] == 1

    def test_shape_classify_csv(self, capsys, tmp_path):
        rows = ["n,value,bundle,coefficient"]
        for n in range(-6, 7):
            rows.append(f"{n},{abs(n) if n else 2},trivial,F2")
            rows.append(f"{n},{abs(n) if n else 0},mu,F2")
        csv_path = tmp_path / "unknot.csv"
        csv_path.write_text("\n".join(rows) + "\n")
        code, payload = run_json(capsys, "ledger", "shape-classify", str(csv_path))
        assert code == EXIT_OK
        assert payload["result"]["kind"] == "W"
        assert payload["result"]["width_0"] == "1"

    def test_t2_check_violation_exit_code(self, capsys, tmp_path):
        rows = ["n,value,bundle,coefficient"]
        for n, c_val, f_val in [(0, 1, 1), (1, 2, 2), (2, 3, 5)]:
            rows.append(f"{n},{c_val},trivial,C")
            rows.append(f"{n},{f_val},trivial,F2")
        csv_path = tmp_path / "bad.csv"
        csv_path.write_text("\n".join(rows) + "\n")
        code, out, _ = run(capsys, "ledger", "t2-check", str(csv_path), "--nu", "0")
        assert code == EXIT_VIOLATION

    def test_no_torsion(self, capsys):
        code, payload = run_json(capsys, "ledger", "no-torsion", "3", "V", "1", "1")
        assert code == EXIT_OK
        assert payload["result"]["branch"] == "case-5"


class TestFilesAndRender:
    def test_file_knot_and_zoo_dir(self, capsys, tmp_path, monkeypatch):
        text = "component winding=1\nv -1/2 0\nv 1/2 0\n"
        path = tmp_path / "myknot.curve"
        path.write_text(text)
        code, payload = run_json(capsys, "pair", str(path), "4/1")
        assert code == EXIT_OK and payload["total"] == 4
        monkeypatch.setenv("PEGBOARD_ZOO_DIR", str(tmp_path))
        code, payload = run_json(capsys, "pair", "myknot", "2/1")
        assert code == EXIT_OK and payload["total"] == 2

    def test_invalid_file_exit_code(self, capsys, tmp_path):
        path = tmp_path / "bad.curve"
        path.write_text("component winding=1\nv -1/2 1/4\nv 1/2 1/4\n")
        code, _, err = run(capsys, "pair", str(path), "1/1")
        assert code == EXIT_INVALID

    def test_render_deterministic(self, capsys, tmp_path):
        out1 = tmp_path / "a.svg"
        out2 = tmp_path / "b.svg"
        assert main(["render", "trefoil", "--overlay", "1/1", "--out", str(out1)]) == EXIT_OK
        assert main(["render", "trefoil", "--overlay", "1/1", "--out", str(out2)]) == EXIT_OK
        assert out1.read_bytes() == out2.read_bytes()

    def test_render_structure(self, capsys):
        code, out, _ = run(capsys, "render", "unknot")
        assert code == EXIT_OK
        assert out.startswith("<svg")
        assert out.count("<circle") >= 3
        assert out.count("<polyline") >= 1

    def test_render_matches_golden_file(self, capsys):
        golden = (Path(__file__).parent / "golden" / "unknot.svg").read_text()
        code, out, _ = run(capsys, "render", "unknot")
        assert code == EXIT_OK
        assert out == golden

    def test_render_refuses_invalid(self, capsys, tmp_path):
        path = tmp_path / "bad.curve"
        path.write_text("component winding=1\nv -1/2 1/4\nv 1/2 1/4\n")
        code, _, _ = run(capsys, "render", str(path))
        assert code == EXIT_INVALID

    def test_json_outputs_are_byte_stable(self, capsys):
        _, out1, _ = run(capsys, "pair", "figure_eight", "3/2", "--format", "json")
        _, out2, _ = run(capsys, "pair", "figure_eight", "3/2", "--format", "json")
        assert out1 == out2

    def test_csv_output(self, capsys):
        code, out, _ = run(capsys, "hfk", "trefoil", "1/0", "--format", "csv")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "grading,dim"

    def test_hfk_refuses_zero_filling(self, capsys):
        code, _, err = run(capsys, "hfk", "trefoil", "0/1")
        assert code == EXIT_USAGE
        assert "0-filling" in err

    def test_render_overlay_arc(self, capsys):
        code, out, _ = run(capsys, "render", "trefoil", "--overlay-arc", "1/1@1")
        assert code == EXIT_OK
        assert "stroke-dasharray" in out

    def test_console_script_installed(self):
        import subprocess
        import sys

        proc = subprocess.run(
            [sys.executable, "-m", "pegboard.cli", "zoo", "list"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "trefoil" in proc.stdout
