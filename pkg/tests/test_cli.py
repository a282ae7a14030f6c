import json

import numpy as np
import pytest

import fadelab as fl
from fadelab.cli import MI_HEADER, SWEEP_HEADER, parse_config, run
from fadelab.errors import UsageError
from conftest import jakes_like_table, write_density_table


def run_cli(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, out


class TestParsing:
    def test_basic_phi(self):
        cfg = parse_config(["phi", "--model", "ar1", "--a", "0.5", "--method", "series"])
        assert cfg.command == "phi"
        assert cfg.args.method == "series"
        assert cfg.args.a == 0.5

    def test_config_file(self, tmp_path):
        p = tmp_path / "run.cfg"
        p.write_text("command=capacity\nmodel=bandlimited\nlambda_c=0.25\n# a comment\n")
        cfg = parse_config(["--config", str(p)])
        assert cfg.command == "capacity"
        assert cfg.args.lambda_c == 0.25

    def test_flags_override_config(self, tmp_path):
        p = tmp_path / "run.cfg"
        p.write_text("command=phi\nmodel=ar1\na=0.5\nmethod=series\n")
        cfg = parse_config(["--config", str(p), "--a", "0.3"])
        assert cfg.args.a == 0.3
        assert cfg.args.method == "series"

    def test_unknown_config_key_rejected(self, tmp_path):
        p = tmp_path / "run.cfg"
        p.write_text("command=phi\nmodel=ar1\nbogus=1\n")
        with pytest.raises(UsageError):
            parse_config(["--config", str(p)])

    def test_precondition_surfaces_as_usage(self):
        with pytest.raises(UsageError):
            parse_config(["phi", "--model", "ar1", "--a", "1.2"])

    def test_no_command(self):
        with pytest.raises(UsageError):
            parse_config(["--model", "ar1"])


class TestCommands:
    def test_capacity_memoryless(self, capsys):
        code, out = run_cli(capsys, ["capacity", "--model", "memoryless"])
        assert code == 0
        doc = json.loads(out)
        assert doc["phi"] == pytest.approx(0.0, abs=1e-9)
        assert doc["regime"] == "quickly_forgetting"
        assert doc["kappa"] == pytest.approx(0.125)
        assert doc["alpha_star"] == pytest.approx(0.5)
        assert doc["config"]["command"] == "capacity"
        assert "seed" in doc["config"]

    def test_capacity_spectral_line(self, capsys):
        code, out = run_cli(capsys, ["capacity", "--model", "line", "--mass", "0.3",
                                     "--residual", "memoryless"])
        assert code == 0
        doc = json.loads(out)
        assert doc["regime"] == "spectral_line"
        assert doc["linear_slope"] == pytest.approx(0.3)
        assert "kappa" not in doc and "alpha_star" not in doc

    def test_phi_all_methods_agree(self, capsys):
        code, out = run_cli(capsys, ["phi", "--model", "ar1", "--a", "0.8", "--method", "all"])
        assert code == 0
        doc = json.loads(out)
        for key in ("phi_integral", "phi_series", "phi_limit"):
            assert doc[key] == pytest.approx(16 / 9, abs=2e-3)
        assert doc["within_tolerance"] is True
        assert abs(doc["phi_integral"] - doc["phi_series"]) <= 1e-6

    def test_usage_exit_code(self, capsys):
        assert run(["phi", "--model", "ar1", "--a", "1.2"]) == 1
        assert run(["nonsense"]) == 1
        assert run(["mi", "--model", "memoryless", "--sigma2", "1.0", "--samples", "10"]) == 1

    def test_predict(self, capsys):
        code, out = run_cli(capsys, ["predict", "--model", "ar1", "--a", "0.5",
                                     "--delta2", "1.0"])
        assert code == 0
        doc = json.loads(out)
        assert doc["error"] == pytest.approx(np.sqrt(3) / 2, abs=1e-8)
        assert doc["method"] == "closed_form"
        code, out = run_cli(capsys, ["predict", "--model", "ar1", "--a", "0.5",
                                     "--delta2", "1.0", "--past", "4"])
        doc = json.loads(out)
        assert doc["method"] == "finite_past" and doc["past_length"] == 4

    def test_scheme(self, capsys):
        code, out = run_cli(capsys, ["scheme", "--model", "ar1", "--a", "0.5",
                                     "--b", "3", "--alpha", "0.5", "--A", "2.0"])
        assert code == 0
        doc = json.loads(out)
        assert doc["support_size"] == 9
        assert doc["mean_power"] == pytest.approx(2.0)
        assert doc["fourth_moment"] == pytest.approx(8.0)
        assert doc["s_of_b"] == pytest.approx(1.125)

    def test_validate_reports_verdict(self, capsys):
        code, out = run_cli(capsys, ["validate", "--model", "bandlimited",
                                     "--lambda-c", "0.25"])
        assert code == 0
        doc = json.loads(out)
        assert doc["condition12_verdict"] == "yes"
        assert doc["ok"] is True

    def test_mi_csv(self, capsys):
        code, out = run_cli(capsys, ["mi", "--model", "memoryless", "--b", "1",
                                     "--alpha", "0.5", "--sigma2", "4.0",
                                     "--samples", "20000", "--seed", "5"])
        assert code == 0
        lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
        assert lines[0] == MI_HEADER
        cells = lines[1].split(",")
        assert int(cells[0]) == 1
        assert float(cells[1]) == pytest.approx(0.25)
        assert int(cells[6]) == 5

    def test_simulate_trace(self, capsys, tmp_path):
        out_path = tmp_path / "trace.csv"
        code = run(["simulate", "--model", "ar1", "--a", "0.5", "--n", "16",
                    "--sigma2", "1.0", "--alpha", "0.5", "--b", "4",
                    "--seed", "9", "--out", str(out_path)])
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[0].startswith("# model=ar1(a=0.5)")
        assert lines[1] == "k,re_x,im_x,re_h,im_h,re_y,im_y"
        assert len(lines) == 18


class TestSweep:
    def test_csv_contract(self, capsys):
        code, out = run_cli(capsys, [
            "sweep", "--model", "ar1", "--a", "0.5",
            "--b-list", "1,2", "--alpha-list", "0.5,0.8333333333333334",
            "--snr-list", "0.1", "--seed", "3"])
        assert code == 0
        lines = out.splitlines()
        header_idx = next(i for i, ln in enumerate(lines) if not ln.startswith("#"))
        assert lines[header_idx] == SWEEP_HEADER
        rows = lines[header_idx + 1:]
        assert len(rows) == 4
        first = rows[0].split(",")
        assert first[0] == "ar1(a=0.5)"
        assert first[8] == "" and first[7] == ""          # no MC columns
        # the duty-cycle gap is reported in the summary comments
        gap_line = next(ln for ln in lines if ln.startswith("# iid_vs_block_gap="))
        assert float(gap_line.split("=")[1]) >= 0.0138

    def test_json_summary(self, capsys):
        code, out = run_cli(capsys, [
            "sweep", "--model", "ar1", "--a", "0.5", "--format", "json",
            "--b-list", "4", "--alpha-list", "0.8333333333333334",
            "--snr-list", "0.25"])
        assert code == 0
        doc = json.loads(out)
        assert doc["summary"]["asymptotic_block_max"] == pytest.approx(25 / 72, abs=1e-9)
        assert doc["summary"]["asymptotic_iid_max"] == pytest.approx(1 / 3, abs=1e-9)
        assert doc["summary"]["iid_vs_block_gap"] == pytest.approx(1 / 72, abs=1e-9)
        row = doc["rows"][0]
        assert row["block_coeff"] == pytest.approx(0.2549913194444444, abs=1e-9)

    def test_sweep_with_mc(self, capsys):
        code, out = run_cli(capsys, [
            "sweep", "--model", "memoryless", "--format", "json", "--mc",
            "--b-list", "1", "--alpha-list", "0.5", "--snr-list", "0.25",
            "--samples", "20000", "--seed", "2"])
        assert code == 0
        doc = json.loads(out)
        row = doc["rows"][0]
        assert row["mi_estimate"] is not None
        assert row["mi_estimate"] == pytest.approx(0.125 * 0.25 ** 2, rel=0.5)


class TestNumericalConditions:
    def test_phi_exit_two_on_bad_density(self, capsys, tmp_path):
        grid, vals = jakes_like_table()
        path = write_density_table(tmp_path / "jakes.csv", grid, vals)
        code, out = run_cli(capsys, ["validate", "--model", "table", "--table", str(path)])
        assert code == 0
        assert json.loads(out)["condition12_verdict"] == "no"
        code, out = run_cli(capsys, ["phi", "--model", "table", "--table", str(path)])
        assert code == 2
        doc = json.loads(out)
        assert doc["error"] == "ConditionTwelveFails"

    def test_phi_series_diverges_exit_two(self, capsys):
        code, out = run_cli(capsys, ["phi", "--model", "line", "--mass", "1.0",
                                     "--method", "series"])
        assert code == 2
        assert json.loads(out)["error"] == "Diverges"

    def test_missing_table_is_io_error(self, capsys):
        assert run(["phi", "--model", "table", "--table", "/nonexistent/x.csv"]) == 3

    def test_unwritable_out_is_io_error(self, capsys):
        assert run(["capacity", "--model", "memoryless",
                    "--out", "/nonexistent-dir/report.json"]) == 3


class TestDeterminism:
    def test_byte_identical_runs(self, capsys):
        argv = ["mi", "--model", "ar1", "--a", "0.5", "--b", "2", "--alpha", "0.5",
                "--sigma2", "4.0", "--samples", "20000", "--seed", "11",
                "--format", "json"]
        _, out1 = run_cli(capsys, argv)
        _, out2 = run_cli(capsys, argv)
        assert out1 == out2

    def test_seed_echoed(self, capsys):
        code, out = run_cli(capsys, ["capacity", "--model", "memoryless", "--seed", "77"])
        assert json.loads(out)["config"]["seed"] == 77
