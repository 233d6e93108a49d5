import csv
import io
import json
import subprocess
import sys

import pytest

from nbuetest.cli import main
from nbuetest.report import TestReport, run_test
from nbuetest.samples import make_sample
from nbuetest.statistic import HP1975, generalized

from oracles import write_ttt_percentile_csv


@pytest.fixture
def two_points(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("1\n3\n")
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestStat:
    def test_raw_value(self, capsys, two_points):
        code, out, _ = run(capsys, "stat", two_points, "--j", "1", "--format", "json")
        rep = json.loads(out)
        assert code == 0
        assert rep["raw"] == 0.25
        assert rep["scaled"] is None

    def test_upper_p_value(self, capsys, two_points):
        _, out, _ = run(capsys, "stat", two_points, "--format", "json")
        rep = json.loads(out)
        assert rep["p_upper"] == pytest.approx(0.5, abs=1e-12)
        assert rep["p_lower"] + rep["p_upper"] == pytest.approx(1.0, abs=1e-9)
        assert rep["method"] == "exact" and rep["decision"] == "do not reject"

    def test_singleton_is_data_error(self, capsys, tmp_path):
        p = tmp_path / "one.txt"
        p.write_text("5\n")
        code, _, err = run(capsys, "stat", str(p))
        assert code == 2
        assert "n >= 2" in err

    def test_parse_error_names_line(self, capsys, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("1\n2\nfoo\n")
        code, _, err = run(capsys, "stat", str(p))
        assert code == 2 and "line 3" in err

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("# header\n1, 3\n"))
        code, out, _ = run(capsys, "stat", "-", "--format", "json")
        assert code == 0 and json.loads(out)["raw"] == 0.25

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "stat", str(tmp_path / "nope.txt"))
        assert code == 2

    def test_scaled_and_text(self, capsys, two_points):
        code, out, _ = run(capsys, "stat", two_points, "--scale", "paper")
        assert code == 0
        assert "scaled" in out and "1.22474" in out

    def test_hp_with_quarter_scale_is_usage_error(self, capsys, two_points):
        code, _, _ = run(capsys, "stat", two_points, "--variant", "hp1975",
                         "--scale", "paper_j_quarter")
        assert code == 1

    def test_monte_carlo_route(self, capsys, tmp_path):
        p = tmp_path / "big.txt"
        p.write_text("\n".join(str(i % 7 + 1) for i in range(30)))
        _, out, _ = run(capsys, "stat", str(p), "--exact-max-n", "10", "--reps", "5000",
                        "--seed", "3", "--format", "json")
        rep = json.loads(out)
        assert rep["method"] == "monte-carlo(N=5000, seed=3)"

    @pytest.mark.parametrize("fmt", ["csv", "md", "text"])
    def test_other_formats(self, capsys, two_points, fmt):
        code, out, _ = run(capsys, "stat", two_points, "--format", fmt)
        assert code == 0 and "0.25" in out
        if fmt == "csv":
            rows = list(csv.reader(io.StringIO(out)))
            assert rows[0][0] == "n" and rows[1][0] == "2"


class TestReportJson:
    def test_round_trip(self):
        s = make_sample([0.3, 1.9, 0.2, 4.4, 0.7, 2.0])
        for v in (generalized(0.25), generalized(1.0), HP1975):
            rep = run_test(s, v, sided="two-sided", scale_name="paper_j_one" if v.j == 1 else "none")
            text = rep.rounded(6).to_json()
            assert TestReport.from_json(text).to_json() == text

    def test_cli_output_round_trips(self, capsys, two_points):
        _, out, _ = run(capsys, "stat", two_points, "--format", "json", "--scale", "paper")
        assert TestReport.from_json(out).to_json() + "\n" == out

    def test_tails_sum_to_one(self):
        s = make_sample([0.5, 0.1, 3.0, 2.2, 0.9, 1.1, 0.05])
        rep = run_test(s, generalized(0.25))
        assert rep.p_lower + rep.p_upper == pytest.approx(1.0, abs=1e-9)

    def test_decisions(self):
        # nearly constant data look strongly NBUE
        s = make_sample([1.0, 1.01, 0.99, 1.02, 0.98, 1.0, 1.0, 1.03])
        assert run_test(s, generalized(1.0), sided="upper").decision == "reject"
        assert run_test(s, generalized(1.0), sided="lower").decision == "do not reject"


class TestDistributionCommands:
    def test_cdf(self, capsys):
        code, out, _ = run(capsys, "cdf", "--n", "2", "--j", "1", "--x", "0.25")
        assert code == 0 and float(out) == 0.5

    def test_cdf_scaled_json(self, capsys):
        _, out, _ = run(capsys, "cdf", "--n", "2", "--x", "1.2247448713915890",
                        "--scale", "paper", "--format", "json")
        assert json.loads(out)["p"] == pytest.approx(0.5, abs=1e-12)

    def test_quantile_scaled(self, capsys):
        code, out, _ = run(capsys, "quantile", "--n", "2", "--j", "0.25", "--p", "0.9",
                           "--scale", "paper")
        assert code == 0 and abs(float(out) - 1.5944) <= 2e-3

    @pytest.mark.parametrize("p", ["1.0", "0", "-0.5"])
    def test_quantile_domain(self, capsys, p):
        code, _, err = run(capsys, "quantile", "--n", "5", "--p", p)
        assert code == 1 and "p must lie in (0,1)" in err

    def test_precision_flag(self, capsys):
        _, out, _ = run(capsys, "quantile", "--n", "2", "--p", "0.05", "--precision", "12")
        assert float(out) == pytest.approx(0.025, abs=1e-12)
        _, out, _ = run(capsys, "quantile", "--n", "3", "--p", "0.05", "--precision", "12")
        assert len(out.strip().lstrip("-").replace(".", "").lstrip("0")) == 12

    def test_named_scale_unknown_for_other_j(self, capsys):
        code, _, _ = run(capsys, "quantile", "--n", "4", "--j", "0.5", "--p", "0.5",
                         "--scale", "paper")
        assert code == 1

    @pytest.mark.parametrize("argv", [["cdf", "--n", "3"], ["bogus"], ["stat"]])
    def test_usage_error_exit_code(self, argv):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 1


class TestTableCommands:
    def test_table_csv(self, capsys):
        code, out, _ = run(capsys, "table", "--j", "1", "--n", "2:4", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert code == 0
        assert rows[0] == ["n", "0.01", "0.05", "0.1", "0.9", "0.95", "0.99"]
        assert abs(float(rows[1][1]) - 0.0245) <= 2e-3

    def test_table_json_has_provenance(self, capsys):
        _, out, _ = run(capsys, "table", "--j", "0.25", "--n", "3,70", "--reps", "2000",
                        "--seed", "4", "--format", "json")
        d = json.loads(out)
        assert d["rows"][1]["cells"][0]["provenance"] == "simulated(N=2000, seed=4)"

    @pytest.mark.slow
    def test_size_sim(self, capsys):
        code, out, _ = run(capsys, "size-sim", "--n", "5", "--reps", "100000", "--seed", "42",
                           "--format", "csv")
        assert code == 0
        pct = float(out.splitlines()[1].split(",")[1])
        assert abs(pct - 4.99) <= 0.3

    def test_size_sim_requires_csv(self, capsys):
        code, _, err = run(capsys, "size-sim", "--n", "3", "--reps", "100", "--with-barlow")
        assert code == 4 and "CSV" in err

    def test_size_sim_with_csv(self, capsys, tmp_path):
        p = tmp_path / "ttt.csv"
        write_ttt_percentile_csv(p, [2], [0.95])
        code, out, _ = run(capsys, "size-sim", "--n", "2", "--reps", "20000",
                           "--barlow-csv", str(p), "--format", "json")
        row = json.loads(out)["rows"][0]
        assert code == 0
        assert abs(row["gamma1_external"]["empirical_size_percent"] - 55.0) <= 1.5

    def test_bad_csv_is_data_error(self, capsys, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("n,alpha\n")
        assert run(capsys, "size-sim", "--n", "2", "--barlow-csv", str(p))[0] == 2

    def test_ttt(self, capsys, two_points):
        code, out, _ = run(capsys, "ttt", two_points)
        assert code == 0 and float(out) == 0.5


def test_module_entry_point(two_points):
    res = subprocess.run([sys.executable, "-m", "nbuetest", "ttt", two_points],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "0.5"
