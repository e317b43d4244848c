"""CLI and sweep harness: end-to-end flows, exit codes, deterministic
emission, and row re-verification."""

import json
import subprocess
import sys

import pytest

from collabsignal.cli import main
from collabsignal.graphs import WeightedGraph, gen_double_star
from collabsignal.schemes import SignalingScheme, is_persuasive, slack_report_exact
from collabsignal.sweep import (
    CSV_HEADER,
    emit_report,
    fit_loglog,
    render_figure,
    result_to_csv,
    run_sweep,
)


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def ds3_path(tmp_path, capsys):
    p = tmp_path / "ds3.json"
    code, out, _ = run_cli(["gen", "double-star", "--k", "3", "--out", str(p)], capsys)
    assert code == 0
    return str(p)


class TestCliFlows:
    def test_gen_bench_construct_verify_chain(self, tmp_path, ds3_path, capsys):
        code, out, _ = run_cli(["bench", ds3_path, "--mode", "rational"], capsys)
        assert code == 0
        bench = json.loads(out)
        assert bench["opt"] == "2" and bench["opt_stable"] == "4" and bench["pos"] == "2"

        code, out, _ = run_cli(
            ["construct", ds3_path, "--scheme", "match-stable", "--mode", "rational"],
            capsys,
        )
        assert code == 0
        built = json.loads(out)
        assert built["persuasive"] is True
        scheme_path = tmp_path / "scheme.json"
        scheme_path.write_text(json.dumps(built["scheme"]))

        code, out, _ = run_cli(
            ["verify", ds3_path, str(scheme_path), "--mode", "rational"], capsys
        )
        assert code == 0
        report = json.loads(out)
        assert report["persuasive"] is True and report["cost"] == "4"

    def test_verify_monte_carlo_path(self, tmp_path, ds3_path, capsys):
        code, out, _ = run_cli(
            ["construct", ds3_path, "--scheme", "noinfo"], capsys
        )
        scheme_path = tmp_path / "s.json"
        scheme_path.write_text(json.dumps(json.loads(out)["scheme"]))
        code, out, _ = run_cli(
            ["verify", ds3_path, str(scheme_path), "--mc", "5000", "--seed", "1"],
            capsys,
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["method"] == "monte_carlo" and rep["samples"] == 5000

    def test_verify_rejects_non_persuasive_with_code4(self, tmp_path, ds3_path, capsys):
        bad = {
            "space": [0.0, 0.75],
            "components": [
                {"weight": 1.0, "kind": "explicit_subset", "set": [0, 1],
                 "on_value": 0.75, "off_value": 0.0}
            ],
        }
        p = tmp_path / "bad.json"
        p.write_text(json.dumps(bad))
        code, out, _ = run_cli(["verify", ds3_path, str(p)], capsys)
        assert code == 4

    def test_construct_improve_rejected_is_input_error(self, tmp_path, capsys):
        g = gen_double_star(1)  # path4: OPT == OPT^stable == 2
        p = tmp_path / "p4.json"
        p.write_text(g.to_json("rational"))
        code, out, _ = run_cli(
            ["construct", str(p), "--scheme", "improve-unit"], capsys
        )
        assert code == 2
        assert "no-improvement-possible" in out

    def test_bad_graph_json_is_input_error(self, tmp_path, capsys):
        p = tmp_path / "junk.json"
        p.write_text("{not json")
        code, _, err = run_cli(["bench", str(p)], capsys)
        assert code == 2

    def test_capacity_exit_code(self, tmp_path, capsys):
        g = gen_double_star(10)  # n = 22 > stable cap
        p = tmp_path / "big.json"
        p.write_text(g.to_json("rational"))
        code, _, err = run_cli(["bench", str(p)], capsys)
        assert code == 3
        code, _, _ = run_cli(["bench", str(p), "--skip-stable"], capsys)
        assert code == 0

    def test_lowerbound_explicit_certificate(self, tmp_path, ds3_path, capsys):
        f_path = tmp_path / "f.json"
        f_path.write_text(json.dumps({"0": "1/3", "0.5": "1/3", "0.75": "-2/3", "1": "-2/3"}))
        code, out, _ = run_cli(
            ["lowerbound", ds3_path, "--grid", "0,0.5,0.75,1", "--f", str(f_path), "--C", "1.5"],
            capsys,
        )
        assert code == 0
        assert json.loads(out)["certified"] is True

    def test_lowerbound_violation_exit_code(self, tmp_path, ds3_path, capsys):
        f_path = tmp_path / "f.json"
        f_path.write_text(json.dumps({"0": "0", "0.5": "0", "1": "0"}))
        code, out, _ = run_cli(
            ["lowerbound", ds3_path, "--grid", "0,0.5,1", "--f", str(f_path), "--C", "1"],
            capsys,
        )
        assert code == 4
        assert json.loads(out)["certified"] is False

    def test_gen_component_mix_inline(self, capsys):
        spec = json.dumps([{"kind": "path", "n": 3}, {"kind": "edge", "w": "1/2"}])
        code, out, _ = run_cli(
            ["gen", "component-mix", "--spec", spec, "--mode", "rational"], capsys
        )
        assert code == 0
        g = WeightedGraph.from_json(out)
        assert g.n == 5

    def test_sweep_requires_seed(self, capsys):
        code, _, err = run_cli(
            ["sweep", "--family", "double-star", "--sizes", "2,3", "--scheme", "noinfo"],
            capsys,
        )
        assert code == 2


class TestSweep:
    def test_rows_and_fit(self):
        result = run_sweep("double-star", [3, 5, 6], "match-stable", seed=0)
        assert [r["k"] for r in result.rows] == [3, 5, 6]
        for r in result.rows:
            assert r["persuasive"] is True
            assert r["cost"] == r["opt_stable"]  # match-stable is exact
        # OPT^stable = k + 1 ~ n/2: exponent close to 1
        assert 0.8 < result.exponent < 1.1

    def test_capacity_rows_marked_absent(self):
        result = run_sweep("double-star", [4, 10], "noinfo", seed=0)
        assert result.rows[0]["opt_stable"] is not None
        assert result.rows[1]["opt_stable"] is None  # n = 22 over the cap

    def test_emission_deterministic_and_header(self, tmp_path):
        result = run_sweep("double-star", [2, 3, 4], "noinfo", seed=5)
        csv_text = result_to_csv(result)
        assert csv_text.splitlines()[0] == ",".join(CSV_HEADER)
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_report(result, str(p1), "csv")
        emit_report(result, str(p2), "csv")
        assert p1.read_bytes() == p2.read_bytes()
        j1, j2 = tmp_path / "a.json", tmp_path / "b.json"
        emit_report(result, str(j1), "json")
        emit_report(result, str(j2), "json")
        assert j1.read_bytes() == j2.read_bytes()
        roundtrip = json.loads(j1.read_text())
        assert len(roundtrip["rows"]) == 3

    def test_rows_reverify_from_scheme_json(self):
        result = run_sweep("triangle-centers", [2, 3], "ternary", seed=1)
        for row in result.rows:
            g = __import__("collabsignal.graphs", fromlist=["FAMILIES"]).FAMILIES[
                row["family"]
            ](row["k"])
            scheme = SignalingScheme.from_json_obj(row["scheme_json"])
            rep = slack_report_exact(g, scheme)
            assert is_persuasive(rep, 0)
            assert rep.cost == row["cost"]

    def test_figure_rendered(self, tmp_path):
        result = run_sweep("double-star", [2, 4, 6], "noinfo", seed=2)
        out = tmp_path / "fig.png"
        render_figure(result, str(out))
        data = out.read_bytes()
        assert data[:8] == b"\x89PNG\r\n\x1a\n" and len(data) > 1000

    def test_fit_loglog_recovers_slope(self):
        xs = [10, 20, 40, 80]
        ys = [3.0 * x**0.5 for x in xs]
        slope, stderr = fit_loglog(xs, ys)
        assert abs(slope - 0.5) < 1e-12 and stderr < 1e-12

    def test_ternary_minw_sweep_stays_under_two_thirds_curve(self):
        result = run_sweep("triangle-centers", [8, 16, 32], "ternary-minw", seed=3)
        for row in result.rows:
            assert row["persuasive"] is True
            # Cost against the (n OPT^IR)^{2/3} delta^{-1/3} rate at delta=1/2
            curve = (float(row["n"]) * float(row["opt_ir"])) ** (2 / 3) * 2 ** (1 / 3)
            assert float(row["cost"]) <= curve
        assert result.exponent_ratio < 0.8


class TestConsoleScript:
    def test_module_entry_point(self, tmp_path):
        g = gen_double_star(2)
        p = tmp_path / "g.json"
        p.write_text(g.to_json("rational"))
        proc = subprocess.run(
            [sys.executable, "-m", "collabsignal.cli", "bench", str(p), "--mode", "rational"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["opt"] == "2"
