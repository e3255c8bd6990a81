"""Command-line interface: outputs, exit codes, provenance, the sweep runner."""

import json
import math

import numpy as np
import pytest

from hyplevy.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def json_objects(text):
    """All JSON documents concatenated in a text stream, in order."""
    decoder = json.JSONDecoder()
    out, idx = [], 0
    while idx < len(text):
        if text[idx].isspace():
            idx += 1
            continue
        obj, end = decoder.raw_decode(text, idx)
        out.append(obj)
        idx = end
    return out


def read_csv(path):
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# provenance: ")
    prov = json.loads(lines[0][len("# provenance: "):])
    header = lines[1].split(",")
    rows = [line.split(",") for line in lines[2:]]
    return prov, header, rows


@pytest.fixture(autouse=True)
def outdir(tmp_path, monkeypatch):
    monkeypatch.setenv("HYPLEVY_OUTDIR", str(tmp_path))
    return tmp_path


class TestVariance:
    def test_reports_the_exact_value(self, capsys):
        code, out, _ = run(capsys, "variance", "4", "3")
        assert code == 0
        payload = json.loads(out)
        assert payload["d"] == 4 and payload["k"] == 3
        assert payload["r"] == 1 and payload["codim"] == 1
        assert payload["alpha"] == 1.5
        assert math.isclose(payload["variance"], math.pi, rel_tol=1e-12)
        assert math.isclose(payload["log_variance"], math.log(math.pi), rel_tol=1e-12)

    def test_inadmissible_pair_exits_2(self, capsys):
        code, _, err = run(capsys, "variance", "4", "2")
        assert code == 2
        assert err.startswith("hyplevy: error:")


class TestCumulants:
    def test_limit_family(self, capsys):
        code, out, _ = run(capsys, "cumulants", "--family", "limit", "--b", "2",
                           "--max-order", "4")
        assert code == 0
        payload = json.loads(out)
        assert payload["family"] == "limit" and payload["b"] == 2
        vals = payload["cumulants"]
        assert vals["2"] == 1.0
        assert vals["3"] == 0.5
        assert math.isclose(vals["4"], 1.0 / 3.0, rel_tol=1e-15)

    def test_rescaled_family_divides_by_the_variance(self, capsys):
        code, out, _ = run(capsys, "cumulants", "--family", "rescaled", "--d", "4",
                           "--k", "3", "--max-order", "3")
        assert code == 0
        vals = json.loads(out)["cumulants"]
        assert math.isclose(vals["2"], 1.0, rel_tol=1e-12)
        assert math.isclose(vals["3"], 0.5, rel_tol=1e-12)

    def test_order_validation(self, capsys):
        code, _, err = run(capsys, "cumulants", "--family", "limit", "--b", "2",
                           "--max-order", "1")
        assert code == 2 and "max-order" in err

    def test_missing_pair_arguments(self, capsys):
        code, _, err = run(capsys, "cumulants", "--family", "rescaled")
        assert code == 2 and "requires --d and --k" in err


class TestDensity:
    def test_writes_grid_and_sidecar(self, capsys, outdir):
        code, out, _ = run(capsys, "density", "--family", "rescaled", "--d", "4",
                           "--k", "3", "--half-width", "8", "--n-points", "512",
                           "--out", "d.csv")
        assert code == 0
        assert "wrote" in out and "512 rows" in out
        prov, header, rows = read_csv(outdir / "d.csv")
        assert header == ["x", "value"]
        assert len(rows) == 512
        assert prov["argv"][0] == "density"
        xs = np.array([float(r[0]) for r in rows])
        vals = np.array([float(r[1]) for r in rows])
        assert np.all(np.diff(xs) > 0.0)
        assert np.all(vals >= 0.0)
        assert abs(float(np.sum(vals)) * (xs[1] - xs[0]) - 1.0) < 1e-3
        meta = json.loads((outdir / "d.csv.meta.json").read_text())
        assert meta["family"] == "rescaled" and meta["d"] == 4 and meta["k"] == 3
        assert abs(meta["variance"] - 1.0) < 1e-3

    def test_floats_round_trip_through_the_file(self, capsys, outdir):
        run(capsys, "density", "--family", "limit", "--b", "2", "--half-width", "8",
            "--n-points", "512", "--out", "lim.csv")
        _, _, rows = read_csv(outdir / "lim.csv")
        for _, text in rows[::37]:
            assert "%.17g" % float(text) == text

    def test_undetectable_decay_exits_3(self, capsys):
        code, _, err = run(capsys, "density", "--family", "limit", "--b", "2",
                           "--half-width", "1e6", "--n-points", "256",
                           "--out", "never.csv")
        assert code == 3
        assert "hyplevy: error:" in err


class TestProbeAndClassify:
    def test_probe_table(self, capsys, outdir):
        code, out, _ = run(capsys, "probe", "--sequence", "power-law", "--gamma", "1",
                           "--beta", "0.7", "--n", "1,2,3", "--eps", "0.1,0.5",
                           "--out", "probe.csv")
        assert code == 0
        assert "verdict degenerate" in out
        _, header, rows = read_csv(outdir / "probe.csv")
        assert header == ["n", "d", "k", "r", "sigma", "threshold_stat", "epsilon",
                          "tail_second_moment"]
        assert len(rows) == 6
        assert [r[0] for r in rows] == ["1", "1", "2", "2", "3", "3"]
        meta = json.loads((outdir / "probe.csv.meta.json").read_text())
        assert meta["label"] == "degenerate"
        assert set(meta) == {"label", "threshold_limit", "rationale"}

    def test_probe_inadmissible_index_exits_2(self, capsys):
        code, _, err = run(capsys, "probe", "--sequence", "fixed-codim", "--b", "2",
                           "--n", "1", "--eps", "0.1", "--out", "x.csv")
        assert code == 2 and "n=1" in err

    def test_classify_power_law(self, capsys):
        code, out, _ = run(capsys, "classify", "--sequence", "power-law",
                           "--gamma", "1", "--beta", "0.3")
        assert code == 0
        payload = json.loads(out)
        assert payload["label"] == "gaussian"
        assert payload["threshold_limit"] == 0.0

    def test_classify_explicit_list(self, capsys):
        code, out, _ = run(capsys, "classify", "--sequence", "explicit",
                           "--pairs", "12:10,14:12,16:14")
        assert code == 0
        assert json.loads(out)["label"] == "degenerate"

    def test_bad_pair_text_exits_2(self, capsys):
        code, _, err = run(capsys, "classify", "--sequence", "explicit",
                           "--pairs", "12:x")
        assert code == 2 and "bad pair" in err


class TestSample:
    def test_writes_values_and_diagnostics(self, capsys, outdir):
        code, out, _ = run(capsys, "sample", "--family", "limit", "--b", "2",
                           "--n", "64", "--seed", "3", "--delta", "0.01",
                           "--out", "s.csv")
        assert code == 0 and "64 rows" in out
        prov, header, rows = read_csv(outdir / "s.csv")
        assert header == ["value"]
        assert len(rows) == 64
        assert prov["seed"] == 3
        meta = json.loads((outdir / "s.csv.meta.json").read_text())
        assert meta["family"] == "limit" and meta["b"] == 2
        assert meta["n"] == 64 and meta["seed"] == 3 and meta["cutoff_delta"] == 0.01
        assert meta["table_cert_error"] <= 1e-10
        assert set(meta["empirical_cumulants"]) == {"1", "2", "3", "4"}
        assert math.isclose(meta["jump_rate"], 99.0, rel_tol=1e-10)

    def test_tiny_run_skips_empirical_cumulants(self, capsys, outdir):
        run(capsys, "sample", "--family", "limit", "--b", "2", "--n", "6",
            "--seed", "0", "--delta", "0.01", "--out", "tiny.csv")
        meta = json.loads((outdir / "tiny.csv.meta.json").read_text())
        assert meta["empirical_cumulants"] == {}

    def test_rerun_is_identical_apart_from_the_timestamp(self, capsys, outdir):
        args = ("sample", "--family", "limit", "--b", "2", "--n", "64", "--seed", "3",
                "--delta", "0.01")
        run(capsys, *args, "--out", "a.csv")
        run(capsys, *args, "--out", "b.csv")
        a = (outdir / "a.csv").read_text().splitlines()
        b = (outdir / "b.csv").read_text().splitlines()
        assert a[1:] == b[1:]
        prov_a = json.loads(a[0][len("# provenance: "):])
        prov_b = json.loads(b[0][len("# provenance: "):])
        prov_a.pop("timestamp"), prov_b.pop("timestamp")
        prov_a["argv"][-1] = prov_b["argv"][-1] = "out"
        assert prov_a == prov_b


class TestSweep:
    def write_manifest(self, outdir, runs, name="m.json"):
        path = outdir / name
        path.write_text(json.dumps({"runs": [{"argv": r} for r in runs]}))
        return path

    def test_partial_failure_exits_1(self, capsys, outdir):
        path = self.write_manifest(outdir, [["variance", "4", "3"], ["variance", "4", "2"]])
        code, out, _ = run(capsys, "sweep", str(path))
        assert code == 1
        report = json_objects(out)[-1]
        assert [r["status"] for r in report["runs"]] == ["ok", "error"]
        assert report["runs"][1]["exit_code"] == 2
        assert "error" in report["runs"][1]

    def test_all_green_exits_0(self, capsys, outdir):
        path = self.write_manifest(outdir, [["variance", "4", "3"], ["variance", "7", "5"]])
        code, out, _ = run(capsys, "sweep", str(path), "--parallel", "2")
        assert code == 0
        report = json_objects(out)[-1]
        assert all(r["status"] == "ok" for r in report["runs"])

    def test_empty_manifest_exits_0(self, capsys, outdir):
        path = self.write_manifest(outdir, [])
        code, out, _ = run(capsys, "sweep", str(path))
        assert code == 0
        assert json_objects(out)[-1] == {"runs": []}

    def test_nested_sweep_is_flagged(self, capsys, outdir):
        inner = self.write_manifest(outdir, [], name="inner.json")
        path = self.write_manifest(outdir, [["sweep", str(inner)]])
        code, out, _ = run(capsys, "sweep", str(path))
        assert code == 1
        report = json_objects(out)[-1]
        assert report["runs"][0]["error"] == "nested sweep is not allowed"
        assert report["runs"][0]["exit_code"] == 2

    def test_malformed_manifest_exits_2(self, capsys, outdir):
        path = outdir / "bad.json"
        path.write_text('{"runs": "nope"}')
        code, _, err = run(capsys, "sweep", str(path))
        assert code == 2 and "manifest" in err

    def test_missing_manifest_exits_2(self, capsys, outdir):
        code, _, err = run(capsys, "sweep", str(outdir / "absent.json"))
        assert code == 2 and "cannot read" in err


class TestSpecfun:
    def test_log_gamma(self, capsys):
        code, out, _ = run(capsys, "specfun", "--op", "log-gamma", "6")
        assert code == 0
        payload = json.loads(out)
        assert math.isclose(payload["value"], math.log(120.0), rel_tol=1e-14)
        assert payload["op"] == "log-gamma" and payload["args"] == [6.0]

    def test_beta_stats(self, capsys):
        code, out, _ = run(capsys, "specfun", "--op", "beta-stats", "2", "3")
        payload = json.loads(out)
        assert code == 0 and payload["mean"] == 0.4

    def test_reg_inc_beta_midpoint(self, capsys):
        code, out, _ = run(capsys, "specfun", "--op", "reg-inc-beta", "0.5", "0.5", "0.5")
        assert code == 0
        assert abs(json.loads(out)["value"] - 0.5) <= 1e-12

    def test_chebyshev_reports_the_side(self, capsys):
        code, out, _ = run(capsys, "specfun", "--op", "chebyshev-tail", "2", "3", "0.8")
        payload = json.loads(out)
        assert code == 0 and payload["side"] == "above" and payload["bound"] == 0.5

    def test_wrong_arity_exits_2(self, capsys):
        code, _, err = run(capsys, "specfun", "--op", "log-gamma", "1", "2")
        assert code == 2 and "takes 1" in err

    def test_non_integer_taylor_order_exits_2(self, capsys):
        code, _, err = run(capsys, "specfun", "--op", "taylor-bound", "2.5", "1.0")
        assert code == 2 and "integer" in err


class TestTopLevel:
    def test_version_flag(self, capsys):
        code, out, _ = run(capsys, "--version")
        assert code == 0 and out.startswith("hyplevy ")

    def test_no_command_exits_2(self, capsys):
        code, _, err = run(capsys)
        assert code == 2 and "hyplevy: error:" in err

    def test_relative_outputs_resolve_against_the_outdir(self, capsys, outdir):
        run(capsys, "probe", "--sequence", "fixed-codim", "--b", "2", "--n", "4",
            "--eps", "0.1", "--out", "nested/dir/p.csv")
        assert (outdir / "nested" / "dir" / "p.csv").exists()
