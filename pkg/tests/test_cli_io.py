import csv
import io
import json

import numpy as np
import pytest

from hschwarz.boundary_io import BoundaryFormatError, load_boundary, parse_boundary
from hschwarz.cli import main
from hschwarz.counterexample import counterexample_map
from hschwarz.harmonic import HarmonicMap
from hschwarz.reports import CSV_COLUMNS, BoundReport, dumps, reports_to_csv, reports_to_json
from hschwarz.suite import RunConfig, run_suite


def write(tmp_path, doc, name="b.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc), encoding="utf-8")
    return p


class TestBoundaryFiles:
    def test_fourier_scalar(self):
        b = parse_boundary({"target_dim": 1, "repr": "fourier", "coeffs": [[0.5, 0], [0, 0], [0.5, 0]]})
        assert HarmonicMap.from_boundary(b)(0.3) == pytest.approx(0.3)

    def test_fourier_vector(self):
        doc = {"target_dim": 2, "repr": "fourier",
               "coeffs": [[[0.5, 0], [0, 0], [0.5, 0]], [[0, 0.5], [0, 0], [0, -0.5]]]}
        f = HarmonicMap.from_boundary(parse_boundary(doc))
        assert np.allclose(f.evaluate(0.2 + 0.1j), [0.2, 0.1])

    def test_samples(self):
        t = 2 * np.pi * np.arange(256) / 256
        b = parse_boundary({"target_dim": 1, "repr": "samples", "samples": np.cos(t).tolist()})
        assert HarmonicMap.from_boundary(b)(0.4j) == pytest.approx(0.0, abs=1e-14)

    def test_complex_samples(self):
        t = 2 * np.pi * np.arange(256) / 256
        doc = {"target_dim": 2, "repr": "samples", "complex": True,
               "samples": [[float(np.cos(x)), float(np.sin(x))] for x in t]}
        f = HarmonicMap.from_boundary(parse_boundary(doc))
        assert f(0.3 + 0.2j) == pytest.approx(0.3 + 0.2j)

    def test_rules(self):
        b = parse_boundary({"target_dim": 2, "repr": "rule", "rule": {"name": "counterexample_psi"}})
        assert b.is_complex
        b = parse_boundary({"target_dim": 1, "repr": "rule",
                            "rule": {"name": "extremal_strip", "params": {"rotate": 0.0}}})
        assert HarmonicMap.from_boundary(b, 2048)(0.5j) == pytest.approx(0.5903344706, abs=1e-9)

    @pytest.mark.parametrize("doc", [
        {"repr": "fourier"},
        {"target_dim": 1, "repr": "wavelet"},
        {"target_dim": 1, "repr": "samples", "samples": [1.0, None]},
        {"target_dim": 1, "repr": "fourier", "coeffs": [[1, 0], [0, 0], [0.5, 0]]},
        {"target_dim": 2, "repr": "fourier", "coeffs": [[0, 0]]},
        {"target_dim": 1, "repr": "rule", "rule": {"name": "counterexample_psi"}},
    ])
    def test_rejects(self, doc):
        with pytest.raises(ValueError):
            parse_boundary(doc)

    def test_rejects_nan_text(self, tmp_path):
        p = tmp_path / "nan.json"
        p.write_text('{"target_dim": 1, "repr": "samples", "samples": [NaN, 1.0]}')
        with pytest.raises(BoundaryFormatError):
            load_boundary(p)


class TestSerialization:
    def test_json_schema(self):
        reps = [BoundReport("gradient", 0.1 + 0.2j, 0.5, 1.0, 1e-8),
                BoundReport("contraction", 0.1j, 0.3, 0.4, 1e-8, w=-0.2 + 0j)]
        data = json.loads(reports_to_json(reps))
        assert [d["check"] for d in data] == ["gradient", "contraction"]
        assert data[0]["re_w"] is None and data[1]["re_w"] == -0.2
        assert data[0]["pass"] is True and data[0]["ratio"] == 0.5

    def test_csv_schema(self):
        text = reports_to_csv([BoundReport("gradient", 0.1 + 0.2j, 0.5, 1.0, 1e-8)])
        rows = list(csv.reader(io.StringIO(text)))
        assert tuple(rows[0]) == CSV_COLUMNS
        assert rows[1][0] == "gradient" and rows[1][-1] == "true" and rows[1][3] == ""

    def test_seventeen_digits(self):
        assert dumps(0.1) == "0.10000000000000001"
        assert dumps({"b": [1, 2.5, None, True]}) == '{"b": [1, 2.5, null, true]}'


class TestSuites:
    def test_gradient_suite(self):
        s = run_suite(RunConfig("gradient", seed=42, trials=100))
        assert s.failures["gradient"] == 0
        assert s.worst_ratio["gradient"] <= 1 + 1e-8
        assert s.counts["gradient"] == 100 * 64 * 128

    def test_counterexample_suite(self):
        s = run_suite(RunConfig("counterexample", trials=1))
        assert s.total_failures == 0 and s.counts["counterexample_growth"] == 6

    def test_strip_suite(self):
        s = run_suite(RunConfig("strip", trials=1))
        assert s.counts["strip_identity_modulus"] + s.counts["strip_identity_square"] == 20_000
        assert s.total_failures == 0

    def test_forced_failures_are_collected(self):
        s = run_suite(RunConfig("gradient", trials=3, tolerances={"inequality": -0.9}))
        assert s.failures["gradient"] > 0
        assert len(s.records) >= s.failures["gradient"]
        assert all(not r.passed for r in s.records if r.ratio > 0.1)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            RunConfig("everything")
        with pytest.raises(ValueError):
            RunConfig(trials=0)
        with pytest.raises(ValueError):
            RunConfig(tolerances={"bogus": 1.0})

    def test_thread_independence(self, monkeypatch, tmp_path):
        outs = []
        for threads in ("1", "4"):
            monkeypatch.setenv("HS_THREADS", threads)
            p = tmp_path / f"r{threads}.json"
            run_suite(RunConfig("contraction", seed=7, trials=20, output=p))
            outs.append(p.read_bytes())
        assert outs[0] == outs[1]


class TestCli:
    def test_distance_disk(self, capsys):
        assert main(["distance", "--disk", "0,0,0.5,0"]) == 0
        out = capsys.readouterr().out
        assert "pseudo_hyperbolic=0.5" in out
        assert "hyperbolic=1.09861228866810" in out

    def test_distance_interval(self, capsys):
        assert main(["distance", "--interval", "-0.3,0.3"]) == 0
        assert "interval_hyperbolic=1.238078" in capsys.readouterr().out

    def test_distance_errors(self):
        assert main(["distance", "--disk", "1,0,0,0"]) == 2
        assert main(["distance", "--interval", "0.5"]) == 2
        assert main(["distance"]) == 2

    def test_extend_backends(self, tmp_path, capsys):
        p = write(tmp_path, {"target_dim": 1, "repr": "fourier", "coeffs": [[0.5, 0], [0, 0], [0.5, 0]]})
        assert main(["extend", "--boundary", str(p), "--at", "0.3,0.1"]) == 0
        assert capsys.readouterr().out.strip() == "f[0]=0.29999999999999999"
        assert main(["extend", "--boundary", str(p), "--at", "0.3,0.1", "--backend", "quadrature"]) == 0
        assert float(capsys.readouterr().out.split("=")[1]) == pytest.approx(0.3, abs=1e-12)

    def test_extend_counterexample(self, tmp_path, capsys):
        p = write(tmp_path, {"target_dim": 2, "repr": "rule", "rule": {"name": "counterexample_psi"}})
        assert main(["extend", "--boundary", str(p), "--at", "0.9,0"]) == 0
        re, im = (float(x) for x in capsys.readouterr().out.split("=")[1].split(","))
        ref = complex(counterexample_map(4096)(0.9))
        assert abs(complex(re, im) - ref) < 1e-15

    def test_extend_errors(self, tmp_path):
        assert main(["extend", "--boundary", str(tmp_path / "missing.json"), "--at", "0,0"]) == 2
        p = write(tmp_path, {"target_dim": 1, "repr": "fourier", "coeffs": [[1, 0]]})
        assert main(["extend", "--boundary", str(p), "--at", "1.5,0"]) == 2

    def test_counterexample(self, capsys, tmp_path):
        assert main(["counterexample", "--radii", "0.5,0.9"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].startswith("r,modulus,gradient,bound_ratio")
        assert len(lines) == 3
        out = tmp_path / "scan.csv"
        assert main(["counterexample", "--out", str(out)]) == 0
        assert len(out.read_text().splitlines()) == 11
        assert main(["counterexample", "--radii", "0.9,0.5"]) == 2

    def test_field(self, tmp_path, capsys):
        out = tmp_path / "field.csv"
        assert main(["field", "--check", "gradient", "--out", str(out), "--grid", "8,16,0.9"]) == 0
        assert "max_ratio=1" in capsys.readouterr().out
        assert main(["field", "--map", "constant:0.5", "--out", str(out)]) == 0
        assert "max_ratio=0" in capsys.readouterr().out
        assert main(["field", "--map", "nope", "--out", str(out)]) == 2

    def test_verify_exit_codes(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        assert main(["verify", "--suite", "classical", "--trials", "5", "--out", str(out),
                     "--format", "csv"]) == 0
        assert out.read_text().startswith(",".join(CSV_COLUMNS))
        assert main(["verify", "--suite", "gradient", "--trials", "2", "--tol", "inequality=-0.9"]) == 1
        assert main(["verify", "--tol", "nonsense=1"]) == 2
        assert main(["verify", "--grid", "4,4"]) == 2
        assert main(["verify", "--suite", "strip", "--out", str(tmp_path / "no" / "dir.json")]) == 2
        capsys.readouterr()
