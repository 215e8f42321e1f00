"""Randomized verification suites and their summary/report contract."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import checks
from .checks import FOUR_OVER_PI, TOLERANCES
from .counterexample import auto_radii, counterexample_radial_scan, normalization_constant, PSI_SCALE
from .disk import hyperbolic_distance
from .extremal import extremal_at
from .generators import RandomFamilySpec, gen_random_map
from .harmonic import HarmonicMap, dilatation
from .reports import BoundReport, dumps, reports_to_csv, reports_to_json
from .sharpness import ExtremalFamily, GridSpec, sharpness_search
from .strip import verify_strip_inequality

SUITES = ("classical", "heinz", "gradient", "modulus", "contraction", "qc",
          "analytic_ball", "strip", "counterexample", "sharpness")
PAIRS_PER_TRIAL = 10
QC_GRID = GridSpec(256, 512, 1.0 - 1e-12)
QC_SAFETY = 1.05


@dataclass(frozen=True)
class RunConfig:
    suite: str = "all"
    seed: int = 42
    trials: int = 100
    grid: GridSpec = field(default_factory=GridSpec)
    tolerances: dict = field(default_factory=dict)
    output: Path | None = None
    format: str = "json"

    def __post_init__(self):
        if self.suite != "all" and self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.format not in ("json", "csv"):
            raise ValueError("format must be json or csv")
        unknown = set(self.tolerances) - set(TOLERANCES)
        if unknown:
            raise ValueError(f"unknown tolerance names {sorted(unknown)}")

    def tol(self, name: str) -> float:
        return float(self.tolerances.get(name, TOLERANCES[name]))

    @property
    def suites(self) -> tuple[str, ...]:
        return SUITES if self.suite == "all" else (self.suite,)


@dataclass
class TrialResult:
    """Per-trial outcome: the worst report per check plus every failure."""

    records: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)
    skipped: dict = field(default_factory=dict)
    worst: dict = field(default_factory=dict)

    def _bump(self, d, key, n):
        d[key] = d.get(key, 0) + n

    def add(self, report: BoundReport):
        """Record one single-point report."""
        self._bump(self.counts, report.check, 1)
        if not report.passed:
            self._bump(self.failures, report.check, 1)
        if report.check not in self.worst or report.ratio > self.worst[report.check].ratio:
            self.worst[report.check] = report

    def add_sweep(self, name, z, lhs, rhs, tol, atol=0.0, w=None):
        """Record a vectorized sweep: worst point and all failures become reports."""
        z = np.ravel(z)
        lhs, rhs = np.ravel(lhs), np.ravel(rhs)
        w = None if w is None else np.ravel(w)
        ok = ~np.isnan(lhs)
        self._bump(self.skipped, name, int(np.sum(~ok)))
        idx = np.flatnonzero(ok)
        if idx.size == 0:
            return
        self._bump(self.counts, name, int(idx.size))
        reps = lambda i: BoundReport(name, complex(z[i]), float(lhs[i]), float(rhs[i]), tol,
                                     w=None if w is None else complex(w[i]), atol=atol)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(rhs[idx] > 0, lhs[idx] / rhs[idx],
                             np.where(lhs[idx] == 0, 0.0, np.inf))
        worst = reps(idx[int(np.argmax(ratio))])
        if name not in self.worst or worst.ratio > self.worst[name].ratio:
            self.worst[name] = worst
        bad = idx[~(lhs[idx] <= rhs[idx] * (1 + tol) + atol)]
        self._bump(self.failures, name, int(bad.size))
        self.records.extend(reps(i) for i in bad)

    def finish(self) -> "TrialResult":
        failed = {(r.check, r.z, r.w) for r in self.records}
        self.records = [r for _, r in sorted(self.worst.items())
                        if (r.check, r.z, r.w) not in failed] + self.records
        return self


def _rng(config: RunConfig, suite: str, trial: int):
    return np.random.default_rng([config.seed, SUITES.index(suite), trial])


def _random_points(rng, n, rmax):
    return rmax * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


def _seed(config, suite, trial):
    return [config.seed, SUITES.index(suite), trial, 1]


def _degree(rng, cap):
    return int(rng.integers(1, cap + 1))


# -- per-suite trials ---------------------------------------------------------

def _trial_classical(cfg: RunConfig, i: int) -> TrialResult:
    rng = _rng(cfg, "classical", i)
    f = gen_random_map(RandomFamilySpec("analytic_poly", _degree(rng, 8), fix_origin=True),
                       _seed(cfg, "classical", i))
    res = TrialResult()
    zs = _random_points(rng, PAIRS_PER_TRIAL, cfg.grid.max_radius)
    ws = _random_points(rng, PAIRS_PER_TRIAL, cfg.grid.max_radius)
    for z, w in zip(zs, ws):
        for rep in checks.check_classical_schwarz(f, z, w, cfg.tol("inequality")):
            res.add(rep)
    return res


def _trial_heinz(cfg, i):
    rng = _rng(cfg, "heinz", i)
    f = gen_random_map(RandomFamilySpec("planar_complex", _degree(rng, 32), fix_origin=True),
                       _seed(cfg, "heinz", i))
    checks.require_into_ball(f)
    z = cfg.grid.points()
    res = TrialResult()
    res.add_sweep("heinz", z, *checks.heinz_sides(f, z), tol=0.0, atol=cfg.tol("heinz_atol"))
    return res


def _trial_gradient(cfg, i):
    rng = _rng(cfg, "gradient", i)
    f = gen_random_map(RandomFamilySpec("real_scalar", _degree(rng, 32)), _seed(cfg, "gradient", i))
    checks.require_into_ball(f)
    z = cfg.grid.points()
    res = TrialResult()
    res.add_sweep("gradient", z, *checks.gradient_sides(f, z), tol=cfg.tol("inequality"))
    return res


def _trial_modulus(cfg, i):
    rng = _rng(cfg, "modulus", i)
    f = gen_random_map(RandomFamilySpec("vector_n", _degree(rng, 32), n=3), _seed(cfg, "modulus", i))
    checks.require_into_ball(f)
    z = cfg.grid.points()
    res = TrialResult()
    res.add_sweep("modulus", z, *checks.modulus_sides(f, z, cfg.tol("modulus_eps")),
                  tol=cfg.tol("inequality"))
    return res


def _trial_contraction(cfg, i):
    rng = _rng(cfg, "contraction", i)
    f = gen_random_map(RandomFamilySpec("real_scalar", _degree(rng, 32)), _seed(cfg, "contraction", i))
    checks.require_into_ball(f)
    zs = _random_points(rng, PAIRS_PER_TRIAL, cfg.grid.max_radius)
    ws = _random_points(rng, PAIRS_PER_TRIAL, cfg.grid.max_radius)
    res = TrialResult()
    res.add_sweep("contraction", zs, *checks.contraction_sides(f, zs, ws),
                  tol=cfg.tol("inequality"), w=ws)
    return res


def measured_dilatation(f: HarmonicMap, grid: GridSpec = QC_GRID) -> float:
    """Grid sup of the pointwise dilatation times the safety factor."""
    return QC_SAFETY * float(np.max(dilatation(f, grid.points()).K))


def _trial_qc(cfg, i):
    rng = _rng(cfg, "qc", i)
    f = gen_random_map(RandomFamilySpec("qc_planar", _degree(rng, 8)), _seed(cfg, "qc", i))
    checks.require_into_ball(f)
    K = measured_dilatation(f)
    z = cfg.grid.points()
    res = TrialResult()
    res.add_sweep("qc", z, *checks.qc_sides(f, K, z), tol=cfg.tol("inequality"))
    return res


def _trial_analytic_ball(cfg, i):
    rng = _rng(cfg, "analytic_ball", i)
    fs = gen_random_map(RandomFamilySpec("analytic_vector", _degree(rng, 8), n=2),
                        _seed(cfg, "analytic_ball", i))
    z = cfg.grid.points()
    lhs, mod, rhs = checks.analytic_modulus_sides(fs, z)
    lhs = np.where(mod < cfg.tol("modulus_eps"), np.nan, lhs)
    res = TrialResult()
    res.add_sweep("analytic_ball", z, lhs, rhs, tol=cfg.tol("inequality"))
    return res


def _trial_strip(cfg, i):
    res = TrialResult()
    if i > 0:
        return res
    for r in np.logspace(-2, 2, 100):
        for t in np.linspace(-np.pi / 2, np.pi / 2, 102)[1:-1]:
            for rep in verify_strip_inequality(float(r), float(t), cfg.tol("identity")):
                res.add(rep)
                if not rep.passed:
                    res.records.append(rep)
    return res


def _trial_counterexample(cfg, i):
    res = TrialResult()
    if i > 0:
        return res
    a_num = normalization_constant()
    res.add(BoundReport("counterexample_normalization", 0j, a_num, PSI_SCALE, 1e-10, relation="eq"))
    probe = (0.9, 0.99, 0.999)
    radii = sorted(set(auto_radii(10)) | set(probe))
    rows = {row.r: row for row in counterexample_radial_scan(radii)}
    ks = range(4, 11)
    for k in ks[:-1]:
        lo, hi = rows[1 - 2.0 ** -k], rows[1 - 2.0 ** -(k + 1)]
        res.add(BoundReport("counterexample_growth", complex(hi.r), lo.bound_ratio, hi.bound_ratio,
                            0.0, relation="lt"))
    peak = max(row.bound_ratio for row in rows.values() if row.r <= 0.999)
    res.add(BoundReport("counterexample_exceeds", 0.999 + 0j, FOUR_OVER_PI, peak, 0.0,
                        relation="lt"))
    growth = [rows[r].growth for r in probe]
    res.add(BoundReport("counterexample_bounded", 0.999 + 0j, max(growth) / min(growth), 3.0, 0.0,
                        relation="lt"))
    for rep in res.worst.values():
        if not rep.passed:
            res.records.append(rep)
    return res


def _trial_sharpness(cfg, i):
    res = TrialResult()
    if i >= 20:
        return res
    rng = _rng(cfg, "sharpness", i)
    z0 = complex(_random_points(rng, 1, 0.9)[0])
    ext = extremal_at(z0)
    res.add(BoundReport("extremal_attained", z0, 1 - 1e-6, float(checks.gradient_ratio(ext, z0)), 0.0))
    res.add(checks.check_gradient_bound(ext, z0, cfg.tol("inequality")))
    found = sharpness_search(ExtremalFamily(), z0, budget=1000, seed=int(rng.integers(2 ** 31)))
    res.add(BoundReport("sharpness_upper", z0, found.best_ratio, 1.0, cfg.tol("inequality")))
    res.add(BoundReport("sharpness_attained", z0, 1 - 1e-4, found.best_ratio, 0.0))
    for rep in res.worst.values():
        if not rep.passed:
            res.records.append(rep)
    return res


RUNNERS: dict[str, Callable[[RunConfig, int], TrialResult]] = {
    "classical": _trial_classical,
    "heinz": _trial_heinz,
    "gradient": _trial_gradient,
    "modulus": _trial_modulus,
    "contraction": _trial_contraction,
    "qc": _trial_qc,
    "analytic_ball": _trial_analytic_ball,
    "strip": _trial_strip,
    "counterexample": _trial_counterexample,
    "sharpness": _trial_sharpness,
}

#: Check names each suite must produce at least once.
EXPECTED_CHECKS = {
    "classical": {"classical_contraction", "classical_derivative", "classical_origin"},
    "heinz": {"heinz"},
    "gradient": {"gradient"},
    "modulus": {"modulus"},
    "contraction": {"contraction"},
    "qc": {"qc"},
    "analytic_ball": {"analytic_ball"},
    "strip": {"strip_identity_modulus", "strip_identity_square", "strip_cosine"},
    "counterexample": {"counterexample_normalization", "counterexample_growth",
                       "counterexample_exceeds", "counterexample_bounded"},
    "sharpness": {"extremal_attained", "gradient", "sharpness_upper", "sharpness_attained"},
}


def thread_count() -> int:
    env = os.environ.get("HS_THREADS")
    n = int(env) if env else (os.cpu_count() or 1)
    return max(1, n)


@dataclass
class Summary:
    counts: dict
    failures: dict
    skipped: dict
    worst_ratio: dict
    records: list
    coverage_ok: bool

    @property
    def total_failures(self) -> int:
        return sum(self.failures.values())

    def as_dict(self) -> dict:
        return {
            "counts": dict(sorted(self.counts.items())),
            "failures": dict(sorted(self.failures.items())),
            "skipped": dict(sorted(self.skipped.items())),
            "worst_ratio": dict(sorted(self.worst_ratio.items())),
            "total_failures": self.total_failures,
            "coverage_ok": self.coverage_ok,
        }


def run_suite(config: RunConfig) -> Summary:
    """Run the selected suites, write the report file if requested, and summarize.

    Failures are collected, never raised; trial order (not thread timing)
    fixes the report order.
    """
    merged = TrialResult()
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        for name in config.suites:
            runner = RUNNERS[name]
            for tr in pool.map(lambda i: runner(config, i).finish(), range(config.trials)):
                merged.records.extend(tr.records)
                for d_name in ("counts", "failures", "skipped"):
                    for k, v in getattr(tr, d_name).items():
                        merged._bump(getattr(merged, d_name), k, v)
                for k, rep in tr.worst.items():
                    if k not in merged.worst or rep.ratio > merged.worst[k].ratio:
                        merged.worst[k] = rep
    expected = set().union(*(EXPECTED_CHECKS[s] for s in config.suites))
    summary = Summary(
        counts=merged.counts,
        failures={k: merged.failures.get(k, 0) for k in merged.counts},
        skipped={k: v for k, v in merged.skipped.items() if v},
        worst_ratio={k: r.ratio for k, r in merged.worst.items()},
        records=merged.records,
        coverage_ok=expected <= set(merged.counts),
    )
    if config.output is not None:
        write_reports(summary.records, config.output, config.format)
    return summary


def write_reports(records, path, fmt="json"):
    text = reports_to_json(records) if fmt == "json" else reports_to_csv(records)
    Path(path).write_text(text, encoding="utf-8")


def summary_text(summary: Summary) -> str:
    return dumps(summary.as_dict(), indent=1) + "\n"
