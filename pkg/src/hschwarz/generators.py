"""Seeded random test functions satisfying the hypotheses of each bound."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .checks import analytic_vector_sup
from .harmonic import HarmonicMap, PowerSeries

KINDS = ("real_scalar", "vector_n", "planar_complex", "qc_planar", "analytic_poly", "analytic_vector")


@dataclass(frozen=True)
class RandomFamilySpec:
    """What to generate.

    ``margin`` is the target boundary sup of ``|f|``; ``fix_origin`` forces
    ``f(0) = 0``.
    """

    kind: str = "real_scalar"
    degree: int = 8
    n: int = 1
    margin: float = 0.95
    fix_origin: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if not 0 <= self.degree <= 64:
            raise ValueError("degree must be in [0, 64]")
        if not 0 < self.margin < 1:
            raise ValueError("margin must be in (0, 1)")
        if self.n < 1:
            raise ValueError("n must be >= 1")


def _cnormal(rng, size):
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def _real_row(rng, degree, fix_origin):
    k = np.arange(1, degree + 1)
    pos = _cnormal(rng, degree) / k
    c0 = 0.0 if fix_origin else 0.5 * rng.standard_normal()
    return np.concatenate([np.conj(pos[::-1]), [c0], pos])


def _rescale(f: HarmonicMap, margin: float) -> HarmonicMap:
    sup = f.sup_estimate
    return f if sup == 0 else f.scaled(margin / sup)


def gen_random_map(spec: RandomFamilySpec, seed):
    """Draw one function for ``spec``; deterministic in ``(spec, seed)``.

    Returns a :class:`HarmonicMap` for harmonic kinds, a :class:`PowerSeries`
    for ``analytic_poly`` and a tuple of them for ``analytic_vector``.
    """
    rng = np.random.default_rng(seed)
    d, margin = spec.degree, spec.margin
    if spec.kind == "real_scalar" and d == 0:
        c0 = 0.0 if spec.fix_origin else rng.uniform(-margin, margin)
        out = HarmonicMap([[c0]])
    elif spec.kind in ("real_scalar", "vector_n"):
        rows = 1 if spec.kind == "real_scalar" else spec.n
        out = _rescale(HarmonicMap(np.stack([_real_row(rng, d, spec.fix_origin) for _ in range(rows)])),
                       margin)
    elif spec.kind == "planar_complex":
        c = _cnormal(rng, 2 * d + 1) / (1 + np.abs(np.arange(-d, d + 1)))
        if spec.fix_origin:
            c[d] = 0
        out = _rescale(HarmonicMap(c[None, :], is_complex=True), margin)
    elif spec.kind == "qc_planar":
        out = _rescale(_qc_planar(rng, max(d, 1)), margin)
    elif spec.kind == "analytic_poly":
        out = _scale_analytic([_analytic(rng, d, spec.fix_origin)], margin)[0]
    else:
        out = tuple(_scale_analytic([_analytic(rng, d, spec.fix_origin) for _ in range(spec.n)],
                                    margin))
    _verify(out, margin)
    return out


def _qc_planar(rng, degree) -> HarmonicMap:
    """``z + small analytic + conj(small analytic)``, orientation preserving.

    Perturbation derivatives are bounded by 0.3 on the closed disk, so
    ``|f_z| >= 0.7 > 0.3 >= |f_zbar|`` everywhere.
    """
    k = np.arange(1, degree + 1)
    a = _cnormal(rng, degree)
    a[0] = 0
    a *= 0.3 * rng.random() / max(np.sum(k * np.abs(a)), 1e-300)
    a[0] = 1.0
    b = _cnormal(rng, degree)
    b *= 0.3 * rng.random() / np.sum(k * np.abs(b))
    c = np.concatenate([np.conj(b[::-1]), [0.0], a])
    return HarmonicMap(c[None, :], is_complex=True)


def _analytic(rng, degree, fix_origin):
    c = _cnormal(rng, degree + 1)
    if fix_origin:
        c[0] = 0
    return PowerSeries(c)


def _scale_analytic(fs, margin):
    sup = analytic_vector_sup(fs)
    if sup == 0:
        return fs
    return [PowerSeries(g.coeffs * (margin / sup)) for g in fs]


def _verify(out, margin):
    if isinstance(out, tuple):
        sup = analytic_vector_sup(out)
    else:
        sup = out.sup_estimate
    if sup > margin + 1e-12:
        raise RuntimeError(f"generated function has grid sup {sup} above margin {margin}")
