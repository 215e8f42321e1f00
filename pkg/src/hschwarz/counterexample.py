"""Harmonic self-map of the disk with bounded radial growth but unbounded gradient.

Boundary data ``F(t) = exp(i psi(t))`` with

    psi(t) = a (t + int_0^t -log|x| dx) = a (2t - t log|t|),   |t| <= pi,

and ``a = 1/(2 - log pi)`` so that ``psi(+-pi) = +-pi``. ``psi'(t) = a(1 - log|t|)``
blows up at ``t = 0``, which makes the gradient of ``P[F]`` grow without
bound along the radius towards 1.

Note that ``psi'`` is negative for ``e < |t| <= pi``, so ``psi`` is not
monotone on the whole circle; ``F`` is still a continuous degree-one map.
"""

from __future__ import annotations

import math
import warnings
from typing import NamedTuple, Sequence

import numpy as np
from scipy import integrate

from .harmonic import BoundaryFunction, BoundaryRule, HarmonicMap, _coeffs_from_grid, _resize, \
    register_rule, uniform_angles

PSI_SCALE = 1.0 / (2.0 - math.log(math.pi))
BASE_DEGREE = 4096
TAIL_REL_TOL = 1e-4


class TruncationWarning(UserWarning):
    """Series tail is not negligible at the requested radius."""


def wrap_angle(t):
    """Map angles to ``(-pi, pi]``."""
    t = np.asarray(t, dtype=float)
    return np.pi - np.mod(np.pi - t, 2 * np.pi)


def psi(t):
    t = wrap_angle(t)
    at = np.abs(t)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = PSI_SCALE * (2 * t - t * np.log(at))
    return np.where(at == 0, 0.0, out)


def psi_derivative(t):
    t = wrap_angle(t)
    with np.errstate(divide="ignore"):
        return PSI_SCALE * (1 - np.log(np.abs(t)))


def normalization_constant() -> float:
    """``2 pi / (2 pi + int_{-pi}^{pi} -log|x| dx)`` by adaptive quadrature."""
    # log weight handles the endpoint singularity: int_0^pi -log(x) dx
    half, _ = integrate.quad(lambda x: -1.0, 0.0, math.pi, weight="alg-loga", wvar=(0.0, 0.0))
    return 2 * math.pi / (2 * math.pi + 2 * half)


@register_rule("counterexample_psi")
class CounterexampleRule(BoundaryRule):
    name = "counterexample_psi"
    is_complex = True

    def __init__(self):
        self.params = {}

    def evaluate(self, t):
        return np.exp(1j * psi(t))[None, :]

    def fourier(self, degree):
        m = max(8192, 1 << math.ceil(math.log2(2 * degree)))
        return _resize(_coeffs_from_grid(self.evaluate(uniform_angles(m))), degree)


def counterexample_boundary() -> BoundaryFunction:
    return BoundaryFunction.from_rule("counterexample_psi")


def degree_for_radius(r: float) -> int:
    """Truncation degree with ``r^N <= e^{-30}``, at least 4096, a power of two."""
    need = 30.0 / max(1.0 - r, 1e-12)
    return max(BASE_DEGREE, 1 << math.ceil(math.log2(need)))


def counterexample_map(degree: int = BASE_DEGREE) -> HarmonicMap:
    b = counterexample_boundary()
    return HarmonicMap.from_boundary(b, degree)


class ScanRow(NamedTuple):
    r: float
    modulus: float
    gradient: float
    bound_ratio: float
    growth: float        # (1 - |f(r)|^2)/(1 - r^2)
    dilatation: float


def counterexample_radial_scan(radii: Sequence[float], degree: int | None = None) -> list[ScanRow]:
    """Evaluate the counterexample along ``[0, 1)``.

    ``bound_ratio = |grad f(r)| (1 - r^2) / (1 - |f(r)|^2)`` with the
    operator-norm gradient ``|f_z| + |f_zbar|``.
    """
    radii = np.asarray(radii, dtype=float)
    if radii.size == 0:
        return []
    if np.any(np.diff(radii) < 0) or radii[0] < 0 or radii[-1] >= 1:
        raise ValueError("radii must be ascending in [0, 1)")
    n = degree or degree_for_radius(float(radii[-1]))
    f = counterexample_map(n)
    val = f.evaluate(radii)[0]
    fz, fzbar = f.wirtinger(radii)
    a, b = np.abs(fz[0]), np.abs(fzbar[0])
    grad = a + b
    mod = np.abs(val)
    growth = (1 - mod ** 2) / (1 - radii ** 2)
    with np.errstate(divide="ignore"):
        K = np.where(a > b, (a + b) / np.where(a > b, a - b, 1.0), np.inf)
    tail = f.tail_estimate(float(radii[-1]))
    if tail > TAIL_REL_TOL * grad[-1]:
        warnings.warn(f"truncation tail {tail:.3g} exceeds {TAIL_REL_TOL:g} of the gradient",
                      TruncationWarning, stacklevel=2)
    return [ScanRow(float(r), float(m), float(g), float(g / gr), float(gr), float(k))
            for r, m, g, gr, k in zip(radii, mod, grad, growth, K)]


def auto_radii(kmax: int = 10) -> list[float]:
    return [1.0 - 2.0 ** -k for k in range(1, kmax + 1)]
