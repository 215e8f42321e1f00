"""Executable forms of the Schwarz-type inequalities.

Each ``*_sides`` function is vectorized over points and returns the left
and right sides of one inequality; the ``check_*`` functions evaluate a
single point (or pair) and return :class:`~hschwarz.reports.BoundReport`.

Gradient conventions: for real scalar maps ``|grad f|`` is the Euclidean
norm (``= 2|f_z|``); for planar complex maps it is the operator norm
``|f_z| + |f_zbar|``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .disk import as_complex, hyperbolic_distance, interval_hyperbolic_distance, pseudo_hyperbolic
from .harmonic import HarmonicMap, PowerSeries, SingularPointError, modulus_and_gradient
from .reports import BoundReport

FOUR_OVER_PI = 4.0 / np.pi

#: Default tolerances; ``inequality`` is relative slack on the right side.
TOLERANCES = {
    "identity": 1e-12,
    "inequality": 1e-8,
    "fd": 1e-6,
    "heinz_atol": 1e-9,
    "modulus_eps": 1e-8,
}


class CodomainError(ValueError):
    """The function does not map into the required open ball."""


def require_into_ball(f, what: str = "function"):
    if getattr(f, "codomain_certified", False):
        return
    sup = f.sup_estimate
    if not sup < 1.0:
        raise CodomainError(f"{what} is not into the unit ball: grid sup {sup:.6g} >= 1")


def _require_scalar_real(f):
    if not getattr(f, "is_scalar_real", False):
        raise ValueError("check needs a scalar real-valued map")


def _c0(f: HarmonicMap):
    return f.coeffs[:, f.degree]


# -- vectorized sides -------------------------------------------------------

def classical_sides(f: PowerSeries, z, w):
    """Sides of the three classical reports for analytic ``f``.

    Returns ``((lhs, rhs) contraction, (lhs, rhs) derivative, (lhs, rhs) origin)``.
    """
    z, w = as_complex(z), as_complex(w)
    fz, fw = f(z), f(w)
    contraction = (pseudo_hyperbolic(fz, fw), pseudo_hyperbolic(z, w))
    derivative = (np.abs(f.derivative(z)), (1 - np.abs(fz) ** 2) / (1 - np.abs(z) ** 2))
    origin = (np.abs(fz), np.abs(z))
    return contraction, derivative, origin


def heinz_sides(f: HarmonicMap, z):
    z = as_complex(z)
    v = f.components(z)
    return np.sqrt(np.sum(v ** 2, axis=0)), FOUR_OVER_PI * np.arctan(np.abs(z))


def gradient_sides(f, z):
    """``|grad f|`` and ``(4/pi)(1 - f^2)/(1 - |z|^2)`` for real scalar ``f``."""
    z = as_complex(z)
    lhs = f.jacobian(z).gradient_norm
    fv = f(z)
    return lhs, FOUR_OVER_PI * (1 - fv ** 2) / (1 - np.abs(z) ** 2)


def gradient_ratio(f, z):
    lhs, rhs = gradient_sides(f, z)
    return lhs / rhs


def modulus_sides(f, z, eps: float = TOLERANCES["modulus_eps"]):
    """Sides of the modulus-gradient bound; ``lhs`` is NaN where ``|f| < eps``."""
    z = as_complex(z)
    mod, grad = modulus_and_gradient(f, z)
    rhs = FOUR_OVER_PI * (1 - mod ** 2) / (1 - np.abs(z) ** 2)
    return np.where(mod < eps, np.nan, grad), rhs


def contraction_sides(f, z, w, scale: float = 1.0):
    """Interval distance of ``f(z), f(w)`` and ``4/pi`` times the disk distance.

    ``scale`` multiplies both metric densities.
    """
    lhs = scale * interval_hyperbolic_distance(f(z), f(w))
    rhs = scale * FOUR_OVER_PI * hyperbolic_distance(z, w)
    return lhs, rhs


def qc_sides(f: HarmonicMap, K: float, z):
    z = as_complex(z)
    fz, fzbar = f.wirtinger(z)
    lhs = np.abs(fz[0]) + np.abs(fzbar[0])
    mod2 = np.sum(f.components(z) ** 2, axis=0)
    return lhs, K * (1 - mod2) / (1 - np.abs(z) ** 2)


def analytic_modulus_sides(fs: Sequence[PowerSeries], z):
    """``|grad |f||`` for a vector of analytic functions against ``(1-|f|^2)/(1-|z|^2)``.

    ``|grad |f|| = |sum_j conj(f_j) f_j'| / |f|``.
    """
    z = as_complex(z)
    vals = np.array([g(z) for g in fs])
    ders = np.array([g.derivative(z) for g in fs])
    mod = np.sqrt(np.sum(np.abs(vals) ** 2, axis=0))
    with np.errstate(divide="ignore", invalid="ignore"):
        lhs = np.abs(np.sum(np.conj(vals) * ders, axis=0)) / mod
    return lhs, mod, (1 - mod ** 2) / (1 - np.abs(z) ** 2)


# -- single-point checks ----------------------------------------------------

def check_classical_schwarz(f: PowerSeries, z, w, tol: float = TOLERANCES["inequality"],
                            check_codomain: bool = True) -> tuple[BoundReport, BoundReport, BoundReport]:
    """Pseudo-hyperbolic contraction, derivative bound and ``|f(z)| <= |z|``."""
    if check_codomain:
        require_into_ball(f, "analytic function")
    if abs(f.coeffs[0]) > 1e-12:
        raise ValueError("f(0) must be 0")
    z, w = complex(as_complex(z)), complex(as_complex(w))
    (c_l, c_r), (d_l, d_r), (o_l, o_r) = classical_sides(f, z, w)
    return (
        BoundReport("classical_contraction", z, float(c_l), float(c_r), tol, w=w),
        BoundReport("classical_derivative", z, float(d_l), float(d_r), tol),
        BoundReport("classical_origin", z, float(o_l), float(o_r), tol),
    )


def check_heinz(f: HarmonicMap, z, tol: float = 0.0, atol: float = TOLERANCES["heinz_atol"],
                check_codomain: bool = True) -> BoundReport:
    """``|f(z)| <= (4/pi) arctan|z|`` for harmonic ``f`` into the disk with ``f(0) = 0``."""
    if check_codomain:
        require_into_ball(f, "harmonic map")
    if np.max(np.abs(_c0(f))) > 1e-12:
        raise ValueError("f(0) must be 0")
    z = complex(as_complex(z))
    lhs, rhs = heinz_sides(f, z)
    return BoundReport("heinz", z, float(lhs), float(rhs), tol, atol=atol)


def check_gradient_bound(f, z, tol: float = TOLERANCES["inequality"],
                         check_codomain: bool = True) -> BoundReport:
    """``|grad f(z)| <= (4/pi)(1 - f(z)^2)/(1 - |z|^2)`` for real ``f`` into (-1, 1)."""
    _require_scalar_real(f)
    if check_codomain:
        require_into_ball(f, "real harmonic map")
    z = complex(as_complex(z))
    lhs, rhs = gradient_sides(f, z)
    return BoundReport("gradient", z, float(lhs), float(rhs), tol)


def check_modulus_gradient_bound(f, z, tol: float = TOLERANCES["inequality"],
                                 eps: float = TOLERANCES["modulus_eps"],
                                 check_codomain: bool = True) -> BoundReport:
    """``|grad |f|(z)| <= (4/pi)(1 - |f(z)|^2)/(1 - |z|^2)`` for maps into the ball.

    Raises
    ------
    SingularPointError
        If ``|f(z)| < eps``.
    """
    if check_codomain:
        require_into_ball(f, "harmonic map")
    z = complex(as_complex(z))
    lhs, rhs = modulus_sides(f, z, eps)
    if np.isnan(lhs):
        raise SingularPointError(f"|f(z)| < {eps:g} at z = {z}")
    return BoundReport("modulus", z, float(lhs), float(rhs), tol)


def check_hyperbolic_contraction(f, z, w, tol: float = TOLERANCES["inequality"],
                                 scale: float = 1.0, check_codomain: bool = True) -> BoundReport:
    """``d(f(z), f(w)) <= (4/pi) d(z, w)`` with interval and disk hyperbolic distances."""
    _require_scalar_real(f)
    if check_codomain:
        require_into_ball(f, "real harmonic map")
    z, w = complex(as_complex(z)), complex(as_complex(w))
    lhs, rhs = contraction_sides(f, z, w, scale)
    return BoundReport("contraction", z, float(lhs), float(rhs), tol, w=w)


def check_qc_bound(f: HarmonicMap, K: float, z, tol: float = TOLERANCES["inequality"],
                   check_codomain: bool = True) -> BoundReport:
    """``|f_z| + |f_zbar| <= K (1 - |f|^2)/(1 - |z|^2)`` for a K-qc harmonic self-map."""
    if K < 1:
        raise ValueError("K must be >= 1")
    if not f.is_complex:
        raise ValueError("check needs a planar complex map")
    if check_codomain:
        require_into_ball(f, "planar harmonic map")
    z = complex(as_complex(z))
    fz, fzbar = f.wirtinger(z)
    if abs(fz[0]) <= abs(fzbar[0]):
        raise ValueError(f"map is not orientation preserving at z = {z}")
    lhs, rhs = qc_sides(f, K, z)
    return BoundReport("qc", z, float(lhs), float(rhs), tol)


def check_analytic_modulus_bound(fs: Sequence[PowerSeries], z, tol: float = TOLERANCES["inequality"],
                                 eps: float = TOLERANCES["modulus_eps"],
                                 check_codomain: bool = True) -> BoundReport:
    """``|grad |f|(z)| <= (1 - |f|^2)/(1 - |z|^2)`` for analytic ``f`` into the complex ball."""
    if check_codomain:
        sup = analytic_vector_sup(fs)
        if not sup < 1:
            raise CodomainError(f"analytic vector not into the ball: grid sup {sup:.6g}")
    z = complex(as_complex(z))
    lhs, mod, rhs = analytic_modulus_sides(fs, z)
    if mod < eps:
        raise SingularPointError(f"|f(z)| < {eps:g} at z = {z}")
    return BoundReport("analytic_ball", z, float(lhs), float(rhs), tol)


def analytic_vector_sup(fs: Sequence[PowerSeries], m: int = 8192) -> float:
    circle = np.exp(2j * np.pi * np.arange(m) / m)
    return float(np.max(np.sqrt(sum(np.abs(g(circle)) ** 2 for g in fs))))
