"""Harmonic functions on the unit disk as truncated Fourier series.

A harmonic map is stored by the Fourier coefficients ``c_k`` (``|k| <= N``)
of its boundary values, one row per coordinate. Its value inside the disk is

    f(z) = sum_k c_k r^|k| e^{ik theta}
         = sum_{k>=0} c_k z^k + sum_{k>=1} c_{-k} conj(z)^k,

so the Wirtinger derivatives are exact power series as well:

    f_z    = sum_{k>=1} k c_k z^{k-1}
    f_zbar = sum_{k>=1} k c_{-k} conj(z)^{k-1}.

Real coordinates satisfy ``c_{-k} = conj(c_k)``. A complex-valued (planar)
map is stored as a single complex row without that symmetry.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, NamedTuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from .disk import as_complex

SYMMETRY_TOL = 1e-12
SUP_GRID = 8192


class SingularPointError(ValueError):
    """|f(z)| is too small for the modulus to be differentiable."""


class QuadratureWarning(UserWarning):
    """Too few quadrature nodes for the requested radius."""


# ---------------------------------------------------------------------------
# Boundary data
# ---------------------------------------------------------------------------

_RULES: dict[str, Callable[..., "BoundaryRule"]] = {}


def register_rule(name: str):
    """Register a closed-form boundary rule factory under ``name``."""

    def deco(factory):
        _RULES[name] = factory
        return factory

    return deco


def rule_names() -> list[str]:
    return sorted(_RULES)


class BoundaryRule:
    """Closed-form boundary data. Subclasses set ``rows``/``is_complex``."""

    name = "rule"
    rows = 1
    is_complex = False
    params: dict = {}

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        """Values at angles ``t``; shape ``(rows, len(t))``."""
        raise NotImplementedError

    def fourier(self, degree: int) -> np.ndarray | None:
        """Exact coefficients ``(rows, 2*degree+1)``, or None if unavailable."""
        return None


def _check_finite(arr, what):
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} contain NaN or Inf")


def _is_power_of_two(m: int) -> bool:
    return m > 0 and (m & (m - 1)) == 0


def _fold(coeffs: np.ndarray, m: int) -> np.ndarray:
    """Alias coefficient rows onto ``m`` DFT bins (exact grid synthesis)."""
    rows, width = coeffs.shape
    n = (width - 1) // 2
    k = np.arange(-n, n + 1) % m
    out = np.zeros((rows, m), dtype=complex)
    for i in range(rows):
        np.add.at(out[i], k, coeffs[i])
    return out


def synthesize(coeffs: np.ndarray, m: int) -> np.ndarray:
    """Evaluate ``sum_k c_k e^{ik t}`` on the uniform grid ``t_j = 2 pi j/m``."""
    return m * np.fft.ifft(_fold(coeffs, m), axis=1)


def uniform_angles(m: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(m) / m


@dataclass(frozen=True, eq=False)
class BoundaryFunction:
    """Data on the unit circle in one of three representations.

    Use the ``from_fourier``, ``from_samples`` and ``from_rule``
    constructors rather than the raw initialiser.
    """

    kind: str
    rows: int
    is_complex: bool = False
    coeffs: np.ndarray | None = None
    samples: np.ndarray | None = None
    rule: BoundaryRule | None = None

    @property
    def target_dim(self) -> int:
        return 2 if self.is_complex else self.rows

    @classmethod
    def from_fourier(cls, coeffs, is_complex=False) -> "BoundaryFunction":
        c = np.atleast_2d(np.asarray(coeffs, dtype=complex))
        if c.shape[1] % 2 != 1:
            raise ValueError("coefficient rows must have odd length 2N+1")
        _check_finite(c, "coefficients")
        if is_complex and c.shape[0] != 1:
            raise ValueError("complex boundary data has exactly one row")
        if not is_complex:
            asym = np.max(np.abs(c - np.conj(c[:, ::-1])), initial=0.0)
            if asym > SYMMETRY_TOL:
                raise ValueError(
                    f"real coordinates need c_{{-k}} = conj(c_k); asymmetry {asym:.3g}")
        return cls("fourier", c.shape[0], is_complex, coeffs=c)

    @classmethod
    def from_samples(cls, samples) -> "BoundaryFunction":
        s = np.atleast_2d(np.asarray(samples))
        is_complex = np.iscomplexobj(s)
        _check_finite(s, "samples")
        if is_complex and s.shape[0] != 1:
            raise ValueError("complex boundary data has exactly one row")
        return cls("samples", s.shape[0], is_complex,
                   samples=s.astype(complex if is_complex else float))

    @classmethod
    def from_rule(cls, name: str, **params) -> "BoundaryFunction":
        try:
            factory = _RULES[name]
        except KeyError:
            raise ValueError(f"unknown boundary rule {name!r}; known: {rule_names()}") from None
        rule = factory(**params)
        return cls("rule", rule.rows, rule.is_complex, rule=rule)

    def sample(self, m: int) -> np.ndarray:
        """Values on the uniform ``m``-point grid, shape ``(rows, m)``."""
        if self.kind == "samples" and self.samples.shape[1] == m:
            out = self.samples
        elif self.kind == "rule":
            out = self.rule.evaluate(uniform_angles(m))
        else:
            out = synthesize(self.fourier_coeffs(), m)
        return out if self.is_complex else np.real(out)

    def evaluate(self, t) -> np.ndarray:
        """Values at arbitrary angles (trigonometric interpolation for samples)."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if self.kind == "rule":
            out = self.rule.evaluate(t)
        else:
            c = self.fourier_coeffs()
            n = (c.shape[1] - 1) // 2
            basis = np.exp(1j * np.outer(np.arange(-n, n + 1), t))
            out = c @ basis
        return out if self.is_complex else np.real(out)

    def fourier_coeffs(self, degree: int | None = None) -> np.ndarray:
        """Coefficient rows ``(rows, 2N+1)``; rules default to ``N = 4096``."""
        if self.kind == "fourier":
            c = self.coeffs
        elif self.kind == "samples":
            c = fourier_from_samples(self).coeffs
        else:
            degree = 4096 if degree is None else degree
            c = self.rule.fourier(degree)
            if c is None:
                m = max(SUP_GRID, 1 << math.ceil(math.log2(2 * degree + 2)))
                c = _coeffs_from_grid(self.rule.evaluate(uniform_angles(m)))
            return _resize(c, degree)
        return c if degree is None else _resize(c, degree)


def _coeffs_from_grid(values: np.ndarray) -> np.ndarray:
    m = values.shape[1]
    spec = np.fft.fft(values, axis=1) / m
    n = m // 2
    c = np.zeros((values.shape[0], 2 * n + 1), dtype=complex)
    c[:, n:2 * n] = spec[:, :n]          # k = 0 .. n-1
    c[:, 1:n] = spec[:, n + 1:]          # k = -(n-1) .. -1
    c[:, 0] = c[:, 2 * n] = 0.5 * spec[:, n]  # split Nyquist bin
    return c


def _resize(c: np.ndarray, degree: int) -> np.ndarray:
    n = (c.shape[1] - 1) // 2
    if degree == n:
        return c
    if degree < n:
        return c[:, n - degree:n + degree + 1]
    out = np.zeros((c.shape[0], 2 * degree + 1), dtype=complex)
    out[:, degree - n:degree + n + 1] = c
    return out


def fourier_from_samples(b: BoundaryFunction) -> BoundaryFunction:
    """DFT a sampled boundary function into Fourier coefficients.

    The result has degree ``M/2``; the Nyquist bin is split evenly between
    ``k = +-M/2`` so the coefficients resynthesize the samples exactly.
    """
    if b.kind != "samples":
        raise ValueError("expected a 'samples' boundary function")
    m = b.samples.shape[1]
    if not _is_power_of_two(m):
        raise ValueError(f"sample count {m} is not a power of two")
    _check_finite(b.samples, "samples")
    c = _coeffs_from_grid(b.samples)
    if not b.is_complex:
        c = 0.5 * (c + np.conj(c[:, ::-1]))
    return BoundaryFunction("fourier", b.rows, b.is_complex, coeffs=c)


# ---------------------------------------------------------------------------
# Series objects
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Analytic function ``sum_k a_k z^k`` (scalar, complex coefficients)."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).ravel()
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        return npoly.polyval(as_complex(z), self.coeffs)

    def derivative(self, z):
        if self.degree == 0:
            return np.zeros_like(as_complex(z))
        return npoly.polyval(as_complex(z), npoly.polyder(self.coeffs))

    @cached_property
    def sup_estimate(self) -> float:
        """Max of ``|f|`` on an 8192-point grid of the unit circle."""
        vals = self(np.exp(1j * uniform_angles(SUP_GRID)))
        return float(np.max(np.abs(vals)))


class JacobianAtPoint(NamedTuple):
    """Jacobian of a harmonic map at one or more points.

    ``matrix`` has shape ``(target_dim, 2) + z.shape`` holding
    ``d/dx`` and ``d/dy`` of each real coordinate. ``fz``/``fzbar`` are the
    Wirtinger derivatives of each stored row.
    """

    matrix: np.ndarray
    fz: np.ndarray
    fzbar: np.ndarray

    @property
    def gradient_norm(self):
        """Euclidean norm of the gradient (first coordinate)."""
        return np.hypot(self.matrix[0, 0], self.matrix[0, 1])

    @property
    def operator_norm(self):
        """``|f_z| + |f_zbar|`` of the first row (max stretch for planar maps)."""
        return np.abs(self.fz[0]) + np.abs(self.fzbar[0])


@dataclass(frozen=True, eq=False)
class HarmonicMap:
    """Harmonic map of the disk given by truncated Fourier coefficients.

    Parameters
    ----------
    coeffs : array, shape (rows, 2N+1)
        Row ``i`` holds ``c_{-N} .. c_N`` for coordinate ``i``.
    is_complex : bool
        Treat the single row as a complex-valued (planar) map.
    boundary : BoundaryFunction, optional
        Source data, used by the quadrature backend.
    """

    coeffs: np.ndarray
    is_complex: bool = False
    boundary: BoundaryFunction | None = field(default=None, repr=False)

    def __post_init__(self):
        c = np.atleast_2d(np.asarray(self.coeffs, dtype=complex))
        if c.shape[1] % 2 != 1:
            raise ValueError("coefficient rows must have odd length 2N+1")
        if self.is_complex and c.shape[0] != 1:
            raise ValueError("complex maps have exactly one coefficient row")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_boundary(cls, b: BoundaryFunction, degree: int | None = None) -> "HarmonicMap":
        return cls(b.fourier_coeffs(degree), b.is_complex, boundary=b)

    @classmethod
    def planar(cls, u: "HarmonicMap", v: "HarmonicMap") -> "HarmonicMap":
        """Complex map ``u + iv`` from two real scalar maps."""
        n = max(u.degree, v.degree)
        return cls(_resize(u.coeffs, n) + 1j * _resize(v.coeffs, n), is_complex=True)

    @property
    def degree(self) -> int:
        return (self.coeffs.shape[1] - 1) // 2

    @property
    def rows(self) -> int:
        return self.coeffs.shape[0]

    @property
    def target_dim(self) -> int:
        return 2 if self.is_complex else self.rows

    @property
    def is_scalar_real(self) -> bool:
        return not self.is_complex and self.rows == 1

    def _pos(self) -> np.ndarray:
        return self.coeffs[:, self.degree:]          # c_0 .. c_N

    def _neg(self) -> np.ndarray:
        return self.coeffs[:, self.degree::-1]       # c_0, c_-1 .. c_-N

    def evaluate(self, z) -> np.ndarray:
        """Values, shape ``(rows,) + z.shape``; complex rows for planar maps."""
        z = as_complex(z)
        if self.is_complex:
            neg = self._neg().copy()
            neg[:, 0] = 0
            return npoly.polyval(z, self._pos().T) + npoly.polyval(np.conj(z), neg.T)
        a = self._pos().copy()
        a[:, 1:] *= 2
        return np.real(npoly.polyval(z, a.T))

    def __call__(self, z):
        """Value at ``z``; scalar maps drop the leading coordinate axis."""
        v = self.evaluate(z)
        return v[0] if self.rows == 1 else v

    def components(self, z) -> np.ndarray:
        """Real coordinates, shape ``(target_dim,) + z.shape``."""
        v = self.evaluate(z)
        return np.stack([v[0].real, v[0].imag]) if self.is_complex else v

    def wirtinger(self, z) -> tuple[np.ndarray, np.ndarray]:
        z = as_complex(z)
        if self.degree == 0:
            fz = np.zeros((self.rows,) + np.shape(z), dtype=complex)
            return fz, fz.copy()
        k = np.arange(1, self.degree + 1)
        fz = npoly.polyval(z, (k * self._pos()[:, 1:]).T)
        if self.is_complex:
            fzbar = npoly.polyval(np.conj(z), (k * self._neg()[:, 1:]).T)
        else:
            fzbar = np.conj(fz)
        return fz, fzbar

    def jacobian(self, z) -> JacobianAtPoint:
        fz, fzbar = self.wirtinger(z)
        dx = fz + fzbar
        dy = 1j * (fz - fzbar)
        if self.is_complex:
            matrix = np.stack([np.stack([dx[0].real, dy[0].real]),
                               np.stack([dx[0].imag, dy[0].imag])])
        else:
            matrix = np.stack([dx.real, dy.real], axis=1)
        return JacobianAtPoint(matrix, fz, fzbar)

    def boundary_samples(self, m: int = SUP_GRID) -> np.ndarray:
        vals = synthesize(self.coeffs, m)
        return vals if self.is_complex else np.real(vals)

    @cached_property
    def sup_estimate(self) -> float:
        """Max of the Euclidean norm of the boundary values on an 8192-point grid.

        By the maximum principle this bounds ``|f|`` inside the disk.
        """
        vals = self.boundary_samples(SUP_GRID)
        return float(np.max(np.sqrt(np.sum(np.abs(vals) ** 2, axis=0))))

    def scaled(self, factor: float) -> "HarmonicMap":
        return HarmonicMap(self.coeffs * factor, self.is_complex)

    def as_real(self) -> "HarmonicMap":
        """Split a planar map into two real coordinate rows."""
        if not self.is_complex:
            return self
        c = self.coeffs[0]
        cr = np.conj(c[::-1])
        return HarmonicMap(np.stack([(c + cr) / 2, (c - cr) / 2j]))

    def tail_estimate(self, r: float, fraction: float = 0.5) -> float:
        """Gradient contribution of the top ``fraction`` of modes at radius ``r``.

        Used as a truncation-sufficiency indicator: it is small only if the
        retained series has already converged.
        """
        n = self.degree
        k0 = max(1, int(n * (1 - fraction)))
        k = np.arange(k0, n + 1)
        mags = np.abs(self.coeffs[:, n + k0:]) + np.abs(self.coeffs[:, n - k0::-1])
        return float(np.sum(k * mags * r ** (k - 1)))


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def poisson_extend_series(f: HarmonicMap, z):
    """Spectral Poisson extension: ``sum_k c_k r^|k| e^{ik theta}``."""
    return f(z)


def default_nodes(r: float) -> int:
    return max(1024, math.ceil(50.0 / (1.0 - r)))


def poisson_extend_quadrature(b: BoundaryFunction, z, nodes: int | None = None):
    """Poisson integral by the periodic trapezoidal rule.

    Returns shape ``(rows,) + z.shape`` (scalar data drops the leading axis).
    """
    z = as_complex(z)
    zf = np.atleast_1d(z).ravel()
    rmax = float(np.max(np.abs(zf), initial=0.0))
    if nodes is None:
        nodes = default_nodes(rmax)
    if nodes < 256:
        raise ValueError("quadrature needs at least 256 nodes")
    if nodes < math.ceil(50.0 / (1.0 - rmax)):
        warnings.warn(
            f"{nodes} nodes are too few near |z| = {rmax:.6g}; "
            f"use at least {math.ceil(50.0 / (1.0 - rmax))}", QuadratureWarning, stacklevel=2)
    t = uniform_angles(nodes)
    vals = b.sample(nodes)
    circle = np.exp(1j * t)
    out = np.empty((b.rows, zf.size), dtype=vals.dtype)
    chunk = max(1, 4_000_000 // nodes)
    for s in range(0, zf.size, chunk):
        zc = zf[s:s + chunk, None]
        kernel = (1 - np.abs(zc) ** 2) / np.abs(circle[None, :] - zc) ** 2
        out[:, s:s + chunk] = (vals @ kernel.T) / nodes
    out = out.reshape((b.rows,) + np.shape(z))
    return out[0] if b.rows == 1 else out


def jacobian(f: HarmonicMap, z) -> JacobianAtPoint:
    """Analytic Jacobian of the truncated series at ``z``."""
    return f.jacobian(z)


def _require_scalar_real(f: HarmonicMap):
    if not f.is_scalar_real:
        raise ValueError("operation needs a scalar real-valued harmonic map")


def harmonic_conjugate(f: HarmonicMap) -> HarmonicMap:
    """Conjugate ``h`` with ``h(0) = 0`` so that ``f + ih`` is analytic."""
    _require_scalar_real(f)
    k = np.arange(-f.degree, f.degree + 1)
    return HarmonicMap(-1j * np.sign(k) * f.coeffs)


def analytic_completion(f: HarmonicMap) -> PowerSeries:
    """Power series of ``f + i harmonic_conjugate(f)``."""
    _require_scalar_real(f)
    a = f.coeffs[0, f.degree:].copy()
    a[1:] *= 2
    return PowerSeries(a)


class Dilatation(NamedTuple):
    abs_fz: np.ndarray
    abs_fzbar: np.ndarray
    K: np.ndarray

    @property
    def qc(self):
        """True where the map is orientation preserving."""
        return np.isfinite(self.K)


def dilatation(f: HarmonicMap, z) -> Dilatation:
    """Pointwise ``K(z) = (|f_z| + |f_zbar|) / (|f_z| - |f_zbar|)``.

    ``K`` is ``inf`` where ``|f_z| <= |f_zbar|`` (not orientation preserving).
    """
    if not f.is_complex:
        if f.rows != 2:
            raise ValueError("dilatation needs a planar map")
        f = HarmonicMap.planar(HarmonicMap(f.coeffs[:1]), HarmonicMap(f.coeffs[1:]))
    fz, fzbar = f.wirtinger(z)
    a, b = np.abs(fz[0]), np.abs(fzbar[0])
    with np.errstate(divide="ignore", invalid="ignore"):
        K = np.where(a > b, (a + b) / np.where(a > b, a - b, 1.0), np.inf)
    return Dilatation(a, b, K)


def modulus_and_gradient(f: HarmonicMap, z) -> tuple[np.ndarray, np.ndarray]:
    """``(|f(z)|, |grad |f|(z)|)``; the gradient is NaN where ``f = 0``."""
    v = f.components(z)
    jm = f.jacobian(z).matrix
    mod = np.sqrt(np.sum(v ** 2, axis=0))
    g = np.einsum("i...,ij...->j...", v, jm)
    with np.errstate(divide="ignore", invalid="ignore"):
        grad = np.sqrt(np.sum(g ** 2, axis=0)) / mod
    return mod, grad


def grad_norm_of_modulus(f: HarmonicMap, z, eps: float = 1e-8):
    """Norm of the gradient of ``z -> |f(z)|``, computed as ``|J^T f| / |f|``.

    Raises
    ------
    SingularPointError
        If ``|f(z)| < eps`` at any requested point.
    """
    mod, grad = modulus_and_gradient(f, z)
    if np.any(mod < eps):
        raise SingularPointError(f"|f(z)| below {eps:g}; modulus not differentiable")
    return grad
