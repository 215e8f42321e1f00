"""Extremal functions for the sharp gradient bound.

The base function ``(2/pi) arctan(2y/(1 - |z|^2))`` is the real part of
``-g(z)`` with ``g`` the strip map; it has boundary values ``sign(sin t)``.
Precomposing with disk automorphisms and rotations gives the family used
to witness sharpness at every point.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .disk import DiskPoint, MobiusAutomorphism, as_complex
from .harmonic import BoundaryFunction, BoundaryRule, HarmonicMap, JacobianAtPoint, register_rule
from .strip import strip_map, strip_map_derivative


def extremal_real(z):
    """``(2/pi) arctan(2y / (1 - x^2 - y^2))``; values in (-1, 1)."""
    z = as_complex(z)
    return (2 / np.pi) * np.arctan2(2 * np.imag(z), 1 - np.abs(z) ** 2)


@dataclass(frozen=True)
class ExtremalSpec:
    """``f(z) = sign * extremal_real(exp(i*rotate) * precompose(z))``."""

    precompose: MobiusAutomorphism = field(default_factory=MobiusAutomorphism)
    rotate: float = 0.0
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def inner(self, z):
        return cmath.exp(1j * self.rotate) * self.precompose(z)


class ExtremalMap:
    """Closed-form real harmonic map built from an :class:`ExtremalSpec`.

    Implements the same evaluation/Jacobian surface as
    :class:`~hschwarz.harmonic.HarmonicMap` for a scalar real map.
    """

    is_complex = False
    rows = 1
    target_dim = 1
    is_scalar_real = True
    # Range is (-1, 1) analytically; the boundary sup is 1 but never attained.
    codomain_certified = True

    def __init__(self, spec: ExtremalSpec | None = None):
        self.spec = spec or ExtremalSpec()

    def __repr__(self):
        return f"ExtremalMap({self.spec!r})"

    def completion(self, z):
        """Analytic ``a`` with ``Re a = f`` and ``a = 0`` where the inner point is 0."""
        return -self.spec.sign * strip_map(self.spec.inner(z))

    def __call__(self, z):
        return self.spec.sign * extremal_real(self.spec.inner(z))

    def evaluate(self, z):
        return np.asarray(self(z))[None, ...]

    components = evaluate

    def wirtinger(self, z):
        z = as_complex(z)
        spec = self.spec
        da = (-spec.sign * strip_map_derivative(spec.inner(z))
              * cmath.exp(1j * spec.rotate) * spec.precompose.derivative(z))
        fz = np.asarray(da / 2)[None, ...]
        return fz, np.conj(fz)

    def jacobian(self, z) -> JacobianAtPoint:
        fz, fzbar = self.wirtinger(z)
        matrix = np.stack([2 * fz.real, -2 * fz.imag], axis=1)
        return JacobianAtPoint(matrix, fz, fzbar)

    @cached_property
    def jump_angles(self) -> tuple[float, float]:
        """Boundary angles where ``f`` jumps from -sign to +sign and back."""
        back = self.spec.precompose.inverse()
        rot = cmath.exp(-1j * self.spec.rotate)
        up = cmath.phase(complex(back(rot)))
        down = cmath.phase(complex(back(-rot)))
        return up, down

    def fourier(self, degree: int) -> np.ndarray:
        """Exact Fourier coefficients of the boundary values (a two-arc step)."""
        alpha, beta = self.jump_angles
        length = (beta - alpha) % (2 * np.pi)
        beta = alpha + length
        k = np.arange(-degree, degree + 1)
        c = np.empty(k.size, dtype=complex)
        nz = k != 0
        kk = k[nz]
        c[nz] = (np.exp(-1j * kk * alpha) - np.exp(-1j * kk * beta)) / (2j * np.pi * kk)
        c[~nz] = length / (2 * np.pi)
        c *= 2
        c[~nz] -= 1
        return (self.spec.sign * c)[None, :]

    def to_series(self, degree: int = 1024) -> HarmonicMap:
        return HarmonicMap(self.fourier(degree), boundary=self.boundary())

    def boundary(self) -> BoundaryFunction:
        m = self.spec.precompose
        return BoundaryFunction.from_rule(
            "extremal_strip", a_re=m.a.real, a_im=m.a.imag, theta=m.theta,
            rotate=self.spec.rotate, sign=self.spec.sign)


@register_rule("extremal_strip")
class ExtremalStripRule(BoundaryRule):
    """Boundary values ``+-1`` of an extremal map."""

    name = "extremal_strip"

    def __init__(self, a_re=0.0, a_im=0.0, theta=0.0, rotate=0.0, sign=1):
        self.params = dict(a_re=a_re, a_im=a_im, theta=theta, rotate=rotate, sign=sign)
        self.map = ExtremalMap(ExtremalSpec(
            MobiusAutomorphism(complex(a_re, a_im), theta), rotate, int(sign)))

    def evaluate(self, t):
        u = self.map.spec.inner(np.exp(1j * np.asarray(t, dtype=float)))
        return (self.map.spec.sign * np.sign(np.imag(u)))[None, :].astype(float)

    def fourier(self, degree):
        return self.map.fourier(degree)


def extremal_at(z0, spec: ExtremalSpec | None = None) -> ExtremalMap:
    """Extremal map whose gradient ratio equals 1 at ``z0``.

    ``z0`` is first moved to 0 by ``z -> (z - z0)/(1 - conj(z0) z)`` and
    then ``spec`` is applied. With the default spec (or any spec whose
    precomposition fixes 0) the ratio at ``z0`` is exactly 1.
    """
    z0 = complex(as_complex(z0)) if not isinstance(z0, DiskPoint) else z0.z
    spec = spec or ExtremalSpec()
    to_origin = MobiusAutomorphism(z0, 0.0)
    return ExtremalMap(ExtremalSpec(spec.precompose.compose(to_origin), spec.rotate, spec.sign))
