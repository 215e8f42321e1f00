"""Hyperbolic geometry of the unit disk and of the interval (-1, 1).

All distances use the density ``2/(1 - |z|^2)`` on the disk and
``2/(1 - t^2)`` on the interval, so that ``tanh(d/2)`` is the
pseudo-hyperbolic distance ``|z - w| / |1 - z conj(w)|``.

Functions accept Python complex numbers, :class:`DiskPoint` instances or
numpy arrays; arrays are broadcast.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

#: Points with modulus at or above this are rejected by :class:`DiskPoint`.
BOUNDARY_GUARD = 1.0 - 1e-15


@dataclass(frozen=True)
class DiskPoint:
    """A point of the open unit disk."""

    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValueError(f"non-finite disk point ({self.re}, {self.im})")
        if math.hypot(self.re, self.im) >= BOUNDARY_GUARD:
            raise ValueError(
                f"point {complex(self.re, self.im)} is not inside the open unit disk")

    @classmethod
    def from_complex(cls, z) -> "DiskPoint":
        z = complex(z)
        return cls(z.real, z.imag)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)


def as_complex(z):
    """Coerce a DiskPoint, number or array-like to complex (array or scalar)."""
    if isinstance(z, DiskPoint):
        return z.z
    if np.isscalar(z):
        return complex(z)
    return np.asarray(z, dtype=complex)


def artanh(x):
    """Inverse hyperbolic tangent via ``0.5*(log1p(x) - log1p(-x))``."""
    return 0.5 * (np.log1p(x) - np.log1p(-np.asarray(x, dtype=float)))


def pseudo_hyperbolic(z, w):
    """Pseudo-hyperbolic distance ``|z - w| / |1 - z conj(w)|``."""
    z, w = as_complex(z), as_complex(w)
    return np.abs(z - w) / np.abs(1 - z * np.conj(w))


def hyperbolic_distance(z, w):
    """Hyperbolic distance on the disk, ``2 artanh(pseudo_hyperbolic(z, w))``."""
    return 2.0 * artanh(pseudo_hyperbolic(z, w))


def interval_hyperbolic_distance(x, y):
    """Hyperbolic distance on (-1, 1) with density ``2/(1 - t^2)``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(np.abs(x) >= 1) or np.any(np.abs(y) >= 1):
        raise ValueError("interval points must lie in (-1, 1)")
    return 2.0 * np.abs(artanh(x) - artanh(y))


@dataclass(frozen=True)
class MobiusAutomorphism:
    """Disk automorphism ``m(z) = exp(i theta) (z - a) / (1 - conj(a) z)``."""

    a: complex = 0j
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        if abs(self.a) >= BOUNDARY_GUARD:
            raise ValueError("automorphism centre must lie in the open disk")

    @property
    def rotation(self) -> complex:
        return cmath.exp(1j * self.theta)

    def __call__(self, z):
        z = as_complex(z)
        return self.rotation * (z - self.a) / (1 - np.conj(self.a) * z)

    def derivative(self, z):
        z = as_complex(z)
        return self.rotation * (1 - abs(self.a) ** 2) / (1 - np.conj(self.a) * z) ** 2

    def inverse(self) -> "MobiusAutomorphism":
        # z = (e^{-i theta} w + a) / (1 + conj(a) e^{-i theta} w)
        #   = e^{-i theta} (w + a e^{i theta}) / (1 + conj(a e^{i theta}) w)
        return MobiusAutomorphism(-self.a * self.rotation, -self.theta)

    def compose(self, inner: "MobiusAutomorphism") -> "MobiusAutomorphism":
        """Return ``self o inner``."""
        centre = complex(inner.inverse()(self.a))
        slope = complex(self.derivative(inner(centre)) * inner.derivative(centre))
        return MobiusAutomorphism(centre, cmath.phase(slope))


def mobius_apply(m: MobiusAutomorphism, z):
    """Apply ``m`` to ``z``."""
    return m(z)


def mobius_from_points(z, w) -> tuple[MobiusAutomorphism, float]:
    """Automorphism ``m`` and ``r >= 0`` with ``m(0) = z`` and ``m(r) = w``.

    ``r`` is the pseudo-hyperbolic distance between ``z`` and ``w``.
    """
    z, w = complex(as_complex(z)), complex(as_complex(w))
    u = (w - z) / (1 - z.conjugate() * w)
    r = abs(u)
    rot = u / r if r > 0 else 1.0 + 0j
    # m(s) = rot (s + conj(rot) z) / (1 + rot conj(z) s)
    m = MobiusAutomorphism(-rot.conjugate() * z, cmath.phase(rot))
    return m, r
