"""Conformal map of the disk onto the strip ``|Re w| < 1`` and the proof identities.

``g(z) = (2i/pi) log((1 + z)/(1 - z))`` sends the real diameter to the
imaginary axis and the imaginary diameter onto the interval (-1, 1), with
``g(iy) = -(4/pi) arctan(y)``. ``(1 + z)/(1 - z)`` has positive real part in
the disk, so the principal logarithm is continuous there.
"""

from __future__ import annotations

import numpy as np

from .disk import as_complex
from .reports import BoundReport

IDENTITY_TOL = 1e-12


def strip_map(z):
    """Image of ``z`` under ``g``."""
    z = as_complex(z)
    return (2j / np.pi) * np.log((1 + z) / (1 - z))


def strip_map_derivative(z):
    z = as_complex(z)
    return (4j / np.pi) / (1 - z * z)


def strip_map_inverse(w):
    """Inverse of :func:`strip_map`: ``b = tanh(-i pi w / 4)``."""
    w = as_complex(w)
    if np.any(np.abs(np.real(w)) >= 1):
        raise ValueError("strip points need |Re w| < 1")
    return np.tanh(-1j * np.pi * w / 4)


def verify_strip_inequality(r: float, t: float, tol: float = IDENTITY_TOL):
    """Check the polar identities for ``b = (w - 1)/(w + 1)``, ``w = r e^{it}``.

    Returns three reports: ``1 - |b|^2`` and ``|1 - b^2|`` against their
    closed forms in ``(r, t)``, and ``|cos t| <= 1 - (4/pi^2) t^2``.
    """
    if r <= 0 or abs(t) >= np.pi / 2:
        raise ValueError("need r > 0 and |t| < pi/2")
    omega = r * np.exp(1j * t)
    b = (omega - 1) / (omega + 1)
    denom = r * r + 2 * r * np.cos(t) + 1
    at = complex(r, t)
    return (
        BoundReport("strip_identity_modulus", at, float(1 - abs(b) ** 2),
                    float(4 * r * np.cos(t) / denom), tol, relation="eq"),
        BoundReport("strip_identity_square", at, float(abs(1 - b * b)),
                    float(4 * r / denom), tol, relation="eq"),
        BoundReport("strip_cosine", at, float(abs(np.cos(t))),
                    float(1 - 4 * t * t / np.pi ** 2), tol),
    )
