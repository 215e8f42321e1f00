"""Ratio landscapes over polar grids and numerical sharpness search."""

from __future__ import annotations

import cmath
import csv
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy import optimize

from .checks import gradient_ratio, heinz_sides, modulus_sides
from .disk import MobiusAutomorphism, as_complex
from .extremal import ExtremalMap, ExtremalSpec
from .harmonic import HarmonicMap
from .reports import format_float


@dataclass(frozen=True)
class GridSpec:
    """Polar grid: ``radial`` radii from 0 to ``max_radius`` times ``angular`` angles."""

    radial: int = 64
    angular: int = 128
    max_radius: float = 0.99

    def __post_init__(self):
        if not 0 < self.max_radius < 1:
            raise ValueError("max_radius must lie in (0, 1)")
        if self.radial < 1 or self.angular < 1:
            raise ValueError("grid needs at least one radius and one angle")

    @property
    def radii(self) -> np.ndarray:
        return np.linspace(0.0, self.max_radius, self.radial)

    @property
    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.angular) / self.angular

    def points(self) -> np.ndarray:
        """Complex grid of shape ``(radial, angular)``."""
        return self.radii[:, None] * np.exp(1j * self.angles)[None, :]

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        r, a, rmax = text.split(",")
        return cls(int(r), int(a), float(rmax))


def _modulus_ratio(f, z):
    lhs, rhs = modulus_sides(f, z)
    return np.nan_to_num(lhs / rhs, nan=0.0)


def _heinz_ratio(f, z):
    lhs, rhs = heinz_sides(f, z)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(rhs > 0, lhs / rhs, 0.0)


RATIO_CHECKS: dict[str, Callable] = {
    "gradient": gradient_ratio,
    "modulus": _modulus_ratio,
    "heinz": _heinz_ratio,
}


@dataclass(frozen=True, eq=False)
class RatioField:
    grid: GridSpec
    values: np.ndarray
    check: str = "gradient"
    max_ratio: float = field(init=False)
    argmax: complex = field(init=False)

    def __post_init__(self):
        idx = np.unravel_index(int(np.argmax(self.values)), self.values.shape)
        object.__setattr__(self, "max_ratio", float(self.values[idx]))
        object.__setattr__(self, "argmax", complex(self.grid.points()[idx]))

    def write_csv(self, path) -> None:
        """Write ``r,theta,ratio`` rows with a header."""
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(("r", "theta", "ratio"))
            for i, r in enumerate(self.grid.radii):
                for j, t in enumerate(self.grid.angles):
                    w.writerow((format_float(float(r)), format_float(float(t)),
                                format_float(float(self.values[i, j]))))


def ratio_field(f, grid: GridSpec = GridSpec(), check: str = "gradient") -> RatioField:
    try:
        fn = RATIO_CHECKS[check]
    except KeyError:
        raise ValueError(f"unknown ratio check {check!r}; known: {sorted(RATIO_CHECKS)}") from None
    return RatioField(grid, np.asarray(fn(f, grid.points()), dtype=float), check)


# -- families ---------------------------------------------------------------

@dataclass(frozen=True)
class ExtremalFamily:
    """Extremal maps parametrized by automorphism centre and pre-rotation.

    Each range is ``(lo, hi)``; equal endpoints fix the parameter.
    """

    a_radius: tuple[float, float] = (0.0, 0.95)
    a_angle: tuple[float, float] = (0.0, 2 * np.pi)
    rotate: tuple[float, float] = (0.0, 2 * np.pi)
    sign: int = 1

    @property
    def bounds(self):
        return [self.a_radius, self.a_angle, self.rotate]

    def build(self, p) -> ExtremalMap:
        rad, ang, rot = (float(x) for x in p)
        return ExtremalMap(ExtremalSpec(MobiusAutomorphism(rad * cmath.exp(1j * ang)), rot, self.sign))


@dataclass(frozen=True, eq=False)
class RotatedScaledFamily:
    """``s * f(exp(i phi) z)`` for a fixed real harmonic map ``f``."""

    base: HarmonicMap
    scale: tuple[float, float] = (0.1, 1.0)
    phase: tuple[float, float] = (0.0, 2 * np.pi)

    @property
    def bounds(self):
        return [self.scale, self.phase]

    def build(self, p) -> HarmonicMap:
        s, phi = (float(x) for x in p)
        k = np.arange(-self.base.degree, self.base.degree + 1)
        return HarmonicMap(s * self.base.coeffs * np.exp(1j * k * phi))


class SharpnessResult(NamedTuple):
    best_ratio: float
    best_params: np.ndarray
    best_map: object
    field: RatioField


def sharpness_search(family, z0, budget: int = 1000, seed: int = 0,
                     grid: GridSpec = GridSpec(32, 64, 0.99)) -> SharpnessResult:
    """Maximize the gradient-bound ratio at ``z0`` over ``family``.

    Three quarters of ``budget`` go to uniform random sampling of the
    parameter box and the rest to a bounded Nelder-Mead refinement from the
    best sample.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    z0 = complex(as_complex(z0))
    lo = np.array([b[0] for b in family.bounds], dtype=float)
    hi = np.array([b[1] for b in family.bounds], dtype=float)
    rng = np.random.default_rng(seed)

    def ratio(p):
        return float(gradient_ratio(family.build(p), z0))

    n_coarse = max(1, (3 * budget) // 4)
    samples = lo + (hi - lo) * rng.random((n_coarse, lo.size))
    scores = np.array([ratio(p) for p in samples])
    best = int(np.argmax(scores))
    best_p, best_r = samples[best], scores[best]
    refine = budget - n_coarse
    free = hi > lo
    if refine > 0 and np.any(free):
        def neg(q):
            p = best_p.copy()
            p[free] = q
            return -ratio(p)

        res = optimize.minimize(neg, best_p[free], method="Nelder-Mead",
                                bounds=list(zip(lo[free], hi[free])),
                                options={"maxfev": refine, "xatol": 1e-12, "fatol": 1e-15})
        if -res.fun > best_r:
            best_p = best_p.copy()
            best_p[free] = res.x
            best_r = -res.fun
    best_map = family.build(best_p)
    return SharpnessResult(best_r, best_p, best_map, ratio_field(best_map, grid, "gradient"))
