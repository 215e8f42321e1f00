"""Boundary-data files.

JSON, UTF-8::

    {"target_dim": n, "repr": "fourier" | "samples" | "rule",
     "coeffs": [[[re, im], ...], ...],     # per coordinate, k = -N..N
     "samples": [[v, ...], ...],           # per coordinate, M uniform values
     "rule": {"name": "...", "params": {...}},
     "complex": false}

A single coordinate may be given without the outer list. ``"complex": true``
marks one complex-valued coordinate (``target_dim`` 2); complex samples are
``[re, im]`` pairs.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .harmonic import BoundaryFunction


class BoundaryFormatError(ValueError):
    pass


def _finite(x):
    if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
        raise BoundaryFormatError(f"non-finite or non-numeric value {x!r}")
    return float(x)


def _is_pair(x):
    return isinstance(x, list) and len(x) == 2 and all(isinstance(v, (int, float)) for v in x)


def parse_boundary(doc: dict) -> BoundaryFunction:
    """Build a :class:`BoundaryFunction` from a decoded boundary document."""
    try:
        kind = doc["repr"]
        dim = int(doc["target_dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise BoundaryFormatError(f"missing or bad field: {exc}") from None
    is_complex = bool(doc.get("complex", False))
    rows = 1 if is_complex else dim
    if is_complex and dim != 2:
        raise BoundaryFormatError("complex boundary data has target_dim 2")

    if kind == "fourier":
        coeffs = doc.get("coeffs")
        if not isinstance(coeffs, list) or not coeffs:
            raise BoundaryFormatError("'coeffs' must be a non-empty list")
        if _is_pair(coeffs[0]):
            coeffs = [coeffs]
        arr = np.array([[complex(_finite(re), _finite(im)) for re, im in row] for row in coeffs])
        if arr.shape[0] != rows:
            raise BoundaryFormatError(f"expected {rows} coefficient rows, found {arr.shape[0]}")
        return BoundaryFunction.from_fourier(arr, is_complex=is_complex)

    if kind == "samples":
        samples = doc.get("samples")
        if not isinstance(samples, list) or not samples:
            raise BoundaryFormatError("'samples' must be a non-empty list")
        if is_complex:
            if _is_pair(samples[0]):
                samples = [samples]
            arr = np.array([[complex(_finite(a), _finite(b)) for a, b in row] for row in samples])
        else:
            if not isinstance(samples[0], list):
                samples = [samples]
            arr = np.array([[_finite(v) for v in row] for row in samples])
        if arr.shape[0] != rows:
            raise BoundaryFormatError(f"expected {rows} sample rows, found {arr.shape[0]}")
        return BoundaryFunction.from_samples(arr)

    if kind == "rule":
        rule = doc.get("rule") or {}
        if "name" not in rule:
            raise BoundaryFormatError("'rule' needs a 'name'")
        b = BoundaryFunction.from_rule(rule["name"], **rule.get("params", {}))
        if b.target_dim != dim:
            raise BoundaryFormatError(f"rule {rule['name']!r} has target_dim {b.target_dim}")
        return b

    raise BoundaryFormatError(f"unknown repr {kind!r}")


def load_boundary(path) -> BoundaryFunction:
    return parse_boundary(json.loads(Path(path).read_text(encoding="utf-8")))
