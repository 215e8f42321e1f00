"""Verdict records and deterministic JSON/CSV serialization."""

from __future__ import annotations

import csv
import json
import io
import math
from dataclasses import dataclass
from typing import Iterable

CSV_COLUMNS = ("check", "re_z", "im_z", "re_w", "im_w", "lhs", "rhs", "ratio", "pass")


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one inequality (``relation='le'``) or identity (``'eq'``) check.

    An inequality passes when ``lhs <= rhs*(1 + tol) + atol``; an identity
    when ``|lhs - rhs| <= tol*max(1, |rhs|) + atol``. ``'lt'`` is a strict
    comparison used for growth assertions.
    """

    check: str
    z: complex
    lhs: float
    rhs: float
    tol: float
    w: complex | None = None
    atol: float = 0.0
    relation: str = "le"

    @property
    def ratio(self) -> float:
        if self.rhs > 0:
            return self.lhs / self.rhs
        return 0.0 if self.lhs == 0 else math.inf

    @property
    def passed(self) -> bool:
        if self.relation == "eq":
            return abs(self.lhs - self.rhs) <= self.tol * max(1.0, abs(self.rhs)) + self.atol
        if self.relation == "lt":
            return self.lhs < self.rhs
        return self.lhs <= self.rhs * (1.0 + self.tol) + self.atol

    def __bool__(self) -> bool:
        return self.passed

    def as_dict(self) -> dict:
        w = None if self.w is None else complex(self.w)
        return {
            "check": self.check,
            "re_z": complex(self.z).real,
            "im_z": complex(self.z).imag,
            "re_w": None if w is None else w.real,
            "im_w": None if w is None else w.imag,
            "lhs": float(self.lhs),
            "rhs": float(self.rhs),
            "ratio": float(self.ratio),
            "pass": self.passed,
            "tol": float(self.tol),
            "atol": float(self.atol),
            "relation": self.relation,
        }


def format_float(x: float) -> str:
    """17 significant digits; non-finite values as JSON-style tokens."""
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def dumps(obj, indent: int = 0, _level: int = 0) -> str:
    """JSON text with fixed float formatting so equal inputs give equal bytes."""
    pad = " " * (indent * (_level + 1)) if indent else ""
    end = ("\n" + " " * (indent * _level)) if indent else ""
    sep = ",\n" if indent else ", "
    if isinstance(obj, bool) or obj is None:
        return {True: "true", False: "false", None: "null"}[obj]
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [pad + dumps(str(k)) + ": " + dumps(v, indent, _level + 1) for k, v in obj.items()]
        return "{" + ("\n" if indent else "") + sep.join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[" + ("\n" if indent else "") + sep.join(items) + end + "]"
    if hasattr(obj, "item"):
        return dumps(obj.item(), indent, _level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def reports_to_json(reports: Iterable[BoundReport]) -> str:
    return dumps([r.as_dict() for r in reports], indent=1) + "\n"


def reports_to_csv(reports: Iterable[BoundReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        d = r.as_dict()
        writer.writerow([d["check"]] + ["" if d[c] is None else format_float(d[c])
                                        for c in CSV_COLUMNS[1:-1]]
                        + ["true" if d["pass"] else "false"])
    return buf.getvalue()
