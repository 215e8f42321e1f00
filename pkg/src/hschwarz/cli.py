"""Command line entry point: ``hschwarz {verify,distance,extend,counterexample,field}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .checks import TOLERANCES
from .counterexample import auto_radii, counterexample_radial_scan
from .disk import hyperbolic_distance, interval_hyperbolic_distance, pseudo_hyperbolic
from .extremal import ExtremalMap
from .generators import RandomFamilySpec, gen_random_map
from .harmonic import HarmonicMap, poisson_extend_quadrature
from .boundary_io import load_boundary
from .reports import format_float
from .sharpness import GridSpec, ratio_field
from .suite import SUITES, RunConfig, run_suite, summary_text

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


def _floats(text: str, n: int | None = None) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise ConfigError(f"expected {n} numbers, got {text!r}")
    return vals


def _parse_tol(items) -> dict:
    out = {}
    for item in items or ():
        name, sep, val = item.partition("=")
        if not sep or name not in TOLERANCES:
            raise ConfigError(f"bad --tol {item!r}; names: {sorted(TOLERANCES)}")
        out[name] = float(val)
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hschwarz", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run randomized verification suites")
    v.add_argument("--suite", default="all", choices=("all",) + SUITES)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--grid", default="64,128,0.99", help="RADIAL,ANGULAR,RMAX")
    v.add_argument("--tol", action="append", metavar="NAME=VAL")
    v.add_argument("--out", type=Path)
    v.add_argument("--format", default="json", choices=("json", "csv"))

    d = sub.add_parser("distance", help="hyperbolic distances")
    g = d.add_mutually_exclusive_group(required=True)
    g.add_argument("--disk", metavar="zRe,zIm,wRe,wIm")
    g.add_argument("--interval", metavar="x,y")

    e = sub.add_parser("extend", help="evaluate the Poisson extension of boundary data")
    e.add_argument("--boundary", type=Path, required=True)
    e.add_argument("--at", required=True, metavar="re,im")
    e.add_argument("--backend", default="series", choices=("series", "quadrature"))
    e.add_argument("--degree", type=int, default=None)
    e.add_argument("--nodes", type=int, default=None)

    c = sub.add_parser("counterexample", help="radial scan of the unbounded-gradient example")
    c.add_argument("--radii", default="auto", help="comma list or 'auto' (1 - 2^-k, k=1..10)")
    c.add_argument("--out", type=Path)

    f = sub.add_parser("field", help="write a ratio-field CSV")
    f.add_argument("--check", default="gradient", choices=("gradient", "modulus", "heinz"))
    f.add_argument("--map", default="extremal", help="extremal | constant:VALUE | random:SEED")
    f.add_argument("--grid", default="64,128,0.99")
    f.add_argument("--out", type=Path, required=True)
    return p


def _cmd_verify(args) -> int:
    cfg = RunConfig(suite=args.suite, seed=args.seed, trials=args.trials,
                    grid=GridSpec.parse(args.grid), tolerances=_parse_tol(args.tol),
                    output=args.out, format=args.format)
    summary = run_suite(cfg)
    sys.stdout.write(summary_text(summary))
    if not summary.coverage_ok:
        return EXIT_FAIL
    return EXIT_OK if summary.total_failures == 0 else EXIT_FAIL


def _cmd_distance(args) -> int:
    if args.disk:
        zr, zi, wr, wi = _floats(args.disk, 4)
        z, w = complex(zr, zi), complex(wr, wi)
        if abs(z) >= 1 or abs(w) >= 1:
            raise ConfigError("disk points must satisfy |z| < 1")
        rho = float(pseudo_hyperbolic(z, w))
        print(f"pseudo_hyperbolic={format_float(rho)}")
        print(f"hyperbolic={format_float(float(hyperbolic_distance(z, w)))}")
    else:
        x, y = _floats(args.interval, 2)
        try:
            d = float(interval_hyperbolic_distance(x, y))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        print(f"interval_hyperbolic={format_float(d)}")
    return EXIT_OK


def _cmd_extend(args) -> int:
    b = load_boundary(args.boundary)
    zr, zi = _floats(args.at, 2)
    z = complex(zr, zi)
    if abs(z) >= 1:
        raise ConfigError("evaluation point must lie inside the disk")
    if args.backend == "series":
        vals = HarmonicMap.from_boundary(b, args.degree).evaluate(z).ravel()
    else:
        vals = np.atleast_1d(poisson_extend_quadrature(b, z, args.nodes)).ravel()
    for i, v in enumerate(vals):
        if np.iscomplexobj(vals):
            print(f"f[{i}]={format_float(float(v.real))},{format_float(float(v.imag))}")
        else:
            print(f"f[{i}]={format_float(float(v))}")
    return EXIT_OK


def _cmd_counterexample(args) -> int:
    radii = auto_radii() if args.radii == "auto" else _floats(args.radii)
    try:
        rows = counterexample_radial_scan(radii)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    lines = ["r,modulus,gradient,bound_ratio,growth,dilatation"]
    lines += [",".join(format_float(x) for x in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _field_map(spec: str):
    kind, _, arg = spec.partition(":")
    if kind == "extremal":
        return ExtremalMap()
    if kind == "constant":
        return HarmonicMap([[float(arg or 0.5)]])
    if kind == "random":
        return gen_random_map(RandomFamilySpec("real_scalar", 16), int(arg or 0))
    raise ConfigError(f"unknown map source {spec!r}")


def _cmd_field(args) -> int:
    rf = ratio_field(_field_map(args.map), GridSpec.parse(args.grid), args.check)
    rf.write_csv(args.out)
    print(f"max_ratio={format_float(rf.max_ratio)}")
    print(f"argmax={format_float(rf.argmax.real)},{format_float(rf.argmax.imag)}")
    return EXIT_OK


COMMANDS = {
    "verify": _cmd_verify,
    "distance": _cmd_distance,
    "extend": _cmd_extend,
    "counterexample": _cmd_counterexample,
    "field": _cmd_field,
}


_COORD_FLAGS = ("--disk", "--interval", "--at", "--radii", "--grid")


def _attach_negative_values(argv):
    # argparse reads "-0.3,0.3" as an option; bind it to the preceding flag
    out = []
    it = iter(argv)
    for a in it:
        if a in _COORD_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(a)
            elif nxt.startswith("-") and nxt[1:2].isdigit() or nxt.startswith("-."):
                out.append(f"{a}={nxt}")
            else:
                out.extend([a, nxt])
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_attach_negative_values(argv))
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
