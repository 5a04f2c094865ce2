"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (not a frame, identity
violated), 2 malformed input.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import formats
from .errors import GaborError, NotAFrameError, SchemaError
from .gabor import GaborSystem, frame_bounds
from .group import GroupSpec, adjoint_subgroup, enumerate_subgroup, is_isotropic, minimal_generators
from .spreading import spreading_of
from .tfa import Signal
from .verify import run_suite
from .windows import canonical_dual, canonical_tight

DEFAULT_TOL = 1e-10
TOL_ENV = "FINITE_GABOR_TOL"

EXIT_OK, EXIT_MATH, EXIT_INPUT = 0, 1, 2


@dataclass
class CliConfig:
    group: list[int] | None = None
    tolerance: float = DEFAULT_TOL
    seed: int = 0
    output_format: str = "json"
    inputs: list[str] = field(default_factory=list)
    output: str | None = None


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError as exc:
        raise SchemaError(f"{TOL_ENV}={raw!r} is not a number") from exc


def _config(args) -> CliConfig:
    tol = args.tol if args.tol is not None else _default_tol()
    if not tol > 0:
        raise SchemaError(f"tolerance must be positive, got {tol}")
    group = None
    if args.group is not None:
        group = list(formats.parse_group(args.group).orders)
    inputs = list(args.window or [])
    return CliConfig(group, tol, args.seed, args.format or "table", inputs, args.out)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _require_group(args) -> GroupSpec:
    if args.group is None:
        raise SchemaError("--group is required")
    return formats.parse_group(args.group)


def _load_windows(args) -> list[Signal]:
    windows = [formats.signal_from_json(formats.read_json(p)) for p in args.window or []]
    if args.windows:
        data = formats.read_json(args.windows)
        if not isinstance(data, list):
            raise SchemaError(f"{args.windows} must hold a JSON list of signals")
        windows += [formats.signal_from_json(obj) for obj in data]
    if not windows:
        raise SchemaError("no window given (use --window or --windows)")
    group = windows[0].group
    if args.group is not None and formats.parse_group(args.group) != group:
        raise SchemaError(f"--group {args.group} does not match window group {list(group.orders)}")
    for w in windows[1:]:
        if w.group != group:
            raise SchemaError("all windows must live on the same group")
    return windows


def _lattice(args, group: GroupSpec):
    return enumerate_subgroup(group, formats.parse_generators(args.gens or "", group))


def _points(points) -> list[list[int]]:
    return [list(p.time) + list(p.freq) for p in points]


def cmd_info(args) -> int:
    G = _require_group(args)
    lat = _lattice(args, G)
    adj = adjoint_subgroup(lat)
    report = {
        "group": list(G.orders),
        "group_order": G.order,
        "lattice_size": lat.size,
        "lattice_generators": _points(lat.generators),
        "adjoint_size": adj.size,
        "adjoint_generators": _points(minimal_generators(G, adj.indices)),
        "size_product": lat.size * adj.size,
        "size_product_ok": lat.size * adj.size == G.order**2,
        "isotropic": is_isotropic(lat),
        "adjoint_isotropic": is_isotropic(adj),
    }
    _emit(formats.dumps(report), args.out)
    return EXIT_OK


def _window_command(args, tight: bool) -> int:
    (g,) = _load_windows(args)[:1]
    lat = _lattice(args, g.group)
    try:
        if tight:
            h = canonical_tight(g, lat)
            diag = frame_bounds(GaborSystem((h,), lat))
            report = {"diagnostics": frame_bounds(GaborSystem((g,), lat)).as_dict(), "tight_bounds": diag.as_dict()}
        else:
            res = canonical_dual(g, lat)
            h = res.window
            report = {"diagnostics": frame_bounds(GaborSystem((g,), lat)).as_dict(), "residual": res.residual}
    except NotAFrameError as exc:
        sys.stderr.write(f"error: {exc}\n")
        sys.stdout.write(formats.dumps({"diagnostics": exc.diagnostics.as_dict()}))
        return EXIT_MATH
    if args.out:
        Path(args.out).write_text(formats.dumps(formats.signal_to_json(h)))
    else:
        report["window"] = formats.signal_to_json(h)
    sys.stdout.write(formats.dumps(report))
    return EXIT_OK


def cmd_dual(args) -> int:
    return _window_command(args, tight=False)


def cmd_tight(args) -> int:
    return _window_command(args, tight=True)


def cmd_bounds(args) -> int:
    windows = _load_windows(args)
    lat = _lattice(args, windows[0].group)
    diag = frame_bounds(GaborSystem(tuple(windows), lat))
    report = diag.as_dict()
    report["windows"] = len(windows)
    report["lattice_size"] = lat.size
    _emit(formats.dumps(report), args.out)
    return EXIT_OK


def cmd_spreading(args) -> int:
    if not args.matrix:
        raise SchemaError("--matrix is required")
    G, A = formats.matrix_from_json(formats.read_json(args.matrix))
    if args.group is not None and formats.parse_group(args.group) != G:
        raise SchemaError(f"--group {args.group} does not match matrix group {list(G.orders)}")
    eta = spreading_of(A, G)
    if (args.format or "csv") == "csv":
        text = formats.spreading_csv(eta, reference=float(np.linalg.norm(A) ** 2 / G.order))
    else:
        text = formats.dumps({"group": list(G.orders), "re": eta.values.real.tolist(), "im": eta.values.imag.tolist()})
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    G = _require_group(args)
    results = run_suite(G, seed=cfg.seed)
    failed = [r for r in results if not r.passed(cfg.tolerance)]
    if cfg.output_format == "json":
        text = formats.dumps(
            {
                "group": list(G.orders),
                "seed": cfg.seed,
                "tolerance": cfg.tolerance,
                "results": [
                    {"name": r.name, "residual": r.residual, "passed": r.passed(cfg.tolerance)} for r in results
                ],
                "all_passed": not failed,
            }
        )
    else:
        width = max(len(r.name) for r in results)
        lines = [f"{'identity':<{width}}  {'max residual':>12}  status"]
        for r in results:
            lines.append(f"{r.name:<{width}}  {r.residual:12.3e}  {'PASS' if r.passed(cfg.tolerance) else 'FAIL'}")
        text = "\n".join(lines) + "\n"
    _emit(text, cfg.output)
    if failed:
        names = ", ".join(f"{r.name}={r.residual:.3e}" for r in failed)
        sys.stderr.write(f"identities above tolerance {cfg.tolerance:g}: {names}\n")
        return EXIT_MATH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finite-gabor", description="Gabor analysis on finite abelian groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--group", help="cyclic orders, comma separated, e.g. 2,3")
        p.add_argument("--gens", default="", help='lattice generators "k..,r..;k..,r.."')
        p.add_argument("--window", action="append", help="signal JSON file (repeatable)")
        p.add_argument("--windows", help="JSON file holding a list of signals")
        p.add_argument("--matrix", help="matrix JSON file")
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--tol", type=float, default=None, help=f"tolerance (default {DEFAULT_TOL:g} or ${TOL_ENV})")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=["json", "csv", "table"], default=None)
        return p

    for name, fn, text in [
        ("info", cmd_info, "lattice and adjoint lattice summary"),
        ("dual", cmd_dual, "canonical dual window"),
        ("tight", cmd_tight, "canonical tight window"),
        ("bounds", cmd_bounds, "frame bounds of a (multi-window) Gabor system"),
        ("spreading", cmd_spreading, "spreading function of a matrix"),
        ("verify", cmd_verify, "run the seeded identity suite"),
    ]:
        common(sub.add_parser(name, help=text)).set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        _config(args)
        return args.func(args)
    except NotAFrameError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_MATH
    except (GaborError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
