"""Command-line surface: build balls, solve the charge equation, emit
tile alphabets, verify patches, and produce aperiodicity certificates.

All data files are JSON written in one canonical form (sorted keys,
two-space indent, trailing newline) so identical invocations produce
byte-identical bytes; DOT and SVG are presentation-only exports.  Exit
codes: 0 success / property holds, 1 a checked property failed (bad
tiling, unsolvable system, FAIL or INCOMPLETE certificate, residual
outside the designated boundary), 2 usage or validation errors, 3 a
resource cap was hit.

Caps can also come from the environment (COARSETILER_CAP_VERTICES,
COARSETILER_CAP_ELEMENTS, COARSETILER_CAP_DEPTH); explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .automaton import (DEFAULT_DEPTH_CAP, PRESET_NAMES, AutomatonSpec,
                        dump_automaton, load_preset, parse_automaton)
from .cayley import (DEFAULT_VERTEX_CAP, ball_to_json, build_ball,
                     toy_from_json)
from .errors import (ResourceCapError, TilerError, UnsolvableOnClosedGraph,
                     ValidationError)
from .exporting import ball_to_dot, export_dot, tileset_to_svg
from .homology import Chain0, fundamental_class, residual, solve_on_ball
from .quotients import DEFAULT_ELEMENT_CAP, aperiodicity_certificate
from .tiles import build_patch, decorate, patch_from_json, patch_to_json, \
    tiles_to_json, verify_tiling

EXIT_OK = 0
EXIT_PROPERTY_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3

_ENV_CAPS = {
    "cap_vertices": ("COARSETILER_CAP_VERTICES", DEFAULT_VERTEX_CAP),
    "cap_elements": ("COARSETILER_CAP_ELEMENTS", DEFAULT_ELEMENT_CAP),
    "cap_depth": ("COARSETILER_CAP_DEPTH", DEFAULT_DEPTH_CAP),
}


@dataclass
class RunConfig:
    group: str | None = None
    spec_path: str | None = None
    radius: int = 0
    p: int = 2
    levels: tuple[int, ...] = ()
    toy_path: str | None = None
    c_source: str = "ones"
    out_dir: str | None = None
    dot: bool = False
    cap_vertices: int = DEFAULT_VERTEX_CAP
    cap_elements: int = DEFAULT_ELEMENT_CAP
    cap_depth: int = DEFAULT_DEPTH_CAP


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def _env_cap(key: str) -> int:
    name, default = _ENV_CAPS[key]
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValidationError(f"{name} must be an integer, got {raw!r}")
    if value <= 0:
        raise ValidationError(f"{name} must be positive, got {value}")
    return value


def _parse_levels(text: str) -> tuple[int, ...]:
    """"A..B" or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return tuple(range(lo, hi + 1))
        return (int(text),)
    except ValueError:
        raise ValidationError(f"--levels expects A..B or a single integer, got {text!r}")


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _load_spec(cfg: RunConfig) -> AutomatonSpec:
    if cfg.spec_path:
        try:
            text = Path(cfg.spec_path).read_text()
        except OSError as exc:
            raise ValidationError(f"cannot read --spec file: {exc}")
        return parse_automaton(text)
    if cfg.group:
        return load_preset(cfg.group)
    raise ValidationError("one of --group or --spec is required")


def _load_toy(path: str):
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ValidationError(f"cannot read --toy file: {exc}")
    except json.JSONDecodeError as exc:
        raise ValidationError(f"--toy file is not JSON: {exc}")
    return toy_from_json(doc)


def _write(out_dir: str | None, filename: str, text: str, stdout) -> None:
    if out_dir is None:
        stdout.write(text)
        return
    target = Path(out_dir)
    target.mkdir(parents=True, exist_ok=True)
    (target / filename).write_text(text)


def _charge_from_source(source: str, n: int, p: int) -> Chain0:
    if source == "ones":
        return fundamental_class(n, p)
    if source == "zero":
        return Chain0(p, {})
    try:
        doc = json.loads(Path(source).read_text())
    except OSError as exc:
        raise ValidationError(f"cannot read --c file: {exc}")
    except json.JSONDecodeError as exc:
        raise ValidationError(f"--c file is not JSON: {exc}")
    chain = Chain0.from_json(doc)
    if chain.p != p:
        raise ValidationError(f"--c file has p={chain.p}, command asked for p={p}")
    return chain


def cmd_ball(cfg: RunConfig, stdout) -> int:
    spec = _load_spec(cfg)
    ball = build_ball(spec, cfg.radius, cap_vertices=cfg.cap_vertices)
    _write(cfg.out_dir, "ball.json", canonical_json(ball_to_json(ball)), stdout)
    if cfg.dot:
        _write(cfg.out_dir, "ball.dot", ball_to_dot(ball), stdout)
    return EXIT_OK


def cmd_solve(cfg: RunConfig, stdout) -> int:
    if cfg.toy_path:
        graph = _load_toy(cfg.toy_path)
        n = graph.n_vertices
        designated = graph.boundary
        meta = {}
    else:
        spec = _load_spec(cfg)
        graph = build_ball(spec, cfg.radius, cap_vertices=cfg.cap_vertices)
        n = graph.n_vertices
        designated = frozenset(graph.sphere)
        meta = {"group": spec.preset_id or "custom", "radius": cfg.radius}
    c = _charge_from_source(cfg.c_source, n, cfg.p)
    psi = solve_on_ball(graph, c)
    left_over = sorted(residual(graph, psi, c))
    ok = set(left_over) <= set(designated)
    doc = dict(meta, p=cfg.p, psi=psi.to_json(), residual=left_over, ok=ok)
    _write(cfg.out_dir, "solution.json", canonical_json(doc), stdout)
    return EXIT_OK if ok else EXIT_PROPERTY_FAILED


def cmd_tiles(cfg: RunConfig, stdout) -> int:
    spec = _load_spec(cfg)
    ball = build_ball(spec, cfg.radius, cap_vertices=cfg.cap_vertices)
    c = fundamental_class(ball.n_vertices, cfg.p)
    psi = solve_on_ball(ball, c)
    assignment, tileset = decorate(ball, psi)
    patch = build_patch(ball, psi)
    _write(cfg.out_dir, "tiles.json",
           canonical_json(tiles_to_json(tileset, assignment)), stdout)
    _write(cfg.out_dir, "patch.json",
           canonical_json(patch_to_json(patch, cfg.p)), stdout)
    _write(cfg.out_dir, "tiles.svg", tileset_to_svg(tileset), stdout)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, patch_path: str, stdout) -> int:
    try:
        doc = json.loads(Path(patch_path).read_text())
    except OSError as exc:
        raise ValidationError(f"cannot read patch file: {exc}")
    except json.JSONDecodeError as exc:
        raise ValidationError(f"patch file is not JSON: {exc}")
    patch, p_stored = patch_from_json(doc)
    p = cfg.p or p_stored
    report = verify_tiling(patch, p)
    _write(cfg.out_dir, "verification.json", canonical_json(report.to_json()), stdout)
    return EXIT_OK if report.ok else EXIT_PROPERTY_FAILED


def cmd_certify(cfg: RunConfig, stdout) -> int:
    spec = _load_spec(cfg)
    report = aperiodicity_certificate(spec, cfg.p, cfg.levels,
                                      cap_elements=cfg.cap_elements,
                                      cap_depth=cfg.cap_depth)
    _write(cfg.out_dir, "certificate.json", canonical_json(report.to_json()), stdout)
    if cfg.out_dir is not None:
        _write(cfg.out_dir, "certificate.txt", report.to_text(), stdout)
    return EXIT_OK if report.verdict == "PASS" else EXIT_PROPERTY_FAILED


def cmd_export_dot(cfg: RunConfig, stdout) -> int:
    if cfg.toy_path:
        graph = _load_toy(cfg.toy_path)
    else:
        spec = _load_spec(cfg)
        graph = build_ball(spec, cfg.radius, cap_vertices=cfg.cap_vertices)
    _write(cfg.out_dir, "graph.dot", export_dot(graph), stdout)
    return EXIT_OK


def cmd_dump_preset(cfg: RunConfig, stdout) -> int:
    spec = _load_spec(cfg)
    _write(cfg.out_dir, "automaton.json", canonical_json(dump_automaton(spec)), stdout)
    return EXIT_OK


def _add_group_args(sub, radius=False, modulus=False, levels=False, toy=False, charge=False):
    sub.add_argument("--group", choices=None, metavar="NAME",
                     help=f"built-in preset name ({', '.join(PRESET_NAMES)})")
    sub.add_argument("--spec", dest="spec_path", metavar="FILE",
                     help="automaton description file (JSON)")
    if radius:
        sub.add_argument("-r", "--radius", type=_nonnegative, default=0,
                         help="word-length radius (default 0)")
    if modulus:
        sub.add_argument("-p", type=_positive, default=2, dest="p",
                         help="modulus (default 2)")
    if levels:
        sub.add_argument("--levels", default="1..2", metavar="A..B",
                         help="tree levels to check (default 1..2)")
    if toy:
        sub.add_argument("--toy", dest="toy_path", metavar="FILE",
                         help="explicit graph file instead of a ball")
    if charge:
        sub.add_argument("--c", dest="c_source", default="ones", metavar="FILE|zero|ones",
                         help="charge chain: a file, 'zero', or 'ones' (default)")
    sub.add_argument("--out", dest="out_dir", metavar="DIR",
                     help="write files into DIR instead of stdout")
    sub.add_argument("--cap-vertices", type=_positive, default=None,
                     help="ball enumeration cap")
    sub.add_argument("--cap-elements", type=_positive, default=None,
                     help="quotient enumeration cap")
    sub.add_argument("--cap-depth", type=_positive, default=None,
                     help="tree depth cap for level actions")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coarsetiler",
        description="Aperiodic decorated tiles from tree automaton groups.")
    commands = parser.add_subparsers(dest="command", required=True)

    _add_group_args(commands.add_parser(
        "ball", help="enumerate a word-length ball"), radius=True)
    commands.choices["ball"].add_argument(
        "--dot", action="store_true", help="also emit DOT")

    _add_group_args(commands.add_parser(
        "solve", help="solve the charge equation on a ball or toy graph"),
        radius=True, modulus=True, toy=True, charge=True)

    _add_group_args(commands.add_parser(
        "tiles", help="solve, decorate and emit the tile alphabet"),
        radius=True, modulus=True)

    verify = commands.add_parser("verify", help="check a patch file")
    verify.add_argument("patch", metavar="PATCH.json")
    verify.add_argument("-p", type=_positive, default=0, dest="p",
                        help="modulus (default: the patch file's)")
    verify.add_argument("--out", dest="out_dir", metavar="DIR")

    _add_group_args(commands.add_parser(
        "certify", help="finite-level aperiodicity certificate"),
        modulus=True, levels=True)

    _add_group_args(commands.add_parser(
        "export-dot", help="DOT rendering of a ball or toy graph"),
        radius=True, toy=True)

    _add_group_args(commands.add_parser(
        "dump-preset", help="print an automaton description"))
    return parser


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig()
    for field in ("group", "spec_path", "radius", "p", "toy_path",
                  "c_source", "out_dir", "dot"):
        if hasattr(args, field):
            value = getattr(args, field)
            if value is not None:
                setattr(cfg, field, value)
    if getattr(args, "levels", None) is not None:
        cfg.levels = _parse_levels(args.levels)
    for cap in ("cap_vertices", "cap_elements", "cap_depth"):
        flag = getattr(args, cap, None)
        setattr(cfg, cap, flag if flag is not None else _env_cap(cap))
    return cfg


_DISPATCH = {
    "ball": cmd_ball,
    "solve": cmd_solve,
    "tiles": cmd_tiles,
    "certify": cmd_certify,
    "export-dot": cmd_export_dot,
    "dump-preset": cmd_dump_preset,
}


def entry(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if args.command == "verify":
            return cmd_verify(cfg, args.patch, stdout)
        return _DISPATCH[args.command](cfg, stdout)
    except UnsolvableOnClosedGraph as exc:
        stderr.write(f"error: UnsolvableOnClosedGraph: {exc}\n")
        return EXIT_PROPERTY_FAILED
    except ResourceCapError as exc:
        bound = f" (needs more than {exc.lower_bound - 1})" if exc.lower_bound else ""
        stderr.write(f"error: resource cap exceeded: {exc}{bound}\n")
        return EXIT_CAP
    except ValidationError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except TilerError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_PROPERTY_FAILED


def main() -> None:
    raise SystemExit(entry())
