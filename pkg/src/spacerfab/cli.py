"""Command-line front end: scene generation, inspection, equilibrium
solving, animation, mesh export, reports and the HTTP service."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from pathlib import Path

from . import params as params_mod
from .geometry import FabricSpec
from .scene_io import (
    animate,
    decode_scene_json,
    encode_scene_json,
    export_obj,
    fabric_spec_from_dict,
    generate_scene,
)
from .spacer_math import (
    Orientation,
    solve_float_count,
)


def _add_spec_flags(p: argparse.ArgumentParser) -> None:
    d = params_mod.DEFAULTS
    p.add_argument("--gauge", type=float, default=None, help=f"machine gauge, stitches/inch (default {d['gauge']})")
    p.add_argument("--sigma", type=float, default=None, help=f"horizontal shrink factor (default {d['sigma']})")
    p.add_argument("--tau", type=float, default=None, help=f"vertical shrink factor (default {d['tau']})")
    p.add_argument("--bed", type=float, default=None, help=f"needle-bed distance, mm (default {d['bed']})")
    p.add_argument("--v", type=float, default=None, help=f"course height, mm (default {d['v']})")
    p.add_argument("--wales", type=int, default=None, help=f"panel width in wales (default {d['wales']})")
    p.add_argument("--courses", type=int, default=None, help=f"panel height in courses (default {d['courses']})")
    p.add_argument("--m", type=int, default=None, help=f"float count of the horizontal spacer family (default {d['m']})")
    p.add_argument("--n", type=int, default=None, help="float count of a vertical spacer family (omit for none)")
    p.add_argument("--shift", type=int, default=None, help="wale shift per hop of the vertical family (default 0)")
    p.add_argument("--override", type=float, default=None, help="force the inter-panel distance, mm")
    p.add_argument("--spec", type=Path, default=None, help="JSON fabric spec file (overrides the flat flags)")


def _spec_from_args(args: argparse.Namespace) -> FabricSpec:
    if args.spec is not None:
        with open(args.spec) as fh:
            return fabric_spec_from_dict(json.load(fh))
    raw = {
        k: getattr(args, k)
        for k in ("gauge", "sigma", "tau", "bed", "v", "wales", "courses",
                  "m", "n", "shift", "override")
        if getattr(args, k) is not None
    }
    return params_mod.spec_from_params(params_mod.coerce_params(raw))


def _write_atomic(path: Path, text: str) -> None:
    # write-to-temp then rename: no partial files on error
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_generate(args) -> int:
    spec = _spec_from_args(args)
    scene = generate_scene(spec)
    _write_atomic(args.out, encode_scene_json(scene))
    print(f"wrote {args.out}")
    return 0


def _fmt_num(v: float, fmt: str) -> str:
    s = f"{v:{fmt}}"
    return s[1:] if s.startswith("-") and float(s) == 0.0 else s


def _print_value(name: str, values, fmt: str) -> None:
    if len(values) == 1:
        print(f"{name} = {_fmt_num(values[0], fmt)}")
    else:
        for i, v in enumerate(values):
            print(f"{name}[{i}] = {_fmt_num(v, fmt)}")


def cmd_inspect(args) -> int:
    spec = _spec_from_args(args)
    scene = generate_scene(spec)
    c = scene.computed
    _print_value("B_family_mm", c.b_per_family, ".6f")
    print(f"B_actual_mm = {_fmt_num(c.b_actual, '.6f')}")
    print(f"equilibrium_residual_mm2 = {_fmt_num(c.equilibrium_residual, '.6f')}")
    _print_value("inclination_deg", [math.degrees(a) for a in c.inclination_angles], ".2f")
    _print_value("strain", c.strains, ".6f")
    if scene.collisions:
        print(f"collisions = {len(scene.collisions)}")
    return 0


def cmd_equilibrium(args) -> int:
    spec = _spec_from_args(args)
    h_fams = [f for f in spec.families if f.orientation is Orientation.COURSE_PARALLEL]
    v_fams = [f for f in spec.families if f.orientation is Orientation.WALE_PARALLEL]
    if args.solve_for == "m":
        if not v_fams:
            print("error: n: a vertical family (--n) is required to solve for m",
                  file=sys.stderr)
            return 2
        known = v_fams[0]
        shift = 0
    else:
        if not h_fams:
            print("error: m: a horizontal family is required to solve for n",
                  file=sys.stderr)
            return 2
        known = h_fams[0]
        shift = v_fams[0].wale_shift if v_fams else (args.shift or 0)
    sol = solve_float_count(known, spec.machine, spec.relax, args.solve_for,
                            wale_shift=shift)
    if not sol.feasible:
        print(f"error: {sol.reason}", file=sys.stderr)
        return 1
    print(f"{sol.solve_for}_real = {sol.real_value:.6f}")
    for k, res in sol.candidates:
        print(f"candidate {sol.solve_for} = {k}, residual_mm2 = {res:.6f}")
    return 0


def cmd_animate(args) -> int:
    spec = _spec_from_args(args)
    seq = animate(spec, args.sigma_from, args.sigma_to, args.frames)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for i, scene in enumerate(seq.frames):
        _write_atomic(args.out_dir / f"frame_{i:04d}.json", encode_scene_json(scene))
    print(f"wrote {len(seq.frames)} frames to {args.out_dir}")
    return 0


def cmd_export(args) -> int:
    if args.format != "obj":
        print(f"error: format: unknown format {args.format!r} (supported: obj)",
              file=sys.stderr)
        return 2
    scene = decode_scene_json(args.scene.read_text())
    segments = scene.meta.spec.get("tube_segments", 8)
    _write_atomic(args.out, export_obj(scene, segments))
    print(f"wrote {args.out}")
    return 0


def cmd_report(args) -> int:
    from .report import write_report

    spec = _spec_from_args(args)
    written = write_report(spec, args.out_dir, sigma_from=args.sigma_from,
                           sigma_to=args.sigma_to, steps=args.steps)
    for path in written:
        print(f"wrote {path}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    port = args.port
    if port is None:
        port = int(os.environ.get("SPACERFAB_PORT", "8787"))
    uvicorn.run(create_app(), host=args.host, port=port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="spacerfab",
        description="Parametric weft-knitted spacer fabric modeller",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("generate", help="Generate a scene JSON file")
    _add_spec_flags(g)
    g.add_argument("--out", type=Path, default=Path("scene.json"))
    g.set_defaults(func=cmd_generate)

    i = sub.add_parser("inspect", help="Print computed metrics for a configuration")
    _add_spec_flags(i)
    i.set_defaults(func=cmd_inspect)

    e = sub.add_parser("equilibrium", help="Solve the float-count equilibrium")
    _add_spec_flags(e)
    e.add_argument("--solve-for", choices=("m", "n"), required=True)
    e.set_defaults(func=cmd_equilibrium)

    a = sub.add_parser("animate", help="Write a shrink-animation frame sequence")
    _add_spec_flags(a)
    a.add_argument("--frames", type=int, default=11)
    a.add_argument("--sigma-from", type=float, default=1.0)
    a.add_argument("--sigma-to", type=float, default=0.98)
    a.add_argument("--out-dir", type=Path, default=Path("frames"))
    a.set_defaults(func=cmd_animate)

    x = sub.add_parser("export", help="Export a scene file as a tube mesh")
    x.add_argument("scene", type=Path)
    x.add_argument("--format", default="obj")
    x.add_argument("--out", type=Path, default=Path("scene.obj"))
    x.set_defaults(func=cmd_export)

    r = sub.add_parser("report", help="Write metric tables (CSV) and figures (PNG)")
    _add_spec_flags(r)
    r.add_argument("--sigma-from", type=float, default=1.0)
    r.add_argument("--sigma-to", type=float, default=0.90)
    r.add_argument("--steps", type=int, default=21)
    r.add_argument("--out-dir", type=Path, default=Path("report"))
    r.set_defaults(func=cmd_report)

    s = sub.add_parser("serve", help="Run the HTTP scene service")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=None,
                   help="port (default: SPACERFAB_PORT or 8787)")
    s.set_defaults(func=cmd_serve)

    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
