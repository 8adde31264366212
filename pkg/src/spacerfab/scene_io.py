"""Deterministic scene data model: generation from a FabricSpec, canonical
JSON encoding/decoding, OBJ export and shrink-animation sequences.

The JSON encoding is canonical: fixed key order, every real printed with
exactly six decimal digits, no incidental whitespace. Identical specs
produce byte-identical documents.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

from .geometry import (
    CollisionRecord,
    FabricSpec,
    Polyline3,
    Point3,
    YarnRole,
    build_panel,
    build_spacer_paths,
    detect_collisions,
    solve_panel_distance,
    sweep_tube,
)
from .spacer_math import (
    DomainError,
    MachineGeometry,
    Orientation,
    RelaxationState,
    SpacerFamilySpec,
    equilibrium_residual,
    inclination_angle,
    triangle_for_family,
)

TOOL_VERSION = "0.1.0"


class SceneFormatError(ValueError):
    """A scene document does not match the schema; the message names the
    offending path."""


@dataclass(frozen=True)
class SceneYarn:
    role: str
    color: tuple[int, int, int]
    radius: float
    strain: float | None
    points: tuple[tuple[float, float, float], ...]


@dataclass(frozen=True)
class SceneMeta:
    version: str
    spec: dict
    frame: int


@dataclass(frozen=True)
class SceneComputed:
    b_per_family: tuple[float, ...]
    b_actual: float
    equilibrium_residual: float
    inclination_angles: tuple[float, ...]
    strains: tuple[float, ...]


@dataclass(frozen=True)
class Scene:
    meta: SceneMeta
    computed: SceneComputed
    yarns: tuple[SceneYarn, ...]
    collisions: tuple[CollisionRecord, ...]


def fabric_spec_to_dict(spec: FabricSpec) -> dict:
    return {
        "gauge": spec.machine.gauge,
        "stitch_width": spec.machine.stitch_width_mm,
        "course_height": spec.machine.course_height_mm,
        "bed_distance": spec.machine.bed_distance_mm,
        "sigma": spec.relax.sigma,
        "tau": spec.relax.tau,
        "wales": spec.wales,
        "courses": spec.courses,
        "loop_samples": spec.loop_samples,
        "tube_segments": spec.tube_segments,
        "panel_yarn_radius": spec.panel_yarn_radius_mm,
        "spacer_override_distance": spec.spacer_override_distance_mm,
        "families": [
            {
                "orientation": f.orientation.value,
                "float_count": f.float_count,
                "wale_shift": f.wale_shift,
                "start_wale": f.start_wale,
                "start_course": f.start_course,
                "yarn_radius": f.yarn_radius_mm,
            }
            for f in spec.families
        ],
    }


def fabric_spec_from_dict(d: dict) -> FabricSpec:
    families = tuple(
        SpacerFamilySpec(
            orientation=Orientation(f["orientation"]),
            float_count=int(f["float_count"]),
            wale_shift=int(f.get("wale_shift", 0)),
            start_wale=int(f.get("start_wale", 0)),
            start_course=int(f.get("start_course", 0)),
            yarn_radius_mm=float(f.get("yarn_radius", 0.2)),
        )
        for f in d["families"]
    )
    machine = MachineGeometry(
        gauge=float(d["gauge"]),
        stitch_width_mm=float(d["stitch_width"]),
        course_height_mm=float(d["course_height"]),
        bed_distance_mm=float(d["bed_distance"]),
    )
    override = d.get("spacer_override_distance")
    return FabricSpec(
        machine=machine,
        relax=RelaxationState(sigma=float(d["sigma"]), tau=float(d["tau"])),
        wales=int(d["wales"]),
        courses=int(d["courses"]),
        families=families,
        loop_samples=int(d.get("loop_samples", 20)),
        tube_segments=int(d.get("tube_segments", 8)),
        panel_yarn_radius_mm=float(d.get("panel_yarn_radius", 0.25)),
        spacer_override_distance_mm=None if override is None else float(override),
    )


def generate_scene(spec: FabricSpec, frame: int = 0, version: str = TOOL_VERSION) -> Scene:
    """Build the full renderable scene: both panels, all spacer families,
    computed metrics and collision records (clearance 0)."""
    dist = solve_panel_distance(spec)
    lower = build_panel(spec, "lower", 0.0)
    upper = build_panel(spec, "upper", dist.b_actual)
    spacers = build_spacer_paths(spec, dist.b_actual)
    collisions = detect_collisions(spacers, clearance=0.0)

    h_fams = [f for f in spec.families if f.orientation is Orientation.COURSE_PARALLEL]
    v_fams = [f for f in spec.families if f.orientation is Orientation.WALE_PARALLEL]
    residual = (
        equilibrium_residual(h_fams[0], v_fams[0], spec.machine, spec.relax)
        if h_fams and v_fams
        else 0.0
    )
    angles = tuple(
        inclination_angle(triangle_for_family(f, spec.machine, spec.relax))
        for f in spec.families
    )

    yarns = []
    for yp in lower + upper:
        yarns.append(
            SceneYarn(
                role=yp.role.value,
                color=yp.color,
                radius=yp.radius_mm,
                strain=None,
                points=tuple((p.x, p.y, p.z) for p in yp.path.points),
            )
        )
    for sp in spacers:
        yarns.append(
            SceneYarn(
                role=sp.yarn.role.value,
                color=sp.yarn.color,
                radius=sp.yarn.radius_mm,
                strain=sp.strain,
                points=tuple((p.x, p.y, p.z) for p in sp.yarn.path.points),
            )
        )

    return Scene(
        meta=SceneMeta(version=version, spec=fabric_spec_to_dict(spec), frame=frame),
        computed=SceneComputed(
            b_per_family=dist.b_per_family,
            b_actual=dist.b_actual,
            equilibrium_residual=residual,
            inclination_angles=angles,
            strains=tuple(s.strain for s in spacers),
        ),
        yarns=tuple(yarns),
        collisions=tuple(collisions),
    )


@dataclass(frozen=True)
class AnimationSequence:
    frames: tuple[Scene, ...]
    sigma_values: tuple[float, ...]


def animate(
    spec: FabricSpec, sigma_from: float, sigma_to: float, frames: int
) -> AnimationSequence:
    """Scenes along a linear sigma ramp, endpoints inclusive."""
    if frames < 1:
        raise DomainError(f"frames: must be >= 1, got {frames}")
    if not (0.0 < sigma_to <= sigma_from <= 1.0):
        raise DomainError(
            f"sigma range: need 0 < sigma_to <= sigma_from <= 1, got "
            f"{sigma_from} -> {sigma_to}"
        )
    if frames > 1 and sigma_to == sigma_from:
        raise DomainError("sigma range: endpoints must differ for more than one frame")
    if frames == 1:
        sigmas = [sigma_from]
    else:
        step = (sigma_to - sigma_from) / (frames - 1)
        sigmas = [sigma_from + i * step for i in range(frames)]
        sigmas[-1] = sigma_to
    scenes = []
    for i, s in enumerate(sigmas):
        frame_spec = replace(spec, relax=replace(spec.relax, sigma=s))
        scenes.append(generate_scene(frame_spec, frame=i))
    return AnimationSequence(frames=tuple(scenes), sigma_values=tuple(sigmas))


def _fmt(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _enc_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _fmt(v)
    if isinstance(v, str):
        return json.dumps(v)
    raise TypeError(f"unencodable value: {v!r}")


def _enc_spec(spec: dict) -> str:
    parts = []
    for key in (
        "gauge", "stitch_width", "course_height", "bed_distance", "sigma", "tau",
        "wales", "courses", "loop_samples", "tube_segments", "panel_yarn_radius",
        "spacer_override_distance",
    ):
        parts.append(f'"{key}":{_enc_value(spec[key])}')
    fams = []
    for f in spec["families"]:
        fams.append(
            "{" + ",".join(
                f'"{k}":{_enc_value(f[k])}'
                for k in (
                    "orientation", "float_count", "wale_shift",
                    "start_wale", "start_course", "yarn_radius",
                )
            ) + "}"
        )
    parts.append('"families":[' + ",".join(fams) + "]")
    return "{" + ",".join(parts) + "}"


def encode_scene_json(scene: Scene) -> str:
    """Canonical scene JSON; byte-identical for identical scenes."""
    meta = (
        '{"version":' + _enc_value(scene.meta.version)
        + ',"spec":' + _enc_spec(scene.meta.spec)
        + ',"frame":' + str(scene.meta.frame) + "}"
    )
    c = scene.computed
    computed = (
        '{"b_per_family":[' + ",".join(_fmt(v) for v in c.b_per_family) + "]"
        + ',"b_actual":' + _fmt(c.b_actual)
        + ',"equilibrium_residual":' + _fmt(c.equilibrium_residual)
        + ',"inclination_angles":[' + ",".join(_fmt(v) for v in c.inclination_angles) + "]"
        + ',"strains":[' + ",".join(_fmt(v) for v in c.strains) + "]}"
    )
    yarns = []
    for y in scene.yarns:
        pts = ",".join(f"[{_fmt(x)},{_fmt(yy)},{_fmt(z)}]" for x, yy, z in y.points)
        strain_part = "" if y.strain is None else ',"strain":' + _fmt(y.strain)
        yarns.append(
            '{"role":' + json.dumps(y.role)
            + ',"color":[' + ",".join(str(ch) for ch in y.color) + "]"
            + ',"radius":' + _fmt(y.radius)
            + strain_part
            + ',"points":[' + pts + "]}"
        )
    collisions = []
    for rec in scene.collisions:
        collisions.append(
            '{"families":[' + f"{rec.families[0]},{rec.families[1]}" + "]"
            + ',"segments":[' + f"{rec.segments[0]},{rec.segments[1]}" + "]"
            + ',"distance":' + _fmt(rec.distance) + "}"
        )
    return (
        '{"meta":' + meta
        + ',"computed":' + computed
        + ',"yarns":[' + ",".join(yarns) + "]"
        + ',"collisions":[' + ",".join(collisions) + "]}"
    )


def _expect(container, key, kind, path: str):
    if isinstance(container, dict):
        if key not in container:
            raise SceneFormatError(f"{path}: missing key")
        value = container[key]
    else:
        value = container[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SceneFormatError(f"{path}: expected a number, got {type(value).__name__}")
        return float(value)
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise SceneFormatError(
            f"{path}: expected {kind.__name__}, got {type(value).__name__}"
        )
    return value


def _float_list(container, key, path: str) -> tuple[float, ...]:
    raw = _expect(container, key, list, path)
    return tuple(_expect(raw, i, float, f"{path}[{i}]") for i in range(len(raw)))


def decode_scene_json(text: str) -> Scene:
    """Parse and validate a scene document; schema violations raise
    SceneFormatError naming the offending path."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneFormatError(f"document: not valid JSON ({exc.msg})") from exc
    if not isinstance(doc, dict):
        raise SceneFormatError("document: expected an object at top level")

    meta_raw = _expect(doc, "meta", dict, "meta")
    meta = SceneMeta(
        version=_expect(meta_raw, "version", str, "meta.version"),
        spec=_expect(meta_raw, "spec", dict, "meta.spec"),
        frame=_expect(meta_raw, "frame", int, "meta.frame"),
    )

    comp_raw = _expect(doc, "computed", dict, "computed")
    computed = SceneComputed(
        b_per_family=_float_list(comp_raw, "b_per_family", "computed.b_per_family"),
        b_actual=_expect(comp_raw, "b_actual", float, "computed.b_actual"),
        equilibrium_residual=_expect(
            comp_raw, "equilibrium_residual", float, "computed.equilibrium_residual"
        ),
        inclination_angles=_float_list(
            comp_raw, "inclination_angles", "computed.inclination_angles"
        ),
        strains=_float_list(comp_raw, "strains", "computed.strains"),
    )

    yarns_raw = _expect(doc, "yarns", list, "yarns")
    yarns = []
    valid_roles = {r.value for r in YarnRole}
    for i, y in enumerate(yarns_raw):
        path = f"yarns[{i}]"
        if not isinstance(y, dict):
            raise SceneFormatError(f"{path}: expected an object")
        role = _expect(y, "role", str, f"{path}.role")
        if role not in valid_roles:
            raise SceneFormatError(f"{path}.role: unknown role {role!r}")
        color_raw = _expect(y, "color", list, f"{path}.color")
        if len(color_raw) != 3:
            raise SceneFormatError(f"{path}.color: expected 3 channels")
        color = tuple(
            _expect(color_raw, k, int, f"{path}.color[{k}]") for k in range(3)
        )
        radius = _expect(y, "radius", float, f"{path}.radius")
        strain = None
        if "strain" in y:
            strain = _expect(y, "strain", float, f"{path}.strain")
        pts_raw = _expect(y, "points", list, f"{path}.points")
        if len(pts_raw) < 2:
            raise SceneFormatError(f"{path}.points: a yarn needs at least 2 points")
        points = []
        for k, p in enumerate(pts_raw):
            if not isinstance(p, list) or len(p) != 3:
                raise SceneFormatError(f"{path}.points[{k}]: expected [x, y, z]")
            points.append(
                tuple(_expect(p, ax, float, f"{path}.points[{k}][{ax}]") for ax in range(3))
            )
        yarns.append(
            SceneYarn(role=role, color=color, radius=radius, strain=strain,
                      points=tuple(points))
        )

    colls_raw = _expect(doc, "collisions", list, "collisions")
    collisions = []
    for i, rec in enumerate(colls_raw):
        path = f"collisions[{i}]"
        if not isinstance(rec, dict):
            raise SceneFormatError(f"{path}: expected an object")
        fams = _expect(rec, "families", list, f"{path}.families")
        segs = _expect(rec, "segments", list, f"{path}.segments")
        if len(fams) != 2 or len(segs) != 2:
            raise SceneFormatError(f"{path}: families/segments must be index pairs")
        collisions.append(
            CollisionRecord(
                families=(
                    _expect(fams, 0, int, f"{path}.families[0]"),
                    _expect(fams, 1, int, f"{path}.families[1]"),
                ),
                segments=(
                    _expect(segs, 0, int, f"{path}.segments[0]"),
                    _expect(segs, 1, int, f"{path}.segments[1]"),
                ),
                distance=_expect(rec, "distance", float, f"{path}.distance"),
            )
        )

    return Scene(meta=meta, computed=computed, yarns=tuple(yarns),
                 collisions=tuple(collisions))


def export_obj(scene: Scene, segments: int) -> str:
    """ASCII OBJ with one object per yarn; tubes swept at the scene's
    radii, faces 1-indexed, materials named after RGB colors."""
    lines = [f"# spacer fabric scene, {len(scene.yarns)} yarns"]
    offset = 1
    for i, y in enumerate(scene.yarns):
        mesh = sweep_tube(
            Polyline3(tuple(Point3(*p) for p in y.points)), y.radius, segments
        )
        lines.append(f"o yarn_{i:03d}")
        lines.append(f"usemtl rgb_{y.color[0]}_{y.color[1]}_{y.color[2]}")
        for v in mesh.vertices:
            lines.append(f"v {_fmt(v.x)} {_fmt(v.y)} {_fmt(v.z)}")
        for a, b, c in mesh.triangles:
            lines.append(f"f {offset + a} {offset + b} {offset + c}")
        offset += len(mesh.vertices)
    return "\n".join(lines) + "\n"
