"""Explicit 3D yarn geometry: loop curves, panels, spacer zigzags, tube
meshes, strain coloring and collision detection.

Axes: x runs along a course (wale direction), y along the wales (course
direction), z through the fabric thickness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

from .spacer_math import (
    DomainError,
    MachineGeometry,
    Orientation,
    RelaxationState,
    SpacerFamilySpec,
    triangle_for_family,
)


class ParameterError(ValueError):
    """A construction parameter is out of range."""


class Point3(NamedTuple):
    x: float
    y: float
    z: float


def _dist(p: Point3, q: Point3) -> float:
    return math.sqrt((p.x - q.x) ** 2 + (p.y - q.y) ** 2 + (p.z - q.z) ** 2)


_COINCIDENT_TOL = 1e-9


@dataclass(frozen=True)
class Polyline3:
    points: tuple[Point3, ...]

    def __post_init__(self) -> None:
        if len(self.points) < 2:
            raise ParameterError("polyline: needs at least 2 points")
        for a, b in zip(self.points, self.points[1:]):
            if _dist(a, b) <= _COINCIDENT_TOL:
                raise ParameterError("polyline: consecutive points coincide")


class YarnRole(str, Enum):
    PANEL_UPPER = "panel_upper"
    PANEL_LOWER = "panel_lower"
    SPACER_H = "spacer_h"
    SPACER_V = "spacer_v"


RGB = tuple[int, int, int]

PANEL_LOWER_COLOR: RGB = (60, 90, 220)
PANEL_UPPER_COLOR: RGB = (60, 180, 90)
SPACER_YELLOW: RGB = (240, 200, 40)


@dataclass(frozen=True)
class YarnPath:
    path: Polyline3
    radius_mm: float
    role: YarnRole
    color: RGB

    def __post_init__(self) -> None:
        if not (self.radius_mm > 0):
            raise ParameterError(f"radius: must be > 0, got {self.radius_mm}")


@dataclass(frozen=True)
class FabricSpec:
    """Full fabric configuration: machine + relaxation + panel extent +
    spacer families + sampling resolution."""

    machine: MachineGeometry
    relax: RelaxationState
    wales: int
    courses: int
    families: tuple[SpacerFamilySpec, ...]
    loop_samples: int = 20
    tube_segments: int = 8
    panel_yarn_radius_mm: float = 0.25
    spacer_override_distance_mm: float | None = None

    def __post_init__(self) -> None:
        if self.wales < 2:
            raise DomainError(f"wales: must be >= 2, got {self.wales}")
        if self.courses < 1:
            raise DomainError(f"courses: must be >= 1, got {self.courses}")
        if self.loop_samples < 8:
            raise ParameterError(f"loop_samples: must be >= 8, got {self.loop_samples}")
        if self.tube_segments < 4:
            raise ParameterError(f"tube_segments: must be >= 4, got {self.tube_segments}")
        if not (self.panel_yarn_radius_mm > 0):
            raise DomainError("panel_yarn_radius: must be > 0")
        if self.spacer_override_distance_mm is not None and not (
            self.spacer_override_distance_mm > 0
        ):
            raise DomainError("override: spacer override distance must be > 0")
        for k, fam in enumerate(self.families):
            if fam.orientation is Orientation.COURSE_PARALLEL:
                if fam.float_count >= self.wales:
                    raise DomainError(
                        f"m: course_parallel float count {fam.float_count} must be "
                        f"< wales ({self.wales}) [family {k}]"
                    )
            else:
                if fam.float_count >= self.courses:
                    raise DomainError(
                        f"n: wale_parallel float count {fam.float_count} must be "
                        f"< courses ({self.courses}) [family {k}]"
                    )


@dataclass(frozen=True)
class StrainedSpacer:
    yarn: YarnPath
    rest_length_mm: float
    current_length_mm: float
    strain: float
    truncated: bool = False


@dataclass(frozen=True)
class TubeMesh:
    vertices: tuple[Point3, ...]
    triangles: tuple[tuple[int, int, int], ...]


# fraction of the head-arc radius used as the z-wobble at the leg crossings
_WOBBLE_FRACTION = 0.3
_HEAD_RADIUS_FRACTION = 0.2


def base_loop_curve(stitch_width: float, course_height: float, samples: int) -> Polyline3:
    """Canonical weft loop in the cell [0,H]x[0,V], z = 0 except for a
    small +-z wobble at the two leg endpoints where legs cross neighbours.

    Left leg (0.15H, 0) -> (0.3H, 0.6V); semicircular head of radius 0.2H
    centred on (0.5H, 0.6V); right leg mirrored. Uniformly sampled in a
    parameter that spends one third on each piece.
    """
    if samples < 8:
        raise ParameterError(f"loop_samples: must be >= 8, got {samples}")
    if not (stitch_width > 0 and course_height > 0):
        raise DomainError("stitch dimensions must be > 0")
    h, v = stitch_width, course_height
    r = _HEAD_RADIUS_FRACTION * h
    wobble = _WOBBLE_FRACTION * r

    pts = []
    for i in range(samples):
        t = i / (samples - 1)
        if t <= 1.0 / 3.0:
            u = 3.0 * t
            x = 0.15 * h + u * 0.15 * h
            y = u * 0.6 * v
        elif t <= 2.0 / 3.0:
            theta = math.pi * (1.0 - 3.0 * (t - 1.0 / 3.0))
            x = 0.5 * h + r * math.cos(theta)
            y = 0.6 * v + r * math.sin(theta)
        else:
            u = 3.0 * (t - 2.0 / 3.0)
            x = 0.7 * h + u * 0.15 * h
            y = (1.0 - u) * 0.6 * v
        z = 0.0
        if i == 0:
            z = wobble
        elif i == samples - 1:
            z = -wobble
        pts.append(Point3(x, y, z))
    return Polyline3(tuple(pts))


def build_panel(spec: FabricSpec, which: str, plane_z: float) -> list[YarnPath]:
    """One YarnPath per course: W loop copies translated to the shrunk
    stitch grid (i*sigma*H, j*tau*V) at the given z plane."""
    if which == "lower":
        role, color = YarnRole.PANEL_LOWER, PANEL_LOWER_COLOR
    elif which == "upper":
        role, color = YarnRole.PANEL_UPPER, PANEL_UPPER_COLOR
    else:
        raise ParameterError(f"which: expected 'upper' or 'lower', got {which!r}")

    h = spec.machine.stitch_width_mm
    v = spec.machine.course_height_mm
    sx = spec.relax.sigma * h
    sy = spec.relax.tau * v
    loop = base_loop_curve(h, v, spec.loop_samples).points

    paths = []
    for j in range(spec.courses):
        pts = []
        oy = j * sy
        for i in range(spec.wales):
            ox = i * sx
            pts.extend(Point3(p.x + ox, p.y + oy, p.z + plane_z) for p in loop)
        paths.append(YarnPath(Polyline3(tuple(pts)), spec.panel_yarn_radius_mm, role, color))
    return paths


# tuck hook proportions, relative to the shrunk stitch cell
_TUCK_APEX_FRACTION = 0.4
_TUCK_ENTRY_FRACTION = 0.15


def _spacer_anchors(
    fam: SpacerFamilySpec, wales: int, courses: int
) -> tuple[list[tuple[int, int]], bool]:
    """Stitch indices of successive tuck anchors, truncated at the panel
    edge (never wrapped)."""
    if fam.orientation is Orientation.COURSE_PARALLEL:
        dw, dc = fam.float_count, 0
    else:
        dw, dc = fam.wale_shift, fam.float_count
    anchors = []
    w, c = fam.start_wale, fam.start_course
    while w < wales and c < courses:
        anchors.append((w, c))
        w, c = w + dw, c + dc
    if len(anchors) < 2:
        raise DomainError(
            "family extends past panel bounds: fewer than two tuck anchors fit"
        )
    # truncated: the zigzag stops short of the panel's last stitch in its
    # hop direction because the next hop would overshoot the edge
    last_w, last_c = anchors[-1]
    if fam.orientation is Orientation.COURSE_PARALLEL:
        truncated = last_w < wales - 1
    else:
        truncated = last_c < courses - 1
    return anchors, truncated


def build_spacer_paths(spec: FabricSpec, b_actual: float) -> list[StrainedSpacer]:
    """Zigzag spacer yarns alternating between the two panels.

    Each tuck is a rigid 3-point hook in its panel plane; floats between
    hooks are straight. Strain compares the anchor-to-anchor hop chord at
    the actual panel distance with the rest hop length fixed at knitting
    time.
    """
    if not (b_actual > 0):
        raise DomainError(f"b_actual: must be > 0, got {b_actual}")
    h = spec.machine.stitch_width_mm
    v = spec.machine.course_height_mm
    sx = spec.relax.sigma * h
    sy = spec.relax.tau * v
    apex_dy = _TUCK_APEX_FRACTION * v
    entry_dx = _TUCK_ENTRY_FRACTION * sx

    spacers = []
    for fam in spec.families:
        anchors, truncated = _spacer_anchors(fam, spec.wales, spec.courses)
        role = (
            YarnRole.SPACER_H
            if fam.orientation is Orientation.COURSE_PARALLEL
            else YarnRole.SPACER_V
        )
        pts: list[Point3] = []
        anchor_pts = []
        for k, (w, c) in enumerate(anchors):
            z = 0.0 if k % 2 == 0 else b_actual
            ax, ay = w * sx, c * sy
            anchor_pts.append(Point3(ax, ay, z))
            pts.append(Point3(ax - entry_dx, ay, z))
            pts.append(Point3(ax, ay + apex_dy, z))
            pts.append(Point3(ax + entry_dx, ay, z))

        current = _dist(anchor_pts[0], anchor_pts[1])
        rest = triangle_for_family(fam, spec.machine, spec.relax).c_rest
        strain = current / rest
        color = SPACER_YELLOW if role is YarnRole.SPACER_H and abs(strain - 1.0) <= 1e-9 \
            else strain_to_color(strain)
        yarn = YarnPath(Polyline3(tuple(pts)), fam.yarn_radius_mm, role, color)
        spacers.append(
            StrainedSpacer(
                yarn=yarn,
                rest_length_mm=rest,
                current_length_mm=current,
                strain=strain,
                truncated=truncated,
            )
        )
    return spacers


@dataclass(frozen=True)
class PanelDistance:
    b_per_family: tuple[float, ...]
    b_actual: float


def solve_panel_distance(spec: FabricSpec) -> PanelDistance:
    """Panel distance each family demands, and the distance actually used:
    an explicit override if set, otherwise the smallest demand (slack
    families bow rather than compress the panels)."""
    if not spec.families:
        raise DomainError("families: at least one spacer family is required")
    per = tuple(
        triangle_for_family(f, spec.machine, spec.relax).b_relaxed for f in spec.families
    )
    b = spec.spacer_override_distance_mm
    if b is None:
        b = min(per)
    return PanelDistance(b_per_family=per, b_actual=b)


def path_length(p: Polyline3) -> float:
    return sum(_dist(a, b) for a, b in zip(p.points, p.points[1:]))


def _normalize(vx: float, vy: float, vz: float) -> tuple[float, float, float]:
    n = math.sqrt(vx * vx + vy * vy + vz * vz)
    return vx / n, vy / n, vz / n


def sweep_tube(path: Polyline3, radius: float, segments: int) -> TubeMesh:
    """Circular tube of the given radius swept along the path with
    parallel-transport frames; no end caps."""
    if not (radius > 0):
        raise ParameterError(f"radius: must be > 0, got {radius}")
    if segments < 4:
        raise ParameterError(f"tube_segments: must be >= 4, got {segments}")

    pts = path.points
    n = len(pts)
    tangents = []
    for i in range(n - 1):
        a, b = pts[i], pts[i + 1]
        tangents.append(_normalize(b.x - a.x, b.y - a.y, b.z - a.z))
    tangents.append(tangents[-1])

    # first frame: project a fixed reference axis out of the tangent
    tx, ty, tz = tangents[0]
    ref = (0.0, 0.0, 1.0) if abs(tz) < 0.9 else (1.0, 0.0, 0.0)
    d = ref[0] * tx + ref[1] * ty + ref[2] * tz
    nx, ny, nz = _normalize(ref[0] - d * tx, ref[1] - d * ty, ref[2] - d * tz)

    vertices: list[Point3] = []
    cos_t = [math.cos(2.0 * math.pi * k / segments) for k in range(segments)]
    sin_t = [math.sin(2.0 * math.pi * k / segments) for k in range(segments)]
    prev_t = tangents[0]
    for i in range(n):
        tcur = tangents[i]
        if i > 0:
            # rotate the frame by the minimal rotation taking prev_t to tcur
            cx = prev_t[1] * tcur[2] - prev_t[2] * tcur[1]
            cy = prev_t[2] * tcur[0] - prev_t[0] * tcur[2]
            cz = prev_t[0] * tcur[1] - prev_t[1] * tcur[0]
            s2 = cx * cx + cy * cy + cz * cz
            if s2 > 1e-24:
                c = prev_t[0] * tcur[0] + prev_t[1] * tcur[1] + prev_t[2] * tcur[2]
                k = (1.0 - c) / s2
                dot = cx * nx + cy * ny + cz * nz
                rx = nx * c + (cy * nz - cz * ny) + cx * dot * k
                ry = ny * c + (cz * nx - cx * nz) + cy * dot * k
                rz = nz * c + (cx * ny - cy * nx) + cz * dot * k
                nx, ny, nz = _normalize(rx, ry, rz)
            prev_t = tcur
        tx, ty, tz = tcur
        # binormal completes the frame
        bx = ty * nz - tz * ny
        by = tz * nx - tx * nz
        bz = tx * ny - ty * nx
        p = pts[i]
        for ck, sk in zip(cos_t, sin_t):
            vertices.append(
                Point3(
                    p.x + radius * (ck * nx + sk * bx),
                    p.y + radius * (ck * ny + sk * by),
                    p.z + radius * (ck * nz + sk * bz),
                )
            )

    triangles: list[tuple[int, int, int]] = []
    for i in range(n - 1):
        ring, nxt = i * segments, (i + 1) * segments
        for k in range(segments):
            k1 = (k + 1) % segments
            triangles.append((ring + k, nxt + k, nxt + k1))
            triangles.append((ring + k, nxt + k1, ring + k1))
    return TubeMesh(vertices=tuple(vertices), triangles=tuple(triangles))


_SLACK_GRAY: RGB = (150, 150, 150)
_TENSION_YELLOW: RGB = (255, 210, 0)
_TENSION_RED: RGB = (255, 0, 0)


def _lerp_rgb(a: RGB, b: RGB, u: float) -> RGB:
    return tuple(round(ca + u * (cb - ca)) for ca, cb in zip(a, b))  # type: ignore[return-value]


def strain_to_color(strain: float) -> RGB:
    """Slack gray below 0.95, gray->yellow up to 1.0, yellow->red up to
    1.10, clamped red beyond."""
    if not (strain > 0):
        raise DomainError(f"strain: must be > 0, got {strain}")
    if strain <= 0.95:
        return _SLACK_GRAY
    if strain <= 1.0:
        return _lerp_rgb(_SLACK_GRAY, _TENSION_YELLOW, (strain - 0.95) / 0.05)
    if strain < 1.10:
        return _lerp_rgb(_TENSION_YELLOW, _TENSION_RED, (strain - 1.0) / 0.10)
    return _TENSION_RED


@dataclass(frozen=True)
class CollisionRecord:
    families: tuple[int, int]
    segments: tuple[int, int]
    distance: float


def segment_distance(p1: Point3, q1: Point3, p2: Point3, q2: Point3) -> float:
    """Minimum distance between segments p1q1 and p2q2 (closest-point
    parameter clamping)."""
    d1 = (q1.x - p1.x, q1.y - p1.y, q1.z - p1.z)
    d2 = (q2.x - p2.x, q2.y - p2.y, q2.z - p2.z)
    r = (p1.x - p2.x, p1.y - p2.y, p1.z - p2.z)
    a = d1[0] ** 2 + d1[1] ** 2 + d1[2] ** 2
    e = d2[0] ** 2 + d2[1] ** 2 + d2[2] ** 2
    f = d2[0] * r[0] + d2[1] * r[1] + d2[2] * r[2]
    c = d1[0] * r[0] + d1[1] * r[1] + d1[2] * r[2]
    b = d1[0] * d2[0] + d1[1] * d2[1] + d1[2] * d2[2]
    denom = a * e - b * b
    s = 0.0 if denom == 0.0 else max(0.0, min(1.0, (b * f - c * e) / denom))
    t = (b * s + f) / e if e > 0.0 else 0.0
    if t < 0.0:
        t = 0.0
        s = max(0.0, min(1.0, -c / a)) if a > 0.0 else 0.0
    elif t > 1.0:
        t = 1.0
        s = max(0.0, min(1.0, (b - c) / a)) if a > 0.0 else 0.0
    cx = p1.x + s * d1[0] - (p2.x + t * d2[0])
    cy = p1.y + s * d1[1] - (p2.y + t * d2[1])
    cz = p1.z + s * d1[2] - (p2.z + t * d2[2])
    return math.sqrt(cx * cx + cy * cy + cz * cz)


def detect_collisions(
    spacers: list[StrainedSpacer], clearance: float
) -> list[CollisionRecord]:
    """Brute-force segment-pair proximity between different spacer
    families; a pair is reported when the gap is below the summed radii
    plus the clearance."""
    if clearance < 0:
        raise ParameterError(f"clearance: must be >= 0, got {clearance}")
    records = []
    segs = [list(zip(s.yarn.path.points, s.yarn.path.points[1:])) for s in spacers]
    for i in range(len(spacers)):
        for j in range(i + 1, len(spacers)):
            limit = spacers[i].yarn.radius_mm + spacers[j].yarn.radius_mm + clearance
            for a, (p1, q1) in enumerate(segs[i]):
                for b, (p2, q2) in enumerate(segs[j]):
                    d = segment_distance(p1, q1, p2, q2)
                    if d < limit:
                        records.append(
                            CollisionRecord(families=(i, j), segments=(a, b), distance=d)
                        )
    return records
