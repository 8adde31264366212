"""Closed-form relations between machine parameters, panel shrink and
inter-panel distance for weft-knitted spacer fabrics.

All lengths are millimetres. Gauge (stitches per inch) is converted to a
stitch width once, at construction time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

MM_PER_INCH = 25.4


class DomainError(ValueError):
    """A parameter is outside the physically meaningful range."""


class Orientation(str, Enum):
    COURSE_PARALLEL = "course_parallel"
    WALE_PARALLEL = "wale_parallel"


def stitch_width_from_gauge(gauge: float) -> float:
    """Stitch width in mm for a machine gauge in stitches per inch."""
    if not (gauge > 0):
        raise DomainError(f"gauge: must be > 0, got {gauge}")
    return MM_PER_INCH / gauge


@dataclass(frozen=True)
class MachineGeometry:
    """Needle-bed geometry: stitch spacing and the distance between beds."""

    gauge: float
    stitch_width_mm: float
    course_height_mm: float
    bed_distance_mm: float

    def __post_init__(self) -> None:
        if not (self.gauge > 0):
            raise DomainError(f"gauge: must be > 0, got {self.gauge}")
        if not (self.stitch_width_mm > 0):
            raise DomainError(f"stitch_width: must be > 0, got {self.stitch_width_mm}")
        if not (self.course_height_mm > 0):
            raise DomainError(f"course_height: must be > 0, got {self.course_height_mm}")
        if not (self.bed_distance_mm > 0):
            raise DomainError(f"bed_distance: must be > 0, got {self.bed_distance_mm}")

    @classmethod
    def from_gauge(
        cls, gauge: float, course_height_mm: float, bed_distance_mm: float
    ) -> "MachineGeometry":
        return cls(
            gauge=gauge,
            stitch_width_mm=stitch_width_from_gauge(gauge),
            course_height_mm=course_height_mm,
            bed_distance_mm=bed_distance_mm,
        )


@dataclass(frozen=True)
class RelaxationState:
    """Shrink factors applied when the fabric comes off the needles.

    sigma scales wale spacing (horizontal), tau scales course spacing
    (vertical). 1.0 means still on the needles, unshrunk.
    """

    sigma: float
    tau: float = 1.0

    def __post_init__(self) -> None:
        if not (0.0 < self.sigma <= 1.0):
            raise DomainError(f"sigma: must be in (0, 1], got {self.sigma}")
        if not (0.0 < self.tau <= 1.0):
            raise DomainError(f"tau: must be in (0, 1], got {self.tau}")


@dataclass(frozen=True)
class SpacerFamilySpec:
    """One family of spacer monofilaments.

    float_count is the number of stitches a float spans between tucks
    (m for course-parallel families, n for wale-parallel). wale_shift is
    the sideways stitch shift per hop of a wale-parallel family.
    """

    orientation: Orientation
    float_count: int
    wale_shift: int = 0
    start_wale: int = 0
    start_course: int = 0
    yarn_radius_mm: float = 0.2

    def __post_init__(self) -> None:
        if self.float_count < 1:
            raise DomainError(f"float_count: must be >= 1, got {self.float_count}")
        if self.wale_shift < 0:
            raise DomainError(f"wale_shift: must be >= 0, got {self.wale_shift}")
        if self.orientation is Orientation.COURSE_PARALLEL and self.wale_shift != 0:
            raise DomainError("wale_shift: must be 0 for course_parallel families")
        if self.start_wale < 0 or self.start_course < 0:
            raise DomainError("start_wale/start_course: must be >= 0")
        if not (self.yarn_radius_mm > 0):
            raise DomainError(f"yarn_radius: must be > 0, got {self.yarn_radius_mm}")


@dataclass(frozen=True)
class SpacerTriangle:
    """Right-triangle state of one spacer family, on-needles vs relaxed.

    The hypotenuse (rest length of one float hop) is fixed at knitting
    time; relaxation shortens the in-plane leg and the panel distance
    follows.
    """

    a_initial: float
    a_relaxed: float
    b_initial: float
    c_rest: float
    b_relaxed: float


def _in_plane_hop(family: SpacerFamilySpec, machine: MachineGeometry,
                  sigma: float, tau: float) -> tuple[float, float]:
    """(initial, relaxed) in-plane hop length of one float."""
    h = machine.stitch_width_mm
    v = machine.course_height_mm
    if family.orientation is Orientation.COURSE_PARALLEL:
        a_i = family.float_count * h
        a = sigma * a_i
    else:
        a_i = math.hypot(family.float_count * v, family.wale_shift * h)
        a = math.hypot(tau * family.float_count * v, sigma * family.wale_shift * h)
    return a_i, a


def triangle_for_family(
    family: SpacerFamilySpec, machine: MachineGeometry, relax: RelaxationState
) -> SpacerTriangle:
    """Hop triangle of a family: rest hypotenuse from the on-needles state,
    relaxed inter-panel distance by working Pythagoras backwards."""
    a_initial, a_relaxed = _in_plane_hop(family, machine, relax.sigma, relax.tau)
    b_initial = machine.bed_distance_mm
    c_rest = math.hypot(a_initial, b_initial)
    if a_relaxed == a_initial:
        # unshrunk: the panels stay at the bed distance, bit-exactly
        b_relaxed = b_initial
    else:
        # b^2 = c^2 - a^2 = b_i^2 + (a_i - a)(a_i + a), better conditioned
        b_relaxed = math.sqrt(
            b_initial * b_initial + (a_initial - a_relaxed) * (a_initial + a_relaxed)
        )
    return SpacerTriangle(
        a_initial=a_initial,
        a_relaxed=a_relaxed,
        b_initial=b_initial,
        c_rest=c_rest,
        b_relaxed=b_relaxed,
    )


def inter_panel_distance(
    family: SpacerFamilySpec, machine: MachineGeometry, relax: RelaxationState
) -> float:
    """Panel distance this family demands after relaxation."""
    return triangle_for_family(family, machine, relax).b_relaxed


def equilibrium_ratio(machine: MachineGeometry, relax: RelaxationState) -> float:
    """Target float-count ratio m/n at which an unskewed horizontal and a
    vertical spacer family push the panels to the same distance:

        m/n = (V/H) * sqrt(1 - tau^2) / sqrt(1 - sigma^2)
    """
    if relax.sigma >= 1.0:
        raise DomainError("sigma: no horizontal shrink (sigma = 1) has no finite equilibrium ratio")
    num = math.sqrt(1.0 - relax.tau * relax.tau)
    den = math.sqrt(1.0 - relax.sigma * relax.sigma)
    return (machine.course_height_mm / machine.stitch_width_mm) * num / den


def equilibrium_residual(
    h_family: SpacerFamilySpec,
    v_family: SpacerFamilySpec,
    machine: MachineGeometry,
    relax: RelaxationState,
) -> float:
    """B_h^2 - B_v^2 in mm^2; zero iff both families demand the same
    panel distance. Positive when the horizontal family pushes further."""
    if h_family.orientation is not Orientation.COURSE_PARALLEL:
        raise DomainError("h_family: must be course_parallel")
    if v_family.orientation is not Orientation.WALE_PARALLEL:
        raise DomainError("v_family: must be wale_parallel")
    h = machine.stitch_width_mm
    v = machine.course_height_mm
    ds = 1.0 - relax.sigma * relax.sigma
    dt = 1.0 - relax.tau * relax.tau
    m, n, s = h_family.float_count, v_family.float_count, v_family.wale_shift
    return (m * h) ** 2 * ds - ((s * h) ** 2 * ds + (n * v) ** 2 * dt)


@dataclass(frozen=True)
class FloatCountSolution:
    """Real-valued float count balancing the equilibrium, with the two
    nearest integer candidates and their residuals."""

    solve_for: str
    feasible: bool
    real_value: float | None
    candidates: tuple[tuple[int, float], ...]
    reason: str = ""


def solve_float_count(
    known_family: SpacerFamilySpec,
    machine: MachineGeometry,
    relax: RelaxationState,
    solve_for: str,
    wale_shift: int = 0,
) -> FloatCountSolution:
    """Solve the equilibrium for the missing float count.

    solve_for 'm': known_family is the wale-parallel one; wale_shift is
    ignored (the skew lives on the known family). solve_for 'n':
    known_family is the course-parallel one; wale_shift is the skew of the
    vertical family being sized.
    """
    if solve_for not in ("m", "n"):
        raise DomainError(f"solve_for: must be 'm' or 'n', got {solve_for!r}")
    h = machine.stitch_width_mm
    v = machine.course_height_mm
    ds = 1.0 - relax.sigma * relax.sigma
    dt = 1.0 - relax.tau * relax.tau

    if solve_for == "m":
        if ds <= 0.0:
            raise DomainError("sigma: no horizontal shrink, cannot solve for m")
        if known_family.orientation is not Orientation.WALE_PARALLEL:
            raise DomainError("known_family: must be wale_parallel when solving for m")
        n, s = known_family.float_count, known_family.wale_shift
        rhs = (s * h) ** 2 * ds + (n * v) ** 2 * dt
        real = math.sqrt(rhs / (h * h * ds))

        def residual_for(k: int) -> float:
            return (k * h) ** 2 * ds - rhs
    else:
        if dt <= 0.0:
            raise DomainError("tau: no vertical shrink, cannot solve for n")
        if known_family.orientation is not Orientation.COURSE_PARALLEL:
            raise DomainError("known_family: must be course_parallel when solving for n")
        m, s = known_family.float_count, wale_shift
        rhs = (m * h) ** 2 * ds - (s * h) ** 2 * ds
        if rhs < 0.0:
            return FloatCountSolution(
                solve_for=solve_for,
                feasible=False,
                real_value=None,
                candidates=(),
                reason=(
                    "infeasible: the skew term alone exceeds the horizontal "
                    "family's pushed distance; no positive float count balances"
                ),
            )
        real = math.sqrt(rhs / (v * v * dt))

        def residual_for(k: int) -> float:
            return rhs - (k * v) ** 2 * dt

    lo, hi = math.floor(real), math.ceil(real)
    candidates = []
    for k in (lo, hi) if lo != hi else (lo,):
        if k >= 1:
            candidates.append((k, residual_for(k)))
    if not candidates:
        candidates.append((1, residual_for(1)))
    return FloatCountSolution(
        solve_for=solve_for,
        feasible=True,
        real_value=real,
        candidates=tuple(candidates),
    )


def inclination_angle(triangle: SpacerTriangle) -> float:
    """Angle of the relaxed spacer from the panel plane, radians."""
    if triangle.a_relaxed == 0.0:
        return math.pi / 2.0
    return math.atan(triangle.b_relaxed / triangle.a_relaxed)


def db_dsigma(
    family: SpacerFamilySpec, machine: MachineGeometry, relax: RelaxationState
) -> float:
    """d(inter-panel distance)/d(sigma) for a course-parallel family."""
    if family.orientation is not Orientation.COURSE_PARALLEL:
        raise DomainError("family: db_dsigma is defined for course_parallel families")
    a_i = family.float_count * machine.stitch_width_mm
    b = inter_panel_distance(family, machine, relax)
    return -relax.sigma * a_i * a_i / b
