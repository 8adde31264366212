"""Shared parameter surface for the CLI and the HTTP service.

Flag/query names mirror the usual knitting symbols: sigma, tau, gauge,
bed, v, m, n, shift, wales, courses. Validation errors carry messages of
the form "<param>: <reason>".
"""

from __future__ import annotations

from .geometry import FabricSpec
from .spacer_math import (
    DomainError,
    MachineGeometry,
    Orientation,
    RelaxationState,
    SpacerFamilySpec,
)

DEFAULTS = {
    "gauge": 14.0,
    "sigma": 0.98,
    "tau": 1.0,
    "bed": 3.0,
    "v": 2.5,
    "wales": 8,
    "courses": 6,
    "m": 2,
    "n": None,
    "shift": 0,
    "override": None,
}

_FLOAT_PARAMS = ("gauge", "sigma", "tau", "bed", "v", "override")
_INT_PARAMS = ("wales", "courses", "m", "n", "shift")


def coerce_params(raw: dict) -> dict:
    """Merge string/typed values over the defaults with type checks;
    unknown keys are rejected."""
    params = dict(DEFAULTS)
    for key, value in raw.items():
        if key not in params:
            raise DomainError(f"{key}: unknown parameter")
        if value is None:
            continue
        try:
            if key in _INT_PARAMS:
                if isinstance(value, float) and not value.is_integer():
                    raise ValueError
                params[key] = int(value)
            else:
                params[key] = float(value)
        except (TypeError, ValueError):
            kind = "an integer" if key in _INT_PARAMS else "a number"
            raise DomainError(f"{key}: expected {kind}, got {value!r}") from None
    return params


# internal field names -> flag/query names, for error messages
_FIELD_TO_PARAM = {
    "bed_distance": "bed",
    "course_height": "v",
    "stitch_width": "gauge",
    "float_count": "n",
    "wale_shift": "shift",
}


def _rename_field(message: str) -> str:
    for field, param in _FIELD_TO_PARAM.items():
        if message.startswith(field + ":"):
            return param + message[len(field):]
    return message


def spec_from_params(params: dict) -> FabricSpec:
    """FabricSpec for the flat parameter set: one course-parallel family
    (m) and, when n is given, one wale-parallel family (n, shift)."""
    try:
        return _spec_from_params(params)
    except DomainError as exc:
        raise DomainError(_rename_field(str(exc))) from None


def _spec_from_params(params: dict) -> FabricSpec:
    machine = MachineGeometry.from_gauge(
        gauge=params["gauge"],
        course_height_mm=params["v"],
        bed_distance_mm=params["bed"],
    )
    relax = RelaxationState(sigma=params["sigma"], tau=params["tau"])
    families = [
        SpacerFamilySpec(orientation=Orientation.COURSE_PARALLEL,
                         float_count=params["m"])
    ]
    if params["n"] is not None:
        families.append(
            SpacerFamilySpec(
                orientation=Orientation.WALE_PARALLEL,
                float_count=params["n"],
                wale_shift=params["shift"],
            )
        )
    return FabricSpec(
        machine=machine,
        relax=relax,
        wales=params["wales"],
        courses=params["courses"],
        families=tuple(families),
        spacer_override_distance_mm=params["override"],
    )
