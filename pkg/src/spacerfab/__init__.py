"""Parametric modelling of weft-knitted spacer fabrics: closed-form
shrink/thickness relations, explicit yarn geometry, deterministic scene
export, and a CLI + HTTP front end."""

from .geometry import (
    CollisionRecord,
    FabricSpec,
    PanelDistance,
    Point3,
    Polyline3,
    StrainedSpacer,
    TubeMesh,
    YarnPath,
    YarnRole,
    base_loop_curve,
    build_panel,
    build_spacer_paths,
    detect_collisions,
    path_length,
    solve_panel_distance,
    strain_to_color,
    sweep_tube,
)
from .scene_io import (
    AnimationSequence,
    Scene,
    SceneFormatError,
    animate,
    decode_scene_json,
    encode_scene_json,
    export_obj,
    fabric_spec_from_dict,
    fabric_spec_to_dict,
    generate_scene,
)
from .spacer_math import (
    DomainError,
    MachineGeometry,
    Orientation,
    RelaxationState,
    SpacerFamilySpec,
    SpacerTriangle,
    db_dsigma,
    equilibrium_ratio,
    equilibrium_residual,
    inclination_angle,
    inter_panel_distance,
    solve_float_count,
    stitch_width_from_gauge,
    triangle_for_family,
)

__version__ = "0.1.0"
