"""Report rendering: a shrink-sweep metrics table (CSV) plus matplotlib
figures written next to it."""

from __future__ import annotations

import csv
import math
from dataclasses import replace
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .geometry import FabricSpec, solve_panel_distance
from .scene_io import generate_scene
from .spacer_math import inclination_angle, triangle_for_family


def _sweep(spec: FabricSpec, sigma_from: float, sigma_to: float, steps: int):
    rows = []
    for i in range(steps):
        s = sigma_from + (sigma_to - sigma_from) * (i / (steps - 1) if steps > 1 else 0.0)
        swept = replace(spec, relax=replace(spec.relax, sigma=s))
        dist = solve_panel_distance(swept)
        tri = triangle_for_family(swept.families[0], swept.machine, swept.relax)
        rows.append(
            {
                "sigma": s,
                "b_actual_mm": dist.b_actual,
                "inclination_deg": math.degrees(inclination_angle(tri)),
            }
        )
    return rows


def write_report(
    spec: FabricSpec,
    out_dir: Path,
    sigma_from: float = 1.0,
    sigma_to: float = 0.90,
    steps: int = 21,
) -> list[Path]:
    """Write metrics.csv, a distance-vs-shrink figure and a 3D yarn
    preview of the scene at the spec's own sigma. Returns written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = _sweep(spec, sigma_from, sigma_to, steps)
    written = []

    csv_path = out_dir / "metrics.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["sigma", "b_actual_mm", "inclination_deg"])
        writer.writeheader()
        for row in rows:
            writer.writerow({k: f"{v:.6f}" for k, v in row.items()})
    written.append(csv_path)

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    sigmas = [r["sigma"] for r in rows]
    ax1.plot(sigmas, [r["b_actual_mm"] for r in rows], "-o", ms=3)
    ax1.set_xlabel(r"shrink factor $\sigma$")
    ax1.set_ylabel("inter-panel distance [mm]")
    ax1.invert_xaxis()
    ax2.plot(sigmas, [r["inclination_deg"] for r in rows], "-o", ms=3, color="tab:orange")
    ax2.set_xlabel(r"shrink factor $\sigma$")
    ax2.set_ylabel("spacer inclination [deg]")
    ax2.invert_xaxis()
    fig.tight_layout()
    fig_path = out_dir / "b_vs_sigma.png"
    fig.savefig(fig_path, dpi=150)
    plt.close(fig)
    written.append(fig_path)

    scene = generate_scene(spec)
    fig = plt.figure(figsize=(6, 5))
    ax = fig.add_subplot(projection="3d")
    for yarn in scene.yarns:
        xs = [p[0] for p in yarn.points]
        ys = [p[1] for p in yarn.points]
        zs = [p[2] for p in yarn.points]
        ax.plot(xs, ys, zs, color=tuple(c / 255 for c in yarn.color),
                lw=1.0 + 4.0 * yarn.radius)
    ax.set_xlabel("x [mm]")
    ax.set_ylabel("y [mm]")
    ax.set_zlabel("z [mm]")
    fig.tight_layout()
    preview_path = out_dir / "scene_preview.png"
    fig.savefig(preview_path, dpi=150)
    plt.close(fig)
    written.append(preview_path)

    return written
