"""Render figure-preset CSV datasets into static multi-panel PNG figures.

Consumes only the files a ``respond figure`` run leaves behind: one CSV per
dataset plus the ``preset.json`` sidecar with the resolved parameters.  The
renderer never touches the CSV inputs; output images are written atomically
(temp file + rename), so an aborted run leaves no partial output.
"""

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


class PlotsError(Exception):
    """Base class for rendering failures."""


class SidecarMissing(PlotsError):
    """The preset directory does not carry a preset.json sidecar."""


class ColumnMissing(PlotsError):
    """A required CSV column is absent; the message names it."""


# what each preset's panels show: 3-panel trajectory figures for the linear
# scans, a heatmap per dataset for the (t1, t3) maps
TRAJECTORY_PRESETS = {"fig1", "fig3"}
HEATMAP_QUANTITY = {
    "figS1": ("sqrt_abs_A_sq", "|A|"),
    "fig2": ("abs_R", "|R|"),
    "fig4": ("abs_R", "|R|"),
    "fig5": ("abs_A_sq", "|A|^2"),
}


@dataclass(frozen=True)
class FigureJob:
    """One directory to render: where, what preset, output path, panel grid."""

    directory: Path
    preset: str
    output: Path
    layout: tuple
    sidecar: dict

    @property
    def n_panels(self) -> int:
        return self.layout[0] * self.layout[1]


def load_sidecar(directory) -> dict:
    path = Path(directory) / "preset.json"
    if not path.exists():
        raise SidecarMissing(f"{directory}: preset.json sidecar is missing")
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def plan_job(directory, output=None) -> FigureJob:
    directory = Path(directory)
    sidecar = load_sidecar(directory)
    preset = sidecar.get("preset", "")
    if preset in TRAJECTORY_PRESETS:
        layout = (1, 3)
    elif preset in HEATMAP_QUANTITY:
        n = len(sidecar.get("datasets", []))
        layout = (max(1, math.ceil(n / 3)), min(3, max(1, n)))
    else:
        raise PlotsError(f"{directory}: unknown preset {preset!r}")
    if output is None:
        output = directory / f"{preset}.png"
    return FigureJob(directory, preset, Path(output), layout, sidecar)


def read_columns(path, wanted) -> dict:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(x) for x in row] for row in reader]
    data = {}
    for name in wanted:
        if name not in header:
            raise ColumnMissing(f"{path}: column {name!r} is missing")
        idx = header.index(name)
        data[name] = np.array([row[idx] for row in rows])
    return data


def _mean_excited_frequency(entry) -> float:
    omegas = entry["model"]["states"][1]["omega"]
    return float(np.mean(omegas))


def _color(index, total):
    return plt.get_cmap("viridis")(0.1 + 0.8 * index / max(1, total - 1))


def _render_trajectories(job, fig):
    axes = fig.subplots(1, 3)
    datasets = job.sidecar["datasets"]
    varied = job.sidecar["varied"]
    two_mode = job.sidecar["datasets"][0]["model"]["modes"] == 2
    if two_mode:
        panel_cols = [("Re_alpha_1", "Im_alpha_1"), ("Re_alpha_2", "Im_alpha_2")]
        panel_titles = ["mode 1 amplitude", "mode 2 amplitude"]
    else:
        panel_cols = [("Re_alpha_1", "Im_alpha_1"), ("Re_z_1", "Im_z_1")]
        panel_titles = ["amplitude", "squeeze parameter"]
    for i, entry in enumerate(datasets):
        color = _color(i, len(datasets))
        label = f"{varied} = {entry[varied]:g}"
        cols = read_columns(
            job.directory / entry["file"],
            ["t", "Re_R", "Im_R", "abs_R"] + [c for pair in panel_cols for c in pair],
        )
        for ax, (cx, cy) in zip(axes[:2], panel_cols):
            ax.plot(cols[cx], cols[cy], color=color, lw=0.9, label=label)
        wbar1 = _mean_excited_frequency(entry)
        axes[2].plot(cols["t"] * wbar1, cols["abs_R"], color=color, lw=0.9,
                     label=label)
    for ax, title in zip(axes[:2], panel_titles):
        ax.set_title(title)
        ax.set_xlabel("Re")
        ax.set_ylabel("Im")
        ax.axhline(0.0, color="0.85", lw=0.5)
        ax.axvline(0.0, color="0.85", lw=0.5)
    axes[2].set_title("response modulus")
    axes[2].set_xlabel(r"$t\,\bar\omega_1$")
    axes[2].set_ylabel("|R|")
    axes[2].legend(fontsize=7)
    return 3


def _render_heatmaps(job, fig):
    column, label = HEATMAP_QUANTITY[job.preset]
    datasets = job.sidecar["datasets"]
    varied = job.sidecar["varied"]
    rows, cols = job.layout
    axes = np.atleast_1d(fig.subplots(rows, cols)).reshape(-1)
    for ax in axes[len(datasets):]:
        ax.set_visible(False)
    for entry, ax in zip(datasets, axes):
        source = "abs_A_sq" if column == "sqrt_abs_A_sq" else column
        data = read_columns(job.directory / entry["file"],
                            ["t1", "t3", source])
        g1, g3 = entry["grid"]
        surface = data[source].reshape(g1, g3)
        if column == "sqrt_abs_A_sq":
            surface = np.sqrt(surface)
        wbar1 = _mean_excited_frequency(entry)
        extent = (
            data["t3"].min() * wbar1, data["t3"].max() * wbar1,
            data["t1"].min() * wbar1, data["t1"].max() * wbar1,
        )
        im = ax.imshow(surface, origin="lower", extent=extent, aspect="auto",
                       cmap="inferno")
        ax.set_title(f"{varied} = {entry[varied]:g}", fontsize=9)
        ax.set_xlabel(r"$t_3\,\bar\omega_1$")
        ax.set_ylabel(r"$t_1\,\bar\omega_1$")
        fig.colorbar(im, ax=ax, label=label, shrink=0.85)
    return len(datasets)


def render_job(job: FigureJob) -> dict:
    fig = plt.figure(figsize=(4.2 * job.layout[1], 3.4 * job.layout[0]))
    try:
        if job.preset in TRAJECTORY_PRESETS:
            panels = _render_trajectories(job, fig)
        else:
            panels = _render_heatmaps(job, fig)
        fig.suptitle(job.preset)
        fig.tight_layout()
        job.output.parent.mkdir(parents=True, exist_ok=True)
        tmp = job.output.with_name(job.output.name + ".tmp")
        fig.savefig(tmp, dpi=140, format=job.output.suffix.lstrip(".") or "png")
        os.replace(tmp, job.output)
    finally:
        plt.close(fig)
    return {"preset": job.preset, "output": str(job.output), "panels": panels}


def render(directory, output=None) -> dict:
    """Render one preset directory; returns panel/output metadata."""
    return render_job(plan_job(directory, output))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="respond-plots",
        description="Render respond figure-preset directories to PNG panels.",
    )
    parser.add_argument("directories", nargs="+", help="preset output directories")
    parser.add_argument("--out-dir", default=None,
                        help="write images here instead of into each input directory")
    args = parser.parse_args(argv)
    status = 0
    for directory in args.directories:
        try:
            output = None
            if args.out_dir:
                preset = load_sidecar(directory).get("preset", Path(directory).name)
                output = Path(args.out_dir) / f"{preset}.png"
            info = render(directory, output)
            print(f"{directory}: wrote {info['output']} ({info['panels']} panels)")
        except SidecarMissing as exc:
            print(f"error: {exc}", file=sys.stderr)
            status = max(status, 2)
        except (PlotsError, OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            status = max(status, 3)
    return status


if __name__ == "__main__":
    sys.exit(main())
