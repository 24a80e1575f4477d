"""Regenerate the golden regression data for the figure presets.

Reference values come from the truncated-Fock oracle, never from the
squeezed-coherent pipeline under test.  Grid points are kept only where the
oracle's ground-basis truncation converges within the dimension bound (deep
squeezing makes the number-basis tails arbitrarily slow); the selection rule
and the observed convergence gap are recorded in the output files.

Run from the repository root:  python tests/data/make_golden.py
"""

import json
import pathlib

import numpy as np

from respond import fock
from respond.presets import PRESETS, preset_variant
from respond.propagation import propagate_pathway, propagate_pathway_single

HERE = pathlib.Path(__file__).parent

FIG1_STEPS = 17
FIG2_GRID = 9
FIG4_GRID = 7
SINGLE_TANGENT_CAP = 0.80
MULTI_TANGENT_CAP = 0.55
MULTI_AMP_CAP = 2.2

# The oracle must resolve the full Franck-Condon envelope of each excited
# surface (weights decay like tanh(ln ratio)^k), so the truncation pair
# scales with the frequency ratio.
SINGLE_TRUNCATIONS = {1.0: (120, 200), 1.125: (120, 200), 2.0: (120, 200),
                      5.0: (560, 760), 10.0: (1400, 1900)}


def mode_moments(psi, dims):
    """Oracle-side <a_j> and <a_j^2> of a truncated state vector."""
    ops = fock._lowering_ops(dims)
    first, second = [], []
    for op in ops:
        av = op @ psi
        first.append(complex(np.vdot(psi, av)))
        second.append(complex(np.vdot(psi, op @ av)))
    return np.array(first), np.array(second)


def squeeze_from_moments(first, second):
    """Per-mode squeeze parameter from <a^2> - <a>^2 of a squeezed coherent mode."""
    out = []
    for a1, a2 in zip(first, second):
        v = a2 - a1 * a1
        if abs(v) < 1e-14:
            out.append(0j)
            continue
        r = 0.5 * np.arcsinh(2.0 * abs(v))
        out.append(r * np.exp(1j * np.angle(-v)))
    return np.array(out)


class OraclePoints:
    """Two-truncation oracle evaluations with cached eigendecompositions."""

    def __init__(self, model, n_low, n_high):
        self.model = model
        self.pair = (
            (n_low, fock._Propagators(model, n_low)),
            (n_high, fock._Propagators(model, n_high)),
        )

    def evaluate(self, lambdas, times):
        results = []
        for n, props in self.pair:
            psi = fock.vacuum_vector((n + 1,) * self.model.n_modes)
            for lam, t in zip(lambdas, times):
                psi = props.apply(psi, lam, t)
            r = fock.bra_zero_point_phase(self.model, times) * complex(psi[0])
            first, second = mode_moments(psi, (n + 1,) * self.model.n_modes)
            results.append((r, first, squeeze_from_moments(first, second)))
        gap = abs(results[0][0] - results[1][0])
        return results[1], gap


def make_fig1():
    datasets = []
    for ratio in PRESETS["fig1"].values:
        var = preset_variant("fig1", ratio)
        model, pathway = var["model"], var["pathway"]
        times = np.linspace(0.0, var["tmax"], FIG1_STEPS)
        oracle = OraclePoints(model, *SINGLE_TRUNCATIONS.get(float(ratio), (120, 200)))
        rows, worst_gap = [], 0.0
        for idx, t in enumerate(times):
            st = propagate_pathway_single(model, pathway.lambdas, [float(t)])
            if abs(st.t_z) > SINGLE_TANGENT_CAP:
                continue
            (r, first, z), gap = oracle.evaluate(pathway.lambdas, [float(t)])
            worst_gap = max(worst_gap, gap)
            total = (1j ** pathway.order) * r
            rows.append({
                "row": idx,
                "t": float(t),
                "R": [total.real, total.imag],
                "alpha": [[a.real, a.imag] for a in first],
                "z": [[w.real, w.imag] for w in z],
            })
        datasets.append({
            "ratio": ratio,
            "steps": FIG1_STEPS,
            "tmax": var["tmax"],
            "points": rows,
            "oracle_gap": worst_gap,
        })
        print(f"fig1 ratio={ratio}: {len(rows)} points, gap {worst_gap:.2e}")
    return {
        "preset": "fig1",
        "selection": f"|t_z| <= {SINGLE_TANGENT_CAP}",
        "tolerance": 1e-6,
        "datasets": datasets,
    }


def make_fig2():
    datasets = []
    for ratio in (1.0, 5.0):
        var = preset_variant("fig2", ratio)
        model, pathway = var["model"], var["pathway"]
        t2 = var["t2"]
        axis = np.linspace(0.0, var["t1_max"], FIG2_GRID)
        oracle = OraclePoints(model, *SINGLE_TRUNCATIONS.get(float(ratio), (120, 200)))
        rows, worst_gap = [], 0.0
        for i, t1 in enumerate(axis):
            for k, t3 in enumerate(axis):
                times = [float(t1), float(t2), float(t3)]
                st = propagate_pathway_single(model, pathway.lambdas, times)
                if abs(st.t_z) > SINGLE_TANGENT_CAP:
                    continue
                (r, first, _), gap = oracle.evaluate(pathway.lambdas, times)
                worst_gap = max(worst_gap, gap)
                total = (1j ** pathway.order) * r
                rows.append({
                    "row": i * FIG2_GRID + k,
                    "t1": float(t1),
                    "t3": float(t3),
                    "R": [total.real, total.imag],
                    "abs_A_sq": float(np.sum(np.abs(first) ** 2)),
                })
        datasets.append({
            "ratio": ratio,
            "grid": FIG2_GRID,
            "t2": t2,
            "points": rows,
            "oracle_gap": worst_gap,
        })
        print(f"fig2 ratio={ratio}: {len(rows)} points, gap {worst_gap:.2e}")
    return {
        "preset": "fig2",
        "selection": f"|t_z| <= {SINGLE_TANGENT_CAP}",
        "tolerance": 1e-6,
        "datasets": datasets,
    }


def _mild_history(model, lambdas, times):
    """Keep points whose state stays mild through every interval."""
    state = None
    from respond.states import vacuum_multi
    state = vacuum_multi(model.n_modes)
    from respond.propagation import step_interval_multi
    for lam, t in zip(lambdas, times):
        state = step_interval_multi(state, model, lam, t)
        if (np.linalg.norm(state.T_Z, 2) > MULTI_TANGENT_CAP
                or np.abs(state.A).max() > MULTI_AMP_CAP):
            return False
    return True


def make_fig4():
    datasets = []
    for phi in (0.0, 0.3):
        var = preset_variant("fig4", phi)
        model, pathway = var["model"], var["pathway"]
        t2 = var["t2"]
        axis = np.linspace(0.0, var["t1_max"], FIG4_GRID)
        oracle = OraclePoints(model, 48, 64)
        rows, worst_gap = [], 0.0
        for i, t1 in enumerate(axis):
            for k, t3 in enumerate(axis):
                times = [float(t1), float(t2), float(t3)]
                if not _mild_history(model, pathway.lambdas, times):
                    continue
                (r, first, _), gap = oracle.evaluate(pathway.lambdas, times)
                worst_gap = max(worst_gap, gap)
                total = (1j ** pathway.order) * r
                rows.append({
                    "row": i * FIG4_GRID + k,
                    "t1": float(t1),
                    "t3": float(t3),
                    "R": [total.real, total.imag],
                    "abs_A_sq": float(np.sum(np.abs(first) ** 2)),
                })
        datasets.append({
            "phi": phi,
            "grid": FIG4_GRID,
            "t2": t2,
            "points": rows,
            "oracle_gap": worst_gap,
        })
        print(f"fig4 phi={phi}: {len(rows)} points, gap {worst_gap:.2e}")
    return {
        "preset": "fig4",
        "selection": (
            f"spectral norm of T_Z <= {MULTI_TANGENT_CAP} and "
            f"max |A_j| <= {MULTI_AMP_CAP}"
        ),
        "tolerance": 5e-5,
        "datasets": datasets,
    }


def main():
    for name, builder in (("fig1", make_fig1), ("fig2", make_fig2), ("fig4", make_fig4)):
        data = builder()
        out = HERE / f"golden_{name}.json"
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(data, fh, indent=1, sort_keys=True)
            fh.write("\n")
        print("wrote", out)


if __name__ == "__main__":
    main()
