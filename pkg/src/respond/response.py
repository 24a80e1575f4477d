"""Electronic x vibrational response functions and waiting-time grid scans.

The vibrational part propagates the vacuum through the pathway's interval
recurrences and closes with a vacuum overlap; the electronic part is a cyclic
dipole product times energy phases and, for the two canonical all-left
pathways, the exponential dephasing envelopes.  Double-sided diagrams with
interactions on the right are handled by remapping the waiting times onto
signed interval durations.
"""

import cmath
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    UnsupportedPathway,
    UnsupportedSides,
)
from .matfun import takagi
from .model import VibronicModel
from .propagation import propagate_pathway, propagate_pathway_single
from .states import (
    MultiModeState,
    SingleModeState,
    multi_from_single,
    shift_phase_multi,
    vacuum_overlap_multi,
    vacuum_overlap_single,
)


@dataclass(frozen=True)
class PathwaySpec:
    """Electronic pathway: state sequence, interaction sides, free-text label."""

    lambdas: tuple
    sides: tuple = None
    label: str = ""

    def __post_init__(self):
        lambdas = tuple(int(x) for x in self.lambdas)
        sides = self.sides
        if sides is None:
            sides = ("L",) * len(lambdas)
        sides = tuple(str(s).upper() for s in sides)
        if len(sides) != len(lambdas):
            raise DimensionMismatch(
                f"{len(sides)} side labels for {len(lambdas)} interactions"
            )
        if any(s not in ("L", "R") for s in sides):
            raise UnsupportedSides(f"side labels must be L or R, got {sides}")
        object.__setattr__(self, "lambdas", lambdas)
        object.__setattr__(self, "sides", sides)

    @property
    def order(self) -> int:
        return len(self.lambdas)


@dataclass(frozen=True)
class RemappedTimes:
    """Signed interval durations plus the matching electronic phase descriptor.

    The electronic energy phase is ``exp(i sum_k coeff_k eps_{lambda_k})``
    with ``coeff = -times`` for every supported side pattern.
    """

    times: tuple
    epsilon_coefficients: tuple


def remap_times(sides, times) -> RemappedTimes:
    """Map waiting times of a sided diagram onto all-left signed durations.

    ``(L, R, L)`` uses ``(t1, t2, t3) -> (t2 + t3, -t3, -(t1 + t2))``; the
    all-left pattern is the identity.  Other patterns have no built-in table;
    callers may always supply raw signed times instead.
    """
    sides = tuple(str(s).upper() for s in sides)
    times = tuple(float(t) for t in times)
    if len(sides) != len(times):
        raise DimensionMismatch(f"{len(sides)} sides for {len(times)} times")
    if all(s == "L" for s in sides):
        mapped = times
    elif sides == ("L", "R", "L"):
        t1, t2, t3 = times
        mapped = (t2 + t3, -t3, -(t1 + t2))
    else:
        raise UnsupportedSides(
            f"no built-in remapping for sides {''.join(sides)}; "
            "supply raw signed times instead"
        )
    return RemappedTimes(mapped, tuple(-t for t in mapped))


def electronic_response(
    model: VibronicModel, pathway: PathwaySpec, times, *, raw_times: bool = False
) -> complex:
    """Cyclic dipole product, energy phases, and dephasing envelopes.

    The bare factor ``i^M mu_{l1,0} mu_{l2,l1} ... mu_{0,lM}
    exp(-i sum_k eps_{l_k} t'_k)`` is defined for any pathway.  The
    dephasing/relaxation envelope ``exp(-(gamma + Gamma/2) * coherence time)``
    is only known for the two canonical all-left pathways (M = 1 excited, and
    M = 3 with the middle interval on the ground state); any other pathway
    with nonzero rates raises UnsupportedPathway.
    """
    lambdas = pathway.lambdas
    for lam in lambdas:
        if not 0 <= lam < model.n_states:
            raise IndexOutOfRange(f"electronic state {lam} outside the model")
    mapped = tuple(float(t) for t in times) if raw_times else remap_times(
        pathway.sides, times
    ).times
    dipoles = model.mu[lambdas[0], 0]
    for prev, cur in zip(lambdas, lambdas[1:]):
        dipoles *= model.mu[cur, prev]
    dipoles *= model.mu[0, lambdas[-1]]
    value = (1j ** pathway.order) * dipoles * cmath.exp(
        -1j * sum(model.epsilon[lam] * t for lam, t in zip(lambdas, mapped))
    )

    rate = model.gamma_deph + 0.5 * model.gamma_relax
    if rate > 0.0:
        if raw_times or any(s != "L" for s in pathway.sides):
            raise UnsupportedPathway(
                "dephasing envelopes are only defined for all-left pathways"
            )
        times = tuple(float(t) for t in times)
        if pathway.order == 1 and lambdas[0] != 0:
            value *= math.exp(-rate * times[0])
        elif (
            pathway.order == 3
            and lambdas[1] == 0
            and lambdas[0] == lambdas[2] != 0
        ):
            value *= math.exp(-rate * (times[0] + times[2]))
        else:
            raise UnsupportedPathway(
                f"no dephasing envelope for pathway {lambdas} with sides "
                f"{''.join(pathway.sides)}"
            )
    return value


def _final_state_multi(model, lambdas, times) -> MultiModeState:
    state = propagate_pathway(model, lambdas, times)
    bra_phase = 0.5 * float(model.omega[0].sum()) * float(np.sum(times))
    return shift_phase_multi(state, bra_phase)


def _final_state_single(model, lambdas, times) -> SingleModeState:
    state = propagate_pathway_single(model, lambdas, times)
    zeta = state.zeta + 0.5 * float(model.omega[0, 0]) * float(np.sum(times))
    return SingleModeState(state.alpha, state.t_z, zeta)


def final_pathway_state(
    model: VibronicModel, pathway: PathwaySpec, times, *, raw_times: bool = False
) -> MultiModeState:
    """Vibrational ket at the end of the pathway, bra zero-point phase included."""
    mapped = tuple(float(t) for t in times) if raw_times else remap_times(
        pathway.sides, times
    ).times
    if model.n_modes == 1:
        return multi_from_single(_final_state_single(model, pathway.lambdas, mapped))
    return _final_state_multi(model, pathway.lambdas, mapped)


def vibrational_response(
    model: VibronicModel, pathway: PathwaySpec, times, *, raw_times: bool = False
) -> complex:
    """Vacuum overlap of the pathway's final vibrational state."""
    mapped = tuple(float(t) for t in times) if raw_times else remap_times(
        pathway.sides, times
    ).times
    if model.n_modes == 1:
        return vacuum_overlap_single(_final_state_single(model, pathway.lambdas, mapped))
    return vacuum_overlap_multi(_final_state_multi(model, pathway.lambdas, mapped))


def general_initial_response(
    model: VibronicModel, pathway: PathwaySpec, times, A0, T_Z0,
    *, raw_times: bool = False,
) -> complex:
    """Vibrational response for a squeezed coherent initial state."""
    from .propagation import effective_ket_general_initial

    mapped = tuple(float(t) for t in times) if raw_times else remap_times(
        pathway.sides, times
    ).times
    ket = effective_ket_general_initial(model, pathway.lambdas, mapped, A0, T_Z0)
    phi0 = float(model.omega[0].sum()) * float(np.sum(mapped))
    return cmath.exp(0.5j * phi0) * vacuum_overlap_multi(ket)


def total_response(
    model: VibronicModel, pathway: PathwaySpec, times, *, raw_times: bool = False
) -> complex:
    return electronic_response(
        model, pathway, times, raw_times=raw_times
    ) * vibrational_response(model, pathway, times, raw_times=raw_times)


@dataclass(frozen=True)
class ResponseGrid:
    """Scan result: time axes, fixed times, complex response, diagnostics.

    ``values`` is row-major over the axes (first axis outermost).  The
    diagnostics carry the final vibrational state per grid point: squared
    amplitude norm, per-mode amplitudes, and per-mode squeeze parameters
    (diagonal of the matrix atanh of the tangent).
    """

    axis_slots: tuple
    axes: tuple
    fixed_times: tuple
    values: np.ndarray
    abs_a_sq: np.ndarray = None
    alpha: np.ndarray = None
    z_modes: np.ndarray = None

    def __post_init__(self):
        shape = tuple(len(ax) for ax in self.axes)
        if self.values.shape != shape:
            raise DimensionMismatch(
                f"values shape {self.values.shape} does not match axes {shape}"
            )


def _mode_squeeze_parameters(state: MultiModeState) -> np.ndarray:
    fac = takagi(state.T_Z)
    return np.diag(fac.symmetric_func(np.arctanh)).copy()


def _grid_point(model, pathway, times, raw_times):
    electronic = electronic_response(model, pathway, times, raw_times=raw_times)
    mapped = times if raw_times else remap_times(pathway.sides, times).times
    if model.n_modes == 1:
        st = _final_state_single(model, pathway.lambdas, mapped)
        value = electronic * vacuum_overlap_single(st)
        return value, abs(st.alpha) ** 2, np.array([st.alpha]), np.array([st.z])
    state = _final_state_multi(model, pathway.lambdas, mapped)
    value = electronic * vacuum_overlap_multi(state)
    asq = float(np.sum(np.abs(state.A) ** 2))
    return value, asq, state.A, _mode_squeeze_parameters(state)


def _eval_rows(args):
    model, pathway, axis_slots, axes, fixed, raw_times, rows = args
    out = []
    for i in rows:
        row = []
        for idx in np.ndindex(*[len(ax) for ax in axes[1:]]):
            full_idx = (i,) + idx
            times = dict(fixed)
            for slot, ax, k in zip(axis_slots, axes, full_idx):
                times[slot] = float(ax[k])
            ordered = tuple(times[k] for k in sorted(times))
            row.append(_grid_point(model, pathway, ordered, raw_times))
        out.append((i, row))
    return out


def resolve_workers(workers=None) -> int:
    """Explicit argument wins, then RESPOND_THREADS, then serial."""
    if workers is None:
        workers = os.environ.get("RESPOND_THREADS", "")
        workers = int(workers) if workers.strip() else 1
    return max(1, int(workers))


def scan_grid(
    model: VibronicModel,
    pathway: PathwaySpec,
    axes: dict,
    fixed: dict = None,
    *,
    raw_times: bool = False,
    workers=None,
) -> ResponseGrid:
    """Evaluate the total response over a 1-3 dimensional waiting-time grid.

    ``axes`` maps time-slot index (0-based) to a monotone array of values;
    ``fixed`` pins the remaining slots.  Axis values are physical waiting
    times (sided diagrams are remapped per point) unless ``raw_times`` is
    set, in which case they are signed interval durations.  Output is
    deterministic and independent of worker count.
    """
    fixed = dict(fixed or {})
    axes = {int(k): np.asarray(v, dtype=float) for k, v in axes.items()}
    if not 1 <= len(axes) <= 3:
        raise DimensionMismatch(f"1 to 3 axes supported, got {len(axes)}")
    slots = sorted(axes) + sorted(fixed)
    if sorted(slots) != list(range(pathway.order)):
        raise DimensionMismatch(
            f"axes {sorted(axes)} plus fixed {sorted(fixed)} must cover "
            f"slots 0..{pathway.order - 1} exactly once"
        )
    axis_slots = tuple(sorted(axes))
    axis_arrays = tuple(axes[s] for s in axis_slots)
    shape = tuple(len(ax) for ax in axis_arrays)
    n_rows = shape[0]

    nworkers = resolve_workers(workers)
    chunks = [
        (model, pathway, axis_slots, axis_arrays, fixed, raw_times, rows)
        for rows in np.array_split(np.arange(n_rows), min(nworkers, n_rows))
        if len(rows)
    ]
    if nworkers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            parts = list(pool.map(_eval_rows, chunks))
    else:
        parts = [_eval_rows(chunk) for chunk in chunks]

    values = np.empty(shape, dtype=complex)
    abs_a_sq = np.empty(shape, dtype=float)
    alpha = np.empty(shape + (model.n_modes,), dtype=complex)
    z_modes = np.empty(shape + (model.n_modes,), dtype=complex)
    inner = shape[1:]
    for part in parts:
        for i, row in part:
            for flat, (val, asq, al, z) in enumerate(row):
                idx = (i,) + tuple(np.unravel_index(flat, inner)) if inner else (i,)
                values[idx] = val
                abs_a_sq[idx] = asq
                alpha[idx] = al
                z_modes[idx] = z
    return ResponseGrid(
        axis_slots=axis_slots,
        axes=axis_arrays,
        fixed_times=tuple(sorted(fixed.items())),
        values=values,
        abs_a_sq=abs_a_sq,
        alpha=alpha,
        z_modes=z_modes,
    )
