"""Interval propagators decomposed into elementary operators, and pathway folds.

The evolution ``exp(-i H_lam t)`` over one waiting time is reduced to a fixed
string of squeeze, displacement and rotation operators plus a scalar
zero-point phase.  Applying the string to a squeezed coherent state keeps it
squeezed coherent, so an M-interval electronic pathway is just M folds of the
same recurrence.  Negative interval durations are legal everywhere (the
side-remapping of third-order diagrams needs them) and simply flip the
rotation angles and the zero-point phase.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange
from .matfun import matrix_from_tangent
from .model import VibronicModel
from .states import (
    MultiModeState,
    SingleModeState,
    displace_multi,
    displace_single,
    rotate_multi,
    rotate_single,
    shift_phase_multi,
    squeeze_multi,
    squeeze_single,
    vacuum_multi,
    vacuum_single,
)

SQUEEZE = "squeeze"
DISPLACE = "displace"
ROTATE = "rotate"

_SINGLE_APPLY = {
    SQUEEZE: squeeze_single,
    DISPLACE: displace_single,
    ROTATE: rotate_single,
}
_MULTI_APPLY = {
    SQUEEZE: squeeze_multi,
    DISPLACE: displace_multi,
    ROTATE: rotate_multi,
}


@dataclass(frozen=True)
class IntervalFactorization:
    """Elementary operators of one interval, in application order.

    ``ops`` holds ``(kind, parameter)`` pairs; ``phase`` is the additive
    zero-point contribution to the global phase, applied after the string.
    """

    ops: tuple
    phase: float


def _check_state_index(model: VibronicModel, lam: int) -> None:
    if not 0 <= lam < model.n_states:
        raise IndexOutOfRange(
            f"electronic state {lam} outside 0..{model.n_states - 1}"
        )


def factorize_interval_single(
    model: VibronicModel, lam: int, t: float
) -> IntervalFactorization:
    """Five-operator string for ``exp(-i H_lam t)`` of a one-mode model.

    In application order: squeeze by ``ln(w0/wl)/2``, displace by ``+delta``,
    rotate by ``-wl t``, displace by ``-delta``, squeeze by ``ln(wl/w0)/2``;
    zero-point phase ``-wl t / 2``.
    """
    _check_state_index(model, lam)
    if model.n_modes != 1:
        raise DimensionMismatch(
            f"single-mode factorization on a {model.n_modes}-mode model"
        )
    w0 = float(model.omega[0, 0])
    wl = float(model.omega[lam, 0])
    delta = float(model.delta[lam, 0])
    x = 0.5 * math.log(wl / w0)
    ops = (
        (SQUEEZE, -x),
        (DISPLACE, delta),
        (ROTATE, -wl * t),
        (DISPLACE, -delta),
        (SQUEEZE, x),
    )
    return IntervalFactorization(ops, -0.5 * wl * t)


def factorize_interval_multi(
    model: VibronicModel, lam: int, t: float
) -> IntervalFactorization:
    """Nine-operator string for ``exp(-i H_lam t)`` of an N-mode model.

    The Duschinsky generator enters as a rotation sandwich around the
    diagonal squeezes; with no mode mixing the string collapses to N copies
    of the single-mode one.
    """
    _check_state_index(model, lam)
    x0 = 0.5 * np.diag(np.log(model.omega[0]))
    xl = 0.5 * np.diag(np.log(model.omega[lam]))
    phi = model.duschinsky_log(lam)
    phi_t = -t * np.diag(model.omega[lam])
    delta = model.delta[lam]
    ops = (
        (SQUEEZE, x0),
        (ROTATE, phi),
        (SQUEEZE, -xl),
        (DISPLACE, delta),
        (ROTATE, phi_t),
        (DISPLACE, -delta),
        (SQUEEZE, xl),
        (ROTATE, -phi),
        (SQUEEZE, -x0),
    )
    return IntervalFactorization(ops, -0.5 * float(model.omega[lam].sum()) * t)


def apply_factorization_single(
    state: SingleModeState, fact: IntervalFactorization
) -> SingleModeState:
    for kind, param in fact.ops:
        state = _SINGLE_APPLY[kind](state, param)
    return SingleModeState(state.alpha, state.t_z, state.zeta + fact.phase)


def apply_factorization_multi(
    state: MultiModeState, fact: IntervalFactorization
) -> MultiModeState:
    for kind, param in fact.ops:
        state = _MULTI_APPLY[kind](state, param)
    return shift_phase_multi(state, fact.phase)


def step_interval_single(
    state: SingleModeState, model: VibronicModel, lam: int, t: float
) -> SingleModeState:
    return apply_factorization_single(state, factorize_interval_single(model, lam, t))


def step_interval_multi(
    state: MultiModeState, model: VibronicModel, lam: int, t: float
) -> MultiModeState:
    return apply_factorization_multi(state, factorize_interval_multi(model, lam, t))


def propagate_pathway(
    model: VibronicModel, lambdas, times, initial: MultiModeState = None
) -> MultiModeState:
    """Fold the interval recurrence over an electronic pathway."""
    lambdas = list(lambdas)
    times = [float(t) for t in times]
    if len(lambdas) != len(times) or not lambdas:
        raise DimensionMismatch("lambdas and times must have equal nonzero length")
    state = vacuum_multi(model.n_modes) if initial is None else initial
    for lam, t in zip(lambdas, times):
        state = step_interval_multi(state, model, lam, t)
    return state


def propagate_pathway_single(
    model: VibronicModel, lambdas, times, initial: SingleModeState = None
) -> SingleModeState:
    """Scalar fast path of :func:`propagate_pathway` for one-mode models."""
    lambdas = list(lambdas)
    times = [float(t) for t in times]
    if len(lambdas) != len(times) or not lambdas:
        raise DimensionMismatch("lambdas and times must have equal nonzero length")
    state = vacuum_single() if initial is None else initial
    for lam, t in zip(lambdas, times):
        state = step_interval_single(state, model, lam, t)
    return state


def effective_ket_general_initial(
    model: VibronicModel, lambdas, times, A0, T_Z0
) -> MultiModeState:
    """Pathway ket for a squeezed coherent initial state, folded into the
    standard vacuum-overlap form.

    Returns ``S(-Z0) D(-A0) R(Phi0) [pathway applied to |A0, Z0>]`` with
    ``Phi0 = (sum_k t_k) diag(w_0)``; the response is then
    ``exp(i phi0 / 2) <0|.>`` with ``phi0 = sum_j w_0j sum_k t_k``.
    """
    A0 = np.asarray(A0, dtype=complex).reshape(-1)
    T_Z0 = np.asarray(T_Z0, dtype=complex)
    state = propagate_pathway(model, lambdas, times, MultiModeState(A0, T_Z0, 0.0))
    phi0 = float(np.sum(times)) * np.diag(model.omega[0])
    state = rotate_multi(state, phi0)
    state = displace_multi(state, -A0)
    return squeeze_multi(state, -matrix_from_tangent(T_Z0))
