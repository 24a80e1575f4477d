"""Shared random generators and comparison helpers for the test suite."""

import numpy as np

from respond.states import MultiModeState, SingleModeState

# Magnitude caps keep truncation tails far below the fidelity tolerances:
# a tangent of 0.5 boosted by a 0.2 squeeze stays near 0.66, whose weight
# beyond n = 80 is ~1e-13.
SINGLE_DIM = 81
MULTI_NMAX = 30


def random_single_state(rng, amp=0.8, tangent=0.5) -> SingleModeState:
    a = complex(*rng.normal(0.0, 0.4, 2))
    if abs(a) > amp:
        a *= amp / abs(a)
    t = complex(*rng.normal(0.0, 0.25, 2))
    if abs(t) > tangent:
        t *= tangent / abs(t)
    return SingleModeState(a, t, float(rng.uniform(-3.0, 3.0)))


def random_multi_state(rng, n=2, amp=0.7, tangent=0.3) -> MultiModeState:
    A = rng.normal(0.0, 0.3, n) + 1j * rng.normal(0.0, 0.3, n)
    norm = np.linalg.norm(A)
    if norm > amp:
        A *= amp / norm
    T = random_symmetric(rng, n, 0.2)
    spectral = np.linalg.norm(T, 2)
    if spectral > tangent:
        T *= tangent / spectral
    return MultiModeState(A, T, float(rng.uniform(-3.0, 3.0)))


def random_symmetric(rng, n, scale):
    M = rng.normal(0.0, scale, (n, n)) + 1j * rng.normal(0.0, scale, (n, n))
    return 0.5 * (M + M.T)


def random_hermitian(rng, n, scale):
    M = rng.normal(0.0, scale, (n, n)) + 1j * rng.normal(0.0, scale, (n, n))
    return 0.5 * (M + M.conj().T)


def random_rotation(rng, n):
    """Haar-ish proper rotation from the QR of a Gaussian matrix."""
    q, r = np.linalg.qr(rng.normal(0.0, 1.0, (n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0.0:
        q[:, 0] = -q[:, 0]
    return q


def overlap_defect(v1, v2) -> float:
    """|1 - <v1|v2>|: zero iff the states agree including global phase."""
    return abs(1.0 - complex(np.vdot(v1, v2)))


def states_close_single(s1: SingleModeState, s2: SingleModeState,
                        tol=1e-10, phase_tol=None) -> bool:
    phase_tol = tol if phase_tol is None else phase_tol
    phase = abs(np.exp(1j * s1.zeta) - np.exp(1j * s2.zeta))
    return (abs(s1.alpha - s2.alpha) < tol
            and abs(s1.t_z - s2.t_z) < tol
            and phase < phase_tol)


def states_close_multi(s1: MultiModeState, s2: MultiModeState,
                       tol=1e-10, phase_tol=None) -> bool:
    phase_tol = tol if phase_tol is None else phase_tol
    phase = abs(np.exp(1j * s1.zeta) - np.exp(1j * s2.zeta))
    return (np.abs(s1.A - s2.A).max() < tol
            and np.abs(s1.T_Z - s2.T_Z).max() < tol
            and phase < phase_tol)
