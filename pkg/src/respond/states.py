"""Squeezed coherent states and their exact transformation rules.

A single-mode state is ``exp(i zeta) |alpha, z>`` with ``|alpha, z> =
D(alpha) S(z) |0>``.  The squeeze parameter is stored as its tangent
``t_z = exp(i theta_z) tanh|z|``, which is the quantity all update rules act
on; ``z`` itself is recovered on demand.  Multimode states carry a complex
amplitude vector A and a complex symmetric tangent matrix T_Z.

All types are immutable values and all operations are pure functions, so
independent states may be transformed concurrently.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NonHermitian,
    SingularMatrix,
    SqueezeOverflow,
)
from .matfun import (
    _readonly,
    sech_from_tangent,
    takagi,
    unitary_from_hermitian,
)

HERMITICITY_TOL = 1e-12
SYMMETRY_TOL = 1e-12
TANGENT_LIMIT = 1.0 - 1e-12


@dataclass(frozen=True)
class SingleModeState:
    """One bosonic mode: coherent amplitude, squeeze tangent, global phase.

    ``zeta`` is kept unwrapped (accumulated additively); only ``exp(i zeta)``
    ever enters an overlap.
    """

    alpha: complex
    t_z: complex
    zeta: float = 0.0

    def __post_init__(self):
        if not abs(self.t_z) < 1.0:
            raise SqueezeOverflow(
                f"|t_z| = {abs(self.t_z):.17g} is outside the tanh range"
            )

    @property
    def z(self) -> complex:
        """Squeeze parameter ``z = atanh|t_z| exp(i theta_z)``."""
        mag = abs(self.t_z)
        if mag == 0.0:
            return 0j
        return math.atanh(mag) * self.t_z / mag


def vacuum_single() -> SingleModeState:
    return SingleModeState(0j, 0j, 0.0)


def rotate_single(state: SingleModeState, phi: float) -> SingleModeState:
    """Apply ``R(phi) = exp(i phi a^dag a)``."""
    ph = cmath.exp(1j * phi)
    return SingleModeState(state.alpha * ph, state.t_z * ph * ph, state.zeta)


def displace_single(state: SingleModeState, beta: complex) -> SingleModeState:
    """Apply ``D(beta) = exp(beta a^dag - beta^* a)``."""
    val = -0.5j * (beta * state.alpha.conjugate() - beta.conjugate() * state.alpha)
    assert abs(val.imag) < 1e-14
    return SingleModeState(state.alpha + beta, state.t_z, state.zeta + val.real)


def squeeze_single(state: SingleModeState, w: complex) -> SingleModeState:
    """Apply ``S(w) = exp((w^* a^2 - w a^dag^2)/2)``.

    The phase factor is the principal square root of
    ``(1 + t_w t_z^*)/|1 + t_w t_z^*|``; since ``|t_w t_z^*| < 1`` its argument
    stays in (-pi/2, pi/2) and the branch never hits the cut.
    """
    aw = abs(w)
    if aw == 0.0:
        return state
    ph_w = w / aw
    t_w = ph_w * math.tanh(aw)
    alpha = state.alpha * math.cosh(aw) - state.alpha.conjugate() * ph_w * math.sinh(aw)
    t_new = (state.t_z + t_w) / (1.0 + state.t_z * t_w.conjugate())
    if abs(t_new) >= TANGENT_LIMIT:
        raise SqueezeOverflow(
            f"squeeze tangent reached |t| = {abs(t_new):.17g}"
        )
    zeta = state.zeta + 0.5 * cmath.phase(1.0 + t_w * state.t_z.conjugate())
    return SingleModeState(alpha, t_new, zeta)


def vacuum_overlap_single(state: SingleModeState) -> complex:
    """``<0| exp(i zeta) |alpha, z>`` from the closed-form Gaussian overlap.

    The exponent is ``-(|alpha|^2 + t_z alpha*^2)/2``; the sign of the tangent
    term is fixed by expanding ``D(alpha) S(z) |0>`` in the number basis.
    """
    a, t = state.alpha, state.t_z
    inv_cosh = math.sqrt(1.0 - abs(t) ** 2)
    amp = math.sqrt(inv_cosh) * cmath.exp(-0.5 * (abs(a) ** 2 + t * a.conjugate() ** 2))
    return cmath.exp(1j * state.zeta) * amp


@dataclass(frozen=True)
class MultiModeState:
    """N bosonic modes: amplitude vector A, symmetric tangent matrix T_Z, phase."""

    A: np.ndarray
    T_Z: np.ndarray
    zeta: float = 0.0

    def __post_init__(self):
        A = _readonly(np.asarray(self.A, dtype=complex).reshape(-1))
        T = np.asarray(self.T_Z, dtype=complex)
        if T.shape != (A.size, A.size):
            raise DimensionMismatch(
                f"T_Z shape {T.shape} does not match {A.size} modes"
            )
        if A.size and np.abs(T - T.T).max() >= SYMMETRY_TOL:
            raise NonSymmetric(
                f"T_Z is not symmetric: max |T - T^T| = {np.abs(T - T.T).max():.3e}"
            )
        T = _readonly(0.5 * (T + T.T))
        if A.size and np.linalg.norm(T, 2) >= 1.0:
            raise SqueezeOverflow("spectral norm of T_Z is not strictly below 1")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "T_Z", T)

    @property
    def n_modes(self) -> int:
        return self.A.size


def vacuum_multi(n_modes: int) -> MultiModeState:
    return MultiModeState(np.zeros(n_modes, complex), np.zeros((n_modes, n_modes), complex))


def _trusted_state(A: np.ndarray, T: np.ndarray, zeta: float) -> MultiModeState:
    """Internal constructor for update rules whose output invariants are
    guaranteed analytically; skips the (SVD-based) re-validation."""
    state = object.__new__(MultiModeState)
    object.__setattr__(state, "A", _readonly(A))
    object.__setattr__(state, "T_Z", _readonly(T))
    object.__setattr__(state, "zeta", float(zeta))
    return state


def shift_phase_multi(state: MultiModeState, delta_zeta: float) -> MultiModeState:
    st = object.__new__(MultiModeState)
    object.__setattr__(st, "A", state.A)
    object.__setattr__(st, "T_Z", state.T_Z)
    object.__setattr__(st, "zeta", state.zeta + float(delta_zeta))
    return st


def rotate_multi(state: MultiModeState, Phi) -> MultiModeState:
    """Apply ``R_N(Phi) = exp(i a^dag . Phi . a)`` for Hermitian Phi."""
    Phi = np.asarray(Phi, dtype=complex)
    if Phi.shape != (state.n_modes, state.n_modes):
        raise DimensionMismatch(
            f"Phi shape {Phi.shape} does not match {state.n_modes} modes"
        )
    if state.n_modes and np.abs(Phi - Phi.conj().T).max() >= HERMITICITY_TOL:
        raise NonHermitian(
            f"max |Phi - Phi^dag| = {np.abs(Phi - Phi.conj().T).max():.3e}"
        )
    R = unitary_from_hermitian(0.5 * (Phi + Phi.conj().T))
    T = R @ state.T_Z @ R.T
    return _trusted_state(R @ state.A, 0.5 * (T + T.T), state.zeta)


def displace_multi(state: MultiModeState, B) -> MultiModeState:
    """Apply ``D_N(B) = exp(B . a^dag - B^dag . a)``."""
    B = np.asarray(B, dtype=complex).reshape(-1)
    if B.size != state.n_modes:
        raise DimensionMismatch(
            f"displacement length {B.size} does not match {state.n_modes} modes"
        )
    val = -0.5j * (state.A.conj() @ B - B.conj() @ state.A)
    assert abs(val.imag) < 1e-14
    out = _trusted_state(state.A + B, state.T_Z, state.zeta + val.real)
    return out


def squeeze_multi(state: MultiModeState, W) -> MultiModeState:
    """Apply the multimode squeeze ``S_N(W)`` for complex symmetric W.

    The amplitude transforms with ``cosh|W|`` and ``sinh|W| exp(i Theta_W)``;
    the tangent by the matrix Moebius rule; the phase increment is half the
    sum of the principal eigenvalue phases of the unitary
    ``S_Z'^-1 S_W (I + T_Z T_W^dag)^-1 S_Z``.
    """
    W = np.asarray(W, dtype=complex)
    if W.shape != (state.n_modes, state.n_modes):
        raise DimensionMismatch(
            f"W shape {W.shape} does not match {state.n_modes} modes"
        )
    fac = takagi(W)
    if fac.s.size == 0 or fac.s.max() == 0.0:
        return state

    cosh_w = fac.hermitian_func(np.cosh)
    sinh_w_phase = fac.symmetric_func(np.sinh)
    T_w = fac.symmetric_func(np.tanh)
    S_w = fac.hermitian_func(lambda s: 1.0 / np.cosh(s))
    T_z = state.T_Z
    eye = np.eye(state.n_modes)

    A = cosh_w @ state.A - sinh_w_phase @ state.A.conj()
    try:
        right = np.linalg.solve((eye + T_w.conj().T @ T_z).T, (T_w + T_z).T).T
        T_new = np.linalg.solve(S_w, right) @ S_w.T
    except np.linalg.LinAlgError as exc:
        raise SingularMatrix(f"squeeze tangent update failed: {exc}") from exc
    T_new = 0.5 * (T_new + T_new.T)
    if np.linalg.norm(T_new, 2) >= TANGENT_LIMIT:
        raise SqueezeOverflow("squeeze tangent spectral norm reached 1")

    S_z = sech_from_tangent(T_z)
    S_znew = sech_from_tangent(T_new)
    try:
        inner = np.linalg.solve(eye + T_z @ T_w.conj().T, S_z)
        phase_matrix = np.linalg.solve(S_znew, S_w @ inner)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrix(f"squeeze phase update failed: {exc}") from exc
    tr_phi = float(np.angle(np.linalg.eigvals(phase_matrix)).sum())
    return _trusted_state(A, T_new, state.zeta + 0.5 * tr_phi)


def vacuum_overlap_multi(state: MultiModeState) -> complex:
    """``<0| exp(i zeta) |A, Z>`` via ``det(S_Z)^{1/2}`` and the Gaussian form.

    As in the single-mode case the exponent is ``-(A^dag A + A^dag T_Z A^*)/2``.
    """
    S_z = sech_from_tangent(state.T_Z)
    det = float(np.prod(np.linalg.eigvalsh(S_z)))
    quad = state.A.conj() @ state.A + state.A.conj() @ state.T_Z @ state.A.conj()
    return cmath.exp(1j * state.zeta) * math.sqrt(det) * cmath.exp(-0.5 * quad)


def single_from_multi(state: MultiModeState) -> SingleModeState:
    """View a one-mode multimode state as a SingleModeState."""
    if state.n_modes != 1:
        raise DimensionMismatch(f"state has {state.n_modes} modes, expected 1")
    return SingleModeState(complex(state.A[0]), complex(state.T_Z[0, 0]), state.zeta)


def multi_from_single(state: SingleModeState) -> MultiModeState:
    return MultiModeState(
        np.array([state.alpha]), np.array([[state.t_z]]), state.zeta
    )
