"""Brute-force oracle in a truncated Fock basis.

Vibrational Hamiltonians are assembled in the tensor-product number basis of
the *ground-state* modes, propagated by dense matrix exponentials (exact for
the truncated operator), and overlapped directly.  This path shares no code
with the squeezed-coherent recurrences, so agreement between the two is a
meaningful check.
"""

import math
from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply

from .errors import NoConvergence, TruncationTooSmall
from .matfun import matrix_from_tangent
from .model import VibronicModel
from .states import MultiModeState, SingleModeState, vacuum_overlap_single

MAX_TENSOR_DIM = 10_000


@dataclass(frozen=True)
class FockConfig:
    """Truncation control: per-mode photon cutoff, tolerance, doubling cap."""

    n_max: int = 16
    tol: float = 1e-8
    max_n_max: int = 128

    def __post_init__(self):
        if self.n_max < 2:
            raise ValueError(f"n_max must be >= 2, got {self.n_max}")
        if not self.tol > 0.0:
            raise ValueError(f"tol must be > 0, got {self.tol}")
        if self.max_n_max < self.n_max:
            raise ValueError("max_n_max must be >= n_max")


@dataclass(frozen=True)
class BogoliubovMap:
    """Excited-state ladder operators in terms of the ground-state ones.

    ``b_j = sum_k (Cp[j,k] a_k + Cm[j,k] a_k^dag) + shift[j]`` with
    ``Cp = (sqrt(w_l/w_0) + sqrt(w_0/w_l)) U / 2`` (elementwise in the row and
    column frequencies) and the minus combination for Cm.
    """

    Cp: np.ndarray
    Cm: np.ndarray
    shift: np.ndarray

    @classmethod
    def from_model(cls, model: VibronicModel, lam: int) -> "BogoliubovMap":
        w0 = model.omega[0]
        wl = model.omega[lam]
        U = model.duschinsky[lam]
        ratio = np.sqrt(np.outer(wl, 1.0 / w0))
        Cp = 0.5 * (ratio + 1.0 / ratio) * U
        Cm = 0.5 * (ratio - 1.0 / ratio) * U
        eye = np.eye(model.n_modes)
        defect = np.abs(Cp @ Cp.T - Cm @ Cm.T - eye).max()
        if defect >= 1e-12:
            raise TruncationTooSmall(
                f"Bogoliubov commutator defect {defect:.3e} for state {lam}"
            )
        return cls(Cp, Cm, model.delta[lam].copy())


def destroy(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1.0, dim)), 1)


def _check_dims(dims) -> int:
    total = int(np.prod(dims))
    if total > MAX_TENSOR_DIM:
        raise ValueError(
            f"truncated dimension {total} exceeds the {MAX_TENSOR_DIM} bound"
        )
    return total


@lru_cache(maxsize=32)
def _lowering_ops(dims):
    """Per-mode annihilation operators on the tensor basis, sparse CSR."""
    _check_dims(dims)
    ops = []
    for mode in range(len(dims)):
        mats = [
            sp.identity(d, format="csr") if m != mode else sp.csr_matrix(destroy(d))
            for m, d in enumerate(dims)
        ]
        ops.append(reduce(lambda x, y: sp.kron(x, y, format="csr"), mats))
    return tuple(ops)


def vacuum_vector(dims) -> np.ndarray:
    psi = np.zeros(_check_dims(dims), dtype=complex)
    psi[0] = 1.0
    return psi


def build_hamiltonian(
    model: VibronicModel, lam: int, fock: FockConfig, *, validate: bool = True
) -> np.ndarray:
    """``H = sum_j w_j (b_j^dag b_j + 1/2)`` in the truncated ground-mode basis."""
    dims = (fock.n_max + 1,) * model.n_modes
    total = _check_dims(dims)
    bog = BogoliubovMap.from_model(model, lam)
    ops = _lowering_ops(dims)
    H = sp.csr_matrix((total, total), dtype=complex)
    eye = sp.identity(total, format="csr")
    for j in range(model.n_modes):
        b = bog.shift[j] * eye
        for k in range(model.n_modes):
            b = b + bog.Cp[j, k] * ops[k] + bog.Cm[j, k] * ops[k].conj().T
        H = H + model.omega[lam, j] * (b.conj().T @ b + 0.5 * eye)
    H = H.toarray()
    H = 0.5 * (H + H.conj().T)
    if validate:
        ground = float(np.linalg.eigvalsh(H)[0])
        _check_ground_energy(model, lam, ground)
    return H


def _check_ground_energy(model, lam, ground):
    exact = 0.5 * float(model.omega[lam].sum())
    if abs(ground - exact) >= 1e-3 * max(1.0, exact):
        raise TruncationTooSmall(
            f"ground energy {ground:.6g} vs exact {exact:.6g} for state {lam}"
        )


class _Propagators:
    """Eigendecompositions of every electronic state's Hamiltonian, one truncation."""

    def __init__(self, model: VibronicModel, n_max: int):
        self.model = model
        self.n_max = n_max
        self._eigs = {}

    def _eig(self, lam):
        if lam not in self._eigs:
            H = build_hamiltonian(
                self.model, lam, FockConfig(n_max=self.n_max, max_n_max=self.n_max),
                validate=False,
            )
            if np.abs(H - np.diag(np.diag(H))).max() == 0.0:
                w = np.diag(H).real
                _check_ground_energy(self.model, lam, float(w.min()))
                self._eigs[lam] = (w, None)
            else:
                w, V = np.linalg.eigh(H)
                _check_ground_energy(self.model, lam, float(w[0]))
                self._eigs[lam] = (w, V)
        return self._eigs[lam]

    def apply(self, psi: np.ndarray, lam: int, t: float) -> np.ndarray:
        w, V = self._eig(lam)
        if V is None:
            return np.exp(-1j * w * t) * psi
        return V @ (np.exp(-1j * w * t) * (V.conj().T @ psi))


def state_at_truncation(model, lambdas, times, n_max: int) -> np.ndarray:
    """``prod_k exp(-i H_{lam_k} t_k) |0>`` at a fixed truncation (no bra phase)."""
    props = _Propagators(model, n_max)
    psi = vacuum_vector((n_max + 1,) * model.n_modes)
    for lam, t in zip(lambdas, times):
        psi = props.apply(psi, lam, t)
    return psi


def response_at_truncation(model, lambdas, times, n_max: int) -> complex:
    psi = state_at_truncation(model, lambdas, times, n_max)
    return bra_zero_point_phase(model, times) * complex(psi[0])


def bra_zero_point_phase(model, times) -> complex:
    """Bra correction ``exp(+i sum_j w_0j sum_k t_k / 2)``."""
    total = float(model.omega[0].sum()) * float(np.sum(times))
    return complex(np.exp(0.5j * total))


def _truncation_ladder(fock: FockConfig):
    ns = [fock.n_max]
    while ns[-1] < fock.max_n_max:
        ns.append(min(2 * ns[-1], fock.max_n_max))
    return ns


class PathwayOracle:
    """Auto-converging oracle with eigendecompositions cached across calls.

    Worth using whenever several pathways or time tuples are evaluated on one
    model: the dense diagonalizations dominate the cost and depend only on
    (electronic state, truncation).
    """

    def __init__(self, model: VibronicModel, fock: FockConfig):
        self.model = model
        self.fock = fock
        self._props = {}

    def _propagators(self, n: int) -> _Propagators:
        if n not in self._props:
            self._props[n] = _Propagators(self.model, n)
        return self._props[n]

    def state(self, lambdas, times, n: int) -> np.ndarray:
        props = self._propagators(n)
        psi = vacuum_vector((n + 1,) * self.model.n_modes)
        for lam, t in zip(lambdas, times):
            psi = props.apply(psi, lam, t)
        return psi

    def response(self, lambdas, times) -> complex:
        if len(lambdas) != len(times):
            raise ValueError("lambdas and times must have equal length")
        phase = bra_zero_point_phase(self.model, times)
        prev = None
        for n in _truncation_ladder(self.fock):
            cur = phase * complex(self.state(lambdas, times, n)[0])
            if prev is not None and abs(cur - prev) < self.fock.tol:
                return cur
            prev = cur
        raise NoConvergence(
            f"oracle response not converged to {self.fock.tol:g} "
            f"at n_max = {self.fock.max_n_max}"
        )

    def converged_state(self, lambdas, times) -> np.ndarray:
        if len(lambdas) != len(times):
            raise ValueError("lambdas and times must have equal length")
        prev = None
        for n in _truncation_ladder(self.fock):
            cur = self.state(lambdas, times, n)
            if prev is not None:
                small = _embed(prev, self.model.n_modes, cur)
                if abs(1.0 - complex(small.conj() @ cur)) < self.fock.tol:
                    return cur
            prev = cur
        raise NoConvergence(
            f"oracle state not converged to {self.fock.tol:g} "
            f"at n_max = {self.fock.max_n_max}"
        )


def oracle_response(model, lambdas, times, fock: FockConfig) -> complex:
    """Response via dense propagation, doubling n_max until successive values agree."""
    return PathwayOracle(model, fock).response(lambdas, times)


def oracle_state(model, lambdas, times, fock: FockConfig) -> np.ndarray:
    """Propagated Fock vector, doubling n_max until the embedded overlap is stable."""
    return PathwayOracle(model, fock).converged_state(lambdas, times)


def _embed(small: np.ndarray, n_modes: int, big: np.ndarray) -> np.ndarray:
    d_small = round(small.size ** (1.0 / n_modes))
    d_big = round(big.size ** (1.0 / n_modes))
    out = np.zeros((d_big,) * n_modes, dtype=complex)
    out[(slice(0, d_small),) * n_modes] = small.reshape((d_small,) * n_modes)
    return out.reshape(-1)


# -- Elementary operators applied to Fock vectors, for fidelity checks --


def _apply_generator(G, psi: np.ndarray) -> np.ndarray:
    """``exp(G) psi`` for a sparse anti-Hermitian generator (norm preserving)."""
    return expm_multiply(G, np.asarray(psi, dtype=complex))


def rotation_generator(Phi, dims):
    """Sparse ``i a^dag . Phi . a`` on the truncated tensor basis."""
    Phi = np.atleast_2d(np.asarray(Phi, dtype=complex))
    ops = _lowering_ops(dims)
    total = _check_dims(dims)
    G = sp.csr_matrix((total, total), dtype=complex)
    for j in range(len(dims)):
        for k in range(len(dims)):
            if Phi[j, k] != 0.0:
                G = G + Phi[j, k] * (ops[j].conj().T @ ops[k])
    return 1j * G


def displacement_generator(B, dims):
    """Sparse ``B . a^dag - B^dag . a`` on the truncated tensor basis."""
    B = np.atleast_1d(np.asarray(B, dtype=complex))
    ops = _lowering_ops(dims)
    total = _check_dims(dims)
    G = sp.csr_matrix((total, total), dtype=complex)
    for j in range(len(dims)):
        G = G + B[j] * ops[j].conj().T - B[j].conjugate() * ops[j]
    return G


def squeeze_generator(W, dims):
    """Sparse ``(a . W^dag . a - a^dag . W . a^dag)/2`` on the truncated tensor basis."""
    W = np.atleast_2d(np.asarray(W, dtype=complex))
    ops = _lowering_ops(dims)
    total = _check_dims(dims)
    G = sp.csr_matrix((total, total), dtype=complex)
    for j in range(len(dims)):
        for k in range(len(dims)):
            if W[j, k] != 0.0:
                G = G + 0.5 * W[j, k].conjugate() * (ops[j] @ ops[k])
                G = G - 0.5 * W[j, k] * (ops[j].conj().T @ ops[k].conj().T)
    return G


def apply_rotation(psi, Phi, dims) -> np.ndarray:
    return _apply_generator(rotation_generator(Phi, dims), psi)


def apply_displacement(psi, B, dims) -> np.ndarray:
    return _apply_generator(displacement_generator(B, dims), psi)


def apply_squeeze(psi, W, dims) -> np.ndarray:
    return _apply_generator(squeeze_generator(W, dims), psi)


# -- Fock expansions of squeezed coherent states --


def fock_vector_single(state: SingleModeState, dim: int) -> np.ndarray:
    """Number-basis expansion of a single-mode state, global phase included.

    Uses the standard three-term recurrence of the Hermite-series expansion,
    seeded by the closed-form vacuum overlap.
    """
    a, t = state.alpha, state.t_z
    c = np.zeros(dim, dtype=complex)
    c[0] = vacuum_overlap_single(SingleModeState(a, t, 0.0))
    drive = a + t * a.conjugate()
    for n in range(dim - 1):
        prev = c[n - 1] if n else 0.0
        c[n + 1] = (drive * c[n] - math.sqrt(n) * t * prev) / math.sqrt(n + 1)
    return np.exp(1j * state.zeta) * c


def fock_vector_multi(state: MultiModeState, n_max: int) -> np.ndarray:
    """Number-basis expansion of a multimode state via truncated generators."""
    dims = (n_max + 1,) * state.n_modes
    Z = matrix_from_tangent(state.T_Z)
    psi = vacuum_vector(dims)
    psi = apply_squeeze(psi, Z, dims)
    psi = apply_displacement(psi, state.A, dims)
    return np.exp(1j * state.zeta) * psi
