"""Matrix-function toolbox for symmetric squeeze matrices and orthogonal rotations.

Every squeeze update needs the polar pieces of a complex symmetric matrix
``Z = |Z| exp(i Theta)``.  They are obtained here through the Takagi
factorization ``Z = V diag(s) V^T``, from which

    |Z|            = V diag(s) V^dag,
    exp(i Theta)   = V V^T,
    f(|Z|) e^{iTh} = V diag(f(s)) V^T     for any scalar f with f(0) = 0.
"""

import math
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import (
    NonSymmetric,
    NotOrthogonal,
    ReconstructionFailure,
    ReflectionInput,
    SpectralOverflow,
)

SYMMETRY_TOL = 1e-12
RESIDUAL_TOL = 1e-10
ORTHOGONALITY_TOL = 1e-10

# The handful of constant squeeze/rotation matrices of a model are reused
# thousands of times during grid scans; memoize on exact bytes (LRU so the
# per-point varying inputs churn without evicting the hot constants).
_TAKAGI_CACHE: OrderedDict = OrderedDict()
_UNITARY_CACHE: OrderedDict = OrderedDict()
_CACHE_MAX = 64


def _cache_get(cache, key):
    hit = cache.get(key)
    if hit is not None:
        cache.move_to_end(key)
    return hit


def _cache_put(cache, key, value):
    if len(cache) >= _CACHE_MAX:
        cache.popitem(last=False)
    cache[key] = value


@dataclass(frozen=True)
class TakagiFactorization:
    """Symmetric SVD ``Z = V diag(s) V^T`` with unitary V and descending s >= 0."""

    V: np.ndarray
    s: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.V * self.s) @ self.V.T

    def hermitian_func(self, f) -> np.ndarray:
        """``V diag(f(s)) V^dag``: a function of ``|Z|``."""
        return (self.V * f(self.s)) @ self.V.conj().T

    def symmetric_func(self, f) -> np.ndarray:
        """``V diag(f(s)) V^T``: a function of ``|Z|`` times ``exp(i Theta)``."""
        return (self.V * f(self.s)) @ self.V.T


def _require_symmetric(Z: np.ndarray, tol: float = SYMMETRY_TOL) -> np.ndarray:
    if Z.ndim != 2 or Z.shape[0] != Z.shape[1]:
        raise NonSymmetric(f"expected a square matrix, got shape {Z.shape}")
    if Z.shape[0] and np.abs(Z - Z.T).max() >= tol:
        raise NonSymmetric(
            f"matrix is not symmetric: max |Z - Z^T| = {np.abs(Z - Z.T).max():.3e}"
        )
    return 0.5 * (Z + Z.T)


def takagi(Z, *, residual_tol: float = RESIDUAL_TOL) -> TakagiFactorization:
    """Takagi factorization of a complex symmetric matrix.

    Built from a standard SVD: within each group of (near-)equal singular
    values the matrix coupling left and right singular vectors is unitary
    symmetric, and its principal square root rephases the left vectors into
    Takagi vectors.  The reconstruction residual is always verified.
    """
    Z = np.asarray(Z, dtype=complex)
    key = (Z.shape[0], Z.tobytes())
    hit = _cache_get(_TAKAGI_CACHE, key)
    if hit is not None:
        return hit

    Zs = _require_symmetric(Z)
    U, s, Vh = np.linalg.svd(Zs)
    n = Zs.shape[0]

    # B = U^dag conj(V) is block diagonal over groups of equal singular values
    # and unitary symmetric within each nonzero group.
    B = U.conj().T @ Vh.T
    V = np.empty_like(U)
    gap = 1e-8 * max(1.0, s[0] if n else 0.0)
    start = 0
    for stop in range(1, n + 1):
        if stop < n and s[stop - 1] - s[stop] <= gap:
            continue
        idx = np.arange(start, stop)
        Bg = B[np.ix_(idx, idx)]
        if len(idx) == 1:
            W = np.sqrt(Bg)
        else:
            W = sla.sqrtm(0.5 * (Bg + Bg.T))
        V[:, idx] = U[:, idx] @ W
        start = stop

    residual = np.abs((V * s) @ V.T - Zs).max() if n else 0.0
    unitarity = np.abs(V.conj().T @ V - np.eye(n)).max() if n else 0.0
    if residual >= residual_tol or unitarity >= residual_tol:
        raise ReconstructionFailure(
            f"Takagi residual {residual:.3e}, unitarity defect {unitarity:.3e}"
        )

    result = TakagiFactorization(_readonly(V), _readonly(s))
    _cache_put(_TAKAGI_CACHE, key, result)
    return result


def tangent_from_matrix(Z) -> np.ndarray:
    """Squeeze tangent ``tanh|Z| exp(i Theta_Z)`` of a symmetric matrix Z."""
    return takagi(Z).symmetric_func(np.tanh)


def matrix_from_tangent(T) -> np.ndarray:
    """Inverse of :func:`tangent_from_matrix`; requires spectral norm < 1."""
    fac = takagi(T)
    if fac.s.size and fac.s.max() >= 1.0:
        raise SpectralOverflow(
            f"tangent spectral norm {fac.s.max():.17g} is not below 1"
        )
    return fac.symmetric_func(np.arctanh)


def sech_from_tangent(T) -> np.ndarray:
    """Hermitian principal square root of ``I - T T^dag``.

    For the tangent T of a symmetric squeeze matrix Z this equals ``sech|Z|``.
    """
    T = np.asarray(T, dtype=complex)
    n = T.shape[0]
    M = np.eye(n) - T @ T.conj().T
    w, V = np.linalg.eigh(0.5 * (M + M.conj().T))
    if n and not (w > 0.0).all():
        raise SpectralOverflow(
            f"tangent spectral norm is not below 1 (min eig of I - T T^dag = {w.min():.3e})"
        )
    return (V * np.sqrt(w)) @ V.conj().T


def unitary_from_hermitian(Phi) -> np.ndarray:
    """``exp(i Phi)`` for Hermitian Phi, exactly unitary by construction."""
    Phi = np.asarray(Phi, dtype=complex)
    diag = np.diag(np.diag(Phi))
    if np.abs(Phi - diag).max() == 0.0:
        return np.diag(np.exp(1j * np.diag(Phi).real))
    key = (Phi.shape[0], Phi.tobytes())
    hit = _cache_get(_UNITARY_CACHE, key)
    if hit is not None:
        return hit
    w, V = np.linalg.eigh(Phi)
    result = _readonly((V * np.exp(1j * w)) @ V.conj().T)
    _cache_put(_UNITARY_CACHE, key, result)
    return result


def orthogonal_log(U, *, tol: float = ORTHOGONALITY_TOL) -> np.ndarray:
    """Hermitian Phi with ``exp(i Phi) = U`` for a proper rotation matrix U.

    Uses the real Schur form: each 2x2 rotation block contributes its angle in
    (-pi, pi], and pairs of -1 eigenvalues are grouped into rotations by +pi,
    which keeps ``i Phi`` real antisymmetric (deterministic branch at pi).
    """
    U = np.asarray(U, dtype=float)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise NotOrthogonal(f"expected a square matrix, got shape {U.shape}")
    n = U.shape[0]
    if np.abs(U.T @ U - np.eye(n)).max() >= tol:
        raise NotOrthogonal(
            f"matrix is not orthogonal to {tol:.1e}: "
            f"max |U^T U - I| = {np.abs(U.T @ U - np.eye(n)).max():.3e}"
        )
    if np.linalg.det(U) < 0.0:
        raise ReflectionInput("determinant is -1; no real rotation generator exists")

    T, Q = sla.schur(U, output="real")
    K = np.zeros((n, n))
    minus_ones = []
    i = 0
    while i < n:
        if i + 1 < n and abs(T[i + 1, i]) > 1e-14:
            c = 0.5 * (T[i, i] + T[i + 1, i + 1])
            sn = 0.5 * (T[i, i + 1] - T[i + 1, i])
            phi = math.atan2(sn, c)
            K[i, i + 1] = phi
            K[i + 1, i] = -phi
            i += 2
        else:
            if T[i, i] < 0.0:
                minus_ones.append(i)
            i += 1
    if len(minus_ones) % 2:
        raise ReflectionInput("odd number of -1 eigenvalues; determinant is -1")
    for a, b in zip(minus_ones[0::2], minus_ones[1::2]):
        K[a, b] = math.pi
        K[b, a] = -math.pi

    M = Q @ K @ Q.T
    Phi = -0.5j * (M - M.T)
    if np.abs(unitary_from_hermitian(Phi) - U).max() >= tol:
        raise NotOrthogonal("rotation logarithm failed the exp round-trip check")
    return Phi


def _readonly(a: np.ndarray) -> np.ndarray:
    if isinstance(a, np.ndarray) and not a.flags.writeable:
        return a
    a = np.array(a)
    a.setflags(write=False)
    return a
