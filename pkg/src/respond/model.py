"""Harmonic vibronic model: electronic levels dressed with state-dependent modes.

All quantities are dimensionless: angular frequencies are divided by a common
reference ``omega_ref`` (kept for record keeping only), energies are in units
of ``hbar * omega_ref``, times in ``1 / omega_ref``, and ``delta`` displaces
the ladder operators directly (``d_j = sqrt(2 / omega_j) * delta_j`` would be
the position-space displacement).
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import RespondError, SchemaError
from .matfun import _readonly, orthogonal_log


@dataclass(frozen=True)
class VibronicModel:
    """Electronic energies/dipoles plus per-state mode parameters.

    State 0 is the electronic ground state and fixes the reference modes:
    its displacements vanish and its Duschinsky matrix is the identity.
    """

    omega_ref: float
    epsilon: np.ndarray      # (n_states,)
    omega: np.ndarray        # (n_states, n_modes), > 0
    delta: np.ndarray        # (n_states, n_modes)
    duschinsky: np.ndarray   # (n_states, n_modes, n_modes), proper rotations
    mu: np.ndarray           # (n_states, n_states), real symmetric
    gamma_deph: float = 0.0
    gamma_relax: float = 0.0

    def __post_init__(self):
        epsilon = _readonly(np.asarray(self.epsilon, dtype=float).reshape(-1))
        omega = _readonly(np.atleast_2d(np.asarray(self.omega, dtype=float)))
        delta = _readonly(np.atleast_2d(np.asarray(self.delta, dtype=float)))
        dusch = _readonly(np.asarray(self.duschinsky, dtype=float))
        mu = _readonly(np.atleast_2d(np.asarray(self.mu, dtype=float)))
        n_states = epsilon.size
        if n_states < 1:
            raise SchemaError("states: at least the electronic ground state is required")
        n_modes = omega.shape[1] if omega.ndim == 2 else 0
        if dusch.ndim != 3:
            dusch = dusch.reshape(n_states, n_modes, n_modes)
        _check_shape("omega", omega, (n_states, n_modes))
        _check_shape("delta", delta, (n_states, n_modes))
        _check_shape("duschinsky", dusch, (n_states, n_modes, n_modes))
        _check_shape("dipoles", mu, (n_states, n_states))
        if not self.omega_ref > 0.0:
            raise SchemaError(f"omega_ref: must be > 0, got {self.omega_ref!r}")
        if not (omega > 0.0).all():
            j = np.argwhere(~(omega > 0.0))[0]
            raise SchemaError(f"states[{j[0]}].omega[{j[1]}]: must be > 0")
        if self.gamma_deph < 0.0 or self.gamma_relax < 0.0:
            raise SchemaError("gamma_deph / gamma_relax: rates must be >= 0")
        if np.abs(mu - mu.T).max() >= 1e-12:
            raise SchemaError("dipoles: matrix must be symmetric")
        if n_modes:
            if np.abs(delta[0]).max() >= 1e-12:
                raise SchemaError("states[0].delta: ground-state displacement must be 0")
            if np.abs(dusch[0] - np.eye(n_modes)).max() >= 1e-12:
                raise SchemaError("states[0].duschinsky: must be the identity")
        phis = []
        for lam in range(n_states):
            try:
                phis.append(_readonly(orthogonal_log(dusch[lam])))
            except RespondError as exc:
                raise SchemaError(f"states[{lam}].duschinsky: {exc}") from exc
        object.__setattr__(self, "epsilon", epsilon)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "duschinsky", dusch)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "_duschinsky_log", tuple(phis))

    @property
    def n_states(self) -> int:
        return self.epsilon.size

    @property
    def n_modes(self) -> int:
        return self.omega.shape[1]

    def duschinsky_log(self, lam: int) -> np.ndarray:
        """Cached Hermitian generator of the Duschinsky rotation of state lam."""
        return self._duschinsky_log[lam]


def single_mode_model(
    omega0: float,
    omega1: float,
    delta1: float,
    *,
    epsilon1: float = 0.0,
    mu01: float = 1.0,
    gamma_deph: float = 0.0,
    gamma_relax: float = 0.0,
) -> VibronicModel:
    """Two-level, one-mode model (the workhorse of the worked examples)."""
    return VibronicModel(
        omega_ref=1.0,
        epsilon=np.array([0.0, epsilon1]),
        omega=np.array([[omega0], [omega1]]),
        delta=np.array([[0.0], [delta1]]),
        duschinsky=np.array([[[1.0]], [[1.0]]]),
        mu=np.array([[0.0, mu01], [mu01, 0.0]]),
        gamma_deph=gamma_deph,
        gamma_relax=gamma_relax,
    )


def two_mode_model(
    omega0,
    omega1,
    delta1,
    angle: float,
    *,
    epsilon1: float = 0.0,
    mu01: float = 1.0,
    gamma_deph: float = 0.0,
    gamma_relax: float = 0.0,
) -> VibronicModel:
    """Two-level, two-mode model with a single Duschinsky rotation angle."""
    c, s = np.cos(angle), np.sin(angle)
    return VibronicModel(
        omega_ref=1.0,
        epsilon=np.array([0.0, epsilon1]),
        omega=np.array([list(omega0), list(omega1)]),
        delta=np.array([[0.0, 0.0], list(delta1)]),
        duschinsky=np.array([np.eye(2), [[c, s], [-s, c]]]),
        mu=np.array([[0.0, mu01], [mu01, 0.0]]),
        gamma_deph=gamma_deph,
        gamma_relax=gamma_relax,
    )


def _check_shape(name, arr, shape):
    if arr.shape != shape:
        raise SchemaError(f"{name}: expected shape {shape}, got {arr.shape}")


def model_from_dict(doc: dict) -> VibronicModel:
    """Validate a parsed model document; error messages carry the JSON path."""
    if not isinstance(doc, dict):
        raise SchemaError(f"document root: expected an object, got {type(doc).__name__}")
    for key in ("omega_ref", "modes", "states", "dipoles"):
        if key not in doc:
            raise SchemaError(f"{key}: required key is missing")
    unknown = set(doc) - {
        "omega_ref", "modes", "states", "dipoles", "gamma_deph", "gamma_relax",
    }
    if unknown:
        raise SchemaError(f"unknown keys: {sorted(unknown)}")
    n_modes = _expect_int(doc, "modes")
    states = doc["states"]
    if not isinstance(states, list) or not states:
        raise SchemaError("states: expected a non-empty array")
    epsilon, omega, delta, dusch = [], [], [], []
    for i, st in enumerate(states):
        path = f"states[{i}]"
        if not isinstance(st, dict):
            raise SchemaError(f"{path}: expected an object")
        for key in ("epsilon", "omega", "delta", "duschinsky"):
            if key not in st:
                raise SchemaError(f"{path}.{key}: required key is missing")
        epsilon.append(_expect_number(st, "epsilon", path))
        omega.append(_expect_vector(st, "omega", n_modes, path))
        delta.append(_expect_vector(st, "delta", n_modes, path))
        dusch.append(_expect_matrix(st, "duschinsky", n_modes, path))
    mu = _expect_matrix(doc, "dipoles", len(states), "")
    return VibronicModel(
        omega_ref=_expect_number(doc, "omega_ref"),
        epsilon=np.array(epsilon),
        omega=np.array(omega).reshape(len(states), n_modes),
        delta=np.array(delta).reshape(len(states), n_modes),
        duschinsky=np.array(dusch).reshape(len(states), n_modes, n_modes),
        mu=mu,
        gamma_deph=float(doc.get("gamma_deph", 0.0)),
        gamma_relax=float(doc.get("gamma_relax", 0.0)),
    )


def model_to_dict(model: VibronicModel) -> dict:
    return {
        "omega_ref": model.omega_ref,
        "modes": model.n_modes,
        "states": [
            {
                "epsilon": float(model.epsilon[lam]),
                "omega": model.omega[lam].tolist(),
                "delta": model.delta[lam].tolist(),
                "duschinsky": model.duschinsky[lam].tolist(),
            }
            for lam in range(model.n_states)
        ],
        "dipoles": model.mu.tolist(),
        "gamma_deph": model.gamma_deph,
        "gamma_relax": model.gamma_relax,
    }


def load_model(path) -> VibronicModel:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    try:
        return model_from_dict(doc)
    except SchemaError as exc:
        raise SchemaError(f"{path}: {exc}") from exc


def save_model(model: VibronicModel, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(model_to_dict(model), fh, indent=2)
        fh.write("\n")


def _number_at(val, where):
    if not isinstance(val, (int, float)) or isinstance(val, bool):
        raise SchemaError(f"{where}: expected a number, got {val!r}")
    return float(val)


def _expect_number(obj, key, path=""):
    return _number_at(obj[key], _join(path, key))


def _expect_int(obj, key, path=""):
    val = obj[key]
    if not isinstance(val, int) or isinstance(val, bool):
        raise SchemaError(f"{_join(path, key)}: expected an integer, got {val!r}")
    return val


def _expect_vector(obj, key, n, path=""):
    where = _join(path, key)
    val = obj[key]
    if not isinstance(val, list) or len(val) != n:
        raise SchemaError(f"{where}: expected an array of {n} numbers")
    return [_number_at(v, f"{where}[{i}]") for i, v in enumerate(val)]


def _expect_matrix(obj, key, n, path=""):
    where = _join(path, key)
    val = obj[key]
    if not isinstance(val, list) or len(val) != n:
        raise SchemaError(f"{where}: expected {n} rows")
    rows = []
    for i, row in enumerate(val):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"{where}[{i}]: expected an array of {n} numbers")
        rows.append([_number_at(v, f"{where}[{i}][{j}]") for j, v in enumerate(row)])
    return np.array(rows)


def _join(path, key):
    return f"{path}.{key}" if path else key
