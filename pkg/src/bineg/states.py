"""Constructors for the two-qubit state families, with their closed-form measures.

Each family comes as a pair: ``family(...)`` builds the density matrix and
``family_measures(...)`` evaluates the published closed-form concurrence /
negativity / binegativity for the same parameters, so the two can be checked
against each other through the spectral pipeline.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .measures import MeasureTriple
from .qmat import (
    IDENTITY_4,
    PAULIS,
    ValidationError,
    ket,
    kron,
    projector,
    validate_density_matrix,
)

PSI_MINUS = (ket(1) - ket(2)) / np.sqrt(2.0)  # singlet (|01> - |10>)/sqrt(2)
PSI_PLUS = (ket(1) + ket(2)) / np.sqrt(2.0)
PHI_PLUS = (ket(0) + ket(3)) / np.sqrt(2.0)
PHI_MINUS = (ket(0) - ket(3)) / np.sqrt(2.0)

_PARAM_TOL = 1e-12


def werner(p: float) -> np.ndarray:
    """Werner state: (1-p)/4 * I + p |psi-><psi-|, p in [0, 1]."""
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"werner: p must lie in [0, 1], got {p}")
    return werner_extended(p)


def werner_extended(p: float) -> np.ndarray:
    """Werner-form state for p in [-1/3, 1]; the full U x U invariant family.

    Twirling maps arbitrary states into this extended range.
    """
    if not -1.0 / 3.0 - _PARAM_TOL <= p <= 1.0 + _PARAM_TOL:
        raise ValidationError(f"werner_extended: p must lie in [-1/3, 1], got {p}")
    return (1.0 - p) / 4.0 * IDENTITY_4 + p * projector(PSI_MINUS)


def werner_measures(p: float) -> MeasureTriple:
    """C = N = N2 = max(0, (3p-1)/2)."""
    value = max(0.0, (3.0 * p - 1.0) / 2.0)
    return MeasureTriple(value, value, value)


def bell_diagonal(c1: float, c2: float, c3: float) -> np.ndarray:
    """Bell-diagonal state (I + sum_i c_i s_i x s_i)/4.

    Valid only when all four Bell-basis eigenvalues are nonnegative.
    """
    if min(bell_diagonal_eigenvalues(c1, c2, c3)) < -_PARAM_TOL:
        raise ValidationError(
            f"bell_diagonal: parameters ({c1}, {c2}, {c3}) give a negative eigenvalue"
        )
    rho = IDENTITY_4.copy()
    for c, sigma in zip((c1, c2, c3), PAULIS):
        rho += c * kron(sigma, sigma)
    return rho / 4.0


def bell_diagonal_eigenvalues(c1: float, c2: float, c3: float) -> list[float]:
    """The four eigenvalues [1 + (-1)^m c1 - (-1)^(m+n) c2 + (-1)^n c3]/4."""
    return [
        (1.0 + (-1.0) ** m * c1 - (-1.0) ** (m + n) * c2 + (-1.0) ** n * c3) / 4.0
        for m in (0, 1)
        for n in (0, 1)
    ]


def bell_diagonal_measures(c1: float, c2: float, c3: float) -> MeasureTriple:
    """C = N = N2 = max(0, 2*lambda_max - 1)."""
    lam_max = max(bell_diagonal_eigenvalues(c1, c2, c3))
    value = max(0.0, 2.0 * lam_max - 1.0)
    return MeasureTriple(value, value, value)


def _mem_weight(conc: float) -> float:
    # Boundary C = 2/3 belongs to the C >= 2/3 branch; both branches give 1/3 there.
    return conc / 2.0 if conc >= 2.0 / 3.0 else 1.0 / 3.0


def mem(conc: float) -> np.ndarray:
    """Maximally entangled mixed state with the given concurrence, C in [0, 1]."""
    if not 0.0 <= conc <= 1.0:
        raise ValidationError(f"mem: concurrence must lie in [0, 1], got {conc}")
    g = _mem_weight(conc)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = g
    rho[1, 1] = 1.0 - 2.0 * g
    rho[0, 3] = rho[3, 0] = conc / 2.0
    return rho


def mem_measures(conc: float) -> MeasureTriple:
    """Piecewise closed forms: the C >= 2/3 and C < 2/3 branches differ."""
    if conc >= 2.0 / 3.0:
        root = np.sqrt((1.0 - conc) ** 2 + conc**2)
        neg = root - (1.0 - conc)
        bineg = 0.5 * neg * (1.0 + conc / root)
    else:
        root = np.sqrt(1.0 + 9.0 * conc**2)
        neg = (root - 1.0) / 3.0
        bineg = 0.5 * neg * (1.0 + 3.0 * conc / root)
    return MeasureTriple(float(conc), float(neg), float(bineg))


def gmem(x: float, y: float, a: float, b: float, gamma: float) -> np.ndarray:
    """Generalized MEM: diag-plus-corner state with weights x, y, a, b, gamma >= 0.

    The subset x = y = b = 0, gamma = C, a = 1 - C reproduces mem(C) for
    C >= 2/3.
    """
    params = {"x": x, "y": y, "a": a, "b": b, "gamma": gamma}
    for name, value in params.items():
        if value < -_PARAM_TOL:
            raise ValidationError(f"gmem: {name} must be nonnegative, got {value}")
    total = x + y + a + b + gamma
    if abs(total - 1.0) > 1e-9:
        raise ValidationError(f"gmem: weights must sum to 1, got {total:.12g}")
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = x + gamma / 2.0
    rho[1, 1] = a
    rho[2, 2] = b
    rho[3, 3] = y + gamma / 2.0
    rho[0, 3] = rho[3, 0] = gamma / 2.0
    return rho


def gmem_measures(x: float, y: float, a: float, b: float, gamma: float) -> MeasureTriple:
    """C = max(0, gamma - 2 sqrt(ab)); N and N2 from the middle-block spectrum."""
    conc = max(0.0, gamma - 2.0 * np.sqrt(a * b))
    root = np.sqrt((a - b) ** 2 + gamma**2)
    neg = max(0.0, root - (a + b))
    bineg = 0.0 if neg == 0.0 else 0.5 * neg * (1.0 + gamma / root)
    return MeasureTriple(float(conc), float(neg), float(bineg))


def ew(p: float, alpha: complex) -> np.ndarray:
    """Mixture of white noise and the partially entangled pure state
    alpha|00> + beta|11>:

        rho = (1-p)/4 * I + p |Psi><Psi|

    beta is fixed real nonnegative by normalization (its phase is a free
    local-unitary choice).
    """
    alpha = complex(alpha)
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"ew: p must lie in [0, 1], got {p}")
    if abs(alpha) > 1.0 + 1e-12:
        raise ValidationError(f"ew: |alpha| must be <= 1, got {abs(alpha)}")
    beta = np.sqrt(max(0.0, 1.0 - abs(alpha) ** 2))
    psi = alpha * ket(0) + beta * ket(3)
    return (1.0 - p) / 4.0 * IDENTITY_4 + p * projector(psi)


def ew_measures(p: float, alpha: complex) -> MeasureTriple:
    """C = N = N2 = 2 max(0, |p alpha beta*| - (1-p)/4)."""
    beta = np.sqrt(max(0.0, 1.0 - abs(complex(alpha)) ** 2))
    value = 2.0 * max(0.0, p * abs(alpha) * beta - (1.0 - p) / 4.0)
    return MeasureTriple(value, value, value)


# --- state-file format (shared with the CLI) ---------------------------------

_FAMILIES = {
    "werner": (werner, ("p",)),
    "bell_diagonal": (bell_diagonal, ("c1", "c2", "c3")),
    "mem": (mem, ("C",)),
    "gmem": (gmem, ("x", "y", "a", "b", "gamma")),
    "ew": (ew, ("p", "alpha")),
}


def _as_scalar(value):
    # Complex parameters may be written as [re, im].
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValidationError(f"complex parameter must be [re, im], got {value}")
        return complex(float(value[0]), float(value[1]))
    return value


def state_from_dict(obj: dict) -> np.ndarray:
    """Build and validate a state from the JSON object format.

    Either {"family": name, "params": {...}} or
    {"matrix": 4x4 array of [re, im] pairs}.
    """
    if not isinstance(obj, dict):
        raise ValidationError("state file must contain a JSON object")
    if "matrix" in obj:
        raw = obj["matrix"]
        try:
            arr = np.asarray(raw, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"malformed matrix entry: {exc}") from None
        if arr.shape != (4, 4, 2):
            raise ValidationError(
                f"matrix must be a 4x4 array of [re, im] pairs, got shape {arr.shape}"
            )
        rho = arr[..., 0] + 1j * arr[..., 1]
        return validate_density_matrix(rho)
    if "family" in obj:
        name = obj["family"]
        if name not in _FAMILIES:
            raise ValidationError(
                f"unknown family {name!r}; expected one of {sorted(_FAMILIES)}"
            )
        builder, param_names = _FAMILIES[name]
        params = obj.get("params", {})
        if not isinstance(params, dict):
            raise ValidationError("params must be an object")
        unknown = set(params) - set(param_names)
        if unknown:
            raise ValidationError(f"unknown parameters for {name}: {sorted(unknown)}")
        missing = set(param_names) - set(params)
        if missing:
            raise ValidationError(f"missing parameters for {name}: {sorted(missing)}")
        args = [_as_scalar(params[key]) for key in param_names]
        return validate_density_matrix(builder(*args))
    raise ValidationError("state object must contain 'family' or 'matrix'")


def load_state_file(path: str | Path) -> np.ndarray:
    """Read a state-file (JSON) from disk; see state_from_dict for the format."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read state file {path}: {exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"state file {path} is not valid JSON: {exc}") from None
    return state_from_dict(obj)


__all__ = [
    "PSI_MINUS",
    "PSI_PLUS",
    "PHI_PLUS",
    "PHI_MINUS",
    "werner",
    "werner_extended",
    "werner_measures",
    "bell_diagonal",
    "bell_diagonal_eigenvalues",
    "bell_diagonal_measures",
    "mem",
    "mem_measures",
    "gmem",
    "gmem_measures",
    "ew",
    "ew_measures",
    "state_from_dict",
    "load_state_file",
]
