"""Dense complex matrix algebra for one- and two-qubit operators.

Everything here works on plain numpy arrays: 2x2 operators for single-qubit
maps and 4x4 operators for two-qubit states, in the computational basis
|00>, |01>, |10>, |11> (first factor = qubit A).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

# Structural tolerances for density matrices.
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

# hermitian_eig accepts inputs Hermitian to this looser tolerance.
EIG_HERMITICITY_TOL = 1e-10

# Eigenvalues below this cutoff count as genuinely negative; anything in
# (NEGATIVE_EIG_CUTOFF, 0) is treated as round-off on a separable state.
NEGATIVE_EIG_CUTOFF = -1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)
IDENTITY_2 = np.eye(2, dtype=complex)
IDENTITY_4 = np.eye(4, dtype=complex)


class ValidationError(ValueError):
    """Input violates a structural requirement (shape, Hermiticity, trace, positivity)."""


class ConsistencyError(RuntimeError):
    """Two internally computed routes to the same quantity disagree beyond tolerance."""


class SpectralDecomposition(NamedTuple):
    """Eigensystem of a 4x4 Hermitian operator, eigenvalues ascending."""

    values: np.ndarray   # shape (4,), real, ascending
    vectors: np.ndarray  # shape (4, 4), orthonormal columns; vectors[:, k] <-> values[k]


class NegativePart(NamedTuple):
    """Positive operator built from the magnitudes of the negative spectrum.

    ``operator`` is sum_{lambda < 0} |lambda| |v><v|, so ``trace`` equals the
    total magnitude of the negative eigenvalues.  For a unit-trace Hermitian A
    this makes ||A||_1 = Tr[A] + 2 * trace hold.
    """

    operator: np.ndarray
    trace: float


def dag(a: np.ndarray) -> np.ndarray:
    """Adjoint (conjugate transpose)."""
    return a.conj().T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; (a kron b)[2i+k, 2j+l] = a[i,j] * b[k,l]."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def ket(index: int, dim: int = 4) -> np.ndarray:
    """Computational basis column vector |index> of the given dimension."""
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def projector(psi: np.ndarray) -> np.ndarray:
    """|psi><psi| for a (not necessarily normalized) state vector."""
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def partial_transpose(rho: np.ndarray, subsystem: str = "B") -> np.ndarray:
    """Transpose the indicated tensor factor of a 4x4 two-qubit operator.

    An involution that preserves trace and Hermiticity.  The spectrum is the
    same for subsystem "A" and "B" (they differ by a full transpose).
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValidationError(f"expected a 4x4 matrix, got shape {rho.shape}")
    t = rho.reshape(2, 2, 2, 2)
    if subsystem == "A":
        t = t.transpose(2, 1, 0, 3)
    elif subsystem == "B":
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValidationError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return t.reshape(4, 4)


def _check_hermitian(a: np.ndarray, tol: float) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.shape != (4, 4):
        raise ValidationError(f"expected a 4x4 matrix, got shape {a.shape}")
    dev = np.abs(a - a.conj().T).max()
    # `not (dev <= tol)` also rejects NaN/Inf entries, which always surface
    # as a non-finite deviation
    if not dev <= tol:
        raise ValidationError(f"matrix is not Hermitian: max |A - A^dag| = {dev:.3e}")
    return a


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude component is real positive."""
    pivots = vectors[np.argmax(np.abs(vectors), axis=0), np.arange(vectors.shape[1])]
    return vectors * (pivots.conj() / np.abs(pivots))


def hermitian_eig(a: np.ndarray) -> SpectralDecomposition:
    """Eigendecomposition of a 4x4 Hermitian matrix, eigenvalues ascending.

    Eigenvector phases are fixed deterministically (largest-magnitude
    component real positive).  Raises ValidationError on non-Hermitian input.
    """
    a = _check_hermitian(a, EIG_HERMITICITY_TOL)
    values, vectors = np.linalg.eigh(a)
    return SpectralDecomposition(values, _fix_phases(vectors))


def hermitian_eigvals(a: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues only; cheaper than hermitian_eig when vectors are unused."""
    a = _check_hermitian(a, EIG_HERMITICITY_TOL)
    return np.linalg.eigvalsh(a)


def negative_part(a: np.ndarray) -> NegativePart:
    """Extract the negative spectral component of a Hermitian matrix.

    Returns the positive operator sum_{lambda < cutoff} |lambda| |v><v| and its
    trace; the zero operator when the spectrum is nonnegative.  Eigenvector
    phases cancel in |v><v|, so no phase convention is needed here.
    """
    a = _check_hermitian(a, EIG_HERMITICITY_TOL)
    values, vectors = np.linalg.eigh(a)
    mask = values < NEGATIVE_EIG_CUTOFF
    if not mask.any():
        return NegativePart(np.zeros((4, 4), dtype=complex), 0.0)
    vneg = vectors[:, mask]
    mags = -values[mask]
    op = (vneg * mags) @ vneg.conj().T
    return NegativePart(op, float(mags.sum()))


def trace_norm(a: np.ndarray) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.abs(hermitian_eigvals(a)).sum())


def validate_density_matrix(rho: np.ndarray) -> np.ndarray:
    """Check the two-qubit density matrix invariants and return rho as complex.

    Requires finite entries, Hermiticity within 1e-12 (max entry), unit trace
    within 1e-12 and smallest eigenvalue >= -1e-10.  Raises ValidationError
    otherwise.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape == (4, 4) and not np.all(np.isfinite(rho.view(float))):
        raise ValidationError("matrix contains NaN or Inf entries")
    rho = _check_hermitian(rho, HERMITICITY_TOL)
    tr = rho.trace()
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValidationError(f"trace is {tr:.12g}, expected 1")
    smallest = np.linalg.eigvalsh(rho)[0]
    if smallest < -PSD_TOL:
        raise ValidationError(f"matrix is not PSD: smallest eigenvalue {smallest:.3e}")
    return rho


def is_density_matrix(rho: np.ndarray) -> bool:
    """True when validate_density_matrix would accept rho."""
    try:
        validate_density_matrix(rho)
    except ValidationError:
        return False
    return True
