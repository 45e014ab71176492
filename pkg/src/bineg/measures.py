"""Entanglement quantifiers for two-qubit density matrices.

Three measures are provided: the Wootters concurrence, the negativity, and
the binegativity.  The binegativity comes in two independent routes — the
spectral definition

    N2(rho) = Tr[rho^(G-)] + 2 Tr[((rho^(G-))^G)_-]

(G = partial transpose, X_- = negative spectral component as a positive
operator) and the closed form

    N2(rho) = N(rho)/2 * (1 + N(rho_psi))

where rho_psi is the pure eigenstate belonging to the single negative
eigenvalue of rho^G.  The two routes agreeing is one of the library's core
verified facts.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .qmat import (
    NEGATIVE_EIG_CUTOFF,
    SIGMA_Y,
    ConsistencyError,
    hermitian_eig,
    hermitian_eigvals,
    kron,
    negative_part,
    partial_transpose,
    projector,
    validate_density_matrix,
)

# Below this negativity a state is treated as separable (rho_psi undefined).
NEGATIVITY_ZERO_TOL = 1e-10

# The two printed forms of the negativity must agree to this tolerance.
FORM_AGREEMENT_TOL = 1e-10

_SYSY = kron(SIGMA_Y, SIGMA_Y)


class PPTError(ValueError):
    """The state is PPT (separable): no negative partial-transpose eigenvalue exists."""


class MeasureTriple(NamedTuple):
    concurrence: float
    negativity: float
    binegativity: float


class NegativeEigenstate(NamedTuple):
    """Pure state of the negative partial-transpose eigenvalue, with its magnitude."""

    state: np.ndarray                    # 4x4 rank-1 density matrix
    negative_eigenvalue_magnitude: float  # equals N(rho)/2


def negativity(rho: np.ndarray, *, validate: bool = True) -> float:
    """Negativity: twice the total magnitude of rho^G's negative spectrum.

    Both printed forms (2 Tr[rho^(G-)] and ||rho^G||_1 - 1) are computed and
    cross-checked; disagreement beyond 1e-10 raises ConsistencyError.
    """
    if validate:
        rho = validate_density_matrix(rho)
    w = hermitian_eigvals(partial_transpose(rho))
    neg = w[w < NEGATIVE_EIG_CUTOFF]
    twice_trace_form = -2.0 * float(neg.sum())
    norm_form = float(np.abs(w).sum()) - 1.0
    if abs(twice_trace_form - norm_form) > FORM_AGREEMENT_TOL:
        raise ConsistencyError(
            "negativity forms disagree: "
            f"2 Tr[negative part] = {twice_trace_form:.15g}, "
            f"trace-norm form = {norm_form:.15g}"
        )
    return twice_trace_form


def concurrence(rho: np.ndarray, *, validate: bool = True) -> float:
    """Wootters concurrence via the spin-flipped matrix.

    C = max(0, l1 - l2 - l3 - l4) with l_i the descending square roots of the
    eigenvalues of rho * (sy x sy) rho^* (sy x sy).  With rho = X X^dag those
    square roots equal the singular values of X^T (sy x sy) X, which an SVD
    delivers at machine precision even where the non-normal product has
    degenerate eigenvalues.
    """
    if validate:
        rho = validate_density_matrix(rho)
    rho = np.asarray(rho, dtype=complex)
    w, v = np.linalg.eigh(rho)
    x = v * np.sqrt(np.clip(w, 0.0, None))
    roots = np.linalg.svd(x.T @ _SYSY @ x, compute_uv=False)
    return max(0.0, float(roots[0] - roots[1] - roots[2] - roots[3]))


def binegativity_spectral(rho: np.ndarray, *, validate: bool = True) -> float:
    """Binegativity by the spectral definition (negative part, transpose, negative part)."""
    if validate:
        rho = validate_density_matrix(rho)
    first = negative_part(partial_transpose(rho))
    if first.trace == 0.0:
        return 0.0
    # Hermitian by construction (partial transpose of a PSD operator).
    w = np.linalg.eigvalsh(partial_transpose(first.operator))
    inner_neg = w[w < NEGATIVE_EIG_CUTOFF]
    return first.trace + 2.0 * float(-inner_neg.sum())


def negative_eigvec_state(rho: np.ndarray, *, validate: bool = True) -> NegativeEigenstate:
    """Pure state rho_psi of the (unique) negative eigenvalue of rho^G.

    Raises PPTError when the state is PPT, and ConsistencyError if more than
    one eigenvalue is negative — impossible for a valid two-qubit state.
    """
    if validate:
        rho = validate_density_matrix(rho)
    values, vectors = hermitian_eig(partial_transpose(rho))
    mask = values < NEGATIVE_EIG_CUTOFF
    count = int(mask.sum())
    if count == 0:
        raise PPTError("state is PPT: partial transpose has no negative eigenvalue")
    if count > 1:
        raise ConsistencyError(
            f"partial transpose has {count} negative eigenvalues; "
            "a valid two-qubit state admits exactly one"
        )
    idx = int(np.nonzero(mask)[0][0])
    psi = vectors[:, idx]
    return NegativeEigenstate(projector(psi), float(-values[idx]))


def binegativity_closed(rho: np.ndarray, *, validate: bool = True) -> float:
    """Binegativity by the closed form N/2 * (1 + N(rho_psi)).

    Returns 0 for (numerically) PPT input, where rho_psi is undefined.
    """
    if validate:
        rho = validate_density_matrix(rho)
    n = negativity(rho, validate=False)
    if n < NEGATIVITY_ZERO_TOL:
        return 0.0
    psi = negative_eigvec_state(rho, validate=False)
    n_psi = negativity(psi.state, validate=False)
    return 0.5 * n * (1.0 + n_psi)


def measure_triple(rho: np.ndarray, *, validate: bool = True) -> MeasureTriple:
    """Concurrence, negativity, and (spectral) binegativity of one state."""
    if validate:
        rho = validate_density_matrix(rho)
    return MeasureTriple(
        concurrence=concurrence(rho, validate=False),
        negativity=negativity(rho, validate=False),
        binegativity=binegativity_spectral(rho, validate=False),
    )


def xstate_measures(a: float, b: float, c: complex, d: float, e: complex) -> MeasureTriple:
    """Closed-form measures for the symmetric X state

        [[a, 0, 0,  e],
         [0, b, c,  0],
         [0, c*, b, 0],
         [e*, 0, 0, d]]

    with a + 2b + d = 1.  The assembled matrix must be a valid density matrix.
    At most one of the two negativity conditions (corner block: a+d < theta,
    middle block: b < |e|) can hold for a valid state, which makes the
    piecewise expressions below well defined.
    """
    rho = assemble_x_state(a, b, c, d, e)
    validate_density_matrix(rho)
    a, b, d = float(a), float(b), float(d)
    c, e = complex(c), complex(e)

    theta = float(np.sqrt((a - d) ** 2 + 4.0 * abs(c) ** 2))
    conc = 2.0 * max(0.0, abs(c) - float(np.sqrt(a * d)), abs(e) - b)
    if a + d < theta:
        neg = theta - (a + d)
        bineg = 0.5 * neg * (1.0 + 2.0 * abs(c) / theta)
    elif b < abs(e):
        neg = 2.0 * (abs(e) - b)
        bineg = neg
    else:
        neg = 0.0
        bineg = 0.0
    return MeasureTriple(concurrence=conc, negativity=neg, binegativity=bineg)


def assemble_x_state(a: float, b: float, c: complex, d: float, e: complex) -> np.ndarray:
    """Build the symmetric X-state matrix without validating it."""
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = a, b, b, d
    rho[0, 3], rho[3, 0] = e, np.conj(e)
    rho[1, 2], rho[2, 1] = c, np.conj(c)
    return rho


def ginibre_state(rng: np.random.Generator) -> np.ndarray:
    """Random full-rank two-qubit state: G G^dag / Tr, G a 4x4 complex Gaussian."""
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rho = g @ g.conj().T
    return rho / rho.trace().real


def haar_pure_ket(rng: np.random.Generator) -> np.ndarray:
    """Haar-random normalized two-qubit state vector."""
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return v / np.linalg.norm(v)
