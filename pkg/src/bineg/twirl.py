"""Haar-random U x U twirling and the binegativity monotonicity experiment.

Twirling projects any two-qubit state onto the Werner family while preserving
its singlet fidelity.  Two implementations are provided: ``analytic_twirl``
(the exact Haar integral, via fidelity projection) and ``mc_twirl`` (a
Monte-Carlo average over sampled unitaries), each serving as the other's
check.  ``monotonicity_experiment`` re-runs the numerical observation that
the binegativity never increases under twirling.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .measures import binegativity_spectral, ginibre_state, negativity
from .qmat import kron, validate_density_matrix
from .states import PSI_MINUS, werner_extended

# Ensemble used when the experiment draws its own input states.
ENSEMBLE = "ginibre"

# Rejection threshold: inputs with N below this are separable and skipped.
ENTANGLED_MIN_NEGATIVITY = 1e-6


@dataclass
class TwirlResult:
    """One state's twirl summary, with the Monte-Carlo vs analytic check."""

    input_binegativity: float
    output_binegativity: float
    werner_p: float
    mc_samples: int
    mc_deviation: float  # max-entry distance, MC average vs analytic Werner


@dataclass
class MonotonicityReport:
    """Aggregate of the twirling monotonicity experiment."""

    n_states: int
    ensemble: str
    violations: int           # count of N2(out) > N2(in) + tolerance
    worst_margin: float       # max of N2(out) - N2(in); <= 0 means monotone
    tolerance: float
    mc_results: list[TwirlResult] = field(default_factory=list)

    @property
    def max_mc_deviation(self) -> float:
        if not self.mc_results:
            return 0.0
        return max(r.mc_deviation for r in self.mc_results)


def haar_unitary_2(rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed 2x2 unitary: QR of a complex Ginibre matrix.

    The R-diagonal phases are divided out so the distribution is exactly Haar.
    """
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _haar_unitaries(rng: np.random.Generator, n: int) -> np.ndarray:
    """Stacked Haar 2x2 unitaries, shape (n, 2, 2); same construction, batched."""
    z = (rng.standard_normal((n, 2, 2)) + 1j * rng.standard_normal((n, 2, 2))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[:, np.newaxis, :]


def mc_twirl(
    rho: np.ndarray,
    samples: int,
    rng: np.random.Generator,
    *,
    batch_size: int = 4096,
    validate: bool = True,
) -> np.ndarray:
    """Monte-Carlo twirl: average of (U x U) rho (U x U)^dag over Haar samples."""
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if validate:
        rho = validate_density_matrix(rho)
    rho = np.asarray(rho, dtype=complex)
    total = np.zeros((4, 4), dtype=complex)
    remaining = samples
    while remaining > 0:
        n = min(remaining, batch_size)
        us = _haar_unitaries(rng, n)
        ws = np.einsum("nab,ncd->nacbd", us, us).reshape(n, 4, 4)
        total += np.einsum("nij,jk,nlk->il", ws, rho, ws.conj())
        remaining -= n
    return total / samples


def singlet_fidelity(rho: np.ndarray) -> float:
    """Overlap <psi-| rho |psi->."""
    return float(np.real(PSI_MINUS.conj() @ np.asarray(rho, dtype=complex) @ PSI_MINUS))


def analytic_twirl(rho: np.ndarray, *, validate: bool = True) -> tuple[np.ndarray, float]:
    """Exact Haar twirl: the Werner state with the same singlet fidelity.

    Returns (werner_state, p) with p = (4F - 1)/3 in [-1/3, 1].
    """
    if validate:
        rho = validate_density_matrix(rho)
    p = (4.0 * singlet_fidelity(rho) - 1.0) / 3.0
    return werner_extended(p), p


def twirl_state(
    rho: np.ndarray,
    samples: int,
    rng: np.random.Generator,
    *,
    validate: bool = True,
) -> TwirlResult:
    """Twirl one state and package binegativities plus the MC cross-check."""
    if validate:
        rho = validate_density_matrix(rho)
    out, p = analytic_twirl(rho, validate=False)
    mc_dev = 0.0
    if samples > 0:
        mc = mc_twirl(rho, samples, rng, validate=False)
        mc_dev = float(np.abs(mc - out).max())
    return TwirlResult(
        input_binegativity=binegativity_spectral(rho, validate=False),
        output_binegativity=binegativity_spectral(out, validate=False),
        werner_p=p,
        mc_samples=samples,
        mc_deviation=mc_dev,
    )


def sample_entangled_state(rng: np.random.Generator) -> np.ndarray:
    """Rejection-sample a Ginibre state with negativity above the entangled cutoff."""
    while True:
        rho = ginibre_state(rng)
        if negativity(rho, validate=False) > ENTANGLED_MIN_NEGATIVITY:
            return rho


def monotonicity_experiment(
    n_states: int,
    samples_per_state: int,
    rng: np.random.Generator,
    *,
    mc_states: int | None = None,
    tolerance: float = 1e-9,
) -> MonotonicityReport:
    """Check N2(twirl(rho)) <= N2(rho) over random entangled states.

    All ``n_states`` inputs are compared through the exact (analytic) twirl;
    the first ``mc_states`` of them (default min(n_states, 100)) additionally
    run the ``samples_per_state``-sample Monte-Carlo twirl and record its
    max-entry deviation from the analytic Werner projection.
    """
    if n_states < 0:
        raise ValueError(f"n_states must be >= 0, got {n_states}")
    if mc_states is None:
        mc_states = min(n_states, 100)
    mc_states = min(mc_states, n_states)

    violations = 0
    worst = float("-inf")
    mc_results: list[TwirlResult] = []
    for i in range(n_states):
        rho = sample_entangled_state(rng)
        n2_in = binegativity_spectral(rho, validate=False)
        out, p = analytic_twirl(rho, validate=False)
        n2_out = binegativity_spectral(out, validate=False)
        margin = n2_out - n2_in
        worst = max(worst, margin)
        if margin > tolerance:
            violations += 1
        if i < mc_states and samples_per_state > 0:
            mc = mc_twirl(rho, samples_per_state, rng, validate=False)
            mc_results.append(
                TwirlResult(
                    input_binegativity=n2_in,
                    output_binegativity=n2_out,
                    werner_p=p,
                    mc_samples=samples_per_state,
                    mc_deviation=float(np.abs(mc - out).max()),
                )
            )
    return MonotonicityReport(
        n_states=n_states,
        ensemble=ENSEMBLE,
        violations=violations,
        worst_margin=worst if n_states else 0.0,
        tolerance=tolerance,
        mc_results=mc_results,
    )


def conjugate_local(rho: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """(u x v) rho (u x v)^dag — handy for invariance checks."""
    w = kron(u, v)
    return w @ np.asarray(rho, dtype=complex) @ w.conj().T


__all__ = [
    "ENSEMBLE",
    "TwirlResult",
    "MonotonicityReport",
    "haar_unitary_2",
    "mc_twirl",
    "singlet_fidelity",
    "analytic_twirl",
    "twirl_state",
    "sample_entangled_state",
    "monotonicity_experiment",
    "conjugate_local",
]
