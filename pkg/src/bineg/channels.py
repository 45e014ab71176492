"""Single-qubit decoherence channels and their action on the noisy EW state.

Three channel kinds are supported, each parameterized by a noise strength
eta in [0, 1]:

  * "ad" — amplitude damping,  K0 = diag(1, sqrt(1-eta)), K1 = sqrt(eta)|0><1|
  * "pd" — phase damping,      K0 = sqrt(1-eta) I, K1/K2 = sqrt(eta)|j><j|
  * "dp" — depolarizing,       K0 = sqrt(1-eta) I, Ki = sqrt(eta/3) s_i

Channels act on one qubit (tensor K x I, qubit A by default) or on both
(tensor K_i x K_j).  ``apply`` performs the operator sum directly and is the
oracle every closed form is checked against.

The closed-form final states and measure expressions for the initial state
rho = (1-p)/4 I + p |Psi><Psi|, |Psi> = alpha|00> + beta|11>, are assembled
in two variants: the default is consistent with the Kraus oracle to machine
precision; ``paper_literal=True`` reproduces a handful of published
expressions verbatim where they deviate from the operator sum (wrong power
of eta in two diagonal weights, a wrong damping power in one corner and one
subtrahend, and a spurious complex corner term in the two-sided depolarizing
case).  ``closed_form_report`` quantifies the deviation either way.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .measures import MeasureTriple, measure_triple
from .qmat import (
    IDENTITY_2,
    PAULIS,
    ValidationError,
    kron,
    validate_density_matrix,
)

KINDS = ("ad", "pd", "dp")
SIDEDNESS = ("one", "both")

COMPLETENESS_TOL = 1e-12


@dataclass(frozen=True)
class KrausSet:
    """Operator-sum representation of one single-qubit channel."""

    operators: tuple[np.ndarray, ...]
    kind: str
    eta: float

    def completeness_defect(self) -> float:
        """Max-entry distance of sum K^dag K from the identity."""
        total = sum(k.conj().T @ k for k in self.operators)
        return float(np.abs(total - IDENTITY_2).max())


@dataclass(frozen=True)
class ChannelConfig:
    kind: str       # "ad" | "pd" | "dp"
    sided: str      # "one" (qubit A) | "both"
    eta: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"channel kind must be one of {KINDS}, got {self.kind!r}")
        if self.sided not in SIDEDNESS:
            raise ValidationError(f"sided must be one of {SIDEDNESS}, got {self.sided!r}")
        if not 0.0 <= self.eta <= 1.0:
            raise ValidationError(f"eta must lie in [0, 1], got {self.eta}")


def kraus(kind: str, eta: float) -> KrausSet:
    """Kraus operators for the requested channel kind and strength."""
    if kind not in KINDS:
        raise ValidationError(f"channel kind must be one of {KINDS}, got {kind!r}")
    if not 0.0 <= eta <= 1.0:
        raise ValidationError(f"eta must lie in [0, 1], got {eta}")
    if kind == "ad":
        k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - eta)]], dtype=complex)
        k1 = np.array([[0.0, np.sqrt(eta)], [0.0, 0.0]], dtype=complex)
        ops = (k0, k1)
    elif kind == "pd":
        k0 = np.sqrt(1.0 - eta) * IDENTITY_2
        k1 = np.array([[np.sqrt(eta), 0.0], [0.0, 0.0]], dtype=complex)
        k2 = np.array([[0.0, 0.0], [0.0, np.sqrt(eta)]], dtype=complex)
        ops = (k0, k1, k2)
    else:
        ops = (np.sqrt(1.0 - eta) * IDENTITY_2,) + tuple(
            np.sqrt(eta / 3.0) * sigma for sigma in PAULIS
        )
    ks = KrausSet(operators=ops, kind=kind, eta=float(eta))
    defect = ks.completeness_defect()
    if defect > COMPLETENESS_TOL:
        raise ValidationError(f"Kraus completeness defect {defect:.3e} exceeds tolerance")
    return ks


def apply_single(rho2: np.ndarray, kraus_set: KrausSet) -> np.ndarray:
    """Operator sum on a single-qubit 2x2 matrix."""
    rho2 = np.asarray(rho2, dtype=complex)
    return sum(k @ rho2 @ k.conj().T for k in kraus_set.operators)


def apply(
    rho: np.ndarray,
    config: ChannelConfig,
    *,
    one_sided_qubit: str = "A",
    validate: bool = True,
) -> np.ndarray:
    """Evolve a two-qubit state through the configured channel (the oracle).

    One-sided action defaults to qubit A (K x I); pass one_sided_qubit="B"
    for I x K.  The output of a CPTP map on a valid state is valid.
    """
    if validate:
        rho = validate_density_matrix(rho)
    rho = np.asarray(rho, dtype=complex)
    ks = kraus(config.kind, config.eta).operators
    if config.sided == "one":
        if one_sided_qubit == "A":
            ops = [kron(k, IDENTITY_2) for k in ks]
        elif one_sided_qubit == "B":
            ops = [kron(IDENTITY_2, k) for k in ks]
        else:
            raise ValidationError(f"one_sided_qubit must be 'A' or 'B', got {one_sided_qubit!r}")
    else:
        ops = [kron(ki, kj) for ki in ks for kj in ks]
    out = np.zeros((4, 4), dtype=complex)
    for op in ops:
        out += op @ rho @ op.conj().T
    return out


def _ew_ingredients(p: float, alpha: complex):
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"p must lie in [0, 1], got {p}")
    alpha = complex(alpha)
    if abs(alpha) > 1.0 + 1e-12:
        raise ValidationError(f"|alpha| must be <= 1, got {abs(alpha)}")
    beta = np.sqrt(max(0.0, 1.0 - abs(alpha) ** 2))  # real by convention
    return alpha, beta, abs(alpha) ** 2, beta**2


def _x_matrix(d0, d1, d2, d3, corner, middle=0.0) -> np.ndarray:
    """X-shaped matrix: diagonal (d0..d3), (0,3) corner, optional (1,2) entry."""
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = d0, d1, d2, d3
    rho[0, 3], rho[3, 0] = corner, np.conj(corner)
    rho[1, 2], rho[2, 1] = middle, np.conj(middle)
    return rho


def closed_form_state(
    config: ChannelConfig,
    p: float,
    alpha: complex,
    *,
    paper_literal: bool = False,
) -> np.ndarray:
    """Closed-form final state of the evolved EW mixture.

    The default variant matches ``apply`` to machine precision; the
    paper-literal variant reproduces the published matrices verbatim,
    including their misprints (see module docstring).
    """
    alpha, beta, aa, bb = _ew_ingredients(p, alpha)
    eta = config.eta
    r = (1.0 - p) / 4.0
    ab = alpha * beta  # alpha * conj(beta) with beta real
    ab_lit = np.conj(alpha) * beta  # published corners carry the conjugate

    if config.kind == "ad":
        lp = r * (1.0 + eta)
        lm = r * (1.0 - eta)
        if config.sided == "one":
            eps = p * np.sqrt(1.0 - eta)
            m = p * (1.0 - eta)
            corner = eps * (ab_lit if paper_literal else ab)
            return _x_matrix(lp + p * aa, lp + p * eta * bb, lm, lm + m * bb, corner)
        m = p * (1.0 - eta)
        s = r * (1.0 + eta) ** 2 + p * (aa + eta**2 * bb)
        middle_weight = p * (eta**2 if paper_literal else eta) * bb
        v = (1.0 - eta) * (lp + middle_weight)
        d3 = (r + p * bb) * (1.0 - eta) ** 2
        corner = m * (ab_lit if paper_literal else ab)
        return _x_matrix(s, v, v, d3, corner)

    if config.kind == "pd":
        i = 1 if config.sided == "one" else 2
        # printed corner m^i/p cancels to p^(i-1) (1-eta)^i; the oracle gives
        # m^i/p^(i-1) = p (1-eta)^i
        coeff = (p ** (i - 1)) * (1.0 - eta) ** i if paper_literal else p * (1.0 - eta) ** i
        corner = coeff * (ab_lit if paper_literal else ab)
        return _x_matrix(r + p * aa, r, r, r + p * bb, corner)

    # dp
    t2 = 1.0 - 2.0 * eta / 3.0
    t4 = 1.0 - 4.0 * eta / 3.0
    if config.sided == "one":
        scale = 1.0 if paper_literal else 2.0 / 3.0
        theta_a = r + scale * p * eta * aa
        theta_b = r + scale * p * eta * bb
        corner = p * t4 * (ab_lit if paper_literal else ab)
        return _x_matrix(r + p * t2 * aa, theta_b, theta_a, r + p * t2 * bb, corner)
    xi = (2.0 / 9.0) * p * eta**2
    delta = r + (2.0 / 9.0) * p * eta * (3.0 - 2.0 * eta)
    d0 = r + p * t2**2 * aa + 2.0 * xi * bb
    d3 = r + p * t2**2 * bb + 2.0 * xi * aa
    if paper_literal:
        tau = (p / 9.0) * (9.0 - 24.0 * eta + 14.0 * eta**2)
        varsig = (p / 9.0) * (1.0 - 1.0j) * eta**2
        corner = varsig * ab + tau * ab_lit
        middle = -xi * ab_lit
    else:
        corner = p * t4**2 * ab
        middle = 0.0
    return _x_matrix(d0, delta, delta, d3, corner, middle)


def closed_form_measures(
    config: ChannelConfig,
    p: float,
    alpha: complex,
    *,
    paper_literal: bool = False,
) -> MeasureTriple:
    """Closed-form C, N, N2 of the evolved EW mixture (same variants as the state)."""
    alpha, beta, aa, bb = _ew_ingredients(p, alpha)
    eta = config.eta
    r = (1.0 - p) / 4.0
    mod_ab = abs(alpha) * beta  # |alpha beta*|

    if config.kind == "ad":
        lp = r * (1.0 + eta)
        lm = r * (1.0 - eta)
        if config.sided == "one":
            eps = p * np.sqrt(1.0 - eta)
            conc = 2.0 * max(0.0, eps * mod_ab - np.sqrt(lm * (lp + p * eta * bb)))
            # the printed radicand 4 eps |ab|^2 is dimensionally short one
            # power of eps; the oracle fixes it to 4 eps^2 |ab|^2
            cross = 4.0 * (eps if paper_literal else eps**2) * mod_ab**2
            gap = lp - lm + p * eta * bb
            radius = np.sqrt(gap**2 + cross)
            neg = max(0.0, radius - (lp + lm + p * eta * bb))
            if neg == 0.0:
                return MeasureTriple(conc, 0.0, 0.0)
            numer = 2.0 * abs(eps * mod_ab * (gap - radius))
            denom = abs(cross + gap * (gap - radius))
            # denom > 0 whenever neg > 0 in the corrected form; the literal
            # variant can hit 0 at isolated points, where the fraction is moot
            bineg = 0.5 * neg * (1.0 + (numer / denom if denom > 0.0 else 0.0))
            return MeasureTriple(conc, neg, bineg)
        m = p * (1.0 - eta)  # equals eps^2/p
        middle_weight = p * (eta**2 if paper_literal else eta) * bb
        value = 2.0 * max(0.0, m * mod_ab - (1.0 - eta) * (lp + middle_weight))
        return MeasureTriple(value, value, value)

    if config.kind == "pd":
        i = 1 if config.sided == "one" else 2
        coeff = p * (1.0 - eta) ** i  # m^i / p^(i-1)
        floor = (1.0 - eta) / 4.0 if paper_literal else r
        value = 2.0 * max(0.0, coeff * mod_ab - floor)
        return MeasureTriple(value, value, value)

    # dp
    t4 = 1.0 - 4.0 * eta / 3.0
    if config.sided == "one":
        scale = 1.0 if paper_literal else 2.0 / 3.0
        theta_a = r + scale * p * eta * aa
        theta_b = r + scale * p * eta * bb
        omega = p * t4 * mod_ab
        conc = 2.0 * max(0.0, abs(omega) - np.sqrt(theta_a * theta_b))
        gap = theta_b - theta_a
        radius = np.sqrt(gap**2 + 4.0 * omega**2)
        neg = max(0.0, radius - (theta_a + theta_b))
        if neg == 0.0:
            return MeasureTriple(conc, 0.0, 0.0)
        numer = abs(2.0 * omega * (gap - radius))
        denom = abs(4.0 * omega**2 + gap * (gap - radius))
        bineg = 0.5 * neg * (1.0 + numer / denom)
        return MeasureTriple(conc, neg, bineg)
    delta = r + (2.0 / 9.0) * p * eta * (3.0 - 2.0 * eta)
    if paper_literal:
        tau = (p / 9.0) * (9.0 - 24.0 * eta + 14.0 * eta**2)
        varsig = (p / 9.0) * (1.0 - 1.0j) * eta**2
        kappa = varsig * alpha * beta + tau * np.conj(alpha) * beta
    else:
        kappa = p * t4**2 * alpha * beta
    value = 2.0 * max(0.0, abs(kappa) - delta)
    return MeasureTriple(value, value, value)


@dataclass
class ClosedFormReport:
    """Closed form vs Kraus oracle for one (config, p, alpha) cell."""

    config: ChannelConfig
    p: float
    alpha: complex
    paper_literal: bool
    state: np.ndarray
    measures: MeasureTriple
    oracle_state: np.ndarray
    oracle_measures: MeasureTriple
    max_entry_deviation: float
    measure_deviation: float
    scalars: dict[str, complex] = field(default_factory=dict)


def _debug_scalars(config: ChannelConfig, p: float, alpha: complex) -> dict[str, complex]:
    alpha, beta, aa, bb = _ew_ingredients(p, alpha)
    eta = config.eta
    r = (1.0 - p) / 4.0
    out: dict[str, complex] = {"r": r, "eta": eta, "p": p, "alpha": alpha, "beta": beta}
    if config.kind == "ad":
        out["ell_plus"] = r * (1.0 + eta)
        out["ell_minus"] = r * (1.0 - eta)
        out["eps"] = p * np.sqrt(1.0 - eta)
        out["m"] = p * (1.0 - eta)
        if config.sided == "one":
            gap = out["ell_plus"] - out["ell_minus"] + p * eta * bb
            out["vartheta"] = gap
            out["big_l"] = np.sqrt(gap**2 + 4.0 * (out["eps"] * abs(alpha) * beta) ** 2)
        else:
            out["s"] = r * (1.0 + eta) ** 2 + p * (aa + eta**2 * bb)
            out["v"] = (1.0 - eta) * (out["ell_plus"] + p * eta * bb)
    elif config.kind == "pd":
        out["m"] = p * (1.0 - eta)
        out["i"] = 1 if config.sided == "one" else 2
    else:
        out["t2"] = 1.0 - 2.0 * eta / 3.0
        out["t4"] = 1.0 - 4.0 * eta / 3.0
        if config.sided == "one":
            out["theta_alpha"] = r + (2.0 / 3.0) * p * eta * aa
            out["theta_beta"] = r + (2.0 / 3.0) * p * eta * bb
            out["omega"] = p * out["t4"] * alpha * beta
            gap = out["theta_beta"] - out["theta_alpha"]
            out["upsilon"] = np.sqrt(gap**2 + 4.0 * abs(out["omega"]) ** 2)
        else:
            out["delta"] = r + (2.0 / 9.0) * p * eta * (3.0 - 2.0 * eta)
            out["xi"] = (2.0 / 9.0) * p * eta**2
            out["kappa"] = p * out["t4"] ** 2 * alpha * beta
    return out


def closed_form_report(
    config: ChannelConfig,
    p: float,
    alpha: complex,
    *,
    paper_literal: bool = False,
) -> ClosedFormReport:
    """Assemble the closed form, run the Kraus oracle, and quantify deviations.

    ``max_entry_deviation`` compares the matrices entry by entry;
    ``measure_deviation`` compares the closed-form triple against the spectral
    measures of the oracle state.  Deviations are reported, never raised.
    """
    from .states import ew  # local import: states depends on measures only

    state = closed_form_state(config, p, alpha, paper_literal=paper_literal)
    measures = closed_form_measures(config, p, alpha, paper_literal=paper_literal)
    oracle_state = apply(ew(p, alpha), config, validate=False)
    oracle_measures = measure_triple(oracle_state, validate=False)
    entry_dev = float(np.abs(state - oracle_state).max())
    measure_dev = max(
        abs(measures.concurrence - oracle_measures.concurrence),
        abs(measures.negativity - oracle_measures.negativity),
        abs(measures.binegativity - oracle_measures.binegativity),
    )
    return ClosedFormReport(
        config=config,
        p=p,
        alpha=alpha,
        paper_literal=paper_literal,
        state=state,
        measures=measures,
        oracle_state=oracle_state,
        oracle_measures=oracle_measures,
        max_entry_deviation=entry_dev,
        measure_deviation=float(measure_dev),
        scalars=_debug_scalars(config, p, alpha),
    )
