"""Self-verification suites: every library invariant re-checked in one run.

Each suite returns (passed, detail); ``run_verification`` executes all of
them, prints one line per suite, and reports overall success.  Sizes are
chosen so the whole run stays in the tens of seconds; the pytest acceptance
module runs the heavyweight versions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import channels, measures, qmat, states, twirl

DEFAULT_SEED = 20240915

# Fault-injection hooks (test-only): name -> applied where documented below.
FAULTS = ("eig-tolerance",)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str


def _configs() -> list[channels.ChannelConfig]:
    return [
        channels.ChannelConfig(kind, sided, 0.0)
        for kind in channels.KINDS
        for sided in channels.SIDEDNESS
    ]


def _with_eta(config: channels.ChannelConfig, eta: float) -> channels.ChannelConfig:
    return channels.ChannelConfig(config.kind, config.sided, eta)


def _random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    g = rng.standard_normal((n, 4, 4)) + 1j * rng.standard_normal((n, 4, 4))
    return g + g.conj().transpose(0, 2, 1)


def suite_qmat_identities(rng: np.random.Generator) -> SuiteResult:
    """Trace-norm identity, Kronecker bilinearity, partial-transpose structure."""
    herms = _random_hermitian(rng, 10_000)
    w = np.linalg.eigvalsh(herms)
    norm1 = np.abs(w).sum(axis=1)
    trace = np.einsum("nii->n", herms).real
    neg_mass = np.where(w < 0.0, -w, 0.0).sum(axis=1)
    identity_err = float(np.abs(norm1 - (trace + 2.0 * neg_mass)).max())

    kron_err = 0.0
    for _ in range(200):
        a, b, c, d = (
            rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            for _ in range(4)
        )
        lhs = qmat.kron(a, b) @ qmat.kron(c, d)
        rhs = qmat.kron(a @ c, b @ d)
        kron_err = max(kron_err, float(np.abs(lhs - rhs).max()))

    pt_err = 0.0
    for h in herms[:200]:
        for sub in ("A", "B"):
            g = qmat.partial_transpose(h, sub)
            pt_err = max(
                pt_err,
                float(np.abs(qmat.partial_transpose(g, sub) - h).max()),
                abs(g.trace() - h.trace()),
                float(np.abs(g - g.conj().T).max()),
            )

    ok = identity_err < 1e-10 and kron_err < 1e-12 and pt_err < 1e-12
    detail = (
        f"trace-norm identity {identity_err:.2e}, kron {kron_err:.2e}, "
        f"partial transpose {pt_err:.2e}"
    )
    return SuiteResult("qmat-identities", ok, detail)


def suite_eig_reconstruction(rng: np.random.Generator, fault: str | None) -> SuiteResult:
    """VLV^dag round trip and orthonormality; the fault hook corrupts the tolerance."""
    tol = 1e-18 if fault == "eig-tolerance" else 1e-10
    worst_recon = 0.0
    worst_ortho = 0.0
    for h in _random_hermitian(rng, 500):
        values, vectors = qmat.hermitian_eig(h)
        recon = (vectors * values) @ vectors.conj().T
        worst_recon = max(worst_recon, float(np.abs(recon - h).max()))
        gram = vectors.conj().T @ vectors
        worst_ortho = max(worst_ortho, float(np.abs(gram - np.eye(4)).max()))
    ok = worst_recon < tol and worst_ortho < tol
    detail = f"reconstruction {worst_recon:.2e}, orthonormality {worst_ortho:.2e} (tol {tol:.0e})"
    return SuiteResult("eig-reconstruction", ok, detail)


def suite_lemma_equivalence(rng: np.random.Generator, n: int = 2000) -> SuiteResult:
    """Spectral vs closed-form binegativity on random mixed states."""
    worst = 0.0
    for _ in range(n):
        rho = measures.ginibre_state(rng)
        spectral = measures.binegativity_spectral(rho, validate=False)
        closed = measures.binegativity_closed(rho, validate=False)
        worst = max(worst, abs(spectral - closed))
    return SuiteResult(
        "lemma-equivalence", worst < 1e-9, f"max |N2_spectral - N2_closed| = {worst:.2e} over {n}"
    )


def suite_measure_properties(rng: np.random.Generator, n: int = 2000) -> SuiteResult:
    """Ordering chain, PPT equivalence, single negative eigenvalue, unit range."""
    order_bad = 0
    ppt_bad = 0
    multiplicity_bad = 0
    range_bad = 0
    for _ in range(n):
        rho = measures.ginibre_state(rng)
        c = measures.concurrence(rho, validate=False)
        neg = measures.negativity(rho, validate=False)
        n2 = measures.binegativity_spectral(rho, validate=False)
        if not (n2 <= neg + 1e-9 and neg <= c + 1e-9):
            order_bad += 1
        if not (-1e-9 <= min(c, neg, n2) and max(c, neg, n2) <= 1.0 + 1e-9):
            range_bad += 1
        # dead band (1e-10, 1e-8) left unclassified to avoid boundary flicker
        if neg > 1e-8 and (c <= 1e-9 or n2 <= 1e-12):
            ppt_bad += 1
        if neg < 1e-10 and (c > 1e-5 or n2 > 1e-9):
            ppt_bad += 1
        w = qmat.hermitian_eigvals(qmat.partial_transpose(rho))
        if int((w < qmat.NEGATIVE_EIG_CUTOFF).sum()) > 1:
            multiplicity_bad += 1

    lu_worst = 0.0
    for _ in range(25):
        rho = measures.ginibre_state(rng)
        base = measures.measure_triple(rho, validate=False)
        for _ in range(4):
            rotated = twirl.conjugate_local(
                rho, twirl.haar_unitary_2(rng), twirl.haar_unitary_2(rng)
            )
            other = measures.measure_triple(rotated, validate=False)
            lu_worst = max(
                lu_worst,
                abs(base.concurrence - other.concurrence),
                abs(base.negativity - other.negativity),
                abs(base.binegativity - other.binegativity),
            )

    bell_worst = 0.0
    for psi in (states.PSI_MINUS, states.PSI_PLUS, states.PHI_PLUS, states.PHI_MINUS):
        triple = measures.measure_triple(qmat.projector(psi), validate=False)
        bell_worst = max(bell_worst, *(abs(1.0 - x) for x in triple))

    ok = (
        order_bad == 0
        and ppt_bad == 0
        and multiplicity_bad == 0
        and range_bad == 0
        and lu_worst < 1e-9
        and bell_worst < 1e-10
    )
    detail = (
        f"ordering {order_bad}, ppt {ppt_bad}, multiplicity {multiplicity_bad}, "
        f"range {range_bad}, local-unitary drift {lu_worst:.2e}, bell {bell_worst:.2e}"
    )
    return SuiteResult("measure-properties", ok, detail)


def suite_family_closed_forms() -> SuiteResult:
    """Constructor measures vs the spectral pipeline on parameter grids."""
    worst = 0.0

    def compare(rho: np.ndarray, expected: measures.MeasureTriple) -> None:
        nonlocal worst
        got = measures.measure_triple(rho)
        worst = max(
            worst,
            abs(got.concurrence - expected.concurrence),
            abs(got.negativity - expected.negativity),
            abs(got.binegativity - expected.binegativity),
        )

    for p in np.linspace(0.0, 1.0, 51):
        compare(states.werner(p), states.werner_measures(p))
    for c1 in np.linspace(-0.9, 0.3, 8):
        for c2 in np.linspace(-0.8, 0.2, 6):
            for c3 in np.linspace(-0.7, 0.4, 6):
                if min(states.bell_diagonal_eigenvalues(c1, c2, c3)) < 0.0:
                    continue
                compare(
                    states.bell_diagonal(c1, c2, c3),
                    states.bell_diagonal_measures(c1, c2, c3),
                )
    for conc in np.linspace(0.0, 1.0, 51):
        compare(states.mem(conc), states.mem_measures(conc))
    rng = np.random.default_rng(7)
    for _ in range(60):
        weights = rng.dirichlet(np.ones(5))
        x, y, a, b, gamma = weights
        compare(states.gmem(x, y, a, b, gamma), states.gmem_measures(x, y, a, b, gamma))
    for p in np.linspace(0.0, 1.0, 11):
        for mag in np.linspace(0.0, 1.0, 6):
            compare(states.ew(p, mag), states.ew_measures(p, mag))

    return SuiteResult(
        "family-closed-forms", worst < 1e-10, f"max |closed - spectral| = {worst:.2e}"
    )


def suite_channel_oracle(paper_literal: bool = False, grid: int = 21) -> SuiteResult:
    """Closed-form states and measures vs the Kraus oracle on a (p, eta) grid.

    In paper-literal mode the published misprints make the deviations nonzero;
    the suite then reports them and fails by design.
    """
    alpha = 0.4
    ps = np.linspace(0.0, 1.0, grid)
    etas = np.linspace(0.0, 1.0, grid)
    worst_state: dict[str, float] = {}
    worst_measure: dict[str, float] = {}
    kappa_claim_violations = 0
    kappa_violations_entangled = 0
    for config0 in _configs():
        key = f"{config0.kind}-{config0.sided}"
        ws = wm = 0.0
        for p in ps:
            for eta in etas:
                config = _with_eta(config0, eta)
                report = channels.closed_form_report(
                    config, float(p), alpha, paper_literal=paper_literal
                )
                ws = max(ws, report.max_entry_deviation)
                wm = max(wm, report.measure_deviation)
                if config0.kind == "dp" and config0.sided == "both":
                    kappa = abs(report.scalars["kappa"])
                    delta = report.scalars["delta"].real
                    if kappa <= delta:
                        kappa_claim_violations += 1
                        if max(report.oracle_measures) > 1e-12:
                            kappa_violations_entangled += 1
        worst_state[key] = ws
        worst_measure[key] = wm

    state_dev = max(worst_state.values())
    measure_dev = max(worst_measure.values())
    ok = state_dev < 1e-12 and measure_dev < 1e-9 and kappa_violations_entangled == 0
    mode = "paper-literal" if paper_literal else "corrected"
    per_config = ", ".join(
        f"{key} {worst_state[key]:.2e}/{worst_measure[key]:.2e}"
        for key in sorted(worst_state)
    )
    detail = (
        f"[{mode}] max state/measure deviation per config: {per_config}; "
        f"|kappa|>delta fails on {kappa_claim_violations}/{grid * grid} dp-both cells, "
        f"{kappa_violations_entangled} of them entangled"
    )
    return SuiteResult("channel-oracle", ok, detail)


def suite_monotone_decay(points: int = 101) -> SuiteResult:
    """Spectral measures of the evolved EW state never increase with noise."""
    alpha = 0.4
    etas = np.linspace(0.0, 1.0, points)
    slack = 1e-12
    worst_rise = 0.0
    for config0 in _configs():
        for p in np.arange(0.4, 1.0 + 1e-9, 0.1):
            rho0 = states.ew(float(p), alpha)
            previous = None
            for eta in etas:
                evolved = channels.apply(rho0, _with_eta(config0, float(eta)), validate=False)
                triple = measures.measure_triple(evolved, validate=False)
                if previous is not None:
                    worst_rise = max(
                        worst_rise,
                        triple.concurrence - previous.concurrence,
                        triple.negativity - previous.negativity,
                        triple.binegativity - previous.binegativity,
                    )
                previous = triple
    return SuiteResult(
        "monotone-decay", worst_rise <= slack, f"worst increase along eta = {worst_rise:.2e}"
    )


def suite_two_sided_dominates(grid: int = 21) -> SuiteResult:
    """Both-sided noise never leaves more entanglement than one-sided."""
    alpha = 0.4
    worst = float("-inf")
    for kind in channels.KINDS:
        for p in np.linspace(0.0, 1.0, grid):
            rho0 = states.ew(float(p), alpha)
            for eta in np.linspace(0.0, 1.0, grid):
                one = measures.measure_triple(
                    channels.apply(rho0, channels.ChannelConfig(kind, "one", float(eta)), validate=False),
                    validate=False,
                )
                both = measures.measure_triple(
                    channels.apply(rho0, channels.ChannelConfig(kind, "both", float(eta)), validate=False),
                    validate=False,
                )
                worst = max(
                    worst,
                    both.concurrence - one.concurrence,
                    both.negativity - one.negativity,
                    both.binegativity - one.binegativity,
                )
    return SuiteResult(
        "two-sided-dominates", worst <= 1e-12, f"worst two-sided excess = {worst:.2e}"
    )


def suite_both_sided_coincidence(grid: int = 21) -> SuiteResult:
    """C = N = N2 on evolved states for AD-both, PD (both variants), DP-both."""
    alpha = 0.4
    worst = 0.0
    cases = [("ad", "both"), ("pd", "one"), ("pd", "both"), ("dp", "both")]
    for kind, sided in cases:
        for p in np.linspace(0.0, 1.0, grid):
            rho0 = states.ew(float(p), alpha)
            for eta in np.linspace(0.0, 1.0, grid):
                t = measures.measure_triple(
                    channels.apply(rho0, channels.ChannelConfig(kind, sided, float(eta)), validate=False),
                    validate=False,
                )
                worst = max(
                    worst,
                    abs(t.concurrence - t.negativity),
                    abs(t.negativity - t.binegativity),
                )
    return SuiteResult(
        "equal-measures-coincidence", worst < 1e-9, f"max |C-N|,|N-N2| = {worst:.2e}"
    )


def suite_xstate(rng: np.random.Generator, n: int = 2000) -> SuiteResult:
    """Appendix closed forms vs spectral pipeline; both piecewise branches hit."""
    worst = 0.0
    corner_branch = 0
    middle_branch = 0
    for _ in range(n):
        a, two_b, d = rng.dirichlet((1.0, 1.0, 1.0))
        b = two_b / 2.0
        c = rng.uniform(0.0, b) * np.exp(2j * np.pi * rng.uniform())
        e = rng.uniform(0.0, np.sqrt(a * d)) * np.exp(2j * np.pi * rng.uniform())
        closed = measures.xstate_measures(a, b, c, d, e)
        rho = measures.assemble_x_state(a, b, c, d, e)
        spectral = measures.measure_triple(rho, validate=False)
        worst = max(
            worst,
            abs(closed.concurrence - spectral.concurrence),
            abs(closed.negativity - spectral.negativity),
            abs(closed.binegativity - spectral.binegativity),
        )
        theta = np.sqrt((a - d) ** 2 + 4.0 * abs(c) ** 2)
        if a + d < theta:
            corner_branch += 1
        elif b < abs(e):
            middle_branch += 1
    ok = worst < 1e-10 and corner_branch > 0 and middle_branch > 0
    detail = (
        f"max |closed - spectral| = {worst:.2e}; branches hit: "
        f"corner {corner_branch}, middle {middle_branch}, ppt {n - corner_branch - middle_branch}"
    )
    return SuiteResult("xstate-closed-forms", ok, detail)


def suite_twirl(rng: np.random.Generator, n_states: int = 500, samples: int = 2000) -> SuiteResult:
    """Reduced-size twirl run: MC convergence and binegativity monotonicity."""
    report = twirl.monotonicity_experiment(
        n_states, samples, rng, mc_states=min(20, n_states)
    )
    mc_bound = 5.0 / np.sqrt(samples) if samples else float("inf")
    mc_ok = sum(1 for r in report.mc_results if r.mc_deviation < mc_bound)
    needed = int(np.ceil(0.99 * len(report.mc_results)))
    ok = report.violations == 0 and mc_ok >= needed
    detail = (
        f"{report.violations} violations over {n_states} {report.ensemble} states "
        f"(worst margin {report.worst_margin:.2e}); "
        f"MC within {mc_bound:.2e}: {mc_ok}/{len(report.mc_results)}"
    )
    return SuiteResult("twirl-monotonicity", ok, detail)


def run_verification(
    *,
    paper_literal: bool = False,
    fault: str | None = None,
    seed: int = DEFAULT_SEED,
    emit: Callable[[str], None] = print,
) -> int:
    """Run every suite, print one pass/fail line each; return 0 iff all passed."""
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}; known: {FAULTS}")
    rng = np.random.default_rng(seed)
    results = [
        suite_qmat_identities(rng),
        suite_eig_reconstruction(rng, fault),
        suite_lemma_equivalence(rng),
        suite_measure_properties(rng),
        suite_family_closed_forms(),
        suite_channel_oracle(paper_literal=paper_literal),
        suite_monotone_decay(),
        suite_two_sided_dominates(),
        suite_both_sided_coincidence(),
        suite_xstate(rng),
        suite_twirl(rng),
    ]
    all_ok = True
    for res in results:
        tag = "PASS" if res.passed else "FAIL"
        emit(f"[{tag}] {res.name}: {res.detail}")
        all_ok &= res.passed
    emit("verification " + ("passed" if all_ok else "FAILED"))
    return 0 if all_ok else 1
