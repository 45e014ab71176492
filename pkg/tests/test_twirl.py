"""Unit tests for Haar sampling, twirling, and the monotonicity experiment."""

import numpy as np

from bineg import measures, qmat, states
from bineg.twirl import (
    analytic_twirl,
    conjugate_local,
    haar_unitary_2,
    mc_twirl,
    monotonicity_experiment,
    sample_entangled_state,
    singlet_fidelity,
    twirl_state,
)

SINGLET_DM = np.outer(states.PSI_MINUS, states.PSI_MINUS.conj())


class TestHaarUnitary:
    def test_unitarity_and_determinant(self):
        rng = np.random.default_rng(0)
        for _ in range(500):
            u = haar_unitary_2(rng)
            assert np.abs(u.conj().T @ u - np.eye(2)).max() < 1e-12
            assert abs(abs(np.linalg.det(u)) - 1.0) < 1e-12

    def test_first_moment_vanishes(self):
        # Haar: E[U s_z U^dag] = Tr(s_z)/2 * I = 0; Monte-Carlo oracle
        rng = np.random.default_rng(1)
        n = 100_000
        acc = np.zeros((2, 2), dtype=complex)
        for _ in range(n):
            u = haar_unitary_2(rng)
            acc += u @ qmat.SIGMA_Z @ u.conj().T
        assert np.abs(acc / n).max() < 3.0 / np.sqrt(n)


class TestMcTwirl:
    def test_maximally_mixed_is_exactly_invariant(self):
        rng = np.random.default_rng(2)
        rho = np.eye(4, dtype=complex) / 4
        out = mc_twirl(rho, 50, rng)
        assert np.abs(out - rho).max() < 1e-14

    def test_werner_states_are_fixed_points(self):
        rng = np.random.default_rng(3)
        for p in (0.2, 0.6, 1.0):
            rho = states.werner(p)
            out = mc_twirl(rho, 4000, rng)
            assert np.abs(out - rho).max() < 5.0 / np.sqrt(4000)

    def test_triplet_bell_converges_to_analytic(self):
        rng = np.random.default_rng(4)
        rho = qmat.projector(states.PHI_PLUS)
        out = mc_twirl(rho, 10_000, rng)
        expected, p = analytic_twirl(rho)
        assert abs(p - (-1 / 3)) < 1e-12  # zero singlet overlap
        assert np.abs(out - expected).max() < 5.0 / np.sqrt(10_000)

    def test_preserves_singlet_fidelity_in_expectation(self):
        rng = np.random.default_rng(5)
        rho = measures.ginibre_state(rng)
        out = mc_twirl(rho, 20_000, rng)
        assert abs(singlet_fidelity(out) - singlet_fidelity(rho)) < 5.0 / np.sqrt(20_000)


class TestAnalyticTwirl:
    def test_werner_fixed_point(self):
        for p in (0.0, 0.4, 1.0):
            out, p_out = analytic_twirl(states.werner(p))
            assert abs(p_out - p) < 1e-12
            assert np.abs(out - states.werner(p)).max() < 1e-12

    def test_singlet(self):
        out, p = analytic_twirl(SINGLET_DM)
        assert abs(p - 1.0) < 1e-12
        assert np.abs(out - states.werner(1.0)).max() < 1e-12

    def test_product_state(self):
        out, p = analytic_twirl(np.diag([1.0, 0, 0, 0]).astype(complex))
        assert abs(p + 1 / 3) < 1e-15
        assert max(measures.measure_triple(out)) < 1e-12

    def test_output_is_uxu_invariant(self):
        rng = np.random.default_rng(6)
        rho = measures.ginibre_state(rng)
        out, _ = analytic_twirl(rho)
        for _ in range(10):
            u = haar_unitary_2(rng)
            drift = np.abs(conjugate_local(out, u, u) - out).max()
            assert drift < 1e-10

    def test_exactly_preserves_singlet_fidelity(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            rho = measures.ginibre_state(rng)
            out, _ = analytic_twirl(rho, validate=False)
            assert abs(singlet_fidelity(out) - singlet_fidelity(rho)) < 1e-14


class TestMonotonicity:
    def test_werner_inputs_are_unchanged(self):
        for p in (0.5, 0.8, 1.0):
            rho = states.werner(p)
            result = twirl_state(rho, 0, np.random.default_rng(0))
            assert abs(result.output_binegativity - result.input_binegativity) < 1e-12

    def test_pure_inputs_decrease(self):
        # N2(in) = N(in); output is Werner with p = (4F-1)/3
        rng = np.random.default_rng(8)
        for _ in range(50):
            rho = qmat.projector(measures.haar_pure_ket(rng))
            n_in = measures.negativity(rho, validate=False)
            n2_in = measures.binegativity_spectral(rho, validate=False)
            assert abs(n2_in - n_in) < 1e-9
            out, p = analytic_twirl(rho, validate=False)
            n2_out = measures.binegativity_spectral(out, validate=False)
            assert abs(n2_out - max(0.0, (3 * p - 1) / 2)) < 1e-10
            assert n2_out <= n2_in + 1e-9

    def test_experiment_reports_no_violations(self):
        rng = np.random.default_rng(9)
        report = monotonicity_experiment(300, 0, rng)
        assert report.n_states == 300
        assert report.ensemble == "ginibre"
        assert report.violations == 0
        assert report.worst_margin <= 1e-9

    def test_experiment_with_mc_check(self):
        rng = np.random.default_rng(10)
        report = monotonicity_experiment(25, 2000, rng, mc_states=10)
        assert len(report.mc_results) == 10
        bound = 5.0 / np.sqrt(2000)
        assert sum(r.mc_deviation < bound for r in report.mc_results) >= 9
        assert report.max_mc_deviation == max(r.mc_deviation for r in report.mc_results)

    def test_empty_experiment(self):
        report = monotonicity_experiment(0, 0, np.random.default_rng(0))
        assert report.violations == 0
        assert report.worst_margin == 0.0
        assert report.max_mc_deviation == 0.0

    def test_determinism(self):
        first = monotonicity_experiment(20, 500, np.random.default_rng(42), mc_states=5)
        second = monotonicity_experiment(20, 500, np.random.default_rng(42), mc_states=5)
        assert first.worst_margin == second.worst_margin
        assert [r.mc_deviation for r in first.mc_results] == [
            r.mc_deviation for r in second.mc_results
        ]

    def test_sampled_states_are_entangled(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            rho = sample_entangled_state(rng)
            assert measures.negativity(rho, validate=False) > 1e-6

    def test_all_three_measures_non_increasing(self):
        rng = np.random.default_rng(12)
        for _ in range(300):
            rho = sample_entangled_state(rng)
            out, p = analytic_twirl(rho, validate=False)
            assert -1 / 3 - 1e-12 <= p <= 1 + 1e-12
            before = measures.measure_triple(rho, validate=False)
            after = measures.measure_triple(out, validate=False)
            assert after.concurrence <= before.concurrence + 1e-9
            assert after.negativity <= before.negativity + 1e-9
            assert after.binegativity <= before.binegativity + 1e-9
