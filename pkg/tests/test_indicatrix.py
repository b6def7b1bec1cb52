import numpy as np
import pytest

import finslercurv as fc
from finslercurv import indicatrix as ind
from finslercurv.exceptions import RejectionOverflow
from finslercurv.metrics import FundamentalFunction

from conftest import catalog, seeded_randers

FAMILIES = ("euclidean", "quadratic", "randers", "pnorm", "mroot")


class TestDefiningField:
    def test_euclidean(self):
        fld = fc.defining_field(fc.euclidean(3))
        y = np.array([0.3, -0.4, 1.2])
        value, grad, hess = fc.grad_hess(fld, y)
        assert abs(value - (y @ y - 1.0) / 2.0) <= 1e-15
        assert np.max(np.abs(hess - np.eye(3))) <= 1e-15

    def test_quadratic_hessian_is_parameter_matrix(self):
        a = np.array([[4.0, 1.0], [1.0, 2.0]])
        fld = fc.defining_field(fc.quadratic(a))
        _, _, hess = fc.grad_hess(fld, np.array([0.7, -0.2]))
        assert np.max(np.abs(hess - a)) <= 1e-12

    def test_hessian_equals_metric_tensor(self):
        a, b = seeded_randers(3, 8)
        fund = fc.randers(a, b)
        rng = np.random.default_rng(4)
        for _ in range(5):
            y = rng.standard_normal(3)
            _, _, hess = fc.grad_hess(fc.defining_field(fund), y)
            g = fc.metric_tensor(fund, y).entries
            assert np.max(np.abs(hess - g)) <= 1e-12 * np.max(np.abs(g))


class TestSampling:
    def test_normalization_euclidean(self):
        y = fc.normalize_to_indicatrix(fc.euclidean(2), [3.0, 4.0])
        assert np.max(np.abs(y - [0.6, 0.8])) <= 1e-16

    def test_normalization_randers(self):
        fund = fc.randers(np.eye(2), [0.5, 0.0])
        y = fc.normalize_to_indicatrix(fund, [1.0, 0.0])
        assert np.max(np.abs(y - [2.0 / 3.0, 0.0])) <= 1e-16

    @pytest.mark.parametrize("family", FAMILIES)
    def test_samples_on_indicatrix(self, family):
        fund = catalog(3)[family]
        for point in fc.sample_indicatrix(fund, 50, 7):
            assert abs(fc.eval_F(fund, point.y) - 1.0) <= 1e-12
            assert abs(np.linalg.norm(point.y_adapted) - 1.0) <= 1e-8
            low = point.chol
            assert np.max(np.abs(low @ low.T - point.metric.entries)) <= 1e-12 * \
                np.max(np.abs(point.metric.entries))

    def test_large_sweep_on_surface(self):
        fund = fc.euclidean(3)
        points = fc.sample_indicatrix(fund, 10_000, 99)
        residuals = [abs(fc.eval_F(fund, p.y) - 1.0) for p in points]
        assert max(residuals) <= 1e-12

    def test_deterministic_and_prefix_stable(self):
        fund = catalog(4)["randers"]
        first = fc.sample_indicatrix(fund, 10, 42)
        second = fc.sample_indicatrix(fund, 10, 42)
        short = fc.sample_indicatrix(fund, 4, 42)
        for a, b in zip(first, second):
            assert np.array_equal(a.y, b.y)
        for a, b in zip(short, first):
            assert np.array_equal(a.y, b.y)

    def test_rejection_overflow(self):
        # a guard excluding almost everything
        fund = FundamentalFunction("pnorm", 3, exponent=4, guard_margin=0.9)
        with pytest.raises(RejectionOverflow):
            fc.sample_indicatrix(fund, 1, 0)


class TestAdaptedReport:
    def test_euclidean_exact(self):
        fund = fc.euclidean(3)
        for point in fc.sample_indicatrix(fund, 10, 3):
            rep = fc.adapted_report(fund, point)
            assert rep.residual_H <= 1e-12
            assert rep.residual_trace <= 1e-12
            assert rep.residual_umbilic <= 1e-10

    def test_quadratic_ellipse(self):
        fund = fc.quadratic(np.diag([4.0, 1.0]))
        for point in fc.sample_indicatrix(fund, 20, 5):
            rep = fc.adapted_report(fund, point)
            assert rep.residual_H <= 1e-10

    def test_randers_hundred_points(self):
        fund = fc.randers(np.eye(3), [0.3, 0.0, 0.0])
        worst_h = worst_umb = 0.0
        for point in fc.sample_indicatrix(fund, 100, 11):
            rep = fc.adapted_report(fund, point)
            worst_h = max(worst_h, rep.residual_H)
            worst_umb = max(worst_umb, rep.residual_umbilic)
        assert worst_h <= 1e-8
        assert worst_umb <= 1e-6

    @pytest.mark.parametrize("family", FAMILIES)
    def test_radius_vector_normal(self, family):
        fund = catalog(3)[family]
        for point in fc.sample_indicatrix(fund, 10, 13):
            rep = fc.adapted_report(fund, point)
            assert rep.normal_residual <= 1e-8
            assert rep.grad_norm_residual <= 1e-8

    def test_fd_method(self):
        fund = catalog(3)["randers"]
        for point in fc.sample_indicatrix(fund, 10, 17):
            rep = fc.adapted_report(fund, point, method="fd")
            assert rep.method == "fd"
            assert rep.residual_H <= 1e-5

    def test_path_equivalence(self):
        for family in FAMILIES:
            fund = catalog(4)[family]
            for point in fc.sample_indicatrix(fund, 10, 19):
                rep = fc.adapted_report(fund, point)
                assert rep.path_gap <= 1e-10

    def test_near_degenerate_randers(self):
        a, b = seeded_randers(3, 23, strength=0.99)
        fund = fc.randers(a, b)
        for point in fc.sample_indicatrix(fund, 30, 29):
            rep = fc.adapted_report(fund, point)
            assert rep.residual_H <= 1e-6
            assert rep.residual_trace <= 1e-6

    def test_unknown_method_rejected(self):
        fund = fc.euclidean(2)
        point = fc.sample_indicatrix(fund, 1, 1)[0]
        with pytest.raises(ValueError):
            fc.adapted_report(fund, point, method="symbolic")


class TestVerifyClaims:
    def test_euclidean_summary(self):
        summary = fc.verify_claims(fc.euclidean(4), count=100, seed=1, tol=1e-10,
                                   methods=("hyperdual",))
        stats = summary.stats["hyperdual"]
        assert summary.passed
        assert stats.max_residual_H <= 1e-12
        assert stats.count == 100
        assert not stats.failures

    def test_pnorm_pipeline(self):
        summary = fc.verify_claims(fc.pnorm(3, 4), count=200, seed=2, tol=1e-8,
                                   methods=("hyperdual",))
        assert summary.passed

    def test_both_methods(self):
        summary = fc.verify_claims(fc.euclidean(3), count=20, seed=3, tol=1e-5)
        assert set(summary.stats) == {"hyperdual", "fd"}
        assert summary.passed

    def test_impossible_tolerance_marks_failures(self):
        summary = fc.verify_claims(catalog(3)["randers"], count=20, seed=4, tol=1e-16,
                                   methods=("hyperdual",))
        assert not summary.passed
        assert summary.stats["hyperdual"].failures

    def test_thread_count_invariance(self):
        fund = catalog(3)["randers"]
        serial = fc.verify_claims(fund, count=20, seed=5, tol=1e-8,
                                  methods=("hyperdual",), threads=1)
        parallel = fc.verify_claims(fund, count=20, seed=5, tol=1e-8,
                                    methods=("hyperdual",), threads=8)
        a = serial.stats["hyperdual"]
        b = parallel.stats["hyperdual"]
        assert (a.max_residual_H, a.mean_residual_H, a.max_residual_trace,
                a.max_residual_umbilic, a.max_oracle_gap) == \
               (b.max_residual_H, b.mean_residual_H, b.max_residual_trace,
                b.max_residual_umbilic, b.max_oracle_gap)

    def test_near_degenerate_stress(self):
        a, b = seeded_randers(3, 31, strength=0.99)
        summary = fc.verify_claims(fc.randers(a, b), count=50, seed=6, tol=1e-6,
                                   methods=("hyperdual",))
        assert summary.passed
