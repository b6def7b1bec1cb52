import json

import numpy as np
import pytest

import finslercurv as fc
from finslercurv.exceptions import (
    DomainViolation,
    InvalidParams,
    NotPositiveDefinite,
    UsageError,
)
from finslercurv.metrics import energy_field, parse_metric_spec

from conftest import catalog, interior_points, seeded_randers, seeded_spd

DIMS = (2, 3, 4, 6)


class TestEvalF:
    def test_euclidean(self):
        assert fc.eval_F(fc.euclidean(2), [3.0, 4.0]) == 5.0

    def test_randers(self):
        fund = fc.randers(np.eye(2), [0.5, 0.0])
        assert fc.eval_F(fund, [1.0, 0.0]) == 1.5

    def test_pnorm(self):
        assert abs(fc.eval_F(fc.pnorm(2, 4), [1.0, 1.0]) - 2.0 ** 0.25) <= 1e-15

    def test_mroot(self):
        assert abs(fc.eval_F(fc.mroot(2, 6), [1.0, 1.0]) - 2.0 ** (1 / 6)) <= 1e-15

    def test_guard_rejects_origin(self):
        with pytest.raises(DomainViolation):
            fc.eval_F(fc.euclidean(2), [0.0, 0.0])

    def test_guard_rejects_hyperplane_band(self):
        with pytest.raises(DomainViolation):
            fc.eval_F(fc.pnorm(3, 4), [1.0, 1.0, 1e-4])


class TestConstruction:
    def test_randers_convexity_enforced(self):
        with pytest.raises(InvalidParams):
            fc.randers(np.eye(2), [1.0, 0.0])
        with pytest.raises(InvalidParams):
            fc.randers(np.eye(2), [0.999999999, 0.0])

    def test_randers_near_boundary_accepted(self):
        fc.randers(np.eye(2), [0.99, 0.0])

    def test_odd_exponent_rejected(self):
        with pytest.raises(InvalidParams):
            fc.pnorm(3, 3)
        with pytest.raises(InvalidParams):
            fc.mroot(3, 5)

    def test_non_spd_rejected(self):
        with pytest.raises(InvalidParams):
            fc.quadratic(np.array([[1.0, 2.0], [2.0, 1.0]]))


class TestMetricTensor:
    def test_euclidean_identity(self):
        g = fc.metric_tensor(fc.euclidean(3), [0.2, -1.1, 0.4]).entries
        assert np.max(np.abs(g - np.eye(3))) <= 1e-12

    @pytest.mark.parametrize("dim", DIMS)
    def test_quadratic_constant(self, dim):
        a = seeded_spd(dim, 31)
        fund = fc.quadratic(a)
        for y in interior_points(fund, 10, 77):
            g = fc.metric_tensor(fund, y).entries
            assert np.max(np.abs(g - a)) <= 1e-12 * np.max(np.abs(a))

    def test_randers_matches_fd(self):
        fund = fc.randers(np.eye(2), [0.3, 0.0])
        y = np.array([1.0, 0.0])
        g = fc.metric_tensor(fund, y).entries
        _, _, g_fd = fc.fd_grad_hess(energy_field(fund), y, 1e-5)
        assert np.max(np.abs(g - g_fd)) <= 1e-6

    @pytest.mark.parametrize("family", ("euclidean", "quadratic", "randers", "pnorm", "mroot"))
    @pytest.mark.parametrize("dim", DIMS)
    def test_spd_and_zero_homogeneous(self, family, dim):
        fund = catalog(dim)[family]
        for index, y in enumerate(interior_points(fund, 100, 500 + dim)):
            g = fc.metric_tensor(fund, y).entries  # SPD check inside
            if index % 10 == 0:
                for lam in (0.5, 2.0, 10.0):
                    g_scaled = fc.metric_tensor(fund, lam * y).entries
                    assert np.max(np.abs(g_scaled - g)) <= 1e-9 * np.max(np.abs(g))

    @pytest.mark.parametrize("family", ("euclidean", "quadratic", "randers", "pnorm", "mroot"))
    def test_hyperdual_fd_agreement(self, family):
        fund = catalog(3)[family]
        for y in interior_points(fund, 10, 900):
            _, _, g = fc.grad_hess(energy_field(fund), y)
            _, _, g_fd = fc.fd_grad_hess(energy_field(fund), y, 1e-4)
            bound = max(1e-6 * np.max(np.abs(g)), 1e-8)
            assert np.max(np.abs(g - g_fd)) <= bound

    def test_degenerate_metric_rejected(self):
        # off-guard hyperplane point where the quartic-norm metric degenerates
        fund = fc.pnorm(2, 4, guard_margin=0.0)
        with pytest.raises(NotPositiveDefinite):
            fc.metric_tensor(fund, [1.0, 0.0])


class TestHomogeneity:
    def test_euclidean_exact(self):
        res_f, res_g = fc.check_homogeneity(fc.euclidean(2), [1.0, 2.0], 3.0)
        assert res_f <= 1e-15 and res_g <= 1e-15

    def test_randers_seeded(self):
        a, b = seeded_randers(3, 5)
        fund = fc.randers(a, b)
        for y in interior_points(fund, 20, 6):
            res_f, res_g = fc.check_homogeneity(fund, y, 0.5)
            assert res_f <= 1e-10 and res_g <= 1e-10

    @pytest.mark.parametrize("family", ("euclidean", "quadratic", "randers", "pnorm", "mroot"))
    def test_euler_identity(self, family):
        # gradient of F^2/2 dotted with y equals F^2
        fund = catalog(4)[family]
        for y in interior_points(fund, 25, 800):
            _, grad, _ = fc.grad_hess(energy_field(fund), y)
            f2 = fc.eval_F(fund, y) ** 2
            assert abs(float(grad @ y) - f2) <= 1e-10 * f2


class TestSpecGrammar:
    def test_euclidean(self):
        fund = parse_metric_spec("euclidean", dim=3)
        assert fund.family == "euclidean" and fund.dim == 3

    def test_quadratic_diagonal(self):
        fund = parse_metric_spec("quadratic:A=4,1", dim=2)
        assert np.array_equal(fund.matrix, np.diag([4.0, 1.0]))

    def test_quadratic_file(self, tmp_path):
        path = tmp_path / "a.json"
        path.write_text(json.dumps({"order": 2, "entries": [2.0, 0.5, 0.5, 1.0]}))
        fund = parse_metric_spec(f"quadratic:A=@{path}", dim=2)
        assert np.array_equal(fund.matrix, [[2.0, 0.5], [0.5, 1.0]])

    def test_randers_inline(self, tmp_path):
        path = tmp_path / "a.json"
        path.write_text(json.dumps({"order": 3, "entries": list(np.eye(3).ravel())}))
        fund = parse_metric_spec(f"randers:a=@{path},b=0.3,0,0", dim=3)
        assert fund.family == "randers"
        assert np.array_equal(fund.drift, [0.3, 0.0, 0.0])

    def test_exponent_families(self):
        assert parse_metric_spec("pnorm:p=4", dim=3).exponent == 4
        assert parse_metric_spec("mroot:m=6", dim=2).exponent == 6

    @pytest.mark.parametrize("bad", [
        "", "unknown", "pnorm:p=3", "pnorm:p=x", "pnorm", "euclidean:x=1",
        "quadratic", "quadratic:A=", "quadratic:A=1,oops",
        "randers:a=1,1", "randers:b=0.3", "randers:a=1,1,b=2,0,0",
        "euclidean ", "pnorm:p=4,p=4", "quadratic:A=@/nonexistent.json",
        "randers:a=@/nonexistent.json,b=0.1,0",
    ])
    def test_malformed_specs(self, bad):
        with pytest.raises(UsageError):
            parse_metric_spec(bad, dim=3)

    def test_dim_mismatch(self):
        with pytest.raises(UsageError):
            parse_metric_spec("quadratic:A=4,1", dim=3)

    def test_missing_dim(self):
        with pytest.raises(UsageError):
            parse_metric_spec("euclidean", dim=None)
