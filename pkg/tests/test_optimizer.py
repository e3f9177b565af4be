"""Multi-start re-derivation of the cloning optimum."""

import math

import numpy as np
import pytest

from qbc._kernels import clone_lambda, clone_lambda_grad, project_pair
from qbc.cloner import CloneParams, constraint_residuals, lambda_objective, optimal_params
from qbc.errors import OptimizationFailure, ProjectionError
from qbc.optimizer import (
    OptimizerConfig,
    maximize_lambda,
    project_to_feasible,
    random_feasible_params,
)


class TestProjectToFeasible:
    def test_fixed_point(self):
        p = optimal_params(0.8, 0.5)
        q = project_to_feasible(p, 0.8)
        for f in ("a0", "b0", "d0", "a1", "b1", "d1"):
            assert getattr(q, f) == pytest.approx(getattr(p, f), abs=1e-12)

    def test_scaled_point_recovers_feasibility(self):
        p = optimal_params(0.8, 0.5)
        raw = CloneParams.symmetric(
            1.01 * p.a0, 1.01 * p.b0, 1.01 * p.d0, 1.01 * p.a1, 1.01 * p.b1, 1.01 * p.d1
        )
        q = project_to_feasible(raw, 0.8)
        assert np.max(np.abs(constraint_residuals(q, 0.8))) < 1e-12

    def test_zeros_outside_basin(self):
        with pytest.raises(ProjectionError):
            project_to_feasible(CloneParams.symmetric(0, 0, 0, 0, 0, 0), 0.5)

    def test_random_projections_feasible(self):
        rng = np.random.default_rng(41)
        for _ in range(300):
            theta = rng.uniform(0, math.pi / 2)
            p = random_feasible_params(theta, rng)
            assert np.max(np.abs(constraint_residuals(p, theta))) < 1e-12


class TestGradient:
    def test_matches_central_differences(self):
        rng = np.random.default_rng(43)
        h = 1e-6
        for _ in range(100):
            u = rng.standard_normal(6)
            grad = clone_lambda_grad(u)
            for i in range(6):
                up, dn = u.copy(), u.copy()
                up[i] += h
                dn[i] -= h
                fd = (clone_lambda(up) - clone_lambda(dn)) / (2 * h)
                assert grad[i] == pytest.approx(fd, rel=1e-5, abs=1e-8)


class TestMaximizeLambda:
    def test_orthogonal_inputs(self):
        report = maximize_lambda(math.pi / 2, OptimizerConfig(seed=1))
        assert report.lambda_max == pytest.approx(1.0, abs=1e-6)

    def test_identical_inputs(self):
        report = maximize_lambda(0.0, OptimizerConfig(seed=1))
        assert report.lambda_max < 1e-9

    def test_pi_over_3(self):
        report = maximize_lambda(math.pi / 3, OptimizerConfig(seed=1))
        assert report.lambda_max == pytest.approx(0.75, abs=1e-6)
        # the free parameter sweeps a family of equally good optima
        for p in report.distinct_optima:
            assert lambda_objective(p) == pytest.approx(0.75, abs=1e-6)

    def test_report_invariants(self):
        report = maximize_lambda(1.1, OptimizerConfig(seed=3))
        assert report.residual_max < 1e-9
        assert report.lambda_max == pytest.approx(
            lambda_objective(report.best_params), abs=1e-12
        )
        assert 1 <= report.starts_converged <= 32

    def test_same_seed_bitwise_identical(self):
        cfg = OptimizerConfig(n_starts=16, seed=11)
        a = maximize_lambda(0.7, cfg)
        b = maximize_lambda(0.7, cfg)
        assert a.best_params == b.best_params
        assert a.lambda_max == b.lambda_max
        assert a.starts_converged == b.starts_converged
        assert a.residual_max == b.residual_max
        assert a.distinct_optima == b.distinct_optima

    def test_different_seeds_same_value(self):
        a = maximize_lambda(0.7, OptimizerConfig(seed=1))
        b = maximize_lambda(0.7, OptimizerConfig(seed=2))
        assert a.lambda_max == pytest.approx(b.lambda_max, abs=1e-9)

    def test_failure_when_no_start_can_converge(self):
        with pytest.raises(OptimizationFailure):
            maximize_lambda(0.9, OptimizerConfig(n_starts=4, max_iters=0, tol=1e-300, seed=5))

    def test_config_validation(self):
        with pytest.raises(ValueError):
            OptimizerConfig(n_starts=0)
        with pytest.raises(ValueError):
            OptimizerConfig(step_init=-1.0)


class TestUpperBound:
    def test_no_feasible_point_beats_sin_squared(self):
        rng = np.random.default_rng(47)
        for _ in range(500):
            theta = rng.uniform(0, math.pi / 2)
            p = random_feasible_params(theta, rng)
            assert lambda_objective(p) <= math.sin(theta) ** 2 + 1e-9


class TestProjectPairKernel:
    def test_parallel_target_exact(self):
        u = np.array([1.0, 0.2, -0.3, -0.5, 0.9, 0.1])
        v, ok = project_pair(u, 1.0, 1e-14, 200)
        assert ok
        np.testing.assert_array_equal(v[:3], v[3:])
        assert np.dot(v[:3], v[:3]) == pytest.approx(1.0, abs=1e-14)

    def test_generic_target(self):
        rng = np.random.default_rng(53)
        for _ in range(500):
            gamma = math.cos(rng.uniform(0, math.pi / 2))
            v, ok = project_pair(rng.standard_normal(6), gamma, 1e-14, 200)
            assert ok
            assert abs(np.dot(v[:3], v[3:]) - gamma) < 1e-13
