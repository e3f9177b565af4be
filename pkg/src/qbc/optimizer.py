"""Independent search for the best symmetric cloning map.

Multi-start projected gradient ascent over the feasible manifold, run in
sphere coordinates where the two unit-norm constraints become unit spheres
and the overlap constraint a fixed inner product. Starts are Gaussian
samples projected onto the manifold; each ascent is deterministic, so a
fixed seed reproduces the report bit for bit.

The hot loops live in qbc._kernels and are numba-compiled unless
QBC_DISABLE_NUMBA is set.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from ._kernels import project_pair, run_starts
from .cloner import (
    CloneParams,
    XYParams,
    check_theta,
    constraint_residuals,
    from_xy,
    lambda_objective,
    to_xy,
)
from .errors import OptimizationFailure, ProjectionError

# projection iterated below its contract residual; conversion noise stays
# well under the 1e-12 feasibility guarantee
_NEWTON_TOL = 1e-14


@dataclass(frozen=True)
class OptimizerConfig:
    n_starts: int = 32
    max_iters: int = tol.OPTIMIZER_MAX_ITERS
    step_init: float = tol.OPTIMIZER_STEP_INIT
    tol: float = tol.OPTIMIZER_GRAD_TOL
    seed: int = 42

    def __post_init__(self):
        if self.n_starts < 1:
            raise ValueError("n_starts must be at least 1")
        if self.step_init <= 0.0 or self.tol <= 0.0:
            raise ValueError("step_init and tol must be positive")
        if self.max_iters < 0:
            raise ValueError("max_iters must be nonnegative")


@dataclass(frozen=True)
class OptimizationReport:
    best_params: CloneParams
    lambda_max: float
    starts_converged: int
    residual_max: float
    distinct_optima: tuple[CloneParams, ...]


def _xy_vector(xy: XYParams) -> np.ndarray:
    return np.array(
        [xy.x0, xy.y0, math.sqrt(2.0) * xy.b0, xy.x1, xy.y1, math.sqrt(2.0) * xy.b1]
    )


def _params_from_vector(u: np.ndarray) -> CloneParams:
    xy = XYParams(
        x0=u[0], y0=u[1], b0=u[2] / math.sqrt(2.0),
        x1=u[3], y1=u[4], b1=u[5] / math.sqrt(2.0),
    )
    return from_xy(xy)


def project_to_feasible(raw: CloneParams, theta: float) -> CloneParams:
    """Project raw coefficients onto the feasible set for the given angle.

    The input must be within the projection basin: each row's weighted norm
    in [0.1, 10]. Already-feasible input is a fixed point.
    """
    check_theta(theta)
    u = _xy_vector(to_xy(raw))
    for half in (u[0:3], u[3:6]):
        norm = float(np.linalg.norm(half))
        if not 0.1 <= norm <= 10.0:
            raise ProjectionError(
                f"row weighted norm {norm:.3e} outside the projection basin [0.1, 10]"
            )
    point, ok = project_pair(u, math.cos(theta), _NEWTON_TOL, tol.PROJECTION_MAX_ITERS)
    if not ok:
        raise ProjectionError(
            f"feasibility projection did not converge in {tol.PROJECTION_MAX_ITERS} iterations"
        )
    return _params_from_vector(point)


def random_feasible_params(theta: float, rng: np.random.Generator) -> CloneParams:
    """A feasible point drawn by projecting a Gaussian sample."""
    check_theta(theta)
    point, ok = project_pair(
        rng.standard_normal(6), math.cos(theta), _NEWTON_TOL, tol.PROJECTION_MAX_ITERS
    )
    if not ok:
        raise ProjectionError("projection of the random sample failed")
    return _params_from_vector(point)


def maximize_lambda(theta: float, config: OptimizerConfig | None = None) -> OptimizationReport:
    """Maximize the distinguishability objective over feasible cloning maps.

    Aggregation is a max over converged starts with ties broken by start
    index, so any concurrent schedule of the independent starts would give
    the same report.
    """
    check_theta(theta)
    if config is None:
        config = OptimizerConfig()
    rng = np.random.default_rng(config.seed)
    starts = rng.standard_normal((config.n_starts, 6))
    points, lams, gnorms, iters, conv = run_starts(
        starts,
        math.cos(theta),
        config.step_init,
        config.tol,
        config.max_iters,
        _NEWTON_TOL,
        tol.PROJECTION_MAX_ITERS,
    )
    n_conv = int(np.count_nonzero(conv))
    if n_conv == 0:
        raise OptimizationFailure(
            "no start converged: "
            f"theta={theta}, n_starts={config.n_starts}, max_iters={config.max_iters}, "
            f"best objective={float(np.max(lams))}, "
            f"tangent gradient norms in [{float(np.min(gnorms))}, {float(np.max(gnorms))}]"
        )
    best_k = -1
    best_lam = -np.inf
    for k in range(config.n_starts):
        if conv[k] and lams[k] > best_lam:
            best_lam = lams[k]
            best_k = k
    best_params = _params_from_vector(points[best_k])
    distinct: list[tuple[np.ndarray, CloneParams]] = []
    for k in range(config.n_starts):
        if not conv[k]:
            continue
        if all(np.max(np.abs(points[k] - seen)) > 1e-6 for seen, _ in distinct):
            distinct.append((points[k], _params_from_vector(points[k])))
    return OptimizationReport(
        best_params=best_params,
        lambda_max=lambda_objective(best_params),
        starts_converged=n_conv,
        residual_max=float(np.max(np.abs(constraint_residuals(best_params, theta)))),
        distinct_optima=tuple(p for _, p in distinct),
    )
