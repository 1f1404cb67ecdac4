"""Tikhonov regularization of the linearized identification problem.

The reconstruction minimizes

    ||T a - y||_W^2  +  alpha * (a^T K a  +  a^T P a)

over the nodal values a of the coefficient spline, where T is the forward
matrix, W the curve quadrature weights, K the exact form of the squared L2
norm of a' (equivalently of the second derivative of the antiderivative),
and P the form of the squared L2 norm of the antiderivative itself.  The
normalization A(u_min) = 0 is built into the antiderivative, so no
constraint rows are needed.  The unique minimizer solves the normal
equations with a symmetric positive-definite system matrix.

Also provided: the two a-priori parameter-choice rules, a discrepancy
principle based on bisection over log(alpha), and the naive differentiation
reconstruction that serves as the instability baseline.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .exceptions import DataTooRoughError, NoiseLevelTooSmallError, NumericalError
from .forward import CurveParametrization, TraceData, assemble_t_matrix, quadrature_norm
from .splines import ParameterSpline, StateInterval, antiderivative_weights

__all__ = [
    "TikhonovProblem",
    "ReconstructionResult",
    "gradient_penalty_matrix",
    "antiderivative_penalty_matrix",
    "build_tikhonov_problem",
    "solve_tikhonov",
    "tikhonov_objective",
    "alpha_a_priori",
    "alpha_discrepancy",
    "naive_reconstruction",
]


def gradient_penalty_matrix(interval: StateInterval, n_elements: int) -> np.ndarray:
    """Form of ||a'||^2_{L2(I)}, exact for the piecewise-linear spline.

    a' is piecewise constant, so the form is sum_j (a_{j+1} - a_j)^2 / dx.
    """
    n = int(n_elements)
    dx = interval.length / n
    diff = np.zeros((n, n + 1))
    idx = np.arange(n)
    diff[idx, idx] = -1.0
    diff[idx, idx + 1] = 1.0
    k = diff.T @ diff / dx
    return 0.5 * (k + k.T)


def antiderivative_penalty_matrix(
    interval: StateInterval, n_elements: int, subintervals: int = 10
) -> np.ndarray:
    """Form of ||A||^2_{L2(I)} via refined composite Simpson per element.

    A is quadratic per element; with the default 10 subintervals the
    quadrature error is far below every tolerance used downstream.
    """
    n = int(n_elements)
    dx = interval.length / n
    nodes = interval.uniform_grid(n)
    sub = int(subintervals)
    if sub < 2 or sub % 2:
        raise ValueError("subintervals must be even and >= 2")
    simpson = np.ones(sub + 1)
    simpson[1:-1:2] = 4.0
    simpson[2:-2:2] = 2.0
    simpson *= (dx / sub) / 3.0
    points = (nodes[:-1, None] + np.arange(sub + 1)[None, :] * (dx / sub)).ravel()
    weights = np.tile(simpson, n)
    rows = antiderivative_weights(interval, n, points)
    p = rows.T @ (weights[:, None] * rows)
    return 0.5 * (p + p.T)


@dataclass(frozen=True, eq=False)
class TikhonovProblem:
    """Assembled least-squares system for one noisy data set.

    The system matrix T^T W T + alpha (K + P) is symmetric positive
    definite for alpha > 0 since P is definite on splines.
    """

    t_matrix: np.ndarray             # (m, n+1)
    y: np.ndarray                    # (m,)
    quad_weights: np.ndarray         # (m,)
    gradient_penalty: np.ndarray     # (n+1, n+1), K
    antiderivative_penalty: np.ndarray  # (n+1, n+1), P
    alpha: float
    interval: StateInterval

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        m, nn = self.t_matrix.shape
        if self.y.shape != (m,) or self.quad_weights.shape != (m,):
            raise ValueError("y and quad_weights must match the matrix row count")
        for name in ("gradient_penalty", "antiderivative_penalty"):
            mat = getattr(self, name)
            if mat.shape != (nn, nn):
                raise ValueError(f"{name} must be {nn}x{nn}")
            defect = np.max(np.abs(mat - mat.T)) / max(np.max(np.abs(mat)), 1.0)
            if defect > 1e-12:
                raise ValueError(f"{name} symmetry defect {defect:.2e} > 1e-12")

    @property
    def n_elements(self) -> int:
        return self.t_matrix.shape[1] - 1


@dataclass(frozen=True)
class ReconstructionResult:
    """Recovered coefficient with the parameters of its solve."""

    spline: ParameterSpline
    alpha: float
    residual: float
    err0: Optional[float] = None   # L2 error vs a known exact coefficient
    err1: Optional[float] = None   # H1 error vs a known exact coefficient

    def __post_init__(self):
        if self.residual < 0:
            raise ValueError("residual must be >= 0")


def build_tikhonov_problem(
    data: TraceData,
    n_elements: int,
    alpha: float,
    gradient_penalty: Optional[np.ndarray] = None,
    antiderivative_penalty: Optional[np.ndarray] = None,
) -> TikhonovProblem:
    """Assemble the full problem for `data` on the n-element spline grid.

    Penalty matrices depend only on (interval, n_elements); precomputed
    ones can be passed in when assembling many problems on one grid.
    """
    interval = data.interval
    if gradient_penalty is None:
        gradient_penalty = gradient_penalty_matrix(interval, n_elements)
    if antiderivative_penalty is None:
        antiderivative_penalty = antiderivative_penalty_matrix(interval, n_elements)
    return TikhonovProblem(
        t_matrix=assemble_t_matrix(interval, n_elements, data),
        y=np.asarray(data.y_values, dtype=float),
        quad_weights=np.asarray(data.quad_weights, dtype=float),
        gradient_penalty=gradient_penalty,
        antiderivative_penalty=antiderivative_penalty,
        alpha=float(alpha),
        interval=interval,
    )


def _normal_solve(
    tw_t: np.ndarray, tw_y: np.ndarray, penalty: np.ndarray, alpha: float
) -> np.ndarray:
    try:
        factor = cho_factor(tw_t + alpha * penalty)
        return cho_solve(factor, tw_y)
    except LinAlgError as exc:
        raise NumericalError(
            f"normal-equation factorization failed at alpha={alpha!r} "
            f"(size {penalty.shape[0]}); system not positive definite: {exc}"
        ) from exc


def solve_tikhonov(problem: TikhonovProblem) -> ReconstructionResult:
    """Solve the normal equations by Cholesky; returns the unique minimizer."""
    w = problem.quad_weights
    tw = problem.t_matrix * w[:, None]
    tw_t = problem.t_matrix.T @ tw
    tw_y = problem.t_matrix.T @ (w * problem.y)
    penalty = problem.gradient_penalty + problem.antiderivative_penalty
    nodes = _normal_solve(tw_t, tw_y, penalty, problem.alpha)
    spline = ParameterSpline(problem.interval, nodes)
    residual = quadrature_norm(problem.t_matrix @ nodes - problem.y, w)
    return ReconstructionResult(spline=spline, alpha=problem.alpha, residual=residual)


def tikhonov_objective(problem: TikhonovProblem, node_values: np.ndarray) -> float:
    """Value of the Tikhonov functional at the given nodal values."""
    a = np.asarray(node_values, dtype=float)
    misfit = problem.t_matrix @ a - problem.y
    penalty = problem.gradient_penalty + problem.antiderivative_penalty
    return float(np.sum(problem.quad_weights * misfit**2) + problem.alpha * (a @ penalty @ a))


def alpha_a_priori(delta: float, rule: str = "quadratic", coeff: float = 0.1) -> float:
    """A-priori regularization parameter from the noise level.

    rule="quadratic" gives delta^2; rule="eight_fifths" gives
    coeff * delta^(8/5) with the default coefficient 0.1.
    """
    if delta <= 0:
        raise ValueError(f"delta must be > 0, got {delta}")
    if rule == "quadratic":
        return float(delta) ** 2
    if rule in ("eight_fifths", "eight-fifths"):
        return coeff * float(delta) ** 1.6
    raise ValueError(f"unknown parameter-choice rule {rule!r}")


def alpha_discrepancy(
    problem: TikhonovProblem,
    delta: float,
    tau: float = 1.5,
    alpha_min: float = 1e-16,
    alpha_max: float = 1e4,
    max_iter: int = 200,
) -> tuple[float, ReconstructionResult]:
    """Choose alpha a-posteriori so that the residual lands in [tau*d, 1.5*tau*d].

    The residual is nondecreasing in alpha, so bisection on log(alpha)
    converges to the lower edge of the bracket; the returned solution is
    the smallest alpha found whose residual lies inside it.  `problem.alpha`
    is ignored.

    Raises NoiseLevelTooSmallError if the residual at alpha_min already
    exceeds the bracket, DataTooRoughError if the residual at alpha_max
    stays below it.
    """
    if delta <= 0:
        raise ValueError(f"delta must be > 0, got {delta}")
    if tau <= 1:
        raise ValueError(f"tau must be > 1, got {tau}")
    target_lo = tau * delta
    target_hi = 1.5 * tau * delta

    w = problem.quad_weights
    tw_t = problem.t_matrix.T @ (problem.t_matrix * w[:, None])
    tw_y = problem.t_matrix.T @ (w * problem.y)
    penalty = problem.gradient_penalty + problem.antiderivative_penalty

    def solve_at(alpha: float) -> tuple[np.ndarray, float]:
        nodes = _normal_solve(tw_t, tw_y, penalty, alpha)
        return nodes, quadrature_norm(problem.t_matrix @ nodes - problem.y, w)

    _, res_min = solve_at(alpha_min)
    if res_min > target_hi:
        raise NoiseLevelTooSmallError(
            f"residual {res_min:.3e} at alpha={alpha_min:g} already exceeds "
            f"{target_hi:.3e}; the claimed noise level {delta:g} is below what "
            "the data can be fitted to"
        )
    nodes_max, res_max = solve_at(alpha_max)
    if res_max < target_lo:
        raise DataTooRoughError(
            f"residual {res_max:.3e} at alpha={alpha_max:g} is still below "
            f"{target_lo:.3e}; the noise level {delta:g} exceeds the data scale"
        )

    lo, hi = alpha_min, alpha_max
    best: Optional[tuple[float, np.ndarray, float]] = None
    for _ in range(max_iter):
        mid = float(np.sqrt(lo * hi))
        nodes, res = solve_at(mid)
        if target_lo <= res <= target_hi and (best is None or mid < best[0]):
            best = (mid, nodes, res)
        if res < target_lo:
            lo = mid
        else:
            hi = mid
        if hi / lo < 1.0005 and best is not None:
            break
    if best is None:
        raise NumericalError(
            "discrepancy bisection did not land in the residual bracket "
            f"[{target_lo:.3e}, {target_hi:.3e}] within {max_iter} iterations"
        )
    alpha, nodes, res = best
    spline = ParameterSpline(problem.interval, nodes)
    return alpha, ReconstructionResult(spline=spline, alpha=alpha, residual=res)


def naive_reconstruction(
    data: TraceData, curve: CurveParametrization, n_elements: int
) -> ParameterSpline:
    """Direct differentiation baseline: a(h(s)) = y'(s) / h'(s).

    y' is estimated with central differences over the curve parameter
    (one-sided at the ends), h' comes from the curve analytically, and the
    pointwise estimates are resampled onto the uniform spline grid by
    nearest attained state.  Amplifies data noise by 1/ds; kept as the
    instability contrast for the regularized solver.
    """
    if data.m < 3:
        raise ValueError(f"need at least 3 data points, got {data.m}")
    s = data.s_nodes
    y = data.y_values
    ds = np.diff(s)
    dy = np.empty(data.m)
    dy[1:-1] = (y[2:] - y[:-2]) / (s[2:] - s[:-2])
    dy[0] = (y[1] - y[0]) / ds[0]
    dy[-1] = (y[-1] - y[-2]) / ds[-1]
    slope = np.asarray(curve.h_prime(s), dtype=float)
    if np.any(np.abs(slope) < 1e-8):
        i = int(np.argmax(np.abs(slope) < 1e-8))
        raise ZeroDivisionError(
            f"|h'(s)| = {abs(slope[i]):.2e} at s={s[i]!r} is too small to divide by"
        )
    estimates = dy / slope
    grid = data.interval.uniform_grid(n_elements)
    nearest = np.argmin(np.abs(data.h_values[None, :] - grid[:, None]), axis=1)
    return ParameterSpline(data.interval, estimates[nearest])
