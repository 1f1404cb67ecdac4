"""Finite-dimensional realization of the scale-generating operator.

The fourth-order operator A -> A'''' + A, restricted by the essential
condition u(u_min) = 0, is realized through its quadratic form
(u'', u'') + (u, u) with second differences: the stiffness part is the Gram
matrix K = D2^T W D2 of the interior 3-point stencil, so symmetry and
positive semi-definiteness hold by construction, and the free-end
conditions are natural (no constraint rows).  The generalized eigenproblem

    (K + M) v = lambda M v,   v M-orthonormal,

defines the discrete scale: fractional powers act as lambda^(t/4) on the
eigen-coefficients, and the shifted-scale norm of index s weights them by
lambda^((s+1)/2).

The eigenpairs are computed from the singular value decomposition of the
scaled difference factor F M^{-1/2} (with K = F^T F), giving
lambda = 1 + sigma^2.  A generalized symmetric eigensolver would lose
absolute accuracy of order ||K|| * eps ~ 1e-5 on the smallest eigenvalues;
the SVD route keeps lambda >= 1 exactly in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import NumericalError
from .splines import StateInterval

__all__ = ["DiscreteScaleOperator", "build_scale_operator"]


@dataclass(frozen=True, eq=False)
class DiscreteScaleOperator:
    """Discrete scale operator on a uniform grid of N+1 points.

    Vectors passed to the methods live on the full grid (length N+1) and
    must vanish at the first node (the essential constraint).  The stored
    matrices act on the constrained unknowns at nodes 1..N; eigenvector
    columns are padded back to the full grid.
    """

    interval: StateInterval
    grid: np.ndarray               # (N+1,) nodes
    stiffness: np.ndarray          # (N, N), realizes (u'', u'')
    stiffness_factor: np.ndarray   # (N-1, N) weighted second differences, K = F^T F
    mass: np.ndarray               # (N, N) diagonal, realizes (u, u)
    eigenvalues: np.ndarray        # (N,), ascending, all >= 1
    eigenvectors: np.ndarray       # (N+1, N), M-orthonormal, zero first row

    def __post_init__(self):
        for name in (
            "grid",
            "stiffness",
            "stiffness_factor",
            "mass",
            "eigenvalues",
            "eigenvectors",
        ):
            arr = np.asarray(getattr(self, name))
            arr = np.array(arr, copy=True)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def n_points(self) -> int:
        return self.grid.size

    def _coefficients(self, u: np.ndarray) -> np.ndarray:
        """Eigen-coefficients c_k = v_k^T M u of a full-grid vector."""
        u = np.asarray(u, dtype=float)
        if u.shape != self.grid.shape:
            raise ValueError(
                f"expected a full-grid vector of length {self.grid.size}, got {u.shape}"
            )
        if u[0] != 0.0:
            raise ValueError(
                "vector must satisfy the essential condition u(u_min) = 0"
            )
        mass_diag = np.diagonal(self.mass)
        return self.eigenvectors[1:].T @ (mass_diag * u[1:])

    def stiffness_energy(self, u: np.ndarray) -> float:
        """Quadratic form u^T K u evaluated as ||F u||^2, hence >= 0 exactly."""
        u = np.asarray(u, dtype=float)
        return float(np.sum((self.stiffness_factor @ u[1:]) ** 2))

    def scale_norm(self, u: np.ndarray, s: float) -> float:
        """Shifted-scale norm of index s: sqrt(sum_k lambda_k^((s+1)/2) c_k^2).

        s = -1 recovers the discrete L2 norm, s = 1 the discrete version of
        (||u''||^2 + ||u||^2)^(1/2).
        """
        c = self._coefficients(u)
        return float(np.sqrt(np.sum(self.eigenvalues ** ((s + 1.0) / 2.0) * c**2)))

    def x_norm(self, u: np.ndarray, s: float) -> float:
        """Unshifted scale norm ||L^s u||, i.e. scale_norm at index s - 1."""
        return self.scale_norm(u, s - 1.0)

    def apply_power(self, u: np.ndarray, t: float) -> np.ndarray:
        """Apply the fractional power L^t (eigenvalues lambda_k^(t/4))."""
        c = self._coefficients(u)
        out = np.zeros_like(np.asarray(u, dtype=float))
        out[1:] = self.eigenvectors[1:] @ (self.eigenvalues ** (t / 4.0) * c)
        return out

    def interpolation_margin(self, u: np.ndarray, r: float, s: float, t: float) -> float:
        """RHS - LHS of the interpolation inequality between scale levels.

        ||L^s u|| <= ||L^r u||^((t-s)/(t-r)) * ||L^t u||^((s-r)/(t-r))
        for r <= s <= t, r < t.  The returned margin is nonnegative up to
        rounding (contract: margin >= -1e-10 * RHS).
        """
        if not (r <= s <= t) or not r < t:
            raise ValueError(f"need r <= s <= t with r < t, got r={r}, s={s}, t={t}")
        if not np.any(np.asarray(u)[1:]):
            raise ValueError("interpolation margin undefined for the zero vector")
        lhs = self.x_norm(u, s)
        rhs = self.x_norm(u, r) ** ((t - s) / (t - r)) * self.x_norm(u, t) ** (
            (s - r) / (t - r)
        )
        return float(rhs - lhs)


def build_scale_operator(interval: StateInterval, n_points: int) -> DiscreteScaleOperator:
    """Assemble the discrete scale operator on N = n_points elements.

    The grid has n_points + 1 nodes; the first node carries the essential
    condition and is eliminated from the unknowns.
    """
    n = int(n_points)
    if n < 4:
        raise ValueError(f"need at least 4 grid intervals, got {n}")
    grid = interval.uniform_grid(n)
    dx = interval.length / n

    # interior second differences on the constrained unknowns u_1..u_N
    # (u_0 = 0 is eliminated; its column is dropped)
    d2 = np.zeros((n - 1, n))
    for i in range(1, n):
        if i >= 2:
            d2[i - 1, i - 2] = 1.0 / dx**2
        d2[i - 1, i - 1] = -2.0 / dx**2
        d2[i - 1, i] = 1.0 / dx**2
    quad_w = np.full(n - 1, dx)
    factor = np.sqrt(quad_w)[:, None] * d2
    stiffness = factor.T @ factor
    stiffness = 0.5 * (stiffness + stiffness.T)

    # trapezoid-lumped mass on u_1..u_N (u_0 excluded)
    mass_diag = np.full(n, dx)
    mass_diag[-1] = dx / 2.0
    mass = np.diag(mass_diag)

    # eigenpairs of (K + M) v = lambda M v via SVD of F M^{-1/2}:
    # lambda = 1 + sigma^2 >= 1 exactly, v = M^{-1/2} q is M-orthonormal.
    scaled = factor / np.sqrt(mass_diag)[None, :]
    try:
        _, singular, vt = np.linalg.svd(scaled, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD of the scale factor failed: {exc}") from exc
    sigma_sq = np.zeros(n)
    sigma_sq[: singular.size] = singular**2
    eigenvalues = 1.0 + sigma_sq
    order = np.argsort(eigenvalues)
    eigenvalues = eigenvalues[order]
    vectors = (vt.T / np.sqrt(mass_diag)[:, None])[:, order]
    eigenvectors = np.vstack([np.zeros(n), vectors])

    op = DiscreteScaleOperator(
        interval=interval,
        grid=grid,
        stiffness=stiffness,
        stiffness_factor=factor,
        mass=mass,
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
    )
    _validate(op)
    return op


def _validate(op: DiscreteScaleOperator) -> None:
    k = op.stiffness
    sym_defect = np.max(np.abs(k - k.T)) / max(np.max(np.abs(k)), 1.0)
    if sym_defect > 1e-12:
        raise NumericalError(f"stiffness symmetry defect {sym_defect:.2e} > 1e-12")
    if op.eigenvalues[0] < 1.0 - 1e-10:
        raise NumericalError(
            f"smallest eigenvalue {op.eigenvalues[0]!r} below the strict-positivity bound"
        )
    v = op.eigenvectors[1:]
    gram = v.T @ (np.diagonal(op.mass)[:, None] * v)
    orth_defect = np.max(np.abs(gram - np.eye(v.shape[1])))
    if orth_defect > 1e-10:
        raise NumericalError(f"M-orthonormality defect {orth_defect:.2e} > 1e-10")
