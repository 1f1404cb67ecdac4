"""Piecewise-linear representation of the unknown coefficient a(u).

The coefficient is stored through its nodal values on a uniform grid over a
state interval.  Evaluation is linear interpolation; the induced
antiderivative A(u) = int_{u_min}^u a(w) dw is piecewise quadratic and is
computed in closed form, so that A is exactly linear in the nodal values.
All norms (L2, H1) are evaluated with element-wise exact quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import DomainError, GridMismatchError

__all__ = [
    "StateInterval",
    "ParameterSpline",
    "antiderivative_weights",
    "antiderivative_l2_norm",
]


@dataclass(frozen=True)
class StateInterval:
    """Closed interval [u_min, u_max] of attainable states."""

    u_min: float
    u_max: float

    def __post_init__(self):
        if not (np.isfinite(self.u_min) and np.isfinite(self.u_max)):
            raise ValueError("interval endpoints must be finite")
        if not self.u_min < self.u_max:
            raise ValueError(
                f"invalid interval: u_min={self.u_min} must be < u_max={self.u_max}"
            )

    @property
    def length(self) -> float:
        return self.u_max - self.u_min

    def uniform_grid(self, n_elements: int) -> np.ndarray:
        """Nodes of the uniform partition into `n_elements` elements."""
        if n_elements < 1:
            raise ValueError("n_elements must be >= 1")
        return np.linspace(self.u_min, self.u_max, n_elements + 1)

    def contains(self, u) -> np.ndarray:
        u = np.asarray(u)
        return (u >= self.u_min) & (u <= self.u_max)


def _check_in_interval(interval: StateInterval, u: np.ndarray, what: str) -> None:
    bad = ~interval.contains(u)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise DomainError(
            f"{what}[{i}]={np.asarray(u).ravel()[i]!r} outside "
            f"[{interval.u_min}, {interval.u_max}]"
        )


def antiderivative_weights(
    interval: StateInterval, n_elements: int, u
) -> np.ndarray:
    """Row weights c(u) such that A(u) = c(u) @ node_values.

    A is the antiderivative of the piecewise-linear spline with the given
    nodal values, normalized by A(u_min) = 0.  The same kernel backs the
    forward-operator assembly and the quadratic penalty forms, which keeps
    every consumer exactly linear in the nodes.

    Parameters
    ----------
    interval, n_elements : grid of the spline.
    u : scalar or 1-d array of evaluation points inside the interval.

    Returns
    -------
    (len(u), n_elements + 1) array of weights.
    """
    uq = np.atleast_1d(np.asarray(u, dtype=float))
    _check_in_interval(interval, uq, "u")
    n = int(n_elements)
    dx = interval.length / n
    # element index and local coordinate t in [0, 1]
    k = np.clip(((uq - interval.u_min) / dx).astype(int), 0, n - 1)
    t = (uq - (interval.u_min + k * dx)) / dx
    cols = np.arange(n + 1)
    # full elements 0..k-1 contribute dx/2 * (a_j + a_{j+1}) each
    weights = (dx * ((cols[None, :] >= 1) & (cols[None, :] <= (k - 1)[:, None]))).astype(
        float
    )
    has_full = (k >= 1).astype(float)
    weights[:, 0] += 0.5 * dx * has_full
    rows = np.arange(uq.size)
    weights[rows, k] += 0.5 * dx * has_full
    # partial element k: dx * (a_k (t - t^2/2) + a_{k+1} t^2/2)
    weights[rows, k] += dx * (t - 0.5 * t * t)
    weights[rows, k + 1] += dx * (0.5 * t * t)
    return weights


@dataclass(frozen=True, eq=False)
class ParameterSpline:
    """Continuous piecewise-linear coefficient on a uniform state grid.

    Immutable: the node array is copied and marked read-only, so instances
    are safe to share across threads.
    """

    interval: StateInterval
    node_values: np.ndarray

    def __post_init__(self):
        values = np.array(self.node_values, dtype=float, copy=True)
        if values.ndim != 1 or values.size < 2:
            raise ValueError("node_values must be a 1-d array with >= 2 entries")
        if not np.all(np.isfinite(values)):
            i = int(np.argmax(~np.isfinite(values)))
            raise ValueError(f"non-finite node value at node {i}: {values[i]!r}")
        values.flags.writeable = False
        object.__setattr__(self, "node_values", values)

    @classmethod
    def from_function(
        cls, f: Callable[[float], float], interval: StateInterval, n_elements: int
    ) -> "ParameterSpline":
        """Sample `f` at the uniform grid nodes.

        Non-finite samples are rejected with a diagnostic naming the node.
        """
        grid = interval.uniform_grid(n_elements)
        values = np.array([float(f(u)) for u in grid])
        if not np.all(np.isfinite(values)):
            i = int(np.argmax(~np.isfinite(values)))
            raise ValueError(
                f"f(u) is not finite at node {i} (u={grid[i]!r}): {values[i]!r}"
            )
        return cls(interval, values)

    @property
    def n_elements(self) -> int:
        return self.node_values.size - 1

    @property
    def spacing(self) -> float:
        return self.interval.length / self.n_elements

    @property
    def nodes(self) -> np.ndarray:
        return self.interval.uniform_grid(self.n_elements)

    def __call__(self, u):
        """Evaluate a(u) by linear interpolation; exact at nodes.

        Raises DomainError outside the interval; callers that need clamped
        evaluation must clamp explicitly.
        """
        uq = np.atleast_1d(np.asarray(u, dtype=float))
        _check_in_interval(self.interval, uq, "u")
        n = self.n_elements
        dx = self.spacing
        k = np.clip(((uq - self.interval.u_min) / dx).astype(int), 0, n - 1)
        t = (uq - (self.interval.u_min + k * dx)) / dx
        out = (1.0 - t) * self.node_values[k] + t * self.node_values[k + 1]
        return out if np.ndim(u) else float(out[0])

    def antiderivative(self, u):
        """A(u) = int_{u_min}^u a(w) dw, exact per element (piecewise quadratic).

        A(u_min) = 0; A is strictly increasing whenever all nodes are > 0.
        """
        uq = np.atleast_1d(np.asarray(u, dtype=float))
        _check_in_interval(self.interval, uq, "u")
        a = self.node_values
        n = self.n_elements
        dx = self.spacing
        # cumulative integrals over full elements
        element_integrals = 0.5 * dx * (a[:-1] + a[1:])
        cum = np.concatenate(([0.0], np.cumsum(element_integrals)))
        k = np.clip(((uq - self.interval.u_min) / dx).astype(int), 0, n - 1)
        t = (uq - (self.interval.u_min + k * dx)) / dx
        partial = dx * (a[k] * (t - 0.5 * t * t) + a[k + 1] * (0.5 * t * t))
        out = cum[k] + partial
        return out if np.ndim(u) else float(out[0])

    def l2_norm(self) -> float:
        """Exact L2(I) norm of the piecewise-linear function."""
        a = self.node_values
        dx = self.spacing
        return float(
            np.sqrt(np.sum(dx * (a[:-1] ** 2 + a[:-1] * a[1:] + a[1:] ** 2) / 3.0))
        )

    def h1_norm(self) -> float:
        """Exact H1(I) norm; the derivative is piecewise constant."""
        a = self.node_values
        dx = self.spacing
        l2_sq = np.sum(dx * (a[:-1] ** 2 + a[:-1] * a[1:] + a[1:] ** 2) / 3.0)
        grad_sq = np.sum(np.diff(a) ** 2) / dx
        return float(np.sqrt(l2_sq + grad_sq))

    def __sub__(self, other: "ParameterSpline") -> "ParameterSpline":
        """Nodewise difference; both splines must live on the identical grid."""
        if not isinstance(other, ParameterSpline):
            return NotImplemented
        if (
            self.interval != other.interval
            or self.n_elements != other.n_elements
        ):
            raise GridMismatchError(
                f"grids differ: {self.interval} ({self.n_elements} elements) vs "
                f"{other.interval} ({other.n_elements} elements)"
            )
        return ParameterSpline(self.interval, self.node_values - other.node_values)


def antiderivative_l2_norm(spline: ParameterSpline) -> float:
    """Exact L2(I) norm of the antiderivative A of `spline`.

    A is quadratic per element, A^2 quartic, so 3-point Gauss per element
    integrates it exactly.
    """
    n = spline.n_elements
    dx = spline.spacing
    gauss_x, gauss_w = np.polynomial.legendre.leggauss(3)
    left = spline.nodes[:-1]
    points = (left[:, None] + (gauss_x[None, :] + 1.0) * dx / 2.0).ravel()
    weights = np.tile(gauss_w * dx / 2.0, n)
    values = spline.antiderivative(points)
    return float(np.sqrt(np.sum(weights * values**2)))
