"""Reference identification problem used by the study driver and the demos.

Measurements are taken along a quarter arc of the unit circle; the trace of
the boundary state along the arc is h(s) = cos(s) for s in [pi/4, 3*pi/4],
so the attained states fill I = [-1/sqrt(2), 1/sqrt(2)].  The coefficient
to be recovered is a(u) = 1 + u^2 with antiderivative
A(u) = u + u^3/3 + C, the constant chosen so that A(u_min) = 0.
"""

from __future__ import annotations

import numpy as np

from .forward import CurveParametrization, TraceData, make_exact_data
from .splines import ParameterSpline, StateInterval

__all__ = [
    "ANTIDERIVATIVE_OFFSET",
    "reference_interval",
    "reference_curve",
    "exact_parameter",
    "exact_antiderivative",
    "exact_parameter_spline",
    "reference_exact_data",
]

# C = 7 / (6 sqrt(2)), pinned by A(-1/sqrt(2)) = 0
ANTIDERIVATIVE_OFFSET = 7.0 / (6.0 * np.sqrt(2.0))


def reference_interval() -> StateInterval:
    u_max = 1.0 / np.sqrt(2.0)
    return StateInterval(-u_max, u_max)


def reference_curve() -> CurveParametrization:
    return CurveParametrization(
        s_lo=np.pi / 4.0,
        s_hi=3.0 * np.pi / 4.0,
        h=np.cos,
        h_prime=lambda s: -np.sin(s),
        interval=reference_interval(),
    )


def exact_parameter(u):
    return 1.0 + np.asarray(u) ** 2


def exact_antiderivative(u):
    u = np.asarray(u)
    return u + u**3 / 3.0 + ANTIDERIVATIVE_OFFSET


def exact_parameter_spline(n_elements: int = 200) -> ParameterSpline:
    """The exact coefficient sampled on the uniform reconstruction grid."""
    interval = reference_interval()
    return ParameterSpline(interval, exact_parameter(interval.uniform_grid(n_elements)))


def reference_exact_data(m: int = 500) -> TraceData:
    """Noise-free trace data of the reference problem at m midpoint nodes."""
    return make_exact_data(reference_curve(), exact_antiderivative, m)
