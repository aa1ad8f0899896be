"""Independent verification path: direct RK4 integration of the Dirac
system over one period.

The fundamental 2x2 matrix M(x) solves M' = A(x) M, M(x0) = I with

    A(x) = [[ m+S(x), -E ], [ E, -(m+S(x)) ]]

A is trace-free, so det M = 1 exactly; determinant drift measures the
integration error.  tr M(x0+T) is the discriminant of the periodic
problem and must match the closed form wherever both are defined.
Energy sweeps are evaluated in one vectorized pass; a single fixed-step
grid of potential samples is shared by every energy.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import StepCountTooSmall
from .spinor import ScalarPotential

DEFAULT_STEPS = 20000
DET_DRIFT_LIMIT = 1e-6


@dataclass(frozen=True)
class Monodromy:
    """Fundamental matrix over one period at a single energy."""

    matrix: np.ndarray
    energy: float
    x0: float
    period: float
    steps: int
    potential: ScalarPotential

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.matrix))

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))


def _propagate(potential: ScalarPotential, m: float, energies, x0: float, period: float, steps: int):
    """RK4 for the fundamental matrix, all energies at once.

    Returns the four matrix entries as arrays shaped like ``energies``.
    """
    e = np.asarray(energies, dtype=float)
    h = period / steps
    xs = x0 + h * np.arange(steps + 1)
    s_node = m + potential.values(xs)
    s_half = m + potential.values(xs[:-1] + 0.5 * h)

    m11 = np.ones_like(e)
    m12 = np.zeros_like(e)
    m21 = np.zeros_like(e)
    m22 = np.ones_like(e)

    def rate(s, a11, a12, a21, a22):
        return (
            s * a11 - e * a21,
            s * a12 - e * a22,
            e * a11 - s * a21,
            e * a12 - s * a22,
        )

    hh = 0.5 * h
    for i in range(steps):
        s0, sm, s1 = s_node[i], s_half[i], s_node[i + 1]
        k1 = rate(s0, m11, m12, m21, m22)
        k2 = rate(sm, m11 + hh * k1[0], m12 + hh * k1[1], m21 + hh * k1[2], m22 + hh * k1[3])
        k3 = rate(sm, m11 + hh * k2[0], m12 + hh * k2[1], m21 + hh * k2[2], m22 + hh * k2[3])
        k4 = rate(s1, m11 + h * k3[0], m12 + h * k3[1], m21 + h * k3[2], m22 + h * k3[3])
        w = h / 6.0
        m11 = m11 + w * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        m12 = m12 + w * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        m21 = m21 + w * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
        m22 = m22 + w * (k1[3] + 2 * k2[3] + 2 * k3[3] + k4[3])
    return m11, m12, m21, m22


def _check_steps(steps: int) -> None:
    if steps < 100:
        raise ValueError(f"steps must be >= 100, got {steps}")


def integrate_monodromy(
    potential: ScalarPotential,
    m: float,
    energy: float,
    x0: float,
    period: float,
    steps: int = DEFAULT_STEPS,
) -> Monodromy:
    """Fundamental matrix from x0 to x0 + period at one energy.

    Raises StepCountTooSmall when the determinant drifts from 1 by more
    than DET_DRIFT_LIMIT, which means the step is too coarse for this
    potential and energy.
    """
    _check_steps(steps)
    m11, m12, m21, m22 = _propagate(potential, m, np.array([energy]), x0, period, steps)
    matrix = np.array([[m11[0], m12[0]], [m21[0], m22[0]]])
    drift = abs(matrix[0, 0] * matrix[1, 1] - matrix[0, 1] * matrix[1, 0] - 1.0)
    if drift > DET_DRIFT_LIMIT:
        raise StepCountTooSmall(
            f"det drifted by {drift:.2e} at E={energy} with {steps} steps; refine"
        )
    return Monodromy(matrix, energy, x0, period, steps, potential)


def lyapunov_numeric(
    potential: ScalarPotential,
    m: float,
    energy: float,
    a: float,
    steps: int = DEFAULT_STEPS,
) -> float:
    """Discriminant as the monodromy trace over [-a, a]."""
    return integrate_monodromy(potential, m, energy, -a, 2.0 * a, steps).trace


def lyapunov_numeric_many(
    potential: ScalarPotential,
    m: float,
    energies,
    a: float,
    steps: int = DEFAULT_STEPS,
) -> np.ndarray:
    """Vectorized discriminant sweep; one integration pass for all energies."""
    _check_steps(steps)
    e = np.asarray(energies, dtype=float)
    m11, m12, m21, m22 = _propagate(potential, m, e, -a, 2.0 * a, steps)
    drift = np.abs(m11 * m22 - m12 * m21 - 1.0)
    if drift.size and drift.max() > DET_DRIFT_LIMIT:
        worst = e.ravel()[int(np.argmax(drift))]
        raise StepCountTooSmall(
            f"det drifted by {drift.max():.2e} at E={worst} with {steps} steps; refine"
        )
    return m11 + m22
