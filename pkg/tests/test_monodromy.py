import math

import numpy as np
import pytest

from diracband import (
    ScalarPotential,
    StepCountTooSmall,
    integrate_monodromy,
    lyapunov_many,
    lyapunov_numeric,
    lyapunov_numeric_many,
    periodized_potential,
)

A = 1.0
MASS = 2.0


class TestFreeParticle:
    """Constant coefficients solve in closed form; the integrator must
    reproduce trace = 2 cos(2 k a)."""

    @pytest.mark.parametrize("energy", [2.5, 3.7, 6.0, 7.9])
    def test_trace_matches_closed_form(self, energy):
        k = math.sqrt(energy * energy - MASS * MASS)
        trace = lyapunov_numeric(ScalarPotential.zero(), MASS, energy, A, steps=10000)
        assert abs(trace - 2.0 * math.cos(2.0 * k * A)) < 1e-9

    def test_negative_energy_matches_too(self):
        k = math.sqrt(9.0 - 4.0)
        trace = lyapunov_numeric(ScalarPotential.zero(), MASS, -3.0, A, steps=10000)
        assert abs(trace - 2.0 * math.cos(2.0 * k * A)) < 1e-9


class TestMonodromyInvariants:
    def test_determinant_conserved(self, canonical):
        pot = periodized_potential(canonical)
        rng = np.random.default_rng(12)
        for e in rng.uniform(-8, 8, 20):
            mono = integrate_monodromy(pot, canonical.mass, float(e), -A, 2 * A, steps=2000)
            assert abs(mono.det - 1.0) < 1e-8

    def test_trace_invariant_under_start_shift(self, canonical):
        pot = periodized_potential(canonical)
        t1 = integrate_monodromy(pot, canonical.mass, 3.3, -A, 2 * A, steps=4000).trace
        t2 = integrate_monodromy(pot, canonical.mass, 3.3, 0.0, 2 * A, steps=4000).trace
        assert abs(t1 - t2) < 1e-8

    def test_band_edge_regression_point(self, canonical):
        # 2.164 is a reference band edge; the trace must sit at -2 there
        trace = lyapunov_numeric(periodized_potential(canonical), canonical.mass, 2.164, A, steps=4000)
        assert abs(abs(trace) - 2.0) < 2e-3

    def test_fourth_order_convergence(self, canonical):
        # E picked where the leading h^4 error coefficient is healthy; the
        # reference at 2^16 steps is converged far below the measured errors
        pot = periodized_potential(canonical)
        e = 5.1
        ref = lyapunov_numeric(pot, canonical.mass, e, A, steps=2**16)
        err1 = abs(lyapunov_numeric(pot, canonical.mass, e, A, steps=250) - ref)
        err2 = abs(lyapunov_numeric(pot, canonical.mass, e, A, steps=500) - ref)
        assert 12.0 < err1 / err2 < 20.0

    def test_matches_closed_form(self, canonical):
        rng = np.random.default_rng(13)
        es = np.array([e for e in rng.uniform(-8, 8, 12) if abs(abs(e) - canonical.mass) > 0.05])
        numeric = lyapunov_numeric_many(
            periodized_potential(canonical), canonical.mass, es, A, steps=4000
        )
        closed = lyapunov_many(canonical, es)
        assert np.abs(numeric - closed).max() < 1e-6


class TestGuards:
    def test_step_count_too_small(self, canonical):
        pot = periodized_potential(canonical)
        with pytest.raises(StepCountTooSmall):
            integrate_monodromy(pot, canonical.mass, 7.9, -A, 2 * A, steps=100)

    def test_minimum_step_count_enforced(self, canonical):
        pot = periodized_potential(canonical)
        with pytest.raises(ValueError):
            integrate_monodromy(pot, canonical.mass, 3.0, -A, 2 * A, steps=50)
