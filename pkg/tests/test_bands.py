import math

import numpy as np
import pytest

from conftest import count_crossings
from diracband import (
    Band,
    DegenerateEnergy,
    GridTooCoarse,
    ModelParams,
    NotAllowedBand,
    band_edges,
    dispersion,
    floquet_multipliers,
    lyapunov,
    lyapunov_many,
    lyapunov_numeric,
    lyapunov_trace,
    periodized_potential,
)
from diracband.verify import REFERENCE_EDGES

# ninth |D| = 2 energy below 7, beyond the eight reference values; located
# by bisection and confirmed by the monodromy integrator (both give
# D = 2.000187 at the interior maximum 6.3586)
NINTH_EDGE = 6.365375
NINTH_GAP_INTERIOR = 6.3586


class TestLyapunov:
    def test_even_function(self, canonical):
        rng = np.random.default_rng(21)
        es = rng.uniform(0.05, 8.0, 50)
        assert np.abs(lyapunov_many(canonical, es) - lyapunov_many(canonical, -es)).max() < 1e-10

    def test_reference_edges_sit_on_the_lines(self, canonical):
        # reference values are printed to three decimals; with slopes up to
        # ~7 near the first edge that rounding shows up as a few 1e-3 in D
        worst = max(abs(abs(lyapunov(canonical, e)) - 2.0) for e in REFERENCE_EDGES)
        assert worst < 5e-3

    def test_matches_oracle_away_from_mass_shell(self, canonical):
        rng = np.random.default_rng(22)
        es = np.array([e for e in rng.uniform(-8, 8, 15) if abs(abs(e) - 2.0) > 0.05])
        closed = lyapunov_many(canonical, es)
        pot = periodized_potential(canonical)
        for e, c in zip(es, closed):
            assert abs(c - lyapunov_numeric(pot, canonical.mass, float(e), 1.0, steps=4000)) < 1e-6

    def test_degenerate_energy_raises(self, canonical):
        for e in (2.0, -2.0):
            with pytest.raises(DegenerateEnergy):
                lyapunov(canonical, e)

    def test_limit_value_at_mass_shell_matches_oracle(self, canonical):
        d_limit = float(lyapunov_many(canonical, np.array([2.0]))[0])
        d_oracle = lyapunov_numeric(periodized_potential(canonical), 2.0, 2.0, 1.0, steps=8000)
        assert abs(d_limit - d_oracle) < 1e-6

    def test_zero_energy_matches_quadrature(self, canonical):
        # decoupled system at E=0: trace = 2 cosh of the integrated mass term
        xs = np.linspace(-1.0, 1.0, 200001)
        from diracband import potential_s1

        integral = np.trapezoid(2.0 + potential_s1(canonical, xs), xs)
        d0 = float(lyapunov_many(canonical, np.array([0.0]))[0])
        assert abs(d0 - 2.0 * math.cosh(integral)) < 1e-5

    def test_removable_point_at_bound_state_energy(self, canonical):
        around = lyapunov(canonical, 1.0 + 1e-6)
        assert abs(lyapunov(canonical, 1.0) - around) < 1e-4


@pytest.fixture(scope="module")
def table(canonical):
    return band_edges(canonical, e_max=7.0, tol=1e-6)


@pytest.fixture(scope="module")
def lowest_band(canonical):
    return band_edges(canonical, e_max=3.0, tol=1e-6).allowed_bands(positive_only=True)[0]


class TestBandEdges:
    def test_reference_edges_reproduced(self, table):
        pos = table.positive_edges
        assert len(pos) >= len(REFERENCE_EDGES)
        for found, ref in zip(pos, REFERENCE_EDGES):
            assert abs(found - ref) < 2e-3

    def test_ninth_edge_is_real(self, canonical, table):
        # both evaluation paths agree there is a gap just above 6.352
        assert table.positive_edges[8] == pytest.approx(NINTH_EDGE, abs=2e-3)
        closed = float(lyapunov_many(canonical, np.array([NINTH_GAP_INTERIOR]))[0])
        oracle = lyapunov_numeric(
            periodized_potential(canonical), canonical.mass, NINTH_GAP_INTERIOR, 1.0, steps=8000
        )
        assert closed - 2.0 > 1e-4
        assert oracle - 2.0 > 1e-4
        assert len(table.positive_edges) == 9

    def test_negative_edges_are_exact_mirrors(self, table):
        neg = sorted(-e for e in table.edges if e < 0)
        assert tuple(neg) == table.positive_edges

    def test_near_degenerate_pair_resolved(self, table):
        pos = table.positive_edges
        assert pos[3] == pytest.approx(3.274, abs=2e-3)
        assert pos[4] == pytest.approx(3.335, abs=2e-3)
        between = [b for b in table.bands if abs(b.e_lo - pos[3]) < 1e-9]
        assert between and between[0].kind == "forbidden"

    def test_edge_certificate(self, canonical, table):
        for e in table.edges:
            d = float(lyapunov_many(canonical, np.array([e]))[0])
            assert abs(abs(d) - 2.0) < 10 * table.tol

    def test_kinds_alternate(self, table):
        kinds = [b.kind for b in table.bands]
        assert all(a != b for a, b in zip(kinds[:-1], kinds[1:]))

    def test_table_covers_requested_range(self, table):
        assert table.bands[0].e_lo == -7.0
        assert table.bands[-1].e_hi == 7.0

    def test_floquet_regimes_inside_bands(self, canonical, table):
        for band in table.bands:
            mid = 0.5 * (band.e_lo + band.e_hi)
            if abs(abs(mid) - canonical.mass) < 1e-6:
                continue
            pair = floquet_multipliers(float(lyapunov_many(canonical, np.array([mid]))[0]))
            if band.kind == "allowed":
                assert abs(abs(pair.beta1) - 1.0) < 1e-12
                assert abs(abs(pair.beta2) - 1.0) < 1e-12
            else:
                assert abs(pair.beta1.imag) < 1e-12
                assert max(abs(pair.beta1), abs(pair.beta2)) > 1.0

    def test_coarse_grid_raises(self, canonical):
        with pytest.raises(GridTooCoarse):
            band_edges(canonical, e_max=7.0, tol=1e-6, grid_step=3.0)

    def test_invalid_arguments(self, canonical):
        with pytest.raises(ValueError):
            band_edges(canonical, e_max=-1.0)
        with pytest.raises(ValueError):
            band_edges(canonical, e_max=7.0, tol=0.0)


class TestDispersion:
    def test_endpoints_exact(self, canonical, lowest_band):
        points = dispersion(canonical, lowest_band, 51)
        ks = [k for _, k in points]
        assert abs(ks[0] - 0.0) < 1e-9
        assert abs(ks[-1] - math.pi / 2.0) < 1e-9

    def test_monotone_over_first_band(self, canonical, lowest_band):
        points = dispersion(canonical, lowest_band, 101)
        ks = [k for _, k in points]
        assert all(k2 > k1 for k1, k2 in zip(ks[:-1], ks[1:]))

    def test_defining_relation_round_trip(self, canonical, lowest_band):
        points = dispersion(canonical, lowest_band, 41)
        a = canonical.half_period
        for e, k in points[1:-1]:
            assert abs(math.cos(2 * k * a) - lyapunov(canonical, e) / 2.0) < 1e-12
        # endpoints carry the snapped defining values
        for e, k in (points[0], points[-1]):
            assert abs(math.cos(2 * k * a) - lyapunov(canonical, e) / 2.0) < 1e-11

    def test_forbidden_interval_rejected(self, canonical):
        with pytest.raises(NotAllowedBand):
            dispersion(canonical, (1.5, 2.1), 21)

    def test_forbidden_band_object_rejected(self, canonical):
        with pytest.raises(NotAllowedBand):
            dispersion(canonical, Band(1.381, 2.164, "forbidden"), 11)

    def test_sample_count_validated(self, canonical, lowest_band):
        with pytest.raises(ValueError):
            dispersion(canonical, lowest_band, 1)


class TestTrace:
    def test_ordering_and_regimes(self, canonical):
        trace = lyapunov_trace(canonical, -3.0, 3.0, 121)
        es = [s.e for s in trace.samples]
        assert es == sorted(es)
        for s in trace.samples:
            if abs(abs(s.e) - 2.0) < 1e-9:
                assert s.regime == "limit"
            elif abs(s.e) > 2.0:
                assert s.regime == "propagating"
            else:
                assert s.regime == "evanescent"

    def test_symmetric_range_is_even(self, canonical):
        trace = lyapunov_trace(canonical, -5.0, 5.0, 201)
        ds = [s.d for s in trace.samples]
        assert all(abs(d1 - d2) < 1e-10 for d1, d2 in zip(ds, reversed(ds)))

    def test_crossing_structure_below_seven(self, canonical):
        trace = lyapunov_trace(canonical, 0.0, 7.0, 701)
        ds = np.array([s.d for s in trace.samples])
        es = np.array([s.e for s in trace.samples])
        # one crossing bracketing each reference edge
        for ref in REFERENCE_EDGES:
            window = (es > ref - 0.011) & (es < ref + 0.011)
            assert count_crossings(ds[window]) >= 1
        # the true total includes the ninth edge; the count is odd by parity
        assert count_crossings(ds) == 9

    def test_invalid_ranges(self, canonical):
        with pytest.raises(ValueError):
            lyapunov_trace(canonical, 3.0, -3.0, 11)
        with pytest.raises(ValueError):
            lyapunov_trace(canonical, 0.0, 1.0, 1)


class TestFreeLimit:
    def test_gaps_close_as_gamma_vanishes(self):
        params = ModelParams(mass=2.0, gamma=1e-4, half_period=1.0)
        table = band_edges(params, e_max=7.0, tol=1e-6)
        gaps = [
            b for b in table.bands
            if b.kind == "forbidden" and b.e_lo > params.mass
        ]
        widest = max((b.e_hi - b.e_lo for b in gaps), default=0.0)
        assert widest < 1e-3
        # the continuum above the mass gap is essentially one allowed band
        allowed_above = [
            b for b in table.bands if b.kind == "allowed" and b.e_hi > params.mass
        ]
        assert sum(b.e_hi - max(b.e_lo, params.mass) for b in allowed_above) > 4.9
