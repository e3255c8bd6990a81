"""Characteristic exponents, Fourier inversion, Kolmogorov distances."""

import math

import numpy as np
import pytest
import scipy.special

from conftest import cached_density
from hyplevy.errors import DecayDetectionError, DomainError
from hyplevy.measures import DimensionPair, cumulant, levy_density, make_measure, variance
from hyplevy.measures import LevyMeasure1D
from hyplevy.spectral import (
    STANDARD_NORMAL,
    CdfTable,
    DensityGrid,
    char_exponent,
    char_function,
    invert_to_density,
    ks_distance,
    ks_distance_sample,
    taylor_remainder_bound,
)

RESC43 = make_measure("rescaled", DimensionPair(4, 3))
HYP75 = make_measure("hyperbolic", DimensionPair(7, 5))
LIMIT1 = make_measure("limit", 1)
LIMIT2 = make_measure("limit", 2)


class TestCharExponent:
    def test_zero_frequency(self):
        for measure in (RESC43, HYP75, LIMIT1, LIMIT2):
            assert char_exponent(measure, 0.0) == 0.0 + 0.0j

    def test_frozen_values(self):
        cases = (
            (RESC43, 1.0, -0.4847492331674651 - 0.08077742216071878j),
            (HYP75, 2.0, -5.8938508989686436 - 1.2835497989452634j),
            (LIMIT2, 1.0, -0.4863853762353227 - 0.08128272680846123j),
            (LIMIT1, 2.0, -1.6525439010904814 - 0.8193609294836745j),
        )
        for measure, t, want in cases:
            got = char_exponent(measure, t)
            assert abs(got - want) <= 1e-9 * abs(want), (measure.family, t)

    def test_conjugate_symmetry(self):
        for measure in (RESC43, HYP75, LIMIT2):
            for t in (0.7, 1.3, 5.0):
                a = char_exponent(measure, t)
                b = char_exponent(measure, -t)
                assert abs(b - a.conjugate()) <= 1e-13 * abs(a)

    def test_real_part_nonpositive(self):
        for measure in (RESC43, HYP75, LIMIT1, LIMIT2):
            for t in (0.01, 0.5, 2.0, 11.0):
                assert char_exponent(measure, t).real <= 0.0

    def test_generic_density_fallback_agrees_with_family_route(self):
        clone = LevyMeasure1D(
            family="custom",
            pair=None,
            codim=None,
            sing_at_0=1.5,
            sing_log_at_0=False,
            sing_at_1=0.0,
            total_second_moment=variance(DimensionPair(7, 5)),
            density=lambda x: levy_density(DimensionPair(7, 5), x),
        )
        for t in (0.8, 1.5):
            a = char_exponent(clone, t)
            b = char_exponent(HYP75, t)
            assert abs(a - b) <= 1e-8 * abs(b)

    def test_small_frequency_curvature_is_the_variance(self):
        # (2 - cf(h) - cf(-h)) / h^2 recovers the second cumulant
        h = 1e-3
        for measure, k2 in ((RESC43, 1.0), (LIMIT1, 1.0), (LIMIT2, 1.0)):
            curv = (2.0 - char_function(measure, h) - char_function(measure, -h)) / h**2
            assert abs(curv.real - k2) <= 1e-4
            assert abs(curv.imag) <= 1e-4

    def test_low_order_cumulants_from_the_exponent(self):
        h = 0.02
        for measure, pair in ((RESC43, DimensionPair(4, 3)), (HYP75, DimensionPair(7, 5))):
            scale = variance(pair) if measure.family == "rescaled" else 1.0
            k2 = cumulant(pair, 2) / scale
            k3 = cumulant(pair, 3) / scale
            k4 = cumulant(pair, 4) / scale
            psi = char_exponent(measure, h)
            assert math.isclose(-2.0 * psi.real / h**2, k2, rel_tol=1e-3)
            assert math.isclose(-6.0 * psi.imag / h**3, k3, rel_tol=1e-3)
            assert math.isclose(
                24.0 * (psi.real + 0.5 * k2 * h**2) / h**4, k4, rel_tol=1e-3
            )


class TestCharFunction:
    def test_modulus_bounded_by_one(self):
        for measure in (RESC43, LIMIT2):
            for t in np.linspace(-20.0, 20.0, 17):
                assert abs(char_function(measure, float(t))) <= 1.0 + 1e-12

    def test_unit_at_zero(self):
        assert char_function(RESC43, 0.0) == 1.0 + 0.0j


class TestTaylorRemainderBound:
    def test_frozen_values(self):
        assert math.isclose(taylor_remainder_bound(2, 0.1), 1e-3 / 6.0, rel_tol=1e-15)
        assert taylor_remainder_bound(1, 10.0) == 20.0

    def test_dominates_the_exponential_remainder(self):
        for x in np.linspace(-10.0, 10.0, 10001):
            x = float(x)
            lhs = math.hypot(2.0 * math.sin(0.5 * x) ** 2, x - math.sin(x))
            assert lhs <= taylor_remainder_bound(1, x) * (1.0 + 1e-12) + 1e-300

    def test_validation(self):
        with pytest.raises(DomainError):
            taylor_remainder_bound(0, 1.0)
        with pytest.raises(DomainError):
            taylor_remainder_bound(1.5, 1.0)


class TestInvertToDensity:
    def test_moment_posts(self):
        grid = cached_density("rescaled", (4, 3), half_width=12.0, n_points=4096)
        meta = grid.meta
        assert abs(meta["mass"] - 1.0) <= 1e-6
        assert abs(meta["mean"]) <= 1e-6
        assert abs(meta["variance"] - 1.0) <= 1e-4
        assert abs(meta["third_central"] - 0.5) <= 1e-4
        assert meta["clipped_mass"] < 1e-6
        assert grid.values.min() >= 0.0

    def test_grid_geometry(self):
        grid = cached_density("rescaled", (4, 3), half_width=12.0, n_points=4096)
        assert len(grid.values) == 4096
        assert math.isclose(grid.x0, -12.0, rel_tol=1e-12)
        assert math.isclose(grid.xs[-1], 12.0 - grid.step, rel_tol=1e-9)

    def test_round_trip_to_the_characteristic_function(self):
        grid = cached_density("rescaled", (4, 3), half_width=12.0, n_points=4096)
        xs = grid.xs
        for t in (1.0, 3.0, 10.0):
            back = np.sum(grid.values * np.exp(1j * t * xs)) * grid.step
            direct = char_function(RESC43, t)
            assert abs(back - direct) <= 1e-5

    def test_limit_family_inversion(self):
        grid = cached_density("limit", 2, half_width=12.0, n_points=4096)
        assert abs(grid.meta["variance"] - 1.0) <= 1e-3
        assert abs(grid.meta["third_central"] - 0.5) <= 1e-2

    def test_decay_never_detected_inside_window(self):
        with pytest.raises(DecayDetectionError) as info:
            invert_to_density(LIMIT2, half_width=1e6, n_points=256)
        assert info.value.achieved > 0.9

    def test_threshold_zero_is_unreachable(self):
        with pytest.raises(DecayDetectionError):
            invert_to_density(RESC43, half_width=12.0, n_points=256, decay_threshold=0.0)

    def test_validation(self):
        with pytest.raises(DomainError):
            invert_to_density(RESC43, half_width=0.0)
        with pytest.raises(DomainError):
            invert_to_density(RESC43, n_points=255)
        with pytest.raises(DomainError):
            invert_to_density(RESC43, n_points=258)
        with pytest.raises(DomainError):
            invert_to_density(RESC43, n_points=512.0)


class TestCdf:
    def test_monotone_normalized(self):
        grid = cached_density("rescaled", (4, 3), half_width=12.0, n_points=4096)
        table = grid.cdf()
        assert table.values[0] == 0.0
        assert math.isclose(table.values[-1], 1.0, rel_tol=1e-12)
        assert np.all(np.diff(table.values) >= 0.0)

    def test_evaluate_clamps_outside_support(self):
        table = CdfTable(x0=0.0, step=1.0, values=np.array([0.0, 0.5, 1.0]))
        assert table.evaluate(-5.0) == 0.0
        assert table.evaluate(7.0) == 1.0
        assert table.evaluate(0.5) == 0.25

    def test_zero_mass_grid_is_rejected(self):
        grid = DensityGrid(x0=0.0, step=0.1, values=np.zeros(8))
        with pytest.raises(DomainError):
            grid.cdf()


class TestKolmogorovDistance:
    def test_self_distance_is_zero(self):
        grid = cached_density("rescaled", (4, 3), half_width=12.0, n_points=4096)
        assert ks_distance(grid, grid) == 0.0
        assert ks_distance(grid.cdf(), grid) == 0.0

    def test_synthetic_gaussian_grid_matches_the_normal_sentinel(self):
        xs = np.linspace(-10.0, 10.0, 4097)
        pdf = np.exp(-0.5 * xs**2) / math.sqrt(2.0 * math.pi)
        grid = DensityGrid(x0=-10.0, step=float(xs[1] - xs[0]), values=pdf)
        assert ks_distance(grid, STANDARD_NORMAL) <= 1e-4

    def test_skewed_law_is_far_from_normal(self):
        grid = cached_density("rescaled", (4, 3), half_width=12.0, n_points=4096)
        assert ks_distance(grid, STANDARD_NORMAL) > 0.01

    def test_unknown_operand_is_rejected(self):
        with pytest.raises(DomainError):
            ks_distance("bogus", STANDARD_NORMAL)

    def test_sample_distance_on_plugin_quantiles(self):
        n = 1000
        xs = scipy.special.ndtri((np.arange(1, n + 1) - 0.5) / n)
        assert ks_distance_sample(xs, STANDARD_NORMAL) <= 6e-4

    def test_empty_sample_is_rejected(self):
        with pytest.raises(DomainError):
            ks_distance_sample(np.array([]), STANDARD_NORMAL)
