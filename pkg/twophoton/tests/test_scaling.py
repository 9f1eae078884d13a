"""Tests for eta, the quartic-well solver, collapse and exponent fits."""

import logging
import math

import numpy as np
import pytest
from pydantic import ValidationError

from twophoton.errors import CollapseError, DomainError, TwoPhotonError, UnresolvedPointError
from twophoton.exact.cutoff import converge_cutoff
from twophoton.model.params import ModelParams
from twophoton.scaling.collapse import (
    CollapseCurve,
    build_collapse_set_async,
    collapse_spread,
    coupling_ceiling,
    couplings_for_etas,
    make_curve,
)
from twophoton.scaling.exponents import fit_exponent, fit_power_law, raw_singular
from twophoton.scaling.finite_size import (
    Quantity,
    RegularPart,
    analytic_finite_size,
    regular_part,
    singular_part,
)
from twophoton.scaling.universal import QuarticWellSpec, solve_quartic_well, universal_functions
from twophoton.scaling.variable import g_for_eta, scaling_variable


@pytest.fixture
def base():
    return ModelParams(omega=1.0, omega1=0.5, n_atoms=100)


class TestScalingVariable:
    """Tests for eta and its inverse."""

    def test_eta_values(self, base):
        """Should be omega1^2/2 N^(2/3) at g = 0 and zero at g_c."""
        assert scaling_variable(base) == pytest.approx(0.125 * 100 ** (2 / 3))
        assert scaling_variable(base.with_g(base.g_c)) == pytest.approx(0.0, abs=1e-12)
        assert scaling_variable(base.with_g(0.4)) < 0

    def test_inverse(self, base):
        """Should recover g from eta on both sides of g_c."""
        for eta in (-1.5, 0.0, 1.0):
            g = g_for_eta(base, eta)
            assert scaling_variable(base.with_g(g)) == pytest.approx(eta, abs=1e-12)

    def test_eta_above_its_maximum(self, base):
        """Should refuse eta larger than its g = 0 value."""
        with pytest.raises(DomainError):
            g_for_eta(base, 10.0)

    def test_couplings_for_etas_stop_at_ceiling(self, base):
        """Should drop eta values past the coupling ceiling instead of clipping them."""
        small = base.with_n_atoms(5)
        ceiling = coupling_ceiling(small, 0.5)

        couplings = couplings_for_etas(small, 5, [-50.0, -0.3, -0.1, 0.0, 5.0], fraction=0.5)

        assert ceiling == pytest.approx(small.g_c + 0.5 * (0.5 - small.g_c))
        assert couplings == pytest.approx(sorted([g_for_eta(small, -0.1), small.g_c]))
        assert max(couplings) < ceiling

    def test_ceiling_needs_a_critical_window(self):
        """Should refuse a ceiling when g_c is not below g_collapse."""
        with pytest.raises(DomainError) as exc_info:
            coupling_ceiling(ModelParams(omega=1.0, omega1=1.2, n_atoms=10))
        assert exc_info.value.condition == "collapse"
        with pytest.raises(ValueError):
            coupling_ceiling(ModelParams(omega=1.0, omega1=0.5, n_atoms=10), 1.0)


class TestQuarticWell:
    """Tests for the universal-function solver."""

    @pytest.mark.parametrize("eta", [0.5, 1.0, 2.0])
    def test_harmonic_limit(self, base, eta):
        """Should reproduce the harmonic oscillator at k = 0."""
        spec = QuarticWellSpec.from_params(base, quartic_coeff=0.0)
        w = math.sqrt(2 * eta)

        point = solve_quartic_well(spec, eta)

        assert point.resolved
        assert point.e0 == pytest.approx(w / 2, rel=1e-6)
        assert point.x2 == pytest.approx(1 / (2 * w), rel=1e-6)
        assert point.p2 == pytest.approx(w / 2, rel=1e-6)

    def test_virial_identity(self, base):
        """Should satisfy P = 2 eta X - 4k <x^4> + wall term on resolved points."""
        for spec, etas in (
            (QuarticWellSpec.from_params(base), [0.0, 1.0, 3.0]),
            (QuarticWellSpec.from_params(base, quartic_coeff=-0.1), [-1.0, 1.0, 3.0]),
        ):
            k = spec.quartic_coeff
            for point in universal_functions(spec, etas):
                assert point.resolved
                assert point.p2 == pytest.approx(point.virial_rhs(k), abs=1e-5)

    def test_wall_term_of_a_free_box(self, base):
        """Should give P = pi^2/(4L^2) entirely from the walls when the well is flat."""
        spec = QuarticWellSpec(quartic_coeff=0.0, tail_mass_tol=0.5)
        half_width = spec.box_half_width(0.0)

        point = solve_quartic_well(spec, 0.0)

        assert point.p2 == pytest.approx(math.pi**2 / (4 * half_width**2), rel=1e-6)
        assert point.wall_pressure == pytest.approx(point.p2, rel=1e-5)

    def test_critical_point_is_resolved(self, base):
        """Should resolve eta = 0 in a box of one quartic length."""
        spec = QuarticWellSpec.from_params(base)
        half_width = spec.quartic_length

        point = solve_quartic_well(spec, 0.0)

        assert half_width == pytest.approx(2.0)
        assert point.resolved
        assert point.box_half_width == pytest.approx(half_width)
        assert point.tail_mass <= spec.tail_mass_tol
        # the negative quartic lowers E0 below the free box, by at most k L^4
        free_box = math.pi**2 / (8 * half_width**2)
        assert free_box - spec.quartic_coeff * half_width**4 < point.e0 < free_box
        assert point.x2 > 0
        assert point.p2 > 0

    def test_box_is_continuous_across_the_floor(self, base):
        """Should keep the quartic-length box just above eta_floor and grow E0 with eta."""
        spec = QuarticWellSpec.from_params(base)
        below, above = universal_functions(spec, [0.04, 0.06])

        assert below.box_half_width == above.box_half_width == pytest.approx(2.0)
        assert below.resolved and above.resolved
        assert 0 < above.e0 - below.e0 < 0.02

    def test_confining_well_resolves_negative_eta(self, base):
        """Should resolve the double well when the quartic term confines."""
        spec = QuarticWellSpec.from_params(base, quartic_coeff=-0.1)

        point = solve_quartic_well(spec, -2.0)

        assert point.resolved
        assert point.x2 > 0
        assert point.tail_mass <= spec.tail_mass_tol

    def test_inverted_well_is_unresolved(self, base):
        """Should flag eta < 0 with the metastable quartic as unresolved."""
        spec = QuarticWellSpec.from_params(base)

        with pytest.raises(UnresolvedPointError) as exc_info:
            solve_quartic_well(spec, -2.0)
        assert exc_info.value.eta == -2.0

        [point] = universal_functions(spec, [-2.0])
        assert not point.resolved
        assert math.isnan(point.e0)
        assert point.tail_mass > spec.tail_mass_tol

    def test_grid_floor(self, base):
        """Should refuse grids below 500 intervals."""
        with pytest.raises(ValidationError):
            QuarticWellSpec(quartic_coeff=0.0, grid_points=100)


class TestFiniteSize:
    """Tests for finite-N predictions and singular parts."""

    def test_exponents(self):
        """Should carry 4/3, 2/3, 4/3."""
        assert Quantity.ENERGY.exponent == pytest.approx(4 / 3)
        assert Quantity.JZ.exponent == pytest.approx(2 / 3)
        assert Quantity.JY2.exponent_label == "4/3"

    def test_singular_part_variants(self, base):
        """Should subtract the constant background by default and the short one on request."""
        params = base.with_g(0.2)
        n = 100
        value = -0.3

        constant = singular_part(Quantity.ENERGY, value, params)
        short = singular_part(Quantity.ENERGY, value, params, RegularPart.SHORT)

        expected = n ** (4 / 3) * (value + 0.25 + 0.5 / (2 * n) + 0.5 * 0.04 / (2 * n**2))
        assert constant == pytest.approx(expected)
        assert short == pytest.approx(n ** (4 / 3) * (value + 0.5 / (2 * n) + 0.5 / (2 * n**2)))
        assert singular_part("jz", -0.4, params) == pytest.approx(n ** (2 / 3) * (0.1 + 1 / (2 * n)))
        assert singular_part("jz", -0.4, params, zero_point=False) == pytest.approx(n ** (2 / 3) * 0.1)

    @pytest.mark.parametrize("quantity", list(Quantity))
    def test_regular_part_is_shared(self, base, quantity):
        """Should use one background for singular_part and raw_singular."""
        params = base.with_g(base.g_c)
        value = {Quantity.ENERGY: -0.251, Quantity.JZ: -0.48, Quantity.JY2: 0.002}[quantity]

        raw = raw_singular(quantity, value, params)

        assert raw == pytest.approx(value - regular_part(quantity, params))
        assert singular_part(quantity, value, params) == pytest.approx(100**quantity.exponent * raw)
        assert regular_part(Quantity.JY2, params) == 0.0
        assert regular_part(Quantity.JZ, params) == pytest.approx(-0.505)

    def test_polarized_jz(self, base):
        """Should read the decoupled <Jz>/N = -1/2 as the harmonic X, P with the zero point."""
        params = base.with_g(0.0)
        n = 100
        w = math.sqrt(2 * scaling_variable(params))
        harmonic = 0.5 / 2 * (1 / (2 * w)) + n ** (-2 / 3) * (w / 2) / (2 * 0.5)

        assert singular_part("jz", -0.5, params, zero_point=False) == 0.0
        assert singular_part("jz", -0.5, params) == pytest.approx(harmonic)
        assert harmonic == pytest.approx(n ** (2 / 3) / (2 * n))

    @pytest.mark.parametrize("n_atoms", [50, 100, 400])
    def test_analytic_energy_at_critical_point(self, n_atoms):
        """Should give E0(0) plus the O(N^-2/3) part of the constant background."""
        params = ModelParams(omega=1.0, omega1=0.5, n_atoms=n_atoms)
        params = params.with_g(params.g_c)
        point = solve_quartic_well(QuarticWellSpec.from_params(params), scaling_variable(params))

        prediction = analytic_finite_size(params, point)
        value = singular_part(Quantity.ENERGY, prediction.eg, params)

        remainder = 0.5 * params.g_c**2 / 2 * n_atoms ** (-2 / 3)
        assert value == pytest.approx(point.e0 + remainder, rel=1e-9)

    @pytest.mark.slow
    def test_critical_prediction_matches_ed(self, base):
        """Should predict E_g and <Jz>/N at g_c, N = 100 within 10% of ED."""
        params = base.with_g(base.g_c)
        point = solve_quartic_well(QuarticWellSpec.from_params(params), scaling_variable(params))

        prediction = analytic_finite_size(params, point)
        solution = converge_cutoff(params)

        assert solution.converged
        assert prediction.eg == pytest.approx(solution.ground_energy, rel=0.1)
        assert prediction.jz == pytest.approx(solution.jz_per_atom, rel=0.1)
        assert 0 < prediction.jy2 < 1e-2

    def test_prediction_matches_its_eta(self, base):
        """Should refuse points computed at a different eta."""
        spec = QuarticWellSpec.from_params(base, quartic_coeff=0.0)
        params = base.with_g(g_for_eta(base, 1.0))
        point = solve_quartic_well(spec, 1.0)

        prediction = analytic_finite_size(params, point)
        assert prediction.jy2 == pytest.approx(100 ** (-4 / 3) * point.p2 / (2 * 0.5))
        assert prediction.value(Quantity.ENERGY) == prediction.eg

        with pytest.raises(ValueError):
            analytic_finite_size(base.with_g(0.1), point)


class TestCollapse:
    """Tests for collapse curves and spread."""

    def test_curve_requires_increasing_eta(self):
        """Should refuse non-increasing eta within a curve."""
        with pytest.raises(ValidationError):
            CollapseCurve(n_atoms=5, quantity=Quantity.JZ, exponent_used="2/3", points=[(1.0, 0.1), (0.5, 0.2)])

    def test_make_curve_sorts(self):
        """Should sort points and drop repeated eta."""
        curve = make_curve(5, Quantity.JZ, [(1.0, 0.1), (0.0, 0.3), (1.0, 0.2)])

        np.testing.assert_array_equal(curve.etas, [0.0, 1.0])
        assert curve.exponent_used == "2/3"

    def test_identical_curves_have_zero_spread(self):
        """Should report zero spread for coinciding curves."""
        points = [(eta, eta**2) for eta in np.linspace(-2, 2, 9)]
        curves = [make_curve(n, Quantity.ENERGY, points) for n in (10, 20)]

        spread, bins = collapse_spread(curves, bins=11)

        assert spread == pytest.approx(0.0, abs=1e-15)
        assert len(bins) == 11

    def test_offset_curves(self):
        """Should measure the largest gap relative to the data range."""
        low = make_curve(10, Quantity.JZ, [(-1.0, 0.0), (1.0, 1.0)])
        high = make_curve(20, Quantity.JZ, [(-1.0, 0.1), (1.0, 1.1)])

        spread, _ = collapse_spread([low, high], window=(-1.0, 1.0), bins=5)

        assert spread == pytest.approx(0.1 / 1.1)

    def test_collapse_errors(self):
        """Should refuse single curves and non-overlapping ranges."""
        left = make_curve(10, Quantity.JZ, [(-2.0, 0.0), (-1.0, 1.0)])
        right = make_curve(20, Quantity.JZ, [(1.0, 0.0), (2.0, 1.0)])

        with pytest.raises(CollapseError):
            collapse_spread([left])
        with pytest.raises(CollapseError):
            collapse_spread([left, right])

    @pytest.mark.asyncio
    async def test_analytic_jy2_collapses(self):
        """Should collapse the analytic jy2 exactly, since it depends on eta alone."""
        base = ModelParams(omega=1.0, omega1=0.9, n_atoms=30)
        spec = QuarticWellSpec.from_params(base, quartic_coeff=0.0)

        results = await build_collapse_set_async(
            [30, 50],
            base,
            quantities=["jy2"],
            eta_grid=[1.5, 2.0, 2.5, 3.0],
            source="analytic",
            window=(1.5, 3.0),
            bins=7,
            spec=spec,
        )

        result = results[Quantity.JY2]
        assert [c.n_atoms for c in result.curves] == [30, 50]
        assert result.spread < 1e-6
        assert result.covered == pytest.approx((1.5, 3.0))
        assert not result.narrowed

    @pytest.mark.asyncio
    async def test_needs_two_sizes(self, base):
        """Should refuse a collapse over one size."""
        with pytest.raises(CollapseError):
            await build_collapse_set_async([10, 10], base, eta_grid=[0.0, 1.0])

    @pytest.mark.asyncio
    async def test_narrowed_window_is_reported(self, caplog):
        """Should report the eta range actually covered and warn when it is short of the window."""
        base = ModelParams(omega=1.0, omega1=0.9, n_atoms=30)
        spec = QuarticWellSpec.from_params(base, quartic_coeff=0.0)

        with caplog.at_level(logging.WARNING, logger="twophoton.scaling.collapse"):
            results = await build_collapse_set_async(
                [30, 50],
                base,
                quantities=["jy2"],
                eta_grid=[1.5, 2.5, 3.5, 4.5],
                source="analytic",
                window=(1.5, 4.5),
                bins=5,
                spec=spec,
            )

        result = results[Quantity.JY2]
        assert result.window == (1.5, 4.5)
        assert result.covered == pytest.approx((1.5, 3.5))
        assert result.narrowed
        assert "covers eta in [1.5, 3.5] only" in caplog.text

    @pytest.mark.asyncio
    async def test_ed_collapse_on_small_sizes(self, base):
        """Should build ED curves for every size and quantity over the full window."""
        results = await build_collapse_set_async(
            [4, 8, 16],
            base,
            eta_grid=np.linspace(0.0, 0.3, 7),
            window=(0.0, 0.3),
            bins=13,
            workers=2,
        )

        assert set(results) == set(Quantity)
        for result in results.values():
            assert [c.n_atoms for c in result.curves] == [4, 8, 16]
            assert all(len(c.points) == 7 for c in result.curves)
            assert result.covered == pytest.approx((0.0, 0.3))
            assert not result.narrowed
            assert 0 <= result.spread < math.inf

    @pytest.mark.asyncio
    async def test_ed_spread_shrinks_when_smallest_size_grows(self, base):
        """Should collapse better once the smallest size is raised, at a fixed window."""
        spreads = {}
        for sizes in ([4, 32], [16, 32]):
            results = await build_collapse_set_async(
                sizes,
                base,
                quantities=["energy"],
                eta_grid=np.linspace(0.0, 0.3, 7),
                window=(0.0, 0.3),
                bins=13,
                workers=2,
            )
            spreads[sizes[0]] = results[Quantity.ENERGY].spread

        assert spreads[16] < spreads[4]

    @pytest.mark.slow
    @pytest.mark.asyncio
    async def test_ed_collapse_gate(self, base):
        """Should collapse ED energy and jz for N = 5..100 below the coupling ceiling."""
        sizes = [5, 10, 30, 50, 100]
        results = await build_collapse_set_async(
            sizes, base, eta_grid=np.linspace(-2.0, 2.0, 41), window=(-2.0, 2.0)
        )

        # N = 5 reaches neither end of the window below the ceiling
        smallest = base.with_n_atoms(5)
        lowest = scaling_variable(smallest.with_g(coupling_ceiling(smallest)))
        for result in results.values():
            assert [c.n_atoms for c in result.curves] == sizes
            assert result.narrowed
            assert lowest - 1e-9 <= result.covered[0] < 0 < result.covered[1]
            assert math.isfinite(result.spread)
        assert results[Quantity.ENERGY].spread <= 0.1
        assert results[Quantity.JZ].spread <= 0.1


class TestExponents:
    """Tests for power-law and exponent fits."""

    def test_exact_power_law(self):
        """Should recover the slope of an exact power law."""
        sizes = [20, 40, 80, 160]
        fit = fit_power_law(sizes, [3.0 * n ** (-4 / 3) for n in sizes])

        assert fit.slope == pytest.approx(-4 / 3)
        assert fit.intercept == pytest.approx(math.log(3.0))
        assert fit.dropped == []

    def test_drops_non_positive_values(self):
        """Should drop non-positive values and require three survivors."""
        fit = fit_power_law([10, 20, 40, 80], [1.0, -0.5, 0.25, 0.125])
        assert fit.dropped == [20]
        assert fit.sizes == [10, 40, 80]

        with pytest.raises(TwoPhotonError):
            fit_power_law([10, 20, 40], [1.0, 0.0, 0.25])

    def test_raw_singular_jz(self, base):
        """Should add the zero-point term 1/(2N) for jz."""
        params = base.with_g(base.g_c)

        assert raw_singular(Quantity.JZ, -0.45, params) == pytest.approx(0.05 + 1 / 200)
        assert raw_singular(Quantity.JY2, 0.01, params) == pytest.approx(0.01)

    def test_fit_exponent_uses_measured_values(self, base):
        """Should fit precomputed values and recover a planted exponent."""
        params = base.with_g(base.g_c)
        sizes = [20, 40, 80, 160]
        measured = {n: {Quantity.JY2: 0.7 * n ** (-4 / 3)} for n in sizes}

        fit = fit_exponent(sizes, params, Quantity.JY2, measured=measured)

        assert fit.slope == pytest.approx(-4 / 3)
        assert set(fit.raw) == set(sizes)

    def test_fit_exponent_needs_g_c(self, base):
        """Should refuse couplings away from g_c."""
        with pytest.raises(DomainError) as exc_info:
            fit_exponent([20, 40, 80], base.with_g(0.2), "energy", measured={})
        assert exc_info.value.condition == "criticality"
