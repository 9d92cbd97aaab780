"""Monte Carlo simulation tests: accounting identities, common random
numbers, thread invariance, and the sweep layout."""

import math

import pytest

import relaygame as rg
from relaygame.simulate import StrategyKind, StrategySpec


def spec_of(name, kind, model, bits=1):
    return StrategySpec(name=name, kind=kind, model=model, fixed_bits=bits)


@pytest.fixture(scope="module")
def mono_grid():
    """Single-level grid: every symbol quantizes to the same SNR."""
    return rg.SnrGrid(levels1=(2.0,), levels2=(2.0,))


class TestStrategySpec:
    def test_rejects_separator_names_and_bad_kinds(self, model_power):
        with pytest.raises(ValueError):
            spec_of("a,b", StrategyKind.FIXED_RATE, model_power)
        with pytest.raises(ValueError):
            spec_of("", StrategyKind.FIXED_RATE, model_power)
        with pytest.raises(ValueError):
            StrategySpec(name="x", kind="fixed", model=model_power)

    def test_fixed_bits_must_stay_in_the_action_range(self, model_power):
        with pytest.raises(ValueError):
            spec_of("x", StrategyKind.FIXED_RATE, model_power, bits=0)
        with pytest.raises(ValueError):
            spec_of("x", StrategyKind.FIXED_RATE, model_power, bits=10)
        spec_of("x", StrategyKind.FIXED_RATE, model_power, bits=9)


class TestRunSimulation:
    def test_equilibrium_kinds_require_a_policy_on_the_run_grid(
        self, model_power, sv_grid, eq_power
    ):
        spec = spec_of("eq", StrategyKind.EXTREMAL_LARGEST, model_power)
        params = rg.ChannelParams(mean_gain1=3.0, mean_gain2=3.0)
        with pytest.raises(ValueError):
            rg.run_simulation(spec, params, sv_grid, 100, seed=1)
        other = rg.SnrGrid(levels1=(1.0, 2.0), levels2=(1.0, 2.0))
        pol = rg.solve_extremal(model_power, other).largest
        with pytest.raises(ValueError):
            rg.run_simulation(spec, params, sv_grid, 100, seed=1, policy=pol)
        with pytest.raises(ValueError):
            rg.run_simulation(
                spec, params, sv_grid, 0, seed=1, policy=eq_power.largest
            )

    def test_fixed_rate_accounting_is_exact(self, model_power, mono_grid):
        spec = spec_of("fx", StrategyKind.FIXED_RATE, model_power, bits=1)
        params = rg.ChannelParams()
        rep = rg.run_simulation(spec, params, mono_grid, 5000, seed=3)
        assert rep.bits_per_symbol == 2.0
        assert rep.broadcast_rate == 1.0
        assert rep.total_bits_sent == 10_000
        assert rep.ber == rep.total_bit_errors / rep.total_bits_sent

    def test_closed_form_error_statistics_on_a_single_level(self, model_power, mono_grid):
        # every symbol sends 1 bit per user at gamma = 2, so the analytic
        # error count is 2 * n * p with p = 0.2 * exp(-3)
        spec = spec_of("fx", StrategyKind.FIXED_RATE, model_power, bits=1)
        params = rg.ChannelParams()
        n = 5000
        rep = rg.run_simulation(spec, params, mono_grid, n, seed=3)
        p = 0.2 * math.exp(-3.0)
        assert rep.expected_bit_errors == pytest.approx(2 * n * p, rel=1e-11)
        assert rep.error_variance == pytest.approx(2 * n * p * (1 - p), rel=1e-11)
        assert abs(rep.total_bit_errors - rep.expected_bit_errors) <= 3 * math.sqrt(
            rep.error_variance
        )

    def test_costs_on_a_single_level_match_the_cost_function(
        self, model_power, mono_grid
    ):
        spec = spec_of("fx", StrategyKind.FIXED_RATE, model_power, bits=1)
        rep = rg.run_simulation(spec, rg.ChannelParams(), mono_grid, 4000, seed=5)
        expected = rg.cost_total(model_power, 2.0, 1, 1)
        assert rep.avg_cost1 == pytest.approx(expected, rel=1e-11)
        assert rep.avg_cost2 == pytest.approx(expected, rel=1e-11)

    def test_thread_count_never_changes_results(self, model_power, sv_grid, eq_power):
        spec = spec_of("eq", StrategyKind.EXTREMAL_SMALLEST, model_power)
        params = rg.ChannelParams(mean_gain1=3.0, mean_gain2=3.0)
        kwargs = dict(policy=eq_power.smallest, avg_snr_db=1.5)
        a = rg.run_simulation(spec, params, sv_grid, 7500, 11, threads=1, **kwargs)
        b = rg.run_simulation(spec, params, sv_grid, 7500, 11, threads=4, **kwargs)
        assert a == b

    def test_repeat_runs_are_identical(self, model_power, sv_grid):
        spec = spec_of("am", StrategyKind.SINGLE_AGENT_AM, model_power)
        params = rg.ChannelParams(mean_gain1=2.0, mean_gain2=2.0)
        a = rg.run_simulation(spec, params, sv_grid, 6000, seed=21)
        b = rg.run_simulation(spec, params, sv_grid, 6000, seed=21)
        assert a == b

    def test_pathwise_cost_dominance_under_shared_fading(
        self, model_power, sv_grid, eq_power
    ):
        # identical channel draws for both extremal policies: the smallest
        # equilibrium must cost no more on every aggregate
        params = rg.ChannelParams(mean_gain1=3.0, mean_gain2=3.0)
        shared = (123, 0xFAD)
        reports = {}
        for label, kind, pol in (
            ("small", StrategyKind.EXTREMAL_SMALLEST, eq_power.smallest),
            ("large", StrategyKind.EXTREMAL_LARGEST, eq_power.largest),
        ):
            reports[label] = rg.run_simulation(
                spec_of(label, kind, model_power),
                params,
                sv_grid,
                8000,
                seed=77,
                policy=pol,
                fading_entropy=shared,
            )
        assert reports["small"].avg_cost1 <= reports["large"].avg_cost1
        assert reports["small"].avg_cost2 <= reports["large"].avg_cost2
        assert reports["small"].bits_per_symbol <= reports["large"].bits_per_symbol

    def test_report_consistency_guards(self):
        kwargs = dict(
            strategy="x",
            avg_snr_db=0.0,
            ber=0.5,
            bits_per_symbol=1.0,
            broadcast_rate=0.5,
            avg_cost1=1.0,
            avg_cost2=1.0,
            symbols=10,
            total_bits_sent=10,
            total_bit_errors=5,
            expected_bit_errors=5.0,
            error_variance=2.0,
        )
        rg.SimulationReport(**kwargs)
        with pytest.raises(ValueError):
            rg.SimulationReport(**{**kwargs, "ber": 0.4})
        with pytest.raises(ValueError):
            rg.SimulationReport(**{**kwargs, "broadcast_rate": 1.5})
        with pytest.raises(ValueError):
            rg.SimulationReport(**{**kwargs, "symbols": 0})


class TestRunSweep:
    def test_rows_come_back_strategy_major(self, model_power):
        specs = [
            spec_of("fx", StrategyKind.FIXED_RATE, model_power),
            spec_of("am", StrategyKind.SINGLE_AGENT_AM, model_power),
        ]
        reports = rg.run_sweep(
            specs, rg.ChannelParams(), 30, [0.0, 3.0], 2500, seed=13,
            calibration_samples=10_000,
        )
        assert [(r.strategy, r.avg_snr_db) for r in reports] == [
            ("fx", 0.0),
            ("fx", 3.0),
            ("am", 0.0),
            ("am", 3.0),
        ]

    def test_strategies_share_channel_draws_but_not_error_draws(self, model_power):
        # identical fixed-rate twins: same bits everywhere (common fading),
        # independently sampled errors
        specs = [
            spec_of("fx-a", StrategyKind.FIXED_RATE, model_power),
            spec_of("fx-b", StrategyKind.FIXED_RATE, model_power),
        ]
        reports = rg.run_sweep(
            specs, rg.ChannelParams(), 25, [3.0], 5000, seed=13,
            calibration_samples=10_000,
        )
        a, b = reports
        assert a.total_bits_sent == b.total_bits_sent
        assert a.expected_bit_errors == b.expected_bit_errors
        assert a.total_bit_errors != b.total_bit_errors

    def test_equilibrium_strategies_get_solved_policies(self, model_power):
        specs = [
            spec_of("lo", StrategyKind.EXTREMAL_SMALLEST, model_power),
            spec_of("hi", StrategyKind.EXTREMAL_LARGEST, model_power),
        ]
        lo, hi = rg.run_sweep(
            specs, rg.ChannelParams(), 25, [4.0], 5000, seed=3,
            calibration_samples=10_000,
        )
        assert lo.bits_per_symbol <= hi.bits_per_symbol
        assert lo.avg_cost1 <= hi.avg_cost1
        assert lo.avg_cost2 <= hi.avg_cost2

    def test_input_validation(self, model_power):
        fx = spec_of("fx", StrategyKind.FIXED_RATE, model_power)
        with pytest.raises(ValueError):
            rg.run_sweep([], rg.ChannelParams(), 25, [0.0], 100, 1)
        with pytest.raises(ValueError):
            rg.run_sweep([fx], rg.ChannelParams(), 25, [], 100, 1)
        with pytest.raises(ValueError):
            rg.run_sweep([fx], rg.ChannelParams(), 25, [3.0, 1.0], 100, 1)
        with pytest.raises(ValueError):
            rg.run_sweep([fx, fx], rg.ChannelParams(), 25, [0.0], 100, 1)
