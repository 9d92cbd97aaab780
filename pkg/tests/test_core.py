"""Cost model and lattice primitive tests.

Numeric oracles are hand-derived decimal literals, not re-evaluations of the
implementation's own expressions.
"""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import relaygame as rg

VARIANTS = (rg.ErrorVariant.POWER_PROXY, rg.ErrorVariant.BER_BOUND)


def make_model(variant, weight=1.0):
    return rg.CostModel(weight=weight, variant=variant)


class TestCostError:
    def test_silence_is_free_in_both_variants(self):
        for variant in VARIANTS:
            m = make_model(variant)
            assert rg.cost_error(m, 0.01, 0) == 0.0
            assert rg.cost_error(m, 1e6, 0) == 0.0

    def test_ber_bound_value(self):
        # 0.2 * exp(-1.5 * 7 / (2^2 - 1)) = 0.2 * exp(-3.5)
        m = make_model(rg.ErrorVariant.BER_BOUND)
        assert rg.cost_error(m, 7.0, 2) == pytest.approx(0.0060394766844637, rel=1e-15)
        assert rg.cost_error(m, 1.0, 1) == pytest.approx(0.044626032029685965, rel=1e-15)

    def test_power_proxy_value(self):
        # -ln(5 * 1e-3) * (2^2 - 1) / (1.5 * 7) = ln(200) * 3 / 10.5
        m = make_model(rg.ErrorVariant.POWER_PROXY)
        assert rg.cost_error(m, 7.0, 2) == pytest.approx(1.5138049618708673, rel=1e-15)
        assert rg.cost_error(m, 1.0, 1) == pytest.approx(3.532211577698691, rel=1e-15)

    def test_ber_bound_decreasing_in_gamma_increasing_in_action(self):
        m = make_model(rg.ErrorVariant.BER_BOUND)
        assert rg.cost_error(m, 2.0, 3) < rg.cost_error(m, 1.0, 3)
        assert rg.cost_error(m, 2.0, 3) < rg.cost_error(m, 2.0, 4)

    def test_rejects_bad_gamma_and_action(self):
        m = make_model(rg.ErrorVariant.POWER_PROXY)
        for gamma in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(ValueError):
                rg.cost_error(m, gamma, 1)
        with pytest.raises(ValueError):
            rg.cost_error(m, 1.0, 10)
        with pytest.raises(ValueError):
            rg.cost_error(m, 1.0, -1)


class TestCostTotal:
    def test_frozen_values(self):
        mp = rg.CostModel(weight=0.05, variant=rg.ErrorVariant.POWER_PROXY)
        mb = rg.CostModel(weight=50.0, variant=rg.ErrorVariant.BER_BOUND)
        assert rg.cost_total(mp, 1.0, 1, 1) == pytest.approx(1.1766105788849346, rel=1e-15)
        assert rg.cost_total(mp, 1.0, 1, 2) == pytest.approx(1.6766105788849346, rel=1e-15)
        assert rg.cost_total(mb, 1.0, 1, 1) == pytest.approx(3.231301601484298, rel=1e-15)

    def test_silent_scheduler_pays_only_the_slot_share(self):
        # a_own = 0: cost is exactly (a_other + 1) / 1
        for variant in VARIANTS:
            m = make_model(variant, weight=3.0)
            for a_other in range(10):
                assert rg.cost_total(m, 0.7, 0, a_other) == float(a_other + 1)

    def test_all_silent_profile_costs_one(self):
        for variant in VARIANTS:
            assert rg.cost_total(make_model(variant), 5.0, 0, 0) == 1.0


class TestMargin:
    @given(
        gamma=st.floats(min_value=1e-3, max_value=1e3),
        a_own=st.integers(min_value=0, max_value=8),
        a_other=st.integers(min_value=0, max_value=8),
        weight=st.floats(min_value=1e-3, max_value=1e2),
        variant=st.sampled_from(VARIANTS),
    )
    def test_margin_matches_closed_form(self, gamma, a_own, a_other, weight, variant):
        # error terms cancel in the cross-difference; only the slot share is left
        m = rg.CostModel(weight=weight, variant=variant)
        margin = rg.submodularity_margin(m, gamma, a_own, a_other)
        expected = 1.0 / (a_own + 1.0) - 1.0 / (a_own + 2.0)
        assert margin >= -1e-12
        assert abs(margin - expected) <= 1e-12

    def test_margin_rejects_top_action(self):
        m = make_model(rg.ErrorVariant.POWER_PROXY)
        with pytest.raises(ValueError):
            rg.submodularity_margin(m, 1.0, 9, 0)


class TestSingleAgentBest:
    def test_frozen_samples(self):
        mp = rg.CostModel(weight=0.05, variant=rg.ErrorVariant.POWER_PROXY)
        mb = rg.CostModel(weight=50.0, variant=rg.ErrorVariant.BER_BOUND)
        assert [rg.single_agent_best(mp, g) for g in (0.1, 1.0, 7.0, 10.0)] == [0, 1, 2, 3]
        assert [rg.single_agent_best(mb, g) for g in (0.1, 1.0, 7.0, 10.0)] == [0, 0, 1, 2]

    @given(
        gamma=st.floats(min_value=1e-3, max_value=1e3),
        weight=st.floats(min_value=1e-3, max_value=1e2),
        variant=st.sampled_from(VARIANTS),
    )
    def test_is_largest_minimizer(self, gamma, weight, variant):
        m = rg.CostModel(weight=weight, variant=variant)
        costs = [
            m.weight * rg.cost_error(m, gamma, a) + 1.0 / (a + 1.0)
            for a in range(m.a_max + 1)
        ]
        best = min(costs)
        assert rg.single_agent_best(m, gamma) == max(
            a for a, c in enumerate(costs) if c == best
        )

    def test_nondecreasing_in_gamma(self, model_power):
        gammas = [0.05 * k for k in range(1, 400)]
        actions = [rg.single_agent_best(model_power, g) for g in gammas]
        assert all(b >= a for a, b in zip(actions, actions[1:]))


class TestValidation:
    def test_cost_model_guards(self):
        with pytest.raises(ValueError):
            rg.CostModel(weight=0.0, variant=rg.ErrorVariant.BER_BOUND)
        with pytest.raises(ValueError):
            rg.CostModel(weight=1.0, variant="ber_bound")
        with pytest.raises(ValueError):
            rg.CostModel(weight=1.0, variant=rg.ErrorVariant.POWER_PROXY, ber_constraint=0.5)
        with pytest.raises(ValueError):
            rg.CostModel(weight=1.0, variant=rg.ErrorVariant.POWER_PROXY, ber_constraint=0.0)
        with pytest.raises(ValueError):
            rg.CostModel(weight=1.0, variant=rg.ErrorVariant.POWER_PROXY, a_max=0)

    def test_snr_grid_guards(self):
        with pytest.raises(ValueError):
            rg.SnrGrid(levels1=(), levels2=(1.0,))
        with pytest.raises(ValueError):
            rg.SnrGrid(levels1=(0.0, 1.0), levels2=(1.0,))
        with pytest.raises(ValueError):
            rg.SnrGrid(levels1=(2.0, 1.0), levels2=(1.0,))
        with pytest.raises(ValueError):
            rg.SnrGrid(levels1=(1.0, 1.0), levels2=(1.0,))

    def test_policy_guards(self):
        grid = rg.SnrGrid(levels1=(1.0, 2.0), levels2=(1.0,))
        with pytest.raises(ValueError):
            rg.Policy(grid, np.zeros((2, 2), dtype=int), np.zeros((2, 2), dtype=int))
        with pytest.raises(ValueError):
            rg.Policy(grid, -np.ones((2, 1), dtype=int), np.zeros((2, 1), dtype=int))

    def test_policy_tables_are_frozen_copies(self):
        grid = rg.SnrGrid(levels1=(1.0, 2.0), levels2=(1.0,))
        src = np.zeros((2, 1), dtype=int)
        pol = rg.Policy(grid, src, src)
        src[0, 0] = 5
        assert pol.profile_at(0, 0) == (0, 0)
        with pytest.raises(ValueError):
            pol.actions1[0, 0] = 1


class TestLattice:
    @given(
        p=st.tuples(st.integers(0, 9), st.integers(0, 9)),
        q=st.tuples(st.integers(0, 9), st.integers(0, 9)),
    )
    def test_join_meet_bounds(self, p, q):
        p = rg.ActionProfile(*p)
        q = rg.ActionProfile(*q)
        j = rg.lattice_join(p, q)
        m = rg.lattice_meet(p, q)
        assert j == rg.lattice_join(q, p) and m == rg.lattice_meet(q, p)
        for r in (p, q):
            assert m.a1 <= r.a1 <= j.a1 and m.a2 <= r.a2 <= j.a2
        assert j.a1 + m.a1 == p.a1 + q.a1 and j.a2 + m.a2 == p.a2 + q.a2


class TestErrorCostTable:
    def test_matches_scalar_evaluation_exactly(self, model_ber, sv_grid):
        tab = rg.error_cost_table(model_ber, sv_grid.levels1)
        assert tab.shape == (11, 10)
        assert (tab[:, 0] == 0.0).all()
        for i, g in enumerate(sv_grid.levels1):
            for a in range(10):
                assert tab[i, a] == rg.cost_error(model_ber, g, a)
