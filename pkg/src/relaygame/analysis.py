"""Structural property checks over solved equilibria.

Each check sweeps deterministically (ascending grid indices, then ascending
actions) and reports every violation, so re-running a check on the same
inputs reproduces the identical violation list:

- submodularity: the action cross-difference of the cost is nonnegative at
  every grid SNR and equals 1/(a+1) - 1/(a+2) up to float noise;
- pareto_order: the smallest equilibrium costs no more than the largest for
  both schedulers at every grid point;
- symmetry: on equal level lists, each player's policy is the other's under
  swapped coordinates;
- monotonicity: both extremal policies are componentwise nondecreasing along
  both grid axes (adjacent steps suffice; transitivity covers the rest);
- error_cost_submodularity: the (snr, action) cross-difference of the error
  cost alone is nonnegative over consecutive levels - the sufficient
  condition for monotone equilibria.  It holds for POWER_PROXY and fails for
  BER_BOUND, whose violations are the designed mechanism behind non-monotone
  equilibrium surfaces.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import CostModel, Policy, SnrGrid, cost_error, cost_total, submodularity_margin
from .solver import ExtremalEquilibria

__all__ = [
    "PropertyName",
    "PropertyReport",
    "check_submodularity",
    "check_pareto",
    "check_symmetry",
    "check_monotonicity",
    "check_error_cost_submodularity",
    "export_policy_surface",
    "MARGIN_TOLERANCE",
]

# float noise allowance on analytically-zero or analytically-equal margins
MARGIN_TOLERANCE = 1e-12


class PropertyName(enum.Enum):
    SUBMODULARITY = "submodularity"
    PARETO_ORDER = "pareto_order"
    SYMMETRY = "symmetry"
    MONOTONICITY = "monotonicity"
    ERROR_COST_SUBMODULARITY = "error_cost_submodularity"


@dataclass(frozen=True)
class PropertyReport:
    """Verdict of one structural check.

    `holds` is true exactly when `violations` is empty; `applicable` is
    false when the check's hypothesis is not met (e.g. symmetry on unequal
    level lists), in which case there are no violations by construction.
    """

    property: PropertyName
    holds: bool
    violations: tuple = ()
    applicable: bool = True

    def __post_init__(self) -> None:
        if self.holds != (len(self.violations) == 0):
            raise ValueError("holds must mirror an empty violation list")
        if not self.applicable and self.violations:
            raise ValueError("a not-applicable check cannot carry violations")


def check_submodularity(model: CostModel, grid: SnrGrid) -> PropertyReport:
    """Margin >= 0 and equal to 1/(a+1) - 1/(a+2) at every grid SNR and
    action pair; violations are (gamma, a_own, a_other, margin)."""
    violations = []
    levels = sorted(set(grid.levels1) | set(grid.levels2))
    for gamma in levels:
        for a_own in range(model.a_max):
            expected = 1.0 / (a_own + 1.0) - 1.0 / (a_own + 2.0)
            for a_other in range(model.a_max):
                m = submodularity_margin(model, gamma, a_own, a_other)
                if m < -MARGIN_TOLERANCE or abs(m - expected) > MARGIN_TOLERANCE:
                    violations.append((gamma, a_own, a_other, m))
    return PropertyReport(
        property=PropertyName.SUBMODULARITY,
        holds=not violations,
        violations=tuple(violations),
    )


def check_pareto(model: CostModel, eq: ExtremalEquilibria) -> PropertyReport:
    """Smallest-equilibrium cost <= largest-equilibrium cost for both
    schedulers at every grid point; violations are
    (i1, i2, scheduler, cost_smallest, cost_largest)."""
    grid = eq.largest.grid
    violations = []
    for i1 in range(grid.n1):
        for i2 in range(grid.n2):
            lo = eq.smallest.profile_at(i1, i2)
            hi = eq.largest.profile_at(i1, i2)
            g1, g2 = grid.levels1[i1], grid.levels2[i2]
            c1_lo = cost_total(model, g1, lo.a1, lo.a2)
            c1_hi = cost_total(model, g1, hi.a1, hi.a2)
            c2_lo = cost_total(model, g2, lo.a2, lo.a1)
            c2_hi = cost_total(model, g2, hi.a2, hi.a1)
            if c1_lo > c1_hi:
                violations.append((i1, i2, 1, c1_lo, c1_hi))
            if c2_lo > c2_hi:
                violations.append((i1, i2, 2, c2_lo, c2_hi))
    return PropertyReport(
        property=PropertyName.PARETO_ORDER,
        holds=not violations,
        violations=tuple(violations),
    )


def check_symmetry(eq: ExtremalEquilibria) -> PropertyReport:
    """theta_1(ga, gb) == theta_2(gb, ga) for both extremal policies; only
    applicable on equal level lists.  Violations are
    (policy_label, i1, i2, a_here, a_mirror)."""
    grid = eq.largest.grid
    if grid.levels1 != grid.levels2:
        return PropertyReport(
            property=PropertyName.SYMMETRY, holds=True, applicable=False
        )
    violations = []
    for label, pol in (("largest", eq.largest), ("smallest", eq.smallest)):
        for i1 in range(grid.n1):
            for i2 in range(grid.n2):
                a_here = int(pol.actions1[i1, i2])
                a_mirror = int(pol.actions2[i2, i1])
                if a_here != a_mirror:
                    violations.append((label, i1, i2, a_here, a_mirror))
    return PropertyReport(
        property=PropertyName.SYMMETRY,
        holds=not violations,
        violations=tuple(violations),
    )


def check_monotonicity(eq: ExtremalEquilibria) -> PropertyReport:
    """Both extremal policies componentwise nondecreasing along both axes;
    adjacent grid steps only (transitivity extends to all comparable pairs).
    Violations are (policy_label, from_point, to_point, profile_from,
    profile_to)."""
    grid = eq.largest.grid
    violations = []
    for label, pol in (("largest", eq.largest), ("smallest", eq.smallest)):
        for i1 in range(grid.n1):
            for i2 in range(grid.n2):
                here = pol.profile_at(i1, i2)
                for j1, j2 in ((i1 + 1, i2), (i1, i2 + 1)):
                    if j1 >= grid.n1 or j2 >= grid.n2:
                        continue
                    there = pol.profile_at(j1, j2)
                    if there.a1 < here.a1 or there.a2 < here.a2:
                        violations.append((label, (i1, i2), (j1, j2), here, there))
    return PropertyReport(
        property=PropertyName.MONOTONICITY,
        holds=not violations,
        violations=tuple(violations),
    )


def check_error_cost_submodularity(model: CostModel, grid: SnrGrid) -> PropertyReport:
    """Cross-difference of the error cost over consecutive levels:

        ce(g_hi, a) + ce(g_lo, a+1) - ce(g_lo, a) - ce(g_hi, a+1) >= 0

    Checking consecutive level pairs is complete: the condition says
    ce(g, a) - ce(g, a+1) is nondecreasing in g, and a sequence is
    nondecreasing iff every consecutive difference is.  Violations are
    (axis, g_lo, g_hi, a, cross_difference)."""
    violations = []
    for axis, levels in ((1, grid.levels1), (2, grid.levels2)):
        for g_lo, g_hi in zip(levels, levels[1:]):
            for a in range(model.a_max):
                cross = (
                    cost_error(model, g_hi, a)
                    + cost_error(model, g_lo, a + 1)
                    - cost_error(model, g_lo, a)
                    - cost_error(model, g_hi, a + 1)
                )
                if cross < -MARGIN_TOLERANCE:
                    violations.append((axis, g_lo, g_hi, a, cross))
    return PropertyReport(
        property=PropertyName.ERROR_COST_SUBMODULARITY,
        holds=not violations,
        violations=tuple(violations),
    )


def export_policy_surface(policy: Policy, which_component: int) -> list[tuple[float, float, int]]:
    """One (gamma1, gamma2, action) row per grid point, row-major ascending."""
    if which_component not in (1, 2):
        raise ValueError(f"which_component must be 1 or 2, got {which_component!r}")
    actions = policy.actions1 if which_component == 1 else policy.actions2
    grid = policy.grid
    return [
        (grid.levels1[i1], grid.levels2[i2], int(actions[i1, i2]))
        for i1 in range(grid.n1)
        for i2 in range(grid.n2)
    ]
