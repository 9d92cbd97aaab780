"""Extremal pure Nash equilibria of the adaptive-modulation game.

The game is supermodular (see core.submodularity_margin), so iterating the
joint maximal best response from the top of the action lattice converges
monotonically downward to the largest pure equilibrium, and dually from the
bottom to the smallest one.  Both components update simultaneously from the
previous iterate.

The accelerated solver exploits two structural facts: on equal SNR grids the
equilibria are symmetric under swapping the two axes, and when the error
cost is submodular in (snr, action) - true for the POWER_PROXY variant - the
equilibria are componentwise nondecreasing in the SNR pair, which makes
solutions at neighboring grid points valid warm starts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import (
    ActionProfile,
    CostModel,
    ErrorVariant,
    Policy,
    SnrGrid,
    SnrVector,
    _check_gamma,
    cost_total,
    error_cost_table,
)

__all__ = [
    "SolveDirection",
    "BestResponseTrace",
    "ExtremalEquilibria",
    "AccelStats",
    "best_response_max",
    "best_response_min",
    "cournot_solve",
    "enumerate_psne",
    "online_learning_step",
    "solve_extremal",
    "solve_accelerated",
]


class SolveDirection(enum.Enum):
    FROM_TOP = "from_top"
    FROM_BOTTOM = "from_bottom"


@dataclass(frozen=True)
class BestResponseTrace:
    """Iterates of the joint best-response map at one grid point.

    profiles[k] is the k-th iterate; converged_at is the first k with
    profiles[k+1] == profiles[k] (the confirming application is included).
    FROM_TOP traces are componentwise nonincreasing, FROM_BOTTOM traces
    nondecreasing.
    """

    snr: SnrVector
    profiles: tuple[ActionProfile, ...]
    converged_at: int

    def __post_init__(self) -> None:
        if not (0 <= self.converged_at < len(self.profiles) - 1):
            raise ValueError("converged_at must index a repeated final profile")
        if self.profiles[self.converged_at] != self.profiles[self.converged_at + 1]:
            raise ValueError("profiles[converged_at] must equal its successor")


@dataclass(frozen=True)
class ExtremalEquilibria:
    """Largest and smallest pure equilibria over one grid."""

    largest: Policy
    smallest: Policy

    def __post_init__(self) -> None:
        if self.largest.grid != self.smallest.grid:
            raise ValueError("policies must share one grid")
        if (self.smallest.actions1 > self.largest.actions1).any() or (
            self.smallest.actions2 > self.largest.actions2
        ).any():
            raise ValueError("smallest equilibrium must be <= largest componentwise")

    @property
    def grid(self) -> "SnrGrid":
        return self.largest.grid


@dataclass(frozen=True)
class AccelStats:
    """Best-response evaluation counts: one unit = one single-player
    best-response computation (a joint application costs 2)."""

    plain_evaluations: int
    accelerated_evaluations: int
    mirrored_points: int
    warm_seeded_points: int


def best_response_max(model: CostModel, gamma_own: float, a_other: int) -> int:
    """Largest cost-minimizing action against a fixed opponent action."""
    gamma_own = _check_gamma(gamma_own)
    best_a = 0
    best_c = float("inf")
    for a in range(model.a_max + 1):
        c = cost_total(model, gamma_own, a, a_other)
        if c <= best_c:
            best_c = c
            best_a = a
    return best_a


def best_response_min(model: CostModel, gamma_own: float, a_other: int) -> int:
    """Smallest cost-minimizing action against a fixed opponent action."""
    gamma_own = _check_gamma(gamma_own)
    best_a = 0
    best_c = float("inf")
    for a in range(model.a_max + 1):
        c = cost_total(model, gamma_own, a, a_other)
        if c < best_c:
            best_c = c
            best_a = a
    return best_a


def _best_response_tables(model: CostModel, levels) -> tuple[np.ndarray, np.ndarray]:
    """(max_table, min_table), each (n_levels, a_max+1) int arrays mapping
    (level index, opponent action) -> best response.

    Built from the same float costs as the scalar scans; numpy argmin returns
    the first minimum, so the max table argmins over the reversed own-action
    axis to pick the largest exact minimizer.
    """
    n_a = model.a_max + 1
    ce = error_cost_table(model, levels)  # (n, n_a)
    own = np.arange(n_a, dtype=np.float64)
    other = np.arange(n_a, dtype=np.float64)
    rel = (other[None, :] + 1.0) / (own[:, None] + 1.0)  # (own, other)
    cost = model.weight * ce[:, :, None] + rel[None, :, :]  # (n, own, other)
    br_min = np.argmin(cost, axis=1).astype(np.int64)
    br_max = (n_a - 1) - np.argmin(cost[:, ::-1, :], axis=1).astype(np.int64)
    return br_max, br_min


def _iterate_joint(
    t1: np.ndarray, t2: np.ndarray, a1: np.ndarray, a2: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    # simultaneous update: both components computed from the previous iterate
    n1, n2 = a1.shape
    rows = np.arange(n1)[:, None]
    cols = np.arange(n2)[None, :]
    return t1[rows, a2], t2[cols, a1]


def cournot_solve(
    model: CostModel,
    grid: SnrGrid,
    direction: SolveDirection,
    record_traces: bool = True,
) -> tuple[Policy, dict[tuple[int, int], BestResponseTrace]]:
    """Iterate the joint extremal best response at every grid point.

    FROM_TOP starts both components at a_max and uses maximal best responses,
    yielding the largest equilibrium; FROM_BOTTOM dually yields the smallest.
    Per-point iteration counts never exceed 2*a_max + 1 joint applications; a
    hard cap of 4*(a_max+1) guards against cost-model implementation bugs.
    """
    br_max1, br_min1 = _best_response_tables(model, grid.levels1)
    br_max2, br_min2 = _best_response_tables(model, grid.levels2)
    if direction is SolveDirection.FROM_TOP:
        t1, t2 = br_max1, br_max2
        start = model.a_max
    else:
        t1, t2 = br_min1, br_min2
        start = 0

    shape = (grid.n1, grid.n2)
    a1 = np.full(shape, start, dtype=np.int64)
    a2 = np.full(shape, start, dtype=np.int64)
    history = [(a1, a2)]
    cap = 4 * (model.a_max + 1)
    for _ in range(cap):
        n1_, n2_ = _iterate_joint(t1, t2, a1, a2)
        history.append((n1_, n2_))
        if np.array_equal(n1_, a1) and np.array_equal(n2_, a2):
            break
        a1, a2 = n1_, n2_
    else:
        raise RuntimeError(
            "joint best-response iteration exceeded its cap; "
            "the cost model violates the convergence assumptions"
        )

    policy = Policy(grid, history[-1][0], history[-1][1])
    traces: dict[tuple[int, int], BestResponseTrace] = {}
    if record_traces:
        stack1 = np.stack([h[0] for h in history])  # (k, n1, n2)
        stack2 = np.stack([h[1] for h in history])
        same = (stack1[1:] == stack1[:-1]) & (stack2[1:] == stack2[:-1])
        first_stable = np.argmax(same, axis=0)  # first k with iterate k+1 == k
        for i1 in range(grid.n1):
            for i2 in range(grid.n2):
                k = int(first_stable[i1, i2])
                profiles = tuple(
                    ActionProfile(int(stack1[t, i1, i2]), int(stack2[t, i1, i2]))
                    for t in range(k + 2)
                )
                traces[(i1, i2)] = BestResponseTrace(
                    snr=grid.point(i1, i2), profiles=profiles, converged_at=k
                )
    return policy, traces


def enumerate_psne(model: CostModel, snr: SnrVector) -> frozenset[ActionProfile]:
    """Brute-force scan of all (a_max+1)^2 profiles for Nash equilibria.

    A profile is an equilibrium when neither player can strictly reduce its
    own cost by a unilateral deviation; comparisons are exact on doubles.
    """
    n_a = model.a_max + 1
    c1 = np.empty((n_a, n_a))
    c2 = np.empty((n_a, n_a))
    for a1 in range(n_a):
        for a2 in range(n_a):
            c1[a1, a2] = cost_total(model, snr.gamma1, a1, a2)
            c2[a1, a2] = cost_total(model, snr.gamma2, a2, a1)
    eq1 = c1 == c1.min(axis=0, keepdims=True)
    eq2 = c2 == c2.min(axis=1, keepdims=True)
    out = frozenset(
        ActionProfile(int(a1), int(a2))
        for a1, a2 in zip(*np.nonzero(eq1 & eq2))
    )
    if not out:
        raise RuntimeError("equilibrium set cannot be empty in a supermodular game")
    return out


def online_learning_step(
    model: CostModel,
    snr: SnrVector,
    current: ActionProfile,
    direction: SolveDirection,
) -> ActionProfile:
    """One simultaneous joint best-response update from `current`.

    Repeated application from (a_max, a_max) or (0, 0) reproduces the
    cournot_solve trace at the same SNR point step for step; this is the
    per-symbol learning rule two schedulers can run by observing each
    other's previous action.
    """
    if direction is SolveDirection.FROM_TOP:
        br = best_response_max
    else:
        br = best_response_min
    return ActionProfile(
        br(model, snr.gamma1, current.a2), br(model, snr.gamma2, current.a1)
    )


def _trace_eval_count(traces: dict[tuple[int, int], BestResponseTrace]) -> int:
    # each joint application computes 2 single-player best responses;
    # the confirming application is included (len(profiles) - 1 applications)
    return sum(2 * (len(t.profiles) - 1) for t in traces.values())


def solve_extremal(
    model: CostModel, grid: SnrGrid, record_traces: bool = False
) -> ExtremalEquilibria:
    """Plain solve of both extremal equilibria."""
    largest, _ = cournot_solve(model, grid, SolveDirection.FROM_TOP, record_traces)
    smallest, _ = cournot_solve(model, grid, SolveDirection.FROM_BOTTOM, record_traces)
    return ExtremalEquilibria(largest=largest, smallest=smallest)


def _solve_point_from_seed(
    t_own1: np.ndarray,
    t_own2: np.ndarray,
    i1: int,
    i2: int,
    seed: ActionProfile,
    cap: int,
) -> tuple[ActionProfile, int]:
    """Pointwise joint iteration from `seed`; returns (fixed point, jointapps)."""
    cur = seed
    for apps in range(1, cap + 1):
        nxt = ActionProfile(int(t_own1[i1, cur.a2]), int(t_own2[i2, cur.a1]))
        if nxt == cur:
            return cur, apps
        cur = nxt
    raise RuntimeError(
        "joint best-response iteration exceeded its cap; "
        "the cost model violates the convergence assumptions"
    )


def solve_accelerated(
    model: CostModel, grid: SnrGrid, use_warm_start: bool | None = None
) -> tuple[ExtremalEquilibria, AccelStats]:
    """Structure-exploiting solve, bit-identical to the plain solve.

    Symmetry shortcut (equal level lists, any variant): once the point
    (i2, i1) is solved, (i1, i2) is its component swap.  Monotone warm
    starts (POWER_PROXY only): processing points in descending grid order,
    the FROM_TOP iteration at a point starts from the componentwise meet of
    the already-solved dominating neighbors' solutions instead of the lattice
    top; FROM_BOTTOM dually ascends from the join of dominated neighbors.
    Returns the equilibria plus evaluation counts against the plain solve.
    """
    if use_warm_start is None:
        use_warm_start = model.variant is ErrorVariant.POWER_PROXY
    elif use_warm_start and model.variant is not ErrorVariant.POWER_PROXY:
        raise ValueError(
            "warm starts require the error cost to be submodular in "
            "(snr, action); the BER_BOUND variant is not certified for that"
        )
    symmetric = grid.levels1 == grid.levels2

    br_max1, br_min1 = _best_response_tables(model, grid.levels1)
    br_max2, br_min2 = _best_response_tables(model, grid.levels2)
    cap = 4 * (model.a_max + 1)
    n1, n2 = grid.n1, grid.n2

    evals = 0
    mirrored = 0
    warm_seeded = 0

    def run_direction(from_top: bool) -> tuple[np.ndarray, np.ndarray]:
        nonlocal evals, mirrored, warm_seeded
        t1 = br_max1 if from_top else br_min1
        t2 = br_max2 if from_top else br_min2
        extreme = ActionProfile(model.a_max, model.a_max) if from_top else ActionProfile(0, 0)
        a1 = np.empty((n1, n2), dtype=np.int64)
        a2 = np.empty((n1, n2), dtype=np.int64)
        solved = np.zeros((n1, n2), dtype=bool)
        idx1 = range(n1 - 1, -1, -1) if from_top else range(n1)
        for i1 in idx1:
            idx2 = range(n2 - 1, -1, -1) if from_top else range(n2)
            for i2 in idx2:
                if symmetric and solved[i2, i1]:
                    a1[i1, i2] = a2[i2, i1]
                    a2[i1, i2] = a1[i2, i1]
                    solved[i1, i2] = True
                    mirrored += 1
                    continue
                seed = extreme
                if use_warm_start:
                    # adjacent neighbors already solved in this traversal
                    # dominate (FROM_TOP) or are dominated by (FROM_BOTTOM)
                    # the current point; their solutions bound the answer
                    step = 1 if from_top else -1
                    neighbors = []
                    for j1, j2 in ((i1 + step, i2), (i1, i2 + step)):
                        if 0 <= j1 < n1 and 0 <= j2 < n2 and solved[j1, j2]:
                            neighbors.append(
                                ActionProfile(int(a1[j1, j2]), int(a2[j1, j2]))
                            )
                    if neighbors:
                        combined = neighbors[0]
                        for nb in neighbors[1:]:
                            combined = (
                                ActionProfile(
                                    min(combined.a1, nb.a1), min(combined.a2, nb.a2)
                                )
                                if from_top
                                else ActionProfile(
                                    max(combined.a1, nb.a1), max(combined.a2, nb.a2)
                                )
                            )
                        if combined != extreme:
                            warm_seeded += 1
                        seed = combined
                fixed, apps = _solve_point_from_seed(t1, t2, i1, i2, seed, cap)
                evals += 2 * apps
                a1[i1, i2] = fixed.a1
                a2[i1, i2] = fixed.a2
                solved[i1, i2] = True
        return a1, a2

    top1, top2 = run_direction(True)
    bot1, bot2 = run_direction(False)
    eq = ExtremalEquilibria(
        largest=Policy(grid, top1, top2), smallest=Policy(grid, bot1, bot2)
    )

    _, traces_top = cournot_solve(model, grid, SolveDirection.FROM_TOP, True)
    _, traces_bot = cournot_solve(model, grid, SolveDirection.FROM_BOTTOM, True)
    plain = _trace_eval_count(traces_top) + _trace_eval_count(traces_bot)
    stats = AccelStats(
        plain_evaluations=plain,
        accelerated_evaluations=evals,
        mirrored_points=mirrored,
        warm_seeded_points=warm_seeded,
    )
    return eq, stats
