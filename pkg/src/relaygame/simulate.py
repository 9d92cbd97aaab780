"""Monte Carlo evaluation of transmission policies over symbol durations.

Each symbol duration: draw fading, compute the end-to-end SNR pair, quantize
onto the run grid, look up the joint action for the strategy under test,
then account bits, relay broadcasts, per-bit errors, and incurred costs.
Per-bit errors are sampled from the exponential BER bound evaluated at the
quantized SNR level (one binomial draw per user-symbol), and costs are also
charged at the quantized level, so the equilibrium cost dominance holds
pathwise, not just in expectation.

Determinism: the symbol budget is split into fixed-size chunks; every chunk
owns RNG streams derived from explicit integer entropy tuples.  Fading
entropy does not include the strategy, so all strategies at one sweep point
see identical channel draws (common random numbers); error-sampling entropy
does include it.  Chunk results merge in chunk order, so thread counts can
never change output bytes.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import (
    ChannelParams,
    _effective_snr_arrays,
    _quantize_indices,
    average_snr_calibration,
    calibrate_with_grid,
)
from .core import CostModel, Policy, SnrGrid, cost_total, single_agent_best
from .solver import ExtremalEquilibria, solve_extremal

__all__ = [
    "StrategyKind",
    "StrategySpec",
    "SimulationReport",
    "run_simulation",
    "run_sweep",
]

CHUNK_SYMBOLS = 2500
_TAG_FADING = 0xFAD
_TAG_ERROR = 0xE88
_TAG_CALIBRATION = 0xCA1


class StrategyKind(enum.Enum):
    EXTREMAL_LARGEST = "largest"
    EXTREMAL_SMALLEST = "smallest"
    SINGLE_AGENT_AM = "single_agent"
    FIXED_RATE = "fixed"


@dataclass(frozen=True)
class StrategySpec:
    """One policy under test.

    The cost model drives the policy for the first three kinds; FIXED_RATE
    ignores it for action selection but still uses it for cost accounting so
    strategies are comparable on one cost definition.
    """

    name: str
    kind: StrategyKind
    model: CostModel
    fixed_bits: int = 1

    def __post_init__(self) -> None:
        if not self.name or any(c in self.name for c in ",\n\r"):
            raise ValueError(f"strategy name must be nonempty without commas: {self.name!r}")
        if not isinstance(self.kind, StrategyKind):
            raise ValueError(f"kind must be a StrategyKind, got {self.kind!r}")
        if self.kind is StrategyKind.FIXED_RATE:
            if not (isinstance(self.fixed_bits, int) and 1 <= self.fixed_bits <= self.model.a_max):
                raise ValueError(
                    f"fixed_bits must be in [1, {self.model.a_max}], got {self.fixed_bits!r}"
                )


@dataclass(frozen=True)
class SimulationReport:
    """Aggregates of one strategy over one simulated run.

    expected_bit_errors / error_variance carry the analytic mean and variance
    of the sampled bit-error count on the identical draw sequence, enabling
    binomial consistency checks without re-simulation.
    """

    strategy: str
    avg_snr_db: float
    ber: float
    bits_per_symbol: float
    broadcast_rate: float
    avg_cost1: float
    avg_cost2: float
    symbols: int
    total_bits_sent: int
    total_bit_errors: int
    expected_bit_errors: float
    error_variance: float

    def __post_init__(self) -> None:
        if self.symbols < 1:
            raise ValueError("symbols must be >= 1")
        if abs(self.ber - self.total_bit_errors / max(self.total_bits_sent, 1)) > 1e-15:
            raise ValueError("ber must equal total_bit_errors / max(total_bits_sent, 1)")
        if not (0.0 <= self.broadcast_rate <= 1.0):
            raise ValueError("broadcast_rate must lie in [0, 1]")


def _bit_error_prob_table(a_max: int, levels: tuple[float, ...]) -> np.ndarray:
    """Per-bit error probability lookup (n_levels, a_max+1): the exponential
    BER bound min(0.2*exp(-1.5*gamma/(2^a - 1)), 0.5), 0 for silence."""
    tab = np.zeros((len(levels), a_max + 1), dtype=np.float64)
    for i, g in enumerate(levels):
        for a in range(1, a_max + 1):
            tab[i, a] = min(0.2 * math.exp(-1.5 * g / (2.0**a - 1.0)), 0.5)
    return tab


def _cost_tables(model: CostModel, grid: SnrGrid) -> tuple[np.ndarray, np.ndarray]:
    """cost_total lookups: tab1[i1, a1, a2] for user 1, tab2[i2, a2, a1]."""
    n_a = model.a_max + 1

    def build(levels: tuple[float, ...]) -> np.ndarray:
        tab = np.empty((len(levels), n_a, n_a), dtype=np.float64)
        for i, g in enumerate(levels):
            for a_own in range(n_a):
                for a_other in range(n_a):
                    tab[i, a_own, a_other] = cost_total(model, g, a_own, a_other)
        return tab

    return build(grid.levels1), build(grid.levels2)


def _single_agent_tables(model: CostModel, grid: SnrGrid) -> tuple[np.ndarray, np.ndarray]:
    t1 = np.array([single_agent_best(model, g) for g in grid.levels1], dtype=np.int64)
    t2 = np.array([single_agent_best(model, g) for g in grid.levels2], dtype=np.int64)
    return t1, t2


def _chunk_bounds(symbols: int) -> list[tuple[int, int]]:
    return [
        (lo, min(lo + CHUNK_SYMBOLS, symbols)) for lo in range(0, symbols, CHUNK_SYMBOLS)
    ]


def _rng(entropy: tuple[int, ...]) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def run_simulation(
    spec: StrategySpec,
    params: ChannelParams,
    grid: SnrGrid,
    symbols: int,
    seed: int,
    policy: Policy | None = None,
    avg_snr_db: float = 0.0,
    threads: int = 1,
    fading_entropy: tuple[int, ...] | None = None,
    error_entropy: tuple[int, ...] | None = None,
) -> SimulationReport:
    """Simulate one strategy for `symbols` symbol durations.

    Equilibrium kinds require the pre-solved `policy` on exactly `grid`.
    `fading_entropy` / `error_entropy` override the default per-seed streams;
    a sweep passes shared fading entropy to all strategies at one point.
    """
    if symbols < 1:
        raise ValueError("symbols must be >= 1")
    if spec.kind in (StrategyKind.EXTREMAL_LARGEST, StrategyKind.EXTREMAL_SMALLEST):
        if policy is None:
            raise ValueError(
                f"strategy {spec.name!r} needs a pre-solved equilibrium policy"
            )
        if policy.grid != grid:
            raise ValueError("pre-solved policy grid does not match the run grid")
    if fading_entropy is None:
        fading_entropy = (int(seed), _TAG_FADING)
    if error_entropy is None:
        error_entropy = (int(seed), _TAG_ERROR)

    ber_tab1 = _bit_error_prob_table(spec.model.a_max, grid.levels1)
    ber_tab2 = _bit_error_prob_table(spec.model.a_max, grid.levels2)
    cost_tab1, cost_tab2 = _cost_tables(spec.model, grid)
    if spec.kind is StrategyKind.SINGLE_AGENT_AM:
        sa_tab1, sa_tab2 = _single_agent_tables(spec.model, grid)

    lv1 = np.asarray(grid.levels1)
    lv2 = np.asarray(grid.levels2)

    def run_chunk(c: int, lo: int, hi: int) -> dict[str, float]:
        n = hi - lo
        rng_f = _rng(fading_entropy + (c,))
        raw = rng_f.exponential(1.0, size=(2, n))
        g1 = params.mean_gain1 * raw[0]
        g2 = params.mean_gain2 * raw[1]
        gamma1, gamma2 = _effective_snr_arrays(params, g1, g2)
        i1 = _quantize_indices(grid.levels1, gamma1)
        i2 = _quantize_indices(grid.levels2, gamma2)

        if spec.kind is StrategyKind.EXTREMAL_LARGEST or spec.kind is StrategyKind.EXTREMAL_SMALLEST:
            a1 = policy.actions1[i1, i2]
            a2 = policy.actions2[i1, i2]
        elif spec.kind is StrategyKind.SINGLE_AGENT_AM:
            a1 = sa_tab1[i1]
            a2 = sa_tab2[i2]
        else:
            a1 = np.full(n, spec.fixed_bits, dtype=np.int64)
            a2 = np.full(n, spec.fixed_bits, dtype=np.int64)

        p1 = ber_tab1[i1, a1]
        p2 = ber_tab2[i2, a2]
        rng_e = _rng(error_entropy + (c,))
        e1 = rng_e.binomial(a1, p1)
        e2 = rng_e.binomial(a2, p2)

        return {
            "bits": int(a1.sum() + a2.sum()),
            "errors": int(e1.sum() + e2.sum()),
            "broadcasts": int(np.count_nonzero(a1 + a2)),
            "cost1": float(cost_tab1[i1, a1, a2].sum()),
            "cost2": float(cost_tab2[i2, a2, a1].sum()),
            "expected": float((a1 * p1).sum() + (a2 * p2).sum()),
            "variance": float((a1 * p1 * (1.0 - p1)).sum() + (a2 * p2 * (1.0 - p2)).sum()),
        }

    bounds = _chunk_bounds(symbols)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda t: run_chunk(t[0], *t[1]), enumerate(bounds)))
    else:
        results = [run_chunk(c, lo, hi) for c, (lo, hi) in enumerate(bounds)]

    # merge in chunk order regardless of completion order
    bits = errors = broadcasts = 0
    cost1 = cost2 = expected = variance = 0.0
    for r in results:
        bits += r["bits"]
        errors += r["errors"]
        broadcasts += r["broadcasts"]
        cost1 += r["cost1"]
        cost2 += r["cost2"]
        expected += r["expected"]
        variance += r["variance"]

    return SimulationReport(
        strategy=spec.name,
        avg_snr_db=float(avg_snr_db),
        ber=errors / max(bits, 1),
        bits_per_symbol=bits / symbols,
        broadcast_rate=broadcasts / symbols,
        avg_cost1=cost1 / symbols,
        avg_cost2=cost2 / symbols,
        symbols=symbols,
        total_bits_sent=bits,
        total_bit_errors=errors,
        expected_bit_errors=expected,
        error_variance=variance,
    )


def run_sweep(
    specs: list[StrategySpec],
    params: ChannelParams,
    grid_spec: SnrGrid | int,
    avg_snr_db_list: list[float],
    symbols: int,
    seed: int,
    threads: int = 1,
    calibration_samples: int = 20_000,
) -> list[SimulationReport]:
    """Evaluate every strategy at every target average SNR.

    `grid_spec` is either a fixed SnrGrid used as-is at every point, or an
    integer level count: each point then gets its own grid spanning the
    empirical SNR range of that point's calibration sample.  Per point, the
    channel is calibrated once, extremal policies are solved once per
    distinct cost model, and all strategies see identical fading draws.
    Rows come back strategy-major (configured order), then by ascending
    target SNR.
    """
    if not specs:
        raise ValueError("specs must be nonempty")
    if not avg_snr_db_list:
        raise ValueError("avg_snr_db_list must be nonempty")
    if any(b <= a for a, b in zip(avg_snr_db_list, avg_snr_db_list[1:])):
        raise ValueError("avg_snr_db_list must be strictly increasing")
    names = [s.name for s in specs]
    if len(set(names)) != len(names):
        raise ValueError("strategy names must be unique")

    by_strategy: list[list[SimulationReport]] = [[] for _ in specs]
    for point_idx, db in enumerate(avg_snr_db_list):
        cal_entropy = (int(seed), point_idx, _TAG_CALIBRATION)
        if isinstance(grid_spec, SnrGrid):
            cal_params = average_snr_calibration(params, db, calibration_samples, cal_entropy)
            run_grid = grid_spec
        else:
            cal_params, run_grid = calibrate_with_grid(
                params, db, calibration_samples, cal_entropy, n_levels=int(grid_spec)
            )

        equilibria: dict[CostModel, ExtremalEquilibria] = {}
        for spec in specs:
            if spec.kind in (StrategyKind.EXTREMAL_LARGEST, StrategyKind.EXTREMAL_SMALLEST):
                if spec.model not in equilibria:
                    equilibria[spec.model] = solve_extremal(spec.model, run_grid)

        for spec_idx, spec in enumerate(specs):
            pol = None
            if spec.kind is StrategyKind.EXTREMAL_LARGEST:
                pol = equilibria[spec.model].largest
            elif spec.kind is StrategyKind.EXTREMAL_SMALLEST:
                pol = equilibria[spec.model].smallest
            report = run_simulation(
                spec,
                cal_params,
                run_grid,
                symbols,
                seed,
                policy=pol,
                avg_snr_db=db,
                threads=threads,
                fading_entropy=(int(seed), point_idx, _TAG_FADING),
                error_entropy=(int(seed), point_idx, _TAG_ERROR, spec_idx),
            )
            by_strategy[spec_idx].append(report)

    return [report for rows in by_strategy for report in rows]
