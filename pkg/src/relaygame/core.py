"""Cost model and lattice primitives for a two-player adaptive-modulation game.

Two terminal users exchange data through an amplify-and-forward relay that
network-codes the two flows.  In each symbol duration, user i's scheduler
picks an action ``a_i`` in ``{0, ..., a_max}``: transmit a 2^a_i-QAM symbol
(a_i bits), or stay silent (a_i = 0).  The relay broadcasts the superposition
whenever at least one user transmits, so the slower user wastes the relay
slot it does not fill.  Each scheduler's cost trades its own transmission
error rate against the spectral efficiency lost at the relay:

    cost(gamma, a_own, a_other)
        = weight * error_cost(gamma, a_own) + (a_other + 1) / (a_own + 1)

The cross-difference of this cost in the joint action is always
``1/(a_own+1) - 1/(a_own+2) >= 0`` (the error term cancels), so the game is
supermodular: the set of pure Nash equilibria is a nonempty complete lattice
with a largest and a smallest element.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "Action",
    "ActionProfile",
    "SnrVector",
    "SnrGrid",
    "ErrorVariant",
    "CostModel",
    "Policy",
    "cost_error",
    "cost_total",
    "single_agent_best",
    "submodularity_margin",
    "lattice_join",
    "lattice_meet",
    "error_cost_table",
]

Action = int


class ActionProfile(NamedTuple):
    """Joint action (a1, a2) of the two schedulers."""

    a1: Action
    a2: Action


class SnrVector(NamedTuple):
    """Effective end-to-end SNR pair (linear ratio, not dB)."""

    gamma1: float
    gamma2: float


class ErrorVariant(enum.Enum):
    """Shape of the per-symbol error cost term."""

    BER_BOUND = "ber_bound"
    POWER_PROXY = "power_proxy"


def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not math.isfinite(gamma) or gamma <= 0.0:
        raise ValueError(f"gamma must be a finite positive ratio, got {gamma!r}")
    return gamma


def _check_action(a: int, a_max: int, name: str = "action") -> int:
    if not isinstance(a, (int, np.integer)):
        raise ValueError(f"{name} must be an integer, got {a!r}")
    if not 0 <= a <= a_max:
        raise ValueError(f"{name} must be in [0, {a_max}], got {a}")
    return int(a)


@dataclass(frozen=True)
class CostModel:
    """Weighted error/spectral-efficiency cost parameterization.

    Parameters
    ----------
    weight : float
        Positive weight on the error term.
    variant : ErrorVariant
        BER_BOUND uses 0.2*exp(-1.5*gamma/(2^a - 1)) (an upper bound on the
        2^a-QAM bit error rate over an AWGN-equivalent link).  POWER_PROXY
        uses -ln(5*ber_constraint)*(2^a - 1)/(1.5*gamma), the transmit-power
        proxy needed to hold the bit error rate at `ber_constraint`.
    ber_constraint : float
        Target bit error rate for POWER_PROXY, in (0, 0.2].
    a_max : int
        Largest constellation exponent (2^a_max-QAM).
    """

    weight: float
    variant: ErrorVariant
    ber_constraint: float = 1e-3
    a_max: int = 9

    def __post_init__(self) -> None:
        if not (isinstance(self.weight, (int, float)) and self.weight > 0):
            raise ValueError(f"weight must be > 0, got {self.weight!r}")
        if not isinstance(self.variant, ErrorVariant):
            raise ValueError(f"variant must be an ErrorVariant, got {self.variant!r}")
        if not (0.0 < self.ber_constraint <= 0.2):
            # -ln(5 * ber_constraint) must be >= 0
            raise ValueError(
                f"ber_constraint must be in (0, 0.2], got {self.ber_constraint!r}"
            )
        if not (isinstance(self.a_max, int) and self.a_max >= 1):
            raise ValueError(f"a_max must be an integer >= 1, got {self.a_max!r}")
        object.__setattr__(self, "weight", float(self.weight))
        object.__setattr__(self, "ber_constraint", float(self.ber_constraint))


def _check_levels(levels, name: str) -> tuple[float, ...]:
    out = tuple(float(x) for x in levels)
    if not out:
        raise ValueError(f"{name} must be nonempty")
    if any(not math.isfinite(x) or x <= 0 for x in out):
        raise ValueError(f"{name} entries must be finite and > 0")
    if any(b <= a for a, b in zip(out, out[1:])):
        raise ValueError(f"{name} must be strictly increasing")
    return out


@dataclass(frozen=True)
class SnrGrid:
    """Cartesian product of two finite, ascending SNR level lists (ratios)."""

    levels1: tuple[float, ...]
    levels2: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels1", _check_levels(self.levels1, "levels1"))
        object.__setattr__(self, "levels2", _check_levels(self.levels2, "levels2"))

    @property
    def n1(self) -> int:
        return len(self.levels1)

    @property
    def n2(self) -> int:
        return len(self.levels2)

    def point(self, i1: int, i2: int) -> SnrVector:
        return SnrVector(self.levels1[i1], self.levels2[i2])


class Policy:
    """Total map from grid point index (i1, i2) to a joint action profile."""

    __slots__ = ("grid", "actions1", "actions2")

    def __init__(self, grid: SnrGrid, actions1: np.ndarray, actions2: np.ndarray):
        a1 = np.asarray(actions1, dtype=np.int64)
        a2 = np.asarray(actions2, dtype=np.int64)
        shape = (grid.n1, grid.n2)
        if a1.shape != shape or a2.shape != shape:
            raise ValueError(
                f"action tables must have shape {shape}, got {a1.shape} and {a2.shape}"
            )
        if (a1 < 0).any() or (a2 < 0).any():
            raise ValueError("action tables must be nonnegative")
        a1 = a1.copy()
        a2 = a2.copy()
        a1.setflags(write=False)
        a2.setflags(write=False)
        self.grid = grid
        self.actions1 = a1
        self.actions2 = a2

    def profile_at(self, i1: int, i2: int) -> ActionProfile:
        return ActionProfile(int(self.actions1[i1, i2]), int(self.actions2[i1, i2]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Policy):
            return NotImplemented
        return (
            self.grid == other.grid
            and np.array_equal(self.actions1, other.actions1)
            and np.array_equal(self.actions2, other.actions2)
        )

    __hash__ = None  # mutable-array container semantics: unhashable

    def __repr__(self) -> str:
        return f"Policy(grid={self.grid.n1}x{self.grid.n2})"


def cost_error(model: CostModel, gamma: float, a: Action) -> float:
    """Error cost of transmitting 2^a-QAM at effective SNR `gamma`.

    Silence (a = 0) costs exactly 0 in both variants: no transmission incurs
    no error loss, and the BER_BOUND expression tends to 0 there anyway.
    """
    gamma = _check_gamma(gamma)
    a = _check_action(a, model.a_max)
    if a == 0:
        return 0.0
    if model.variant is ErrorVariant.BER_BOUND:
        return 0.2 * math.exp(-1.5 * gamma / (2.0**a - 1.0))
    return -math.log(5.0 * model.ber_constraint) * (2.0**a - 1.0) / (1.5 * gamma)


def cost_total(
    model: CostModel, gamma_own: float, a_own: Action, a_other: Action
) -> float:
    """Full per-symbol cost: weighted error term plus relay-slot share.

    The spectral part 1/(a_own+1) + a_other/(a_own+1) = (a_other+1)/(a_own+1)
    charges the scheduler for underusing the relay slot relative to its peer.
    """
    gamma_own = _check_gamma(gamma_own)
    a_own = _check_action(a_own, model.a_max, "a_own")
    a_other = _check_action(a_other, model.a_max, "a_other")
    return model.weight * cost_error(model, gamma_own, a_own) + (a_other + 1.0) / (
        a_own + 1.0
    )


def single_agent_best(model: CostModel, gamma: float) -> Action:
    """Cost-minimizing action ignoring the peer (the classical adaptive-
    modulation rule): argmin over a of weight*error(gamma, a) + 1/(a+1).

    Ties break toward the LARGEST minimizer, matching the maximal
    best-response convention.
    """
    gamma = _check_gamma(gamma)
    best_a = 0
    best_c = math.inf
    for a in range(model.a_max + 1):
        c = model.weight * cost_error(model, gamma, a) + 1.0 / (a + 1.0)
        if c <= best_c:
            best_c = c
            best_a = a
    return best_a


def submodularity_margin(
    model: CostModel, gamma: float, a_own: Action, a_other: Action
) -> float:
    """Cross-difference of cost_total in the joint action at fixed gamma:

        c(a_own+1, a_other) + c(a_own, a_other+1)
            - c(a_own+1, a_other+1) - c(a_own, a_other)

    Nonnegative for every input; analytically the error and own-slot terms
    cancel and the margin equals 1/(a_own+1) - 1/(a_own+2), independent of
    gamma and a_other.
    """
    gamma = _check_gamma(gamma)
    a_own = _check_action(a_own, model.a_max - 1, "a_own")
    a_other = _check_action(a_other, model.a_max - 1, "a_other")
    return (
        cost_total(model, gamma, a_own + 1, a_other)
        + cost_total(model, gamma, a_own, a_other + 1)
        - cost_total(model, gamma, a_own + 1, a_other + 1)
        - cost_total(model, gamma, a_own, a_other)
    )


def lattice_join(p: ActionProfile, q: ActionProfile) -> ActionProfile:
    """Componentwise maximum of two joint actions."""
    return ActionProfile(max(p[0], q[0]), max(p[1], q[1]))


def lattice_meet(p: ActionProfile, q: ActionProfile) -> ActionProfile:
    """Componentwise minimum of two joint actions."""
    return ActionProfile(min(p[0], q[0]), min(p[1], q[1]))


def error_cost_table(model: CostModel, levels) -> np.ndarray:
    """cost_error tabulated over a level list: shape (n_levels, a_max + 1).

    Column 0 is exactly 0 (silence).  Built from the scalar cost_error so
    table-driven code paths are bit-identical to scalar evaluation; the
    table is level-grid sized, never symbol sized, so the scalar loop is
    cheap.
    """
    tab = np.empty((len(levels), model.a_max + 1), dtype=np.float64)
    for i, g in enumerate(levels):
        for a in range(model.a_max + 1):
            tab[i, a] = cost_error(model, g, a)
    return tab
