"""Shared fixtures: the reference verification grid, the two shipped cost
models, their solved equilibria, and the one full benchmark sweep that the
acceptance gate reuses across criteria."""

import time
from pathlib import Path

import pytest
import yaml
from hypothesis import settings

import relaygame as rg

REPO_ROOT = Path(__file__).resolve().parent.parent

# deterministic, timing-tolerant property testing
settings.register_profile("suite", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("suite")

SV_LEVELS = (0.1,) + tuple(float(k) for k in range(1, 11))


@pytest.fixture(scope="session")
def sv_grid():
    """11x11 verification grid, levels {0.1, 1, 2, ..., 10} on both axes."""
    return rg.SnrGrid(levels1=SV_LEVELS, levels2=SV_LEVELS)


@pytest.fixture(scope="session")
def model_power():
    return rg.CostModel(weight=0.05, variant=rg.ErrorVariant.POWER_PROXY)


@pytest.fixture(scope="session")
def model_ber():
    return rg.CostModel(weight=50.0, variant=rg.ErrorVariant.BER_BOUND)


@pytest.fixture(scope="session")
def eq_power(model_power, sv_grid):
    return rg.solve_extremal(model_power, sv_grid)


@pytest.fixture(scope="session")
def eq_ber(model_ber, sv_grid):
    return rg.solve_extremal(model_ber, sv_grid)


@pytest.fixture(scope="session")
def default_config():
    return rg.load_config(str(REPO_ROOT / "configs" / "default.yaml"))


@pytest.fixture(scope="session")
def benchmark_sweep(default_config):
    """Full shipped-config sweep, run once per session.

    Returns
    -------
    (reports, elapsed) : (list of SimulationReport, float)
        Strategy-major rows exactly as the sweep command emits them, plus
        the single-threaded wall time of the run.
    """
    cfg = default_config
    t0 = time.perf_counter()
    reports = rg.run_sweep(
        list(cfg.strategies),
        cfg.channel,
        cfg.auto_grid_levels,
        list(cfg.sweep_db),
        cfg.symbols,
        cfg.seed,
        calibration_samples=cfg.calibration_samples,
    )
    return reports, time.perf_counter() - t0


@pytest.fixture
def small_config():
    """Factory writing a fast 3-strategy, 2-point run config to a directory."""

    def make(dirpath, **overrides):
        data = {
            "a_max": 4,
            "seed": 7,
            "symbols": 2500,
            "out_dir": str(Path(dirpath) / "out"),
            "calibration_samples": 10000,
            "channel": {},
            "grid": {"levels": [0.5, 1.0, 2.0, 4.0, 8.0]},
            "cost_models": {"pw": {"variant": "power_proxy", "weight": 0.05}},
            "active_model": "pw",
            "strategies": [
                {"name": "eq-small", "kind": "smallest", "model": "pw"},
                {"name": "am", "kind": "single_agent", "model": "pw"},
                {"name": "fx", "kind": "fixed", "model": "pw", "bits": 1},
            ],
            "sweep": {"avg_snr_db": [0.0, 3.0], "auto_grid_levels": 40},
        }
        data.update(overrides)
        path = Path(dirpath) / "run.yaml"
        path.write_text(yaml.safe_dump(data), encoding="utf-8")
        return str(path)

    return make
