"""YAML run configuration with field-path validation diagnostics.

A config names the action space, the channel, an explicit SNR grid for the
solve/verify commands, the sweep (target average SNRs in dB, symbol budget,
per-run grid resolution), a table of named cost models, the strategy list,
and the seed/output defaults.  Every validation failure raises ConfigError
carrying the offending field path, e.g. ``cost_models.ber50.weight: must be
a number > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import yaml

from .channel import ChannelParams
from .core import CostModel, ErrorVariant, SnrGrid
from .simulate import StrategyKind, StrategySpec

__all__ = ["ConfigError", "RunConfig", "load_config", "parse_config"]


class ConfigError(ValueError):
    """Invalid configuration; message starts with the field path."""


@dataclass(frozen=True)
class RunConfig:
    a_max: int
    channel: ChannelParams
    grid: SnrGrid
    models: dict[str, CostModel]
    active_model: str
    strategies: tuple[StrategySpec, ...]
    sweep_db: tuple[float, ...]
    symbols: int
    auto_grid_levels: int
    calibration_samples: int
    seed: int
    out_dir: str


def _require(mapping, key, path):
    if not isinstance(mapping, dict):
        raise ConfigError(f"{path}: must be a mapping")
    if key not in mapping:
        raise ConfigError(f"{path}.{key}: missing required field")
    return mapping[key]


def _as_int(value, path, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{path}: must be >= {minimum}, got {value}")
    return value


def _as_number(value, path, positive=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: must be a number, got {value!r}")
    if positive and not value > 0:
        raise ConfigError(f"{path}: must be a number > 0, got {value!r}")
    return float(value)


def _as_str(value, path):
    if not isinstance(value, str) or not value:
        raise ConfigError(f"{path}: must be a nonempty string, got {value!r}")
    return value


def parse_config(data: dict, source: str = "config") -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError(f"{source}: top level must be a mapping")

    a_max = _as_int(_require(data, "a_max", source), f"{source}.a_max", minimum=1)
    seed = _as_int(_require(data, "seed", source), f"{source}.seed", minimum=0)
    symbols = _as_int(_require(data, "symbols", source), f"{source}.symbols", minimum=1)
    out_dir = _as_str(data.get("out_dir", "out"), f"{source}.out_dir")
    calibration_samples = _as_int(
        data.get("calibration_samples", 20_000),
        f"{source}.calibration_samples",
        minimum=10_000,
    )

    ch_raw = _require(data, "channel", source)
    if not isinstance(ch_raw, dict):
        raise ConfigError(f"{source}.channel: must be a mapping")
    ch_kwargs = {}
    for key in (
        "noise_relay",
        "noise_user1",
        "noise_user2",
        "power_user1",
        "power_user2",
        "power_relay",
        "mean_gain1",
        "mean_gain2",
    ):
        if key in ch_raw:
            ch_kwargs[key] = _as_number(ch_raw[key], f"{source}.channel.{key}", positive=True)
    unknown = set(ch_raw) - set(ch_kwargs)
    if unknown:
        raise ConfigError(f"{source}.channel.{sorted(unknown)[0]}: unknown field")
    channel = ChannelParams(**ch_kwargs)

    grid_raw = _require(data, "grid", source)
    levels_raw = _require(grid_raw, "levels", f"{source}.grid")
    if not isinstance(levels_raw, list) or not levels_raw:
        raise ConfigError(f"{source}.grid.levels: must be a nonempty list")
    levels = tuple(
        _as_number(v, f"{source}.grid.levels[{i}]", positive=True)
        for i, v in enumerate(levels_raw)
    )
    try:
        grid = SnrGrid(levels1=levels, levels2=levels)
    except ValueError as exc:
        raise ConfigError(f"{source}.grid.levels: {exc}") from exc

    models_raw = _require(data, "cost_models", source)
    if not isinstance(models_raw, dict) or not models_raw:
        raise ConfigError(f"{source}.cost_models: must be a nonempty mapping")
    models: dict[str, CostModel] = {}
    for name, spec in models_raw.items():
        path = f"{source}.cost_models.{name}"
        variant_raw = _as_str(_require(spec, "variant", path), f"{path}.variant")
        try:
            variant = ErrorVariant(variant_raw)
        except ValueError:
            choices = ", ".join(v.value for v in ErrorVariant)
            raise ConfigError(f"{path}.variant: must be one of {choices}") from None
        weight = _as_number(_require(spec, "weight", path), f"{path}.weight", positive=True)
        kwargs = {"weight": weight, "variant": variant, "a_max": a_max}
        if "ber_constraint" in spec:
            kwargs["ber_constraint"] = _as_number(
                spec["ber_constraint"], f"{path}.ber_constraint", positive=True
            )
        unknown = set(spec) - {"variant", "weight", "ber_constraint"}
        if unknown:
            raise ConfigError(f"{path}.{sorted(unknown)[0]}: unknown field")
        try:
            models[name] = CostModel(**kwargs)
        except ValueError as exc:
            raise ConfigError(f"{path}: {exc}") from exc

    active_model = _as_str(_require(data, "active_model", source), f"{source}.active_model")
    if active_model not in models:
        raise ConfigError(
            f"{source}.active_model: {active_model!r} is not a configured cost model"
        )

    strat_raw = _require(data, "strategies", source)
    if not isinstance(strat_raw, list) or not strat_raw:
        raise ConfigError(f"{source}.strategies: must be a nonempty list")
    strategies = []
    for i, item in enumerate(strat_raw):
        path = f"{source}.strategies[{i}]"
        name = _as_str(_require(item, "name", path), f"{path}.name")
        kind_raw = _as_str(_require(item, "kind", path), f"{path}.kind")
        try:
            kind = StrategyKind(kind_raw)
        except ValueError:
            choices = ", ".join(k.value for k in StrategyKind)
            raise ConfigError(f"{path}.kind: must be one of {choices}") from None
        model_name = _as_str(_require(item, "model", path), f"{path}.model")
        if model_name not in models:
            raise ConfigError(f"{path}.model: {model_name!r} is not a configured cost model")
        bits = _as_int(item.get("bits", 1), f"{path}.bits", minimum=1)
        unknown = set(item) - {"name", "kind", "model", "bits"}
        if unknown:
            raise ConfigError(f"{path}.{sorted(unknown)[0]}: unknown field")
        try:
            strategies.append(
                StrategySpec(name=name, kind=kind, model=models[model_name], fixed_bits=bits)
            )
        except ValueError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    names = [s.name for s in strategies]
    if len(set(names)) != len(names):
        raise ConfigError(f"{source}.strategies: names must be unique")

    sweep_raw = _require(data, "sweep", source)
    db_raw = _require(sweep_raw, "avg_snr_db", f"{source}.sweep")
    if not isinstance(db_raw, list) or not db_raw:
        raise ConfigError(f"{source}.sweep.avg_snr_db: must be a nonempty list")
    sweep_db = tuple(
        _as_number(v, f"{source}.sweep.avg_snr_db[{i}]") for i, v in enumerate(db_raw)
    )
    if any(b <= a for a, b in zip(sweep_db, sweep_db[1:])):
        raise ConfigError(f"{source}.sweep.avg_snr_db: must be strictly increasing")
    auto_grid_levels = _as_int(
        sweep_raw.get("auto_grid_levels", 100),
        f"{source}.sweep.auto_grid_levels",
        minimum=2,
    )
    unknown = set(sweep_raw) - {"avg_snr_db", "auto_grid_levels"}
    if unknown:
        raise ConfigError(f"{source}.sweep.{sorted(unknown)[0]}: unknown field")

    unknown = set(data) - {
        "a_max",
        "seed",
        "symbols",
        "out_dir",
        "calibration_samples",
        "channel",
        "grid",
        "cost_models",
        "active_model",
        "strategies",
        "sweep",
    }
    if unknown:
        raise ConfigError(f"{source}.{sorted(unknown)[0]}: unknown field")

    return RunConfig(
        a_max=a_max,
        channel=channel,
        grid=grid,
        models=models,
        active_model=active_model,
        strategies=tuple(strategies),
        sweep_db=sweep_db,
        symbols=symbols,
        auto_grid_levels=auto_grid_levels,
        calibration_samples=calibration_samples,
        seed=seed,
        out_dir=out_dir,
    )


def load_config(path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except FileNotFoundError:
        raise ConfigError(f"{path}: config file not found") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML ({exc})") from exc
    return parse_config(data, source=path)
