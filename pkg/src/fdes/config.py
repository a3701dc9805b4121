"""Loading the YAML configuration that defines variables, rules and curves."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import yaml

from .engine import FdesEngine, Indicator
from .fuzzy import (
    CUMULATIVE_DOMINANT,
    RECENT_DOMINANT,
    LinguisticTerm,
    LinguisticVariable,
    RuleBase4x4,
    TermLabel,
    UniverseSpec,
    standard_variable,
)
from .simulate import IndicatorCurve, Oscillation, ScenarioConfig


class ConfigError(ValueError):
    """A configuration file could not be interpreted."""


@dataclass
class AppConfig:
    """Everything the engine, simulations and service share."""

    var: LinguisticVariable
    recent_rules: RuleBase4x4
    cumulative_rules: RuleBase4x4
    trajectories: dict[Indicator, IndicatorCurve]
    scenario_days: int = 30
    scenario_jitter: float = 0.4
    scenario_seed: int = 7
    scenario_means: dict[str, tuple[float, float]] | None = None

    def engine(self) -> FdesEngine:
        return FdesEngine(self.var, self.recent_rules, self.cumulative_rules)

    def scenarios(self, jitter: float | None = None) -> list[ScenarioConfig]:
        means = self.scenario_means or {}
        return [
            ScenarioConfig(
                name,
                x_m,
                x_m1,
                jitter=self.scenario_jitter if jitter is None else jitter,
                days=self.scenario_days,
                seed=self.scenario_seed,
            )
            for name, (x_m, x_m1) in means.items()
        ]


def _crisp(value: Any, var: LinguisticVariable, where: str) -> float:
    """A number, or a term label standing for its center."""
    if isinstance(value, str):
        try:
            return var.center(TermLabel.parse(value))
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from None
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{where}: expected a number or term label, got {value!r}") from None


def _build_variable(doc: Mapping[str, Any]) -> LinguisticVariable:
    uni = doc.get("universe", {}) or {}
    try:
        universe = UniverseSpec(
            lo=float(uni.get("lo", 10.0)),
            hi=float(uni.get("hi", 20.0)),
            resolution=int(uni.get("resolution", 101)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"universe: {exc}") from exc
    terms = doc.get("terms")
    if not terms:
        return standard_variable(universe)
    try:
        centers = [float(c) for c in terms["centers"]]
        sigma = float(terms["sigma"])
        built = tuple(
            LinguisticTerm(label, centers[i], sigma) for i, label in enumerate(TermLabel)
        )
        return LinguisticVariable(universe, built)  # type: ignore[arg-type]
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise ConfigError(f"terms: {exc}") from exc


def _build_rules(doc: Mapping[str, Any]) -> tuple[RuleBase4x4, RuleBase4x4]:
    section = doc.get("rules")
    if not section:
        return RECENT_DOMINANT, CUMULATIVE_DOMINANT

    def table_from(spec: Any, where: str) -> RuleBase4x4:
        try:
            rows = [spec[label.name] for label in TermLabel]
            return RuleBase4x4.from_rows(rows)
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"rules.{where}: {exc}") from exc

    recent = table_from(section.get("recent_dominant"), "recent_dominant")
    cum_spec = section.get("cumulative_dominant", "transpose")
    if cum_spec == "transpose":
        cumulative = recent.transpose()
    else:
        cumulative = table_from(cum_spec, "cumulative_dominant")
    return recent, cumulative


def _build_trajectories(doc: Mapping[str, Any]) -> dict[Indicator, IndicatorCurve]:
    out: dict[Indicator, IndicatorCurve] = {}
    for key, spec in (doc.get("trajectories") or {}).items():
        try:
            ind = Indicator.parse(str(key))
            osc = spec.get("oscillation")
            noise = spec.get("noise") or {}
            out[ind] = IndicatorCurve(
                start_day=int(spec["start_day"]),
                anchors=[(int(d), float(v)) for d, v in spec["anchors"]],
                interpolation=spec.get("interpolation", "pchip"),
                oscillation=None
                if not osc
                else Oscillation(float(osc["amplitude"]), float(osc["period"])),
                noise_amplitude=float(noise.get("amplitude", 0.0)),
                seed=int(noise.get("seed", 0)),
            )
        except ConfigError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"trajectories.{key}: {exc}") from exc
    return out


def _build_scenarios(doc: Mapping[str, Any], var: LinguisticVariable) -> dict[str, Any]:
    section = doc.get("scenarios") or {}
    means = {}
    for name, spec in (section.get("regimes") or {}).items():
        try:
            means[str(name)] = (
                _crisp(spec["x_m"], var, f"scenarios.{name}.x_m"),
                _crisp(spec["x_m1"], var, f"scenarios.{name}.x_m1"),
            )
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"scenarios.{name}: {exc}") from exc
    return {
        "scenario_days": int(section.get("days", 30)),
        "scenario_jitter": float(section.get("jitter", 0.4)),
        "scenario_seed": int(section.get("seed", 7)),
        "scenario_means": means or None,
    }


def load_config(path: str | Path | None = None) -> AppConfig:
    """Parse a configuration file; ``None`` loads the packaged defaults."""
    if path is None:
        text = resources.files("fdes").joinpath("data/default_config.yaml").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    try:
        doc = yaml.safe_load(text) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"not valid YAML: {exc}") from exc
    if not isinstance(doc, Mapping):
        raise ConfigError("top level of the configuration must be a mapping")
    var = _build_variable(doc)
    recent, cumulative = _build_rules(doc)
    return AppConfig(
        var=var,
        recent_rules=recent,
        cumulative_rules=cumulative,
        trajectories=_build_trajectories(doc),
        **_build_scenarios(doc, var),
    )
