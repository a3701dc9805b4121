"""Synthetic school-year experiments and their CSV export.

Two harnesses: a 30-day study of the two-input system under four input
regimes, and a 150-day full-cascade run driven by five synthetic indicator
curves.  Both are deterministic for a fixed seed so exported CSV files are
byte-stable golden files.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy.interpolate import PchipInterpolator

from .aggregate import PsiSystem
from .engine import FdesEngine, FdesState, Indicator, LAST_DAY
from .fuzzy import TermLabel


@dataclass(frozen=True)
class Oscillation:
    amplitude: float
    period_days: float

    def __post_init__(self) -> None:
        if self.amplitude < 0.0:
            raise ValueError("oscillation amplitude must be >= 0")
        if self.period_days <= 0.0:
            raise ValueError("oscillation period must be positive")


@dataclass
class IndicatorCurve:
    """Synthetic teaching-progress curve for one indicator.

    Anchors are (day, value) control points the curve passes through exactly;
    between them the shape is a monotone piecewise cubic (or plain linear).
    Optional oscillation and seeded noise ride on top, and the result is
    clamped to the given bounds.
    """

    start_day: int
    anchors: Sequence[tuple[int, float]]
    interpolation: str = "pchip"
    oscillation: Oscillation | None = None
    noise_amplitude: float = 0.0
    seed: int = 0
    _interp: object = field(init=False, repr=False, default=None)

    def __post_init__(self) -> None:
        days = [d for d, _ in self.anchors]
        if len(days) < 2:
            raise ValueError("need at least two anchors")
        if any(b <= a for a, b in zip(days, days[1:])):
            raise ValueError(f"anchor days must be strictly increasing, got {days}")
        if self.interpolation not in ("pchip", "linear"):
            raise ValueError(f"interpolation must be 'pchip' or 'linear', got {self.interpolation!r}")
        if self.noise_amplitude < 0.0:
            raise ValueError("noise amplitude must be >= 0")
        if self.interpolation == "pchip":
            self._interp = PchipInterpolator(days, [v for _, v in self.anchors])

    def value(self, day: int, lo: float, hi: float) -> float | None:
        """Curve value on ``day``, or None while the indicator is not yet taught."""
        if day < self.start_day:
            return None
        days = [d for d, _ in self.anchors]
        d = min(max(day, days[0]), days[-1])
        if self.interpolation == "pchip":
            x = float(self._interp(d))
        else:
            x = float(np.interp(d, days, [v for _, v in self.anchors]))
        if self.oscillation is not None:
            x += self.oscillation.amplitude * math.sin(
                2.0 * math.pi * (day - self.start_day) / self.oscillation.period_days
            )
        if self.noise_amplitude > 0.0:
            rng = np.random.default_rng((self.seed, day))
            x += self.noise_amplitude * rng.uniform(-1.0, 1.0)
        return min(max(x, lo), hi)


@dataclass(frozen=True)
class ScenarioConfig:
    """One 30-day input regime for the two-input system."""

    name: str
    x_m_mean: float
    x_m1_mean: float
    jitter: float = 0.4
    days: int = 30
    seed: int = 7

    def __post_init__(self) -> None:
        if self.jitter < 0.0:
            raise ValueError("jitter must be >= 0")
        if self.days < 1:
            raise ValueError("days must be >= 1")


@dataclass(frozen=True)
class ScenarioRun:
    name: str
    rows: tuple[tuple[int, float, float, float], ...]  # day, x_m, x_m1, x_out

    def outputs(self) -> list[float]:
        return [r[3] for r in self.rows]

    def mean_output(self) -> float:
        return sum(self.outputs()) / len(self.rows)


def default_scenarios(
    psi: PsiSystem, jitter: float = 0.4, days: int = 30, seed: int = 7
) -> list[ScenarioConfig]:
    """The four standard regimes, named after their plot line styles."""
    c = psi.var.centers
    mk = lambda name, a, b: ScenarioConfig(name, a, b, jitter=jitter, days=days, seed=seed)
    return [
        mk("dashed", 14.0, 14.0),
        mk("dotted", c[TermLabel.VG], c[TermLabel.G]),
        mk("dashdot", c[TermLabel.G], c[TermLabel.VG]),
        mk("solid", c[TermLabel.VG], c[TermLabel.AE]),
    ]


def run_psi_scenarios(psi: PsiSystem, scenarios: Sequence[ScenarioConfig]) -> list[ScenarioRun]:
    """Evaluate each scenario day by day; jitter is seeded and reproducible."""
    runs = []
    for k, sc in enumerate(scenarios):
        lo, hi = psi.var.universe.lo, psi.var.universe.hi
        rows = []
        for day in range(1, sc.days + 1):
            if sc.jitter > 0.0:
                rng = np.random.default_rng((sc.seed, k, day))
                jm, jm1 = rng.uniform(-sc.jitter, sc.jitter, size=2)
            else:
                jm = jm1 = 0.0
            x_m = min(max(sc.x_m_mean + jm, lo), hi)
            x_m1 = min(max(sc.x_m1_mean + jm1, lo), hi)
            rows.append((day, x_m, x_m1, psi.eval(x_m, x_m1)))
        runs.append(ScenarioRun(sc.name, tuple(rows)))
    return runs


@dataclass(frozen=True)
class FdesDay:
    day: int
    raw: Mapping[Indicator, float | None]
    status: Mapping[Indicator, float | None]
    chain: tuple[float | None, float | None, float | None, float | None]
    final: float | None


@dataclass(frozen=True)
class FdesRun:
    student_id: str
    days: tuple[FdesDay, ...]

    def on_day(self, day: int) -> FdesDay:
        return self.days[day - 1]


def run_fdes_simulation(
    engine: FdesEngine,
    curves: Mapping[Indicator, IndicatorCurve],
    sampling_interval_days: int = 1,
    student_id: str = "typical",
    total_days: int = LAST_DAY,
) -> FdesRun:
    """Drive the full cascade with one evaluation per active indicator per
    sampling day, recording the state after every day."""
    if sampling_interval_days < 1:
        raise ValueError("sampling interval must be >= 1 day")
    lo, hi = engine.var.universe.lo, engine.var.universe.hi
    for ind, curve in curves.items():
        for d, v in curve.anchors:
            if not lo <= v <= hi:
                raise ValueError(f"anchor ({d}, {v}) of {ind.value} outside [{lo}, {hi}]")
    state: FdesState = engine.fresh_state()
    days = []
    for day in range(1, total_days + 1):
        raw: dict[Indicator, float | None] = {}
        for ind in Indicator:
            curve = curves.get(ind)
            value = None if curve is None else curve.value(day, lo, hi)
            raw[ind] = value
            if value is None:
                continue
            if (day - curve.start_day) % sampling_interval_days != 0:
                continue
            state = engine.apply_record(state, engine.make_record(student_id, ind, day, value))
        status = {ind: state.accumulator(ind).current for ind in Indicator}
        days.append(FdesDay(day, raw, status, state.chain, state.final))
    return FdesRun(student_id, tuple(days))


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.6f}"


def export_scenario_csv(run: ScenarioRun, path) -> None:
    """One row per day: day, x_m, x_m1, x_out."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["day", "x_m", "x_m1", "x_out"])
        for day, x_m, x_m1, x_out in run.rows:
            w.writerow([day, _fmt(x_m), _fmt(x_m1), _fmt(x_out)])


def export_fdes_csv(run: FdesRun, path) -> None:
    """One row per day: raw curves, accumulated statuses, chain, final."""
    inds = list(Indicator)
    header = (
        ["day"]
        + [f"raw_{i.value}" for i in inds]
        + [f"status_{i.value}" for i in inds]
        + ["y1", "y2", "y3", "y4", "final"]
    )
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for d in run.days:
            row = [d.day]
            row += [_fmt(d.raw[i]) for i in inds]
            row += [_fmt(d.status[i]) for i in inds]
            row += [_fmt(v) for v in d.chain]
            row.append(_fmt(d.final))
            w.writerow(row)


def scenario_verdicts(psi: PsiSystem, days: int = 30, seed: int = 7) -> list[tuple[str, bool, str]]:
    """Qualitative expectations for the four regimes, on the zero-jitter variant."""
    runs = {r.name: r for r in run_psi_scenarios(psi, default_scenarios(psi, jitter=0.0, days=days, seed=seed))}
    var = psi.var
    dashed = runs["dashed"].outputs()
    means = {name: runs[name].mean_output() for name in runs}
    rounds = {name: var.round_to_term(means[name]) for name in runs}
    return [
        (
            "dashed stays near the middle of the range",
            all(13.0 <= v <= 15.0 for v in dashed),
            f"outputs in [{min(dashed):.3f}, {max(dashed):.3f}]",
        ),
        (
            "newer-input regime outranks older-input regime",
            means["dashdot"] > means["dotted"] > means["solid"],
            f"dashdot={means['dashdot']:.3f} > dotted={means['dotted']:.3f} > solid={means['solid']:.3f}",
        ),
        (
            "dotted and solid both round to G",
            rounds["dotted"] == TermLabel.G and rounds["solid"] == TermLabel.G,
            f"dotted->{rounds['dotted'].name}, solid->{rounds['solid'].name}",
        ),
        (
            "dashdot rounds to VG",
            rounds["dashdot"] == TermLabel.VG,
            f"dashdot->{rounds['dashdot'].name}",
        ),
    ]


def checkpoint_verdicts(run: FdesRun, engine: FdesEngine) -> list[tuple[str, bool, str]]:
    """The three school-year checkpoints of the combined output."""
    var = engine.var
    c_g, c_vg = var.center(TermLabel.G), var.center(TermLabel.VG)
    f60, f90, f135 = (run.on_day(d).final for d in (60, 90, 135))
    return [
        (
            "day 60 (end of ABAN) rounds to G",
            f60 is not None and var.round_to_term(f60) == TermLabel.G,
            f"final={f60:.4f} -> {var.round_to_term(f60).name}" if f60 is not None else "no data",
        ),
        (
            "day 90 (end of AZAR) strictly between G and VG centers",
            f90 is not None and c_g < f90 < c_vg,
            f"final={f90:.4f} in ({c_g:.3f}, {c_vg:.3f})" if f90 is not None else "no data",
        ),
        (
            "day 135 (mid BAHMAN) within 1.5 of the G center",
            f135 is not None and abs(f135 - c_g) <= 1.5,
            f"final={f135:.4f}, |d|={abs(f135 - c_g):.4f}" if f135 is not None else "no data",
        ),
    ]
