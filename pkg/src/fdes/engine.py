"""The full evaluation cascade: five indicator accumulators and the
four-stage combiner chain that merges them into one reported grade.

Each incoming evaluation updates its indicator's accumulator through the
recent-dominant system; the chain is then recomputed with the
cumulative-dominant system, so newer evaluations steer an indicator while
the overall grade leans on what was already established.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Mapping

from .aggregate import IndicatorAccumulator, PsiSystem
from .fuzzy import (
    CUMULATIVE_DOMINANT,
    RECENT_DOMINANT,
    LinguisticVariable,
    TermLabel,
    standard_variable,
)


class Indicator(enum.Enum):
    """The five assessed skill areas of the course, in curriculum order."""

    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"

    @classmethod
    def parse(cls, text: str) -> "Indicator":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(
                f"unknown indicator {text!r}; expected one of A, B, C, D, E"
            ) from None


INDICATOR_LABELS: Mapping[Indicator, str] = {
    Indicator.A: "Reading, writing and comparing numbers",
    Indicator.B: "Units of measurement and related calculations",
    Indicator.C: "Drawing and computing with geometric shapes",
    Indicator.D: "The four basic arithmetic operations",
    Indicator.E: "Drawing conclusions from graphs and charts",
}

MONTHS = ("MEHR", "ABAN", "AZAR", "DEY", "BAHMAN")
DAYS_PER_MONTH = 30
LAST_DAY = len(MONTHS) * DAYS_PER_MONTH  # 150


def day_of(month: str, day_of_month: int) -> int:
    """Map (month name, day in month) to the 1-based school-year day index."""
    name = month.strip().upper()
    if name not in MONTHS:
        raise ValueError(f"unknown month {month!r}; expected one of {', '.join(MONTHS)}")
    if not 1 <= day_of_month <= DAYS_PER_MONTH:
        raise ValueError(f"day_of_month must be 1..{DAYS_PER_MONTH}, got {day_of_month}")
    return MONTHS.index(name) * DAYS_PER_MONTH + day_of_month


def month_of(day: int) -> tuple[str, int]:
    """Inverse of :func:`day_of`."""
    if not 1 <= day <= LAST_DAY:
        raise ValueError(f"day must be 1..{LAST_DAY}, got {day}")
    return MONTHS[(day - 1) // DAYS_PER_MONTH], (day - 1) % DAYS_PER_MONTH + 1


class NoDataError(ValueError):
    """Asked for a result before any evaluation was recorded."""


class OutOfOrderError(ValueError):
    """A record's day precedes one already applied for the same student."""


@dataclass(frozen=True)
class EvaluationRecord:
    """One teacher proposition: who, which skill, when, how good.

    ``value`` is always crisp and already clamped to the universe; ``term``
    keeps the label the teacher actually entered, when they entered one.
    """

    student_id: str
    indicator: Indicator
    day: int
    value: float
    term: TermLabel | None = None
    note: str = ""
    clamped: bool = False

    def __post_init__(self) -> None:
        if not self.student_id:
            raise ValueError("student_id must be nonempty")
        if not 1 <= self.day <= LAST_DAY:
            raise ValueError(f"day must be 1..{LAST_DAY}, got {self.day}")


@dataclass(frozen=True)
class FdesState:
    """Live per-student state: five accumulators, chain outputs, final value."""

    accumulators: tuple[IndicatorAccumulator, ...]
    chain: tuple[float | None, float | None, float | None, float | None]
    final: float | None
    last_update_day: int | None = None
    record_count: int = 0

    def accumulator(self, indicator: Indicator) -> IndicatorAccumulator:
        return self.accumulators[list(Indicator).index(indicator)]


class FdesEngine:
    """Applies evaluation records and reports the combined standing.

    The engine itself is immutable configuration; state lives in
    :class:`FdesState` values, so callers own sequencing (one student's
    records must be applied in nondecreasing day order).
    """

    def __init__(
        self,
        var: LinguisticVariable | None = None,
        recent_rules=RECENT_DOMINANT,
        cumulative_rules=CUMULATIVE_DOMINANT,
        accumulator_mode: str = "strict",
    ) -> None:
        self.var = var if var is not None else standard_variable()
        self.recent_psi = PsiSystem(self.var, recent_rules)
        self.cumulative_psi = PsiSystem(self.var, cumulative_rules)
        self.accumulator_mode = accumulator_mode

    def fresh_state(self) -> FdesState:
        empty = IndicatorAccumulator(self.recent_psi, mode=self.accumulator_mode)
        return FdesState(
            accumulators=tuple(empty for _ in Indicator),
            chain=(None, None, None, None),
            final=None,
        )

    def make_record(
        self,
        student_id: str,
        indicator: Indicator | str,
        day: int,
        value: float | str | TermLabel,
        note: str = "",
    ) -> EvaluationRecord:
        """Normalize raw teacher input into a record.

        A term label maps to its center; numeric values are clamped to the
        universe and the record flags when clamping changed them.  Crisp
        values are quantized to six fraction digits, the precision of the
        record log, so a replayed history is bit-identical to the live one.
        """
        if isinstance(indicator, str):
            indicator = Indicator.parse(indicator)
        term: TermLabel | None = None
        if isinstance(value, TermLabel):
            term = value
        elif isinstance(value, str):
            term = TermLabel.parse(value)
        if term is not None:
            crisp, clamped = self.var.center(term), False
        else:
            crisp = self.var.universe.clamp(float(value))
            clamped = crisp != float(value)
        crisp = round(crisp, 6)
        return EvaluationRecord(
            student_id=student_id,
            indicator=indicator,
            day=int(day),
            value=crisp,
            term=term,
            note=note,
            clamped=clamped,
        )

    def apply_record(self, state: FdesState, rec: EvaluationRecord) -> FdesState:
        """Fold one record into the state and recompute the combiner chain."""
        if state.last_update_day is not None and rec.day < state.last_update_day:
            raise OutOfOrderError(
                f"record day {rec.day} precedes last applied day {state.last_update_day}"
            )
        idx = list(Indicator).index(rec.indicator)
        accs = list(state.accumulators)
        accs[idx] = accs[idx].update(rec.value)
        chain, final = self._recompute_chain(accs)
        return replace(
            state,
            accumulators=tuple(accs),
            chain=chain,
            final=final,
            last_update_day=rec.day,
            record_count=state.record_count + 1,
        )

    def _recompute_chain(self, accs) -> tuple[tuple, float | None]:
        """Left-to-right cumulative fold in A..E order, skipping empty
        indicators; chain[k] snapshots the running value after B, C, D, E."""
        running = accs[0].current
        chain: list[float | None] = []
        for acc in accs[1:]:
            if acc.current is not None:
                if running is None:
                    running = acc.current
                else:
                    running = self.cumulative_psi.eval(running, acc.current)
            chain.append(running)
        return tuple(chain), running

    def indicator_status(self, state: FdesState, indicator: Indicator) -> float | None:
        return state.accumulator(indicator).current

    def final_out(self, state: FdesState) -> tuple[float, TermLabel]:
        """Current combined value and its rounded descriptive phrase."""
        if state.final is None:
            raise NoDataError("no evaluation has been recorded yet")
        return state.final, self.var.round_to_term(state.final)

    def report(self, state: FdesState, student_id: str | None = None) -> dict:
        """Machine-readable end-of-term document for one student."""
        indicators = {}
        for ind in Indicator:
            acc = state.accumulator(ind)
            entry: dict = {
                "label": INDICATOR_LABELS[ind],
                "evaluations": acc.update_count,
                "value": acc.current,
                "term": None if acc.current is None else self.var.round_to_term(acc.current).name,
            }
            indicators[ind.value] = entry
        doc = {
            "indicators": indicators,
            "chain": {f"y{k + 1}": v for k, v in enumerate(state.chain)},
            "final": None,
            "record_count": state.record_count,
            "last_update_day": state.last_update_day,
        }
        if student_id is not None:
            doc["student_id"] = student_id
        if state.final is not None:
            crisp, term = self.final_out(state)
            doc["final"] = {"value": crisp, "term": term.name}
        return doc
