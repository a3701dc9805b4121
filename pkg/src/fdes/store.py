"""Durable, append-only storage of evaluation records with exact replay.

The newline-delimited log is the ground truth; every in-memory state is
derived by folding it through the engine.  Appends hit disk (flush + fsync)
before they are acknowledged, record values are serialized with a fixed six
fraction digits, and replay refuses corrupt lines instead of skipping them,
so a restarted service always reports exactly the acknowledged history.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import yaml

from .engine import EvaluationRecord, FdesEngine, FdesState, Indicator, OutOfOrderError
from .fuzzy import TermLabel

_FIELDS = ("seq", "student", "indicator", "day", "value", "term", "note", "clamped")


class ReplayError(ValueError):
    """A log line could not be replayed; carries its 1-based line number."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def encode_line(seq: int, rec: EvaluationRecord) -> str:
    """One record as a compact JSON document, with the crisp value rendered
    as a fixed 6-fraction-digit decimal so replays are byte-for-byte stable."""
    doc = {
        "seq": seq,
        "student": rec.student_id,
        "indicator": rec.indicator.value,
        "day": rec.day,
        "value": f"{rec.value:.6f}",
        "term": None if rec.term is None else rec.term.name,
        "note": rec.note,
        "clamped": rec.clamped,
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


def decode_line(line: str, line_no: int) -> tuple[int, EvaluationRecord]:
    try:
        doc = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ReplayError(line_no, f"not valid JSON ({exc.msg})") from None
    if not isinstance(doc, dict):
        raise ReplayError(line_no, "expected a JSON object")
    missing = [k for k in _FIELDS if k not in doc]
    if missing:
        raise ReplayError(line_no, f"missing fields: {', '.join(missing)}")
    try:
        rec = EvaluationRecord(
            student_id=str(doc["student"]),
            indicator=Indicator.parse(str(doc["indicator"])),
            day=int(doc["day"]),
            value=float(doc["value"]),
            term=None if doc["term"] is None else TermLabel.parse(str(doc["term"])),
            note=str(doc["note"]),
            clamped=bool(doc["clamped"]),
        )
        return int(doc["seq"]), rec
    except ValueError as exc:
        raise ReplayError(line_no, str(exc)) from None


def replay(path: str | Path, engine: FdesEngine) -> dict[str, FdesState]:
    """Rebuild every student's state from a log file.

    Sequence numbers must be dense from 1 and each student's days must be
    nondecreasing; any violation (including a torn final line) halts with
    the offending line number.
    """
    states: dict[str, FdesState] = {}
    for line_no, (seq, rec) in _read_log(path):
        if seq != line_no:
            raise ReplayError(line_no, f"sequence number {seq} is not dense")
        state = states.get(rec.student_id) or engine.fresh_state()
        try:
            states[rec.student_id] = engine.apply_record(state, rec)
        except OutOfOrderError as exc:
            raise ReplayError(line_no, str(exc)) from None
    return states


def _read_log(path: str | Path) -> Iterator[tuple[int, tuple[int, EvaluationRecord]]]:
    p = Path(path)
    if not p.exists():
        return
    with p.open("r", encoding="utf-8", newline="") as fh:
        for line_no, raw in enumerate(fh, start=1):
            if not raw.endswith("\n"):
                raise ReplayError(line_no, "truncated line (no trailing newline)")
            yield line_no, decode_line(raw, line_no)


@dataclass
class StudentRoster:
    """Display names and course labels; purely cosmetic."""

    entries: dict[str, dict[str, str]] = field(default_factory=dict)

    @classmethod
    def from_yaml(cls, path: str | Path) -> "StudentRoster":
        doc = yaml.safe_load(Path(path).read_text("utf-8")) or {}
        students = doc.get("students", doc)
        entries = {}
        for sid, spec in students.items():
            spec = spec or {}
            entries[str(sid)] = {
                "name": str(spec.get("name", sid)),
                "course": str(spec.get("course", "")),
            }
        return cls(entries)

    def display_name(self, student_id: str) -> str:
        return self.entries.get(student_id, {}).get("name", student_id)

    def course(self, student_id: str) -> str:
        return self.entries.get(student_id, {}).get("course", "")


class EvalStore:
    """Single-course record log plus the live states derived from it.

    One appender per file; writes for one student must be serialized by the
    caller (the HTTP service does this).  Reads never touch the file.
    """

    def __init__(self, path: str | Path, engine: FdesEngine) -> None:
        self.path = Path(path)
        self.engine = engine
        self._states: dict[str, FdesState] = replay(self.path, engine)
        self._records: dict[str, list[EvaluationRecord]] = {}
        for _, (_, rec) in _read_log(self.path):
            self._records.setdefault(rec.student_id, []).append(rec)
        self._seq = sum(len(v) for v in self._records.values())
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = self.path.open("a", encoding="utf-8", newline="")

    # -- writes ------------------------------------------------------------

    def append(self, rec: EvaluationRecord) -> tuple[int, FdesState]:
        """Validate, persist, then apply; the ack implies the bytes are on disk."""
        state = self._states.get(rec.student_id) or self.engine.fresh_state()
        new_state = self.engine.apply_record(state, rec)  # raises before any write
        seq = self._seq + 1
        self._fh.write(encode_line(seq, rec))
        self._fh.flush()
        os.fsync(self._fh.fileno())
        self._seq = seq
        self._states[rec.student_id] = new_state
        self._records.setdefault(rec.student_id, []).append(rec)
        return seq, new_state

    # -- reads -------------------------------------------------------------

    def state(self, student_id: str) -> FdesState | None:
        return self._states.get(student_id)

    def students(self) -> list[str]:
        return sorted(self._states)

    def records(self, student_id: str) -> list[EvaluationRecord]:
        return list(self._records.get(student_id, []))

    def timeline(self, student_id: str, from_day: int = 1, to_day: int = 150) -> list[dict]:
        """Per-day snapshots reconstructed from the student's records."""
        recs = self._records.get(student_id)
        if recs is None:
            raise KeyError(student_id)
        engine = self.engine
        state = engine.fresh_state()
        rows = []
        i = 0
        for day in range(1, to_day + 1):
            while i < len(recs) and recs[i].day <= day:
                state = engine.apply_record(state, recs[i])
                i += 1
            if day < from_day:
                continue
            rows.append(
                {
                    "day": day,
                    "status": {
                        ind.value: engine.indicator_status(state, ind) for ind in Indicator
                    },
                    "final": state.final,
                    "term": None
                    if state.final is None
                    else engine.var.round_to_term(state.final).name,
                }
            )
        return rows

    def close(self) -> None:
        self._fh.close()

    def __enter__(self) -> "EvalStore":
        return self

    def __exit__(self, *exc) -> None:
        self.close()
