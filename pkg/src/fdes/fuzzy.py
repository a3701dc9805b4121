"""Linguistic variables over a crisp grade range and Mamdani-product inference.

The building blocks here are deliberately small: a universe of discourse,
four ordered Gaussian terms (NME < AE < G < VG), a 4x4 rule table, and two
defuzzifiers.  Everything is an immutable value; all operations are pure
functions, so concurrent use needs no locking.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class TermLabel(enum.IntEnum):
    """The four standard descriptive phrases, ordered worst to best."""

    NME = 0  # Need More Effort
    AE = 1   # As Expected
    G = 2    # Good
    VG = 3   # Very Good

    @classmethod
    def parse(cls, text: str) -> "TermLabel":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(
                f"unknown term label {text!r}; expected one of "
                f"{', '.join(t.name for t in cls)}"
            ) from None


class DefuzzifyError(ValueError):
    """No positive weight anywhere: there is nothing to defuzzify."""


def _require_finite(x: float, what: str = "input") -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"{what} must be finite, got {x!r}")
    return x


@dataclass(frozen=True)
class UniverseSpec:
    """Crisp range underlying a linguistic variable, e.g. grades 10..20."""

    lo: float = 10.0
    hi: float = 20.0
    resolution: int = 101

    def __post_init__(self) -> None:
        _require_finite(self.lo, "lo")
        _require_finite(self.hi, "hi")
        if not self.lo < self.hi:
            raise ValueError(f"degenerate universe: lo={self.lo} must be < hi={self.hi}")
        if self.resolution < 101:
            raise ValueError(f"resolution must be >= 101, got {self.resolution}")

    def clamp(self, x: float) -> float:
        """Pull an out-of-range score back to the nearest bound."""
        x = _require_finite(x)
        return min(max(x, self.lo), self.hi)

    def samples(self, pad: float = 0.0) -> list[float]:
        """Evenly spaced sample points, optionally padded past both ends.

        The sample count is scaled with the padding so the step size stays
        the one implied by ``resolution`` over [lo, hi].
        """
        lo, hi = self.lo - pad, self.hi + pad
        n = self.resolution
        if pad > 0.0:
            step = (self.hi - self.lo) / (self.resolution - 1)
            n = int(round((hi - lo) / step)) + 1
        return [lo + (hi - lo) * k / (n - 1) for k in range(n)]


@dataclass(frozen=True)
class LinguisticTerm:
    """One Gaussian term: label, peak position and spread."""

    label: TermLabel
    center: float
    sigma: float

    def __post_init__(self) -> None:
        _require_finite(self.center, "center")
        _require_finite(self.sigma, "sigma")
        if self.sigma <= 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


def membership(x: float, term: LinguisticTerm) -> float:
    """Degree to which ``x`` belongs to ``term``: exp(-(x-c)^2 / (2 sigma^2))."""
    x = _require_finite(x)
    d = x - term.center
    return math.exp(-(d * d) / (2.0 * term.sigma * term.sigma))


# Shared sigma such that adjacent terms cross at membership exactly 0.5:
# solve exp(-(spacing/2)^2 / (2 sigma^2)) = 1/2.
_CROSSOVER_FACTOR = 2.0 * math.sqrt(2.0 * math.log(2.0))


@dataclass(frozen=True)
class LinguisticVariable:
    """A universe plus the four ordered terms NME, AE, G, VG."""

    universe: UniverseSpec
    terms: tuple[LinguisticTerm, LinguisticTerm, LinguisticTerm, LinguisticTerm]

    def __post_init__(self) -> None:
        if len(self.terms) != 4:
            raise ValueError(f"exactly 4 terms required, got {len(self.terms)}")
        if tuple(t.label for t in self.terms) != tuple(TermLabel):
            raise ValueError("terms must be ordered NME, AE, G, VG")
        centers = [t.center for t in self.terms]
        if any(b <= a for a, b in zip(centers, centers[1:])):
            raise ValueError(f"term centers must be strictly increasing, got {centers}")
        spacings = [b - a for a, b in zip(centers, centers[1:])]
        if max(spacings) - min(spacings) > 1e-9 * (self.universe.hi - self.universe.lo):
            raise ValueError(f"term centers must be equally spaced, got {centers}")
        for t in self.terms:
            if not self.universe.lo <= t.center <= self.universe.hi:
                raise ValueError(
                    f"center {t.center} of {t.label.name} outside "
                    f"[{self.universe.lo}, {self.universe.hi}]"
                )

    def term(self, label: TermLabel) -> LinguisticTerm:
        return self.terms[label]

    def center(self, label: TermLabel) -> float:
        return self.terms[label].center

    @property
    def centers(self) -> tuple[float, float, float, float]:
        return tuple(t.center for t in self.terms)  # type: ignore[return-value]

    def fuzzify(self, x: float) -> tuple[float, float, float, float]:
        """Membership of ``x`` (clamped to the universe) in all four terms."""
        x = self.universe.clamp(x)
        return tuple(membership(x, t) for t in self.terms)  # type: ignore[return-value]

    def round_to_term(self, x: float) -> TermLabel:
        """Nearest term center; exact midpoint ties go to the higher term."""
        x = _require_finite(x)
        c = self.centers
        midpoints = [(a + b) / 2.0 for a, b in zip(c, c[1:])]
        return TermLabel(sum(x >= m for m in midpoints))


def standard_variable(universe: UniverseSpec = UniverseSpec()) -> LinguisticVariable:
    """Four evenly spaced Gaussians with 0.5 crossover at the midpoints.

    Centers sit at lo + i*(hi-lo)/3 for i = 0..3; the shared sigma is the
    spacing divided by 2*sqrt(2 ln 2), which puts adjacent memberships at
    exactly one half where they meet.
    """
    spacing = (universe.hi - universe.lo) / 3.0
    sigma = spacing / _CROSSOVER_FACTOR
    terms = tuple(
        LinguisticTerm(label, universe.lo + i * spacing, sigma)
        for i, label in enumerate(TermLabel)
    )
    return LinguisticVariable(universe, terms)  # type: ignore[arg-type]


@dataclass(frozen=True)
class RuleBase4x4:
    """16 IF-THEN rules as a 4x4 grid of consequent labels.

    ``table[second][first]`` is the consequent for "IF the first input is
    ``first`` AND the second input is ``second``".  Construction asserts the
    grid is monotone: walking either index upward never lowers the
    consequent, which is what makes the inferred surface well behaved.
    """

    table: tuple[tuple[TermLabel, ...], ...]

    def __post_init__(self) -> None:
        if len(self.table) != 4 or any(len(row) != 4 for row in self.table):
            raise ValueError("rule table must be 4x4")
        for j in range(4):
            for i in range(4):
                if not isinstance(self.table[j][i], TermLabel):
                    raise ValueError(f"cell ({j},{i}) is not a TermLabel")
                if i > 0 and self.table[j][i] < self.table[j][i - 1]:
                    raise ValueError(f"row {TermLabel(j).name} not nondecreasing")
                if j > 0 and self.table[j][i] < self.table[j - 1][i]:
                    raise ValueError(f"column {TermLabel(i).name} not nondecreasing")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[str | TermLabel]]) -> "RuleBase4x4":
        """Build from rows of labels; row k is indexed by the second input's term."""
        table = tuple(
            tuple(c if isinstance(c, TermLabel) else TermLabel.parse(c) for c in row)
            for row in rows
        )
        return cls(table)

    def consequent(self, first: TermLabel, second: TermLabel) -> TermLabel:
        return self.table[second][first]

    def transpose(self) -> "RuleBase4x4":
        """Swap the roles of the two inputs."""
        return RuleBase4x4(tuple(tuple(self.table[i][j] for i in range(4)) for j in range(4)))


# The standard rule base: the second (newer) input dominates.  Reading row by
# row, the row is the newer evaluation's term and the column the older one's.
RECENT_DOMINANT = RuleBase4x4.from_rows([
    ["NME", "NME", "AE", "G"],   # newer NME
    ["AE", "AE", "AE", "G"],     # newer AE
    ["AE", "G", "G", "G"],       # newer G
    ["G", "G", "VG", "VG"],      # newer VG
])

# Its transpose: the first (older / accumulated) input dominates instead.
CUMULATIVE_DOMINANT = RECENT_DOMINANT.transpose()


@dataclass(frozen=True)
class FuzzyOutput:
    """Per-consequent firing strengths after combining all rules."""

    weights: Mapping[TermLabel, float] = field(default_factory=dict)

    def weight(self, label: TermLabel) -> float:
        return self.weights.get(label, 0.0)

    def argmax(self) -> TermLabel:
        return max(TermLabel, key=self.weight)

    def total(self) -> float:
        return sum(self.weights.values())


def infer_mamdani_product(
    rb: RuleBase4x4, x_m: float, x_m1: float, var: LinguisticVariable
) -> FuzzyOutput:
    """Fire all 16 rules with the product t-norm and combine them by max.

    Rule (i, j) fires with membership(x_m, term_i) * membership(x_m1, term_j);
    rules sharing a consequent keep the strongest firing, so every weight
    stays in [0, 1].
    """
    mm = var.fuzzify(x_m)
    mm1 = var.fuzzify(x_m1)
    weights = {label: 0.0 for label in TermLabel}
    for second in TermLabel:
        row = rb.table[second]
        for first in TermLabel:
            w = mm[first] * mm1[second]
            label = row[first]
            if w > weights[label]:
                weights[label] = w
    return FuzzyOutput(weights)


def defuzzify_center_average(out: FuzzyOutput, var: LinguisticVariable) -> float:
    """Weighted mean of term centers; the default, closed-form defuzzifier."""
    den = out.total()
    if den <= 0.0:
        raise DefuzzifyError("all consequent weights are zero")
    num = sum(out.weight(label) * var.center(label) for label in TermLabel)
    return num / den


def defuzzify_centroid(
    out: FuzzyOutput, var: LinguisticVariable, pad_sigmas: float = 4.0
) -> float:
    """Centroid of the max-of-scaled-Gaussians aggregate, by discretization.

    Kept as an independent cross-check of the center-average path, not used
    in inference.  The sample grid extends ``pad_sigmas`` spreads past both
    ends of the universe so the two boundary Gaussians keep both halves;
    cutting them at the universe edge would shift the corner centroids by
    about a grade unit and make the cross-check useless there.
    """
    den = out.total()
    if den <= 0.0:
        raise DefuzzifyError("all consequent weights are zero")
    pad = pad_sigmas * max(t.sigma for t in var.terms)
    num = mass = 0.0
    for y in var.universe.samples(pad):
        m = max(out.weight(t.label) * membership(y, t) for t in var.terms)
        num += y * m
        mass += m
    if mass <= 0.0:
        raise DefuzzifyError("aggregate has no mass on the sample grid")
    return num / mass
