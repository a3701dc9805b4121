"""The two-input combining system and its folds over evaluation sequences.

A ``PsiSystem`` merges two consecutive crisp evaluations into one; folding it
left-to-right over a whole history realizes the hierarchical chain of n-1
two-input systems, and ``IndicatorAccumulator`` is the feedback form of the
same fold that accepts one evaluation at a time.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .fuzzy import (
    RECENT_DOMINANT,
    FuzzyOutput,
    LinguisticVariable,
    RuleBase4x4,
    defuzzify_center_average,
    defuzzify_centroid,
    infer_mamdani_product,
    standard_variable,
)

_DEFUZZIFIERS = {
    "center_average": defuzzify_center_average,
    "centroid": defuzzify_centroid,
}


@dataclass(frozen=True)
class PsiSystem:
    """Two-input, one-output fuzzy system over a shared linguistic variable."""

    var: LinguisticVariable
    rules: RuleBase4x4
    defuzzifier: str = "center_average"

    def __post_init__(self) -> None:
        if self.defuzzifier not in _DEFUZZIFIERS:
            raise ValueError(
                f"unknown defuzzifier {self.defuzzifier!r}; "
                f"expected one of {sorted(_DEFUZZIFIERS)}"
            )

    def infer(self, x_m: float, x_m1: float) -> FuzzyOutput:
        return infer_mamdani_product(self.rules, x_m, x_m1, self.var)

    def eval(self, x_m: float, x_m1: float) -> float:
        """Crisp merged value of the two inputs."""
        return _DEFUZZIFIERS[self.defuzzifier](self.infer(x_m, x_m1), self.var)


def standard_psi(
    var: LinguisticVariable | None = None, rules: RuleBase4x4 = RECENT_DOMINANT
) -> PsiSystem:
    """The default system: standard variable on [10, 20], newer input dominant."""
    return PsiSystem(var if var is not None else standard_variable(), rules)


def psi_eval(sys: PsiSystem, x_m: float, x_m1: float) -> float:
    return sys.eval(x_m, x_m1)


def fold_open_loop(sys: PsiSystem, inputs: list[float]) -> float:
    """Chain the system over an ordered evaluation sequence.

    A single-element list is returned verbatim; n elements take exactly n-1
    evaluations, each combining the running value (first input) with the next
    evaluation (second input).
    """
    if not inputs:
        raise ValueError("fold_open_loop requires at least one input")
    out = sys.var.universe.clamp(inputs[0])
    for x in inputs[1:]:
        out = sys.eval(out, x)
    return out


@dataclass(frozen=True)
class IndicatorAccumulator:
    """Running merged value for one indicator, updated one evaluation at a time.

    ``strict`` mode stores the first evaluation verbatim, which makes a
    sequence of updates bit-identical to ``fold_open_loop`` over the same
    values.  ``paper`` mode instead wires the first evaluation to both inputs
    (the closed-loop reading of the feedback diagram), so the first stored
    value is eval(x, x) = almost x; later updates are identical in both modes.
    """

    psi: PsiSystem
    mode: str = "strict"
    current: float | None = None
    update_count: int = 0

    def __post_init__(self) -> None:
        if self.mode not in ("strict", "paper"):
            raise ValueError(f"mode must be 'strict' or 'paper', got {self.mode!r}")
        if (self.current is None) != (self.update_count == 0):
            raise ValueError("current must be empty exactly when update_count is 0")

    @property
    def empty(self) -> bool:
        return self.update_count == 0

    def update(self, x_new: float) -> "IndicatorAccumulator":
        """Return a new accumulator with ``x_new`` folded in."""
        if self.current is None:
            if self.mode == "paper":
                value = self.psi.eval(x_new, x_new)
            else:
                value = self.psi.var.universe.clamp(x_new)
        else:
            value = self.psi.eval(self.current, x_new)
        return replace(self, current=value, update_count=self.update_count + 1)


@dataclass(frozen=True)
class RuleCountReport:
    """Flat versus hierarchical rule counts for m inputs with n terms each."""

    m: int
    n: int
    flat_count: int
    hierarchical_levels: int
    hierarchical_count: int


def rule_count(m: int, n: int) -> RuleCountReport:
    """Rule bookkeeping: a flat system needs n^m rules, the two-input chain
    of m-1 levels needs only (m-1) * n^2."""
    if m < 2:
        raise ValueError(f"need at least 2 inputs, got m={m}")
    if n < 2:
        raise ValueError(f"need at least 2 terms per input, got n={n}")
    return RuleCountReport(
        m=m,
        n=n,
        flat_count=n**m,
        hierarchical_levels=m - 1,
        hierarchical_count=(m - 1) * n * n,
    )
