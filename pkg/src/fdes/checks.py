"""Invariant audit: the numbered health checks behind the ``check`` command.

Each check returns its measured bound alongside the verdict so regressions
are visible as numbers, not just as a flipped flag.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .aggregate import IndicatorAccumulator, PsiSystem, fold_open_loop, rule_count, standard_psi
from .fuzzy import TermLabel, defuzzify_center_average


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.measured}"


def _grid(psi: PsiSystem, n: int = 101) -> list[float]:
    lo, hi = psi.var.universe.lo, psi.var.universe.hi
    return [lo + (hi - lo) * k / (n - 1) for k in range(n)]


def check_table_fidelity(psi: PsiSystem) -> CheckResult:
    """At every pair of term centers the strongest consequent must be the
    table cell, and the crisp output must stay within 1.0 of its center."""
    var = psi.var
    worst = 0.0
    agree = True
    for second in TermLabel:
        for first in TermLabel:
            out = psi.infer(var.center(first), var.center(second))
            cell = psi.rules.consequent(first, second)
            agree &= out.argmax() == cell
            worst = max(worst, abs(defuzzify_center_average(out, var) - var.center(cell)))
    return CheckResult(
        "rule-table fidelity at the 16 center pairs",
        agree and worst <= 1.0,
        f"argmax agrees={agree}, max |output - cell center| = {worst:.4f} (limit 1.0)",
    )


def check_diagonal(psi: PsiSystem) -> CheckResult:
    """psi(x, x) must stay within 0.5 of x on the 101-point grid and be exact
    at the central crossover midpoint; the outer midpoint deviations are
    reported (their measured value is ~9.75e-3, see the package docs)."""
    worst = max(abs(psi.eval(x, x) - x) for x in _grid(psi))
    c = psi.var.centers
    mids = [(a + b) / 2.0 for a, b in zip(c, c[1:])]
    mid_dev = [abs(psi.eval(m, m) - m) for m in mids]
    center_dev = max(abs(psi.eval(x, x) - x) for x in c)
    ok = worst <= 0.5 and mid_dev[1] <= 1e-9 and center_dev <= 0.35
    return CheckResult(
        "diagonal near-identity",
        ok,
        f"max grid |psi(x,x)-x| = {worst:.4f} (limit 0.5); midpoint deviations = "
        f"[{mid_dev[0]:.3e}, {mid_dev[1]:.3e}, {mid_dev[2]:.3e}]; "
        f"max at centers = {center_dev:.4f} (limit 0.35)",
    )


def check_monotonicity(psi: PsiSystem, slack: float = 0.1) -> CheckResult:
    """psi must be nondecreasing in each argument on a 101x101 grid, up to
    the stated slack."""
    g = _grid(psi)
    vals = np.array([[psi.eval(a, b) for b in g] for a in g])
    viol = max(
        float(np.max(vals[:, :-1] - vals[:, 1:], initial=0.0)),
        float(np.max(vals[:-1, :] - vals[1:, :], initial=0.0)),
    )
    return CheckResult(
        "monotonicity in each argument",
        viol <= slack,
        f"max violation = {viol:.6f} (slack {slack})",
    )


def check_range_safety(psi: PsiSystem) -> CheckResult:
    g = _grid(psi)
    lo, hi = psi.var.center(TermLabel.NME), psi.var.center(TermLabel.VG)
    vals = [psi.eval(a, b) for a in g[::10] for b in g[::10]]
    ok = all(lo <= v <= hi for v in vals)
    return CheckResult(
        "outputs stay within the outer term centers",
        ok,
        f"range observed [{min(vals):.4f}, {max(vals):.4f}] within [{lo}, {hi}]",
    )


def check_dominance(psi: PsiSystem) -> CheckResult:
    """The second input must dominate: swapping a better value into the
    second slot must raise the output, by at least one grade unit at the
    adjacent center pairs examined here."""
    var = psi.var
    c = var.centers
    m1 = psi.eval(c[TermLabel.NME], c[TermLabel.AE]) - psi.eval(c[TermLabel.AE], c[TermLabel.NME])
    m2 = psi.eval(c[TermLabel.G], c[TermLabel.VG]) - psi.eval(c[TermLabel.VG], c[TermLabel.G])
    r1 = var.round_to_term(psi.eval(c[TermLabel.VG], c[TermLabel.AE]))
    r2 = var.round_to_term(psi.eval(c[TermLabel.AE], c[TermLabel.VG]))
    ok = m1 >= 1.0 and m2 >= 1.0 and r1 == r2 == TermLabel.G
    return CheckResult(
        "second-input dominance",
        ok,
        f"margins = {m1:.4f}, {m2:.4f} (need >= 1.0); VG/AE cross pairs round to "
        f"{r1.name}/{r2.name} (need G/G)",
    )


def check_rule_counts() -> CheckResult:
    ok = True
    for m in range(2, 9):
        for n in range(2, 7):
            rep = rule_count(m, n)
            ok &= rep.flat_count == n**m
            ok &= rep.hierarchical_levels == m - 1
            ok &= rep.hierarchical_count == (m - 1) * n * n
    rep = rule_count(5, 4)
    ok &= rep.flat_count == 1024 and rep.hierarchical_count == 64
    return CheckResult(
        "rule-count arithmetic",
        ok,
        f"flat(5 inputs, 4 terms) = {rep.flat_count}, hierarchical = "
        f"{rep.hierarchical_levels} systems x {rep.n**2} rules = {rep.hierarchical_count}",
    )


def check_fold_equivalence(psi: PsiSystem, sequences: int = 100, seed: int = 20260809) -> CheckResult:
    """The strict accumulator must equal the open-loop fold bit for bit, and
    the first update in paper mode may differ from strict by at most 0.5."""
    rng = np.random.default_rng(seed)
    lo, hi = psi.var.universe.lo, psi.var.universe.hi
    exact = True
    paper_gap = 0.0
    for _ in range(sequences):
        xs = list(rng.uniform(lo, hi, size=rng.integers(1, 21)))
        acc = IndicatorAccumulator(psi, mode="strict")
        for x in xs:
            acc = acc.update(x)
        exact &= acc.current == fold_open_loop(psi, xs)
        first_paper = IndicatorAccumulator(psi, mode="paper").update(xs[0])
        paper_gap = max(paper_gap, abs(first_paper.current - xs[0]))
    return CheckResult(
        "feedback accumulator matches the open-loop fold",
        exact and paper_gap <= 0.5,
        f"strict == fold on {sequences} sequences: {exact}; "
        f"max paper-mode first-update gap = {paper_gap:.4f} (limit 0.5)",
    )


def run_all(psi: PsiSystem | None = None) -> list[CheckResult]:
    psi = psi if psi is not None else standard_psi()
    return [
        check_table_fidelity(psi),
        check_diagonal(psi),
        check_monotonicity(psi),
        check_range_safety(psi),
        check_dominance(psi),
        check_rule_counts(),
        check_fold_equivalence(psi),
    ]
