"""Fuzzy descriptive evaluation of students.

Teacher propositions (crisp scores or the four phrases NME/AE/G/VG) are
folded per skill indicator through a two-input Mamdani-product system in
which the newer evaluation dominates; the five indicator standings are then
cascaded through a chain that leans on what was already established, and
the combined value is rounded to a descriptive phrase for reporting.
"""
from .aggregate import (
    IndicatorAccumulator,
    PsiSystem,
    RuleCountReport,
    fold_open_loop,
    psi_eval,
    rule_count,
    standard_psi,
)
from .config import AppConfig, ConfigError, load_config
from .engine import (
    DAYS_PER_MONTH,
    EvaluationRecord,
    FdesEngine,
    FdesState,
    Indicator,
    INDICATOR_LABELS,
    LAST_DAY,
    MONTHS,
    NoDataError,
    OutOfOrderError,
    day_of,
    month_of,
)
from .fuzzy import (
    CUMULATIVE_DOMINANT,
    RECENT_DOMINANT,
    DefuzzifyError,
    FuzzyOutput,
    LinguisticTerm,
    LinguisticVariable,
    RuleBase4x4,
    TermLabel,
    UniverseSpec,
    defuzzify_center_average,
    defuzzify_centroid,
    infer_mamdani_product,
    membership,
    standard_variable,
)
from .store import EvalStore, ReplayError, StudentRoster, replay

__version__ = "0.1.0"

__all__ = [
    "AppConfig",
    "ConfigError",
    "CUMULATIVE_DOMINANT",
    "DAYS_PER_MONTH",
    "DefuzzifyError",
    "EvalStore",
    "EvaluationRecord",
    "FdesEngine",
    "FdesState",
    "FuzzyOutput",
    "Indicator",
    "INDICATOR_LABELS",
    "IndicatorAccumulator",
    "LAST_DAY",
    "LinguisticTerm",
    "LinguisticVariable",
    "MONTHS",
    "NoDataError",
    "OutOfOrderError",
    "PsiSystem",
    "RECENT_DOMINANT",
    "ReplayError",
    "RuleBase4x4",
    "RuleCountReport",
    "StudentRoster",
    "TermLabel",
    "UniverseSpec",
    "day_of",
    "defuzzify_center_average",
    "defuzzify_centroid",
    "fold_open_loop",
    "infer_mamdani_product",
    "load_config",
    "membership",
    "month_of",
    "psi_eval",
    "replay",
    "rule_count",
    "standard_psi",
    "standard_variable",
]
