"""DatalogMTL with negation: approximation-fixpoint reasoning and an HT cross-check."""
from .engines import (
    EngineConfig,
    ModelReport,
    differential_stable_check,
    enumerate_stable2_bounded,
    is_stable2,
    is_stable_ht,
    kripke_kleene_model,
    well_founded_model,
)
from .errors import BudgetExceeded, MtlogError, NonTermination, ParseError, SafetyError
from .operators import make_instance
from .parser import parse_dataset, parse_program
from .semantics import Interpretation, ThreeValuedInterpretation

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "EngineConfig",
    "Interpretation",
    "ModelReport",
    "MtlogError",
    "NonTermination",
    "ParseError",
    "SafetyError",
    "ThreeValuedInterpretation",
    "differential_stable_check",
    "enumerate_stable2_bounded",
    "is_stable2",
    "is_stable_ht",
    "kripke_kleene_model",
    "make_instance",
    "parse_dataset",
    "parse_program",
    "well_founded_model",
]
