"""Sequent-calculus toolchain for classical first-order logic with functions.

A step-by-step proof checker in which the student writes out each rule's
result, finite-model semantics with countermodel search, a bounded prover
usable as a testing oracle, a batch exam grader, and a local check service.
"""

from .calculus import (
    Complete,
    Incomplete,
    Invalid,
    ProofState,
    Rule,
    RuleApplication,
    Sequent,
    applicable_rules,
    check_script,
    validate_step,
)
from .parser import FormulaError, parse_formula, parse_script, parse_sequent
from .printer import print_formula, print_script, print_sequent
from .prover import GaveUp, prove_bounded
from .script import ParseOutcome, ProofScript
from .semantics import (
    Countermodel,
    Interpretation,
    Limits,
    ValidUpTo,
    check_validity,
    eval_formula,
    eval_term,
)
from .syntax import (
    App,
    BoundVar,
    Con,
    Dis,
    Exi,
    Formula,
    Imp,
    Neg,
    Pred,
    Term,
    Uni,
    constants_of,
    instantiate,
    shift,
)

__version__ = "0.1.0"

__all__ = [
    "App",
    "BoundVar",
    "Complete",
    "Con",
    "Countermodel",
    "Dis",
    "Exi",
    "Formula",
    "FormulaError",
    "GaveUp",
    "Imp",
    "Incomplete",
    "Interpretation",
    "Invalid",
    "Limits",
    "Neg",
    "ParseOutcome",
    "Pred",
    "ProofScript",
    "ProofState",
    "Rule",
    "RuleApplication",
    "Sequent",
    "Term",
    "Uni",
    "ValidUpTo",
    "applicable_rules",
    "check_script",
    "check_validity",
    "constants_of",
    "eval_formula",
    "eval_term",
    "instantiate",
    "parse_formula",
    "parse_script",
    "parse_sequent",
    "print_formula",
    "print_script",
    "print_sequent",
    "prove_bounded",
    "shift",
    "validate_step",
]
