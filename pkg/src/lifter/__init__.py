"""Interpreter for LiFtEr, a language of induction heuristics.

An assertion is evaluated against a proof goal, a proof context (constant
definitions and their derived induction rules) and the arguments of one
``induct`` invocation, and yields a boolean.
"""

from lifter.context import ConstDef, ProofContext, is_recursive, load_context, load_context_file, rules_derived_from
from lifter.errors import LifterError
from lifter.evaluator import Evaluator, InductArgs, evaluate, format_invocation, numb_domain, parse_invocation
from lifter.parser import load_assertion_file, parse_assertion
from lifter.suggest import Candidate, Limits, batch_evaluate, enumerate_candidates, score_candidate, suggest
from lifter.syntax import check_scopes, pretty_print
from lifter.terms import Goal, Occurrence, load_goal, parse_term, print_term

__all__ = [
    "ConstDef", "ProofContext", "is_recursive", "load_context", "load_context_file", "rules_derived_from",
    "LifterError", "Evaluator", "InductArgs", "evaluate", "format_invocation", "numb_domain",
    "parse_invocation", "load_assertion_file", "parse_assertion", "Candidate", "Limits", "batch_evaluate",
    "enumerate_candidates", "score_candidate", "suggest", "check_scopes", "pretty_print", "Goal",
    "Occurrence", "load_goal", "parse_term", "print_term",
]
