"""Computational toolkit for groups generated by kneading automata."""

from .automaton import (
    Automaton,
    AutomatonError,
    KneadingParseError,
    KneadingSequence,
    automaton_from_kneading_sequence,
    classify,
    is_planar,
    kneading_sequence_of,
    parse_kneading_sequence,
    reduce_automaton,
)
from .growth import BadWordReport, GrowthTable, bound_chain, count_bad_words, enumerate_ball, eval_bad_bound
from .lengthfunc import Calculus, GoodnessCertificate, LengthBoundExceeded, WeightAssignment
from .treeaction import CapExceeded, apply, elements_equal, in_level_stabilizer, portrait, restrict, wreath_decompose
from .verify import CaseReport, Claim, run_case

__version__ = "0.1.0"

__all__ = [
    "Automaton", "AutomatonError", "KneadingParseError", "KneadingSequence",
    "automaton_from_kneading_sequence", "classify", "is_planar", "kneading_sequence_of",
    "parse_kneading_sequence", "reduce_automaton",
    "BadWordReport", "GrowthTable", "bound_chain", "count_bad_words", "enumerate_ball", "eval_bad_bound",
    "Calculus", "GoodnessCertificate", "LengthBoundExceeded", "WeightAssignment",
    "CapExceeded", "apply", "elements_equal", "in_level_stabilizer", "portrait", "restrict", "wreath_decompose",
    "CaseReport", "Claim", "run_case",
]
