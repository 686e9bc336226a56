"""Exact-arithmetic toolkit for level-d mapping class groups of compact
non-orientable surfaces: homology actions of twists and crosscap slides,
congruence-subgroup membership, generating-set enumerators, and the
finite-group machinery (orbit closures, Schreier generators, subgroup
graphs, coset enumeration) used to verify them."""

from .homology import (
    H1Class,
    act,
    level_member,
    lift_obstruction,
    mod2_action,
    mod2_pairing,
    reduced_action,
    word_matrix,
)
from .intmat import IntMatrix, ModMatrix, congruence_member, elementary
from .ledger import CheckRecord, run_check, run_suite
from .words import MCGWord, Slide, TorelliTag, Twist, commutator, conjugate, parse, word

__version__ = "0.1.0"

__all__ = [
    "H1Class",
    "IntMatrix",
    "MCGWord",
    "ModMatrix",
    "CheckRecord",
    "Slide",
    "TorelliTag",
    "Twist",
    "act",
    "commutator",
    "congruence_member",
    "conjugate",
    "elementary",
    "level_member",
    "lift_obstruction",
    "mod2_action",
    "mod2_pairing",
    "parse",
    "reduced_action",
    "run_check",
    "run_suite",
    "word",
    "word_matrix",
]
