"""Finite partial actions of groupoids, their skew rings over prime fields, and checks."""

from .action import FinitePartialAction, random_instance
from .errors import CapExceeded, SGAError, ValidationError
from .fnalgebra import FnElement, InducedAction, PrimeField, induced_action
from .groupoid import Groupoid
from .ideals import Phi, Psi, all_ideals, is_graded_ideal
from .linalg import Subspace
from .skew import SkewElement, SkewRing, quotient_skew_ring
from .transformation import TransGroupoid, check_steinberg_iso
from .ultragraph import Ultragraph, check_KR, condition_K
from .verify import VerificationReport, run_suite

__all__ = [
    "CapExceeded",
    "FinitePartialAction",
    "FnElement",
    "Groupoid",
    "InducedAction",
    "Phi",
    "PrimeField",
    "Psi",
    "SGAError",
    "SkewElement",
    "SkewRing",
    "Subspace",
    "TransGroupoid",
    "Ultragraph",
    "ValidationError",
    "VerificationReport",
    "all_ideals",
    "check_KR",
    "check_steinberg_iso",
    "condition_K",
    "induced_action",
    "is_graded_ideal",
    "quotient_skew_ring",
    "random_instance",
    "run_suite",
]
