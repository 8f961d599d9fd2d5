"""Desk-scale verification of non-solvable conjugate-generation claims in finite groups."""

__version__ = "0.1.0"

from .atlas import GroupSpec, build, parse_group_spec
from .conjugacy import class_survey, conjugacy_class, solvable_radical
from .group import PermutationGroup, is_solvable

__all__ = [
    "__version__", "GroupSpec", "build", "parse_group_spec", "PermutationGroup", "is_solvable",
    "class_survey", "conjugacy_class", "solvable_radical",
]
