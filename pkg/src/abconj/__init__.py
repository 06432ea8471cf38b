"""Conjugacy decision and search in free abelian-by-infinite-cyclic groups."""

from .conjugacy import conjugacy, is_power_identity, matrix_order, solve_twisted_abelian
from .errors import DomainError, UndecidedAtPrecision, UsageError
from .group import (
    AbcGroup,
    GroupElement,
    collect,
    conjugate,
    inverse,
    length,
    make_group,
    multiply,
    power,
    random_element,
)
from .orbit import orbit

__all__ = [
    "AbcGroup",
    "DomainError",
    "GroupElement",
    "UndecidedAtPrecision",
    "UsageError",
    "collect",
    "conjugacy",
    "conjugate",
    "inverse",
    "is_power_identity",
    "length",
    "make_group",
    "matrix_order",
    "multiply",
    "orbit",
    "power",
    "random_element",
    "solve_twisted_abelian",
]
