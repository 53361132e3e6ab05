"""Polynomial identities of associative algebras in positive characteristic."""

from ._core import (
    Algebra,
    Field,
    PivarError,
    Poly,
    algebra,
    algebra_from_text,
    certify,
    check_identities,
    commutator,
    degree_sets,
    engel_polynomial,
    is_engel,
    lie_chain,
    lie_word,
    tideal_member,
    valid_sigmas,
)

__all__ = [
    "Algebra",
    "Field",
    "PivarError",
    "Poly",
    "algebra",
    "algebra_from_text",
    "certify",
    "check_identities",
    "commutator",
    "degree_sets",
    "engel_polynomial",
    "is_engel",
    "lie_chain",
    "lie_word",
    "tideal_member",
    "valid_sigmas",
]
