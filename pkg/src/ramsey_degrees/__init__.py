"""Finite approximations of topological Ramsey spaces and their Ramsey degrees."""

from .degree_calc import closed_form, compositions, cross_verify, degree_from_k, psi, psi_inv
from .errors import RamseyDegreesError
from .seq_orders import NondecSeq, enumerate_upto, lex_less, prec_less, rank_full, unrank_full
from .space_core import Family, FiniteApprox, SpaceId, audit_axioms, restrict

__version__ = "0.1.0"

__all__ = [
    "Family",
    "FiniteApprox",
    "NondecSeq",
    "RamseyDegreesError",
    "SpaceId",
    "audit_axioms",
    "closed_form",
    "compositions",
    "cross_verify",
    "degree_from_k",
    "enumerate_upto",
    "lex_less",
    "prec_less",
    "psi",
    "psi_inv",
    "rank_full",
    "restrict",
    "unrank_full",
]
