"""Unextendable symmetrized-weight-composition isometries over matrix-module alphabets."""

from .construction import AlphabetSpec, Certificate, construct_counterexample, min_m_search
from .gf import FieldSpec, field_for_q, field_make
from .verify import verify_certificate

__all__ = ["AlphabetSpec", "Certificate", "FieldSpec", "construct_counterexample", "field_for_q",
           "field_make", "min_m_search", "verify_certificate"]
