"""Ramification of wild automorphisms of k((x)) and Lubin-Tate examples."""
from .finite_field import FieldElem, FieldSpec
from .lubin_tate import BaseRing, Kind, LTContext, construct_endomorphism, lt_reduce, reduced_automorphism
from .nottingham import Automorphism, BreakSequence, CharClass, i_sequence
from .power_series import PrecisionExhausted, Series
from .ramification import (
    Depth,
    FiltrationTable,
    PiecewiseLinearFn,
    breaks_rank2,
    phi_from_breaks,
    psi_eval,
    ram_index_rank2,
    rank_two_profile,
)

__all__ = [
    "Automorphism", "BaseRing", "BreakSequence", "CharClass", "Depth", "FieldElem", "FieldSpec",
    "FiltrationTable", "Kind", "LTContext", "PiecewiseLinearFn", "PrecisionExhausted", "Series",
    "breaks_rank2", "construct_endomorphism", "i_sequence", "lt_reduce", "phi_from_breaks", "psi_eval",
    "ram_index_rank2", "rank_two_profile", "reduced_automorphism",
]
