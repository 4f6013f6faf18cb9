"""Conjugate (CSS) code pairs over finite fields, a small exact simulator for
the quantum codes they define, and the conjugate-code cryptographic scheme."""

from .conjugate_pair import (
    ConjugatePair,
    QuotientCode,
    expand_pair,
    load_pair,
    make_pair,
    message_representatives,
    quotient_correctable,
    save_pair,
)
from .crypto_scheme import (
    ChannelSpec,
    SchemeInstance,
    SimulationReport,
    decrypt,
    encrypt,
    error_probabilities,
    fidelity_accounting,
    leakage_bound,
    simulate,
)
from .errors import CodingError
from .finite_field import Basis, FieldElement, FieldParams, dual_basis
from .linear_codes import LinearCode, decode_coset
from .quantum_sim import PauliChannel
from .symplectic import EnlargedErrorSet, SympCode, css_lift, symp_form

__all__ = [
    "Basis", "ChannelSpec", "CodingError", "ConjugatePair", "EnlargedErrorSet",
    "FieldElement", "FieldParams", "LinearCode", "PauliChannel", "QuotientCode",
    "SchemeInstance", "SimulationReport", "SympCode", "css_lift", "decode_coset",
    "decrypt", "dual_basis", "encrypt", "error_probabilities", "expand_pair",
    "fidelity_accounting", "leakage_bound", "load_pair", "make_pair",
    "message_representatives", "quotient_correctable", "save_pair", "simulate",
    "symp_form",
]
