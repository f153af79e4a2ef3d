"""Covariant-contravariant simulation, its modal logic, and graphical representation of formulae."""

from .bivariant import (
    bar_signature,
    bi_equivalent,
    bi_satisfies,
    bi_simulates,
    hat_signature,
    is_representation,
    reconstruct_bivariant,
    rename_to_uniform,
    tilde_signature,
    transform_T,
    transform_T0,
    transform_Tplus,
    translate_formula,
)
from .characteristic import char_formula
from .errors import (
    CCError,
    DuplicateAction,
    ModalityMismatch,
    NotRepresentable,
    OmegaInBivariantTerm,
    ParseError,
    PreconditionViolated,
    SignatureMismatch,
    SnfExplosion,
    UnknownAction,
)
from .logic import enumerate_formulae, enumerate_terms, explain, satisfies
from .lts import Lts, build_lts, lts_from_json, transitions
from .normalform import (
    SNF_TOP,
    StrongNormalForm,
    UnarySnf,
    is_strong_normal_form,
    is_unary_snf,
    simplify,
    to_strong_normal_form,
)
from .representation import (
    RepresentationSet,
    consistency_witness,
    entails,
    equivalent,
    is_consistent,
    is_prime,
    represent,
    theta,
)
from .simulation import SimulationRelation, cc_equivalent, simulates, simulation_witness
from .syntax import (
    NIL,
    OMEGA,
    Signature,
    modal_depth,
    parse_formula,
    parse_signature,
    parse_term,
    print_formula,
    print_term,
)

__version__ = "0.1.0"
