"""Inquisitive and dependence-logic semantics over finite models, with a
definability closure engine and undefinability verification."""

from .syntax import (
    ALL,
    BOT,
    D,
    D_PLUS,
    HOLE1,
    HOLE2,
    INQ,
    INQ_MINUS,
    INQ_PLUS,
    INQ_TENSOR,
    SIGNATURES,
    TOP,
    Atom,
    Compound,
    Connective,
    DepAtom,
    Formula,
    Hole,
    LanguageSignature,
    NegAtom,
    SubstitutionIllFormed,
    Template,
    atom,
    conj,
    constancy,
    dep,
    free_letters,
    gor,
    implies,
    is_classical,
    is_valid_context,
    neg,
    neg_atom,
    node_count,
    normalize_questions,
    question,
    rename_letters,
    substitute,
    tensor,
    well_formed,
)
from .parsing import (
    FormatError,
    ParseError,
    SignatureError,
    SourceSpan,
    model_to_dict,
    parse_formula,
    parse_model,
    parse_template,
    render,
    render_template,
)
from .semantics import (
    MAX_WORLDS,
    Model,
    ModelMismatch,
    Proposition,
    canonical_dep_model,
    canonical_impl_model,
    check_dep_triviality,
    classical_truth,
    dep_atom_proposition,
    downward_close,
    equivalent_in,
    equivalent_upto,
    format_proposition,
    prop_and,
    prop_bot,
    prop_implies,
    prop_neg,
    prop_or,
    prop_question,
    prop_tensor,
    prop_top,
    proposition,
    support_mask,
    supports,
)
from .closure import (
    CapExceeded,
    ClosureResult,
    DepAtomsNotTrivial,
    GeneratorEntry,
    GeneratorSet,
    LetterClash,
    NonUniformFreshAtoms,
    SemanticOpSet,
    generators_for,
    ops_for,
    semantic_closure,
    term_size,
)
from .verify import (
    EnumerationReport,
    UndefinabilityReport,
    check_singleton_property,
    cross_check,
    enumerate_templates,
    verify_globalor_undefinability,
    verify_implication_undefinability,
)

__version__ = "0.1.0"
