"""Workbench for conjectural modal logics over three-valued semantics."""

from .enumeration import FormulaBound, enumerate_formulas, iter_formulas
from .kleene import EvalMode, TruthValue
from .model import (
    KripkeModel,
    ModelError,
    PartialValuation,
    World,
    check_c_propagation,
    close_euclidean,
    close_serial,
    close_transitive,
    defined_set,
    evaluate,
    frame_properties,
    is_definedness_preserving,
)
from .modelfile import format_model, parse_model_text, read_model, write_model
from .pairs import (
    DefinedModalPair,
    WorldClass,
    classify_pair,
    classify_valuation,
    classify_world,
    enumerate_worlds,
    pair_to_model,
    realize_system,
)
from .settlement import (
    Settlement,
    SettlementError,
    apply_sequence,
    apply_settlement,
    check_commutation,
    check_preservation,
    independent,
)
from .syntax import ParseError, modal_depth, parse, subformulas, to_text
from .systems import SYSTEMS, AxiomSchema, SchemaStatus, check_schema, check_system, collapse_check

__version__ = "0.1.0"
