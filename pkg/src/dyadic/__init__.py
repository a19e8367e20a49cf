"""Ontological query answering with existential rules and dyadic pairs."""

from .analysis import (
    affected_positions,
    bridge_vars,
    classify_variables,
    dangerous_vars,
    dependency_graphs,
    harmful_vars,
    harmless_vars,
    marked_variables,
    split_atoms,
)
from .answering import (
    BoundedChaseReasoner,
    CReasoner,
    TerminatingChaseReasoner,
    cert_eval_dyadic,
    certain_answers_dyadic,
    certain_answers_pair,
    complete_database,
    dp_cert_eval,
)
from .chase import ChaseBudget, ChaseResult, Status, chase_bottom, run_chase
from .decomposition import (
    DyadicPair,
    decompose,
    hg_ontology,
    hg_rule,
    is_dyadic_pair,
    is_head_ground,
    main_ontology,
    main_rule,
)
from .examples import load_example
from .model import (
    Atom,
    ConjunctiveQuery,
    Constant,
    Null,
    Ontology,
    Position,
    Program,
    Tgd,
    Variable,
    atom,
    positions_of,
    rename_apart,
)
from .parser import parse_program, parse_query, serialize_program
from .query import Answers, certain_answers_chase, evaluate_cq
from .recognizers import BASE_CLASSES, classify_all, dyadic_of, recognize

__version__ = "0.1.0"
