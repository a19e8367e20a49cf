"""Query answering over dyadic pairs.

``complete_database`` saturates the database with the ground consequences of
the head-ground component by repeatedly asking a reasoner for the second
component for the certain answers of each head-ground rule body.  Certain
answers over the pair are then the reasoner's certain answers over the
completed database.
"""

from __future__ import annotations

import abc
import itertools
from dataclasses import dataclass

from .chase import UNLIMITED, ChaseBudget, run_chase
from .decomposition import AUX_PREFIX, DyadicPair, decompose, is_dyadic_pair
from .errors import ArityMismatch, NotInDyadicClass, ReasonerInexact, UnsupportedClass
from .model import ConjunctiveQuery, Constant, Ontology, const, vars_of
from .query import Answers, evaluate_cq
from .recognizers import BASE_CLASSES, TERMINATING_CLASSES, recognize


class CReasoner(abc.ABC):
    """Certain-answer oracle for ontologies of some classes."""

    supported_classes: tuple = ()

    @abc.abstractmethod
    def certain_answers(self, query: ConjunctiveQuery, database, ontology: Ontology) -> Answers:
        """Certain answers; ``exact`` must be True only when they are exact."""

    def supports(self, ontology: Ontology) -> bool:
        return any(recognize(ontology, c) for c in self.supported_classes)


class TerminatingChaseReasoner(CReasoner):
    """Exact reasoner for ontologies whose chase is known to terminate."""

    supported_classes = TERMINATING_CLASSES

    def certain_answers(self, query, database, ontology):
        if not self.supports(ontology):
            raise UnsupportedClass(
                "ontology is in none of the chase-terminating classes "
                + ", ".join(self.supported_classes))
        result = run_chase(database, ontology, UNLIMITED)
        return Answers(evaluate_cq(query, result.instance), True)


class BoundedChaseReasoner(CReasoner):
    """Reasoner for any ontology; exact only when the chase completes within budget."""

    supported_classes = BASE_CLASSES

    def __init__(self, budget: ChaseBudget = ChaseBudget()):
        self.budget = budget

    def supports(self, ontology):
        return True

    def certain_answers(self, query, database, ontology):
        result = run_chase(database, ontology, self.budget, force=True)
        return Answers(evaluate_cq(query, result.instance), result.completed)


@dataclass(frozen=True)
class CompletedDatabase:
    d_plus: frozenset
    added: frozenset
    iterations: int


def _rule_query(rule):
    """The query ``<x> <- body`` of a head-ground rule ``body -> H(x)``."""
    outputs = vars_of(rule.head)
    return ConjunctiveQuery(outputs, rule.body), outputs


def _candidate_answers(query, d_plus, sigma_c, reasoner):
    """Answer set by testing every candidate tuple separately."""
    domain = sorted(const(d_plus) | sigma_c.constants | const(query.body), key=lambda c: c.name)
    out = set()
    for values in itertools.product(domain, repeat=len(query.output)):
        answers = reasoner.certain_answers(query.bind(values), d_plus, sigma_c)
        if not answers.exact:
            raise ReasonerInexact("reasoner could not guarantee exact certain answers")
        if answers.holds:
            out.add(values)
    return out


def complete_database(database, pair: DyadicPair, reasoner: CReasoner, *,
                      enumerate_candidates=False, validate=False) -> CompletedDatabase:
    """Saturate ``database`` with the ground atoms the head-ground rules derive.

    Each pass evaluates every head-ground rule body as a query against the
    current completion and the second component; passes repeat until they
    add nothing.  With ``enumerate_candidates`` every candidate tuple is
    checked with its own boolean query instead of one answer-set call.
    """
    if validate:
        verdict = is_dyadic_pair(pair)
        if not verdict:
            raise NotInDyadicClass(f"not a dyadic pair: {verdict.witness}")
    if pair.sigma_hg.rules and not reasoner.supports(pair.sigma_c):
        raise UnsupportedClass(f"{type(reasoner).__name__} does not support the second component")
    d = frozenset(database)
    d_plus = d
    iterations = 0
    queries = [(r, *_rule_query(r)) for r in pair.sigma_hg.rules]
    while True:
        iterations += 1
        derived = set()
        for rule, query, outputs in queries:
            if enumerate_candidates:
                tuples = _candidate_answers(query, d_plus, pair.sigma_c, reasoner)
            else:
                answers = reasoner.certain_answers(query, d_plus, pair.sigma_c)
                if not answers.exact:
                    raise ReasonerInexact("reasoner could not guarantee exact certain answers")
                tuples = answers.tuples
            for t in tuples:
                mapping = dict(zip(outputs, t))
                derived.update(a.substitute(mapping) for a in rule.head)
        candidate = d | derived
        if candidate > d_plus:
            d_plus = candidate
            continue
        return CompletedDatabase(d_plus, d_plus - d, iterations)


def certain_answers_pair(query, database, pair: DyadicPair, reasoner: CReasoner, **kwargs) -> Answers:
    completed = complete_database(database, pair, reasoner, **kwargs)
    return reasoner.certain_answers(query, completed.d_plus, pair.sigma_c)


def dp_cert_eval(query, database, pair: DyadicPair, values, reasoner: CReasoner, **kwargs) -> bool:
    """Is ``values`` a certain answer of ``query`` over the pair?"""
    values = tuple(v if isinstance(v, Constant) else Constant(str(v)) for v in values)
    if len(values) != len(query.output):
        raise ArityMismatch("<answer tuple>", len(values), len(query.output))
    completed = complete_database(database, pair, reasoner, **kwargs)
    answers = reasoner.certain_answers(query.bind(values), completed.d_plus, pair.sigma_c)
    if not answers.exact:
        raise ReasonerInexact("reasoner could not guarantee exact certain answers")
    return answers.holds


def _check_user_query(query):
    for a in query.body:
        if a.predicate.startswith(AUX_PREFIX):
            raise ValueError(f"queries may not mention auxiliary predicate {a.predicate}")


def cert_eval_dyadic(query, database, ontology: Ontology, values, cls: str, reasoner: CReasoner, **kwargs) -> bool:
    """Decide a certain answer for an ontology in ``Dyadic-<cls>``."""
    _check_user_query(query)
    pair = decompose(ontology, cls)
    return dp_cert_eval(query, database, pair, values, reasoner, **kwargs)


def certain_answers_dyadic(query, database, ontology: Ontology, cls: str, reasoner: CReasoner, **kwargs) -> Answers:
    """All certain answers of ``query`` for an ontology in ``Dyadic-<cls>``."""
    _check_user_query(query)
    pair = decompose(ontology, cls)
    return certain_answers_pair(query, database, pair, reasoner, **kwargs)

