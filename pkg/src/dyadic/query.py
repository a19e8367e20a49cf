"""Conjunctive query evaluation and chase-based certain answers."""

from __future__ import annotations

from dataclasses import dataclass

from .chase import ChaseBudget, run_chase
from .homomorphism import AtomIndex, homomorphisms
from .model import ConjunctiveQuery, Constant, Ontology


@dataclass(frozen=True)
class Answers:
    """Answer tuples plus whether they are known to be the exact certain answers."""

    tuples: frozenset
    exact: bool = True

    def __contains__(self, item):
        return _as_tuple(item) in self.tuples

    def __iter__(self):
        return iter(sorted(self.tuples, key=lambda t: tuple(c.name for c in t)))

    def __len__(self):
        return len(self.tuples)

    @property
    def holds(self):
        """Truth value of a boolean query."""
        return () in self.tuples


def _as_tuple(values):
    return tuple(v if isinstance(v, Constant) else Constant(str(v)) for v in values)


def evaluate_cq(query: ConjunctiveQuery, instance) -> frozenset:
    """All constant tuples ``t`` with a homomorphism from the body mapping the outputs to ``t``."""
    index = instance if isinstance(instance, AtomIndex) else AtomIndex(instance)
    out = set()
    for h in homomorphisms(query.body, index):
        t = tuple(h[x] for x in query.output)
        if all(isinstance(c, Constant) for c in t):
            out.add(t)
    return frozenset(out)


def holds(query: ConjunctiveQuery, instance) -> bool:
    index = instance if isinstance(instance, AtomIndex) else AtomIndex(instance)
    return next(homomorphisms(query.body, index), None) is not None


def certain_answers_chase(query, database, ontology: Ontology,
                          budget: ChaseBudget = ChaseBudget(), *, force=False) -> Answers:
    """Evaluate over the chase; exact iff the chase completed.

    Under an exhausted budget the answers are a sound under-approximation.
    """
    result = run_chase(database, ontology, budget, force=force)
    return Answers(evaluate_cq(query, result.instance), result.completed)


def is_certain_answer(query, database, ontology, values, budget=ChaseBudget()):
    """Membership test through the boolean query ``q(values)``."""
    boolean = query.bind(_as_tuple(values))
    return certain_answers_chase(boolean, database, ontology, budget)
