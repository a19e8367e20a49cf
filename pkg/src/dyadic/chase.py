"""Breadth-first chase with trigger-determined nulls.

The null invented for existential variable ``z`` of rule ``r`` under body
match ``h`` is ``Null(r, z, h|frontier)``.  Firing a trigger twice, or two
triggers agreeing on the frontier, therefore adds nothing new, the result
does not depend on processing order, and chases over sub-ontologies are
literally contained in chases over the full ontology.

Levels are computed semi-naively: a trigger contributes to level ``k`` when
its body image has maximum level ``k - 1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import UnboundedChase
from .homomorphism import AtomIndex, homomorphisms
from .model import Constant, Null, Ontology, const

DEFAULT_MAX_ATOMS = 100_000
DEFAULT_MAX_LEVEL = 64


class Status(enum.Enum):
    COMPLETED = "Completed"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass(frozen=True)
class ChaseBudget:
    max_atoms: int | None = DEFAULT_MAX_ATOMS
    max_level: int | None = DEFAULT_MAX_LEVEL

    def __post_init__(self):
        for value in (self.max_atoms, self.max_level):
            if value is not None and value < 0:
                raise ValueError("budget bounds must be non-negative")

    @property
    def unlimited(self):
        return self.max_atoms is None and self.max_level is None


UNLIMITED = ChaseBudget(None, None)


@dataclass(frozen=True)
class ChaseResult:
    instance: frozenset
    level: dict
    status: Status

    @property
    def completed(self):
        return self.status is Status.COMPLETED

    def ordered(self):
        """Atoms sorted by level, then predicate and arguments."""
        return sorted(self.instance, key=lambda a: (self.level[a], a.sort_key()))


def _fire(rule, binding):
    frontier = tuple((x.name, binding[x]) for x in rule.frontier)
    nulls = {z: Null(rule.id, z.name, frontier) for z in rule.exvars}
    mapping = {**binding, **nulls}
    return [a.substitute(mapping) for a in rule.head]


def run_chase(database, ontology: Ontology, budget: ChaseBudget = ChaseBudget(), *, force=False) -> ChaseResult:
    """Chase ``database`` with ``ontology`` until fixpoint or budget exhaustion.

    An unlimited budget is refused unless the ontology is recognised as
    chase-terminating or ``force`` is set.
    """
    if budget.unlimited and not force:
        from .recognizers import TERMINATING_CLASSES, recognize

        if not any(recognize(ontology, c) for c in TERMINATING_CLASSES):
            raise UnboundedChase(
                "unlimited chase requested for an ontology without a termination certificate")

    facts = list(dict.fromkeys(database))
    for a in facts:
        if not a.is_fact():
            raise ValueError(f"database atom {a} is not a fact")
    index = AtomIndex()
    level = {}
    for a in facts:
        index.add(a)
        level[a] = 0

    delta = AtomIndex(facts)
    k = 0
    status = Status.COMPLETED
    while len(delta):
        k += 1
        if budget.max_level is not None and k > budget.max_level:
            if _produces_new(ontology, index, delta, level, k):
                status = Status.BUDGET_EXHAUSTED
            break
        new = _round(ontology, index, delta, level, k)
        fresh = AtomIndex()
        for a in new:
            if budget.max_atoms is not None and len(index) >= budget.max_atoms:
                status = Status.BUDGET_EXHAUSTED
                break
            if index.add(a):
                level[a] = k
                fresh.add(a)
        if status is Status.BUDGET_EXHAUSTED:
            break
        delta = fresh
    return ChaseResult(frozenset(index), level, status)


def _round(ontology, index, delta, level, k):
    """New atoms of level ``k`` in deterministic order."""
    previous = k - 1

    def older(a):
        return level[a] < previous

    out = {}
    for rule in ontology.rules:
        n = len(rule.body)
        for i in range(n):
            if not delta.by_pred.get(rule.body[i].predicate):
                continue
            sources = [(index, older)] * i + [(delta, None)] + [(index, None)] * (n - i - 1)
            matches = list(homomorphisms(rule.body, sources))
            matches.sort(key=lambda h: tuple(a.substitute(h).sort_key() for a in rule.body))
            for h in matches:
                for a in _fire(rule, h):
                    if a not in index:
                        out[a] = None
    return list(out)


def _produces_new(ontology, index, delta, level, k):
    return bool(_round(ontology, index, delta, level, k))


def chase_bottom(result: ChaseResult, database) -> frozenset:
    """Null-free atoms of the chase built only from constants of the database."""
    domain = const(database)
    return frozenset(
        a for a in result.instance
        if all(isinstance(t, Constant) and t in domain for t in a.args)
    )


def instance_nulls(atoms):
    return {t for a in atoms for t in a.args if isinstance(t, Null)}


def format_instance(result: ChaseResult) -> str:
    from .parser import format_atom

    return "".join(f"{format_atom(a)}.  % level {result.level[a]}\n" for a in result.ordered())
