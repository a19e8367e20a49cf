"""Terms, atoms, rules, ontologies and queries.

All objects are immutable.  Rule and query bodies are stored as tuples with
duplicates removed in first-occurrence order, so iteration is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Union


@dataclass(frozen=True)
class Constant:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Variable:
    """A rule or query variable; ``scope`` is the id of the owning rule."""

    name: str
    scope: str | None = None

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Null:
    """A labelled null determined by the trigger that invented it.

    Two nulls are equal iff they come from the same rule, the same
    existential variable and the same frontier binding.
    """

    rule_id: str
    var: str
    binding: tuple = ()  # ((frontier var name, Term), ...)

    def __str__(self):
        parts = []
        for _, value in self.binding:
            parts.append(f"[{value}]" if isinstance(value, Null) else str(value))
        suffix = "_" + "+".join(parts) if parts else ""
        return f"_:{self.rule_id}_{self.var}{suffix}"


Term = Union[Constant, Variable, Null]


def term_key(term):
    """Total order on terms: constants, then nulls, then variables."""
    if isinstance(term, Constant):
        return (0, term.name)
    if isinstance(term, Null):
        return (1, term.rule_id, term.var, tuple((n, term_key(v)) for n, v in term.binding))
    return (2, term.name, term.scope or "")


@dataclass(frozen=True)
class Position:
    predicate: str
    index: int  # 1-based

    def __str__(self):
        return f"{self.predicate}[{self.index}]"


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple = ()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    @property
    def arity(self):
        return len(self.args)

    @cached_property
    def variables(self):
        return tuple(dict.fromkeys(t for t in self.args if isinstance(t, Variable)))

    @cached_property
    def constants(self):
        return tuple(dict.fromkeys(t for t in self.args if isinstance(t, Constant)))

    @cached_property
    def nulls(self):
        return tuple(dict.fromkeys(t for t in self.args if isinstance(t, Null)))

    def is_fact(self):
        return all(isinstance(t, Constant) for t in self.args)

    def positions_of(self, term):
        return [Position(self.predicate, i + 1) for i, t in enumerate(self.args) if t == term]

    def substitute(self, mapping: Mapping):
        return Atom(self.predicate, tuple(mapping.get(t, t) for t in self.args))

    def sort_key(self):
        return (self.predicate, tuple(term_key(t) for t in self.args))

    def __str__(self):
        return f"{self.predicate}({','.join(str(t) for t in self.args)})"


def _dedup(atoms):
    return tuple(dict.fromkeys(atoms))


def vars_of(atoms: Iterable[Atom]):
    """Variables of a conjunction, in first-occurrence order."""
    out = {}
    for a in atoms:
        for v in a.variables:
            out[v] = None
    return tuple(out)


@dataclass(frozen=True)
class Tgd:
    """An existential rule ``body -> exists exvars . head``.

    Head variables that do not occur in the body are existential.
    """

    id: str
    body: tuple
    head: tuple

    def __post_init__(self):
        object.__setattr__(self, "body", _dedup(self.body))
        object.__setattr__(self, "head", _dedup(self.head))
        if not self.body or not self.head:
            raise ValueError(f"rule {self.id}: body and head must be nonempty")
        for a in self.body + self.head:
            if a.nulls:
                raise ValueError(f"rule {self.id}: nulls are not allowed in rules")

    @cached_property
    def uvars(self):
        return vars_of(self.body)

    @cached_property
    def exvars(self):
        body = set(self.uvars)
        return tuple(v for v in vars_of(self.head) if v not in body)

    @cached_property
    def frontier(self):
        head = set(vars_of(self.head))
        return tuple(v for v in self.uvars if v in head)

    @property
    def hdpred(self):
        return frozenset(a.predicate for a in self.head)

    @property
    def bdpred(self):
        return frozenset(a.predicate for a in self.body)

    def is_datalog(self):
        return not self.exvars and len(self.head) == 1

    def body_positions(self, var):
        return [p for a in self.body for p in a.positions_of(var)]

    def head_positions(self, var):
        return [p for a in self.head for p in a.positions_of(var)]

    def scoped(self, scope=None):
        """Tag every variable with ``scope`` (defaults to the rule id)."""
        scope = self.id if scope is None else scope
        mapping = {v: Variable(v.name, scope) for v in vars_of(self.body + self.head)}
        if all(v == w for v, w in mapping.items()):
            return self
        return Tgd(self.id, tuple(a.substitute(mapping) for a in self.body),
                   tuple(a.substitute(mapping) for a in self.head))

    def with_id(self, new_id):
        return Tgd(new_id, self.body, self.head).scoped()

    def __str__(self):
        body = ", ".join(map(str, self.body))
        head = ", ".join(map(str, self.head))
        ex = f"exists {','.join(map(str, self.exvars))} " if self.exvars else ""
        return f"{self.id}: {body} -> {ex}{head}"


def check_arities(atoms: Iterable[Atom], schema: dict | None = None):
    """Record predicate arities in ``schema``; raise ArityMismatch on conflict."""
    from .errors import ArityMismatch

    schema = {} if schema is None else schema
    for a in atoms:
        expected = schema.setdefault(a.predicate, a.arity)
        if expected != a.arity:
            raise ArityMismatch(a.predicate, a.arity, expected)
    return schema


@dataclass(frozen=True)
class Ontology:
    """An ordered set of rules, renamed apart on construction."""

    rules: tuple = ()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        rules = tuple(self.rules)
        ids = [r.id for r in rules]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate rule ids in {ids}")
        object.__setattr__(self, "rules", tuple(r.scoped() for r in rules))
        check_arities(a for r in self.rules for a in r.body + r.head)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def __str__(self):
        return "\n".join(map(str, self.rules))

    def rule(self, rule_id):
        for r in self.rules:
            if r.id == rule_id:
                return r
        raise KeyError(rule_id)

    def subset(self, rule_ids):
        wanted = set(rule_ids)
        return Ontology(tuple(r for r in self.rules if r.id in wanted))

    @cached_property
    def schema(self):
        """Predicate name to arity, in first-occurrence order."""
        return check_arities(a for r in self.rules for a in r.body + r.head)

    @property
    def arity(self):
        return max(self.schema.values(), default=0)

    @property
    def hdpred(self):
        return frozenset(p for r in self.rules for p in r.hdpred)

    @property
    def bdpred(self):
        return frozenset(p for r in self.rules for p in r.bdpred)

    @property
    def exvars(self):
        return tuple(v for r in self.rules for v in r.exvars)

    @property
    def constants(self):
        return frozenset(c for r in self.rules for a in r.body + r.head for c in a.constants)


def rename_apart(rules) -> Ontology:
    """Return an ontology in which no variable name is shared by two rules.

    A name used by several rules is suffixed with the 1-based position of
    each rule using it (``X`` becomes ``X1``, ``X2``, ...).  Ontologies whose
    rules already use disjoint names come back unchanged.
    """
    given = rules
    rules = tuple(rules.rules if isinstance(rules, Ontology) else rules)
    users = {}
    for r in rules:
        for v in vars_of(r.body + r.head):
            users.setdefault(v.name, set()).add(r.id)
    clashing = {n for n, ids in users.items() if len(ids) > 1}
    if not clashing:
        return given if isinstance(given, Ontology) else Ontology(rules)
    taken = set(users)
    out = []
    for k, r in enumerate(rules, 1):
        mapping = {}
        for v in vars_of(r.body + r.head):
            if v.name in clashing:
                name = f"{v.name}{k}"
                while name in taken:
                    name += "_"
                taken.add(name)
                mapping[v] = Variable(name, v.scope)
        out.append(Tgd(r.id, tuple(a.substitute(mapping) for a in r.body),
                       tuple(a.substitute(mapping) for a in r.head)))
    return Ontology(tuple(out))


def positions_of(ontology: Ontology):
    return {Position(p, i) for p, n in ontology.schema.items() for i in range(1, n + 1)}


@dataclass(frozen=True)
class ConjunctiveQuery:
    """``<output> <- exists y . body``; existential variables are implicit."""

    output: tuple
    body: tuple

    def __post_init__(self):
        object.__setattr__(self, "output", tuple(self.output))
        object.__setattr__(self, "body", _dedup(self.body))
        if not self.body:
            raise ValueError("query body must be nonempty")
        if len(set(self.output)) != len(self.output):
            raise ValueError("output variables must be distinct")
        body_vars = set(vars_of(self.body))
        missing = [v for v in self.output if v not in body_vars]
        if missing:
            raise ValueError(f"output variables {list(map(str, missing))} do not occur in the body")
        if any(a.nulls for a in self.body):
            raise ValueError("nulls are not allowed in queries")

    @property
    def existential(self):
        out = set(self.output)
        return tuple(v for v in vars_of(self.body) if v not in out)

    @property
    def is_boolean(self):
        return not self.output

    def bind(self, values):
        """The boolean query obtained by replacing output variables with constants."""
        values = tuple(v if isinstance(v, Constant) else Constant(str(v)) for v in values)
        if len(values) != len(self.output):
            from .errors import ArityMismatch

            raise ArityMismatch("<query>", len(values), len(self.output))
        mapping = dict(zip(self.output, values))
        return ConjunctiveQuery((), tuple(a.substitute(mapping) for a in self.body))

    def __str__(self):
        return f"<{','.join(map(str, self.output))}> <- {', '.join(map(str, self.body))}"


@dataclass(frozen=True)
class Program:
    database: tuple = ()
    ontology: Ontology = field(default_factory=Ontology)
    queries: tuple = ()


def database(facts: Iterable[Atom]) -> frozenset:
    """Validate and freeze a set of facts."""
    facts = frozenset(facts)
    for a in facts:
        if not a.is_fact():
            raise ValueError(f"{a} is not a fact")
    return facts


def dom(atoms: Iterable[Atom]):
    return {t for a in atoms for t in a.args}


def const(atoms: Iterable[Atom]):
    return {t for a in atoms for t in a.args if isinstance(t, Constant)}


def atom(predicate, *args):
    """Convenience constructor: uppercase-initial strings become variables."""
    terms = []
    for t in args:
        if isinstance(t, str):
            t = Variable(t) if t[:1].isupper() else Constant(t)
        terms.append(t)
    return Atom(predicate, tuple(terms))
