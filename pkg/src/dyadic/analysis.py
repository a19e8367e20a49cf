"""Static analyses of an ontology.

Affected positions are computed per existential variable: the set of
positions invaded by ``z`` is the least set containing the head positions of
``z`` and closed under propagation through frontier variables whose body
occurrences are all invaded by ``z``.  Results are memoised on the ontology.
"""

from __future__ import annotations

import enum
from collections.abc import Mapping
from dataclasses import dataclass

import networkx as nx

from .model import Ontology, Tgd, Variable, positions_of, vars_of


def _memo(ontology, key, compute):
    cache = ontology._cache
    if key not in cache:
        cache[key] = compute()
    return cache[key]


class AffectedMap(Mapping):
    """Position -> frozenset of existential variables invading it."""

    def __init__(self, sets, positions):
        self._sets = {p: frozenset(sets.get(p, ())) for p in positions}

    def __getitem__(self, position):
        return self._sets.get(position, frozenset())

    def __iter__(self):
        return iter(self._sets)

    def __len__(self):
        return len(self._sets)

    def affected(self):
        return {p for p, s in self._sets.items() if s}

    def nonaffected(self):
        return {p for p, s in self._sets.items() if not s}

    def names(self, position):
        return {v.name for v in self[position]}

    def __repr__(self):
        items = ", ".join(f"{p}: {{{','.join(sorted(v.name for v in s))}}}"
                          for p, s in sorted(self._sets.items(), key=lambda kv: (kv[0].predicate, kv[0].index))
                          if s)
        return f"AffectedMap({items})"


def invaded_positions(ontology: Ontology, z: Variable):
    """Positions that are ``z``-affected."""
    owner = next(r for r in ontology.rules if z in r.exvars)
    invaded = set(owner.head_positions(z))
    changed = True
    while changed:
        changed = False
        for rule in ontology.rules:
            for x in rule.frontier:
                if all(p in invaded for p in rule.body_positions(x)):
                    new = set(rule.head_positions(x)) - invaded
                    if new:
                        invaded |= new
                        changed = True
    return invaded


def affected_positions(ontology: Ontology) -> AffectedMap:
    def compute():
        sets = {}
        for z in ontology.exvars:
            for p in invaded_positions(ontology, z):
                sets.setdefault(p, set()).add(z)
        return AffectedMap(sets, positions_of(ontology))

    return _memo(ontology, "affected", compute)


class Kind(enum.Enum):
    HARMLESS = "harmless"
    HARMFUL = "harmful"
    DANGEROUS = "dangerous"


@dataclass(frozen=True)
class VariableClass:
    kind: Kind
    exvars: frozenset = frozenset()

    @property
    def harmless(self):
        return self.kind is Kind.HARMLESS

    @property
    def harmful(self):
        # dangerous variables are harmful too
        return self.kind is not Kind.HARMLESS

    @property
    def dangerous(self):
        return self.kind is Kind.DANGEROUS


def classify_variables(ontology: Ontology):
    """Map ``(rule id, variable)`` to its VariableClass for every body variable."""

    def compute():
        aff = affected_positions(ontology)
        out = {}
        for rule in ontology.rules:
            frontier = set(rule.frontier)
            for x in rule.uvars:
                sets = [aff[p] for p in rule.body_positions(x)]
                common = frozenset.intersection(*sets)
                if not common:
                    cls = VariableClass(Kind.HARMLESS)
                elif x in frontier:
                    cls = VariableClass(Kind.DANGEROUS, common)
                else:
                    cls = VariableClass(Kind.HARMFUL, common)
                out[(rule.id, x)] = cls
        return out

    return _memo(ontology, "classes", compute)


def _select(ontology, test, rule=None):
    classes = classify_variables(ontology)
    rule_id = None if rule is None else _rule(ontology, rule).id
    return {x for (rid, x), c in classes.items() if test(c) and rule_id in (None, rid)}


def harmless_vars(ontology, rule=None):
    return _select(ontology, lambda c: c.harmless, rule)


def harmful_vars(ontology, rule=None):
    return _select(ontology, lambda c: c.harmful, rule)


def dangerous_vars(ontology, rule=None):
    return _select(ontology, lambda c: c.dangerous, rule)


def variable_class(ontology, rule, var) -> VariableClass:
    return classify_variables(ontology)[(_rule(ontology, rule).id, var)]


def _rule(ontology: Ontology, rule) -> Tgd:
    if isinstance(rule, Tgd):
        return ontology.rule(rule.id)
    return ontology.rule(rule)


@dataclass(frozen=True)
class AtomSplit:
    rule_id: str
    p_atoms: tuple
    s_atoms: tuple


def split_atoms(rule, ontology: Ontology) -> AtomSplit:
    """Split a body into problematic atoms and safe atoms.

    Problematic atoms are the connected components, over shared harmful
    variables, of the atoms holding a dangerous variable.
    """
    rule = _rule(ontology, rule)

    def compute():
        classes = classify_variables(ontology)
        harmful = {x for x in rule.uvars if classes[(rule.id, x)].harmful}
        dangerous = {x for x in rule.uvars if classes[(rule.id, x)].dangerous}
        graph = nx.Graph()
        graph.add_nodes_from(range(len(rule.body)))
        for i, a in enumerate(rule.body):
            for j in range(i + 1, len(rule.body)):
                if harmful.intersection(a.variables, rule.body[j].variables):
                    graph.add_edge(i, j)
        seeds = [i for i, a in enumerate(rule.body) if dangerous.intersection(a.variables)]
        problematic = set()
        for i in seeds:
            problematic |= nx.node_connected_component(graph, i)
        p = tuple(a for i, a in enumerate(rule.body) if i in problematic)
        s = tuple(a for i, a in enumerate(rule.body) if i not in problematic)
        return AtomSplit(rule.id, p, s)

    return _memo(ontology, ("split", rule.id), compute)


def bridge_vars(rule, ontology: Ontology):
    """Variables shared by p-atoms and s-atoms plus harmless frontier variables of s-atoms.

    Ordered by first occurrence in the body.
    """
    rule = _rule(ontology, rule)
    split = split_atoms(rule, ontology)
    p_vars = set(vars_of(split.p_atoms))
    s_vars = set(vars_of(split.s_atoms))
    frontier = set(rule.frontier)
    classes = classify_variables(ontology)
    chosen = (p_vars & s_vars) | {
        x for x in s_vars if x in frontier and classes[(rule.id, x)].harmless
    }
    return tuple(x for x in rule.uvars if x in chosen)


def marked_variables(ontology: Ontology):
    """Sticky marking: set of ``(rule id, variable)`` pairs."""

    def compute():
        marked = set()
        for rule in ontology.rules:
            head_vars = set(vars_of(rule.head))
            marked |= {(rule.id, x) for x in rule.uvars if x not in head_vars}
        changed = True
        while changed:
            changed = False
            marked_positions = {
                p
                for rule in ontology.rules
                for x in rule.uvars
                if (rule.id, x) in marked
                for p in rule.body_positions(x)
            }
            for rule in ontology.rules:
                for x in rule.frontier:
                    if (rule.id, x) in marked:
                        continue
                    if any(p in marked_positions for p in rule.head_positions(x)):
                        marked.add((rule.id, x))
                        changed = True
        return frozenset(marked)

    return _memo(ontology, "marked", compute)


@dataclass(frozen=True)
class DependencyGraphs:
    """``label`` has position nodes and arcs carrying a ``labels`` set of
    ``"forall"``/``"exists"``; ``existential`` has existential-variable nodes."""

    label: nx.DiGraph
    existential: nx.DiGraph

    def exists_arcs(self):
        return {(u, v) for u, v, d in self.label.edges(data=True) if "exists" in d["labels"]}

    def forall_arcs(self):
        return {(u, v) for u, v, d in self.label.edges(data=True) if "forall" in d["labels"]}


def _add_arc(graph, u, v, label):
    if graph.has_edge(u, v):
        graph[u][v]["labels"].add(label)
    else:
        graph.add_edge(u, v, labels={label})


def dependency_graphs(ontology: Ontology) -> DependencyGraphs:
    def compute():
        label = nx.DiGraph()
        label.add_nodes_from(sorted(positions_of(ontology), key=lambda p: (p.predicate, p.index)))
        for rule in ontology.rules:
            ex_positions = [p for z in rule.exvars for p in rule.head_positions(z)]
            for x in rule.frontier:
                for src in rule.body_positions(x):
                    for dst in rule.head_positions(x):
                        _add_arc(label, src, dst, "forall")
                    for dst in ex_positions:
                        _add_arc(label, src, dst, "exists")
        existential = nx.DiGraph()
        existential.add_nodes_from(ontology.exvars)
        classes = classify_variables(ontology)
        for rule in ontology.rules:
            for x in rule.frontier:
                for z in classes[(rule.id, x)].exvars:
                    for y in rule.exvars:
                        existential.add_edge(z, y)
        return DependencyGraphs(label, existential)

    return _memo(ontology, "graphs", compute)
