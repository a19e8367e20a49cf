"""Membership tests for the syntactic classes of existential rules.

``recognize(ontology, name)`` returns a Verdict; when the verdict is negative
its witness names the first violation in rule order.  ``Dyadic-<C>`` accepts
an ontology when it, or its main-rule rewriting, belongs to ``C``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from . import analysis
from .errors import UnsupportedClass
from .model import Ontology, vars_of

DYADIC_PREFIX = "Dyadic-"


@dataclass(frozen=True)
class Verdict:
    member: bool
    witness: str | None = None

    def __bool__(self):
        return self.member


YES = Verdict(True)


def _no(rule, why):
    return Verdict(False, f"rule {rule.id} ({rule}): {why}")


def _per_rule(ontology, check):
    for rule in ontology.rules:
        why = check(rule)
        if why:
            return _no(rule, why)
    return YES


def is_datalog(ontology):
    def check(rule):
        if rule.exvars:
            return f"existential variables {_names(rule.exvars)}"
        if len(rule.head) != 1:
            return f"{len(rule.head)} head atoms"

    return _per_rule(ontology, check)


def _repeats(atom):
    seen = set()
    for t in atom.args:
        if t in atom.variables and t in seen:
            return t
        seen.add(t)
    return None


def is_inclusion_dependencies(ontology):
    def check(rule):
        if len(rule.body) != 1:
            return f"{len(rule.body)} body atoms"
        if len(rule.head) != 1:
            return f"{len(rule.head)} head atoms"
        for a in rule.body + rule.head:
            x = _repeats(a)
            if x is not None:
                return f"variable {x} repeated in {a}"

    return _per_rule(ontology, check)


def is_af_inds(ontology):
    verdict = is_inclusion_dependencies(ontology)
    if not verdict:
        return verdict
    bodies = ontology.bdpred
    for rule in ontology.rules:
        if rule.exvars:
            return _no(rule, f"existential variables {_names(rule.exvars)}")
        shared = rule.hdpred & bodies
        if shared:
            return _no(rule, f"head predicate {sorted(shared)[0]} occurs in a rule body")
    return YES


def is_joinless(ontology):
    def check(rule):
        for x in rule.uvars:
            holders = [a for a in rule.body if x in a.variables]
            if len(holders) > 1:
                return f"variable {x} joins {holders[0]} and {holders[1]}"
            if holders[0].args.count(x) > 1:
                return f"variable {x} repeated in {holders[0]}"

    return _per_rule(ontology, check)


def is_linear(ontology):
    return _per_rule(ontology, lambda r: f"{len(r.body)} body atoms" if len(r.body) > 1 else None)


def is_guarded(ontology):
    def check(rule):
        uvars = set(rule.uvars)
        if not any(set(a.variables) == uvars for a in rule.body):
            return f"no body atom contains all of {_names(rule.uvars)}"

    return _per_rule(ontology, check)


def is_weakly_guarded(ontology):
    affected = analysis.affected_positions(ontology).affected()

    def check(rule):
        # a variable is affected when all its body positions are affected
        wanted = {x for x in rule.uvars if all(p in affected for p in rule.body_positions(x))}
        if not any(wanted <= set(a.variables) for a in rule.body):
            return f"no body atom contains all affected variables {_names(_ordered(rule, wanted))}"

    return _per_rule(ontology, check)


def is_sticky(ontology):
    marked = analysis.marked_variables(ontology)

    def check(rule):
        for x in rule.uvars:
            occurrences = sum(a.args.count(x) for a in rule.body)
            if occurrences > 1 and (rule.id, x) in marked:
                return f"marked variable {x} occurs {occurrences} times in the body"

    return _per_rule(ontology, check)


def is_weakly_acyclic(ontology):
    graphs = analysis.dependency_graphs(ontology)
    component = {}
    for k, scc in enumerate(nx.strongly_connected_components(graphs.label)):
        for node in scc:
            component[node] = k
    for u, v in sorted(graphs.exists_arcs(), key=lambda e: (str(e[0]), str(e[1]))):
        if u == v or component[u] == component[v]:
            return Verdict(False, f"cycle through the existential arc {u} -> {v}")
    return YES


def is_jointly_acyclic(ontology):
    graph = analysis.dependency_graphs(ontology).existential
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        return YES
    return Verdict(False, "existential graph cycle " + " -> ".join(str(u) for u, _ in cycle))


def is_shy(ontology):
    classes = analysis.classify_variables(ontology)

    def check(rule):
        for x in rule.uvars:
            holders = [a for a in rule.body if x in a.variables]
            if len(holders) > 1 and not classes[(rule.id, x)].harmless:
                return f"variable {x} occurs in {len(holders)} body atoms and is not harmless"
        dangerous = [x for x in rule.uvars if classes[(rule.id, x)].dangerous]
        for z, w in combinations(dangerous, 2):
            apart = any(z in a.variables and w in b.variables
                        for a in rule.body for b in rule.body if a != b)
            shared = classes[(rule.id, z)].exvars & classes[(rule.id, w)].exvars
            if apart and shared:
                return f"dangerous variables {z} and {w} in different atoms are both invaded by {_names(shared)}"

    return _per_rule(ontology, check)


def is_ward(ontology):
    classes = analysis.classify_variables(ontology)

    def check(rule):
        dangerous = {x for x in rule.uvars if classes[(rule.id, x)].dangerous}
        if not dangerous:
            return None
        for i, a in enumerate(rule.body):
            if not dangerous <= set(a.variables):
                continue
            rest = vars_of(rule.body[:i] + rule.body[i + 1:])
            if all(classes[(rule.id, x)].harmless for x in a.variables if x in rest):
                return None
        return f"no ward for dangerous variables {_names(_ordered(rule, dangerous))}"

    return _per_rule(ontology, check)


RECOGNIZERS = {
    "Datalog": is_datalog,
    "AfInds": is_af_inds,
    "InclusionDependencies": is_inclusion_dependencies,
    "Joinless": is_joinless,
    "Linear": is_linear,
    "Guarded": is_guarded,
    "WeaklyGuarded": is_weakly_guarded,
    "Sticky": is_sticky,
    "WeaklyAcyclic": is_weakly_acyclic,
    "JointlyAcyclic": is_jointly_acyclic,
    "Shy": is_shy,
    "Ward": is_ward,
}

BASE_CLASSES = tuple(RECOGNIZERS)

# classes whose chase (with trigger-determined nulls) always terminates
TERMINATING_CLASSES = ("Datalog", "AfInds", "WeaklyAcyclic", "JointlyAcyclic")


def dyadic_of(name: str) -> str:
    base_class(name)
    return DYADIC_PREFIX + name


def base_class(name: str) -> str:
    """Validate a class name and return it without any ``Dyadic-`` prefix."""
    base = name[len(DYADIC_PREFIX):] if name.startswith(DYADIC_PREFIX) else name
    if base not in RECOGNIZERS:
        raise UnsupportedClass(f"unknown class {name!r}; known: {', '.join(BASE_CLASSES)}")
    return base


def recognize(ontology: Ontology, name: str) -> Verdict:
    base = base_class(name)
    key = ("recognize", name)
    cache = ontology._cache
    if key in cache:
        return cache[key]
    if name.startswith(DYADIC_PREFIX):
        from .decomposition import main_ontology

        verdict = recognize(ontology, base)
        if not verdict:
            main = recognize(main_ontology(ontology), base)
            verdict = main if main else Verdict(
                False, f"not {base}: {verdict.witness}; main rules not {base}: {main.witness}")
    else:
        verdict = RECOGNIZERS[base](ontology)
    cache[key] = verdict
    return verdict


def classify_all(ontology: Ontology) -> dict:
    """Verdicts for every base class followed by every ``Dyadic-`` class."""
    report = {name: recognize(ontology, name) for name in BASE_CLASSES}
    report.update({dyadic_of(name): recognize(ontology, dyadic_of(name)) for name in BASE_CLASSES})
    return report


def _names(variables):
    return "{" + ",".join(str(v) for v in variables) + "}"


def _ordered(rule, variables):
    return [x for x in rule.uvars if x in variables]
