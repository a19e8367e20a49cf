"""Head-ground sets, dyadic pairs and the hg/main rewriting.

Each rule ``sigma`` with nonempty safe atoms is rewritten into

    hg(sigma):   s-atoms(sigma)                  -> __aux_<id>(bridge)
    main(sigma): __aux_<id>(bridge), p-atoms(sigma) -> head(sigma)

Rules without safe atoms go to the main part unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import analysis
from .errors import NotASubset, NotInDyadicClass
from .model import Atom, Ontology, Tgd, Variable, vars_of
from .recognizers import Verdict, base_class, recognize

AUX_PREFIX = "__aux_"


def aux_name(rule_id: str) -> str:
    return f"{AUX_PREFIX}{rule_id}"


def hg_rule_id(rule_id: str) -> str:
    return f"{rule_id}_hg"


@dataclass(frozen=True)
class HeadGroundCheck:
    holds: bool
    violated: tuple = ()  # property numbers 1-4
    witness: str | None = None

    def __bool__(self):
        return self.holds


def _as_rules(subset, ontology):
    rules = subset.rules if isinstance(subset, Ontology) else tuple(subset)
    out = []
    for r in rules:
        rid = r if isinstance(r, str) else r.id
        try:
            mine = ontology.rule(rid)
        except KeyError:
            raise NotASubset(f"rule {rid} is not part of the ontology") from None
        if not isinstance(r, str) and r.scoped(rid) != mine:
            raise NotASubset(f"rule {rid} differs from the ontology's rule with that id")
        out.append(mine)
    return out


def is_head_ground(subset, ontology: Ontology) -> HeadGroundCheck:
    """Check the four head-ground properties of ``subset`` w.r.t. ``ontology``.

    All violated properties are reported, in increasing order; the witness
    describes the first one.
    """
    rules = _as_rules(subset, ontology)
    ids = {r.id for r in rules}
    rest = [r for r in ontology.rules if r.id not in ids]
    classes = analysis.classify_variables(ontology)
    problems = {}

    for r in rules:
        if not r.is_datalog():
            problems.setdefault(1, f"rule {r.id} is not a datalog rule")
    for r in rules:
        bad = [x for x in vars_of(r.head)
               if x in r.exvars or not classes[(r.id, x)].harmless]
        if bad:
            problems.setdefault(2, f"rule {r.id}: head variable {bad[0]} is not harmless")
    heads = {p for r in rules for p in r.hdpred}
    bodies = {p for r in rules for p in r.bdpred}
    if heads & bodies:
        problems[3] = f"predicate {sorted(heads & bodies)[0]} is both a head and a body predicate"
    rest_heads = {p for r in rest for p in r.hdpred}
    if heads & rest_heads:
        problems[4] = f"head predicate {sorted(heads & rest_heads)[0]} is also defined outside the set"

    if not problems:
        return HeadGroundCheck(True)
    violated = tuple(sorted(problems))
    return HeadGroundCheck(False, violated, problems[violated[0]])


def _bridge_slots(rule, ontology):
    """Bridge variables with multiplicity: a bridge variable absent from the
    p-atoms and repeated n > 1 times in the head takes n slots."""
    split = analysis.split_atoms(rule, ontology)
    p_vars = set(vars_of(split.p_atoms))
    head_args = [t for a in rule.head for t in a.args]
    slots = []
    for x in analysis.bridge_vars(rule, ontology):
        n = head_args.count(x)
        slots.append((x, n if n > 1 and x not in p_vars else 1))
    return slots


def hg_rule(rule, ontology: Ontology) -> Tgd | None:
    rule = ontology.rule(rule if isinstance(rule, str) else rule.id)
    split = analysis.split_atoms(rule, ontology)
    if not split.s_atoms:
        return None
    args = tuple(x for x, n in _bridge_slots(rule, ontology) for _ in range(n))
    return Tgd(hg_rule_id(rule.id), split.s_atoms, (Atom(aux_name(rule.id), args),))


def _fresh(base, taken):
    k = 1
    while f"{base}_{k}" in taken:
        k += 1
    name = f"{base}_{k}"
    taken.add(name)
    return name


def main_rule(rule, ontology: Ontology) -> Tgd:
    rule = ontology.rule(rule if isinstance(rule, str) else rule.id)
    split = analysis.split_atoms(rule, ontology)
    if not split.s_atoms:
        return rule
    taken = {v.name for v in vars_of(rule.body + rule.head)}
    aux_args = []
    renames = {}  # variable -> list of fresh names, consumed in head order
    for x, n in _bridge_slots(rule, ontology):
        if n == 1:
            aux_args.append(x)
            continue
        fresh = [Variable(_fresh(x.name, taken), x.scope) for _ in range(n)]
        renames[x] = fresh
        aux_args.extend(fresh)
    head = []
    counters = {x: 0 for x in renames}
    for a in rule.head:
        args = []
        for t in a.args:
            if t in renames:
                args.append(renames[t][counters[t]])
                counters[t] += 1
            else:
                args.append(t)
        head.append(Atom(a.predicate, tuple(args)))
    body = (Atom(aux_name(rule.id), tuple(aux_args)),) + split.p_atoms
    return Tgd(rule.id, body, tuple(head))


def hg_ontology(ontology: Ontology) -> Ontology:
    def compute():
        rules = (hg_rule(r, ontology) for r in ontology.rules)
        return Ontology(tuple(r for r in rules if r is not None))

    return analysis._memo(ontology, "hg", compute)


def main_ontology(ontology: Ontology) -> Ontology:
    return analysis._memo(
        ontology, "main", lambda: Ontology(tuple(main_rule(r, ontology) for r in ontology.rules)))


@dataclass(frozen=True)
class DyadicPair:
    sigma_hg: Ontology
    sigma_c: Ontology
    aux_registry: dict = field(default_factory=dict, compare=False, hash=False)
    cls: str | None = None

    @property
    def union(self) -> Ontology:
        return Ontology(self.sigma_hg.rules + self.sigma_c.rules)


def is_dyadic_pair(pair: DyadicPair, cls: str | None = None) -> Verdict:
    cls = cls or pair.cls
    base = base_class(cls)
    union = pair.union
    check = is_head_ground(pair.sigma_hg, union)
    if not check:
        return Verdict(False, f"head-ground property {check.violated[0]} fails: {check.witness}")
    verdict = recognize(pair.sigma_c, base)
    if not verdict:
        return Verdict(False, f"second component not {base}: {verdict.witness}")
    return Verdict(True)


def decompose(ontology: Ontology, cls: str) -> DyadicPair:
    """Canonical dyadic pair: ``(empty, ontology)`` when already in the class,
    otherwise ``(hg(ontology), main(ontology))``."""
    base = base_class(cls)
    if recognize(ontology, base):
        return DyadicPair(Ontology(), ontology, {}, base)
    main = main_ontology(ontology)
    verdict = recognize(main, base)
    if not verdict:
        raise NotInDyadicClass(f"ontology is not in Dyadic-{base}: {verdict.witness}")
    hg = hg_ontology(ontology)
    user = set(ontology.schema)
    registry = {}
    for r in hg.rules:
        aux = r.head[0]
        assert aux.predicate not in user, f"auxiliary predicate {aux.predicate} is not fresh"
        registry[r.id[: -len("_hg")]] = (aux.predicate, aux.arity)
    return DyadicPair(hg, main, registry, base)
