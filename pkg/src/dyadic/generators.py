"""Seeded random ontologies, databases, queries and dyadic pairs.

Used by the property and acceptance tests.  Every generator takes a
``random.Random`` so a failing case can be replayed from its seed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decomposition import DyadicPair, is_dyadic_pair
from .model import Atom, ConjunctiveQuery, Constant, Ontology, Program, Tgd, Variable, vars_of
from .recognizers import recognize

CONSTANTS = tuple(Constant(c) for c in "abcde")


@dataclass(frozen=True)
class Schema:
    """Predicate names with their arities."""

    arity: dict

    @property
    def predicates(self):
        return sorted(self.arity)

    @classmethod
    def random(cls, rng, n_preds=4, max_arity=3, prefix="P", min_arity=1):
        return cls({f"{prefix}{i}": rng.randint(min_arity, max_arity) for i in range(n_preds)})

    def merged(self, other):
        return Schema({**self.arity, **other.arity})


def _var(name, rid):
    return Variable(name, rid)


def _atom(rng, pred, arity, pool, p_const=0.0, distinct=False):
    args = []
    for _ in range(arity):
        if rng.random() < p_const:
            args.append(rng.choice(CONSTANTS[:2]))
            continue
        choices = [v for v in pool if not (distinct and v in args)]
        args.append(rng.choice(choices))
    return Atom(pred, tuple(args))


def _head(rng, schema, body, rid, n_atoms, p_exist, p_const, preds=None, distinct=False):
    frontier = list(vars_of(body))
    fresh = [_var(f"Z{i}", rid) for i in range(3)]
    head = []
    for _ in range(n_atoms):
        pred = rng.choice(preds or schema.predicates)
        args = []
        for _ in range(schema.arity[pred]):
            r = rng.random()
            if r < p_const:
                args.append(rng.choice(CONSTANTS[:2]))
                continue
            pool = fresh if (r < p_const + p_exist or not frontier) else frontier
            if p_exist == 0:
                pool = frontier
            pool = [v for v in pool if not (distinct and v in args)]
            if not pool:
                # full rules fall back to constants, others to a fresh existential
                args.append(rng.choice(CONSTANTS[:2]) if p_exist == 0 else _var(f"Z{len(args) + 3}", rid))
                continue
            args.append(rng.choice(pool))
        head.append(Atom(pred, tuple(args)))
    return head


def random_rule(rng, schema, rid, kind="general", body_preds=None, head_preds=None):
    """One rule of the requested shape.

    kind: general, linear, guarded, datalog, inclusion, afinds.
    """
    pool = [_var(n, rid) for n in "XYUVW"[: rng.randint(2, 5)]]
    body_preds = body_preds or schema.predicates
    if kind in ("inclusion", "afinds"):
        pred = rng.choice(body_preds)
        body = [_atom(rng, pred, schema.arity[pred], pool + [_var(f"T{i}", rid) for i in range(3)],
                      p_const=0.1, distinct=True)]
        head = _head(rng, schema, body, rid, 1, 0.0 if kind == "afinds" else 0.3, 0.1,
                     preds=head_preds, distinct=True)
        return Tgd(rid, tuple(body), tuple(head))
    if kind == "linear":
        n_body = 1
    else:
        n_body = rng.randint(1, 3)
    body = []
    if kind == "guarded":
        pred = max(body_preds, key=lambda p: (schema.arity[p], rng.random()))
        guard = _atom(rng, pred, schema.arity[pred], pool)
        body.append(guard)
        pool = list(guard.variables) or pool
    while len(body) < n_body:
        pred = rng.choice(body_preds)
        body.append(_atom(rng, pred, schema.arity[pred], pool, p_const=0.1))
    if kind == "datalog":
        head = _head(rng, schema, body, rid, 1, 0.0, 0.1, preds=head_preds)
    else:
        head = _head(rng, schema, body, rid, rng.randint(1, 2), 0.3, 0.05, preds=head_preds)
    return Tgd(rid, tuple(body), tuple(head))


def random_ontology(rng, kind="general", n_rules=None, schema=None, max_rules=5, max_arity=3):
    schema = schema or Schema.random(rng, rng.randint(2, 5), max_arity)
    n_rules = n_rules or rng.randint(1, max_rules)
    if kind == "afinds":
        preds = schema.predicates
        k = rng.randint(1, max(1, len(preds) - 1))
        edb, idb = preds[:k], preds[k:] or preds[:k]
        if set(edb) == set(idb):
            extra = f"I{len(preds)}"
            schema = Schema({**schema.arity, extra: rng.randint(1, max_arity)})
            idb = [extra]
        rules = [random_rule(rng, schema, f"r{i + 1}", "afinds", edb, idb) for i in range(n_rules)]
        return Ontology(tuple(rules))
    rules = [random_rule(rng, schema, f"r{i + 1}", kind) for i in range(n_rules)]
    return Ontology(tuple(rules))


def random_database(rng, schema, n_facts=None, constants=CONSTANTS, max_facts=10):
    n_facts = rng.randint(1, max_facts) if n_facts is None else n_facts
    facts = set()
    for _ in range(n_facts):
        pred = rng.choice(schema.predicates)
        facts.add(Atom(pred, tuple(rng.choice(constants) for _ in range(schema.arity[pred]))))
    return frozenset(facts)


def random_query(rng, schema, max_atoms=3, max_outputs=2, n_vars=4, p_const=0.1):
    pool = [Variable(n) for n in "ABCDEFGH"[:n_vars]]
    body = []
    for _ in range(rng.randint(1, max_atoms)):
        pred = rng.choice(schema.predicates)
        body.append(_atom(rng, pred, schema.arity[pred], pool, p_const=p_const))
    used = list(vars_of(body))
    outputs = rng.sample(used, rng.randint(0, min(max_outputs, len(used))))
    return ConjunctiveQuery(tuple(outputs), tuple(body))


def schema_of(ontology, database=()):
    arity = dict(ontology.schema)
    for a in database:
        arity.setdefault(a.predicate, a.arity)
    return Schema(arity)


def random_program(rng, max_rules=4, max_facts=5, max_queries=2):
    schema = Schema.random(rng, rng.randint(1, 5), 3, min_arity=0)
    ontology = random_ontology(rng, "general", schema=schema, max_rules=max_rules) if rng.random() < 0.9 else Ontology()
    db = random_database(rng, schema, rng.randint(0, max_facts), constants=ODD_CONSTANTS)
    queries = tuple(random_query(rng, schema) for _ in range(rng.randint(0, max_queries)))
    return Program(tuple(sorted(db, key=lambda a: a.sort_key())), ontology, queries)


# constants that exercise quoting and numbers in round-trip tests
ODD_CONSTANTS = CONSTANTS + tuple(Constant(c) for c in ("42", "hello world", "Big", 'q"uote', "x_1"))


def random_weakly_acyclic(rng, schema, max_rules=4, tries=200):
    for _ in range(tries):
        onto = random_ontology(rng, "general", schema=schema, max_rules=max_rules)
        if recognize(onto, "WeaklyAcyclic"):
            return onto
    raise RuntimeError("could not sample a weakly acyclic ontology")


def random_dyadic_pair(rng, max_c_rules=4, max_hg_rules=3, tries=100):
    """A dyadic pair whose second component is weakly acyclic.

    Head-ground rule heads use fresh ``H`` predicates and only variables that
    also occur in an extensional ``E`` atom, so they are harmless; the second
    component may read the ``H`` predicates.
    """
    for _ in range(tries):
        edb = Schema.random(rng, rng.randint(1, 2), 2, prefix="E")
        hs = Schema.random(rng, rng.randint(1, max_hg_rules), 2, prefix="H")
        core = Schema.random(rng, rng.randint(1, 3), 2, prefix="P")
        c_schema = core.merged(edb)
        hg_rules = []
        for i in range(len(hs.arity)):
            rid = f"h{i + 1}"
            pool = [_var(n, rid) for n in "XYU"]
            e = rng.choice(edb.predicates)
            body = [_atom(rng, e, edb.arity[e], pool)]
            for _ in range(rng.randint(0, 2)):
                p = rng.choice(c_schema.predicates)
                body.append(_atom(rng, p, c_schema.arity[p], pool))
            safe = list(body[0].variables)
            h = hs.predicates[i]
            head = Atom(h, tuple(rng.choice(safe) for _ in range(hs.arity[h])))
            hg_rules.append(Tgd(rid, tuple(body), (head,)))
        full = c_schema.merged(hs)
        c_rules = []
        for i in range(rng.randint(1, max_c_rules)):
            body_preds = full.predicates
            c_rules.append(random_rule(rng, full, f"c{i + 1}", "general", body_preds, core.predicates))
        sigma_c = Ontology(tuple(c_rules))
        if not recognize(sigma_c, "WeaklyAcyclic"):
            continue
        pair = DyadicPair(Ontology(tuple(hg_rules)), sigma_c, {}, "WeaklyAcyclic")
        if is_dyadic_pair(pair):
            return pair, full
    raise RuntimeError("could not sample a dyadic pair")
