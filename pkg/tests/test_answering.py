import random

import pytest

from dyadic import (
    BoundedChaseReasoner,
    ChaseBudget,
    TerminatingChaseReasoner,
    cert_eval_dyadic,
    certain_answers_chase,
    certain_answers_dyadic,
    complete_database,
    decompose,
    dp_cert_eval,
    load_example,
    parse_program,
    parse_query,
    recognize,
    run_chase,
)
from dyadic.decomposition import DyadicPair
from dyadic.errors import ArityMismatch, NotInDyadicClass, ReasonerInexact, UnsupportedClass
from dyadic.generators import random_database, random_dyadic_pair, random_ontology, random_query, schema_of
from dyadic.model import ConjunctiveQuery, Ontology, atom, const

TC = "E(a,b). E(b,c). E(X,Y) -> T(X,Y). E(X,Y), T(Y,Z) -> T(X,Z)."


def test_empty_hg_leaves_database_alone():
    o = parse_program("P(X) -> Q(X).").ontology
    d = frozenset({atom("P", "a")})
    done = complete_database(d, DyadicPair(Ontology(), o), TerminatingChaseReasoner())
    assert done.d_plus == d and not done.added


def test_single_aux_fact():
    o = parse_program("P(X), Q(X) -> R(X).").ontology
    d = frozenset({atom("P", "a"), atom("Q", "a"), atom("P", "b")})
    pair = decompose(o, "AfInds")
    done = complete_database(d, pair, TerminatingChaseReasoner())
    assert done.added == {atom("__aux_r1", "a")}


def test_transitive_closure():
    p = parse_program(TC)
    r = TerminatingChaseReasoner()
    assert cert_eval_dyadic(parse_query("?- : T(a,c)."), p.database, p.ontology, (), "AfInds", r)
    assert not cert_eval_dyadic(parse_query("?- : T(c,a)."), p.database, p.ontology, (), "AfInds", r)
    q = parse_query("?- X, Y : T(X,Y).")
    assert cert_eval_dyadic(q, p.database, p.ontology, ("a", "c"), "AfInds", r)
    ans = certain_answers_dyadic(q, p.database, p.ontology, "AfInds", r)
    assert {tuple(c.name for c in t) for t in ans} == {("a", "b"), ("b", "c"), ("a", "c")}


def test_pair_fixture_with_valid_split():
    p = load_example("dyadic_pair")
    o = p.ontology
    pair = DyadicPair(o.subset(["r1", "r2"]), o.subset(["r3", "r4", "r5", "r6"]), {}, "Guarded")
    r = TerminatingChaseReasoner()
    got = dp_cert_eval(p.queries[0], p.database, pair, (), r, validate=True)
    expected = certain_answers_chase(p.queries[0], p.database, o).holds
    assert got == expected is False


def test_invalid_pair_rejected_on_request():
    p = load_example("dyadic_pair")
    o = p.ontology
    pair = DyadicPair(o.subset(["r1", "r2", "r3"]), o.subset(["r4", "r5", "r6"]), {}, "Guarded")
    with pytest.raises(NotInDyadicClass):
        complete_database(p.database, pair, TerminatingChaseReasoner(), validate=True)


def test_in_class_means_plain_reasoner():
    o = parse_program("P(X) -> Q(X,Z). Q(X,Y) -> R(X).").ontology
    d = frozenset({atom("P", "a")})
    q = parse_query("?- X : R(X).")
    r = TerminatingChaseReasoner()
    direct = r.certain_answers(q, d, o)
    assert certain_answers_dyadic(q, d, o, "WeaklyAcyclic", r).tuples == direct.tuples


def test_errors():
    p = parse_program(TC)
    r = TerminatingChaseReasoner()
    q = parse_query("?- X, Y : T(X,Y).")
    with pytest.raises(ArityMismatch):
        cert_eval_dyadic(q, p.database, p.ontology, ("a",), "AfInds", r)
    with pytest.raises(ValueError):
        cert_eval_dyadic(ConjunctiveQuery((), (atom("__aux_r1", "a", "b"),)), p.database, p.ontology, (), "AfInds", r)
    loop = parse_program("R(X,Y) -> R(Y,Z). A(X), R(X,Y) -> B(X).").ontology
    d = frozenset({atom("R", "a", "b"), atom("A", "a")})
    with pytest.raises(UnsupportedClass):
        r.certain_answers(parse_query("?- : B(a)."), d, loop)
    bounded = BoundedChaseReasoner(ChaseBudget(100, 4))
    pair = DyadicPair(parse_program("A(X) -> H(X).").ontology, loop)
    with pytest.raises(ReasonerInexact):
        complete_database(d, pair, bounded)


def test_parse_error_for_aux_in_text():
    from dyadic.errors import ParseError
    with pytest.raises(ParseError):
        parse_query("?- : __aux_r1(a).")


def test_completion_matches_chase_projection_and_bound():
    rng = random.Random(41)
    r = TerminatingChaseReasoner()
    for _ in range(60):
        pair, schema = random_dyadic_pair(rng)
        d = random_database(rng, schema)
        full = run_chase(d, pair.union, ChaseBudget(20_000, 64), force=True)
        if not full.completed:
            continue
        done = complete_database(d, pair, r)
        hd = pair.sigma_hg.hdpred
        expected = {a for a in full.instance if a.predicate in hd}
        assert done.added == expected - d
        assert done.d_plus == d | done.added
        mu = max((a.arity for rule in pair.sigma_hg.rules for a in rule.head), default=0)
        assert len(done.added) <= len(hd) * len(const(d)) ** mu
        again = complete_database(d, pair, r, enumerate_candidates=True)
        assert again.d_plus == done.d_plus


def test_pipeline_on_random_ontologies_matches_full_chase():
    rng = random.Random(42)
    r = TerminatingChaseReasoner()
    checked = split = 0
    while checked < 80:
        o = random_ontology(rng, "general", max_rules=4)
        if recognize(o, "WeaklyAcyclic") or not recognize(o, "Dyadic-WeaklyAcyclic"):
            continue
        schema = schema_of(o)
        d = random_database(rng, schema)
        q = random_query(rng, schema)
        full = certain_answers_chase(q, d, o, ChaseBudget(20_000, 40), force=True)
        if not full.exact:
            continue
        pair = decompose(o, "WeaklyAcyclic")
        split += bool(pair.sigma_hg.rules)
        assert certain_answers_dyadic(q, d, o, "WeaklyAcyclic", r).tuples == full.tuples, f"{o}\n{d}\n{q}"
        checked += 1
    assert split == checked
