import random

import pytest

from dyadic import ChaseBudget, Status, chase_bottom, load_example, parse_program, run_chase
from dyadic.chase import UNLIMITED, format_instance, instance_nulls
from dyadic.errors import UnboundedChase
from dyadic.generators import random_database, random_ontology, schema_of
from dyadic.model import Null, Ontology, atom


def test_no_rules():
    d = frozenset({atom("P", "a")})
    r = run_chase(d, Ontology())
    assert r.instance == d and r.status is Status.COMPLETED
    assert chase_bottom(r, d) == d


def test_pair_fixture_chase():
    p = load_example("dyadic_pair")
    r = run_chase(p.database, p.ontology)
    assert r.completed
    text = format_instance(r)
    assert "H1(a).  % level 1" in text and "H2(a).  % level 1" in text
    preds = sorted(a.predicate for a in r.instance)
    assert preds == ["H1", "H2", "H3", "P", "Q", "R"]
    assert max(r.level.values()) == 3
    # R's first argument and H3's argument are different nulls, so r6 never fires
    assert not any(a.predicate == "S" for a in r.instance)
    assert chase_bottom(r, p.database) == {atom("P", "a"), atom("H1", "a"), atom("H2", "a")}


def test_level_budget_on_infinite_chase():
    o = parse_program("R(X,Y) -> R(Y,Z).").ontology
    d = frozenset({atom("R", "a", "b")})
    r = run_chase(d, o, ChaseBudget(max_atoms=None, max_level=3))
    assert r.status is Status.BUDGET_EXHAUSTED
    assert len(instance_nulls(r.instance)) == 3
    assert sorted(r.level.values()) == [0, 1, 2, 3]


def test_atom_budget():
    o = parse_program("R(X,Y) -> R(Y,Z).").ontology
    r = run_chase(frozenset({atom("R", "a", "b")}), o, ChaseBudget(max_atoms=5, max_level=None))
    assert r.status is Status.BUDGET_EXHAUSTED and len(r.instance) == 5


def test_level_budget_exactly_reached_counts_as_completed():
    o = parse_program("E(X,Y) -> T(X,Y).").ontology
    r = run_chase(frozenset({atom("E", "a", "b")}), o, ChaseBudget(max_level=1))
    assert r.completed


def test_unlimited_requires_certificate():
    o = parse_program("R(X,Y) -> R(Y,Z).").ontology
    with pytest.raises(UnboundedChase):
        run_chase(frozenset({atom("R", "a", "b")}), o, UNLIMITED)
    # a frontier-free rule is weakly acyclic and fires once
    o2 = parse_program("P(X) -> P(Z).").ontology
    r = run_chase(frozenset({atom("P", "a")}), o2, UNLIMITED)
    assert r.completed and len(r.instance) == 2


def test_database_must_be_ground():
    with pytest.raises(ValueError):
        run_chase([atom("P", "X")], Ontology())


def test_null_ids_follow_triggers():
    o = parse_program("P(X,Y) -> Q(X,Z).").ontology
    d = frozenset({atom("P", "a", "b"), atom("P", "a", "c")})
    r = run_chase(d, o)
    (q,) = [a for a in r.instance if a.predicate == "Q"]  # one null: frontier is X only
    assert q.args[1] == Null("r1", "Z", (("X", atom("P", "a").args[0]),))


def _random_case(rng):
    o = random_ontology(rng, rng.choice(["general", "guarded", "linear", "datalog"]))
    return o, random_database(rng, schema_of(o))


def test_levels_and_determinism():
    rng = random.Random(21)
    for _ in range(150):
        o, d = _random_case(rng)
        r1 = run_chase(d, o, ChaseBudget(2_000, 10), force=True)
        r2 = run_chase(set(d), Ontology(tuple(reversed(o.rules))), ChaseBudget(2_000, 10), force=True)
        if r1.completed:
            assert r1.instance == r2.instance
            assert r1.level == r2.level
        assert {a for a, k in r1.level.items() if k == 0} == set(d)
        assert set(d) <= r1.instance
        bottom = chase_bottom(r1, d)
        assert bottom <= r1.instance and not instance_nulls(bottom)


def test_monotone_in_database():
    rng = random.Random(22)
    checked = 0
    while checked < 100:
        o, d = _random_case(rng)
        big = d | random_database(rng, schema_of(o), max_facts=4)
        small = run_chase(d, o, ChaseBudget(3_000, 12), force=True)
        large = run_chase(big, o, ChaseBudget(3_000, 12), force=True)
        if not (small.completed and large.completed):
            continue
        assert small.instance <= large.instance
        checked += 1


def test_chase_is_a_model():
    rng = random.Random(23)
    from dyadic.homomorphism import AtomIndex, homomorphisms
    checked = 0
    while checked < 100:
        o, d = _random_case(rng)
        r = run_chase(d, o, ChaseBudget(400, 8), force=True)
        if not r.completed:
            continue
        index = AtomIndex(r.instance)
        for rule in o.rules:
            for h in homomorphisms(rule.body, index):
                # some extension of h maps the head into the instance
                assert next(homomorphisms(rule.head, index, dict(h)), None) is not None, rule
        checked += 1
