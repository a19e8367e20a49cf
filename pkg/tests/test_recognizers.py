import pytest

from dyadic import classify_all, load_example, parse_program, recognize
from dyadic.errors import UnsupportedClass
from dyadic.model import Ontology
from dyadic.recognizers import BASE_CLASSES, RECOGNIZERS, base_class, dyadic_of


def onto(text):
    return parse_program(text).ontology


def test_empty_ontology_in_every_class():
    report = classify_all(Ontology())
    assert len(report) == 2 * len(RECOGNIZERS) == 24
    assert all(v.member for v in report.values())


def test_second_component_of_pair_fixture():
    o = load_example("dyadic_pair").ontology
    sigma_c = o.subset(["r4", "r5", "r6"])
    for c in ("Guarded", "Shy", "Ward"):
        assert recognize(sigma_c, c), c


def test_full_pair_fixture_is_guarded():
    assert recognize(load_example("dyadic_pair").ontology, "Guarded")


def test_guarded_witness():
    v = recognize(onto("P(X,Y), Q(Y,Z) -> R(X,Z)."), "Guarded")
    assert not v
    assert "{X,Y,Z}" in v.witness


def test_inclusion_dependency_is_in_every_class():
    report = classify_all(onto("P(X,Y) -> Q(Y,X)."))
    assert all(v.member for v in report.values())


def test_datalog_report():
    report = classify_all(onto("E(X,Y) -> T(X,Y). E(X,Y), T(Y,Z) -> T(X,Z)."))
    assert report["Datalog"] and report["WeaklyAcyclic"] and report["JointlyAcyclic"]
    assert not report["AfInds"] and report["Dyadic-AfInds"]


def test_problematic_fixture_is_not_shy():
    v = recognize(load_example("problematic_atoms").ontology, "Shy")
    assert not v and "Z3" in v.witness


def test_weak_and_joint_acyclicity_differ():
    # weakly cyclic but jointly acyclic: the null reaching P[1] never reaches S[1] in a join
    o = onto("P(X) -> R(X,Z). R(X,Y), S(Y) -> P(Y).")
    assert not recognize(o, "WeaklyAcyclic")
    assert recognize(o, "JointlyAcyclic")


def test_existential_cycle_rejected_by_both():
    o = onto("R(X,Y) -> R(Y,Z).")
    assert not recognize(o, "WeaklyAcyclic")
    assert not recognize(o, "JointlyAcyclic")


def test_sticky_and_linear():
    assert recognize(onto("P(X,Y), Q(Y) -> R(Y)."), "Sticky")
    assert not recognize(onto("P(X,Y), Q(Y) -> R(X)."), "Sticky")
    assert recognize(onto("P(X,X) -> R(X,Z)."), "Linear")
    assert not recognize(onto("P(X,X) -> R(X,Z)."), "Joinless")


def test_inclusion_dependencies_forbid_repetition():
    assert recognize(onto("P(X,Y) -> Q(Y,Z)."), "InclusionDependencies")
    assert not recognize(onto("P(X,X) -> Q(X)."), "InclusionDependencies")
    assert not recognize(onto("P(X) -> Q(X,X)."), "InclusionDependencies")


def test_afinds_requires_autonomy():
    assert recognize(onto("P(X) -> Q(X). P(X) -> R(X)."), "AfInds")
    assert not recognize(onto("P(X) -> Q(X). Q(X) -> R(X)."), "AfInds")
    assert not recognize(onto("P(X) -> Q(X,Z)."), "AfInds")


def test_weakly_guarded_versus_guarded():
    o = onto("P(X,Y), Q(Y,W) -> R(X,W).")
    assert not recognize(o, "Guarded")
    assert recognize(o, "WeaklyGuarded")


def test_ward():
    o = onto("A(X) -> R(Z,X). R(Y,X), B(X) -> S(Y).")
    assert recognize(o, "Ward")
    assert recognize(o, "Shy")


def test_dyadic_of_uses_main():
    o = load_example("problematic_atoms").ontology
    assert recognize(o, "Dyadic-WeaklyAcyclic")
    assert not recognize(o, "Dyadic-Shy")


def test_unknown_class():
    with pytest.raises(UnsupportedClass):
        recognize(Ontology(), "Protected")
    with pytest.raises(UnsupportedClass):
        base_class("Dyadic-Sticky-Join")
    assert dyadic_of("Linear") == "Dyadic-Linear"
    assert base_class("Dyadic-Linear") == "Linear"
    assert BASE_CLASSES[0] == "Datalog"


def test_verdict_is_cached_per_ontology():
    o = onto("P(X) -> Q(X).")
    assert recognize(o, "Linear") is recognize(o, "Linear")
