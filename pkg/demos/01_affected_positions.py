"""Walk through the analyses on the problematic-atoms fixture.

Run with ``python3 demos/01_affected_positions.py``.
"""

from dyadic import affected_positions, bridge_vars, classify_variables, load_example, split_atoms
from dyadic.decomposition import hg_rule, main_rule

program = load_example("problematic_atoms")
onto = program.ontology
print("rules:")
for rule in onto.rules:
    print("  ", rule)

# where can nulls land, and which existential variable puts them there
aff = affected_positions(onto)
print("\naffected positions:")
for pos in sorted(aff.affected(), key=str):
    print(f"   {pos}: {', '.join(sorted(aff.names(pos)))}")

classes = classify_variables(onto)
print("\nvariable classes:")
for (rid, var), cls in sorted(classes.items(), key=lambda kv: (kv[0][0], kv[0][1].name)):
    print(f"   {rid} {var}: {cls.kind.value}")

r4 = onto.rule("r4")
split = split_atoms(r4, onto)
print("\nr4 body split")
print("   problematic:", ", ".join(map(str, split.p_atoms)))
print("   safe:       ", ", ".join(map(str, split.s_atoms)))
print("   bridge:     ", ", ".join(map(str, bridge_vars(r4, onto))))

# the safe part becomes a datalog rule feeding a fresh auxiliary predicate
print("\nrewriting of r4")
print("  ", hg_rule(r4, onto))
print("  ", main_rule(r4, onto))
