"""Head-ground subsets of the head-ground fixture.

{r2, r3} is head-ground and cannot be extended; the report lists every
property each extension breaks.
"""

from dyadic import is_head_ground, load_example

onto = load_example("head_ground").ontology
for rule in onto.rules:
    print(rule)
print()

base = is_head_ground(["r2", "r3"], onto)
print("{r2,r3} head-ground:", base.holds)
for extra in ("r1", "r4", "r5"):
    check = is_head_ground(["r2", "r3", extra], onto)
    props = ", ".join(map(str, check.violated))
    print(f"add {extra}: violates {props}  ({check.witness})")
