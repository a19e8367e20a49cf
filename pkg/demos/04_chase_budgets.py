"""Chase termination, budgets and exactness flags.

R(X,Y) -> R(Y,Z) builds an infinite chain, so only a budgeted chase is
allowed; its answers are flagged inexact.  A rule without frontier fires once
and the chase terminates.
"""

from dyadic import ChaseBudget, certain_answers_chase, parse_program, parse_query, run_chase
from dyadic.chase import format_instance
from dyadic.errors import UnboundedChase

chain = parse_program("R(a,b). R(X,Y) -> R(Y,Z).")
result = run_chase(chain.database, chain.ontology, ChaseBudget(max_atoms=None, max_level=3))
print(format_instance(result), end="")
print("status:", result.status.value)

try:
    run_chase(chain.database, chain.ontology, ChaseBudget(None, None))
except UnboundedChase as err:
    print("unlimited chase refused:", err)

answers = certain_answers_chase(parse_query("?- X : R(X,Y)."), chain.database, chain.ontology,
                                ChaseBudget(max_atoms=50, max_level=5))
print("answers", [t[0].name for t in answers], "exact:", answers.exact)

once = parse_program("P(a). P(X) -> P(Z).")
result = run_chase(once.database, once.ontology, ChaseBudget(None, None))
print()
print(format_instance(result), end="")
print("status:", result.status.value)
