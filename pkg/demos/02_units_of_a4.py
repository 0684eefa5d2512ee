"""
The unit group of B(A4)
=======================

Units of a Burnside ring have ghost coordinates in {1, -1}. This script
finds them by brute force and then by the product formula over a basic
collection.
"""

from pbr import all_subgroups, builtin_group, full_collection, standard_basic
from pbr.burnside import (
    decomposition_check,
    matsuda_factors,
    matsuda_unit_count,
    matsuda_unit_generators,
    table_of_marks,
    units_bruteforce,
)

G = builtin_group("alt:4")
L = all_subgroups(G)
D = full_collection(L)

U = units_bruteforce(D)
print("|B(A4)^x| =", U.order)
for u in U.all_units:
    print("  ", u.label())

# S = {1, V4, A4}
V4 = next(N for N in L.normal_subgroups() if N.order == 4)
S = standard_basic(L, "with", V4)

# each H in S contributes the solutions of x^2 + 2x = 0 in a smaller ring
for H, E, nil in matsuda_factors(D, S):
    names = [L.label(c) for c in E]
    print(f"H of order {H.order:>2}: classes {names}, {len(nil)} solution(s)")
    if E.class_ids and H.order == 1:
        print("   marks", table_of_marks(E).as_lists())
        print("   solutions", [x.coeffs for x in nil])

print("count from the product formula:", matsuda_unit_count(D, S))
print("generators:", [g.label() for g in matsuda_unit_generators(D, S)])

# the ring splits along S
print(decomposition_check(D, S).computed)
