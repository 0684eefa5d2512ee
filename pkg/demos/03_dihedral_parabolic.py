"""
Parabolic collections of dihedral groups
========================================

For the dihedral group of order 2m with Coxeter generators tau and
sigma*tau, the parabolic subgroups are 1, the two reflection subgroups and
the whole group. Count the units of the partial Burnside ring they span.
"""

from pbr import all_subgroups, bs, builtin_group, parabolic_collection, standard_basic
from pbr.burnside import nil_square_set, table_of_marks, units_bruteforce

for m in range(2, 9):
    G = builtin_group(f"dihedral:{m}")
    L = all_subgroups(G)
    P = parabolic_collection(G)
    E = bs(P, standard_basic(L, "trivial"), G.trivial_subgroup())
    marks = table_of_marks(E).as_lists()
    nil = [x.coeffs for x in nil_square_set(E)]
    print(f"m={m}: {len(P)} classes, units {units_bruteforce(P).order}, marks {marks}, nil {nil}")

# m = 2 is the Klein four-group. Both reflection subgroups have index 2 and
# are normal, so x^2 + 2x = 0 picks up two extra solutions and the count is 8.
K = builtin_group("dihedral:2")
for u in units_bruteforce(parabolic_collection(K)).all_units:
    print("  ", u.label())
