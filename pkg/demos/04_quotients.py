"""
Quotients and surjections
=========================

Subgroups containing N form a collection whose Burnside ring is that of
G/N. The isomorphism is checked on marks and on every structure constant.
"""

from pbr import all_subgroups, builtin_group, full_collection, quotient_group, quotient_iso, surjection_iso
from pbr.burnside import basis, multiply_cosets, table_of_marks
from pbr.morphisms import matsuda_44_check

G = builtin_group("sym:4")
L = all_subgroups(G)
V4 = next(N for N in L.normal_subgroups() if N.order == 4)

iso = quotient_iso(G, V4)
Q = iso.target.group
print("S4 / V4 has order", Q.order, "and", len(iso.target), "subgroup classes")
for k, v in sorted(iso.class_map.items()):
    print(f"  {L.label(k):>6} -> {iso.target.lattice.label(v)}")
print(table_of_marks(iso.source).as_lists())
print(table_of_marks(iso.target).as_lists())

# same thing through the projection map
_, pi = quotient_group(G, V4)
s = surjection_iso(pi, full_collection(L))
x = basis(s.source, s.source.class_ids[0])
print(s.apply(multiply_cosets(x, x)) == multiply_cosets(s.apply(x), s.apply(x)))

# counting units through a surjection
C = builtin_group("cyclic:6")
LC = all_subgroups(C)
_, f = quotient_group(C, next(N for N in LC.normal_subgroups() if N.order == 3))
r = matsuda_44_check(f, full_collection(LC))
print(r.status, r.computed["left"], "=", r.computed["image_units"], "*",
      [fac["nil_square_size"] for fac in r.computed["factors"] if fac["used"]])
