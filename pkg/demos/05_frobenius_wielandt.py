"""
The Frobenius-Wielandt map
==========================

alpha sends B(C_n), n = |G|, to B(G) so that the mark of alpha(x) at K is
the mark of x at the cyclic subgroup of order |K|. Units go to units; when
G is 2-seminilpotent they land among the normal classes.
"""

from pbr import builtin_group, fw_alpha
from pbr.burnside import basis, ghost, one
from pbr.corpus import ORDER_42
from pbr.groups import is_nilpotent
from pbr.morphisms import imgfw_check, imgfw_counterexample_check, is_seminilpotent

G = builtin_group("sym:3")
alpha = fw_alpha(G)
print("matrix of alpha for S3:")
for row in alpha.matrix:
    print("  ", row)

src = alpha.source_collection
half = next(c for c in src if src.lattice.class_order(c) == 3)
u = one(src) - basis(src, half)
print(u.label(), "->", alpha.apply(u).label(), "ghost", ghost(alpha.apply(u)))
print(imgfw_check(G).to_dict())

# A4 has no subgroup of index 2, and the image leaves the normal classes
A = builtin_group("alt:4")
print("A4 2-seminilpotent:", bool(is_seminilpotent(A, 2, 1)))
print(imgfw_counterexample_check(A).witness)

# a non-nilpotent group where the image still behaves
H = builtin_group(ORDER_42)
print(H.order, "nilpotent:", is_nilpotent(H), "2-seminilpotent:", bool(is_seminilpotent(H, 2, 1)))
print(imgfw_check(H).status)
