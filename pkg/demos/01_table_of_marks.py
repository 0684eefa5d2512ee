"""
Tables of marks
===============

Build a permutation group, enumerate its subgroup classes and print the
table of marks of the full collection.
"""

from pbr import all_subgroups, builtin_group, full_collection, table_of_marks

# A4 acting on four points
G = builtin_group("alt:4")
L = all_subgroups(G)
print(G, "has", len(L.subgroups), "subgroups in", L.n_classes, "classes")

for c in range(L.n_classes):
    print(f"  {L.label(c):>6}  order {L.class_order(c):>2}  size {L.class_size(c)}",
          "normal" if L.is_normal_class(c) else "")

# rows are K, columns are H; entry = number of cosets gH fixed by K
D = full_collection(L)
M = table_of_marks(D)
for row in M.as_lists():
    print(" ".join(f"{x:3d}" for x in row))

# upper triangular, so the determinant is the product of the diagonal
print("diagonal", M.diagonal(), "det", M.determinant())


# Ghost coordinates turn multiplication into a pointwise product.
from pbr.burnside import basis, ghost, multiply_cosets, unghost

x = basis(D, 1)                  # [G/C2]
y = multiply_cosets(x, x)
print(x.label(), "squared is", y.label())
print("ghost", ghost(x), "->", ghost(y))
print("back from ghost:", unghost(D, ghost(y)).label())

# not every integer vector is a ghost: the first coordinate needs 12 | ...
print(unghost(D, (1, 0, 0, 0, 0)))
