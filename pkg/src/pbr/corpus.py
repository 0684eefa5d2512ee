"""Named group specs used by the verification suites and the tests."""

# C7 ⋊ C3: x -> 2x mod 7 normalizes the 7-cycle
C7_C3 = 'perm:"(1 2 3 4 5 6 7), (2 3 5)(4 7 6)"'
ORDER_42 = f"prod({C7_C3},cyclic:2)"

CYCLIC = [f"cyclic:{n}" for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 18, 20, 21, 24)]
DIHEDRAL = [f"dihedral:{m}" for m in range(2, 9)]
OTHERS = [
    "quaternion:8",
    "sym:3",
    "sym:4",
    "alt:4",
    C7_C3,
    "prod(cyclic:2,cyclic:2)",
    "prod(cyclic:2,cyclic:4)",
    "prod(cyclic:3,cyclic:3)",
    "prod(sym:3,cyclic:2)",
    "prod(cyclic:2,prod(cyclic:2,cyclic:2))",
    "prod(alt:4,cyclic:2)",
    "prod(quaternion:8,cyclic:3)",
]

CORPUS = CYCLIC + DIHEDRAL + OTHERS

ODD_ORDER = ["cyclic:15", "cyclic:21", "cyclic:27", C7_C3]
