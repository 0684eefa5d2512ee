import pytest

from pbr.errors import ClosureExceedsCap, InvalidPermutation, NotNormal, ParentMismatch, SpecParseError
from pbr.groups import (
    Perm,
    builtin_group,
    center,
    commutator_subgroup,
    conjugate_subgroup,
    group_from_generators,
    hom_image,
    hom_kernel,
    intersect,
    is_nilpotent,
    is_normal,
    join,
    normal_closure,
    normalizer,
    parse_perm_list,
    product_of_subgroups,
    quotient_group,
    subgroup_closure,
)
from pbr import corpus

from conftest import naive_closure


def cyc(*cycles, degree):
    return Perm.from_cycles(cycles, degree)


def test_trivial_group():
    G = group_from_generators(1, [])
    assert G.order == 1
    assert G.elements[0].is_identity()


@pytest.mark.parametrize("gens, degree, order", [
    ([[(0, 1)], [(0, 1, 2)]], 3, 6),
    ([[(0, 1), (2, 3)], [(0, 1, 2)]], 4, 12),
])
def test_closure_orders(gens, degree, order):
    perms = [Perm.from_cycles(c, degree) for c in gens]
    G = group_from_generators(degree, perms)
    assert G.order == order
    assert {p.images for p in G.elements} == naive_closure([p.images for p in perms], degree)


def test_canonical_element_order():
    G = builtin_group("sym:4")
    images = [p.images for p in G.elements]
    assert images == sorted(images)
    assert G.elements[0].is_identity()


def test_mult_table_is_composition():
    G = builtin_group("alt:4")
    for i, p in enumerate(G.elements):
        for j, q in enumerate(G.elements):
            assert G.elements[G.mult_table[i][j]] == p * q


def test_invalid_permutation():
    with pytest.raises(InvalidPermutation):
        Perm((0, 0, 1))
    with pytest.raises(InvalidPermutation):
        group_from_generators(3, [Perm((1, 0))])


def test_order_cap_respected():
    assert builtin_group("sym:5").order == 120
    with pytest.raises(ClosureExceedsCap):
        builtin_group("sym:5", cap=100)
    with pytest.raises(ClosureExceedsCap):
        builtin_group("sym:6")


def test_order_cap_env(monkeypatch):
    monkeypatch.setenv("PBR_ORDER_CAP", "20")
    with pytest.raises(ClosureExceedsCap):
        builtin_group("sym:4")
    monkeypatch.setenv("PBR_ORDER_CAP", "256")
    assert builtin_group("sym:4").order == 24


@pytest.mark.parametrize("spec, order, abelian", [
    ("cyclic:6", 6, True),
    ("dihedral:5", 10, False),
    ("prod(dihedral:3,cyclic:7)", 42, False),
    ("quaternion:8", 8, False),
    ("sym:1", 1, True),
    ("alt:3", 3, True),
    ("dihedral:2", 4, True),
    (corpus.C7_C3, 21, False),
])
def test_builtin_orders(spec, order, abelian):
    G = builtin_group(spec)
    assert G.order == order
    assert G.is_abelian() == abelian


def test_dihedral_presentation():
    for m in range(2, 9):
        G = builtin_group(f"dihedral:{m}")
        s, t = G.sigma, G.tau
        assert G.element_order(s) == m
        assert G.power(t, 2) == 0 and t != 0
        assert G.power(G.mul(s, t), 2) == 0
        assert G.coxeter == (t, G.mul(s, t))


def test_quaternion_structure():
    Q = builtin_group("quaternion:8")
    orders = sorted(Q.element_order(x) for x in range(8))
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]


def test_spec_parse_errors():
    for bad in ["cyclic", "cyclic:x", "prod(cyclic:2)", "quaternion:16", "perm:(1 2", "kitten:3"]:
        with pytest.raises(SpecParseError):
            builtin_group(bad)


def test_perm_text_is_one_based():
    degree, perms = parse_perm_list('"(1 2 3), (2 3)"')
    assert degree == 3
    assert perms[0].images == (1, 2, 0)
    assert perms[1].images == (0, 2, 1)
    assert perms[0].cycle_string() == "(1 2 3)"


def _sub(G, *perms):
    return subgroup_closure(G, [G.index(p) for p in perms])


def test_subgroup_closure_examples():
    S3 = builtin_group("sym:3")
    assert subgroup_closure(S3, [0]).order == 1
    assert _sub(S3, cyc((0, 1), degree=3)).order == 2
    A4 = builtin_group("alt:4")
    V = _sub(A4, cyc((0, 1), (2, 3), degree=4), cyc((0, 2), (1, 3), degree=4))
    assert V.order == 4 and is_normal(V)


def test_intersect_join():
    S3 = builtin_group("sym:3")
    H = _sub(S3, cyc((0, 1), degree=3))
    K = _sub(S3, cyc((0, 1, 2), degree=3))
    assert intersect(H, H) == H and join(H, H) == H
    assert intersect(H, K).order == 1
    assert join(H, K).order == 6
    A4 = builtin_group("alt:4")
    a = _sub(A4, cyc((0, 1), (2, 3), degree=4))
    b = _sub(A4, cyc((0, 2), (1, 3), degree=4))
    assert join(a, b).order == 4
    assert join(a, b) == join(b, a)


def test_parent_mismatch():
    A, B = builtin_group("sym:3"), builtin_group("cyclic:6")
    with pytest.raises(ParentMismatch):
        intersect(A.whole(), B.whole())


def test_normality_and_normalizer():
    S3 = builtin_group("sym:3")
    H = _sub(S3, cyc((0, 1), degree=3))
    assert is_normal(S3.trivial_subgroup()) and is_normal(S3.whole())
    assert not is_normal(H)
    assert normalizer(H) == H
    assert normalizer(S3.whole()) == S3.whole()
    for g in range(S3.order):
        assert conjugate_subgroup(H, g).order == 2


def test_commutator_subgroup():
    A4 = builtin_group("alt:4")
    D = commutator_subgroup(A4)
    assert D.order == 4 and is_normal(D)
    assert commutator_subgroup(builtin_group("cyclic:6")).order == 1
    assert commutator_subgroup(builtin_group("sym:4")).order == 12


def test_nilpotency():
    assert is_nilpotent(builtin_group("dihedral:4"))
    assert is_nilpotent(builtin_group("quaternion:8"))
    assert not is_nilpotent(builtin_group("sym:3"))
    assert not is_nilpotent(builtin_group(corpus.ORDER_42))


def test_normal_product_is_join():
    G = builtin_group("prod(cyclic:2,cyclic:4)")
    from pbr.lattice import all_subgroups
    normals = all_subgroups(G).normal_subgroups()
    for H in normals:
        for K in normals:
            assert join(H, K).mask == product_of_subgroups(H, K)


@pytest.mark.parametrize("spec, which, order", [
    ("alt:4", "derived", 3),
    ("dihedral:4", "center", 4),
])
def test_quotients(spec, which, order):
    G = builtin_group(spec)
    N = commutator_subgroup(G) if which == "derived" else center(G)
    Q, f = quotient_group(G, N)
    assert Q.order == order == G.order // N.order
    assert f.is_surjective()
    assert hom_kernel(f) == N


def test_quotient_by_trivial_is_bijective():
    G = builtin_group("sym:3")
    Q, f = quotient_group(G, G.trivial_subgroup())
    assert Q.order == 6 and len(set(f.images)) == 6


def test_quotient_not_normal():
    S3 = builtin_group("sym:3")
    with pytest.raises(NotNormal):
        quotient_group(S3, _sub(S3, cyc((0, 1), degree=3)))


def test_hom_image_and_kernel():
    A4 = builtin_group("alt:4")
    V = commutator_subgroup(A4)
    Q, pi = quotient_group(A4, V)
    assert hom_image(pi, hom_kernel(pi)).order == 1
    C3 = _sub(A4, cyc((0, 1, 2), degree=4))
    assert hom_image(pi, C3).order == 3
    assert hom_kernel(pi).order == 4
    with pytest.raises(ParentMismatch):
        hom_image(pi, Q.whole())


def test_normal_closure():
    S3 = builtin_group("sym:3")
    assert normal_closure(_sub(S3, cyc((0, 1), degree=3))).order == 6
