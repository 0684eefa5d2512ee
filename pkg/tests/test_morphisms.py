import pytest

from pbr import corpus
from pbr.burnside import (
    basis,
    ghost,
    multiply_cosets,
    one,
    table_of_marks,
    units_bruteforce,
)
from pbr.errors import NotSurjective
from pbr.groups import (
    GroupHom,
    center,
    conjugate_mask,
    identity_hom,
    is_nilpotent,
    quotient_group,
    subgroup_closure,
)
from pbr.lattice import all_subgroups, collection_from_predicate, full_collection, normal_collection
from pbr.morphisms import (
    fw_alpha,
    imgfw_check,
    imgfw_counterexample_check,
    interior_count_check,
    is_seminilpotent,
    matsuda_44_check,
    normal_interior,
    oddeq_corpus_check,
    quotient_iso,
    surjection_iso,
)
from pbr.report import FAIL, NOT_APPLICABLE, PASS


def normal_of_order(G, k):
    return next(N for N in all_subgroups(G).normal_subgroups() if N.order == k)


ISO_CASES = [("alt:4", 4), ("sym:4", 4), ("dihedral:4", "center"), ("cyclic:12", 2), ("cyclic:6", 3)]


def kernel(G, which):
    return center(G) if which == "center" else normal_of_order(G, which)


# quotient and surjection isomorphisms


@pytest.mark.parametrize("spec, which", ISO_CASES)
def test_quotient_iso_verified(group, spec, which):
    G = group(spec)
    N = kernel(G, which)
    iso = quotient_iso(G, N)
    assert iso.verified
    Q, _ = quotient_group(G, N)
    assert iso.target.group.order == Q.order == G.order // N.order
    assert len(iso.source) == all_subgroups(iso.target.group).n_classes
    # marks compared on the two sides, each computed on its own lattice
    src = table_of_marks(iso.source).as_lists()
    tgt = table_of_marks(iso.target)
    pos = [iso.target.position(iso.class_map[c]) for c in iso.source]
    assert src == [[tgt[pos[i], pos[j]] for j in range(len(pos))] for i in range(len(pos))]


@pytest.mark.parametrize("spec, which", ISO_CASES)
def test_surjection_iso_verified(group, spec, which):
    G = group(spec)
    L = all_subgroups(G)
    _, pi = quotient_group(G, kernel(G, which))
    iso = surjection_iso(pi, full_collection(L))
    assert iso.verified
    x = sum((basis(iso.source, c) * (i + 1) for i, c in enumerate(iso.source)), 0 * one(iso.source))
    y = x
    assert iso.apply(multiply_cosets(x, y)) == multiply_cosets(iso.apply(x), iso.apply(y))


def test_quotient_examples(group):
    G = group("alt:4")
    iso = quotient_iso(G, normal_of_order(G, 4))
    assert table_of_marks(iso.source).as_lists() == [[3, 1], [0, 1]]
    assert table_of_marks(iso.target).as_lists() == [[3, 1], [0, 1]]
    H = group("sym:3")
    triv = quotient_iso(H, H.trivial_subgroup())
    assert len(triv.source) == all_subgroups(H).n_classes
    assert all(triv.target.lattice.class_order(v) == triv.source.lattice.class_order(k)
               for k, v in triv.class_map.items())
    D = group("dihedral:4")
    assert len(quotient_iso(D, center(D)).source) == 5


def test_surjection_examples(group):
    G = group("alt:4")
    L = all_subgroups(G)
    _, pi = quotient_group(G, normal_of_order(G, 4))
    iso = surjection_iso(pi, full_collection(L))
    assert len(iso.target) == 2
    q = quotient_iso(G, normal_of_order(G, 4))
    assert iso.source == q.source
    C = group("cyclic:12")
    LC = all_subgroups(C)
    _, pi = quotient_group(C, normal_of_order(C, 2))
    iso = surjection_iso(pi, normal_collection(LC))
    pairs = sorted((LC.class_order(k), iso.target.lattice.class_order(v)) for k, v in iso.class_map.items())
    assert pairs == [(2, 1), (4, 2), (6, 3), (12, 6)]
    S = group("sym:3")
    ident = surjection_iso(identity_hom(S), full_collection(all_subgroups(S)))
    assert ident.class_map == {c: c for c in range(all_subgroups(S).n_classes)}


def test_surjection_needs_surjective(group):
    G = group("cyclic:2")
    T = group("cyclic:4")
    f = GroupHom(G, T, (0, next(i for i in range(T.order) if T.element_order(i) == 2)))
    with pytest.raises(NotSurjective):
        surjection_iso(f, full_collection(all_subgroups(G)))


@pytest.mark.parametrize("spec, k", [("sym:3", 3), ("cyclic:6", 3), ("cyclic:6", 2), ("sym:4", 4),
                                     ("dihedral:4", 2), ("alt:4", 4)])
def test_matsuda_44(group, spec, k):
    G = group(spec)
    L = all_subgroups(G)
    _, pi = quotient_group(G, normal_of_order(G, k))
    r = matsuda_44_check(pi, full_collection(L))
    assert r.status == PASS
    assert r.computed["left"] == units_bruteforce(full_collection(L)).order
    assert r.computed["kernel_in_collection"]


def test_matsuda_44_identity_and_off_kernel(group):
    G = group("sym:3")
    r = matsuda_44_check(identity_hom(G), full_collection(all_subgroups(G)))
    assert r.status == PASS and r.computed["left"] == r.computed["right"] == 8
    A = group("alt:4")
    L = all_subgroups(A)
    D = collection_from_predicate(L, lambda c: L.class_order(c) in (1, 3, 12))
    _, pi = quotient_group(A, normal_of_order(A, 4))
    r = matsuda_44_check(pi, D)
    assert not r.computed["kernel_in_collection"]
    assert r.computed["left"] == 2


# Frobenius-Wielandt


@pytest.mark.parametrize("spec", ["sym:3", "alt:4", "dihedral:4", "cyclic:12", "quaternion:8"])
def test_fw_ghost_condition(group, spec):
    G = group(spec)
    alpha = fw_alpha(G)
    LC, LG = alpha.source_collection.lattice, all_subgroups(G)
    by_order = {LC.class_order(c): c for c in range(LC.n_classes)}
    for j in alpha.source_collection:
        x = basis(alpha.source_collection, j)
        gx, gy = ghost(x), ghost(alpha.apply(x))
        for k in range(LG.n_classes):
            assert gy[k] == gx[by_order[LG.class_order(k)]]


@pytest.mark.parametrize("spec", ["sym:3", "alt:4", "dihedral:4", "cyclic:12"])
def test_fw_multiplicative(group, spec):
    alpha = fw_alpha(group(spec))
    D = alpha.source_collection
    assert alpha.apply(one(D)) == one(alpha.target_collection)
    for i in D:
        for j in D:
            bi, bj = basis(D, i), basis(D, j)
            assert alpha.apply(multiply_cosets(bi, bj)) == multiply_cosets(alpha.apply(bi), alpha.apply(bj))


def test_fw_examples(group):
    for n in (6, 8, 12):
        alpha = fw_alpha(group(f"cyclic:{n}"))
        k = len(alpha.matrix)
        assert alpha.matrix == tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    alpha = fw_alpha(group("sym:3"))
    LC = alpha.source_collection.lattice
    c3 = next(c for c in range(LC.n_classes) if LC.class_order(c) == 3)
    y = alpha.apply(one(alpha.source_collection) - basis(alpha.source_collection, c3))
    assert y.coeffs == (0, 0, -1, 1)
    assert ghost(y) == (-1, 1, -1, 1)
    alpha = fw_alpha(group("alt:4"))
    LC = alpha.source_collection.lattice
    c6 = next(c for c in range(LC.n_classes) if LC.class_order(c) == 6)
    y = alpha.apply(one(alpha.source_collection) - basis(alpha.source_collection, c6))
    assert y.coeffs == (1, -1, -2, 0, 1)
    assert y.label() == "1 + [G/C1#1] - [G/C2#1] - 2[G/C3#1]"


def test_imgfw_examples(group):
    for n in range(2, 25, 2):
        r = imgfw_check(group(f"cyclic:{n}"))
        assert r.status == PASS and r.computed["image_size"] == 4
    r = imgfw_check(group("sym:3"))
    assert r.status == PASS and r.computed["product_generator"] == "1 - [G/C3#1]"
    big = group(corpus.ORDER_42)
    assert not is_nilpotent(big)
    assert imgfw_check(big).status == PASS
    assert imgfw_check(group("cyclic:15")).status == NOT_APPLICABLE
    na = imgfw_check(group("alt:4"))
    assert na.status == NOT_APPLICABLE and na.computed["reason"] == "not 2-seminilpotent"


def test_imgfw_exact_on_seminilpotent_corpus(group):
    for spec in corpus.CORPUS:
        G = group(spec)
        if G.order % 2 == 0 and is_seminilpotent(G, 2, 1):
            assert imgfw_check(G).status == PASS, spec


def test_counterexample(group):
    r = imgfw_counterexample_check(group("alt:4"))
    assert r.status == FAIL and not r.computed["contained"]
    assert r.witness["image"] == [1, -1, -2, 0, 1]
    assert r.witness["non_normal_classes"] == [1, 2]
    assert r.witness["image_label"] == "1 + [G/C1#1] - [G/C2#1] - 2[G/C3#1]"
    for spec in ("sym:3", "cyclic:12", "prod(cyclic:2,cyclic:4)"):
        assert imgfw_counterexample_check(group(spec)).computed["contained"]


# seminilpotency and normal interiors


def test_seminilpotent_examples(group):
    assert is_seminilpotent(group("sym:3"), 2, 1)
    res = is_seminilpotent(group("alt:4"), 2, 1)
    assert not res
    assert (0, 0) in res.failures
    big = group(corpus.ORDER_42)
    assert is_seminilpotent(big, 2, 1) and not is_nilpotent(big)
    assert is_seminilpotent(group("cyclic:15"), 2, 1)
    assert is_seminilpotent(group("sym:3"), 5, 1)
    with pytest.raises(ValueError):
        is_seminilpotent(group("sym:3"), 4, 1)
    with pytest.raises(ValueError):
        is_seminilpotent(group("sym:3"), 2, 0)


def conjugate_closure(G, K):
    """Subgroup generated by every conjugate of K, built from scratch."""
    seed = 0
    for g in range(G.order):
        seed |= conjugate_mask(G, K.mask, g)
    return subgroup_closure(G, [i for i in range(G.order) if seed >> i & 1])


def test_normal_interior_examples(group):
    S = group("sym:3")
    LS = all_subgroups(S)
    t = next(H for H in LS.subgroups if H.order == 2)
    assert normal_interior(S, t).order == 6
    A = group("alt:4")
    LA = all_subgroups(A)
    c2 = next(H for H in LA.subgroups if H.order == 2)
    assert normal_interior(A, c2).order == 4
    for N in LA.normal_subgroups():
        assert normal_interior(A, N) == N
    for spec in corpus.CORPUS:
        G = group(spec)
        for K in all_subgroups(G).subgroups:
            assert normal_interior(G, K).mask == conjugate_closure(G, K).mask


@pytest.mark.parametrize("p, a", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_interior_count(group, p, a):
    for spec in corpus.CORPUS:
        r = interior_count_check(group(spec), p, a)
        assert r.status == PASS, spec
    assert interior_count_check(group("alt:4"), 2, 2).computed["subgroups_checked"] == 10


def test_oddeq(group):
    for spec in corpus.ODD_ORDER:
        r = oddeq_corpus_check(group(spec))
        assert r.status == PASS
        assert r.computed == {"full": 2, "normal": 2, "over_derived": 2}
    assert oddeq_corpus_check(group("sym:3")).status == NOT_APPLICABLE
