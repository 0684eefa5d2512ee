"""Ring maps between partial Burnside rings and the group-theoretic checks
around the Frobenius-Wielandt homomorphism."""

from __future__ import annotations

from dataclasses import dataclass, field

from .burnside import (
    BurnsideElement,
    NonIntegral,
    basis,
    basis_product,
    class_mark,
    multiply_cosets,
    nil_square_set,
    one,
    unghost,
    units_bruteforce,
)
from .errors import InternalInconsistency, NotSurjective, VerificationFailed
from .groups import (
    Group,
    GroupHom,
    Subgroup,
    cyclic_group,
    commutator_subgroup,
    hom_image,
    hom_kernel,
    is_normal,
    normal_closure,
    quotient_group,
)
from .lattice import (
    Collection,
    all_subgroups,
    bs,
    full_collection,
    image_collection,
    normal_collection,
    restrict_over,
    standard_basic,
    sub_over,
)
from .report import FAIL, NOT_APPLICABLE, PASS, Report


# ISOMORPHISMS
# ------------


@dataclass(frozen=True)
class RingIso:
    """A class bijection between two partial Burnside rings, checked to carry
    marks and structure constants across."""

    source: Collection
    target: Collection
    class_map: dict
    verified: bool

    def apply(self, x: BurnsideElement) -> BurnsideElement:
        out = [0] * len(self.target)
        for c, a in zip(x.collection.class_ids, x.coeffs):
            out[self.target.position(self.class_map[c])] += a
        return BurnsideElement(self.target, tuple(out))


def _verify_iso(source: Collection, target: Collection, class_map: dict) -> None:
    Ls, Lt = source.lattice, target.lattice
    if sorted(class_map) != list(source.class_ids):
        raise VerificationFailed("class map is not defined on every source class")
    if sorted(class_map.values()) != list(target.class_ids):
        raise VerificationFailed("class map is not a bijection onto the target classes",
                                 witness=sorted(class_map.items()))
    for k in source:
        for h in source:
            ms, mt = class_mark(Ls, k, h), class_mark(Lt, class_map[k], class_map[h])
            if ms != mt:
                raise VerificationFailed(f"marks differ at classes ({k}, {h}): {ms} != {mt}",
                                         witness=(k, h))
    ids = source.class_ids
    for i, h in enumerate(ids):
        for k in ids[i:]:
            prod = basis_product(Ls, h, k)
            if not set(prod) <= set(ids):
                raise VerificationFailed(f"product of classes {h}, {k} leaves the source family",
                                         witness=(h, k))
            mapped = {class_map[c]: m for c, m in prod.items()}
            expected = basis_product(Lt, class_map[h], class_map[k])
            if mapped != expected:
                raise VerificationFailed(f"structure constants differ for classes ({h}, {k})",
                                         witness=(h, k))


def surjection_iso(f: GroupHom, D: Collection) -> RingIso:
    """B(G1, D_ker f) -> B(G2, f(D_ker f)), H -> f(H), verified exhaustively."""
    if not f.is_surjective():
        raise NotSurjective("surjection_iso needs a surjective homomorphism")
    source = restrict_over(D, hom_kernel(f))
    target = image_collection(f, D)
    T = target.lattice
    class_map = {c: T.class_id(hom_image(f, H)) for c, H in zip(source.class_ids, source.reps())}
    _verify_iso(source, target, class_map)
    return RingIso(source, target, class_map, True)


def quotient_iso(G: Group, N: Subgroup) -> RingIso:
    """B(G, sub(G)_N) -> B(G/N), (H) -> (H/N), verified exhaustively."""
    Q, pi = quotient_group(G, N)
    L = all_subgroups(G)
    source = sub_over(L, N)
    target = full_collection(all_subgroups(Q))
    LQ = target.lattice
    class_map = {c: LQ.class_id(hom_image(pi, H)) for c, H in zip(source.class_ids, source.reps())}
    _verify_iso(source, target, class_map)
    return RingIso(source, target, class_map, True)


def matsuda_44_check(f: GroupHom, D: Collection) -> Report:
    """|B(G1,D)^x| = |B(G2, f(D_ker f))^x| * prod |nil-square set of bs(D,H)|,
    with S = {<1>, ker f, G1} and H over S minus {G1, ker f}."""
    G1 = f.source
    L = D.lattice
    K = hom_kernel(f)
    S = standard_basic(L, "with", K)
    left = units_bruteforce(D).order
    image_units = units_bruteforce(image_collection(f, D)).order
    factors = []
    right = image_units
    for H in S.subgroups():
        E = bs(D, S, H)
        size = len(nil_square_set(E))
        used = H.mask not in (G1.whole().mask, K.mask)
        if used:
            right *= size
        factors.append({"subgroup": L.index_of(H), "order": H.order,
                        "bs_classes": list(E.class_ids), "nil_square_size": size, "used": used})
    computed = {"left": left, "image_units": image_units, "right": right, "factors": factors,
                "kernel_in_collection": D.contains_subgroup(K)}
    claim = "|B(G1,D)^x| = |B(G2,f(D_ker f))^x| * |nil(B(G1,bs(D,H)))|"
    return Report(claim, PASS if left == right else FAIL, None, computed)


# FROBENIUS-WIELANDT
# ------------------


@dataclass(frozen=True)
class FWMap:
    """alpha: B(C_|G|) -> B(G) with mark of alpha(x) at K equal to the mark of x at C_|K|.

    ``matrix[i][j]`` is the coefficient of the i-th class of G in the image of
    the j-th basis element of B(C).
    """

    cyclic_source: Group
    target: Group
    source_collection: Collection
    target_collection: Collection
    matrix: tuple[tuple[int, ...], ...]

    def apply(self, x: BurnsideElement) -> BurnsideElement:
        if x.collection != self.source_collection:
            raise ValueError("element does not live in B(C)")
        n = len(self.target_collection)
        out = [sum(self.matrix[i][j] * a for j, a in enumerate(x.coeffs)) for i in range(n)]
        return BurnsideElement(self.target_collection, tuple(out))


def _cyclic_class_by_order(C: Group) -> dict[int, int]:
    LC = all_subgroups(C)
    return {LC.class_order(c): c for c in range(LC.n_classes)}


def fw_alpha(G: Group) -> FWMap:
    C = cyclic_group(G.order, cap=max(G.order, 1))
    LC, LG = all_subgroups(C), all_subgroups(G)
    by_order = _cyclic_class_by_order(C)
    src, tgt = full_collection(LC), full_collection(LG)
    columns = []
    for j in src:
        v = [class_mark(LC, by_order[LG.class_order(k)], j) for k in tgt]
        y = unghost(tgt, v)
        if isinstance(y, NonIntegral):
            raise InternalInconsistency(
                f"image of basis class {j} is not integral at position {y.position}: {y.value}")
        columns.append(y.coeffs)
    matrix = tuple(tuple(col[i] for col in columns) for i in range(len(tgt)))
    return FWMap(C, G, src, tgt, matrix)


def _half_index_generator(alpha: FWMap) -> BurnsideElement | None:
    """1 - [C/C_{n/2}] in B(C), when n is even."""
    n = alpha.cyclic_source.order
    if n % 2:
        return None
    D = alpha.source_collection
    by_order = _cyclic_class_by_order(alpha.cyclic_source)
    return one(D) - basis(D, by_order[n // 2])


# SEMINILPOTENCY
# --------------


@dataclass(frozen=True)
class SeminilpotencyResult:
    """Outcome of :func:`is_seminilpotent`; ``failures`` lists
    (subgroup index, number of normal p^a-index overgroups) per failing K."""

    holds: bool
    failures: tuple[tuple[int, int], ...] = field(default=())

    def __bool__(self):
        return self.holds


def _normal_overgroups(G: Group, K: Subgroup, index: int) -> set[int]:
    L = all_subgroups(G)
    return {N.mask for N in L.normal_subgroups() if K <= N and N.index() == index}


def is_seminilpotent(G: Group, p: int, a: int) -> SeminilpotencyResult:
    """Every K with p^a dividing |G:K| lies in a nonzero number, congruent to 1
    mod p, of normal subgroups of index p^a."""
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    if a < 1:
        raise ValueError("a must be positive")
    q = p ** a
    L = all_subgroups(G)
    failures = []
    for i, K in enumerate(L.subgroups):
        if K.index() % q:
            continue
        count = len(_normal_overgroups(G, K, q))
        if count == 0 or count % p != 1:
            failures.append((i, count))
    return SeminilpotencyResult(not failures, tuple(failures))


def normal_interior(G: Group, K: Subgroup) -> Subgroup:
    """Intersection of all normal subgroups of G containing K."""
    mask = G.whole().mask
    for N in all_subgroups(G).normal_subgroups():
        if K <= N:
            mask &= N.mask
    return Subgroup(G, mask)


def interior_count_check(G: Group, p: int, a: int) -> Report:
    """For every K: the normal index-p^a overgroups of K and of its normal
    interior coincide as sets. Also checks the interior against the normal closure."""
    q = p ** a
    claim = "{N normal : K <= N, |G:N| = p^a} = {N normal : Kbar <= N, |G:N| = p^a}"
    L = all_subgroups(G)
    for i, K in enumerate(L.subgroups):
        Kbar = normal_interior(G, K)
        if Kbar.mask != normal_closure(K).mask:
            return Report(claim, FAIL, {"subgroup": i, "reason": "interior differs from normal closure"})
        first, second = _normal_overgroups(G, K, q), _normal_overgroups(G, Kbar, q)
        if first != second:
            return Report(claim, FAIL, {"subgroup": i, "only_K": len(first - second),
                                        "only_Kbar": len(second - first)})
    return Report(claim, PASS, None, {"subgroups_checked": len(L.subgroups), "p": p, "a": a})


def _generated(gens: list[BurnsideElement]) -> set[BurnsideElement]:
    group = {one(gens[0].collection)}
    todo = list(group)
    while todo:
        x = todo.pop()
        for g in gens:
            y = multiply_cosets(x, g)
            if y not in group:
                group.add(y)
                todo.append(y)
    return group


def imgfw_check(G: Group) -> Report:
    """alpha(B(C)^x) lies in B(G, N(G))^x and equals <-1, prod over index-2 N of (1 - [G/N])>."""
    claim = "alpha(B(C)^x) = <-1, prod u_N> inside B(G,N(G))^x"
    if G.order % 2:
        return Report(claim, NOT_APPLICABLE, None, {"reason": "odd order"})
    semi = is_seminilpotent(G, 2, 1)
    if not semi:
        return Report(claim, NOT_APPLICABLE, None, {"reason": "not 2-seminilpotent",
                                                    "failures": [list(x) for x in semi.failures]})
    alpha = fw_alpha(G)
    L = all_subgroups(G)
    NG = normal_collection(L)
    source_units = units_bruteforce(alpha.source_collection)
    images = set()
    for u in source_units.all_units:
        y = alpha.apply(u)
        if not set(y.support()) <= set(NG.class_ids):
            return Report(claim, FAIL, {"unit": list(u.coeffs), "image": list(y.coeffs)})
        yn = y.to(NG)
        if not yn.is_unit():
            return Report(claim, FAIL, {"unit": list(u.coeffs), "image": list(y.coeffs),
                                        "reason": "image is not a unit"})
        images.add(yn)
    unit = one(NG)
    prod = unit
    index_two = [c for c in NG if L.rep(c).index() == 2]
    for c in index_two:
        prod = multiply_cosets(prod, unit - basis(NG, c))
    expected = _generated([-unit, prod])
    computed = {"source_units": source_units.order, "image_size": len(images),
                "index_two_normals": len(index_two), "product_generator": prod.label()}
    if images != expected:
        return Report(claim, FAIL, {"image": sorted(list(x.coeffs) for x in images),
                                    "expected": sorted(list(x.coeffs) for x in expected)}, computed)
    return Report(claim, PASS, None, computed)


def imgfw_counterexample_check(G: Group) -> Report:
    """Whether alpha(B(C)^x) lies in the span of the normal classes. Status is
    ``fail`` when it does not, with the offending image as witness."""
    claim = "alpha(B(C)^x) is contained in B(G,N(G))"
    alpha = fw_alpha(G)
    L = all_subgroups(G)
    normal = {c for c in range(L.n_classes) if L.is_normal_class(c)}
    units = list(units_bruteforce(alpha.source_collection).all_units)
    first = _half_index_generator(alpha)
    if first is not None:
        units.remove(first)
        units.insert(0, first)
    for u in units:
        y = alpha.apply(u)
        bad = [c for c in y.support() if c not in normal]
        if bad:
            witness = {"unit": u.label(), "image": list(y.coeffs), "image_label": y.label(),
                       "non_normal_classes": bad}
            return Report(claim, FAIL, witness, {"contained": False})
    return Report(claim, PASS, None, {"contained": True})


def oddeq_corpus_check(G: Group) -> Report:
    """For odd |G|: |B(G)^x| = |B(G,N(G))^x| = |B(G,sub(G)_G')^x| = 2."""
    claim = "|B(G)^x| = |B(G,N(G))^x| = |B(G,sub(G)_G')^x| = 2"
    if G.order % 2 == 0:
        return Report(claim, NOT_APPLICABLE, None, {"reason": "even order"})
    L = all_subgroups(G)
    derived = commutator_subgroup(G)
    assert is_normal(derived)
    values = {
        "full": units_bruteforce(full_collection(L)).order,
        "normal": units_bruteforce(normal_collection(L)).order,
        "over_derived": units_bruteforce(sub_over(L, derived)).order,
    }
    ok = all(v == 2 for v in values.values())
    return Report(claim, PASS if ok else FAIL, None if ok else values, values)
