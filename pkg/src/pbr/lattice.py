"""Subgroup lattices, conjugacy classes of subgroups, and families of classes.

Classes of subgroups are numbered canonically: ascending subgroup order, ties
broken by the lexicographically least member list among the conjugates. With
that numbering every table of marks is upper triangular, ``(<1>)`` is class 0
and ``(G)`` is the last class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import (
    NotBasic,
    NotDihedral,
    NotIntersectionClosed,
    NotNormal,
    NotNormalMember,
    NotSurjective,
    ParentMismatch,
)
from .groups import (
    Group,
    GroupHom,
    Subgroup,
    bits,
    closure_mask,
    conjugate_mask,
    hom_image,
    hom_kernel,
    is_normal,
    join,
)


def _mask_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return (mask.bit_count(), tuple(bits(mask)))


class SubgroupLattice:
    """All subgroups of a group, partitioned into conjugacy classes.

    Attributes
    ----------
    subgroups : list of Subgroup, sorted by (order, member list)
    classes : list of tuples of subgroup indices, in canonical class order
    class_of : list mapping subgroup index to class id
    subconj : ``subconj[k][h]`` is True when class k is subconjugate to class h
    """

    def __init__(self, parent: Group, masks: Iterable[int], gens: dict[int, list[int]] | None = None):
        self.parent = parent
        masks = sorted(set(masks), key=_mask_key)
        self.subgroups = [Subgroup(parent, m) for m in masks]
        self._index = {m: i for i, m in enumerate(masks)}
        self._gens = gens or {}
        self._cache: dict = {}

        orbits = []
        assigned = set()
        for m in masks:
            if m in assigned:
                continue
            orbit = {m}
            todo = [m]
            while todo:
                x = todo.pop()
                for g in parent.gen_indices:
                    y = conjugate_mask(parent, x, g)
                    if y not in orbit:
                        orbit.add(y)
                        todo.append(y)
            assigned |= orbit
            orbits.append(sorted((self._index[x] for x in orbit)))
        # subgroups are sorted by key already, so an orbit's first index is its least member
        orbits.sort(key=lambda orb: orb[0])
        self.classes = [tuple(orb) for orb in orbits]
        self.class_of = [0] * len(masks)
        for cid, orb in enumerate(self.classes):
            for i in orb:
                self.class_of[i] = cid
        n = len(self.classes)
        self.subconj = [[False] * n for _ in range(n)]
        for k in range(n):
            conjugates = [masks[i] for i in self.classes[k]]
            for h in range(k, n):
                rep = masks[self.classes[h][0]]
                self.subconj[k][h] = any(c & ~rep == 0 for c in conjugates)

    def __repr__(self):
        return f"<SubgroupLattice of {self.parent!r}: {len(self.subgroups)} subgroups, {len(self.classes)} classes>"

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    @property
    def top(self) -> int:
        """Class id of (G)."""
        return len(self.classes) - 1

    def index_of(self, H: Subgroup) -> int:
        if H.parent is not self.parent:
            raise ParentMismatch("subgroup belongs to a different group")
        return self._index[H.mask]

    def class_id(self, H: Subgroup) -> int:
        return self.class_of[self.index_of(H)]

    def rep(self, cid: int) -> Subgroup:
        return self.subgroups[self.classes[cid][0]]

    def members(self, cid: int) -> list[Subgroup]:
        return [self.subgroups[i] for i in self.classes[cid]]

    def class_size(self, cid: int) -> int:
        return len(self.classes[cid])

    def class_order(self, cid: int) -> int:
        return self.rep(cid).order

    def is_normal_class(self, cid: int) -> bool:
        return len(self.classes[cid]) == 1

    def generators(self, H: Subgroup) -> list[int]:
        gens = self._gens.get(H.mask)
        if gens is None:
            gens = []
            got = 1
            for x in bits(H.mask):
                if not got >> x & 1:
                    gens.append(x)
                    got = closure_mask(self.parent, gens)
            self._gens[H.mask] = gens
        return gens

    def label(self, cid: int) -> str:
        order = self.class_order(cid)
        rank = sum(1 for c in range(cid) if self.class_order(c) == order) + 1
        return f"C{order}#{rank}"

    def normal_subgroups(self) -> list[Subgroup]:
        return [self.rep(c) for c in range(self.n_classes) if self.is_normal_class(c)]

    def meet_classes(self, k: int, h: int) -> frozenset[int]:
        """Classes of rep(k) ∩ K' for every conjugate K' of rep(h)."""
        key = ("meet", min(k, h), max(k, h))
        hit = self._cache.get(key)
        if hit is None:
            a = self.rep(k).mask
            hit = frozenset(self.class_of[self._index[a & self.subgroups[i].mask]]
                            for i in self.classes[h])
            self._cache[key] = hit
        return hit


def all_subgroups(G: Group) -> SubgroupLattice:
    """The subgroup lattice of ``G`` (cached on the group).

    Seeds with the cyclic subgroups and closes under joins with cyclic
    subgroups until no new subgroup appears.
    """
    hit = G._cache.get("lattice")
    if hit is not None:
        return hit
    mt = G.mult_table
    cyclic: dict[int, int] = {}
    for g in range(G.order):
        mask, x = 1, g
        while x != 0:
            mask |= 1 << x
            x = mt[x][g]
        cyclic.setdefault(mask, g)
    cyc = sorted(cyclic.items(), key=lambda kv: _mask_key(kv[0]))
    gens: dict[int, list[int]] = {m: ([g] if g else []) for m, g in cyc}
    queue = [m for m, _ in cyc]
    i = 0
    while i < len(queue):
        h = queue[i]
        i += 1
        for cmask, c in cyc:
            if h >> c & 1:
                continue
            new_gens = gens[h] + [c]
            j = closure_mask(G, new_gens)
            if j not in gens:
                gens[j] = new_gens
                queue.append(j)
    lattice = SubgroupLattice(G, gens.keys(), gens)
    G._cache["lattice"] = lattice
    return lattice


def subgroups_by_subset_search(G: Group) -> set[int]:
    """Every multiplicatively closed subset of ``G``, as masks.

    Test oracle, independent of :func:`all_subgroups`: walks the full binary
    include/exclude tree over the element table, forcing products of included
    elements and abandoning a branch once a forced element was excluded.
    Each subgroup corresponds to exactly one surviving leaf.
    """
    n = G.order
    mt = G.mult_table
    found: set[int] = set()

    def close(members: set[int]) -> set[int]:
        out = set(members)
        changed = True
        while changed:
            changed = False
            for a in list(out):
                for b in list(out):
                    c = mt[a][b]
                    if c not in out:
                        out.add(c)
                        changed = True
        return out

    def walk(pos: int, inc: set[int], exc: set[int]) -> None:
        while pos < n and (pos in inc or pos in exc):
            pos += 1
        if pos == n:
            found.add(sum(1 << x for x in inc))
            return
        walk(pos + 1, inc, exc | {pos})
        grown = close(inc | {pos})
        if not grown & exc:
            walk(pos + 1, grown, exc)

    walk(0, {0}, set())
    return found


# COLLECTIONS
# -----------


@dataclass(frozen=True)
class Collection:
    """A closed family of subgroups, stored as a sorted tuple of class ids.

    Conjugation closure is structural. Intersection closure is checked at
    construction and :class:`NotIntersectionClosed` is raised on failure.
    The family is a *collection* proper when it contains (G).
    """

    lattice: SubgroupLattice
    class_ids: tuple[int, ...]
    _pos: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        ids = tuple(sorted(set(self.class_ids)))
        object.__setattr__(self, "class_ids", ids)
        object.__setattr__(self, "_pos", {c: i for i, c in enumerate(ids)})
        L = self.lattice
        members = set(ids)
        for a in ids:
            for b in ids:
                if b < a:
                    continue
                outside = L.meet_classes(a, b) - members
                if outside:
                    H = L.rep(a)
                    K = next(L.subgroups[i] for i in L.classes[b]
                             if L.class_of[L.index_of(Subgroup(L.parent, H.mask & L.subgroups[i].mask))] in outside)
                    raise NotIntersectionClosed(
                        f"classes {a} and {b} meet in class {min(outside)}, outside the family",
                        witness=(H, K))

    @property
    def is_collection(self) -> bool:
        return self.lattice.top in self._pos

    @property
    def group(self) -> Group:
        return self.lattice.parent

    def __len__(self):
        return len(self.class_ids)

    def __iter__(self):
        return iter(self.class_ids)

    def __contains__(self, cid) -> bool:
        return cid in self._pos

    def position(self, cid: int) -> int:
        return self._pos[cid]

    def reps(self) -> list[Subgroup]:
        return [self.lattice.rep(c) for c in self.class_ids]

    def contains_subgroup(self, H: Subgroup) -> bool:
        return self.lattice.class_id(H) in self._pos

    def __repr__(self):
        kind = "Collection" if self.is_collection else "ClosedFamily"
        return f"<{kind} {list(self.class_ids)} of {self.group!r}>"


def collection_from_predicate(L: SubgroupLattice, pred: Callable[[int], bool]) -> Collection:
    """The family of classes ``c`` with ``pred(c)`` true; raises if not closed."""
    return Collection(L, tuple(c for c in range(L.n_classes) if pred(c)))


def full_collection(L: SubgroupLattice) -> Collection:
    return Collection(L, tuple(range(L.n_classes)))


def normal_collection(L: SubgroupLattice) -> Collection:
    return collection_from_predicate(L, L.is_normal_class)


def collection_closure(L: SubgroupLattice, seeds: Iterable[int]) -> Collection:
    """The smallest collection containing the classes ``seeds``."""
    ids = set(seeds) | {L.top}
    todo = list(ids)
    while todo:
        a = todo.pop()
        for b in list(ids):
            for c in L.meet_classes(a, b):
                if c not in ids:
                    ids.add(c)
                    todo.append(c)
    return Collection(L, tuple(ids))


def _normal_in(L: SubgroupLattice, N: Subgroup) -> None:
    if N.parent is not L.parent:
        raise ParentMismatch("N is not a subgroup of the lattice's group")
    if not is_normal(N):
        raise NotNormal("N must be normal")


def sub_over(L: SubgroupLattice, N: Subgroup) -> Collection:
    """Classes of subgroups containing the normal subgroup N."""
    _normal_in(L, N)
    return Collection(L, tuple(c for c in range(L.n_classes) if N <= L.rep(c)))


def restrict_over(D: Collection, N: Subgroup) -> Collection:
    """Members of D that contain the normal subgroup N."""
    L = D.lattice
    _normal_in(L, N)
    return Collection(L, tuple(c for c in D if N <= L.rep(c)))


def image_collection(f: GroupHom, D: Collection) -> Collection:
    """{f(H) : H in D, ker f <= H} as a collection on the target's lattice."""
    if not f.is_surjective():
        raise NotSurjective("image_collection needs a surjective homomorphism")
    if D.group is not f.source:
        raise ParentMismatch("collection does not live on the source of f")
    kernel = hom_kernel(f)
    T = all_subgroups(f.target)
    ids = {T.class_id(hom_image(f, H)) for H in D.reps() if kernel <= H}
    # intersection closure is guaranteed when f(H ∩ K) = f(H) ∩ f(K); a failure here is a bug
    return Collection(T, tuple(ids))


def parabolic_collection(G: Group) -> Collection:
    """Classes of the standard parabolic subgroups <J>, J a subset of {tau, sigma*tau}."""
    if getattr(G, "coxeter", None) is None:
        raise NotDihedral("group carries no Coxeter generators; build it as dihedral:m")
    L = all_subgroups(G)
    t, st = G.coxeter
    ids = set()
    for J in ([], [t], [st], [t, st]):
        ids.add(L.class_id(Subgroup(G, closure_mask(G, J))))
    return Collection(L, tuple(ids))


# BASIC COLLECTIONS
# -----------------


@dataclass(frozen=True)
class BasicCollection:
    """A basic collection: normal subgroups containing <1> and G, closed under
    products and intersections. ``members`` are subgroup indices, sorted."""

    lattice: SubgroupLattice
    members: tuple[int, ...]

    def subgroups(self) -> list[Subgroup]:
        return [self.lattice.subgroups[i] for i in self.members]

    def __contains__(self, H: Subgroup) -> bool:
        return self.lattice.index_of(H) in self.members

    def __len__(self):
        return len(self.members)


def _basic_violation(L: SubgroupLattice, subs: list[Subgroup]) -> str | None:
    masks = {H.mask for H in subs}
    G = L.parent
    if 1 not in masks:
        return "does not contain the trivial subgroup"
    if G.whole().mask not in masks:
        return "does not contain G"
    for H in subs:
        for K in subs:
            if join(H, K).mask not in masks:
                return "not closed under products HK"
            if H.mask & K.mask not in masks:
                return "not closed under intersection"
    return None


def _as_subgroups(L: SubgroupLattice, members) -> list[Subgroup]:
    out = []
    for m in members:
        if isinstance(m, Subgroup):
            if m.parent is not L.parent:
                raise ParentMismatch("member belongs to a different group")
            out.append(m)
        else:
            out.append(L.subgroups[m])
    return out


def is_basic_collection(L: SubgroupLattice, members) -> bool:
    subs = _as_subgroups(L, members)
    if not all(is_normal(H) for H in subs):
        return False
    return _basic_violation(L, subs) is None


def basic_collection(L: SubgroupLattice, members) -> BasicCollection:
    """Validate and build a basic collection from subgroups or subgroup indices."""
    subs = _as_subgroups(L, members)
    for H in subs:
        if not is_normal(H):
            raise NotNormalMember(f"member of order {H.order} is not normal")
    problem = _basic_violation(L, subs)
    if problem:
        raise NotBasic(problem)
    return BasicCollection(L, tuple(sorted({L.index_of(H) for H in subs})))


def standard_basic(L: SubgroupLattice, kind: str, N: Subgroup | None = None) -> BasicCollection:
    """``kind`` is ``"normal"`` (all normal subgroups), ``"trivial"`` ({<1>, G})
    or ``"with"`` ({<1>, N, G} for the normal subgroup ``N``)."""
    G = L.parent
    if kind == "normal":
        return basic_collection(L, L.normal_subgroups())
    if kind == "trivial":
        return basic_collection(L, [G.trivial_subgroup(), G.whole()])
    if kind == "with":
        if N is None:
            raise ValueError("kind 'with' needs a normal subgroup N")
        return basic_collection(L, [G.trivial_subgroup(), N, G.whole()])
    raise ValueError(f"unknown basic collection kind {kind!r}")


def bs(D: Collection, S: BasicCollection, H: Subgroup) -> Collection:
    """Members F of D with H <= F and no S-member H' != H with H <= H' <= F."""
    if H not in S:
        raise ValueError("H must be a member of the basic collection")
    L = D.lattice
    others = [K for K in S.subgroups() if K.mask != H.mask and H <= K]
    ids = []
    for c in D:
        F = L.rep(c)
        if H <= F and not any(K <= F for K in others):
            ids.append(c)
    return Collection(L, tuple(ids))


def s_upper_d(D: Collection, S: BasicCollection) -> list[Subgroup]:
    """Members H of S whose part bs(D, H) is nonempty."""
    return [H for H in S.subgroups() if len(bs(D, S, H))]
