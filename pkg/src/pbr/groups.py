"""Small finite groups realized as permutation groups with full element tables.

Elements of a :class:`Group` are addressed by their index in the canonical
element table (lexicographic on image sequences, identity at index 0).
Subgroups are bitmasks over those indices.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Sequence

from .errors import (
    ClosureExceedsCap,
    InvalidPermutation,
    NotNormal,
    ParentMismatch,
    SpecParseError,
)

DEFAULT_ORDER_CAP = 128
MAX_ORDER_CAP = 256


def default_order_cap() -> int:
    """The order cap, honouring the ``PBR_ORDER_CAP`` environment variable."""
    raw = os.environ.get("PBR_ORDER_CAP")
    if raw is None:
        return DEFAULT_ORDER_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"PBR_ORDER_CAP must be an integer, got {raw!r}") from None
    return _check_cap(cap)


def _check_cap(cap: int) -> int:
    if not 1 <= cap <= MAX_ORDER_CAP:
        raise ValueError(f"order cap must lie in [1, {MAX_ORDER_CAP}], got {cap}")
    return cap


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# PERMUTATIONS
# ------------


@dataclass(frozen=True, order=True)
class Perm:
    """A permutation of ``{0, ..., degree-1}``; ``images[i]`` is the image of ``i``.

    Products compose right to left: ``(p * q)(x) == p(q(x))``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if not images or sorted(images) != list(range(len(images))):
            raise InvalidPermutation(f"not a bijection on 0..{len(images) - 1}: {images}")

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Perm:
        """Build from 0-based disjoint cycles."""
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            for a in cycle:
                if not 0 <= a < degree or a in seen:
                    raise InvalidPermutation(f"bad cycle {tuple(cycle)} for degree {degree}")
                seen.add(a)
            for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Perm) -> Perm:
        if other.degree != self.degree:
            raise InvalidPermutation("degree mismatch in product")
        mine = self.images
        return Perm(tuple(mine[j] for j in other.images))

    def inverse(self) -> Perm:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point."""
        out = []
        seen = set()
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    def cycle_string(self) -> str:
        """1-based cycle notation, ``"()"`` for the identity."""
        cs = self.cycles()
        if not cs:
            return "()"
        return "".join("(" + " ".join(str(a + 1) for a in c) + ")" for c in cs)

    def __repr__(self):
        return f"Perm({self.cycle_string()})"


# GROUPS
# ------


class Group:
    """A finite permutation group with its full Cayley table.

    Build instances with :func:`group_from_generators` or :func:`builtin_group`.
    """

    def __init__(self, degree, generators, elements, name=None, coxeter=None):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.order = len(self.elements)
        self.name = name
        self._index = {p: i for i, p in enumerate(self.elements)}
        els = self.elements
        index = self._index
        self.mult_table = tuple(
            tuple(index[p * q] for q in els) for p in els
        )
        self.inverse = tuple(index[p.inverse()] for p in els)
        self.gen_indices = tuple(index[g] for g in self.generators)
        # indices of (tau, sigma*tau) for dihedral groups, None otherwise
        self.coxeter = coxeter
        self._cache: dict = {}

    def __repr__(self):
        label = self.name or f"degree {self.degree}"
        return f"<Group {label} of order {self.order}>"

    def __len__(self):
        return self.order

    def index(self, p: Perm) -> int:
        return self._index[p]

    def mul(self, i: int, j: int) -> int:
        return self.mult_table[i][j]

    def inv(self, i: int) -> int:
        return self.inverse[i]

    def conj(self, g: int, x: int) -> int:
        """Index of g x g^-1."""
        return self.mult_table[self.mult_table[g][x]][self.inverse[g]]

    def power(self, x: int, k: int) -> int:
        r = 0
        for _ in range(k):
            r = self.mult_table[r][x]
        return r

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.mult_table[y][x]
            k += 1
        return k

    def is_abelian(self) -> bool:
        gs = self.gen_indices
        mt = self.mult_table
        return all(mt[a][b] == mt[b][a] for a in gs for b in gs)

    def conj_map(self, g: int) -> tuple[int, ...]:
        """Permutation of element indices induced by conjugation x -> g x g^-1."""
        key = ("conj", g)
        cached = self._cache.get(key)
        if cached is None:
            cached = tuple(self.conj(g, x) for x in range(self.order))
            self._cache[key] = cached
        return cached

    # convenient subgroups

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self, 1)

    def whole(self) -> Subgroup:
        return Subgroup(self, (1 << self.order) - 1)


def group_from_generators(degree: int, gens: Sequence[Perm], cap: int | None = None,
                          name: str | None = None, coxeter_perms=None) -> Group:
    """Close ``gens`` under composition and return the generated group."""
    cap = default_order_cap() if cap is None else _check_cap(cap)
    if degree < 1:
        raise InvalidPermutation("degree must be positive")
    gens = [g if isinstance(g, Perm) else Perm(tuple(g)) for g in gens]
    for g in gens:
        if g.degree != degree:
            raise InvalidPermutation(f"generator {g} does not have degree {degree}")
    identity = Perm.identity(degree)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = p * g
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
                    if len(seen) > cap:
                        raise ClosureExceedsCap(
                            f"group generated by {gens} exceeds the order cap {cap}")
        frontier = nxt
    elements = sorted(seen)
    group = Group(degree, gens, elements, name=name)
    if coxeter_perms is not None:
        group.coxeter = tuple(group.index(p) for p in coxeter_perms)
    return group


# SUBGROUPS
# ---------


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``parent``, stored as a bitmask over element indices."""

    parent: Group
    mask: int

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def members(self) -> list[int]:
        return list(bits(self.mask))

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def __le__(self, other: Subgroup) -> bool:
        _same_parent(self, other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: Subgroup) -> bool:
        return self <= other and self.mask != other.mask

    def index(self) -> int:
        return self.parent.order // self.order

    def __repr__(self):
        return f"<Subgroup of order {self.order} in {self.parent!r}>"


def _same_parent(*subgroups: Subgroup) -> Group:
    parent = subgroups[0].parent
    for h in subgroups[1:]:
        if h.parent is not parent:
            raise ParentMismatch("subgroups belong to different groups")
    return parent


def closure_mask(G: Group, seed: Iterable[int], start: int = 1) -> int:
    """Mask of the subgroup generated by ``seed`` together with the subgroup ``start``.

    ``start`` must already be a subgroup mask (the trivial subgroup by default).
    """
    mt = G.mult_table
    seed = [s for s in seed if s != 0]
    mask = start
    queue = list(bits(start))
    for s in seed:
        if not mask >> s & 1:
            mask |= 1 << s
            queue.append(s)
    gens = seed + [g for g in _generators_of_mask(G, start)]
    i = 0
    while i < len(queue):
        x = queue[i]
        i += 1
        row = mt[x]
        for g in gens:
            y = row[g]
            if not mask >> y & 1:
                mask |= 1 << y
                queue.append(y)
    return mask


def _generators_of_mask(G: Group, mask: int) -> list[int]:
    # every element generates; only used for small start masks where it is cheap
    cached = G._cache.get(("gens", mask))
    if cached is not None:
        return cached
    if mask == 1:
        return []
    gens: list[int] = []
    got = 1
    for x in bits(mask):
        if not got >> x & 1:
            gens.append(x)
            got = closure_mask(G, gens)
    G._cache[("gens", mask)] = gens
    return gens


def subgroup_closure(G: Group, seed: Iterable[int]) -> Subgroup:
    """The smallest subgroup of ``G`` containing the element indices ``seed``."""
    seed = list(seed)
    for s in seed:
        if not 0 <= s < G.order:
            raise IndexError(f"element index {s} out of range for {G!r}")
    return Subgroup(G, closure_mask(G, seed))


def generators_of(H: Subgroup) -> list[int]:
    """A small generating set of ``H`` (greedy, in element-index order)."""
    return list(_generators_of_mask(H.parent, H.mask))


def conjugate_mask(G: Group, mask: int, g: int) -> int:
    cm = G.conj_map(g)
    out = 0
    for x in bits(mask):
        out |= 1 << cm[x]
    return out


def conjugate_subgroup(H: Subgroup, g: int) -> Subgroup:
    """g H g^-1."""
    return Subgroup(H.parent, conjugate_mask(H.parent, H.mask, g))


def intersect(H: Subgroup, K: Subgroup) -> Subgroup:
    G = _same_parent(H, K)
    return Subgroup(G, H.mask & K.mask)


def join(H: Subgroup, K: Subgroup) -> Subgroup:
    """The subgroup generated by H and K (written HK when both are normal)."""
    G = _same_parent(H, K)
    if K <= H:
        return H
    if H <= K:
        return K
    return Subgroup(G, closure_mask(G, generators_of(K), start=H.mask))


def is_normal(H: Subgroup) -> bool:
    G = H.parent
    return all(conjugate_mask(G, H.mask, g) == H.mask for g in G.gen_indices)


def normalizer(H: Subgroup) -> Subgroup:
    G = H.parent
    mask = 0
    for g in range(G.order):
        if conjugate_mask(G, H.mask, g) == H.mask:
            mask |= 1 << g
    return Subgroup(G, mask)


def normal_closure(H: Subgroup) -> Subgroup:
    """The subgroup generated by all conjugates of H."""
    G = H.parent
    seed = {G.conj(g, h) for g in range(G.order) for h in bits(H.mask)}
    return Subgroup(G, closure_mask(G, sorted(seed)))


def center(G: Group) -> Subgroup:
    mt = G.mult_table
    mask = 0
    for z in range(G.order):
        if all(mt[z][g] == mt[g][z] for g in G.gen_indices):
            mask |= 1 << z
    return Subgroup(G, mask)


def commutator(G: Group, x: int, y: int) -> int:
    """Index of x^-1 y^-1 x y."""
    mt, inv = G.mult_table, G.inverse
    return mt[mt[mt[inv[x]][inv[y]]][x]][y]


def commutator_of(H: Subgroup, K: Subgroup) -> Subgroup:
    """[H, K], generated by all commutators of elements of H with elements of K."""
    G = _same_parent(H, K)
    seed = {commutator(G, x, y) for x in bits(H.mask) for y in bits(K.mask)}
    return Subgroup(G, closure_mask(G, sorted(seed)))


def commutator_subgroup(G: Group) -> Subgroup:
    W = G.whole()
    return commutator_of(W, W)


def lower_central_series(G: Group) -> list[Subgroup]:
    series = [G.whole()]
    while True:
        nxt = commutator_of(series[-1], G.whole())
        if nxt.mask == series[-1].mask:
            return series
        series.append(nxt)


def is_nilpotent(G: Group) -> bool:
    return lower_central_series(G)[-1].order == 1


# HOMOMORPHISMS
# -------------


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given by its full element-index map."""

    source: Group
    target: Group
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.source.order:
            raise ValueError("image table length differs from source order")
        smt, tmt, im = self.source.mult_table, self.target.mult_table, self.images
        n = self.source.order
        for x in range(n):
            for y in range(n):
                if im[smt[x][y]] != tmt[im[x]][im[y]]:
                    raise ValueError(f"not a homomorphism: f(x*y) != f(x)*f(y) at {x}, {y}")

    def __call__(self, x: int) -> int:
        return self.images[x]

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order

    def __repr__(self):
        return f"<GroupHom {self.source!r} -> {self.target!r}>"


def identity_hom(G: Group) -> GroupHom:
    return GroupHom(G, G, tuple(range(G.order)))


def hom_image(f: GroupHom, H: Subgroup) -> Subgroup:
    if H.parent is not f.source:
        raise ParentMismatch("subgroup is not contained in the source of the homomorphism")
    mask = 0
    for x in bits(H.mask):
        mask |= 1 << f.images[x]
    return Subgroup(f.target, mask)


def hom_kernel(f: GroupHom) -> Subgroup:
    mask = 0
    for x, y in enumerate(f.images):
        if y == 0:
            mask |= 1 << x
    return Subgroup(f.source, mask)


def hom_preimage(f: GroupHom, H: Subgroup) -> Subgroup:
    if H.parent is not f.target:
        raise ParentMismatch("subgroup is not contained in the target of the homomorphism")
    mask = 0
    for x, y in enumerate(f.images):
        if H.mask >> y & 1:
            mask |= 1 << x
    return Subgroup(f.source, mask)


def quotient_group(G: Group, N: Subgroup) -> tuple[Group, GroupHom]:
    """G/N acting by left multiplication on the left cosets of N, and G -> G/N."""
    if N.parent is not G:
        raise ParentMismatch("N is not a subgroup of G")
    if not is_normal(N):
        raise NotNormal("cannot form a quotient by a non-normal subgroup")
    mt = G.mult_table
    coset_of = [-1] * G.order
    reps = []
    for g in range(G.order):
        if coset_of[g] < 0:
            c = len(reps)
            reps.append(g)
            for n in bits(N.mask):
                coset_of[mt[g][n]] = c
    degree = len(reps)

    def action(x):
        return Perm(tuple(coset_of[mt[x][r]] for r in reps))

    name = f"{G.name}/N" if G.name else None
    Q = group_from_generators(degree, [action(g) for g in G.gen_indices],
                              cap=max(G.order, 1), name=name)
    images = tuple(Q.index(action(x)) for x in range(G.order))
    return Q, GroupHom(G, Q, images)


# BUILTIN GROUPS
# --------------


def cyclic_group(n: int, cap: int | None = None) -> Group:
    if n < 1:
        raise SpecParseError("cyclic order must be positive")
    gens = [Perm(tuple((i + 1) % n for i in range(n)))] if n > 1 else []
    return group_from_generators(n, gens, cap=cap, name=f"cyclic:{n}")


def dihedral_group(m: int, cap: int | None = None) -> Group:
    """The Coxeter group of type I2(m), of order 2m.

    Records the Coxeter generators (tau, sigma*tau) on ``G.coxeter``.
    """
    if m < 1:
        raise SpecParseError("dihedral parameter must be positive")
    if m == 1:
        sigma, tau = Perm((0, 1)), Perm((1, 0))
    elif m == 2:
        # D_4 is the Klein group; act on 4 points so it is faithful
        sigma = Perm.from_cycles([(0, 1), (2, 3)], 4)
        tau = Perm.from_cycles([(0, 2), (1, 3)], 4)
    else:
        sigma = Perm(tuple((i + 1) % m for i in range(m)))
        tau = Perm(tuple((-i) % m for i in range(m)))
    G = group_from_generators(sigma.degree, [sigma, tau], cap=cap, name=f"dihedral:{m}",
                              coxeter_perms=(tau, sigma * tau))
    G.sigma = G.index(sigma)
    G.tau = G.index(tau)
    return G


def symmetric_group(n: int, cap: int | None = None) -> Group:
    if n < 1:
        raise SpecParseError("symmetric degree must be positive")
    gens = []
    if n >= 2:
        gens.append(Perm.from_cycles([(0, 1)], n))
    if n >= 3:
        gens.append(Perm(tuple((i + 1) % n for i in range(n))))
    return group_from_generators(n, gens, cap=cap, name=f"sym:{n}")


def alternating_group(n: int, cap: int | None = None) -> Group:
    if n < 1:
        raise SpecParseError("alternating degree must be positive")
    gens = [Perm.from_cycles([(0, 1, i)], n) for i in range(2, n)]
    return group_from_generators(n, gens, cap=cap, name=f"alt:{n}")


def quaternion_group(cap: int | None = None) -> Group:
    # left regular action on {1, i, -1, -i, j, -k, -j, k} (0-based labels 0..7)
    i = Perm.from_cycles([(0, 1, 2, 3), (4, 5, 6, 7)], 8)
    j = Perm.from_cycles([(0, 4, 2, 6), (1, 7, 3, 5)], 8)
    return group_from_generators(8, [i, j], cap=cap, name="quaternion:8")


def direct_product(A: Group, B: Group, cap: int | None = None, name=None) -> Group:
    """A x B acting on the disjoint union of the factors' points."""
    da, db = A.degree, B.degree
    gens = [Perm(g.images + tuple(range(da, da + db))) for g in A.generators]
    gens += [Perm(tuple(range(da)) + tuple(da + x for x in g.images)) for g in B.generators]
    return group_from_generators(da + db, gens, cap=cap, name=name)


def parse_perm_list(text: str) -> tuple[int, list[Perm]]:
    """Parse ``"(1 2 3)(4 5), (2 3)"`` (1-based) into a degree and 0-based perms."""
    text = text.strip()
    if len(text) >= 2 and text[0] == text[-1] and text[0] in "\"'":
        text = text[1:-1]
    chunks = [c.strip() for c in text.split(",")]
    cycle_lists = []
    degree = 1
    for chunk in chunks:
        if not chunk:
            raise SpecParseError(f"empty generator in {text!r}")
        if not re.fullmatch(r"(\(\s*(\d+\s*)*\)\s*)+", chunk):
            raise SpecParseError(f"cannot parse generator {chunk!r}")
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", chunk):
            pts = [int(t) for t in body.split()]
            if any(p < 1 for p in pts):
                raise SpecParseError("points are 1-based")
            if pts:
                cycles.append([p - 1 for p in pts])
                degree = max(degree, max(pts))
        cycle_lists.append(cycles)
    try:
        perms = [Perm.from_cycles(cs, degree) for cs in cycle_lists]
    except InvalidPermutation as exc:
        raise SpecParseError(str(exc)) from exc
    return degree, perms


def _split_top_level(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    quote = None
    for ch in text:
        if quote:
            cur.append(ch)
            if ch == quote:
                quote = None
            continue
        if ch in "\"'":
            quote = ch
        elif ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


_SIMPLE = re.compile(r"(cyclic|dihedral|sym|alt|quaternion):(\d+)")


def builtin_group(spec: str, cap: int | None = None) -> Group:
    """Build a group from a spec string such as ``"prod(dihedral:3,cyclic:7)"``."""
    spec = spec.strip()
    m = _SIMPLE.fullmatch(spec)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if kind == "quaternion":
            if n != 8:
                raise SpecParseError("only quaternion:8 is supported")
            return quaternion_group(cap=cap)
        builders = {"cyclic": cyclic_group, "dihedral": dihedral_group,
                    "sym": symmetric_group, "alt": alternating_group}
        return builders[kind](n, cap=cap)
    if spec.startswith("prod(") and spec.endswith(")"):
        parts = _split_top_level(spec[5:-1])
        if len(parts) != 2 or not all(parts):
            raise SpecParseError(f"prod takes exactly two group specs: {spec!r}")
        A, B = builtin_group(parts[0], cap=cap), builtin_group(parts[1], cap=cap)
        return direct_product(A, B, cap=cap, name=spec)
    if spec.startswith("perm:"):
        degree, perms = parse_perm_list(spec[5:])
        return group_from_generators(degree, perms, cap=cap, name=spec)
    raise SpecParseError(f"unrecognised group spec {spec!r}")


def product_of_subgroups(H: Subgroup, K: Subgroup) -> int:
    """Mask of the set product HK (not necessarily a subgroup)."""
    G = _same_parent(H, K)
    mt = G.mult_table
    return reduce(lambda acc, x: acc | (1 << x),
                  (mt[h][k] for h in bits(H.mask) for k in bits(K.mask)), 0)
