"""Partial Burnside rings B(G, D): marks, products, units and Matsuda's theorem.

Elements are integer coefficient vectors over the classes of a closed family
``D`` in its canonical class order (basis ``[G/H]``). The ghost map sends an
element to its vector of marks, and is computed exactly with Python integers.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InternalInconsistency, ParentMismatch, SearchCapExceeded
from .groups import Subgroup, bits, conjugate_mask
from .lattice import (
    BasicCollection,
    Collection,
    SubgroupLattice,
    bs,
    normal_collection,
    all_subgroups,
    s_upper_d,
)
from .report import Report

DEFAULT_SEARCH_CAP = 24


def default_search_cap() -> int:
    return int(os.environ.get("PBR_SEARCH_CAP", DEFAULT_SEARCH_CAP))


# MARKS
# -----


def mark(K: Subgroup, H: Subgroup) -> int:
    """#{gH in G/H : K <= g H g^-1}, scanning left coset representatives of H."""
    if K.parent is not H.parent:
        raise ParentMismatch("K and H lie in different groups")
    G = H.parent
    mt = G.mult_table
    hs = list(bits(H.mask))
    covered = 0
    count = 0
    for g in range(G.order):
        if covered >> g & 1:
            continue
        for h in hs:
            covered |= 1 << mt[g][h]
        if K.mask & ~conjugate_mask(G, H.mask, g) == 0:
            count += 1
    return count


def class_mark(L: SubgroupLattice, k: int, h: int) -> int:
    """Mark of class k on [G/H] for H in class h, cached on the lattice."""
    if not L.subconj[k][h]:
        return 0
    key = ("mark", k, h)
    hit = L._cache.get(key)
    if hit is None:
        hit = L._cache[key] = mark(L.rep(k), L.rep(h))
    return hit


@dataclass(frozen=True)
class MarkMatrix:
    """Table of marks of a closed family: ``entries[i][j]`` is the mark of the
    i-th class on [G/H_j]. Upper triangular in canonical order."""

    collection: Collection
    entries: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def diagonal(self) -> list[int]:
        return [self.entries[i][i] for i in range(len(self.entries))]

    def determinant(self) -> int:
        d = 1
        for x in self.diagonal():
            d *= x
        return d


def table_of_marks(D: Collection) -> MarkMatrix:
    L = D.lattice
    ids = D.class_ids
    key = ("tom", ids)
    entries = L._cache.get(key)
    if entries is None:
        entries = L._cache[key] = tuple(tuple(class_mark(L, k, h) for h in ids) for k in ids)
    return MarkMatrix(D, entries)


# ELEMENTS
# --------


@dataclass(frozen=True)
class NonIntegral:
    """Returned by :func:`unghost` when a coefficient is not an integer."""

    position: int
    value: Fraction

    def __bool__(self):
        return False


@dataclass(frozen=True)
class BurnsideElement:
    collection: Collection
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != len(self.collection):
            raise ValueError("coefficient vector length differs from the number of classes")

    def _check(self, other: BurnsideElement) -> None:
        if other.collection != self.collection:
            raise ParentMismatch("elements of different partial Burnside rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = other * one(self.collection)
        self._check(other)
        return BurnsideElement(self.collection, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return BurnsideElement(self.collection, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return BurnsideElement(self.collection, tuple(other * a for a in self.coeffs))
        return multiply_cosets(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def ghost(self) -> tuple[int, ...]:
        return ghost(self)

    def is_unit(self) -> bool:
        return all(v in (1, -1) for v in ghost(self))

    def support(self) -> list[int]:
        return [c for c, a in zip(self.collection.class_ids, self.coeffs) if a]

    def coefficient(self, cid: int) -> int:
        return self.coeffs[self.collection.position(cid)]

    def to(self, E: Collection) -> BurnsideElement:
        """Re-express in the family E of the same lattice (support must lie in E)."""
        if E.lattice is not self.collection.lattice:
            raise ParentMismatch("families live on different lattices")
        out = [0] * len(E)
        for c, a in zip(self.collection.class_ids, self.coeffs):
            if a:
                if c not in E:
                    raise ValueError(f"support class {c} is not in the target family")
                out[E.position(c)] = a
        return BurnsideElement(E, tuple(out))

    def label(self) -> str:
        """Readable form such as ``1 + [G/C1#1] - 2[G/C3#1]``."""
        L = self.collection.lattice
        terms = []
        for c, a in zip(self.collection.class_ids, self.coeffs):
            if not a:
                continue
            mag = abs(a)
            if c == L.top:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + f"[G/{L.label(c)}]"
            terms.append((c != L.top, "-" if a < 0 else "+", body))
        if not terms:
            return "0"
        terms.sort(key=lambda t: t[0])
        out = ("-" if terms[0][1] == "-" else "") + terms[0][2]
        for _, sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"<BurnsideElement {self.label()}>"


def zero(D: Collection) -> BurnsideElement:
    return BurnsideElement(D, (0,) * len(D))


def basis(D: Collection, cid: int) -> BurnsideElement:
    """[G/H] for H in class ``cid``."""
    c = [0] * len(D)
    c[D.position(cid)] = 1
    return BurnsideElement(D, tuple(c))


def one(D: Collection) -> BurnsideElement:
    return basis(D, D.lattice.top)


def element(D: Collection, coeffs: Sequence[int]) -> BurnsideElement:
    return BurnsideElement(D, tuple(coeffs))


# GHOST MAP
# ---------


def ghost(x: BurnsideElement) -> tuple[int, ...]:
    """Marks of x at every class of its family."""
    M = table_of_marks(x.collection).entries
    c = x.coeffs
    return tuple(sum(row[j] * c[j] for j in range(i, len(c)) if c[j]) for i, row in enumerate(M))


def unghost(D: Collection, v: Sequence[int]) -> BurnsideElement | NonIntegral:
    """Solve M c = v by back-substitution; NonIntegral if c is not integral."""
    M = table_of_marks(D).entries
    n = len(M)
    if len(v) != n:
        raise ValueError("ghost vector length differs from the number of classes")
    c = [0] * n
    for i in range(n - 1, -1, -1):
        num = v[i] - sum(M[i][j] * c[j] for j in range(i + 1, n))
        q, r = divmod(num, M[i][i])
        if r:
            return NonIntegral(i, Fraction(num, M[i][i]))
        c[i] = q
    return BurnsideElement(D, tuple(c))


# MULTIPLICATION
# --------------


def basis_product(L: SubgroupLattice, h: int, k: int) -> dict[int, int]:
    """[G/H][G/K] as {class id: coefficient}, by sweeping double cosets H g K."""
    if h > k:
        h, k = k, h
    key = ("prod", h, k)
    hit = L._cache.get(key)
    if hit is not None:
        return hit
    G = L.parent
    mt = G.mult_table
    H, K = L.rep(h), L.rep(k)
    hs, ks = list(bits(H.mask)), list(bits(K.mask))
    covered = 0
    out: dict[int, int] = {}
    for g in range(G.order):
        if covered >> g & 1:
            continue
        for a in hs:
            row = mt[mt[a][g]]
            for b in ks:
                covered |= 1 << row[b]
        meet = H.mask & conjugate_mask(G, K.mask, g)
        c = L.class_id(Subgroup(G, meet))
        out[c] = out.get(c, 0) + 1
    L._cache[key] = out
    return out


def multiply_cosets(x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    """Product through the double coset formula, extended bilinearly."""
    x._check(y)
    D = x.collection
    L = D.lattice
    acc = [0] * len(D)
    ids = D.class_ids
    for i, a in enumerate(x.coeffs):
        if not a:
            continue
        for j, b in enumerate(y.coeffs):
            if not b:
                continue
            for c, m in basis_product(L, ids[i], ids[j]).items():
                acc[D.position(c)] += a * b * m
    return BurnsideElement(D, tuple(acc))


def multiply_ghost(x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    """Product through pointwise multiplication of ghost vectors."""
    x._check(y)
    v = [a * b for a, b in zip(ghost(x), ghost(y))]
    out = unghost(x.collection, v)
    if isinstance(out, NonIntegral):
        raise InternalInconsistency(f"ghost product is not integral at position {out.position}")
    return out


# TRIANGULAR SEARCH
# -----------------


def solve_targets(M: Sequence[Sequence[int]], targets: Sequence[int]) -> list[tuple[int, ...]]:
    """All integer c with M c in ``targets``^n, for upper triangular M.

    Coordinates are fixed from the last class down; a branch dies as soon as a
    coefficient would be non-integral.
    """
    n = len(M)
    c = [0] * n
    out: list[tuple[int, ...]] = []

    def walk(i: int) -> None:
        if i < 0:
            out.append(tuple(c))
            return
        row = M[i]
        partial = sum(row[j] * c[j] for j in range(i + 1, n))
        d = row[i]
        for t in targets:
            q, r = divmod(t - partial, d)
            if not r:
                c[i] = q
                walk(i - 1)
        c[i] = 0

    walk(n - 1)
    return sorted(out)


def nil_square_set(E: Collection) -> list[BurnsideElement]:
    """All x in B(G, E) with x^2 + 2x = 0, i.e. ghost values in {0, -2}.

    For the empty family this is the zero ring, so the result is ``[0]``.
    """
    M = table_of_marks(E).entries
    return [BurnsideElement(E, c) for c in solve_targets(M, (0, -2))]


def _pattern(x: BurnsideElement) -> int:
    # bit i set iff the i-th ghost coordinate is -1
    return sum(1 << i for i, v in enumerate(ghost(x)) if v == -1)


def _xor_span(patterns: Iterable[int]) -> set[int]:
    span = {0}
    for p in patterns:
        if p not in span:
            span |= {q ^ p for q in span}
    return span


@dataclass(frozen=True)
class UnitGroup:
    """The unit group of B(G, D), an elementary abelian 2-group."""

    collection: Collection
    all_units: tuple[BurnsideElement, ...]
    generators: tuple[BurnsideElement, ...]

    @property
    def order(self) -> int:
        return len(self.all_units)

    def __contains__(self, x: BurnsideElement) -> bool:
        return x in set(self.all_units)

    def patterns(self) -> set[int]:
        return {_pattern(u) for u in self.all_units}

    def generated_by(self, gens: Iterable[BurnsideElement]) -> set[BurnsideElement]:
        """Subgroup generated by ``gens``, which must be units of this ring."""
        by_pattern = {_pattern(u): u for u in self.all_units}
        return {by_pattern[p] for p in _xor_span(_pattern(g.to(self.collection)) for g in gens)}


def units_bruteforce(D: Collection, search_cap: int | None = None) -> UnitGroup:
    """Enumerate every unit of B(G, D): integral elements with ghost in {1, -1}^n."""
    if not D.is_collection:
        raise ValueError("unit groups need a collection (the family must contain G)")
    cap = default_search_cap() if search_cap is None else search_cap
    if len(D) > cap:
        raise SearchCapExceeded(f"{len(D)} classes exceed the search cap {cap}")
    M = table_of_marks(D).entries
    units = tuple(BurnsideElement(D, c) for c in solve_targets(M, (1, -1)))
    patterns = [_pattern(u) for u in units]
    pset = set(patterns)
    if len(pset) != len(units):
        raise InternalInconsistency("two units share a ghost vector")
    for p in patterns:
        for q in patterns:
            if p ^ q not in pset:
                raise InternalInconsistency("unit set is not closed under multiplication")
    basis_rows: dict[int, int] = {}
    gens = []
    for u, p in zip(units, patterns):
        # reduce against kept patterns (GF(2) elimination keyed on leading bit)
        r = p
        while r:
            top = r.bit_length() - 1
            if top not in basis_rows:
                break
            r ^= basis_rows[top]
        if r:
            basis_rows[r.bit_length() - 1] = r
            gens.append(u)
    if 1 << len(gens) != len(units):
        raise InternalInconsistency("unit count is not 2^(number of generators)")
    return UnitGroup(D, units, tuple(gens))


# MATSUDA'S THEOREM
# -----------------


def matsuda_factors(D: Collection, S: BasicCollection) -> list[tuple[Subgroup, Collection, list[BurnsideElement]]]:
    """(H, bs(D, H), nil-square set of bs(D, H)) for every H in S."""
    return [(H, E, nil_square_set(E)) for H in S.subgroups() for E in [bs(D, S, H)]]


def matsuda_unit_count(D: Collection, S: BasicCollection) -> int:
    """2 * product over H in S other than G of #{x in B(G, bs(D, H)) : x^2 + 2x = 0}."""
    top = D.group.whole().mask
    count = 2
    for H, _, nil in matsuda_factors(D, S):
        if H.mask != top:
            count *= len(nil)
    return count


def matsuda_unit_generators(D: Collection, S: BasicCollection, verify: bool = True) -> list[BurnsideElement]:
    """-1 together with 1 + x for every nonzero nil-square x of every bs(D, H).

    With ``verify`` the generated subgroup is compared against
    :func:`units_bruteforce`.
    """
    unit = one(D)
    gens = [-unit]
    for _, E, nil in matsuda_factors(D, S):
        for x in nil:
            if x.is_zero():
                continue
            u = unit + x.to(D)
            if not u.is_unit():
                raise InternalInconsistency(f"1 + x is not a unit for x = {x.label()}")
            if u not in gens:
                gens.append(u)
    if verify:
        U = units_bruteforce(D)
        if U.generated_by(gens) != set(U.all_units):
            raise InternalInconsistency("Matsuda generators do not generate the unit group")
    return gens


def normal_collection_unit_formula(G, verify: bool = False) -> int:
    """2 ** #{H <= G : |G:H| <= 2}; every such subgroup is normal."""
    L = all_subgroups(G)
    count = sum(1 for H in L.subgroups if H.index() <= 2)
    value = 2 ** count
    if verify:
        got = units_bruteforce(normal_collection(L)).order
        if got != value:
            raise InternalInconsistency(f"brute force gives {got}, formula gives {value}")
    return value


def decomposition_check(D: Collection, S: BasicCollection) -> Report:
    """Verify the three clauses of the direct-sum decomposition of B(G, D) along S."""
    L = D.lattice
    G = D.group
    claim = "B(G,D) = sum of B(G,bs(D,H)) over H in S^D"
    parts = {L.index_of(H): bs(D, S, H) for H in s_upper_d(D, S)}
    computed = {"parts": {str(k): list(v.class_ids) for k, v in sorted(parts.items())}}

    seen: dict[int, int] = {}
    for k, E in parts.items():
        for c in E:
            if c in seen:
                return Report(claim, "fail", {"clause": 1, "class": c, "in_parts": [seen[c], k]}, computed)
            seen[c] = k
    if set(seen) != set(D.class_ids):
        missing = sorted(set(D.class_ids) - set(seen))
        return Report(claim, "fail", {"clause": 1, "uncovered": missing}, computed)

    smembers = S.subgroups()
    for k1, E1 in parts.items():
        H1 = L.subgroups[k1]
        for k2, E2 in parts.items():
            if k2 < k1:
                continue
            H2 = L.subgroups[k2]
            meet = Subgroup(G, H1.mask & H2.mask)
            between = [K for K in smembers if meet < K]
            for a in E1:
                for b in E2:
                    for c in basis_product(L, a, b):
                        F = L.rep(c)
                        if not meet <= F or any(K <= F for K in between):
                            return Report(claim, "fail",
                                          {"clause": 2, "parts": [k1, k2], "classes": [a, b], "product_class": c},
                                          computed)

    if D.is_collection:
        top = bs(D, S, G.whole())
        if top.class_ids != (L.top,):
            return Report(claim, "fail", {"clause": 3, "bs_top": list(top.class_ids)}, computed)
    return Report(claim, "pass", None, computed)
