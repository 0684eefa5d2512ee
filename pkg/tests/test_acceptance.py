"""Acceptance criteria, one test (or parametrized family) per criterion.

The terminal summary prints one ``criterion N ... PASS|FAIL`` line each.
"""

import io
import json
import random
import time

import pytest

from pbr import corpus
from pbr.burnside import (
    basis,
    decomposition_check,
    matsuda_unit_count,
    matsuda_unit_generators,
    multiply_cosets,
    multiply_ghost,
    nil_square_set,
    one,
    table_of_marks,
    units_bruteforce,
)
from pbr.cli import run
from pbr.groups import builtin_group, center, is_nilpotent, lower_central_series, quotient_group
from pbr.lattice import (
    all_subgroups,
    bs,
    collection_closure,
    full_collection,
    normal_collection,
    parabolic_collection,
    standard_basic,
    subgroups_by_subset_search,
)
from pbr.morphisms import (
    fw_alpha,
    imgfw_check,
    imgfw_counterexample_check,
    interior_count_check,
    is_seminilpotent,
    oddeq_corpus_check,
    quotient_iso,
    surjection_iso,
)

criterion = pytest.mark.criterion


def fresh(spec):
    """A group built from scratch, so timings include lattice and mark work."""
    return builtin_group(spec)


def collections_of(G, seed):
    L = all_subgroups(G)
    out = [full_collection(L), normal_collection(L)]
    if G.coxeter is not None:
        out.append(parabolic_collection(G))
    rng = random.Random(f"{G.name}/{seed}")
    for _ in range(2):
        out.append(collection_closure(L, rng.sample(range(L.n_classes), k=min(2, L.n_classes))))
    return out


def basics_of(G):
    L = all_subgroups(G)
    out = [standard_basic(L, "normal"), standard_basic(L, "trivial")]
    out += [standard_basic(L, "with", N) for N in L.normal_subgroups() if 1 < N.order < G.order]
    return out


@criterion(1, "A4 unit group")
def test_01_a4_units():
    start = time.perf_counter()
    buf = io.StringIO()
    assert run(["units", "--group", "alt:4", "--collection", "all"], stdout=buf) == 0
    assert json.loads(buf.getvalue())["result"]["order"] == 4
    G = fresh("alt:4")
    L = all_subgroups(G)
    V4 = next(N for N in L.normal_subgroups() if N.order == 4)
    E = bs(full_collection(L), standard_basic(L, "with", V4), G.trivial_subgroup())
    assert [x.coeffs for x in nil_square_set(E)] == [(0, 0, 0), (1, -1, -2)]
    assert table_of_marks(E).as_lists() == [[12, 6, 4], [0, 2, 0], [0, 0, 1]]
    assert time.perf_counter() - start < 1.0


@criterion(2, "Coxeter I2(m) parabolic units")
@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 7])
def test_02_coxeter(m):
    start = time.perf_counter()
    G = fresh(f"dihedral:{m}")
    L = all_subgroups(G)
    P = parabolic_collection(G)
    E = bs(P, standard_basic(L, "trivial"), G.trivial_subgroup())
    want = [[2 * m, m], [0, 1]] if m % 2 else [[2 * m, m, m], [0, 2, 0], [0, 0, 2]]
    assert table_of_marks(E).as_lists() == want
    assert units_bruteforce(P).order == 4
    assert time.perf_counter() - start < 1.0


@criterion(3, "normal-collection unit formula")
def test_03_seiki():
    start = time.perf_counter()
    groups = corpus.CORPUS
    assert len(groups) >= 12
    for spec in groups:
        G = builtin_group(spec)
        L = all_subgroups(G)
        exponent = sum(1 for H in L.subgroups if G.order <= 2 * H.order)
        assert units_bruteforce(normal_collection(L)).order == 2 ** exponent, spec
    assert time.perf_counter() - start < 30.0


@criterion(4, "Matsuda count and generators")
def test_04_matsuda():
    for spec in corpus.CORPUS:
        G = builtin_group(spec)
        for D in collections_of(G, 4):
            U = units_bruteforce(D)
            for S in basics_of(G):
                assert matsuda_unit_count(D, S) == U.order, spec
                gens = matsuda_unit_generators(D, S, verify=False)
                assert U.generated_by(gens) == set(U.all_units), spec


@criterion(5, "multiplication oracle and ring axioms")
def test_05_multiplication():
    for spec in corpus.CORPUS:
        G = builtin_group(spec)
        for D in collections_of(G, 5):
            B = [basis(D, c) for c in D]
            u = one(D)
            for x in B:
                assert multiply_cosets(u, x) == x
                for y in B:
                    xy = multiply_cosets(x, y)
                    assert xy == multiply_ghost(x, y), spec
                    assert xy == multiply_cosets(y, x)
                    if len(D) <= 8:
                        for z in B:
                            assert multiply_cosets(xy, z) == multiply_cosets(x, multiply_cosets(y, z))


@criterion(6, "quotient and surjection isomorphisms")
@pytest.mark.parametrize("spec, which", [("alt:4", 4), ("sym:4", 4), ("dihedral:4", "center"),
                                         ("cyclic:12", 2), ("cyclic:6", 3)])
def test_06_isomorphisms(spec, which):
    G = builtin_group(spec)
    L = all_subgroups(G)
    N = center(G) if which == "center" else next(H for H in L.normal_subgroups() if H.order == which)
    q = quotient_iso(G, N)
    _, pi = quotient_group(G, N)
    s = surjection_iso(pi, full_collection(L))
    assert q.verified and s.verified
    for iso in (q, s):
        for h in iso.source:
            for k in iso.source:
                x, y = basis(iso.source, h), basis(iso.source, k)
                assert iso.apply(multiply_cosets(x, y)) == multiply_cosets(iso.apply(x), iso.apply(y))


@criterion(7, "Frobenius-Wielandt map")
def test_07_frobenius_wielandt():
    for spec in ("sym:3", "alt:4", "dihedral:4", "cyclic:12"):
        alpha = fw_alpha(builtin_group(spec))
        D = alpha.source_collection
        for i in D:
            for j in D:
                bi, bj = basis(D, i), basis(D, j)
                assert alpha.apply(multiply_cosets(bi, bj)) == multiply_cosets(alpha.apply(bi), alpha.apply(bj))
    for spec in ["sym:3", corpus.ORDER_42] + [f"cyclic:{n}" for n in range(2, 25, 2)]:
        assert imgfw_check(builtin_group(spec)).status == "pass", spec
    r = imgfw_counterexample_check(builtin_group("alt:4"))
    assert r.status == "fail" and r.computed["contained"] is False
    assert r.witness["image_label"] == "1 + [G/C1#1] - [G/C2#1] - 2[G/C3#1]"


@criterion(8, "seminilpotency")
def test_08_seminilpotency():
    assert is_seminilpotent(builtin_group("sym:3"), 2, 1)
    assert not is_seminilpotent(builtin_group("alt:4"), 2, 1)
    G = builtin_group(corpus.ORDER_42)
    assert is_seminilpotent(G, 2, 1)
    assert not is_nilpotent(G)
    assert lower_central_series(G)[-1].order > 1


@criterion(9, "normal-interior overgroups")
def test_09_interior():
    for spec in corpus.CORPUS:
        G = builtin_group(spec)
        for p in (2, 3):
            for a in (1, 2):
                assert interior_count_check(G, p, a).status == "pass", (spec, p, a)


@criterion(10, "odd-order unit groups")
def test_10_odd_order():
    for spec in ("cyclic:15", "cyclic:21", "cyclic:27", corpus.C7_C3):
        r = oddeq_corpus_check(builtin_group(spec))
        assert r.computed == {"full": 2, "normal": 2, "over_derived": 2}, spec


@criterion(11, "lattice oracle")
def test_11_lattice_oracle():
    start = time.perf_counter()
    checked = 0
    for spec in corpus.CORPUS:
        G = builtin_group(spec)
        if G.order > 24:
            continue
        assert {H.mask for H in all_subgroups(G).subgroups} == subgroups_by_subset_search(G), spec
        checked += 1
    assert checked >= 30
    assert time.perf_counter() - start < 60.0


@criterion(12, "Matsuda decomposition")
def test_12_decomposition():
    for spec in corpus.CORPUS:
        G = builtin_group(spec)
        for D in collections_of(G, 12):
            for S in basics_of(G):
                r = decomposition_check(D, S)
                assert r.passed, (spec, r.witness)
