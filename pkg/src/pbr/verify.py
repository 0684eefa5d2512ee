"""Verification suites run by ``pbr verify --suite NAME``.

Each case is a zero-argument callable returning ``(passed, expected, computed)``
with JSON-friendly values. Cases are registered per suite together with the
statement they check.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import corpus
from .burnside import (
    basis,
    multiply_cosets,
    multiply_ghost,
    nil_square_set,
    matsuda_unit_count,
    matsuda_unit_generators,
    normal_collection_unit_formula,
    one,
    table_of_marks,
    units_bruteforce,
    decomposition_check,
    matsuda_factors,
)
from .errors import UnknownSuite
from .groups import builtin_group, center, is_nilpotent, quotient_group
from .lattice import (
    all_subgroups,
    bs,
    collection_closure,
    full_collection,
    normal_collection,
    parabolic_collection,
    standard_basic,
    subgroups_by_subset_search,
)
from .morphisms import (
    fw_alpha,
    imgfw_check,
    imgfw_counterexample_check,
    interior_count_check,
    is_seminilpotent,
    matsuda_44_check,
    oddeq_corpus_check,
    quotient_iso,
    surjection_iso,
)

Case = tuple[str, str, Callable[[], tuple[bool, object, object]]]


@dataclass
class VerifyReport:
    suite: str
    cases: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.cases)

    def to_dict(self, timings: bool = False) -> dict:
        cases = []
        for c in self.cases:
            c = dict(c)
            if not timings:
                c.pop("elapsed_ms", None)
            cases.append(c)
        return {"suite": self.suite, "status": "pass" if self.passed else "fail", "cases": cases}


def _group(spec):
    return builtin_group(spec)


def _klein_normal(G, order=4):
    return next(H for H in all_subgroups(G).normal_subgroups() if H.order == order)


def _collections(G, seed=0):
    """(name, collection) pairs: sub, normal, parabolic when defined, two random closures."""
    L = all_subgroups(G)
    out = [("sub", full_collection(L)), ("normal", normal_collection(L))]
    if getattr(G, "coxeter", None) is not None:
        out.append(("parabolic", parabolic_collection(G)))
    rng = random.Random(f"{G.name}:{seed}")
    for r in range(2):
        picks = rng.sample(range(L.n_classes), k=min(L.n_classes, rng.randint(1, 3)))
        out.append((f"closure{sorted(picks)}", collection_closure(L, picks)))
    return out


def _basics(G):
    L = all_subgroups(G)
    out = [("normal", standard_basic(L, "normal")), ("trivial", standard_basic(L, "trivial"))]
    for N in L.normal_subgroups():
        if 1 < N.order < G.order:
            out.append((f"with:{L.index_of(N)}", standard_basic(L, "with", N)))
    return out


# PAPER
# -----


def _paper_cases() -> list[Case]:
    cases: list[Case] = []

    def a4_marks():
        G = _group("alt:4")
        L = all_subgroups(G)
        D = full_collection(L)
        S = standard_basic(L, "with", _klein_normal(G))
        E = bs(D, S, G.trivial_subgroup())
        got = table_of_marks(E).as_lists()
        want = [[12, 6, 4], [0, 2, 0], [0, 0, 1]]
        return got == want, want, got

    def a4_nil():
        G = _group("alt:4")
        L = all_subgroups(G)
        S = standard_basic(L, "with", _klein_normal(G))
        E = bs(full_collection(L), S, G.trivial_subgroup())
        got = [list(x.coeffs) for x in nil_square_set(E)]
        want = [[0, 0, 0], [1, -1, -2]]
        return got == want, want, got

    def a4_units():
        got = units_bruteforce(full_collection(all_subgroups(_group("alt:4")))).order
        return got == 4, 4, got

    def a4_bs():
        G = _group("alt:4")
        L = all_subgroups(G)
        S = standard_basic(L, "with", _klein_normal(G))
        E = bs(full_collection(L), S, G.trivial_subgroup())
        got = [L.class_order(c) for c in E]
        return got == [1, 2, 3], [1, 2, 3], got

    cases += [
        ("a4-bs-trivial", "Example (A4): bs(sub(G))(<1>) = {(<1>),(H1),(H2)}", a4_bs),
        ("a4-marks", "Example (A4): table of marks 12 6 4 / 0 2 0 / 0 0 1", a4_marks),
        ("a4-nil-square", "Example (A4): solution set {(0,0,0),(1,-1,-2)}", a4_nil),
        ("a4-units", "Example (A4): |B(G)^x| = 4", a4_units),
    ]

    for m in range(2, 8):
        def dihedral(m=m):
            G = _group(f"dihedral:{m}")
            L = all_subgroups(G)
            P = parabolic_collection(G)
            S = standard_basic(L, "trivial")
            E = bs(P, S, G.trivial_subgroup())
            if m % 2:
                want_m = [[2 * m, m], [0, 1]]
                want_nil = [[0, 0], [1, -2]]
            else:
                want_m = [[2 * m, m, m], [0, 2, 0], [0, 0, 2]]
                want_nil = [[0, 0, 0], [1, -1, -1]]
            got = {"classes": len(P), "marks": table_of_marks(E).as_lists(),
                   "nil_square": [list(x.coeffs) for x in nil_square_set(E)],
                   "units": matsuda_unit_count(P, S)}
            want = {"classes": 4 if m % 2 == 0 else 3, "marks": want_m,
                    "nil_square": want_nil, "units": 4}
            return got == want, want, got
        cases.append((f"coxeter-I2({m})", "Example I2(m): |B(W,P_W)^x| = 4", dihedral))

    def presentation():
        G = _group("dihedral:5")
        s, t = G.sigma, G.tau
        st = G.mul(s, t)
        got = [G.power(s, 5), G.power(t, 2), G.power(st, 2), G.element_order(s)]
        return got == [0, 0, 0, 5], [0, 0, 0, 5], got

    def c15_units():
        got = units_bruteforce(full_collection(all_subgroups(_group("cyclic:15")))).order
        return got == 2, 2, got

    def odd_normal():
        got = {s: normal_collection_unit_formula(_group(s), verify=True) for s in corpus.ODD_ORDER}
        want = {s: 2 for s in corpus.ODD_ORDER}
        return got == want, want, got

    def a4_counter():
        r = imgfw_counterexample_check(_group("alt:4"))
        want = [1, -1, -2, 0, 1]
        got = r.witness["image"] if r.witness else None
        return r.status == "fail" and got == want, {"contained": False, "witness": want}, r.to_dict()

    def order42():
        G = _group(corpus.ORDER_42)
        got = {"seminilpotent": bool(is_seminilpotent(G, 2, 1)), "nilpotent": is_nilpotent(G),
               "imgfw": imgfw_check(G).status}
        want = {"seminilpotent": True, "nilpotent": False, "imgfw": "pass"}
        return got == want, want, got

    cases += [
        ("dihedral-presentation", "D_2m = <sigma,tau | sigma^m = tau^2 = (sigma tau)^2 = 1>", presentation),
        ("cyclic15-units", "Prop: |B(G,N(G))^x| = 2^#{H : |G:H| <= 2}, odd order", c15_units),
        ("odd-normal-units", "Thm oddeq: |B(G,N(G))| = 2 since |G| is odd", odd_normal),
        ("a4-fw-not-contained", "Remark: not necessarily alpha(B(C)^x) in B(G,N(G))^x", a4_counter),
        ("order42-seminilpotent", "Remark: H x E not nilpotent but 2-seminilpotent", order42),
    ]
    cases += [(f"oddeq-{s}", "Thm oddeq (2)-(4)", (lambda s=s: _report_case(oddeq_corpus_check(_group(s)))))
              for s in corpus.ODD_ORDER]

    def a4_factors():
        G = _group("alt:4")
        L = all_subgroups(G)
        S = standard_basic(L, "with", _klein_normal(G))
        D = full_collection(L)
        got = {"count": matsuda_unit_count(D, S),
               "factors": [[H.order, len(nil)] for H, _, nil in matsuda_factors(D, S) if H.order < G.order]}
        want = {"count": 4, "factors": [[1, 2], [4, 1]]}
        return got == want, want, got

    def a4_generators():
        G = _group("alt:4")
        L = all_subgroups(G)
        gens = matsuda_unit_generators(full_collection(L), standard_basic(L, "with", _klein_normal(G)))
        got = [g.label() for g in gens]
        want = ["-1", "1 + [G/C1#1] - [G/C2#1] - 2[G/C3#1]"]
        return got == want, want, got

    def d8_generators():
        G = _group("dihedral:4")
        L = all_subgroups(G)
        gens = matsuda_unit_generators(parabolic_collection(G), standard_basic(L, "trivial"))
        got = [list(g.coeffs) for g in gens]
        want = [[0, 0, 0, -1], [1, -1, -1, 1]]
        return got == want, want, got

    def a4_decomposition():
        G = _group("alt:4")
        L = all_subgroups(G)
        r = decomposition_check(full_collection(L), standard_basic(L, "with", _klein_normal(G)))
        got = sorted(len(v) for v in r.computed["parts"].values())
        return r.passed and got == [1, 1, 3], [1, 1, 3], got

    def normal_family():
        L = all_subgroups(_group("sym:4"))
        N = normal_collection(L)
        got = all(L.is_normal_class(c) for c in N) and len(N) == len(L.normal_subgroups())
        return got, True, list(N.class_ids)

    def parabolic_shapes():
        got = {}
        for m in (3, 4, 5):
            G = _group(f"dihedral:{m}")
            E = bs(parabolic_collection(G), standard_basic(all_subgroups(G), "trivial"), G.trivial_subgroup())
            got[m] = [E.lattice.class_order(c) for c in E]
        want = {3: [1, 2], 4: [1, 2, 2], 5: [1, 2]}
        return got == want, want, got

    def d10_units():
        U = units_bruteforce(parabolic_collection(_group("dihedral:5")))
        return U.order == 4 and len(U.generators) == 2, 4, U.order

    def seminil():
        got = {s: bool(is_seminilpotent(_group(s), 2, 1)) for s in ("sym:3", "alt:4")}
        want = {"sym:3": True, "alt:4": False}
        return got == want, want, got

    def interiors():
        bad = [[s, p, a] for s in corpus.CORPUS for p in (2, 3) for a in (1, 2)
               if not interior_count_check(_group(s), p, a).passed]
        return not bad, [], bad

    cases += [
        ("a4-matsuda-factors", "Example (A4) with Thm mdt1: |B(G)^x| = 2 * 2 * 1", a4_factors),
        ("a4-unit-generators", "Example (A4): solution vector (1,-1,-2)", a4_generators),
        ("d8-parabolic-generators", "Example I2(m), m even: solution (1,-1,-1)", d8_generators),
        ("a4-decomposition", "Lemma matsudahodai with bs(sub(G))(<1>) = {(<1>),(H1),(H2)}", a4_decomposition),
        ("normal-collection", "N(G) is the set of all normal subgroups", normal_family),
        ("parabolic-bs-classes", "Example I2(m): {(<1>),(<tau>)} m odd", parabolic_shapes),
        ("dihedral5-parabolic-units", "Example I2(m): |B(W,P_W)^x| = 4", d10_units),
        ("seminilpotency", "Def seminil: #{N normal : K <= N, |G:N| = p^a} = 1 mod p", seminil),
        ("normal-interior", "Prop: overgroups of K and of its normal interior agree", interiors),
    ]
    cases += [(f"iso-{spec}-by-{w}", "Lemma zyouyo / Thm teiri1", (lambda spec=spec, w=w: _iso_case(spec, w)))
              for spec, w in ISO_PAIRS]
    return cases


def _report_case(report):
    return report.passed, "pass", report.to_dict()


# LATTICE ORACLE
# --------------


def _lattice_cases() -> list[Case]:
    cases = []
    for spec in corpus.CORPUS:
        def check(spec=spec):
            G = _group(spec)
            if G.order > 24:
                return True, "skipped", "order > 24"
            got = {H.mask for H in all_subgroups(G).subgroups}
            want = subgroups_by_subset_search(G)
            return got == want, len(want), len(got)
        cases.append((f"lattice-{spec}", "sub(G): set of subgroups", check))
    return cases


# RING AXIOMS
# -----------


def _ring_cases() -> list[Case]:
    cases = []
    for spec in corpus.CORPUS:
        def check(spec=spec):
            G = _group(spec)
            bad = []
            for name, D in _collections(G):
                B = [basis(D, c) for c in D]
                u = one(D)
                for x in B:
                    if multiply_cosets(u, x) != x:
                        bad.append([name, "identity"])
                    for y in B:
                        xy = multiply_cosets(x, y)
                        if xy != multiply_ghost(x, y):
                            bad.append([name, "oracle", list(x.coeffs), list(y.coeffs)])
                        if xy != multiply_cosets(y, x):
                            bad.append([name, "commutative"])
                if len(D) <= 8:
                    for x in B:
                        for y in B:
                            xy = multiply_cosets(x, y)
                            for z in B:
                                if multiply_cosets(xy, z) != multiply_cosets(x, multiply_cosets(y, z)):
                                    bad.append([name, "associative"])
            return not bad, [], bad[:5]
        cases.append((f"ring-{spec}", "[G/H][G/K] = sum over HgK of [G/(H ∩ gKg^-1)]", check))
    return cases


# MATSUDA
# -------


def _matsuda_cases() -> list[Case]:
    cases = []
    for spec in corpus.CORPUS:
        def check(spec=spec):
            G = _group(spec)
            bad = []
            for dname, D in _collections(G):
                U = units_bruteforce(D)
                for sname, S in _basics(G):
                    count = matsuda_unit_count(D, S)
                    gens = matsuda_unit_generators(D, S, verify=False)
                    if count != U.order or U.generated_by(gens) != set(U.all_units):
                        bad.append({"collection": dname, "basic": sname, "matsuda": count,
                                    "bruteforce": U.order})
                    if not decomposition_check(D, S).passed:
                        bad.append({"collection": dname, "basic": sname, "decomposition": "fail"})
            return not bad, [], bad[:5]
        cases.append((f"matsuda-{spec}", "Thm mdt1: |B(G,D)^x| = 2 prod |overline(B(G,bs(D,H)))|", check))

    def a4():
        G = _group("alt:4")
        L = all_subgroups(G)
        got = matsuda_unit_count(full_collection(L), standard_basic(L, "with", _klein_normal(G)))
        return got == 4, 4, got
    cases.append(("matsuda-a4-count", "Example (A4): |B(G)^x| = 4", a4))

    seiki = []
    for spec in corpus.CORPUS:
        def formula(spec=spec):
            G = _group(spec)
            want = normal_collection_unit_formula(G)
            got = units_bruteforce(normal_collection(all_subgroups(G))).order
            return got == want, want, got
        seiki.append((f"seiki-{spec}", "Prop seiki: |B(G,N(G))^x| = 2^#{H : |G:H| <= 2}", formula))
    return cases + seiki


# MORPHISMS
# ---------

ISO_PAIRS = [("alt:4", 4), ("sym:4", 4), ("dihedral:4", "center"), ("cyclic:12", 2), ("cyclic:6", 3)]


def _normal_by(G, which):
    if which == "center":
        return center(G)
    return next(N for N in all_subgroups(G).normal_subgroups() if N.order == which)


def _iso_case(spec, which):
    G = _group(spec)
    N = _normal_by(G, which)
    q = quotient_iso(G, N)
    _, pi = quotient_group(G, N)
    s = surjection_iso(pi, full_collection(all_subgroups(G)))
    got = {"quotient_iso": q.verified, "surjection_iso": s.verified,
           "classes": [len(q.source), len(s.target)]}
    ok = q.verified and s.verified and len(q.source) == len(q.target) == len(s.target)
    return ok, {"quotient_iso": True, "surjection_iso": True}, got


def _morphism_cases() -> list[Case]:
    cases = []
    for spec, which in ISO_PAIRS:
        cases.append((f"iso-{spec}-by-{which}", "Lemma zyouyo / Thm teiri1: B(G1,D_ker f) = B(G2,f(D_ker f))",
                      lambda spec=spec, which=which: _iso_case(spec, which)))
    for spec in ["sym:3", "cyclic:6", "alt:4", "dihedral:4"]:
        def m44(spec=spec):
            G = _group(spec)
            bad = []
            for N in all_subgroups(G).normal_subgroups():
                _, pi = quotient_group(G, N)
                for name, D in _collections(G):
                    r = matsuda_44_check(pi, D)
                    if not r.passed:
                        bad.append({"kernel_order": N.order, "collection": name, "report": r.to_dict()})
            return not bad, [], bad[:3]
        cases.append((f"matsuda44-{spec}", "Thm (ma82 4.4)", m44))
    for spec in corpus.CORPUS:
        def interior(spec=spec):
            G = _group(spec)
            got = {f"{p}^{a}": interior_count_check(G, p, a).status for p in (2, 3) for a in (1, 2)}
            return all(v == "pass" for v in got.values()), "pass", got
        cases.append((f"interior-{spec}", "Prop: overgroups of K and of Kbar coincide", interior))
    return cases


# FROBENIUS-WIELANDT
# ------------------


def _fw_cases() -> list[Case]:
    cases = []
    for spec in ["sym:3", "alt:4", "dihedral:4", "cyclic:12"]:
        def mult(spec=spec):
            G = _group(spec)
            alpha = fw_alpha(G)
            src = alpha.source_collection
            B = [basis(src, c) for c in src]
            bad = 0
            if alpha.apply(one(src)) != one(alpha.target_collection):
                bad += 1
            for x in B:
                for y in B:
                    if alpha.apply(multiply_cosets(x, y)) != multiply_cosets(alpha.apply(x), alpha.apply(y)):
                        bad += 1
            return bad == 0, 0, bad
        cases.append((f"fw-hom-{spec}", "Thm (dsy92): alpha is a ring homomorphism", mult))
    targets = ["sym:3"] + [f"cyclic:{n}" for n in range(2, 25, 2)] + [corpus.ORDER_42]
    for spec in targets:
        cases.append((f"imgfw-{spec}", "Thm imgfw: alpha(B(C)^x) in B(G,N(G))^x",
                      lambda spec=spec: _report_case(imgfw_check(_group(spec)))))

    def a4():
        r = imgfw_counterexample_check(_group("alt:4"))
        got = r.witness["image"] if r.witness else None
        return r.status == "fail" and got == [1, -1, -2, 0, 1], [1, -1, -2, 0, 1], got
    cases.append(("fw-a4-not-contained", "Remark: see Example (A4)", a4))

    def semi():
        got = {"sym:3": bool(is_seminilpotent(_group("sym:3"), 2, 1)),
               "alt:4": bool(is_seminilpotent(_group("alt:4"), 2, 1)),
               "order42": bool(is_seminilpotent(_group(corpus.ORDER_42), 2, 1)),
               "order42_nilpotent": is_nilpotent(_group(corpus.ORDER_42))}
        want = {"sym:3": True, "alt:4": False, "order42": True, "order42_nilpotent": False}
        return got == want, want, got
    cases.append(("seminilpotency", "Def seminil", semi))
    return cases


SUITES: dict[str, Callable[[], list[Case]]] = {
    "paper": _paper_cases,
    "lattice-oracle": _lattice_cases,
    "ring-axioms": _ring_cases,
    "matsuda": _matsuda_cases,
    "morphisms": _morphism_cases,
    "fw": _fw_cases,
}


def verify_suite(name: str) -> VerifyReport:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    report = VerifyReport(name)
    for case_name, anchor, fn in SUITES[name]():
        start = time.perf_counter()
        try:
            ok, expected, computed = fn()
            status = "pass" if ok else "fail"
        except Exception as exc:  # a crashing case is a failed case
            status, expected, computed = "fail", None, f"{type(exc).__name__}: {exc}"
        elapsed = int((time.perf_counter() - start) * 1000)
        report.cases.append({"name": case_name, "paper_anchor": anchor, "status": status,
                             "expected": expected, "computed": computed, "elapsed_ms": elapsed})
    report.cases.sort(key=lambda c: c["name"])
    return report
