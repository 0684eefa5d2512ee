"""``pbr`` command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass

from . import __version__
from .burnside import (
    decomposition_check,
    matsuda_factors,
    matsuda_unit_count,
    matsuda_unit_generators,
    table_of_marks,
    units_bruteforce,
)
from .errors import PBRError, SpecParseError, VerificationFailed
from .groups import Group, builtin_group, quotient_group
from .lattice import (
    Collection,
    SubgroupLattice,
    all_subgroups,
    collection_closure,
    full_collection,
    normal_collection,
    parabolic_collection,
    restrict_over,
    standard_basic,
    sub_over,
)
from .morphisms import (
    fw_alpha,
    imgfw_check,
    imgfw_counterexample_check,
    interior_count_check,
    is_seminilpotent,
    quotient_iso,
    surjection_iso,
)
from .verify import SUITES, verify_suite

COMMANDS = ["lattice", "marks", "units", "matsuda", "quotient-iso", "surjection-iso",
            "fw", "seminilpotent", "verify"]


@dataclass
class RunConfig:
    command: str
    group_spec: str | None = None
    collection_spec: str = "all"
    basic: str = "normal"
    p: int = 2
    a: int = 1
    quotient_by: int | None = None
    output: str = "json"
    order_cap: int | None = None
    search_cap: int | None = None
    suite: str = "paper"
    timings: bool = False

    def __post_init__(self):
        for name in ("order_cap", "search_cap"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise SpecParseError(f"--{name.replace('_', '-')} must be positive")
        needs_group = self.command not in ("verify",)
        if needs_group and not self.group_spec:
            raise SpecParseError(f"command {self.command!r} needs --group")
        if self.command in ("quotient-iso", "surjection-iso") and self.quotient_by is None:
            raise SpecParseError(f"command {self.command!r} needs --quotient-by")


# SPEC PARSING
# ------------


def _subgroup(L: SubgroupLattice, text: str):
    try:
        i = int(text)
    except ValueError:
        raise SpecParseError(f"subgroup index must be an integer, got {text!r}") from None
    if not 0 <= i < len(L.subgroups):
        raise SpecParseError(f"subgroup index {i} out of range (0..{len(L.subgroups) - 1})")
    return L.subgroups[i]


def parse_collection(L: SubgroupLattice, spec: str) -> Collection:
    spec = spec.strip()
    if spec == "all":
        return full_collection(L)
    if spec == "normal":
        return normal_collection(L)
    if spec == "parabolic":
        return parabolic_collection(L.parent)
    if spec.startswith("over:"):
        return sub_over(L, _subgroup(L, spec[5:]))
    m = re.fullmatch(r"closure:\[\s*([\d\s,]*)\]", spec)
    if m:
        ids = [int(t) for t in m.group(1).replace(",", " ").split()]
        if any(not 0 <= c < L.n_classes for c in ids):
            raise SpecParseError(f"class id out of range in {spec!r}")
        return collection_closure(L, ids)
    if spec.startswith("restrict(") and spec.endswith(")"):
        inner = spec[len("restrict("):-1]
        head, sep, idx = inner.rpartition(",")
        if not sep:
            raise SpecParseError(f"restrict takes a collection spec and a subgroup index: {spec!r}")
        return restrict_over(parse_collection(L, head), _subgroup(L, idx))
    raise SpecParseError(f"unrecognised collection spec {spec!r}")


def parse_basic(L: SubgroupLattice, spec: str):
    if spec in ("normal", "trivial"):
        return standard_basic(L, spec)
    if spec.startswith("with:"):
        return standard_basic(L, "with", _subgroup(L, spec[5:]))
    raise SpecParseError(f"unrecognised basic collection spec {spec!r}")


# JSON HELPERS
# ------------


def _class_info(L: SubgroupLattice, cid: int) -> dict:
    G = L.parent
    gens = [G.elements[g].cycle_string() for g in L.generators(L.rep(cid))]
    return {"id": cid, "label": L.label(cid), "order": L.class_order(cid),
            "size": L.class_size(cid), "normal": L.is_normal_class(cid), "generators": gens}


def _header(cfg: RunConfig, G: Group, D: Collection | None) -> dict:
    out = {"version": __version__,
           "group": {"spec": cfg.group_spec, "order": G.order, "degree": G.degree}}
    if D is not None:
        out["collection"] = {"spec": cfg.collection_spec,
                             "classes": [_class_info(D.lattice, c) for c in D]}
    return out


# COMMANDS
# --------


def _cmd_lattice(cfg, G, L):
    result = {
        "subgroups": [{"index": i, "order": H.order, "class": L.class_of[i]}
                      for i, H in enumerate(L.subgroups)],
        "subconjugacy": [[k, h] for k in range(L.n_classes) for h in range(L.n_classes)
                         if L.subconj[k][h]],
    }
    return full_collection(L), result, 0


def _cmd_marks(cfg, G, L):
    D = parse_collection(L, cfg.collection_spec)
    return D, {"matrix": table_of_marks(D).as_lists()}, 0


def _cmd_units(cfg, G, L):
    D = parse_collection(L, cfg.collection_spec)
    U = units_bruteforce(D, search_cap=cfg.search_cap)
    result = {"order": U.order,
              "basis": [L.label(c) for c in D],
              "generators": [list(u.coeffs) for u in U.generators],
              "units": [list(u.coeffs) for u in U.all_units]}
    return D, result, 0


def _cmd_matsuda(cfg, G, L):
    D = parse_collection(L, cfg.collection_spec)
    S = parse_basic(L, cfg.basic)
    count = matsuda_unit_count(D, S)
    brute = units_bruteforce(D, search_cap=cfg.search_cap).order
    factors = []
    for H, E, nil in matsuda_factors(D, S):
        factors.append({"subgroup": L.index_of(H), "order": H.order,
                        "bs_classes": list(E.class_ids),
                        "marks": table_of_marks(E).as_lists(),
                        "nil_square": [list(x.coeffs) for x in nil]})
    gens = matsuda_unit_generators(D, S, verify=False)
    decomposition = decomposition_check(D, S)
    result = {"count": count, "bruteforce_order": brute, "agree": count == brute,
              "basic": [L.index_of(H) for H in S.subgroups()],
              "factors": factors, "generators": [list(g.coeffs) for g in gens],
              "decomposition": decomposition.to_dict()}
    ok = count == brute and decomposition.passed
    return D, result, 0 if ok else 1


def _iso_result(iso):
    return {"verified": iso.verified,
            "target_order": iso.target.group.order,
            "class_map": [[k, v] for k, v in sorted(iso.class_map.items())],
            "target_classes": [_class_info(iso.target.lattice, c) for c in iso.target]}


def _cmd_quotient_iso(cfg, G, L):
    N = _subgroup(L, str(cfg.quotient_by))
    iso = quotient_iso(G, N)
    return iso.source, _iso_result(iso), 0


def _cmd_surjection_iso(cfg, G, L):
    N = _subgroup(L, str(cfg.quotient_by))
    D = parse_collection(L, cfg.collection_spec)
    _, pi = quotient_group(G, N)
    iso = surjection_iso(pi, D)
    return D, _iso_result(iso), 0


def _cmd_fw(cfg, G, L):
    alpha = fw_alpha(G)
    src = alpha.source_collection
    units = units_bruteforce(src, search_cap=cfg.search_cap)
    images = [{"unit": list(u.coeffs), "image": list(alpha.apply(u).coeffs)} for u in units.all_units]
    result = {"cyclic_order": alpha.cyclic_source.order,
              "source_basis": [src.lattice.label(c) for c in src],
              "matrix": [list(r) for r in alpha.matrix],
              "unit_images": images,
              "imgfw": imgfw_check(G).to_dict(),
              "containment": imgfw_counterexample_check(G).to_dict()}
    return full_collection(L), result, 0


def _cmd_seminilpotent(cfg, G, L):
    res = is_seminilpotent(G, cfg.p, cfg.a)
    interior = interior_count_check(G, cfg.p, cfg.a)
    result = {"p": cfg.p, "a": cfg.a, "holds": res.holds,
              "failures": [{"subgroup": i, "count": n} for i, n in res.failures],
              "interior_check": interior.to_dict()}
    return None, result, 0 if interior.passed else 1


HANDLERS = {
    "lattice": _cmd_lattice,
    "marks": _cmd_marks,
    "units": _cmd_units,
    "matsuda": _cmd_matsuda,
    "quotient-iso": _cmd_quotient_iso,
    "surjection-iso": _cmd_surjection_iso,
    "fw": _cmd_fw,
    "seminilpotent": _cmd_seminilpotent,
}


# RENDERING
# ---------


def _render_matrix(rows, labels) -> list[str]:
    width = max([len(str(x)) for r in rows for x in r] + [len(s) for s in labels] + [1])
    lines = [" " * width + " | " + " ".join(s.rjust(width) for s in labels)]
    lines.append("-" * len(lines[0]))
    for lab, r in zip(labels, rows):
        lines.append(lab.rjust(width) + " | " + " ".join(str(x).rjust(width) for x in r))
    return lines


def render_table(doc: dict) -> str:
    lines = []
    if "suite" in doc:
        lines.append(f"suite {doc['suite']}: {doc['status']}")
        for c in doc["cases"]:
            lines.append(f"  [{c['status']:>4}] {c['name']}  ({c['paper_anchor']})")
        return "\n".join(lines)
    g = doc["group"]
    lines.append(f"group {g['spec']}  order {g['order']}  degree {g['degree']}")
    labels = []
    if "collection" in doc:
        labels = [c["label"] for c in doc["collection"]["classes"]]
        lines.append(f"collection {doc['collection']['spec']}: " + ", ".join(
            f"{c['label']}{'*' if c['normal'] else ''}(x{c['size']})" for c in doc["collection"]["classes"]))
    res = doc["result"]
    if "matrix" in res and len(res["matrix"]) == len(labels):
        lines += _render_matrix(res["matrix"], labels)
    for key, value in res.items():
        if key == "matrix" and len(res["matrix"]) == len(labels):
            continue
        if isinstance(value, (list, dict)):
            value = json.dumps(value)
            if len(value) > 200:
                value = value[:197] + "..."
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


# ENTRY POINT
# -----------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pbr", description="Partial Burnside rings of small finite groups.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--group", dest="group_spec")
    p.add_argument("--collection", dest="collection_spec", default="all")
    p.add_argument("--basic", default="normal", help="normal | trivial | with:<subgroup-index>")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--quotient-by", type=int, dest="quotient_by")
    p.add_argument("--output", choices=["json", "table"], default="json")
    p.add_argument("--order-cap", type=int, dest="order_cap")
    p.add_argument("--search-cap", type=int, dest="search_cap")
    p.add_argument("--suite", default="paper", help=", ".join(SUITES))
    p.add_argument("--timings", action="store_true", help="include per-case elapsed_ms in verify output")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(**vars(ns))
        if cfg.command == "verify":
            report = verify_suite(cfg.suite)
            doc = {"version": __version__, **report.to_dict(timings=cfg.timings)}
            code = 0 if report.passed else 1
        else:
            G = builtin_group(cfg.group_spec, cap=cfg.order_cap)
            L = all_subgroups(G)
            D, result, code = HANDLERS[cfg.command](cfg, G, L)
            doc = {**_header(cfg, G, D), "result": result}
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=stderr)
        return 1
    except (PBRError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    if cfg.output == "json":
        stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        stdout.write(render_table(doc) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
