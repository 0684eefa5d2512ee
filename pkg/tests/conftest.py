import itertools

import pytest

from pbr.groups import builtin_group


@pytest.fixture(scope="session")
def group():
    """Memoized builtin_group, so lattices and mark caches are shared across tests."""
    cache = {}

    def get(spec):
        if spec not in cache:
            cache[spec] = builtin_group(spec)
        return cache[spec]

    return get


def naive_closure(gens, degree):
    """Set of image tuples generated by ``gens``; closes under all pairwise products."""
    els = {tuple(range(degree))} | {tuple(g) for g in gens}
    while True:
        new = {tuple(a[b[i]] for i in range(degree)) for a in els for b in els} | els
        if new == els:
            return els
        els = new


def naive_subgroups(G):
    """All subsets of G closed under multiplication, by scanning every subset."""
    n = G.order
    mt = G.mult_table
    out = set()
    others = list(range(1, n))
    for r in range(n):
        for combo in itertools.combinations(others, r):
            s = {0, *combo}
            if all(mt[a][b] in s for a in s for b in s):
                out.add(sum(1 << x for x in s))
    return out


_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            n, title = mark.args
            _criteria.setdefault(n, {"title": title, "failed": [], "ran": 0})
            item.user_properties.append(("criterion", n))


def pytest_runtest_logreport(report):
    n = dict(report.user_properties).get("criterion")
    if n is None:
        return
    entry = _criteria[n]
    if report.when == "call":
        entry["ran"] += 1
    if report.failed:
        entry["failed"].append(report.nodeid.split("::")[-1])


def pytest_terminal_summary(terminalreporter):
    if not any(e["ran"] for e in _criteria.values()):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        e = _criteria[n]
        if not e["ran"] and not e["failed"]:
            continue
        status = "FAIL" if e["failed"] else "PASS"
        detail = f"  ({', '.join(e['failed'])})" if e["failed"] else ""
        terminalreporter.write_line(f"criterion {n:2d} {e['title']:<40} {status}{detail}")
