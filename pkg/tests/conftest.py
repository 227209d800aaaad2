import random
from itertools import combinations

import pytest

from iwgraph.graph import Graph, is_connected
from iwgraph.voltage import (
    VoltageAssignment,
    derive,
    galois_action,
    intermediate_cover,
    is_automorphism,
)

# random tower suite: fixed before any result was looked at
SUITE_SEED = 0
SUITE_SIZE = 24
SUITE_VOLTAGE_RANGE = 2


def random_connected_graph(rng: random.Random, n: int, density: float = 0.6) -> Graph:
    pairs = list(combinations(range(1, n + 1), 2))
    while True:
        g = Graph(n, frozenset(e for e in pairs if rng.random() < density))
        if is_connected(g):
            return g


def random_tower_case(rng: random.Random, p: int, n_range=(3, 5), vrange=SUITE_VOLTAGE_RANGE):
    """Random connected base with integer voltages whose level-1 cover is connected."""
    while True:
        g = random_connected_graph(rng, rng.randint(*n_range))
        va = VoltageAssignment(g, {e: rng.randint(-vrange, vrange) for e in g.sorted_edges()}, p)
        if is_connected(derive(va, 1).graph):
            return va


def tower_suite():
    """[(voltage assignment, p, M)] for the random Theorem-1 checks."""
    rng = random.Random(SUITE_SEED)
    out = []
    for k in range(SUITE_SIZE):
        p = (2, 3)[k % 2]
        M = 5 if p == 2 else 4
        out.append((random_tower_case(rng, p), p, M))
    return out


@pytest.fixture(scope="session")
def suite():
    return tower_suite()


def small_graphs(count: int, seed: int, max_n: int = 7):
    rng = random.Random(seed)
    return [random_connected_graph(rng, rng.randint(1, max_n), rng.uniform(0.3, 0.9))
            for _ in range(count)]


def check_cover_structure(va, m):
    """Fibers, degrees, fiber independence and deck group of level m."""
    p = va.prime
    q = p ** m
    d = derive(va, m)
    base, g = va.base, d.graph
    assert g.n == base.n * q
    fibers = {}
    for v in range(1, g.n + 1):
        fibers.setdefault(d.project(v), []).append(v)
    assert all(len(f) == q for f in fibers.values()) and len(fibers) == base.n
    for u, w in g.edges:
        assert d.project(u) != d.project(w)
    bdeg, ddeg = base.degrees(), g.degrees()
    assert all(ddeg[v - 1] == bdeg[d.project(v) - 1] for v in range(1, g.n + 1))
    # projection of every edge is a base edge
    assert {tuple(sorted((d.project(u), d.project(w)))) for u, w in g.edges} == set(base.edges)
    actions = [galois_action(d, h) for h in range(q)]
    for h, a in enumerate(actions):
        assert is_automorphism(g, a)
        assert all(d.project(a[v]) == d.project(v) for v in a)
    # injective homomorphism from Z/q: distinct, and generated cyclically by 1
    assert len({tuple(sorted(a.items())) for a in actions}) == q
    one = actions[1 % q]
    for h in range(q):
        nxt = {v: one[actions[h][v]] for v in one}
        assert nxt == actions[(h + 1) % q]
    for k in range(m + 1):
        assert intermediate_cover(va, m, k) == derive(va, k)
    return d


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
