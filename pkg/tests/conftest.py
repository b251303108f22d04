import itertools
import random
import sys

import pytest

from lcdist.codes import SparsityProfile, random_stabilizer_code
from lcdist.engines import brute_force_distance
from lcdist.graph import ConnectivityGraph

CORPUS_SIZE = 24
CORPUS_PROFILES = [(6, 10), (12, 12), (6, 8), (8, 8)]


def build_corpus(size=CORPUS_SIZE):
    """Seeded random stabilizer codes with n in 10..12, k >= 1 and distance >= 2.

    Returns ``(seed, code, oracle_result)`` triples.  Codes with a weight-1
    logical are skipped because every engine finds those trivially.
    """
    out = []
    seed = 0
    while len(out) < size:
        rng = random.Random(seed)
        n = rng.randint(10, 12)
        k = rng.choice([1, 2])
        j, l = rng.choice(CORPUS_PROFILES)
        code = random_stabilizer_code(n, n - k, SparsityProfile(j, l), seed=seed)
        if code.k >= 1:
            oracle = brute_force_distance(code)
            if oracle.kind == "exact" and oracle.d >= 2:
                out.append((seed, code, oracle))
        seed += 1
    return out


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


def brute_force_connected_counts(g: ConnectivityGraph, w_max=None):
    """Connected ``w``-subsets counted over all C(n, w) subsets."""
    n = g.n
    w_max = n if w_max is None else w_max
    adj = [set(a) for a in g.adjacency]
    counts = {}
    for w in range(1, w_max + 1):
        c = 0
        for subset in itertools.combinations(range(n), w):
            s = set(subset)
            seen = {subset[0]}
            stack = [subset[0]]
            while stack:
                v = stack.pop()
                for u in adj[v] & s:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            c += len(seen) == w
        counts[w] = c
    return counts


def truncated_tree(z, depth):
    """z-regular tree cut at ``depth`` around vertex 0, as a ConnectivityGraph."""
    adj = [[]]
    frontier = [0]
    for level in range(depth):
        nxt = []
        for v in frontier:
            for _ in range(z if v == 0 else z - 1):
                u = len(adj)
                adj.append([v])
                adj[v].append(u)
                nxt.append(u)
        frontier = nxt
    return ConnectivityGraph(len(adj), tuple(tuple(sorted(a)) for a in adj))


def rooted_set_growth(g: ConnectivityGraph, root, w_max):
    """Connected sets containing ``root`` by plain set growth (dedup via frozensets)."""
    layer = {frozenset([root])}
    counts = {1: 1}
    for w in range(2, w_max + 1):
        nxt = set()
        for s in layer:
            for v in s:
                for u in g.adjacency[v]:
                    if u not in s:
                        nxt.add(s | {u})
        layer = nxt
        counts[w] = len(layer)
    return counts


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
