import functools
import itertools
from pathlib import Path

import numpy as np
import pytest

from ratsing.graph import DualGraph, build_graph

DATA = Path(__file__).parent / "data"


def star(center: int, *leaves: int) -> DualGraph:
    vs = [("c", center)] + [(f"l{i + 1}", b) for i, b in enumerate(leaves)]
    return build_graph(vs, [("c", f"l{i + 1}") for i in range(len(leaves))])


def chain(*weights: int) -> DualGraph:
    vs = [(f"E{i + 1}", b) for i, b in enumerate(weights)]
    return build_graph(vs, [(f"E{i + 1}", f"E{i + 2}") for i in range(len(weights) - 1)])


def e7_graph() -> DualGraph:
    return build_graph(
        [("a", 3), ("b", 3), ("c", 2), ("d", 4), ("e", 2)],
        [("a", "c"), ("b", "c"), ("c", "d"), ("d", "e")],
    )


def two_level_reduced() -> DualGraph:
    """Reduced Z whose tower has depth 3: u(3) joined to v1..v3(3), each v carrying two (-2)-leaves."""
    vs = [("u", 3)]
    es = []
    for i in range(1, 4):
        vs.append((f"v{i}", 3))
        es.append(("u", f"v{i}"))
        for j in range(1, 3):
            vs.append((f"w{i}{j}", 2))
            es.append((f"v{i}", f"w{i}{j}"))
    return build_graph(vs, es)


def relabel(g: DualGraph, perm: list[int]) -> DualGraph:
    """Same graph with ids renamed x0.. and declared in the order ``perm``."""
    name = {v: f"x{k}" for k, v in enumerate(g.ids)}
    vs = [(name[g.ids[i]], g.weights[i]) for i in perm]
    return build_graph(vs, [tuple(name[v] for v in e) for e in g.edges])


@functools.lru_cache(maxsize=None)
def _box(n: int, box: int) -> np.ndarray:
    pts = np.array(list(itertools.product(range(-box, box + 1), repeat=n)), dtype=np.int64)
    return pts[np.any(pts != 0, axis=1)]


def brute_negative_definite(g: DualGraph, box: int = 5) -> bool:
    """xMx < 0 for every nonzero integer x in [-box, box]^n."""
    pts = _box(len(g), box)
    m = np.array(g.matrix, dtype=np.int64)
    q = np.einsum("ij,jk,ik->i", pts, m, pts)
    return bool(np.all(q < 0))


def leibniz_det(m) -> int:
    n = len(m)
    total = 0
    for p in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        prod = 1
        for i in range(n):
            prod *= m[i][p[i]]
        total += -prod if inv % 2 else prod
    return total


def brute_isomorphic(g: DualGraph, h: DualGraph) -> bool:
    if len(g) != len(h) or len(g.edges) != len(h.edges) or sorted(g.weights) != sorted(h.weights):
        return False
    for p in itertools.permutations(h.ids):
        f = dict(zip(g.ids, p))
        if all(g.weight(v) == h.weight(f[v]) for v in g.ids) and {
            frozenset(f[v] for v in e) for e in g.edges
        } == set(h.edges):
            return True
    return False


def connected_weighted_graphs(max_vertices: int, wmin: int, wmax: int, trees_only: bool = False):
    """Every connected simple graph up to ``max_vertices`` vertices with weights in range, one per isomorphism class."""
    import networkx as nx

    for atlas_graph in nx.graph_atlas_g():
        n = atlas_graph.number_of_nodes()
        if n == 0 or n > max_vertices or not nx.is_connected(atlas_graph):
            continue
        if trees_only and not nx.is_tree(atlas_graph):
            continue
        edges = [tuple(sorted(e)) for e in atlas_graph.edges()]
        es = {frozenset(e) for e in edges}
        autos = [p for p in itertools.permutations(range(n)) if {frozenset((p[a], p[b])) for a, b in edges} == es]
        for w in itertools.product(range(wmin, wmax + 1), repeat=n):
            # keep one weighting per automorphism orbit
            if any(tuple(w[p[i]] for i in range(n)) < w for p in autos):
                continue
            yield build_graph([(f"E{i}", w[i]) for i in range(n)], [(f"E{a}", f"E{b}") for a, b in edges])


@pytest.fixture
def star_graph():
    return star(2, 3, 3, 3)


@pytest.fixture
def e7():
    return e7_graph()


@pytest.fixture
def five_star():
    return star(5, 2, 2, 2, 2, 2)


# acceptance criterion results, printed at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
