"""Weighted trees up to isomorphism and the search for determined c > 0."""

from __future__ import annotations

import random
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Literal, NamedTuple

from .correction import CStatus, correction_term
from .fundamental import is_rational
from .graph import DualGraph, build_graph, is_negative_definite
from .tower import build_tower

Filter = Literal["all", "c_positive", "undetermined_c"]

# A rooted weighted tree encoded as (weight, sorted child codes).
Code = tuple


@dataclass(frozen=True)
class SearchParams:
    max_vertices: int
    weight_min: int = 2
    weight_max: int = 4
    require_rational: bool = True
    filter: Filter = "all"

    def __post_init__(self):
        if self.max_vertices < 1:
            raise ValueError("max_vertices must be at least 1")
        if self.weight_min < 2:
            raise ValueError("weight_min must be at least 2")
        if self.weight_max < self.weight_min:
            raise ValueError("weight_max must be >= weight_min")
        if self.filter not in ("all", "c_positive", "undetermined_c"):
            raise ValueError(f"unknown filter {self.filter!r}")


def _rooted_code(adj: list[list[int]], w: list[int], root: int, parent: int = -1) -> Code:
    return (w[root], tuple(sorted(_rooted_code(adj, w, c, root) for c in adj[root] if c != parent)))


def _centroids(adj: list[list[int]]) -> list[int]:
    n = len(adj)
    size = [1] * n
    order, parent = [0], [-1] * n
    for u in order:
        for v in adj[u]:
            if v != parent[u]:
                parent[v] = u
                order.append(v)
    for u in reversed(order[1:]):
        size[parent[u]] += size[u]
    best, out = n, []
    for u in range(n):
        heaviest = max([size[v] for v in adj[u] if v != parent[u]] + [n - size[u]])
        if heaviest < best:
            best, out = heaviest, [u]
        elif heaviest == best:
            out.append(u)
    return out


def canonical_form(g: DualGraph) -> Code:
    """Isomorphism invariant of a weighted tree: the least centroid-rooted encoding."""
    if not g.is_tree():
        raise ValueError("canonical_form is defined for trees only")
    adj = [[g.index[w] for w in g.adjacency[v]] for v in g.ids]
    w = list(g.weights)
    return min(_rooted_code(adj, w, c) for c in _centroids(adj))


def from_code(code: Code) -> DualGraph:
    """Graph with ids ``v0, v1, ...`` in preorder of the encoding."""
    vertices: list[tuple[str, int]] = []
    edges: list[tuple[str, str]] = []

    def visit(c: Code, parent: str | None) -> None:
        vid = f"v{len(vertices)}"
        vertices.append((vid, c[0]))
        if parent is not None:
            edges.append((parent, vid))
        for child in c[1]:
            visit(child, vid)

    visit(code, None)
    return build_graph(vertices, edges)


def _attach_leaf(code: Code, weight: int) -> list[Code]:
    """Every tree obtained by hanging a new leaf of ``weight`` below some vertex."""
    g = from_code(code)
    out = []
    for v in g.ids:
        h = build_graph(
            [*zip(g.ids, g.weights), ("new", weight)],
            [tuple(e) for e in g.edges] + [(v, "new")],
        )
        out.append(canonical_form(h))
    return out


def enumerate_trees(p: SearchParams) -> Iterator[DualGraph]:
    """Negative definite weighted trees, one per isomorphism class.

    Trees on ``n + 1`` vertices are grown from trees on ``n`` by adding a leaf;
    non negative definite trees are dropped at every level, which is safe since
    a principal submatrix of a negative definite matrix is negative definite.
    Output is ordered by vertex count, then by canonical form.
    """
    weights = range(p.weight_min, p.weight_max + 1)
    level = sorted(c for c in ((w, ()) for w in weights) if is_negative_definite(from_code(c)))
    n = 1
    while True:
        for code in level:
            g = from_code(code)
            if not p.require_rational or is_rational(g):
                yield g
        if n == p.max_vertices:
            return
        grown = {new for code in level for w in weights for new in _attach_leaf(code, w)}
        level = sorted(c for c in grown if is_negative_definite(from_code(c)))
        n += 1


class Hit(NamedTuple):
    graph: DualGraph
    c: int | None
    mult: int


def _evaluate(g: DualGraph) -> tuple[DualGraph, int, CStatus]:
    root = build_tower(g)
    return g, root.inv.mult, correction_term(root)


def search(p: SearchParams, jobs: int = 1) -> list[Hit]:
    """Enumerated rational graphs matching ``p.filter``, sorted by (mult, size, form)."""
    graphs = list(enumerate_trees(replace(p, require_rational=True)))
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            results = list(pool.map(_evaluate, graphs))
    else:
        results = [_evaluate(g) for g in graphs]
    hits = []
    for g, mult, status in results:
        if p.filter == "c_positive" and not (status.known and status.value > 0):
            continue
        if p.filter == "undetermined_c" and status.known:
            continue
        hits.append(Hit(g, status.value, mult))
    hits.sort(key=lambda h: (h.mult, len(h.graph), canonical_form(h.graph)))
    return hits


def search_c_positive(p: SearchParams, jobs: int = 1) -> list[Hit]:
    return search(replace(p, filter="c_positive"), jobs)


def minimal_multiplicity_example(p: SearchParams) -> DualGraph | None:
    hits = search_c_positive(p)
    return hits[0].graph if hits else None


def random_tree(rng: random.Random, n: int, weight_min: int, weight_max: int) -> DualGraph:
    """Uniform random recursive tree on ``n`` vertices with uniform weights."""
    vertices = [(f"E{i}", rng.randint(weight_min, weight_max)) for i in range(n)]
    edges = [(f"E{rng.randrange(i)}", f"E{i}") for i in range(1, n)]
    return build_graph(vertices, edges)


def random_rational_graphs(
    seed: int,
    count: int,
    max_vertices: int = 8,
    weight_min: int = 2,
    weight_max: int = 6,
) -> list[DualGraph]:
    """``count`` random rational trees, reproducible from ``seed``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_tree(rng, rng.randint(1, max_vertices), weight_min, weight_max)
        if is_negative_definite(g) and is_rational(g):
            out.append(g)
    return out
