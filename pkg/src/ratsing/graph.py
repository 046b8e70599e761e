"""Weighted dual graphs and their intersection theory.

A vertex ``i`` stands for a smooth rational curve ``E_i`` with ``E_i^2 = -b_i``;
an edge means two curves meet transversally in one point.  All arithmetic is
on Python integers, so nothing here depends on magnitude.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    EmptyGraph,
    GraphError,
    IdentityFailure,
    NotConnected,
    NotNegativeDefinite,
    WeightBelowTwo,
)


class Cycle(Mapping[str, int]):
    """Non-negative integer combination of exceptional curves.

    Behaves as a read-only mapping ``vertex id -> multiplicity`` whose keys are
    the support; absent vertices have multiplicity 0.
    """

    __slots__ = ("_m",)

    def __init__(self, multiplicities: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        m = dict(multiplicities)
        for v, n in m.items():
            if not isinstance(n, int) or isinstance(n, bool) or n < 0:
                raise GraphError(f"multiplicity of {v!r} must be a non-negative integer, got {n!r}", v)
        self._m = {v: n for v, n in m.items() if n}

    def __getitem__(self, v: str) -> int:
        return self._m[v]

    def __iter__(self) -> Iterator[str]:
        return iter(self._m)

    def __len__(self) -> int:
        return len(self._m)

    def __hash__(self) -> int:
        return hash(frozenset(self._m.items()))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Cycle):
            return self._m == other._m
        return NotImplemented

    def __add__(self, other: Cycle) -> Cycle:
        out = dict(self._m)
        for v, n in other.items():
            out[v] = out.get(v, 0) + n
        return Cycle(out)

    def __le__(self, other: Cycle) -> bool:
        return all(n <= other.get(v, 0) for v, n in self._m.items())

    def __ge__(self, other: Cycle) -> bool:
        return other <= self

    def is_positive(self) -> bool:
        return bool(self._m)

    def is_reduced(self) -> bool:
        return all(n == 1 for n in self._m.values())

    def total(self) -> int:
        return sum(self._m.values())

    def reduced(self) -> Cycle:
        return Cycle({v: 1 for v in self._m})

    def __repr__(self) -> str:
        if not self._m:
            return "Cycle(0)"
        terms = [v if n == 1 else f"{n}{v}" for v, n in self._m.items()]
        return "Cycle(" + " + ".join(terms) + ")"


@dataclass(frozen=True)
class DualGraph:
    """Validated weighted simple graph; use :func:`build_graph` to construct."""

    ids: tuple[str, ...]
    weights: tuple[int, ...]
    edges: frozenset[frozenset[str]]

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.ids)}

    @cached_property
    def adjacency(self) -> dict[str, tuple[str, ...]]:
        nbrs: dict[str, list[str]] = {v: [] for v in self.ids}
        for e in self.edges:
            a, b = tuple(e)
            nbrs[a].append(b)
            nbrs[b].append(a)
        return {v: tuple(sorted(ns, key=self.index.__getitem__)) for v, ns in nbrs.items()}

    @cached_property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """Intersection matrix in declaration order."""
        n = len(self.ids)
        rows = [[0] * n for _ in range(n)]
        for i, b in enumerate(self.weights):
            rows[i][i] = -b
        for e in self.edges:
            a, b = (self.index[v] for v in e)
            rows[a][b] = rows[b][a] = 1
        return tuple(tuple(r) for r in rows)

    def __len__(self) -> int:
        return len(self.ids)

    def weight(self, v: str) -> int:
        return self.weights[self.index[v]]

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    def curve(self, v: str) -> Cycle:
        self._check_vertex(v)
        return Cycle({v: 1})

    def reduced_cycle(self) -> Cycle:
        return Cycle({v: 1 for v in self.ids})

    def cycle(self, multiplicities: Mapping[str, int]) -> Cycle:
        """Build a cycle on this graph, rejecting foreign vertices."""
        c = Cycle(multiplicities)
        self.check_cycle(c)
        return c

    def check_cycle(self, c: Mapping[str, int]) -> None:
        for v in c:
            if v not in self.index:
                raise GraphError(f"cycle refers to foreign vertex {v!r}", v)

    def _check_vertex(self, v: str) -> None:
        if v not in self.index:
            raise GraphError(f"unknown vertex {v!r}", v)

    def components(self, subset: Iterable[str] | None = None) -> list[tuple[str, ...]]:
        """Connected components of the subgraph induced on ``subset``.

        Components and their members come out in declaration order.
        """
        keep = set(self.ids) if subset is None else set(subset)
        seen: set[str] = set()
        out = []
        for v in self.ids:
            if v not in keep or v in seen:
                continue
            comp = {v}
            stack = [v]
            while stack:
                u = stack.pop()
                for w in self.adjacency[u]:
                    if w in keep and w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            out.append(tuple(x for x in self.ids if x in comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges) == len(self.ids) - 1


def build_graph(
    vertices: Iterable[tuple[str, int]],
    edges: Iterable[tuple[str, str]] = (),
) -> DualGraph:
    """Validate vertices ``(id, b)`` and edges ``(id1, id2)`` into a graph."""
    ids: list[str] = []
    weights: list[int] = []
    seen: set[str] = set()
    for v, b in vertices:
        if v in seen:
            raise GraphError(f"duplicate vertex id {v!r}", v)
        if not isinstance(b, int) or isinstance(b, bool) or b < 1:
            raise GraphError(f"weight of {v!r} must be a positive integer, got {b!r}", v)
        seen.add(v)
        ids.append(v)
        weights.append(b)
    es: set[frozenset[str]] = set()
    for a, b in edges:
        for v in (a, b):
            if v not in seen:
                raise GraphError(f"edge to unknown vertex {v!r}", v)
        if a == b:
            raise GraphError(f"self-loop at {a!r}", a)
        e = frozenset((a, b))
        if e in es:
            raise GraphError(f"duplicate edge {a!r}-{b!r}", (a, b))
        es.add(e)
    return DualGraph(tuple(ids), tuple(weights), frozenset(es))


def pair(g: DualGraph, d1: Mapping[str, int], d2: Mapping[str, int]) -> int:
    """Intersection number ``d1 . d2``."""
    g.check_cycle(d1)
    g.check_cycle(d2)
    m, idx = g.matrix, g.index
    total = 0
    for u, n in d1.items():
        row = m[idx[u]]
        for v, k in d2.items():
            total += n * k * row[idx[v]]
    return total


def pairing_vector(g: DualGraph, d: Mapping[str, int]) -> dict[str, int]:
    """``{v: d . E_v}`` for every vertex."""
    g.check_cycle(d)
    m, idx = g.matrix, g.index
    return {v: sum(n * m[idx[u]][i] for u, n in d.items()) for i, v in enumerate(g.ids)}


def canonical_pair(g: DualGraph, d: Mapping[str, int]) -> int:
    """``K . d`` by adjunction: each smooth rational ``E_i`` has ``K . E_i = b_i - 2``."""
    g.check_cycle(d)
    return sum(n * (g.weight(v) - 2) for v, n in d.items())


def arithmetic_genus(g: DualGraph, d: Mapping[str, int]) -> int:
    """``p_a(d) = 1 + (d^2 + K.d) / 2`` for a positive cycle."""
    g.check_cycle(d)
    if not any(d.values()):
        raise GraphError("arithmetic genus of the zero cycle is undefined")
    s = pair(g, d, d) + canonical_pair(g, d)
    if s % 2:
        raise IdentityFailure(f"adjunction parity violated: D^2 + K.D = {s} is odd for {d!r}")
    return 1 + s // 2


def leading_principal_minors(m: Iterable[Iterable[int]]) -> list[int]:
    """Leading principal minors ``det(M_1), ..., det(M_n)`` by Bareiss elimination.

    Without pivoting, the k-th Bareiss pivot is exactly ``det(M_k)``.  If some
    minor vanishes the elimination cannot continue; the list then ends with
    that zero.
    """
    a = [list(r) for r in m]
    n = len(a)
    minors: list[int] = []
    prev = 1
    for k in range(n):
        piv = a[k][k]
        minors.append(piv)
        if piv == 0:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * piv - a[i][k] * a[k][j]
                q, r = divmod(num, prev)
                if r:
                    raise IdentityFailure("Bareiss division was not exact")
                a[i][j] = q
        prev = piv
    return minors


def is_negative_definite(g: DualGraph) -> bool:
    minors = leading_principal_minors(g.matrix)
    if len(minors) < len(g):
        return False
    return all((-1) ** (k + 1) * d > 0 for k, d in enumerate(minors))


def induced_subgraph(g: DualGraph, keep: Iterable[str]) -> DualGraph:
    keep = set(keep)
    for v in keep:
        g._check_vertex(v)
    return DualGraph(
        tuple(v for v in g.ids if v in keep),
        tuple(b for v, b in zip(g.ids, g.weights) if v in keep),
        frozenset(e for e in g.edges if e <= keep),
    )


def require_resolution_graph(g: DualGraph) -> None:
    """Raise a :class:`DomainError` unless ``g`` can be a minimal resolution graph.

    Checks, in order: nonempty, all weights at least 2, connected, negative
    definite.
    """
    if not g.ids:
        raise EmptyGraph("graph has no vertices")
    for v, b in zip(g.ids, g.weights):
        if b < 2:
            raise WeightBelowTwo(f"vertex {v!r} has weight below 2 (b={b})")
    comps = g.components()
    if len(comps) > 1:
        raise NotConnected(f"graph is disconnected: components {[list(c) for c in comps]}")
    if not is_negative_definite(g):
        raise NotNegativeDefinite("intersection matrix is not negative definite")
