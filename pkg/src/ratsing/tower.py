"""Blow-down tower: the singularities met while resolving by point blow-ups.

By Tjurina's theorem the blow-up of a rational singularity is obtained from the
minimal resolution by contracting the curves with ``Z . E_i = 0``.  Each
connected component of those curves is a rational singularity of the blow-up,
whose own minimal resolution graph is the induced subgraph.  Recursing gives
the tower; node graphs keep the vertex ids of the root graph.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, NamedTuple

from .errors import IdentityFailure, NotRational
from .fundamental import NumericInvariants, fundamental_cycle, numeric_invariants
from .graph import Cycle, DualGraph, induced_subgraph, pairing_vector

if TYPE_CHECKING:
    from .correction import CStatus


@dataclass
class TowerNode:
    node_id: str
    vertex_set: tuple[str, ...]
    graph: DualGraph
    z: Cycle
    inv: NumericInvariants
    children: list[TowerNode] = field(default_factory=list)
    # recursion was cut at a rational double point; children were not built
    truncated: bool = False
    c_status: CStatus | None = None

    def walk(self) -> Iterator[TowerNode]:
        yield self
        for c in self.children:
            yield from c.walk()

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)


class I4Sums(NamedTuple):
    sum_e_minus_4: int
    sum_t2_terms: int
    i4_nodes: list[TowerNode]


def zero_curves(g: DualGraph, z: Cycle) -> list[str]:
    """Curves with ``Z . E_i = 0``, in declaration order."""
    dots = pairing_vector(g, z)
    return [v for v in g.ids if dots[v] == 0]


def blow_down_children(g: DualGraph, z: Cycle) -> list[DualGraph]:
    """Resolution graphs of the singular points of the blow-up; empty if it is smooth."""
    return [induced_subgraph(g, comp) for comp in g.components(zero_curves(g, z))]


def build_tower(g: DualGraph) -> TowerNode:
    root = _make_node("0", g)
    limit = len(g)
    stack = [root]
    while stack:
        node = stack.pop()
        if node.inv.e == 3:
            node.truncated = bool(zero_curves(node.graph, node.z))
            continue
        for k, child_graph in enumerate(blow_down_children(node.graph, node.z)):
            if len(child_graph) >= len(node.graph):
                raise IdentityFailure(f"child of node {node.node_id} is not smaller than its parent")
            child = _make_node(f"{node.node_id}.{k}", child_graph)
            node.children.append(child)
            stack.append(child)
    if root.depth() > limit:
        raise IdentityFailure(f"tower depth {root.depth()} exceeds vertex count {limit}")
    return root


def _make_node(node_id: str, g: DualGraph) -> TowerNode:
    z = fundamental_cycle(g)
    try:
        inv = numeric_invariants(g, z)
    except NotRational as exc:
        raise NotRational(f"tower node {node_id} on {list(g.ids)}: {exc}") from exc
    return TowerNode(node_id, g.ids, g, z, inv)


def i4_sums(t: TowerNode) -> I4Sums:
    nodes = [n for n in t.walk() if n.inv.e >= 4]
    return I4Sums(
        sum(n.inv.e - 4 for n in nodes),
        sum((n.inv.e - 2) * (n.inv.e - 4) for n in nodes),
        nodes,
    )
