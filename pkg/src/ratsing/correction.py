"""The correction term c(X) in the cases where it is settled by the graph.

Two rules determine c:

* reduced fundamental cycle: c = 0;
* smooth blow-up (every ``r_i = -Z.E_i > 0``) with non-reduced ``Z = sum n_i E_i``:
  c = sum (n_i - 1)(b_i - 2 + r_i).

Everything else is reported as undetermined together with the inequality or
equality to h^1(T^1_C(C)) that is known to hold, where C is the exceptional
curve of the blow-up.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .errors import IdentityFailure
from .fundamental import numeric_invariants, fundamental_cycle
from .graph import Cycle, DualGraph, pairing_vector
from .tower import TowerNode, blow_down_children

H1_T1_C = "h1(T1_C(C))"


@dataclass(frozen=True)
class CStatus:
    kind: Literal["known", "undetermined"]
    value: int | None = None
    rule: Literal["reduced_cycle", "xhat_smooth_formula"] | None = None
    t2hat_zero: bool = False
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def known(self) -> bool:
        return self.kind == "known"

    def to_json(self) -> dict:
        if self.known:
            return {"kind": "known", "value": self.value, "rule": self.rule}
        return {"kind": "undetermined", "t2hat_zero": self.t2hat_zero, "notes": list(self.notes)}

    def __str__(self) -> str:
        if self.known:
            return f"{self.value} ({self.rule})"
        return "undetermined: " + "; ".join(self.notes)


def c2_formula(g: DualGraph, z: Cycle) -> int:
    """``sum (n_i - 1)(b_i - 2 + r_i)`` with ``r_i = -Z.E_i``."""
    dots = pairing_vector(g, z)
    return sum((z.get(v, 0) - 1) * (g.weight(v) - 2 - dots[v]) for v in z)


def correction_term(node: TowerNode) -> CStatus:
    g, z, inv = node.graph, node.z, node.inv
    if inv.reduced:
        return CStatus("known", 0, "reduced_cycle", t2hat_zero=_t2hat_zero(node))
    if all(r > 0 for r in inv.r.values()):
        value = c2_formula(g, z)
        if value < 1:
            raise IdentityFailure(f"smooth blow-up with non-reduced Z gave c = {value} at node {node.node_id}")
        return CStatus("known", value, "xhat_smooth_formula", t2hat_zero=True)
    t2hat_zero = _t2hat_zero(node)
    note = f"c = {H1_T1_C}" if t2hat_zero else f"c >= {H1_T1_C}"
    return CStatus("undetermined", t2hat_zero=t2hat_zero, notes=(note,))


def _t2hat_zero(node: TowerNode) -> bool:
    """Whether every singular point of the blow-up has embedding dimension <= 4."""
    if node.children or not node.truncated:
        return all(c.inv.e <= 4 for c in node.children)
    # an RDP node whose children were not built: compute them directly
    return all(
        numeric_invariants(h, fundamental_cycle(h)).e <= 4
        for h in blow_down_children(node.graph, node.z)
    )


def annotate(tower: TowerNode) -> TowerNode:
    """Fill ``c_status`` on every node in place and return the tower."""
    for node in tower.walk():
        node.c_status = correction_term(node)
    return tower


def is_central_minus_two_family(g: DualGraph) -> bool:
    """Star-shaped trees around a central (-2)-curve that are known to have c > 0.

    Exactly three arms; the curve next to the centre has ``b >= 3`` on an arm
    of length 1 and ``b >= 4`` on a longer arm; every arm curve that is not an
    arm end has ``b >= 3``.
    """
    if not g.is_tree():
        return False
    centres = [v for v in g.ids if g.degree(v) == 3 and g.weight(v) == 2]
    if len(centres) != 1 or any(g.degree(v) > 3 for v in g.ids):
        return False
    centre = centres[0]
    if sum(1 for v in g.ids if g.degree(v) == 3) != 1:
        return False
    for first in g.adjacency[centre]:
        arm = [first]
        prev = centre
        while True:
            nxt = [w for w in g.adjacency[arm[-1]] if w != prev]
            if not nxt:
                break
            prev = arm[-1]
            arm.append(nxt[0])
        need = 3 if len(arm) == 1 else 4
        if g.weight(first) < need:
            return False
        if any(g.weight(v) < 3 for v in arm[:-1]):
            return False
    return True
