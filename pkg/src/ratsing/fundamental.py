"""Fundamental cycle, computation sequences and the numeric invariants e, mult."""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, IdentityFailure, NotRational
from .graph import (
    Cycle,
    DualGraph,
    arithmetic_genus,
    pair,
    require_resolution_graph,
)


@dataclass(frozen=True)
class NumericInvariants:
    z_self: int
    e: int
    mult: int
    reduced: bool
    r: dict[str, int]
    rational: bool


@dataclass(frozen=True)
class ComputationSequence:
    """``Z_0 = E_start`` and ``Z_k = Z_{k-1} + E_{steps[k-1]}``."""

    start: str
    steps: tuple[str, ...]

    @property
    def vertices(self) -> tuple[str, ...]:
        """All curves in order, the start included."""
        return (self.start, *self.steps)

    def partial_sums(self) -> Iterator[Cycle]:
        z = {self.start: 1}
        yield Cycle(z)
        for v in self.steps:
            z[v] = z.get(v, 0) + 1
            yield Cycle(z)

    def step_pairings(self, g: DualGraph) -> list[int]:
        """``Z_{k-1} . E_{i_k}`` for each step."""
        out = []
        sums = self.partial_sums()
        prev = next(sums)
        for v, cur in zip(self.steps, sums):
            out.append(pair(g, prev, g.curve(v)))
            prev = cur
        return out


def default_step_cap(g: DualGraph) -> int:
    return sum(g.weights) * len(g) ** 2


def fundamental_cycle(
    g: DualGraph,
    *,
    rng: random.Random | None = None,
    max_steps: int | None = None,
) -> Cycle:
    """Smallest positive cycle ``Z`` with ``Z . E_i <= 0`` for all ``i``.

    Starts from the reduced cycle on all curves and adds any ``E_i`` with
    ``Z . E_i > 0`` until none is left.  The lowest-index candidate is taken
    unless ``rng`` is given, in which case a random one is.
    """
    require_resolution_graph(g)
    m = g.matrix
    n = len(g)
    z = [1] * n
    zdot = [sum(row) for row in m]
    cap = default_step_cap(g) if max_steps is None else max_steps
    steps = 0
    while True:
        cands = [i for i in range(n) if zdot[i] > 0]
        if not cands:
            break
        steps += 1
        if steps > cap:
            raise DomainError(f"fundamental cycle iteration exceeded {cap} steps")
        i = rng.choice(cands) if rng is not None else cands[0]
        z[i] += 1
        for j in range(n):
            zdot[j] += m[i][j]
    if any(x > 0 for x in zdot):
        raise IdentityFailure("fundamental cycle is not anti-nef")
    return Cycle(dict(zip(g.ids, z)))


_GRID_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _grid(n: int, bound: int) -> np.ndarray:
    key = (n, bound)
    if key not in _GRID_CACHE:
        pts = np.array(list(itertools.product(range(bound + 1), repeat=n)), dtype=np.int64)
        _GRID_CACHE[key] = pts[1:]  # drop the zero cycle
    return _GRID_CACHE[key]


def fundamental_cycle_oracle(g: DualGraph, bound: int) -> Cycle:
    """Brute force: componentwise minimum of all anti-nef cycles with entries <= bound."""
    require_resolution_graph(g)
    if bound < 1:
        raise ValueError("bound must be positive")
    pts = _grid(len(g), bound)
    anti_nef = pts[np.all(pts @ np.array(g.matrix, dtype=np.int64) <= 0, axis=1)]
    if len(anti_nef) == 0:
        raise DomainError(f"no anti-nef cycle with multiplicities <= {bound}")
    low = anti_nef.min(axis=0)
    return Cycle({v: int(n) for v, n in zip(g.ids, low)})


def computation_sequence(
    g: DualGraph,
    z: Cycle,
    start: str | None = None,
    *,
    rng: random.Random | None = None,
) -> ComputationSequence:
    """Greedy computation sequence from ``E_start`` up to ``z``.

    Each step adds a curve that is still below its multiplicity in ``z`` and
    pairs to at least 1 with the current partial sum; the first such curve in
    declaration order is used unless ``rng`` is given.  On a rational graph
    every such pairing is exactly 1, and anything else raises.
    """
    g.check_cycle(z)
    idx, m = g.index, g.matrix
    support = [v for v in g.ids if z.get(v, 0) > 0]
    if not support:
        raise DomainError("computation sequence needs a positive cycle")
    if start is None:
        start = support[0]
    if z.get(start, 0) < 1:
        raise DomainError(f"start vertex {start!r} is not in the support of Z")
    target = [z.get(v, 0) for v in g.ids]
    cur = [0] * len(g)
    cur[idx[start]] = 1
    dots = list(m[idx[start]])
    steps: list[str] = []
    remaining = z.total() - 1
    while remaining:
        cands = [i for i in range(len(g)) if cur[i] < target[i] and dots[i] >= 1]
        if not cands:
            raise NotRational(f"no admissible step after {[start, *steps]}")
        i = rng.choice(cands) if rng is not None else cands[0]
        if dots[i] != 1:
            raise NotRational(f"step to {g.ids[i]!r} has pairing {dots[i]}, expected 1")
        cur[i] += 1
        for j in range(len(g)):
            dots[j] += m[i][j]
        steps.append(g.ids[i])
        remaining -= 1
    return ComputationSequence(start, tuple(steps))


def is_rational(g: DualGraph) -> bool:
    return arithmetic_genus(g, fundamental_cycle(g)) == 0


def numeric_invariants(g: DualGraph, z: Cycle | None = None) -> NumericInvariants:
    if z is None:
        z = fundamental_cycle(g)
    if arithmetic_genus(g, z) != 0:
        raise NotRational(f"p_a(Z) = {arithmetic_genus(g, z)} for Z = {z!r}; graph is not rational")
    z2 = pair(g, z, z)
    r = {v: -pair(g, z, g.curve(v)) for v in g.ids}
    return NumericInvariants(
        z_self=z2,
        e=1 - z2,
        mult=-z2,
        reduced=z.is_reduced(),
        r=r,
        rational=True,
    )
