"""Exhaustive ground truth for small graphs.

Everything here is deliberately independent of the engine: no bitmask
shortcuts from ``structure``, plain enumeration instead of pruning where
that keeps the code obviously correct.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .digraph import DirectedPath, OrientedGraph, iter_bits, mask_of
from .dicolor import Dicoloring, certify
from .patterns import PatternId
from .structure import ClosedTournament, NotStronglyConnected


class BudgetExceeded(RuntimeError):
    def __init__(self, limit: int):
        super().__init__(f"search exceeded {limit} nodes")
        self.limit = limit


@dataclass(frozen=True)
class OracleReport:
    exact_value: int
    witness: Dicoloring
    nodes_explored: int


def _reaches(g: OrientedGraph, src: int, dst: int, within: int) -> bool:
    seen = 1 << src
    frontier = seen
    while frontier:
        if frontier >> dst & 1:
            return True
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.out_masks[v]
        frontier = nxt & within & ~seen
        seen |= frontier
    return False


def _closes_cycle(g: OrientedGraph, v: int, cls: int) -> bool:
    """Does adding ``v`` to the acyclic class ``cls`` create a directed cycle?"""
    outs = g.out_masks[v] & cls
    ins = g.in_masks[v] & cls
    if not outs or not ins:
        return False
    for w in iter_bits(outs):
        for u in iter_bits(ins):
            if _reaches(g, w, u, cls):
                return True
    return False


def exact_dichromatic_number(g: OrientedGraph, limit: int | None = None) -> OracleReport:
    """Smallest ``k`` with a ``k``-dicolouring, by iterative deepening on ``k``."""
    if g.n == 0:
        return OracleReport(0, Dicoloring((), 0, ()), 0)
    nodes = 0
    for k in range(1, g.n + 1):
        classes = [0] * k
        color = [-1] * g.n

        def assign(v: int, opened: int) -> bool:
            nonlocal nodes
            if v == g.n:
                return True
            nodes += 1
            if limit is not None and nodes > limit:
                raise BudgetExceeded(limit)
            # colours are opened in increasing order, so vertex 0 gets colour 0
            for c in range(min(opened + 1, k)):
                if _closes_cycle(g, v, classes[c]):
                    continue
                classes[c] |= 1 << v
                color[v] = c
                if assign(v + 1, max(opened, c + 1)):
                    return True
                classes[c] &= ~(1 << v)
                color[v] = -1
            return False

        if assign(0, 0):
            cert = certify(g, color)
            return OracleReport(k, Dicoloring(tuple(color), len(cert), cert), nodes)
    raise AssertionError("n colours always suffice")


def _simple_paths(g: OrientedGraph, starts, ends):
    """Every simple directed path from ``starts`` to ``ends`` (at least one arc)."""
    end_set = set(ends)
    for s in sorted(starts):
        stack = [(s, (s,))]
        while stack:
            v, path = stack.pop()
            for w in sorted(iter_bits(g.out_masks[v]), reverse=True):
                if w in path:
                    continue
                if w in end_set:
                    yield path + (w,)
                stack.append((w, path + (w,)))


def _components(g: OrientedGraph, k: tuple[int, ...]) -> list[frozenset[int]]:
    """Strong components of a tournament, source first, via score ordering."""
    def reach(v):
        return {w for w in k if w == v or _reaches(g, v, w, mask_of(k))}

    comps = []
    seen = set()
    for v in k:
        if v in seen:
            continue
        comp = frozenset(w for w in reach(v) if v in reach(w))
        seen |= comp
        comps.append(comp)
    # in a tournament the component reaching the most vertices is the source
    comps.sort(key=lambda comp: -len(reach(min(comp))))
    return comps


def _strongly_connected(g: OrientedGraph) -> bool:
    full = g.full_mask
    return all(_reaches(g, 0, v, full) and _reaches(g, v, 0, full) for v in range(g.n))


def brute_force_closed_tournament(g: OrientedGraph) -> ClosedTournament:
    """Minimal closed tournament by enumerating all cliques and all simple paths."""
    if g.n < 2 or not _strongly_connected(g):
        raise NotStronglyConnected("closed tournaments are only defined for strongly connected graphs")
    omega, cliques = 0, []
    for size in range(g.n, 0, -1):
        cliques = [
            k for k in itertools.combinations(range(g.n), size)
            if all(g.adjacent(a, b) for a, b in itertools.combinations(k, 2))
        ]
        if cliques:
            omega = size
            break
    assert omega >= 2
    best = None
    for k in cliques:  # combinations come out in lexicographic order
        comps = _components(g, k)
        if len(comps) == 1:
            return ClosedTournament(frozenset(k), DirectedPath(()), frozenset(k))
        paths = list(_simple_paths(g, comps[-1], comps[0]))
        shortest = min(paths, key=lambda p: (len(p), p))
        if best is None or len(shortest) < len(best.p):
            best = ClosedTournament(frozenset(k), DirectedPath(shortest), frozenset(k) | frozenset(shortest))
    return best


def independent_pattern_scan(g: OrientedGraph, h: PatternId) -> bool:
    """True iff ``g`` is ``h``-free, by checking every 4-set against the path shape.

    A 4-set carries an induced oriented P4 exactly when it has three arcs
    forming a path; the path's orientation string, read from either end, is
    compared with ``h``.
    """
    targets = {h.value, "".join("<" if ch == ">" else ">" for ch in reversed(h.value))}
    for quad in itertools.combinations(range(g.n), 4):
        edges = [(u, v) for u in quad for v in quad if g.has_arc(u, v)]
        if len(edges) != 3:
            continue
        degree = {v: 0 for v in quad}
        for u, v in edges:
            degree[u] += 1
            degree[v] += 1
        if sorted(degree.values()) != [1, 1, 2, 2]:
            continue
        # three edges with degrees 1,1,2,2 on four vertices form a path
        start = min(v for v in quad if degree[v] == 1)
        order = [start]
        while len(order) < 4:
            last = order[-1]
            order.append(next(w for w in quad if w not in order and (g.has_arc(last, w) or g.has_arc(w, last))))
        shape = "".join(">" if g.has_arc(a, b) else "<" for a, b in zip(order, order[1:]))
        if shape in targets:
            return False
    return True
