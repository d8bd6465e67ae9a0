"""Seeded instance generators.

All randomness flows through a ``random.Random`` built from the ``seed``
argument, so identical parameters always give identical arc sets.

Besides plain rejection sampling, pattern-free instances come from three
constructions that stay inside the class by design:

* a greedy process that adds randomly oriented edges whenever no induced
  copy of the pattern (and no clique above a cap) appears;
* substitution of pattern-free graphs into the vertices of a pattern-free
  graph, which cannot create an induced P4 orientation because P4 has no
  non-trivial module;
* blow-ups of a directed cycle, which give long connecting paths.
"""
from __future__ import annotations

import random
from typing import Callable, Sequence

from .digraph import OrientedGraph, build_graph
from .patterns import PatternId, clique_number, creates_pattern, find_pattern


class MaxTriesExceeded(RuntimeError):
    def __init__(self, tries: int):
        super().__init__(f"no pattern-free instance after {tries} tries")
        self.tries = tries


def random_oriented(n: int, p: float, seed: int) -> OrientedGraph:
    """Each unordered pair becomes an edge with probability ``p``, oriented by a fair coin."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    rng = random.Random(seed)
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return build_graph(n, arcs)


def random_tournament(n: int, seed: int) -> OrientedGraph:
    return random_oriented(n, 1.0, seed)


def transitive_tournament(n: int) -> OrientedGraph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def directed_cycle(n: int) -> OrientedGraph:
    if n < 3:
        raise ValueError("a directed cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def hfree_rejection(
    base: Callable[[int], OrientedGraph],
    pattern: PatternId,
    max_tries: int,
    seed: int,
) -> OrientedGraph:
    """Draw ``base(sub_seed)`` until the result is ``pattern``-free."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        g = base(rng.randrange(2**31))
        if find_pattern(g, pattern) is None:
            return g
    raise MaxTriesExceeded(max_tries)


def greedy_hfree(
    n: int,
    pattern: PatternId,
    density: float,
    seed: int,
    omega_cap: int | None = None,
) -> OrientedGraph:
    """Add random edges in random order while the graph stays ``pattern``-free.

    Each pair is tried with probability ``density``; a random orientation is
    tried first, then the other one. With ``omega_cap`` an edge is skipped if
    it would create a clique larger than the cap.
    """
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    g = build_graph(n, [])
    arcs: set[tuple[int, int]] = set()
    for u, v in pairs:
        if rng.random() >= density:
            continue
        if omega_cap is not None:
            common = g.adj_mask(u) & g.adj_mask(v)
            if 2 + clique_number(g, common, cap=omega_cap - 1) > omega_cap:
                continue
        first = (u, v) if rng.random() < 0.5 else (v, u)
        for a, b in (first, first[::-1]):
            if not creates_pattern(g, a, b, pattern):
                arcs.add((a, b))
                g = OrientedGraph(n, frozenset(arcs))
                break
    return g


def substitute(outer: OrientedGraph, parts: Sequence[OrientedGraph]) -> OrientedGraph:
    """Replace vertex ``i`` of ``outer`` by a copy of ``parts[i]``.

    Every arc ``(i, j)`` of ``outer`` becomes all arcs from the copy of
    ``parts[i]`` to the copy of ``parts[j]``.
    """
    if len(parts) != outer.n:
        raise ValueError("need one part per outer vertex")
    offset = [0]
    for part in parts:
        offset.append(offset[-1] + part.n)
    arcs = []
    for i, part in enumerate(parts):
        arcs.extend((offset[i] + u, offset[i] + v) for u, v in part.arcs)
    for i, j in outer.arcs:
        arcs.extend((a, b) for a in range(offset[i], offset[i + 1]) for b in range(offset[j], offset[j + 1]))
    return build_graph(offset[-1], arcs)


def cycle_blowup(k: int, module_sizes: Sequence[int], pattern: PatternId, seed: int, density: float = 0.6) -> OrientedGraph:
    """A directed ``k``-cycle with each vertex replaced by a random pattern-free module.

    Long induced directed cycles contain a forward P4, so ``k >= 5`` is
    rejected for that pattern.
    """
    if pattern is PatternId.P4_FORWARD and k >= 5:
        raise ValueError("directed cycles on 5 or more vertices contain a forward P4")
    if len(module_sizes) != k:
        raise ValueError("need one module size per cycle vertex")
    rng = random.Random(seed)
    parts = [greedy_hfree(s, pattern, density, rng.randrange(2**31), omega_cap=2) for s in module_sizes]
    return substitute(directed_cycle(k), parts)


def random_hfree(n: int, pattern: PatternId, seed: int, omega_cap: int = 5) -> OrientedGraph:
    """A mixed-construction pattern-free instance on exactly ``n`` vertices.

    Picks one of the constructions above at random; used to build test
    corpora with varied structure.
    """
    rng = random.Random(seed)
    kind = rng.choice(["greedy", "greedy", "substitute", "blowup"])
    sub_seed = rng.randrange(2**31)
    if kind == "blowup" and n >= 6:
        k = rng.choice([3, 4] if pattern is PatternId.P4_FORWARD else [3, 4, 5, 6, 7, 8, 9])
        k = min(k, n // 2)
        if k >= 3:
            sizes = _split(n, k, rng)
            g = cycle_blowup(k, sizes, pattern, sub_seed)
            if clique_number(g, cap=omega_cap + 1) <= omega_cap:
                return g
    if kind == "substitute" and n >= 4:
        outer_n = rng.randint(2, max(2, min(8, n // 2)))
        sizes = _split(n, outer_n, rng)
        outer = greedy_hfree(outer_n, pattern, rng.uniform(0.4, 1.0), sub_seed, omega_cap=3)
        parts = [greedy_hfree(s, pattern, rng.uniform(0.2, 0.9), rng.randrange(2**31), omega_cap=2) for s in sizes]
        g = substitute(outer, parts)
        if clique_number(g, cap=omega_cap + 1) <= omega_cap:
            return g
    return greedy_hfree(n, pattern, rng.uniform(0.1, 0.9), sub_seed, omega_cap=omega_cap)


def _split(n: int, k: int, rng: random.Random) -> list[int]:
    cuts = sorted(rng.sample(range(1, n), k - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [n])]
