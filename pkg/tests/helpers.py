from __future__ import annotations

import itertools
import random

from hypothesis import strategies as st

from p4dicolor import PatternId, build_graph, find_pattern
from p4dicolor.digraph import OrientedGraph
from p4dicolor.generators import directed_cycle, random_hfree, substitute, transitive_tournament
from p4dicolor.patterns import clique_number

C3 = build_graph(3, [(0, 1), (1, 2), (2, 0)])
C4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
TT3 = build_graph(3, [(0, 1), (0, 2), (1, 2)])
# TT3 with a return path 2 -> 3 -> 0; {0, 2, 3} is a second (cyclic) triangle.
TT3_LOOP = build_graph(4, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 0)])
# TT3 with the longer return path 2 -> 3 -> 4 -> 0: {0, 1, 2} is the only triangle.
TT3_LONG_LOOP = build_graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 0)])
P4_PATH = build_graph(4, [(0, 1), (1, 2), (2, 3)])

# P4-forward-free graphs whose minimal closed tournament has a path on 7
# vertices and a non-empty N(P) - N[K]; found by local search, then frozen.
LONG_PATH_SEEDS = [
    build_graph(13, [
        (0, 1), (0, 11), (1, 2), (2, 0), (2, 3), (3, 1), (3, 4), (3, 11), (4, 2), (4, 5), (4, 11), (4, 12),
        (5, 1), (5, 2), (5, 6), (5, 7), (5, 10), (5, 11), (6, 0), (6, 4), (7, 0), (7, 1), (7, 3), (7, 4),
        (7, 10), (8, 0), (8, 1), (8, 3), (8, 4), (8, 5), (8, 7), (8, 10), (8, 12), (9, 1), (9, 2), (9, 6),
        (9, 7), (9, 8), (9, 11), (10, 1), (10, 2), (10, 3), (10, 11), (11, 2), (11, 7), (11, 12), (12, 0),
        (12, 1), (12, 3), (12, 6), (12, 9), (12, 10),
    ]),
    build_graph(13, [
        (0, 1), (1, 2), (2, 0), (2, 3), (2, 10), (3, 0), (3, 1), (3, 4), (3, 10), (3, 11), (4, 0), (4, 2),
        (4, 5), (4, 8), (4, 10), (4, 11), (5, 0), (5, 3), (5, 6), (5, 8), (5, 9), (5, 10), (6, 0), (6, 1),
        (6, 2), (6, 3), (6, 4), (6, 7), (6, 8), (6, 11), (6, 12), (7, 0), (7, 1), (7, 2), (7, 5), (7, 10),
        (7, 11), (8, 2), (8, 3), (9, 10), (10, 1), (10, 12), (11, 0), (11, 2), (12, 0), (12, 1), (12, 3),
        (12, 5), (12, 7), (12, 8), (12, 9), (12, 11),
    ]),
    build_graph(13, [
        (0, 1), (1, 2), (2, 3), (2, 11), (3, 0), (3, 4), (3, 11), (3, 12), (4, 0), (4, 1), (4, 5), (4, 10),
        (4, 11), (5, 0), (5, 2), (5, 6), (5, 11), (6, 0), (6, 1), (6, 2), (6, 4), (6, 7), (6, 9), (6, 11),
        (6, 12), (7, 0), (7, 1), (7, 3), (7, 5), (7, 8), (7, 10), (8, 0), (8, 1), (8, 2), (8, 4), (8, 10),
        (8, 11), (9, 11), (9, 12), (10, 0), (10, 1), (10, 2), (10, 11), (11, 1), (12, 2), (12, 11),
    ]),
]


# Strongly connected pattern-free graphs whose first dipolar set has second
# neighbours (Y non-empty) and misses some vertices; found by local search.
SECOND_NEIGHBOUR_SEEDS = {
    PatternId.P4_FORWARD: [
        build_graph(12, [
            (0, 2), (0, 10), (1, 3), (1, 4), (1, 6), (1, 10), (2, 10), (3, 9), (4, 0), (4, 2), (4, 5), (4, 7),
            (4, 8), (4, 9), (4, 11), (5, 6), (5, 7), (5, 10), (6, 8), (6, 9), (7, 6), (7, 10), (8, 5), (8, 7),
            (8, 10), (9, 1), (9, 5), (9, 7), (9, 11), (10, 9), (11, 3), (11, 10)
        ]),
        build_graph(10, [
            (0, 6), (1, 0), (1, 7), (1, 9), (2, 4), (2, 9), (3, 2), (3, 5), (4, 3), (4, 5), (4, 9), (5, 2), (5,
            6), (6, 9), (7, 0), (7, 6), (8, 1), (8, 2), (8, 3), (8, 5), (8, 6), (9, 5), (9, 8)
        ]),
    ],
    PatternId.A4: [
        build_graph(12, [
            (0, 1), (0, 5), (0, 6), (1, 5), (1, 7), (1, 8), (2, 4), (3, 11), (4, 3), (5, 6), (5, 9), (5, 10),
            (6, 1), (6, 9), (7, 0), (7, 6), (7, 10), (8, 5), (8, 7), (8, 9), (8, 10), (9, 10), (9, 11), (10, 0),
            (10, 2), (10, 6), (11, 1), (11, 8), (11, 10)
        ]),
        build_graph(10, [
            (0, 5), (1, 2), (1, 3), (2, 9), (3, 8), (4, 0), (4, 5), (5, 1), (5, 3), (6, 4), (6, 5), (7, 1), (7,
            3), (7, 6), (8, 7), (9, 7), (9, 8)
        ]),
        build_graph(9, [
            (0, 1), (0, 2), (0, 3), (0, 5), (1, 3), (1, 7), (2, 4), (2, 5), (2, 6), (3, 2), (3, 7), (4, 6), (4,
            8), (5, 1), (5, 3), (6, 5), (7, 0), (7, 2), (8, 6)
        ]),
        build_graph(10, [
            (0, 3), (1, 2), (2, 5), (2, 6), (2, 8), (3, 1), (4, 5), (4, 7), (4, 8), (5, 8), (5, 9), (6, 4), (6,
            5), (6, 7), (6, 8), (7, 2), (7, 5), (8, 0), (8, 1), (9, 4), (9, 6), (9, 7)
        ]),
    ],
}


@st.composite
def oriented_graphs(draw, min_n: int = 0, max_n: int = 9, forced=(), strong: bool = False) -> OrientedGraph:
    """Random oriented graphs; ``forced`` arcs are always present.

    With ``strong`` a directed Hamiltonian cycle through a drawn permutation
    is forced, so the result is strongly connected.
    """
    n = draw(st.integers(min_n, max_n))
    fixed = {(u, v) for u, v in forced if u < n and v < n}
    if strong and n >= 3:
        order = draw(st.permutations(range(n)))
        fixed |= {(order[i], order[(i + 1) % n]) for i in range(n)}
    arcs = list(fixed)
    for u, v in itertools.combinations(range(n), 2):
        if (u, v) in fixed or (v, u) in fixed:
            continue
        choice = draw(st.sampled_from([0, 0, 1, 2]))
        if choice == 1:
            arcs.append((u, v))
        elif choice == 2:
            arcs.append((v, u))
    return build_graph(n, arcs)


def brute_is_acyclic(g: OrientedGraph, s) -> bool:
    """Exhaustive: some ordering of s has every arc going forward."""
    s = list(s)
    return any(
        all(not g.has_arc(b, a) for i, a in enumerate(order) for b in order[i + 1:])
        for order in itertools.permutations(s)
    )


def brute_omega(g: OrientedGraph) -> int:
    best = 0
    for size in range(1, g.n + 1):
        if any(all(g.adjacent(a, b) for a, b in itertools.combinations(c, 2)) for c in itertools.combinations(range(g.n), size)):
            best = size
        else:
            break
    return best


def long_path_instances(count: int, seed: int) -> list[OrientedGraph]:
    """Blow up vertices of the long-path seeds into stable sets."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        base = LONG_PATH_SEEDS[i % len(LONG_PATH_SEEDS)]
        parts = [build_graph(rng.choice([1, 1, 1, 2, 3]), []) for _ in range(base.n)]
        out.append(substitute(base, parts))
    return out


def corpus(h: PatternId, size: int, seed: int, max_n: int = 60, max_omega: int = 5) -> list[OrientedGraph]:
    """Pattern-free instances with mixed constructions, ``n <= max_n`` and ``omega <= max_omega``."""
    rng = random.Random(seed)
    fixed: list[OrientedGraph] = [TT3, C3, C4, transitive_tournament(5)]
    if h is PatternId.P4_FORWARD:
        fixed += long_path_instances(40, seed)
    else:
        fixed += [directed_cycle(k) for k in (5, 7, 9)]
    fixed += SECOND_NEIGHBOUR_SEEDS.get(h, [])
    graphs = [g for g in fixed if g.n <= max_n and clique_number(g) <= max_omega]
    while len(graphs) < size:
        n = rng.randint(4, max_n)
        g = random_hfree(n, h, rng.randrange(2**31), omega_cap=max_omega)
        if clique_number(g, cap=max_omega + 1) <= max_omega:
            graphs.append(g)
    for g in graphs:
        assert find_pattern(g, h) is None
    return graphs
