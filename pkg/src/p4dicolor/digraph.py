"""Oriented graphs on the dense vertex universe ``0..n-1``.

Vertex sets are exposed as ``frozenset[int]``; internally every graph also
keeps per-vertex bitmasks (``int``), which is what the search-heavy modules
use. ``mask_of`` and ``iter_bits`` convert between the two views.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised when an arc list does not describe an oriented graph.

    ``kind`` is one of ``"self-loop"``, ``"digon"``, ``"range"``; ``pair`` is
    the offending arc.
    """

    def __init__(self, kind: str, pair: tuple[int, int], message: str):
        super().__init__(message)
        self.kind = kind
        self.pair = pair


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def set_of(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


@dataclass(frozen=True)
class OrientedGraph:
    """A simple digraph without loops or digons.

    Build instances with :func:`build_graph`; the constructor trusts its input.
    """

    n: int
    arcs: frozenset[tuple[int, int]]
    out_masks: tuple[int, ...] = field(repr=False, compare=False, default=())
    in_masks: tuple[int, ...] = field(repr=False, compare=False, default=())

    def __post_init__(self) -> None:
        if not self.out_masks and self.n:
            out = [0] * self.n
            inn = [0] * self.n
            for u, v in self.arcs:
                out[u] |= 1 << v
                inn[v] |= 1 << u
            object.__setattr__(self, "out_masks", tuple(out))
            object.__setattr__(self, "in_masks", tuple(inn))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def adj_mask(self, v: int) -> int:
        return self.out_masks[v] | self.in_masks[v]

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_masks[u] >> v & 1)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj_mask(u) >> v & 1)

    def out_neighbors(self, v: int) -> frozenset[int]:
        return set_of(self.out_masks[v])

    def in_neighbors(self, v: int) -> frozenset[int]:
        return set_of(self.in_masks[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return set_of(self.adj_mask(v))

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def reverse(self) -> OrientedGraph:
        return OrientedGraph(self.n, frozenset((v, u) for u, v in self.arcs))

    def induced(self, vertices: Iterable[int]) -> tuple[OrientedGraph, tuple[int, ...]]:
        """Return ``g[vertices]`` relabelled to ``0..k-1`` plus the label map.

        ``labels[i]`` is the original name of new vertex ``i``; labels are
        increasing, so relabelling preserves vertex order.
        """
        labels = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(labels)}
        sub = frozenset(
            (index[u], index[v])
            for u in labels
            for v in iter_bits(self.out_masks[u])
            if v in index
        )
        return OrientedGraph(len(labels), sub), labels


def build_graph(n: int, arcs: Iterable[Sequence[int]]) -> OrientedGraph:
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    seen: set[tuple[int, int]] = set()
    for arc in arcs:
        u, v = int(arc[0]), int(arc[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError("range", (u, v), f"arc ({u},{v}) has a vertex outside 0..{n - 1}")
        if u == v:
            raise GraphError("self-loop", (u, v), f"self-loop at vertex {u}")
        if (v, u) in seen:
            raise GraphError("digon", (v, u), f"digon ({v},{u})/({u},{v})")
        seen.add((u, v))
    return OrientedGraph(n, frozenset(seen))


@dataclass(frozen=True)
class DirectedPath:
    """Vertices ``p_1, ..., p_l`` of a directed path, stored in order."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __getitem__(self, i: int) -> int:
        return self.vertices[i]

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)


def is_directed_path(g: OrientedGraph, p: DirectedPath) -> bool:
    vs = p.vertices
    return len(set(vs)) == len(vs) and all(g.has_arc(a, b) for a, b in zip(vs, vs[1:]))


@dataclass(frozen=True)
class SccDecomposition:
    """Strong components listed in a topological order of the condensation."""

    components: tuple[frozenset[int], ...]
    component_of: tuple[int, ...]

    def source_components(self, g: OrientedGraph) -> list[int]:
        return [i for i, comp in enumerate(self.components) if not self._crossing(g, comp, g.in_masks)]

    def sink_components(self, g: OrientedGraph) -> list[int]:
        return [i for i, comp in enumerate(self.components) if not self._crossing(g, comp, g.out_masks)]

    @staticmethod
    def _crossing(g: OrientedGraph, comp: frozenset[int], masks: tuple[int, ...]) -> bool:
        cm = mask_of(comp)
        return any(masks[v] & ~cm for v in comp)


def scc(g: OrientedGraph, within: int | None = None) -> SccDecomposition:
    """Tarjan's algorithm, iterative, restricted to the vertices in ``within``.

    Vertices outside ``within`` get component index -1.
    """
    allowed = g.full_mask if within is None else within
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    found: list[frozenset[int]] = []
    counter = 0
    for root in iter_bits(allowed):
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter_bits(g.out_masks[root] & allowed))]
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter_bits(g.out_masks[w] & allowed)))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                found.append(frozenset(comp))
    # Tarjan emits sinks first.
    found.reverse()
    component_of = [-1] * g.n
    for i, comp in enumerate(found):
        for v in comp:
            component_of[v] = i
    return SccDecomposition(tuple(found), tuple(component_of))


def is_strongly_connected(g: OrientedGraph, within: int | None = None) -> bool:
    allowed = g.full_mask if within is None else within
    if not allowed:
        return False
    start = lowest_bit(allowed)
    return _reach(g.out_masks, start, allowed) == allowed and _reach(g.in_masks, start, allowed) == allowed


def _reach(masks: tuple[int, ...], start: int, allowed: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= masks[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


@dataclass(frozen=True)
class Acyclicity:
    """Outcome of an acyclicity test; truthy when acyclic.

    ``order`` is a topological order when acyclic, ``cycle`` a directed cycle
    ``c_0 -> c_1 -> ... -> c_0`` (rotated to start at its smallest vertex)
    otherwise.
    """

    acyclic: bool
    order: tuple[int, ...] | None = None
    cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.acyclic


def induced_is_acyclic(g: OrientedGraph, s: Iterable[int] | int) -> Acyclicity:
    sm = s if isinstance(s, int) else mask_of(s)
    indeg = {v: (g.in_masks[v] & sm).bit_count() for v in iter_bits(sm)}
    ready = deque(v for v, d in indeg.items() if d == 0)
    order = []
    while ready:
        v = ready.popleft()
        order.append(v)
        for w in iter_bits(g.out_masks[v] & sm):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    if len(order) == len(indeg):
        return Acyclicity(True, order=tuple(order))
    left = sm & ~mask_of(order)
    # Every leftover vertex keeps an in-neighbour among the leftovers.
    walk = [lowest_bit(left)]
    pos = {walk[0]: 0}
    while True:
        prev = lowest_bit(g.in_masks[walk[-1]] & left)
        if prev in pos:
            back = walk[pos[prev]:]
            break
        pos[prev] = len(walk)
        walk.append(prev)
    cycle = back[::-1]
    k = cycle.index(min(cycle))
    return Acyclicity(False, cycle=tuple(cycle[k:] + cycle[:k]))


def shortest_directed_path(
    g: OrientedGraph,
    sources: Iterable[int],
    targets: Iterable[int],
    avoid: Iterable[int] = (),
) -> DirectedPath | None:
    """Fewest-vertex directed path from ``sources`` to ``targets``.

    Interior vertices may not lie in ``avoid`` (endpoints may). Among all
    shortest paths the lexicographically smallest vertex sequence wins.
    """
    src = mask_of(sources)
    tgt = mask_of(targets)
    passable = g.full_mask & ~mask_of(avoid)
    if not src or not tgt:
        return None
    # dist[v]: arcs from v to the target set, with v as a target or interior vertex.
    dist = {t: 0 for t in iter_bits(tgt)}
    frontier = list(iter_bits(tgt))
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for u in iter_bits(g.in_masks[v] & passable):
                if u not in dist:
                    dist[u] = d
                    nxt.append(u)
        frontier = nxt

    def start_cost(s: int) -> int | None:
        if s in dist and (tgt >> s & 1 or passable >> s & 1):
            return dist[s]
        best = None
        for w in iter_bits(g.out_masks[s]):
            if w in dist and (best is None or dist[w] + 1 < best):
                best = dist[w] + 1
        return best

    best_start, best_cost = None, None
    for s in iter_bits(src):
        cost = start_cost(s)
        if cost is not None and (best_cost is None or cost < best_cost):
            best_start, best_cost = s, cost
    if best_start is None:
        return None
    path = [best_start]
    remaining = best_cost
    while remaining:
        v = path[-1]
        nxt_v = next(w for w in iter_bits(g.out_masks[v]) if dist.get(w) == remaining - 1)
        path.append(nxt_v)
        remaining -= 1
    return DirectedPath(tuple(path))


def is_forward_induced(g: OrientedGraph, p: DirectedPath) -> bool:
    vs = p.vertices
    pos = {v: i for i, v in enumerate(vs)}
    for i, v in enumerate(vs):
        for w in iter_bits(g.out_masks[v]):
            j = pos.get(w)
            if j is not None and j > i + 1:
                return False
    return True


def neighborhood(g: OrientedGraph, s: Iterable[int], closed: bool = False) -> frozenset[int]:
    return set_of(neighborhood_mask(g, mask_of(s), closed))


def neighborhood_mask(g: OrientedGraph, sm: int, closed: bool = False) -> int:
    out = 0
    for v in iter_bits(sm):
        out |= g.adj_mask(v)
    return out | sm if closed else out & ~sm
