"""Closed tournaments, dipolar sets and attachment partitions of a path.

Indices into a path are 0-based in code: ``p[0]`` is the first vertex and
``p[-1]`` the last, so the "interior" positions ``2..l-1`` of the usual
1-based notation are ``range(1, l - 1)`` here.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .digraph import (
    DirectedPath,
    OrientedGraph,
    is_forward_induced,
    is_strongly_connected,
    iter_bits,
    lowest_bit,
    mask_of,
    neighborhood_mask,
    scc,
    set_of,
    shortest_directed_path,
)
from .patterns import (
    PatternId,
    PatternWitness,
    clique_number,
    find_pattern,
    is_induced_pattern,
    maximum_tournaments,
    strong_neighborhood_mask,
)


class NotStronglyConnected(ValueError):
    pass


class EnumerationBudgetExceeded(RuntimeError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} maximum tournaments exceed the enumeration cap {cap}")
        self.count = count
        self.cap = cap


class NotDipolar(RuntimeError):
    """A vertex of ``Z`` or ``Y`` has both an in- and an out-neighbour outside ``S``.

    On an H-free input this cannot happen; ``witness`` is the induced copy of
    the pattern that the situation produces.
    """

    def __init__(self, vertex: int, in_arc: tuple[int, int], out_arc: tuple[int, int], witness: PatternWitness | None):
        super().__init__(f"vertex {vertex} has in-arc {in_arc} and out-arc {out_arc} leaving S")
        self.vertex = vertex
        self.in_arc = in_arc
        self.out_arc = out_arc
        self.witness = witness


@dataclass(frozen=True)
class ClosedTournament:
    k: frozenset[int]
    p: DirectedPath
    c: frozenset[int]

    @property
    def length(self) -> int:
        return len(self.p)

    def check(self, g: OrientedGraph, omega: int | None = None) -> None:
        """Assert the structural invariants; raises AssertionError on failure."""
        k = sorted(self.k)
        assert all(g.adjacent(a, b) for a, b in itertools.combinations(k, 2)), "K is not a tournament"
        if omega is not None:
            assert len(k) == omega, "K is not maximum"
        assert self.c == self.k | self.p.vertex_set
        assert is_strongly_connected(g, mask_of(self.c)), "C is not strongly connected"
        if len(self.p):
            assert self.p[0] in self.k and self.p[-1] in self.k
            assert is_forward_induced(g, self.p)
        else:
            assert is_strongly_connected(g, mask_of(self.k))


def path_minimizing_closed_tournament(g: OrientedGraph, cap: int | None = None) -> ClosedTournament:
    """Maximum tournament ``K`` and connecting path ``P`` with ``|P|`` minimum.

    ``P`` runs from the sink component of ``g[K]`` to its source component,
    which is the direction that makes ``K + P`` strongly connected. When some
    maximum tournament is itself strongly connected, ``P`` is empty. Ties go
    to the first ``K`` in enumeration order, then the lexicographically
    smallest path.
    """
    if not is_strongly_connected(g):
        raise NotStronglyConnected("closed tournaments are only defined for strongly connected graphs")
    omega, tournaments = maximum_tournaments(g)
    if omega < 2:
        raise NotStronglyConnected("a single vertex has no closed tournament")
    if cap is not None and len(tournaments) > cap:
        raise EnumerationBudgetExceeded(len(tournaments), cap)
    best: ClosedTournament | None = None
    for k in tournaments:
        comps = scc(g, mask_of(k)).components
        if len(comps) == 1:
            return ClosedTournament(k, DirectedPath(()), k)
        # condensation of a tournament is a chain: comps[0] source, comps[-1] sink
        path = shortest_directed_path(g, comps[-1], comps[0])
        assert path is not None, "strongly connected graph must link sink back to source"
        if best is None or len(path) < len(best.p):
            best = ClosedTournament(k, path, k | path.vertex_set)
    assert best is not None
    return best


@dataclass(frozen=True)
class DipolarSet:
    s_plus: frozenset[int]
    s_minus: frozenset[int]

    @property
    def vertices(self) -> frozenset[int]:
        return self.s_plus | self.s_minus


@dataclass(frozen=True)
class DipolarParts:
    """``C``, its strong neighbourhood ``X``, the other neighbours ``Z`` and ``Y = N(X) - N[C]``."""

    c: frozenset[int]
    x: frozenset[int]
    z: frozenset[int]
    y: frozenset[int]


@dataclass(frozen=True)
class DipolarCheck:
    ok: bool
    vertex: int | None = None
    arc: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_dipolar(g: OrientedGraph, d: DipolarSet) -> DipolarCheck:
    if d.s_plus & d.s_minus:
        return DipolarCheck(False, vertex=min(d.s_plus & d.s_minus))
    sm = mask_of(d.vertices)
    plus = mask_of(d.s_plus)
    for v in iter_bits(sm):
        if plus >> v & 1:
            leak = g.out_masks[v] & ~sm
            if leak:
                return DipolarCheck(False, v, (v, lowest_bit(leak)))
        else:
            leak = g.in_masks[v] & ~sm
            if leak:
                return DipolarCheck(False, v, (lowest_bit(leak), v))
    return DipolarCheck(True)


def witness_among(g: OrientedGraph, patterns: Iterable[PatternId], groups: Iterable[Iterable[int]]) -> PatternWitness | None:
    """First induced copy of any of ``patterns`` on one of the candidate 4-sets."""
    pats = list(patterns)
    for group in groups:
        quad = tuple(group)
        if len(set(quad)) != 4:
            continue
        for h in pats:
            for order in itertools.permutations(sorted(quad)):
                if is_induced_pattern(g, h, order):
                    return PatternWitness(h, order)
    return None


def build_dipolar_set(g: OrientedGraph, ct: ClosedTournament, h: PatternId | None = None) -> tuple[DipolarSet, DipolarParts]:
    """The dipolar set ``N[C + X]`` grown from a closed tournament."""
    cm = mask_of(ct.c)
    xm = strong_neighborhood_mask(g, cm)
    ncm = neighborhood_mask(g, cm, closed=True)
    zm = ncm & ~cm & ~xm
    ym = neighborhood_mask(g, xm) & ~ncm
    sm = ncm | ym
    plus = minus = 0
    for v in iter_bits(sm):
        outside_out = g.out_masks[v] & ~sm
        outside_in = g.in_masks[v] & ~sm
        if outside_out and outside_in:
            b_in, b_out = lowest_bit(outside_in), lowest_bit(outside_out)
            witness = _dipolar_witness(g, h, v, b_in, b_out, cm, xm)
            raise NotDipolar(v, (b_in, v), (v, b_out), witness)
        if outside_out:
            minus |= 1 << v
        else:
            plus |= 1 << v
    parts = DipolarParts(set_of(cm), set_of(xm), set_of(zm), set_of(ym))
    return DipolarSet(set_of(plus), set_of(minus)), parts


def _dipolar_witness(g, h, v, b_in, b_out, cm, xm) -> PatternWitness | None:
    pats = [h] if h is not None else list(PatternId)
    bs = (b_in, b_out)
    groups = []
    if g.adj_mask(v) & xm:
        for x in iter_bits(g.adj_mask(v) & xm):
            cs = (lowest_bit(g.in_masks[x] & cm), lowest_bit(g.out_masks[x] & cm))
            groups.extend((c, x, v, b) for c in cs for b in bs)
    else:
        near = g.adj_mask(v) & cm
        for q in iter_bits(near):
            for p in iter_bits(g.adj_mask(q) & cm & ~near):
                groups.extend((p, q, v, b) for b in bs)
    found = witness_among(g, pats, groups)
    if found is None:
        for cand in pats:
            found = find_pattern(g, cand)
            if found is not None:
                break
    return found


@dataclass(frozen=True)
class AttachmentPartitions:
    """Partitions of ``N(P)`` by first and last neighbour on the path.

    Entry ``i`` of each tuple belongs to path vertex ``p[i]`` (0-based). The
    ``plus`` refinements hold in-neighbours of ``p[i]``, the ``minus``
    refinements its out-neighbours.
    """

    path: DirectedPath
    first: tuple[frozenset[int], ...]
    first_plus: tuple[frozenset[int], ...]
    first_minus: tuple[frozenset[int], ...]
    last: tuple[frozenset[int], ...]
    last_plus: tuple[frozenset[int], ...]
    last_minus: tuple[frozenset[int], ...]
    first_index: dict[int, int]
    last_index: dict[int, int]

    @property
    def members(self) -> frozenset[int]:
        return frozenset(self.first_index)


def attachment_partitions(g: OrientedGraph, p: DirectedPath) -> AttachmentPartitions:
    ell = len(p)
    pm = mask_of(p)
    first_index: dict[int, int] = {}
    last_index: dict[int, int] = {}
    for i, pi in enumerate(p):
        for v in iter_bits(g.adj_mask(pi) & ~pm):
            first_index.setdefault(v, i)
            last_index[v] = i

    def split(index: dict[int, int]):
        whole = [set() for _ in range(ell)]
        plus = [set() for _ in range(ell)]
        minus = [set() for _ in range(ell)]
        for v, i in index.items():
            whole[i].add(v)
            (plus if g.has_arc(v, p[i]) else minus)[i].add(v)
        return tuple(tuple(frozenset(s) for s in seq) for seq in (whole, plus, minus))

    f, fp, fm = split(first_index)
    l, lp, lm = split(last_index)
    return AttachmentPartitions(p, f, fp, fm, l, lp, lm, first_index, last_index)


def w_r_sets(g: OrientedGraph, p: DirectedPath, partitions: AttachmentPartitions, case: PatternId) -> tuple[frozenset[int], frozenset[int]]:
    """The ``W`` and ``R`` classes of ``N(P)`` for the forward-path or A4 analysis."""
    ell = len(p)
    if ell < 3:
        raise ValueError("W/R classes need a path on at least three vertices")
    interior = range(1, ell - 1)
    if case is PatternId.P4_FORWARD:
        w = set().union(*(partitions.first_minus[i] | partitions.last_plus[i] for i in interior))
        excluded = {p[0], p[1], p[-1]}
    elif case is PatternId.A4:
        w = set().union(*(partitions.first_plus[i] | partitions.last_minus[i] for i in interior))
        excluded = {p[0], p[-1]}
    else:
        raise ValueError(f"W/R classes are defined for P4_FORWARD and A4, not {case.name}")
    near = set_of(neighborhood_mask(g, mask_of(excluded)))
    r = partitions.members - near - w
    return frozenset(w), frozenset(r)


# Structural facts about minimal closed tournaments, as violation scanners.
# Each returns the offending arcs; an empty list means the fact holds.


def attachment_arc_violations(g: OrientedGraph, partitions: AttachmentPartitions, h: PatternId) -> list[tuple[int, int]]:
    """Arcs between interior attachment classes that ``h``-freeness forbids."""
    ell = len(partitions.path)
    if h is PatternId.Q4:
        rules = [(partitions.first, partitions.first, "down")]
    elif h is PatternId.P4_FORWARD:
        rules = [(partitions.first_minus, partitions.first, "up"), (partitions.last, partitions.last_plus, "up")]
    elif h is PatternId.A4:
        rules = [(partitions.first_plus, partitions.first, "up"), (partitions.last, partitions.last_minus, "up")]
    else:
        raise ValueError("Q4_PRIME is handled through arc reversal")
    bad = []
    for i in range(1, ell - 1):
        for j in range(i + 1, ell - 1):
            for src, dst, direction in rules:
                tail, head = (src[i], dst[j]) if direction == "up" else (src[j], dst[i])
                hm = mask_of(head)
                for u in sorted(tail):
                    bad.extend((u, w) for w in iter_bits(g.out_masks[u] & hm))
    return bad


def shortcut_violations(g: OrientedGraph, p: DirectedPath) -> list[tuple[int, int]]:
    """Arcs ``(v, w)`` with ``(p_i, v)``, ``(w, p_j)`` arcs and ``j > i + 3``.

    Each such arc would shorten ``p`` between its endpoints.
    """
    pm = mask_of(p)
    bad = []
    for i, pi in enumerate(p):
        for j in range(i + 4, len(p)):
            for v in iter_bits(g.out_masks[pi] & ~pm):
                for w in iter_bits(g.out_masks[v] & g.in_masks[p[j]] & ~pm):
                    bad.append((v, w))
    return sorted(set(bad))


def ra_violations(g: OrientedGraph, p: DirectedPath, partitions: AttachmentPartitions) -> list[tuple[int, int]]:
    """Arcs from ``F_i`` to ``F_j`` inside ``R^a`` with ``j > i + 2``."""
    _, ra = w_r_sets(g, p, partitions, PatternId.A4)
    bad = []
    for v in sorted(ra):
        i = partitions.first_index[v]
        for w in iter_bits(g.out_masks[v]):
            if w in ra and partitions.first_index[w] > i + 2:
                bad.append((v, w))
    return bad


def rp_path_violations(g: OrientedGraph, p: DirectedPath, partitions: AttachmentPartitions) -> list[tuple[int, int]]:
    """Arcs ``(w, v)`` inside ``R^p`` with no ``v -> w`` path on ``max(6, l-1)`` vertices."""
    _, rp = w_r_sets(g, p, partitions, PatternId.P4_FORWARD)
    limit = max(6, len(p) - 1) - 1  # in arcs
    bad = []
    for w in sorted(rp):
        for v in iter_bits(g.out_masks[w]):
            if v in rp and _distance(g, v, w, limit) is None:
                bad.append((w, v))
    return bad


def rp_clique_number(g: OrientedGraph, p: DirectedPath, partitions: AttachmentPartitions) -> int:
    _, rp = w_r_sets(g, p, partitions, PatternId.P4_FORWARD)
    return clique_number(g, rp)


def _distance(g: OrientedGraph, s: int, t: int, limit: int) -> int | None:
    dist = {s: 0}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            return dist[u]
        if dist[u] == limit:
            continue
        for w in iter_bits(g.out_masks[u]):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return None
