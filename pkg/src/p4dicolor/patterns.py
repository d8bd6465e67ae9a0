"""Induced orientations of P4, clique number and strong neighbourhoods."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .digraph import OrientedGraph, iter_bits, lowest_bit, mask_of, neighborhood_mask, set_of


class PatternId(enum.Enum):
    """The four orientations of P4, up to reading the path backwards.

    ``value`` spells the canonical orientation of the path ``a-b-c-d``: for
    each consecutive pair, ``">"`` is an arc left to right, ``"<"`` right to
    left.
    """

    P4_FORWARD = ">>>"
    A4 = "<><"
    Q4 = "><<"
    Q4_PRIME = "<<>"

    @property
    def case_constant(self) -> int:
        return _CASE_CONSTANT[self]

    @property
    def cli_name(self) -> str:
        return _CLI_NAMES[self]

    def reversed(self) -> PatternId:
        """The pattern obtained by reversing every arc."""
        flipped = "".join("<" if ch == ">" else ">" for ch in self.value)
        for cand in PatternId:
            if cand.value in (flipped, _read_backwards(flipped)):
                return cand
        raise AssertionError(flipped)

    def arcs(self, quad: tuple[int, int, int, int]) -> list[tuple[int, int]]:
        """The three arcs this pattern prescribes on the ordered quadruple."""
        out = []
        for i, ch in enumerate(self.value):
            a, b = quad[i], quad[i + 1]
            out.append((a, b) if ch == ">" else (b, a))
        return out

    @classmethod
    def parse(cls, name: str) -> PatternId:
        key = name.strip().lower().replace("-", "_").replace("'", "_prime")
        for cand, names in _ALIASES.items():
            if key in names:
                return cand
        raise ValueError(f"unknown pattern {name!r}; expected one of p4, a4, q4, q4prime")


def _read_backwards(shape: str) -> str:
    return "".join("<" if ch == ">" else ">" for ch in reversed(shape))


_CASE_CONSTANT = {
    PatternId.Q4: 3,
    PatternId.Q4_PRIME: 3,
    PatternId.P4_FORWARD: 6,
    PatternId.A4: 7,
}
_CLI_NAMES = {
    PatternId.P4_FORWARD: "p4",
    PatternId.A4: "a4",
    PatternId.Q4: "q4",
    PatternId.Q4_PRIME: "q4prime",
}
_ALIASES = {
    PatternId.P4_FORWARD: {"p4", "p4_forward", "p4forward", "forward"},
    PatternId.A4: {"a4"},
    PatternId.Q4: {"q4"},
    PatternId.Q4_PRIME: {"q4prime", "q4_prime", "q4p"},
}


@dataclass(frozen=True)
class PatternWitness:
    """An induced copy of ``pattern`` on ``vertices``, in canonical reading order."""

    pattern: PatternId
    vertices: tuple[int, int, int, int]

    def arcs(self) -> list[tuple[int, int]]:
        return self.pattern.arcs(self.vertices)


def _rel(g: OrientedGraph, ch: str, v: int) -> int:
    return g.out_masks[v] if ch == ">" else g.in_masks[v]


def is_induced_pattern(g: OrientedGraph, h: PatternId, quad: Iterable[int]) -> bool:
    """True iff the ordered quadruple spans exactly ``h``'s three arcs."""
    q = tuple(quad)
    if len(set(q)) != 4:
        return False
    want = set(h.arcs(q))
    have = {(u, v) for u in q for v in q if u != v and g.has_arc(u, v)}
    return have == want


def find_pattern(g: OrientedGraph, h: PatternId, within: Iterable[int] | int | None = None) -> PatternWitness | None:
    """Lexicographically first ordered witness of an induced ``h``, or None.

    Scanning every ordered quadruple in canonical orientation covers both
    reading directions of each copy. ``within`` restricts the search to an
    induced subgraph.
    """
    if within is None:
        allowed = g.full_mask
    elif isinstance(within, int):
        allowed = within
    else:
        allowed = mask_of(within)
    s01, s12, s23 = h.value
    for a in iter_bits(allowed):
        not_a = ~(g.adj_mask(a) | 1 << a)
        for b in iter_bits(_rel(g, s01, a) & allowed):
            not_ab = not_a & ~(g.adj_mask(b) | 1 << b)
            for c in iter_bits(_rel(g, s12, b) & allowed & not_a):
                d = _rel(g, s23, c) & allowed & not_ab
                if d:
                    return PatternWitness(h, (a, b, c, lowest_bit(d)))
    return None


def creates_pattern(g: OrientedGraph, u: int, v: int, h: PatternId) -> bool:
    """Would adding the arc ``(u, v)`` to ``g`` create an induced ``h``?

    ``u`` and ``v`` must be non-adjacent in ``g``. Any new copy uses the new
    arc as one of its three path edges, so only those placements are tried.
    """
    adj = [g.adj_mask(x) for x in range(g.n)]
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    out = list(g.out_masks)
    inn = list(g.in_masks)
    out[u] |= 1 << v
    inn[v] |= 1 << u

    def rel(ch: str, x: int) -> int:
        return out[x] if ch == ">" else inn[x]

    def closed(x: int) -> int:
        return adj[x] | 1 << x

    shape = h.value
    for pos, ch in enumerate(shape):
        first, second = (u, v) if ch == ">" else (v, u)
        if pos == 1:
            a_cands = _rel_back(shape[0], first, out, inn) & ~closed(second)
            d_cands = rel(shape[2], second) & ~closed(first)
            for a in iter_bits(a_cands):
                if d_cands & ~closed(a):
                    return True
        elif pos == 0:
            for c in iter_bits(rel(shape[1], second) & ~closed(first)):
                if rel(shape[2], c) & ~closed(first) & ~closed(second):
                    return True
        else:
            # new arc sits on (c, d); grow backwards to b then a
            for b in iter_bits(_rel_back(shape[1], first, out, inn) & ~closed(second)):
                if _rel_back(shape[0], b, out, inn) & ~closed(first) & ~closed(second):
                    return True
    return False


def _rel_back(ch: str, x: int, out: list[int], inn: list[int]) -> int:
    # vertices y with the prescribed relation y -ch- x, i.e. ">" means (y, x)
    return inn[x] if ch == ">" else out[x]


def _bk_maximum(g: OrientedGraph, allowed: int, cap: int | None = None) -> tuple[int, list[int]]:
    """Bron-Kerbosch with pivoting over the underlying graph.

    Returns the clique number of ``g[allowed]`` and every maximum clique (as
    masks), pruning branches that cannot reach the incumbent size. With
    ``cap`` set, only the size is needed and the search stops at ``cap``.
    """
    adj = [g.adj_mask(v) & allowed for v in range(g.n)]
    best = 0
    found: list[int] = []

    def expand(r: int, size: int, p: int, x: int) -> bool:
        nonlocal best, found
        if not p and not x:
            if size > best:
                best, found = size, [r]
            elif size == best:
                found.append(r)
            return cap is not None and best >= cap
        if size + p.bit_count() < best or (cap is not None and size + p.bit_count() <= best):
            return False
        px = p | x
        pivot = max(iter_bits(px), key=lambda w: ((p & adj[w]).bit_count(), -w))
        for v in iter_bits(p & ~adj[pivot]):
            bit = 1 << v
            if expand(r | bit, size + 1, p & adj[v], x & adj[v]):
                return True
            p &= ~bit
            x |= bit
            if size + p.bit_count() < best:
                break
        return False

    if allowed:
        expand(0, 0, allowed, 0)
    return best, found


def clique_number(g: OrientedGraph, within: Iterable[int] | int | None = None, cap: int | None = None) -> int:
    """omega of ``g[within]``; with ``cap`` the answer is exact only below ``cap``."""
    if within is None:
        allowed = g.full_mask
    elif isinstance(within, int):
        allowed = within
    else:
        allowed = mask_of(within)
    return _bk_maximum(g, allowed, cap)[0]


def maximum_tournaments(g: OrientedGraph, within: Iterable[int] | int | None = None) -> tuple[int, tuple[frozenset[int], ...]]:
    """Clique number and all maximum tournaments, sorted by their vertex tuples."""
    if within is None:
        allowed = g.full_mask
    elif isinstance(within, int):
        allowed = within
    else:
        allowed = mask_of(within)
    omega, masks = _bk_maximum(g, allowed)
    cliques = sorted(tuple(iter_bits(m)) for m in masks)
    return omega, tuple(frozenset(c) for c in cliques)


def strong_neighborhood(g: OrientedGraph, a: Iterable[int]) -> frozenset[int]:
    return set_of(strong_neighborhood_mask(g, mask_of(a)))


def strong_neighborhood_mask(g: OrientedGraph, am: int) -> int:
    out = 0
    for v in iter_bits(neighborhood_mask(g, am)):
        if g.in_masks[v] & am and g.out_masks[v] & am:
            out |= 1 << v
    return out
