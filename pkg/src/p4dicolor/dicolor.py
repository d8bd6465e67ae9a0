"""Dicolouring oriented graphs that exclude an induced orientation of P4.

The engine follows the inductive argument on the clique number: a strongly
connected piece with clique number ``w`` is peeled by a dipolar set ``S``
grown from a path-minimising closed tournament, ``S`` is coloured from
palettes of size ``gamma = f_c(w - 1)`` (each palette filled by a recursive
call on a subgraph of smaller clique number), and the remainder is coloured
the same way. Every step whose correctness rests on H-freeness is checked at
runtime, so a graph that contains the pattern either raises
:class:`NotHFree` with an induced witness or still receives a valid
dicolouring within budget.

Partial colourings use ``(palette, colour)`` pairs so that palettes meant to
be shared are literally shared; they are renumbered to ``0..k-1`` only at
the boundaries.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field, replace
from typing import Callable, Hashable, Iterable

from .digraph import (
    OrientedGraph,
    induced_is_acyclic,
    is_strongly_connected,
    iter_bits,
    lowest_bit,
    mask_of,
    neighborhood_mask,
    scc,
    set_of,
)
from .patterns import PatternId, PatternWitness, clique_number, find_pattern, is_induced_pattern
from .structure import (
    AttachmentPartitions,
    ClosedTournament,
    DipolarParts,
    DipolarSet,
    NotDipolar,
    attachment_partitions,
    build_dipolar_set,
    path_minimizing_closed_tournament,
    w_r_sets,
    witness_among,
)

Recurse = Callable[[Iterable[int]], dict[int, int]]


class NotHFree(RuntimeError):
    """The input contains the forbidden pattern; ``witness`` is an induced copy."""

    def __init__(self, witness: PatternWitness | None, reason: str = ""):
        detail = f"induced {witness.pattern.name} on {witness.vertices}" if witness else "no witness"
        super().__init__(f"{reason}: {detail}" if reason else detail)
        self.witness = witness
        self.reason = reason


class QrsClassificationFailure(NotHFree):
    def __init__(self, vertex: int, witness: PatternWitness | None):
        super().__init__(witness, f"vertex {vertex} has an in- and an out-neighbour outside N(r)")
        self.vertex = vertex


class InvalidColoring(AssertionError):
    def __init__(self, color: int, cycle: tuple[int, ...]):
        super().__init__(f"colour {color} contains the directed cycle {cycle}")
        self.color = color
        self.cycle = cycle


def binding_function(c: int, x: int) -> int:
    """``2^x (x+c)! + sum_{i=0..x} 2^(i+2) (x+c)! / (x+c-i)!`` as an exact integer."""
    if c < 3 or x < 0:
        raise ValueError(f"need c >= 3 and x >= 0, got c={c}, x={x}")
    n = x + c
    total = 2**x * math.factorial(n)
    falling = 1  # n! / (n - i)!
    for i in range(x + 1):
        total += 2 ** (i + 2) * falling
        falling *= n - i
    return total


def binding_bound_holds(c: int, x: int, tol: float = 1e-9) -> bool:
    """Check ``f_c(x) <= (x+c)^(x+c+1.5)`` on the log scale."""
    return math.log(binding_function(c, x)) <= (x + c + 1.5) * math.log(x + c) + tol


def budget(h: PatternId, omega: int) -> int:
    return binding_function(h.case_constant, omega) if omega >= 1 else 0


@dataclass(frozen=True)
class BindingBudget:
    """Palette sizes ``f_c(1), ..., f_c(omega)`` for one case constant."""

    c: int
    levels: tuple[int, ...]

    @classmethod
    def for_pattern(cls, h: PatternId, omega: int) -> BindingBudget:
        return cls(h.case_constant, tuple(binding_function(h.case_constant, x) for x in range(1, omega + 1)))

    def gamma(self, omega: int) -> int:
        """Palette size available to recursive calls at clique level ``omega``."""
        return binding_function(self.c, omega - 1)


@dataclass(frozen=True)
class StageUse:
    colors: int
    palettes: int
    budget: int


@dataclass(frozen=True)
class PeelRecord:
    """Accounting for one dipolar peel.

    ``stages`` maps ``"NK"``, ``"P"``, ``"T"``, ``"Y"`` to their colour use;
    ``total`` is the colour count of ``S`` and ``total_budget`` the case bound
    ``(omega + c) * gamma + 2``.
    """

    omega: int
    gamma: int
    n: int
    ell: int
    s_size: int
    s_plus: int
    s_minus: int
    stages: dict[str, StageUse]
    total: int
    total_budget: int
    combined: int


@dataclass(frozen=True)
class Dicoloring:
    color_of: tuple[int, ...]
    colors_used: int
    certificate: tuple[tuple[int, ...], ...]
    pattern: PatternId | None = None
    omega: int | None = None
    budget: int | None = None
    peels: tuple[PeelRecord, ...] = field(default=(), repr=False, compare=False)


def compact(colors: Iterable[Hashable]) -> list[int]:
    """Renumber colours to ``0..k-1`` by first appearance."""
    index: dict[Hashable, int] = {}
    return [index.setdefault(col, len(index)) for col in colors]


def certify(g: OrientedGraph, color_of: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    """Per-colour topological orders; raises :class:`InvalidColoring` otherwise."""
    cols = list(color_of)
    if len(cols) != g.n:
        raise ValueError(f"colouring has {len(cols)} entries for {g.n} vertices")
    classes: dict[int, int] = defaultdict(int)
    for v, col in enumerate(cols):
        classes[col] |= 1 << v
    orders = []
    for col in sorted(classes):
        res = induced_is_acyclic(g, classes[col])
        if not res:
            raise InvalidColoring(col, res.cycle)
        orders.append(res.order)
    return tuple(orders)


def _fail(g: OrientedGraph, h: PatternId, groups, reason: str):
    """Raise NotHFree with a witness from ``groups``, else from a full scan.

    If neither finds the pattern, the failed step was not a consequence of
    H-freeness and the engine itself is wrong.
    """
    witness = witness_among(g, [h], groups) or find_pattern(g, h)
    if witness is None:
        raise AssertionError(f"{reason} on an {h.name}-free graph")
    raise NotHFree(witness, reason)


def _chain_palette(
    g: OrientedGraph,
    h: PatternId,
    classes: dict[Hashable, dict[int, int]],
    recurse: Recurse,
    witness_groups: Callable[[int, int, int, int], list],
    reason: str,
) -> dict[int, tuple]:
    """Colour classes that share a palette and are linked by arcs one way only.

    ``classes[palette][index]`` is a vertex mask. Within a palette, arcs
    between different classes must go from the higher index to the lower
    one, so every directed cycle of the palette stays inside one class.
    """
    out: dict[int, tuple] = {}
    for palette, by_index in classes.items():
        owner = {}
        for idx, m in by_index.items():
            for v in iter_bits(m):
                owner[v] = idx
        union = mask_of(owner)
        for v, i in owner.items():
            for w in iter_bits(g.out_masks[v] & union):
                j = owner[w]
                if j > i:
                    _fail(g, h, witness_groups(v, w, i, j), reason)
        for idx in sorted(by_index):
            for v, col in recurse(iter_bits(by_index[idx])).items():
                out[v] = (palette, col)
    return out


def color_qrs(
    g: OrientedGraph,
    q: Iterable[int],
    r: Iterable[int],
    s: Iterable[int],
    recurse: Recurse,
    h: PatternId | None = None,
) -> dict[int, tuple]:
    """Colour ``s`` from two shared palettes ``D1``, ``D2``.

    Repeatedly take the smallest ``r`` with a neighbour in what is left of
    ``s``; its neighbours there split into ``S1`` (no in-neighbour among the
    rest) and ``S2`` (no out-neighbour among the rest), which go to ``D1``
    and ``D2``.
    """
    qm, rm, sm = mask_of(q), mask_of(r), mask_of(s)
    if qm & rm or qm & sm or rm & sm:
        raise ValueError("q, r, s must be disjoint")
    for v in iter_bits(qm):
        if g.adj_mask(v) & sm:
            raise ValueError(f"vertex {v} of q is adjacent to s")
    for v in iter_bits(rm):
        if not (g.in_masks[v] & qm and g.out_masks[v] & qm):
            raise ValueError(f"vertex {v} of r lacks an in- or out-neighbour in q")
    for v in iter_bits(sm):
        if not g.adj_mask(v) & rm:
            raise ValueError(f"vertex {v} of s has no neighbour in r")

    out: dict[int, tuple] = {}
    remaining = sm
    while remaining:
        pivot = next(x for x in iter_bits(rm) if g.adj_mask(x) & remaining)
        near = g.adj_mask(pivot) & remaining
        rest = remaining & ~near
        s1 = s2 = 0
        for v in iter_bits(near):
            if not g.in_masks[v] & rest:
                s1 |= 1 << v
            elif not g.out_masks[v] & rest:
                s2 |= 1 << v
            else:
                qs = (lowest_bit(g.in_masks[pivot] & qm), lowest_bit(g.out_masks[pivot] & qm))
                ss = (lowest_bit(g.in_masks[v] & rest), lowest_bit(g.out_masks[v] & rest))
                groups = [(qq, pivot, v, sx) for qq in qs for sx in ss]
                pats = [h] if h is not None else list(PatternId)
                raise QrsClassificationFailure(v, witness_among(g, pats, groups))
        for v, col in recurse(iter_bits(s1)).items():
            out[v] = ("D1", col)
        for v, col in recurse(iter_bits(s2)).items():
            out[v] = ("D2", col)
        remaining = rest
    return out


def color_path_neighborhood(
    g: OrientedGraph,
    ct: ClosedTournament,
    partitions: AttachmentPartitions,
    h: PatternId,
    recurse: Recurse,
    omega: int | None = None,
) -> dict[int, tuple]:
    """Colour ``N(P) - N[K]`` using the attachment structure of ``P``."""
    p = ct.p
    ell = len(p)
    if ell == 0:
        return {}
    if h is PatternId.Q4_PRIME:
        raise ValueError("Q4_PRIME is handled by reversing the graph")
    nk = neighborhood_mask(g, mask_of(ct.k), closed=True)
    tm = mask_of(partitions.members) & ~nk
    if not tm:
        return {}
    fi, li = partitions.first_index, partitions.last_index
    interior = range(1, ell - 1)
    for v in iter_bits(tm):
        assert fi[v] in interior and li[v] in interior, "path ends lie in K"

    def first_groups(v, w, i, j):
        return [(p[i - 1], p[i], v, w), (p[j - 1], p[j], w, v)]

    def last_groups(v, w, i, j):
        return [(v, w, p[j], p[j + 1]), (w, v, p[i], p[i + 1])]

    if h is PatternId.Q4:
        # no arcs from F_j to F_i (i < j): arcs climb, so index by -i
        classes = defaultdict(int)
        for v in iter_bits(tm):
            classes[-fi[v]] |= 1 << v

        def q4_groups(v, w, i, j):
            # v in F_{-i}, w in F_{-j}, -j < -i
            return [(p[-j - 1], p[-j], w, v)]

        return _chain_palette(g, h, {"F": dict(classes)}, recurse, q4_groups, "arc from F_j to F_i")

    if h is PatternId.P4_FORWARD:
        if ell <= 6:
            out = {}
            for i in interior:
                cls = 0
                for v in iter_bits(tm):
                    if fi[v] == i:
                        cls |= 1 << v
                for v, col in recurse(iter_bits(cls)).items():
                    out[v] = (("N", i), col)
            return out
        wset, rset = w_r_sets(g, p, partitions, h)
        if omega is not None and clique_number(g, rset, cap=omega) >= omega:
            _fail(g, h, [], "R^p contains a maximum tournament")
        wf, wl = defaultdict(int), defaultdict(int)
        rm = n2 = 0
        for v in iter_bits(tm):
            if v in wset:
                if v in partitions.first_minus[fi[v]]:
                    wf[fi[v]] |= 1 << v
                else:
                    assert v in partitions.last_plus[li[v]]
                    wl[li[v]] |= 1 << v
            elif v in rset:
                rm |= 1 << v
            else:
                assert g.adjacent(v, p[1])
                n2 |= 1 << v
        out = _chain_palette(g, h, {"WF": dict(wf)}, recurse, first_groups, "arc from F_i- to F_j")
        out.update(_chain_palette(g, h, {"WL": dict(wl)}, recurse, last_groups, "arc from L_i to L_j+"))
        for v, col in recurse(iter_bits(rm)).items():
            out[v] = ("R", col)
        for v, col in recurse(iter_bits(n2)).items():
            out[v] = ("N2", col)
        return out

    if h is PatternId.A4:
        wset, _ = w_r_sets(g, p, partitions, h)
        wf, wl = defaultdict(int), defaultdict(int)
        ra: dict[Hashable, dict[int, int]] = defaultdict(lambda: defaultdict(int))
        for v in iter_bits(tm):
            if v in wset:
                if v in partitions.first_plus[fi[v]]:
                    wf[fi[v]] |= 1 << v
                else:
                    assert v in partitions.last_minus[li[v]]
                    wl[li[v]] |= 1 << v
            else:
                ra[("R", fi[v] % 3)][fi[v]] |= 1 << v
        out = _chain_palette(g, h, {"WF": dict(wf)}, recurse, first_groups, "arc from F_i+ to F_j")
        out.update(_chain_palette(g, h, {"WL": dict(wl)}, recurse, last_groups, "arc from L_i to L_j-"))
        out.update(
            _chain_palette(
                g, h, {k: dict(v) for k, v in ra.items()}, recurse, lambda *a: [], "arc from F_i to F_j, j > i+2, in R^a"
            )
        )
        return out
    raise ValueError(h)


@dataclass(frozen=True)
class DipolarColoring:
    colors: dict[int, tuple]
    stages: dict[str, StageUse]


_PATH_SLOTS = {PatternId.Q4: 1, PatternId.P4_FORWARD: 4, PatternId.A4: 5}


def color_dipolar_set(
    g: OrientedGraph,
    ct: ClosedTournament,
    parts: DipolarParts,
    h: PatternId,
    recurse: Recurse,
    omega: int | None = None,
) -> DipolarColoring:
    """Colour ``S = N[C + X]`` stage by stage from disjoint palettes.

    Each vertex is coloured by the first stage containing it: ``N[K]`` (one
    palette per tournament vertex), then the path outside ``N[K]`` (two
    alternating colours), then ``N(P) - N[K]``, then ``Y``.
    """
    if omega is None:
        omega = len(ct.k)
    gamma = binding_function(h.case_constant, omega - 1)
    km = mask_of(ct.k)
    nk = neighborhood_mask(g, km, closed=True)
    colors: dict[int, tuple] = {}
    stage_of: dict[int, str] = {}

    def put(stage: str, assignment: dict[int, tuple]) -> None:
        for v, col in assignment.items():
            assert v not in colors, f"vertex {v} coloured twice"
            colors[v] = (stage, col)
            stage_of[v] = stage

    assigned = 0
    for idx, x in enumerate(sorted(ct.k)):
        cls = g.adj_mask(x) & nk & ~assigned
        assigned |= cls
        put("NK", {v: (idx, col) for v, col in recurse(iter_bits(cls)).items()})
    assert assigned == nk

    put("P", {v: ("alt", i % 2) for i, v in enumerate(ct.p) if not nk >> v & 1})

    if len(ct.p):
        partitions = attachment_partitions(g, ct.p)
        put("T", color_path_neighborhood(g, ct, partitions, h, recurse, omega))

    if parts.y:
        put("Y", color_qrs(g, parts.c, parts.x, parts.y, recurse, h))

    s = mask_of(parts.c | parts.x | parts.z | parts.y)
    assert mask_of(colors) == s, "stages must cover S exactly"

    slots = {"NK": omega * gamma, "P": 2, "T": _PATH_SLOTS[h] * gamma, "Y": 2 * gamma}
    stages = {}
    for stage, cap in slots.items():
        used = {col for v, col in colors.items() if stage_of[v] == stage}
        stages[stage] = StageUse(len(used), len({col[1][0] for col in used}), cap)
    return DipolarColoring(colors, stages)


@dataclass
class DicolorOptions:
    """``verify=None`` scans for the pattern up front only when ``n <= verify_limit``.

    ``on_peel`` is called as ``on_peel(graph, closed_tournament, dipolar_set, parts)``
    for every peel, including those inside recursive calls.
    """

    verify: bool | None = None
    verify_limit: int = 400
    tournament_cap: int | None = None
    on_peel: Callable[[OrientedGraph, ClosedTournament, DipolarSet, DipolarParts], None] | None = None


class _Engine:
    def __init__(self, h: PatternId, options: DicolorOptions):
        assert h is not PatternId.Q4_PRIME
        self.h = h
        self.c = h.case_constant
        self.options = options
        self.peels: list[PeelRecord] = []

    def color(self, g: OrientedGraph) -> list[int]:
        result = [0] * g.n
        stack = [g.full_mask] if g.n else []
        while stack:
            m = stack.pop()
            for comp in scc(g, m).components:
                if len(comp) == 1:
                    continue  # colour 0 is free inside a singleton component
                sub, labels = g.induced(comp)
                peeled = self._peel(sub)
                for v, col in peeled.items():
                    result[labels[v]] = col
                rest = mask_of(labels[v] for v in range(sub.n) if v not in peeled)
                if rest:
                    stack.append(rest)
        return compact(result)

    def _recurse_for(self, g: OrientedGraph, omega: int) -> Recurse:
        def recurse(vertices: Iterable[int]) -> dict[int, int]:
            vs = sorted(vertices)
            if not vs:
                return {}
            sub, labels = g.induced(vs)
            w = clique_number(sub)
            if w >= omega:
                raise AssertionError(f"recursive call on clique number {w} >= {omega}")
            cols = self.color(sub)
            assert max(cols) + 1 <= binding_function(self.c, w)
            return {labels[i]: col for i, col in enumerate(cols)}

        return recurse

    def _peel(self, g: OrientedGraph) -> dict[int, int]:
        omega = clique_number(g)
        gamma = binding_function(self.c, omega - 1)
        ct = path_minimizing_closed_tournament(g, self.options.tournament_cap)
        try:
            dip, parts = build_dipolar_set(g, ct, self.h)
        except NotDipolar as exc:
            if exc.witness is None:
                raise AssertionError(str(exc)) from exc
            raise NotHFree(exc.witness, "dipolar set construction failed") from exc
        if self.options.on_peel is not None:
            self.options.on_peel(g, ct, dip, parts)
        dc = color_dipolar_set(g, ct, parts, self.h, self._recurse_for(g, omega), omega)
        plus = sorted(dip.s_plus)
        minus = sorted(dip.s_minus)
        plus_cols = compact(dc.colors[v] for v in plus)
        minus_cols = compact(dc.colors[v] for v in minus)
        offset = max(plus_cols, default=-1) + 1
        combined = dict(zip(plus, plus_cols))
        combined.update((v, offset + col) for v, col in zip(minus, minus_cols))
        total = len(set(dc.colors.values()))
        self.peels.append(
            PeelRecord(
                omega=omega,
                gamma=gamma,
                n=g.n,
                ell=len(ct.p),
                s_size=len(plus) + len(minus),
                s_plus=len(plus),
                s_minus=len(minus),
                stages=dc.stages,
                total=total,
                total_budget=(omega + self.c) * gamma + 2,
                combined=offset + max(minus_cols, default=-1) + 1,
            )
        )
        return combined


def recursive_colorer(g: OrientedGraph, h: PatternId, omega: int | None = None) -> Recurse:
    """The ``gamma``-colouring subroutine used inside a peel of ``g`` at clique level ``omega``."""
    if h is PatternId.Q4_PRIME:
        raise ValueError("Q4_PRIME is handled by reversing the graph")
    return _Engine(h, DicolorOptions())._recurse_for(g, omega if omega is not None else clique_number(g))


def _finish(g: OrientedGraph, colors: list[int], h: PatternId, peels) -> Dicoloring:
    certificate = certify(g, colors)
    omega = clique_number(g)
    return Dicoloring(
        color_of=tuple(colors),
        colors_used=len(certificate),
        certificate=certificate,
        pattern=h,
        omega=omega,
        budget=budget(h, omega),
        peels=tuple(peels),
    )


def dicolor_forbidding(g: OrientedGraph, h: PatternId, options: DicolorOptions | None = None) -> Dicoloring:
    """Dicolour an ``h``-free oriented graph with at most ``f_c(omega)`` colours."""
    opts = options or DicolorOptions()
    if h is PatternId.Q4_PRIME:
        try:
            res = dicolor_forbidding(g.reverse(), PatternId.Q4, opts)
        except NotHFree as exc:
            raise NotHFree(_unreverse(g, exc.witness), exc.reason) from exc
        # class acyclicity survives arc reversal; orders are recomputed for g
        return replace(res, pattern=h, certificate=certify(g, res.color_of))
    verify = opts.verify if opts.verify is not None else g.n <= opts.verify_limit
    if verify:
        witness = find_pattern(g, h)
        if witness is not None:
            raise NotHFree(witness, "input is not pattern-free")
    engine = _Engine(h, opts)
    return _finish(g, engine.color(g), h, engine.peels)


def _unreverse(g: OrientedGraph, witness: PatternWitness | None) -> PatternWitness | None:
    if witness is None:
        return None
    quad = witness.vertices[::-1]
    assert is_induced_pattern(g, PatternId.Q4_PRIME, quad)
    return PatternWitness(PatternId.Q4_PRIME, quad)


def peel_and_combine(g: OrientedGraph, h: PatternId, options: DicolorOptions | None = None) -> Dicoloring:
    """Run the peeling loop on a strongly connected graph without the up-front scan."""
    if g.n == 0:
        return Dicoloring((), 0, (), h, 0, 0)
    if not is_strongly_connected(g) or g.n < 2:
        raise ValueError("peel_and_combine needs a strongly connected graph with an arc")
    return dicolor_forbidding(g, h, replace(options or DicolorOptions(), verify=False))
