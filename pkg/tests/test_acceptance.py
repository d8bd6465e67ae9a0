"""Acceptance criteria 1-8, one test each; the terminal summary lists PASS/FAIL per criterion."""
from __future__ import annotations

import math
import random
import time
from collections import Counter
from dataclasses import dataclass, field

import pytest

from helpers import corpus
from p4dicolor import PatternId
from p4dicolor.dicolor import DicolorOptions, Dicoloring, binding_function, certify, dicolor_forbidding
from p4dicolor.digraph import OrientedGraph, scc
from p4dicolor.generators import random_oriented
from p4dicolor.oracle import brute_force_closed_tournament, exact_dichromatic_number
from p4dicolor.patterns import clique_number
from p4dicolor.structure import (
    NotDipolar,
    attachment_arc_violations,
    attachment_partitions,
    path_minimizing_closed_tournament,
    ra_violations,
    rp_clique_number,
    rp_path_violations,
    shortcut_violations,
    verify_dipolar,
)

CORPUS_SIZE = 500
ORACLE_SIZE = 200
MINIMALITY_SIZE = 100
PATTERNS = list(PatternId)


def _closed_form(c: int, x: int) -> int:
    fact = math.factorial(x + c)
    return 2**x * fact + sum(2 ** (i + 2) * fact // math.factorial(x + c - i) for i in range(x + 1))


@dataclass
class Tally:
    peels: int = 0
    dipolar_failures: list = field(default_factory=list)
    violations: Counter = field(default_factory=Counter)
    checked: Counter = field(default_factory=Counter)

    def hook(self, case: PatternId):
        def on_peel(g, ct, dip, parts):
            self.peels += 1
            res = verify_dipolar(g, dip)
            if not res:
                self.dipolar_failures.append((g, res))
            if not len(ct.p):
                return
            omega = len(ct.k)
            pa = attachment_partitions(g, ct.p)
            checks = {"attachment arcs": len(attachment_arc_violations(g, pa, case)), "shortcut": len(shortcut_violations(g, ct.p))}
            if case is PatternId.A4:
                checks["R^a arcs"] = len(ra_violations(g, ct.p, pa))
            if case is PatternId.P4_FORWARD:
                checks["R^p paths"] = len(rp_path_violations(g, ct.p, pa))
                if len(ct.p) >= 7:
                    checks["R^p clique"] = int(rp_clique_number(g, ct.p, pa) >= omega)
            for name, bad in checks.items():
                self.checked[name] += 1
                self.violations[name] += bad

        return on_peel


@dataclass
class CorpusRun:
    graphs: dict[PatternId, list[OrientedGraph]]
    results: dict[PatternId, list[Dicoloring]]
    tally: Tally
    errors: list
    seconds: float


@pytest.fixture(scope="session")
def corpus_run() -> CorpusRun:
    start = time.perf_counter()
    tally = Tally()
    graphs, results, errors = {}, {}, []
    for idx, h in enumerate(PATTERNS):
        case = PatternId.Q4 if h is PatternId.Q4_PRIME else h
        graphs[h] = corpus(h, CORPUS_SIZE, seed=1000 + idx)
        opts = DicolorOptions(verify=True, on_peel=tally.hook(case))
        results[h] = []
        for g in graphs[h]:
            try:
                results[h].append(dicolor_forbidding(g, h, opts))
            except (NotDipolar, RuntimeError, AssertionError) as exc:
                errors.append((h, g, exc))
                results[h].append(None)
    return CorpusRun(graphs, results, tally, errors, time.perf_counter() - start)


def _detail(request, text: str) -> None:
    request.node.user_properties.append(("detail", text))


@pytest.mark.criterion(1, "binding-function identities")
def test_binding_function_identities(request):
    start = time.perf_counter()
    bad = []
    for c in (3, 6, 7):
        assert binding_function(c, 1) > 1
        for x in range(1, 11):
            f = binding_function(c, x)
            if f != _closed_form(c, x) or f != 2 * (x + c) * binding_function(c, x - 1) + 4:
                bad.append((c, x, "recurrence"))
            if math.log(f) > (x + c + 1.5) * math.log(x + c) + 1e-9:
                bad.append((c, x, "log bound"))
    elapsed = time.perf_counter() - start
    _detail(request, f"30 values, {elapsed * 1000:.1f} ms")
    assert not bad
    assert elapsed < 1.0


@pytest.mark.criterion(2, "colour budget f_c(omega)")
def test_colour_budget(request, corpus_run):
    worst = {}
    over = []
    for h in PATTERNS:
        c = h.case_constant
        for g, res in zip(corpus_run.graphs[h], corpus_run.results[h]):
            if res is None:
                over.append((h, g, "no colouring"))
                continue
            certify(g, res.color_of)
            omega = clique_number(g)
            bound = binding_function(c, omega)
            if not res.colors_used <= bound or bound > (omega + c) ** (omega + c + 1.5):
                over.append((h, g, res.colors_used))
            worst[h] = max(worst.get(h, 0), res.colors_used / bound)
        assert len(corpus_run.graphs[h]) >= CORPUS_SIZE
        assert max(g.n for g in corpus_run.graphs[h]) <= 60
        assert max(clique_number(g) for g in corpus_run.graphs[h]) <= 5
    ratio = ", ".join(f"{h.cli_name} max used/f={worst[h]:.3g}" for h in worst)
    _detail(request, f"{sum(map(len, corpus_run.graphs.values()))} runs in {corpus_run.seconds:.0f}s; {ratio}")
    assert not over, over[:3]


@pytest.mark.criterion(3, "oracle dominance")
def test_oracle_dominance(request):
    count = 0
    gap = Counter()
    per = ORACLE_SIZE // len(PATTERNS)
    for idx, h in enumerate(PATTERNS):
        for g in corpus(h, per, seed=2000 + idx, max_n=12):
            report = exact_dichromatic_number(g)
            certify(g, report.witness.color_of)
            assert report.witness.colors_used == report.exact_value
            res = dicolor_forbidding(g, h, DicolorOptions(verify=True))
            assert report.exact_value <= res.colors_used
            gap[res.colors_used - report.exact_value] += 1
            count += 1
    _detail(request, f"{count} instances, excess colours histogram {dict(sorted(gap.items()))}")
    assert count >= ORACLE_SIZE


@pytest.mark.criterion(4, "dipolar correctness")
def test_dipolar_correctness(request, corpus_run):
    not_dipolar = [e for e in corpus_run.errors if isinstance(e[2].__cause__, NotDipolar) or isinstance(e[2], NotDipolar)]
    _detail(request, f"{corpus_run.tally.peels} peels verified")
    assert corpus_run.tally.peels > 0
    assert not not_dipolar
    assert not corpus_run.tally.dipolar_failures


@pytest.mark.criterion(5, "structural observations")
def test_structural_observations(request, corpus_run):
    t = corpus_run.tally
    _detail(request, ", ".join(f"{k}: {t.violations[k]}/{t.checked[k]}" for k in sorted(t.checked)))
    assert t.checked["R^p clique"] > 0, "no path on 7 or more vertices in the corpus"
    assert t.checked["R^a arcs"] > 0 and t.checked["R^p paths"] > 0
    assert not any(t.violations.values()), t.violations


def _strong_instances(count: int, max_n: int, seed: int) -> list[OrientedGraph]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_oriented(rng.randint(3, max_n), rng.uniform(0.25, 0.8), rng.randrange(2**31))
        if len(scc(g).components) == 1:
            out.append(g)
    return out


@pytest.mark.criterion(6, "closed-tournament minimality")
def test_closed_tournament_minimality(request):
    lengths = Counter()
    for g in _strong_instances(MINIMALITY_SIZE, 9, seed=6):
        ct = path_minimizing_closed_tournament(g)
        ref = brute_force_closed_tournament(g)
        assert len(ct.p) == len(ref.p)
        assert ct == ref
        lengths[len(ct.p)] += 1
    _detail(request, f"{MINIMALITY_SIZE} instances, |P| histogram {dict(sorted(lengths.items()))}")


@pytest.mark.criterion(7, "per-stage budgets")
def test_per_stage_budgets(request, corpus_run):
    peels = nonempty_y = 0
    over = []
    for h in PATTERNS:
        c = h.case_constant
        for res in corpus_run.results[h]:
            for rec in res.peels if res else ():
                peels += 1
                nonempty_y += rec.stages["Y"].colors > 0
                gamma = rec.gamma
                limits = {"P": 2, "NK": rec.omega * gamma, "Y": 2 * gamma}
                for stage, limit in limits.items():
                    if rec.stages[stage].colors > limit:
                        over.append((h, rec, stage))
                for stage, use in rec.stages.items():
                    if use.colors > use.budget:
                        over.append((h, rec, stage))
                # S+ and S- take disjoint palettes, so the peel may double the count of S
                if rec.total > (rec.omega + c) * gamma + 2 or rec.combined > 2 * rec.total:
                    over.append((h, rec, "total"))
    _detail(request, f"{peels} peels, {nonempty_y} with second neighbours")
    assert peels > 0 and nonempty_y > 0
    assert not over, over[:3]


@pytest.mark.criterion(8, "Q4 and Q4' duality")
def test_duality(request, corpus_run):
    compared = 0
    for h, other in ((PatternId.Q4_PRIME, PatternId.Q4), (PatternId.Q4, PatternId.Q4_PRIME)):
        for g, res in zip(corpus_run.graphs[h], corpus_run.results[h]):
            dual = dicolor_forbidding(g.reverse(), other)
            assert res is not None and res.color_of == dual.color_of
            compared += 1
    _detail(request, f"{compared} graphs compared vertexwise")
