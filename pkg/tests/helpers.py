"""Shared generators for the test suite."""
from __future__ import annotations

import random
from collections import defaultdict

from conjprod import formulas as F
from conjprod import lifting as L
from conjprod.base_solutions import solve_x7
from conjprod.corpus import random_classes, random_stage_chain
from conjprod.reductions import PreconditionError, run_forward, theta1

_SWAP = (1, 0, 2)


def relabel_step(step: F.Step, f: dict) -> F.Step:
    m = lambda cycles: [[f[x] for x in c] for c in cycles]
    before = [[m(g) for g in s] for s in step.before]
    after = [[m(g) for g in s] for s in step.after]
    checks = [(i, [x if isinstance(x, int) else m(x) for x in fs]) for i, fs in step.checks]
    extra = [m(s) for s in step.extra]
    return F.Step(step.name, before, after, checks, extra, dict(step.values))


def relabel_betas(betas, f):
    return [[[f[x] for x in c] for c in s] for s in betas]


def random_relabelling(rng: random.Random, degree: int) -> dict:
    img = list(range(1, degree + 1))
    rng.shuffle(img)
    return dict(zip(range(1, degree + 1), img))


class _Spy:
    """Record every checked step together with its untouched cycles."""

    def __init__(self):
        self.last = None
        self.items = []

    def __enter__(self):
        self._verify, self._add = F.verify_step, L.Trace.add
        spy = self

        def verify(step, betas=None, degree=None, product=True):
            spy._verify(step, betas, degree, product)
            spy.last = (step, [[list(c) for c in s] for s in (betas or [[], [], []])], degree)

        def add(trace, lift, step, where=None, note=None):
            spy._add(trace, lift, step, where, note)
            if spy.last is not None and spy.last[0] is step:
                spy.items.append((spy.last, trace.records[-1]))
            spy.last = None

        F.verify_step = verify
        L.Trace.add = add
        return self

    def __exit__(self, *exc):
        F.verify_step, L.Trace.add = self._verify, self._add
        return False


def _lift_chain(xs, trace):
    sol, rep = solve_x7(xs[-1].payload)
    for k in (7, 6, 5, 4):
        sol, rep = L.LIFTS[k](sol, rep, trace, target=xs[k - 4].payload)
    return L.lift_3_to_2(sol, None, trace)


def _lift_classes(xs, trace):
    sol, rep = solve_x7(xs[6].payload)
    for k in (7, 6, 5, 4):
        sol, rep = L.LIFTS[k](sol, rep, trace, target=xs[k - 2].payload)
    s2 = L.lift_3_to_2(sol, xs[1].payload, trace)
    return L.lift_2_to_1(s2, xs[1].meta, xs[0].payload, trace)


def harvest_contexts(seed: int = 0, want: int = 4, max_runs: int = 300) -> dict:
    """Formula name -> list of (step, betas, degree) met while lifting random inputs.

    Ledge steps applied to reversed strings are mapped back to the original
    orientation and filed under ``<name>_reversed``.
    """
    rng = random.Random(seed)
    pool = defaultdict(list)
    with _Spy() as spy:
        for run in range(max_runs):
            trace = L.Trace()
            try:
                if run % 2 == 0:
                    _lift_chain(random_stage_chain(rng), trace)
                else:
                    n = rng.randint(80, 300)
                    _lift_classes(run_forward(theta1(*random_classes(rng, n))), trace)
            except (PreconditionError, L.LiftError, RuntimeError):
                pass
            for (step, betas, degree), rec in spy.items:
                if rec.get("note"):
                    step = F.mirror_step(step)
                    betas = [[c[::-1] for c in betas[_SWAP[i]]] for i in range(3)]
                if len(pool[step.name]) < want:
                    pool[step.name].append((step, betas, degree))
            spy.items = []
            if run > 40 and all(len(pool[k]) >= want for k in FORMULA_NAMES):
                break
    return dict(pool)


FORMULA_NAMES = (
    ["parity_pair", "trap_pair", "chain8"]
    + ["shutter_single_%d" % j for j in (1, 2, 3)]
    + ["shutter_pair_%d" % j for j in (1, 2, 3)]
    + ["ledge_%d" % i for i in (1, 2, 3)]
    + ["ledge_%d_reversed" % i for i in (1, 2, 3)]
    + ["nest_odd_%d" % i for i in (1, 2, 3)]
    + ["nest_even_%d" % i for i in (1, 2, 3)]
    + ["short_even_%d" % j for j in (1, 2, 3)]
)


def stage1_solutions(seed: int, count: int) -> list:
    """Stage-1 solutions (before the half switch) for random class triples."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(80, 200)
        try:
            out.append((_lift_classes(run_forward(theta1(*random_classes(rng, n))), None)))
        except (PreconditionError, L.LiftError):
            continue
    return out
