"""Random inputs for tests and benchmarks.

``random_classes`` draws class triples with few cycles, ``random_x3`` draws
stage-3 string triples with ledges, lone breaks and nests planted between long
cycles, so that every later reduction has something to do.
"""
from __future__ import annotations

import random

from .class_model import ClassString, Nest, StringTriple, stage_ok
from .perm_core import CycleType, parity
from .reductions import RELAXED, THETA, PreconditionError, ReductionConfig

_SMALL = (1, 1, 2, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 15, 16)


def random_class(rng: random.Random, n: int, max_cycles: int, even: bool | None = True,
                 min_top: int | None = None) -> CycleType:
    """One long cycle plus up to max_cycles-1 short ones.

    The long cycle has at least min_top points (default min(60, n // 2)).
    """
    if min_top is None:
        min_top = min(60, n // 2)
    for _ in range(1000):
        k = rng.randint(0, max(0, max_cycles - 1))
        rest = [rng.choice(_SMALL) for _ in range(k)]
        top = n - sum(rest)
        if top < min_top:
            continue
        ct = CycleType.from_lengths([top] + rest)
        if even is None or (parity(ct) == "even") == even:
            return ct
    raise RuntimeError("could not draw a class of degree %d" % n)


def random_classes(rng: random.Random, n: int, delta: float = 0.05, group: str = "alt"):
    """Three classes with at most delta*n cycles each; nu is odd for group 'sym'."""
    cap = max(1, int(delta * n))
    if group == "alt":
        return tuple(random_class(rng, n, cap, True) for _ in range(3))
    while True:
        evens = [rng.random() < 0.5 for _ in range(3)]
        if sum(evens) % 2 == 1:
            return tuple(random_class(rng, n, cap, e) for e in evens)


def class_corpus(seed: int = 0, size: int = 50, n_range=(60, 300), delta: float = 0.05):
    """Deterministic list of (c1, c2, c3) alternating-group class triples."""
    rng = random.Random(seed)
    return [random_classes(rng, rng.randint(*n_range), delta) for _ in range(size)]


# ---------------------------------------------------------------- stage 3

def _nest_seq(rng):
    seq = []
    for _ in range(rng.randint(1, 2)):
        if rng.random() < 0.5:
            seq.append(rng.choice((1, 3, 5, 7, 9, 11, 13)))
        else:
            seq += [rng.choice((2, 4, 6, 8)), rng.choice((2, 4, 6, 8, 10))]
    return tuple(seq)


_EVENTS = ("full", "full", "two", "one", "ledge", "ledge", "one_one", "one_gap_one",
           "one_one_one", "nest", "nest")


def _draw_x3(rng, n):
    breaks = [{0, n} for _ in range(3)]
    labels = {}
    a = rng.randint(40, 60)
    while a < n - 60:
        ev = rng.choice(_EVENTS)
        ks = [0, 1, 2]
        rng.shuffle(ks)
        if ev == "full":
            for b in breaks:
                b.add(a)
        elif ev == "two":
            breaks[ks[0]].add(a)
            breaks[ks[1]].add(a)
        elif ev == "one":
            breaks[ks[0]].add(a)
        elif ev == "ledge":
            eps = rng.choice((1, -1))
            breaks[ks[0]].add(a)
            breaks[ks[1]].add(a)
            breaks[ks[2]].add(a + eps)
        elif ev == "one_one":
            breaks[ks[0]].add(a)
            breaks[ks[1]].add(a + 1)
        elif ev == "one_gap_one":
            breaks[ks[0]].add(a)
            breaks[ks[1]].add(a + 2)
        elif ev == "one_one_one":
            for k in range(3):
                breaks[ks[k]].add(a + k)
        else:
            labels[a] = Nest(ks[0] + 1, _nest_seq(rng))
        a += rng.randint(40, 70)
    phis = tuple(ClassString(n, tuple(sorted(b))) for b in breaks)
    return StringTriple(phis, labels)


def random_x3(rng: random.Random, n_range=(200, 600), tries: int = 500) -> StringTriple:
    """A stage-3 triple with nu odd that passes the stage-3 battery."""
    for _ in range(tries):
        t = _draw_x3(rng, rng.randint(*n_range))
        if t.nu() % 2 == 1 and stage_ok(t, 3):
            return t
    raise RuntimeError("no valid stage-3 triple drawn")


def forward_from_x3(t3: StringTriple, config: ReductionConfig = RELAXED) -> list:
    """Stage instances 3..7 starting from a stage-3 triple."""
    from .reductions import StageInstance
    out = [StageInstance(3, t3)]
    for k in range(4, 8):
        out.append(THETA[k](out[-1], config))
    return out


def random_stage_chain(rng: random.Random, tries: int = 50, config: ReductionConfig = RELAXED):
    """Stage instances 3..7 from a random stage-3 triple that survives every reduction."""
    last = None
    for _ in range(tries):
        try:
            return forward_from_x3(random_x3(rng), config)
        except PreconditionError as e:
            last = e
    raise RuntimeError("no stage chain survived: %s" % last)
