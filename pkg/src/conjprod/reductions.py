"""Forward reductions between stage instances and the inverses of the string stages.

Stages 1 and 2 carry class triples; stages 3..7 carry string triples.
Every forward map records what it did in ``StageInstance.meta`` so that
lifting can follow it back, but the inverses below only read labels.
"""
from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass, field

from .class_model import (PARITY, TRAP, ClassString, Ledge, Nest, Shutter, StringTriple,
                          check_stage, full_restrictions, mu_class, restriction_nu)
from .perm_core import CycleType, class_splits, is_large_class, nu, parity

SHORT = 31


class PreconditionError(ValueError):
    """A named precondition of a reduction step failed."""

    def __init__(self, name: str, detail: str = ""):
        super().__init__("%s: %s" % (name, detail) if detail else name)
        self.name = name
        self.detail = detail


@dataclass(frozen=True)
class ReductionConfig:
    strict_mode: bool = False
    delta: float = 0.05
    min_n: int = 1
    check_batteries: bool = True

    def __post_init__(self):
        if not 0 < self.delta < 0.5:
            raise ValueError("delta must lie in (0, 1/2)")
        if self.min_n < 1:
            raise ValueError("min_n must be positive")


RELAXED = ReductionConfig()
STRICT = ReductionConfig(strict_mode=True)


@dataclass
class StageInstance:
    stage: int
    payload: object
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        if self.stage == 1:
            return self.payload[0].n
        if self.stage == 2:
            return self.payload.classes[0].n
        return self.payload.n


@dataclass(frozen=True)
class X2:
    classes: tuple
    ts: tuple


def _assert_nu_odd(classes, where):
    v = nu(*classes)
    if v % 2 == 0:
        raise AssertionError("nu became even after %s" % where)


def _battery(t, stage, config):
    if not config.check_batteries:
        return
    bad = [r for r in check_stage(t, stage) if not r.ok]
    if bad:
        raise AssertionError("stage %d battery failed: %s" % (stage, [r.to_json() for r in bad]))


# ---------------------------------------------------------------- stage 1

def theta1(c1: CycleType, c2: CycleType, c3: CycleType, halves=None,
           config: ReductionConfig = RELAXED) -> StageInstance:
    """Alternating-group classes viewed as symmetric-group classes."""
    classes = (c1, c2, c3)
    if len({c.n for c in classes}) != 1:
        raise PreconditionError("theta1.degree", "classes of different degree")
    for c in classes:
        if parity(c) != "even":
            raise PreconditionError("theta1.even", "class %s is not inside Alt(n)" % c)
    n = c1.n
    if n < config.min_n:
        raise PreconditionError("theta1.min_n", "n=%d below %d" % (n, config.min_n))
    if config.strict_mode:
        for c in classes:
            if not is_large_class(c, config.delta, "alt"):
                raise PreconditionError("theta1.class_size", "class %s is too small" % c)
    halves = tuple(halves) if halves else ("plus", "plus", "plus")
    split = tuple(class_splits(c) for c in classes)
    return StageInstance(1, classes, {"g": (1, 2), "halves": halves, "split": split})


def sym_instance(c1, c2, c3) -> StageInstance:
    """A stage-1 instance straight from symmetric-group classes with nu odd."""
    classes = (c1, c2, c3)
    if len({c.n for c in classes}) != 1:
        raise PreconditionError("stage1.degree", "classes of different degree")
    if nu(*classes) % 2 == 0:
        raise PreconditionError("stage1.nu_odd", "nu is even, no solution exists")
    return StageInstance(1, classes, {})


# ---------------------------------------------------------------- stage 2

def _short_even(c: CycleType, k=SHORT):
    return sorted((length for length in c.lengths() if length <= k and length % 2 == 0),
                  reverse=True)


def theta2(x: StageInstance, config: ReductionConfig = RELAXED) -> StageInstance:
    """Remove 8 points plus one short even cycle per class with an odd count of them."""
    classes = x.payload
    n = classes[0].n
    J = [i for i, c in enumerate(classes) if len(_short_even(c)) % 2 == 1]
    r = [(_short_even(c)[0] if i in J else 0) for i, c in enumerate(classes)]
    R = 8 + sum(r[j] + 1 for j in J)
    new, ts, tops = [], [], []
    for i, c in enumerate(classes):
        lengths = c.lengths()
        t = lengths[0]
        if config.strict_mode and t < 1000:
            raise PreconditionError("theta2.long_cycle", "class %d has no cycle of length >= 1000" % (i + 1))
        t2 = t + r[i] - R
        if t2 <= SHORT:
            raise PreconditionError("theta2.long_cycle",
                                    "class %d: top cycle %d shrinks to %d <= %d" % (i + 1, t, t2, SHORT))
        rest = list(lengths[1:])
        if r[i]:
            rest.remove(r[i])
        nc = CycleType.from_lengths([t2] + rest)
        new.append(nc)
        ts.append(t2)
        tops.append(t)
    if any(c.n != n - R for c in new):
        raise AssertionError("degree bookkeeping")
    _assert_nu_odd(new, "theta2")
    meta = {"J": [j + 1 for j in J], "r": r, "R": R, "t": tops, "t_new": ts}
    return StageInstance(2, X2(tuple(new), tuple(ts)), meta)


# ---------------------------------------------------------------- stage 3

def _order_cycles(c: CycleType, t: int):
    lengths = c.lengths()
    lengths.remove(t)
    long_ = [t] + [x for x in lengths if x > SHORT]
    short = [x for x in lengths if x <= SHORT]
    return long_, short


def choose_T(short: list) -> tuple:
    """First nonempty sub-multiset, lengths listed non-increasingly, in lexicographic order,
    with an even number of even lengths and total at most 60."""
    s = sorted(short, reverse=True)
    best = None
    seen = set()
    for k in range(1, len(s) + 1):
        for comb in itertools.combinations(s, k):
            if comb in seen:
                continue
            seen.add(comb)
            if sum(comb) > 60 or sum(1 for v in comb if v % 2 == 0) % 2:
                continue
            if best is None or comb < best:
                best = comb
    return best


def _window_free(breaks, lo, hi):
    """No break in [lo, hi]."""
    k = bisect.bisect_left(breaks, lo)
    return k == len(breaks) or breaks[k] > hi


def _cycle_len_at(breaks, a):
    k = bisect.bisect_right(breaks, a)
    return breaks[k] - breaks[k - 1]


def theta3(x: StageInstance, config: ReductionConfig = RELAXED) -> StageInstance:
    """Drain short cycles into nest labels, shortening the other two strings."""
    classes, ts = x.payload.classes, x.payload.ts
    n0 = classes[0].n
    strings, shorts, orders = [], [], []
    for c, t in zip(classes, ts):
        long_, short = _order_cycles(c, t)
        b = [0]
        for v in long_:
            b.append(b[-1] + v)
        strings.append(b)
        shorts.append(sorted(short, reverse=True))
        orders.append(long_)
    labels = {}
    steps = []
    r = 0
    last_i = None
    for i in range(3):
        while shorts[i]:
            T = choose_T(shorts[i])
            if T is None:
                raise PreconditionError("theta3.subset", "no admissible short-cycle subset")
            tsum = sum(T)
            a = _find_window(strings, i, tsum, r, strict=config.strict_mode, n0=n0,
                             same=(last_i == i))
            if a is None:
                raise PreconditionError("theta3.window",
                                        "no free window for string %d, subset %s" % (i + 1, T))
            for k in range(3):
                if k == i:
                    continue
                strings[k] = [h if h <= a else h - tsum for h in strings[k]]
            prev = labels.get(a)
            seq = (prev.seq if prev is not None else ()) + tuple(T)
            labels[a] = Nest(i + 1, seq)
            for v in T:
                shorts[i].remove(v)
            steps.append({"string": i + 1, "pos": a, "T": list(T)})
            r = a
            last_i = i
    if len({s[-1] for s in strings}) != 1:
        raise AssertionError("strings of unequal length after draining")
    n3 = strings[0][-1]
    if config.strict_mode and n3 < 0.97 * n0:
        raise PreconditionError("theta3.mass", "too much short-cycle mass")
    t3 = StringTriple(tuple(ClassString(n3, tuple(s)) for s in strings), labels)
    _battery(t3, 3, config)
    return StageInstance(3, t3, {"orders": orders, "steps": steps})


def _find_window(strings, i, tsum, r, strict, n0, same):
    lo_a = r if same else r + 1
    hi_a = min(s[-1] for s in strings)
    if strict:
        lo_a = max(lo_a, int(-(-(i + 1) * n0 // 10)) + 10)  # string index is i+1
        hi_a = min(hi_a, (i + 2) * n0 // 10 - 70)
    for a in range(max(lo_a, 1), hi_a + 1):
        ok = True
        for k, b in enumerate(strings):
            if strict:
                span = (a - 10, a + 70)
            elif k == i:
                span = (a - 10, a + 10)
            else:
                span = (a - 10, a + tsum + 10)
            if span[0] < 1 or not _window_free(b, span[0], span[1]):
                ok = False
                break
            if k != i and _cycle_len_at(b, a) < tsum + SHORT + 1:
                ok = False
                break
        if ok:
            return a
    return None


def untheta3(y: StageInstance) -> StageInstance:
    t = y.payload
    strings = [list(p.breaks) for p in t.phis]
    shorts = [[], [], []]
    for a, lab in sorted(t.labels, key=lambda z: -z[0]):
        if not isinstance(lab, Nest):
            raise PreconditionError("untheta3.label", "unexpected label %s" % lab.token())
        i = lab.i - 1
        tsum = sum(lab.seq)
        for k in range(3):
            if k != i:
                strings[k] = [h if h <= a else h + tsum for h in strings[k]]
        shorts[i].extend(lab.seq)
    classes, ts = [], []
    for b, s in zip(strings, shorts):
        lengths = [y2 - y1 for y1, y2 in zip(b, b[1:])]
        classes.append(CycleType.from_lengths(lengths + s))
        ts.append(lengths[0])
    if len({c.n for c in classes}) != 1:
        raise PreconditionError("untheta3.shape", "inverse produced unequal degrees")
    return StageInstance(2, X2(tuple(classes), tuple(ts)))


# ---------------------------------------------------------------- stage 4

def find_ledges(t: StringTriple) -> list:
    """(a, i3, eps) for every ledge: two strings break at a, the third at a+eps."""
    out = []
    for a in t.columns(2):
        present = t.breaks_at(a)
        i3 = ({1, 2, 3} - set(present)).pop()
        for eps in (1, -1):
            if t.phis[i3 - 1].is_break(a + eps):
                out.append((a, i3, eps))
                break
    return out


def theta4(x: StageInstance, config: ReductionConfig = RELAXED) -> StageInstance:
    """Collapse each ledge into one full-break column carrying a ledge label."""
    t = x.payload
    breaks = [list(p.breaks) for p in t.phis]
    labels = t.label_map()
    ledges = find_ledges(t)
    for a, i3, eps in sorted(ledges, reverse=True):
        for h in (a - 1, a, a + 1):
            if h in labels:
                raise PreconditionError("theta4.labels", "label next to the ledge at %d" % a)
        for k in range(3):
            nb = []
            for h in breaks[k]:
                if h <= a - 2:
                    nb.append(h)
                elif h >= a + 2:
                    nb.append(h - 2)
            nb.append(a - 1)
            breaks[k] = sorted(set(nb))
        labels = {(h if h <= a - 2 else h - 2): l for h, l in labels.items()}
        labels[a - 1] = Ledge(i3, eps)
    n4 = t.n - 2 * len(ledges)
    t4 = StringTriple(tuple(ClassString(n4, tuple(b)) for b in breaks), labels)
    _battery(t4, 4, config)
    return StageInstance(4, t4, {"ledges": [list(z) for z in ledges]})


def untheta4(y: StageInstance) -> StageInstance:
    t = y.payload
    breaks = [list(p.breaks) for p in t.phis]
    labels = t.label_map()
    for p, lab in sorted(t.labels, key=lambda z: -z[0]):
        if not isinstance(lab, Ledge):
            continue
        a = p + 1  # the old ledge column
        i3 = lab.i - 1
        for k in range(3):
            nb = [h for h in breaks[k] if h < p] + [h + 2 for h in breaks[k] if h > p]
            nb.append(a + lab.eps if k == i3 else a)
            breaks[k] = sorted(nb)
        del labels[p]
        labels = {(h if h < p else h + 2): l for h, l in labels.items()}
    n3 = t.n + 2 * sum(1 for _, l in t.labels if isinstance(l, Ledge))
    return StageInstance(3, StringTriple(tuple(ClassString(n3, tuple(b)) for b in breaks), labels))


# ---------------------------------------------------------------- stage 5

def theta5(x: StageInstance, config: ReductionConfig = RELAXED) -> StageInstance:
    """Next to each two-break column put a pair of full-break columns labelled as traps."""
    t = x.payload
    n = t.n
    breaks = [set(p.breaks) for p in t.phis]
    labels = t.label_map()
    sides = []
    for a in t.columns(2):
        eps = None
        for e in (1, -1):
            if all(0 <= a + e * r <= n and t.cb(a + e * r) == 0 for r in range(1, 9)):
                eps = e
                break
        if eps is None:
            raise PreconditionError("theta5.side", "no clear side next to column %d" % a)
        for h in (a + 5 * eps, a + 6 * eps):
            if h in labels:
                raise PreconditionError("theta5.labels", "label in the way at %d" % h)
            for b in breaks:
                b.add(h)
            labels[h] = TRAP
        sides.append([a, eps])
    t5 = StringTriple(tuple(ClassString(n, tuple(b)) for b in breaks), labels)
    _battery(t5, 5, config)
    return StageInstance(5, t5, {"sides": sides})


def untheta5(y: StageInstance) -> StageInstance:
    t = y.payload
    traps = {h for h, l in t.labels if l.kind == "T"}
    breaks = [tuple(h for h in p.breaks if h not in traps) for p in t.phis]
    labels = {h: l for h, l in t.labels if h not in traps}
    return StageInstance(4, StringTriple(tuple(ClassString(t.n, b) for b in breaks), labels))


# ---------------------------------------------------------------- stage 6

# (required column counts, offsets of the converted columns, index of the first 1)
# None in the requirement stands for "0 or 2"
SHUTTER_PATTERNS = (
    ((None, 0, 1, 0, None), (2,)),
    ((0, 0, 1, 1, 0, 0), (2, 3)),
    ((0, 0, 1, 0, 1, 0, 0, 0), (2, 3, 4, 5)),
    ((0, 0, 0, 1, 0, 1, 0, 0), (2, 3, 4, 5)),
    ((0, 0, 0, 1, 1, 1, 0, 0, 0), (3, 4, 5)),
    ((0, 0, 0, 1, 1, 0, 1, 0, 0, 0), (3, 4, 5, 6, 7)),
    ((0, 0, 0, 1, 0, 1, 1, 0, 0, 0), (2, 3, 4, 5, 6)),
    ((0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0), (3, 4, 5, 6, 7)),
)


def _match_pattern(t, a):
    """First pattern whose first 1 sits at a and whose other entries match."""
    n = t.n
    for idx, (req, under) in enumerate(SHUTTER_PATTERNS):
        first = req.index(1)
        start = a - first
        ok = True
        for k, want in enumerate(req):
            h = start + k
            got = t.cb(h) if 0 <= h <= n else None
            if got is None:
                ok = False
                break
            if want is None:
                if got not in (0, 2):
                    ok = False
                    break
            elif got != want:
                ok = False
                break
        if ok:
            return idx + 1, start, under, len(req)
    return None


def theta6(x: StageInstance, config: ReductionConfig = RELAXED) -> StageInstance:
    """Turn every one-break column into a full-break column with shutter labels."""
    t = x.payload
    n = t.n
    breaks = [set(p.breaks) for p in t.phis]
    labels = t.label_map()
    ones = t.columns(1)
    done = set()
    groups = []
    for a in ones:
        if a in done:
            continue
        m = _match_pattern(t, a)
        if m is None:
            raise PreconditionError("theta6.pattern", "column %d matches no pattern" % a)
        case, start, under, length = m
        for k in range(length):
            if t.cb(start + k) == 1:
                done.add(start + k)
        for k in under:
            h = start + k
            if h in labels:
                raise PreconditionError("theta6.labels", "label in the way at %d" % h)
            owners = t.breaks_at(h)
            labels[h] = Shutter(owners[0] if owners else 0)
            for b in breaks:
                b.add(h)
        groups.append({"case": case, "start": start})
    t6 = StringTriple(tuple(ClassString(n, tuple(b)) for b in breaks), labels)
    if t6.nu() % 2 == 0:
        raise AssertionError("nu became even after theta6")
    _battery(t6, 6, config)
    return StageInstance(6, t6, {"groups": groups})


def untheta6(y: StageInstance) -> StageInstance:
    t = y.payload
    breaks = [set(p.breaks) for p in t.phis]
    labels = t.label_map()
    for h, lab in t.labels:
        if not isinstance(lab, Shutter):
            continue
        for k, b in enumerate(breaks):
            if k + 1 != lab.v:
                b.discard(h)
        del labels[h]
    return StageInstance(5, StringTriple(tuple(ClassString(t.n, tuple(b)) for b in breaks), labels))


# ---------------------------------------------------------------- stage 7

def parity_column(t: StringTriple, a1: int, a2: int) -> tuple:
    """Where an even restriction gets its extra full break, and on which side."""
    inner = [b for b in range(a1 + 1, a2) if t.cb(b) == 2]
    if not inner or a2 - inner[0] >= inner[0] - a1:
        return a2 - 1, -1
    return a1 + 1, 1


def theta7(x: StageInstance, config: ReductionConfig = RELAXED) -> StageInstance:
    """Split every restriction with nu even by one extra full-break column."""
    t = x.payload
    breaks = [set(p.breaks) for p in t.phis]
    labels = t.label_map()
    cols = []
    for a1, a2 in full_restrictions(t):
        if restriction_nu(t, a1, a2) % 2 == 0:
            b, side = parity_column(t, a1, a2)
            if b in labels or t.cb(b):
                raise PreconditionError("theta7.column", "column %d is occupied" % b)
            for s in breaks:
                s.add(b)
            labels[b] = PARITY
            cols.append([b, side])
    t7 = StringTriple(tuple(ClassString(t.n, tuple(b)) for b in breaks), labels)
    _battery(t7, 7, config)
    return StageInstance(7, t7, {"parity_columns": cols})


def untheta7(y: StageInstance) -> StageInstance:
    t = y.payload
    spades = {h for h, l in t.labels if l.kind == "P"}
    breaks = [tuple(h for h in p.breaks if h not in spades) for p in t.phis]
    labels = {h: l for h, l in t.labels if h not in spades}
    return StageInstance(6, StringTriple(tuple(ClassString(t.n, b) for b in breaks), labels))


THETA = {2: theta2, 3: theta3, 4: theta4, 5: theta5, 6: theta6, 7: theta7}
UNTHETA = {3: untheta3, 4: untheta4, 5: untheta5, 6: untheta6, 7: untheta7}


def run_forward(x1: StageInstance, config: ReductionConfig = RELAXED, upto: int = 7) -> list:
    """Stage instances 1..upto; raises PreconditionError naming the failing guard."""
    out = [x1]
    cur = x1
    for k in range(2, upto + 1):
        cur = THETA[k](cur, config)
        if k >= 3 and cur.payload.nu() % 2 == 0:
            raise AssertionError("nu even after stage %d" % k)
        out.append(cur)
    return out


def stage_classes(x: StageInstance) -> tuple:
    if x.stage <= 1:
        return tuple(x.payload)
    if x.stage == 2:
        return tuple(x.payload.classes)
    return tuple(mu_class(p) for p in x.payload.phis)
