"""Lift a solution from stage k back to stage k-1.

The working state keeps each string as an ordered list of cycles.  A lift
picks witness values, rotates the touched cycles so the witnesses sit where a
rewrite from ``formulas`` expects them, applies the rewrite and checks its
identities by composing permutations.  Each stage ends by comparing the new
string triple with the inverse reduction of the old one.

Witness choice follows the alignment report of the input: a triple first uses
values the report reserved for it (for the same property), then values no
triple reserved, then anything.  The lifted solution is checked again at the
end of the stage, so the preference only affects which valid values are used.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import formulas as F
from .alignment import _Triple, enumerate_triples, is_aligned
from .class_model import Ledge, Nest, Shutter, Solution, StringTriple, mirror_label, mu_class
from .perm_core import Perm, alt_half, class_splits
from .reductions import UNTHETA, StageInstance, X2


class LiftError(RuntimeError):
    """A lift could not be carried out; ``name`` says which check failed."""

    def __init__(self, name: str, detail: str = ""):
        super().__init__("%s: %s" % (name, detail) if detail else name)
        self.name = name
        self.detail = detail


@dataclass
class _Cyc:
    vals: list
    anc: frozenset


@dataclass
class _Stock:
    home: tuple       # per string, ids of the initial cycles of the owning triple
    prop: str
    vals: set


@dataclass
class Trace:
    records: list = field(default_factory=list)

    def add(self, lift, step, where=None, note=None):
        rec = {"lift": lift, "formula": step.name, "ok": True,
               "values": {k: v for k, v in step.values.items() if k not in ("long",)}}
        if where is not None:
            rec["at"] = where
        if note:
            rec["note"] = note
        self.records.append(rec)

    def note(self, lift, text):
        self.records.append({"lift": lift, "note": text})


def _rot_end(vals, *tail):
    """Rotate a cycle so it ends with the given consecutive values."""
    k = vals.index(tail[-1])
    out = vals[k + 1:] + vals[:k + 1]
    if out[len(out) - len(tail):] != list(tail):
        raise LiftError("rotate", "values %s are not consecutive" % (tail,))
    return out


def _rot_start(vals, *head):
    k = vals.index(head[0])
    out = vals[k:] + vals[:k]
    if out[:len(head)] != list(head):
        raise LiftError("rotate", "values %s are not consecutive" % (head,))
    return out


class _Work:
    def __init__(self, sol: Solution | None = None, report=None):
        self.extra = [[], [], []]
        if sol is None:
            return
        self.strings = [[_Cyc(list(c), frozenset({(i, k)})) for k, c in enumerate(sol.cycles(i))]
                        for i in range(3)]
        self.labels = sol.triple.label_map()
        self.next = max(sol.values) + 1
        self.stocks = []
        if report is not None:
            for info in report.triples:
                if not info.witnesses:
                    continue
                home = tuple(frozenset({(i, info.key[i])}) for i in range(3))
                seen = set()
                for part in info.witnesses:
                    for p, w in part:
                        if (p, tuple(w)) not in seen:
                            seen.add((p, tuple(w)))
                            self.stocks.append(_Stock(home, p, set(w)))

    # ---- geometry
    @property
    def n(self) -> int:
        return sum(len(c.vals) for c in self.strings[0])

    def breaks(self, i):
        out = [0]
        for c in self.strings[i]:
            out.append(out[-1] + len(c.vals))
        return out

    def ending(self, i, h):
        b = self.breaks(i)
        if h not in b[1:]:
            raise LiftError("geometry", "string %d has no break at %d" % (i + 1, h))
        return b.index(h) - 1

    def containing(self, i, h):
        """Index of the cycle covering position h (1-based), and its start."""
        b = self.breaks(i)
        for k in range(len(b) - 1):
            if b[k] < h <= b[k + 1]:
                return k, b[k]
        raise LiftError("geometry", "position %d outside string %d" % (h, i + 1))

    def is_break(self, i, h):
        return h in self.breaks(i)

    def cb(self, h):
        return sum(1 for i in range(3) if self.is_break(i, h))

    def fresh(self, k):
        out = list(range(self.next, self.next + k))
        self.next += k
        return out

    # ---- conversions
    def degree(self):
        return self.next - 1

    def solution(self) -> Solution:
        return Solution.from_cycles(*[[c.vals for c in s] for s in self.strings], labels=self.labels)

    def mirror(self) -> "_Work":
        m = _Work()
        m.strings = [[_Cyc(c.vals[::-1], c.anc) for c in reversed(self.strings[i])] for i in (1, 0, 2)]
        n = self.n
        m.labels = {n - h: mirror_label(l) for h, l in self.labels.items()}
        m.next = self.next
        m.stocks = [_Stock((s.home[1], s.home[0], s.home[2]), _MIRROR_PROP.get(s.prop, s.prop), s.vals)
                    for s in self.stocks]
        return m

    # ---- witnesses
    def choose(self, cycs, props, tag):
        tri = _Triple([c.vals for c in cycs])
        cands = [(p, w) for p in props for w in tri.candidates(p)]
        if not cands:
            raise LiftError(tag + ".witness", "no %s witness" % "/".join(props))
        own, others = [], set()
        for s in self.stocks:
            if all(s.home[i] <= cycs[i].anc for i in range(3)):
                own.append(s)
            else:
                others |= s.vals
        every = others.union(*[s.vals for s in own]) if own else set(others)
        tiers = [
            [pw for pw in cands if any(s.prop == pw[0] and set(pw[1]) <= s.vals for s in own)],
            [pw for pw in cands if not set(pw[1]) & every],
            [pw for pw in cands if not set(pw[1]) & others],
            cands,
        ]
        for rank, tier in enumerate(tiers):
            if tier:
                p, w = tier[0]
                break
        used = set(w)
        self.stocks = [s for s in self.stocks if not s.vals & used]
        return w, rank

    # ---- rewriting
    def apply(self, step: F.Step, groups, lift, trace, where=None):
        """Replace cycle index groups by the step's new cycles and check the step."""
        betas = []
        for i in range(3):
            idx = {k for g in groups[i] for k in g}
            betas.append([c.vals for k, c in enumerate(self.strings[i]) if k not in idx]
                         + [list(x) for x in self.extra_cycles(i)])
        for i in range(3):
            for g, old in zip(groups[i], step.before[i]):
                got = sorted(x for k in g for x in self.strings[i][k].vals)
                if got != sorted(x for c in old for x in c):
                    raise LiftError(lift + ".shape", "rewrite does not match string %d" % (i + 1))
        try:
            F.verify_step(step, betas, self.degree())
        except F.FormulaError as e:
            raise LiftError(lift + ".formula", str(e)) from None
        for i in range(3):
            pairs = sorted(zip(groups[i], step.after[i]), key=lambda z: -z[0][0])
            for g, new in pairs:
                olds = [self.strings[i][k] for k in g]
                if len(new) == len(olds):
                    cyc = [_Cyc(list(v), o.anc) for v, o in zip(new, olds)]
                elif len(new) == 1:
                    cyc = [_Cyc(list(new[0]), frozenset().union(*[o.anc for o in olds]))]
                else:
                    head = frozenset().union(*[o.anc for o in olds[:-1]])
                    cyc = [_Cyc(list(v), head) for v in new[:-1]] + [_Cyc(list(new[-1]), olds[-1].anc)]
                self.strings[i][g[0]:g[-1] + 1] = cyc
            self.extra[i] = list(self.extra[i]) + [list(c) for c in step.extra[i]]
        if trace is not None:
            trace.add(lift, step, where)

    def extra_cycles(self, i):
        return self.extra[i]


# the same value-level property seen after mirroring
_MIRROR_PROP = {"c3": "c4", "c4": "c3", "c5": "c6", "c6": "c5"}


def _finish(work: _Work, target: StringTriple, lift: str, check_alignment=True):
    sol = work.solution()
    if sol.triple != target:
        raise LiftError(lift + ".target", "lifted strings differ from the inverse reduction")
    if not sol.product_holds():
        raise LiftError(lift + ".product", "product identity fails")
    report = None
    if check_alignment:
        report = is_aligned(sol)
        if not report.aligned:
            raise LiftError(lift + ".alignment", "lifted solution is not aligned: %s" % report.failures[:2])
    return sol, report


def _start(sol, report, lift):
    if report is None:
        report = is_aligned(sol)
    if not report.aligned:
        raise LiftError(lift + ".input", "input solution is not aligned")
    return _Work(sol, report)


def _singleton(work, cyc_idx, lift):
    vals = [work.strings[i][cyc_idx[i]].vals for i in range(3)]
    if any(len(v) != 1 for v in vals) or len({v[0] for v in vals}) != 1:
        raise LiftError(lift + ".fixed_point", "expected one common fixed point, got %s" % vals)
    return vals[0][0]


# ---------------------------------------------------------------- 7 -> 6

def lift_7_to_6(sol: Solution, report=None, trace: Trace | None = None, target=None):
    lift = "7to6"
    if target is None:
        target = UNTHETA[7](StageInstance(7, sol.triple)).payload
    w = _start(sol, report, lift)
    spades = sorted(h for h, l in w.labels.items() if l.kind == "P")
    if len(spades) % 2:
        raise LiftError(lift + ".pairs", "odd number of parity columns")
    pairs = [(spades[k], spades[k + 1]) for k in range(0, len(spades), 2)]
    for b1, b2 in reversed(pairs):
        sides = []
        for b in (b1, b2):
            if b + 1 <= w.n and w.cb(b + 1) == 3:
                big = [w.ending(i, b) for i in range(3)]
                one = [k + 1 for k in big]
                grp = [[k, k + 1] for k in big]
            elif b >= 1 and w.cb(b - 1) == 3:
                one = [w.ending(i, b) for i in range(3)]
                big = [k + 1 for k in one]
                grp = [[k, k + 1] for k in one]
            else:
                raise LiftError(lift + ".column", "parity column %d has no full neighbour" % b)
            sides.append((big, one, grp))
        (bigA, oneA, grpA), (bigB, oneB, grpB) = sides
        s = _singleton(w, oneA, lift)
        v = _singleton(w, oneB, lift)
        A = [w.strings[i][bigA[i]] for i in range(3)]
        B = [w.strings[i][bigB[i]] for i in range(3)]
        (r,), _ = w.choose(A, ["c1"], lift)
        (t, u), _ = w.choose(B, ["c2"], lift)
        rho = [_rot_end(c.vals, r)[:-1] for c in A]
        sig = [_rot_end(B[0].vals, t, u)[:-2], _rot_end(B[1].vals, u)[:-1], _rot_end(B[2].vals, t)[:-1]]
        step = F.parity_pair(rho, sig, r, s, t, u, v)
        w.apply(step, [[grpA[i], grpB[i]] for i in range(3)], lift, trace, where=[b1, b2])
        del w.labels[b1], w.labels[b2]
    return _finish(w, target, lift)


# ---------------------------------------------------------------- 6 -> 5

def _clusters(hs):
    out = []
    for h in sorted(hs):
        if out and h == out[-1][-1] + 1:
            out[-1].append(h)
        else:
            out.append([h])
    return out


def lift_6_to_5(sol: Solution, report=None, trace: Trace | None = None, target=None):
    lift = "6to5"
    if target is None:
        target = UNTHETA[6](StageInstance(6, sol.triple)).payload
    w = _start(sol, report, lift)
    shutters = [h for h, l in w.labels.items() if isinstance(l, Shutter)]
    for cluster in reversed(_clusters(shutters)):
        for h in reversed(cluster):
            j = w.labels[h].v
            if j == 0:
                continue
            left = [w.ending(i, h) for i in range(3)]
            L = [w.strings[i][left[i]] for i in range(3)]
            R = [w.strings[i][left[i] + 1] for i in range(3)]
            (r,), _ = w.choose(L, ["c1"], lift)
            (s,), _ = w.choose(R, ["c1"], lift)
            rho = [_rot_end(c.vals, r)[:-1] for c in L]
            sig = [_rot_start(c.vals, s)[1:] for c in R]
            step = F.shutter_single(j, rho, sig, r, s)
            w.apply(step, [[[k, k + 1]] for k in left], lift, trace, where=h)
            del w.labels[h]
        zeros = [h for h in cluster if w.labels.get(h) == Shutter(0)]
        if len(zeros) % 2:
            raise LiftError(lift + ".pairs", "unpaired shutter column in %s" % cluster)
        for b, b2 in reversed([(zeros[k], zeros[k + 1]) for k in range(0, len(zeros), 2)]):
            if b2 != b + 2:
                raise LiftError(lift + ".pairs", "shutter columns %d, %d are not two apart" % (b, b2))
            owners = [i + 1 for i in range(3) if w.is_break(i, b + 1)]
            if len(owners) != 1:
                raise LiftError(lift + ".middle", "middle column %d breaks in %s" % (b + 1, owners))
            j = owners[0]
            left = [w.ending(i, b) for i in range(3)]
            L = [w.strings[i][left[i]] for i in range(3)]
            rk = [left[i] + (3 if i + 1 == j else 2) for i in range(3)]
            R = [w.strings[i][rk[i]] for i in range(3)]
            sj = w.strings[j - 1][left[j - 1] + 1].vals
            tj = w.strings[j - 1][left[j - 1] + 2].vals
            if len(sj) != 1 or len(tj) != 1:
                raise LiftError(lift + ".fixed_point", "string %d lacks two fixed points" % j)
            s, t = sj[0], tj[0]
            for i in range(3):
                if i + 1 != j and set(w.strings[i][left[i] + 1].vals) != {s, t}:
                    raise LiftError(lift + ".transposition", "string %d lacks (%d %d)" % (i + 1, s, t))
            (r,), _ = w.choose(L, ["c1"], lift)
            (u,), _ = w.choose(R, ["c1"], lift)
            rho = [_rot_end(c.vals, r)[:-1] for c in L]
            sig = [_rot_start(c.vals, u)[1:] for c in R]
            step = F.shutter_pair(j, rho, sig, r, s, t, u)
            groups = [[list(range(left[i], rk[i] + 1))] for i in range(3)]
            w.apply(step, groups, lift, trace, where=[b, b2])
            del w.labels[b], w.labels[b2]
    return _finish(w, target, lift)


# ---------------------------------------------------------------- 5 -> 4

def lift_5_to_4(sol: Solution, report=None, trace: Trace | None = None, target=None):
    lift = "5to4"
    if target is None:
        target = UNTHETA[5](StageInstance(5, sol.triple)).payload
    w = _start(sol, report, lift)
    traps = sorted(h for h, l in w.labels.items() if l.kind == "T")
    pairs = []
    k = 0
    while k < len(traps):
        if k + 1 >= len(traps) or traps[k + 1] != traps[k] + 1:
            raise LiftError(lift + ".pairs", "trap column %d has no partner" % traps[k])
        pairs.append((traps[k], traps[k + 1]))
        k += 2
    for a, a1 in reversed(pairs):
        left = [w.ending(i, a) for i in range(3)]
        L = [w.strings[i][left[i]] for i in range(3)]
        R = [w.strings[i][left[i] + 2] for i in range(3)]
        s = _singleton(w, [k + 1 for k in left], lift)
        (r,), _ = w.choose(L, ["c1"], lift)
        (t,), _ = w.choose(R, ["c1"], lift)
        rho = [_rot_end(c.vals, r)[:-1] for c in L]
        sig = [_rot_start(c.vals, t)[1:] for c in R]
        step = F.trap_pair(rho, sig, r, s, t)
        w.apply(step, [[[k, k + 1, k + 2]] for k in left], lift, trace, where=[a, a1])
        del w.labels[a], w.labels[a1]
    return _finish(w, target, lift)


# ---------------------------------------------------------------- 4 -> 3

def _ledge_plus(w: _Work, p: int, i3: int, lift: str, trace, where):
    left = [w.ending(i, p) for i in range(3)]
    L = [w.strings[i][left[i]] for i in range(3)]
    R = [w.strings[i][left[i] + 1] for i in range(3)]
    u, v = w.fresh(2)
    rho4 = None
    wv = None
    if i3 in (1, 2):
        (r,), _ = w.choose(L, ["c1"], lift)
        (s, t), _ = w.choose(R, ["c4" if i3 == 1 else "c3"], lift)
        rho = [_rot_end(c.vals, r)[:-1] for c in L]
        sig = [_rot_start(R[0].vals, s, t)[2:], _rot_start(R[1].vals, s, t)[2:]]
        head = t if i3 == 1 else s
        sig.append(_rot_start(R[2].vals, head)[1:])
        grp_len = [4, 4, 4]
    else:
        (r, s), _ = w.choose(L, ["c6"], lift)
        (t, wv), _ = w.choose(R, ["c3", "c4"], lift)
        l3 = _rot_end(L[2].vals, s)
        k = l3.index(r)
        rho = [_rot_end(L[0].vals, r, s)[:-2], _rot_end(L[1].vals, s)[:-1], l3[:k]]
        rho4 = l3[k + 1:-1]
        sig = [_rot_start(R[0].vals, t, wv)[2:], _rot_start(R[1].vals, t, wv)[2:], None]
        grp_len = [4, 4, 3]
    step = F.ledge_plus(i3, rho, sig, r, s, t, u, v, w=wv, rho4=rho4)
    for i in range(3):
        w.strings[i][left[i] + 1:left[i] + 1] = [_Cyc([u], frozenset()), _Cyc([v], frozenset())]
    groups = [[list(range(left[i], left[i] + grp_len[i]))] for i in range(3)]
    w.apply(step, groups, lift, trace, where=where)


def lift_4_to_3(sol: Solution, report=None, trace: Trace | None = None, target=None):
    lift = "4to3"
    if target is None:
        target = UNTHETA[4](StageInstance(4, sol.triple)).payload
    w = _start(sol, report, lift)
    ledges = sorted((h for h, l in w.labels.items() if isinstance(l, Ledge)), reverse=True)
    for p in ledges:
        lab = w.labels[p]
        if lab.eps == 1:
            _ledge_plus(w, p, lab.i, lift, trace, where=p)
            del w.labels[p]
            w.labels = {(h + 2 if h > p else h): l for h, l in w.labels.items()}
        else:
            m = w.mirror()
            q = m.n - p
            mlab = m.labels[q]
            _ledge_plus(m, q, mlab.i, lift, trace, where=p)
            del m.labels[q]
            m.labels = {(h + 2 if h > q else h): l for h, l in m.labels.items()}
            back = m.mirror()
            back.extra = w.extra
            w = back
            if trace is not None:
                trace.records[-1]["note"] = "applied to the reversed strings"
    sol3 = w.solution()
    if sol3.triple != target:
        raise LiftError(lift + ".target", "lifted strings differ from the inverse reduction")
    if not sol3.product_holds():
        raise LiftError(lift + ".product", "product identity fails")
    bad = c1_failures(sol3, min_shared=2)
    if bad:
        raise LiftError(lift + ".alignment", "triples without a common value: %s" % bad[:3])
    return sol3, None


def c1_failures(sol: Solution, min_shared: int = 2) -> list:
    """Cycle triples sharing at least min_shared positions but no value."""
    out = []
    for key, refs, s in enumerate_triples(sol):
        if s < min_shared:
            continue
        vals = [set(sol.cycles(i)[key[i]]) for i in range(3)]
        if not vals[0] & vals[1] & vals[2]:
            out.append(key)
    return out


# ---------------------------------------------------------------- 3 -> 2

@dataclass
class Stage2Solution:
    """Cycle lists of the three permutations; the first cycle of each is the long one."""

    cycles: list
    ts: tuple
    common: int

    def perms(self, degree=None):
        vals = {x for c in self.cycles[0] for x in c}
        n = degree or max(vals)
        return tuple(Perm.from_cycles([c for c in cs if len(c) > 1], n) for cs in self.cycles)

    def classes(self):
        return tuple(p.cycle_type() for p in self.perms())


def _nest_parts(seq):
    """Split a nest sequence into extraction steps, last entries first."""
    seq = list(seq)
    steps = []
    while seq:
        odds = [k for k, x in enumerate(seq) if x % 2]
        if odds:
            steps.append(("odd", [seq.pop(odds[-1])]))
        else:
            f = seq.pop()
            e = seq.pop()
            steps.append(("even", [e, f]))
    return steps


def lift_3_to_2(sol: Solution, x2: X2 | None = None, trace: Trace | None = None):
    lift = "3to2"
    if x2 is None:
        x2 = UNTHETA[3](StageInstance(3, sol.triple)).payload
    bad = c1_failures(sol, 2)
    if bad:
        raise LiftError(lift + ".input", "triples without a common value: %s" % bad[:3])
    w = _Work(sol, None)
    nests = sorted((h for h, l in w.labels.items() if isinstance(l, Nest)), reverse=True)
    for m in nests:
        lab = w.labels[m]
        i = lab.i
        for kind, lens in _nest_parts(lab.seq):
            idx = [w.containing(k, m)[0] for k in range(3)]
            cyc = [w.strings[k][idx[k]] for k in range(3)]
            (r,), _ = w.choose(cyc, ["c1"], lift)
            rho1, rho2 = [], []
            for k in range(3):
                _, a = w.containing(k, m)
                off = m - 1 - a
                c = _rot_start(cyc[k].vals, r)
                c = c[-off:] + c[:-off] if off else c
                rho1.append(c[:off])
                rho2.append(c[off + 1:])
            if kind == "odd":
                xs = w.fresh(lens[0])
                step = F.nest_odd(i, rho1, rho2, r, xs)
            else:
                e, f = lens
                if i == 3 and e > f:
                    e, f = f, e
                ys, zs = w.fresh(e), w.fresh(f)
                step = F.nest_even(i, rho1, rho2, r, ys, zs)
            w.apply(step, [[[idx[k]]] for k in range(3)], lift, trace, where=m)
        del w.labels[m]
    cycles = [[c.vals for c in w.strings[k]] + w.extra[k] for k in range(3)]
    ts = tuple(len(w.strings[k][0].vals) for k in range(3))
    common = set(cycles[0][0]) & set(cycles[1][0]) & set(cycles[2][0])
    if not common:
        raise LiftError(lift + ".common", "long cycles share no value")
    out = Stage2Solution(cycles, ts, min(common))
    a1, a2, a3 = out.perms()
    if a1 * a2 != a3:
        raise LiftError(lift + ".product", "product identity fails")
    if out.classes() != tuple(x2.classes) or ts != tuple(x2.ts):
        raise LiftError(lift + ".target", "classes or long cycle lengths differ from the inverse reduction")
    return out


# ---------------------------------------------------------------- 2 -> 1

@dataclass
class Stage1Solution:
    perms: tuple
    chain: list


def lift_2_to_1(s2: Stage2Solution, meta: dict, classes=None, trace: Trace | None = None):
    """Put back the short even cycles named in ``meta`` and the eight extra points."""
    lift = "2to1"
    cycles = [list(map(list, cs)) for cs in s2.cycles]
    long_ = [0, 0, 0]
    r = s2.common
    nxt = max(x for c in cycles[0] for x in c) + 1

    def fresh(k):
        nonlocal nxt
        out = list(range(nxt, nxt + k))
        nxt += k
        return out

    def apply(step):
        betas = [[c for q, c in enumerate(cycles[i]) if q != long_[i]] for i in range(3)]
        try:
            F.verify_step(step, betas, nxt - 1)
        except F.FormulaError as e:
            raise LiftError(lift + ".formula", str(e)) from None
        for i in range(3):
            new = step.after[i][0]
            pos = long_[i]
            cycles[i][pos:pos + 1] = [list(c) for c in new]
            which = step.values.get("long", (0, 0, 0))[i]
            long_[i] = pos + which
        if trace is not None:
            trace.add(lift, step)

    for j in meta.get("J", []):
        rj = meta["r"][j - 1]
        rho = [_rot_start(cycles[i][long_[i]], r)[1:] for i in range(3)]
        s, = fresh(1)
        xs = fresh(rj)
        step = F.short_even(j, rho, r, s, xs)
        apply(step)
        r = step.values["common"]
    rho = [_rot_start(cycles[i][long_[i]], r)[1:] for i in range(3)]
    xs = fresh(8)
    step = F.chain8(rho, r, xs)
    apply(step)
    n = nxt - 1
    perms = tuple(Perm.from_cycles([c for c in cs if len(c) > 1], n) for cs in cycles)
    if perms[0] * perms[1] != perms[2]:
        raise LiftError(lift + ".product", "product identity fails")
    if classes is not None and tuple(p.cycle_type() for p in perms) != tuple(classes):
        raise LiftError(lift + ".target", "classes differ from the stage-1 classes")
    return Stage1Solution(perms, xs[:5])


# ---------------------------------------------------------------- 1 -> 0

def lift_1_to_0(s1: Stage1Solution, halves=("plus", "plus", "plus"), trace: Trace | None = None):
    """Move each factor into the requested alternating-group class."""
    lift = "1to0"
    a1, a2, a3 = s1.perms
    for k in range(4):
        x = s1.chain[k]
        if a1(x) != s1.chain[k + 1] or a2(x) != s1.chain[k + 1]:
            raise LiftError(lift + ".chain", "chain values are not shared by a_1 and a_2")
    split = [class_splits(p.cycle_type()) for p in s1.perms]
    have = [alt_half(p) for p in s1.perms]
    need = [(have[i] != halves[i]) if split[i] else None for i in range(3)]
    for name, flips, trip in F.half_variants(s1.perms, s1.chain):
        if all(need[i] is None or bool(flips[i]) == need[i] for i in range(3)):
            if trip[0] * trip[1] != trip[2]:
                raise LiftError(lift + ".product", "variant %s breaks the product" % name)
            got = [alt_half(p) for p in trip]
            if any(split[i] and got[i] != halves[i] for i in range(3)):
                raise LiftError(lift + ".half", "variant %s misses the requested classes" % name)
            if trace is not None:
                trace.records.append({"lift": lift, "formula": "half_" + name, "ok": True,
                                      "values": {"chain": list(s1.chain)}})
            return trip
    raise LiftError(lift + ".half", "no variant reaches the requested classes")


# ---------------------------------------------------------------- helpers for callers

LIFTS = {7: lift_7_to_6, 6: lift_6_to_5, 5: lift_5_to_4, 4: lift_4_to_3}


def classes_of(sol: Solution) -> tuple:
    return tuple(mu_class(p) for p in sol.triple.phis)


__all__ = ["LiftError", "Trace", "lift_7_to_6", "lift_6_to_5", "lift_5_to_4", "lift_4_to_3",
           "lift_3_to_2", "lift_2_to_1", "lift_1_to_0", "Stage2Solution", "Stage1Solution",
           "c1_failures", "LIFTS"]
