"""Shared-value properties of vertically overlapping cycles and aligned solutions.

Six local properties c1..c6 are tested on a triple of cycles (one per
string).  Rotating a cycle inside its window is free, so every property
reduces to a test on values: membership in the three cycles and the
successor maps ``A_i`` inside each cycle.

  c1: z1 in all three
  c2: z1 in g1, g3;  z2 = A1(z1) in g2
  c3: z1 in all three;  A1(z1) = A2(z1) = z2
  c4: z1 in g1, g2;  A1(z1) = A2(z1) = z2 in g3
  c5: z1 in all three;  z2 = A2(z1) in g3
  c6: z1 in g1, g3;  z2 = A1(z1) in g2, g3
"""
from __future__ import annotations

import bisect
import re
from dataclasses import dataclass, field

from .class_model import Solution

PROPS = ("c1", "c2", "c3", "c4", "c5", "c6")
MIN_SHARED = {"c1": 1, "c2": 2, "c3": 2, "c4": 2, "c5": 2, "c6": 2}


@dataclass(frozen=True)
class CycleRef:
    string: int  # 1..3
    a: int
    b: int


def shared_positions(c1: CycleRef, c2: CycleRef, c3: CycleRef) -> int:
    return min(c1.b, c2.b, c3.b) - max(c1.a, c2.a, c3.a)


def share_break(c1: CycleRef, c2: CycleRef, c3: CycleRef) -> str:
    left = c1.a == c2.a == c3.a
    right = c1.b == c2.b == c3.b
    if left and right:
        return "both"
    return "left" if left else "right" if right else "none"


def cycle_values(sol: Solution, ref: CycleRef) -> tuple:
    return sol.strings[ref.string - 1].eta[ref.a:ref.b]


def cycle_refs(sol: Solution, i: int) -> list:
    b = sol.triple.phis[i - 1].breaks
    return [CycleRef(i, b[k], b[k + 1]) for k in range(len(b) - 1)]


def cycle_ending_at(sol: Solution, i: int, h: int) -> CycleRef:
    b = sol.triple.phis[i - 1].breaks
    k = bisect.bisect_left(b, h)
    if k == 0 or k >= len(b) or b[k] != h:
        raise ValueError("string %d has no break at %d" % (i, h))
    return CycleRef(i, b[k - 1], h)


def cycle_starting_at(sol: Solution, i: int, h: int) -> CycleRef:
    b = sol.triple.phis[i - 1].breaks
    k = bisect.bisect_left(b, h)
    if k >= len(b) - 1 or b[k] != h:
        raise ValueError("string %d has no cycle starting at %d" % (i, h))
    return CycleRef(i, h, b[k + 1])


def cycle_containing(sol: Solution, i: int, h: int) -> CycleRef:
    a, b = sol.triple.phis[i - 1].cycle_at(h)
    return CycleRef(i, a, b)


# ---------------------------------------------------------------- single properties

class _Triple:
    """Value-level view of three cycles."""

    def __init__(self, seqs):
        self.seqs = [tuple(s) for s in seqs]
        self.sets = [set(s) for s in self.seqs]
        self.succ = [{s[k]: s[(k + 1) % len(s)] for k in range(len(s))} for s in self.seqs]

    def candidates(self, which: str) -> list:
        g1, g2, g3 = self.sets
        a1, a2, _ = self.succ
        out = []
        if which == "c1":
            out = [(z,) for z in g1 & g2 & g3]
        elif which == "c2":
            out = [(z, a1[z]) for z in g1 & g3 if a1[z] in g2]
        elif which == "c3":
            out = [(z, a1[z]) for z in g1 & g2 & g3 if a1[z] == a2[z]]
        elif which == "c4":
            out = [(z, a1[z]) for z in g1 & g2 if a1[z] == a2[z] and a1[z] in g3]
        elif which == "c5":
            out = [(z, a2[z]) for z in g1 & g2 & g3 if a2[z] in g3]
        elif which == "c6":
            out = [(z, a1[z]) for z in g1 & g3 if a1[z] in g2 and a1[z] in g3]
        else:
            raise ValueError("unknown property %r" % which)
        # a two-value witness needs two distinct values
        return sorted(w for w in out if len(set(w)) == len(w))


@dataclass(frozen=True)
class CWitness:
    prop: str
    values: tuple
    rotations: tuple  # per string: index within the cycle placed at the first shared position
    anchor: int  # x: positions x+1 (and x+2) carry the shared values
    xprime: int | None = None


def _rotate_to(seq, value, offset):
    """Rotation of seq putting value at index offset."""
    k = seq.index(value)
    return (k - offset) % len(seq)


# per property and string: which witness value is pinned, and at x+1 (0) or x+2 (1)
_ANCHORS = {
    "c1": ((0, 0), (0, 0), (0, 0)),
    "c2": ((0, 0), (1, 1), (0, 0)),
    "c3": ((0, 0), (0, 0), (0, 0)),
    "c4": ((0, 0), (0, 0), (1, 1)),
    "c5": ((0, 0), (0, 0), (0, 0)),
    "c6": ((0, 0), (1, 1), (1, 1)),
}
# value placed at a free position x' of the third string
_XPRIME = {"c5": 1, "c6": 0}


def _rotated_window(seq, rot):
    return seq[rot:] + seq[:rot]


def verify_witness(sol: Solution, refs, w: CWitness) -> bool:
    """Check a witness position by position on the rotated windows."""
    seqs = [cycle_values(sol, r) for r in refs]
    if shared_positions(*refs) < MIN_SHARED[w.prop]:
        return False
    etas = []
    for seq, ref, rot in zip(seqs, refs, w.rotations):
        win = _rotated_window(seq, rot)
        etas.append({ref.a + k + 1: v for k, v in enumerate(win)})
    return positional_holds(etas, w.prop, w.anchor, w.values, w.xprime)


def positional_holds(etas, which, x, vals, xprime=None) -> bool:
    """The literal positional definitions; etas are dicts position -> value."""
    e1, e2, e3 = etas
    z1 = vals[0]
    z2 = vals[1] if len(vals) > 1 else None
    p1, p2 = x + 1, x + 2
    if which == "c1":
        return e1.get(p1) == e2.get(p1) == e3.get(p1) == z1
    if which == "c2":
        return e1.get(p1) == e3.get(p1) == z1 and e1.get(p2) == e2.get(p2) == z2
    if which == "c3":
        return (e1.get(p1) == e2.get(p1) == e3.get(p1) == z1
                and e1.get(p2) == e2.get(p2) == z2)
    if which == "c4":
        return (e1.get(p1) == e2.get(p1) == z1
                and e1.get(p2) == e2.get(p2) == e3.get(p2) == z2)
    if which == "c5":
        return (e1.get(p1) == e2.get(p1) == e3.get(p1) == z1
                and e2.get(p2) == z2 and e3.get(xprime) == z2)
    if which == "c6":
        return (e1.get(p1) == z1 and e3.get(xprime) == z1
                and e1.get(p2) == e2.get(p2) == e3.get(p2) == z2)
    raise ValueError("unknown property %r" % which)


def make_witness(sol: Solution, refs, which: str, vals) -> CWitness:
    seqs = [cycle_values(sol, r) for r in refs]
    x = max(r.a for r in refs)
    rots = []
    for seq, ref, (vi, step) in zip(seqs, refs, _ANCHORS[which]):
        rots.append(_rotate_to(seq, vals[vi], x - ref.a + step))
    xprime = None
    if which in _XPRIME:
        seq3 = seqs[2]
        idx = (seq3.index(vals[_XPRIME[which]]) - rots[2]) % len(seq3)
        xprime = refs[2].a + idx + 1
    return CWitness(which, tuple(vals), tuple(rots), x, xprime)


def find_c(sol: Solution, refs, which: str, forbidden=frozenset()) -> CWitness | None:
    """Smallest witness of one property, re-validated position by position."""
    need = MIN_SHARED[which]
    if shared_positions(*refs) < need:
        raise ValueError("%s needs at least %d shared positions" % (which, need))
    tri = _Triple([cycle_values(sol, r) for r in refs])
    for vals in tri.candidates(which):
        if forbidden and any(v in forbidden for v in vals):
            continue
        w = make_witness(sol, refs, which, vals)
        if not verify_witness(sol, refs, w):
            raise AssertionError("witness failed positional re-check: %r" % (w,))
        return w
    return None


def candidates(sol: Solution, refs, which: str, forbidden=frozenset()) -> list:
    tri = _Triple([cycle_values(sol, r) for r in refs])
    return [v for v in tri.candidates(which) if not any(x in forbidden for x in v)]


# ---------------------------------------------------------------- compositions

_TERM = re.compile(r"c([1-6])(?:\^(\d+))?")


def parse_composition(spec: str) -> list:
    """'c1^2&c1c2' -> [['c1','c1'], ['c1','c2']].  Unicode forms are accepted."""
    s = spec.replace("𝔠", "c").replace("C", "c").replace("∩", "&").replace(" ", "")
    for sup, d in zip("²³⁴", "234"):
        s = s.replace(sup, "^" + d)
    out = []
    for part in s.split("&"):
        terms = []
        pos = 0
        for m in _TERM.finditer(part):
            if m.start() != pos:
                raise ValueError("malformed composition %r" % spec)
            terms.extend(["c" + m.group(1)] * int(m.group(2) or 1))
            pos = m.end()
        if pos != len(part) or not terms:
            raise ValueError("malformed composition %r" % spec)
        out.append(terms)
    return out


CLAUSE_SPECS = {
    1: "c1",
    2: "c1^2&c1c2",
    3: "c1^3c3^2c4^2c5c6",
    4: "c1^4c2c3^2c4^2c5c6",
}
CLAUSE_TERMS = {k: parse_composition(v) for k, v in CLAUSE_SPECS.items()}


def _juxtapose(cands, terms, forbidden, prefer, limit):
    """Yield disjoint witness lists for one juxtaposition, smallest values first."""
    order = sorted(range(len(terms)), key=lambda k: (len(cands[terms[k]]), k))

    def key(w):
        return (0 if all(v in prefer for v in w) else 1, w)

    lists = {p: sorted(cands[p], key=key) for p in set(terms)}
    chosen = [None] * len(terms)
    used = set()
    count = [0]
    steps = [0]

    def rec(d, last_for):
        if count[0] >= limit or steps[0] > 20000:
            return
        if d == len(order):
            count[0] += 1
            yield list(chosen)
            return
        k = order[d]
        p = terms[k]
        # equal terms are symmetric: enforce increasing choice index among them
        start = last_for.get(p, -1) + 1
        for idx in range(start, len(lists[p])):
            steps[0] += 1
            w = lists[p][idx]
            if any(v in used or v in forbidden for v in w):
                continue
            chosen[k] = (p, w)
            used.update(w)
            prev = last_for.get(p)
            last_for[p] = idx
            yield from rec(d + 1, last_for)
            if prev is None:
                del last_for[p]
            else:
                last_for[p] = prev
            used.difference_update(w)
            if count[0] >= limit:
                return

    yield from rec(0, {})


def find_c_composition(sol: Solution, refs, spec, forbidden=frozenset(), prefer=frozenset()):
    """Witnesses for a composition such as 'c1^2&c1c2'; returns list per ∩-part or None."""
    parts = parse_composition(spec) if isinstance(spec, str) else spec
    tri = _Triple([cycle_values(sol, r) for r in refs])
    return _solve_parts(tri, parts, forbidden, prefer)


def _solve_parts(tri, parts, forbidden, prefer, cands=None):
    if cands is None:
        cands = {p: tri.candidates(p) for p in PROPS}
    result = []
    pref = set(prefer)
    for terms in parts:
        got = next(_juxtapose(cands, terms, forbidden, pref, 1), None)
        if got is None:
            return None
        result.append(got)
        for _, w in got:
            pref.update(w)
    return result


def _triple_options(tri, parts, forbidden, limit=12):
    """Distinct value sets satisfying every part; first part varies, later parts reuse."""
    cands = {p: tri.candidates(p) for p in PROPS}
    seen = set()
    for first in _juxtapose(cands, parts[0], forbidden, frozenset(), limit * 4):
        pref = {v for _, w in first for v in w}
        rest = _solve_parts(tri, parts[1:], forbidden, pref, cands) if len(parts) > 1 else []
        if rest is None:
            continue
        sol = [first] + rest
        vals = frozenset(v for part in sol for _, w in part for v in w)
        if vals in seen:
            continue
        seen.add(vals)
        yield vals, sol
        if len(seen) >= limit:
            return


# ---------------------------------------------------------------- alignment

@dataclass
class TripleInfo:
    key: tuple
    refs: tuple
    shared: int
    clauses: list  # [(clause number, end)]
    parts: list = field(default_factory=list)
    witnesses: list | None = None
    values: frozenset = frozenset()

    def requirement(self) -> str:
        nums = sorted({c for c, _ in self.clauses})
        return " & ".join(CLAUSE_SPECS[c] for c in nums)

    def to_json(self):
        return {
            "cycles": [[r.string, r.a, r.b] for r in self.refs],
            "shared": self.shared,
            "clauses": [[c, e] for c, e in self.clauses],
            "requirement": self.requirement(),
            "witnesses": None if self.witnesses is None else [
                [[p, list(w)] for p, w in part] for part in self.witnesses],
            "values": sorted(self.values),
        }


@dataclass
class AlignmentReport:
    aligned: bool
    triples: list
    failures: list
    disjoint: bool

    def __bool__(self):
        return self.aligned

    def reserved(self) -> dict:
        """Triple key -> witness value set."""
        return {t.key: t.values for t in self.triples}

    def by_key(self, key):
        for t in self.triples:
            if t.key == key:
                return t
        return None

    def to_json(self):
        return {"aligned": self.aligned, "disjoint": self.disjoint,
                "triples": [t.to_json() for t in self.triples],
                "failures": self.failures}


def enumerate_triples(sol: Solution) -> list:
    """All cycle triples sharing at least one position, as (key, refs, shared)."""
    refs = [cycle_refs(sol, i) for i in (1, 2, 3)]
    starts = [[r.a for r in rs] for rs in refs]
    out = []

    def overlapping(i, lo, hi):
        # cycles of string i with interval meeting (lo, hi) in at least one position
        k = max(bisect.bisect_right(starts[i], lo) - 1, 0)
        while k < len(refs[i]) and refs[i][k].a < hi:
            if refs[i][k].b > lo:
                yield k, refs[i][k]
            k += 1

    for k1, r1 in enumerate(refs[0]):
        for k2, r2 in overlapping(1, r1.a, r1.b):
            lo, hi = max(r1.a, r2.a), min(r1.b, r2.b)
            for k3, r3 in overlapping(2, lo, hi):
                s = shared_positions(r1, r2, r3)
                if s >= 1:
                    out.append(((k1, k2, k3), (r1, r2, r3), s))
    return out


def triple_clauses(sol: Solution, refs, shared) -> list:
    """Which alignment clauses apply to a triple, with the end that fired them."""
    t = sol.triple
    out = [(1, "-")]
    if shared < 2:
        return out
    a = refs[0].a if refs[0].a == refs[1].a == refs[2].a else None
    b = refs[0].b if refs[0].b == refs[1].b == refs[2].b else None
    k = t.kind
    for end, h, nb in (("left", a, -1), ("right", b, 1)):
        if h is None:
            continue
        if k(h) == "P" and k(h + nb) != "L":
            out.append((2, end))
        if k(h) == "L":
            out.append((3, end))
        if k(h) == "P" and k(h + nb) == "L":
            out.append((4, end))
    return out


def _requirement_parts(clauses):
    parts = []
    for c in sorted({c for c, _ in clauses}):
        parts.extend(CLAUSE_TERMS[c])
    return parts


def is_aligned(sol: Solution, check_product: bool = True, node_budget: int = 200000,
               pools: dict | None = None) -> AlignmentReport:
    """Decide alignment, including disjointness of witness values across triples.

    ``pools`` optionally maps a triple key to a preferred value pool; the search
    first tries witnesses inside the pool and falls back to the whole triple.
    """
    if check_product and not sol.product_holds():
        raise ValueError("product identity fails; not a solution")
    infos = []
    tris = {}
    for key, refs, s in enumerate_triples(sol):
        info = TripleInfo(key, refs, s, triple_clauses(sol, refs, s))
        info.parts = _requirement_parts(info.clauses)
        infos.append(info)
        tris[key] = _Triple([cycle_values(sol, r) for r in refs])
    failures = []
    # each triple on its own
    for info in infos:
        if _solve_parts(tris[info.key], info.parts, frozenset(), frozenset()) is None:
            for c in sorted({c for c, _ in info.clauses}):
                if _solve_parts(tris[info.key], CLAUSE_TERMS[c], frozenset(), frozenset()) is None:
                    failures.append({"clause": c, "cycles": [[r.string, r.a, r.b] for r in info.refs],
                                     "requirement": CLAUSE_SPECS[c]})
    if failures:
        return AlignmentReport(False, infos, failures, False)

    # global disjointness, component by component
    universe = {}
    for info in infos:
        s1, s2, s3 = tris[info.key].sets
        universe[info.key] = (s1 & s2) | (s1 & s3) | (s2 & s3)
    parent = {info.key: info.key for info in infos}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner = {}
    for info in infos:
        for v in universe[info.key]:
            if v in owner:
                ra, rb = find(owner[v]), find(info.key)
                if ra != rb:
                    parent[ra] = rb
            else:
                owner[v] = info.key
    comps = {}
    for info in infos:
        comps.setdefault(find(info.key), []).append(info)

    ok = True
    for comp in comps.values():
        if not _assign_component(comp, tris, pools or {}, node_budget):
            ok = False
            failures.append({"clause": 5, "cycles": [[[r.string, r.a, r.b] for r in i.refs] for i in comp],
                             "requirement": "disjoint witness values"})
    return AlignmentReport(ok, infos, failures, ok)


def _assign_component(comp, tris, pools, budget):
    if len(comp) == 1:
        info = comp[0]
        pool = pools.get(info.key)
        opt = None
        if pool is not None:
            sub = _restricted(tris[info.key], pool)
            opt = _solve_parts(sub, info.parts, frozenset(), frozenset())
        if opt is None:
            opt = _solve_parts(tris[info.key], info.parts, frozenset(), frozenset())
        info.witnesses = opt
        info.values = frozenset(v for part in opt for _, w in part for v in w)
        return True
    order = sorted(comp, key=lambda i: (-len(i.parts[0]) - len(i.parts), i.key))
    used = set()
    nodes = [0]

    def options(info):
        pool = pools.get(info.key)
        if pool is not None:
            sub = _restricted(tris[info.key], pool)
            yield from _triple_options(sub, info.parts, frozenset(used))
        yield from _triple_options(tris[info.key], info.parts, frozenset(used))

    def rec(d):
        if d == len(order):
            return True
        info = order[d]
        for vals, sol in options(info):
            nodes[0] += 1
            if nodes[0] > budget:
                return False
            if vals & used:
                continue
            info.witnesses, info.values = sol, vals
            used.update(vals)
            if rec(d + 1):
                return True
            used.difference_update(vals)
        info.witnesses, info.values = None, frozenset()
        return False

    return rec(0)


def _restricted(tri, pool):
    """View of a triple whose candidate lists only use values from pool."""
    sub = _Triple.__new__(_Triple)
    sub.seqs, sub.sets, sub.succ = tri.seqs, tri.sets, tri.succ
    base = tri.candidates

    def cands(which, _pool=frozenset(pool)):
        return [w for w in base(which) if all(v in _pool for v in w)]
    sub.candidates = cands
    return sub


def report_triple_for(report: AlignmentReport, refs) -> TripleInfo | None:
    want = tuple((r.string, r.a, r.b) for r in refs)
    for t in report.triples:
        if tuple((r.string, r.a, r.b) for r in t.refs) == want:
            return t
    return None
