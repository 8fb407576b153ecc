"""Class strings, element strings, labels and string-triple predicates.

A half-position ``h + 1/2`` is stored as the integer ``h`` (``0 <= h <= n``).
Position ``p`` (1-based) sits between half-positions ``p - 1`` and ``p``.
"""
from __future__ import annotations

import bisect
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .perm_core import CycleType, Perm, nu, parity


# ---------------------------------------------------------------- labels

@dataclass(frozen=True)
class Nest:
    i: int
    seq: tuple
    kind = "N"

    def __post_init__(self):
        if self.i not in (1, 2, 3):
            raise ValueError("nest label string index must be 1, 2 or 3")
        if not self.seq or any(not 1 <= x <= 31 for x in self.seq):
            raise ValueError("nest sequence must be nonempty with entries in 1..31")

    def token(self):
        return "N(%d:%s)" % (self.i, ",".join(map(str, self.seq)))


@dataclass(frozen=True)
class Ledge:
    i: int
    eps: int
    kind = "L"

    def __post_init__(self):
        if self.i not in (1, 2, 3) or self.eps not in (1, -1):
            raise ValueError("bad ledge label")

    def token(self):
        return "L(%d:%+d)" % (self.i, self.eps)


@dataclass(frozen=True)
class Trap:
    kind = "T"

    def token(self):
        return "T"


@dataclass(frozen=True)
class Shutter:
    v: int
    kind = "S"

    def __post_init__(self):
        if self.v not in (0, 1, 2, 3):
            raise ValueError("shutter value must be 0..3")

    def token(self):
        return "S%d" % self.v


@dataclass(frozen=True)
class Parity:
    kind = "P"

    def token(self):
        return "P"


TRAP = Trap()
PARITY = Parity()
Label = object  # Nest | Ledge | Trap | Shutter | Parity


def kind_of(label) -> str | None:
    return None if label is None else label.kind


def parse_label(tok: str):
    tok = tok.strip()
    if tok in ("-", ""):
        return None
    if tok == "T":
        return TRAP
    if tok == "P":
        return PARITY
    if len(tok) == 2 and tok[0] == "S" and tok[1].isdigit():
        return Shutter(int(tok[1]))
    if tok.startswith("N(") and tok.endswith(")"):
        i, _, rest = tok[2:-1].partition(":")
        return Nest(int(i), tuple(int(x) for x in rest.split(",")))
    if tok.startswith("L(") and tok.endswith(")"):
        i, _, e = tok[2:-1].partition(":")
        return Ledge(int(i), int(e))
    raise ValueError("unknown label token %r" % tok)


_SWAP12 = {1: 2, 2: 1, 3: 3}


def mirror_label(label):
    """Label seen after reading all strings backwards and swapping strings 1, 2."""
    if isinstance(label, Ledge):
        return Ledge(_SWAP12[label.i], -label.eps)
    if isinstance(label, Nest):
        return Nest(_SWAP12[label.i], label.seq)
    if isinstance(label, Shutter):
        return Shutter(_SWAP12.get(label.v, 0) if label.v else 0)
    return label


# ---------------------------------------------------------------- strings

@dataclass(frozen=True)
class ClassString:
    """Break pattern of one string; ``breaks`` always holds 0 and n."""

    n: int
    breaks: tuple

    def __post_init__(self):
        b = tuple(sorted(set(self.breaks)))
        object.__setattr__(self, "breaks", b)
        if not b or b[0] != 0 or b[-1] != self.n:
            raise ValueError("class string must break at 0 and n")
        if any(x < 0 or x > self.n for x in b):
            raise ValueError("break out of range")

    @classmethod
    def from_lengths(cls, lengths: Iterable[int]) -> "ClassString":
        out = [0]
        for x in lengths:
            if x < 1:
                raise ValueError("cycle lengths must be positive")
            out.append(out[-1] + x)
        return cls(out[-1], tuple(out))

    def lengths(self) -> list:
        b = self.breaks
        return [b[k + 1] - b[k] for k in range(len(b) - 1)]

    def is_break(self, h: int) -> bool:
        i = bisect.bisect_left(self.breaks, h)
        return i < len(self.breaks) and self.breaks[i] == h

    def cycle_at(self, h: int) -> tuple:
        """Interval (a, b) of the cycle containing half-position h in its interior."""
        i = bisect.bisect_right(self.breaks, h)
        if i == 0 or i == len(self.breaks) or self.breaks[i - 1] == h:
            raise ValueError("half-position %d is a break" % h)
        return self.breaks[i - 1], self.breaks[i]

    def cycle_index_at(self, h: int) -> int:
        """Index of the cycle containing h in its interior."""
        i = bisect.bisect_right(self.breaks, h)
        if i == 0 or i == len(self.breaks) or self.breaks[i - 1] == h:
            raise ValueError("half-position %d is a break" % h)
        return i - 1

    def render(self) -> str:
        s = set(self.breaks)
        return "".join("#" if h in s else "." for h in range(self.n + 1))

    @classmethod
    def parse(cls, text: str) -> "ClassString":
        text = text.strip()
        return cls(len(text) - 1, tuple(h for h, c in enumerate(text) if c == "#"))

    def mirror(self) -> "ClassString":
        return ClassString(self.n, tuple(self.n - h for h in self.breaks))


def mu_class(phi: ClassString) -> CycleType:
    return CycleType.from_lengths(phi.lengths(), phi.n)


def c_break_str(phi: ClassString) -> int:
    return len(phi.breaks)


@dataclass(frozen=True)
class StringTriple:
    phis: tuple
    labels: tuple = ()  # sorted ((h, label), ...), empty labels omitted

    def __post_init__(self):
        phis = tuple(self.phis)
        if len(phis) != 3:
            raise ValueError("a string triple has three strings")
        if len({p.n for p in phis}) != 1:
            raise ValueError("strings of a triple must have equal length")
        object.__setattr__(self, "phis", phis)
        lab = self.labels
        if isinstance(lab, dict):
            lab = lab.items()
        lab = tuple(sorted((int(h), l) for h, l in lab if l is not None))
        n = phis[0].n
        for h, _ in lab:
            if not 0 <= h <= n:
                raise ValueError("label at %d out of range" % h)
        object.__setattr__(self, "labels", lab)
        object.__setattr__(self, "_lab", dict(lab))
        sets = [set(p.breaks) for p in phis]
        object.__setattr__(self, "_sets", sets)

    @property
    def n(self) -> int:
        return self.phis[0].n

    def label(self, h: int):
        return self._lab.get(h)

    def label_map(self) -> dict:
        return dict(self._lab)

    def kind(self, h: int):
        lab = self._lab.get(h)
        return None if lab is None else lab.kind

    def cb(self, h: int) -> int:
        """Column break count; 0 outside the string."""
        return sum(1 for s in self._sets if h in s)

    def breaks_at(self, h: int) -> tuple:
        return tuple(i + 1 for i, s in enumerate(self._sets) if h in s)

    def columns(self, count: int) -> list:
        hs = set().union(*self._sets)
        return sorted(h for h in hs if self.cb(h) == count)

    def full_columns(self) -> list:
        return sorted(set(self.phis[0].breaks) & set(self.phis[1].breaks) & set(self.phis[2].breaks))

    def classes(self) -> tuple:
        return tuple(mu_class(p) for p in self.phis)

    def nu(self) -> int:
        return nu(*self.classes())

    def with_labels(self, labels) -> "StringTriple":
        return StringTriple(self.phis, labels)

    def mirror(self) -> "StringTriple":
        n = self.n
        phis = (self.phis[1].mirror(), self.phis[0].mirror(), self.phis[2].mirror())
        return StringTriple(phis, {n - h: mirror_label(l) for h, l in self.labels})

    # serialisation
    def render(self) -> str:
        lines = [p.render() for p in self.phis]
        toks = [self._lab[h].token() if h in self._lab else "-" for h in range(self.n + 1)]
        lines.append(" ".join(toks))
        return "\n".join(lines)

    @classmethod
    def parse(cls, text: str) -> "StringTriple":
        rows = [r for r in text.strip().splitlines() if r.strip()]
        phis = tuple(ClassString.parse(r) for r in rows[:3])
        labels = {}
        if len(rows) > 3:
            for h, tok in enumerate(rows[3].split()):
                lab = parse_label(tok)
                if lab is not None:
                    labels[h] = lab
        return cls(phis, labels)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "breaks": [list(p.breaks) for p in self.phis],
            "labels": [[h, l.token()] for h, l in self.labels],
        }

    @classmethod
    def from_json(cls, d: dict) -> "StringTriple":
        n = d["n"]
        phis = tuple(ClassString(n, tuple(b)) for b in d["breaks"])
        return cls(phis, {h: parse_label(t) for h, t in d["labels"]})


def c_break_col(t: StringTriple, a: int) -> int:
    if not 0 <= a <= t.n:
        raise ValueError("half-position %d out of range 0..%d" % (a, t.n))
    return t.cb(a)


def triple_from_lengths(l1, l2, l3, labels=None) -> StringTriple:
    return StringTriple(tuple(ClassString.from_lengths(x) for x in (l1, l2, l3)), labels or {})


def restrict(t: StringTriple, a1: int, a2: int) -> StringTriple:
    """Sub-triple on [a1, a2]; both ends must be full-break columns."""
    if not a1 < a2:
        raise ValueError("need a1 < a2")
    if t.cb(a1) != 3 or t.cb(a2) != 3:
        raise ValueError("restriction ends must be full-break columns")
    phis = tuple(ClassString(a2 - a1, tuple(h - a1 for h in p.breaks if a1 <= h <= a2))
                 for p in t.phis)
    return StringTriple(phis, {h - a1: l for h, l in t.labels if a1 <= h <= a2})


def glue(parts: Sequence[StringTriple]) -> StringTriple:
    """Concatenate triples, identifying each boundary half-position."""
    breaks = [[0], [0], [0]]
    labels = {}
    off = 0
    for part in parts:
        for i, p in enumerate(part.phis):
            breaks[i].extend(off + h for h in p.breaks[1:])
        for h, l in part.labels:
            if h + off in labels and labels[h + off] != l:
                raise ValueError("conflicting labels at glued boundary %d" % (h + off))
            labels[h + off] = l
        off += part.n
    return StringTriple(tuple(ClassString(off, tuple(b)) for b in breaks), labels)


# ---------------------------------------------------------------- elements

@dataclass(frozen=True)
class ElementString:
    """Values laid out by position; cycles are the runs between breaks."""

    eta: tuple
    phi: ClassString

    def __post_init__(self):
        eta = tuple(self.eta)
        object.__setattr__(self, "eta", eta)
        if len(eta) != self.phi.n:
            raise ValueError("eta length differs from string length")
        if len(set(eta)) != len(eta):
            raise ValueError("eta is not injective")

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]]) -> "ElementString":
        eta = [x for c in cycles for x in c]
        return cls(tuple(eta), ClassString.from_lengths(len(c) for c in cycles))

    @property
    def cycles(self) -> list:
        b = self.phi.breaks
        return [self.eta[b[k]:b[k + 1]] for k in range(len(b) - 1)]

    def mirror(self) -> "ElementString":
        return ElementString(self.eta[::-1], self.phi.mirror())


def mu_elem(e: ElementString, n: int | None = None) -> Perm:
    """The permutation with one cycle per run of e; degree defaults to max value."""
    if n is None:
        n = max(e.eta) if e.eta else 0
    return Perm.from_cycles(e.cycles, n)


@dataclass(frozen=True)
class Solution:
    """Three element strings over a common string triple."""

    strings: tuple
    triple: StringTriple

    def __post_init__(self):
        strings = tuple(self.strings)
        object.__setattr__(self, "strings", strings)
        for e, p in zip(strings, self.triple.phis):
            if e.phi != p:
                raise ValueError("element string breaks differ from the triple")
        vals = [set(e.eta) for e in strings]
        if not vals[0] == vals[1] == vals[2]:
            raise ValueError("the three strings use different value sets")

    @classmethod
    def from_cycles(cls, c1, c2, c3, labels=None) -> "Solution":
        es = tuple(ElementString.from_cycles(c) for c in (c1, c2, c3))
        return cls(es, StringTriple(tuple(e.phi for e in es), labels or {}))

    @property
    def n(self) -> int:
        return self.triple.n

    @property
    def values(self) -> set:
        return set(self.strings[0].eta)

    def cycles(self, i: int) -> list:
        return self.strings[i].cycles

    def perms(self, degree: int | None = None) -> tuple:
        if degree is None:
            degree = max(self.values) if self.n else 0
        return tuple(mu_elem(e, degree) for e in self.strings)

    def product_holds(self) -> bool:
        a1, a2, a3 = self.perms()
        return a1 * a2 == a3

    def first_product_mismatch(self):
        """First value x with (a1 a2)(x) != a3(x), or None."""
        a1, a2, a3 = self.perms()
        p = a1 * a2
        for x in sorted(self.values):
            if p(x) != a3(x):
                return x
        return None

    def mirror(self) -> "Solution":
        s = self.strings
        return Solution((s[1].mirror(), s[0].mirror(), s[2].mirror()), self.triple.mirror())

    def with_labels(self, labels) -> "Solution":
        return Solution(self.strings, self.triple.with_labels(labels))

    def to_json(self) -> dict:
        d = self.triple.to_json()
        d["cycles"] = [[list(c) for c in e.cycles] for e in self.strings]
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Solution":
        t = StringTriple.from_json(d)
        return cls.from_cycles(*d["cycles"], labels=t.label_map())


def relabel_solution(sol: Solution, mapping: dict) -> Solution:
    es = tuple(ElementString(tuple(mapping[x] for x in e.eta), e.phi) for e in sol.strings)
    return Solution(es, sol.triple)


# ---------------------------------------------------------------- predicates

@dataclass
class PropResult:
    prop: str
    ok: bool
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"prop": self.prop, "ok": self.ok, "violations": self.violations[:20],
                "notes": self.notes[:20]}


def _in(t, h):
    return 0 <= h <= t.n


def _p_labels(t):
    bad = []
    for h, l in t.labels:
        c = t.cb(h)
        if l.kind == "N" and c != 0:
            bad.append({"pos": h, "label": l.token(), "cbreak": c})
        elif l.kind in "LTSP" and c != 3:
            bad.append({"pos": h, "label": l.token(), "cbreak": c})
    return bad


def _p_break(t, k):
    bad = []
    for i, p in enumerate(t.phis):
        b = p.breaks
        for x, y in zip(b, b[1:]):
            if y - x <= k:
                bad.append({"string": i + 1, "pos": [x, y]})
    return bad


def _p_nest(t, k):
    bad = []
    for h, l in t.labels:
        if l.kind == "N":
            for r in range(-k, k + 1):
                if _in(t, h + r) and t.cb(h + r):
                    bad.append({"pos": h, "offset": r})
    return bad


def _p_ledge_k(t, k, prime=False):
    bad = []
    for h, l in t.labels:
        if l.kind != "L":
            continue
        for r in range(-k, k + 1):
            if r == 0 or not _in(t, h + r) or not t.cb(h + r):
                continue
            if prime and abs(r) == 1 and t.kind(h + r) == "P":
                continue
            bad.append({"pos": h, "offset": r})
    return bad


def _p_ledge(t):
    bad = []
    for h in t.columns(2):
        for r in (-1, 1):
            if _in(t, h + r) and t.cb(h + r):
                bad.append({"pos": h, "offset": r})
    return bad


def _p_break_trap(t, k):
    bad = []
    for i, p in enumerate(t.phis):
        b = p.breaks
        for x in range(len(b)):
            for y in range(x + 1, len(b)):
                d = b[y] - b[x]
                if d > k:
                    break
                if d == 2:
                    bad.append({"string": i + 1, "pos": [b[x], b[y]], "why": "distance 2"})
                elif t.kind(b[x]) != "T" and t.kind(b[y]) != "T":
                    bad.append({"string": i + 1, "pos": [b[x], b[y]]})
    return bad


_TRAP_CASES = (
    (1, -5, (-4, -3, -2, -1, 2, 3)),
    (-1, -6, (-5, -4, -3, -2, 1, 2)),
    (1, 6, (-2, -1, 2, 3, 4, 5)),
    (-1, 5, (-3, -2, 1, 2, 3, 4)),
)


def _trap_case(t, a, eps, eps2, rs):
    def col(h):
        if not _in(t, h):
            return None
        return t.cb(h), t.kind(h)
    if col(a + eps) != (3, "T") or col(a + eps2) != (2, None):
        return False
    return all(col(a + r) == (0, None) for r in rs)


def _p_trap(t):
    bad, notes = [], []
    for h, l in t.labels:
        if l.kind != "T":
            continue
        hits = [k + 1 for k, c in enumerate(_TRAP_CASES) if _trap_case(t, h, *c)]
        if not hits:
            bad.append({"pos": h})
        elif len(hits) > 1:
            notes.append({"pos": h, "patterns": hits})
    return bad, notes


def _p_trap_prime(t):
    bad = []
    twos = t.columns(2)
    for x, y in zip(twos, twos[1:]):
        if not any(t.cb(b) >= 1 for b in range(x + 1, y)):
            bad.append({"pos": [x, y]})
    return bad


def _p_sub(t, prime=False):
    bad = []
    full = t.full_columns()
    for a1, a2 in zip(full, full[1:]):
        if a2 - a1 == 2:
            bad.append({"pos": [a1, a2], "why": "restriction of length 2"})
        inner = [b for b in range(a1 + 1, a2) if t.cb(b)]
        if not inner:
            continue
        if len(inner) > 1 or t.cb(inner[0]) != 2:
            bad.append({"pos": [a1, a2], "why": "interior breaks", "at": inner})
            continue
        b0 = inner[0]
        lo, hi = min(b0 - a1, a2 - b0), max(b0 - a1, a2 - b0)
        if lo < 2:
            bad.append({"pos": [a1, a2], "b0": b0, "why": "b0 too close to an end"})
        if prime:
            if a2 - a1 < 7:
                bad.append({"pos": [a1, a2], "b0": b0, "why": "restriction shorter than 7"})
            for a in (a1, a2):
                if abs(b0 - a) <= 3 and t.kind(a) == "P":
                    bad.append({"pos": [a1, a2], "b0": b0, "why": "parity label near b0"})
        elif hi < 5:
            bad.append({"pos": [a1, a2], "b0": b0, "why": "both sides shorter than 5"})
    return bad


def restriction_nu(t: StringTriple, a1: int, a2: int) -> int:
    return restrict(t, a1, a2).nu()


def _odd_count(t, a1, a2):
    # number of odd permutations among the three restricted strings
    k = 0
    for p in t.phis:
        evens = sum(1 for x, y in zip(p.breaks, p.breaks[1:]) if a1 <= x and y <= a2 and (y - x) % 2 == 0)
        k += evens % 2
    return k


def _p_parity(t):
    # nu odd on a restriction iff an even number of the restricted strings is odd;
    # that count is additive mod 2, so consecutive pieces decide every pair
    bad = []
    full = t.full_columns()
    for a1, a2 in zip(full, full[1:]):
        if _odd_count(t, a1, a2) % 2:
            bad.append({"pos": [a1, a2], "nu": restriction_nu(t, a1, a2)})
    return bad


def _p_parity_prime(t):
    bad = []
    spades = [h for h, l in t.labels if l.kind == "P"]
    for x, y in zip(spades, spades[1:]):
        if not any(t.cb(b) == 3 and t.kind(b) != "P" for b in range(x + 1, y)):
            bad.append({"pos": [x, y]})
    return bad


def _p_nu(t):
    v = t.nu()
    return [] if v % 2 else [{"nu": v}]


PROP_IDS = ("P_labels", "P_break", "P_N", "P_L", "P_Lk", "P_breakT", "P_T", "P_Tprime",
            "P_sub", "P_Lprime", "P_subprime", "P_parityRestrict", "P_Pprime", "nu_odd")


def check_prop(t: StringTriple, prop: str, k: int | None = None) -> PropResult:
    """Evaluate one named predicate; never raises on a well-formed triple.

    ``P_L`` without ``k`` is the isolation of two-break columns; with ``k`` it is
    the distance condition around ledge labels.
    """
    notes = []
    if prop == "P_labels":
        bad = _p_labels(t)
    elif prop == "P_break":
        bad = _p_break(t, k)
    elif prop == "P_N":
        bad = _p_nest(t, k)
    elif prop == "P_L" and k is None:
        bad = _p_ledge(t)
    elif prop in ("P_L", "P_Lk"):
        bad = _p_ledge_k(t, k)
    elif prop == "P_breakT":
        bad = _p_break_trap(t, k)
    elif prop == "P_T":
        bad, notes = _p_trap(t)
    elif prop == "P_Tprime":
        bad = _p_trap_prime(t)
    elif prop == "P_sub":
        bad = _p_sub(t)
    elif prop == "P_Lprime":
        bad = _p_ledge_k(t, k, prime=True)
    elif prop == "P_subprime":
        bad = _p_sub(t, prime=True)
    elif prop == "P_parityRestrict":
        bad = _p_parity(t)
    elif prop == "P_Pprime":
        bad = _p_parity_prime(t)
    elif prop == "nu_odd":
        bad = _p_nu(t)
    else:
        raise ValueError("unknown property %r" % prop)
    name = prop if k is None else "%s(%d)" % (prop, k)
    return PropResult(name, not bad, bad, notes)


_ALLOWED_KINDS = {3: "N", 4: "NL", 5: "NLT", 6: "NLTS", 7: "NLTSP"}

BATTERIES = {
    3: [("P_labels", None), ("P_break", 31), ("P_N", 10), ("nu_odd", None)],
    4: [("P_labels", None), ("P_break", 27), ("P_N", 8), ("P_Lk", 27), ("P_L", None),
        ("nu_odd", None)],
    5: [("P_labels", None), ("P_breakT", 27), ("P_N", 2), ("P_Lk", 21), ("P_L", None),
        ("P_T", None), ("P_Tprime", None), ("nu_odd", None)],
    6: [("P_labels", None), ("P_N", 1), ("P_Lk", 20), ("P_sub", None), ("nu_odd", None)],
    7: [("P_Lprime", 19), ("P_subprime", None), ("P_parityRestrict", None),
        ("P_Pprime", None)],
}


def check_stage(t: StringTriple, stage: int) -> list:
    """Run the membership battery for stage 3..7; returns PropResults."""
    out = [check_prop(t, p, k) for p, k in BATTERIES[stage]]
    allowed = _ALLOWED_KINDS[stage]
    bad = [{"pos": h, "label": l.token()} for h, l in t.labels if l.kind not in allowed]
    out.append(PropResult("label_alphabet", not bad, bad))
    return out


def stage_ok(t: StringTriple, stage: int) -> bool:
    return all(r.ok for r in check_stage(t, stage))


def dumps_solution(sol: Solution) -> str:
    return json.dumps(sol.to_json(), sort_keys=True)


def full_restrictions(t: StringTriple) -> list:
    """Consecutive pairs of full-break columns."""
    full = t.full_columns()
    return list(zip(full, full[1:]))
