"""Small-scale ground truth: class enumeration, exhaustive coverage and witness search."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .lifting import LiftError
from .perm_core import (CycleType, Perm, alt_half, canonical_element, class_size, class_splits,
                        conjugator as _any_conjugator, is_large_class, log_class_size, parity)
from .reductions import PreconditionError, RELAXED, ReductionConfig

ENUM_CAP = 9


class SearchExhausted(RuntimeError):
    """A bounded search found nothing; this is not a proof that nothing exists."""


@dataclass(frozen=True)
class ClassSpec:
    """A conjugacy class of Sym(n), or one class of Alt(n) when ``half`` is given."""

    ct: CycleType
    group: str = "sym"
    half: str = "whole"

    def __post_init__(self):
        if self.group not in ("sym", "alt"):
            raise ValueError("group must be 'sym' or 'alt'")
        if self.half not in ("whole", "plus", "minus"):
            raise ValueError("half must be 'whole', 'plus' or 'minus'")
        if self.group == "alt" and parity(self.ct) != "even":
            raise PreconditionError("class.alt", "class %s is not inside Alt(n)" % self.ct)
        if self.half != "whole" and not (self.group == "alt" and class_splits(self.ct)):
            raise ValueError("a half was requested for a class that does not split")

    @property
    def n(self) -> int:
        return self.ct.n

    @property
    def split(self) -> bool:
        return self.half != "whole"

    def contains(self, p: Perm) -> bool:
        if p.cycle_type() != self.ct:
            return False
        return not self.split or alt_half(p) == self.half

    def representative(self) -> Perm:
        p = canonical_element(self.ct)
        if self.half == "minus":
            p = p ** _transposition(self.n)
        return p

    def size(self) -> int:
        s = class_size(self.ct)
        return s // 2 if self.split else s

    def random_element(self, rng: random.Random) -> Perm:
        p = self.representative() ** random_perm(rng, self.n)
        if self.split and alt_half(p) != self.half:
            p = p ** _transposition(self.n)
        return p

    def elements(self, cap: int = ENUM_CAP):
        return enumerate_class(self.ct, self.group, self.half, cap)


def alt_spec(ct: CycleType, half: str = "plus") -> ClassSpec:
    """The Alt(n) class of ct; ``half`` only matters when the class splits."""
    return ClassSpec(ct, "alt", half if class_splits(ct) else "whole")


def _transposition(n):
    return Perm.from_cycles([(1, 2)], n)


def random_perm(rng: random.Random, n: int) -> Perm:
    img = list(range(1, n + 1))
    rng.shuffle(img)
    return Perm(img)


# ---------------------------------------------------------------- enumeration

def _class_elements(ct: CycleType):
    n = ct.n
    lengths = dict(ct.counts)

    def rec(free, img):
        if not free:
            yield tuple(img)
            return
        a = free[0]
        rest = free[1:]
        for length in sorted(lengths):
            if not lengths[length]:
                continue
            lengths[length] -= 1
            for others in itertools.combinations(rest, length - 1):
                left = [x for x in rest if x not in others]
                for order in itertools.permutations(others):
                    cyc = (a,) + order
                    for x, y in zip(cyc, cyc[1:] + cyc[:1]):
                        img[x - 1] = y
                    yield from rec(left, img)
            lengths[length] += 1

    for img in rec(list(range(1, n + 1)), list(range(1, n + 1))):
        yield Perm(img)


def enumerate_class(ct: CycleType, group: str = "sym", half: str = "whole", cap: int = ENUM_CAP):
    """Every element of the class, each exactly once."""
    if ct.n > cap:
        raise ValueError("n=%d exceeds the enumeration cap %d" % (ct.n, cap))
    spec = ClassSpec(ct, group, half)
    for p in _class_elements(ct):
        if not spec.split or alt_half(p) == half:
            yield p


# ---------------------------------------------------------------- coverage

@dataclass
class Coverage:
    subset: bool
    witness: tuple | None = None
    missing: list = field(default_factory=list)


def coverage_check(c1: ClassSpec, c2: ClassSpec, c3: ClassSpec, cap: int = ENUM_CAP) -> Coverage:
    """Decide whether c1 c2 contains c3.

    Products of classes are unions of classes, so it is enough to fix one
    a3 in c3 and look for a1 in c1 with a1^-1 a3 in c2.
    """
    a3 = c3.representative()
    for a1 in c1.elements(cap):
        a2 = ~a1 * a3
        if c2.contains(a2):
            return Coverage(True, (a1, a2, a3))
    return Coverage(False, None, [a3])


def coverage_brute(c1: ClassSpec, c2: ClassSpec, c3: ClassSpec, cap: int = ENUM_CAP) -> bool:
    """Same verdict by forming every product a1 a2."""
    prods = {a1 * a2 for a1 in c1.elements(cap) for a2 in c2.elements(cap)}
    return all(a3 in prods for a3 in c3.elements(cap))


# ---------------------------------------------------------------- O_m searches

def om_class(n: int, m: int) -> CycleType:
    return CycleType.from_lengths([m], n)


def om_witness_search(c1: ClassSpec, c2: ClassSpec, m: int, budget: int = 20000,
                      rng: random.Random | None = None, cap: int = ENUM_CAP):
    """(a1, a2) with a1 in c1, a2 in c2 and a1 a2 one m-cycle plus fixed points.

    Exhaustive over c2 when n <= cap, otherwise ``budget`` random tries.
    Returns None when nothing was found.
    """
    target = om_class(c1.n, m)
    a1 = c1.representative()
    if c1.n <= cap:
        pool = c2.elements(cap)
    else:
        rng = rng or random.Random(0)
        pool = (c2.random_element(rng) for _ in range(budget))
    for a2 in pool:
        if (a1 * a2).cycle_type() == target:
            return a1, a2
    return None


def odd_m(n: int) -> int:
    """The odd number in {n-3, n-2}."""
    return n - 3 if (n - 3) % 2 else n - 2


def four_inclusion(c1: ClassSpec, c2: ClassSpec, m: int | None = None, g: Perm | None = None,
                   budget: int = 20000, rng=None) -> dict:
    """Which of c1 c2, c1 c2^g, c1^g c2, c1^g c2^g contain O_m, with g odd.

    O_m is fixed by conjugation with g, so the first and fourth answers agree,
    as do the second and third; if either class is g-stable all four agree.
    """
    n = c1.n
    m = odd_m(n) if m is None else m
    g = g or _transposition(n)
    if g.is_even():
        raise ValueError("g must be an odd permutation")

    def flip(c):
        if not c.split:
            return c
        return ClassSpec(c.ct, c.group, "minus" if c.half == "plus" else "plus")

    names = ("c1c2", "c1c2g", "c1gc2", "c1gc2g")
    pairs = {"c1c2": (c1, c2), "c1c2g": (c1, flip(c2)), "c1gc2": (flip(c1), c2),
             "c1gc2g": (flip(c1), flip(c2))}
    same = {"c1c2g": "c1c2", "c1gc2": "c1c2", "c1gc2g": "c1c2"} if not (c1.split and c2.split) \
        else {"c1gc2g": "c1c2", "c1gc2": "c1c2g"}
    out, tests = {}, 0
    for name in names:
        if name in same and same[name] in out:
            out[name] = out[same[name]]
            continue
        a, b = pairs[name]
        out[name] = om_witness_search(a, b, m, budget, rng) is not None
        tests += 1
    out["tests"] = tests
    out["m"] = m
    return out


# ---------------------------------------------------------------- conjugators

def conjugator(p: Perm, q: Perm, within_alt: bool = False) -> Perm | None:
    """g with p ** g == q.

    With ``within_alt`` the conjugator must be even; None means p and q lie in
    different halves of a split class.
    """
    if p.cycle_type() != q.cycle_type():
        raise ValueError("cycle types differ: %s vs %s" % (p.cycle_type(), q.cycle_type()))
    g = _any_conjugator(p, q)
    if not within_alt or g.is_even():
        return g
    z = _odd_centraliser(p)
    if z is None:
        return None
    return z * g


def _odd_centraliser(p: Perm) -> Perm | None:
    """An odd permutation commuting with p, if there is one."""
    cyc = p.cycles(fixed=True)
    for c in cyc:
        if len(c) % 2 == 0:
            return Perm.from_cycles([c], p.n)
    by_len = {}
    for c in cyc:
        by_len.setdefault(len(c), []).append(c)
    for length, cs in by_len.items():
        if len(cs) >= 2:
            a, b = cs[0], cs[1]
            return Perm.from_cycles([(x, y) for x, y in zip(a, b)], p.n)
    return None


# ---------------------------------------------------------------- products with a target

@dataclass
class ProductResult:
    perms: tuple
    strategy: str
    notes: list = field(default_factory=list)


def _check_product(c1, c2, c3, g, perms):
    x1, x2, x3 = perms
    if x1 * x2 * x3 != g:
        raise AssertionError("product check failed")
    for c, x in zip((c1, c2, c3), perms):
        if not c.contains(x):
            raise AssertionError("class membership check failed")


def _strategy_om(c1, c2, c3, g, budget, rng):
    n = g.n
    m = odd_m(n)
    target = om_class(n, m)
    pair = om_witness_search(c1, c2, m, budget, rng)
    if pair is None:
        raise SearchExhausted("no pair of c1, c2 multiplies into O_%d" % m)
    for _ in range(budget):
        x3 = c3.random_element(rng)
        h = g * ~x3
        if h.cycle_type() == target:
            break
    else:
        raise SearchExhausted("no element of c3 moves the target into O_%d" % m)
    a1, a2 = pair
    x = conjugator(a1 * a2, h, within_alt=True)
    if x is None:
        raise SearchExhausted("no even conjugator onto the target")
    return a1 ** x, a2 ** x, x3


def _strategy_pipeline(c1, c2, c3, g, budget, rng, config):
    from .pipeline import solve
    last = None
    for k in range(max(1, min(budget, 8))):
        x3 = c3.representative() if k == 0 else c3.random_element(rng)
        h = g * ~x3
        ct = h.cycle_type()
        if parity(ct) != "even":
            raise PreconditionError("product.parity", "target and c3 differ in parity")
        hh = alt_half(h) if class_splits(ct) else "plus"
        halves = (c1.half if c1.split else "plus", c2.half if c2.split else "plus", hh)
        try:
            w = solve(c1.ct, c2.ct, ct, "alt", halves, config)
        except (PreconditionError, LiftError) as e:
            last = e
            continue
        a1, a2, a3 = w.perms
        x = conjugator(a3, h, within_alt=True)
        if x is None:
            last = SearchExhausted("no even conjugator onto the target")
            continue
        return a1 ** x, a2 ** x, x3
    raise last if last is not None else SearchExhausted("pipeline strategy found nothing")


def _strategy_search(c1, c2, c3, g, budget, rng):
    """Random a1, a3; accept when a1^-1 g a3^-1 lies in c2."""
    for _ in range(budget):
        x1 = c1.random_element(rng)
        x3 = c3.random_element(rng)
        x2 = ~x1 * g * ~x3
        if c2.contains(x2):
            return x1, x2, x3
    raise SearchExhausted("random search over %d pairs found nothing" % budget)


def find_witness_product(c1: ClassSpec, c2: ClassSpec, c3: ClassSpec, g: Perm,
                         config: ReductionConfig = RELAXED, budget: int = 20000,
                         seed: int = 0) -> ProductResult:
    """c1 c2 c3 = g with each c_i in its class, verified before returning.

    A large target class goes through O_m first, a small one through the
    reduction pipeline; the other route and plain search are fallbacks.
    """
    for c in (c1, c2, c3):
        if c.group != "alt":
            raise PreconditionError("product.group", "classes must be Alt(n) classes")
    if not g.is_even():
        raise PreconditionError("product.target", "target is not in Alt(n)")
    rng = random.Random(seed)
    large = is_large_class(g.cycle_type(), 2 * config.delta / 3, "alt")
    order = ["om", "pipeline"] if large else ["pipeline", "om"]
    order.append("search")
    notes = []
    for name in order:
        try:
            if name == "om":
                perms = _strategy_om(c1, c2, c3, g, budget, rng)
            elif name == "pipeline":
                perms = _strategy_pipeline(c1, c2, c3, g, budget, rng, config)
            else:
                perms = _strategy_search(c1, c2, c3, g, budget, rng)
        except (SearchExhausted, PreconditionError, LiftError) as e:
            notes.append("%s: %s" % (name, e))
            continue
        _check_product(c1, c2, c3, g, perms)
        return ProductResult(perms, name, notes)
    raise SearchExhausted("; ".join(notes))


def find_triple(c1: ClassSpec, c2: ClassSpec, c3: ClassSpec, budget: int = 20000, seed: int = 0,
                cap: int = ENUM_CAP):
    """a1 a2 = a3 by search: exhaustive over c1 for n <= cap, random otherwise."""
    a3 = c3.representative()
    if c1.n <= cap:
        cov = coverage_check(c1, c2, c3, cap)
        if cov.subset:
            return cov.witness
        return None
    rng = random.Random(seed)
    for _ in range(budget):
        a1 = c1.random_element(rng)
        a2 = ~a1 * a3
        if c2.contains(a2):
            return a1, a2, a3
    raise SearchExhausted("random search over %d elements found nothing" % budget)


def log_size_matches(ct: CycleType) -> bool:
    return math.isclose(math.exp(log_class_size(ct)), class_size(ct), rel_tol=1e-9)
