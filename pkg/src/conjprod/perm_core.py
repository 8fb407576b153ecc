"""Permutations of {1..n}, cycle types and class-level counting.

Products are read left to right: ``p * q`` applies ``p`` first and then
``q``, so ``(p * q)(x) == q(p(x))``.  Conjugation is ``p ** g = g^-1 p g``.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels


class Perm:
    """A bijection on {1..n}, stored as 0-based images."""

    __slots__ = ("_img",)

    def __init__(self, images: Sequence[int]):
        img = tuple(int(x) - 1 for x in images)
        n = len(img)
        if sorted(img) != list(range(n)):
            raise ValueError("images do not form a permutation of 1..%d" % n)
        self._img = img

    @classmethod
    def _raw(cls, img: tuple) -> "Perm":
        p = cls.__new__(cls)
        p._img = img
        return p

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int | None = None) -> "Perm":
        cycles = [tuple(c) for c in cycles]
        if n is None:
            n = max((max(c) for c in cycles if c), default=0)
        img = list(range(n))
        seen = set()
        for c in cycles:
            for x in c:
                if not 1 <= x <= n:
                    raise ValueError("value %d out of range 1..%d" % (x, n))
                if x in seen:
                    raise ValueError("repeated value %d" % x)
                seen.add(x)
            for a, b in zip(c, c[1:] + c[:1]):
                img[a - 1] = b - 1
        return cls._raw(tuple(img))

    @classmethod
    def from_mapping(cls, mapping: dict, n: int) -> "Perm":
        """Build from a partial map; unmapped points are fixed."""
        img = list(range(n))
        for a, b in mapping.items():
            img[a - 1] = b - 1
        if len(set(img)) != n:
            raise ValueError("mapping is not injective")
        return cls._raw(tuple(img))

    @property
    def n(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple:
        return tuple(x + 1 for x in self._img)

    def __call__(self, x: int) -> int:
        return self._img[x - 1] + 1

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def __invert__(self) -> "Perm":
        return inverse(self)

    def __pow__(self, k):
        if isinstance(k, Perm):
            return conjugate(self, k)
        if k < 0:
            return inverse(self) ** (-k)
        out = Perm.identity(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, Perm) and self._img == other._img

    def __hash__(self):
        return hash(self._img)

    def __repr__(self):
        return "Perm(%s, n=%d)" % (format_cycles(self), self.n)

    def __str__(self):
        return format_cycles(self)

    def cycles(self, fixed: bool = False) -> list[tuple]:
        """Cycles as 1-based tuples, each starting at its least point."""
        out = []
        for c in kernels.cycles(self._img):
            if len(c) > 1 or fixed:
                out.append(tuple(x + 1 for x in c))
        return out

    def cycle_type(self) -> "CycleType":
        return CycleType.from_lengths(kernels.cycle_lengths(self._img), self.n)

    def is_even(self) -> bool:
        return kernels.parity(self._img) == 0

    def support(self) -> set:
        return {i + 1 for i, x in enumerate(self._img) if x != i}

    def extend(self, n: int) -> "Perm":
        """The same permutation viewed in Sym(n), n >= self.n."""
        if n < self.n:
            raise ValueError("cannot shrink degree")
        return Perm._raw(self._img + tuple(range(self.n, n)))


def _check_degree(p: Perm, q: Perm) -> None:
    if p.n != q.n:
        raise ValueError("degree mismatch: %d vs %d" % (p.n, q.n))


def compose(p: Perm, q: Perm) -> Perm:
    """p then q."""
    _check_degree(p, q)
    return Perm._raw(kernels.compose(p._img, q._img))


def compose_all(perms: Iterable[Perm]) -> Perm:
    perms = list(perms)
    out = perms[0]
    for q in perms[1:]:
        out = compose(out, q)
    return out


def inverse(p: Perm) -> Perm:
    return Perm._raw(kernels.inverse(p._img))


def conjugate(p: Perm, g: Perm) -> Perm:
    """p^g = g^-1 p g, i.e. the map g(x) -> g(p(x))."""
    _check_degree(p, g)
    return Perm._raw(kernels.conjugate(p._img, g._img))


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths of a permutation of degree n, fixed points included."""

    n: int
    counts: tuple  # ((length, multiplicity), ...) sorted by length, multiplicities > 0

    def __post_init__(self):
        if sum(length * m for length, m in self.counts) != self.n:
            raise ValueError("cycle lengths do not add up to n=%d" % self.n)
        for length, m in self.counts:
            if length < 1 or m < 1:
                raise ValueError("bad cycle count entry (%r, %r)" % (length, m))

    @classmethod
    def from_lengths(cls, lengths: Iterable[int], n: int | None = None) -> "CycleType":
        c = Counter(int(x) for x in lengths)
        total = sum(k * v for k, v in c.items())
        if n is None:
            n = total
        if total > n:
            raise ValueError("cycle lengths exceed n=%d" % n)
        if total < n:
            c[1] += n - total
        return cls(n, tuple(sorted(c.items())))

    @classmethod
    def from_counts(cls, counts: dict, n: int | None = None) -> "CycleType":
        lengths = []
        for k, v in counts.items():
            lengths.extend([k] * v)
        return cls.from_lengths(lengths, n)

    def count(self, length: int) -> int:
        return dict(self.counts).get(length, 0)

    def as_dict(self) -> dict:
        return dict(self.counts)

    def lengths(self) -> list:
        """All cycle lengths in decreasing order."""
        out = []
        for length, m in reversed(self.counts):
            out.extend([length] * m)
        return out

    @property
    def num_cycles(self) -> int:
        return sum(m for _, m in self.counts)

    @property
    def largest(self) -> int:
        return self.counts[-1][0] if self.counts else 0

    def is_even(self) -> bool:
        return parity(self) == "even"

    def __str__(self):
        return format_cycle_type(self)


def cycle_structure(p: Perm) -> CycleType:
    return p.cycle_type()


def parity(ct: CycleType) -> str:
    """'even' iff the number of even-length cycles is even."""
    evens = sum(m for length, m in ct.counts if length % 2 == 0)
    return "even" if evens % 2 == 0 else "odd"


def class_splits(ct: CycleType) -> bool:
    """Whether the Sym(n)-class of an even type is a union of two Alt(n)-classes."""
    if parity(ct) != "even":
        raise ValueError("class_splits needs an even cycle type")
    if ct.n <= 1:  # a one-element class cannot split
        return False
    return all(length % 2 == 1 and m == 1 for length, m in ct.counts)


def class_size(ct: CycleType) -> int:
    """Exact size of the Sym(n)-class."""
    denom = 1
    for length, m in ct.counts:
        denom *= length ** m * math.factorial(m)
    return math.factorial(ct.n) // denom


def log_class_size(ct: CycleType) -> float:
    """Natural log of the Sym(n)-class size."""
    out = math.lgamma(ct.n + 1)
    for length, m in ct.counts:
        out -= m * math.log(length) + math.lgamma(m + 1)
    return out


def is_large_class(ct: CycleType, delta: float, group: str = "sym") -> bool:
    """Exact test of |C| >= |G|^(1-delta) for the Sym- or Alt-class of ct."""
    size = Fraction(class_size(ct))
    order = Fraction(math.factorial(ct.n))
    if group == "alt":
        order /= 2
        if class_splits(ct):
            size /= 2
    # compare logs with a safety margin, then confirm exactly when borderline
    lhs = math.log(size)
    rhs = (1 - delta) * math.log(order)
    if abs(lhs - rhs) > 1e-9 * max(1.0, abs(rhs)):
        return lhs >= rhs
    f = Fraction(delta).limit_denominator(10 ** 6)
    # |C|^q >= |G|^(q - p) with delta = p/q
    return size ** f.denominator >= order ** (f.denominator - f.numerator)


def cycle_count_threshold(ct: CycleType, delta: float) -> bool:
    """True when the class has at most delta*n cycles (the large-class proxy)."""
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    return ct.num_cycles <= delta * ct.n


def nu(ct1: CycleType, ct2: CycleType, ct3: CycleType) -> int:
    """How many of the three classes lie inside Alt(n)."""
    if not ct1.n == ct2.n == ct3.n:
        raise ValueError("degree mismatch")
    return sum(1 for ct in (ct1, ct2, ct3) if parity(ct) == "even")


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int | None = None) -> Perm:
    """Parse cycle notation such as "(1 2 3)(4 5)" or "(1,2)"."""
    s = text.strip()
    if s in ("", "()", "id", "e"):
        if n is None:
            raise ValueError("identity needs an explicit degree")
        return Perm.identity(n)
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(s):
        if s[pos:m.start()].strip():
            raise ValueError("malformed token %r" % s[pos:m.start()].strip())
        body = m.group(1).strip()
        pos = m.end()
        if not body:
            continue
        toks = [t for t in re.split(r"[\s,]+", body) if t]
        try:
            cycles.append(tuple(int(t) for t in toks))
        except ValueError:
            raise ValueError("malformed token in %r" % m.group(0)) from None
    if s[pos:].strip():
        raise ValueError("malformed token %r" % s[pos:].strip())
    if not cycles and n is None:
        raise ValueError("identity needs an explicit degree")
    top = max((max(c) for c in cycles), default=0)
    if n is None:
        n = top
    if top > n or any(x < 1 for c in cycles for x in c):
        raise ValueError("value out of range 1..%d" % n)
    return Perm.from_cycles(cycles, n)


def format_cycles(p: Perm) -> str:
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def parse_cycle_type(text: str, n: int | None = None) -> CycleType:
    """Parse "4+6", "4+1^3" or "[4,6,1,1]"; missing fixed points are added up to n."""
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        toks = [t for t in re.split(r"[\s,]+", s[1:-1]) if t]
    else:
        toks = [t for t in re.split(r"\s*\+\s*", s) if t]
    lengths = []
    for t in toks:
        base, _, mult = t.partition("^")
        try:
            length = int(base)
            k = int(mult) if mult else 1
        except ValueError:
            raise ValueError("malformed cycle type token %r" % t) from None
        if length < 1 or k < 0:
            raise ValueError("malformed cycle type token %r" % t)
        lengths.extend([length] * k)
    if not lengths:
        raise ValueError("empty cycle type")
    return CycleType.from_lengths(lengths, n)


def format_cycle_type(ct: CycleType) -> str:
    parts = []
    for length, m in reversed(ct.counts):
        parts.append(str(length) if m == 1 else "%d^%d" % (length, m))
    return "+".join(parts)


def canonical_element(ct: CycleType) -> Perm:
    """Cycles written on consecutive points, shortest first.

    This is the lexicographically least image sequence in the class.
    """
    cycles = []
    start = 1
    for length in reversed(ct.lengths()):
        cycles.append(tuple(range(start, start + length)))
        start += length
    return Perm.from_cycles(cycles, ct.n)


def conjugator(p: Perm, q: Perm) -> Perm | None:
    """Some g with p ** g == q, or None when the cycle types differ."""
    _check_degree(p, q)
    if p.cycle_type() != q.cycle_type():
        return None
    by_len = {}
    for c in p.cycles(fixed=True):
        by_len.setdefault(len(c), []).append(c)
    img = {}
    for d in q.cycles(fixed=True):
        c = by_len[len(d)].pop()
        for a, b in zip(c, d):
            img[a] = b
    return Perm.from_mapping(img, p.n)


def alt_half(p: Perm) -> str:
    """'plus' when p is conjugate to the canonical element by an even permutation.

    Only meaningful for even classes that split in Alt(n); for the others both
    halves coincide and 'plus' is returned.
    """
    ct = p.cycle_type()
    if parity(ct) != "even" or not class_splits(ct):
        return "plus"
    g = conjugator(canonical_element(ct), p)
    return "plus" if g.is_even() else "minus"
