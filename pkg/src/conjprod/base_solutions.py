"""Explicit solutions for the elementary restrictions and their concatenation."""
from __future__ import annotations

import bisect

from .alignment import enumerate_triples, is_aligned
from .class_model import Solution, StringTriple, full_restrictions, restrict

CASES = ("12", "13", "23")  # which two strings break in the middle


def _odds(lo, hi):
    return list(range(lo, hi + 1, 2))


def baby_single(m: int) -> Solution:
    """One m-cycle per string: a * a = a^2 with a = (1 2 ... m)."""
    if m < 1 or m % 2 == 0:
        raise ValueError("baby_single needs odd m >= 1")
    eta = list(range(1, m + 1))
    eta3 = _odds(1, m) + _odds(2, m)
    return Solution.from_cycles([eta], [eta], [eta3])


def _split_cycles(case, d, e):
    x = lambda i: i
    y = lambda j: d + j
    X = lambda idx: [x(i) for i in idx]
    Y = lambda idx: [y(j) for j in idx]
    if case == "12":
        s1 = [X(range(1, d + 1)), Y(range(1, e + 1))]
        s2 = [[y(1)] + X(range(2, d + 1)), [x(1)] + Y(range(2, e + 1))]
        big = X(_odds(1, d)) + Y(_odds(2, e)) + X(_odds(2, d - 1)) + Y(_odds(1, e - 1))
        return s1, s2, big, 3
    if case == "13":
        s1 = [X(range(1, d + 1)), Y(range(1, e + 1))]
        big = [x(2), x(3), y(2)] + X(range(4, d + 1)) + [x(1), y(1)] + Y(range(3, e + 1))
        s3 = [[x(1)] + X(_odds(3, d)) + [y(1)] + X(_odds(4, d - 1)),
              [x(2)] + Y(_odds(2, e)) + Y(_odds(3, e - 1))]
        return s1, big, s3, 2
    if case == "23":
        big = X(range(1, d + 1)) + Y(range(1, e + 1))
        s2 = [[y(1), x(1), x(2)] + X(range(4, d + 1)), [y(2), x(3)] + Y(range(3, e + 1))]
        s3 = [[x(1)] + X(_odds(4, d - 1)) + [y(1)] + X(_odds(3, d)),
              [x(2)] + Y(_odds(3, e - 1)) + Y(_odds(2, e))]
        return big, s2, s3, 1
    raise ValueError("case must be one of %s" % (CASES,))


def baby_split(case: str, d: int, e: int, order: str = "d-first") -> Solution:
    """Two strings split into a d-cycle and an e-cycle, the third is one (d+e)-cycle.

    ``case`` names the two split strings ("12", "13" or "23").
    """
    if d < 3 or d % 2 == 0 or e < 2 or e % 2:
        raise ValueError("baby_split needs odd d >= 3 and even e >= 2")
    if order not in ("d-first", "e-first"):
        raise ValueError("order must be 'd-first' or 'e-first'")
    a, b, c, big = _split_cycles(case, d, e)
    strings = [a, b, c]
    out = []
    for k, s in enumerate(strings):
        if k + 1 == big:
            out.append([s])
        else:
            out.append(s if order == "d-first" else s[::-1])
    return Solution.from_cycles(*out)


def witness_pools(kind: str, d: int, e: int = 0, order: str = "d-first") -> list:
    """Value pools per nontrivial triple, in positional order (left to right)."""
    if kind == "single":
        return [set(range(1, min(d, 18) + 1))]
    x = lambda i: i
    y = lambda j: d + j
    ys = {y(j) for j in range(2, min(e, 19) + 1)}
    if kind == "12":
        xs = {x(i) for i in range(2, min(d, 19) + 1)}
    elif kind == "13":
        xs = {x(i) for i in range(1, min(d, 18) + 1)}
    else:
        xs = {x(i) for i in range(1, min(d, 18) + 1)} | {y(1)}
    pools = [xs, ys]
    return pools if order == "d-first" else pools[::-1]


def shift_solution(sol: Solution, offset: int) -> Solution:
    cyc = [[[v + offset for v in c] for c in sol.cycles(i)] for i in range(3)]
    return Solution.from_cycles(*cyc, labels=sol.triple.label_map())


def concat(parts) -> Solution:
    """Glue solutions side by side, shifting values so supports are disjoint."""
    parts = list(parts)
    if not parts:
        raise ValueError("nothing to concatenate")
    cyc = [[], [], []]
    labels = {}
    off_pos = 0
    off_val = 0
    for p in parts:
        for i in range(3):
            cyc[i].extend([[v + off_val for v in c] for c in p.cycles(i)])
        for h, l in p.triple.labels:
            key = h + off_pos
            if key in labels and labels[key] != l:
                raise ValueError("conflicting labels at glued boundary %d" % key)
            labels[key] = l
        off_pos += p.n
        off_val += max(p.values)
    return Solution.from_cycles(*cyc, labels=labels)


def classify_restriction(t: StringTriple) -> tuple:
    """('single', m) or (case, d, e, order) for a restriction of a stage-7 triple."""
    n = t.n
    inner = [h for h in range(1, n) if t.cb(h)]
    if not inner:
        if n % 2 == 0:
            raise ValueError("restriction of even length %d without a split" % n)
        return ("single", n, 0, "d-first")
    if len(inner) != 1 or t.cb(inner[0]) != 2:
        raise ValueError("restriction matches no base schema")
    b0 = inner[0]
    split = "".join(str(i) for i in t.breaks_at(b0))
    left, right = b0, n - b0
    if left % 2 == 1 and right % 2 == 0:
        return (split, left, right, "d-first")
    if left % 2 == 0 and right % 2 == 1:
        return (split, right, left, "e-first")
    raise ValueError("split restriction without one odd and one even cycle")


def solve_x7(t: StringTriple, check: bool = True):
    """Aligned solution for a stage-7 triple, glued from base pieces.

    Returns (solution, report).  Witness pools follow a fixed schedule per
    piece; the alignment search falls back to the whole triple if needed.
    """
    full = t.full_columns()
    parts = []
    pool_list = []
    off = 0
    for a1, a2 in zip(full, full[1:]):
        sub = restrict(t, a1, a2)
        kind, d, e, order = classify_restriction(sub)
        if kind == "single":
            piece = baby_single(d)
            pools = witness_pools("single", d)
        else:
            piece = baby_split(kind, d, e, order)
            pools = witness_pools(kind, d, e, order)
        parts.append(piece)
        pool_list.append((a1, [{v + off for v in p} for p in pools]))
        off += max(piece.values)
    sol = concat(parts).with_labels(t.label_map())
    if sol.triple != t:
        raise AssertionError("glued strings differ from the stage-7 triple")
    # each restriction's nontrivial triples, left to right, get its pools in order
    starts = [a for a, _ in pool_list]
    grouped = {}
    for key, refs, _ in enumerate_triples(sol):
        lo = max(r.a for r in refs)
        j = bisect.bisect_right(starts, lo) - 1
        grouped.setdefault(j, []).append((lo, key))
    pools = {}
    for j, items in grouped.items():
        for (_, key), pool in zip(sorted(items), pool_list[j][1]):
            pools[key] = pool
    report = is_aligned(sol, check_product=check, pools=pools) if check else None
    return sol, report


def restrictions(t: StringTriple) -> list:
    return [restrict(t, a1, a2) for a1, a2 in full_restrictions(t)]
