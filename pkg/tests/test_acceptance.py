"""Acceptance criteria 1-8, one recorded pass/fail line each."""
from __future__ import annotations

import itertools
import math
import random
import time
from collections import Counter

from conjprod.alignment import CycleRef, PROPS, MIN_SHARED, find_c
from conjprod.base_solutions import CASES, baby_single, baby_split, solve_x7
from conjprod.class_model import PARITY, Ledge, Solution, check_stage
from conjprod.corpus import class_corpus, random_classes, random_stage_chain
from conjprod.formulas import FormulaError, verify_step
from conjprod.lifting import LiftError
from conjprod.oracle import (alt_spec, coverage_brute, coverage_check,
                             enumerate_class)
from conjprod.perm_core import (CycleType, class_size, class_splits, log_class_size, nu,
                                parity, parse_cycles)
from conjprod.pipeline import solve
from conjprod.reductions import (PreconditionError, THETA, UNTHETA, stage_classes,
                                 theta1, theta2, theta3, untheta3)

from helpers import (FORMULA_NAMES, harvest_contexts, random_relabelling, relabel_betas,
                     relabel_step)


def P(text, n=10):
    return parse_cycles(text, n)


# ---------------------------------------------------------------- 1

def test_criterion_1_worked_example(report):
    t0 = time.time()
    g1 = P("(1 2 3)(4)(5 6 7 8 9)(10)")
    g2 = g1
    b1 = P("(4 3 1 2)(8 10 9 5 6 7)")
    b2 = P("(10 4 1 2)(8 9 3 5 6 7)")
    cases = {
        "square of a 3-cycle": (P("(1 2 3)", 3) * P("(1 2 3)", 3), P("(1 3 2)", 3)),
        "g1 g2": (g1 * g2, P("(2 1 3)(6 8 5 7 9)")),
        "g1 (3 4)(9 10)": (g1 * P("(3 4)") * P("(9 10)"), P("(1 2 4 3)(5 6 7 8 10 9)")),
        "(3 9 4) g2 (3 10 4)": (P("(3 9 4)") * g2 * P("(3 10 4)"), P("(1 2 10 4)(5 6 7 8 9 3)")),
        "g1 (4 9 10) g2 (3 10 4)": (g1 * P("(4 9 10)") * g2 * P("(3 10 4)"),
                                    P("(2 1 10 3)(6 8 4 5 7 9)")),
        "b1 b2": (b1 * b2, P("(1 10 3 2)(8 4 5 7 9 6)")),
        "b2 (2 8)": (b2 * P("(2 8)"), P("(10 4 1 8 9 3 5 6 7 2)")),
        "b1 b2 (2 8)": (b1 * b2 * P("(2 8)"), P("(1 10 3 8 4 5 7 9 6 2)")),
    }
    bad = [k for k, (lhs, rhs) in cases.items() if lhs != rhs]
    dt = time.time() - t0
    ok = not bad and dt < 1
    report(1, ok, "%d worked examples, %.3fs%s" % (len(cases), dt, ", failing %s" % bad if bad else ""))
    assert ok


# ---------------------------------------------------------------- 2

def _grid():
    for m in range(1, 200, 2):
        yield ("single", m, 0, "d-first"), baby_single(m)
    for case in CASES:
        for d in range(3, 50, 2):
            for e in range(2, 51, 2):
                for order in ("d-first", "e-first"):
                    yield (case, d, e, order), baby_split(case, d, e, order)


def _long_enough(key):
    kind, d, e, _ = key
    return d >= 15 if kind == "single" else d >= 19 and e >= 20


def test_criterion_2_base_grid(report):
    t0 = time.time()
    bad = []
    count = labelled = 0
    for key, sol in _grid():
        count += 1
        if not sol.product_holds():
            bad.append((key, "product"))
            continue
        rebuilt, rep = solve_x7(sol.triple)
        if rebuilt != sol or not rep.aligned:
            bad.append((key, "aligned"))
        if _long_enough(key):
            # label-driven clauses: a ledge or parity label on each end column
            for lab in ({0: Ledge(1, 1), sol.n: PARITY}, {0: PARITY, sol.n: Ledge(2, -1)}):
                labelled += 1
                _, rep = solve_x7(sol.triple.with_labels(lab))
                if not rep.aligned:
                    bad.append((key, "labelled %s" % sorted(lab)))
    dt = time.time() - t0
    ok = not bad and dt < 60
    report(2, ok, "%d pieces, %d labelled, %.1fs%s" % (count, labelled, dt,
                                                       ", failing %s" % bad[:3] if bad else ""))
    assert ok


# ---------------------------------------------------------------- 3

def test_criterion_3_formula_blocks(report):
    t0 = time.time()
    pool = harvest_contexts(seed=3, want=6)
    rng = random.Random(3)
    missing = [k for k in FORMULA_NAMES if not pool.get(k)]
    bad = []
    done = Counter()
    for name in FORMULA_NAMES:
        for case in range(100):
            if not pool.get(name):
                break
            step, betas, degree = rng.choice(pool[name])
            f = random_relabelling(rng, degree)
            try:
                verify_step(relabel_step(step, f), relabel_betas(betas, f), degree)
                done[name] += 1
            except FormulaError as e:
                bad.append(str(e))
    dt = time.time() - t0
    ok = not missing and not bad and dt < 120
    report(3, ok, "%d blocks x 100 contexts, %.1fs%s%s" % (
        len(done), dt, ", missing %s" % missing if missing else "",
        ", failing %s" % bad[:3] if bad else ""))
    assert ok


# ---------------------------------------------------------------- 4 and 5

def _stage2_inputs(rng, count):
    out = []
    while len(out) < count:
        try:
            x2 = theta2(theta1(*random_classes(rng, rng.randint(60, 300))))
            theta3(x2)
        except PreconditionError:
            continue
        out.append(x2)
    return out


def test_criterion_4_theta_roundtrip(report):
    t0 = time.time()
    rng = random.Random(4)
    bad = []
    counts = Counter()
    for x2 in _stage2_inputs(rng, 1000):
        y = theta3(x2)
        if untheta3(y).payload != x2.payload:
            bad.append((3, "roundtrip"))
        if any(not r.ok for r in check_stage(y.payload, 3)):
            bad.append((3, "battery"))
        counts[3] += 1
    while min(counts[k] for k in (4, 5, 6, 7)) < 1000:
        xs = random_stage_chain(rng)
        for k in (4, 5, 6, 7):
            x = xs[k - 4]
            y = THETA[k](x)
            if UNTHETA[k](y).payload != x.payload:
                bad.append((k, "roundtrip"))
            if any(not r.ok for r in check_stage(y.payload, k)):
                bad.append((k, "battery"))
            counts[k] += 1
    dt = time.time() - t0
    ok = not bad and dt < 300
    report(4, ok, "%s inputs per stage, %.1fs%s" % (dict(sorted(counts.items())), dt,
                                                    ", failing %s" % bad[:3] if bad else ""))
    assert ok


def test_criterion_5_nu_parity(report):
    rng = random.Random(5)
    transitions = 0
    even = []
    while transitions < 10_000:
        if rng.random() < 0.5:
            cur = theta1(*random_classes(rng, rng.randint(60, 300)))
        else:
            cur = random_stage_chain(rng)[0]
        if nu(*stage_classes(cur)) % 2 == 0:
            even.append((cur.stage, "start"))
        for k in range(cur.stage + 1, 8):
            try:
                cur = THETA[k](cur)
            except PreconditionError:
                break
            transitions += 1
            if nu(*stage_classes(cur)) % 2 == 0:
                even.append((k, "after"))
    ok = not even
    report(5, ok, "%d stage transitions%s" % (transitions, ", nu even at %s" % even[:3] if even else ""))
    assert ok


# ---------------------------------------------------------------- 6

def test_criterion_6_corpus(report):
    t0 = time.time()
    corpus = class_corpus(seed=6, size=60, n_range=(60, 300), delta=0.05)
    rng = random.Random(6)
    good, failures, wrong = 0, Counter(), []
    for c1, c2, c3 in corpus:
        halves = tuple(rng.choice(("plus", "minus")) for _ in range(3))
        try:
            w = solve(c1, c2, c3, "alt", halves)
        except (PreconditionError, LiftError) as e:
            failures[e.name] += 1
            if not e.name or "." not in e.name:
                wrong.append(str(e))
            continue
        a1, a2, a3 = w.perms
        if a1 * a2 == a3 and tuple(p.cycle_type() for p in w.perms) == (c1, c2, c3) and w.verify():
            good += 1
        else:
            wrong.append("unverified witness for %s" % ((c1, c2, c3),))
    dt = time.time() - t0
    ok = len(corpus) >= 50 and not wrong and good > 0 and dt < 600
    report(6, ok, "%d/%d solved (%.0f%%), failures %s, %.1fs" % (
        good, len(corpus), 100 * good / len(corpus), dict(failures), dt))
    assert ok


# ---------------------------------------------------------------- 7

def partitions(n, top=None):
    top = n if top is None else top
    if n == 0:
        yield ()
        return
    for k in range(min(n, top), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def _alt5_specs():
    out = []
    for lam in partitions(5):
        ct = CycleType.from_lengths(lam)
        if parity(ct) != "even":
            continue
        if class_splits(ct):
            out += [alt_spec(ct, "plus"), alt_spec(ct, "minus")]
        else:
            out.append(alt_spec(ct))
    return out


def test_criterion_7_oracle(report):
    t0 = time.time()
    bad = []
    classes = 0
    for n in range(1, 9):
        for lam in partitions(n):
            ct = CycleType.from_lengths(lam)
            classes += 1
            size = class_size(ct)
            if not math.isclose(math.exp(log_class_size(ct)), size, rel_tol=1e-9):
                bad.append((lam, "log size"))
            if sum(1 for _ in enumerate_class(ct)) != size:
                bad.append((lam, "enumeration"))
            if parity(ct) == "even" and class_splits(ct):
                plus = sum(1 for _ in enumerate_class(ct, "alt", "plus"))
                minus = sum(1 for _ in enumerate_class(ct, "alt", "minus"))
                if plus != minus or plus + minus != size:
                    bad.append((lam, "halves %d+%d" % (plus, minus)))
    five = CycleType.from_lengths([5])
    halves5 = (sum(1 for _ in enumerate_class(five, "alt", "plus")),
               sum(1 for _ in enumerate_class(five, "alt", "minus")))
    if halves5 != (12, 12):
        bad.append(("5-cycles", halves5))
    specs = _alt5_specs()
    triples = 0
    for c1, c2, c3 in itertools.product(specs, repeat=3):
        triples += 1
        if coverage_check(c1, c2, c3).subset != coverage_brute(c1, c2, c3):
            bad.append(("coverage", c1, c2, c3))
    dt = time.time() - t0
    ok = not bad and dt < 300
    report(7, ok, "%d classes n<=8, Alt(5) 5-cycles %d+%d, %d Alt(5) triples, %.1fs%s" % (
        classes, halves5[0], halves5[1], triples, dt, ", failing %s" % bad[:3] if bad else ""))
    assert ok


# ---------------------------------------------------------------- 8

def canonical_triples(lengths):
    """Every triple of cycles with these lengths, values numbered by first appearance."""
    total = sum(lengths)
    owner = [i for i, k in enumerate(lengths) for _ in range(k)]
    res = [[], [], []]

    def rec(pos, top):
        if pos == total:
            yield tuple(tuple(s) for s in res)
            return
        s = res[owner[pos]]
        for v in range(1, top + 2):
            if v not in s:
                s.append(v)
                yield from rec(pos + 1, max(top, v))
                s.pop()

    yield from rec(0, 0)


def brute_force(seqs, prop):
    """Does some independent rotation of the three cycles realise the property?

    Positions are 0-based within the shared window, so x+1 and x+2 are 0 and 1.
    """
    s1, s2, s3 = seqs
    for r1 in range(len(s1)):
        e1 = s1[r1:] + s1[:r1]
        for r2 in range(len(s2)):
            e2 = s2[r2:] + s2[:r2]
            for r3 in range(len(s3)):
                e3 = s3[r3:] + s3[:r3]
                if prop == "c1":
                    if e1[0] == e2[0] == e3[0]:
                        return True
                    continue
                if prop == "c2":
                    if e1[0] == e3[0] and e1[1] == e2[1]:
                        return True
                elif prop == "c3":
                    if e1[0] == e2[0] == e3[0] and e1[1] == e2[1]:
                        return True
                elif prop == "c4":
                    if e1[0] == e2[0] and e1[1] == e2[1] == e3[1]:
                        return True
                elif prop == "c5":
                    # z2 sits at x+2 of string 2 and anywhere (x') in string 3
                    if e1[0] == e2[0] == e3[0] and e2[1] in e3:
                        return True
                elif prop == "c6":
                    if e1[1] == e2[1] == e3[1] and e1[0] in e3:
                        return True
    return False


def _as_solution(seqs):
    universe = sorted(set().union(*seqs))
    strings = []
    for s in seqs:
        strings.append([list(s)] + [[v] for v in universe if v not in s])
    return Solution.from_cycles(*strings)


def test_criterion_8_find_c_complete(report):
    t0 = time.time()
    bad = []
    checked = 0
    for total in range(3, 10):
        for l1 in range(1, total - 1):
            for l2 in range(1, total - l1):
                lengths = (l1, l2, total - l1 - l2)
                refs = tuple(CycleRef(i + 1, 0, k) for i, k in enumerate(lengths))
                shared = min(lengths)
                for seqs in canonical_triples(lengths):
                    sol = None
                    for prop in PROPS:
                        if shared < MIN_SHARED[prop]:
                            continue
                        if sol is None:
                            sol = _as_solution(seqs)
                        checked += 1
                        got = find_c(sol, refs, prop) is not None
                        if got != brute_force(seqs, prop):
                            bad.append((seqs, prop))
    dt = time.time() - t0
    ok = not bad and dt < 120
    report(8, ok, "%d (triple, property) checks, %.1fs%s" % (checked, dt,
                                                          ", failing %s" % bad[:3] if bad else ""))
    assert ok
