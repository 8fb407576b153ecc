"""Classes in, verified permutations out: reductions forward, lifts back."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import lifting as L
from .base_solutions import solve_x7
from .perm_core import CycleType, Perm, alt_half, class_splits
from .reductions import RELAXED, ReductionConfig, run_forward, sym_instance, theta1


@dataclass
class Witness:
    perms: tuple
    classes: tuple
    halves: tuple | None
    trace: list = field(default_factory=list)

    def verify(self) -> bool:
        a1, a2, a3 = self.perms
        if a1 * a2 != a3:
            return False
        if tuple(p.cycle_type() for p in self.perms) != tuple(self.classes):
            return False
        if self.halves is not None:
            for p, h in zip(self.perms, self.halves):
                if class_splits(p.cycle_type()) and alt_half(p) != h:
                    return False
        return True


def _stage_record(x):
    rec = {"stage": x.stage, "reduction": "theta%d" % x.stage if x.stage > 1 else "input"}
    if x.stage >= 3:
        rec["n"] = x.payload.n
        rec["labels"] = len(x.payload.labels)
    return rec


def solve(c1: CycleType, c2: CycleType, c3: CycleType, group: str = "alt", halves=None,
          config: ReductionConfig = RELAXED) -> Witness:
    """Find a1 in c1, a2 in c2 with a1 a2 = a3 in c3.

    For group 'alt' all classes must be even and ``halves`` picks the
    alternating-group class of each split class ('plus' or 'minus').  For
    group 'sym' the number of even classes must be odd.  Raises
    PreconditionError or LiftError naming the failed check.
    """
    classes = (c1, c2, c3)
    if group == "alt":
        halves = tuple(halves) if halves else ("plus", "plus", "plus")
        x1 = theta1(c1, c2, c3, halves, config)
    elif group == "sym":
        halves = None
        x1 = sym_instance(c1, c2, c3)
    else:
        raise ValueError("group must be 'alt' or 'sym'")
    xs = run_forward(x1, config)
    trace = L.Trace()
    trace.records.extend(_stage_record(x) for x in xs)
    sol, report = solve_x7(xs[6].payload)
    if not report.aligned:
        raise L.LiftError("base.alignment", "glued base solution is not aligned")
    trace.records.append({"lift": "base", "formula": "glued_base_pieces", "ok": True,
                          "values": {"n": sol.n}})
    for k in (7, 6, 5, 4):
        sol, report = L.LIFTS[k](sol, report, trace, target=xs[k - 2].payload)
    s2 = L.lift_3_to_2(sol, xs[1].payload, trace)
    s1 = L.lift_2_to_1(s2, xs[1].meta, classes, trace)
    perms = L.lift_1_to_0(s1, halves, trace) if group == "alt" else s1.perms
    w = Witness(tuple(perms), classes, halves, trace.records)
    if not w.verify():
        raise L.LiftError("final.verify", "output fails the product or class check")
    return w


def relabel(perms, g: Perm) -> tuple:
    """Conjugate every permutation of a triple by g."""
    return tuple(p ** g for p in perms)
