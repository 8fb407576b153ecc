"""Command line entry point.

Exit codes: 0 success, 1 verification failed, 2 precondition failed,
3 search exhausted, 64 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .class_model import Solution
from .lifting import LiftError
from .oracle import (ClassSpec, SearchExhausted, alt_spec, coverage_check, find_triple,
                     find_witness_product, four_inclusion)
from .perm_core import Perm, format_cycles, parity, parse_cycle_type, parse_cycles
from .pipeline import solve
from .reductions import PreconditionError, ReductionConfig

EXIT_OK, EXIT_VERIFY, EXIT_PRECONDITION, EXIT_EXHAUSTED, EXIT_USAGE = 0, 1, 2, 3, 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def _common(p):
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--trace", metavar="FILE", help="write one JSON record per step to FILE")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict", action="store_true", help="use the strict size guards")
    p.add_argument("--config", metavar="FILE", help="JSON file with delta, min_n, budget")


def _classes(p):
    p.add_argument("--n", type=int, help="degree; fixed points are added up to n")
    p.add_argument("--c1", required=True)
    p.add_argument("--c2", required=True)
    p.add_argument("--c3", required=True)
    p.add_argument("--group", choices=("alt", "sym"), help="default: alt when all classes are even")
    p.add_argument("--half", default="plus,plus,plus",
                   help="halves of split Alt classes, e.g. plus,minus,plus")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="conjprod", description="Products of conjugacy classes in Sym(n) and Alt(n).")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    w = sub.add_parser("witness", help="find a1 a2 = a3 (or c1 c2 c3 = target) in given classes")
    _classes(w)
    _common(w)
    w.add_argument("--target", help="a permutation in cycle notation")
    w.add_argument("--budget", type=int, default=None)

    v = sub.add_parser("verify", help="check a stored solution")
    v.add_argument("--sol", required=True, metavar="FILE")
    _common(v)

    o = sub.add_parser("oracle", help="exact small-n checks")
    osub = o.add_subparsers(dest="ocmd", required=True, parser_class=_Parser)
    cov = osub.add_parser("coverage", help="decide c1 c2 >= c3 by enumeration")
    _classes(cov)
    _common(cov)
    fi = osub.add_parser("four-inclusion", help="which products of c1, c2 and their twists contain O_m")
    fi.add_argument("--n", type=int)
    fi.add_argument("--c1", required=True)
    fi.add_argument("--c2", required=True)
    fi.add_argument("--m", type=int)
    fi.add_argument("--half", default="plus,plus")
    fi.add_argument("--budget", type=int, default=None)
    _common(fi)

    t = sub.add_parser("pipeline-trace", help="run the reductions and lifts and print every step")
    _classes(t)
    _common(t)
    return ap


def _load_config(args) -> tuple:
    cfg = {}
    if args.config:
        with open(args.config) as fh:
            cfg = json.load(fh)
    rc = ReductionConfig(strict_mode=bool(args.strict or cfg.get("strict", False)),
                         delta=float(cfg.get("delta", 0.05)), min_n=int(cfg.get("min_n", 1)))
    budget = getattr(args, "budget", None) or int(cfg.get("budget", 20000))
    return rc, budget


def _parse_classes(args, names=("c1", "c2", "c3")):
    cts = [parse_cycle_type(getattr(args, k), args.n) for k in names]
    n = args.n or max(c.n for c in cts)
    cts = [parse_cycle_type(getattr(args, k), n) for k in names]
    halves = [h.strip() for h in args.half.split(",")]
    if len(halves) != len(names) or any(h not in ("plus", "minus") for h in halves):
        raise ValueError("--half needs %d entries from plus/minus" % len(names))
    group = getattr(args, "group", None) or (
        "alt" if all(parity(c) == "even" for c in cts) else "sym")
    if group == "alt":
        specs = [alt_spec(c, h) for c, h in zip(cts, halves)]
    else:
        specs = [ClassSpec(c) for c in cts]
    return specs, group, halves


def _emit(args, payload: dict, lines: list):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _write_trace(args, records):
    if args.trace:
        with open(args.trace, "w") as fh:
            for r in records:
                fh.write(json.dumps(r, sort_keys=True) + "\n")


def _perm_strings(perms):
    return [format_cycles(p) for p in perms]


def cmd_witness(args) -> int:
    specs, group, halves = _parse_classes(args)
    rc, budget = _load_config(args)
    n = specs[0].n
    if args.target:
        g = parse_cycles(args.target, n)
        res = find_witness_product(*specs, g, rc, budget, args.seed)
        perms, route, notes = res.perms, res.strategy, res.notes
        ok = perms[0] * perms[1] * perms[2] == g
        relation = "c1*c2*c3 = target"
        records = []
    else:
        records, notes = [], []
        try:
            w = solve(*(s.ct for s in specs), group, halves if group == "alt" else None, rc)
            perms, route, records = w.perms, "pipeline", w.trace
        except (PreconditionError, LiftError) as e:
            if getattr(e, "name", "") == "stage1.nu_odd":
                raise  # provably no solution, searching would only exhaust
            notes.append("pipeline: %s" % e)
            perms = find_triple(*specs, budget=budget, seed=args.seed)
            if perms is None:
                payload = {"command": "witness", "found": False, "verdict": "no solution",
                           "notes": notes}
                _emit(args, payload, ["no solution: the first two classes do not cover the third"])
                return EXIT_EXHAUSTED
            route = "search"
        ok = perms[0] * perms[1] == perms[2]
        relation = "a1*a2 = a3"
    ok = ok and all(s.contains(p) for s, p in zip(specs, perms))
    _write_trace(args, records)
    payload = {"command": "witness", "found": True, "group": group, "n": n, "route": route,
               "relation": relation, "witness": _perm_strings(perms), "verified": ok,
               "notes": notes, "trace_records": len(records)}
    lines = ["a%d = %s" % (k + 1, s) for k, s in enumerate(_perm_strings(perms))]
    lines.append("%s via %s: %s" % (relation, route, "verified" if ok else "FAILED"))
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_VERIFY


def _load_solution(path):
    with open(path) as fh:
        d = json.load(fh)
    if "breaks" in d:
        sol = Solution.from_json(d)
        return sol.perms(), None
    n = d.get("n")
    perms = [parse_cycles(s, n) for s in d["witness"]]
    n = max(p.n for p in perms)
    perms = [p.extend(n) for p in perms]
    classes = d.get("classes")
    return perms, classes


def cmd_verify(args) -> int:
    perms, classes = _load_solution(args.sol)
    a1, a2, a3 = perms
    prod = a1 * a2
    bad = next((x for x in range(1, a1.n + 1) if prod(x) != a3(x)), None)
    problems = []
    if bad is not None:
        problems.append("product differs at %d: a1*a2 sends it to %d, a3 to %d" % (bad, prod(bad), a3(bad)))
    if classes:
        for k, (p, c) in enumerate(zip(perms, classes)):
            if p.cycle_type() != parse_cycle_type(c, p.n):
                problems.append("a%d has cycle type %s, expected %s" % (k + 1, p.cycle_type(), c))
    payload = {"command": "verify", "ok": not problems, "problems": problems,
               "position": bad}
    _emit(args, payload, problems or ["ok: a1*a2 = a3"])
    return EXIT_OK if not problems else EXIT_VERIFY


def cmd_oracle(args) -> int:
    if args.ocmd == "coverage":
        specs, group, _ = _parse_classes(args)
        res = coverage_check(*specs)
        payload = {"command": "oracle coverage", "group": group, "n": specs[0].n,
                   "subset": res.subset,
                   "witness": _perm_strings(res.witness) if res.witness else None,
                   "missing": _perm_strings(res.missing)}
        _emit(args, payload, ["c1*c2 contains c3: %s" % ("yes" if res.subset else "no")]
              + (["witness: " + " ".join(payload["witness"])] if res.witness else []))
        return EXIT_OK
    specs, _, _ = _parse_classes(args, ("c1", "c2"))
    _, budget = _load_config(args)
    import random
    res = four_inclusion(*specs, m=args.m, budget=budget, rng=random.Random(args.seed))
    payload = {"command": "oracle four-inclusion", **res}
    _emit(args, payload, ["%s: %s" % (k, v) for k, v in res.items()])
    return EXIT_OK


def cmd_trace(args) -> int:
    specs, group, halves = _parse_classes(args)
    rc, _ = _load_config(args)
    w = solve(*(s.ct for s in specs), group, halves if group == "alt" else None, rc)
    _write_trace(args, w.trace)
    if args.json:
        print(json.dumps({"command": "pipeline-trace", "witness": _perm_strings(w.perms),
                          "verified": w.verify(), "trace": w.trace}, sort_keys=True))
    else:
        for r in w.trace:
            print(json.dumps(r, sort_keys=True))
    return EXIT_OK if w.verify() else EXIT_VERIFY


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    handlers = {"witness": cmd_witness, "verify": cmd_verify, "oracle": cmd_oracle,
                "pipeline-trace": cmd_trace}
    try:
        return handlers[args.cmd](args)
    except (PreconditionError, LiftError) as e:
        print("precondition failed: %s" % e, file=sys.stderr)
        return EXIT_PRECONDITION
    except SearchExhausted as e:
        print("search exhausted: %s" % e, file=sys.stderr)
        return EXIT_EXHAUSTED
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as e:
        print("usage error: %s" % e, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
