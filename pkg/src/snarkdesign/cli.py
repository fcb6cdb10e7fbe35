"""Command-line entry point.

Exit codes: 0 success, 1 verification or check failure, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .catalog import catalog_integrity, get_graph, parse_id
from .design import make_map, verify_design
from .formats import FormatError, emit_report, read_design, write_design
from .host import make_complete, make_multipartite
from .search import Candidate, Exhausted, PlanImbalance, Schedule, SearchSpec, search
from .spectrum import DesignParams, InconsistentParams, admissible_residues, theorem_check

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _jobs(value):
    return value if value else (os.cpu_count() or 1)


def _load_dir(root: Path):
    if not root.is_dir():
        raise UsageError(f"not a directory: {root}")
    files = sorted(root.rglob("*.design"))
    if not files:
        raise UsageError(f"no .design files under {root}")
    return files


def _verify_path(path):
    rec = read_design(path)
    return str(path), verify_design(rec)


def _verify_many(files, jobs):
    if jobs == 1:
        return [_verify_path(f) for f in files]
    with ProcessPoolExecutor(jobs) as pool:
        return list(pool.map(_verify_path, files, chunksize=8))


def cmd_catalog(args, out):
    result = catalog_integrity()
    print(str(result), file=out)
    return OK if result.passed else FAIL


def cmd_verify(args, out):
    rec = read_design(args.file)
    report = verify_design(rec)
    print(emit_report(report, args.format), file=out)
    return OK if report.passed else FAIL


def cmd_verify_all(args, out):
    files = _load_dir(Path(args.dir))
    results = _verify_many(files, _jobs(args.jobs))
    failed = [(p, r) for p, r in results if not r.passed]
    if args.format == "machine":
        print(json.dumps({"records": len(results), "failed": [r.to_dict() for _, r in failed]}), file=out)
    else:
        for p, r in failed:
            print(f"{p}:", file=out)
            print(emit_report(r), file=out)
        if failed:
            print(f"{len(failed)} of {len(results)} records FAILED", file=out)
        else:
            print(f"{len(results)} records verified", file=out)
    return FAIL if failed else OK


def cmd_spectrum(args, out):
    try:
        spec = admissible_residues(DesignParams(args.v, args.e, args.d))
    except InconsistentParams as exc:
        raise UsageError(str(exc)) from None
    print(str(spec), file=out)
    return OK


def cmd_report(args, out):
    files = _load_dir(Path(args.dir))
    results = _verify_many(files, _jobs(args.jobs))
    db = [(read_design(p), r) for p, r in results]
    check = theorem_check(db)
    if args.format == "machine":
        rows = {f"G{k}": {slot: st.state for slot, st in row.slots.items()} for k, row in check.rows.items()}
        print(json.dumps({"pass": check.passed, "ledger": rows, "failures": check.failures}), file=out)
    else:
        slots = list(next(iter(check.rows.values())).slots)
        print("snark  " + " ".join(f"{s:>9}" for s in slots), file=out)
        for k, row in check.rows.items():
            cells = " ".join(f"{str(row.slots[s]):>9}" for s in slots)
            print(f"G{k:<5} {cells}", file=out)
        print(check.statement(), file=out)
    return OK if check.passed else FAIL


_PLAN = re.compile(r"^(?:(\d+)\s*\*\s*)?(.*?)(?:\s+fix\s+(.+))?$")
_SEG = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(-?\d+)\s*\)")


def parse_plan(items, host):
    """``[N*](base,len,step)[,(...)] [fix inf]`` entries, one map per base block."""
    plan = []
    for n, item in enumerate(items, 1):
        m = _PLAN.match(item.strip())
        segs = [tuple(int(x) for x in s) for s in _SEG.findall(m.group(2))] if m else []
        if not segs:
            raise UsageError(f"bad --plan entry {item!r}")
        fixed = []
        for tok in (m.group(3) or "").split():
            fixed.append(host.inf if tok == "inf" and host.infinity else int(tok) if tok.isdigit() else None)
        if None in fixed:
            raise UsageError(f"bad fixed point in {item!r}")
        try:
            mp = make_map(segs, fixed, host, f"m{n}")
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        plan += [mp] * int(m.group(1) or 1)
    return plan


def _parse_host(tokens):
    if len(tokens) == 1:
        return make_multipartite(tokens[0])
    if tokens[0] == "complete" and len(tokens) in (2, 3) and tokens[1].isdigit():
        if len(tokens) == 3 and tokens[2] != "inf":
            raise UsageError(f"bad host {' '.join(tokens)!r}")
        return make_complete(int(tokens[1]), len(tokens) == 3)
    raise UsageError(f"bad host {' '.join(tokens)!r}")


def cmd_search(args, out):
    if args.seed is None:
        raise UsageError("search requires --seed")
    snark = parse_id(args.snark)
    try:
        host = _parse_host(args.host)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    initial = None
    if args.init:
        rec = read_design(args.init)
        initial = Candidate(tuple(b.vertices for b in rec.blocks))
        plan = [b.map for b in rec.blocks] if not args.plan else parse_plan(args.plan, host)
        if rec.host != host:
            raise UsageError("--init design uses a different host")
    else:
        if not args.plan:
            raise UsageError("search needs --plan (or --init)")
        plan = parse_plan(args.plan, host)
    schedule = Schedule(args.t0, args.cooling, args.batch, args.restart_after)
    try:
        spec = SearchSpec(get_graph(snark), host, plan, args.budget, args.seed, schedule, initial, snark)
    except PlanImbalance as exc:
        raise UsageError(str(exc)) from None
    try:
        result = search(spec, jobs=_jobs(args.jobs))
    except Exhausted as exc:
        print(f"exhausted: best cost {exc.best_cost} after {exc.evaluations} evaluations", file=out)
        return FAIL
    print(f"found after {result.evaluations} evaluations ({result.restarts} restarts, worker {result.worker})", file=out)
    print(emit_report(result.report, args.format), file=out)
    if args.emit:
        write_design(result.record, args.emit)
    return OK


def build_parser():
    p = argparse.ArgumentParser(prog="snarkdesign", description="Snark design verification and search")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("human", "machine"), default="human")

    c = sub.add_parser("catalog", help="certify the embedded snark catalog")
    c.add_argument("action", choices=("check",))
    c.set_defaults(func=cmd_catalog)

    v = sub.add_parser("verify", help="verify one design file")
    v.add_argument("file")
    fmt(v)
    v.set_defaults(func=cmd_verify)

    va = sub.add_parser("verify-all", help="verify every .design file under a directory")
    va.add_argument("dir")
    va.add_argument("--jobs", type=int, default=0, help="worker processes (default: all cores)")
    fmt(va)
    va.set_defaults(func=cmd_verify_all)

    s = sub.add_parser("spectrum", help="necessary congruence conditions")
    s.add_argument("--v", type=int, required=True)
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(func=cmd_spectrum)

    se = sub.add_parser("search", help="anneal for base blocks")
    se.add_argument("--snark", required=True)
    se.add_argument("--host", nargs="+", required=True, metavar="HOST", help="layout id, or: complete N [inf]")
    se.add_argument("--plan", action="append", default=[], help="[N*](base,len,step)[,...] [fix inf]")
    se.add_argument("--init", help="start from the blocks of this design file")
    se.add_argument("--seed", type=int)
    se.add_argument("--budget", type=int, default=1_000_000)
    se.add_argument("--jobs", type=int, default=0)
    se.add_argument("--emit")
    se.add_argument("--t0", type=float, default=Schedule.initial_temperature)
    se.add_argument("--cooling", type=float, default=Schedule.cooling)
    se.add_argument("--batch", type=int, default=Schedule.batch)
    se.add_argument("--restart-after", type=int, default=Schedule.restart_after)
    fmt(se)
    se.set_defaults(func=cmd_search)

    r = sub.add_parser("report", help="ingredient ledger and theorem check")
    r.add_argument("dir")
    r.add_argument("--jobs", type=int, default=0)
    fmt(r)
    r.set_defaults(func=cmd_report)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args, out)
    except (UsageError, FormatError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
