"""Command-line interface.

Exit codes: 0 success, 1 verification or audit failed, 2 invalid input,
3 search budget exhausted (inconclusive).

Poset descriptors follow ``parse_poset``. Note that ``antichain:m`` is the
antichain with ``m`` elements, so the bound parameter ``k`` is ``m - 1``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from typing import Any, Optional

from . import __version__, bounds
from .cache import Cache, RunRecord
from .chains import augment_and_gaps, chain_partition, maximum_antichain, width
from .containment import INDUCED, MODES
from .familyio import FamilyFormatError, family_to_json, load_family, save_family, to_bitstring
from .lattice import Family
from .poset import PosetError, parse_poset
from .procedures import (
    coloring_gap_check,
    diamond_digraph_audit,
    eliminate_wide_gaps,
    extremal_element_audit,
    gap_fullness_audit,
    greedy_color,
    lemma2_witnesses,
    max_gap_bound_check,
)
from .saturation import SolveResult, is_saturated, min_saturated

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3

log = logging.getLogger("posetsat")


class InputError(Exception):
    pass


def parse_bigint(text: str) -> int:
    """Integers, optionally written as ``a^b`` or ``a**b``."""
    t = text.strip().replace("**", "^")
    try:
        if "^" in t:
            base, exp = t.split("^", 1)
            return int(base) ** int(exp)
        return int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _jsonable(v: Any) -> Any:
    if isinstance(v, Fraction):
        return {"numerator": v.numerator, "denominator": v.denominator}
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _bits(masks, n: int) -> list[str]:
    return [to_bitstring(m, n) for m in masks]


# -- payload builders -------------------------------------------------------------

def solve_payload(r: SolveResult) -> dict:
    return {
        "n": r.n,
        "target": r.target,
        "mode": r.mode,
        "min_size": r.min_size,
        "inconclusive": r.inconclusive,
        "interval": [r.lower, r.upper],
        "witness": family_to_json(r.witness) if r.witness is not None else None,
        "nodes_explored": r.nodes_explored,
    }


def cmd_verify(args) -> tuple[dict, list[dict], int]:
    fam = load_family(args.family)
    target = parse_poset(args.poset)
    v = is_saturated(fam, target, args.mode)
    payload: dict = {"n": fam.n, "target": target.label, "mode": args.mode, "size": len(fam),
                     "saturated": v.saturated, "failure": v.failure}
    if v.copy is not None:
        payload["contains_copy"] = _bits(v.copy.masks(fam), fam.n)
    if v.missing_blocker is not None:
        payload["missing_blocker"] = to_bitstring(v.missing_blocker, fam.n)
    return payload, [payload], EXIT_OK if v.saturated else EXIT_FAIL


def cmd_solve(args) -> tuple[dict, list[dict], int]:
    target = parse_poset(args.poset)
    if args.n < 0:
        raise InputError("n must be non-negative")
    params = {"n": args.n, "poset": target.to_json(), "mode": args.mode, "budget": args.budget,
              "symmetry": not args.no_symmetry, "seed": not args.no_seed}
    cache = None if args.no_cache else Cache(args.cache_dir)
    payload = None
    if cache is not None:
        rec = cache.load("solve", params)
        if rec is not None:
            payload = rec.payload
    if payload is None:
        r = min_saturated(args.n, target, args.mode, args.budget, symmetry=not args.no_symmetry,
                          seed=not args.no_seed, jobs=args.jobs)
        payload = solve_payload(r)
        # re-verify before anything is cached
        if not r.inconclusive and not is_saturated(r.witness, target, args.mode).saturated:
            raise RuntimeError("solver witness failed re-verification")
        if cache is not None and not r.inconclusive:
            cache.store(RunRecord("solve", params, payload))
    if args.out and payload["witness"] is not None:
        from .familyio import family_from_json

        save_family(family_from_json(payload["witness"]), args.out)
    row = {k: payload[k] for k in ("n", "target", "mode", "min_size", "inconclusive", "nodes_explored")}
    row["witness"] = " ".join(payload["witness"]["sets"]) if payload["witness"] else ""
    return payload, [row], EXIT_INCONCLUSIVE if payload["inconclusive"] else EXIT_OK


def cmd_bounds(args) -> tuple[dict, list[dict], int]:
    if args.poset is None and args.k is None:
        raise InputError("give --poset or --k")
    desc = args.poset if args.poset is not None else f"antichain:{args.k + 1}"
    if args.n < 1:
        raise InputError("n must be >= 1")
    kind, p = bounds.identify(desc)
    if kind == "antichain" and p - 1 >= 3 and args.n < p - 1:
        raise InputError(f"antichain bounds need n >= k = {p - 1}")
    rep = bounds.reference_bounds(desc, args.n)
    payload = rep.to_json()
    if kind == "antichain" and p - 1 >= 3:
        payload["bound_a"] = rep.value("bound_a")
        payload["bound_b"] = rep.value("bound_b")
    rows = [dict(e.to_json(), target=rep.target, n=rep.n) for e in rep.entries]
    return payload, rows, EXIT_OK


def _slope_row(k: int) -> dict:
    s = bounds.slope_compare(k)
    return {"k": k, "slope_a": str(s.slope_a), "slope_b": str(s.slope_b), "winner": s.winner}


def cmd_slopes(args) -> tuple[dict, list[dict], int]:
    if args.k < 3:
        raise InputError("k must be >= 3")
    row = _slope_row(args.k)
    return row, [row], EXIT_OK


def cmd_crossover(args) -> tuple[dict, list[dict], int]:
    if args.k_max < 3:
        raise InputError("k_max must be >= 3")
    ks = bounds.crossover(args.k_max)
    payload = {"k_max": args.k_max, "crossover": ks}
    if ks is not None:
        payload["before"] = _slope_row(ks - 1)
        payload["at"] = _slope_row(ks)
    return payload, [{"k_max": args.k_max, "crossover": ks}], EXIT_OK


def cmd_procedures(args) -> tuple[dict, list[dict], int]:
    fam = load_family(args.family)
    n = fam.n
    pipe = args.pipeline
    core = fam.remove(0, fam.top)
    ok = True
    payload: dict = {"pipeline": pipe, "n": n, "size": len(fam)}
    rows: list[dict] = []
    if pipe == "dilworth":
        p = chain_partition(fam)
        payload.update(width=width(fam), antichain=_bits(maximum_antichain(fam), n),
                       chains=[_bits(c, n) for c in p.chains])
        rows = [{"chain": i, "sets": " ".join(_bits(c, n))} for i, c in enumerate(p.chains)]
    elif pipe in ("gaps", "widegap", "color"):
        if not len(core):
            raise InputError("family has no members besides the empty set and [n]")
        p = chain_partition(core)
        a, gaps = augment_and_gaps(p)
        if pipe == "gaps":
            audit = gap_fullness_audit(fam, a)
            ok = audit.passed
            payload.update(chains=[_bits(c, n) for c in a.chains], passed=ok,
                           gaps=[{"chain": g.chain_index, "x": to_bitstring(g.x, n), "y": to_bitstring(g.y, n), "size": g.size} for g in gaps])
            if not ok:
                payload["failing_gap"] = [to_bitstring(audit.gap.x, n), to_bitstring(audit.gap.y, n)]
                payload["missing"] = to_bitstring(audit.missing, n)
            rows = payload["gaps"]
        elif pipe == "widegap":
            out, trace = eliminate_wide_gaps(a)
            payload.update(chains=[_bits(c, n) for c in out.chains], moves=[m.line() for m in trace.moves],
                           measure_decreasing=trace.measure_decreasing())
            try:
                chk = max_gap_bound_check(fam, out)
                payload.update(max_gap=chk.d, k=chk.k, bound_passed=chk.passed)
                ok = chk.passed
            except ValueError as exc:
                payload["bound_check"] = f"preconditions not met: {exc}"
            if args.trace_out:
                with open(args.trace_out, "w") as fh:
                    fh.write(trace.export())
            rows = [{"move": m.line()} for m in trace.moves] or [{"move": "none"}]
        else:
            col = greedy_color(fam, p)
            chk = coloring_gap_check(fam, col)
            ok = chk.passed
            payload.update(classes=[_bits(c, n) for c in col.classes], passed=ok, failures=list(chk.failures))
            rows = [{"color": j + 1, "sets": " ".join(_bits(c, n))} for j, c in enumerate(col.classes)]
    elif pipe == "lemma2":
        fstars = [fam.members[0]] if args.fstar is None else [args.fstar]
        if args.all_fstar:
            fstars = list(fam.members)
        tables = []
        for f in fstars:
            if f not in fam:
                raise InputError(f"F* {f} is not a member")
            t = lemma2_witnesses(fam, f)
            ok = ok and t.complete
            tables.append({"fstar": to_bitstring(f, n), "complete": t.complete, "missing": t.missing()})
        payload["tables"] = tables
        rows = tables
    elif pipe == "digraph":
        d = diamond_digraph_audit(fam)
        ok = d.passed
        payload.update(arc_count=d.arc_count, unordered_pairs=d.unordered_pairs,
                       both_orientations=d.both_orientations, passed=ok)
        rows = [{k: payload[k] for k in ("arc_count", "unordered_pairs", "both_orientations", "passed")}]
    elif pipe == "audit":
        e = extremal_element_audit(fam)
        ok = e.passed
        payload.update(passed=ok, checks=[{"check": name, "set": to_bitstring(s, n), "ok": good} for name, s, good in e.checks])
        rows = payload["checks"]
    return payload, rows, EXIT_OK if ok else EXIT_FAIL


def cmd_report(args) -> tuple[dict, list[dict], int]:
    from .report import build_report, render_markdown

    crits = build_report()
    payload = {"criteria": [c.to_json() for c in crits]}
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(render_markdown(crits) if args.out.endswith(".md") else json.dumps(_jsonable(payload), indent=2))
    rows = [{"criterion": c.number, "title": c.title, "passed": c.passed, "seconds": round(c.seconds, 2)} for c in crits]
    return payload, rows, EXIT_OK if all(c.passed for c in crits) else EXIT_FAIL


# -- output -------------------------------------------------------------------------

def emit(payload: dict, rows: list[dict], fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n")
        return
    if not rows:
        return
    keys: list[str] = []
    for r in rows:
        for k in r:
            if k not in keys:
                keys.append(k)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(_jsonable(v)) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        stream.write(buf.getvalue())
        return
    cells = [[str(r.get(k, "")) for k in keys] for r in rows]
    widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
    stream.write("  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip() + "\n")
    for c in cells:
        stream.write("  ".join(v.ljust(w) for v, w in zip(c, widths)).rstrip() + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="posetsat", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--format", choices=("table", "json", "csv"), default="table")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check saturation of a family file")
    p.add_argument("--family", required=True)
    p.add_argument("--poset", required=True)
    p.add_argument("--mode", choices=MODES, default=INDUCED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="exact minimum saturated family size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--poset", required=True)
    p.add_argument("--mode", choices=MODES, default=INDUCED)
    p.add_argument("--budget", type=int, default=None, help="maximum search nodes")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--no-seed", action="store_true", help="start from size 0 instead of a proven lower bound")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--out", help="write the witness family file here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bounds", help="evaluate bound formulas")
    p.add_argument("--poset")
    p.add_argument("--n", type=parse_bigint, required=True)
    p.add_argument("--k", type=parse_bigint, help="shorthand for --poset antichain:(k+1)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("slopes", help="compare slopes of bounds (a) and (b)")
    p.add_argument("--k", type=parse_bigint, required=True)
    p.set_defaults(func=cmd_slopes)

    p = sub.add_parser("crossover", help="least k where bound (a) has the larger slope")
    p.add_argument("--k-max", type=parse_bigint, required=True)
    p.set_defaults(func=cmd_crossover)

    p = sub.add_parser("procedures", help="run a proof procedure on a family file")
    p.add_argument("--family", required=True)
    p.add_argument("--pipeline", required=True,
                   choices=("dilworth", "gaps", "widegap", "color", "lemma2", "digraph", "audit"))
    p.add_argument("--fstar", type=int, default=None, help="member mask for lemma2")
    p.add_argument("--all-fstar", action="store_true")
    p.add_argument("--trace-out")
    p.set_defaults(func=cmd_procedures)

    p = sub.add_parser("report", help="regenerate all acceptance tables")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[list[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        payload, rows, code = args.func(args)
    except (InputError, PosetError, FamilyFormatError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    emit(payload, rows, args.format, stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
