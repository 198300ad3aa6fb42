"""Command-line front end.  Every command prints OutputRecords as JSON lines
(default) or CSV; rationals are printed exactly as "a/b"."""

import argparse
import csv
import io
import json
import sys
from collections import Counter
from fractions import Fraction

from . import classify
from .d4 import lattice_d_invariant, prism_d_invariants
from .floer import casson_walker_prism, mod4_obstruction, prism_a1_d
from .lattice import (
    LatticeError,
    SearchLimitExceeded,
    dedekind_sum,
    gram_det,
    tridiagonal_gram,
)

EXIT_OK = 0
EXIT_NO = 1
EXIT_SCOPE = 2
EXIT_REFUSED = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def record(command, inputs, result, checks=()):
    return {
        "command": command,
        "inputs": inputs,
        "result": result,
        "checks": [{"name": n, "pass": ok, "expected": e, "actual": a}
                   for n, ok, e, a in checks],
    }


def multiset(counter):
    return [str(v) for v in sorted(Counter(counter).elements())]


def _plain(obj, decimal):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            out[str(k)] = _plain(v, decimal)
            if decimal and isinstance(v, Fraction):
                out[f"{k}_decimal"] = f"{float(v):.12g}"
        return out
    if isinstance(obj, (list, tuple)):
        return [_plain(v, decimal) for v in obj]
    return obj


def _cell(v):
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if v is None:
        return ""
    return str(v).lower() if isinstance(v, bool) else str(v)


def emit(records, fmt, decimal=False, out=None):
    out = out or sys.stdout
    recs = [_plain(r, decimal) for r in records]
    if fmt == "jsonl":
        for r in recs:
            out.write(json.dumps(r, sort_keys=True) + "\n")
        return
    rows = []
    cols = []
    for r in recs:
        row = {"command": r["command"]}
        row.update({f"in.{k}": v for k, v in r["inputs"].items()})
        row.update(r["result"])
        row["checks_passed"] = all(c["pass"] for c in r["checks"])
        rows.append(row)
        for k in row:
            if k not in cols:
                cols.append(k)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([_cell(row.get(c)) for c in cols])
    out.write(buf.getvalue())


# -- commands -----------------------------------------------------------------

def cmd_decide(args):
    try:
        v = classify.decide(args.p, args.q)
    except ValueError as e:
        raise UsageError(str(e))
    result = {"status": v.status, "reason": v.reason, "witness": v.witness}
    checks = [(name, ok, True, ok) for name, ok in v.checks]
    code = {classify.REALIZABLE: EXIT_OK, classify.NOT_REALIZABLE: EXIT_NO,
            classify.OUT_OF_SCOPE: EXIT_SCOPE}[v.status]
    return [record("decide", {"p": args.p, "q": args.q}, result, checks)], code


def _member_result(m):
    return {"s": m.s, "t": m.t, "r": m.r, "p": m.p, "q": m.q, "sigma": list(m.sigma)}


def cmd_family(args):
    if args.s_max < 0 or args.t_max < 0:
        raise UsageError("bounds must be nonnegative")
    recs = []
    for s in range(args.s_max + 1):
        for t in range(args.t_max + 1):
            m = classify.family_pq(s, t)
            recs.append(record("family", {"s": s, "t": t}, _member_result(m)))
    return recs, EXIT_OK


def cmd_enumerate(args):
    hits = classify.enumerate_search(args.max_len, args.max_entry, jobs=args.jobs,
                                     norm_bound=args.norm_bound)
    inputs = {"max_len": args.max_len, "max_entry": args.max_entry}
    recs = []
    for h in hits:
        recs.append(record("enumerate", inputs, {
            "sigma": list(h.embedding.sigma), "marks": list(h.embedding.marks),
            "p": h.p, "q": h.q, "genus": h.genus}))
    got = sorted((h.embedding.sigma, h.embedding.marks, h.p, h.q) for h in hits)
    fam = classify.expected_family(args.max_len, args.max_entry)
    want = sorted((m.sigma, m.marks, m.p, m.q) for m in fam)
    match = got == want
    recs.append(record("enumerate-summary", inputs,
                       {"hits": len(hits), "matches_family": match},
                       [("matches-family", match, len(want), len(hits))]))
    return recs, EXIT_OK if match else EXIT_NO


def cmd_invariants(args):
    p, q = args.p, args.q
    if p <= 0 or q <= 0:
        raise UsageError("p and q must be positive")
    try:
        lam = casson_walker_prism(p, q)
    except LatticeError as e:
        raise UsageError(str(e))
    result = {"dedekind_sum": dedekind_sum(p, q), "casson_walker": lam,
              "mod4": mod4_obstruction(p, q) if q % 2 else None}
    if q < p < 2 * q:
        result["d_invariants"] = multiset(prism_d_invariants(p, q))
    elif q == 1:
        result["d_invariants"] = multiset(prism_a1_d(p))
    return [record("invariants", {"p": p, "q": q}, result)], EXIT_OK


def cmd_dinv(args):
    if not args.weights or any(w < 2 for w in args.weights):
        raise UsageError("weights must be integers >= 2")
    gram = tridiagonal_gram(args.weights)
    d = lattice_d_invariant(gram)
    result = {"rank": len(gram), "det": gram_det(gram), "d_invariants": multiset(d)}
    return [record("dinv", {"weights": list(args.weights)}, result)], EXIT_OK


def cmd_crosscheck(args):
    if args.s < 0 or args.t < 0:
        raise UsageError("s and t must be nonnegative")
    m = classify.family_pq(args.s, args.t)
    rep = classify.cross_check(m, max_q=args.max_q)
    checks = [(c.name, c.passed, _jsonish(c.expected), _jsonish(c.actual))
              for c in rep.checks]
    result = _member_result(m)
    result["passed"] = sum(c.passed for c in rep.checks)
    result["total"] = len(rep.checks)
    return [record("crosscheck", {"s": args.s, "t": args.t}, result, checks)], \
        EXIT_OK if rep.passed else EXIT_NO


def _jsonish(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonish(x) for x in v]
    return v


def build_parser():
    ap = Parser(prog="prism-surgery", description=__doc__)
    common = Parser(add_help=False)
    common.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    common.add_argument("--decimal", action="store_true",
                        help="add display-only decimal fields next to rationals")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=Parser)

    sp = sub.add_parser("decide", parents=[common], help="is P(p, q) realizable?")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("family", parents=[common], help="closed-form family rows")
    sp.add_argument("--s-max", type=int, default=0)
    sp.add_argument("--t-max", type=int, default=0)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("enumerate", parents=[common], help="exhaustive changemaker search")
    sp.add_argument("--max-len", type=int, default=5)
    sp.add_argument("--max-entry", type=int, default=15)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--norm-bound", type=int, default=None,
                    help="norm bound for the vertex-basis search")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("invariants", parents=[common], help="λ, s(p,q), mod 4, d")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("dinv", parents=[common], help="d-invariants of a linear lattice")
    sp.add_argument("weights", type=int, nargs="+")
    sp.set_defaults(func=cmd_dinv)

    sp = sub.add_parser("crosscheck", parents=[common], help="five checks on a family member")
    sp.add_argument("s", type=int)
    sp.add_argument("t", type=int)
    sp.add_argument("--max-q", type=int, default=classify.MAX_Q)
    sp.set_defaults(func=cmd_crosscheck)
    return ap


def main(argv=None, out=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        recs, code = args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (SearchLimitExceeded, LatticeError) as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_REFUSED
    emit(recs, args.format, args.decimal, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
