"""Command-line front end.

    quatcode build --m 4 --u 5
    quatcode quaternary --h 3
    quatcode designs --h 2 --emit-blocks
    quatcode lemmas --h-max 8
    quatcode group --h 2 --trials 200 --seed 1
    quatcode acceptance [--long]

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error,
3 resource limit.  ``QUATCODE_BUDGET`` overrides the enumeration budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .acceptance import all_passed, run_acceptance
from .codes import as_linear, bch_bound, cyclic_dual, is_lcd, mds_family_code, singleton_bound
from .cyclotomic import verify_partition
from .designs import all_supports, assmus_mattson, lambda_identity, verify_design
from .errors import InvalidArgument, ResourceLimit
from .galois import quaternary_tower
from .projective import (
    stabilizer_sample,
    verify_block_invariance,
    verify_spectrum_lemma,
    verify_three_transitivity,
)
from .subfield import quaternary_code, quaternary_dual, quaternary_parent, verify_delsarte
from .weights import default_budget, macwilliams, min_distance, weight_distribution

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
LONG_BUDGET = 1 << 32


class UsageError(Exception):
    pass


def _emit(args, payload: dict | str) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _budget(args) -> int:
    return LONG_BUDGET if getattr(args, "long", False) else default_budget()


# ---------------------------------------------------------------------------
# Subcommands; each returns (passed, payload)
# ---------------------------------------------------------------------------

def cmd_build(args) -> tuple[bool, dict | str]:
    m, u = args.m, args.u
    if not 1 <= m <= 16:
        raise UsageError("m must be in [1, 16]")
    q = 1 << m
    if not 1 <= u <= q // 2:
        raise UsageError(f"u must be in [1, {q // 2}] for m={m}")
    C = mds_family_code(q, u)
    n, k, d = q + 1, 2 * u - 1, q - 2 * u + 3
    md = min_distance(C, _budget(args), args.threads)
    checks = {
        "dimension": C.dimension == k,
        "bch_equals_singleton": bch_bound(C) == singleton_bound(n, C.dimension) == d,
        "min_distance": md.lower == d if md.method != "analytic" else md.lower == md.upper == d,
        "lcd": is_lcd(C),
    }
    payload = {
        "code": C.to_json(),
        "parameters": [n, C.dimension, md.value if md.exact else None],
        "expected": [n, k, d],
        "min_distance": {"lower": md.lower, "upper": md.upper, "method": md.method},
        "bch_bound": bch_bound(C),
        "checks": checks,
        "mds": all(checks[x] for x in ("dimension", "bch_equals_singleton", "min_distance")),
        "reversible": checks["lcd"],
    }
    return all(checks.values()), payload


def _distribution_or_skip(code, budget, workers):
    try:
        return weight_distribution(code, budget, workers)
    except ResourceLimit:
        return None


def cmd_quaternary(args) -> tuple[bool, dict | str]:
    h = args.h
    if not 1 <= h <= 4:
        raise UsageError("h must be in [1, 4]")
    T = quaternary_tower(h)
    Q = quaternary_code(h)
    D = quaternary_dual(h)
    Dc = cyclic_dual(Q)
    n = Q.n
    budget = _budget(args)
    primal = _distribution_or_skip(Q, budget, args.threads)
    dual = None
    if primal is not None:
        dual = macwilliams(primal, n, Q.dimension, 4)
    delsarte = verify_delsarte(quaternary_parent(h), emb=T.four_in_q)
    ok = delsarte["pass"] and Q.dimension == 2 ** h and D.k == n - 2 ** h
    report = {
        "h": h, "q": T.q, "n": n,
        "quaternary_code": {"code": Q.to_json(), "dimension": Q.dimension, "bch_bound": bch_bound(Q)},
        "subfield_code": {"dimension": D.k, "bch_bound": bch_bound(Dc),
                          "equals_dual_of_quaternary": as_linear(Dc) == D},
        "delsarte": delsarte,
    }
    ok = ok and report["subfield_code"]["equals_dual_of_quaternary"]
    if primal is None:
        report["quaternary_code"]["weight_distribution"] = "skipped (budget)"
        report["subfield_code"]["weight_distribution"] = "skipped (budget)"
    else:
        d = primal.min_distance
        report["quaternary_code"].update(
            parameters=[n, Q.dimension, d], weight_distribution=primal.to_json(),
            enumerator=primal.enumerator(), bch_tight=bch_bound(Q) == d)
        report["subfield_code"].update(
            parameters=[n, D.k, dual.min_distance], weight_distribution=dual.to_json(),
            bch_tight=bch_bound(Dc) == dual.min_distance)
        if h == 1:
            report["quaternary_code"]["note"] = (
                "published enumerator 1 + 15z^5 contradicts the Singleton bound; "
                f"exhaustive enumeration gives {primal.enumerator()}")
        if args.format == "csv":
            return ok, primal.to_csv()
    return ok, report


def cmd_designs(args) -> tuple[bool, dict | str]:
    h, t = args.h, args.t
    if not 1 <= h <= 4:
        raise UsageError("h must be in [1, 4]")
    if not 1 <= t <= 4 ** h:
        raise UsageError(f"t must be in [1, {4 ** h}]")
    budget = _budget(args)
    code = quaternary_dual(h) if args.dual else quaternary_code(h)
    dist = weight_distribution(code, budget, args.threads)
    designs = all_supports(code, budget=budget, dist=dist,
                           label=("subfield code" if args.dual else "quaternary code") + f" h={h}")
    q = 4 ** h
    rows = []
    ok = True
    for k, des in designs.items():
        if not t <= k < q:
            continue
        v = verify_design(des, t)
        good = v.lam is not None and lambda_identity(des, v)
        ok = ok and good
        row = des.to_json(v, emit_blocks=args.emit_blocks)
        row["identity_holds"] = lambda_identity(des, v)
        rows.append(row)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["v", "k", "t", "b", "lambda"])
        for r in rows:
            w.writerow([r["v"], r["k"], r["t"], r["b"], r["lambda"] if r["lambda"] is not None else ""])
        return ok, buf.getvalue()
    other = macwilliams(dist, code.n, code.k, 4)
    am = assmus_mattson(dist, other, t)
    return ok, {"h": h, "t": t, "code": "subfield" if args.dual else "quaternary",
                "designs": rows, "assmus_mattson": am.to_json()}


def cmd_lemmas(args) -> tuple[bool, dict | str]:
    if not 1 <= args.h_max <= 12:
        raise UsageError("h-max must be in [1, 12]")
    out = {}
    ok = True
    for h in range(1, args.h_max + 1):
        checks = verify_partition(h)
        out[str(h)] = checks
        ok = ok and all(c["pass"] for c in checks.values())
    return ok, {"h_max": args.h_max, "pass": ok, "results": out}


def cmd_group(args) -> tuple[bool, dict | str]:
    h = args.h
    if not 1 <= h <= 3:
        raise UsageError("h must be in [1, 3]")
    T = quaternary_tower(h)
    elements = stabilizer_sample(T.q, args.trials, args.seed)
    invariance = []
    ok = True
    for k, des in all_supports(quaternary_code(h)).items():
        r = verify_block_invariance(des, elements, T)
        ok = ok and r["pass"]
        invariance.append(r)
    spectral = verify_spectrum_lemma(h, args.trials, args.seed)
    trans = verify_three_transitivity(h, min(args.trials, 100), args.seed) if h >= 2 else None
    ok = ok and spectral["pass"] and (trans is None or trans["pass"])
    return ok, {"h": h, "seed": args.seed, "elements": [e.to_json(T) for e in elements],
                "block_invariance": invariance, "spectrum_lemma": spectral, "three_transitivity": trans}


def cmd_acceptance(args) -> tuple[bool, dict | str]:
    lines = []

    def show(res):
        print(res.line(), file=sys.stderr, flush=True)
        lines.append(res)

    results = run_acceptance(long=args.long, seed=args.seed, workers=args.threads,
                             only=args.only, on_result=show)
    failed = [r.number for r in results if r.passed is False]
    return all_passed(results), {"long": args.long, "seed": args.seed, "failed": failed,
                                 "criteria": [r.to_json() for r in results]}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=1, help="seed for every randomized check")
    common.add_argument("--threads", type=int, default=None, help="worker processes (default: all cores)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")
    common.add_argument("--long", action="store_true", help="lift the budget to 2^32 codewords")

    p = argparse.ArgumentParser(prog="quatcode", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="construct the MDS code C_u over GF(2^m)")
    b.add_argument("--m", type=int, required=True)
    b.add_argument("--u", type=int, required=True)
    b.set_defaults(func=cmd_build)

    qp = sub.add_parser("quaternary", parents=[common], help="quaternary code and its dual for q = 4^h")
    qp.add_argument("--h", type=int, required=True)
    qp.set_defaults(func=cmd_quaternary)

    d = sub.add_parser("designs", parents=[common], help="support t-designs of the quaternary code")
    d.add_argument("--h", type=int, required=True)
    d.add_argument("--t", type=int, default=3)
    d.add_argument("--dual", action="store_true", help="use the subfield (dual) code instead")
    d.add_argument("--emit-blocks", action="store_true")
    d.set_defaults(func=cmd_designs)

    lm = sub.add_parser("lemmas", parents=[common], help="T / T^c partition checks")
    lm.add_argument("--h-max", type=int, default=8)
    lm.set_defaults(func=cmd_lemmas)

    g = sub.add_parser("group", parents=[common], help="stabilizer action checks")
    g.add_argument("--h", type=int, required=True)
    g.add_argument("--trials", type=int, default=200)
    g.set_defaults(func=cmd_group)

    a = sub.add_parser("acceptance", parents=[common], help="run the acceptance criteria")
    a.add_argument("--only", type=int, nargs="+", metavar="N", help="run only these criteria")
    a.set_defaults(func=cmd_acceptance)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None and args.threads < 1:
        parser.error("--threads must be positive")
    try:
        ok, payload = args.func(args)
    except (UsageError, InvalidArgument) as exc:
        print(f"quatcode: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimit as exc:
        print(f"quatcode: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    _emit(args, payload)
    if not ok:
        if isinstance(payload, dict) and payload.get("failed"):
            print(f"quatcode: failed criteria {payload['failed']}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
