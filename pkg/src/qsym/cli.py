"""Command-line front end.

Exit codes: 0 when every check passes, 1 on any mathematical mismatch,
2 on a usage or configuration error.  Typo flags never change the code.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import suites
from .algebra.poly import render_poly
from .errors import QSymError
from .identities.catalog import COROLLARIES, EXPANSIONS, FAMILIES
from .qbernoulli import power_sum, qbernoulli_number, qbernoulli_poly, rebase

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}") from None


def _selection(text: str, known, what: str) -> list[str]:
    if text == "all":
        return list(known)
    chosen = [x.strip() for x in text.split(",") if x.strip()]
    unknown = [x for x in chosen if x not in known]
    if unknown:
        raise UsageError(f"unknown {what}: {', '.join(unknown)}")
    return chosen


def _suites(text: str, known) -> list[str]:
    return _selection(text, known, "suite")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--jobs", type=_positive, help="worker threads (default: $QSYM_THREADS or 1)")
    common.add_argument("--timing", action="store_true", help="include wall times in the report")

    parser = argparse.ArgumentParser(prog="qsym", description="Exact checks of q-Bernoulli symmetry identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="print a q-Bernoulli number, polynomial or q-power sum")
    comp.add_argument("what", choices=("bernoulli", "bernpoly", "powersum"))
    comp.add_argument("--n", type=_nonneg, required=True)
    comp.add_argument("--k", type=_nonneg, help="power for powersum")
    comp.add_argument("--rebase", type=_positive, default=1, help="base q^w")
    comp.add_argument("--var", default="x", choices=("x", "y", "y1", "y2", "y3"))
    comp.add_argument("--json", action="store_true")

    ver = sub.add_parser("verify", parents=[common], help="families, specializations, chain, auxiliary equalities")
    ver.add_argument("--suite", default="families", help="comma list of families,corollaries,chain,auxiliary or all")
    ver.add_argument("--family", default="all", help="all or a comma list of F1..F8")
    ver.add_argument("--corollary", default="all", help="all or a comma list of specialization ids")
    ver.add_argument("--n-max", type=_nonneg, help="default 8 (6 for auxiliary)")
    ver.add_argument("--w-max", type=_positive, help="default 3 for families/auxiliary, 4 otherwise")
    ver.add_argument("--w", type=_int_list, help="a single point w1,w2,w3 for the family suite")

    cc = sub.add_parser("crosscheck", parents=[common], help="series expansions and coefficient identities")
    cc.add_argument("--suite", default="all", help="comma list of expansions,lambda13,multiplication or all")
    cc.add_argument("--which", default="all", help="all or a comma list of expansion ids")
    cc.add_argument("--K", type=_nonneg, help="series order (defaults 10, 8, 12 per suite)")
    cc.add_argument("--w-max", type=_positive, help="defaults 2, 2, 5 per suite")

    pad = sub.add_parser("padic", parents=[common], help="finite Volkenborn sums against exact B-values")
    pad.add_argument("--p", type=_int_list, default=[3, 5, 7])
    pad.add_argument("--q", type=_rational, help="base q (default 1 + p)")
    pad.add_argument("--n-max", type=_nonneg, default=6)
    pad.add_argument("--N", type=_int_list, default=[1, 2, 3, 4, 5])
    pad.add_argument("--M", type=_positive, default=12)

    lim = sub.add_parser("limit", parents=[common], help="q -> 1 limit against classical Bernoulli numbers")
    lim.add_argument("--n-max", type=_nonneg, default=12)
    return parser


def _jobs(args) -> int:
    if args.jobs is not None:
        return args.jobs
    env = os.environ.get("QSYM_THREADS")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"QSYM_THREADS must be a positive integer, got {env!r}") from None
        if value < 1:
            raise UsageError(f"QSYM_THREADS must be a positive integer, got {env!r}")
        return value
    return 1


# -- commands -------------------------------------------------------------


def cmd_compute(args) -> tuple[str, int]:
    if args.what == "bernoulli":
        value = qbernoulli_number(args.n, base=args.rebase)
        text = value.render()
        via_rebase = rebase(qbernoulli_number(args.n), args.rebase)
        if via_rebase != value:
            return f"rebase mismatch for n={args.n}, w={args.rebase}", EXIT_FAIL
    elif args.what == "bernpoly":
        text = qbernoulli_poly(args.n, args.var, base=args.rebase).render()
    else:
        if args.k is None:
            raise UsageError("powersum needs --k")
        poly = power_sum(args.k, args.n)
        if args.rebase != 1:
            poly = poly.substitute_power(args.rebase)
        text = render_poly(poly.flint)
    if args.json:
        payload = {"what": args.what, "n": args.n, "rebase": args.rebase, "value": text}
        if args.what == "powersum":
            payload["k"] = args.k
        if args.what == "bernpoly":
            payload["var"] = args.var
        text = json.dumps(payload, sort_keys=True)
    return text, EXIT_OK


def _verify_tasks(args) -> tuple[list, dict]:
    chosen = _suites(args.suite, ("families", "corollaries", "chain", "auxiliary"))
    tasks = []
    config = {"command": "verify", "suites": chosen}
    if "families" in chosen:
        families = _selection(args.family, FAMILIES, "family")
        n_max = 8 if args.n_max is None else args.n_max
        if args.w is not None:
            if len(args.w) != 3 or min(args.w) < 1:
                raise UsageError("--w needs three positive integers")
            ws = [tuple(args.w)]
        else:
            ws = suites.w_grid(3 if args.w_max is None else args.w_max)
        tasks += suites.family_tasks(families, n_max, ws)
        config["families"] = {"ids": families, "n_max": n_max, "w": [list(w) for w in ws]}
    if "corollaries" in chosen:
        ids = _selection(args.corollary, COROLLARIES, "corollary")
        n_max = 8 if args.n_max is None else args.n_max
        w_max = 4 if args.w_max is None else args.w_max
        tasks += suites.corollary_tasks(ids, n_max, w_max)
        config["corollaries"] = {"ids": ids, "n_max": n_max, "w_max": w_max}
    if "chain" in chosen:
        n_max = 8 if args.n_max is None else args.n_max
        w_max = 4 if args.w_max is None else args.w_max
        tasks += suites.chain_tasks(n_max, w_max)
        config["chain"] = {"n_max": n_max, "w_max": w_max}
    if "auxiliary" in chosen:
        n_max = 6 if args.n_max is None else args.n_max
        w_max = 3 if args.w_max is None else args.w_max
        tasks += suites.auxiliary_tasks(n_max, w_max)
        config["auxiliary"] = {"n_max": n_max, "w_max": w_max}
    return tasks, config


def _crosscheck_tasks(args) -> tuple[list, dict]:
    chosen = _suites(args.suite, ("expansions", "lambda13", "multiplication"))
    tasks = []
    config = {"command": "crosscheck", "suites": chosen}
    if "expansions" in chosen:
        ids = _selection(args.which, EXPANSIONS, "expansion")
        K = 10 if args.K is None else args.K
        w_max = 2 if args.w_max is None else args.w_max
        tasks += suites.expansion_tasks(ids, K, w_max)
        config["expansions"] = {"ids": ids, "K": K, "w_max": w_max}
    if "lambda13" in chosen:
        K = 8 if args.K is None else args.K
        w_max = 2 if args.w_max is None else args.w_max
        tasks += suites.lambda13_tasks(K, w_max)
        config["lambda13"] = {"K": K, "w_max": w_max}
    if "multiplication" in chosen:
        K = 12 if args.K is None else args.K
        w_max = 5 if args.w_max is None else args.w_max
        tasks += suites.multiplication_tasks(K, w_max)
        config["multiplication"] = {"K": K, "w_max": w_max}
    return tasks, config


def _padic_tasks(args) -> tuple[list, dict]:
    if not args.p or not args.N:
        raise UsageError("--p and --N must be nonempty")
    if min(args.N) < 1:
        raise UsageError("--N cutoffs must be >= 1")
    tasks = suites.padic_tasks(args.p, args.q, args.n_max, sorted(set(args.N)), args.M)
    config = {
        "command": "padic",
        "p": args.p,
        "q": None if args.q is None else str(args.q),
        "n_max": args.n_max,
        "N": sorted(set(args.N)),
        "M": args.M,
    }
    return tasks, config


def _limit_tasks(args) -> tuple[list, dict]:
    return suites.limit_tasks(args.n_max), {"command": "limit", "n_max": args.n_max}


# -- output ---------------------------------------------------------------


def render_report(config: dict, reports, fmt: str, timing: bool) -> str:
    rows = [r.to_dict(timing) for r in reports]
    summary = suites.summarize(reports)
    if fmt == "json":
        doc = {"config": config, "results": rows, "summary": summary}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["suite", "params", "status", "variant", "monomial", "expected", "got", "flags", "millis"])
        for row in rows:
            d = row["detail"] or {}
            writer.writerow(
                [
                    row["suite"],
                    json.dumps(row["params"], sort_keys=True),
                    row["status"],
                    d.get("variant", ""),
                    d.get("monomial", ""),
                    d.get("expected", ""),
                    d.get("got", ""),
                    len(row["flags"]),
                    "" if row["millis"] is None else row["millis"],
                ]
            )
        return buf.getvalue()
    lines = []
    for row in rows:
        params = " ".join(f"{k}={json.dumps(v)}" for k, v in sorted(row["params"].items()))
        line = f"{row['status'].upper():4} {row['suite']} {params}"
        if row["millis"] is not None:
            line += f" ({row['millis']:.1f} ms)"
        lines.append(line)
        if row["detail"] and row["status"] != "pass":
            lines.append(f"     {json.dumps(row['detail'], sort_keys=True)}")
        for flag in row["flags"]:
            if flag.get("kind") != "argument":
                lines.append(f"     flag: {json.dumps(flag, sort_keys=True)}")
    s = summary
    lines.append(f"{s['passed']}/{s['total']} passed, {s['failed']} failed, {s['flagged']} flagged")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_RUNNERS = {
    "verify": _verify_tasks,
    "crosscheck": _crosscheck_tasks,
    "padic": _padic_tasks,
    "limit": _limit_tasks,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "compute":
            text, code = cmd_compute(args)
            print(text)
            return code
        tasks, config = _RUNNERS[args.command](args)
        jobs = _jobs(args)
        reports = suites.run_tasks(tasks, jobs)
    except (UsageError, QSymError) as exc:
        print(f"qsym: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(render_report(config, reports, args.format, args.timing), args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
