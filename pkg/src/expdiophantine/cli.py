"""Command-line front end.

Every record is written as one JSON object per line (or a plain key=value
line with --format human). Integers always travel as decimal strings.

Exit codes: 0 done, 1 violations found (or no solution under
--expect-solution), 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from . import diophantine, ljunggren, lucas, pell
from .arith import DomainError

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

# acceptance-sized defaults for `lemmas`: (d_max, index bound)
LEMMA_DEFAULTS = {"l1": (200, 10), "l3": (200, 12), "carmichael": (100, 20)}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def natural(text: str) -> int:
    if not re.fullmatch(r"[0-9]+", text):
        raise argparse.ArgumentTypeError(f"expected a non-negative decimal integer, got {text!r}")
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "human"), default="json", help="output mode (default: json lines)")
    common.add_argument("--output", metavar="PATH", help="also write the output to PATH")

    parser = _Parser(prog="expdioph", description="Checks around (a^n-1)(b^n-1) = x^2.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pell", parents=[common], help="solve u^2 - d v^2 = 1")
    p.add_argument("--d", type=natural, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--k", type=natural, help="return the k-th solution instead of the fundamental one")
    g.add_argument("--u", type=natural, help="find the index k with u_k = U")

    p = sub.add_parser("lemmas", parents=[common], help="check the u/v-sequence divisibility laws")
    p.add_argument("--lemma", choices=("l1", "l3", "carmichael", "all"), default="all")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--d", type=natural, help="a single d")
    g.add_argument("--d-max", type=natural, help="every non-square d <= D_MAX")
    p.add_argument("--k-max", type=natural, help="largest index checked (l1/l3)")
    p.add_argument("--n-max", type=natural, help="largest index checked (carmichael)")
    p.add_argument("--bound", type=natural, default=6, help="indices above this need a primitive divisor")

    p = sub.add_parser("primitive-divisors", parents=[common], help="primitive prime divisors of v_n")
    p.add_argument("--d", type=natural, required=True)
    p.add_argument("--n", type=natural, required=True)

    p = sub.add_parser("ljunggren", parents=[common], help="search x^p = 2y^2 - 1")
    p.add_argument("--p", type=natural, required=True)
    p.add_argument("--y-max", type=natural)

    p = sub.add_parser("evaluate", parents=[common], help="test one (a, b, n)")
    p.add_argument("--a", type=natural, required=True)
    p.add_argument("--b", type=natural, required=True)
    p.add_argument("--n", type=natural, required=True)
    p.add_argument("--expect-solution", action="store_true", help="exit 1 when there is no solution")

    p = sub.add_parser("search", parents=[common], help="list all solutions in a box")
    p.add_argument("--a-max", type=natural, required=True)
    p.add_argument("--b-max", type=natural, required=True)
    p.add_argument("--n-max", type=natural, required=True)
    p.add_argument("--a-min", type=natural, default=2)
    p.add_argument("--b-min", type=natural, default=2)
    p.add_argument("--shards", type=natural, default=1)

    p = sub.add_parser("verify", parents=[common], help="exhaustive check of one theorem scope")
    p.add_argument("--scope", choices=[t.value for t in diophantine.ScopeTag], required=True)
    p.add_argument("--a-max", type=natural)
    p.add_argument("--b-max", type=natural)
    p.add_argument("--n-max", type=natural)
    p.add_argument("--shards", type=natural, default=1)
    return parser


def _human(record: dict) -> str:
    parts = []
    for key, value in record.items():
        if isinstance(value, list):
            value = "[" + "; ".join(_human(v) if isinstance(v, dict) else str(v) for v in value) + "]"
        elif isinstance(value, dict):
            value = "{" + _human(value) + "}"
        parts.append(f"{key}={value}")
    return " ".join(parts)


def _lemmas(args) -> tuple[list[dict], int]:
    names = ("l1", "l3", "carmichael") if args.lemma == "all" else (args.lemma,)
    records, status = [], EXIT_OK
    for name in names:
        d_max, index_max = LEMMA_DEFAULTS[name]
        if args.d is not None:
            ds = [args.d]
            pell.check_d(args.d)
        else:
            ds = lucas.nonsquares(args.d_max if args.d_max is not None else d_max)
        if name == "carmichael":
            index_max = args.n_max if args.n_max is not None else index_max
            found = [v for d in ds for v in lucas.check_carmichael(d, index_max, args.bound)]
        else:
            index_max = args.k_max if args.k_max is not None else index_max
            check = lucas.check_lemma1 if name == "l1" else lucas.check_lemma3
            found = [v for d in ds for v in check(d, index_max)]
        if found:
            status = EXIT_VIOLATION
        records.append({
            "lemma": name,
            "d_count": str(len(ds)),
            "index_max": str(index_max),
            "violations": [v.to_json() for v in found],
        })
    return records, status


def _dispatch(args) -> tuple[list[dict], int]:
    cmd = args.command
    if cmd == "pell":
        if args.k is not None:
            pt = pell.solution_at(args.d, args.k)
            return [{"d": str(pt.d), "k": str(pt.k), "u": str(pt.u), "v": str(pt.v)}], EXIT_OK
        if args.u is not None:
            k = pell.index_of_u(args.d, args.u)
            return [{"d": str(args.d), "u": str(args.u), "k": None if k is None else str(k)}], EXIT_OK
        f = pell.fundamental_solution(args.d)
        return [{"d": str(f.d), "u1": str(f.u1), "v1": str(f.v1)}], EXIT_OK
    if cmd == "lemmas":
        return _lemmas(args)
    if cmd == "primitive-divisors":
        return [lucas.primitive_divisors(args.d, args.n).to_json()], EXIT_OK
    if cmd == "ljunggren":
        y_max = args.y_max if args.y_max is not None else ljunggren.default_y_max(args.p)
        return [s.to_json() for s in ljunggren.search_ljunggren(args.p, y_max)], EXIT_OK
    if cmd == "evaluate":
        cert = diophantine.evaluate(args.a, args.b, args.n)
        if cert is not None:
            return [cert.to_json()], EXIT_OK
        record = {"a": str(args.a), "b": str(args.b), "n": str(args.n), "solution": None,
                  "obstruction": diophantine.decompose(args.a, args.b, args.n).to_json()}
        return [record], EXIT_VIOLATION if args.expect_solution else EXIT_OK
    if cmd == "search":
        certs = diophantine.search(args.a_max, args.b_max, args.n_max,
                                   a_min=args.a_min, b_min=args.b_min, shards=args.shards)
        return [c.to_json() for c in certs], EXIT_OK
    if cmd == "verify":
        report = diophantine.verify_scope(args.scope, args.a_max, args.b_max, args.n_max, shards=args.shards)
        return [report.to_json()], EXIT_OK if report.ok else EXIT_VIOLATION
    raise UsageError(f"unknown command {cmd}")  # pragma: no cover


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        records, status = _dispatch(args)
    except (UsageError, DomainError) as exc:
        print(f"expdioph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        text = "".join(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n" for r in records)
    else:
        text = "".join(_human(r) + "\n" for r in records)
    stdout.write(text)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
