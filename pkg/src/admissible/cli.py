"""Command-line interface: ``admissible <command> ...``.

Exit status is 0 on success, 1 when a verification check fails and 2 for
usage or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import random
import re
import statistics
import sys
import time
from collections.abc import Callable, Sequence
from fractions import Fraction
from pathlib import Path

from . import numeric, tame
from .exceptions import DomainError
from .permutations import RULES, enumerate_admissible, inv_f
from .suites import SUITE_CAPS, run_suite

OUTPUT_DIR_ENV = "ADMISSIBLE_OUTPUT_DIR"
DEFAULT_SEED = 20240611
EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
MAX_WALKDATA_LEVEL = 20
MAX_LISTING_LEVEL = 4


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output


def _emit(args, fields: Sequence[str], rows: list[dict]) -> None:
    fmt = args.format
    if fmt == "json":
        text = json.dumps(rows, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = "".join(" ".join(str(row[f]) for f in fields) + "\n" for row in rows)
    _write(args, text)


def _write(args, text: str) -> None:
    if args.output is None:
        sys.stdout.write(text)
        return
    path = Path(args.output)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# eval


def _need(args, *names: str) -> list[int]:
    missing = [name for name in names if getattr(args, name) is None]
    if missing:
        raise UsageError(f"{args.function} needs " + ", ".join(f"--{m}" for m in missing))
    return [getattr(args, name) for name in names]


EVALUATORS: dict[str, tuple[tuple[str, ...], Callable[..., int]]] = {
    "binomial": (("n", "i"), numeric.binomial),
    "sbc": (("n", "i"), numeric.sbc),
    "weight": (("k",), numeric.weight),
    "istep": (("n", "k"), numeric.istep),
    "walk": (("n", "k"), numeric.walk_value),
    "quantile": (("n", "k"), numeric.quantile_value),
    "ew": (("j", "t"), tame.ew),
    "beta": (("n", "j", "m"), tame.beta_rank),
    "f": (("n", "k"), RULES["F"]),
    "inv_f": (("n", "m"), inv_f),
    "g": (("n", "k"), RULES["G"]),
    "h": (("n", "k"), RULES["H"]),
}


def cmd_eval(args) -> int:
    names, fn = EVALUATORS[args.function]
    value = fn(*_need(args, *names))
    if args.format == "plain":
        _write(args, f"{value}\n")
    else:
        _emit(args, ("function", "value"), [{"function": args.function, "value": value}])
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    cap = SUITE_CAPS.get(args.suite)
    if cap is not None and args.n > cap:
        raise DomainError(f"suite {args.suite} supports n <= {cap}, got {args.n}")
    checks = run_suite(args.suite, args.n, args.workers)
    if args.format == "plain":
        lines = []
        for check in checks:
            status = "PASS" if check.passed else "FAIL"
            line = f"{check.name}, {status}"
            if check.detail:
                line += f"  ({check.detail})"
            lines.append(line)
        _write(args, "\n".join(lines) + "\n")
    else:
        rows = [
            {"check": c.name, "status": "PASS" if c.passed else "FAIL", "detail": c.detail} for c in checks
        ]
        _emit(args, ("check", "status", "detail"), rows)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAILED


# ---------------------------------------------------------------------------
# walkdata and converge


def exact_decimal(num: int, exp: int) -> str:
    """``num / 2**exp`` written out exactly in base 10."""
    if exp == 0:
        return str(num)
    scaled = num * 5**exp
    whole, frac = divmod(scaled, 10**exp)
    digits = f"{frac:0{exp}d}".rstrip("0")
    return f"{whole}.{digits}" if digits else str(whole)


def cmd_walkdata(args) -> int:
    n = args.n
    if not 1 <= n <= MAX_WALKDATA_LEVEL:
        raise DomainError(f"walkdata needs 1 <= n <= {MAX_WALKDATA_LEVEL}, got {n}")
    rows = [
        {
            "k": k,
            "left_endpoint": exact_decimal(k, n),
            "walk_value": numeric.walk_value(n, k),
            "quantile_value": numeric.quantile_value(n, k),
        }
        for k in range(1 << n)
    ]
    _emit(args, ("k", "left_endpoint", "walk_value", "quantile_value"), rows)
    return EXIT_OK


_PROBE = re.compile(r"^\s*(\d+)\s*/\s*(?:2\s*\^\s*(\d+)|(\d+))\s*$")


def parse_probe(text: str) -> Fraction:
    """Parse ``a/2^e`` or ``a/b`` with ``b`` a power of two into a fraction in ``(0, 1)``."""
    match = _PROBE.match(text)
    if match is None:
        raise DomainError(f"probe {text!r} is not of the form a/2^e or a/b")
    num = int(match.group(1))
    if match.group(2) is not None:
        den = 1 << int(match.group(2))
    else:
        den = int(match.group(3))
        if den <= 0 or den & (den - 1):
            raise DomainError(f"probe {text!r} is not dyadic: {den} is not a power of two")
    x = Fraction(num, den)
    if not 0 < x < 1:
        raise DomainError(f"probe {text!r} must lie strictly between 0 and 1")
    return x


def converge_rows(levels: Sequence[int], probes: Sequence[str]) -> list[dict]:
    normal = statistics.NormalDist()
    rows = []
    for text in probes:
        x = parse_probe(text)
        target = normal.inv_cdf(float(x))
        for n in levels:
            k = (x.numerator << n) // x.denominator
            value = numeric.quantile_value(n, k)
            scaled = value / math.sqrt(n)
            rows.append({
                "x": f"{x.numerator}/{x.denominator}",
                "n": n,
                "k": k,
                "quantile_value": value,
                "scaled": repr(scaled),
                "inverse_normal": repr(target),
                "abs_error": repr(abs(scaled - target)),
            })
    return rows


def cmd_converge(args) -> int:
    levels = args.n or [4096]
    probes = args.x or ["1/4", "1/2", "3/4", "3686/4096"]
    rows = converge_rows(levels, probes)
    _emit(args, ("x", "n", "k", "quantile_value", "scaled", "inverse_normal", "abs_error"), rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench


def bench_rows(rules: Sequence[str], levels: Sequence[int], samples: int, seed: int) -> list[dict]:
    rng = random.Random(seed)
    rows = []
    for rule in rules:
        fn = RULES[rule.upper()]
        previous = None
        for n in levels:
            times = []
            for _ in range(samples):
                k = rng.randrange(1 << n)
                start = time.perf_counter()
                fn(n, k)
                times.append(time.perf_counter() - start)
            median = statistics.median(times)
            ratio = "" if previous is None else f"{median / previous:.3f}"
            rows.append({"rule": rule.lower(), "n": n, "samples": samples, "median_seconds": f"{median:.6f}", "ratio": ratio})
            previous = median
    return rows


def cmd_bench(args) -> int:
    levels = args.n or [256, 512, 1024]
    rules = args.rule or ["f", "g", "h"]
    if args.samples < 1:
        raise DomainError("--samples must be at least 1")
    rows = bench_rows(rules, levels, args.samples, args.seed)
    _emit(args, ("rule", "n", "samples", "median_seconds", "ratio"), rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# listing


def cmd_admissible(args) -> int:
    n = args.n
    if not 1 <= n <= MAX_LISTING_LEVEL:
        raise DomainError(f"listing needs 1 <= n <= {MAX_LISTING_LEVEL}, got {n}")
    rows = []
    for index, pi in enumerate(enumerate_admissible(n)):
        if args.limit is not None and index >= args.limit:
            break
        rows.append({"index": index, "mapping": " ".join(map(str, pi.values))})
    _emit(args, ("index", "mapping"), rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="admissible", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="csv"):
        p.add_argument("--format", choices=("csv", "json", "plain"), default=default_format)
        p.add_argument("--output", help=f"write here instead of stdout (relative to ${OUTPUT_DIR_ENV} if set)")
        return p

    p = common(sub.add_parser("eval", help="evaluate one function"), "plain")
    p.add_argument("function", choices=sorted(EVALUATORS))
    for name in ("n", "k", "m", "i", "j", "t"):
        p.add_argument(f"--{name}", type=int)
    p.set_defaults(handler=cmd_eval)

    p = common(sub.add_parser("verify", help="run a verification suite"), "plain")
    p.add_argument("--suite", choices=(*SUITE_CAPS, "all"), default="all")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(handler=cmd_verify)

    p = common(sub.add_parser("walkdata", help="walk and quantile step functions on every atom"))
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_walkdata)

    p = common(sub.add_parser("converge", help="scaled quantile walk against the inverse normal"))
    p.add_argument("--n", type=int, action="append", help="level; repeatable (default 4096)")
    p.add_argument("--x", action="append", help="dyadic probe a/2^e; repeatable")
    p.set_defaults(handler=cmd_converge)

    p = common(sub.add_parser("bench", help="time f/g/h at random arguments"))
    p.add_argument("--n", type=int, action="append", help="level; repeatable (default 256, 512, 1024)")
    p.add_argument("--rule", action="append", choices=("f", "g", "h"))
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(handler=cmd_bench)

    p = common(sub.add_parser("admissible", help="list every admissible permutation for n <= 4"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int)
    p.set_defaults(handler=cmd_admissible)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (DomainError, UsageError) as exc:
        print(f"admissible: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
