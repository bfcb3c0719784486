"""Command-line front end.

Exit status: 0 on success, 1 on domain errors (overflow, not found, ...),
2 on usage or syntax errors. Data goes to stdout, traces and diagnostics
to stderr. Output is computed in full before anything is printed, so an
overflow never leaves a partial list behind.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence

from . import arithmetic, codec, progression, series, sieve
from .errors import CanonicalError, TowerError, TowerSyntaxError
from .primes import is_prime
from .textio import format_polytower, format_tower, parse_tower, value_order
from .tower import DEFAULT_CAP, Polytower, compare, decode, encode, evaluation_cap, multiply


def _prime_list(text: str) -> List[int]:
    try:
        primes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")
    for p in primes:
        if not is_prime(p):
            raise argparse.ArgumentTypeError(f"{p} is not prime")
    if len(set(primes)) != len(primes):
        raise argparse.ArgumentTypeError("primes must be distinct")
    return sorted(primes)


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _nonnegative(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {n}")
    return n


def _record(**fields) -> str:
    return " ".join(f"{k}={v}" for k, v in fields.items())


def _poly_lines(poly: Polytower, fmt: str) -> List[str]:
    if fmt == "text":
        return [format_polytower(poly)]
    return [
        _record(kind="term", coefficient=poly.coefficient(t), tower=format_tower(t), value=str(decode(t)))
        for t in value_order(poly.towers())
    ]


def _tower_lines(t, fmt: str) -> List[str]:
    if fmt == "text":
        return [format_tower(t)]
    return [_record(kind="tower", tower=format_tower(t), value=str(decode(t)))]


def _value_list_lines(poly: Polytower, fmt: str, kind: str) -> List[str]:
    towers = value_order(poly.towers())
    if fmt == "text":
        return [str(decode(t)) for t in towers]
    return [_record(kind=kind, value=str(decode(t)), tower=format_tower(t)) for t in towers]


def cmd_encode(args) -> List[str]:
    return _tower_lines(encode(args.n), args.format)


def cmd_decode(args) -> List[str]:
    t = parse_tower(args.expr)
    v = decode(t)
    if args.format == "text":
        return [str(v)]
    return [_record(kind="value", tower=format_tower(t), value=str(v))]


def cmd_mul(args) -> List[str]:
    return _tower_lines(multiply(parse_tower(args.a), parse_tower(args.b)), args.format)


def cmd_add(args) -> List[str]:
    a, b = parse_tower(args.a), parse_tower(args.b)
    if args.strategy == "oracle":
        r = arithmetic.add(a, b)
    elif args.strategy == "sqrt":
        r = arithmetic.add_via_sqrt(a, b)
    else:
        limit = 2 * max(decode(a), decode(b))
        r = arithmetic.add_via_search(a, b, arithmetic.integer_universe(limit))
    return _tower_lines(r, args.format)


def cmd_cmp(args) -> List[str]:
    a, b = parse_tower(args.a), parse_tower(args.b)
    name = compare(a, b).name.capitalize()
    if args.format == "text":
        return [name]
    return [_record(kind="ordering", result=name, left=format_tower(a), right=format_tower(b))]


def cmd_sieve(args) -> List[str]:
    primes, trace = sieve.primes_in_range(args.t)
    if args.trace:
        for line in trace.lines():
            print(line, file=args.stderr)
    if args.format == "text":
        return [str(p) for p in primes]
    return [_record(kind="prime", value=p, t=args.t) for p in primes]


def cmd_towers(args) -> List[str]:
    if args.iterations is None:
        poly = series.fixed_point(args.primes, args.bound)
    else:
        poly = series.euler_iterate(args.primes, args.iterations, args.bound, args.seed_height)
    return _value_list_lines(poly, args.format, "tower")


def cmd_rationals(args) -> List[str]:
    return _value_list_lines(series.rational_iterate(args.primes, args.iterations), args.format, "rational")


def cmd_poly(args) -> List[str]:
    p = codec.to_polynomial(encode(args.n))
    if args.format == "text":
        return [str(p)]
    return [
        _record(
            kind="polynomial",
            n=args.n,
            tower=format_tower(encode(args.n)),
            coefficients=",".join(map(str, p.coefficients)),
            at2=p(2),
        )
    ]


def cmd_freq(args) -> List[str]:
    f = series.pillar_frequency(args.pillar, args.limit)
    if args.format == "text":
        return [str(f)]
    return [_record(kind="frequency", pillar=args.pillar, limit=args.limit, value=str(f))]


def cmd_progression(args) -> List[str]:
    if args.check:
        ok = progression.check_relation(args.n)
        if args.format == "text":
            return ["true" if ok else "false"]
        return [_record(kind="relation", n=args.n, holds="true" if ok else "false")]
    return _poly_lines(progression.build_progression(args.n), args.format)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=_positive, default=argparse.SUPPRESS,
                        help=f"bit-length cap on every evaluation (default {DEFAULT_CAP})")
    common.add_argument("--format", choices=("text", "records"), default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="towerarith", description="Tower arithmetic toolkit.")
    parser.add_argument("--cap", type=_positive, default=DEFAULT_CAP)
    parser.add_argument("--format", choices=("text", "records"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", parents=[common], help="tower of a positive integer")
    p.add_argument("n", type=_positive)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", parents=[common], help="value of a tower")
    p.add_argument("expr")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("mul", parents=[common], help="product of two towers")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("add", parents=[common], help="sum of two towers")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--strategy", choices=("oracle", "sqrt", "search"), default="oracle")
    p.set_defaults(func=cmd_add)

    p = sub.add_parser("cmp", parents=[common], help="order two towers by value")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_cmp)

    p = sub.add_parser("sieve", parents=[common], help="primes in [2^t, 2^(t+1)]")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--trace", action="store_true", help="per-iteration summary on stderr")
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("towers", parents=[common], help="values generated over a prime vector")
    p.add_argument("--primes", type=_prime_list, required=True)
    p.add_argument("--bound", type=_positive, required=True)
    p.add_argument("--iterations", type=_nonnegative, default=None,
                   help="number of steps from the (1 + x_k) seed; omit to run to the fixed point")
    p.add_argument("--seed-height", type=_positive, default=1)
    p.set_defaults(func=cmd_towers)

    p = sub.add_parser("rationals", parents=[common], help="signed-exponent expansion over a prime vector")
    p.add_argument("--primes", type=_prime_list, required=True)
    p.add_argument("--iterations", type=_nonnegative, required=True)
    p.set_defaults(func=cmd_rationals)

    p = sub.add_parser("poly", parents=[common], help="base-2 polynomial form of n")
    p.add_argument("n", type=_positive)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("freq", parents=[common], help="fraction of [2, N] whose tower uses a pillar")
    p.add_argument("--pillar", type=_positive, required=True)
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=cmd_freq)

    p = sub.add_parser("progression", parents=[common], help="tower progression S_n")
    p.add_argument("--n", type=_nonnegative, required=True)
    p.add_argument("--check", action="store_true", help="verify the progression identities")
    p.set_defaults(func=cmd_progression)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.stderr = stderr
    try:
        with evaluation_cap(args.cap):
            lines = args.func(args)
    except (TowerSyntaxError, CanonicalError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=stderr)
        return 2
    except TowerError as exc:
        print(f"{type(exc).__name__}: {exc}", file=stderr)
        return 1
    for line in lines:
        print(line, file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
