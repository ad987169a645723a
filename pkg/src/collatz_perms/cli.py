"""Command-line front end: ``collatz-perms <subcommand> ...``."""
from __future__ import annotations

import argparse
import logging
import sys


from .census import census as run_census, classify, et_list, to_csv, to_json
from .core import collatz_perm, default_guard, format_perm, trace, trace_type
from .errors import CheckpointError, GuardExceeded, InvalidType, PowerOfTwoStart
from .figure import render_family_svg
from .type_algebra import congruence, sigma_to_affine, validate_type
from .witness import start_value, witness_schedule

MAX_LENGTH = 34
PRINT_DIGITS_LIMIT = 4096  # bits; larger start values are summarized


class UsageError(Exception):
    def __init__(self, msg: str, code: int = 2):
        super().__init__(msg)
        self.code = code


def _positive_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"not a positive integer: {s!r}")
    return v


def _type_arg(s: str) -> str:
    return "" if s == "-" else s


def _sigma(s: str) -> str:
    try:
        return validate_type(s)
    except InvalidType as exc:
        raise UsageError(str(exc)) from None


def cmd_trace(args) -> None:
    t = trace(args.x, default_guard())
    print("trace:", " ".join(map(str, t)))
    print("type:", trace_type(t) or "-")
    print("perm:", format_perm(collatz_perm(args.x)))


def cmd_perm(args) -> None:
    print(format_perm(collatz_perm(args.x, default_guard())))


def _big(x: int) -> str:
    if x.bit_length() <= PRINT_DIGITS_LIMIT:
        return str(x)
    return f"<{len(str(x))}-digit integer>"


def cmd_type_info(args) -> None:
    sigma = _sigma(args.sigma)
    form = sigma_to_affine(sigma)
    cong = congruence(sigma)
    sched = witness_schedule(sigma)
    cl = classify(sigma)
    print("type:", sigma or "-")
    print(f"form: {form}  (p={form.p}, q={form.q}, b={form.b})")
    print(f"congruence: A = {cong.c} mod {cong.modulus}")
    print(f"schedule: a = {sched.a0} + j*{sched.period}")
    print(f"first valid witness: a = {cl.a_first}")
    x = start_value(sigma, cl.a_first)
    print("start value:", _big(x))
    if x.bit_length() <= PRINT_DIGITS_LIMIT:
        print("trace:", " ".join(map(str, trace(x, default_guard()))))
    if cl.x_max is not None:
        print(f"x_max: {cl.x_max.numerator}/{cl.x_max.denominator} (~{float(cl.x_max):.2f})")
    print("permutations:", cl.perm_count)
    if cl.is_et:
        print(f"perm (a={cl.a_first}):", format_perm(cl.perm_first))
        print(f"perm (a={cl.a_first + sched.period}):", format_perm(cl.perm_asymptotic))
    else:
        print("perm:", format_perm(cl.perm_first))


def cmd_et_list(args) -> None:
    ets = et_list(args.m, threads=args.threads)
    if args.format == "json":
        import json

        print(json.dumps([e.to_json() for e in ets], indent=2))
        return
    for e in ets:
        print(f"{e.sigma}  c={e.c} mod {e.modulus}  a={e.a_first}")
        print("  first:", format_perm(e.perm_first))
        print("  asym: ", format_perm(e.perm_asymptotic))


def cmd_census(args) -> None:
    if not 1 <= args.min <= args.max <= MAX_LENGTH:
        raise UsageError(f"need 1 <= --min <= --max <= {MAX_LENGTH}")
    checkpoint = None
    if args.resume:
        checkpoint = args.resume
    try:
        rows = run_census(args.min, args.max, threads=args.threads, checkpoint=checkpoint)
    except OSError as exc:
        raise UsageError(f"cannot write checkpoint: {exc}", 4) from None
    text = to_csv(rows) if args.format == "csv" else to_json(rows)
    if args.out:
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}", 4) from None
        for r in rows:
            print(f"length {r.n}: {r.total} permutations, excess {r.excess}")
    else:
        sys.stdout.write(text)


def cmd_figure(args) -> None:
    sigma = _sigma(args.sigma)
    svg = render_family_svg(sigma, args.witness or [])
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(svg)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}", 4) from None
    else:
        sys.stdout.write(svg)


def cmd_verify(args) -> int:
    from .verify import run

    failed = run(args.level)
    if failed:
        print(f"{len(failed)} check(s) failed:", file=sys.stderr)
        for name in failed:
            print(f"  {name}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="collatz-perms", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", help="trace, type and permutation of x")
    p.add_argument("x", type=_positive_int)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("perm", help="Collatz permutation C(x)")
    p.add_argument("x", type=_positive_int)
    p.set_defaults(func=cmd_perm)

    p = sub.add_parser("type-info", help="congruence, witnesses and permutations of a type")
    p.add_argument("sigma", type=_type_arg, help="word over u,d; '-' for the empty type")
    p.set_defaults(func=cmd_type_info)

    p = sub.add_parser("et-list", help="excess-creating types of length m")
    p.add_argument("m", type=int)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--threads", type=_positive_int, default=1)
    p.set_defaults(func=cmd_et_list)

    p = sub.add_parser("census", help="count Collatz permutations per length")
    p.add_argument("--min", type=int, default=1)
    p.add_argument("--max", type=int, default=24)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    p.add_argument("--resume", metavar="CHECKPOINT", help="checkpoint file to resume from and update")
    p.add_argument("--threads", type=_positive_int, default=1)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("figure", help="SVG of a type's line family")
    p.add_argument("sigma", type=_type_arg)
    p.add_argument("--witness", type=_positive_int, action="append", metavar="A")
    p.add_argument("--out")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="run paper regression checks")
    p.add_argument("--level", choices=["quick", "full"], default="quick")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args) or 0
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except PowerOfTwoStart as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CheckpointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
