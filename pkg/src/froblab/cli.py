"""Command-line entry point: ``froblab <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time
from fractions import Fraction

from .determinantal import (minors_ideal, msv_fpt, verify_main, witness_check)
from .frobenius import decompose, eth_root
from .groebner import BudgetExceeded, budget
from .ideals import (Ideal, format_ideal_text, ideal_leq, ideal_to_json,
                     parse_ideal_text)
from .poly import ExponentOverflowError, PolynomialError, RingSpec
from .testideal import (ChainError, StabilizationPolicy, format_rational,
                        fpt_bracket, nu, parse_rational, rational_grid,
                        scan_grid, test_ideal, threshold_estimate)

SCHEMA = 1

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _read_ideal(path: str) -> Ideal:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_ideal_text(text)
    except PolynomialError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(args, payload: dict, text: str) -> None:
    if args.fmt == "json":
        body = {"schema": SCHEMA, "command": args.command}
        body.update(payload)
        sys.stdout.write(json.dumps(body, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _join(values) -> str:
    return ", ".join(values) or "none"


# -- subcommands ----------------------------------------------------------------


def cmd_eth_root(args) -> int:
    I = _read_ideal(args.ideal)
    J = eth_root(I, args.e)
    _emit(args, {"e": args.e, "ideal": ideal_to_json(J)}, format_ideal_text(J))
    return EXIT_OK


def cmd_nu(args) -> int:
    a, b = _read_ideal(args.a), _read_ideal(args.b)
    if a.ring != b.ring:
        raise UsageError("a and b must live in the same ring")
    v = nu(a, b, args.e, args.radical_bound)
    q = a.ring.p ** args.e
    payload = {"e": args.e, "q": q, "nu": v, "ratio": format_rational(Fraction(v, q))}
    _emit(args, payload, f"nu = {v} at q = {q}")
    return EXIT_OK


def cmd_fpt(args) -> int:
    I = _read_ideal(args.ideal)
    if args.b:
        b = _read_ideal(args.b)
        est = threshold_estimate(I, b, args.emax)
    else:
        est = fpt_bracket(I, args.emax)
    payload = est.as_dict()
    lines = [f"q = {q}: nu = {v}" for q, v in est.nu_values]
    lines.append(f"{payload['lower']} <= threshold <= {payload['upper']}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _policy(args) -> StabilizationPolicy:
    confirm = getattr(args, "confirm", None) or 1
    return StabilizationPolicy(args.emax, confirm, not getattr(args, "no_certify", False))


def cmd_test_ideal(args) -> int:
    I = _read_ideal(args.ideal)
    res = test_ideal(I, args.lam, _policy(args))
    payload = {
        "lambda": format_rational(res.lam),
        "status": res.status,
        "e": res.e,
        "exponents": [{"q": q, "N": N} for q, N in res.exponents],
        "ideal": ideal_to_json(res.ideal),
    }
    head = f"# lambda {payload['lambda']}: {res.status} at e = {res.e}\n"
    _emit(args, payload, head + format_ideal_text(res.ideal))
    return EXIT_OK


def cmd_jumps(args) -> int:
    I = _read_ideal(args.ideal)
    if args.lo < 0 or args.hi < args.lo:
        raise UsageError("need 0 <= lo <= hi")
    grid = rational_grid(args.lo, args.hi, args.denom)
    rows = scan_grid(I, grid, _policy(args))
    payload = {
        "lo": format_rational(args.lo),
        "hi": format_rational(args.hi),
        "denom": args.denom,
        "jumps": [format_rational(lam) for lam, _, d in rows if d],
        "points": [{"lambda": format_rational(lam), "status": r.status, "e": r.e,
                    "drop": d, "generators": [g.render() for g in r.ideal.generators]}
                   for lam, r, d in rows],
        "unstabilized": [format_rational(lam) for lam, r, _ in rows if not r.stabilized],
    }
    lines = [f"{p['lambda']:>7} {p['status']:<12} e={p['e']}" + ("  drop" if p["drop"] else "")
             for p in payload["points"]]
    lines.append(f"jumps: {_join(payload['jumps'])}")
    lines.append(f"unstabilized: {_join(payload['unstabilized'])}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_minors(args) -> int:
    I = minors_ideal(args.m, args.n, args.t, args.p)
    text = format_ideal_text(I)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        text = f"wrote {len(I.generators)} minors to {args.out}\n"
    _emit(args, {"ideal": ideal_to_json(I, groebner=False)}, text)
    return EXIT_OK


def cmd_msv_fpt(args) -> int:
    v = msv_fpt(args.m, args.n, args.t)
    _emit(args, {"m": args.m, "n": args.n, "t": args.t, "fpt": format_rational(v)},
          format_rational(v))
    return EXIT_OK


def cmd_verify_main(args) -> int:
    if args.lmax is None:
        args.lmax = msv_fpt(args.m, args.n, min(args.m, args.n)) + 2
    grid = rational_grid(0, args.lmax, args.denom)
    confirm = args.confirm or args.emax
    report = verify_main(args.m, args.n, args.p, grid,
                         StabilizationPolicy(args.emax, confirm), args.nu_levels)
    payload = report.as_dict(args.timings)
    lines = [f"verify-main m={report.m} n={report.n} p={report.p} "
             f"fpt={format_rational(report.fpt)}"]
    for c in report.cells:
        d = c.as_dict(args.timings)
        extra = f" {d['seconds']}s" if args.timings else ""
        lines.append(f"  lambda={d['lambda']:>6} {d['result']:4} {c.status} e={c.e}{extra}")
    lines.append("  jumps found " + ", ".join(payload["jumps"]["found"])
                 + " expected " + ", ".join(payload["jumps"]["expected"]))
    lines.append("PASS" if report.passed else "FAIL")
    _emit(args, payload, "\n".join(lines))
    if not report.passed:
        return EXIT_FAIL
    return EXIT_BUDGET if report.skipped else EXIT_OK


def cmd_witness(args) -> int:
    rep = witness_check(args.m, args.n, args.p, args.e)
    payload = rep.as_dict()
    lines = [f"witness m={rep.m} n={rep.n} p={rep.p} e={rep.e} eta={payload['eta']}"]
    lines += [f"  {k}: {'ok' if v else 'FAILED'}" for k, v in rep.checks.items()]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if rep.passed else EXIT_FAIL


def _random_ideal(rng: random.Random, ring: RingSpec, gens: int, degree: int) -> Ideal:
    polys = []
    for _ in range(gens):
        f = ring.zero
        for _ in range(rng.randint(1, 3)):
            exps = [0] * ring.nvars
            for _ in range(rng.randint(1, degree)):
                exps[rng.randrange(ring.nvars)] += 1
            f = f + ring.monomial(exps, rng.randrange(1, ring.p))
        polys.append(f)
    return Ideal(ring, polys)


def cmd_selfcheck(args) -> int:
    """Randomized consistency checks of the root and test-ideal machinery."""
    rng = random.Random(args.seed)
    failures = []
    for k in range(args.count):
        p = rng.choice((2, 3, 5))
        ring = RingSpec.of(p, ["x", "y", "z"][:rng.randint(1, 3)])
        a = _random_ideal(rng, ring, rng.randint(1, 3), 4)
        e = rng.randint(1, 2)
        q = p ** e
        root = eth_root(a, e)
        if not ideal_leq(a, root.bracket_power(q)):
            failures.append(f"case {k}: a not inside root^[q]")
        for g in a.generators:
            if decompose(g, e).reassemble(ring) != g:
                failures.append(f"case {k}: decomposition does not reassemble")
        lam = Fraction(rng.randint(1, 12), rng.randint(1, 4))
        tau = test_ideal(a, lam, StabilizationPolicy(2, 2)).ideal
        if not ideal_leq(a ** (lam.numerator // lam.denominator + 1), tau):
            failures.append(f"case {k}: a^(floor(lam)+1) not inside tau({lam})")
    payload = {"seed": args.seed, "count": args.count, "failures": failures}
    _emit(args, payload, "\n".join(failures + [f"{args.count} cases, {len(failures)} failures"]))
    return EXIT_FAIL if failures else EXIT_OK


# -- parser ---------------------------------------------------------------------


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--budget", type=_positive, default=default,
                        help="Groebner pair limit (FROBLAB_BUDGET overrides)")
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json",
                     default=default)
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text",
                     default=default)
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS if suppress else 0)
    parser.add_argument("--timings", action="store_true",
                        default=argparse.SUPPRESS if suppress else False,
                        help="include wall-clock timings (output is then not reproducible)")
    parser.add_argument("-v", "--verbose", action="count",
                        default=argparse.SUPPRESS if suppress else 0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="froblab", allow_abbrev=False,
                                     description="Frobenius roots, F-thresholds and test ideals over F_p.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name, func, fmt, help):
        sp = sub.add_parser(name, help=help, allow_abbrev=False)
        _global_flags(sp, suppress=True)
        sp.set_defaults(func=func, default_fmt=fmt)
        return sp

    sp = add("eth-root", cmd_eth_root, "text", "e-th root ideal of an ideal file")
    sp.add_argument("--e", type=_nonneg, required=True)
    sp.add_argument("--ideal", required=True)

    sp = add("nu", cmd_nu, "json", "largest r with a^r outside b^[p^e]")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--e", type=_nonneg, required=True)
    sp.add_argument("--radical-bound", type=_positive, default=32)

    sp = add("fpt", cmd_fpt, "json", "bracket on the F-pure threshold")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--emax", type=_nonneg, required=True)
    sp.add_argument("--b", help="bracket the F-threshold with respect to this ideal instead")

    sp = add("test-ideal", cmd_test_ideal, "json", "generalized test ideal at lambda")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--lambda", dest="lam", type=_rational, required=True)
    sp.add_argument("--emax", type=_positive, default=3)
    sp.add_argument("--confirm", type=_positive, default=1)
    sp.add_argument("--no-certify", action="store_true")

    sp = add("jumps", cmd_jumps, "json", "jumping numbers on a rational grid")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--lo", type=_rational, required=True)
    sp.add_argument("--hi", type=_rational, required=True)
    sp.add_argument("--denom", type=_positive, required=True)
    sp.add_argument("--emax", type=_positive, default=3)
    sp.add_argument("--confirm", type=_positive, default=1)

    sp = add("minors", cmd_minors, "text", "ideal of t x t minors of a generic matrix")
    for flag in ("--m", "--n", "--t", "--p"):
        sp.add_argument(flag, type=_positive, required=True)
    sp.add_argument("--out")

    sp = add("msv-fpt", cmd_msv_fpt, "text", "closed-form F-pure threshold of t-minors")
    for flag in ("--m", "--n", "--t"):
        sp.add_argument(flag, type=_positive, required=True)

    sp = add("verify-main", cmd_verify_main, "json",
             "compare computed test ideals of maximal minors with the closed form")
    for flag in ("--m", "--n", "--p"):
        sp.add_argument(flag, type=_positive, required=True)
    sp.add_argument("--denom", type=_positive, default=4)
    sp.add_argument("--lmax", type=_rational, default=None)
    sp.add_argument("--emax", type=_positive, default=3)
    sp.add_argument("--confirm", type=_positive, default=None,
                    help="equal steps accepted as stabilization (default: emax)")
    sp.add_argument("--nu-levels", type=_nonneg, default=2)

    sp = add("witness", cmd_witness, "json", "lex initial-term witness for maximal minors")
    for flag in ("--m", "--n", "--p"):
        sp.add_argument(flag, type=_positive, required=True)
    sp.add_argument("--e", type=_positive, default=1)

    sp = add("selfcheck", cmd_selfcheck, "text", "randomized consistency checks")
    sp.add_argument("--count", type=_positive, default=20)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.fmt is None:
        args.fmt = args.default_fmt
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    env = os.environ.get("FROBLAB_BUDGET")
    limit = args.budget
    if env:
        try:
            limit = int(env)
        except ValueError:
            print(f"froblab: FROBLAB_BUDGET is not an integer: {env!r}", file=sys.stderr)
            return EXIT_USAGE
    t0 = time.perf_counter()
    try:
        if limit is not None:
            with budget(limit):
                code = args.func(args)
        else:
            code = args.func(args)
    except BudgetExceeded as exc:
        print(f"froblab: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, PolynomialError, ExponentOverflowError, ValueError) as exc:
        print(f"froblab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ChainError as exc:
        print(f"froblab: consistency failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.timings:
        print(f"froblab: {args.command} took {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
