"""Command line: solve, reduce, gen, bench, verify.

Exit status 0 on success, 2 on bad input or an infeasible spec, 3 when a
verification check fails.
"""

from __future__ import annotations

import argparse
import sys

from .bench import BenchConfig, failed, run_bench
from .fileformat import format_instance, read_instance
from .graph import FormatError
from .instgen import GenSpec, InfeasibleSpec, gen
from .oracle import BRUTEFORCE_LIMIT, mwis_bruteforce
from .reduce import ReductionLog, reduce_exhaustively
from .solver import solve

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 2, 3
SOLVE_VERIFY_N = 18


class InputError(Exception):
    pass


def _load(path: str):
    try:
        g, _ = read_instance(path)
    except FormatError as e:
        raise InputError(f"{path}: {e}") from e
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from e
    return g


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _print_stats(stats) -> None:
    print(f"nodes {stats.nodes}")
    print(f"leaves {stats.leaves}")
    print(f"max_depth {stats.max_depth}")
    print(f"peak_measure {stats.peak_measure}")
    print("steps " + " ".join(f"{k}={v}" for k, v in sorted(stats.per_step.items())))
    print("rules " + " ".join(f"{k}={v}" for k, v in sorted(stats.per_rule.items())))


def cmd_solve(args) -> int:
    g = _load(args.input)
    res = solve(g, check_lemmas=args.check_lemmas, parallel=args.parallel, threads=args.threads)
    print(f"alpha {res.alpha}")
    _print_stats(res.stats)
    status = EXIT_OK
    for msg in res.stats.lemma_violations:
        print(f"violation {msg}", file=sys.stderr)
        status = EXIT_VERIFY
    if args.verify:
        if g.n_alive > SOLVE_VERIFY_N:
            print(f"verify skipped: n = {g.n_alive} > {SOLVE_VERIFY_N}", file=sys.stderr)
        else:
            truth = mwis_bruteforce(g)
            if truth != res.alpha:
                print(f"verify FAILED: brute force gives {truth}", file=sys.stderr)
                return EXIT_VERIFY
            print("verify ok")
    return status


def cmd_reduce(args) -> int:
    g = _load(args.input)
    log = ReductionLog(keep_events=False)
    reduce_exhaustively(g, log)
    _emit(format_instance(g, mc=log.mc), args.output)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.gadget:
        spec = GenSpec(n=0, seed=args.seed, model="gadget", rule=args.gadget)
    elif args.regular is not None:
        spec = GenSpec(n=args.n, seed=args.seed, model="regular", degree=args.regular,
                       weight_range=tuple(args.weights))
    else:
        spec = GenSpec(n=args.n, target_avg_degree=args.avg_degree, seed=args.seed,
                       model="gnm", weight_range=tuple(args.weights))
    try:
        g = gen(spec)
    except InfeasibleSpec as e:
        raise InputError(str(e)) from e
    _emit(format_instance(g, comments=[f"generated {spec}"]), args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.n_min > args.n_max:
        raise InputError("--n-min exceeds --n-max")
    cfg = BenchConfig(model="regular" if args.regular is not None else "gnm",
                      degree=args.regular or 3, avg_degree=args.avg_degree,
                      n_min=args.n_min, n_max=args.n_max, count=args.count, seed=args.seed,
                      weight_range=tuple(args.weights), verify=args.verify,
                      check_lemmas=args.check_lemmas, timing=args.timing)
    try:
        lines, records = run_bench(cfg, threads=args.threads)
    except InfeasibleSpec as e:
        raise InputError(str(e)) from e
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_VERIFY if failed(records) else EXIT_OK


def cmd_verify(args) -> int:
    g = _load(args.input)
    if g.n_alive > BRUTEFORCE_LIMIT:
        raise InputError(f"verify needs n <= {BRUTEFORCE_LIMIT}, got {g.n_alive}")
    res = solve(g, check_lemmas=True)
    truth = mwis_bruteforce(g)
    print(f"alpha {res.alpha}")
    print(f"bruteforce {truth}")
    bad = list(res.stats.lemma_violations)
    if truth != res.alpha:
        bad.append("alpha mismatch")
    for msg in bad:
        print(f"violation {msg}", file=sys.stderr)
    print("verify " + ("FAILED" if bad else "ok"))
    return EXIT_VERIFY if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wmis", description="Exact maximum weighted independent set.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("input")
    p.add_argument("--verify", action="store_true", help="cross-check with brute force (n <= 18)")
    p.add_argument("--parallel", action="store_true", help="solve the first branch in worker processes")
    p.add_argument("--threads", type=int, default=2)
    p.add_argument("--check-lemmas", action="store_true", help="check measure decreases at every step")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", help="write the reduced kernel with a 'c mc' trailer")
    p.add_argument("input")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", help="generate a seeded instance")
    p.add_argument("--n", type=int, default=20)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--regular", type=int, metavar="D", help="D-regular pairing model")
    group.add_argument("--avg-degree", type=float, default=3.0, help="gnm with this average degree")
    group.add_argument("--gadget", metavar="RULE", help="rule gadget, e.g. R8 or R10.2")
    p.add_argument("--weights", type=int, nargs=2, default=[1, 100], metavar=("LO", "HI"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="solve a seeded suite and report leaves against the bound")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--regular", type=int, metavar="D")
    group.add_argument("--avg-degree", type=float, default=3.0)
    p.add_argument("--n-min", type=int, default=30)
    p.add_argument("--n-max", type=int, default=60)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--weights", type=int, nargs=2, default=[1, 100], metavar=("LO", "HI"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--check-lemmas", action="store_true")
    p.add_argument("--timing", action="store_true", help="append a wall-time column")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="solve with all checks and compare against brute force")
    p.add_argument("input")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
