"""Command-line entry point: ``oblivq {bench,sort,verify,postfix,stockspan}``."""
from __future__ import annotations

import argparse
import random
import sys
from typing import List, Optional

from .apps import encode_expr, eval_postfix, stock_span_values
from .bench import CSV_COLUMNS, STRUCTURES, run_sweep, write_csv, write_gnuplot
from .core import EMPTY, Meter
from .sort import o_mergesort, o_quicksort
from .verify import VERIFIABLE, verify


def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _fmt(v) -> str:
    return "-" if v is EMPTY else str(v)


def _cmd_bench(args: argparse.Namespace) -> int:
    names = [s.strip() for s in args.structure.split(",") if s.strip()]
    for name in names:
        if name not in STRUCTURES:
            print(f"unknown structure {name!r}; pick from {', '.join(STRUCTURES)}", file=sys.stderr)
            return 2
    rows = run_sweep(names, args.capacity, args.ops, args.seed, None)
    print(",".join(CSV_COLUMNS))
    for r in rows:
        print(f"{r.structure},{r.capacity},{r.ops},{r.wall_ms:.3f},{r.e_ops},{r.c_ops},{r.accesses}")
    if args.csv:
        write_csv(rows, args.csv)
        script = write_gnuplot(args.csv)
        print(f"wrote {args.csv} and {script}", file=sys.stderr)
    return 0


def _cmd_sort(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    values = [rng.randrange(10 * args.n) for _ in range(args.n)]
    m = Meter()
    if args.alg == "merge":
        out = o_mergesort(values, desc=args.desc, meter=m)
        ok = True
    else:
        res = o_quicksort(values, c=args.c, seed=args.seed, desc=args.desc, meter=m)
        out, ok = res.values, res.ok
    correct = out == sorted(values, reverse=args.desc)
    print(f"alg={args.alg} n={args.n} seed={args.seed} flagged_ok={ok} sorted={correct} "
          f"c_ops={m.c_ops} e_ops={m.e_ops} accesses={m.reads + m.writes}")
    if args.print:
        print(" ".join(_fmt(v) for v in out))
    return 0 if correct or not ok else 1


def _cmd_verify(args: argparse.Namespace) -> int:
    names = VERIFIABLE if args.structure == "all" else [args.structure]
    failed = False
    for name in names:
        rep = verify(name, args.trials, args.seed, progress=print)
        print(f"{name}: {'PASS' if rep.ok else 'FAIL'}")
        failed |= not rep.ok
    return 1 if failed else 0


def _cmd_postfix(args: argparse.Namespace) -> int:
    symbols = encode_expr(args.expr)
    bound = args.bound if args.bound is not None else len(symbols)
    print(_fmt(eval_postfix(symbols, bound)))
    return 0


def _cmd_stockspan(args: argparse.Namespace) -> int:
    bound = args.bound if args.bound is not None else len(args.prices)
    print(",".join(_fmt(v) for v in stock_span_values(args.prices, bound)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oblivq", description="Oblivious queues and sorts.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="run the push/pop benchmark and emit CSV")
    b.add_argument("--structure", required=True,
                   help=f"comma-separated list from: {', '.join(STRUCTURES)}")
    b.add_argument("--capacity", required=True, type=_int_list, help="capacity or comma-separated list")
    b.add_argument("--ops", type=int, default=None,
                   help="operations per run (default: max(100000, 2*capacity))")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--csv", default=None, help="also write the rows here, plus a gnuplot script")
    b.set_defaults(func=_cmd_bench)

    s = sub.add_parser("sort", help="sort random integers obliviously")
    s.add_argument("--alg", choices=("merge", "quick"), required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--c", type=float, default=2.0, help="quicksort sample-size constant")
    s.add_argument("--desc", action="store_true")
    s.add_argument("--print", action="store_true", help="print the sorted values")
    s.set_defaults(func=_cmd_sort)

    v = sub.add_parser("verify", help="trace-equality and oracle checks")
    v.add_argument("--structure", choices=VERIFIABLE + ("all",), required=True)
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=_cmd_verify)

    e = sub.add_parser("postfix", help="evaluate a postfix expression of integers, + and *")
    e.add_argument("--expr", required=True, help='space-separated tokens, e.g. "3 4 + 2 *"')
    e.add_argument("--bound", type=int, default=None, help="public length bound (>= token count)")
    e.set_defaults(func=_cmd_postfix)

    k = sub.add_parser("stockspan", help="stock span of a price series")
    k.add_argument("--prices", required=True, type=_int_list)
    k.add_argument("--bound", type=int, default=None, help="public length bound (>= number of prices)")
    k.set_defaults(func=_cmd_stockspan)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "sort" and args.n < 1:
        print("--n must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
