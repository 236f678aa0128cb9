"""Command-line front end: solve, play, sweep, verify, enumerate.

Exit codes: 0 all good, 1 a verification failed, 2 usage error, 3 a solver
cap or budget was hit. Machine-readable outputs carry no timing fields, so
identical configurations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

from .analysis import bound, component_labels, saturated_graphs
from .engine import Player, Variant, play
from .families import (
    ForbiddenFamily,
    PathFamily,
    StarFamily,
    TreeFamily,
    family_name,
    parse_family,
)
from .graph import to_graph6
from .solver import BudgetExceeded, CapExceeded, solve
from .strategies import make_strategy
from .verify import SUITES, render_report, run_suites

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAPPED = 3


def _family(text: str) -> ForbiddenFamily:
    try:
        return parse_family(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _n_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        if sep:
            a, b = int(lo), int(hi)
            if a > b:
                raise ValueError
            return list(range(a, b + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n or n-range {text!r}; use e.g. 6 or 4..8")


def _first(text: str) -> Player:
    try:
        return Player(text)
    except ValueError:
        raise argparse.ArgumentTypeError("first mover must be P or S")


def _variant(text: str) -> Variant:
    try:
        return Variant(text)
    except ValueError:
        raise argparse.ArgumentTypeError("variant must be standard or pass")


def _workers() -> int:
    raw = os.environ.get("SATGAME_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _apply_k(family: ForbiddenFamily, k: Optional[int]) -> ForbiddenFamily:
    """--k overrides the size parameter of a parametric family."""
    if k is None:
        return family
    if isinstance(family, PathFamily):
        return PathFamily(k)
    if isinstance(family, TreeFamily):
        return TreeFamily(k)
    if isinstance(family, StarFamily):
        return StarFamily(k)
    raise ValueError("--k does not apply to explicit graph lists")


def _emit(rows: list[dict], columns: list[str], fmt: str, out: Optional[str]) -> None:
    buf = io.StringIO()
    if fmt == "csv":
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        for row in rows:
            buf.write(json.dumps({c: row.get(c) for c in columns}, sort_keys=True))
            buf.write("\n")
    text = buf.getvalue()
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _matching_bound(family: ForbiddenFamily, variant: Variant, n: int, score: Optional[int]):
    try:
        if isinstance(family, PathFamily):
            if variant is Variant.PROLONGER_MAY_PASS:
                return bound("2.1", n, family.k, observed=score)
            if family.k == 4:
                return bound("2.2", n, observed=score)
            if family.k == 5:
                return bound("2.3", n, observed=score)
            return None
        if isinstance(family, TreeFamily):
            return bound("2.4", n, family.k, observed=score)
        if isinstance(family, StarFamily):
            return bound("2.5", n, family.leaves - 1, observed=score)
    except ValueError:
        return None  # out of the theorem's domain: attach nothing
    return None


def cmd_solve(args: argparse.Namespace) -> int:
    args.family = _apply_k(args.family, args.k)
    firsts = [args.first] if args.first else [Player.PROLONGER, Player.SHORTENER]
    rows = []
    capped = False
    failed = False
    for n in args.n:
        for first in firsts:
            row = {
                "family": family_name(args.family),
                "variant": args.variant.value,
                "first": first.value,
                "n": n,
                "status": "ok",
                "score": None,
                "lower": "",
                "upper": "",
                "holds": "",
                "note": "",
            }
            try:
                res = solve(
                    n, args.family, args.variant, first,
                    n_cap=args.n_cap, node_cap=args.node_cap, time_cap=args.time_cap,
                    workers=_workers(),
                )
                row["score"] = res.score
                rep = _matching_bound(args.family, args.variant, n, res.score)
                if rep is not None:
                    row["lower"], row["upper"] = str(rep.lower), str(rep.upper)
                    row["holds"] = str(rep.holds).lower()
                    row["note"] = rep.note
                    if rep.holds is False and not rep.note:
                        failed = True
            except (CapExceeded, BudgetExceeded) as exc:
                row["status"] = "unsolved"
                row["note"] = str(exc)
                capped = True
            rows.append(row)
    columns = ["family", "variant", "first", "n", "status", "score",
               "lower", "upper", "holds", "note"]
    _emit(rows, columns, args.format, args.out)
    if capped:
        return EXIT_CAPPED
    return EXIT_FAIL if failed else EXIT_OK


def cmd_play(args: argparse.Namespace) -> int:
    from .engine import IllegalStrategyActionError

    args.family = _apply_k(args.family, args.k)
    strat_p = make_strategy(args.prolonger, default_seed=args.seed)
    strat_s = make_strategy(args.shortener, default_seed=args.seed)
    try:
        record = play(args.n[0], args.family, args.variant, args.first or Player.PROLONGER,
                      strat_p, strat_s)
    except IllegalStrategyActionError as exc:
        sys.stderr.write(f"{exc}\n")
        sys.stderr.write(f"state: {to_graph6(exc.state.graph)} "
                         f"({exc.state.to_move.value} to move), action: {exc.action}\n")
        return EXIT_FAIL
    line = record.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(line + "\n")
    else:
        sys.stdout.write(line + "\n")
    sys.stdout.write(f"score {record.score}\n")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    args.family = _apply_k(args.family, args.k)
    firsts = [args.first] if args.first else [Player.PROLONGER, Player.SHORTENER]
    cells = sorted(
        (n, first.value, pname, sname)
        for n in args.n
        for first in firsts
        for pname in args.prolonger.split(",")
        for sname in args.shortener.split(",")
    )

    def run_cell(cell):
        n, first, pname, sname = cell
        record = play(
            n, args.family, args.variant, Player(first),
            make_strategy(pname, default_seed=args.seed),
            make_strategy(sname, default_seed=args.seed),
        )
        return {
            "family": family_name(args.family),
            "variant": args.variant.value,
            "first": first,
            "n": n,
            "prolonger": pname,
            "shortener": sname,
            "score": record.score,
            "terminal_graph6": to_graph6(record.terminal),
        }

    workers = _workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run_cell, cells))
    else:
        rows = [run_cell(c) for c in cells]
    columns = ["family", "variant", "first", "n", "prolonger", "shortener",
               "score", "terminal_graph6"]
    _emit(rows, columns, args.format, args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    checks = run_suites(names, n_max=args.n_max, games=args.games, seed=args.seed)
    text = render_report(checks)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def cmd_enumerate(args: argparse.Namespace) -> int:
    args.family = _apply_k(args.family, args.k)
    n = args.n[0]
    try:
        graphs = saturated_graphs(n, args.family)
    except ValueError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_CAPPED
    lines = [
        f"{to_graph6(g)}\t{'+'.join(lab.display() for lab in component_labels(g))}"
        for g in graphs
    ]
    text = "".join(line + "\n" for line in lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="satgame",
        description="Play, sweep, exactly solve and verify saturation games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_family=True):
        if need_family:
            p.add_argument("--family", type=_family, required=True,
                           help="P4, P5, Pk:7, Trees:5, Star:4 or List:<graph6>,...")
        p.add_argument("--n", type=_n_range, default=[6], help="n or inclusive range a..b")
        p.add_argument("--k", type=int, default=None,
                       help="override the family size parameter (e.g. --family P4 --k 6)")
        p.add_argument("--variant", type=_variant, default=Variant.STANDARD)
        p.add_argument("--first", type=_first, default=None, help="P or S")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("csv", "jsonl"), default="csv")

    p_solve = sub.add_parser("solve", help="exact scores with matching score windows")
    common(p_solve)
    p_solve.add_argument("--n-cap", type=int, default=10)
    p_solve.add_argument("--node-cap", type=int, default=None)
    p_solve.add_argument("--time-cap", type=float, default=None)
    p_solve.set_defaults(func=cmd_solve)

    p_play = sub.add_parser("play", help="one game between named strategies")
    common(p_play)
    p_play.add_argument("--prolonger", required=True)
    p_play.add_argument("--shortener", required=True)
    p_play.set_defaults(func=cmd_play)

    p_sweep = sub.add_parser("sweep", help="score table over n and strategy pairs")
    common(p_sweep)
    p_sweep.add_argument("--prolonger", required=True, help="comma-separated strategy names")
    p_sweep.add_argument("--shortener", required=True, help="comma-separated strategy names")
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run acceptance suites")
    p_verify.add_argument("--suite", default="all", choices=["all", *SUITES])
    p_verify.add_argument("--n-max", type=int, default=None)
    p_verify.add_argument("--games", type=int, default=None)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--out", default=None)
    p_verify.set_defaults(func=cmd_verify)

    p_enum = sub.add_parser("enumerate", help="saturated graphs up to isomorphism")
    common(p_enum)
    p_enum.set_defaults(func=cmd_enumerate)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CapExceeded, BudgetExceeded) as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_CAPPED
    except ValueError as exc:  # bad strategy names, --k misuse, suite names
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
