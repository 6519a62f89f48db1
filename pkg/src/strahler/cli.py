"""Command-line surface tying the solvers, oracles and tree tooling together.

Subcommands:

* solve      -- solve one game file (--algo strahler|zielonka|brute)
* strahler   -- structural report: exact per-player Strahler numbers
                (oracle, desk scale), progress-measure estimate, k bracket
* lehtinen   -- Lehtinen number via defensive register games
* register   -- register number; optionally export the built register game
* gen        -- seeded random game generator
* trees      -- universal-tree diagnostics (leaf counts, bounds, dumps,
                growth table)
* verify     -- cross-run all applicable solvers and diff the partitions

Exit status: 0 on success, 1 when `verify` finds a disagreement, 2 on
usage or input errors.  `--json` emits machine-readable reports with
stable field names (winner, strategy, algo, k_bracket, lifts, millis).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .core import ParityGame, Player, restrict, validate_dominion_strategy
from .errors import BudgetExceeded, CapExceeded, ToolkitError
from .gamefile import parse_game, write_game
from .generation import corpus, generate_random
from .lifting import (
    LiftStats,
    SuccinctNavigator,
    _side_params,
    lift_to_fixpoint,
    pm_strahler_estimate,
    strahler_solve,
)
from .oracles import BRUTE_FORCE_BUDGET, brute_force_solve, exact_strahler
from .register import build_reg, lehtinen_number, register_number
from .trees import format_tree, log2_floor
from .universal import TreeParams, build_U, dump_leaves, leaf_bound, leaf_count
from .zielonka import zielonka_solve


@dataclass
class SolutionReport:
    """Per-game solver outcome in the stable JSON schema."""

    algo: str
    winner: List[int]  # 0 = Even, 1 = Odd, indexed by vertex
    strategy: Dict[str, int]  # winner's chosen edge per owned, won vertex
    k_bracket: Optional[List[int]]
    lifts: Optional[int]
    millis: float
    tree: Optional[Dict[str, int]] = None

    def to_json(self) -> dict:
        return {
            "algo": self.algo,
            "winner": self.winner,
            "strategy": self.strategy,
            "k_bracket": self.k_bracket,
            "lifts": self.lifts,
            "millis": self.millis,
            "tree": self.tree,
        }

    def to_text(self) -> str:
        lines = [f"algo: {self.algo}"]
        if self.k_bracket is not None:
            lines.append(f"k bracket: even={self.k_bracket[0]} odd={self.k_bracket[1]}")
        if self.lifts is not None:
            lines.append(f"lifts: {self.lifts}")
        lines.append(f"millis: {self.millis:.1f}")
        even = [v for v, w in enumerate(self.winner) if w == 0]
        odd = [v for v, w in enumerate(self.winner) if w == 1]
        lines.append(f"even wins: {even}")
        lines.append(f"odd wins: {odd}")
        if self.strategy:
            moves = " ".join(f"{v}->{u}" for v, u in sorted(self.strategy.items(), key=lambda kv: int(kv[0])))
            lines.append(f"strategy: {moves}")
        return "\n".join(lines)


def _solve_report(game: ParityGame, algo: str, k_max: Optional[int]) -> SolutionReport:
    t0 = time.perf_counter()
    lifts: Optional[int] = None
    k_bracket: Optional[List[int]] = None
    tree: Optional[Dict[str, int]] = None
    strategy: Dict[str, int] = {}
    if algo == "zielonka":
        sol = zielonka_solve(game)
        w_even, w_odd = sol.w_even, sol.w_odd
        strategy = {str(v): u for v, u in sol.sigma_even.choices.items() if v in w_even}
        strategy.update(
            {str(v): u for v, u in sol.sigma_odd.choices.items() if v in w_odd}
        )
    elif algo == "brute":
        w_even, w_odd = brute_force_solve(game)
    elif algo == "strahler":
        stats = LiftStats()
        sol = strahler_solve(game, k_max=k_max, stats=stats)
        w_even, w_odd = sol.w_even, sol.w_odd
        lifts = stats.lifts
        k_bracket = [sol.k_used_even, sol.k_used_odd]
        pe = _side_params(game.n, game.d, sol.k_used_even)
        tree = {"t": pe.t, "h": pe.h, "k": pe.k}
        strategy = {str(v): u for v, u in sol.sigma_even.choices.items() if v in w_even}
        strategy.update(
            {str(v): u for v, u in sol.sigma_odd.choices.items() if v in w_odd}
        )
    else:
        raise ValueError(f"unknown algorithm {algo!r}")
    millis = (time.perf_counter() - t0) * 1000.0
    winner = [0 if v in w_even else 1 for v in game.vertices]
    return SolutionReport(
        algo=algo,
        winner=winner,
        strategy=strategy,
        k_bracket=k_bracket,
        lifts=lifts,
        millis=millis,
        tree=tree,
    )


def _read_game(path: str) -> ParityGame:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_game(fh.read())


def _emit(payload, as_json: bool, out) -> None:
    if as_json:
        print(json.dumps(payload if isinstance(payload, dict) else payload, indent=2), file=out)
    else:
        print(payload, file=out)


def _cmd_solve(args, out) -> int:
    game = _read_game(args.file)
    report = _solve_report(game, args.algo, args.k_max)
    if args.json:
        print(json.dumps(report.to_json(), indent=2), file=out)
    else:
        print(report.to_text(), file=out)
    if args.tree_dump and args.algo == "strahler":
        ke = report.k_bracket[0]
        pe = _side_params(game.n, game.d, ke)
        mu = lift_to_fixpoint(game, SuccinctNavigator(pe))
        print("measure (even side):", file=out)
        print(mu.dump(), file=out)
    return 0


def _cmd_strahler(args, out) -> int:
    game = _read_game(args.file)
    sol = zielonka_solve(game)
    result: dict = {"n": game.n, "d": game.d}
    stats = LiftStats()
    s = strahler_solve(game, stats=stats)
    result["k_bracket"] = [s.k_used_even, s.k_used_odd]
    contributions: List[Optional[int]] = []
    for player, region in ((Player.EVEN, sol.w_even), (Player.ODD, sol.w_odd)):
        name = player.name.lower()
        if not region:
            # an empty dominion contributes nothing to the game number
            result[f"exact_{name}"] = None
            result[f"estimate_{name}"] = None
            continue
        sub = restrict(game, region)[0]
        try:
            result[f"exact_{name}"] = exact_strahler(sub, player)
        except BudgetExceeded:
            result[f"exact_{name}"] = None
        contributions.append(result[f"exact_{name}"])
        try:
            if player == Player.EVEN:
                result[f"estimate_{name}"] = pm_strahler_estimate(sub)
            else:
                from .core import dualize

                result[f"estimate_{name}"] = pm_strahler_estimate(dualize(sub))
        except BudgetExceeded:
            result[f"estimate_{name}"] = None
    if all(c is not None for c in contributions):
        result["game_strahler"] = max(contributions)
    else:
        result["game_strahler"] = None  # oracle budget exceeded somewhere
    if args.json:
        print(json.dumps(result, indent=2), file=out)
    else:
        for key, val in result.items():
            print(f"{key}: {val}", file=out)
    return 0


def _cmd_lehtinen(args, out) -> int:
    game = _read_game(args.file)
    try:
        value = lehtinen_number(game, k_cap=args.k_cap)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = {"lehtinen": value, "k_cap": args.k_cap}
    if args.json:
        print(json.dumps(payload, indent=2), file=out)
    else:
        print(f"lehtinen number: {value}", file=out)
    return 0


def _cmd_register(args, out) -> int:
    game = _read_game(args.file)
    try:
        value = register_number(game, k_cap=args.k_cap)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.export:
        reg = build_reg(game, value)
        with open(args.export, "w", encoding="utf-8") as fh:
            fh.write(write_game(reg.game))
    payload = {"register": value, "k_cap": args.k_cap}
    if args.json:
        print(json.dumps(payload, indent=2), file=out)
    else:
        print(f"register number: {value}", file=out)
    return 0


def _cmd_gen(args, out) -> int:
    game = generate_random(
        args.seed, args.n, args.d, args.min_degree, args.max_degree, args.audrey_fraction
    )
    text = write_game(game)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


_GROWTH_D = (4, 8, 16, 32, 64)
_GROWTH_K = (1, 2, 3, 4, 5, 6)


def growth_table(n: int) -> List[dict]:
    """leaf_bound across (d, k) settings at the tree sizes the solver
    would use for an n-vertex game; the k * lg(d/k) trade-off shows up
    as growth in d at fixed k."""
    t = log2_floor(n)
    rows = []
    for d in _GROWTH_D:
        h = d // 2 + 1
        row = {"d": d}
        for k in _GROWTH_K:
            if k <= h:
                row[f"k{k}"] = leaf_bound(TreeParams(t, h, k))
        rows.append(row)
    return rows


def _cmd_trees(args, out) -> int:
    if args.growth:
        rows = growth_table(args.n)
        if args.json:
            print(json.dumps(rows, indent=2), file=out)
        else:
            ks = [f"k{k}" for k in _GROWTH_K]
            print("d " + " ".join(f"{k:>14}" for k in ks), file=out)
            for row in rows:
                cells = [f"{row.get(k, ''):>14}" for k in ks]
                print(f"{row['d']:<2} " + " ".join(cells), file=out)
        return 0
    params = TreeParams(args.t, args.h, args.k)
    payload = {
        "t": args.t,
        "h": args.h,
        "k": args.k,
        "leaves": leaf_count(params),
        "bound": leaf_bound(params),
    }
    if args.json:
        print(json.dumps(payload, indent=2), file=out)
    else:
        print(f"leaves: {payload['leaves']} (bound {payload['bound']})", file=out)
    if args.dump_tree:
        print(format_tree(build_U(params)), file=out)
    if args.dump_leaves:
        print(dump_leaves(params), file=out)
    return 0


def _verify_one(game: ParityGame, index: int, out) -> bool:
    reports = {}
    reports["zielonka"] = zielonka_solve(game)
    z = reports["zielonka"]
    s = strahler_solve(game)
    agree = z.w_even == s.w_even and z.w_odd == s.w_odd
    brute_note = ""
    if game.n <= BRUTE_FORCE_BUDGET.max_vertices:
        bw_even, bw_odd = brute_force_solve(game)
        agree = agree and bw_even == z.w_even and bw_odd == z.w_odd
        brute_note = " brute"
    strategies_ok = (
        validate_dominion_strategy(game, z.w_even, z.sigma_even)
        and validate_dominion_strategy(game, z.w_odd, z.sigma_odd)
        and validate_dominion_strategy(game, s.w_even, s.sigma_even)
        and validate_dominion_strategy(game, s.w_odd, s.sigma_odd)
    )
    status = "ok" if agree and strategies_ok else "MISMATCH"
    print(
        f"[{index}] n={game.n} d={game.d} zielonka strahler{brute_note}: {status}",
        file=out,
    )
    return agree and strategies_ok


def _cmd_verify(args, out) -> int:
    games: List[ParityGame] = []
    if args.file:
        games.append(_read_game(args.file))
    else:
        games.extend(
            corpus(
                args.seed,
                args.count,
                n_max=args.n_max,
                d_max=args.d_max,
            )
        )
    all_ok = True
    for i, game in enumerate(games):
        all_ok = _verify_one(game, i, out) and all_ok
    print("verify: " + ("all agree" if all_ok else "DISAGREEMENT"), file=out)
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strahler", description="parity game solving toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a game file")
    p.add_argument("file")
    p.add_argument("--algo", choices=["strahler", "zielonka", "brute"], default="strahler")
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--tree-dump", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("strahler", help="structural Strahler report")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_strahler)

    p = sub.add_parser("lehtinen", help="Lehtinen number")
    p.add_argument("file")
    p.add_argument("--k-cap", type=int, default=3)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_lehtinen)

    p = sub.add_parser("register", help="register number")
    p.add_argument("file")
    p.add_argument("--k-cap", type=int, default=3)
    p.add_argument("--export", default=None, help="write the register game to a file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_register)

    p = sub.add_parser("gen", help="generate a seeded random game")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--min-degree", type=int, default=1)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--audrey-fraction", type=float, default=0.5)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("trees", help="universal tree diagnostics")
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--dump-tree", action="store_true")
    p.add_argument("--dump-leaves", action="store_true")
    p.add_argument("--growth", action="store_true", help="emit the leaf-bound growth table")
    p.add_argument("--n", type=int, default=10000, help="vertex count for --growth")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_trees)

    p = sub.add_parser("verify", help="cross-run the solvers and diff")
    p.add_argument("file", nargs="?", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--d-max", type=int, default=6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    return parser


def run_cli(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.command == "trees" and not args.growth:
        if args.t is None or args.h is None or args.k is None:
            print("error: trees requires --t --h --k (or --growth)", file=sys.stderr)
            return 2
    try:
        return args.func(args, out)
    except (ToolkitError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
