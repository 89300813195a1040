"""Command-line driver: ``stratgames <command> ...``.

Exit status: 0 on success, 1 when the analysis itself fails (for example an
elimination budget is exceeded), 2 on usage or input errors (bad flags,
unreadable or malformed game files, unknown catalog names).
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import catalog, elimination, gameio, mechanism, nash, prebayes
from .dominance import CORRELATED, POINT
from .game import GameError


class UsageError(Exception):
    pass


def _load(args):
    if (args.file is None) == (args.catalog is None):
        raise UsageError("give exactly one of FILE or --catalog NAME")
    try:
        if args.catalog is not None:
            return catalog.generate(args.catalog)
        return gameio.read_game(args.file)
    except (OSError, GameError) as exc:
        raise UsageError(str(exc)) from exc


def _rational(text: str) -> Fraction:
    try:
        return gameio.parse_rational(text.strip())
    except GameError:
        raise UsageError(f"not a rational number: {text.strip()!r}") from None


def _rationals(text: str):
    return [_rational(x) for x in text.split(",") if x.strip()]


def cmd_show(args, out):
    game = _load(args)
    if args.document:
        out.write(gameio.serialize_game(game))
    else:
        out.write(gameio.render_table(game) + "\n")


def cmd_nash(args, out):
    game = _load(args)
    mixed = args.mixed or (not args.pure and game.n_players == 2)
    if mixed:
        if game.n_players != 2:
            raise UsageError("--mixed needs a two-player game")
        out.write(gameio.render_equilibria(game, nash.support_enumeration_2p(game)) + "\n")
    else:
        out.write(gameio.render_pure_equilibria(game, nash.pure_nash(game)) + "\n")


def _relation(args):
    if args.relation == "rat":
        return elimination.RAT_POINT if args.beliefs == POINT else elimination.RAT_CORRELATED
    return elimination.relation_kind(args.relation)


def cmd_eliminate(args, out):
    game = _load(args)
    relation = _relation(args)
    order = args.order
    if order is None:
        # full-speed weak elimination can discard too much, so go one at a time
        order = "one" if relation in (elimination.WEAK_PURE, elimination.WEAK_MIXED) else "all"
    policy = elimination.ONE_AT_A_TIME if order == "one" else elimination.ALL_ELIMINABLE
    trace = elimination.run(game, relation, policy)
    out.write(gameio.render_trace(game, trace, show_trace=args.trace) + "\n")


def cmd_outcomes(args, out):
    game = _load(args)
    relation = _relation(args)
    ends = elimination.all_outcomes(game, relation, args.budget)
    ordered = sorted(ends, key=lambda r: r.kept)
    out.write(f"{len(ordered)} outcome(s) under {relation}\n")
    for k, r in enumerate(ordered, start=1):
        out.write(f"{k}. {gameio.render_outcome(game, r)}\n")


def cmd_mechanism(args, out):
    types = _rationals(args.types)
    n = len(types)
    if n < 2:
        raise UsageError("--types needs at least two comma-separated values")
    grid = sorted(set(types) | set(_rationals(args.grid) if args.grid else ()))
    try:
        if args.instance == "auction":
            problem = mechanism.auction_problem(n, grid)
        else:
            if args.cost is None:
                raise UsageError("the project instance needs --cost")
            problem = mechanism.public_project_problem(n, _rational(args.cost), grid)
    except GameError as exc:
        raise UsageError(str(exc)) from exc
    if args.rule == "pivotal":
        mech = mechanism.pivotal(problem)
    elif args.rule == "groves":
        mech = mechanism.groves_tax(problem, lambda i, others: Fraction(0))
    else:
        if args.instance != "auction":
            raise UsageError("the first-price rule is defined for the auction only")
        mech = mechanism.first_price(problem)
    d, taxes, utils = mech.outcome(types)
    if args.instance == "auction":
        label = f"{gameio.player_name(d)} wins"
    else:
        label = "project takes place" if d == 1 else "project cancelled"
    out.write(gameio.render_mechanism(d, types, taxes, utils, label) + "\n")
    if args.grid:
        fr = gameio.format_rational
        ic = mechanism.is_incentive_compatible(mech)
        out.write(f"incentive compatible on grid: {'yes' if ic else 'no'}\n")
        if not ic:
            theta, i, lie, honest, gain = ic.counterexample
            out.write(
                f"  at types ({', '.join(map(fr, theta))}) player {gameio.player_name(i)} reports {fr(lie)}"
                f" and gets {fr(gain)} instead of {fr(honest)}\n"
            )
        feasible = mechanism.is_feasible(mech)
        out.write(f"feasible on grid: {'yes' if feasible else 'no'}\n")
        if not feasible:
            theta, taxes = feasible.counterexample
            out.write(
                f"  at types ({', '.join(map(fr, theta))}) taxes sum to {fr(sum(taxes))}\n"
            )


def cmd_prebayes(args, out):
    pg = prebayes.example_ex_post() if args.example == "example1" else prebayes.example_no_ex_post()
    for theta in pg.joint_types():
        g = prebayes.theta_game(pg, theta)
        labels = ", ".join(pg.types[i][t] for i, t in enumerate(theta))
        out.write(f"theta = ({labels})\n")
        out.write(gameio.render_table(g, marked=nash.pure_nash(g)) + "\n\n")
    found = prebayes.find_ex_post_equilibria(pg)
    if not found:
        out.write("no ex-post equilibrium\n")
    for joint in found:
        parts = []
        for s in joint:
            i = s.player
            parts.append(", ".join(
                f"s{i + 1}({pg.types[i][t]}) = {pg.actions[i][a]}" for t, a in enumerate(s.choice)
            ))
        out.write("ex-post equilibrium: " + "; ".join(parts) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stratgames", description="Analyse finite strategic games exactly.")
    sub = parser.add_subparsers(dest="command", required=True)

    def game_args(p):
        p.add_argument("file", nargs="?", help="game document")
        p.add_argument("--catalog", metavar="NAME", help="catalog game, e.g. location:11 or beauty_contest:3,10")

    relations = sorted(elimination.ALIASES)

    p = sub.add_parser("show", help="print a game")
    game_args(p)
    p.add_argument("--document", action="store_true", help="print the text document instead of a table")
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("nash", help="Nash equilibria")
    game_args(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--pure", action="store_true")
    g.add_argument("--mixed", action="store_true")
    p.set_defaults(func=cmd_nash)

    p = sub.add_parser("eliminate", help="iterated elimination")
    game_args(p)
    p.add_argument("--relation", required=True, choices=relations)
    p.add_argument("--order", choices=("all", "one"))
    p.add_argument("--trace", action="store_true")
    p.add_argument("--beliefs", choices=(POINT, CORRELATED), default=CORRELATED)
    p.set_defaults(func=cmd_eliminate)

    p = sub.add_parser("outcomes", help="every outcome over all elimination orders")
    game_args(p)
    p.add_argument("--relation", required=True, choices=relations)
    p.add_argument("--budget", type=int, default=elimination.DEFAULT_BUDGET)
    p.add_argument("--beliefs", choices=(POINT, CORRELATED), default=CORRELATED)
    p.set_defaults(func=cmd_outcomes)

    p = sub.add_parser("mechanism", help="run a direct mechanism on reported types")
    p.add_argument("instance", choices=("auction", "project"))
    p.add_argument("--types", required=True, help="comma-separated types, e.g. 18,21,24")
    p.add_argument("--cost", help="project cost")
    p.add_argument("--rule", choices=("pivotal", "groves", "first-price"), default="pivotal")
    p.add_argument("--grid", help="comma-separated type grid for incentive and feasibility checks")
    p.set_defaults(func=cmd_mechanism)

    p = sub.add_parser("prebayes", help="theta-games and ex-post equilibria of the worked examples")
    p.add_argument("example", choices=("example1", "example2"))
    p.set_defaults(func=cmd_prebayes)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except UsageError as exc:
        print(f"stratgames: {exc}", file=sys.stderr)
        return 2
    except GameError as exc:
        print(f"stratgames: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
