"""Plain-text game documents and report rendering.

Document grammar (``#`` starts a comment, blank lines are ignored)::

    players 2
    strategies C D
    strategies C D
    C C : 2 2
    C D : 0 3
    D C : 3 0
    D D : 1 1

One ``strategies`` line per player, in player order, then one payoff row per
joint strategy: the labels, a colon, and one payoff per player. Payoffs are
integers or ``a/b`` fractions with a positive denominator. Every joint
strategy must appear exactly once.
"""
from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Sequence

from .game import Game, GameError

PLAYER_NAMES = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"

_RATIONAL = re.compile(r"^(-?\d+)(?:/(-?\d+))?$")


class GameFormatError(GameError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def format_rational(q) -> str:
    """Lowest terms, integer shorthand, never a decimal."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(token: str, line: int = 0, column: int = 1) -> Fraction:
    m = _RATIONAL.match(token)
    if not m:
        raise GameFormatError(f"not a rational number: {token!r}", line, column)
    if m.group(2) is not None:
        den = int(m.group(2))
        if den <= 0:
            raise GameFormatError(f"denominator must be positive in {token!r}", line, column)
        return Fraction(int(m.group(1)), den)
    return Fraction(int(m.group(1)))


def _tokens(text: str):
    """Yield (line number, [(column, token), ...]) for each non-blank line, comments stripped."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]
        if toks:
            yield number, toks


def parse_game(text: str) -> Game:
    lines = list(_tokens(text))
    if not lines:
        raise GameFormatError("empty document", 1)
    number, toks = lines[0]
    if toks[0][1] != "players" or len(toks) != 2:
        raise GameFormatError("expected 'players <n>'", number, toks[0][0])
    try:
        n = int(toks[1][1])
    except ValueError:
        n = 0
    if n < 2:
        raise GameFormatError(f"bad player count {toks[1][1]!r} (need at least 2)", number, toks[1][0])
    names = []
    for k in range(1, n + 1):
        if k >= len(lines):
            raise GameFormatError(f"missing strategies line for player {k}", lines[-1][0] + 1)
        number, toks = lines[k]
        if toks[0][1] != "strategies" or len(toks) < 2:
            raise GameFormatError(f"expected 'strategies ...' for player {k}", number, toks[0][0])
        labels = [t for _, t in toks[1:]]
        if len(set(labels)) != len(labels):
            raise GameFormatError(f"duplicate strategy label for player {k}", number)
        names.append(labels)
    index = [{lab: j for j, lab in enumerate(labels)} for labels in names]

    rows = {}
    for number, toks in lines[n + 1:]:
        colon = next((j for j, (_, t) in enumerate(toks) if t == ":"), None)
        if colon is None:
            raise GameFormatError("expected '<labels> : <payoffs>'", number, toks[0][0])
        labs, vals = toks[:colon], toks[colon + 1:]
        if len(labs) != n:
            raise GameFormatError(f"expected {n} strategy labels, found {len(labs)}", number, toks[0][0])
        if len(vals) != n:
            col = vals[0][0] if vals else toks[colon][0]
            raise GameFormatError(f"expected {n} payoffs, found {len(vals)}", number, col)
        profile = []
        for i, (col, lab) in enumerate(labs):
            if lab not in index[i]:
                raise GameFormatError(f"player {i + 1} has no strategy {lab!r}", number, col)
            profile.append(index[i][lab])
        profile = tuple(profile)
        if profile in rows:
            raise GameFormatError(
                f"duplicate row for ({', '.join(t for _, t in labs)}), first given on line {rows[profile][0]}",
                number, toks[0][0],
            )
        rows[profile] = (number, tuple(parse_rational(t, number, col) for col, t in vals))

    game = Game(names, cells=())
    missing = [p for p in game.profiles() if p not in rows]
    if missing:
        shown = ", ".join(game.labels(missing[0]))
        end = lines[-1][0] + 1
        raise GameFormatError(f"no payoff row for ({shown}); {len(missing)} row(s) missing", end)
    return Game(names, cells=tuple(rows[p][1] for p in game.profiles()))


def serialize_game(game: Game) -> str:
    for player in game.strategy_names:
        for lab in player:
            if not lab or any(c.isspace() for c in lab) or "#" in lab or lab == ":":
                raise GameError(f"label {lab!r} cannot be written in the text format")
    out = [f"players {game.n_players}"]
    out += ["strategies " + " ".join(p) for p in game.strategy_names]
    for p in game.profiles():
        out.append(" ".join(game.labels(p)) + " : " + " ".join(format_rational(v) for v in game.payoffs(p)))
    return "\n".join(out) + "\n"


def read_game(path) -> Game:
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read())


# --- reports ----------------------------------------------------------------------


def _grid(rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows)


def player_name(i: int) -> str:
    return PLAYER_NAMES[i] if i < len(PLAYER_NAMES) else f"P{i + 1}"


def payoff_text(values) -> str:
    return ", ".join(format_rational(v) for v in values)


def render_table(game: Game, kept=None, marked=()) -> str:
    """Bimatrix for two players, one row per joint strategy otherwise.

    ``kept`` restricts to a restriction's strategy sets; cells in ``marked`` get a ``*``.
    """
    kept = kept or tuple(range(k) for k in game.shape)
    marked = set(marked)

    def cell(p):
        return payoff_text(game.payoffs(p)) + ("*" if p in marked else "")

    if game.n_players == 2:
        rows = [[""] + [game.strategy_names[1][c] for c in kept[1]]]
        for r in kept[0]:
            rows.append([game.strategy_names[0][r]] + [cell((r, c)) for c in kept[1]])
        return _grid(rows)

    rows = [[player_name(i) for i in range(game.n_players)] + ["payoffs"]]
    for p in itertools.product(*kept):
        rows.append(list(game.labels(p)) + [cell(p)])
    return _grid(rows)


def describe_mixed(game: Game, m) -> str:
    names = game.strategy_names[m.player]
    if m.is_pure:
        return names[m.support[0]]
    return " + ".join(f"{format_rational(m.weights[s])} {names[s]}" for s in m.support)


def render_equilibria(game: Game, reports) -> str:
    lines = []
    for k, rep in enumerate(reports, start=1):
        prof = ", ".join(describe_mixed(game, m) for m in rep.profile)
        line = f"{k}. ({prof})  payoffs {payoff_text(rep.payoffs)}"
        if rep.family is not None:
            line += f"  [one vertex of a {rep.family[0]}-dimensional set]"
        lines.append(line)
    return "\n".join(lines) if lines else "no equilibria"


def render_pure_equilibria(game: Game, profiles) -> str:
    if not profiles:
        return "no pure Nash equilibria"
    return "\n".join(
        f"{k}. ({', '.join(game.labels(p))})  payoffs {payoff_text(game.payoffs(p))}"
        for k, p in enumerate(sorted(profiles), start=1)
    )


def _kept_line(game, restriction) -> str:
    return " | ".join(
        f"P{i + 1}: {' '.join(game.strategy_names[i][s] for s in kept) or '-'}"
        for i, kept in enumerate(restriction.kept)
    )


def _witness_text(game, w) -> str:
    if w is None:
        return ""
    name = game.strategy_names[w.player]
    if isinstance(w.dominator, int):
        by = name[w.dominator]
    else:
        by = describe_mixed(game, w.dominator)
    return f" ({w.mode}ly dominated by {by})"


def render_trace(game: Game, trace, show_trace: bool = True) -> str:
    """Stage listing (stage 0 is the input) followed by the outcome line."""
    lines = []
    if show_trace:
        lines.append(f"relation: {trace.relation}")
        lines.append(f"stage 0: {_kept_line(game, trace.initial)}")
        for k, rec in enumerate(trace.steps, start=1):
            removed = ", ".join(
                f"P{i + 1}.{game.strategy_names[i][s]}{_witness_text(game, rec.witnesses.get((i, s)))}"
                for i, s in rec.removed
            )
            lines.append(f"stage {k}: {_kept_line(game, rec.after)}")
            lines.append(f"  removed {removed}")
    lines.append(render_outcome(game, trace.final))
    return "\n".join(lines)


def render_outcome(game: Game, restriction) -> str:
    sol = restriction.solution()
    if sol is not None:
        return f"solved: ({', '.join(game.labels(sol))}) payoffs {payoff_text(game.payoffs(sol))}"
    if restriction.is_degenerate:
        return f"empty: {_kept_line(game, restriction)}"
    return f"survivors: {_kept_line(game, restriction)}"


def render_mechanism(decision, types, taxes, utilities, decision_label=None) -> str:
    """One row per player with type, tax and final utility, then the decision."""
    rows = [["player", "type", "tax", "u"]]
    for i, (t, x, u) in enumerate(zip(types, taxes, utilities)):
        rows.append([player_name(i), format_rational(t), format_rational(x), format_rational(u)])
    shown = decision_label if decision_label is not None else str(decision)
    return _grid(rows) + f"\ndecision: {shown}"
