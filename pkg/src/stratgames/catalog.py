"""Generators for the named games used throughout the package and its tests."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .game import Game, GameError, as_rational, make_game


def prisoners_dilemma() -> Game:
    return make_game(["CD", "CD"], [
        [(2, 2), (0, 3)],
        [(3, 0), (1, 1)],
    ])


def battle_of_sexes() -> Game:
    return make_game(["FB", "FB"], [
        [(2, 1), (0, 0)],
        [(0, 0), (1, 2)],
    ])


def matching_pennies() -> Game:
    return make_game(["HT", "HT"], [
        [(1, -1), (-1, 1)],
        [(-1, 1), (1, -1)],
    ])


def matching_pennies_edge() -> Game:
    """Matching Pennies where each player also has an Edge strategy E."""
    return make_game(["HTE", "HTE"], [
        [(1, -1), (-1, 1), (-1, -1)],
        [(-1, 1), (1, -1), (-1, -1)],
        [(-1, -1), (-1, -1), (-1, -1)],
    ])


def example_2by3() -> Game:
    """3x3 game solved by three rounds of strict elimination to (T, M)."""
    return make_game(["TCB", "LMR"], [
        [(3, 0), (2, 1), (1, 0)],
        [(2, 1), (1, 1), (1, 0)],
        [(0, 1), (0, 1), (0, 0)],
    ])


def example_weak_dominance() -> Game:
    """T and L are weakly dominant, yet (T, R) and (B, L) are equilibria too."""
    return make_game(["TB", "LR"], [
        [(1, 1), (1, 1)],
        [(1, 1), (0, 0)],
    ])


def example_wd() -> Game:
    """2x3 game where weak elimination at full speed is too restrictive."""
    return make_game(["TB", "LMR"], [
        [(0, 1), (1, 0), (0, 0)],
        [(0, 0), (0, 0), (1, 0)],
    ])


def example_nbr() -> Game:
    """C is a never best response without being dominated."""
    return make_game(["ABC", "XY"], [
        [(2, 1), (0, 0)],
        [(0, 1), (2, 0)],
        [(1, 1), (1, 2)],
    ])


def example_mixed_dom() -> Game:
    """B is strictly dominated by 1/2 T + 1/2 M but by neither T nor M."""
    return make_game(["TMB", "LR"], [
        [(2, 1), (0, 1)],
        [(0, 1), (2, 1)],
        [(0, 1), (0, 1)],
    ])


def pd_n(k, l) -> Game:
    """n-player Prisoner's Dilemma with ``p_i = k_i * #C(others) + l_i * [s_i = D]``."""
    k = [as_rational(x) for x in k]
    l = [as_rational(x) for x in l]
    n = len(k)
    if n < 2 or len(l) != n:
        raise GameError("pd_n needs k and l vectors of equal length n >= 2")
    for ki, li in zip(k, l):
        if not ki * (n - 1) > li > 0:
            raise GameError(f"pd_n requires k_i(n-1) > l_i > 0, got k={ki}, l={li}")

    def rule(profile):
        cooperators = sum(1 for s in profile if s == 0)
        out = []
        for i, s in enumerate(profile):
            others_c = cooperators - (1 if s == 0 else 0)
            out.append(k[i] * others_c + (l[i] if s == 1 else 0))
        return out

    return Game.from_rule(["CD"] * n, rule).materialize()


def location(n: int) -> Game:
    """Two vendors pick locations 1..n; one customer per location goes to the nearest."""
    if n < 1:
        raise GameError("location game needs n >= 1")
    labels = [str(x) for x in range(1, n + 1)]

    def p(mine, theirs):
        if mine < theirs:
            return Fraction(mine + theirs - 1, 2)
        if mine > theirs:
            return n - Fraction(mine + theirs - 1, 2)
        return Fraction(n, 2)

    def rule(profile):
        a, b = profile[0] + 1, profile[1] + 1
        return p(a, b), p(b, a)

    return Game.from_rule([labels, labels], rule, symmetric=True).materialize()


def beauty_contest(n_players: int = 3, max_strategy: int = 100, prize=1) -> Game:
    """Guess 2/3 of the average; ``prize`` is split equally among the closest guesses.

    Payoffs are computed on demand: the full 3-player, 100-strategy game has a
    million cells.
    """
    if n_players <= 2:
        raise GameError("beauty contest needs more than two players")
    if max_strategy < 1:
        raise GameError("beauty contest needs max_strategy >= 1")
    prize = as_rational(prize)
    labels = [str(x) for x in range(1, max_strategy + 1)]
    zero = Fraction(0)
    shares = [None] + [prize / k for k in range(1, n_players + 1)]
    scale = 3 * n_players

    def rule(profile):
        # compare |3n*bid - 2*sum| to stay in integers (bids are index + 1)
        total2 = 2 * (sum(profile) + n_players)
        dist = [abs(scale * (s + 1) - total2) for s in profile]
        best = min(dist)
        share = shares[dist.count(best)]
        return tuple(share if d == best else zero for d in dist)

    return Game.from_rule([labels] * n_players, rule, symmetric=True)


@dataclass(frozen=True)
class GameSpecifier:
    name: str
    params: tuple = field(default=())


_FIXED = {
    "prisoners_dilemma": prisoners_dilemma,
    "battle_of_sexes": battle_of_sexes,
    "matching_pennies": matching_pennies,
    "matching_pennies_edge": matching_pennies_edge,
    "example_2by3": example_2by3,
    "example_weak_dominance": example_weak_dominance,
    "example_wd": example_wd,
    "example_nbr": example_nbr,
    "example_mixed_dom": example_mixed_dom,
}

CATALOG_NAMES = tuple(_FIXED) + ("pd_n", "location", "beauty_contest")


def parse_specifier(text: str) -> GameSpecifier:
    """``"location:11"``, ``"beauty_contest:3,10"``, ``"pd_n:2,2,2;1,1,1"`` -> specifier."""
    name, _, rest = text.partition(":")
    name = name.strip()
    if name not in CATALOG_NAMES:
        raise GameError(f"unknown catalog game {name!r}; known: {', '.join(CATALOG_NAMES)}")
    if not rest:
        return GameSpecifier(name)
    if name == "pd_n":
        k, _, l = rest.partition(";")
        return GameSpecifier(name, (tuple(k.split(",")), tuple(l.split(","))))
    return GameSpecifier(name, tuple(int(x) for x in rest.split(",")))


def generate(spec) -> Game:
    if isinstance(spec, str):
        spec = parse_specifier(spec)
    if spec.name in _FIXED:
        if spec.params:
            raise GameError(f"{spec.name} takes no parameters")
        return _FIXED[spec.name]()
    if spec.name == "pd_n":
        if len(spec.params) != 2:
            raise GameError("pd_n needs k and l vectors")
        return pd_n(*spec.params)
    if spec.name == "location":
        if len(spec.params) != 1:
            raise GameError("location needs n")
        return location(*spec.params)
    if spec.name == "beauty_contest":
        return beauty_contest(*spec.params)
    raise GameError(f"unknown catalog game {spec.name!r}")
