"""Pre-Bayesian games: private types, type-contingent strategies, ex-post equilibria."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .game import Game, GameError, as_rational, make_game
from .mechanism import Check, DirectMechanism
from .nash import pure_nash

MAX_JOINT_STRATEGIES = 10 ** 6


@dataclass(frozen=True)
class PreBayesianGame:
    """Actions ``A_i``, types ``Theta_i`` and payoffs ``p_i(a, theta_i)``.

    ``payoff(i, actions, theta_i)`` takes action and type *indices*; labels
    live in ``actions`` and ``types``.
    """

    actions: tuple
    types: tuple
    payoff: Callable[[int, tuple, int], Fraction]

    def __post_init__(self):
        acts = tuple(tuple(a) for a in self.actions)
        tys = tuple(tuple(t) for t in self.types)
        if len(acts) < 2 or len(acts) != len(tys):
            raise GameError("a pre-Bayesian game needs n >= 2 players with actions and types each")
        if any(not a for a in acts) or any(not t for t in tys):
            raise GameError("action and type sets must be non-empty")
        object.__setattr__(self, "actions", acts)
        object.__setattr__(self, "types", tys)

    @property
    def n_players(self) -> int:
        return len(self.actions)

    def p(self, i: int, actions: Sequence[int], theta_i: int) -> Fraction:
        return as_rational(self.payoff(i, tuple(actions), theta_i))

    def joint_types(self):
        return itertools.product(*(range(len(t)) for t in self.types))

    def action_profiles(self):
        return itertools.product(*(range(len(a)) for a in self.actions))

    def type_index(self, i: int, label) -> int:
        return self.types[i].index(label)


@dataclass(frozen=True)
class TypeStrategy:
    """``s_i``: the action index chosen for each type index of ``player``."""

    player: int
    choice: tuple

    def __call__(self, theta_i: int) -> int:
        return self.choice[theta_i]


def from_theta_games(actions, types, tables) -> PreBayesianGame:
    """Build a two-player pre-Bayesian game from its theta-game bimatrices.

    ``tables[(t1, t2)]`` (type labels) is a bimatrix over the action labels. Each
    player's payoff must depend on their own type only; this is checked.
    """
    if len(types) != 2:
        raise GameError("from_theta_games builds two-player games")
    own = [{}, {}]
    for t1, t2 in itertools.product(*types):
        g = make_game(actions, tables[(t1, t2)])
        for i, ti in ((0, types[0].index(t1)), (1, types[1].index(t2))):
            cells = {p: g.payoffs(p)[i] for p in g.profiles()}
            if ti in own[i] and own[i][ti] != cells:
                raise GameError(f"payoff of player {i + 1} depends on the opponent's type")
            own[i][ti] = cells

    def payoff(i, acts, theta_i):
        return own[i][theta_i][acts]

    return PreBayesianGame(actions, types, payoff)


def theta_game(pg: PreBayesianGame, joint_type: Sequence[int]) -> Game:
    """The strategic game obtained by fixing the joint type (type indices)."""
    joint_type = tuple(joint_type)
    if len(joint_type) != pg.n_players or any(
        not (isinstance(t, int) and 0 <= t < len(pg.types[i])) for i, t in enumerate(joint_type)
    ):
        raise GameError(f"invalid joint type {joint_type!r}")
    rule = lambda a: tuple(pg.p(i, a, joint_type[i]) for i in range(pg.n_players))  # noqa: E731
    return Game.from_rule(pg.actions, rule).materialize()


def _check_strategy(pg, s: TypeStrategy, i: int):
    if s.player != i or len(s.choice) != len(pg.types[i]):
        raise GameError(f"strategy for player {i + 1} must choose an action for each of its types")
    if any(not 0 <= a < len(pg.actions[i]) for a in s.choice):
        raise GameError(f"strategy for player {i + 1} picks an unknown action")


def is_ex_post_equilibrium(pg: PreBayesianGame, strategies: Sequence[TypeStrategy]) -> Check:
    """No player gains by deviating at any joint type. Counterexample ``(theta, i, action)``."""
    if len(strategies) != pg.n_players:
        raise GameError("need one type strategy per player")
    for i, s in enumerate(strategies):
        _check_strategy(pg, s, i)
    for theta in pg.joint_types():
        acts = tuple(s(t) for s, t in zip(strategies, theta))
        for i in range(pg.n_players):
            mine = pg.p(i, acts, theta[i])
            for a in range(len(pg.actions[i])):
                if pg.p(i, acts[:i] + (a,) + acts[i + 1:], theta[i]) > mine:
                    return Check(False, (theta, i, a))
    return Check(True)


def is_ex_post_by_theta_games(pg: PreBayesianGame, strategies: Sequence[TypeStrategy]) -> bool:
    """Ex-post equilibrium as 'a pure Nash equilibrium of every theta-game'."""
    return all(
        tuple(s(t) for s, t in zip(strategies, theta)) in pure_nash(theta_game(pg, theta))
        for theta in pg.joint_types()
    )


def all_type_strategies(pg: PreBayesianGame, i: int):
    for choice in itertools.product(range(len(pg.actions[i])), repeat=len(pg.types[i])):
        yield TypeStrategy(i, choice)


def find_ex_post_equilibria(pg: PreBayesianGame) -> list:
    """Every joint type strategy that is an ex-post equilibrium (exhaustive)."""
    count = 1
    for acts, tys in zip(pg.actions, pg.types):
        count *= len(acts) ** len(tys)
    if count > MAX_JOINT_STRATEGIES:
        raise GameError(f"{count} joint type strategies exceed the limit of {MAX_JOINT_STRATEGIES}")
    # per theta the strategy must pick a Nash equilibrium of that theta-game
    equilibria = {theta: pure_nash(theta_game(pg, theta)) for theta in pg.joint_types()}
    out = []
    for joint in itertools.product(*(all_type_strategies(pg, i) for i in range(pg.n_players))):
        if all(tuple(s(t) for s, t in zip(joint, theta)) in eq for theta, eq in equilibria.items()):
            out.append(joint)
    return out


def is_dominant_type_strategy(pg: PreBayesianGame, player: int, strategy: TypeStrategy) -> Check:
    """``s_i(theta_i)`` is a best reply to every action profile, for every own type.

    Counterexample ``(theta_i, action_profile)``.
    """
    _check_strategy(pg, strategy, player)
    for ti in range(len(pg.types[player])):
        mine = strategy(ti)
        for a in pg.action_profiles():
            b = a[:player] + (mine,) + a[player + 1:]
            if pg.p(player, b, ti) < pg.p(player, a, ti):
                return Check(False, (ti, a))
    return Check(True)


def truth_telling(pg: PreBayesianGame, player: int) -> TypeStrategy:
    """The identity strategy of a revelation-type game (actions equal types)."""
    if pg.actions[player] != pg.types[player]:
        raise GameError("truth-telling needs actions equal to types")
    return TypeStrategy(player, tuple(range(len(pg.types[player]))))


def from_direct_mechanism(mechanism: DirectMechanism) -> PreBayesianGame:
    """Revelation-type game with ``p_i((theta'_i, theta_-i), theta_i) = u_i((f,t)(theta'), theta_i)``."""
    grids = mechanism.base.type_grids

    def payoff(i, announced, theta_i):
        reports = tuple(grids[j][a] for j, a in enumerate(announced))
        return mechanism.utility(i, reports, grids[i][theta_i])

    return PreBayesianGame(grids, grids, payoff)


# --- the two worked examples ---------------------------------------------------------


def example_ex_post() -> PreBayesianGame:
    """Four theta-games whose equilibria line up into an ex-post equilibrium."""
    return from_theta_games(["FB", "FB"], [("U", "D"), ("L", "R")], {
        ("U", "L"): [[(2, 1), (2, 0)], [(0, 1), (2, 1)]],
        ("U", "R"): [[(2, 0), (2, 1)], [(0, 0), (2, 1)]],
        ("D", "L"): [[(3, 1), (2, 0)], [(5, 1), (4, 1)]],
        ("D", "R"): [[(3, 0), (2, 1)], [(5, 0), (4, 1)]],
    })


def example_no_ex_post() -> PreBayesianGame:
    """Every theta-game has an equilibrium, but no ex-post equilibrium exists."""
    return from_theta_games(["CD", "CD"], [("U", "B"), ("L", "R")], {
        ("U", "L"): [[(2, 2), (0, 0)], [(3, 0), (1, 1)]],
        ("U", "R"): [[(2, 1), (0, 0)], [(3, 0), (1, 2)]],
        ("B", "L"): [[(1, 2), (3, 0)], [(0, 0), (2, 1)]],
        ("B", "R"): [[(1, 1), (3, 0)], [(0, 0), (2, 2)]],
    })
