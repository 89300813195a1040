"""Finite strategic games, restrictions and exact rational payoffs."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

Rational = Fraction
JointStrategy = tuple  # tuple[int, ...], one strategy index per player

PayoffRule = Callable[[tuple], Sequence]


class GameError(ValueError):
    """Malformed game data or a strategy reference outside the game."""


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and "a/b" strings to an exact Fraction.

    Floats are refused: a float payoff has already lost exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise GameError(f"payoffs must be exact rationals, got {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise GameError(f"not a rational number: {value!r}") from exc


class Game:
    """A finite strategic game ``(S_1, ..., S_n, p_1, ..., p_n)``.

    Strategies are addressed by index; ``strategy_names[i][k]`` is the label of
    strategy ``k`` of player ``i``. Payoffs are stored densely in row-major
    joint-index order, or computed on demand by a payoff rule for games too big
    to materialise (see :meth:`from_rule`).

    ``symmetric`` is a declaration, not checked here: every player has the same
    strategies and permuting players permutes payoffs accordingly. Elimination
    uses it to analyse one player on behalf of all (see :func:`is_symmetric`).
    """

    def __init__(self, strategy_names: Sequence[Sequence[str]], cells=None, rule=None,
                 symmetric: bool = False):
        names = tuple(tuple(str(s) for s in player) for player in strategy_names)
        if len(names) < 2:
            raise GameError("a game needs at least two players")
        for i, player in enumerate(names):
            if not player:
                raise GameError(f"player {i + 1} has an empty strategy set")
            if len(set(player)) != len(player):
                raise GameError(f"player {i + 1} has duplicate strategy labels")
        self.strategy_names = names
        self.shape = tuple(len(p) for p in names)
        strides = []
        acc = 1
        for size in reversed(self.shape):
            strides.append(acc)
            acc *= size
        self._strides = tuple(reversed(strides))
        self.size = acc
        if (cells is None) == (rule is None):
            raise GameError("exactly one of cells or rule must be given")
        self._cells = cells
        self._rule = rule
        if symmetric and len(set(names)) != 1:
            raise GameError("a symmetric game needs identical strategy sets")
        self.symmetric = symmetric

    @classmethod
    def from_rule(cls, strategy_names, rule: PayoffRule, symmetric: bool = False) -> "Game":
        """Game whose payoff vector for a profile is ``rule(profile)``, evaluated lazily."""
        n = len(strategy_names)

        def checked(profile):
            values = rule(profile)
            if type(values) is not tuple or any(type(v) is not Fraction for v in values):
                values = tuple(as_rational(v) for v in values)
            if len(values) != n:
                raise GameError(f"payoff rule returned {len(values)} values for {n} players")
            return values

        return cls(strategy_names, rule=checked, symmetric=symmetric)

    @property
    def n_players(self) -> int:
        return len(self.shape)

    @property
    def is_lazy(self) -> bool:
        return self._rule is not None

    def index(self, player: int, label) -> int:
        try:
            return self.strategy_names[player].index(str(label))
        except ValueError:
            raise GameError(f"player {player + 1} has no strategy {label!r}") from None

    def profile(self, *labels) -> JointStrategy:
        """Joint strategy from labels, e.g. ``game.profile("T", "M")``."""
        if len(labels) != self.n_players:
            raise GameError(f"expected {self.n_players} labels, got {len(labels)}")
        return tuple(self.index(i, lab) for i, lab in enumerate(labels))

    def labels(self, profile: Sequence[int]) -> tuple:
        return tuple(self.strategy_names[i][s] for i, s in enumerate(profile))

    def check_profile(self, profile: Sequence[int]) -> JointStrategy:
        profile = tuple(profile)
        if len(profile) != self.n_players:
            raise GameError(f"joint strategy has {len(profile)} entries, game has {self.n_players} players")
        for i, s in enumerate(profile):
            if not (isinstance(s, int) and 0 <= s < self.shape[i]):
                raise GameError(f"strategy index {s!r} out of range for player {i + 1}")
        return profile

    def payoffs(self, profile: Sequence[int]) -> tuple:
        """Payoff vector of a joint strategy. No validation; see :func:`payoff`."""
        if self._rule is not None:
            return self._rule(tuple(profile))
        return self._cells[sum(s * k for s, k in zip(profile, self._strides))]

    def profiles(self) -> Iterator[JointStrategy]:
        return itertools.product(*(range(k) for k in self.shape))

    def materialize(self) -> "Game":
        if self._rule is None:
            return self
        cells = tuple(self.payoffs(p) for p in self.profiles())
        return Game(self.strategy_names, cells=cells, symmetric=self.symmetric)

    def __eq__(self, other):
        if not isinstance(other, Game):
            return NotImplemented
        if self.strategy_names != other.strategy_names:
            return False
        return all(self.payoffs(p) == other.payoffs(p) for p in self.profiles())

    def __hash__(self):
        return hash(self.strategy_names)

    def __repr__(self):
        dims = "x".join(str(k) for k in self.shape)
        return f"Game({dims}, players={self.n_players})"


def make_game(strategy_names: Sequence[Sequence[str]], payoff_table) -> Game:
    """Build a game from a nested payoff table.

    ``payoff_table`` nests one list level per player (row player outermost);
    each leaf is the payoff vector of that joint strategy. A bimatrix is thus a
    list of rows whose entries are ``(p1, p2)`` pairs.
    """
    names = [list(p) for p in strategy_names]
    n = len(names)
    if n < 2:
        raise GameError("a game needs at least two players")
    for i, player in enumerate(names):
        if not player:
            raise GameError(f"player {i + 1} has an empty strategy set")
    shape = [len(p) for p in names]
    cells = []

    def walk(node, depth, prefix):
        if depth == n:
            try:
                vector = tuple(node)
            except TypeError:
                raise GameError(f"payoff cell at {prefix} is not a vector") from None
            if len(vector) != n:
                raise GameError(f"payoff cell at {prefix} has {len(vector)} entries, expected {n}")
            cells.append(tuple(as_rational(v) for v in vector))
            return
        try:
            children = list(node)
        except TypeError:
            raise GameError(f"payoff table too shallow at {prefix}") from None
        if len(children) != shape[depth]:
            raise GameError(
                f"payoff table dimension mismatch at {prefix}: {len(children)} entries "
                f"for {shape[depth]} strategies of player {depth + 1}"
            )
        for k, child in enumerate(children):
            walk(child, depth + 1, prefix + (k,))

    walk(payoff_table, 0, ())
    return Game(names, cells=tuple(cells))


def payoff(game_or_restriction, joint_strategy: Sequence[int], player: int) -> Fraction:
    """Validated payoff lookup ``p_i(s)`` on a game or a restriction."""
    if isinstance(game_or_restriction, Restriction):
        r = game_or_restriction
        profile = r.parent.check_profile(joint_strategy)
        for i, s in enumerate(profile):
            if s not in r.kept[i]:
                raise GameError(f"strategy {r.parent.strategy_names[i][s]!r} of player {i + 1} is not kept")
        game = r.parent
    else:
        game = game_or_restriction
        profile = game.check_profile(joint_strategy)
    if not 0 <= player < game.n_players:
        raise GameError(f"no player {player}")
    return game.payoffs(profile)[player]


@dataclass(frozen=True)
class Restriction:
    """Per-player subsets of a parent game's strategies; kept sets may be empty."""

    parent: Game = field(compare=False, repr=False)
    kept: tuple

    def __post_init__(self):
        if len(self.kept) != self.parent.n_players:
            raise GameError("restriction needs one kept set per player")
        normal = []
        for i, ks in enumerate(self.kept):
            ks = tuple(sorted(set(ks)))
            for s in ks:
                if not (isinstance(s, int) and 0 <= s < self.parent.shape[i]):
                    raise GameError(f"kept strategy {s!r} not a strategy of player {i + 1}")
            normal.append(ks)
        object.__setattr__(self, "kept", tuple(normal))

    @property
    def n_players(self) -> int:
        return self.parent.n_players

    @property
    def shape(self) -> tuple:
        return tuple(len(k) for k in self.kept)

    @property
    def size(self) -> int:
        """Total number of kept strategies over all players."""
        return sum(len(k) for k in self.kept)

    @property
    def is_degenerate(self) -> bool:
        return any(not k for k in self.kept)

    def profiles(self) -> Iterator[JointStrategy]:
        return itertools.product(*self.kept)

    def opponent_profiles(self, player: int) -> list:
        """All kept ``s_{-i}``, as full-length tuples with a ``None`` hole at ``player``."""
        pools = [(None,) if j == player else k for j, k in enumerate(self.kept)]
        return list(itertools.product(*pools))

    def without(self, removals: Iterable) -> "Restriction":
        drop = set(removals)
        return Restriction(self.parent, tuple(
            tuple(s for s in ks if (i, s) not in drop) for i, ks in enumerate(self.kept)
        ))

    def solution(self):
        """The unique kept joint strategy if every player keeps exactly one strategy."""
        if all(len(k) == 1 for k in self.kept):
            return tuple(k[0] for k in self.kept)
        return None

    def labels(self) -> tuple:
        return tuple(
            tuple(self.parent.strategy_names[i][s] for s in ks) for i, ks in enumerate(self.kept)
        )

    def to_game(self) -> Game:
        """Materialise the restriction as a standalone game (kept sets must be non-empty)."""
        if self.is_degenerate:
            raise GameError("cannot build a game from a restriction with an empty strategy set")
        names = self.labels()
        cells = tuple(self.parent.payoffs(p) for p in self.profiles())
        return Game(names, cells=cells)


def full_restriction(game: Game) -> Restriction:
    return Restriction(game, tuple(tuple(range(k)) for k in game.shape))


def as_restriction(obj) -> Restriction:
    return obj if isinstance(obj, Restriction) else full_restriction(obj)


def with_choice(others: Sequence, player: int, strategy: int) -> JointStrategy:
    """Fill the ``player`` slot of an opponent profile."""
    out = list(others)
    out[player] = strategy
    return tuple(out)


def is_symmetric(game: Game) -> bool:
    """Exhaustive check that payoffs commute with every permutation of the players."""
    if len(set(game.strategy_names)) != 1:
        return False
    n = game.n_players
    for p in game.profiles():
        vec = game.payoffs(p)
        for perm in itertools.permutations(range(n)):
            q = tuple(p[perm[j]] for j in range(n))
            other = game.payoffs(q)
            if any(other[j] != vec[perm[j]] for j in range(n)):
                return False
    return True


def is_pareto_efficient(game: Game, joint_strategy: Sequence[int]) -> bool:
    """True iff no joint strategy is weakly better for all and strictly better for some player."""
    s = game.check_profile(joint_strategy)
    base = game.payoffs(s)
    for other in game.profiles():
        alt = game.payoffs(other)
        if all(a >= b for a, b in zip(alt, base)) and any(a > b for a, b in zip(alt, base)):
            return False
    return True
