"""Single-step strategy comparisons: best responses, dominance, never best responses.

Every predicate takes a :class:`~stratgames.game.Restriction` (a bare
:class:`~stratgames.game.Game` is read as its full restriction) and quantifies
over the restriction's kept opponent profiles. Mixed dominance and belief tests
are decided by exact linear programs from :mod:`stratgames.lp`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .game import GameError, Restriction, as_restriction, with_choice
from .lp import EQ, GE, LE, LinearProgram, solve

POINT, CORRELATED, INDEPENDENT = "point", "correlated", "independent"
BELIEF_CLASSES = (POINT, CORRELATED, INDEPENDENT)

STRICT, WEAK, DOMINANT = "strict", "weak", "dominant"


class UnsupportedBeliefError(GameError):
    """Independent beliefs were requested for a game with three or more players."""


@dataclass(frozen=True)
class MixedStrategy:
    """A probability distribution over one player's strategy indices.

    Zero weights are dropped, so ``weights`` is exactly the support.
    """

    player: int
    weights: Mapping[int, Fraction]

    def __post_init__(self):
        items = []
        total = Fraction(0)
        for s, w in dict(self.weights).items():
            w = Fraction(w)
            if w < 0:
                raise GameError(f"negative weight {w} on strategy {s}")
            total += w
            if w:
                items.append((int(s), w))
        if total != 1:
            raise GameError(f"weights sum to {total}, not 1")
        object.__setattr__(self, "weights", dict(sorted(items)))

    @classmethod
    def pure(cls, player: int, strategy: int) -> "MixedStrategy":
        return cls(player, {strategy: Fraction(1)})

    @property
    def support(self) -> tuple:
        return tuple(self.weights)

    def weight(self, strategy: int) -> Fraction:
        return self.weights.get(strategy, Fraction(0))

    @property
    def is_pure(self) -> bool:
        return len(self.weights) == 1

    def __hash__(self):
        return hash((self.player, tuple(self.weights.items())))

    def __eq__(self, other):
        if not isinstance(other, MixedStrategy):
            return NotImplemented
        return self.player == other.player and self.weights == other.weights


@dataclass(frozen=True)
class DominanceWitness:
    player: int
    dominated: int
    dominator: Union[int, MixedStrategy]
    mode: str

    def for_player(self, player: int) -> "DominanceWitness":
        """The same witness moved to another player of a symmetric game."""
        d = self.dominator
        if isinstance(d, MixedStrategy):
            d = MixedStrategy(player, d.weights)
        return DominanceWitness(player, self.dominated, d, self.mode)

    def dominator_mixture(self) -> MixedStrategy:
        if isinstance(self.dominator, MixedStrategy):
            return self.dominator
        return MixedStrategy.pure(self.player, self.dominator)

    def verify(self, restriction) -> bool:
        """Re-check the witness by direct payoff substitution over kept opponent profiles.

        Raises :class:`GameError` if the dominator uses a strategy outside the
        restriction or the dominated strategy itself.
        """
        r = as_restriction(restriction)
        mix = self.dominator_mixture()
        kept = r.kept[self.player]
        if self.dominated not in kept:
            raise GameError("dominated strategy is not kept in the restriction")
        for s in mix.support:
            if s not in kept:
                raise GameError(f"dominator uses strategy {s} outside the restriction")
            if s == self.dominated:
                raise GameError("dominator places weight on the dominated strategy")
        game = r.parent
        i = self.player
        strict_somewhere = False
        for others in r.opponent_profiles(i):
            target = game.payoffs(with_choice(others, i, self.dominated))[i]
            value = sum(w * game.payoffs(with_choice(others, i, s))[i] for s, w in mix.weights.items())
            if value < target:
                return False
            if value == target and self.mode == STRICT:
                return False
            if value > target:
                strict_somewhere = True
        return strict_somewhere or self.mode == DOMINANT


def _check_kept(r: Restriction, player: int, *strategies: int) -> None:
    if not 0 <= player < r.n_players:
        raise GameError(f"no player {player}")
    for s in strategies:
        if s not in r.kept[player]:
            raise GameError(f"strategy {s!r} of player {player + 1} is not kept in the restriction")


def _gaps(r: Restriction, player: int, s: int, alternatives: Sequence[int], opponents):
    """``gaps[a][o] = p_i(a, o) - p_i(s, o)`` for each alternative and opponent profile."""
    game = r.parent
    base = [game.payoffs(with_choice(o, player, s))[player] for o in opponents]
    return {
        a: [game.payoffs(with_choice(o, player, a))[player] - b for o, b in zip(opponents, base)]
        for a in alternatives
    }


def is_best_response(restriction, player: int, strategy: int, opponents_profile: Sequence) -> bool:
    """Is ``strategy`` a best response to the pure opponent profile among kept strategies?

    ``opponents_profile`` is either ``s_{-i}`` (length n-1) or a full-length
    tuple whose ``player`` slot is ignored.
    """
    r = as_restriction(restriction)
    _check_kept(r, player, strategy)
    others = list(opponents_profile)
    if len(others) == r.n_players - 1:
        others.insert(player, None)
    if len(others) != r.n_players:
        raise GameError("opponent profile has the wrong length")
    for j, s in enumerate(others):
        if j != player and s not in r.kept[j]:
            raise GameError(f"opponent strategy {s!r} of player {j + 1} is not kept")
    game = r.parent
    mine = game.payoffs(with_choice(others, player, strategy))[player]
    return all(game.payoffs(with_choice(others, player, a))[player] <= mine for a in r.kept[player])


def _compare(r, player, s, s2, mode) -> bool:
    if s == s2:
        return False
    game = r.parent
    strict_somewhere = False
    for o in r.opponent_profiles(player):
        a = game.payoffs(with_choice(o, player, s))[player]
        b = game.payoffs(with_choice(o, player, s2))[player]
        if a < b or (a == b and mode == STRICT):
            return False
        if a > b:
            strict_somewhere = True
    return strict_somewhere or mode == DOMINANT


def strictly_dominates_pure(restriction, player: int, s: int, s_other: int) -> bool:
    r = as_restriction(restriction)
    _check_kept(r, player, s, s_other)
    return _compare(r, player, s, s_other, STRICT)


def weakly_dominates_pure(restriction, player: int, s: int, s_other: int) -> bool:
    r = as_restriction(restriction)
    _check_kept(r, player, s, s_other)
    return _compare(r, player, s, s_other, WEAK)


def dominates_pure(restriction, player: int, s: int, s_other: int) -> bool:
    """``s`` is at least as good as ``s_other`` against every kept opponent profile."""
    r = as_restriction(restriction)
    _check_kept(r, player, s, s_other)
    return s != s_other and _compare(r, player, s, s_other, DOMINANT)


def is_dominant(restriction, player: int, strategy: int, mode: str = STRICT) -> bool:
    r = as_restriction(restriction)
    _check_kept(r, player, strategy)
    if mode not in (STRICT, WEAK, DOMINANT):
        raise GameError(f"unknown dominance mode {mode!r}")
    return all(_compare(r, player, strategy, a, mode) for a in r.kept[player] if a != strategy)


def pure_dominator(restriction, player: int, strategy: int, mode: str = STRICT) -> Optional[int]:
    """Lowest-index kept strategy that dominates ``strategy`` in ``mode``, if any."""
    r = as_restriction(restriction)
    _check_kept(r, player, strategy)
    return next((a for a in r.kept[player] if _compare(r, player, a, strategy, mode)), None)


def _is_point_best_response(r, player, s, alternatives, unique=False) -> bool:
    game = r.parent
    for o in r.opponent_profiles(player):
        mine = game.payoffs(with_choice(o, player, s))[player]
        ok = True
        for a in alternatives:
            if a == s:
                continue
            v = game.payoffs(with_choice(o, player, a))[player]
            if v > mine or (unique and v == mine):
                ok = False
                break
        if ok:
            return True
    return False


def point_best_responses(restriction, unique: bool = False, players=None) -> tuple:
    """Per player, the kept strategies that are a best response to some kept pure profile.

    With ``unique`` only strict (unique) best responses count. One pass over
    the kept joint strategies serves every player at once; players not listed
    in ``players`` get an empty set.
    """
    r = as_restriction(restriction)
    n = r.n_players
    players = range(n) if players is None else list(players)
    game = r.parent
    best = [dict() for _ in range(n)]  # hole profile -> (value, argmax list)
    for p in r.profiles():
        vec = game.payoffs(p)
        for i in players:
            key = p[:i] + (None,) + p[i + 1:]
            v = vec[i]
            cur = best[i].get(key)
            if cur is None or v > cur[0]:
                best[i][key] = (v, [p[i]])
            elif v == cur[0]:
                cur[1].append(p[i])
    out = []
    for i in range(n):
        found = set()
        for _, arg in best[i].values():
            if not unique or len(arg) == 1:
                found.update(arg)
        out.append(found)
    return tuple(out)


# row subsets this large are solved by adding violated constraints on demand
_GENERATION_THRESHOLD = 400
_GENERATION_BATCH = 60


def strict_dominance_lp(r: Restriction, player: int, strategy: int):
    """Maximise eps s.t. the mixture beats ``strategy`` by eps against every kept profile.

    With many opponent profiles the program is solved on a subset of rows, and
    rows the current mixture violates are added until none is left.
    """
    others = [a for a in r.kept[player] if a != strategy]
    if not others:
        return None
    opponents = r.opponent_profiles(player)
    game = r.parent
    base = [game.payoffs(with_choice(o, player, strategy))[player] for o in opponents]
    cache = {}

    def gap(a, m):
        key = (a, m)
        if key not in cache:
            cache[key] = game.payoffs(with_choice(opponents[m], player, a))[player] - base[m]
        return cache[key]

    k = len(others)
    total = len(opponents)
    if total <= _GENERATION_THRESHOLD:
        active = list(range(total))
    else:
        active = list(range(0, total, total // _GENERATION_BATCH + 1))
    while True:
        rows = [(tuple(-gap(a, m) for a in others) + (1,), LE, 0) for m in active]
        rows.append(((1,) * k + (0,), EQ, 1))
        out = solve(LinearProgram((0,) * k + (1,), rows, (0,) * k + (None,)))
        eps = out.optimal_value
        # a subset of rows gives a relaxation, so a non-positive optimum is final
        if eps is None or eps <= 0:
            return None
        weights = {a: w for a, w in zip(others, out.witness[:k]) if w}
        if len(active) == total:
            return MixedStrategy(player, weights)
        chosen = set(active)
        violated = []
        for m in range(total):
            if m not in chosen:
                v = sum(w * gap(a, m) for a, w in weights.items())
                if v < eps:
                    violated.append((v, m))
        if not violated:
            return MixedStrategy(player, weights)
        violated.sort()
        active = sorted(chosen | {m for _, m in violated[:_GENERATION_BATCH]})


def strictly_dominated_by_mixed(restriction, player: int, strategy: int) -> Optional[MixedStrategy]:
    """A mixture of other kept strategies that strictly dominates ``strategy``, or None."""
    r = as_restriction(restriction)
    _check_kept(r, player, strategy)
    # a best response to a point belief cannot be beaten everywhere by an average
    if _is_point_best_response(r, player, strategy, r.kept[player]):
        return None
    return strict_dominance_lp(r, player, strategy)


def weak_dominance_lp(r: Restriction, player: int, strategy: int):
    """Maximise the total advantage of a mixture that is never worse than ``strategy``."""
    others = [a for a in r.kept[player] if a != strategy]
    if not others:
        return None
    opponents = r.opponent_profiles(player)
    gaps = _gaps(r, player, strategy, others, opponents)
    k = len(others)
    rows = [(tuple(-gaps[a][m] for a in others), LE, 0) for m in range(len(opponents))]
    rows.append(((1,) * k, EQ, 1))
    objective = tuple(sum(gaps[a]) for a in others)
    out = solve(LinearProgram(objective, rows))
    if out.optimal_value is None or out.optimal_value <= 0:
        return None
    return MixedStrategy(player, dict(zip(others, out.witness)))


def weakly_dominated_by_mixed(restriction, player: int, strategy: int) -> Optional[MixedStrategy]:
    """A mixture of other kept strategies that weakly dominates ``strategy``, or None."""
    r = as_restriction(restriction)
    _check_kept(r, player, strategy)
    # the unique best response to some profile beats every mixture there
    if _is_point_best_response(r, player, strategy, r.kept[player], unique=True):
        return None
    return weak_dominance_lp(r, player, strategy)


def rationalizing_belief(restriction, player: int, strategy: int, belief_class: str = CORRELATED,
                         alternatives: Optional[Sequence[int]] = None) -> Optional[dict]:
    """A belief over kept opponent profiles to which ``strategy`` is a best response.

    The belief is returned as ``{opponent_profile: probability}`` (profiles carry a
    ``None`` hole at ``player``). ``alternatives`` are the strategies the best
    response is measured against; by default the player's kept strategies, while
    rationalizability passes the full strategy set of the original game.
    """
    r = as_restriction(restriction)
    if belief_class not in BELIEF_CLASSES:
        raise GameError(f"unknown belief class {belief_class!r}")
    if belief_class == INDEPENDENT:
        if r.n_players > 2:
            raise UnsupportedBeliefError("independent beliefs are only supported for two-player games")
        belief_class = CORRELATED
    if alternatives is None:
        alternatives = r.kept[player]
    opponents = r.opponent_profiles(player)
    if not opponents or any(not r.kept[j] for j in range(r.n_players) if j != player):
        return None
    game = r.parent
    if belief_class == POINT:
        for o in opponents:
            mine = game.payoffs(with_choice(o, player, strategy))[player]
            if all(game.payoffs(with_choice(o, player, a))[player] <= mine for a in alternatives):
                return {o: Fraction(1)}
        return None
    gaps = _gaps(r, player, strategy, [a for a in alternatives if a != strategy], opponents)
    m = len(opponents)
    rows = [(tuple(g), LE, 0) for g in gaps.values()]
    rows.append(((1,) * m, EQ, 1))
    out = solve(LinearProgram((0,) * m, rows))
    if not out.is_optimal:
        return None
    return {o: w for o, w in zip(opponents, out.witness) if w}


def is_never_best_response(restriction, player: int, strategy: int, belief_class: str = POINT) -> bool:
    r = as_restriction(restriction)
    _check_kept(r, player, strategy)
    return rationalizing_belief(r, player, strategy, belief_class) is None


def totally_mixed_belief(restriction, player: int, strategy: int) -> Optional[dict]:
    """A full-support belief to which ``strategy`` is a best response, or None.

    Maximises the smallest belief weight subject to the best-response
    inequalities; a totally mixed belief exists iff that maximum is positive.
    """
    r = as_restriction(restriction)
    _check_kept(r, player, strategy)
    opponents = r.opponent_profiles(player)
    m = len(opponents)
    gaps = _gaps(r, player, strategy, [a for a in r.kept[player] if a != strategy], opponents)
    rows = [(tuple(g) + (0,), LE, 0) for g in gaps.values()]
    for k in range(m):
        row = [0] * (m + 1)
        row[k] = -1
        row[m] = 1
        rows.append((tuple(row), LE, 0))
    rows.append(((1,) * m + (0,), EQ, 1))
    out = solve(LinearProgram((0,) * m + (1,), rows))
    if not out.is_optimal or out.optimal_value <= 0:
        return None
    return dict(zip(opponents, out.witness[:m]))


def best_response_with_floor(restriction, player: int, strategy: int, delta: Fraction) -> bool:
    """Is ``strategy`` a best response to some belief with every weight at least ``delta``?"""
    r = as_restriction(restriction)
    _check_kept(r, player, strategy)
    opponents = r.opponent_profiles(player)
    m = len(opponents)
    gaps = _gaps(r, player, strategy, [a for a in r.kept[player] if a != strategy], opponents)
    rows = [(tuple(g), LE, 0) for g in gaps.values()]
    rows.append(((1,) * m, EQ, 1))
    out = solve(LinearProgram((0,) * m, rows, (Fraction(delta),) * m))
    return out.is_optimal


def default_floor(restriction, player: int) -> Fraction:
    """``1 / (K * L * spread)``: a small positive belief floor for :func:`best_response_with_floor`."""
    r = as_restriction(restriction)
    values = [r.parent.payoffs(p)[player] for p in r.profiles()]
    spread = max(values) - min(values) or Fraction(1)
    k, l = r.shape
    return 1 / (k * l * spread)


@dataclass(frozen=True)
class PearceReport:
    player: int
    strategy: int
    strictly_mixed_dominated: bool
    best_response_to_belief: bool
    weakly_mixed_dominated: bool
    best_response_to_totally_mixed: bool

    @property
    def part_i_holds(self) -> bool:
        return self.strictly_mixed_dominated == (not self.best_response_to_belief)

    @property
    def part_ii_holds(self) -> bool:
        return self.weakly_mixed_dominated == (not self.best_response_to_totally_mixed)

    @property
    def holds(self) -> bool:
        return self.part_i_holds and self.part_ii_holds


def pearce_check(game2p, player: int, strategy: int) -> PearceReport:
    """Decide both sides of the dominance / best-response equivalences independently.

    Dominance comes from the mixture LPs (without the pure-profile shortcut);
    best responses come from LPs over beliefs.
    """
    r = as_restriction(game2p)
    if r.n_players != 2:
        raise GameError("this check is for two-player games")
    _check_kept(r, player, strategy)
    return PearceReport(
        player,
        strategy,
        strict_dominance_lp(r, player, strategy) is not None,
        rationalizing_belief(r, player, strategy, CORRELATED) is not None,
        weak_dominance_lp(r, player, strategy) is not None,
        totally_mixed_belief(r, player, strategy) is not None,
    )
