"""Mixed extensions: expected payoffs, equilibrium checks and two-player support enumeration."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .dominance import MixedStrategy
from .game import Game, GameError
from .lp import EQ, LE, LinearProgram, solve

MixedProfile = tuple  # tuple[MixedStrategy, ...], one per player

_ZERO = Fraction(0)


def mixed_profile(game: Game, *distributions) -> MixedProfile:
    """Build a profile from ``{label_or_index: weight}`` dicts, one per player."""
    if len(distributions) != game.n_players:
        raise GameError(f"need {game.n_players} distributions")
    out = []
    for i, dist in enumerate(distributions):
        weights = {}
        for s, w in dict(dist).items():
            k = game.index(i, s) if isinstance(s, str) else s
            weights[k] = Fraction(w)
        out.append(MixedStrategy(i, weights))
    return tuple(out)


def pure_profile(game: Game, joint_strategy: Sequence[int]) -> MixedProfile:
    return tuple(MixedStrategy.pure(i, s) for i, s in enumerate(game.check_profile(joint_strategy)))


def _check(game: Game, profile) -> MixedProfile:
    profile = tuple(profile)
    if len(profile) != game.n_players:
        raise GameError("mixed profile needs one mixed strategy per player")
    for i, m in enumerate(profile):
        if m.player != i:
            raise GameError(f"entry {i} is a mixed strategy of player {m.player + 1}")
        if any(not 0 <= s < game.shape[i] for s in m.support):
            raise GameError(f"mixed strategy of player {i + 1} uses an unknown strategy")
    return profile


def _expectation(game: Game, components, player: int) -> Fraction:
    """Expected payoff of ``player``; ``components[j]`` is a list of (strategy, probability)."""
    total = _ZERO
    for combo in itertools.product(*components):
        prob = Fraction(1)
        for _, w in combo:
            prob *= w
        total += prob * game.payoffs(tuple(s for s, _ in combo))[player]
    return total


def expected_payoff(game: Game, mixed: MixedProfile, player: int) -> Fraction:
    """``p_i(m) = sum_s m_1(s_1) ... m_n(s_n) p_i(s)``."""
    mixed = _check(game, mixed)
    return _expectation(game, [list(m.weights.items()) for m in mixed], player)


def deviation_payoff(game: Game, mixed: MixedProfile, player: int, strategy: int) -> Fraction:
    """``p_i(s_i, m_{-i})``: payoff of a pure deviation against the others' mixtures."""
    mixed = _check(game, mixed)
    comps = [list(m.weights.items()) for m in mixed]
    comps[player] = [(strategy, Fraction(1))]
    return _expectation(game, comps, player)


@dataclass(frozen=True)
class EquilibriumReport:
    profile: MixedProfile
    payoffs: tuple
    supports: tuple
    verified: bool
    # (dimension, supports) when the point represents a higher-dimensional set of equilibria
    family: Optional[tuple] = None

    def weights(self, player: int) -> dict:
        return self.profile[player].weights


def is_nash(game: Game, mixed: MixedProfile) -> EquilibriumReport:
    """Check equilibrium by support indifference.

    Every support strategy must earn exactly ``p_i(m)``; every other pure
    strategy at most that.
    """
    mixed = _check(game, mixed)
    payoffs = tuple(expected_payoff(game, mixed, i) for i in range(game.n_players))
    ok = True
    for i, m in enumerate(mixed):
        for s in range(game.shape[i]):
            v = deviation_payoff(game, mixed, i, s)
            if (s in m.weights and v != payoffs[i]) or v > payoffs[i]:
                ok = False
                break
        if not ok:
            break
    return EquilibriumReport(mixed, payoffs, tuple(m.support for m in mixed), ok)


def no_profitable_deviation(game: Game, mixed: MixedProfile) -> bool:
    """Equilibrium check by unilateral pure deviations only."""
    mixed = _check(game, mixed)
    for i in range(game.n_players):
        base = expected_payoff(game, mixed, i)
        if any(deviation_payoff(game, mixed, i, s) > base for s in range(game.shape[i])):
            return False
    return True


def pure_nash(game: Game) -> set:
    """All pure Nash equilibria by exhaustive enumeration."""
    out = set()
    n = game.n_players
    for p in game.profiles():
        vec = game.payoffs(p)
        if all(
            game.payoffs(p[:i] + (a,) + p[i + 1:])[i] <= vec[i]
            for i in range(n)
            for a in range(game.shape[i])
            if a != p[i]
        ):
            out.add(p)
    return out


def best_response_set(game: Game, player: int, opponents_mixed) -> set:
    """Pure strategies attaining the maximal expected payoff against ``m_{-i}``.

    ``opponents_mixed`` holds one mixed strategy per player; the entry at
    ``player`` may be None and is ignored. Mixed best responses are exactly the
    mixtures supported on this set.
    """
    comps = []
    for j, m in enumerate(opponents_mixed):
        if j == player:
            comps.append(None)
            continue
        if m.player != j:
            raise GameError(f"entry {j} is a mixed strategy of player {m.player + 1}")
        comps.append(list(m.weights.items()))
    if len(comps) != game.n_players:
        raise GameError("need one entry per player")
    values = {}
    for s in range(game.shape[player]):
        comps[player] = [(s, Fraction(1))]
        values[s] = _expectation(game, comps, player)
    best = max(values.values())
    return {s for s, v in values.items() if v == best}


# --- two-player support enumeration -------------------------------------------------


def _affine_solutions(matrix, rhs, n):
    """Solve ``matrix x = rhs`` exactly: (particular solution, nullspace basis) or None."""
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        rows[r] = [a / lead for a in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    if any(all(a == 0 for a in row[:-1]) and row[-1] != 0 for row in rows):
        return None
    free = [c for c in range(n) if c not in pivots]
    particular = [_ZERO] * n
    for k, c in enumerate(pivots):
        particular[c] = rows[k][-1]
    basis = []
    for f in free:
        v = [_ZERO] * n
        v[f] = Fraction(1)
        for k, c in enumerate(pivots):
            v[c] = -rows[k][f]
        basis.append(v)
    return particular, basis


def _mixtures_for(payoff, own_support, other_support, n_own, n_other):
    """Mixtures ``y`` over ``other_support`` that make every strategy in ``own_support`` a best response.

    ``payoff[a][b]`` is the own payoff when own plays ``a`` and the other ``b``.
    Returns (points, family_dimension). Unknowns: y over other_support then the value v.
    """
    k = len(other_support)
    matrix = [[payoff[a][b] for b in other_support] + [Fraction(-1)] for a in own_support]
    rhs = [_ZERO] * len(own_support)
    matrix.append([Fraction(1)] * k + [_ZERO])
    rhs.append(Fraction(1))
    solved = _affine_solutions(matrix, rhs, k + 1)
    if solved is None:
        return [], 0
    base, basis = solved
    outside = [a for a in range(n_own) if a not in own_support]

    # every inequality as (coefficients over unknowns, bound): coeffs . z <= bound
    ineqs = [([-(1 if j == t else 0) for t in range(k)] + [0], 0) for j in range(k)]
    for a in outside:
        ineqs.append(([payoff[a][b] for b in other_support] + [-1], 0))

    def feasible(z):
        return all(sum((Fraction(c) * x for c, x in zip(co, z)), _ZERO) <= bd for co, bd in ineqs)

    def as_point(z):
        return tuple(z[:k])

    if not basis:
        return ([as_point(base)] if feasible(base) else []), 0
    if len(basis) == 1:
        d = basis[0]
        lo, hi = None, None
        for co, bd in ineqs:
            slope = sum((Fraction(c) * x for c, x in zip(co, d)), _ZERO)
            level = bd - sum((Fraction(c) * x for c, x in zip(co, base)), _ZERO)
            if slope == 0:
                if level < 0:
                    return [], 0
            elif slope > 0:
                hi = level / slope if hi is None else min(hi, level / slope)
            else:
                lo = level / slope if lo is None else max(lo, level / slope)
        if lo is None or hi is None or lo > hi:
            return [], 0
        ends = {lo, hi}
        return [as_point([b + t * x for b, x in zip(base, d)]) for t in sorted(ends)], 0
    # larger solution sets: one vertex as representative
    rows = [(tuple(row), EQ, b) for row, b in zip(matrix, rhs)]
    rows += [(tuple(co), LE, bd) for co, bd in ineqs]
    out = solve(LinearProgram((0,) * (k + 1), rows, (None,) * (k + 1)))
    if not out.is_optimal:
        return [], 0
    return [as_point(out.witness)], len(basis)


def support_enumeration_2p(game: Game) -> list:
    """All equilibria of a nondegenerate bimatrix game, at least one for any game.

    For every pair of candidate best-response sets the indifference systems are
    solved exactly. Degenerate pairs whose solution set is a segment contribute
    its endpoints; larger solution sets contribute one vertex flagged with a
    ``family`` descriptor. Reports are sorted by support size, then supports.
    """
    if game.n_players != 2:
        raise GameError("support enumeration is for two-player games")
    m, n = game.shape
    a = [[game.payoffs((r, c))[0] for c in range(n)] for r in range(m)]
    b = [[game.payoffs((r, c))[1] for r in range(m)] for c in range(n)]
    found = {}
    for size_i in range(1, m + 1):
        for rows in itertools.combinations(range(m), size_i):
            for size_j in range(1, n + 1):
                for cols in itertools.combinations(range(n), size_j):
                    ys, dim_y = _mixtures_for(a, rows, cols, m, n)
                    if not ys:
                        continue
                    xs, dim_x = _mixtures_for(b, cols, rows, n, m)
                    for x in xs:
                        for y in ys:
                            key = (
                                tuple(sorted((r, w) for r, w in zip(rows, x) if w)),
                                tuple(sorted((c, w) for c, w in zip(cols, y) if w)),
                            )
                            dim = max(dim_x, dim_y)
                            family = (dim, (rows, cols)) if dim > 1 else None
                            if key not in found or (found[key] is not None and family is None):
                                found[key] = family
    reports = []
    for (xw, yw), family in found.items():
        profile = (MixedStrategy(0, dict(xw)), MixedStrategy(1, dict(yw)))
        rep = is_nash(game, profile)
        if not rep.verified:
            raise RuntimeError("support enumeration produced a non-equilibrium")
        reports.append(EquilibriumReport(rep.profile, rep.payoffs, rep.supports, True, family))
    reports.sort(key=lambda r: (
        sum(len(s) for s in r.supports),
        r.supports,
        tuple(tuple(m.weights.values()) for m in r.profile),
    ))
    if not reports:
        raise RuntimeError("no equilibrium found; mixed extensions of finite games always have one")
    return reports
