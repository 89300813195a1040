"""Decision problems, direct mechanisms with taxes, and Groves / pivotal taxes.

Type spaces are finite rational grids supplied by the caller. Incentive
compatibility over a grid is checked exhaustively; for the continuous type
spaces of the textbook examples a grid check is a necessary condition only.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .game import GameError, as_rational

Valuation = Callable[[int, object, Fraction], Fraction]  # v(i, d, theta_i)
DecisionRule = Callable[[tuple], object]  # f(theta)
TaxRule = Callable[[tuple], tuple]  # t(theta)
OffsetRule = Callable[[int, tuple], Fraction]  # h(i, theta_{-i})


@dataclass(frozen=True)
class Check:
    """Outcome of an exhaustive check; falsy with a counterexample when the property fails."""

    holds: bool
    counterexample: Optional[tuple] = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class DecisionProblem:
    decisions: tuple
    type_grids: tuple
    valuation: Valuation
    decision_rule: DecisionRule

    def __post_init__(self):
        if len(self.type_grids) < 2:
            raise GameError("a decision problem needs at least two players")
        if not self.decisions:
            raise GameError("a decision problem needs at least one decision")
        grids = []
        for i, g in enumerate(self.type_grids):
            g = tuple(as_rational(t) for t in g)
            if not g:
                raise GameError(f"player {i + 1} has an empty type grid")
            grids.append(g)
        object.__setattr__(self, "decisions", tuple(self.decisions))
        object.__setattr__(self, "type_grids", tuple(grids))

    @property
    def n_players(self) -> int:
        return len(self.type_grids)

    def joint_types(self):
        return itertools.product(*self.type_grids)

    def value(self, i: int, d, theta_i) -> Fraction:
        return as_rational(self.valuation(i, d, theta_i))

    def welfare(self, d, theta: Sequence, exclude: Optional[int] = None) -> Fraction:
        return sum(
            (self.value(j, d, t) for j, t in enumerate(theta) if j != exclude), Fraction(0)
        )

    def decide(self, theta: Sequence):
        return self.decision_rule(tuple(theta))


@dataclass(frozen=True)
class DirectMechanism:
    base: DecisionProblem
    tax_rule: TaxRule

    def taxes(self, theta: Sequence) -> tuple:
        t = tuple(as_rational(x) for x in self.tax_rule(tuple(theta)))
        if len(t) != self.base.n_players:
            raise GameError("tax rule must return one tax per player")
        return t

    def utility(self, i: int, announced: Sequence, true_type) -> Fraction:
        """``u_i((f,t)(announced), theta_i) = v_i(f(announced), theta_i) + t_i(announced)``."""
        d = self.base.decide(announced)
        return self.base.value(i, d, true_type) + self.taxes(announced)[i]

    def outcome(self, theta: Sequence):
        """Decision, taxes and final utilities when everyone reports truthfully."""
        theta = tuple(theta)
        d = self.base.decide(theta)
        taxes = self.taxes(theta)
        utils = tuple(self.base.value(i, d, t) + taxes[i] for i, t in enumerate(theta))
        return d, taxes, utils


def is_efficient(problem: DecisionProblem) -> Check:
    """Does ``f(theta)`` maximise social welfare at every grid point?

    Counterexample: ``(theta, better_decision)``.
    """
    for theta in problem.joint_types():
        chosen = problem.welfare(problem.decide(theta), theta)
        for d in problem.decisions:
            if problem.welfare(d, theta) > chosen:
                return Check(False, (theta, d))
    return Check(True)


def groves_tax(problem: DecisionProblem, h: OffsetRule) -> DirectMechanism:
    """``t_i(theta) = sum_{j != i} v_j(f(theta), theta_j) + h_i(theta_{-i})``.

    ``h`` is called as ``h(i, theta_minus_i)`` so it cannot see ``theta_i``.
    """
    def taxes(theta):
        d = problem.decide(theta)
        return tuple(
            problem.welfare(d, theta, exclude=i) + as_rational(h(i, theta[:i] + theta[i + 1:]))
            for i in range(problem.n_players)
        )

    return DirectMechanism(problem, taxes)


def pivotal_offset(problem: DecisionProblem) -> OffsetRule:
    """``h_i(theta_{-i}) = -max_d sum_{j != i} v_j(d, theta_j)``."""
    def h(i, others):
        theta = others[:i] + (None,) + others[i:]
        return -max(problem.welfare(d, theta, exclude=i) for d in problem.decisions)

    return h


def pivotal(problem: DecisionProblem) -> DirectMechanism:
    return groves_tax(problem, pivotal_offset(problem))


def is_incentive_compatible(mechanism: DirectMechanism) -> Check:
    """Truthful reporting is optimal for every player at every grid point.

    Counterexample: ``(theta, i, misreport, truthful_utility, misreport_utility)``.
    """
    problem = mechanism.base
    for theta in problem.joint_types():
        for i in range(problem.n_players):
            honest = mechanism.utility(i, theta, theta[i])
            for lie in problem.type_grids[i]:
                if lie == theta[i]:
                    continue
                announced = theta[:i] + (lie,) + theta[i + 1:]
                gain = mechanism.utility(i, announced, theta[i])
                if gain > honest:
                    return Check(False, (theta, i, lie, honest, gain))
    return Check(True)


def is_feasible(mechanism: DirectMechanism) -> Check:
    """Total taxes never positive; counterexample ``(theta, taxes)``."""
    for theta in mechanism.base.joint_types():
        taxes = mechanism.taxes(theta)
        if sum(taxes) > 0:
            return Check(False, (theta, taxes))
    return Check(True)


# --- the two textbook instances ----------------------------------------------------


def argsmax(values: Sequence) -> int:
    """Index of the first maximal entry."""
    best = max(values)
    return next(k for k, v in enumerate(values) if v == best)


def _grids(n, grid):
    grid = list(grid)
    if grid and isinstance(grid[0], (list, tuple)):
        if len(grid) != n:
            raise GameError(f"need {n} type grids")
        return tuple(tuple(g) for g in grid)
    return tuple(tuple(grid) for _ in range(n))


def auction_problem(n: int, grid) -> DecisionProblem:
    """Sealed-bid auction: decision ``d`` is the (0-based) index of the winner.

    ``v_i(d, theta_i) = theta_i if d == i else 0`` and the object goes to the
    highest bidder with the lowest index. ``grid`` is one list of bids shared by
    every player or one list per player.
    """
    if n < 2:
        raise GameError("an auction needs at least two bidders")

    def value(i, d, theta_i):
        return theta_i if d == i else Fraction(0)

    return DecisionProblem(tuple(range(n)), _grids(n, grid), value, argsmax)


def public_project_problem(n: int, cost, grid) -> DecisionProblem:
    """Build the project (d=1) iff reported appreciations cover ``cost``; each pays cost/n."""
    if n < 2:
        raise GameError("the public project needs at least two players")
    cost = as_rational(cost)
    if cost <= 0:
        raise GameError("project cost must be positive")
    share = cost / n

    def value(i, d, theta_i):
        return d * (theta_i - share)

    def rule(theta):
        return 1 if sum(theta) >= cost else 0

    return DecisionProblem((0, 1), _grids(n, grid), value, rule)


def first_price(problem: DecisionProblem) -> DirectMechanism:
    """Auction tax rule where the winner pays their own bid."""
    def taxes(theta):
        w = problem.decide(theta)
        return tuple(-theta[i] if i == w else Fraction(0) for i in range(len(theta)))

    return DirectMechanism(problem, taxes)


def untaxed(problem: DecisionProblem) -> DirectMechanism:
    return DirectMechanism(problem, lambda theta: (Fraction(0),) * len(theta))


def closed_form_pivotal_tax(kind: str, theta: Sequence, i: int, cost=None) -> Fraction:
    """Pivotal tax from the closed forms for the auction and the public project."""
    theta = tuple(as_rational(t) for t in theta)
    n = len(theta)
    if kind == "auction":
        if i != argsmax(theta):
            return Fraction(0)
        # second entry of theta sorted from largest to smallest
        return -sorted(theta, reverse=True)[1]
    if kind in ("project", "public_project"):
        if cost is None:
            raise GameError("the public project tax needs the cost")
        c = as_rational(cost)
        others = sum(theta) - theta[i]
        threshold = Fraction(n - 1, n) * c
        built = sum(theta) >= c
        if built:
            return Fraction(0) if others >= threshold else others - threshold
        return Fraction(0) if others <= threshold else threshold - others
    raise GameError(f"unknown instance kind {kind!r}")
