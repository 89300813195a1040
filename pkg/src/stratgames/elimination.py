"""Iterated elimination of strategies and the rationalizability operator.

Dominance-based relations (strict/weak, pure/mixed, never best response) judge
each strategy inside the current restriction. The RAT operator instead keeps a
strategy when it is a best response *in the original game* to some belief over
the current survivors, so its survivor sets may become empty. The two paths are
kept separate on purpose.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from . import dominance as dom
from .game import GameError, Restriction, as_restriction

STRICT_PURE = "strict_pure"
WEAK_PURE = "weak_pure"
NEVER_BEST_RESPONSE = "never_best_response"
STRICT_MIXED = "strict_mixed"
WEAK_MIXED = "weak_mixed"
RAT_POINT = "rat_point"
RAT_CORRELATED = "rat_correlated"

RELATIONS = (STRICT_PURE, WEAK_PURE, NEVER_BEST_RESPONSE, STRICT_MIXED, WEAK_MIXED, RAT_POINT, RAT_CORRELATED)
RAT_RELATIONS = (RAT_POINT, RAT_CORRELATED)

# short names used on the command line
ALIASES = {
    "iesds": STRICT_PURE,
    "iewds": WEAK_PURE,
    "ienbr": NEVER_BEST_RESPONSE,
    "iesdms": STRICT_MIXED,
    "iewdms": WEAK_MIXED,
    "rat": RAT_CORRELATED,
    "rat-point": RAT_POINT,
}

DEFAULT_BUDGET = 10 ** 5


class BudgetExceeded(GameError):
    """Exhaustive order enumeration visited more restrictions than allowed."""


def relation_kind(name: str) -> str:
    kind = ALIASES.get(name, name)
    if kind not in RELATIONS:
        raise GameError(f"unknown reduction relation {name!r}")
    return kind


@dataclass(frozen=True)
class OrderPolicy:
    """Which eliminable strategies a step removes.

    ``all``: every eliminable strategy at once. ``one``: a single strategy,
    cycling over players (the lowest-index eliminable strategy of the next
    player that has one). ``custom``: an explicit list of removal sets, after
    which ``then`` takes over.
    """

    selector: str = "all"
    steps: tuple = ()
    then: Optional["OrderPolicy"] = None


ALL_ELIMINABLE = OrderPolicy("all")
ONE_AT_A_TIME = OrderPolicy("one")


def custom_order(*steps, then: OrderPolicy = ALL_ELIMINABLE) -> OrderPolicy:
    """Each step is an iterable of ``(player, strategy)`` pairs; strategies may be labels."""
    return OrderPolicy("custom", tuple(tuple(step) for step in steps), then)


@dataclass(frozen=True)
class StepRecord:
    relation: str
    removed: tuple
    witnesses: dict = field(compare=False)
    before: Restriction = field(compare=False, repr=False)
    after: Restriction = field(compare=False, repr=False)


@dataclass
class EliminationTrace:
    relation: str
    initial: Restriction
    steps: list = field(default_factory=list)
    # RAT only: operator applications, counting the final one that changed nothing
    applications: int = 0

    @property
    def final(self) -> Restriction:
        return self.steps[-1].after if self.steps else self.initial

    @property
    def rounds(self) -> int:
        return len(self.steps)


def eliminable(restriction, relation: str) -> dict:
    """Map ``(player, strategy)`` -> witness for every strategy the relation removes from R.

    Witnesses are :class:`~stratgames.dominance.DominanceWitness` objects for
    dominance relations and ``None`` for best-response relations.
    """
    r = as_restriction(restriction)
    relation = relation_kind(relation)
    if relation in RAT_RELATIONS:
        return _rat_removals(r, relation)
    if r.is_degenerate:
        raise GameError("elimination needs every kept strategy set to be non-empty")
    # a declared-symmetric game restricted to equal sets looks the same to everyone
    mirrored = r.parent.symmetric and len(set(r.kept)) == 1
    players = [0] if mirrored else range(r.n_players)
    # a best response to a pure profile is neither a never best response nor
    # strictly mixed-dominated; a unique one is not weakly mixed-dominated either
    responders = None
    if relation in (NEVER_BEST_RESPONSE, STRICT_MIXED, WEAK_MIXED):
        responders = dom.point_best_responses(r, unique=relation == WEAK_MIXED, players=players)
    out = {}
    for i in players:
        for s in r.kept[i]:
            if responders is not None and s in responders[i]:
                continue
            w = _witness(r, i, s, relation)
            if w is not False:
                out[(i, s)] = w
    if mirrored:
        for (_, s), w in list(out.items()):
            for j in range(1, r.n_players):
                out[(j, s)] = None if w is None else w.for_player(j)
    return dict(sorted(out.items()))


def _witness(r, i, s, relation):
    """Witness that ``s`` is eliminable, ``None`` when no witness object applies, False otherwise.

    Best-response relations assume the pure best-response screen in
    :func:`eliminable` has already run.
    """
    if relation == STRICT_PURE:
        d = dom.pure_dominator(r, i, s, dom.STRICT)
        return False if d is None else dom.DominanceWitness(i, s, d, dom.STRICT)
    if relation == WEAK_PURE:
        d = dom.pure_dominator(r, i, s, dom.WEAK)
        return False if d is None else dom.DominanceWitness(i, s, d, dom.WEAK)
    if relation == NEVER_BEST_RESPONSE:
        return None
    if relation == STRICT_MIXED:
        m = dom.strict_dominance_lp(r, i, s)
        return False if m is None else dom.DominanceWitness(i, s, m, dom.STRICT)
    if relation == WEAK_MIXED:
        m = dom.weak_dominance_lp(r, i, s)
        return False if m is None else dom.DominanceWitness(i, s, m, dom.WEAK)
    raise GameError(f"unknown reduction relation {relation!r}")


def _rat_removals(r: Restriction, relation: str) -> dict:
    beliefs = dom.POINT if relation == RAT_POINT else dom.CORRELATED
    out = {}
    for i in range(r.n_players):
        full = tuple(range(r.parent.shape[i]))
        for s in r.kept[i]:
            if dom.rationalizing_belief(r, i, s, beliefs, alternatives=full) is None:
                out[(i, s)] = None
    return out


def _resolve(r: Restriction, removal):
    i, s = removal
    if isinstance(s, str):
        s = r.parent.index(i, s)
    return (i, s)


def _select(r, candidates, policy, start_player):
    if policy.selector == "all":
        return sorted(candidates)
    if policy.selector == "one":
        n = r.n_players
        for offset in range(n):
            i = (start_player + offset) % n
            mine = sorted(s for (j, s) in candidates if j == i)
            if mine:
                return [(i, mine[0])]
        return []
    raise GameError(f"unknown order selector {policy.selector!r}")


def step(restriction, relation: str, policy: OrderPolicy = ALL_ELIMINABLE, start_player: int = 0):
    """Apply one reduction. Returns ``(new_restriction, StepRecord)`` or None at a fixed point.

    ``start_player`` is where the one-at-a-time policy resumes its round robin.
    For a custom policy only its first listed removal set is applied.
    """
    r = as_restriction(restriction)
    relation = relation_kind(relation)
    candidates = eliminable(r, relation)
    if relation in RAT_RELATIONS:
        chosen = sorted(candidates)
    elif policy.selector == "custom" and policy.steps:
        chosen = sorted(_resolve(r, x) for x in policy.steps[0])
        if not chosen:
            raise GameError("a custom step must remove at least one strategy")
        for c in chosen:
            if c[1] not in r.kept[c[0]]:
                raise GameError(f"strategy {c} is not kept")
            if c not in candidates:
                name = r.parent.strategy_names[c[0]][c[1]]
                raise GameError(f"strategy {name!r} of player {c[0] + 1} is not eliminable under {relation}")
    else:
        sel = policy.then if policy.selector == "custom" else policy
        chosen = _select(r, candidates, sel or ALL_ELIMINABLE, start_player)
    if not chosen:
        return None
    after = r.without(chosen)
    record = StepRecord(relation, tuple(chosen), {c: candidates[c] for c in chosen}, r, after)
    return after, record


def run(game, relation: str, policy: OrderPolicy = ALL_ELIMINABLE) -> EliminationTrace:
    """Iterate reductions from the full game (or a given restriction) to a fixed point."""
    relation = relation_kind(relation)
    if relation in RAT_RELATIONS:
        return rat_iterate(game, dom.POINT if relation == RAT_POINT else dom.CORRELATED)
    r = as_restriction(game)
    trace = EliminationTrace(relation, r)
    start = 0
    pending = policy
    while True:
        result = step(r, relation, pending, start)
        if result is None:
            return trace
        r, record = result
        trace.steps.append(record)
        if pending.selector == "custom" and pending.steps:
            pending = OrderPolicy("custom", pending.steps[1:], pending.then)
        start = (record.removed[-1][0] + 1) % r.n_players


def is_solved(trace: EliminationTrace):
    """The surviving joint strategy when every player is left with exactly one strategy."""
    return trace.final.solution()


def rat_iterate(game, belief_class: str = dom.CORRELATED) -> EliminationTrace:
    """Iterate RAT from ``game`` until the first fixed point; survivor sets may empty out."""
    if belief_class not in (dom.POINT, dom.CORRELATED):
        raise GameError("rationalizability supports point or correlated beliefs")
    relation = RAT_POINT if belief_class == dom.POINT else RAT_CORRELATED
    r = as_restriction(game)
    trace = EliminationTrace(relation, r)
    while True:
        trace.applications += 1
        removals = _rat_removals(r, relation)
        if not removals:
            return trace
        after = r.without(removals)
        trace.steps.append(StepRecord(relation, tuple(sorted(removals)), removals, r, after))
        r = after


def all_outcomes(game, relation: str, step_budget: int = DEFAULT_BUDGET) -> set:
    """Every fixed point reachable by removing any non-empty eliminable subset at each step."""
    relation = relation_kind(relation)
    if relation in RAT_RELATIONS:
        return {run(game, relation).final}
    start = as_restriction(game)
    cache: dict = {}
    visited = set()
    outcomes = set()
    stack = [start]
    while stack:
        r = stack.pop()
        if r in visited:
            continue
        visited.add(r)
        if len(visited) > step_budget:
            raise BudgetExceeded(f"more than {step_budget} restrictions visited")
        if r not in cache:
            cache[r] = eliminable(r, relation)
        candidates = sorted(cache[r])
        if not candidates:
            outcomes.add(r)
            continue
        for size in range(1, len(candidates) + 1):
            for subset in itertools.combinations(candidates, size):
                child = r.without(subset)
                if child not in visited:
                    stack.append(child)
    return outcomes


def pure_nash_in(restriction) -> set:
    """Pure Nash equilibria of a restriction viewed as a game in its own right."""
    r = as_restriction(restriction)
    if r.is_degenerate:
        return set()
    game = r.parent
    out = set()
    for p in r.profiles():
        vec = game.payoffs(p)
        ok = True
        for i in range(r.n_players):
            for a in r.kept[i]:
                if a != p[i]:
                    q = p[:i] + (a,) + p[i + 1:]
                    if game.payoffs(q)[i] > vec[i]:
                        ok = False
                        break
            if not ok:
                break
        if ok:
            out.add(p)
    return out

