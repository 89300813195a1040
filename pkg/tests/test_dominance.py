import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratgames import catalog
from stratgames import dominance as dom
from stratgames.game import GameError, Restriction, full_restriction, make_game
from oracles import (
    grid_belief_best_response, grid_dominating_mixture, point_best_response, random_game,
    verify_mixture_dominates,
)

half = Fraction(1, 2)


def test_best_response_quoted_cases():
    g = catalog.example_nbr()
    assert dom.is_best_response(g, 0, g.index(0, "A"), (g.index(1, "X"),))
    assert not dom.is_best_response(g, 0, g.index(0, "B"), (g.index(1, "X"),))
    bos = catalog.battle_of_sexes()
    assert dom.is_best_response(bos, 0, 0, (0,))
    one = Restriction(g, ((2,), (0, 1)))
    assert dom.is_best_response(one, 0, 2, (1,))


def test_best_response_rejects_unkept():
    g = catalog.example_nbr()
    r = Restriction(g, ((0, 1), (0, 1)))
    with pytest.raises(GameError):
        dom.is_best_response(r, 0, 2, (0,))
    with pytest.raises(GameError):
        dom.is_best_response(Restriction(g, ((0, 1), (0,))), 0, 0, (1,))


def test_pure_dominance_prisoners_dilemma():
    g = catalog.prisoners_dilemma()
    c, d = 0, 1
    assert dom.strictly_dominates_pure(g, 0, d, c)
    assert not dom.strictly_dominates_pure(g, 0, d, d)
    assert not dom.weakly_dominates_pure(g, 0, d, d)
    assert dom.is_dominant(g, 0, d, dom.STRICT)
    assert dom.is_dominant(g, 1, d, dom.STRICT)


def test_n_player_prisoners_dilemma_margin():
    g = catalog.pd_n((2, 2, 2), (1, 1, 1))
    for i in range(3):
        assert dom.strictly_dominates_pure(g, i, 1, 0)
        for o in full_restriction(g).opponent_profiles(i):
            dp = g.payoffs(o[:i] + (1,) + o[i + 1:])[i]
            cp = g.payoffs(o[:i] + (0,) + o[i + 1:])[i]
            assert dp - cp == 1


def test_weak_dominance_cases():
    g = catalog.example_weak_dominance()
    assert dom.weakly_dominates_pure(g, 0, 0, 1)
    assert dom.is_dominant(g, 0, 0, dom.WEAK)
    wd = catalog.example_wd()
    l, m, r = 0, 1, 2
    # player 2's column L is (1, 0) while M and R are (0, 0)
    assert dom.weakly_dominates_pure(wd, 1, l, m)
    assert dom.weakly_dominates_pure(wd, 1, l, r)
    assert not dom.weakly_dominates_pure(wd, 1, m, r) and not dom.weakly_dominates_pure(wd, 1, r, m)
    dominated = {s for s in range(3) if dom.pure_dominator(wd, 1, s, dom.WEAK) is not None}
    assert dominated == {m, r}


def test_single_strategy_player_is_dominant_in_every_mode():
    g = catalog.example_2by3()
    r = Restriction(g, ((0,), (0, 1, 2)))
    for mode in (dom.STRICT, dom.WEAK, dom.DOMINANT):
        assert dom.is_dominant(r, 0, 0, mode)


def test_mixed_dominance_quoted_game():
    g = catalog.example_mixed_dom()
    b = g.index(0, "B")
    assert dom.pure_dominator(g, 0, b, dom.STRICT) is None
    m = dom.strictly_dominated_by_mixed(g, 0, b)
    assert m.weights == {0: half, 1: half}
    w = dom.DominanceWitness(0, b, m, dom.STRICT)
    assert w.verify(full_restriction(g))
    # the half-half mixture found by a grid search too
    assert grid_dominating_mixture(g, [list(range(3)), [0, 1]], 0, b, 2) == {0: half, 1: half}


def test_mixed_dominance_degenerate_and_absent():
    pd = catalog.prisoners_dilemma()
    assert dom.strictly_dominated_by_mixed(pd, 0, 0) == dom.MixedStrategy.pure(0, 1)
    mp = catalog.matching_pennies()
    assert dom.strictly_dominated_by_mixed(mp, 0, 0) is None


def test_weak_mixed_dominance():
    mpe = catalog.matching_pennies_edge()
    e = mpe.index(0, "E")
    w = dom.weakly_dominated_by_mixed(mpe, 0, e)
    assert w is not None
    assert dom.DominanceWitness(0, e, w, dom.WEAK).verify(full_restriction(mpe))
    assert [s for s in range(3) if dom.weakly_dominated_by_mixed(mpe, 0, s)] == [e]
    wd = catalog.example_wd()
    w = dom.weakly_dominated_by_mixed(wd, 1, 2)
    assert w is not None and dom.DominanceWitness(1, 2, w, dom.WEAK).verify(full_restriction(wd))
    assert dom.weakly_dominated_by_mixed(catalog.battle_of_sexes(), 0, 0) is None
    trivial = Restriction(wd, ((0,), (0,)))
    assert dom.weakly_dominated_by_mixed(trivial, 0, 0) is None


def test_witness_outside_restriction_rejected():
    g = catalog.example_2by3()
    r = Restriction(g, ((1, 2), (0, 1, 2)))
    # T dominates B in the full game but T is not kept here
    w = dom.DominanceWitness(0, 2, 0, dom.STRICT)
    assert w.verify(full_restriction(g))
    with pytest.raises(GameError):
        w.verify(r)
    with pytest.raises(GameError):
        dom.DominanceWitness(0, 2, dom.MixedStrategy(0, {2: half, 1: half}), dom.STRICT).verify(g)


def test_never_best_response_belief_classes():
    g = catalog.example_nbr()
    c = g.index(0, "C")
    assert dom.is_never_best_response(g, 0, c, dom.POINT)
    assert not dom.is_never_best_response(g, 0, c, dom.CORRELATED)
    assert not dom.is_never_best_response(g, 0, c, dom.INDEPENDENT)
    belief = dom.rationalizing_belief(g, 0, c, dom.CORRELATED)
    assert belief == {(None, 0): half, (None, 1): half}
    assert grid_belief_best_response(g, [[0, 1, 2], [0, 1]], 0, c, 2) == {(None, 0): half, (None, 1): half}
    mp = catalog.matching_pennies()
    assert not dom.is_never_best_response(mp, 0, 0, dom.POINT)


def test_independent_beliefs_unsupported_beyond_two_players():
    g = catalog.pd_n((2, 2, 2), (1, 1, 1))
    with pytest.raises(dom.UnsupportedBeliefError):
        dom.is_never_best_response(g, 0, 0, dom.INDEPENDENT)


def test_pearce_quoted_cases():
    g = catalog.example_nbr()
    rep = dom.pearce_check(g, 0, g.index(0, "C"))
    assert not rep.strictly_mixed_dominated and rep.best_response_to_belief
    assert not rep.weakly_mixed_dominated and rep.best_response_to_totally_mixed
    assert rep.holds
    pd = dom.pearce_check(catalog.prisoners_dilemma(), 0, 0)
    assert pd.strictly_mixed_dominated and not pd.best_response_to_belief and pd.holds
    with pytest.raises(GameError):
        dom.pearce_check(catalog.pd_n((2, 2, 2), (1, 1, 1)), 0, 0)


def _kept(r):
    return [list(k) for k in r.kept]


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_dominance_implications(seed):
    g = random_game(random.Random(seed), (4, 4))
    for i in range(2):
        for s in range(g.shape[i]):
            for t in range(g.shape[i]):
                if dom.strictly_dominates_pure(g, i, s, t):
                    assert dom.weakly_dominates_pure(g, i, s, t)
                if dom.weakly_dominates_pure(g, i, s, t):
                    assert dom.dominates_pure(g, i, s, t)
            if dom.pure_dominator(g, i, s, dom.STRICT) is not None:
                assert dom.strictly_dominated_by_mixed(g, i, s) is not None


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_mixed_witnesses_verify_and_imply_never_best_response(seed):
    g = random_game(random.Random(seed), (4, 4))
    r = full_restriction(g)
    for i in range(2):
        for s in range(g.shape[i]):
            m = dom.strictly_dominated_by_mixed(r, i, s)
            if m is not None:
                assert verify_mixture_dominates(g, _kept(r), i, s, m.weights, strict=True)
                assert dom.is_never_best_response(r, i, s, dom.CORRELATED)
                assert not point_best_response(g, _kept(r), i, s)
            w = dom.weakly_dominated_by_mixed(r, i, s)
            if w is not None:
                assert verify_mixture_dominates(g, _kept(r), i, s, w.weights, strict=False)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_mixed_dominance_agrees_with_grid_search_on_small_games(seed):
    # with payoffs in -1..1 on 3x2 games the grid of halves and thirds is enough
    # whenever a dominator exists it is found by the LP; when the LP finds none
    # some belief on a fine grid makes the strategy a best response
    g = random_game(random.Random(seed), (3, 2), -1, 1, min_size=2)
    kept = [list(range(k)) for k in g.shape]
    for s in range(g.shape[0]):
        m = dom.strictly_dominated_by_mixed(g, 0, s)
        if m is None:
            assert grid_belief_best_response(g, kept, 0, s, 12) is not None
        found = grid_dominating_mixture(g, kept, 0, s, 6)
        if found is not None:
            assert m is not None


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_point_best_response_sets_match_oracle(seed):
    g = random_game(random.Random(seed), (4, 4))
    sets = dom.point_best_responses(g)
    for i in range(2):
        for s in range(g.shape[i]):
            assert (s in sets[i]) == point_best_response(g, [list(range(k)) for k in g.shape], i, s)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_pearce_biconditionals(seed):
    g = random_game(random.Random(seed), (4, 4))
    for i in range(2):
        for s in range(g.shape[i]):
            assert dom.pearce_check(g, i, s).holds


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_belief_floor_is_a_sufficient_cross_check(seed):
    g = random_game(random.Random(seed), (3, 3))
    for i in range(2):
        for s in range(g.shape[i]):
            floor_ok = dom.best_response_with_floor(g, i, s, dom.default_floor(g, i))
            exists = dom.totally_mixed_belief(g, i, s) is not None
            if floor_ok:
                assert exists
            belief = dom.totally_mixed_belief(g, i, s)
            if belief is not None:
                assert all(w > 0 for w in belief.values())


def _wide_game(seed, planted):
    """Player 1 has 3 strategies against 21 x 21 opponent profiles; with ``planted``
    strategy c is worse than the average of a and b everywhere."""
    rng = random.Random(seed)
    cells = [[[None] * 21 for _ in range(21)] for _ in range(3)]
    for j in range(21):
        for k in range(21):
            x, y = rng.randint(-3, 3), rng.randint(-3, 3)
            z = (x + y) // 2 - 1 if planted else rng.randint(-3, 3)
            for row, v in zip(cells, (x, y, z)):
                row[j][k] = (v, rng.randint(-3, 3), 0)
    names = [["a", "b", "c"], [str(k) for k in range(21)], [str(k) for k in range(21)]]
    return make_game(names, cells)


@pytest.mark.parametrize("seed,planted", [(0, False), (1, False), (2, True), (3, True)])
def test_row_generation_matches_full_program(seed, planted, monkeypatch):
    r = full_restriction(_wide_game(seed, planted))
    assert len(r.opponent_profiles(0)) > dom._GENERATION_THRESHOLD
    generated = [dom.strict_dominance_lp(r, 0, s) for s in range(3)]
    monkeypatch.setattr(dom, "_GENERATION_THRESHOLD", 10 ** 6)
    full = [dom.strict_dominance_lp(r, 0, s) for s in range(3)]
    assert [m is None for m in generated] == [m is None for m in full]
    if planted:
        assert generated[2] is not None
    for s, m in enumerate(generated):
        if m is not None:
            assert dom.DominanceWitness(0, s, m, dom.STRICT).verify(r)
