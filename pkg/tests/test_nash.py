import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratgames import catalog, nash
from stratgames.dominance import MixedStrategy
from stratgames.game import GameError
from oracles import brute_pure_nash, expected, grid_equilibria_2p, is_mixed_equilibrium, random_game

third, half = Fraction(1, 3), Fraction(1, 2)


def weights(rep):
    return tuple(m.weights for m in rep.profile)


def test_expected_payoff_quoted_values():
    bos = catalog.battle_of_sexes()
    m = nash.mixed_profile(bos, {"F": 2 * third, "B": third}, {"F": third, "B": 2 * third})
    assert nash.expected_payoff(bos, m, 0) == Fraction(2, 3)
    assert nash.expected_payoff(bos, m, 1) == Fraction(2, 3)
    mp = catalog.matching_pennies()
    m = nash.mixed_profile(mp, {"H": half, "T": half}, {"H": half, "T": half})
    assert nash.expected_payoff(mp, m, 0) == 0 == nash.expected_payoff(mp, m, 1)


def test_pure_profile_expected_equals_payoff():
    g = catalog.example_2by3()
    for p in g.profiles():
        for i in range(2):
            assert nash.expected_payoff(g, nash.pure_profile(g, p), i) == g.payoffs(p)[i]


def test_is_nash_cases():
    pd = catalog.prisoners_dilemma()
    assert nash.is_nash(pd, nash.pure_profile(pd, pd.profile("D", "D"))).verified
    bos = catalog.battle_of_sexes()
    good = nash.mixed_profile(bos, {"F": 2 * third, "B": third}, {"F": third, "B": 2 * third})
    assert nash.is_nash(bos, good).verified
    bad = nash.mixed_profile(bos, {"F": half, "B": half}, {"F": half, "B": half})
    assert not nash.is_nash(bos, bad).verified
    # player 1 gets 1 from F and 1/2 from B against 1/2 F + 1/2 B
    assert expected(bos, [{0: 1}, {0: half, 1: half}], 0) == 1
    assert expected(bos, [{1: 1}, {0: half, 1: half}], 0) == half


def test_profile_validation():
    bos = catalog.battle_of_sexes()
    with pytest.raises(GameError):
        nash.is_nash(bos, (MixedStrategy.pure(1, 0), MixedStrategy.pure(0, 0)))
    with pytest.raises(GameError):
        nash.is_nash(bos, (MixedStrategy.pure(0, 0),))
    with pytest.raises(GameError):
        MixedStrategy(0, {0: half})


def test_pure_nash_textbook():
    g = catalog.battle_of_sexes()
    assert nash.pure_nash(g) == {g.profile("F", "F"), g.profile("B", "B")}
    assert nash.pure_nash(catalog.matching_pennies()) == set()
    w = catalog.example_weak_dominance()
    assert nash.pure_nash(w) == {w.profile("T", "L"), w.profile("T", "R"), w.profile("B", "L")}


def test_support_enumeration_textbook():
    bos = catalog.battle_of_sexes()
    reps = nash.support_enumeration_2p(bos)
    assert [weights(r) for r in reps] == [
        ({0: 1}, {0: 1}),
        ({1: 1}, {1: 1}),
        ({0: 2 * third, 1: third}, {0: third, 1: 2 * third}),
    ]
    assert reps[2].payoffs == (Fraction(2, 3), Fraction(2, 3))
    mp = nash.support_enumeration_2p(catalog.matching_pennies())
    assert [weights(r) for r in mp] == [({0: half, 1: half}, {0: half, 1: half})]
    assert mp[0].payoffs == (0, 0)


def test_matching_pennies_with_edge_equilibria():
    g = catalog.matching_pennies_edge()
    reps = nash.support_enumeration_2p(g)
    found = {(tuple(sorted(a.items())), tuple(sorted(b.items()))) for a, b in map(weights, reps)}
    assert (((2, 1),), ((2, 1),)) in found
    # a grid of twelfths finds exactly the same two equilibria
    grid = {(tuple(sorted(a.items())), tuple(sorted(b.items()))) for a, b in grid_equilibria_2p(g, 12)}
    assert grid == found == {(((2, 1),), ((2, 1),)), (((0, half), (1, half)), ((0, half), (1, half)))}


def test_degenerate_game_reports_segment_endpoints():
    g = catalog.example_wd()
    reps = nash.support_enumeration_2p(g)
    assert {(tuple(a.items()), tuple(b.items())) for a, b in map(weights, reps)} == {
        (((0, 1),), ((0, 1),)),
        (((1, 1),), ((0, 1),)),
        (((1, 1),), ((2, 1),)),
        (((1, 1),), ((1, half), (2, half))),
    }
    for r in reps:
        assert r.verified and is_mixed_equilibrium(g, [m.weights for m in r.profile])


def test_best_response_sets():
    mp = catalog.matching_pennies()
    assert nash.best_response_set(mp, 0, (None, MixedStrategy(1, {0: half, 1: half}))) == {0, 1}
    bos = catalog.battle_of_sexes()
    assert nash.best_response_set(bos, 0, (None, MixedStrategy.pure(1, 0))) == {0}
    nbr = catalog.example_nbr()
    assert nash.best_response_set(nbr, 0, (None, MixedStrategy(1, {0: half, 1: half}))) == {0, 1, 2}


def test_support_enumeration_needs_two_players():
    with pytest.raises(GameError):
        nash.support_enumeration_2p(catalog.pd_n((2, 2, 2), (1, 1, 1)))


def random_mixed(rng, game):
    out = []
    for i, k in enumerate(game.shape):
        raw = [rng.randint(0, 3) for _ in range(k)]
        if not any(raw):
            raw[rng.randrange(k)] = 1
        total = sum(raw)
        out.append(MixedStrategy(i, {s: Fraction(x, total) for s, x in enumerate(raw)}))
    return tuple(out)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_characterisation_clauses_agree(seed):
    rng = random.Random(seed)
    g = random_game(rng, (3, 3, 2) if seed % 3 == 0 else (4, 4), -2, 2)
    for _ in range(3):
        m = random_mixed(rng, g)
        assert nash.is_nash(g, m).verified == nash.no_profitable_deviation(g, m)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_support_enumeration_properties(seed):
    g = random_game(random.Random(seed), (4, 4))
    reps = nash.support_enumeration_2p(g)
    assert reps
    pure = brute_pure_nash(g)
    assert nash.pure_nash(g) == pure
    listed = {tuple(m.support[0] for m in r.profile) for r in reps if all(m.is_pure for m in r.profile)}
    assert pure <= listed
    for r in reps:
        assert r.verified and nash.no_profitable_deviation(g, r.profile)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.fractions(0, 1, max_denominator=12))
def test_expected_payoff_is_affine_in_each_mixture(seed, t):
    rng = random.Random(seed)
    g = random_game(rng, (3, 3))
    a, b = random_mixed(rng, g), random_mixed(rng, g)
    mix = MixedStrategy(0, {
        s: t * a[0].weight(s) + (1 - t) * b[0].weight(s) for s in range(g.shape[0])
    })
    for i in range(2):
        lhs = nash.expected_payoff(g, (mix, a[1]), i)
        rhs = t * nash.expected_payoff(g, (a[0], a[1]), i) + (1 - t) * nash.expected_payoff(g, (b[0], a[1]), i)
        assert lhs == rhs
