"""Exact analysis of finite strategic games, mechanisms and pre-Bayesian games."""
from .game import Game, GameError, Rational, Restriction, full_restriction, make_game, payoff
from .dominance import MixedStrategy
from .nash import expected_payoff, is_nash, pure_nash, support_enumeration_2p
from .elimination import all_outcomes, is_solved, rat_iterate, run

__all__ = [
    "Game", "GameError", "Rational", "Restriction", "full_restriction", "make_game", "payoff",
    "MixedStrategy", "expected_payoff", "is_nash", "pure_nash", "support_enumeration_2p",
    "all_outcomes", "is_solved", "rat_iterate", "run",
]
