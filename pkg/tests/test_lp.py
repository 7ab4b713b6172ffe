"""Exact rational linear programming: game values and duality."""

import random
from fractions import Fraction

from cclab.lp import maximize_min, minimize_max


def test_matching_pennies_value():
    # max-min of the identity payoff is 1/2 at the uniform mixture
    value, weights = maximize_min([[1, 0], [0, 1]])
    assert value == Fraction(1, 2)
    assert weights == (Fraction(1, 2), Fraction(1, 2))


def test_skew_symmetric_game_is_fair():
    value, _ = maximize_min([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])
    assert value == 0


def test_single_row_and_column():
    value, weights = maximize_min([[Fraction(1, 3), Fraction(2, 5)]])
    assert value == Fraction(1, 3)
    assert weights == (Fraction(1),)
    value, weights = minimize_max([[3], [7]])
    assert value == 7
    assert weights == (Fraction(1),)


def test_dominated_strategy_ignored():
    # row 1 dominates row 0, so the optimum plays row 1 alone
    value, weights = maximize_min([[0, 0], [1, 2]])
    assert value == 1
    assert weights == (0, 1)


def test_minimize_max_known_value():
    # column player mixing the identity also yields 1/2
    value, weights = minimize_max([[1, 0], [0, 1]])
    assert value == Fraction(1, 2)
    assert weights == (Fraction(1, 2), Fraction(1, 2))


def test_exact_duality_on_random_games():
    rng = random.Random(13)
    for _ in range(40):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 5)
        payoff = [
            [Fraction(rng.randrange(-6, 7), rng.randrange(1, 4)) for _ in range(cols)]
            for _ in range(rows)
        ]
        primal, p = maximize_min(payoff)
        dual, q = minimize_max(payoff)
        assert primal == dual
        # both returned strategies must achieve the common value
        assert sum(p) == 1 and all(w >= 0 for w in p)
        assert sum(q) == 1 and all(w >= 0 for w in q)
        for j in range(cols):
            assert sum(p[i] * payoff[i][j] for i in range(rows)) >= primal
        for i in range(rows):
            assert sum(payoff[i][j] * q[j] for j in range(cols)) <= dual


def test_fraction_payoffs_stay_exact():
    value, _ = maximize_min([[Fraction(1, 3), Fraction(1, 7)], [Fraction(1, 7), Fraction(1, 3)]])
    # uniform mixture gives (1/3 + 1/7)/2 in both columns
    assert value == Fraction(5, 21)
