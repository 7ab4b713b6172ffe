"""Compiling polynomials, rational families, and majority into protocols."""

import math
import random

import pytest

from cclab.compilers import (
    compile_majority,
    compile_polynomial,
    compile_rational,
    majority_cost_bound,
    majority_guess_bound,
    polynomial_cost_bound,
    polynomial_guess_bound,
    rational_guess_bound,
)
from cclab.majority import majority_form
from cclab.polynomials import IntPolynomial, RationalFunction, parse_polynomial
from cclab.protocols import (
    ProtocolTooLargeError,
    always_accept,
    pp_cost,
    pp_eval,
    pp_matrix,
)
from cclab.suites import random_members, random_polynomial


def test_compile_constant_and_variable():
    g = always_accept(2, 2)
    one = compile_polynomial([g], IntPolynomial.constant(1, 1))
    assert one.gap == ((1, 1), (1, 1))
    ident = compile_polynomial([g], IntPolynomial.variable(1, 0))
    assert ident.gap == g.gap
    minus = compile_polynomial([g], IntPolynomial.constant(1, -3))
    assert minus.gap == ((-3, -3), (-3, -3))


def test_compile_matches_polynomial_exactly():
    rng = random.Random(41)
    for _ in range(60):
        k = rng.randrange(1, 4)
        members = [
            random_members(rng, 3, 3, max_members=4, allow_output=False)
            for _ in range(k)
        ]
        poly = random_polynomial(rng, k)
        compiled = compile_polynomial(members, poly)
        for x in range(3):
            for y in range(3):
                gaps = tuple(m.gap[x][y] for m in members)
                assert compiled.gap[x][y] == poly.evaluate(gaps)


def test_guess_and_cost_bounds_hold():
    rng = random.Random(43)
    for _ in range(40):
        k = rng.randrange(1, 4)
        members = [random_members(rng, 2, 2, max_members=4) for _ in range(k)]
        poly = random_polynomial(rng, k)
        compiled = compile_polynomial(members, poly)
        l_max = max(m.guess_count for m in members)
        c_max = max(m.max_depth for m in members)
        assert compiled.guess_count <= polynomial_guess_bound(poly, l_max)
        assert pp_cost(compiled) <= polynomial_cost_bound(poly, l_max, c_max)


def test_guess_bound_formula():
    # M * l^d * (d+k)^(k+1) with M=5, d=3, k=2, l=4
    poly = parse_polynomial("5*z1^2*z2 - z1", nvars=2)
    assert polynomial_guess_bound(poly, 4) == 5 * 4**3 * 5**3
    with pytest.raises(ValueError):
        polynomial_guess_bound(IntPolynomial.zero(2), 4)


def test_cost_bound_formula():
    poly = parse_polynomial("5*z1^2*z2 - z1", nvars=2)
    expected = math.ceil(math.log2(5) + 3 * math.log2(4) + 3 * math.log2(5)) + 2 * 3
    assert polynomial_cost_bound(poly, 4, 2) == expected


def test_max_guesses_guard():
    two = always_accept(2, 2) + always_accept(2, 2)
    poly = parse_polynomial("z1^3", nvars=1)
    with pytest.raises(ProtocolTooLargeError):
        compile_polynomial([two], poly, max_guesses=2)


def test_compile_rational_sign_agreement():
    rng = random.Random(53)
    # (z^2 + 1) / z is positive exactly when z is; num * den keeps the sign
    ratio = RationalFunction(
        parse_polynomial("z1^2 + 1", nvars=1), parse_polynomial("z1", nvars=1)
    )
    for _ in range(20):
        g = random_members(rng, 2, 2, max_members=3)
        compiled = compile_rational([g], ratio)
        for x in range(2):
            for y in range(2):
                z = g.gap[x][y]
                if z == 0:
                    continue
                value = ratio.evaluate((z,))
                assert (compiled.gap[x][y] > 0) == (value > 0)
        assert compiled.guess_count <= rational_guess_bound(ratio, g.guess_count)


def test_compile_majority_pointwise():
    rng = random.Random(59)
    for _ in range(12):
        k = rng.choice((3, 5))
        members = [random_members(rng, 2, 2, max_members=2, max_depth=1) for _ in range(k)]
        maj = compile_majority(members)
        grids = [pp_matrix(m).entries for m in members]
        for x in range(2):
            for y in range(2):
                want = 1 if 2 * sum(g[x][y] for g in grids) > k else 0
                assert pp_eval(maj, x, y) == want


def test_majority_bounds_are_consistent():
    form = majority_form(3, 2)
    assert majority_guess_bound(form, 4) >= 1
    assert majority_cost_bound(form, 4, 2) >= 1
