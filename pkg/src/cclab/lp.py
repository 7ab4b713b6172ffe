"""Exact linear programming over the rationals.

A small two-phase primal simplex with Bland's rule, sized for the game and
separation problems in this package: a few dozen variables, a few hundred
constraints.  Everything runs in Fraction arithmetic, so there are no
tolerances anywhere; infeasibility, unboundedness, and optimality are exact
statements.

`solve_lp` takes the problem in the usual inequality form with implicitly
nonnegative variables.  `minimize_max` and `maximize_min` wrap the two
sides of a finite zero-sum game; by LP duality they agree exactly on the
same payoff matrix, which some callers assert as a solver self-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

Number = Union[int, Fraction]

Constraint = tuple[Sequence[Number], Number]


class LpInfeasibleError(ValueError):
    """The constraint system has no nonnegative solution."""


class LpUnboundedError(ValueError):
    """The objective improves without bound over the feasible set."""


@dataclass(frozen=True)
class LpSolution:
    value: Fraction
    x: tuple[Fraction, ...]


def _pivot(rows: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = rows[row][col]
    rows[row] = [v / piv for v in rows[row]]
    pivot_row = rows[row]
    for r in range(len(rows)):
        if r != row and rows[r][col]:
            factor = rows[r][col]
            rows[r] = [a - factor * b for a, b in zip(rows[r], pivot_row)]
    basis[row] = col


def _run_simplex(
    rows: list[list[Fraction]], basis: list[int], ncols: int, bland_after: int = 300
) -> None:
    """Pivot until the objective row (last) has no negative reduced cost.

    Entering variable: most negative reduced cost (Dantzig), switching to
    lowest index (Bland) after `bland_after` pivots so degenerate cycling
    cannot run forever.  Leaving variable: minimum ratio, ties broken by
    lowest basis index; with Bland entering this is the classic
    anti-cycling rule.
    """
    pivots = 0
    while True:
        obj = rows[-1]
        enter = -1
        if pivots < bland_after:
            worst = Fraction(0)
            for j in range(ncols):
                if obj[j] < worst:
                    worst = obj[j]
                    enter = j
        else:
            for j in range(ncols):
                if obj[j] < 0:
                    enter = j
                    break
        if enter < 0:
            return
        leave = -1
        best: Fraction | None = None
        for r in range(len(basis)):
            coeff = rows[r][enter]
            if coeff > 0:
                ratio = rows[r][-1] / coeff
                if best is None or ratio < best or (
                    ratio == best and basis[r] < basis[leave]
                ):
                    best = ratio
                    leave = r
        if leave < 0:
            raise LpUnboundedError("objective improves without bound")
        _pivot(rows, basis, leave, enter)
        pivots += 1


def solve_lp(
    objective: Sequence[Number],
    eq: Sequence[Constraint] = (),
    ub: Sequence[Constraint] = (),
    minimize: bool = True,
) -> LpSolution:
    """Optimize objective . x over x >= 0 subject to eq rows (coeffs . x =
    rhs) and ub rows (coeffs . x <= rhs)."""
    nvars = len(objective)
    cost = [Fraction(v) for v in objective]
    if not minimize:
        cost = [-v for v in cost]

    nslack = len(ub)
    rows: list[list[Fraction]] = []
    needs_artificial: list[bool] = []
    for idx, (coeffs, rhs) in enumerate(ub):
        if len(coeffs) != nvars:
            raise ValueError(f"ub row {idx} has {len(coeffs)} coefficients")
        row = [Fraction(v) for v in coeffs]
        row.extend(Fraction(0) for _ in range(nslack))
        row[nvars + idx] = Fraction(1)
        row.append(Fraction(rhs))
        if row[-1] < 0:
            row = [-v for v in row]
            needs_artificial.append(True)
        else:
            needs_artificial.append(False)
        rows.append(row)
    for idx, (coeffs, rhs) in enumerate(eq):
        if len(coeffs) != nvars:
            raise ValueError(f"eq row {idx} has {len(coeffs)} coefficients")
        row = [Fraction(v) for v in coeffs]
        row.extend(Fraction(0) for _ in range(nslack))
        row.append(Fraction(rhs))
        if row[-1] < 0:
            row = [-v for v in row]
        rows.append(row)
        needs_artificial.append(True)

    # Phase 1: artificial basis where no slack can serve.
    ncols = nvars + nslack
    basis: list[int] = []
    art_cols: list[int] = []
    for r, needed in enumerate(needs_artificial):
        if needed:
            col = ncols + len(art_cols)
            art_cols.append(col)
            basis.append(col)
        else:
            basis.append(nvars + r)  # the slack of ub row r
    total = ncols + len(art_cols)
    for r, row in enumerate(rows):
        rhs = row.pop()
        row.extend(Fraction(0) for _ in range(len(art_cols)))
        if basis[r] >= ncols:
            row[basis[r]] = Fraction(1)
        row.append(rhs)

    if art_cols:
        obj = [Fraction(0)] * (total + 1)
        for r in range(len(rows)):
            if basis[r] >= ncols:
                obj = [a - b for a, b in zip(obj, rows[r])]
        for col in art_cols:
            obj[col] = Fraction(0)
        rows.append(obj)
        _run_simplex(rows, basis, total)
        if rows[-1][-1] < 0:
            raise LpInfeasibleError("phase 1 ends with positive artificial mass")
        rows.pop()
        # Drive leftover artificials out of the basis; drop redundant rows.
        r = 0
        while r < len(rows):
            if basis[r] >= ncols:
                col = next((j for j in range(ncols) if rows[r][j] != 0), -1)
                if col < 0:
                    rows.pop(r)
                    basis.pop(r)
                    continue
                _pivot(rows, basis, r, col)
            r += 1
    for r in range(len(rows)):
        rows[r] = rows[r][:ncols] + rows[r][-1:]

    # Phase 2 objective row built from the real costs of the basis.
    full_cost = cost + [Fraction(0)] * nslack
    obj = full_cost + [Fraction(0)]
    for r in range(len(rows)):
        weight = full_cost[basis[r]]
        if weight:
            obj = [a - weight * b for a, b in zip(obj, rows[r])]
    rows.append(obj)
    _run_simplex(rows, basis, ncols)

    x = [Fraction(0)] * nvars
    for r, b in enumerate(basis):
        if b < nvars:
            x[b] = rows[r][-1]
    value = -rows[-1][-1]
    if not minimize:
        value = -value
    return LpSolution(value, tuple(x))


# ---------------------------------------------------------------------------
# zero-sum game helpers


def _check_matrix(matrix: Sequence[Sequence[Number]]) -> tuple[int, int]:
    nrows = len(matrix)
    if nrows == 0:
        raise ValueError("empty payoff matrix")
    ncols = len(matrix[0])
    if ncols == 0 or any(len(row) != ncols for row in matrix):
        raise ValueError("ragged or empty payoff matrix")
    return nrows, ncols


def minimize_max(
    matrix: Sequence[Sequence[Number]],
) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Smallest achievable maximum row payoff over column mixtures.

    matrix[i][j] is the payoff when row response i meets column atom j;
    returns (value, column weights) with value = min_q max_i (M q)_i.
    The threshold variable is split into a difference of nonnegatives so
    negative game values are representable.
    """
    nrows, ncols = _check_matrix(matrix)
    objective = [0] * ncols + [1, -1]
    eq = [([1] * ncols + [0, 0], 1)]
    ub = [
        ([Fraction(matrix[i][j]) for j in range(ncols)] + [-1, 1], 0)
        for i in range(nrows)
    ]
    sol = solve_lp(objective, eq=eq, ub=ub)
    return sol.value, sol.x[:ncols]


def maximize_min(
    matrix: Sequence[Sequence[Number]],
) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Largest achievable minimum column payoff over row mixtures.

    Returns (value, row weights) with value = max_p min_j (p M)_j; equals
    minimize_max on the same matrix by duality.
    """
    nrows, ncols = _check_matrix(matrix)
    objective = [0] * nrows + [1, -1]
    eq = [([1] * nrows + [0, 0], 1)]
    ub = [
        ([-Fraction(matrix[i][j]) for i in range(nrows)] + [1, -1], 0)
        for j in range(ncols)
    ]
    sol = solve_lp(objective, eq=eq, ub=ub, minimize=False)
    return sol.value, sol.x[:nrows]
