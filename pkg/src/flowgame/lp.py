"""A small exact linear-program solver over rationals.

Two-phase primal simplex on a dense Fraction tableau with Bland's rule,
so it terminates on degenerate problems and produces identical output on
identical input. Floating-point LP libraries cannot serve here: best
responses and equilibrium gaps are decided by exact equality, and the
problems are desk-scale (tens of rows), so a textbook tableau is the
right tool.

Problems are stated as::

    minimize    c . x
    subject to  A_eq x  = b_eq
                A_ub x <= b_ub
                x >= 0
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LpResult:
    status: str  # "optimal", "infeasible", or "unbounded"
    objective: Optional[Fraction]
    solution: Optional[tuple]


def solve_lp(minimize: Sequence, eq: Sequence = (), ub: Sequence = ()) -> LpResult:
    """Solve the LP exactly. ``eq`` and ``ub`` are sequences of
    ``(coefficients, rhs)`` pairs over the same variables as ``minimize``."""
    costs = [Fraction(c) for c in minimize]
    n = len(costs)

    # Assemble equality rows: slacks turn inequalities into equations.
    rows = []        # each: (coeffs over n originals, rhs, slack_sign or None)
    for coeffs, rhs in eq:
        rows.append(([Fraction(a) for a in coeffs], Fraction(rhs), None))
    for coeffs, rhs in ub:
        rows.append(([Fraction(a) for a in coeffs], Fraction(rhs), ONE))
    m = len(rows)

    n_slack = sum(1 for _, _, s in rows if s is not None)
    slack_start = n
    art_start = n + n_slack

    tableau = []
    basis = []
    artificial_rows = []
    slack_index = 0
    for coeffs, rhs, slack_sign in rows:
        row = coeffs + [ZERO] * n_slack
        if slack_sign is not None:
            row[slack_start + slack_index] = slack_sign
            this_slack = slack_start + slack_index
            slack_index += 1
        else:
            this_slack = None
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
            if this_slack is not None:
                this_slack = None  # slack coefficient is now -1, unusable as basis
        if this_slack is not None:
            basis.append(this_slack)
        else:
            artificial_rows.append(len(tableau))
            basis.append(None)  # patched below once artificial columns exist
        tableau.append(row + [rhs])

    n_art = len(artificial_rows)
    width = art_start + n_art  # columns excluding rhs
    for row in tableau:
        row[-1:-1] = [ZERO] * n_art
    for k, i in enumerate(artificial_rows):
        tableau[i][art_start + k] = ONE
        basis[i] = art_start + k

    # Phase 1: minimize the artificial total to find a feasible basis.
    if n_art:
        reduced = [ZERO] * (width + 1)
        for k in range(n_art):
            reduced[art_start + k] = ONE
        for i in artificial_rows:
            for j in range(width + 1):
                reduced[j] -= tableau[i][j]
        status = _pivot_until_optimal(tableau, reduced, basis, width)
        if status != "optimal" or -reduced[-1] > 0:
            return LpResult("infeasible", None, None)
        _drive_out_artificials(tableau, basis, art_start)
        tableau, basis = _drop_artificial_columns(tableau, basis, art_start)
        width = art_start

    # Phase 2: the real objective.
    full_costs = costs + [ZERO] * (width - n)
    reduced = full_costs + [ZERO]
    for i, b in enumerate(basis):
        weight = full_costs[b]
        if weight != 0:
            for j in range(width + 1):
                reduced[j] -= weight * tableau[i][j]
    status = _pivot_until_optimal(tableau, reduced, basis, width)
    if status == "unbounded":
        return LpResult("unbounded", None, None)

    solution = [ZERO] * n
    for i, b in enumerate(basis):
        if b < n:
            solution[b] = tableau[i][-1]
    return LpResult("optimal", -reduced[-1], tuple(solution))


def _pivot_until_optimal(tableau, reduced, basis, width) -> str:
    while True:
        entering = None
        for j in range(width):
            if reduced[j] < 0:
                entering = j  # Bland: lowest improving index
                break
        if entering is None:
            return "optimal"

        leaving = None
        best = None
        for i, row in enumerate(tableau):
            coeff = row[entering]
            if coeff > 0:
                key = (row[-1] / coeff, basis[i])
                if best is None or key < best:
                    best = key
                    leaving = i
        if leaving is None:
            return "unbounded"
        _pivot(tableau, reduced, basis, leaving, entering)


def _pivot(tableau, reduced, basis, row, col) -> None:
    pivot = tableau[row][col]
    tableau[row] = [v / pivot for v in tableau[row]]
    pivot_row = tableau[row]
    for r, other in enumerate(tableau):
        if r != row and other[col] != 0:
            factor = other[col]
            tableau[r] = [v - factor * p for v, p in zip(other, pivot_row)]
    factor = reduced[col]
    if factor != 0:
        reduced[:] = [v - factor * p for v, p in zip(reduced, pivot_row)]
    basis[row] = col


def _drive_out_artificials(tableau, basis, art_start) -> None:
    """Pivot zero-valued artificial variables out of the basis; a row with
    no real nonzero coefficient is redundant and removed."""
    i = 0
    while i < len(tableau):
        if basis[i] < art_start:
            i += 1
            continue
        pivot_col = None
        for j in range(art_start):
            if tableau[i][j] != 0:
                pivot_col = j
                break
        if pivot_col is None:
            del tableau[i]
            del basis[i]
            continue
        dummy = [ZERO] * (len(tableau[i]))
        _pivot(tableau, dummy, basis, i, pivot_col)
        i += 1


def _drop_artificial_columns(tableau, basis, art_start):
    trimmed = [row[:art_start] + row[-1:] for row in tableau]
    return trimmed, basis
