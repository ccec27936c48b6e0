"""Phase-1 primal simplex over exact rationals.

Decides feasibility of {x >= 0, A_eq x = b_eq, A_ub x <= b_ub} and returns
a basic feasible solution.  Basic solutions are vertices of the feasible
polyhedron, which is exactly what the rounding step downstream relies on.
All arithmetic is over ``fractions.Fraction``; instances here are tiny so
exactness is cheap.
"""

from __future__ import annotations

from fractions import Fraction

Row = tuple[list[tuple[int, Fraction]], Fraction]

_MAX_PIVOTS = 20000


def find_basic_feasible(
    num_vars: int,
    eq_rows: list[Row],
    ub_rows: list[Row],
    rule: str = "bland",
) -> list[Fraction] | None:
    """Return a basic feasible point as a dense list, or None if infeasible.

    ``rule`` selects the pivot rule: "bland" (always terminates) or
    "dantzig" (largest reduced cost, iteration-capped), which visits a
    different sequence of bases and can land on a different vertex.
    """
    zero, one = Fraction(0), Fraction(1)
    n_slack = len(ub_rows)
    n_rows = len(eq_rows) + n_slack
    if n_rows == 0:
        return [zero] * num_vars
    width = num_vars + n_slack + n_rows  # structurals, slacks, artificials

    tableau: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for coeffs, b in eq_rows:
        row = [zero] * width
        for j, c in coeffs:
            row[j] += c
        tableau.append(row)
        rhs.append(Fraction(b))
    for i, (coeffs, b) in enumerate(ub_rows):
        row = [zero] * width
        for j, c in coeffs:
            row[j] += c
        row[num_vars + i] = one
        tableau.append(row)
        rhs.append(Fraction(b))

    for r in range(n_rows):
        if rhs[r] < 0:
            rhs[r] = -rhs[r]
            tableau[r] = [-c for c in tableau[r]]

    basis = []
    for r in range(n_rows):
        tableau[r][num_vars + n_slack + r] = one
        basis.append(num_vars + n_slack + r)

    # Phase-1 objective: minimize the artificial total.  Reduced costs of
    # the non-artificial columns start at minus their column sums.
    obj = [zero] * width
    for j in range(num_vars + n_slack):
        obj[j] = -sum(tableau[r][j] for r in range(n_rows))
    obj_value = -sum(rhs)

    pivots = 0
    while True:
        entering = _pick_entering(obj, width, rule)
        if entering is None:
            break
        leaving = _pick_leaving(tableau, rhs, basis, entering, n_rows)
        if leaving is None:
            # Phase 1 is bounded below by zero, so an unbounded ray means
            # the tableau is corrupt.
            raise ArithmeticError("unbounded phase-1 subproblem")
        _pivot(tableau, rhs, obj, basis, leaving, entering)
        obj_value = -sum(rhs[r] for r in range(n_rows) if basis[r] >= num_vars + n_slack)
        pivots += 1
        if pivots > _MAX_PIVOTS:
            raise ArithmeticError("pivot limit exceeded")

    if obj_value != 0:
        return None

    # Drive leftover zero-level artificials out of the basis when a real
    # column is available; a row with none is redundant and can stay.
    for r in range(n_rows):
        if basis[r] < num_vars + n_slack:
            continue
        for j in range(num_vars + n_slack):
            if tableau[r][j] != 0:
                _pivot(tableau, rhs, obj, basis, r, j)
                break

    solution = [zero] * num_vars
    for r, b in enumerate(basis):
        if b < num_vars:
            solution[b] = rhs[r]
    return solution


def _pick_entering(obj, width, rule):
    candidates = [j for j in range(width) if obj[j] < 0]
    if not candidates:
        return None
    if rule == "bland":
        return candidates[0]
    if rule == "dantzig":
        return min(candidates, key=lambda j: (obj[j], j))
    raise ValueError(f"unknown pivot rule {rule!r}")


def _pick_leaving(tableau, rhs, basis, entering, n_rows):
    best = None
    for r in range(n_rows):
        a = tableau[r][entering]
        if a > 0:
            ratio = rhs[r] / a
            key = (ratio, basis[r])
            if best is None or key < best[0]:
                best = (key, r)
    return None if best is None else best[1]


def _pivot(tableau, rhs, obj, basis, row, col):
    pivot = tableau[row][col]
    inv = Fraction(1) / pivot
    tableau[row] = [c * inv for c in tableau[row]]
    rhs[row] *= inv
    for r, other in enumerate(tableau):
        if r == row:
            continue
        factor = other[col]
        if factor:
            tableau[r] = [c - factor * p for c, p in zip(other, tableau[row])]
            rhs[r] -= factor * rhs[row]
    factor = obj[col]
    if factor:
        for j, p in enumerate(tableau[row]):
            obj[j] -= factor * p
    basis[row] = col
