"""Exact rational linear feasibility via a phase-1 simplex method.

Used to decide the price-share dual feasibility problem: does A x = b admit
x >= 0?  Entering variables are picked by Dantzig's rule (most negative
reduced cost), which keeps the pivot count near the row count on the wide
price-share tableaus; after a long degenerate stall the rule switches to
Bland's, whose anti-cycling guarantee makes termination unconditional.  All
arithmetic is `fractions.Fraction`, so the answer is exact.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def feasible_eq(columns: list[list[Fraction]], b: list[Fraction]) -> bool:
    """Decide whether sum_j x_j * columns[j] = b has a solution with x >= 0."""
    nrows = len(b)
    ncols = len(columns)
    for col in columns:
        if len(col) != nrows:
            raise ValueError("column length does not match right-hand side")

    # Rows are flipped so the right-hand side is non-negative, then one
    # artificial variable per row gives an identity starting basis.
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for r in range(nrows):
        sign = ONE if b[r] >= 0 else -ONE
        rows.append([sign * columns[j][r] for j in range(ncols)])
        rhs.append(sign * b[r])
    for r in range(nrows):
        art = [ZERO] * nrows
        art[r] = ONE
        for k in range(nrows):
            rows[k].append(art[k])
    total_cols = ncols + nrows
    basis = list(range(ncols, total_cols))

    # Phase-1 objective: minimize the sum of artificials.  With the artificial
    # basis, the reduced cost of column j is -sum_r rows[r][j] for structural
    # columns and 0 for artificials.
    cost = [ZERO] * total_cols
    for j in range(ncols):
        cost[j] = -sum((rows[r][j] for r in range(nrows)), ZERO)

    # Dantzig pricing until the objective stalls for too many pivots in a
    # row (possible cycling), then Bland's rule, which cannot cycle.
    stall_limit = 10 * (nrows + 1)
    stalled = 0
    objective = sum(rhs, ZERO)
    while True:
        if stalled < stall_limit:
            enter = None
            best = ZERO
            for j in range(total_cols):
                if cost[j] < best:
                    best = cost[j]
                    enter = j
        else:
            enter = next((j for j in range(total_cols) if cost[j] < 0), None)
        if enter is None:
            break
        # Ratio test; ties broken by smallest basis index (Bland).
        leave = None
        best_ratio = None
        for r in range(nrows):
            a = rows[r][enter]
            if a > 0:
                ratio = rhs[r] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[r] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = r
        if leave is None:
            # Unbounded descent cannot happen in phase 1 (objective >= 0),
            # but guard against malformed input.
            raise ArithmeticError("phase-1 objective unbounded")
        pivot = rows[leave][enter]
        rows[leave] = [x / pivot for x in rows[leave]]
        rhs[leave] /= pivot
        for r in range(nrows):
            if r != leave and rows[r][enter] != 0:
                f = rows[r][enter]
                prow = rows[leave]
                rows[r] = [x - f * y for x, y in zip(rows[r], prow)]
                rhs[r] -= f * rhs[leave]
        f = cost[enter]
        if f != 0:
            prow = rows[leave]
            cost = [x - f * y for x, y in zip(cost, prow)]
        basis[leave] = enter
        new_objective = sum(rhs, ZERO)
        stalled = stalled + 1 if new_objective == objective else 0
        objective = new_objective

    residual = sum(
        (rhs[r] for r in range(nrows) if basis[r] >= ncols), ZERO
    )
    return residual == 0
