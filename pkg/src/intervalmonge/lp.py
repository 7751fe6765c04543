"""Exact phase-1 simplex for linear feasibility problems.

Solves ``A_ub x <= b_ub, A_eq x = b_eq, x >= 0`` over the rationals and returns
a basic feasible solution or ``None``.  Rows are sparse ``{column: coeff}``
dicts.  Pivoting follows Bland's rule (lowest-index entering column, ratio ties
broken by lowest-index basic variable), so the method terminates and is fully
deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .interval import Rational, qdiv

Row = Mapping[int, Rational]


def _norm(q: Rational) -> Rational:
    if isinstance(q, Fraction) and q.denominator == 1:
        return q.numerator
    return q


class _Tableau:
    def __init__(self, rows, rhs, basis, n_cols, n_real):
        self.rows: list[dict[int, Rational]] = rows
        self.rhs: list[Rational] = rhs
        self.basis: list[int] = basis
        self.n_cols = n_cols
        # columns >= n_real are artificial and never re-enter the basis
        self.n_real = n_real
        self.cost: dict[int, Rational] = {}
        self.value: Rational = 0
        self.pivots = 0

    def pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        p = prow[c]
        if p != 1:
            prow = {k: qdiv(v, p) for k, v in prow.items()}
            self.rows[r] = prow
            self.rhs[r] = qdiv(self.rhs[r], p)
        b = self.rhs[r]
        items = list(prow.items())
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row.get(c)
            if f is None:
                continue
            for k, v in items:
                nv = _norm(row.get(k, 0) - f * v)
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            if b:
                self.rhs[i] = _norm(self.rhs[i] - f * b)
        f = self.cost.get(c)
        if f is not None:
            for k, v in items:
                nv = _norm(self.cost.get(k, 0) - f * v)
                if nv:
                    self.cost[k] = nv
                else:
                    self.cost.pop(k, None)
            self.value = _norm(self.value - f * b)
        self.basis[r] = c
        self.pivots += 1

    def run(self) -> None:
        while True:
            entering = min(
                (k for k, v in self.cost.items() if v < 0 and k < self.n_real), default=None
            )
            if entering is None:
                return
            best = None
            for i, row in enumerate(self.rows):
                a = row.get(entering)
                if a is not None and a > 0:
                    key = (Fraction(self.rhs[i]) / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                # phase-1 objective is bounded below by zero, so this cannot happen
                raise ArithmeticError("unbounded phase-1 problem")
            self.pivot(best[1], entering)


def phase_one(
    n_vars: int,
    a_ub: Sequence[Row] = (),
    b_ub: Sequence[Rational] = (),
    a_eq: Sequence[Row] = (),
    b_eq: Sequence[Rational] = (),
) -> list[Rational] | None:
    """Find ``x >= 0`` with ``a_ub x <= b_ub`` and ``a_eq x = b_eq``.

    Returns the phase-1 basic feasible solution (length ``n_vars``) or ``None``
    when the system is infeasible.
    """
    if len(a_ub) != len(b_ub) or len(a_eq) != len(b_eq):
        raise ValueError("row and right-hand side counts differ")
    rows: list[dict[int, Rational]] = []
    rhs: list[Rational] = []
    basis: list[int] = []
    needs_artificial: list[int] = []
    n_ub = len(a_ub)
    for t, (row, b) in enumerate(zip(a_ub, b_ub)):
        slack = n_vars + t
        coeffs = {k: v for k, v in row.items() if v}
        coeffs[slack] = 1
        if b < 0:
            coeffs = {k: -v for k, v in coeffs.items()}
            b = -b
            needs_artificial.append(len(rows))
            basis.append(-1)
        else:
            basis.append(slack)
        rows.append(coeffs)
        rhs.append(b)
    for row, b in zip(a_eq, b_eq):
        coeffs = {k: v for k, v in row.items() if v}
        if b < 0:
            coeffs = {k: -v for k, v in coeffs.items()}
            b = -b
        needs_artificial.append(len(rows))
        basis.append(-1)
        rows.append(coeffs)
        rhs.append(b)

    n_real = n_vars + n_ub
    tab = _Tableau(rows, rhs, basis, n_real + len(needs_artificial), n_real)
    for a, i in enumerate(needs_artificial):
        col = n_real + a
        rows[i][col] = 1
        basis[i] = col
        # price out: objective is the sum of artificials
        for k, v in rows[i].items():
            if k != col:
                tab.cost[k] = _norm(tab.cost.get(k, 0) - v)
        tab.value = _norm(tab.value - rhs[i])
    tab.cost = {k: v for k, v in tab.cost.items() if v}
    tab.run()
    if tab.value != 0:
        return None
    x: list[Rational] = [0] * n_vars
    for i, col in enumerate(tab.basis):
        if col < n_vars:
            x[col] = tab.rhs[i]
    return x
