"""Weak Monge property: some member of the interval matrix is Monge.

Recognition is exact, through a rational phase-1 simplex on the feasibility
program "adjacent Monge inequalities plus entry bounds".  The cheaper
conditions below either refute membership (nonnegative residual) or certify it
with an explicit witness; they never do both.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import DimensionMismatch, EmptyIntersection, NegativeScalar, NotStrongMonge, NotWeakMonge, TooSmall
from .interval import (
    EmptyAt,
    Interval,
    IntervalMatrix,
    RealMatrix,
    Rational,
    matrix_intersection,
    rational,
    union_envelope,
)
from .lp import phase_one
from .monge import is_monge, residual_real
from .strong import is_strong_monge

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LpProblem:
    """Feasibility program for the weak Monge test.

    Variables are the matrix entries, column ``index[(i, j)]`` (0-based).
    Every row is a ``<=`` constraint ``sum(coeffs[c] * x[c]) <= rhs``.
    """

    shape: tuple[int, int]
    index: dict[tuple[int, int], int]
    monge_rows: list[dict[int, int]]
    upper_rows: list[tuple[dict[int, int], Rational]]
    lower_rows: list[tuple[dict[int, int], Rational]]

    @property
    def n_vars(self) -> int:
        return len(self.index)

    def rows(self):
        for coeffs in self.monge_rows:
            yield coeffs, 0
        yield from self.upper_rows
        yield from self.lower_rows

    def is_satisfied_by(self, x: RealMatrix) -> bool:
        flat = [v for row in x.entries for v in row]
        return all(sum(c * flat[k] for k, c in coeffs.items()) <= rhs for coeffs, rhs in self.rows())


def build_lp(mat: IntervalMatrix) -> LpProblem:
    m, n = mat.shape
    index = {(i, j): i * n + j for i in range(m) for j in range(n)}
    monge_rows = []
    for i in range(m - 1):
        for j in range(n - 1):
            monge_rows.append(
                {index[i, j]: 1, index[i + 1, j + 1]: 1, index[i, j + 1]: -1, index[i + 1, j]: -1}
            )
    upper_rows = [({index[i, j]: 1}, mat.upper[i][j]) for i in range(m) for j in range(n)]
    lower_rows = [({index[i, j]: -1}, -mat.lower[i][j]) for i in range(m) for j in range(n)]
    return LpProblem((m, n), index, monge_rows, upper_rows, lower_rows)


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: Optional[RealMatrix] = None

    def __bool__(self):
        return self.feasible


def validate_witness(mat: IntervalMatrix, witness: RealMatrix) -> bool:
    return mat.contains(witness) and is_monge(witness)


def _checked(mat: IntervalMatrix, witness: RealMatrix, source: str) -> RealMatrix:
    if not validate_witness(mat, witness):
        raise AssertionError(f"{source} produced an invalid witness")
    return witness


def is_weak_monge(mat: IntervalMatrix) -> FeasibilityResult:
    """Exact recognition through the phase-1 simplex.

    The program is solved in shifted variables ``y = x - lower >= 0`` so the
    lower-bound rows become sign constraints; the returned witness is
    ``lower + y`` for the phase-1 basic solution.
    """
    lp = build_lp(mat)
    m, n = lp.shape
    lo = [v for row in mat.lower for v in row]
    a_ub, b_ub = [], []
    for coeffs in lp.monge_rows:
        a_ub.append(coeffs)
        b_ub.append(-sum(c * lo[k] for k, c in coeffs.items()))
    for coeffs, bound in lp.upper_rows:
        (k,) = coeffs
        a_ub.append(coeffs)
        b_ub.append(bound - lo[k])
    y = phase_one(lp.n_vars, a_ub, b_ub)
    if y is None:
        return FeasibilityResult(False)
    witness = RealMatrix([[lo[i * n + j] + y[i * n + j] for j in range(n)] for i in range(m)])
    return FeasibilityResult(True, _checked(mat, witness, "LP"))


# --- residuals and the necessary condition ---------------------------------


def interval_residual(mat: IntervalMatrix) -> IntervalMatrix:
    if mat.m < 2 or mat.n < 2:
        raise TooSmall(f"residual needs at least 2x2, got {mat.m}x{mat.n}")
    lo, hi = mat.lower, mat.upper
    rlo = tuple(
        tuple(lo[i + 1][j] + lo[i][j + 1] - hi[i][j] - hi[i + 1][j + 1] for j in range(mat.n - 1))
        for i in range(mat.m - 1)
    )
    rhi = tuple(
        tuple(hi[i + 1][j] + hi[i][j + 1] - lo[i][j] - lo[i + 1][j + 1] for j in range(mat.n - 1))
        for i in range(mat.m - 1)
    )
    return IntervalMatrix._wrap(rlo, rhi)


def necessary_nonneg_residual(mat: IntervalMatrix) -> bool:
    """False proves the matrix is not weakly Monge."""
    return all(x >= 0 for row in interval_residual(mat).upper for x in row)


# --- sufficient conditions ---------------------------------------------------


def _constant_lines(mat: IntervalMatrix, by_rows: bool) -> RealMatrix | None:
    m, n = mat.shape
    values = []
    lines = range(m) if by_rows else range(n)
    for t in lines:
        cells = [(t, j) for j in range(n)] if by_rows else [(i, t) for i in range(m)]
        lo = max(mat.lower[i][j] for i, j in cells)
        hi = min(mat.upper[i][j] for i, j in cells)
        if lo > hi:
            return None
        values.append(lo)
    if by_rows:
        return RealMatrix([[values[i]] * n for i in range(m)])
    return RealMatrix([values[:] for _ in range(m)])


def sufficient_row_col_intersection(mat: IntervalMatrix) -> RealMatrix | None:
    """Witness with constant rows (or, failing that, constant columns).

    Each line takes the smallest value common to all its entries.  ``None``
    means inconclusive.
    """
    for by_rows in (True, False):
        w = _constant_lines(mat, by_rows)
        if w is not None:
            return _checked(mat, w, "row/column intersection")
    return None


def sufficient_zero_containment(mat: IntervalMatrix) -> bool:
    """True iff every entry contains 0 (radius >= |center|); the zero matrix is then a witness."""
    return all(a <= 0 <= b for r, s in zip(mat.lower, mat.upper) for a, b in zip(r, s))


def _suffix_sums(res: list[list[Rational]]) -> list[list[Rational]]:
    rows, cols = len(res), len(res[0])
    s = [[0] * (cols + 1) for _ in range(rows + 1)]
    for i in range(rows - 1, -1, -1):
        for j in range(cols - 1, -1, -1):
            s[i][j] = res[i][j] + s[i + 1][j] + s[i][j + 1] - s[i + 1][j + 1]
    return s


def _center_if_monge(mat: IntervalMatrix) -> RealMatrix | None:
    c = mat.center()
    return c if is_monge(c) else None


def sufficient_residual_sum(mat: IntervalMatrix) -> RealMatrix | None:
    """Eliminate center residuals from the bottom-right corner upward.

    Zeroing the residual of block (i, j) is done by adding it to the block's
    top-left entry; processed bottom-right to top-left, entry (i, j) ends up
    shifted by the suffix sum of residuals over blocks (k >= i, l >= j).  The
    condition is that every shift fits inside the entry's radius.  A center
    that is already Monge is returned as is.
    """
    if mat.m < 2 or mat.n < 2:
        raise TooSmall(f"residual needs at least 2x2, got {mat.m}x{mat.n}")
    c = _center_if_monge(mat)
    if c is not None:
        return _checked(mat, c, "center")
    center = mat.center()
    radius = mat.radius().entries
    res = [list(r) for r in residual_real(center).entries]
    suffix = _suffix_sums(res)
    for i in range(mat.m - 1):
        for j in range(mat.n - 1):
            if abs(suffix[i][j]) > radius[i][j]:
                return None
    w = [list(r) for r in center.entries]
    for i in range(mat.m - 1):
        for j in range(mat.n - 1):
            w[i][j] += suffix[i][j]
    return _checked(mat, RealMatrix(w), "residual-sum elimination")


def four_block_shifts(res: list[list[Rational]], pi: int, pj: int) -> dict[tuple[int, int], Rational]:
    """Entry shifts produced by eliminating residual blocks away from pivot entry (pi, pj).

    ``res`` is the (m-1) x (n-1) residual matrix of the center.  Residual
    blocks split into four quadrants around the pivot; each quadrant is zeroed
    by moving the block corner farthest from the pivot, starting next to the
    pivot and sweeping outward, so no quadrant disturbs another.  Returns the
    0-based entry -> shift map (entries in the pivot row and column never move).
    """
    rows, cols = len(res), len(res[0])
    shifts: dict[tuple[int, int], Rational] = {}
    # top-left: blocks k < pi, l < pj, move entry (k, l) by +sum over [k, pi) x [l, pj)
    acc = [[0] * (pj + 1) for _ in range(pi + 1)]
    for k in range(pi - 1, -1, -1):
        for l in range(pj - 1, -1, -1):
            acc[k][l] = res[k][l] + acc[k + 1][l] + acc[k][l + 1] - acc[k + 1][l + 1]
            shifts[k, l] = acc[k][l]
    # top-right: blocks k < pi, l >= pj, move entry (k, l+1) by -sum over [k, pi) x [pj, l]
    width = cols - pj
    acc = [[0] * (width + 1) for _ in range(pi + 1)]
    for k in range(pi - 1, -1, -1):
        for t in range(width):
            l = pj + t
            acc[k][t + 1] = res[k][l] + acc[k + 1][t + 1] + acc[k][t] - acc[k + 1][t]
            shifts[k, l + 1] = -acc[k][t + 1]
    # bottom-left: blocks k >= pi, l < pj, move entry (k+1, l) by -sum over [pi, k] x [l, pj)
    height = rows - pi
    acc = [[0] * (pj + 1) for _ in range(height + 1)]
    for t in range(height):
        k = pi + t
        for l in range(pj - 1, -1, -1):
            acc[t + 1][l] = res[k][l] + acc[t][l] + acc[t + 1][l + 1] - acc[t][l + 1]
            shifts[k + 1, l] = -acc[t + 1][l]
    # bottom-right: blocks k >= pi, l >= pj, move entry (k+1, l+1) by +sum over [pi, k] x [pj, l]
    acc = [[0] * (width + 1) for _ in range(height + 1)]
    for t in range(height):
        k = pi + t
        for u in range(width):
            l = pj + u
            acc[t + 1][u + 1] = res[k][l] + acc[t][u + 1] + acc[t + 1][u] - acc[t][u]
            shifts[k + 1, l + 1] = acc[t + 1][u + 1]
    return shifts


@dataclass(frozen=True)
class FourBlockResult:
    pivot: Optional[tuple[int, int]]  # 0-based; None when the center was already Monge
    witness: RealMatrix


def sufficient_four_block(mat: IntervalMatrix) -> FourBlockResult | None:
    """Search pivots row-major; the first pivot whose four quadrant eliminations
    all fit inside the radii yields the witness."""
    if mat.m < 2 or mat.n < 2:
        raise TooSmall(f"residual needs at least 2x2, got {mat.m}x{mat.n}")
    c = _center_if_monge(mat)
    if c is not None:
        return FourBlockResult(None, _checked(mat, c, "center"))
    center = mat.center()
    radius = mat.radius().entries
    res = [list(r) for r in residual_real(center).entries]
    for pi in range(mat.m):
        for pj in range(mat.n):
            shifts = four_block_shifts(res, pi, pj)
            if all(abs(d) <= radius[i][j] for (i, j), d in shifts.items()):
                w = [list(r) for r in center.entries]
                for (i, j), d in shifts.items():
                    w[i][j] += d
                return FourBlockResult((pi, pj), _checked(mat, RealMatrix(w), "four-block elimination"))
    return None


def zero_witness(mat: IntervalMatrix) -> RealMatrix | None:
    if not sufficient_zero_containment(mat):
        return None
    return _checked(mat, RealMatrix.zeros(mat.m, mat.n), "zero containment")


@dataclass
class ConditionReport:
    """Outcome of every cheap condition; ``witness`` comes from the first one that fired."""

    necessary: Optional[bool]
    fired: list[str] = field(default_factory=list)
    witness: Optional[RealMatrix] = None

    @property
    def verdict(self) -> Optional[bool]:
        if self.necessary is False:
            return False
        if self.fired:
            return True
        return None


def run_conditions(mat: IntervalMatrix) -> ConditionReport:
    small = mat.m < 2 or mat.n < 2
    report = ConditionReport(necessary=None if small else necessary_nonneg_residual(mat))
    if small:
        # no Monge constraints at all: any member works
        report.fired.append("trivial")
        report.witness = mat.lower_matrix()
        return report
    checks: list[tuple[str, Callable[[IntervalMatrix], Optional[RealMatrix]]]] = [
        ("zero_containment", zero_witness),
        ("row_col_intersection", sufficient_row_col_intersection),
        ("residual_sum", sufficient_residual_sum),
        ("four_block", lambda x: (r.witness if (r := sufficient_four_block(x)) else None)),
    ]
    for name, fn in checks:
        w = fn(mat)
        if w is not None:
            report.fired.append(name)
            if report.witness is None:
                report.witness = w
    return report


# --- closure calculus ------------------------------------------------------


@dataclass(frozen=True)
class ClosureResult:
    """``verdict`` is the claimed membership of ``matrix`` in the weak class;
    ``lp_verdict`` is the independent recognition of the same matrix."""

    matrix: IntervalMatrix
    verdict: bool
    witness: Optional[RealMatrix] = None
    lp_verdict: Optional[bool] = None
    criterion: Optional[bool] = None

    @property
    def agrees(self) -> bool:
        return self.lp_verdict is None or self.lp_verdict == self.verdict


def _same_shape(a: IntervalMatrix, b: IntervalMatrix) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")


def _weak_witness(mat: IntervalMatrix, what: str) -> RealMatrix:
    r = is_weak_monge(mat)
    if not r.feasible:
        raise NotWeakMonge(f"{what} does not have the weak Monge property")
    return r.witness


def _strong_member(mat: IntervalMatrix, what: str) -> RealMatrix:
    if not is_strong_monge(mat):
        raise NotStrongMonge(f"{what} does not have the strong Monge property")
    return mat.lower_matrix()


def _finish(result: IntervalMatrix, witness: RealMatrix, source: str) -> ClosureResult:
    _checked(result, witness, source)
    lp = is_weak_monge(result).feasible
    if not lp:
        raise AssertionError(f"{source}: LP rejects a matrix with a valid witness")
    return ClosureResult(result, True, witness, lp)


def add_weak_weak(a: IntervalMatrix, b: IntervalMatrix) -> ClosureResult:
    _same_shape(a, b)
    w = _weak_witness(a, "first summand") + _weak_witness(b, "second summand")
    return _finish(a + b, w, "add_weak_weak")


def add_weak_any(a: IntervalMatrix, p: IntervalMatrix) -> ClosureResult:
    """Sum of a weakly Monge matrix and an arbitrary one.

    ``criterion`` is the upper-residual test ``upper(res(A)) + upper(res(P)) >= 0``.
    That test is only known to be necessary, so the reported ``verdict`` is the
    LP's and disagreements with the criterion are logged.
    """
    _same_shape(a, p)
    _weak_witness(a, "first summand")
    total = a + p
    if a.m < 2 or a.n < 2:
        criterion = True
    else:
        ra, rp = interval_residual(a).upper, interval_residual(p).upper
        criterion = all(x + y >= 0 for r, s in zip(ra, rp) for x, y in zip(r, s))
    lp = is_weak_monge(total)
    if lp.feasible != criterion:
        log.info("add_weak_any: residual criterion says %s but LP says %s", criterion, lp.feasible)
    return ClosureResult(total, lp.feasible, lp.witness, lp.feasible, criterion)


def envelope_union(a: IntervalMatrix, p: IntervalMatrix) -> ClosureResult:
    _same_shape(a, p)
    w = _weak_witness(a, "first operand")
    return _finish(union_envelope(a, p), w, "envelope_union")


def scale(alpha, a: IntervalMatrix) -> ClosureResult:
    alpha = rational(alpha)
    if alpha < 0:
        raise NegativeScalar(f"scalar {alpha} is negative")
    w = _weak_witness(a, "operand").scale(alpha)
    return _finish(a.scale(alpha), w, "scale")


def interval_scale(alpha: Interval, a: IntervalMatrix) -> ClosureResult:
    """Witness is ``alpha.lo`` times the operand's witness."""
    if alpha.lo < 0:
        raise NegativeScalar(f"scaling interval {alpha!r} is not within [0, inf)")
    w = _weak_witness(a, "operand").scale(alpha.lo)
    return _finish(a.interval_scale(alpha), w, "interval_scale")


def mixed_add(strong: IntervalMatrix, weak: IntervalMatrix) -> ClosureResult:
    _same_shape(strong, weak)
    w = _strong_member(strong, "first operand") + _weak_witness(weak, "second operand")
    return _finish(strong + weak, w, "mixed_add")


def mixed_intersection(strong: IntervalMatrix, weak: IntervalMatrix) -> ClosureResult:
    _same_shape(strong, weak)
    _strong_member(strong, "first operand")
    _weak_witness(weak, "second operand")
    inter = matrix_intersection(strong, weak)
    if isinstance(inter, EmptyAt):
        raise EmptyIntersection(f"entries empty at {inter.one_based()}")
    return _finish(inter, _weak_witness(inter, "intersection"), "mixed_intersection")


def mixed_envelope(strong: IntervalMatrix, weak: IntervalMatrix) -> ClosureResult:
    _same_shape(strong, weak)
    _weak_witness(weak, "second operand")
    w = _strong_member(strong, "first operand")
    return _finish(union_envelope(strong, weak), w, "mixed_envelope")


CLOSURE_OPS = {
    "add_weak_weak": add_weak_weak,
    "add_weak_any": add_weak_any,
    "envelope_union": envelope_union,
    "scale": scale,
    "interval_scale": interval_scale,
    "mixed_add": mixed_add,
    "mixed_intersection": mixed_intersection,
    "mixed_envelope": mixed_envelope,
}


def iwm_closure(op: str, *args) -> ClosureResult:
    """Dispatch by name; ``scale``/``interval_scale`` take ``(alpha, matrix)``."""
    try:
        fn = CLOSURE_OPS[op]
    except KeyError:
        raise ValueError(f"unknown closure operation {op!r}") from None
    return fn(*args)
