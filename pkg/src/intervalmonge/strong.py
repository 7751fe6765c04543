"""Strong Monge property: every member of the interval matrix is Monge.

Four independent recognizers are provided (adjacent bounds, all quadruples,
corner matrices, interval submodularity); they must always agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Union

from .errors import DimensionMismatch, NegativeEntry, NegativeScalar, NotStrongMonge
from .interval import Interval, IntervalMatrix, RealMatrix, Rational, corner_matrices, rational
from .monge import is_monge


def is_strong_monge(mat: IntervalMatrix) -> bool:
    """``up[i][j] + up[i+1][j+1] <= lo[i][j+1] + lo[i+1][j]`` for every adjacent block."""
    lo, hi = mat.lower, mat.upper
    for i in range(mat.m - 1):
        h0, h1, l0, l1 = hi[i], hi[i + 1], lo[i], lo[i + 1]
        for j in range(mat.n - 1):
            if h0[j] + h1[j + 1] > l0[j + 1] + l1[j]:
                return False
    return True


def first_strong_violation(mat: IntervalMatrix) -> tuple[int, int] | None:
    """0-based top-left index of the first failing adjacent block, if any."""
    lo, hi = mat.lower, mat.upper
    for i in range(mat.m - 1):
        for j in range(mat.n - 1):
            if hi[i][j] + hi[i + 1][j + 1] > lo[i][j + 1] + lo[i + 1][j]:
                return i, j
    return None


def is_strong_monge_quadruples(mat: IntervalMatrix) -> bool:
    lo, hi = mat.lower, mat.upper
    for i, k in combinations(range(mat.m), 2):
        for j, l in combinations(range(mat.n), 2):
            if hi[i][j] + hi[k][l] > lo[i][l] + lo[k][j]:
                return False
    return True


def is_strong_monge_corners(mat: IntervalMatrix) -> bool:
    up, down = corner_matrices(mat)
    return is_monge(up) and is_monge(down)


def is_interval_submodular(mat: IntervalMatrix) -> bool:
    """Interval lattice inequality ``f_hi(x v y) + f_hi(x ^ y) <= f_lo(x) + f_lo(y)``.

    Only incomparable cell pairs are checked.  For comparable pairs the
    inequality reads ``f_hi(x) + f_hi(y) <= f_lo(x) + f_lo(y)`` and would force
    every entry to be degenerate, which is not what the characterization means.
    """
    lo, hi = mat.lower, mat.upper
    m, n = mat.shape
    for a in range(m):
        for b in range(n):
            # y = (c, d) strictly below-left of x = (a, b)
            for c in range(a + 1, m):
                for d in range(b):
                    # join (c, b), meet (a, d)
                    if hi[c][b] + hi[a][d] > lo[a][b] + lo[c][d]:
                        return False
    return True


STRONG_METHODS = {
    "adjacent": is_strong_monge,
    "quadruple": is_strong_monge_quadruples,
    "corners": is_strong_monge_corners,
    "submodular": is_interval_submodular,
}


# --- closure calculus ------------------------------------------------------


def _require_ism(mat: IntervalMatrix, what: str = "argument") -> None:
    if not is_strong_monge(mat):
        raise NotStrongMonge(f"{what} does not have the strong Monge property")


def ism_scale(alpha, mat: IntervalMatrix, *, check: bool = True) -> IntervalMatrix:
    alpha = rational(alpha)
    if alpha < 0:
        raise NegativeScalar(f"scalar {alpha} is negative")
    if check:
        _require_ism(mat)
    return mat.scale(alpha)


def ism_add(a: IntervalMatrix, b: IntervalMatrix, *, check: bool = True) -> IntervalMatrix:
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    if check:
        _require_ism(a, "first summand")
        _require_ism(b, "second summand")
    return a + b


def ism_transpose(mat: IntervalMatrix, *, check: bool = True) -> IntervalMatrix:
    if check:
        _require_ism(mat)
    return mat.transpose()


@dataclass(frozen=True)
class ScaleCheck:
    phi: Union[Rational, float]  # math.inf when no block constrains the ratio
    ratio: Rational  # radius/center of the scaling interval
    admissible: bool


def ism_interval_scale_check(alpha: Interval, mat: IntervalMatrix, *, check: bool = True) -> ScaleCheck:
    """Decide whether ``alpha * M`` stays strongly Monge for a nonnegative matrix.

    ``phi`` is the minimum over adjacent blocks of
    ``(lo01 + lo10 - hi00 - hi11) / (lo01 + lo10 + hi00 + hi11)``; blocks whose
    four entries are all zero are skipped.  The scaling is admissible iff
    ``radius(alpha) / center(alpha) <= phi``.
    """
    if alpha.lo < 0:
        raise NegativeScalar(f"scaling interval {alpha!r} is not within [0, inf)")
    if any(x < 0 for row in mat.lower for x in row):
        raise NegativeEntry("interval scaling check needs an entrywise nonnegative matrix")
    if check:
        _require_ism(mat)
    lo, hi = mat.lower, mat.upper
    phi: Union[Rational, float] = math.inf
    for i in range(mat.m - 1):
        for j in range(mat.n - 1):
            slack = lo[i][j + 1] + lo[i + 1][j] - hi[i][j] - hi[i + 1][j + 1]
            total = lo[i][j + 1] + lo[i + 1][j] + hi[i][j] + hi[i + 1][j + 1]
            if total == 0:
                continue
            q = Fraction(slack, total)
            if q < phi:
                phi = q.numerator if q.denominator == 1 else q
    if alpha.hi == 0:
        return ScaleCheck(phi, 0, True)
    ratio = Fraction(alpha.radius) / alpha.center
    ratio = ratio.numerator if ratio.denominator == 1 else ratio
    return ScaleCheck(phi, ratio, ratio <= phi)


# --- products do not preserve the property ---------------------------------


def standard_product(a: RealMatrix, b: RealMatrix) -> RealMatrix:
    if a.n != b.m:
        raise DimensionMismatch(f"cannot multiply {a.m}x{a.n} by {b.m}x{b.n}")
    cols = list(zip(*b.entries))
    return RealMatrix([[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a.entries])


def hadamard_product(a: RealMatrix, b: RealMatrix) -> RealMatrix:
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return RealMatrix([[x * y for x, y in zip(r, s)] for r, s in zip(a.entries, b.entries)])


def kronecker_product(a: RealMatrix, b: RealMatrix) -> RealMatrix:
    return RealMatrix(
        [
            [x * y for x in arow for y in brow]
            for arow in a.entries
            for brow in b.entries
        ]
    )


def non_closure_products_demo(a: RealMatrix, b: RealMatrix) -> dict:
    """Compute the standard, Hadamard and Kronecker products and whether each is Monge.

    Products whose dimensions do not fit are reported as ``None``.
    """
    report = {"inputs_monge": {"A": is_monge(a), "B": is_monge(b)}}
    for name, fn in (
        ("standard", standard_product),
        ("hadamard", hadamard_product),
        ("kronecker", kronecker_product),
    ):
        try:
            prod = fn(a, b)
        except DimensionMismatch:
            report[name] = None
            continue
        report[name] = {"product": prod, "monge": is_monge(prod)}
    if report["standard"] is None and report["hadamard"] is None:
        raise DimensionMismatch("neither the standard nor the Hadamard product is defined")
    return report
