"""Seeded random instances.

All generators take a ``random.Random`` so callers control reproducibility;
values are integers, which keeps the exact arithmetic fast.
"""

from __future__ import annotations

import random

from .interval import IntervalMatrix, RealMatrix
from .permutation import permute_general
from .strong import is_strong_monge
from .weak import is_weak_monge, necessary_nonneg_residual

DEFAULT_SEED = 20191223


def monge_from_residuals(first_row, first_col, residuals) -> list[list[int]]:
    """Unique matrix with the given first row/column and adjacent residuals."""
    m, n = len(first_col), len(first_row)
    w = [[0] * n for _ in range(m)]
    w[0] = list(first_row)
    for i in range(m):
        w[i][0] = first_col[i]
    for i in range(m - 1):
        for j in range(n - 1):
            w[i + 1][j + 1] = w[i][j + 1] + w[i + 1][j] - w[i][j] - residuals[i][j]
    return w


def _residuals(rng: random.Random, m: int, n: int, lo: int, hi: int, tie_prob: float):
    return [
        [0 if rng.random() < tie_prob else rng.randint(lo, hi) for _ in range(n - 1)]
        for _ in range(m - 1)
    ]


def random_monge(
    rng: random.Random, m: int, n: int, *, spread: int = 10, max_residual: int = 6,
    min_residual: int = 0, tie_prob: float = 0.0,
) -> list[list[int]]:
    first_row = [rng.randint(-spread, spread) for _ in range(n)]
    first_col = [first_row[0]] + [rng.randint(-spread, spread) for _ in range(m - 1)]
    res = _residuals(rng, m, n, min_residual, max_residual, tie_prob)
    return monge_from_residuals(first_row, first_col, res)


def random_nonneg_monge(rng: random.Random, m: int, n: int, **kw) -> RealMatrix:
    w = random_monge(rng, m, n, **kw)
    low = min(min(r) for r in w)
    shift = -low + rng.randint(0, 3) if low < 0 else rng.randint(0, 3)
    return RealMatrix([[x + shift for x in r] for r in w])


def random_ism(
    rng: random.Random, m: int, n: int, *, max_residual: int = 12, min_residual: int = 0,
    tie_prob: float = 0.0, degenerate_prob: float = 0.3, positive_radii: bool = False,
    spread: int = 10,
) -> IntervalMatrix:
    """Strongly Monge matrix: a Monge center with radii that fit every block's slack.

    The four radii around each adjacent block sum to at most its residual,
    which is exactly the strong condition for a symmetric inflation.
    """
    if positive_radii:
        min_residual = max(min_residual, 4)
        tie_prob = 0.0
    first_row = [rng.randint(-spread, spread) for _ in range(n)]
    first_col = [first_row[0]] + [rng.randint(-spread, spread) for _ in range(m - 1)]
    res = _residuals(rng, m, n, min_residual, max_residual, tie_prob)
    w = monge_from_residuals(first_row, first_col, res)
    lower = [[0] * n for _ in range(m)]
    upper = [[0] * n for _ in range(m)]
    for i in range(m):
        for j in range(n):
            caps = [
                res[a][b] // 4
                for a in (i - 1, i)
                for b in (j - 1, j)
                if 0 <= a < m - 1 and 0 <= b < n - 1
            ]
            cap = min(caps) if caps else 3
            if positive_radii:
                r = rng.randint(1, cap)
            elif rng.random() < degenerate_prob:
                r = 0
            else:
                r = rng.randint(0, cap)
            lower[i][j] = w[i][j] - r
            upper[i][j] = w[i][j] + r
    return IntervalMatrix(lower, upper)


def random_interval(
    rng: random.Random, m: int, n: int, *, spread: int = 10, max_width: int = 8,
    degenerate_prob: float = 0.3,
) -> IntervalMatrix:
    lower = [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(m)]
    upper = [
        [x if rng.random() < degenerate_prob else x + rng.randint(0, max_width) for x in row]
        for row in lower
    ]
    return IntervalMatrix(lower, upper)


def around_monge(
    rng: random.Random, m: int, n: int, *, max_width: int = 6, spread: int = 10,
    max_residual: int = 4, degenerate_prob: float = 0.2,
) -> IntervalMatrix:
    """Asymmetric box around a Monge matrix (always weakly Monge, rarely strongly)."""
    w = random_monge(rng, m, n, spread=spread, max_residual=max_residual)
    lower, upper = [], []
    for row in w:
        lr, ur = [], []
        for x in row:
            if rng.random() < degenerate_prob:
                lr.append(x)
                ur.append(x)
            else:
                lr.append(x - rng.randint(0, max_width))
                ur.append(x + rng.randint(0, max_width))
        lower.append(lr)
        upper.append(ur)
    return IntervalMatrix(lower, upper)


def shuffle(rng: random.Random, mat: IntervalMatrix) -> IntervalMatrix:
    rows = list(range(mat.m))
    cols = list(range(mat.n))
    rng.shuffle(rows)
    rng.shuffle(cols)
    return mat.permuted(rows, cols)


def gen_iwm_only(rng: random.Random, m: int, n: int) -> IntervalMatrix:
    """Monge member inside bounds widened so the first block breaks the strong condition."""
    if m < 2 or n < 2:
        raise ValueError("iwm-only instances need at least 2x2")
    w = random_monge(rng, m, n)
    lower = [[x - rng.randint(0, 2) for x in r] for r in w]
    upper = [[x + rng.randint(0, 2) for x in r] for r in w]
    slack = lower[0][1] + lower[1][0] - upper[0][0] - upper[1][1]
    if slack >= 0:
        upper[0][0] += slack + 1 + rng.randint(0, 3)
    return IntervalMatrix(lower, upper)


def gen_not_iwm(rng: random.Random, m: int, n: int) -> IntervalMatrix:
    """Random matrix with one block forced to a negative upper residual."""
    if m < 2 or n < 2:
        raise ValueError("not-iwm instances need at least 2x2")
    base = random_interval(rng, m, n)
    lower = [list(r) for r in base.lower]
    upper = [list(r) for r in base.upper]
    i, j = rng.randrange(m - 1), rng.randrange(n - 1)
    start = upper[i + 1][j] + upper[i][j + 1] - lower[i + 1][j + 1] + 1 + rng.randint(0, 3)
    lower[i][j] = start
    upper[i][j] = start + rng.randint(0, 4)
    return IntervalMatrix(lower, upper)


GEN_KINDS = ("ism", "iwm-only", "not-iwm", "permutable", "random")


def generate(kind: str, m: int, n: int, seed: int = DEFAULT_SEED) -> IntervalMatrix:
    """Instance of the advertised class, verified before it is returned."""
    rng = random.Random(seed)
    if kind == "ism":
        mat = random_ism(rng, m, n)
        ok = is_strong_monge(mat)
    elif kind == "iwm-only":
        mat = gen_iwm_only(rng, m, n)
        ok = is_weak_monge(mat).feasible and not is_strong_monge(mat)
    elif kind == "not-iwm":
        mat = gen_not_iwm(rng, m, n)
        ok = not necessary_nonneg_residual(mat) and not is_weak_monge(mat).feasible
    elif kind == "permutable":
        mat = shuffle(rng, random_ism(rng, m, n))
        ok = permute_general(mat) is not None
    elif kind == "random":
        mat = random_interval(rng, m, n)
        ok = True
    else:
        raise ValueError(f"unknown generator kind {kind!r}; choose from {', '.join(GEN_KINDS)}")
    if not ok:
        raise AssertionError(f"generated {kind} instance failed its own class check")
    return mat

