"""Real Monge matrices: recognition, closure operations and cone decomposition.

A real matrix is Monge when ``m[i][j] + m[k][l] <= m[i][l] + m[k][j]`` for all
``i < k`` and ``j < l``.  The checks here act as the ground truth that the
interval-level recognizers are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Mapping, Sequence

from .errors import DimensionMismatch, IndexRangeViolation, NegativeEntry, NotMonge, TooSmall
from .interval import RealMatrix, Rational, rational
from .lp import phase_one


def is_monge(mat: RealMatrix) -> bool:
    """Adjacent 2x2 test, O(mn)."""
    e = mat.entries
    for i in range(mat.m - 1):
        r, s = e[i], e[i + 1]
        for j in range(mat.n - 1):
            if r[j] + s[j + 1] > r[j + 1] + s[j]:
                return False
    return True


def is_monge_quadruples(mat: RealMatrix) -> bool:
    """Check every ``i < k``, ``j < l`` quadruple, O(m^2 n^2)."""
    e = mat.entries
    for i, k in combinations(range(mat.m), 2):
        for j, l in combinations(range(mat.n), 2):
            if e[i][j] + e[k][l] > e[i][l] + e[k][j]:
                return False
    return True


def is_submodular(mat: RealMatrix) -> bool:
    """Lattice test ``f(x v y) + f(x ^ y) <= f(x) + f(y)`` over all pairs of cells,
    with ``f(i, j) = m[i][j]``."""
    e = mat.entries
    cells = list(product(range(mat.m), range(mat.n)))
    for (a, b), (c, d) in combinations(cells, 2):
        join = e[max(a, c)][max(b, d)]
        meet = e[min(a, c)][min(b, d)]
        if join + meet > e[a][b] + e[c][d]:
            return False
    return True


def residual_real(mat: RealMatrix) -> RealMatrix:
    """``r[i][j] = m[i+1][j] + m[i][j+1] - m[i][j] - m[i+1][j+1]``; Monge iff all >= 0."""
    if mat.m < 2 or mat.n < 2:
        raise TooSmall(f"residual needs at least 2x2, got {mat.m}x{mat.n}")
    e = mat.entries
    return RealMatrix._wrap(
        tuple(
            tuple(e[i + 1][j] + e[i][j + 1] - e[i][j] - e[i + 1][j + 1] for j in range(mat.n - 1))
            for i in range(mat.m - 1)
        )
    )


# --- closure operations ----------------------------------------------------


def monge_transpose(mat: RealMatrix) -> RealMatrix:
    return mat.transpose()


def monge_scale(alpha, mat: RealMatrix) -> RealMatrix:
    alpha = rational(alpha)
    if alpha < 0:
        raise ValueError("Monge property is only preserved by nonnegative scaling")
    return mat.scale(alpha)


def monge_add(a: RealMatrix, b: RealMatrix) -> RealMatrix:
    return a + b


def monge_shift(mat: RealMatrix, u: Sequence, v: Sequence) -> RealMatrix:
    """``c[i][j] = m[i][j] + u[i] + v[j]``."""
    if len(u) != mat.m or len(v) != mat.n:
        raise DimensionMismatch(
            f"shift vectors have lengths {len(u)}, {len(v)} for a {mat.m}x{mat.n} matrix"
        )
    u = [rational(x) for x in u]
    v = [rational(x) for x in v]
    return RealMatrix._wrap(
        tuple(tuple(x + u[i] + v[j] for j, x in enumerate(row)) for i, row in enumerate(mat.entries))
    )


def monge_closure_ops(
    a: RealMatrix, b: RealMatrix, alpha, u: Sequence, v: Sequence
) -> dict[str, RealMatrix]:
    """All four closure operations at once, keyed by name."""
    return {
        "transpose": monge_transpose(a),
        "scale": monge_scale(alpha, a),
        "sum": monge_add(a, b),
        "shift": monge_shift(a, u, v),
    }


# --- cone decomposition ----------------------------------------------------


@dataclass(frozen=True)
class MongeDecomposition:
    """Nonnegative coefficients over the extreme rays of the nonnegative Monge cone.

    Indices are 1-based, as in the generator names: ``kappa[i-1]`` weighs the
    all-ones row ``H^i``, ``lam[j-1]`` the all-ones column ``V^j``,
    ``mu[(r, s)]`` the lower-left block ``L^{rs}`` (rows r..m, cols 1..s) and
    ``nu[(p, q)]`` the upper-right block ``R^{pq}`` (rows 1..p, cols q..n).
    """

    kappa: tuple[Rational, ...]
    lam: tuple[Rational, ...]
    mu: Mapping[tuple[int, int], Rational] = field(default_factory=dict)
    nu: Mapping[tuple[int, int], Rational] = field(default_factory=dict)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.kappa), len(self.lam)

    def coefficients(self):
        yield from self.kappa
        yield from self.lam
        yield from self.mu.values()
        yield from self.nu.values()

    def to_dict(self) -> dict:
        from .interval import format_rational as f

        return {
            "kappa": [f(x) for x in self.kappa],
            "lambda": [f(x) for x in self.lam],
            "mu": [{"r": r, "s": s, "value": f(x)} for (r, s), x in sorted(self.mu.items()) if x],
            "nu": [{"p": p, "q": q, "value": f(x)} for (p, q), x in sorted(self.nu.items()) if x],
        }


def _generators(m: int, n: int):
    """Yield ``(kind, key, cells)`` for every generator; cells are 0-based."""
    for i in range(1, m + 1):
        yield "kappa", i, [(i - 1, j) for j in range(n)]
    for j in range(1, n + 1):
        yield "lam", j, [(i, j - 1) for i in range(m)]
    for r in range(2, m + 1):
        for s in range(1, n):
            yield "mu", (r, s), [(i, j) for i in range(r - 1, m) for j in range(s)]
    for p in range(1, m):
        for q in range(2, n + 1):
            yield "nu", (p, q), [(i, j) for i in range(p) for j in range(q - 1, n)]


def reconstruct(d: MongeDecomposition, m: int | None = None, n: int | None = None) -> RealMatrix:
    """Sum of generators weighted by the decomposition's coefficients."""
    if m is None or n is None:
        m, n = d.shape
    if len(d.kappa) != m or len(d.lam) != n:
        raise IndexRangeViolation(
            f"kappa/lambda lengths {len(d.kappa)}/{len(d.lam)} do not match {m}x{n}"
        )
    for r, s in d.mu:
        if not (2 <= r <= m and 1 <= s <= n - 1):
            raise IndexRangeViolation(f"mu index ({r},{s}) outside r=2..{m}, s=1..{n - 1}")
    for p, q in d.nu:
        if not (1 <= p <= m - 1 and 2 <= q <= n):
            raise IndexRangeViolation(f"nu index ({p},{q}) outside p=1..{m - 1}, q=2..{n}")
    acc = [[0] * n for _ in range(m)]
    for kind, key, cells in _generators(m, n):
        if kind == "kappa":
            w = d.kappa[key - 1]
        elif kind == "lam":
            w = d.lam[key - 1]
        else:
            w = getattr(d, kind).get(key, 0)
        if w:
            for i, j in cells:
                acc[i][j] += w
    return RealMatrix(acc)


def decompose_monge(mat: RealMatrix) -> MongeDecomposition:
    """Express a nonnegative Monge matrix as a nonnegative generator combination.

    The coefficients come from an exact feasibility LP (one equality per
    entry), so any valid decomposition may be returned; uniqueness is not
    claimed.
    """
    if any(x < 0 for row in mat.entries for x in row):
        raise NegativeEntry("decomposition needs an entrywise nonnegative matrix")
    if not is_monge(mat):
        raise NotMonge("decomposition needs a Monge matrix")
    m, n = mat.shape
    gens = list(_generators(m, n))
    eq_rows: list[dict[int, int]] = [{} for _ in range(m * n)]
    for col, (_, _, cells) in enumerate(gens):
        for i, j in cells:
            eq_rows[i * n + j][col] = 1
    rhs = [x for row in mat.entries for x in row]
    x = phase_one(len(gens), a_eq=eq_rows, b_eq=rhs)
    if x is None:
        raise ArithmeticError("no cone decomposition found for a nonnegative Monge matrix")
    kappa, lam, mu, nu = [0] * m, [0] * n, {}, {}
    for (kind, key, _), value in zip(gens, x):
        if kind == "kappa":
            kappa[key - 1] = value
        elif kind == "lam":
            lam[key - 1] = value
        elif kind == "mu":
            mu[key] = value
        else:
            nu[key] = value
    d = MongeDecomposition(tuple(kappa), tuple(lam), mu, nu)
    if reconstruct(d, m, n) != mat:
        raise ArithmeticError("decomposition does not reconstruct the input")
    return d
