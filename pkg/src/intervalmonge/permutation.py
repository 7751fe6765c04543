"""Row/column permutations that make an interval matrix strongly Monge.

A permutation is stored as an *order*: ``order[p]`` is the original (0-based)
index placed at position ``p``, so the permuted matrix is
``M.permuted(sigma, pi)[p][q] = M[sigma[p]][pi[q]]``.  The CLI prints the same
lists 1-based.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import TooLarge, TooSmall, TrivialIntervalPresent
from .interval import Interval, IntervalMatrix, Rational
from .strong import is_strong_monge

BRUTE_FORCE_LIMIT = 6


@dataclass(frozen=True)
class AmbiguityPartition:
    """Strongly connected components of the order digraph, in topological order."""

    sets: tuple[tuple[int, ...], ...]

    @property
    def first_size(self) -> int:
        return len(self.sets[0])

    @property
    def last_size(self) -> int:
        return len(self.sets[-1])


@dataclass(frozen=True)
class PermutationPair:
    sigma: tuple[int, ...]
    pi: tuple[int, ...]
    rho: Optional[tuple[int, ...]] = None

    def to_dict(self) -> dict:
        d = {"sigma": [i + 1 for i in self.sigma], "pi": [j + 1 for j in self.pi]}
        if self.rho is not None:
            d["rho"] = [j + 1 for j in self.rho]
        return d


def flip(mat: IntervalMatrix) -> IntervalMatrix:
    """Reverse both the row and the column order."""
    return mat.permuted(range(mat.m - 1, -1, -1), range(mat.n - 1, -1, -1))


def _scc_topological(n: int, adj: list[list[int]]) -> list[list[int]]:
    """Iterative Tarjan; returns components sources-first."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            nbrs = adj[v]
            if pos < len(nbrs):
                work[-1] = (v, pos + 1)
                w = nbrs[pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    # Tarjan emits sinks first
    comps.reverse()
    return comps


def order_from_keys(
    left: Sequence[Rational], right: Sequence[Rational]
) -> Optional[tuple[tuple[int, ...], AmbiguityPartition]]:
    """Order indices so that ``left[a] <= right[b]`` whenever ``a`` precedes ``b``.

    Builds the digraph with edge ``a -> b`` iff ``left[a] <= right[b]``.  If some
    pair has no edge either way no order exists.  Otherwise components are laid
    out in topological order, members of one component by ascending index.
    """
    n = len(left)
    adj: list[list[int]] = [[] for _ in range(n)]
    for a in range(n):
        la = left[a]
        row = adj[a]
        for b in range(n):
            if b != a and la <= right[b]:
                row.append(b)
    # every pair needs an edge in at least one direction
    for a in range(n):
        la, ra = left[a], right[a]
        for b in range(a + 1, n):
            if la > right[b] and left[b] > ra:
                return None
    comps = [tuple(sorted(c)) for c in _scc_topological(n, adj)]
    order = tuple(i for c in comps for i in c)
    return order, AmbiguityPartition(tuple(comps))


def order_permutation(
    u: Sequence[Interval], v: Sequence[Interval]
) -> Optional[tuple[tuple[int, ...], AmbiguityPartition]]:
    """Order so that ``hi(u_a) - lo(v_a) <= lo(u_b) - hi(v_b)`` whenever ``a`` precedes ``b``."""
    if len(u) != len(v):
        raise ValueError("vectors differ in length")
    left = [a.hi - b.lo for a, b in zip(u, v)]
    right = [a.lo - b.hi for a, b in zip(u, v)]
    return order_from_keys(left, right)


def _row_pair_keys(mat: IntervalMatrix, first: int, second: int):
    lo, hi = mat.lower, mat.upper
    left = [a - b for a, b in zip(hi[first], lo[second])]
    right = [a - b for a, b in zip(lo[first], hi[second])]
    return left, right


@dataclass(frozen=True)
class SplitRow:
    row: int  # 0-based


@dataclass(frozen=True)
class AllSingleSet:
    pass


@dataclass(frozen=True)
class Infeasible:
    column: int  # 0-based j: columns j and j+1 admit no order
    row: int


SplitVerdict = Union[SplitRow, AllSingleSet, Infeasible]


def find_split_row(mat: IntervalMatrix) -> SplitVerdict:
    """Find a row r whose columns, paired with row 0, fall into two ambiguity sets.

    For each later row k and neighbouring columns (j, j+1) two orders are
    possible: "j first" needs ``hi0[j] - lok[j] <= lo0[j+1] - hik[j+1]`` and
    "j+1 first" needs ``hi0[j+1] - lok[j+1] <= lo0[j] - hik[j]``.  Exactly one
    feasible order is a strict split; none means no permutation can work; both
    means the four entries are degenerate and tied.
    """
    if mat.m < 2 or mat.n < 2:
        raise TooSmall(f"split search needs at least 2x2, got {mat.m}x{mat.n}")
    lo, hi = mat.lower, mat.upper
    lo0, hi0 = lo[0], hi[0]
    for k in range(1, mat.m):
        lok, hik = lo[k], hi[k]
        split = False
        for j in range(mat.n - 1):
            forward = hi0[j] - lok[j] <= lo0[j + 1] - hik[j + 1]
            backward = hi0[j + 1] - lok[j + 1] <= lo0[j] - hik[j]
            if not forward and not backward:
                return Infeasible(j, k)
            if forward != backward:
                split = True
        if split:
            return SplitRow(k)
    return AllSingleSet()


def _identity(k: int) -> tuple[int, ...]:
    return tuple(range(k))


def _finish(mat: IntervalMatrix, pair: PermutationPair):
    permuted = mat.permuted(pair.sigma, pair.pi)
    if is_strong_monge(permuted):
        return pair, permuted
    return None


def permute_special(mat: IntervalMatrix):
    """Special-case algorithm for matrices whose entries all have positive radius.

    Columns are ordered from rows 0 and 1, rows from the first and last column
    of that order; the final strong Monge check decides.  Returns
    ``(PermutationPair, permuted matrix)`` or ``None``.
    """
    if any(a == b for r, s in zip(mat.lower, mat.upper) for a, b in zip(r, s)):
        raise TrivialIntervalPresent("some entry is degenerate; use permute_general")
    m, n = mat.shape
    if m < 2 or n < 2:
        return PermutationPair(_identity(m), _identity(n)), mat
    found = order_from_keys(*_row_pair_keys(mat, 0, 1))
    if found is None:
        return None
    rho, _ = found
    first, last = rho[0], rho[-1]
    lo, hi = mat.lower, mat.upper
    left = [hi[i][first] - lo[i][last] for i in range(m)]
    right = [lo[i][first] - hi[i][last] for i in range(m)]
    found = order_from_keys(left, right)
    if found is None:
        return None
    sigma, _ = found
    return _finish(mat, PermutationPair(sigma, rho, rho))


def permute_general(mat: IntervalMatrix):
    """General algorithm; returns ``(PermutationPair, permuted matrix)`` or ``None``.

    1. find a split row r against row 0 (or stop with YES/NO);
    2. pre-order columns from rows (0, r), giving ambiguity sets;
    3. b, B = sizes of the first and last ambiguity set;
    4. order rows by the aggregated first-block / last-block condition;
    5. order columns from the first and last row of that order;
    6. verify the permuted matrix.
    """
    m, n = mat.shape
    if m < 2 or n < 2:
        return PermutationPair(_identity(m), _identity(n)), mat
    verdict = find_split_row(mat)
    if isinstance(verdict, Infeasible):
        return None
    if isinstance(verdict, AllSingleSet):
        return _finish(mat, PermutationPair(_identity(m), _identity(n)))
    found = order_from_keys(*_row_pair_keys(mat, 0, verdict.row))
    if found is None:
        return None
    rho, parts = found
    b, big_b = parts.first_size, parts.last_size
    head, tail = parts.sets[0], parts.sets[-1]
    lo, hi = mat.lower, mat.upper
    left, right = [], []
    for i in range(m):
        lo_i, hi_i = lo[i], hi[i]
        left.append(big_b * sum(hi_i[j] for j in head) - b * sum(lo_i[j] for j in tail))
        right.append(big_b * sum(lo_i[j] for j in head) - b * sum(hi_i[j] for j in tail))
    found = order_from_keys(left, right)
    if found is None:
        return None
    sigma, _ = found
    found = order_from_keys(*_row_pair_keys(mat, sigma[0], sigma[-1]))
    if found is None:
        return None
    pi, _ = found
    return _finish(mat, PermutationPair(sigma, pi, rho))


def is_monge_permutable_bruteforce(mat: IntervalMatrix) -> Optional[PermutationPair]:
    """Try every row and column order (lexicographic); first strongly Monge one wins."""
    m, n = mat.shape
    if m > BRUTE_FORCE_LIMIT or n > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"{m}x{n} exceeds the {BRUTE_FORCE_LIMIT}x{BRUTE_FORCE_LIMIT} brute-force guard")
    col_orders = list(itertools.permutations(range(n)))
    for sigma in itertools.permutations(range(m)):
        rows_lo = [mat.lower[i] for i in sigma]
        rows_hi = [mat.upper[i] for i in sigma]
        for pi in col_orders:
            ok = True
            for p in range(m - 1):
                h0, h1, l0, l1 = rows_hi[p], rows_hi[p + 1], rows_lo[p], rows_lo[p + 1]
                for q in range(n - 1):
                    a, c = pi[q], pi[q + 1]
                    if h0[a] + h1[c] > l0[c] + l1[a]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return PermutationPair(tuple(sigma), tuple(pi))
    return None


def search_space(m: int, n: int) -> int:
    return math.factorial(m) * math.factorial(n)
