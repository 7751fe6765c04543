"""Exact interval scalars and matrices.

Every endpoint is an exact rational: a Python ``int`` when integral, otherwise a
``fractions.Fraction``.  Keeping integral values as ``int`` is purely a speed
measure; both types compare and combine exactly.

Matrices are stored as two bound grids (``lower``/``upper``) rather than a grid
of :class:`Interval` objects, since almost every algorithm walks one bound at a
time.  Indices are 0-based internally; user-facing output is 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

from .errors import (
    DimensionMismatch,
    DivisionByIntervalContainingZero,
    MatrixFormatError,
)

Rational = Union[int, Fraction]
Grid = tuple[tuple[Rational, ...], ...]


def rational(value) -> Rational:
    """Convert ``value`` to an exact rational.

    Strings may be integers, decimals (``"0.1"``) or ratios (``"1/3"``).
    Floats are read through their shortest decimal repr, so ``0.1`` becomes
    exactly 1/10 rather than the nearest binary fraction.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        q = value
    elif isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"non-finite number {value!r}")
        q = Fraction(repr(value))
    elif isinstance(value, Decimal):
        if not value.is_finite():
            raise ValueError(f"non-finite number {value!r}")
        q = Fraction(value)
    elif isinstance(value, str):
        text = value.strip()
        try:
            q = Fraction(text)
        except (ValueError, ZeroDivisionError):
            try:
                q = Fraction(Decimal(text))
            except (InvalidOperation, ValueError):
                raise ValueError(f"cannot parse {value!r} as a rational number") from None
    elif isinstance(value, _RationalABC):
        q = Fraction(value.numerator, value.denominator)
    else:
        raise TypeError(f"cannot convert {type(value).__name__} to a rational number")
    return q.numerator if q.denominator == 1 else q


def qdiv(a: Rational, b: Rational) -> Rational:
    """Exact quotient, kept as ``int`` when integral."""
    q = Fraction(a) / b
    return q.numerator if q.denominator == 1 else q


def format_rational(q: Rational) -> Union[int, str]:
    """JSON-friendly exact rendering: ints stay ints, terminating decimals become
    decimal strings and everything else becomes ``"p/q"``."""
    if isinstance(q, int):
        return q
    if q.denominator == 1:
        return q.numerator
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{q.numerator}/{q.denominator}"
    k = max(twos, fives)
    scaled = abs(q.numerator) * 10**k // q.denominator
    digits = str(scaled).rjust(k + 1, "0")
    sign = "-" if q < 0 else ""
    return f"{sign}{digits[:-k]}.{digits[-k:]}"


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed interval ``[lo, hi]``; ``lo == hi`` represents a real number."""

    lo: Rational
    hi: Rational

    def __post_init__(self):
        lo, hi = rational(self.lo), rational(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x) -> Interval:
        return cls(x, x)

    @property
    def center(self) -> Rational:
        return qdiv(self.lo + self.hi, 2)

    @property
    def radius(self) -> Rational:
        return qdiv(self.hi - self.lo, 2)

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other: Interval) -> Interval:
        return interval_add(self, other)

    def __sub__(self, other: Interval) -> Interval:
        return interval_sub(self, other)

    def __mul__(self, other: Interval) -> Interval:
        return interval_mul(self, other)

    def __truediv__(self, other: Interval) -> Interval:
        return interval_div(self, other)

    def intersect(self, other: Interval) -> Interval | None:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else None

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


def interval_add(a: Interval, b: Interval) -> Interval:
    return Interval(a.lo + b.lo, a.hi + b.hi)


def interval_sub(a: Interval, b: Interval) -> Interval:
    return Interval(a.lo - b.hi, a.hi - b.lo)


def interval_mul(a: Interval, b: Interval) -> Interval:
    products = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return Interval(min(products), max(products))


def interval_div(a: Interval, b: Interval) -> Interval:
    if b.lo <= 0 <= b.hi:
        raise DivisionByIntervalContainingZero(f"divisor {b!r} contains zero")
    quotients = [qdiv(x, y) for x in (a.lo, a.hi) for y in (b.lo, b.hi)]
    return Interval(min(quotients), max(quotients))


def _grid(rows: Iterable[Iterable], what: str = "matrix") -> Grid:
    grid = tuple(tuple(rational(x) for x in row) for row in rows)
    if not grid or not grid[0]:
        raise MatrixFormatError(f"{what} must have at least one row and one column")
    width = len(grid[0])
    for i, row in enumerate(grid):
        if len(row) != width:
            raise MatrixFormatError(
                f"{what}: row {i + 1} has {len(row)} entries, expected {width}"
            )
    return grid


def _check_same_shape(a, b):
    if (a.m, a.n) != (b.m, b.n):
        raise DimensionMismatch(f"shapes {a.m}x{a.n} and {b.m}x{b.n} differ")


@dataclass(frozen=True)
class RealMatrix:
    """Dense m x n matrix of exact rationals."""

    entries: Grid

    def __init__(self, entries: Iterable[Iterable]):
        object.__setattr__(self, "entries", _grid(entries))

    @classmethod
    def _wrap(cls, grid: Grid) -> RealMatrix:
        # trusted constructor for already-normalised grids
        obj = object.__new__(cls)
        object.__setattr__(obj, "entries", grid)
        return obj

    @classmethod
    def zeros(cls, m: int, n: int) -> RealMatrix:
        return cls._wrap(tuple((0,) * n for _ in range(m)))

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.m, self.n

    def __getitem__(self, ij: tuple[int, int]) -> Rational:
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[Rational]]:
        return [list(row) for row in self.entries]

    def transpose(self) -> RealMatrix:
        return RealMatrix._wrap(tuple(zip(*self.entries)))

    def __add__(self, other: RealMatrix) -> RealMatrix:
        _check_same_shape(self, other)
        return RealMatrix._wrap(
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.entries, other.entries))
        )

    def __sub__(self, other: RealMatrix) -> RealMatrix:
        _check_same_shape(self, other)
        return RealMatrix._wrap(
            tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.entries, other.entries))
        )

    def scale(self, alpha) -> RealMatrix:
        alpha = rational(alpha)
        return RealMatrix._wrap(tuple(tuple(alpha * x for x in row) for row in self.entries))

    def permuted(self, rows: Sequence[int], cols: Sequence[int]) -> RealMatrix:
        """``result[p][q] = self[rows[p]][cols[q]]`` (0-based orders)."""
        return RealMatrix._wrap(tuple(tuple(self.entries[r][c] for c in cols) for r in rows))

    def as_interval(self) -> IntervalMatrix:
        return IntervalMatrix._wrap(self.entries, self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"RealMatrix([{body}])"


@dataclass(frozen=True)
class IntervalMatrix:
    """m x n interval matrix, the set of real matrices between two bound matrices."""

    lower: Grid
    upper: Grid

    def __init__(self, lower: Iterable[Iterable], upper: Iterable[Iterable] | None = None):
        lo = _grid(lower, "lower")
        hi = lo if upper is None else _grid(upper, "upper")
        if len(lo) != len(hi) or len(lo[0]) != len(hi[0]):
            raise MatrixFormatError(
                f"lower is {len(lo)}x{len(lo[0])} but upper is {len(hi)}x{len(hi[0])}"
            )
        for i, (r, s) in enumerate(zip(lo, hi)):
            for j, (a, b) in enumerate(zip(r, s)):
                if a > b:
                    raise MatrixFormatError(
                        f"lower > upper at position ({i + 1},{j + 1}): {a} > {b}"
                    )
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def _wrap(cls, lower: Grid, upper: Grid) -> IntervalMatrix:
        obj = object.__new__(cls)
        object.__setattr__(obj, "lower", lower)
        object.__setattr__(obj, "upper", upper)
        return obj

    @classmethod
    def from_intervals(cls, rows: Iterable[Iterable[Interval | Sequence]]) -> IntervalMatrix:
        """Build from nested entries that are :class:`Interval` objects,
        ``(lo, hi)`` pairs, or plain numbers (degenerate)."""
        lower, upper = [], []
        for row in rows:
            lr, ur = [], []
            for e in row:
                if isinstance(e, Interval):
                    lr.append(e.lo)
                    ur.append(e.hi)
                elif isinstance(e, (tuple, list)):
                    lr.append(e[0])
                    ur.append(e[1])
                else:
                    lr.append(e)
                    ur.append(e)
            lower.append(lr)
            upper.append(ur)
        return cls(lower, upper)

    @classmethod
    def from_center_radius(cls, center: Iterable[Iterable], radius: Iterable[Iterable]) -> IntervalMatrix:
        c, r = _grid(center), _grid(radius)
        return cls(
            [[x - d for x, d in zip(cr, rr)] for cr, rr in zip(c, r)],
            [[x + d for x, d in zip(cr, rr)] for cr, rr in zip(c, r)],
        )

    @property
    def m(self) -> int:
        return len(self.lower)

    @property
    def n(self) -> int:
        return len(self.lower[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.m, self.n

    def __getitem__(self, ij: tuple[int, int]) -> Interval:
        i, j = ij
        return Interval(self.lower[i][j], self.upper[i][j])

    @property
    def entries(self) -> list[list[Interval]]:
        return [[Interval(a, b) for a, b in zip(r, s)] for r, s in zip(self.lower, self.upper)]

    def lower_matrix(self) -> RealMatrix:
        return RealMatrix._wrap(self.lower)

    def upper_matrix(self) -> RealMatrix:
        return RealMatrix._wrap(self.upper)

    def center(self) -> RealMatrix:
        return RealMatrix._wrap(
            tuple(tuple(qdiv(a + b, 2) for a, b in zip(r, s)) for r, s in zip(self.lower, self.upper))
        )

    def radius(self) -> RealMatrix:
        return RealMatrix._wrap(
            tuple(tuple(qdiv(b - a, 2) for a, b in zip(r, s)) for r, s in zip(self.lower, self.upper))
        )

    @property
    def is_degenerate(self) -> bool:
        return self.lower == self.upper

    def contains(self, x: RealMatrix) -> bool:
        """Entrywise membership of a real matrix."""
        if x.shape != self.shape:
            return False
        return all(
            a <= v <= b
            for r, s, xs in zip(self.lower, self.upper, x.entries)
            for a, b, v in zip(r, s, xs)
        )

    def transpose(self) -> IntervalMatrix:
        return IntervalMatrix._wrap(tuple(zip(*self.lower)), tuple(zip(*self.upper)))

    def permuted(self, rows: Sequence[int], cols: Sequence[int]) -> IntervalMatrix:
        """``result[p][q] = self[rows[p]][cols[q]]`` (0-based orders)."""
        lo, hi = self.lower, self.upper
        return IntervalMatrix._wrap(
            tuple(tuple(lo[r][c] for c in cols) for r in rows),
            tuple(tuple(hi[r][c] for c in cols) for r in rows),
        )

    def __add__(self, other: IntervalMatrix) -> IntervalMatrix:
        _check_same_shape(self, other)
        return IntervalMatrix._wrap(
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.lower, other.lower)),
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.upper, other.upper)),
        )

    def scale(self, alpha) -> IntervalMatrix:
        """Multiply by a real scalar (bounds swap for negative ``alpha``)."""
        alpha = rational(alpha)
        lo = tuple(tuple(alpha * x for x in row) for row in self.lower)
        hi = tuple(tuple(alpha * x for x in row) for row in self.upper)
        return IntervalMatrix._wrap(lo, hi) if alpha >= 0 else IntervalMatrix._wrap(hi, lo)

    def interval_scale(self, alpha: Interval) -> IntervalMatrix:
        """Entrywise ``alpha * m_ij`` with interval multiplication."""
        return IntervalMatrix.from_intervals(
            [[interval_mul(alpha, e) for e in row] for row in self.entries]
        )

    def __repr__(self):
        body = "; ".join(
            " ".join(f"[{a},{b}]" if a != b else str(a) for a, b in zip(r, s))
            for r, s in zip(self.lower, self.upper)
        )
        return f"IntervalMatrix([{body}])"


@dataclass(frozen=True)
class EmptyAt:
    """Verdict of an intersection that is empty at some positions (0-based)."""

    positions: tuple[tuple[int, int], ...]

    def one_based(self) -> list[tuple[int, int]]:
        return [(i + 1, j + 1) for i, j in self.positions]


def matrix_intersection(a: IntervalMatrix, b: IntervalMatrix) -> IntervalMatrix | EmptyAt:
    _check_same_shape(a, b)
    lo = tuple(tuple(max(x, y) for x, y in zip(r, s)) for r, s in zip(a.lower, b.lower))
    hi = tuple(tuple(min(x, y) for x, y in zip(r, s)) for r, s in zip(a.upper, b.upper))
    empty = tuple(
        (i, j)
        for i, (r, s) in enumerate(zip(lo, hi))
        for j, (x, y) in enumerate(zip(r, s))
        if x > y
    )
    if empty:
        return EmptyAt(empty)
    return IntervalMatrix._wrap(lo, hi)


def union_envelope(a: IntervalMatrix, b: IntervalMatrix) -> IntervalMatrix:
    _check_same_shape(a, b)
    return IntervalMatrix._wrap(
        tuple(tuple(min(x, y) for x, y in zip(r, s)) for r, s in zip(a.lower, b.lower)),
        tuple(tuple(max(x, y) for x, y in zip(r, s)) for r, s in zip(a.upper, b.upper)),
    )


def corner_matrices(mat: IntervalMatrix) -> tuple[RealMatrix, RealMatrix]:
    """Return ``(up, down)``.

    ``up`` takes the upper bound where i+j is even (1-based, so also 0-based)
    and the lower bound where it is odd; ``down`` is the opposite selection.
    """
    lo, hi = mat.lower, mat.upper
    up = tuple(
        tuple(hi[i][j] if (i + j) % 2 == 0 else lo[i][j] for j in range(mat.n))
        for i in range(mat.m)
    )
    down = tuple(
        tuple(lo[i][j] if (i + j) % 2 == 0 else hi[i][j] for j in range(mat.n))
        for i in range(mat.m)
    )
    return RealMatrix._wrap(up), RealMatrix._wrap(down)


# --- JSON matrix documents -------------------------------------------------


def _json_grid(grid: Grid) -> list[list]:
    return [[format_rational(x) for x in row] for row in grid]


def matrix_to_dict(mat: IntervalMatrix | RealMatrix) -> dict:
    if isinstance(mat, RealMatrix):
        return {"rows": mat.m, "cols": mat.n, "entries": _json_grid(mat.entries)}
    if mat.is_degenerate:
        return {"rows": mat.m, "cols": mat.n, "entries": _json_grid(mat.lower)}
    return {
        "rows": mat.m,
        "cols": mat.n,
        "lower": _json_grid(mat.lower),
        "upper": _json_grid(mat.upper),
    }


def _parse_cells(raw, key: str) -> list[list[Rational]]:
    if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
        raise MatrixFormatError(f'"{key}" must be a list of rows')
    out = []
    for i, row in enumerate(raw):
        parsed = []
        for j, x in enumerate(row):
            try:
                parsed.append(rational(x))
            except (TypeError, ValueError) as exc:
                raise MatrixFormatError(f'"{key}" entry ({i + 1},{j + 1}): {exc}') from None
        out.append(parsed)
    return out


def matrix_from_dict(doc: dict) -> IntervalMatrix:
    """Parse a matrix document; real matrices come back as degenerate interval matrices."""
    if not isinstance(doc, dict):
        raise MatrixFormatError("matrix document must be a JSON object")
    if "entries" in doc:
        lower = upper = _parse_cells(doc["entries"], "entries")
    elif "lower" in doc and "upper" in doc:
        lower = _parse_cells(doc["lower"], "lower")
        upper = _parse_cells(doc["upper"], "upper")
    else:
        raise MatrixFormatError('expected "entries" or both "lower" and "upper"')
    mat = IntervalMatrix(lower, upper)
    for key, actual in (("rows", mat.m), ("cols", mat.n)):
        if key in doc and doc[key] != actual:
            raise MatrixFormatError(f'"{key}" says {doc[key]} but the data has {actual}')
    return mat


def loads_matrix(text: str) -> IntervalMatrix:
    try:
        doc = json.loads(text, parse_float=str)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(
            f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    return matrix_from_dict(doc)


def dumps_matrix(mat: IntervalMatrix | RealMatrix) -> str:
    return json.dumps(matrix_to_dict(mat))
