"""Exact rational arithmetic and linear algebra.

Scalars are :class:`fractions.Fraction`.  Matrices are immutable dense grids
(:class:`RationalMatrix`) indexed from 0; index sets (rows of a minor, source
or target vertices) are 1-based, strictly increasing tuples of ints.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotSkewSymmetric,
    OddDimension,
    ParseError,
    SingularMatrix,
)

IndexSet = tuple[int, ...]

_RATIONAL_RE = re.compile(r"\s*(-?\d+)(?:\s*/\s*(\d+))?\s*")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (integers only, ``q > 0``)."""
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {text!r}")
    m = _RATIONAL_RE.fullmatch(text)
    if m is None:
        raise ParseError(f"malformed rational {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def index_set(indices: Iterable[int], size: int | None = None) -> IndexSet:
    """Validate and return a strictly increasing 1-based index tuple."""
    out = tuple(int(i) for i in indices)
    for prev, cur in zip(out, out[1:]):
        if cur <= prev:
            raise ValueError(f"index set must be strictly increasing: {out}")
    if out and (out[0] < 1 or (size is not None and out[-1] > size)):
        raise IndexOutOfRange(f"index set {out} outside 1..{size}")
    return out


class RationalMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        data = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(row) != cols for row in data):
            raise DimensionMismatch("ragged matrix rows")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", data)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> RationalMatrix:
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[RationalMatrix]]) -> RationalMatrix:
        rows = []
        for block_row in blocks:
            height = block_row[0].rows
            if any(b.rows != height for b in block_row):
                raise DimensionMismatch("block heights differ")
            for i in range(height):
                rows.append([x for b in block_row for x in b._data[i]])
        width = sum(b.cols for b in blocks[0]) if blocks else 0
        return cls(rows, cols=width)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexOutOfRange(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = ", ".join(
            "[" + ", ".join(format_rational(x) for x in r) + "]" for r in self._data
        )
        return f"RationalMatrix([{body}])"

    @property
    def T(self) -> RationalMatrix:
        return RationalMatrix(zip(*self._data), cols=self.rows) if self.rows else \
            RationalMatrix.zeros(self.cols, 0)

    def _check_same_shape(self, other: RationalMatrix) -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same_shape(other)
        return RationalMatrix(
            ([a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)),
            cols=self.cols,
        )

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same_shape(other)
        return RationalMatrix(
            ([a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)),
            cols=self.cols,
        )

    def __neg__(self) -> RationalMatrix:
        return RationalMatrix(([-a for a in r] for r in self._data), cols=self.cols)

    def scale(self, c) -> RationalMatrix:
        c = Fraction(c)
        return RationalMatrix(([c * a for a in r] for r in self._data), cols=self.cols)

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        other_cols = list(zip(*other._data)) if other.rows else [()] * other.cols
        return RationalMatrix(
            (
                [sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in other_cols]
                for r in self._data
            ),
            cols=other.cols,
        )

    def is_skew_symmetric(self) -> bool:
        if not self.is_square:
            return False
        d = self._data
        return all(
            d[i][j] == -d[j][i] for i in range(self.rows) for j in range(i, self.rows)
        )


def _require_square(m: RationalMatrix) -> None:
    if not m.is_square:
        raise DimensionMismatch(f"matrix must be square, got {m.rows}x{m.cols}")


def require_skew(s: RationalMatrix) -> None:
    """Raise unless ``s`` is skew-symmetric of even dimension."""
    if not s.is_skew_symmetric():
        raise NotSkewSymmetric("matrix is not skew-symmetric")
    if s.rows % 2:
        raise OddDimension(f"skew matrix has odd dimension {s.rows}")


def mat_det(m: RationalMatrix) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    _require_square(m)
    a = m.tolist()
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            det = -det
        pk = a[k][k]
        det *= pk
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / pk
                row_i, row_k = a[i], a[k]
                for j in range(k + 1, n):
                    row_i[j] -= f * row_k[j]
    return det


def mat_inverse(m: RationalMatrix) -> RationalMatrix:
    """Gauss-Jordan inverse; raises :class:`SingularMatrix` if none exists."""
    _require_square(m)
    n = m.rows
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            raise SingularMatrix("matrix has no inverse over Q")
        a[k], a[pivot] = a[pivot], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return RationalMatrix((r[n:] for r in a), cols=n)


def submatrix(m: RationalMatrix, rows: Sequence[int], cols: Sequence[int]) -> RationalMatrix:
    """Minor keeping the 1-based ``rows`` and ``cols``, in increasing order."""
    rows = index_set(rows)
    cols = index_set(cols)
    if rows and rows[-1] > m.rows or cols and cols[-1] > m.cols:
        raise IndexOutOfRange(f"minor {rows} x {cols} outside {m.rows}x{m.cols}")
    return RationalMatrix(
        ([m.row(i - 1)[j - 1] for j in cols] for i in rows), cols=len(cols)
    )


def perfect_matchings(items: Sequence[int]):
    """Yield every pairing of ``items`` as a list of (i, j) with i < j.

    Pairs come out sorted by their first element.
    """
    items = sorted(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k, partner in enumerate(rest):
        for tail in perfect_matchings(rest[:k] + rest[k + 1:]):
            yield [(first, partner)] + tail


def permutation_sign(seq: Sequence[int]) -> int:
    inversions = sum(1 for x, y in combinations(seq, 2) if x > y)
    return -1 if inversions % 2 else 1


def pfaffian_combinatorial(s: RationalMatrix) -> Fraction:
    """Pfaffian as a signed sum over all perfect matchings (brute force)."""
    require_skew(s)
    total = Fraction(0)
    for matching in perfect_matchings(range(s.rows)):
        word = [x for pair in matching for x in pair]
        term = Fraction(permutation_sign(word))
        for i, j in matching:
            term *= s.row(i)[j]
            if not term:
                break
        total += term
    return total


def pfaffian_elimination(s: RationalMatrix) -> Fraction:
    """Pfaffian by skew-symmetric Gaussian elimination, two rows at a time."""
    require_skew(s)
    a = s.tolist()
    n = len(a)
    pf = Fraction(1)
    for k in range(0, n, 2):
        pivot = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k + 1:
            # symmetric swap of index k+1 and pivot flips the sign
            a[k + 1], a[pivot] = a[pivot], a[k + 1]
            for r in a:
                r[k + 1], r[pivot] = r[pivot], r[k + 1]
            pf = -pf
        p = a[k][k + 1]
        pf *= p
        row0, row1 = a[k], a[k + 1]
        for i in range(k + 2, n):
            for j in range(i + 1, n):
                a[i][j] += (row1[i] * row0[j] - row0[i] * row1[j]) / p
                a[j][i] = -a[i][j]
    return pf


pfaffian = pfaffian_elimination
