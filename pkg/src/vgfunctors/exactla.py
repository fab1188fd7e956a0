"""Exact linear algebra over the rationals.

Everything here works with :class:`fractions.Fraction` entries, so products,
inverses, kernels and cokernels are computed without rounding. Matrices may
have zero rows or zero columns; those stand for maps out of or into the zero
vector space.
"""

from __future__ import annotations

import math
from fractions import Fraction
from operator import mul
from typing import Iterable, Sequence


class LinAlgError(ValueError):
    pass


class NotSquare(LinAlgError):
    pass


class Singular(LinAlgError):
    pass


class ShapeMismatch(LinAlgError):
    pass


class Inconsistent(LinAlgError):
    """Raised by :meth:`Matrix.solve` when the system has no solution."""


def parse_rational(text) -> Fraction:
    """Parse ``"a"`` or ``"a/b"`` (ints are accepted too)."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    s = text.strip()
    if not s or any(c in s for c in ".eE "):
        raise ValueError(f"not a rational: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _integer_form(data) -> tuple[int, list[tuple[int, ...]]]:
    den = math.lcm(*(x.denominator for row in data for x in row)) if data else 1
    return den, [tuple(x.numerator * (den // x.denominator) for x in row) for row in data]


class Matrix:
    """Immutable dense matrix with ``Fraction`` entries."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Sequence] = (), cols: int | None = None):
        rows = tuple(tuple(x if type(x) is Fraction else Fraction(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != cols:
                raise ShapeMismatch("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple, cols: int) -> Matrix:
        m = cls.__new__(cls)
        m.rows, m.cols, m._data, m._hash = len(rows), cols, rows, None
        return m

    # construction helpers

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def scalar(cls, n: int, value) -> Matrix:
        return cls([[value if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def diag(cls, values: Sequence) -> Matrix:
        return cls.block_diag([cls([[v]]) for v in values])

    @classmethod
    def block_diag(cls, blocks: Sequence[Matrix]) -> Matrix:
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[Fraction(0)] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b._data[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls(out, cols=cols)

    @classmethod
    def hstack(cls, blocks: Sequence[Matrix], rows: int | None = None) -> Matrix:
        if not blocks:
            return cls.zeros(rows or 0, 0)
        n = blocks[0].rows
        if any(b.rows != n for b in blocks):
            raise ShapeMismatch("hstack: row counts differ")
        data = [sum((list(b._data[i]) for b in blocks), []) for i in range(n)]
        return cls(data, cols=sum(b.cols for b in blocks))

    @classmethod
    def vstack(cls, blocks: Sequence[Matrix], cols: int | None = None) -> Matrix:
        if not blocks:
            return cls.zeros(0, cols or 0)
        n = blocks[0].cols
        if any(b.cols != n for b in blocks):
            raise ShapeMismatch("vstack: column counts differ")
        return cls([row for b in blocks for row in b._data], cols=n)

    # basic protocol

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, self._data))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(
            "[" + ", ".join(format_rational(x) for x in row) + "]" for row in self._data
        )
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    # arithmetic

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        # clear denominators so the inner products run on plain integers
        da, A = _integer_form(self._data)
        db, B = _integer_form(other._data)
        den = da * db
        bcols = list(zip(*B)) if other.rows else [()] * other.cols
        data = tuple(
            tuple(Fraction(sum(map(mul, row, col)), den) for col in bcols) for row in A
        )
        return Matrix._raw(data, other.cols)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            cols=self.cols,
        )

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self._data], cols=self.cols)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def __mul__(self, c) -> Matrix:
        c = Fraction(c)
        return Matrix([[c * a for a in r] for r in self._data], cols=self.cols)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Matrix:
        if not self.is_square():
            raise NotSquare("power of a non-square matrix")
        base = self if k >= 0 else self.invert()
        out = Matrix.identity(self.rows)
        for _ in range(abs(k)):
            out = out @ base
        return out

    @property
    def T(self) -> Matrix:
        return Matrix([list(c) for c in zip(*self._data)] if self.rows else
                      [[] for _ in range(self.cols)], cols=self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix([[self._data[i][j] for j in cols] for i in rows], cols=len(cols))

    # predicates

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_identity(self) -> bool:
        return self.is_square() and all(
            x == (i == j) for i, r in enumerate(self._data) for j, x in enumerate(r)
        )

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    # elimination

    def rref(self) -> tuple[Matrix, tuple[int, ...]]:
        """Reduced row echelon form and pivot columns.

        Pivoting is deterministic: leftmost nonzero column, topmost usable row.
        """
        a = [list(r) for r in self._data]
        pivots = []
        r = 0
        for c in range(self.cols):
            p = next((i for i in range(r, self.rows) if a[i][c] != 0), None)
            if p is None:
                continue
            a[r], a[p] = a[p], a[r]
            inv = 1 / a[r][c]
            a[r] = [x * inv if x else x for x in a[r]]
            support = [j for j, y in enumerate(a[r]) if y]
            for i in range(self.rows):
                if i != r and a[i][c] != 0:
                    f, row = a[i][c], a[i]
                    for j in support:
                        row[j] -= f * a[r][j]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Matrix(a, cols=self.cols), tuple(pivots)

    def rank(self) -> int:
        # fraction-free elimination on the integer form; each row is kept primitive
        _, rows = _integer_form(self._data)
        rows = [list(r) for r in rows if any(r)]
        rank = 0
        for c in range(self.cols):
            p = next((i for i, r in enumerate(rows) if r[c]), None)
            if p is None:
                continue
            piv = rows.pop(p)
            rank += 1
            for i, r in enumerate(rows):
                if r[c]:
                    new = [piv[c] * x - r[c] * y for x, y in zip(r, piv)]
                    g = math.gcd(*new)
                    rows[i] = [x // g for x in new] if g > 1 else new
            rows = [r for r in rows if any(r)]
            if not rows:
                break
        return rank

    def det(self) -> Fraction:
        if not self.is_square():
            raise NotSquare("determinant of a non-square matrix")
        a = [list(r) for r in self._data]
        n = self.rows
        d = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if a[i][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                d = -d
            d *= a[c][c]
            for i in range(c + 1, n):
                if a[i][c] != 0:
                    f = a[i][c] / a[c][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return d

    def invert(self) -> Matrix:
        return invert(self)

    def solve(self, rhs: Matrix) -> Matrix:
        """Return ``X`` with ``self @ X == rhs``.

        When the solution is not unique the free variables are set to zero.
        Raises :class:`Inconsistent` if there is no solution.
        """
        if rhs.rows != self.rows:
            raise ShapeMismatch(f"solve: {self.shape} against {rhs.shape}")
        aug = Matrix.hstack([self, rhs]) if self.rows else Matrix.zeros(0, self.cols + rhs.cols)
        red, pivots = aug.rref()
        n = self.cols
        out = [[Fraction(0)] * rhs.cols for _ in range(n)]
        for i, c in enumerate(pivots):
            if c >= n:
                raise Inconsistent("linear system has no solution")
            out[c] = list(red.row(i)[n:])
        return Matrix(out, cols=rhs.cols)


def invert(m: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination."""
    if not m.is_square():
        raise NotSquare(f"cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    red, pivots = Matrix.hstack([m, Matrix.identity(n)]).rref() if n else (m, ())
    if n and pivots[:n] != tuple(range(n)):
        raise Singular("matrix is singular")
    return red.submatrix(range(n), range(n, 2 * n)) if n else m


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of the null space, one per free column of the rref."""
    red, pivots = m.rref()
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i, f]
        basis.append(v)
    if not basis:
        return Matrix.zeros(m.cols, 0)
    return Matrix(basis).T


def cokernel_projection(m: Matrix) -> tuple[int, Matrix]:
    """A full-row-rank ``P`` with ``P @ m == 0`` and ``P.rows == m.rows - rank(m)``.

    The rows of ``P`` are a basis of the left null space of ``m``, so ``P``
    realises the quotient ``target / image(m)``.
    """
    left = kernel_basis(m.T).T
    return left.rows, left


def image_basis(m: Matrix) -> Matrix:
    """Pivot columns of ``m``: a basis of its column space."""
    _, pivots = m.rref()
    return m.submatrix(range(m.rows), pivots)
