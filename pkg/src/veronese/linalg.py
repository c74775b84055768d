"""Dense exact linear algebra over the rationals.

Scalars are ``fractions.Fraction`` (always in lowest terms, positive
denominator).  Everything downstream -- splitting types, dual identities,
slope tables -- is decided by exact ranks and kernels, so no floating
point ever enters.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction


def _bitsize(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


class QMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, entries: Iterable[Sequence], cols: int | None = None):
        """Rows of rationals; `cols` is required to disambiguate a matrix
        with zero rows but a positive number of columns."""
        data = tuple(tuple(Fraction(x) for x in row) for row in entries)
        self.data = data
        self.rows = len(data)
        self.cols = len(data[0]) if data else (cols or 0)
        for row in data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")

    @classmethod
    def zero(cls, rows: int, cols: int) -> "QMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, entries: Sequence) -> "QMatrix":
        return cls([[x] for x in entries])

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash(self.data)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"QMatrix({self.rows}x{self.cols}: {body})"

    def transpose(self) -> "QMatrix":
        return QMatrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __mul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.cols} vs {other.rows}")
        ot = other.data
        out = []
        for i in range(self.rows):
            srow = self.data[i]
            orow = []
            for j in range(other.cols):
                acc = Fraction(0)
                for k in range(self.cols):
                    a = srow[k]
                    if a:
                        acc += a * ot[k][j]
                orow.append(acc)
            out.append(orow)
        return QMatrix(out, cols=other.cols)

    def scale(self, c) -> "QMatrix":
        c = Fraction(c)
        return QMatrix([[c * x for x in row] for row in self.data], cols=self.cols)

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return QMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ],
            cols=self.cols,
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + other.scale(-1)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def rref(self) -> tuple["QMatrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns.

        Pivot selection takes the nonzero candidate of smallest combined
        numerator/denominator bit size, which keeps intermediate entries
        small on the integer matrices this package produces.
        """
        m = [list(row) for row in self.data]
        rows, cols = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            best, best_sz = -1, None
            for i in range(r, rows):
                if m[i][c]:
                    sz = _bitsize(m[i][c])
                    if best_sz is None or sz < best_sz:
                        best, best_sz = i, sz
            if best < 0:
                continue
            m[r], m[best] = m[best], m[r]
            piv = m[r][c]
            if piv != 1:
                inv = 1 / piv
                m[r] = [x * inv for x in m[r]]
            prow = m[r]
            for i in range(rows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    mi = m[i]
                    for j in range(c, cols):
                        if prow[j]:
                            mi[j] -= f * prow[j]
            pivots.append(c)
            r += 1
        return QMatrix(m, cols=cols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list["QMatrix"]:
        """Basis of the right null space, as column vectors.

        len(result) == cols - rank; each v satisfies self * v == 0.
        """
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for fc in free:
            v = [Fraction(0)] * self.cols
            v[fc] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -red.data[r][fc]
            basis.append(QMatrix.column(v))
        return basis


class RowSpan:
    """Incrementally built row space with exact membership tests.

    Vectors are reduced against the stored echelonized rows; ``add``
    reports whether the vector enlarged the span.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: list[list[Fraction]] = []
        self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def add(self, vec: Sequence) -> bool:
        v = [Fraction(x) for x in vec]
        if len(v) != self.dim:
            raise ValueError("dimension mismatch")
        for row, p in zip(self._rows, self._pivots):
            if v[p]:
                f = v[p]
                for j in range(p, self.dim):
                    if row[j]:
                        v[j] -= f * row[j]
        for p in range(self.dim):
            if v[p]:
                inv = 1 / v[p]
                v = [x * inv for x in v]
                self._rows.append(v)
                self._pivots.append(p)
                return True
        return False
