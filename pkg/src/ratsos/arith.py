"""Exact rational matrices with fraction-free elimination kernels.

Determinants use Bareiss elimination on a denominator-cleared integer copy,
characteristic polynomials use the Faddeev-LeVerrier recurrence, and linear
solving runs a Bareiss-style row echelon reduction.  Everything is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .poly import UPoly

Rat = Fraction


class DimensionError(ValueError):
    pass


def rat(value) -> Fraction:
    """Coerce an int, Fraction or "p/q" text into a rational; decimals are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    s = str(value).strip()
    if "." in s:
        raise ValueError(f"decimal point forbidden in rational literal {s!r}")
    return Fraction(s)


class Mat:
    """Dense rational matrix stored as a list of rows."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows):
        self.rows = [[rat(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise DimensionError("ragged rows")

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Mat":
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def from_columns(cls, cols) -> "Mat":
        cols = [list(c) for c in cols]
        if not cols:
            return cls([])
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))])

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, key):
        i, j = key
        return self.rows[i][j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.rows[i])

    def col(self, j: int) -> list[Fraction]:
        return [r[j] for r in self.rows]

    def transpose(self) -> "Mat":
        return Mat([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)])

    def trace(self) -> Fraction:
        if not self.is_square:
            raise DimensionError("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), Fraction(0))

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
            bt = other.transpose().rows
            return Mat([[_dot(r, c) for c in bt] for r in self.rows])
        if isinstance(other, (int, Fraction)):
            return Mat([[x * other for x in r] for r in self.rows])
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other: "Mat") -> "Mat":
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DimensionError("shape mismatch")
        return Mat([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (other * -1)

    def matvec(self, v) -> list[Fraction]:
        v = [rat(x) for x in v]
        if len(v) != self.ncols:
            raise DimensionError("vector length mismatch")
        return [_dot(r, v) for r in self.rows]

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.rows == other.rows

    def __repr__(self) -> str:
        return f"Mat({[[str(x) for x in r] for r in self.rows]})"


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _integer_rows(m: Mat):
    """Scale each row to integers; returns (rows of ints, product of the scalings)."""
    rows = []
    scale = Fraction(1)
    for row in m.rows:
        mult = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * mult) for x in row])
        scale *= mult
    return rows, scale


def det(m: Mat) -> Fraction:
    """Exact determinant by fraction-free Bareiss elimination."""
    if not m.is_square:
        raise DimensionError("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return Fraction(1)
    a, scale = _integer_rows(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1]) / scale


def charpoly(m: Mat, sign: str = "plus") -> UPoly:
    """det(M + X*I) for sign="plus", det(M - X*I) for sign="minus".

    Computed exactly by the Faddeev-LeVerrier recurrence; the result has
    degree exactly the dimension of M.
    """
    if not m.is_square:
        raise DimensionError("characteristic polynomial of a non-square matrix")
    if sign not in ("plus", "minus"):
        raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")
    n = m.nrows
    # Faddeev-LeVerrier computes det(X*I - A):  det(M + X*I) = det(X*I - (-M)).
    a = m * -1 if sign == "plus" else m
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = Mat([row[:] for row in a.rows])
    for k in range(1, n + 1):
        if k > 1:
            for i in range(n):
                mk.rows[i][i] += coeffs[n - k + 1]
            mk = a * mk
        coeffs[n - k] = -mk.trace() / k
    if sign == "minus" and n % 2 == 1:
        coeffs = [-c for c in coeffs]
    return UPoly(coeffs)


def _echelon(rows: list[list[Fraction]]):
    """Row echelon form via Bareiss-style updates; returns (rows, pivot columns).

    Row operations only rescale rows, so the row space and the solution set of
    an augmented system are preserved.
    """
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    prev = Fraction(1)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            fi = rows[i][c]
            if fi == 0:
                if prev != 1:
                    for j in range(c + 1, ncols):
                        rows[i][j] = piv * rows[i][j] / prev
                else:
                    for j in range(c + 1, ncols):
                        rows[i][j] = piv * rows[i][j]
            else:
                for j in range(c + 1, ncols):
                    rows[i][j] = (piv * rows[i][j] - fi * rows[r][j]) / prev
                rows[i][c] = Fraction(0)
        prev = piv
        pivots.append(c)
        r += 1
    return rows, pivots


def _back_substitute(rows, pivots, ncols_a, rhs_col, free_values=None):
    """Solve an echelonized [A|b] system; free variables default to zero."""
    x = [Fraction(0)] * ncols_a
    if free_values:
        for j, v in free_values.items():
            x[j] = v
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        row = rows[r]
        acc = row[rhs_col]
        for j in range(c + 1, ncols_a):
            if row[j] != 0:
                acc -= row[j] * x[j]
        x[c] = acc / row[c]
    return x


def solve_linear(a: Mat, b) -> list[Fraction] | None:
    """One exact solution of A x = b, or None when the system is inconsistent."""
    b = [rat(v) for v in b]
    if len(b) != a.nrows:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {a.nrows}")
    aug = [row + [val] for row, val in zip(a.rows, b)]
    if not aug:
        return []
    rows, pivots = _echelon(aug)
    if pivots and pivots[-1] == a.ncols:
        return None
    # rows below the last pivot are entirely zero by construction
    return _back_substitute(rows, pivots, a.ncols, a.ncols)


def affine_solution_set(a: Mat, b):
    """Full solution set of A x = b as (particular, nullspace basis), or None.

    The particular solution sets every free variable to zero; the basis
    vectors each set one free variable to one.
    """
    b = [rat(v) for v in b]
    if len(b) != a.nrows:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {a.nrows}")
    n = a.ncols
    if a.nrows == 0:
        return [Fraction(0)] * n, [_unit(n, j) for j in range(n)]
    aug = [row + [val] for row, val in zip(a.rows, b)]
    rows, pivots = _echelon(aug)
    if pivots and pivots[-1] == n:
        return None
    particular = _back_substitute(rows, pivots, n, n)
    pivot_set = set(pivots)
    basis = []
    zero_rhs = [r[:n] + [Fraction(0)] for r in rows]
    for j in range(n):
        if j in pivot_set:
            continue
        vec = _back_substitute(zero_rhs, pivots, n, n, free_values={j: Fraction(1)})
        basis.append(vec)
    return particular, basis


def _unit(n: int, j: int) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[j] = Fraction(1)
    return v
