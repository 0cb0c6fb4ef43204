"""Exact quadratic-form algebra over the rationals.

Congruence diagonalization M = P^T diag(D) P by square completion with a
hyperbolic split on zero diagonals, rank and signature (with an independent
second method through the characteristic polynomial and sign counting), psd
tests, and weighted-square certificates extracted from a diagonalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .arith import Mat, charpoly, det, rat
from .poly import MPoly, sign_changes


class CertificateError(ValueError):
    pass


class SymMat:
    """Symmetric rational matrix stored as its upper triangle."""

    __slots__ = ("dim", "_upper")

    def __init__(self, dim: int, upper):
        self.dim = dim
        self._upper = [rat(x) for x in upper]
        if len(self._upper) != dim * (dim + 1) // 2:
            raise ValueError("upper triangle has wrong length")

    @classmethod
    def from_rows(cls, rows) -> "SymMat":
        rows = [[rat(x) for x in r] for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix is not square")
        upper = []
        for i in range(n):
            for j in range(i, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("matrix is not symmetric")
                upper.append(rows[i][j])
        return cls(n, upper)

    @classmethod
    def zeros(cls, dim: int) -> "SymMat":
        return cls(dim, [0] * (dim * (dim + 1) // 2))

    @classmethod
    def identity(cls, dim: int) -> "SymMat":
        m = cls.zeros(dim)
        for i in range(dim):
            m._upper[m._index(i, i)] = Fraction(1)
        return m

    def _index(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return i * self.dim - i * (i - 1) // 2 + (j - i)

    def __getitem__(self, key) -> Fraction:
        i, j = key
        return self._upper[self._index(i, j)]

    def rows(self) -> list[list[Fraction]]:
        return [[self[i, j] for j in range(self.dim)] for i in range(self.dim)]

    def to_mat(self) -> Mat:
        return Mat(self.rows())

    def __eq__(self, other) -> bool:
        return isinstance(other, SymMat) and self.dim == other.dim and self._upper == other._upper

    def __repr__(self) -> str:
        return f"SymMat.from_rows({[[str(x) for x in r] for r in self.rows()]})"


@dataclass
class DiagCongruence:
    """Invertible P and diagonal D with M = P^T diag(D) P.

    The rows of P are the coefficient vectors of linearly independent linear
    forms; D lists the corresponding weights (zeros included).
    """

    p: Mat
    d: list[Fraction]

    def reassemble(self) -> SymMat:
        n = self.p.nrows
        rows = [
            [
                sum((self.d[k] * self.p[k, i] * self.p[k, j] for k in range(n)), Fraction(0))
                for j in range(n)
            ]
            for i in range(n)
        ]
        return SymMat.from_rows(rows)


def diagonalize(m: SymMat) -> DiagCongruence:
    """Congruence-diagonalize a symmetric matrix as a quadratic form.

    Pivots on the first nonzero diagonal entry (completing the square); when
    every active diagonal entry is zero, the first nonzero off-diagonal pair
    (i, j) is handled by the hyperbolic split
    h1*h2 = ((h1+h2)/2)^2 - ((h1-h2)/2)^2.
    """
    n = m.dim
    a = [[m[i, j] for j in range(n)] for i in range(n)]
    active = list(range(n))
    p_rows: list[list[Fraction]] = []
    d: list[Fraction] = []

    def unit(i):
        row = [Fraction(0)] * n
        row[i] = Fraction(1)
        return row

    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is not None:
            rest = [k for k in active if k != piv]
            aii = a[piv][piv]
            ell = unit(piv)
            for k in rest:
                ell[k] = a[piv][k] / aii
            for k in rest:
                for l in rest:
                    if k <= l:
                        upd = a[k][l] - a[piv][k] * a[piv][l] / aii
                        a[k][l] = a[l][k] = upd
            p_rows.append(ell)
            d.append(aii)
            active = rest
            continue
        pair = next(
            ((i, j) for i, j in combinations(active, 2) if a[i][j] != 0),
            None,
        )
        if pair is None:
            # remaining form is identically zero
            for k in active:
                p_rows.append(unit(k))
                d.append(Fraction(0))
            break
        i, j = pair
        rest = [k for k in active if k not in (i, j)]
        c = a[i][j]
        h1 = unit(i)
        h2 = unit(j)
        for k in rest:
            h1[k] = a[j][k] / c
            h2[k] = a[i][k] / c
        p_rows.append([x + y for x, y in zip(h1, h2)])
        d.append(c / 2)
        p_rows.append([x - y for x, y in zip(h1, h2)])
        d.append(-c / 2)
        for k in rest:
            for l in rest:
                if k <= l:
                    upd = a[k][l] - (a[j][k] * a[i][l] + a[j][l] * a[i][k]) / c
                    a[k][l] = a[l][k] = upd
        active = rest
    return DiagCongruence(Mat(p_rows), d)


def inertia(m: SymMat) -> tuple[int, int, int]:
    """(#positive, #negative, #zero) entries of any congruence diagonal of m."""
    d = diagonalize(m).d
    pos = sum(1 for x in d if x > 0)
    neg = sum(1 for x in d if x < 0)
    return pos, neg, len(d) - pos - neg


def signature(m: SymMat) -> int:
    pos, neg, _ = inertia(m)
    return pos - neg


def rank(m: SymMat) -> int:
    pos, neg, _ = inertia(m)
    return pos + neg


def signature_via_descartes(m: SymMat) -> int:
    """Signature as sigma(h) - sigma(h(-X)) for h = det(M - X*I).

    h is real-rooted, so Descartes' rule counts its positive and negative
    roots exactly; the difference is the signature.  Independent of
    :func:`diagonalize`.
    """
    if m.dim == 0:
        return 0
    h = charpoly(m.to_mat(), "minus")
    return sign_changes(h) - sign_changes(h.compose_neg())


def is_psd(m: SymMat) -> bool:
    """Positive semidefiniteness: all coefficients of det(M + X*I) nonnegative."""
    return all(c >= 0 for c in charpoly(m.to_mat(), "plus").coeffs)


def is_psd_via_diagonal(m: SymMat) -> bool:
    """psd iff a congruence diagonal has no negative entry."""
    return all(x >= 0 for x in diagonalize(m).d)


def is_psd_via_minors(m: SymMat) -> bool:
    """psd iff every principal minor (all index subsets) is nonnegative."""
    full = m.to_mat()
    for size in range(1, m.dim + 1):
        for subset in combinations(range(m.dim), size):
            sub = Mat([[full[i, j] for j in subset] for i in subset])
            if det(sub) < 0:
                return False
    return True


@dataclass(frozen=True)
class SosCert:
    """Weighted-square certificate: a list of (nonnegative weight, polynomial)."""

    terms: tuple

    def weights_ok(self) -> bool:
        return all(w >= 0 for w, _ in self.terms)

    def expand(self, zero):
        """Sum of w * p^2 over the terms, started from the given zero polynomial."""
        acc = zero
        for w, p in self.terms:
            acc = acc + p * p * w
        return acc

    def __len__(self) -> int:
        return len(self.terms)


def weighted_square_decomposition(m: SymMat, monomials) -> SosCert:
    """Write v^T M v as a weighted sum of squares, v the given monomial vector.

    Requires m psd; the number of squares equals rank(m).  The k-th square is
    the k-th row of the diagonalizing P evaluated on the monomials.
    """
    monomials = [tuple(a) for a in monomials]
    if len(monomials) != m.dim:
        raise ValueError(f"monomial vector has length {len(monomials)}, expected {m.dim}")
    if not is_psd(m):
        raise CertificateError("matrix is not positive semidefinite")
    if m.dim == 0:
        return SosCert(())
    nvars = len(monomials[0])
    cong = diagonalize(m)
    terms = []
    for k, weight in enumerate(cong.d):
        if weight == 0:
            continue
        poly_terms: dict = {}
        for i, alpha in enumerate(monomials):
            c = cong.p[k, i]
            if c != 0:
                poly_terms[alpha] = poly_terms.get(alpha, Fraction(0)) + c
        terms.append((weight, MPoly(nvars, poly_terms)))
    return SosCert(tuple(terms))


def gram_product(m: SymMat, monomials) -> MPoly:
    """The polynomial v^T M v for the monomial vector v given by exponent tuples."""
    monomials = [tuple(a) for a in monomials]
    if len(monomials) != m.dim:
        raise ValueError(f"monomial vector has length {len(monomials)}, expected {m.dim}")
    nvars = len(monomials[0]) if monomials else 0
    terms: dict = {}
    for i in range(m.dim):
        for j in range(m.dim):
            c = m[i, j]
            if c == 0:
                continue
            key = tuple(x + y for x, y in zip(monomials[i], monomials[j]))
            terms[key] = terms.get(key, Fraction(0)) + c
    return MPoly(nvars, terms)
