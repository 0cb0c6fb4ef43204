"""Exact real and complex root counting for univariate rational polynomials.

The workhorse is the Hankel matrix of traces H(f, g) built from the companion
matrix of f: its signature counts real roots of f weighted by the sign of g,
its rank counts distinct complex roots with g nonzero.  Sign-change counting
supplies Descartes bounds and, for real-rooted polynomials, exact positive
root counts, which together yield a decision procedure for strict univariate
sign conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .arith import Mat
from .poly import UPoly, sign_changes  # noqa: F401  (sign_changes is part of this API)
from .quadforms import SymMat, rank, signature


@dataclass
class HermiteData:
    """Hankel trace form of a monic f with respect to g.

    ``traces[k]`` is tr(g(C_f) * C_f^k) for k = 0..2d-2 and the matrix entry
    (i, j) equals ``traces[i + j]``.
    """

    f: UPoly
    g: UPoly
    matrix: SymMat
    traces: tuple


def companion(f: UPoly) -> Mat:
    """Companion matrix of a monic polynomial: subdiagonal ones, last column -a_i."""
    if f.is_zero or not f.is_monic():
        raise ValueError("companion matrix requires a monic polynomial")
    d = f.degree()
    rows = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        if i + 1 < d:
            rows[i + 1][i] = Fraction(1)
        rows[i][d - 1] = -f.coeffs[i]
    return Mat(rows)


def _mul_companion(rows: list[list[Fraction]], f_coeffs) -> list[list[Fraction]]:
    """M * C_f in O(d^2): shift columns left, last column is -M @ a."""
    d = len(rows)
    out = []
    for r in rows:
        shifted = list(r[1:])
        shifted.append(-sum((r[k] * f_coeffs[k] for k in range(d)), Fraction(0)))
        out.append(shifted)
    return out


def hermite_form(f: UPoly, g: UPoly | None = None) -> HermiteData:
    """Hankel matrix of traces tr(g(C_f) C_f^(i+j-2)) for monic f of degree >= 1.

    g is reduced mod f before the matrix evaluation; g(C_f) is built by Horner
    over matrices and traces of the cached companion powers finish the job.
    """
    if g is None:
        g = UPoly.one()
    if f.is_zero or f.degree() == 0:
        raise ValueError("the Hankel trace form needs degree at least 1")
    if not f.is_monic():
        raise ValueError("the Hankel trace form requires a monic polynomial")
    d = f.degree()
    g_red = g % f
    # b := g_red(C_f) by Horner
    b = [[Fraction(0)] * d for _ in range(d)]
    for c in reversed(g_red.coeffs):
        b = _mul_companion(b, f.coeffs)
        for i in range(d):
            b[i][i] += c
    # traces of b * C_f^k for k = 0..2d-2, walking the cached power
    power = [[Fraction(1) if i == j else Fraction(0) for j in range(d)] for i in range(d)]
    traces = []
    for _ in range(2 * d - 1):
        t = Fraction(0)
        for i in range(d):
            for j in range(d):
                if b[i][j] != 0:
                    t += b[i][j] * power[j][i]
        traces.append(t)
        power = _mul_companion(power, f.coeffs)
    upper = [traces[i + j] for i in range(d) for j in range(i, d)]
    return HermiteData(f, g, SymMat(d, upper), tuple(traces))


def _checked_nonzero(f: UPoly) -> UPoly:
    if f.is_zero:
        raise ValueError("root counts of the zero polynomial are undefined")
    return f.monic()


def count_real_roots(f: UPoly) -> int:
    """Number of distinct real roots."""
    f = _checked_nonzero(f)
    if f.degree() == 0:
        return 0
    return signature(hermite_form(f).matrix)


def count_complex_distinct(f: UPoly) -> int:
    """Number of distinct complex roots."""
    f = _checked_nonzero(f)
    if f.degree() == 0:
        return 0
    return rank(hermite_form(f).matrix)


def count_real_with_signs(f: UPoly, gs) -> int:
    """Number of distinct real roots of f where every g in gs is positive.

    Averages signatures of the trace forms over all exponent patterns in
    {1,2}^m; the sum is exactly divisible by 2^m.
    """
    f = _checked_nonzero(f)
    gs = list(gs)
    if f.degree() == 0:
        return 0
    if not gs:
        return count_real_roots(f)
    total = 0
    for pattern in product((1, 2), repeat=len(gs)):
        g = UPoly.one()
        for gi, e in zip(gs, pattern):
            g = g * (gi if e == 1 else gi * gi)
        total += signature(hermite_form(f, g).matrix)
    q, r = divmod(total, 2 ** len(gs))
    if r:
        raise ArithmeticError("signature sum is not divisible by 2^m")
    return q


def positive_root_count_bound(f: UPoly) -> tuple[int, int]:
    """Descartes data (sigma(f), sigma(f) mod 2).

    The number of positive roots counted with multiplicity is at most
    sigma(f) and has the same parity.
    """
    s = sign_changes(f)
    return s, s % 2


def is_real_rooted(f: UPoly) -> bool:
    """True iff f has no non-real complex roots (rank equals signature)."""
    f = _checked_nonzero(f)
    if f.degree() == 0:
        return True
    h = hermite_form(f).matrix
    return rank(h) == signature(h)


def count_positive_roots_realrooted(f: UPoly) -> int:
    """Positive roots with multiplicity of a real-rooted f; exactly sigma(f)."""
    if not is_real_rooted(f):
        raise ValueError("polynomial is not real-rooted")
    return sign_changes(f)


def decide_strict_system(gs) -> bool:
    """Decide whether some real x satisfies g(x) > 0 for every g in gs.

    Sets g := prod(gs) and f := (1 - g^2) * g'.  If f is the zero polynomial
    every g is constant and evaluation at 0 answers; otherwise the system is
    satisfiable exactly when f has a real root where all conditions hold.
    """
    gs = list(gs)
    if any(g.is_zero for g in gs):
        raise ValueError("zero polynomial in a strict system")
    g = UPoly.one()
    for gi in gs:
        g = g * gi
    f = (UPoly.one() - g * g) * g.derivative()
    if f.is_zero:
        return all(gi.eval(0) > 0 for gi in gs)
    return count_real_with_signs(f, gs) > 0
