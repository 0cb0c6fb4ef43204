"""Shared generators for the randomized suites (all seeded by the caller)."""

from fractions import Fraction

from ratsos.poly import MPoly, UPoly


def rand_frac(rng, lo=-6, hi=6, max_den=4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_upoly(rng, max_deg=5, lo=-5, hi=5) -> UPoly:
    deg = rng.randint(0, max_deg)
    coeffs = [Fraction(rng.randint(lo, hi)) for _ in range(deg + 1)]
    if all(c == 0 for c in coeffs):
        coeffs[-1] = Fraction(1)
    if coeffs[-1] == 0:
        coeffs[-1] = Fraction(rng.choice([-2, -1, 1, 2]))
    return UPoly(coeffs)


def rand_mpoly(rng, nvars=2, max_deg=3, max_terms=5, lo=-4, hi=4) -> MPoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        alpha = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        c = rng.randint(lo, hi)
        if c:
            terms[alpha] = Fraction(c)
    return MPoly(nvars, terms)


def rand_symmetric_rows(rng, dim, lo=-4, hi=4):
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            v = Fraction(rng.randint(lo, hi))
            rows[i][j] = rows[j][i] = v
    return rows


def upoly_from_roots(roots, lc=Fraction(1)) -> UPoly:
    f = UPoly([lc])
    for r in roots:
        f = f * UPoly([-Fraction(r), Fraction(1)])
    return f
