"""Gram-matrix sums-of-squares pipeline and constructive denominator removal.

A polynomial is a sum of squares exactly when some positive semidefinite
rational matrix G satisfies f = v^T G v for the vector v of candidate
monomials (the lattice points of half the Newton polytope).  The affine
family of all G with matching coefficients is computed exactly; a numeric
interior search plus continued-fraction rounding proposes candidates which
are accepted only after an exact psd check.  Infeasibility is certified only
from exact linear consequences.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import Mat, affine_solution_set, rat
from .conic import convex_membership, newton_halved_lattice
from .numeric import AffineFamily, alternating_projection
from .poly import MPoly, UPoly, parse_poly, poly_text
from .quadforms import SosCert, SymMat, gram_product, is_psd, weighted_square_decomposition

#: continued-fraction rounding bounds tried during rationalization
DENOMINATOR_LADDER = [10**k for k in range(1, 9)]


class GramInfeasibleError(ValueError):
    pass


@dataclass
class VerifyResult:
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class GramFamily:
    """Affine set {particular + sum t_j basis[j]} of coefficient-matching matrices.

    ``forced`` maps diagonal positions whose value is the same across the
    whole family to that value; a negative forced diagonal rules out any psd
    member.
    """

    monomials: list[tuple[int, ...]]
    particular: SymMat
    basis: list[SymMat]
    forced: dict[int, Fraction]

    def at(self, params) -> SymMat:
        upper = list(self.particular._upper)
        for t, b in zip(params, self.basis):
            if t:
                upper = [u + t * x for u, x in zip(upper, b._upper)]
        return SymMat(self.particular.dim, upper)


def gram_family(f: MPoly, monomials) -> GramFamily:
    """Solve the linear system matching coefficients of v^T G v against f.

    Every exponent of f must be a sum of two entries of the monomial vector;
    an inconsistent system raises :class:`GramInfeasibleError`.
    """
    monomials = [tuple(a) for a in monomials]
    if not monomials:
        raise ValueError("empty monomial vector")
    m = len(monomials)
    nunk = m * (m + 1) // 2
    pair_index = {}
    k = 0
    for i in range(m):
        for j in range(i, m):
            pair_index[(i, j)] = k
            k += 1
    # gamma -> list of (unknown, multiplier)
    equations: dict[tuple, list] = {}
    for i in range(m):
        for j in range(i, m):
            gamma = tuple(a + b for a, b in zip(monomials[i], monomials[j]))
            equations.setdefault(gamma, []).append((pair_index[(i, j)], 1 if i == j else 2))
    missing = [g for g in f.terms if g not in equations]
    if missing:
        raise GramInfeasibleError(
            f"monomial {missing[0]} of the target is not a sum of two candidate exponents"
        )
    gammas = sorted(equations, key=lambda a: (sum(a), tuple(-e for e in a)))
    rows = []
    rhs = []
    for gamma in gammas:
        row = [Fraction(0)] * nunk
        for unk, mult in equations[gamma]:
            row[unk] += mult
        rows.append(row)
        rhs.append(f.coeff(gamma))
    solution = affine_solution_set(Mat(rows), rhs)
    if solution is None:
        raise GramInfeasibleError("coefficient-match system is inconsistent")
    particular, null_basis = solution
    # the unknown order coincides with the SymMat upper-triangle layout
    g0 = SymMat(m, particular)
    basis = [SymMat(m, vec) for vec in null_basis]
    forced = {}
    for i in range(m):
        pos = pair_index[(i, i)]
        if all(vec[pos] == 0 for vec in null_basis):
            forced[i] = particular[pos]
    return GramFamily(monomials, g0, basis, forced)


@dataclass
class GramSearch:
    """Outcome of the sums-of-squares search: found / infeasible / unknown."""

    status: str
    gram: SymMat | None
    monomials: list[tuple[int, ...]] | None
    detail: str

    @property
    def found(self) -> bool:
        return self.status == "found"

    @property
    def infeasible(self) -> bool:
        return self.status == "infeasible"


def _newton_vertices(f: MPoly) -> list[tuple[int, ...]]:
    support = f.support()
    verts = []
    for alpha in support:
        others = [a for a in support if a != alpha]
        if not others or not convex_membership(others, alpha):
            verts.append(alpha)
    return verts


def find_gram(
    f: MPoly,
    max_sweeps: int = 5000,
    tol: float = 1e-9,
    denominators=DENOMINATOR_LADDER,
) -> GramSearch:
    """Search for an exact psd Gram matrix of f over the halved Newton lattice.

    Order of play: cheap exact exclusions (odd degree, bad Newton-polytope
    vertices, inconsistent or forced-negative coefficient matching), then an
    exactly determined family is checked directly, and only then the numeric
    phase proposes parameters that are rationalized and verified exactly.
    """
    if f.is_zero:
        raise ValueError("the zero polynomial needs no certificate")
    if f.degree() % 2 == 1:
        return GramSearch("infeasible", None, None, "odd degree")
    for alpha in _newton_vertices(f):
        if f.coeff(alpha) < 0:
            return GramSearch("infeasible", None, None, f"negative vertex coefficient at {alpha}")
        if any(e % 2 for e in alpha):
            return GramSearch("infeasible", None, None, f"odd vertex exponent {alpha}")
    monomials = newton_halved_lattice(f)
    try:
        family = gram_family(f, monomials)
    except GramInfeasibleError as exc:
        return GramSearch("infeasible", None, monomials, str(exc))
    for pos, value in family.forced.items():
        if value < 0:
            return GramSearch(
                "infeasible", None, monomials, f"diagonal entry for {monomials[pos]} forced to {value}"
            )
    if not family.basis:
        g0 = family.particular
        if is_psd(g0):
            return GramSearch("found", g0, monomials, "unique Gram matrix")
        return GramSearch("infeasible", None, monomials, "unique Gram matrix is not psd")

    numeric = AffineFamily(
        _vectorize(family.particular),
        np.column_stack([_vectorize(b) for b in family.basis]),
        [family.particular.dim],
    )
    t, gap, converged = alternating_projection(numeric, max_sweeps=max_sweeps, tol=tol)
    if all(np.isfinite(v) for v in t):
        for bound in denominators:
            params = [Fraction(float(v)).limit_denominator(bound) for v in t]
            candidate = family.at(params)
            if is_psd(candidate):
                if gram_product(candidate, monomials) != f:
                    raise AssertionError("family member does not reproduce the target")
                return GramSearch("found", candidate, monomials, f"denominator bound {bound}")
    if not converged:
        return GramSearch("unknown", None, monomials, f"numeric phase stalled at gap {gap:.2e}")
    return GramSearch("unknown", None, monomials, "rationalization failed")


def _vectorize(m: SymMat) -> np.ndarray:
    return np.array([float(x) for row in m.rows() for x in row])


def verify_sos(f: MPoly, cert) -> VerifyResult:
    """Exact check of a certificate: an SosCert or a (gram, monomials) pair."""
    if isinstance(cert, SosCert):
        if not cert.weights_ok():
            return VerifyResult(False, "negative-weight")
        if cert.expand(MPoly.zero(f.nvars)) != f:
            return VerifyResult(False, "expansion-mismatch")
        return VerifyResult(True, "ok")
    gram, monomials = cert
    if not is_psd(gram):
        return VerifyResult(False, "gram-not-psd")
    if gram_product(gram, monomials) != f:
        return VerifyResult(False, "gram-product-mismatch")
    return VerifyResult(True, "ok")


def sos_cert_from_gram(gram: SymMat, monomials) -> SosCert:
    return weighted_square_decomposition(gram, monomials)


def cassels_descent(weights, fs, g: UPoly, degree_trace: list | None = None) -> SosCert:
    """Remove the denominator from sum_i a_i (f_i / g)^2 when it is a polynomial.

    Iterates the descent f_i = q_i g + r_i, s = sum a_i q_i^2 - h,
    t = sum a_i f_i q_i - g h, F_i = s f_i - 2 t q_i, G = s g - 2 t, which
    strictly lowers deg g (checked) until the denominator is constant.
    ``degree_trace``, when given, records the denominator degree per step.
    """
    weights = [rat(w) for w in weights]
    fs = list(fs)
    if len(weights) != len(fs):
        raise ValueError("weights and polynomials differ in length")
    if any(w < 0 for w in weights):
        raise ValueError("negative weight")
    if g.is_zero:
        raise ZeroDivisionError("zero denominator")
    numerator = UPoly.zero()
    for w, fi in zip(weights, fs):
        numerator = numerator + fi * fi * w
    h, rem = divmod(numerator, g * g)
    if not rem.is_zero:
        raise ValueError("sum of weighted squares is not divisible by g^2")

    active = [(w, fi) for w, fi in zip(weights, fs) if w > 0]
    cur = [fi for _, fi in active]
    ws = [w for w, _ in active]
    cur_g = g
    if degree_trace is not None:
        degree_trace.append(cur_g.degree())
    while cur_g.degree() >= 1:
        pairs = [divmod(fi, cur_g) for fi in cur]
        if all(r.is_zero for _, r in pairs):
            new_f = [q for q, _ in pairs]
            new_g = UPoly.one()
        else:
            qs = [q for q, _ in pairs]
            s = -h
            t = -(cur_g * h)
            for w, fi, qi in zip(ws, cur, qs):
                s = s + qi * qi * w
                t = t + fi * qi * w
            new_f = [s * fi - (t * qi) * 2 for fi, qi in zip(cur, qs)]
            new_g = s * cur_g - t * 2
        if new_g.is_zero or not new_g.degree() < cur_g.degree():
            raise ArithmeticError("descent failed to lower the denominator degree")
        check = UPoly.zero()
        for w, fi in zip(ws, new_f):
            check = check + fi * fi * w
        if check != h * new_g * new_g:
            raise ArithmeticError("descent identity violated")
        cur, cur_g = new_f, new_g
        if degree_trace is not None:
            degree_trace.append(cur_g.degree())
    c = cur_g.coeffs[0]
    reduced = iter([fi * (1 / c) for fi in cur])
    terms = []
    for w in weights:
        terms.append((w, next(reduced) if w > 0 else UPoly.zero()))
    cert = SosCert(tuple(terms))
    if cert.expand(UPoly.zero()) != h:
        raise ArithmeticError("final descent identity violated")
    return cert


# --- certificate JSON ------------------------------------------------------

def cert_to_json(cert: SosCert, target=None) -> dict:
    doc = {
        "terms": [
            {"weight": str(w), "poly": poly_text(p) if isinstance(p, MPoly) else str(p)}
            for w, p in cert.terms
        ]
    }
    if target is not None:
        doc["target"] = poly_text(target) if isinstance(target, MPoly) else str(target)
    return doc


def gram_to_json(gram: SymMat, monomials, target=None) -> dict:
    doc = {
        "monomials": [list(a) for a in monomials],
        "gram": [[str(x) for x in row] for row in gram.rows()],
    }
    if target is not None:
        doc["target"] = poly_text(target)
    return doc


def cert_from_json(doc: dict, nvars: int | None = None):
    """Load a certificate document; returns (cert-or-gram-pair, target poly or None)."""
    target = None
    if "target" in doc:
        target = parse_poly(doc["target"], nvars)
        nvars = target.nvars
    if "terms" in doc:
        terms = tuple(
            (rat(item["weight"]), parse_poly(item["poly"], nvars)) for item in doc["terms"]
        )
        return SosCert(terms), target
    if "gram" in doc:
        gram = SymMat.from_rows([[rat(x) for x in row] for row in doc["gram"]])
        monomials = [tuple(a) for a in doc["monomials"]]
        return (gram, monomials), target
    raise ValueError("certificate document has neither 'terms' nor 'gram'")


def dump_cert(cert_doc: dict) -> str:
    return json.dumps(cert_doc, indent=2, sort_keys=True)
