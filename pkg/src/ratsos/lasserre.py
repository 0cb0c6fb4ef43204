"""Moment relaxations of polynomial inequality systems.

A degree-d relaxation replaces every monomial of degree at most d by a
moment variable y_alpha (y_0 pinned to 1) and demands that the moment block
and one localizing block per constraint be positive semidefinite.  The
module also verifies exact weighted-SOS membership certificates for the
degree-d truncated module sum_i sigma_i g_i and computes certified lower
bounds by bisection with a numeric feasibility oracle and exact final
certification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import Mat, affine_solution_set, rat
from .numeric import AffineFamily, alternating_projection
from .poly import MPoly, poly_text
from .quadforms import SosCert, SymMat, is_psd, weighted_square_decomposition
from .sos import DENOMINATOR_LADDER, VerifyResult


def monomials_upto(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree <= degree, graded-lex ordered."""
    if degree < 0:
        return []
    out = [()]
    for _ in range(nvars):
        out = [t + (k,) for t in out for k in range(degree + 1)]
    out = [t for t in out if sum(t) <= degree]
    out.sort(key=lambda a: (sum(a), tuple(-e for e in a)))
    return out


@dataclass
class MomentExpr:
    """Affine expression const + sum coeffs[k] * y_k in the moment variables."""

    const: Fraction
    coeffs: dict[int, Fraction]

    def evaluate(self, y: list[Fraction]) -> Fraction:
        total = self.const
        for k, c in self.coeffs.items():
            total += c * y[k - 1]
        return total


@dataclass
class Block:
    """One localizing block: entry (i,j) is sum_delta g_delta * y_(b_i+b_j+delta)."""

    generator_index: int  # 0 for the moment block, 1-based into gs otherwise
    generator: MPoly
    basis: list[tuple[int, ...]]
    entries: list[list[MomentExpr]]

    @property
    def size(self) -> int:
        return len(self.basis)


@dataclass
class LasserreRelaxation:
    nvars: int
    degree: int
    gs: list[MPoly]
    monomials: list[tuple[int, ...]]  # index 0 is the constant monomial
    blocks: list[Block] = field(default_factory=list)

    @property
    def num_moment_vars(self) -> int:
        return len(self.monomials) - 1

    @property
    def block_sizes(self) -> list[int]:
        return [b.size for b in self.blocks]


def build_relaxation(gs, degree: int, nvars: int) -> LasserreRelaxation:
    """Moment and localizing blocks for the degree-d relaxation of gs >= 0.

    Constraints that are zero or of degree above d contribute nothing and are
    skipped.  Block i has size dim R[x]_{r_i} with r_i = floor((d - deg g_i)/2).
    """
    if degree < 1:
        raise ValueError("relaxation degree must be at least 1")
    gs = list(gs)
    monomials = monomials_upto(nvars, degree)
    index = {alpha: k for k, alpha in enumerate(monomials)}
    rel = LasserreRelaxation(nvars, degree, gs, monomials)
    generators = [(0, MPoly.constant(nvars, 1))]
    for i, g in enumerate(gs, start=1):
        if g.is_zero or g.degree() > degree:
            continue
        generators.append((i, g))
    for gen_index, g in generators:
        r = (degree - int(g.degree())) // 2
        basis = monomials_upto(nvars, r)
        entries = []
        for beta in basis:
            row = []
            for gamma in basis:
                const = Fraction(0)
                coeffs: dict[int, Fraction] = {}
                for delta, c in g.terms.items():
                    alpha = tuple(b + cc + dd for b, cc, dd in zip(beta, gamma, delta))
                    k = index[alpha]
                    if k == 0:
                        const += c
                    else:
                        coeffs[k] = coeffs.get(k, Fraction(0)) + c
                row.append(MomentExpr(const, coeffs))
            entries.append(row)
        rel.blocks.append(Block(gen_index, g, basis, entries))
    return rel


def blocks_at_point(rel: LasserreRelaxation, point) -> list[SymMat]:
    """Instantiate every block with the moment vector y_alpha = point^alpha."""
    point = [rat(x) for x in point]
    y = [MPoly.monomial(alpha).eval(point) for alpha in rel.monomials[1:]]
    out = []
    for block in rel.blocks:
        rows = [[e.evaluate(y) for e in row] for row in block.entries]
        out.append(SymMat.from_rows(rows))
    return out


# --- SDPA sparse output ----------------------------------------------------

MAX_SDPA_DENOMINATOR = 10**6


def _sdpa_value(v: Fraction) -> str:
    if v.denominator > MAX_SDPA_DENOMINATOR:
        raise ValueError(f"rational {v} exceeds the emit denominator bound {MAX_SDPA_DENOMINATOR}")
    return repr(float(v))


def emit_sdpa(rel: LasserreRelaxation, objective: MPoly) -> str:
    """Serialize as SDPA sparse (.dat-s), minimizing the objective's moments.

    Convention: sum_k y_k F_k - F_0 >= 0, entries "matno blockno i j value"
    with 1-based upper-triangle indices; the objective's constant term only
    shifts the optimum and is dropped.
    """
    if objective.nvars != rel.nvars:
        raise ValueError("objective variable count mismatch")
    if objective.degree() > rel.degree:
        raise ValueError("objective degree exceeds the relaxation degree")
    index = {alpha: k for k, alpha in enumerate(rel.monomials)}
    m = rel.num_moment_vars
    cvec = [Fraction(0)] * m
    for alpha, c in objective.terms.items():
        k = index[alpha]
        if k > 0:
            cvec[k - 1] = c
    lines = [str(m), str(len(rel.blocks)), " ".join(str(b.size) for b in rel.blocks)]
    lines.append(" ".join(_sdpa_value(c) for c in cvec))
    entry_lines: list[list] = []
    for bno, block in enumerate(rel.blocks, start=1):
        for i in range(block.size):
            for j in range(i, block.size):
                expr = block.entries[i][j]
                if expr.const != 0:
                    entry_lines.append([0, bno, i + 1, j + 1, -expr.const])
                for k, c in expr.coeffs.items():
                    if c != 0:
                        entry_lines.append([k, bno, i + 1, j + 1, c])
    entry_lines.sort(key=lambda e: e[:4])
    for matno, bno, i, j, v in entry_lines:
        lines.append(f"{matno} {bno} {i} {j} {_sdpa_value(v)}")
    return "\n".join(lines) + "\n"


@dataclass
class SdpaProblem:
    nvars: int
    block_sizes: list[int]
    objective: list[float]
    entries: dict  # (matno, blockno, i, j) -> float


def parse_sdpa(text: str) -> SdpaProblem:
    """Parse SDPA sparse text (as produced by :func:`emit_sdpa`)."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith(("*", '"'))]
    nvars = int(lines[0].split()[0])
    nblocks = int(lines[1].split()[0])
    sizes = [abs(int(tok)) for tok in lines[2].split()]
    if len(sizes) != nblocks:
        raise ValueError("block size line does not match the block count")
    objective = [float(tok) for tok in lines[3].split()]
    entries = {}
    for ln in lines[4:]:
        matno, bno, i, j, val = ln.split()
        entries[(int(matno), int(bno), int(i), int(j))] = float(val)
    return SdpaProblem(nvars, sizes, objective, entries)


# --- module membership certificates ----------------------------------------

@dataclass
class ModuleCert:
    """Weighted-square multipliers sigma_i, aligned with [1] + gs."""

    sigmas: list[SosCert]


def _degree_cap(d: int, g: MPoly) -> int:
    if g.is_zero:
        return -1
    return (d - int(g.degree())) // 2


def verify_module_membership(f: MPoly, gs, d: int, cert: ModuleCert) -> VerifyResult:
    """Exact check that f = sum sigma_i g_i with the degree-d caps honored."""
    gs = list(gs)
    generators = [MPoly.constant(f.nvars, 1)] + gs
    if len(cert.sigmas) != len(generators):
        return VerifyResult(False, "arity")
    total = MPoly.zero(f.nvars)
    for g, sigma in zip(generators, cert.sigmas):
        cap = _degree_cap(d, g)
        for w, p in sigma.terms:
            if w < 0:
                return VerifyResult(False, "negative-weight")
            if p.degree() > cap:
                return VerifyResult(False, "degree-cap")
        total = total + sigma.expand(MPoly.zero(f.nvars)) * g
    if total != f:
        return VerifyResult(False, "sum-mismatch")
    return VerifyResult(True, "ok")


@dataclass
class ModuleSearch:
    status: str  # found / infeasible / unknown
    cert: ModuleCert | None
    detail: str


def module_cert_search(
    f: MPoly,
    gs,
    d: int,
    max_sweeps: int = 5000,
    tol: float = 1e-9,
    denominators=DENOMINATOR_LADDER,
) -> ModuleSearch:
    """Search an exact certificate f = sum sigma_i g_i of degree d.

    One Gram block per retained generator; the coefficient-matching system is
    solved exactly, the psd member is located numerically and rationalized,
    and the certificate is rebuilt and re-verified exactly before return.
    """
    gs = list(gs)
    nvars = f.nvars
    if f.degree() > d:
        raise ValueError("target degree exceeds the relaxation degree")
    generators = [(0, MPoly.constant(nvars, 1))]
    for i, g in enumerate(gs, start=1):
        if not g.is_zero and g.degree() <= d:
            generators.append((i, g))
    bases = [monomials_upto(nvars, _degree_cap(d, g)) for _, g in generators]
    sizes = [len(b) for b in bases]
    offsets = []
    total_unknowns = 0
    for s in sizes:
        offsets.append(total_unknowns)
        total_unknowns += s * (s + 1) // 2
    gammas = monomials_upto(nvars, d)
    gamma_index = {g: i for i, g in enumerate(gammas)}
    rows = [[Fraction(0)] * total_unknowns for _ in gammas]
    for bi, ((_, g), basis) in enumerate(zip(generators, bases)):
        unk = offsets[bi]
        for i in range(len(basis)):
            for j in range(i, len(basis)):
                mult = 1 if i == j else 2
                for delta, c in g.terms.items():
                    gamma = tuple(a + b + dd for a, b, dd in zip(basis[i], basis[j], delta))
                    rows[gamma_index[gamma]][unk] += mult * c
                unk += 1
    rhs = [f.coeff(g) for g in gammas]
    solution = affine_solution_set(Mat(rows), rhs)
    if solution is None:
        return ModuleSearch("infeasible", None, "coefficient-match system is inconsistent")
    particular, null_basis = solution

    def blocks_of(vec) -> list[SymMat]:
        out = []
        for bi, s in enumerate(sizes):
            start = offsets[bi]
            out.append(SymMat(s, vec[start : start + s * (s + 1) // 2]))
        return out

    def vectorize(vec) -> np.ndarray:
        return np.concatenate([
            np.array([[float(x) for x in row] for row in b.rows()]).reshape(-1)
            for b in blocks_of(vec)
        ])

    def exact_params(params):
        vec = list(particular)
        for t, bvec in zip(params, null_basis):
            if t:
                vec = [u + t * x for u, x in zip(vec, bvec)]
        return vec

    def accept(vec) -> ModuleCert | None:
        blocks = blocks_of(vec)
        if not all(is_psd(b) for b in blocks):
            return None
        sigmas_by_gen = {}
        for (gi, _), basis, block in zip(generators, bases, blocks):
            sigmas_by_gen[gi] = weighted_square_decomposition(block, basis)
        sigmas = [sigmas_by_gen.get(i, SosCert(())) for i in range(len(gs) + 1)]
        cert = ModuleCert(sigmas)
        check = verify_module_membership(f, gs, d, cert)
        if not check:
            raise AssertionError(f"reconstructed certificate failed verification: {check.reason}")
        return cert

    if not null_basis:
        cert = accept(particular)
        if cert is not None:
            return ModuleSearch("found", cert, "unique multiplier system")
        return ModuleSearch("infeasible", None, "unique multiplier system is not psd")

    family = AffineFamily(
        vectorize(particular),
        np.column_stack([vectorize(b) for b in null_basis]),
        sizes,
    )
    t, gap, converged = alternating_projection(family, max_sweeps=max_sweeps, tol=tol)
    if all(np.isfinite(v) for v in t):
        for bound in denominators:
            params = [Fraction(float(v)).limit_denominator(bound) for v in t]
            cert = accept(exact_params(params))
            if cert is not None:
                return ModuleSearch("found", cert, f"denominator bound {bound}")
    if not converged:
        return ModuleSearch("unknown", None, f"numeric phase stalled at gap {gap:.2e}")
    return ModuleSearch("unknown", None, "rationalization failed")


def _numeric_feasible(f: MPoly, gs, d: int, max_sweeps: int, tol: float) -> bool:
    """Cheap numeric-only feasibility probe used inside the bisection loop.

    Runs the search with an empty rationalization ladder: a converged
    alternating projection counts as feasible-looking.
    """
    search = module_cert_search(f, gs, d, max_sweeps=max_sweeps, tol=tol, denominators=())
    if search.status == "found":
        return True
    if search.status == "infeasible":
        return False
    return "stalled" not in search.detail


@dataclass
class BisectResult:
    lo: Fraction
    hi: Fraction
    cert: ModuleCert | None
    certified: bool
    detail: str


def lower_bound_bisect(
    f: MPoly,
    gs,
    d: int,
    iterations: int = 12,
    max_sweeps: int = 3000,
    tol: float = 1e-8,
) -> BisectResult:
    """Bisection lower bound for f over the constraint set at relaxation degree d.

    Feasibility of f - lambda in the degree-d module is probed numerically
    inside the loop; only the final lo is certified, by rationalizing the
    multiplier blocks and verifying exactly.  Without that certificate the
    result is flagged heuristic.
    """
    gs = list(gs)

    def feasible(lam: Fraction) -> bool:
        return _numeric_feasible(f - lam, gs, d, max_sweeps, tol)

    lo = hi = None
    if feasible(Fraction(0)):
        lo = Fraction(0)
        step = Fraction(1)
        for _ in range(24):
            if not feasible(lo + step):
                hi = lo + step
                break
            lo = lo + step
            step *= 2
    else:
        hi = Fraction(0)
        step = Fraction(1)
        for _ in range(24):
            if feasible(hi - step):
                lo = hi - step
                break
            hi = hi - step
            step *= 2
    if lo is None or hi is None:
        return BisectResult(Fraction(0), Fraction(0), None, False, "no initial bracket found")

    for _ in range(iterations):
        mid = (lo + hi) / 2
        if feasible(mid):
            lo = mid
        else:
            hi = mid

    width = hi - lo
    candidates = [lo, lo - width, lo - 2 * width, lo - 4 * width]
    for cand in candidates:
        search = module_cert_search(f - cand, gs, d, max_sweeps=5 * max_sweeps)
        if search.status == "found":
            return BisectResult(cand, hi, search.cert, True, f"certified at {cand}")
    return BisectResult(lo, hi, None, False, "numeric bracket only; certification failed")


# --- module certificate JSON -----------------------------------------------

def module_cert_to_json(cert: ModuleCert, target: MPoly | None = None, degree: int | None = None) -> dict:
    doc = {
        "sigmas": [
            {"terms": [{"weight": str(w), "poly": poly_text(p)} for w, p in sigma.terms]}
            for sigma in cert.sigmas
        ]
    }
    if target is not None:
        doc["target"] = poly_text(target)
    if degree is not None:
        doc["degree"] = degree
    return doc


def module_cert_from_json(doc: dict, nvars: int) -> ModuleCert:
    from .poly import parse_poly

    sigmas = []
    for item in doc["sigmas"]:
        terms = tuple((rat(t["weight"]), parse_poly(t["poly"], nvars)) for t in item["terms"])
        sigmas.append(SosCert(terms))
    return ModuleCert(sigmas)
