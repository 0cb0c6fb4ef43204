"""Floating-point helpers for the certificate search: a cyclic Jacobi
eigensolver, psd-cone projection, and alternating projections between an
affine family of symmetric block matrices and the product of psd cones.

Nothing here is trusted; every candidate leaving this module is rationalized
and re-verified exactly by the callers.
"""

from __future__ import annotations

import numpy as np


def jacobi_eigh(a: np.ndarray, tol: float = 1e-12, max_sweeps: int = 64):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues, eigenvectors) with a ~ V @ diag(w) @ V.T.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n < 2:
        return np.diag(a).copy(), v
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off <= tol * max(1.0, np.abs(np.diag(a)).max()):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot_p = c * a[:, p] - s * a[:, q]
                rot_q = s * a[:, p] + c * a[:, q]
                a[:, p], a[:, q] = rot_p, rot_q
                rot_p = c * a[p, :] - s * a[q, :]
                rot_q = s * a[p, :] + c * a[q, :]
                a[p, :], a[q, :] = rot_p, rot_q
                rot_p = c * v[:, p] - s * v[:, q]
                rot_q = s * v[:, p] + c * v[:, q]
                v[:, p], v[:, q] = rot_p, rot_q
    return np.diag(a).copy(), v


def project_psd(a: np.ndarray) -> np.ndarray:
    """Nearest psd matrix in Frobenius norm: clip negative eigenvalues."""
    a = 0.5 * (a + a.T)
    w, v = jacobi_eigh(a)
    w = np.clip(w, 0.0, None)
    out = (v * w) @ v.T
    return 0.5 * (out + out.T)


def min_eig(a: np.ndarray) -> float:
    w, _ = jacobi_eigh(np.array(a, dtype=float))
    return float(w.min()) if w.size else 0.0


def split_blocks(vec: np.ndarray, sizes: list[int]) -> list[np.ndarray]:
    """Cut a concatenated vectorization into square blocks."""
    blocks = []
    offset = 0
    for s in sizes:
        blocks.append(vec[offset : offset + s * s].reshape(s, s))
        offset += s * s
    return blocks


def join_blocks(blocks: list[np.ndarray]) -> np.ndarray:
    return np.concatenate([b.reshape(-1) for b in blocks]) if blocks else np.zeros(0)


class AffineFamily:
    """Affine set {particular + basis @ t} in concatenated block coordinates."""

    def __init__(self, particular: np.ndarray, basis: np.ndarray, sizes: list[int]):
        self.particular = np.asarray(particular, dtype=float)
        self.basis = np.asarray(basis, dtype=float)
        self.sizes = list(sizes)
        if self.basis.size:
            # thin QR of the basis for least-squares projection
            self.q, self.r = np.linalg.qr(self.basis)
        else:
            self.q = self.r = None

    def project(self, y: np.ndarray):
        """Orthogonal projection of y onto the affine set; returns (point, t)."""
        if self.q is None:
            return self.particular.copy(), np.zeros(0)
        rhs = self.q.T @ (y - self.particular)
        t = np.linalg.solve(self.r, rhs)
        return self.particular + self.basis @ t, t

    def project_psd_cone(self, y: np.ndarray) -> np.ndarray:
        return join_blocks([project_psd(b) for b in split_blocks(y, self.sizes)])

    def eye_vector(self) -> np.ndarray:
        return join_blocks([np.eye(s) for s in self.sizes])


def alternating_projection(
    family: AffineFamily,
    max_sweeps: int = 5000,
    tol: float = 1e-9,
    nudge: float = 1e-6,
):
    """Alternate psd-cone and affine projections from the particular point.

    Returns (t, gap, converged): t parameterizes the affine point, gap is the
    final distance between the two projections.  When converged, the point is
    nudged toward particular + eps*I inside the affine set if that keeps it
    numerically psd, so interior points rationalize robustly.
    """
    x = family.particular.copy()
    t = np.zeros(family.basis.shape[1] if family.basis.size else 0)
    gap = np.inf
    for _ in range(max_sweeps):
        y = family.project_psd_cone(x)
        x_next, t = family.project(y)
        gap = float(np.max(np.abs(y - x_next))) if y.size else 0.0
        x = x_next
        if gap < tol:
            break
    converged = gap < tol
    if converged and nudge > 0 and family.q is not None:
        nudged, t_nudged = family.project(x + nudge * family.eye_vector())
        worst = min(
            (min_eig(b) for b in split_blocks(nudged, family.sizes)),
            default=0.0,
        )
        if worst > -nudge:
            t = t_nudged
    return t, gap, converged
