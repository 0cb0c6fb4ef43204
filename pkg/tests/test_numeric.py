import numpy as np

from ratsos.numeric import AffineFamily, alternating_projection, jacobi_eigh, min_eig, project_psd


def test_jacobi_reconstructs():
    rng = np.random.default_rng(0)
    for n in (1, 2, 5, 8):
        a = rng.normal(size=(n, n))
        a = a + a.T
        w, v = jacobi_eigh(a)
        assert np.allclose(v @ np.diag(w) @ v.T, a, atol=1e-9)
        assert np.allclose(v.T @ v, np.eye(n), atol=1e-9)


def test_project_psd():
    a = np.array([[1.0, 0.0], [0.0, -2.0]])
    p = project_psd(a)
    assert np.allclose(p, [[1.0, 0.0], [0.0, 0.0]], atol=1e-12)
    assert min_eig(p) >= -1e-12


def test_alternating_projection_trivial_intersection():
    # affine set {diag(1, t)}: the psd members have t >= 0
    particular = np.array([1.0, 0.0, 0.0, -3.0])
    basis = np.array([[0.0], [0.0], [0.0], [1.0]])
    family = AffineFamily(particular, basis, [2])
    t, gap, converged = alternating_projection(family, max_sweeps=500, tol=1e-10)
    assert converged
    assert t[0] >= 3.0 - 1e-6  # lands at a psd point
