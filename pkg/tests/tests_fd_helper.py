"""Finite-difference oracle for the invariant-volume Jacobian check."""

import numpy as np

from jacobiweil import (JacobiElement, SiegelJacobiPoint,
                        invariant_volume_density, jacobi_act)
from jacobiweil.maslov import random_symplectic
from jacobiweil.suites import rand_heisenberg, rand_point


def point_to_coords(p):
    n = p.n
    xs = [p.omega.real[i, j] for i in range(n) for j in range(i, n)]
    ys = [p.omega.imag[i, j] for i in range(n) for j in range(i, n)]
    return np.array(xs + ys + list(p.z.real.ravel()) + list(p.z.imag.ravel()))


def coords_to_point(v, n, m):
    k = n * (n + 1) // 2
    x = np.zeros((n, n))
    y = np.zeros((n, n))
    idx = 0
    for i in range(n):
        for j in range(i, n):
            x[i, j] = x[j, i] = v[idx]
            y[i, j] = y[j, i] = v[k + idx]
            idx += 1
    u = v[2 * k: 2 * k + m * n].reshape(m, n)
    w = v[2 * k + m * n:].reshape(m, n)
    return SiegelJacobiPoint(x + 1j * y, u + 1j * w)


def volume_invariance_defect(rng, n, m, hstep=1e-5):
    """Relative defect of density(g.p) |d(g.p)/dp| = density(p)."""
    elt = JacobiElement(random_symplectic(rng, n), rand_heisenberg(rng, n, m))
    p = rand_point(rng, n, m)
    v0 = point_to_coords(p)
    dim = v0.size
    jac = np.zeros((dim, dim))
    for j in range(dim):
        vp, vm = v0.copy(), v0.copy()
        vp[j] += hstep
        vm[j] -= hstep
        fp = point_to_coords(jacobi_act(elt, coords_to_point(vp, n, m)))
        fm = point_to_coords(jacobi_act(elt, coords_to_point(vm, n, m)))
        jac[:, j] = (fp - fm) / (2 * hstep)
    lhs = invariant_volume_density(jacobi_act(elt, p)) * abs(np.linalg.det(jac))
    rhs = invariant_volume_density(p)
    return abs(lhs - rhs) / abs(rhs)
