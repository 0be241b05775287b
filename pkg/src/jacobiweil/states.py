"""Closed-form Gaussian states on R^(m,n).

A state is f(x) = c * exp(pi i tr(M (x A x^T + 2 x B^T))) with A complex
symmetric n x n, Im A positive definite, and B complex (m, n).  The family is
closed under every representation operator implemented in this package,
which is what makes exact (quadrature-free) verification possible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .groups import SiegelJacobiPoint
from .linalg import complex_sym, is_positive_definite, real_sym


def index_matrix(m) -> np.ndarray:
    """Validate a positive definite symmetric index matrix."""
    m = real_sym(m)
    if not is_positive_definite(m):
        raise DomainError("index matrix must be positive definite")
    return m


@dataclass(frozen=True)
class GaussianState:
    c: complex
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = complex_sym(self.a)
        b = np.asarray(self.b, dtype=complex)
        if b.ndim != 2 or b.shape[1] != a.shape[0]:
            raise DomainError("B must be (m, n) with n matching A")
        if complex(self.c) != 0 and not is_positive_definite(a.imag):
            raise DomainError("Im(A) must be positive definite")
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def shape(self):
        return self.b.shape

    def scaled(self, factor: complex) -> "GaussianState":
        return GaussianState(self.c * factor, self.a, self.b)

    def parity_flip(self) -> "GaussianState":
        """The image under x -> -x (negates the linear part)."""
        return GaussianState(self.c, self.a, -self.b)


def evaluate(state: GaussianState, m_index, x) -> complex:
    """Pointwise value c exp(pi i tr(M (x A x^T + 2 x B^T)))."""
    mm = index_matrix(m_index)
    x = np.asarray(x, dtype=float)
    if x.shape != state.shape:
        raise DomainError(f"sample point must have shape {state.shape}")
    quad = x @ state.a @ x.T + 2 * x @ state.b.T
    return state.c * np.exp(1j * np.pi * np.trace(mm @ quad))


def covariant_map(m_index, p: SiegelJacobiPoint) -> GaussianState:
    """The Gaussian attached to (Omega, Z): amplitude 1, A = Omega, B = Z."""
    index_matrix(m_index)
    return GaussianState(1.0, p.omega, p.z)


def ground_state(n: int, m: int = 1) -> GaussianState:
    """exp(-pi tr(M x x^T)), the covariant state at (iI, 0)."""
    return GaussianState(1.0, 1j * np.eye(n), np.zeros((m, n)))


def l2_norm_sq(state: GaussianState, m_index) -> float:
    """Closed-form squared L^2 norm.

    |f|^2 integrates |c|^2 exp(-2 pi tr(M (x ImA x^T + 2 x ImB^T))), a real
    Gaussian; the result is
    |c|^2 2^{-mn/2} det(M ⊗ ImA)^{-1/2} exp(2 pi tr(M ImB (ImA)^{-1} ImB^T)).
    """
    mm = index_matrix(m_index)
    if state.c == 0:
        return 0.0
    m, n = state.shape
    ia = state.a.imag
    ib = state.b.imag
    kron = np.kron(mm, ia)
    det = np.linalg.det(kron)
    corr = np.trace(mm @ ib @ np.linalg.inv(ia) @ ib.T)
    return float(abs(state.c) ** 2 * 2 ** (-m * n / 2) * det ** -0.5 * np.exp(2 * np.pi * corr))


def sample_grid(m: int, n: int, count: int = 17) -> list[np.ndarray]:
    """Deterministic real sample points (first point is the origin)."""
    pts = [np.zeros((m, n))]
    for j in range(1, count):
        vec = np.cos(1.7 * j + 0.9 * np.arange(m * n)) * (0.15 + 0.06 * j)
        pts.append(vec.reshape(m, n))
    return pts


def state_distance(f: GaussianState, g: GaussianState, m_index,
                   normalize_phase: bool = False) -> float:
    """Max pointwise difference on the deterministic grid plus parameter distance.

    With ``normalize_phase`` the amplitude phase of ``f`` is rotated onto
    ``g`` before comparing, so the result measures projective distance.
    """
    if f.shape != g.shape:
        raise DomainError("shape mismatch")
    if normalize_phase and f.c != 0 and g.c != 0:
        f = f.scaled((g.c / f.c) / abs(g.c / f.c))
    m, n = f.shape
    grid = sample_grid(m, n)
    point = max(abs(evaluate(f, m_index, x) - evaluate(g, m_index, x)) for x in grid)
    par = max(np.max(np.abs(f.a - g.a)), np.max(np.abs(f.b - g.b)), abs(f.c - g.c))
    return float(max(point, par))
