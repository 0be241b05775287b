"""Symplectic, Heisenberg and Jacobi group elements and their actions.

Conventions (fixed package-wide):

* ``Sp(n, R) = {g : g^T J g = J}`` with ``J = [[0, I], [-I, 0]]``.
* Heisenberg elements ``(lam, mu; kappa)`` with ``lam, mu`` real (m, n)
  matrices and ``kappa`` real (m, m); constraint: ``kappa + mu lam^T``
  symmetric.
* Jacobi elements are pairs ``(g, h)`` multiplying by the semidirect law in
  which the symplectic part acts on Heisenberg rows from the right:
  ``(g, h)(g', h')`` has translation part ``(lam, mu) g'`` composed with
  ``h'``.  The pair ``(g, h)`` equals the product ``g * h`` in the group.
* The action on the Siegel-Jacobi space sends ``(Omega, Z)`` to
  ``(g.Omega, (Z + lam Omega + mu)(C Omega + D)^{-1})``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvariantViolation
from .linalg import complex_sym, is_positive_definite, real_sym

SP_TOL = 1e-10
HEIS_TOL = 1e-10


def symplectic_form(n: int) -> np.ndarray:
    z = np.zeros((n, n))
    i = np.eye(n)
    return np.block([[z, i], [-i, z]])


@dataclass(frozen=True)
class SymplecticElement:
    """A real 2n x 2n symplectic matrix; block views are computed, not stored."""

    g: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.g, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] % 2:
            raise DomainError(f"symplectic matrix must be 2n x 2n, got {g.shape}")
        n = g.shape[0] // 2
        j = symplectic_form(n)
        if np.max(np.abs(g.T @ j @ g - j)) > SP_TOL * max(1.0, np.max(np.abs(g)) ** 2):
            raise InvariantViolation("matrix is not symplectic within tolerance")
        if abs(np.linalg.det(g) - 1.0) > 1e-8 * max(1.0, np.max(np.abs(g)) ** (2 * n)):
            raise InvariantViolation("symplectic matrix must have determinant 1")
        object.__setattr__(self, "g", g)

    @property
    def n(self) -> int:
        return self.g.shape[0] // 2

    @property
    def blocks(self):
        n = self.n
        g = self.g
        return g[:n, :n], g[:n, n:], g[n:, :n], g[n:, n:]

    def __matmul__(self, other: "SymplecticElement") -> "SymplecticElement":
        return SymplecticElement(self.g @ other.g)

    def inv(self) -> "SymplecticElement":
        # g^{-1} = J^T g^T J, exact up to rounding
        n = self.n
        j = symplectic_form(n)
        return SymplecticElement(j.T @ self.g.T @ j)


def sp_identity(n: int) -> SymplecticElement:
    return SymplecticElement(np.eye(2 * n))


def sp_generator(kind: str, parameter=None, n: int | None = None) -> SymplecticElement:
    """The standard generators of Sp(n, R).

    ``t(b)`` = [[I, b], [0, I]] for symmetric b; ``g(alpha)`` =
    [[alpha^T, 0], [0, alpha^{-1}]] for invertible alpha; ``sigma`` =
    [[0, -I], [I, 0]].
    """
    if kind == "t":
        b = real_sym(parameter)
        n = b.shape[0]
        z = np.zeros((n, n))
        return SymplecticElement(np.block([[np.eye(n), b], [z, np.eye(n)]]))
    if kind == "g":
        al = np.asarray(parameter, dtype=float)
        if al.ndim != 2 or al.shape[0] != al.shape[1]:
            raise DomainError("alpha must be square")
        if abs(np.linalg.det(al)) < 1e-12:
            raise DomainError("alpha must be invertible")
        n = al.shape[0]
        z = np.zeros((n, n))
        return SymplecticElement(np.block([[al.T, z], [z, np.linalg.inv(al)]]))
    if kind == "sigma":
        if n is None:
            raise DomainError("sigma generator needs the dimension n")
        z = np.zeros((n, n))
        i = np.eye(n)
        return SymplecticElement(np.block([[z, -i], [i, z]]))
    raise DomainError(f"unknown generator kind {kind!r}")


@dataclass(frozen=True)
class HeisenbergElement:
    lam: np.ndarray
    mu: np.ndarray
    kappa: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lam, dtype=float)
        mu = np.asarray(self.mu, dtype=float)
        kappa = np.asarray(self.kappa, dtype=float)
        if lam.shape != mu.shape or lam.ndim != 2:
            raise DomainError("lam and mu must be (m, n) matrices of equal shape")
        m = lam.shape[0]
        if kappa.shape != (m, m):
            raise DomainError(f"kappa must be ({m}, {m})")
        s = kappa + mu @ lam.T
        if np.max(np.abs(s - s.T), initial=0.0) > HEIS_TOL * max(1.0, np.max(np.abs(s), initial=0.0)):
            raise InvariantViolation("kappa + mu lam^T must be symmetric")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "kappa", kappa)

    @property
    def shape(self):
        return self.lam.shape

    def inv(self) -> "HeisenbergElement":
        lam, mu, kappa = self.lam, self.mu, self.kappa
        return HeisenbergElement(-lam, -mu, -kappa + lam @ mu.T - mu @ lam.T)


def heis_identity(m: int, n: int) -> HeisenbergElement:
    return HeisenbergElement(np.zeros((m, n)), np.zeros((m, n)), np.zeros((m, m)))


def heis_mul(h1: HeisenbergElement, h2: HeisenbergElement) -> HeisenbergElement:
    """(lam, mu; k)(lam', mu'; k') = (lam+lam', mu+mu'; k+k'+lam mu'^T - mu lam'^T)."""
    if h1.shape != h2.shape:
        raise DomainError("dimension mismatch")
    return HeisenbergElement(
        h1.lam + h2.lam,
        h1.mu + h2.mu,
        h1.kappa + h2.kappa + h1.lam @ h2.mu.T - h1.mu @ h2.lam.T,
    )


def heis_conjugate(g: SymplecticElement, h: HeisenbergElement) -> HeisenbergElement:
    """g h g^{-1}: rows (lam, mu) map to (lam, mu) g^{-1}, kappa unchanged."""
    n = g.n
    if h.shape[1] != n:
        raise DomainError("dimension mismatch")
    lm = np.hstack([h.lam, h.mu]) @ g.inv().g
    return HeisenbergElement(lm[:, :n], lm[:, n:], h.kappa)


@dataclass(frozen=True)
class JacobiElement:
    g: SymplecticElement
    h: HeisenbergElement

    def __post_init__(self):
        if self.h.shape[1] != self.g.n:
            raise DomainError("Heisenberg width must match symplectic dimension")

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def m(self) -> int:
        return self.h.shape[0]

    def inv(self) -> "JacobiElement":
        gi = self.g.inv()
        return JacobiElement(gi, heis_conjugate(self.g, self.h).inv())


def jacobi_identity(n: int, m: int) -> JacobiElement:
    return JacobiElement(sp_identity(n), heis_identity(m, n))


def jacobi_mul(a: JacobiElement, b: JacobiElement) -> JacobiElement:
    if a.n != b.n or a.m != b.m:
        raise DomainError("dimension mismatch")
    n = a.n
    lm = np.hstack([a.h.lam, a.h.mu]) @ b.g.g
    lt, mt = lm[:, :n], lm[:, n:]
    kappa = a.h.kappa + b.h.kappa + lt @ b.h.mu.T - mt @ b.h.lam.T
    return JacobiElement(a.g @ b.g, HeisenbergElement(lt + b.h.lam, mt + b.h.mu, kappa))


@dataclass(frozen=True)
class SiegelJacobiPoint:
    """A point (Omega, Z) with Omega in the Siegel upper half space."""

    omega: np.ndarray
    z: np.ndarray

    def __post_init__(self):
        omega = complex_sym(self.omega)
        z = np.asarray(self.z, dtype=complex)
        if z.ndim != 2 or z.shape[1] != omega.shape[0]:
            raise DomainError("Z must be an (m, n) matrix matching Omega")
        if not is_positive_definite(omega.imag):
            raise DomainError("Im(Omega) must be positive definite")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "z", z)

    @property
    def n(self) -> int:
        return self.omega.shape[0]

    @property
    def m(self) -> int:
        return self.z.shape[0]


def sp_act(g: SymplecticElement, omega) -> np.ndarray:
    """The fractional-linear action of Sp(n, R) on the Siegel upper half space."""
    omega = complex_sym(omega)
    a, b, c, d = g.blocks
    den = c @ omega + d
    num = a @ omega + b
    out = num @ np.linalg.inv(den)
    return complex_sym(out, defect_tol=1e-6)


def jacobi_act(elt: JacobiElement, p: SiegelJacobiPoint) -> SiegelJacobiPoint:
    if elt.n != p.n or elt.m != p.m:
        raise DomainError("dimension mismatch")
    _, _, c, d = elt.g.blocks
    den = np.linalg.inv(c @ p.omega + d)
    z2 = (p.z + elt.h.lam @ p.omega + elt.h.mu) @ den
    return SiegelJacobiPoint(sp_act(elt.g, p.omega), z2)


# ---------------------------------------------------------------------------
# SL(2, R): Iwasawa machinery and the embedding into Sp(n, R)


@dataclass(frozen=True)
class IwasawaCoords:
    """(tau, theta) with M = translation(x) dilation(sqrt y) rotation(theta)."""

    tau: complex
    theta: float

    def __post_init__(self):
        if self.tau.imag <= 0:
            raise DomainError("Im(tau) must be positive")
        object.__setattr__(self, "theta", float(self.theta) % (2 * math.pi))


def iwasawa_sl2(mat) -> IwasawaCoords:
    """Unique NAK coordinates of an SL(2, R) matrix.

    The bottom row (c, d) equals y^{-1/2}(sin theta, cos theta), so
    theta = atan2(c, d) reduced to [0, 2pi), y = 1/(c^2+d^2) and
    x = Re(M.i).
    """
    mat = np.asarray(mat, dtype=float)
    if mat.shape != (2, 2):
        raise DomainError("expected a 2x2 matrix")
    if abs(np.linalg.det(mat) - 1.0) > 1e-10:
        raise DomainError("matrix must have determinant 1")
    a, b, c, d = mat.ravel()
    den = c * c + d * d
    y = 1.0 / den
    x = (a * c + b * d) / den
    theta = math.atan2(c, d) % (2 * math.pi)
    return IwasawaCoords(complex(x, y), theta)


def iwasawa_matrix(coords: IwasawaCoords) -> np.ndarray:
    """Recompose the SL(2, R) matrix from its Iwasawa coordinates."""
    x, y = coords.tau.real, coords.tau.imag
    th = coords.theta
    nmat = np.array([[1.0, x], [0.0, 1.0]])
    amat = np.array([[math.sqrt(y), 0.0], [0.0, 1.0 / math.sqrt(y)]])
    kmat = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    return nmat @ amat @ kmat


def sl2_act_circle(mat, coords: IwasawaCoords) -> IwasawaCoords:
    """Action on H_1 x [0, 2pi): (M.tau, theta + arg(c tau + d) mod 2pi)."""
    mat = np.asarray(mat, dtype=float)
    if abs(np.linalg.det(mat) - 1.0) > 1e-10:
        raise DomainError("matrix must have determinant 1")
    a, b, c, d = mat.ravel()
    tau = coords.tau
    j = c * tau + d
    tau2 = (a * tau + b) / j
    return IwasawaCoords(tau2, (coords.theta + math.atan2(j.imag, j.real)) % (2 * math.pi))


def embed_sl2(mat, n: int) -> SymplecticElement:
    """[[a, b], [c, d]] -> [[a I_n, b I_n], [c I_n, d I_n]]."""
    mat = np.asarray(mat, dtype=float)
    if abs(np.linalg.det(mat) - 1.0) > 1e-10:
        raise DomainError("matrix must have determinant 1")
    a, b, c, d = mat.ravel()
    i = np.eye(n)
    return SymplecticElement(np.block([[a * i, b * i], [c * i, d * i]]))
