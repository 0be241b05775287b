"""Representation operators on Gaussian states.

The module realizes three layers:

* ``schrodinger_apply``: the Heisenberg group acting on closed-form
  Gaussians, with an explicit ``scale`` on the exponent (1.0 is the classical
  e^{2 pi i} normalization; SW_SCALE = 0.5 is the normalization under which
  the covariant map transforms by the J* factor).
* the three Weil generator operators t(b), g(alpha), sigma_n, frozen at the
  calibrated SW normalization (see ``test_calibration_regression``), plus
  word application with a phase log;
* the Iwasawa operators: a ground-state-pinned rotation flow R~(i, theta)
  and the full R~(tau, theta), which is what the theta-sum machinery uses.

Calibration note: the e^{2 pi i} Heisenberg/t(b) exponents and the
e^{-4 pi i} sigma kernel are mutually consistent as a projective package,
but the covariance relation against the pi-i-normalized covariant map and
J* factor forces the half-scaled package (exponents e^{pi i}, kernel
e^{-2 pi i}); the sigma prefactor (1/i)^{mn/2} (det M)^{n/2} is unchanged.
The constants below are frozen by a regression test against that relation.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .automorphy import J_star_M, MetaplecticElement, metaplectic_lifts
from .errors import DomainError
from .groups import (HeisenbergElement, JacobiElement, SiegelJacobiPoint,
                     SymplecticElement, IwasawaCoords, jacobi_act, sp_generator)
from .linalg import holo_sqrt_det, principal_pow_half, real_sym
from .states import (GaussianState, covariant_map, evaluate, ground_state,
                     index_matrix, sample_grid)

# Exponent scales of the frozen Schroedinger-Weil package, in units of the
# classical normalization: Heisenberg and t(b) exponents carry
# exp(2 pi i * scale * ...); the sigma kernel is exp(-2 pi i tr(M y x^T)),
# half the classical -4 pi i.  Pinned by test_calibration_regression.
SW_SCALE = 0.5
T_SCALE = 0.5


def schrodinger_apply(m_index, h: HeisenbergElement, f: GaussianState,
                      scale: float = 1.0) -> GaussianState:
    """Apply the Heisenberg operator
    f(x) -> exp(2 pi i * scale * tr(M(kappa + mu lam^T + 2 x mu^T))) f(x + lam)
    and re-express the result in closed form (A is untouched).
    """
    mm = index_matrix(m_index)
    if h.shape != f.shape:
        raise DomainError("dimension mismatch")
    lam, mu, kap = h.lam, h.mu, h.kappa
    shift_phase = np.exp(1j * np.pi * np.trace(mm @ (lam @ f.a @ lam.T + 2 * lam @ f.b.T)))
    central = np.exp(2j * np.pi * scale * np.trace(mm @ (kap + mu @ lam.T)))
    return GaussianState(f.c * central * shift_phase, f.a, f.b + lam @ f.a + 2 * scale * mu)


def sw_heisenberg_apply(m_index, h: HeisenbergElement, f: GaussianState) -> GaussianState:
    """The Heisenberg action at the frozen SW normalization."""
    return schrodinger_apply(m_index, h, f, scale=SW_SCALE)


def weil_generator_apply(m_index, gen, f: GaussianState) -> GaussianState:
    """Apply one Weil generator operator at the SW normalization.

    ``gen`` is ``("t", b)``, ``("g", alpha)`` or ``("sigma", None)``.

    * t(b): multiply by exp(2 pi i T_SCALE tr(M x b x^T)); A += 2 T_SCALE b.
    * g(alpha): (det alpha)^{m/2} f(x alpha^T); principal half-power branch.
    * sigma: the M-twisted Fourier kernel
      (1/i)^{mn/2} (det M)^{n/2} \\int f(y) exp(-2 pi i tr(M y x^T)) dy,
      evaluated in closed form; the square-root prefactor is
      holo_sqrt_det(-i (M kron A))^{-1}, whose argument has positive
      definite real part M kron Im A.
    """
    mm = index_matrix(m_index)
    m, n = f.shape
    kind, par = gen
    if kind == "t":
        b = real_sym(par)
        return GaussianState(f.c, f.a + 2 * T_SCALE * b, f.b)
    if kind == "g":
        al = np.asarray(par, dtype=float)
        det = np.linalg.det(al)
        if abs(det) < 1e-12:
            raise DomainError("alpha must be invertible")
        pref = principal_pow_half(det, m)
        return GaussianState(f.c * pref, al.T @ f.a @ al, f.b @ al)
    if kind == "sigma":
        if f.c == 0:
            return f
        a_inv = np.linalg.inv(f.a)
        pref = principal_pow_half(1 / 1j, m * n) * np.linalg.det(mm) ** (n / 2)
        root = holo_sqrt_det(-1j * np.kron(mm, f.a))
        gauss = np.exp(-1j * np.pi * np.trace(mm @ f.b @ a_inv @ f.b.T))
        c2 = f.c * pref / root * gauss
        return GaussianState(c2, -a_inv, f.b @ a_inv)
    raise DomainError(f"unknown generator kind {kind!r}")


def word_to_symplectic(word, n: int) -> SymplecticElement:
    """Product of the generators in a word, left to right."""
    g = SymplecticElement(np.eye(2 * n))
    for kind, par in word:
        g = g @ sp_generator(kind, par, n=n)
    return g


def weil_apply_word(m_index, word, f: GaussianState):
    """Apply U(g_1) ... U(g_k) to f (rightmost letter acts first).

    Returns the final state and a log of per-step amplitude phases, from
    which projective multipliers of two factorizations of the same group
    element can be compared.
    """
    if not word:
        raise DomainError("word must be nonempty")
    phase_log = []
    for gen in reversed(list(word)):
        prev = f.c
        f = weil_generator_apply(m_index, gen, f)
        step = f.c / prev if prev != 0 else 1.0
        phase_log.append(step / abs(step) if step != 0 else 1.0)
    phase_log.reverse()
    return f, phase_log


# ---------------------------------------------------------------------------
# Rotation flow and Iwasawa operators (used by theta sums; m arbitrary)


def rotation_word(theta: float, n: int) -> list:
    """A generator word for the embedded SO(2) rotation k_theta.

    The angle is split into exact quarter turns (sigma letters) plus a
    remainder |th| <= pi/4 realized by the well-conditioned three-factor
    decomposition k_th = t(-tan(th/2)) nbar(sin th) t(-tan(th/2)) with
    nbar(u) = g(-I) sigma t(-u) sigma.
    """
    quarter = int(np.round(theta / (math.pi / 2)))
    th = theta - quarter * math.pi / 2
    word = [("sigma", None)] * (quarter % 4)
    if abs(th) > 1e-15:
        tn = -math.tan(th / 2) * np.eye(n)
        word += [("t", tn), ("g", -np.eye(n)), ("sigma", None),
                 ("t", -math.sin(th) * np.eye(n)), ("sigma", None), ("t", tn)]
    return word


def sw_rotation_apply(m_index, theta: float, f: GaussianState) -> GaussianState:
    """The pinned rotation operator R~(i, theta).

    The generator word realizes the rotation up to a unit phase depending on
    the word; the phase is pinned so that the ground state is an eigenvector
    with eigenvalue exp(-i m n theta / 2) (the oscillator ground level).
    Unreduced theta keeps the double-cover behaviour:
    R~(i, theta + 2 pi) = (-1)^{mn} R~(i, theta).
    """
    mm = index_matrix(m_index)
    m, n = f.shape
    word = rotation_word(theta, n)
    if not word:
        # k_theta reduced to the identity word; the pin still carries the
        # double-cover phase (theta a multiple of 2 pi need not act trivially)
        return f.scaled(cmath.exp(-1j * m * n * theta / 2))
    base = ground_state(n, m)
    zeta, _ = weil_apply_word(mm, word, base)
    pin = cmath.exp(-1j * m * n * theta / 2) / zeta.c
    out, _ = weil_apply_word(mm, word, f)
    return out.scaled(pin)


def sw_iwasawa_apply(m_index, coords: IwasawaCoords, f: GaussianState,
                     theta: float | None = None) -> GaussianState:
    """R~(tau, theta) = U(t(x I)) U(g(sqrt(y) I)) R~(i, theta).

    ``theta`` overrides the reduced angle stored in ``coords`` when the
    caller needs the unreduced (double cover) angle.
    """
    n = f.shape[1]
    x, y = coords.tau.real, coords.tau.imag
    th = coords.theta if theta is None else theta
    out = sw_rotation_apply(m_index, th, f)
    out = weil_generator_apply(m_index, ("g", math.sqrt(y) * np.eye(n)), out)
    return weil_generator_apply(m_index, ("t", x * np.eye(n)), out)


# ---------------------------------------------------------------------------
# Covariance check against the J* factor


def covariance_residual(m_index, word, h: HeisenbergElement, p: SiegelJacobiPoint,
                        branch: complex | str = "auto", grid=None):
    """Sup over the grid of |omega(g~) F_{O,Z}(x) - J*(g~,(O,Z))^{-1} F_{g~.(O,Z)}(x)|.

    The element is (word product, h) with a metaplectic branch; ``"auto"``
    selects the lift matching the word and reports it.

    Returns (residual, eps_used).
    """
    mm = index_matrix(m_index)
    m, n = p.m, p.n
    if h.shape != (m, n):
        raise DomainError("dimension mismatch")
    f = covariant_map(mm, p)
    st = sw_heisenberg_apply(mm, h, f)
    if word:
        st, _ = weil_apply_word(mm, word, st)
        g = word_to_symplectic(word, n)
    else:
        g = SymplecticElement(np.eye(2 * n))
    elt = JacobiElement(g, h)
    target = covariant_map(mm, jacobi_act(elt, p))
    if grid is None:
        grid = sample_grid(m, n)
    lift_plus, lift_minus = metaplectic_lifts(g)
    if branch == "auto":
        candidates = [lift_plus, lift_minus]
    else:
        candidates = [MetaplecticElement(g, complex(branch))]
    best = None
    for lift in candidates:
        js = J_star_M(mm, lift, h, p)
        res = max(abs(evaluate(st, mm, x) - evaluate(target, mm, x) / js) for x in grid)
        if best is None or res < best[0]:
            best = (res, lift.eps)
    return best


def check_covariance(m_index, word, h: HeisenbergElement, p: SiegelJacobiPoint,
                     branch: complex | str = "auto", grid=None) -> float:
    """Covariance residual (see covariance_residual); returns the sup norm."""
    return covariance_residual(m_index, word, h, p, branch=branch, grid=grid)[0]
