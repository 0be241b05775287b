"""Randomized verification suites behind the CLI and the acceptance tests.

Each suite runs ``count`` cases from a seeded generator and returns a plain
dict (JSON-ready) with the worst residual, its tolerance, a pass flag and
replay data for any failures.  All sampling is tamed to the moderate regime
in which absolute residual gates are meaningful for double precision
(Gaussian magnitudes stay around 1; see the sampling helpers).
"""

from __future__ import annotations

import math

import numpy as np

from . import serialize
from .automorphy import theta_multiplier
from .errors import DomainError
from .groups import (HeisenbergElement, JacobiElement, SiegelJacobiPoint,
                     SymplecticElement)
from .maass import casimir_km, sample_function
from .maslov import (cocycle_clm, cocycle_sl2, coordinate_lagrangian, maslov3,
                     maslov_chain, random_lagrangian, random_symplectic,
                     tau_ell)
from .theta import siegel_theta, theta_M, theta_weight_quarter
from .weil import covariance_residual
from .automorphy import slash_km_nh


# --- tamed samplers ---------------------------------------------------------


def rand_sym(rng, n, scale=0.5):
    b = scale * rng.normal(size=(n, n))
    return 0.5 * (b + b.T)


def rand_word(rng, n, max_len=6, scale=0.45, allow_neg_g=True):
    word = []
    for _ in range(rng.integers(1, max_len + 1)):
        kind = rng.choice(["t", "g", "sigma"])
        if kind == "t":
            word.append(("t", rand_sym(rng, n, scale)))
        elif kind == "g":
            al = np.eye(n) + scale * rng.normal(size=(n, n))
            while not (0.4 < abs(np.linalg.det(al)) < 2.5):
                al = np.eye(n) + scale * rng.normal(size=(n, n))
            if allow_neg_g and rng.random() < 0.25:
                al = -al
            word.append(("g", al))
        else:
            word.append(("sigma", None))
    return word


def rand_point(rng, n, m) -> SiegelJacobiPoint:
    x = rand_sym(rng, n, 0.4)
    y = np.eye(n) + 0.2 * rng.normal(size=(n, n))
    y = y @ y.T
    z = 0.3 * (rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n)))
    return SiegelJacobiPoint(x + 1j * 0.5 * (y + y.T), z)


def rand_heisenberg(rng, n, m, scale=0.5) -> HeisenbergElement:
    lam = scale * rng.normal(size=(m, n))
    mu = scale * rng.normal(size=(m, n))
    kap = rand_sym(rng, m, 1.0) + 0.5 * (lam @ mu.T - mu @ lam.T)
    return HeisenbergElement(lam, mu, kap)


def rand_index(rng, m):
    q = 0.3 * rng.normal(size=(m, m))
    mm = np.eye(m) + q @ q.T
    return 0.5 * (mm + mm.T)


def rand_sl2(rng, scale=1.0):
    while True:
        a, b, c = rng.normal(size=3) * scale
        if abs(a) > 1e-3:
            return np.array([[a, b], [c, (1 + b * c) / a]])


def rand_gamma04(rng, max_entry=50):
    """Random element of Gamma_0(4) with entries bounded by max_entry."""
    while True:
        c = 4 * int(rng.integers(-max_entry // 4, max_entry // 4 + 1))
        d = int(rng.integers(-max_entry, max_entry + 1))
        if d % 2 == 0 or math.gcd(abs(c), abs(d)) != 1:
            continue
        if c == 0:
            if abs(d) != 1:
                continue
            b = int(rng.integers(-max_entry, max_entry + 1))
            a = d  # ad = 1 with c = 0
            return np.array([[a, b * d], [0, d]])
        # solve a d - b c = 1 with minimal |a|
        a = pow(d, -1, abs(c))
        # center a
        if a > abs(c) // 2:
            a -= abs(c)
        b = (a * d - 1) // c
        if a * d - b * c != 1:
            continue
        if max(abs(a), abs(b)) <= max_entry:
            return np.array([[a, b], [c, d]])


# --- suites -----------------------------------------------------------------


def suite_maslov_axioms(seed: int, count: int, tol: float = 0.0) -> dict:
    """Lemma-style axioms for the triple/chain index, exact integer equality."""
    rng = np.random.default_rng(seed)
    failures = []
    worst = 0
    checks = 0
    for i in range(count):
        n = int(rng.choice([1, 2, 3]))
        ls = [random_lagrangian(rng, n) for _ in range(6)]
        g = random_symplectic(rng, n)
        l1, l2, l3, l4 = ls[:4]
        t123 = maslov3(l1, l2, l3)
        defects = {
            "g_invariance": maslov3(l1.transformed(g), l2.transformed(g), l3.transformed(g)) - t123,
            "antisym_12": maslov3(l2, l1, l3) + t123,
            "antisym_23": maslov3(l1, l3, l2) + t123,
            "cocycle4": t123 - maslov3(l1, l2, l4) - maslov3(l2, l3, l4) - maslov3(l3, l1, l4),
            "chain_circular": maslov_chain([l1, l2, l3, l4]) - maslov_chain([l2, l3, l4, l1]),
            "chain_reverse_pair": maslov_chain([l1, l2, l3, l4]) + maslov_chain([l2, l1, l4, l3]),
        }
        # (d): chain decomposition against an auxiliary Lagrangian, d up to 6
        d = int(rng.integers(3, 7))
        chain = ls[:d]
        aux = ls[-1] if d < 6 else random_lagrangian(rng, n)
        rhs = sum(maslov3(chain[j], chain[j + 1], aux) for j in range(d - 1))
        rhs += maslov3(chain[-1], chain[0], aux)
        defects["chain_aux"] = maslov_chain(chain) - rhs
        # (g): additive cocycle identity for tau_l
        g1, g2, g3 = (random_symplectic(rng, n) for _ in range(3))
        l = coordinate_lagrangian(n)
        defects["tau_cocycle"] = (tau_ell(l, g1 @ g2, g3) + tau_ell(l, g1, g2)
                                  - tau_ell(l, g1, g2 @ g3) - tau_ell(l, g2, g3))
        checks += len(defects)
        bad = {k: v for k, v in defects.items() if v != 0}
        worst = max(worst, max((abs(v) for v in defects.values()), default=0))
        if bad:
            failures.append({"case": i, "n": n, "defects": bad,
                             "lagrangians": [serialize.encode_matrix(l.basis)
                                             for l in ls],
                             "g": serialize.encode_matrix(g.g)})
    return {"suite": "maslov-axioms", "seed": seed, "count": count, "checks": checks,
            "max_residual": float(worst), "tol": tol, "passed": not failures,
            "failures": failures[:5]}


def suite_cocycles(seed: int, count: int, tol: float = 1e-12) -> dict:
    """cocycle_clm vs cocycle_sl2 on SL(2) pairs; the cocycle condition on Sp(2)."""
    rng = np.random.default_rng(seed)
    failures = []
    worst = 0.0
    l1 = coordinate_lagrangian(1)
    for i in range(count):
        m1, m2 = rand_sl2(rng), rand_sl2(rng)
        g1, g2 = SymplecticElement(m1), SymplecticElement(m2)
        d = abs(cocycle_clm(1, l1, g1, g2) - cocycle_sl2(m1, m2, 1))
        worst = max(worst, d)
        if d > tol:
            failures.append({"case": i, "kind": "sl2-match",
                             "m1": serialize.encode_matrix(m1),
                             "m2": serialize.encode_matrix(m2), "defect": d})
    l2 = coordinate_lagrangian(2)
    mval = 1.0
    for i in range(max(1, count // 5)):
        g1, g2, g3 = (random_symplectic(rng, 2) for _ in range(3))
        lhs = cocycle_clm(mval, l2, g1 @ g2, g3) * cocycle_clm(mval, l2, g1, g2)
        rhs = cocycle_clm(mval, l2, g1, g2 @ g3) * cocycle_clm(mval, l2, g2, g3)
        d = abs(lhs - rhs)
        worst = max(worst, d)
        if d > tol:
            failures.append({"case": i, "kind": "cocycle-condition", "defect": d})
    return {"suite": "cocycles", "seed": seed, "count": count,
            "max_residual": float(worst), "tol": tol, "passed": not failures,
            "failures": failures[:5]}


def suite_covariance(seed: int, count: int, tol: float = 1e-9) -> dict:
    """Covariance residuals for random generator words at random points."""
    rng = np.random.default_rng(seed)
    failures = []
    worst = 0.0
    for i in range(count):
        n = int(rng.choice([1, 2]))
        m = 1
        mm = rand_index(rng, m)
        word = rand_word(rng, n)
        h = rand_heisenberg(rng, n, m)
        p = rand_point(rng, n, m)
        res, eps = covariance_residual(mm, word, h, p)
        worst = max(worst, res)
        if res > tol:
            failures.append({"case": i, "n": n, "residual": res,
                             "word": [[k, serialize.encode_matrix(v)] if v is not None
                                      else [k, None] for k, v in word],
                             "heisenberg": serialize.encode_heisenberg(h),
                             "point": serialize.encode_point(p)})
    return {"suite": "covariance", "seed": seed, "count": count,
            "max_residual": float(worst), "tol": tol, "passed": not failures,
            "failures": failures[:5]}


def suite_theta_laws(seed: int, count: int, tol: float = 1e-10) -> dict:
    """Siegel-theta translation/inversion laws and the Gamma_0(4) multiplier."""
    rng = np.random.default_rng(seed)
    failures = []
    worst_translate = 0.0
    worst_invert = 0.0
    worst_mult = 0.0
    # translation invariance Omega -> Omega + 2b, integral symmetric b
    for i in range(max(3, count // 4)):
        n = int(rng.choice([1, 2]))
        p = rand_point(rng, n, 1)
        b = rng.integers(-2, 3, size=(n, n))
        b = b + b.T
        v1 = siegel_theta(p.omega, 1e-13).value
        v2 = siegel_theta(p.omega + 2 * b, 1e-13).value
        worst_translate = max(worst_translate, abs(v1 - v2))
        mm = np.array([[2.0]])
        q = SiegelJacobiPoint(p.omega, rng.normal(size=(1, n)) * 0.4 + 0.2j * rng.normal(size=(1, n)))
        shift = rng.integers(-2, 3, size=(1, n)).astype(float)
        w1 = theta_M(mm, q, 1e-13).value
        w2 = theta_M(mm, SiegelJacobiPoint(q.omega, q.z + shift), 1e-13).value
        worst_translate = max(worst_translate, abs(w1 - w2))
    # n = 1 inversion
    for y in (2.0, 3.0, 5.0):
        v1 = siegel_theta(np.array([[1j / y]]), 1e-13).value
        v2 = math.sqrt(y) * siegel_theta(np.array([[1j * y]]), 1e-13).value
        worst_invert = max(worst_invert, abs(v1 - v2))
    # theta multiplier quotient
    for i in range(count):
        gam = rand_gamma04(rng)
        tau = complex(rng.normal() * 0.8, 0.5 + rng.random())
        a, b, c, d = (float(v) for v in gam.ravel())
        tau2 = (a * tau + b) / (c * tau + d)
        quot = theta_weight_quarter(tau2, 1e-13) / theta_weight_quarter(tau, 1e-13)
        d_mult = abs(quot - theta_multiplier(gam, tau))
        worst_mult = max(worst_mult, d_mult)
        if d_mult > tol:
            failures.append({"case": i, "gamma": serialize.encode_matrix(gam),
                             "tau": serialize.encode_complex(tau), "defect": d_mult})
    worst = max(worst_translate, worst_invert, worst_mult)
    if worst_translate > 1e-12 or worst_invert > 1e-9:
        failures.append({"kind": "theta-law", "translate": worst_translate,
                         "invert": worst_invert})
    return {"suite": "theta-laws", "seed": seed, "count": count,
            "max_residual": float(worst), "tol": tol, "passed": not failures,
            "details": {"translate": worst_translate, "invert": worst_invert,
                        "multiplier": worst_mult},
            "failures": failures[:5]}


def suite_casimir_invariance(seed: int, count: int, tol: float = 1e-4) -> dict:
    """Relative invariance defect of the weight-(k, m) Casimir at h = 1e-3."""
    rng = np.random.default_rng(seed)
    func = sample_function("poly-exp")
    k, m = 3, 2
    failures = []
    worst = 0.0
    base_points = [(0.2 + 1.1j, 0.25 + 0.3j), (-0.3 + 0.9j, 0.1 - 0.2j),
                   (0.05 + 1.4j, -0.3 + 0.15j), (0.4 + 1.0j, 0.2 + 0.05j),
                   (-0.15 + 1.2j, -0.1 - 0.1j)]
    for i in range(count):
        e = 0.06
        mat = np.eye(2) + e * rng.normal(size=(2, 2))
        mat[1, 1] = (1 + mat[0, 1] * mat[1, 0]) / mat[0, 0]
        lam, mu, kap = (e * float(v) for v in rng.normal(size=3))
        elt = JacobiElement(SymplecticElement(mat),
                            HeisenbergElement(np.array([[lam]]), np.array([[mu]]),
                                              np.array([[kap]])))
        tau, z = base_points[i % len(base_points)]
        lhs = casimir_km(slash_km_nh(func, k, m, elt), k, m, tau, z)
        cf = lambda t, w: casimir_km(func, k, m, t, w)
        rhs = slash_km_nh(cf, k, m, elt)(tau, z)
        rel = abs(lhs - rhs) / max(1e-12, abs(rhs))
        worst = max(worst, rel)
        if rel > tol:
            failures.append({"case": i, "relative_defect": rel,
                             "element": serialize.encode_jacobi(elt)})
    # Richardson consistency on the truncation-dominated step range
    tau, z = 0.2 + 1.1j, 0.25 + 0.3j
    vals = [casimir_km(func, k, m, tau, z, h) for h in (4e-3, 2e-3, 1e-3)]
    ratio = abs(vals[0] - vals[1]) / abs(vals[1] - vals[2])
    if not (3.5 <= ratio <= 4.5):
        failures.append({"kind": "richardson", "ratio": ratio})
    return {"suite": "casimir-invariance", "seed": seed, "count": count,
            "max_residual": float(worst), "tol": tol, "passed": not failures,
            "details": {"richardson_ratio": float(ratio)},
            "failures": failures[:5]}


SUITES = {
    "maslov-axioms": suite_maslov_axioms,
    "cocycles": suite_cocycles,
    "covariance": suite_covariance,
    "theta-laws": suite_theta_laws,
    "casimir-invariance": suite_casimir_invariance,
}


def run_suite(name: str, seed: int, count: int, tol: float | None = None) -> dict:
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; available: {sorted(SUITES)}")
    fn = SUITES[name]
    if tol is None:
        return fn(seed, count)
    return fn(seed, count, tol)
