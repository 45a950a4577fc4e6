"""Main terms of the cubic moment: diagonal, M/N terms and coordinate-plane sums.

Conventions: q is odd square-free (prime where stated), kappa the weight,
alpha a ShiftTriple. zeta_q is zeta with the Euler factors at p | q removed and
L_inf(1/2 + u) = (q/2pi)^u Gamma(u + kappa/2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .characters import quadratic_character
from .expsums import G_bruteforce, G_factored, GFactorizationInput
from .lfun import xzeta, zeta
from .numth import check_odd_squarefree, euler_phi, is_prime, moebius, prime_factors, primes_upto
from .specfun import (
    TWO_PI,
    ContourSpec,
    PoleProximityError,
    ShiftTriple,
    V_tail_cutoff,
    V_weight_closed,
    W_check_mellin_plane,
    _zeta_q_grid,
    log_gamma,
)

SIGNS = tuple(product((1, -1), repeat=3))
LADDER = (0.2, 0.1, 0.05)


# ---------------------------------------------------------------- building blocks

def _grid_eval(fn, z: np.ndarray) -> np.ndarray:
    """fn on every distinct entry of z, broadcast back."""
    z = np.asarray(z, dtype=complex)
    uniq, inverse = np.unique(z.ravel(), return_inverse=True)
    vals = np.array([fn(complex(v)) for v in uniq])
    return vals[inverse].reshape(z.shape)


def xzeta_q_array(x, q: int):
    """x zeta_q(1 + x), vectorized with repeated values evaluated once."""
    x = np.asarray(x, dtype=complex)
    local = np.ones_like(x)
    for p in prime_factors(q):
        local = local * (1 - np.exp(-(1 + x) * math.log(p)))
    return _grid_eval(xzeta, x) * local


def L_inf(u, q: int, kappa: int):
    u = np.asarray(u, dtype=complex)
    return np.exp(u * math.log(q / TWO_PI) + log_gamma(u + kappa / 2))


def L_func(u1, u2, u3, q: int, kappa: int):
    """(u1+u2)(u2+u3)(u3+u1) MT(u), written through x zeta_q(1 + x) so it stays finite."""
    u1, u2, u3 = (np.asarray(u, dtype=complex) for u in (u1, u2, u3))
    for u in (u1, u2, u3):
        if np.any(u.real <= -kappa / 2):
            raise ValueError("L is only defined for Re u_i > -kappa/2")
    out = (xzeta_q_array(u1 + u2, q) * xzeta_q_array(u2 + u3, q) * xzeta_q_array(u3 + u1, q)
           * L_inf(u1, q, kappa) * L_inf(u2, q, kappa) * L_inf(u3, q, kappa))
    return complex(out) if out.ndim == 0 else out


def main_term(alpha, q: int, kappa: int) -> complex:
    """MT(F, alpha) = prod zeta_q(1 + a_i + a_j) prod L_inf(1/2 + a_i)."""
    a1, a2, a3 = (complex(a) for a in alpha)
    den = (a1 + a2) * (a2 + a3) * (a3 + a1)
    if abs(den) < 1e-14:
        raise PoleProximityError("MT has a pole when a_i + a_j = 0")
    return L_func(a1, a2, a3, q, kappa) / den


def _is_degenerate(alpha, tol=1e-12) -> bool:
    a = [complex(x) for x in alpha]
    return any(abs(x) < tol for x in a) or any(
        abs(a[i] - s * a[j]) < tol for i in range(3) for j in range(i + 1, 3) for s in (1, -1))


def ladder_shift(delta: float, q: int) -> tuple:
    return tuple(k * delta / math.log(q) for k in (1, 2, 3))


def richardson(f, deltas=LADDER, even: bool = False):
    """Extrapolate f(delta) to delta = 0 from a halving ladder.

    The generic rule cancels the delta and delta^2 terms. With even set, f is
    taken to be a function of delta^2 (true after the sign symmetrization)
    and the delta^2 and delta^4 terms are cancelled instead.
    """
    d1, d2, d3 = deltas
    if not (abs(d2 - d1 / 2) < 1e-15 and abs(d3 - d2 / 2) < 1e-15):
        raise ValueError("ladder must halve at each step")
    f1, f2, f3 = (f(d) for d in deltas)
    if even:
        return (f1 - 20 * f2 + 64 * f3) / 45, abs(f3 - f2)
    return (f1 - 6 * f2 + 8 * f3) / 3, abs(f3 - f2)


def with_ladder(fn, alpha, q: int, *args, extrapolate: bool = True, even: bool = False):
    """fn(alpha) directly, or by Richardson extrapolation when alpha is degenerate."""
    if not _is_degenerate(alpha):
        return fn(tuple(complex(a) for a in alpha), q, *args)
    if not extrapolate:
        raise PoleProximityError("degenerate shifts need extrapolate=True")
    base = [complex(a) for a in alpha]
    value, _ = richardson(lambda d: fn(tuple(b + e for b, e in zip(base, ladder_shift(d, q))), q, *args),
                          even=even and not any(base))
    return value


def main_term_symmetrized(alpha, q: int, kappa: int, extrapolate: bool = True) -> complex:
    """sum over sigma in {+-1}^3 of MT(sigma alpha); holomorphic, so alpha = 0 goes through the ladder."""
    def total(a, q, kappa):
        return sum(main_term([s * x for s, x in zip(sg, a)], q, kappa) for sg in SIGNS)

    return with_ladder(total, alpha, q, kappa, extrapolate=extrapolate, even=True)


# ---------------------------------------------------------------- the diagonal

def _V_on_integers(alpha, q: int, kappa: int, eps: float):
    n_max = int(V_tail_cutoff(kappa, complex(alpha).real, eps) * q) + 2
    n = np.arange(1, n_max + 1)
    return np.concatenate([[0.0], V_weight_closed(alpha, n / q, kappa)])


def diagonal_direct(alpha, q: int, kappa: int, eps: float = 1e-14) -> complex:
    """D_alpha = sum over (n1, q) = 1 of (1/n1) sum over n1 = n2 n3 of V(n1/q, n2/q, n3/q).

    V(x1, x2, x3) carries the inner sum over d coprime to q. Every sum is
    finite once V is cut where it drops below eps.
    """
    check_odd_squarefree(q)
    a1, a2, a3 = (complex(a) for a in alpha)
    V1 = _V_on_integers(a1, q, kappa, eps)
    V2 = _V_on_integers(a2, q, kappa, eps)
    V3 = _V_on_integers(a3, q, kappa, eps)
    N1 = len(V1) - 1
    coprime = np.gcd(np.arange(len(V1) + len(V2) + len(V3)), q) == 1
    total = 0j
    for n2 in range(1, N1 + 1):
        if not coprime[n2]:
            continue
        for n3 in range(1, N1 // n2 + 1):
            n1 = n2 * n3
            if not coprime[n3]:
                continue
            dmax = min((len(V2) - 1) // n2, (len(V3) - 1) // n3)
            if dmax < 1:
                continue
            d = np.arange(1, dmax + 1)
            d = d[coprime[d]]
            inner = np.sum(V2[d * n2] * V3[d * n3] / d)
            total += V1[n1] / n1 * inner
    return complex(total)


def _contour_grid(spec: ContourSpec):
    return spec.nodes()


def diagonal_contour(alpha, q: int, kappa: int, nodes_per_unit: int = 12,
                     height: float = 28.0) -> complex:
    """The triple contour integral of L(u)/(prod (u_i - a_i) prod (u_i + u_j)) on Re u = 1/3, 5/12, 1/2.

    Written as sum f1_a f2_b f3_c Z12_ab Z23_bc Z31_ca with Z_ij = zeta_q(1 + u_i + u_j),
    which costs one matrix product.
    """
    f, u = [], []
    for a, re in zip(alpha, (1 / 3, 5 / 12, 1 / 2)):
        a = complex(a)
        if a.real >= re - 0.05:
            raise PoleProximityError("shift too close to the contour")
        s, w = ContourSpec(re, height, nodes_per_unit).nodes()
        u.append(s)
        f.append(w * L_inf(s, q, kappa) / (s - a))
    Z12 = _zeta_q_grid(1 + u[0][:, None] + u[1][None, :], q)
    Z23 = _zeta_q_grid(1 + u[1][:, None] + u[2][None, :], q)
    Z31 = _zeta_q_grid(1 + u[2][:, None] + u[0][None, :], q)
    M = Z23 @ (f[2][:, None] * Z31)
    return complex(np.sum(f[0][:, None] * Z12 * f[1][None, :] * M.T))


def M_term(alpha, beta, gamma, q: int, kappa: int, spec: ContourSpec | None = None) -> complex:
    """(1/2 pi i) int on Re u = 1/3 of L(u, -u, gamma) / ((u - alpha)(-u - beta)(gamma - u)(gamma + u)) du."""
    spec = spec or ContourSpec(1 / 3, height_cut=40.0, nodes_per_unit=32)
    alpha, beta, gamma = complex(alpha), complex(beta), complex(gamma)
    for pole in (alpha, -beta, gamma, -gamma):
        if abs(pole.real - spec.real_part) < 1e-3:
            raise PoleProximityError("pole on the contour of M")
    u, w = spec.nodes()
    num = L_func(u, -u, gamma, q, kappa)
    den = (u - alpha) * (-u - beta) * (gamma - u) * (gamma + u)
    return complex(np.sum(w * num / den))


def N_term(alpha, beta, gamma, q: int, kappa: int) -> complex:
    alpha, beta, gamma = complex(alpha), complex(beta), complex(gamma)
    return (M_term(alpha, beta, gamma, q, kappa)
            + L_func(beta, -beta, gamma, q, kappa) / ((-beta - alpha) * (gamma + beta) * (gamma - beta))
            + L_func(gamma, -gamma, gamma, q, kappa) / ((gamma - alpha) * (-gamma - beta) * (2 * gamma)))


def _diagonal_asymptotic(alpha, q, kappa):
    a1, a2, a3 = alpha
    return (main_term(alpha, q, kappa)
            + N_term(a2, a3, a1, q, kappa) + N_term(a1, a3, a2, q, kappa) + N_term(a1, a2, a3, q, kappa)
            + 0.5 * L_func(0, 0, 0, q, kappa) / ((-a1) * (-a2) * (-a3)))


def diagonal_asymptotic(alpha, q: int, kappa: int, extrapolate: bool = False) -> complex:
    """MT + three N terms + L(0,0,0)/(2 (-a1)(-a2)(-a3)): the diagonal up to O(q^(-1/3+eps))."""
    return with_ladder(_diagonal_asymptotic, alpha, q, kappa, extrapolate=extrapolate)


# ---------------------------------------------------------------- coordinate planes

@dataclass(frozen=True)
class PlaneSums:
    pattern: str
    lhs: complex            # direct summation over (m, r)
    lhs_closed: complex     # after summing the Dirichlet series in closed form
    rhs: complex            # the lemma's main term (0 for the planes off the axes)
    truncation: float       # estimate for the truncated m and r sums


def ramanujan_vector(q: int, m: np.ndarray) -> np.ndarray:
    """R_q(m) = sum over d | (q, m) of d mu(q/d), vectorized in m."""
    out = np.zeros(m.shape)
    for d in range(1, q + 1):
        if q % d == 0:
            mu = moebius(q // d)
            if mu:
                out += d * mu * (m % d == 0)
    return out


def ramanujan_dirichlet_identity(q: int, s, N: int):
    """Partial sum of R_q(m) m^-s against zeta(s) q^(1-s) prod_(p|q) (1 - p^(s-1))."""
    s = complex(s)
    if s.real <= 1:
        raise ValueError("need Re s > 1")
    m = np.arange(1, N + 1)
    lhs = complex(np.sum(ramanujan_vector(q, m) * np.exp(-s * np.log(m))))
    rhs = zeta(s) * q ** (1 - s)
    for p in prime_factors(q):
        rhs *= 1 - p ** (s - 1)
    return lhs, complex(rhs), abs(lhs - rhs)


def _ramanujan_partial(q: int, w: np.ndarray, M: int):
    """sum_(m <= M) R_q(m) m^-w on the distinct values of w, plus a tail bound for each w."""
    m = np.arange(1, M + 1)
    R = ramanujan_vector(q, m)
    logm = np.log(m)
    flat = w.ravel()
    key = np.round(flat.imag * 2**20)
    _, first, inv = np.unique(key, return_index=True, return_inverse=True)
    reps = flat[first]
    sigma = flat.real[0]
    vals = np.empty(len(reps), dtype=complex)
    for k in range(0, len(reps), 64):
        vals[k:k + 64] = np.exp(-np.outer(reps[k:k + 64], logm)) @ R
    # partial summation with |sum_(m <= x) R_q(m)| <= S
    S = float(np.max(np.abs(np.cumsum(ramanujan_vector(q, np.arange(1, q + 1))))))
    tail = S * M ** (-sigma) * (1 + np.abs(reps) / sigma)
    return vals[inv].reshape(w.shape), tail[inv].reshape(w.shape)


def _sign_factor(q: int, kappa: int) -> complex:
    """chi(-1) from G times i^kappa from the Mellin form of J."""
    return quadratic_character(q)(-1) * 1j**kappa


def _axis_roles(pattern: str, alpha):
    a1, a2, a3 = alpha
    return {"m00": ((a2, a3), a1), "0m0": ((a1, a3), a2), "00m": ((a1, a2), a3)}[pattern]


def _axis_closed(pattern, alpha, q, kappa, spec_s, spec_u):
    (a, b), c = _axis_roles(pattern, alpha)
    s, ws = spec_s.nodes()
    u, wu = spec_u.nodes()
    half = kappa / 2
    fs = ws * np.exp(log_gamma(half - s) + log_gamma(half + s)) / ((s - a) * (s - b))
    fu = wu * np.exp(log_gamma(half + u) + u * math.log(q / TWO_PI)) / (u - c)
    Zp = _zeta_q_grid(1 + s[:, None] + u[None, :], q)
    Zm = _zeta_q_grid(1 - s[:, None] + u[None, :], q)
    return _sign_factor(q, kappa) * euler_phi(q) / q * complex(fs @ (Zp * Zm) @ fu)


def _mellin_e_sum(w, P):
    """Gamma(w)(2 pi)^-w 2 cos(pi w/2) P(w): the sum over m of both signs in the Mellin form of e(-m x)."""
    return np.exp(log_gamma(w) - w * math.log(TWO_PI)) * 2 * np.cos(math.pi * w / 2) * P


def _axis_direct(pattern, alpha, q, kappa, M, spec_s, spec_u, r_primes):
    (a, b), c = _axis_roles(pattern, alpha)
    s, ws = spec_s.nodes()
    u, wu = spec_u.nodes()
    half = kappa / 2
    S, U = np.meshgrid(s, u, indexing="ij")
    W = S - U
    P, Ptail = _ramanujan_partial(q, W, M)
    fs = ws * np.exp(log_gamma(half - s) + log_gamma(half + s) + s * math.log(q)) / ((s - a) * (s - b))
    fu = wu * np.exp(log_gamma(half + u) - u * math.log(TWO_PI)) / (u - c)
    core = _mellin_e_sum(W, 1.0)
    if pattern == "m00":
        # sum over r coprime to q of r^(-1-s-u) prod_(p | r)(1 - p^-w), as an Euler product
        A = 1 + S + U
        rfac = np.ones_like(S)
        for p in r_primes:
            if q % p == 0:
                continue
            x = np.exp(-A * math.log(p))
            rfac = rfac * (1 + (1 - np.exp(-W * math.log(p))) * x / (1 - x))
        extra = _zeta_q_grid(1 + 2 * S, q) * rfac
    else:
        extra = _zeta_q_grid(1 + S + U, q)
    kernel = fs[:, None] * fu[None, :] * core * extra
    pref = _sign_factor(q, kappa) * euler_phi(q) / q**2
    value = pref * complex(np.sum(kernel * P))
    trunc = abs(pref) * float(np.sum(np.abs(kernel) * Ptail))
    return value, trunc


def _plane_roles(pattern: str, alpha):
    a1, a2, a3 = alpha
    return {"0mm": (a1, (a2, a3)), "mm0": (a3, (a1, a2)), "m0m": (a2, (a1, a3))}[pattern]


def _plane_closed(pattern, alpha, q, kappa, spec_s, spec_u):
    a, (b, c) = _plane_roles(pattern, alpha)
    s, ws = spec_s.nodes()
    u, wu = spec_u.nodes()
    half = kappa / 2
    fs = ws * np.exp(s * math.log(TWO_PI / q) + log_gamma(half - s)) / (s - a)
    gu = np.exp(log_gamma(half + u) + u * math.log(q / TWO_PI))
    Zm = _zeta_q_grid(1 - s[:, None] + u[None, :], q)
    F2 = Zm * (wu * gu / (u - b))[None, :]
    F3 = Zm * (wu * gu / (u - c))[None, :]
    Z = _zeta_q_grid(1 + u[:, None] + u[None, :], q)
    per_s = np.sum((F2 @ Z) * F3, axis=1)
    return _sign_factor(q, kappa) * complex(fs @ per_s)


def _plane_direct(pattern, alpha, q, kappa, M, spec_s, spec_u):
    """Only 0mm: both m-sums as truncated Dirichlet polynomials inside the integrand."""
    a, (b, c) = _plane_roles(pattern, alpha)
    s, ws = spec_s.nodes()
    u, wu = spec_u.nodes()
    half = kappa / 2
    W = s[:, None] - u[None, :]
    P, Ptail = _ramanujan_partial(q, W, M)
    fs = ws * np.exp(s * math.log(TWO_PI * q) + log_gamma(half - s)) / (s - a)
    gu = wu * np.exp(log_gamma(half + u) - u * math.log(TWO_PI))
    core = _mellin_e_sum(W, 1.0)
    F2 = core * P * (gu / (u - b))[None, :]
    F3 = core * P * (gu / (u - c))[None, :]
    Z = _zeta_q_grid(1 + u[:, None] + u[None, :], q)
    pref = _sign_factor(q, kappa) / q**2
    value = pref * complex(fs @ np.sum((F2 @ Z) * F3, axis=1))
    # first-order effect of the truncation in either factor
    B2 = np.abs(core * Ptail * (gu / (u - b))[None, :])
    B3 = np.abs(core * Ptail * (gu / (u - c))[None, :])
    absZ = np.abs(Z)
    trunc = abs(pref) * float(np.abs(fs) @ (np.sum((B2 @ absZ) * np.abs(F3), axis=1)
                                            + np.sum((np.abs(F2) @ absZ) * B3, axis=1)))
    return value, trunc


def lemma_000_rhs(alpha, q: int, kappa: int) -> complex:
    a1, a2, a3 = (complex(a) for a in alpha)
    out = 0.5 * L_func(0, 0, 0, q, kappa) / ((-a1) * (-a2) * (-a3))
    for x, y, z in ((a1, a2, a3), (a2, a1, a3), (a3, a1, a2)):
        out += L_func(x, x, -x, q, kappa) / ((x - y) * (x - z) * (2 * x))
    return complex(out)


def coordinate_plane_sum(pattern: str, alpha, q: int, kappa: int, trunc: int = 20000,
                         r_max: int = 500) -> PlaneSums:
    """Left and right sides of the coordinate-plane lemmas.

    pattern is one of axes-000, m00, 0m0, 00m, 0mm, mm0, m0m. The direct left
    side keeps the sums over m (|m| <= trunc) and r explicit inside the
    Mellin integrand, on contours Re s = 7/4, Re u = 1/2 where they converge
    absolutely; the closed left side replaces them by their Dirichlet series
    values. Needs q prime, kappa >= 4 for the direct sums, and the sign
    condition chi(-1) = i^kappa.
    """
    if not is_prime(q):
        raise ValueError("the coordinate-plane formulas are for prime q")
    alpha = tuple(complex(a) for a in alpha)
    if max(abs(a.real) for a in alpha) >= 0.2:
        raise ValueError("shifts too large for the default contours")
    base_s = ContourSpec(0.75, height_cut=30.0, nodes_per_unit=8)
    base_u = ContourSpec(0.25, height_cut=30.0, nodes_per_unit=16)
    far_s = ContourSpec(1.75, height_cut=30.0, nodes_per_unit=16)
    far_u = ContourSpec(0.5, height_cut=30.0, nodes_per_unit=16)
    direct_ok = kappa >= 4
    if pattern == "axes-000":
        # G(0,0,0,rq) vanishes for r > 1; the closed form confirms it for small r
        chi = quadratic_character(q)
        total = 0j
        for r in (1, 2, 3, 5):
            G = (G_bruteforce(0, 0, 0, q, chi) if r == 1
                 else G_factored(GFactorizationInput(0, 0, 0, r, q), chi))
            if abs(G) > 1e-9 * q**3:
                W = W_check_mellin_plane("000", (0, 0, 0), r * q, alpha, q, kappa).value
                total += G * W / (r * q) ** 2
        return PlaneSums(pattern, total, total, lemma_000_rhs(alpha, q, kappa), 0.0)
    if pattern in ("m00", "0m0", "00m"):
        closed = _axis_closed(pattern, alpha, q, kappa, base_s, base_u)
        if direct_ok:
            lhs, tr = _axis_direct(pattern, alpha, q, kappa, trunc, far_s, far_u,
                                   primes_upto(r_max))
        else:
            lhs, tr = closed, float("nan")
        a1, a2, a3 = alpha
        rhs = {"m00": -M_term(a2, -a3, a1, q, kappa),
               "0m0": -M_term(a1, -a3, a2, q, kappa),
               "00m": -M_term(a1, -a2, a3, q, kappa)}[pattern]
        return PlaneSums(pattern, lhs, closed, rhs, tr)
    if pattern in ("0mm", "mm0", "m0m"):
        closed = _plane_closed(pattern, alpha, q, kappa, base_s, base_u)
        if direct_ok and pattern == "0mm":
            lhs, tr = _plane_direct(pattern, alpha, q, kappa, trunc, far_s, far_u)
        else:
            lhs, tr = closed, float("nan")
        return PlaneSums(pattern, lhs, closed, 0j, tr)
    raise ValueError(f"unknown pattern {pattern!r}")


# ---------------------------------------------------------------- fits and experiments

def fit_exponent(xs, ys) -> float:
    """Least-squares slope of log|y| against log x."""
    x = np.log(np.asarray(xs, dtype=float))
    y = np.log(np.abs(np.asarray(ys, dtype=complex)))
    A = np.vstack([x, np.ones_like(x)]).T
    slope, _ = np.linalg.lstsq(A, y, rcond=None)[0]
    return float(slope)


@dataclass
class MomentReport:
    q: int
    kappa: int
    alpha: tuple
    spectral: complex
    diagonal: complex
    main_terms: complex
    correction_terms: dict = field(default_factory=dict)
    residual: complex = 0j
    error_budget: float = 0.0

    def row(self) -> dict:
        out = {"q": self.q, "kappa": self.kappa,
               "alpha": " ".join(f"{complex(a):.6g}" for a in self.alpha)}
        for name in ("spectral", "diagonal", "main_terms", "residual"):
            v = complex(getattr(self, name))
            out[f"{name}_re"] = f"{v.real:.12e}"
            out[f"{name}_im"] = f"{v.imag:.12e}"
        for k, v in sorted(self.correction_terms.items()):
            out[f"{k}_re"] = f"{complex(v).real:.12e}"
        out["error_budget"] = f"{self.error_budget:.3e}"
        return out


def envelope(q: int, kappa: int) -> float:
    return math.log(q) ** (5 if kappa == 2 else 4)


def residual_report(q: int, kappa: int, alpha=(0, 0, 0), source=None, trunc: int | None = None,
                    with_diagonal: bool = False) -> MomentReport:
    from .forms import harmonic_weights, newforms_for, spectral_cubic_moment

    forms = newforms_for(q, kappa, source)
    if not forms:
        raise LookupError(f"no newform data for q = {q}, kappa = {kappa}")
    family = harmonic_weights(forms, trunc=trunc)
    chi = quadratic_character(q)
    spectral = spectral_cubic_moment(family, chi, ShiftTriple(*alpha))
    mt = main_term_symmetrized(alpha, q, kappa)
    diag = 0j
    if with_diagonal:
        diag = sum(diagonal_direct([s * complex(a) for s, a in zip(sg, alpha)], q, kappa) for sg in SIGNS)
    residual = spectral - mt
    return MomentReport(q, kappa, tuple(complex(a) for a in alpha), spectral, diag, mt,
                        {"weights_residual": family.residual}, residual, family.residual)


def residual_experiment(q_list, kappa: int, alpha=(0, 0, 0), source=None, trunc: int | None = None):
    reports = [residual_report(q, kappa, alpha, source, trunc) for q in q_list]
    qs = [r.q for r in reports]
    ratios = [abs(r.residual) / envelope(r.q, kappa) for r in reports]
    exponent = fit_exponent(qs, ratios) if len(qs) >= 2 else float("nan")
    return reports, ratios, exponent


def subconvexity_scaling(q_list, kappa: int, source=None):
    """Rows (q, max L(1/2, f x chi_q), ratio to q^(1/3) (log q)^(7/3)) over levels with the sign condition."""
    from .forms import central_L_value, newforms_for, sign_condition

    rows = []
    for q in q_list:
        chi = quadratic_character(q)
        if not sign_condition(kappa, chi):
            continue
        forms = newforms_for(q, kappa, source)
        if not forms:
            continue
        values = [central_L_value(f, chi) for f in forms]
        top = max(values)
        rows.append({"q": q, "max_L": top, "min_L": min(values),
                     "ratio": top / (q ** (1 / 3) * math.log(q) ** (7 / 3))})
    return rows
