"""Riemann zeta, Dirichlet L-functions and the large sieve harness.

zeta and Hurwitz zeta use Euler-Maclaurin summation. Dirichlet L-values come
from a smoothed approximate functional equation whose weights are incomplete
gamma ratios Gamma(a, y)/Gamma(a), themselves computed by a Mellin contour
integral. The Hurwitz decomposition L(s, psi) = q^-s sum_a psi(a) zeta(s, a/q)
is the independent second route.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from .characters import (
    DirichletCharacter,
    character_group,
    primitive_core,
    root_number,
)
from .numth import check_odd_squarefree, divisors, euler_phi, nu, prime_factors
from .specfun import PoleProximityError, log_gamma

_BERNOULLI_TERMS = 20
# B_2k / (2k)! for k = 1.._BERNOULLI_TERMS
_B_OVER_FACT = np.array([special.bernoulli(2 * k)[2 * k] / math.factorial(2 * k)
                         for k in range(1, _BERNOULLI_TERMS + 1)])


def _euler_maclaurin(s: complex, alpha: float, times_pole: bool = False) -> complex:
    """Hurwitz zeta(s, alpha), or (s - 1) zeta(s, alpha) when times_pole is set.

    The second form is regular at s = 1, which is how x zeta(1 + x) is computed
    without cancellation near x = 0.
    """
    s = complex(s)
    N = int(max(30, abs(s) + 10))
    n = np.arange(N) + alpha
    head = np.sum(np.exp(-s * np.log(n)))
    big = N + alpha
    logb = math.log(big)
    tail = 0.5 * np.exp(-s * logb)
    # rising products s (s+1) ... (s+2k-2) times B_2k/(2k)! big^(-s-2k+1)
    poch = s
    power = np.exp(-(s + 1) * logb)
    for k in range(_BERNOULLI_TERMS):
        tail += _B_OVER_FACT[k] * poch * power
        poch *= (s + 2 * k + 1) * (s + 2 * k + 2)
        power /= big * big
    main = head + tail
    pole_part = np.exp((1 - s) * logb)
    if times_pole:
        return complex((s - 1) * main + pole_part)
    if abs(s - 1) < 1e-14:
        raise PoleProximityError("zeta has a pole at s = 1")
    return complex(main + pole_part / (s - 1))


def zeta(s) -> complex:
    """Riemann zeta by Euler-Maclaurin; accepts scalars or arrays."""
    if np.ndim(s):
        return np.array([zeta(x) for x in np.ravel(s)]).reshape(np.shape(s))
    s = complex(s)
    if s.real < -1:
        raise ValueError("zeta is only supported for Re s >= -1")
    return _euler_maclaurin(s, 1.0)


def hurwitz_zeta(s, alpha: float) -> complex:
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    return _euler_maclaurin(complex(s), alpha)


_STIELTJES = (0.5772156649015329, -0.07281584548367672, -0.009690363192872318)


def xzeta(x) -> complex:
    """x zeta(1 + x), an entire function equal to 1 at x = 0."""
    if np.ndim(x):
        return np.array([xzeta(v) for v in np.ravel(x)]).reshape(np.shape(x))
    x = complex(x)
    if abs(x) < 1e-6:
        g0, g1, g2 = _STIELTJES
        return 1 + g0 * x - g1 * x * x + g2 * x**3 / 2
    return _euler_maclaurin(1 + x, 1.0, times_pole=True)


def local_factor_product(s, q: int):
    """prod over p | q of (1 - p^-s); vectorized in s."""
    s = np.asarray(s, dtype=complex)
    out = np.ones_like(s)
    for p in prime_factors(q):
        out = out * (1 - np.exp(-s * math.log(p)))
    return complex(out) if out.ndim == 0 else out


def zeta_q(s, q: int):
    """zeta(s) with the Euler factors at p | q removed."""
    return zeta(s) * local_factor_product(s, q)


def xzeta_q(x, q: int):
    """x zeta_q(1 + x); regular at x = 0 where it equals phi(q)/q."""
    return xzeta(x) * local_factor_product(np.asarray(x, dtype=complex) + 1, q)


# ---------------------------------------------------------------- incomplete gamma

def incomplete_gamma_scaled(a: complex, y, log_scale: complex | None = None) -> np.ndarray:
    """Gamma(a, y) / exp(log_scale) for a 1-d array of y sharing one argument arg(y).

    log_scale defaults to log Gamma(a), giving the regularized ratio. Uses
    (1/2 pi i) int_(c) Gamma(a + w) y^-w dw / w with the trapezoid rule; the
    truncation window is read off the log-magnitude of the integrand, which
    only depends on arg(y).
    """
    a = complex(a)
    y = np.asarray(y, dtype=complex)
    phi = float(np.angle(y.flat[0]))
    if abs(phi) >= math.pi / 2:
        raise ValueError("need |arg y| < pi/2")
    c = max(0.0, -a.real) + 1.0
    lg_a = complex(log_gamma(a)) if log_scale is None else complex(log_scale)

    def profile(tau):
        w = c + 1j * tau
        return (log_gamma(a + w) - lg_a).real + tau * phi - np.log(np.abs(w))

    # widen the window until the integrand has dropped by e^-46 at both ends
    span = 8.0 + abs(a.imag)
    coarse = np.arange(-span, span + 1.0)
    peak = profile(coarse).max()
    lo, hi = coarse[0], coarse[-1]
    while profile(np.array([lo]))[0] > peak - 46:
        lo -= max(8.0, 0.5 * abs(lo))
    while profile(np.array([hi]))[0] > peak - 46:
        hi += max(8.0, 0.5 * abs(hi))
    h = 1.0 / 16
    tau = np.arange(lo, hi + h, h)
    w = c + 1j * tau
    # gamma growth and y^-w decay are combined before exponentiating
    log_kern = log_gamma(a + w) - lg_a - np.log(w) + math.log(h / (2 * math.pi))
    logy = np.log(np.abs(y)) + 1j * phi
    return np.sum(np.exp(log_kern[None, :] - np.outer(logy, w)), axis=1)


def incomplete_gamma_ratio(a: complex, y) -> np.ndarray:
    """Gamma(a, y) / Gamma(a) for y of common argument in (-pi/2, pi/2)."""
    return incomplete_gamma_scaled(a, y)


# ---------------------------------------------------------------- Dirichlet L

def _afe_rotation(t: float) -> complex:
    """X^2 for the rotated balance scale; loses at most about e^4 to cancellation."""
    if t == 0:
        return 1.0 + 0j
    gap = min(math.pi / 2, 8.0 / abs(t))
    return complex(np.exp(-1j * math.copysign(math.pi / 2 - gap, t)))


@lru_cache(maxsize=4096)
def _afe_weights(conductor: int, s: complex, parity: int):
    """Weights for both halves of the approximate functional equation.

    L(s) = sum psi(n) n^-s W((s+a)/2, pi n^2/(q X^2))
           + eps X_q(s) sum psibar(n) n^(s-1) W((1-s+a)/2, pi n^2 X^2/q).
    The second half comes back already multiplied by X_q(s).
    """
    X2 = _afe_rotation(s.imag)
    gap = math.pi / 2 - abs(np.angle(X2))
    reach = 48.0 + 2 * abs(s.real) * math.log(conductor + 2)
    nmax = int(math.sqrt(reach * conductor / (math.pi * math.sin(gap)))) + 2
    n = np.arange(1, nmax + 1)
    base = math.pi * n * n / conductor
    first = incomplete_gamma_ratio((s + parity) / 2, base / X2) * np.exp(-s * np.log(n))
    # X_q(s) W(a', y) with Gamma(a') cancelled; X_q alone has poles where a' = 0, -1, ...
    log_scale = log_gamma((s + parity) / 2) - (0.5 - s) * math.log(conductor / math.pi)
    second = incomplete_gamma_scaled((1 - s + parity) / 2, base * X2, log_scale)
    second = second * np.exp((s - 1) * np.log(n))
    return n, first, second


def _L_primitive(psi: DirichletCharacter, s: complex) -> complex:
    q = psi.modulus
    n, first, second = _afe_weights(q, s, psi.parity)
    vals = psi(n)
    return complex(vals @ first + root_number(psi) * (np.conj(vals) @ second))


def dirichlet_L(psi: DirichletCharacter, s) -> complex:
    """L(s, psi) for any character of odd square-free modulus.

    Imprimitive characters go through the primitive core and the Euler
    factors at primes dividing the modulus but not the conductor.
    """
    s = complex(s)
    cond, star = primitive_core(psi)
    if cond == 1:
        if abs(s - 1) < 1e-12:
            raise PoleProximityError("L(s, trivial) has a pole at s = 1")
        base = zeta(s)
    else:
        base = _L_primitive(star, s)
    for p in prime_factors(psi.modulus):
        if cond % p:
            base *= 1 - star(p) * p ** (-s)
    return complex(base)


def dirichlet_L_hurwitz(psi: DirichletCharacter, s) -> complex:
    """L(s, psi) = q^-s sum_a psi(a) zeta(s, a/q), at the character's own modulus."""
    s = complex(s)
    q = psi.modulus
    if q == 1:
        return zeta(s)
    total = 0j
    for a in range(1, q + 1):
        v = psi(a)
        if v:
            total += v * hurwitz_zeta(s, a / q)
    return complex(total * q ** (-s))


@dataclass(frozen=True)
class LValueRequest:
    character: DirichletCharacter
    s: complex
    method: str = "smoothed-AFE"

    def __post_init__(self):
        if abs(complex(self.s).imag) > 1e3:
            raise ValueError("|Im s| is limited to 10^3")
        if self.method not in ("smoothed-AFE", "Euler-Maclaurin-oracle"):
            raise ValueError(f"unknown method {self.method!r}")

    def evaluate(self) -> complex:
        if self.method == "smoothed-AFE":
            return dirichlet_L(self.character, self.s)
        return dirichlet_L_hurwitz(self.character, self.s)


# ---------------------------------------------------------------- large sieve

def sigma_shift(n: int, t1, t2) -> complex:
    """sum over n = n1 n2 of n1^(-i t1) n2^(-i t2)."""
    return complex(sum(d ** (-1j * t1) * (n // d) ** (-1j * t2) for d in divisors(n)))


def large_sieve_ratio(q: int, t1: float, t2: float) -> tuple[float, float, float]:
    """Average of |L(1/2+it1, psi) L(1/2+it2, psi)|^2 over psi mod q, against the sieve bound."""
    check_odd_squarefree(q)
    if q > 100 or abs(t1) > 100 or abs(t2) > 100:
        raise ValueError("large sieve harness is limited to q <= 100 and |t| <= 100")
    s1, s2 = 0.5 + 1j * t1, 0.5 + 1j * t2
    total = math.fsum(abs(dirichlet_L(psi, s1) * dirichlet_L(psi, s2)) ** 2
                      for psi in character_group(q))
    lhs = total / euler_phi(q)
    lq = math.log(q)
    ref = lq**2 * math.log(nu(q) + 1) ** 2
    gap = abs(t1 - t2)
    ref *= lq**2 if gap <= 1 / lq else abs(zeta(1 + 1j * gap)) ** 2
    return lhs, ref, lhs / ref
