"""Special functions and contour quadrature.

Gamma and Bessel values come from scipy; the rest (kernels, weight functions,
vertical-line quadrature) is built here on top of them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

TWO_PI = 2.0 * math.pi


class PoleProximityError(ValueError):
    """Raised when an evaluation point sits on (or within 1e-8 of) a pole."""


def _near_nonpositive_integer(z, tol: float = 1e-8) -> bool:
    z = np.asarray(z, dtype=complex)
    k = np.round(z.real)
    return bool(np.any((k <= 0) & (np.abs(z - k) < tol)))


def log_gamma(z):
    """Principal branch of log Gamma(z); accepts scalars or arrays."""
    if _near_nonpositive_integer(z):
        raise PoleProximityError(f"log_gamma evaluated at a pole: {z}")
    out = special.loggamma(np.asarray(z, dtype=complex))
    return complex(out) if np.ndim(out) == 0 else out


def gamma(z):
    return np.exp(log_gamma(z))


def rgamma(z):
    """1/Gamma(z), entire; zero at the poles of Gamma."""
    out = special.rgamma(np.asarray(z, dtype=complex))
    return complex(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------- Bessel

def bessel_J(order: int, x):
    """J_order(x) for integer order 0..20 and real x >= 0."""
    if order < 0 or int(order) != order:
        raise ValueError("bessel_J takes a nonnegative integer order")
    out = special.jv(order, np.asarray(x, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


def bessel_J_series(order: int, x: float, terms: int = 80) -> float:
    """Power series sum_k (-1)^k (x/2)^(2k+order) / (k! (k+order)!)."""
    half = x / 2.0
    term = half**order / math.factorial(order)
    total = [term]
    for k in range(1, terms):
        term *= -(half * half) / (k * (k + order))
        total.append(term)
        if abs(term) < 1e-18 * max(1.0, abs(sum(total))):
            break
    return math.fsum(total)


def bessel_J_asymptotic(order: int, x: float, terms: int = 30) -> float:
    """Hankel asymptotic expansion, truncated at the smallest term."""
    mu = 4.0 * order * order
    omega = x - (order / 2.0 + 0.25) * math.pi
    p_sum, q_sum = 0.0, 0.0
    a = 1.0
    last = math.inf
    for k in range(2 * terms):
        if k > 0:
            a *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if abs(a) > last and k > 2:
            break
        last = abs(a)
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            p_sum += sign * a
        else:
            q_sum += sign * a
    return math.sqrt(2.0 / (math.pi * x)) * (p_sum * math.cos(omega) - q_sum * math.sin(omega))


def bessel_J_integral(order: int, x: float, nodes: int = 400) -> float:
    """(1/pi) int_0^pi cos(x sin t - order t) dt by Gauss-Legendre.

    Serves as an independent check on bessel_J; the integrand is entire and
    periodic-ish, so a few hundred nodes give full precision for x <= 100.
    """
    n = max(nodes, int(2 * x) + 64)
    t, w = np.polynomial.legendre.leggauss(n)
    theta = (t + 1.0) * (math.pi / 2.0)
    vals = np.cos(x * np.sin(theta) - order * theta)
    return float(np.dot(w, vals) / 2.0)


def J_kernel(kappa: int, x):
    """4 pi i^kappa J_{kappa-1}(2 pi x) / x, with the removable point x = 0 filled in."""
    if kappa < 2 or kappa % 2:
        raise ValueError("weight must be even and at least 2")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("J_kernel needs x >= 0")
    phase = 1j**kappa
    safe = np.where(x > 0, x, 1.0)
    vals = special.jv(kappa - 1, TWO_PI * safe) / safe
    # J_{k-1}(2 pi x)/x -> pi at x = 0 when k = 2, and 0 for larger weight
    limit = math.pi if kappa == 2 else 0.0
    vals = np.where(x > 0, vals, limit)
    out = 4.0 * math.pi * phase * vals
    return complex(out) if out.ndim == 0 else out


# ---------------------------------------------------------------- contours

@dataclass(frozen=True)
class ContourSpec:
    """A vertical line Re s = real_part, truncated to |Im s| <= height_cut.

    With tilt > 0 the line is bent into the hyperbola
        s(t) = real_part + sin(tilt) (sqrt(t^2 + 1) - 1) + i t cos(tilt),
    whose ends run off into the right half-plane. This is only legitimate
    when the integrand has no singularities between the line and the
    hyperbola, which the caller must know.
    """

    real_part: float
    height_cut: float = 40.0
    nodes_per_unit: int = 16
    scheme: str = "trapezoid"
    tilt: float = 0.0

    def __post_init__(self):
        if self.height_cut <= 0:
            raise ValueError("height_cut must be positive")
        if self.nodes_per_unit < 4:
            raise ValueError("nodes_per_unit must be at least 4")
        if self.scheme not in ("trapezoid", "gauss-legendre"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if not 0.0 <= self.tilt < math.pi / 2:
            raise ValueError("tilt must lie in [0, pi/2)")

    def shifted(self, real_part: float) -> "ContourSpec":
        return ContourSpec(real_part, self.height_cut, self.nodes_per_unit, self.scheme, self.tilt)

    def refined(self, factor: int = 2) -> "ContourSpec":
        return ContourSpec(self.real_part, self.height_cut, self.nodes_per_unit * factor,
                           self.scheme, self.tilt)

    def taller(self, factor: float = 1.5) -> "ContourSpec":
        return ContourSpec(self.real_part, self.height_cut * factor, self.nodes_per_unit,
                           self.scheme, self.tilt)

    def _parameter_nodes(self):
        T = self.height_cut
        if self.scheme == "trapezoid":
            n = int(math.ceil(T * self.nodes_per_unit))
            t = np.linspace(-T, T, 2 * n + 1)
            w = np.full(t.shape, T / n)
            w[0] *= 0.5
            w[-1] *= 0.5
            return t, w
        panels = int(math.ceil(2 * T))
        x, wx = np.polynomial.legendre.leggauss(self.nodes_per_unit)
        edges = np.linspace(-T, T, panels + 1)
        half = (edges[1] - edges[0]) / 2.0
        mids = (edges[:-1] + edges[1:]) / 2.0
        t = (mids[:, None] + half * x[None, :]).ravel()
        w = np.tile(wx * half, panels)
        return t, w

    def nodes(self):
        """Nodes s_j and weights w_j with sum w_j f(s_j) ~ (1/2 pi i) int f(s) ds."""
        t, w = self._parameter_nodes()
        if self.tilt == 0.0:
            s = self.real_part + 1j * t
            ds = np.full(t.shape, 1j, dtype=complex)
        else:
            a, b = math.sin(self.tilt), math.cos(self.tilt)
            root = np.sqrt(t * t + 1.0)
            s = self.real_part + a * (root - 1.0) + 1j * b * t
            ds = a * t / root + 1j * b
        return s, w * ds / (2j * math.pi)

    def coarse_mask(self):
        """Boolean mask picking every other trapezoid node (the step-2h rule)."""
        t, _ = self._parameter_nodes()
        if self.scheme != "trapezoid":
            return None
        mask = np.zeros(t.shape, dtype=bool)
        mask[::2] = True
        return mask


@dataclass(frozen=True)
class ValueWithError:
    value: complex
    abs_error_estimate: float = 0.0

    def __complex__(self):
        return complex(self.value)

    def agrees_with(self, other, tol: float) -> bool:
        v = other.value if isinstance(other, ValueWithError) else other
        slack = self.abs_error_estimate
        if isinstance(other, ValueWithError):
            slack += other.abs_error_estimate
        return abs(self.value - v) <= tol + slack


def contour_integral(f, spec: ContourSpec) -> ValueWithError:
    """(1/2 pi i) int f(s) ds along the contour described by spec.

    f must accept a 1-d complex array. The error estimate adds the difference
    against the half-density rule to the size of the integrand at the cut.
    """
    s, w = spec.nodes()
    vals = np.asarray(f(s), dtype=complex)
    terms = w * vals
    value = complex(np.sum(terms))
    if spec.scheme == "trapezoid":
        mask = spec.coarse_mask()
        coarse = np.where(mask, 2.0 * terms, 0.0)
        coarse[0] *= 0.5
        coarse[np.flatnonzero(mask)[-1]] *= 0.5
        delta = abs(value - complex(np.sum(coarse)))
    else:
        # compare against a rule on the same panels with half the nodes
        lower = ContourSpec(spec.real_part, spec.height_cut, max(4, spec.nodes_per_unit // 2),
                            spec.scheme, spec.tilt)
        s2, w2 = lower.nodes()
        delta = abs(value - complex(np.sum(w2 * np.asarray(f(s2), dtype=complex))))
    tail = (abs(vals[0]) + abs(vals[-1])) / TWO_PI
    return ValueWithError(value, float(delta + tail))


# ---------------------------------------------------------------- V weight

@dataclass(frozen=True)
class ShiftTriple:
    alpha1: complex
    alpha2: complex
    alpha3: complex

    def __post_init__(self):
        for a in self:
            if not np.isfinite(complex(a)):
                raise ValueError("shifts must be finite")
            if abs(complex(a).real) >= 0.25:
                raise ValueError("shifts must satisfy |Re alpha_i| < 1/4")

    def __iter__(self):
        return iter((complex(self.alpha1), complex(self.alpha2), complex(self.alpha3)))

    def __getitem__(self, i):
        return tuple(self)[i]

    def flipped(self, signs) -> "ShiftTriple":
        return ShiftTriple(*(sg * a for sg, a in zip(signs, self)))


def _default_V_contour(alpha: complex) -> ContourSpec:
    return ContourSpec(max(0.0, alpha.real) + 0.5, height_cut=40.0, nodes_per_unit=16)


def V_weight(alpha, x, kappa: int, spec: ContourSpec | None = None):
    """(1/2 pi i) int Gamma(s + kappa/2) / (s - alpha) (2 pi x)^(-s) ds.

    Vectorized in x. The contour must pass to the right of s = alpha.
    """
    alpha = complex(alpha)
    spec = spec or _default_V_contour(alpha)
    if spec.real_part <= alpha.real or spec.real_part <= -kappa / 2:
        raise PoleProximityError("contour must lie right of the pole at s = alpha")
    if abs(spec.real_part - alpha.real) < 1e-8:
        raise PoleProximityError("contour pinches the pole at s = alpha")
    s, w = spec.nodes()
    weights = w * gamma(s + kappa / 2.0) / (s - alpha)
    x_arr = np.asarray(x, dtype=float)
    logs = np.log(TWO_PI * np.atleast_1d(x_arr))
    vals = np.exp(-np.outer(logs, s)) @ weights
    return complex(vals[0]) if x_arr.ndim == 0 else vals.reshape(x_arr.shape)


def V_weight_with_error(alpha, x: float, kappa: int, spec: ContourSpec | None = None) -> ValueWithError:
    alpha = complex(alpha)
    spec = spec or _default_V_contour(alpha)
    f = lambda s: gamma(s + kappa / 2.0) / (s - alpha) * np.exp(-s * math.log(TWO_PI * x))
    return contour_integral(f, spec)


def V_tail_cutoff(kappa: int, alpha=0.0, eps: float = 1e-12) -> float:
    """An x beyond which |V_{1/2+alpha}(x)| < eps (from Gamma(a, y) ~ y^(a-1) e^(-y))."""
    a = kappa / 2.0 + complex(alpha).real
    y = 1.0
    while (a - 1) * math.log(max(y, 1.0)) - y + 2.0 > math.log(eps):
        y *= 1.1
    return y / TWO_PI


def V_triple(x1, x2, x3, alpha: ShiftTriple, q: int, kappa: int, eps: float = 1e-12) -> complex:
    """V(x1) * sum over d coprime to q of V(d x2) V(d x3) / d, truncated when the tail is below eps."""
    a1, a2, a3 = alpha
    first = V_weight(a1, x1, kappa)
    smallest = min(x2, x3)
    if smallest <= 0:
        raise ValueError("V_triple needs positive arguments")
    dmax = max(1, int(V_tail_cutoff(kappa, max(a2.real, a3.real), eps) / smallest) + 1)
    d = np.arange(1, dmax + 1)
    d = d[np.gcd(d, q) == 1]
    terms = V_weight(a2, d * x2, kappa) * V_weight(a3, d * x3, kappa) / d
    return complex(first * np.sum(terms))


# ---------------------------------------------------------------- closed-form V

def upper_incomplete_gamma(a, y) -> np.ndarray:
    """Gamma(a, y) for complex a with Re a > 0 and real y >= 0, vectorized in y.

    Power series for the lower function below y = Re a + 1, a Lentz continued
    fraction above. Accurate in relative terms far out in the tail, which the
    contour form of V is not.
    """
    a = complex(a)
    if a.real <= 0:
        raise ValueError("need Re a > 0")
    y = np.atleast_1d(np.asarray(y, dtype=float))
    out = np.empty(y.shape, dtype=complex)
    low = y < a.real + 1.0
    if np.any(low):
        x = y[low]
        term = np.full(x.shape, 1.0 / a, dtype=complex)
        total = term.copy()
        for n in range(1, 400):
            term = term * x / (a + n)
            total += term
            if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
                break
        with np.errstate(divide="ignore"):
            lower = np.exp(a * np.log(x) - x) * total
        lower[x == 0] = 0.0
        out[low] = gamma(a) - lower
    high = ~low
    if np.any(high):
        x = y[high]
        tiny = 1e-300
        b = x + 1.0 - a
        c = np.full(x.shape, 1.0 / tiny, dtype=complex)
        d = 1.0 / b
        h = d.copy()
        for i in range(1, 500):
            an = -i * (i - a)
            b = b + 2.0
            d = an * d + b
            d = np.where(np.abs(d) < tiny, tiny, d)
            c = b + an / c
            c = np.where(np.abs(c) < tiny, tiny, c)
            d = 1.0 / d
            delta = d * c
            h = h * delta
            if np.all(np.abs(delta - 1.0) < 1e-16):
                break
        out[high] = np.exp(a * np.log(x) - x) * h
    return out


def V_weight_closed(alpha, x, kappa: int):
    """V_{1/2+alpha}(x) = (2 pi x)^(-alpha) Gamma(kappa/2 + alpha, 2 pi x), for x > 0."""
    alpha = complex(alpha)
    x_arr = np.asarray(x, dtype=float)
    y = TWO_PI * np.atleast_1d(x_arr)
    vals = np.exp(-alpha * np.log(y)) * upper_incomplete_gamma(kappa / 2.0 + alpha, y)
    return complex(vals[0]) if x_arr.ndim == 0 else vals.reshape(x_arr.shape)


# ---------------------------------------------------------------- Mellin form of J

def J_kernel_mellin(kappa: int, y: float, spec: ContourSpec | None = None) -> ValueWithError:
    """J(2 sqrt y) from (i^k / 2 pi i) int (2 pi)^(2s) Gamma(k/2 - s)/Gamma(k/2 + s) y^(s-1) ds.

    On a straight line the integrand only decays like |t|^(-2 Re s), so the
    default contour is the tilted hyperbola: it bends right, away from the
    poles of Gamma(k/2 - s) which sit on the real axis. Bending too far
    inflates y^s, so the tilt is kept small; the defaults hold to about 1e-11
    for y up to 60 and degrade beyond.
    """
    spec = spec or ContourSpec(0.75, height_cut=80.0, nodes_per_unit=64, tilt=0.3)
    if not 0.25 < spec.real_part < kappa / 2:
        raise ValueError("the contour must cross the real axis in (1/4, kappa/2)")
    phase = 1j**kappa
    logy = math.log(y)

    def f(s):
        return phase * np.exp(2 * s * math.log(TWO_PI) + log_gamma(kappa / 2 - s)
                              - log_gamma(kappa / 2 + s) + (s - 1) * logy)

    return contour_integral(f, spec)


# ---------------------------------------------------------------- W check, Mellin side

PLANE_PATTERNS = ("000", "m00", "0m0", "00m", "0mm", "mm0", "m0m")


def pattern_of(m) -> str:
    return "".join("m" if x else "0" for x in m)


def _zeta_q_grid(points: np.ndarray, q: int) -> np.ndarray:
    """zeta_q at points sharing one real part, evaluated once per distinct value."""
    from .lfun import zeta_q  # lfun depends on this module

    key = np.round(points.imag * 2**20).astype(np.int64)
    _, first, inverse = np.unique(key, return_index=True, return_inverse=True)
    vals = zeta_q(points.ravel()[first], q)
    return np.asarray(vals).reshape(-1)[inverse].reshape(points.shape)


def _plane_terms(m, c, alpha, q, kappa, spec_s, spec_u):
    s, ws = spec_s.nodes()
    u, wu = spec_u.nodes()
    lam = c / q
    half = kappa / 2.0
    # outer factor: i^k/c (2 pi)^(2s) Gamma(k/2 - s)/Gamma(k/2 + s) c^s and the zero coordinates
    log_outer = (2 * s * math.log(TWO_PI) + log_gamma(half - s) - log_gamma(half + s)
                 + s * math.log(c))
    outer = ws * (1j**kappa / c)
    inner = {}
    for i, (mi, ai) in enumerate(zip(m, alpha)):
        if mi == 0:
            # lambda^-s Gamma(s + k/2) (2 pi)^-s / (s - alpha)
            log_outer = log_outer + log_gamma(s + half) - s * math.log(TWO_PI * lam)
            outer = outer / (s - ai)
        else:
            sgn = 1 if mi > 0 else -1
            log_b = math.log(TWO_PI * abs(mi)) + 0.5j * math.pi * sgn
            S, U = np.meshgrid(s, u, indexing="ij")
            logA = (log_gamma(half + U) - U * math.log(TWO_PI * lam) + log_gamma(S - U)
                    + (U - S) * log_b)
            inner[i] = np.exp(logA) * (wu / (u - ai))[None, :]
    outer = outer * np.exp(log_outer)
    pat = pattern_of(m)
    total = outer
    if 0 in inner:
        total = total * inner[0].sum(axis=1)
    if pat[1:] == "00":
        return np.sum(total * _zeta_q_grid(1 + 2 * s, q))
    if pat[1:] == "mm":
        uu = u[:, None] + u[None, :]
        Z = _zeta_q_grid(1 + uu, q)
        return np.sum(total * np.sum((inner[1] @ Z) * inner[2], axis=1))
    j = 1 if pat[1] == "m" else 2
    Z = _zeta_q_grid(1 + s[:, None] + u[None, :], q)
    return np.sum(total * np.sum(inner[j] * Z, axis=1))


def W_check_mellin_plane(which: str, m, c: int, alpha, q: int, kappa: int,
                         spec_s: ContourSpec | None = None,
                         spec_u: ContourSpec | None = None) -> ValueWithError:
    """W-check(m1, m2, m3, c) on a coordinate plane, by Mellin inversion.

    Each nonzero m_i contributes an inner u-integral built from the Mellin
    transform of e(-m x); each zero one contributes the Mellin transform of V.
    The d-sum inside V(x1, x2, x3) becomes zeta_q(1 + e2 + e3), where e_i is s
    for a zero coordinate and u_i otherwise. c must be a multiple of q.
    """
    m = tuple(int(x) for x in m)
    if which not in PLANE_PATTERNS or pattern_of(m) != which:
        raise ValueError(f"m = {m} does not match pattern {which!r}")
    if c % q:
        raise ValueError("c must be a multiple of q")
    alpha = tuple(complex(a) for a in alpha)
    spec_s = spec_s or ContourSpec(0.75, height_cut=30.0, nodes_per_unit=8)
    spec_u = spec_u or ContourSpec(0.25, height_cut=30.0, nodes_per_unit=16)
    if not max(a.real for a in alpha) < spec_s.real_part < kappa / 2:
        raise ValueError("s-contour outside the strip max Re alpha < Re s < kappa/2")
    if any(m[i] for i in range(3)) and not (
            max(a.real for a in alpha) < spec_u.real_part < spec_s.real_part):
        raise ValueError("u-contour outside the strip Re alpha < Re u < Re s")
    value = complex(_plane_terms(m, c, alpha, q, kappa, spec_s, spec_u))
    coarse_s = ContourSpec(spec_s.real_part, spec_s.height_cut / 1.25, spec_s.nodes_per_unit // 2)
    coarse_u = ContourSpec(spec_u.real_part, spec_u.height_cut / 1.25, spec_u.nodes_per_unit // 2)
    coarse = complex(_plane_terms(m, c, alpha, q, kappa, coarse_s, coarse_u))
    return ValueWithError(value, abs(value - coarse))


# ---------------------------------------------------------------- W check, direct quadrature

class QuadratureStallError(ArithmeticError):
    pass


def sqrt_panel_grid(y_max: float, width: float = 0.1, order: int = 8, grading: int = 8):
    """Nodes y and weights for int_0^y_max g(y) dy after y = t^2.

    Gauss-Legendre panels of the given width in t, with the first panel split
    geometrically towards t = 0 where V behaves like y^(-alpha).
    """
    t_max = math.sqrt(y_max)
    x, wx = np.polynomial.legendre.leggauss(order)
    xs, wxs = np.polynomial.legendre.leggauss(max(4, order // 2))
    edges = [width * 2.0**-j for j in range(grading, 0, -1)]
    edges = [0.0] + edges + list(np.arange(width, t_max + width, width))
    t, w = [], []
    for k, (lo, hi) in enumerate(zip(edges[:-1], edges[1:])):
        nx, nw = (xs, wxs) if k < grading else (x, wx)
        half, mid = (hi - lo) / 2, (hi + lo) / 2
        t.append(mid + half * nx)
        w.append(half * nw)
    t = np.concatenate(t)
    w = np.concatenate(w) * 2 * t
    return t, w


def _direct_term(beta, t1, a1, t, a2, a3, kappa, rel_cut=1e-14):
    """sum over the tensor grid of a1_a a2_b a3_e J(2 beta t1_a t_b t_e)."""
    pair = np.outer(a2, a3).ravel()
    tt = np.outer(t, t).ravel()
    order = np.argsort(-np.abs(pair))
    pair, tt = pair[order], tt[order]
    mag = np.abs(pair)
    top = np.abs(a1).max() * mag[0]
    total = 0j
    for ta, wa in zip(t1, a1):
        if abs(wa) * mag[0] < rel_cut * top:
            continue
        keep = int(np.searchsorted(-mag, -rel_cut * top / abs(wa)))
        x = 2 * beta * ta * tt[:keep]
        jv = special.jv(kappa - 1, TWO_PI * x) / x
        total += wa * np.dot(jv, pair[:keep])
    return 4 * math.pi * (1j**kappa) * total


def _series_term(beta, y, v1, v2, v3, kappa, max_terms=80):
    """Same sum with J expanded in powers of beta^2 y1 y2 y3; None if it will not settle."""
    total = 0j
    biggest = 0.0
    quiet = 0
    logs = np.log(y)
    for k in range(max_terms):
        p = (kappa - 2) // 2 + k
        yp = np.exp(p * logs)
        moments = (v1 @ yp) * (v2 @ yp) * (v3 @ yp)
        coef = (-1) ** k * math.exp(2 * p * math.log(TWO_PI * beta)
                                    - math.lgamma(k + 1) - math.lgamma(kappa + k))
        term = coef * moments
        total += term
        biggest = max(biggest, abs(term))
        quiet = quiet + 1 if abs(term) <= 1e-15 * max(abs(total), 1e-300) else 0
        if quiet >= 3:
            break
    else:
        return None
    if biggest > 1e6 * max(abs(total), 1e-300):
        return None
    return 4 * math.pi**2 * (1j**kappa) * total


def W_check_direct(m, c: int, alpha, q: int, kappa: int, width: float = 0.25, order: int = 8,
                   eps: float = 1e-13, check: bool = True) -> ValueWithError:
    """W-check(m1, m2, m3, c) by quadrature of its defining triple integral.

    After x1 = q y1/c and x_i = q z_i/(c d) for i = 2, 3 the d-th term of the
    V(x1, x2, x3) series is d^-3 times an integral of
    J(2 beta_d sqrt(y1 z2 z3)) V(y1) V(z2) V(z3) e(...), beta_d = q^(3/2)/(c d).
    Small d use a tensor Gauss-Legendre grid; once the Bessel power series
    settles, the remaining d use it with 1-d moments. With check set, the
    whole evaluation is repeated on a grid with larger panels and the
    difference becomes the error estimate.
    """
    if kappa < 4:
        raise ValueError("direct quadrature needs kappa >= 4; use the Mellin formulas for kappa = 2")
    m = tuple(int(v) for v in m)
    alpha = tuple(complex(a) for a in alpha)
    if max(abs(v) for v in m) > 20 or c > 200 * q:
        raise ValueError("direct quadrature is limited to |m_i| <= 20")
    value, tail = _W_direct_value(m, c, alpha, q, kappa, width, order, eps)
    if not check:
        return ValueWithError(value, tail)
    rough, _ = _W_direct_value(m, c, alpha, q, kappa, width * 1.25, order, eps)
    err = abs(value - rough) + tail
    if err > 1e-6 * max(1.0, abs(value)):
        raise QuadratureStallError(f"direct quadrature did not settle (delta {err:.2e})")
    return ValueWithError(value, err)


def _W_direct_value(m, c, alpha, q, kappa, width, order, eps):
    y_cut = max(V_tail_cutoff(kappa, a.real, 1e-14) for a in alpha)
    grids = {}

    def grid(d):
        # the Bessel argument shrinks like 1/d, so later terms get wider panels
        key = min(4, d)
        if key not in grids:
            t, w = sqrt_panel_grid(y_cut, width * math.sqrt(key), order)
            y = t * t
            grids[key] = (t, w, y, [V_weight_closed(a, y, kappa) for a in alpha])
        return grids[key]

    y_far = 2.5 * y_cut + 60.0 / TWO_PI
    tf, wf = sqrt_panel_grid(y_far, 0.1, 10)
    yf = tf * tf
    F1, F2, F3 = (V_weight_closed(a, yf, kappa) for a in alpha)
    f1 = q * m[0] / c
    s1 = wf * F1 * np.exp(-2j * math.pi * f1 * yf)
    total = 0j
    series_ok = False
    quiet = 0
    d = 0
    last = 0.0
    while True:
        d += 1
        if math.gcd(d, q) != 1:
            continue
        beta = q**1.5 / (c * d)
        g = q / (c * d)
        term = None
        if series_ok or d > 1:
            term = _series_term(beta, yf, s1, wf * F2 * np.exp(-2j * math.pi * g * m[1] * yf),
                                wf * F3 * np.exp(-2j * math.pi * g * m[2] * yf), kappa)
            series_ok = term is not None
        if term is None:
            t1, w1, y1, (V1, _, _) = grid(1)
            t, w, y, (_, V2, V3) = grid(d)
            b1 = w1 * V1 * np.exp(-2j * math.pi * f1 * y1)
            b2 = w * V2 * np.exp(-2j * math.pi * g * m[1] * y)
            b3 = w * V3 * np.exp(-2j * math.pi * g * m[2] * y)
            term = _direct_term(beta, t1, b1, t, b2, b3, kappa)
        contrib = term / d**3
        total += contrib
        last = abs(contrib)
        quiet = quiet + 1 if last < eps * max(abs(total), 1e-300) else 0
        if quiet >= 4 and d > 8:
            break
        if d > 100000:
            raise QuadratureStallError("d-series in W-check did not converge")
    # remaining terms decay like d^-(kappa + 1)
    tail = last * d / kappa
    return (q / c) ** 3 * total, (q / c) ** 3 * tail
