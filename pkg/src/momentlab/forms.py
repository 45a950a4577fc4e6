"""Newform data, harmonic weights and central values of quadratic twists.

Hecke eigenvalues are read from JSON Lines files (see data/newforms.jsonl and
tools/make_newforms.py). Harmonic weights are fitted against the Petersson
formula; the fit residual doubles as a check on the eigenvalue data.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy import special

from .characters import DirichletCharacter, quadratic_character
from .expsums import kloosterman_fast
from .numth import divisors, is_prime, num_divisors
from .specfun import ShiftTriple, V_tail_cutoff, V_weight_closed

DEFAULT_DATA = Path(__file__).with_name("data") / "newforms.jsonl"


class NewformDataError(ValueError):
    pass


class PeterssonFitError(ArithmeticError):
    pass


def data_path(path=None) -> Path:
    """Resolve a data file: an existing path as given, else by name under
    MOMENTLAB_DATA, else by name in the packaged data directory."""
    env = os.environ.get("MOMENTLAB_DATA")
    if path is None:
        return Path(env) / DEFAULT_DATA.name if env else DEFAULT_DATA
    path = Path(path)
    if path.exists() or path.is_absolute():
        return path
    for base in ([Path(env)] if env else []) + [DEFAULT_DATA.parent]:
        if (base / path).exists():
            return base / path
    return path


@dataclass(frozen=True)
class Newform:
    level: int
    weight: int
    label: str
    a: tuple

    @property
    def length(self) -> int:
        return len(self.a)

    @property
    def lam(self) -> np.ndarray:
        """lambda_f(n) = a_f(n) / n^((k-1)/2), indexed so that lam[n - 1] is lambda_f(n)."""
        return _normalized(self.a, self.weight)

    def lam_at(self, n: int) -> float:
        if not 1 <= n <= self.length:
            raise NewformDataError(f"{self.label}: coefficient a({n}) not available")
        return float(self.lam[n - 1])

    @property
    def is_rational(self) -> bool:
        return all(isinstance(x, int) for x in self.a)


@lru_cache(maxsize=512)
def _normalized(a: tuple, weight: int) -> np.ndarray:
    n = np.arange(1, len(a) + 1, dtype=float)
    out = np.asarray(a, dtype=float) / n ** ((weight - 1) / 2)
    out.setflags(write=False)
    return out


def validate_newform(f: Newform, tol: float = 1e-9) -> None:
    if f.level < 1 or f.weight < 2 or f.weight % 2:
        raise NewformDataError(f"{f.label}: bad level/weight {f.level}/{f.weight}")
    if not f.a or f.a[0] != 1:
        raise NewformDataError(f"{f.label}: a(1) must be 1, got {f.a[0] if f.a else None}")
    lam = f.lam
    N = f.length
    q = f.level
    for n in range(1, N + 1):
        if math.gcd(n, q) == 1 and abs(lam[n - 1]) > num_divisors(n) + tol:
            raise NewformDataError(f"{f.label}: |lambda({n})| = {abs(lam[n - 1]):.6f} exceeds d({n})")
    for m in range(2, N + 1):
        for n in range(m, N // m + 1):
            g = math.gcd(m, n)
            rhs = sum(lam[m * n // (d * d) - 1] for d in divisors(g) if math.gcd(d, q) == 1)
            if abs(lam[m - 1] * lam[n - 1] - rhs) > tol * max(1.0, abs(rhs)):
                raise NewformDataError(f"{f.label}: Hecke relation fails at (m, n) = ({m}, {n})")


def parse_record(rec: dict) -> Newform:
    try:
        level, weight, label, an = rec["level"], rec["weight"], rec["label"], rec["an"]
    except (KeyError, TypeError) as exc:
        raise NewformDataError(f"malformed record: missing {exc}") from None
    if not isinstance(an, list) or not all(isinstance(x, (int, float)) for x in an):
        raise NewformDataError(f"{label}: 'an' must be a list of numbers")
    return Newform(int(level), int(weight), str(label), tuple(an))


def ingest_newforms(source=None, validate: bool = True) -> list[Newform]:
    path = data_path(source)
    forms = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise NewformDataError(f"{path}:{lineno}: {exc}") from None
            f = parse_record(rec)
            if validate:
                validate_newform(f)
            forms.append(f)
    return forms


@lru_cache(maxsize=8)
def _load_default(path: str) -> tuple:
    return tuple(ingest_newforms(path))


def newforms_for(q: int, kappa: int, source=None) -> list[Newform]:
    """All ingested newforms of level q and weight kappa."""
    return [f for f in _load_default(str(data_path(source))) if f.level == q and f.weight == kappa]


def available_levels(kappa: int, source=None) -> list[int]:
    return sorted({f.level for f in _load_default(str(data_path(source))) if f.weight == kappa})


# ---------------------------------------------------------------- Petersson

@dataclass(frozen=True)
class KloostermanSide:
    value: float
    tail_estimate: float
    terms: int


def petersson_kloosterman_side(m: int, n: int, q: int, kappa: int, trunc: int | None = None) -> KloostermanSide:
    """2 pi i^k sum over c = 0 mod q, c <= trunc, of S(m, n; c)/c J_(k-1)(4 pi sqrt(mn)/c)."""
    trunc = trunc or 10_000 * q
    c = np.arange(q, trunc + 1, q)
    S = np.array([kloosterman_fast(m, n, int(x)) for x in c])
    x = 4 * math.pi * math.sqrt(m * n) / c
    terms = S / c * special.jv(kappa - 1, x)
    sign = (-1) ** (kappa // 2)
    value = 2 * math.pi * sign * math.fsum(terms)
    # remaining terms behave like a random walk of size sqrt(c) (x/2)^(k-1)/(k-1)! / c
    C = float(trunc)
    y = 2 * math.pi * math.sqrt(m * n)
    rms = y ** (kappa - 1) / math.factorial(kappa - 1) * math.sqrt(
        num_divisors(q) / (q * (2 * kappa - 2) * C ** (2 * kappa - 2)))
    return KloostermanSide(value, 2 * math.pi * rms, len(c))


def petersson_rhs(m: int, n: int, q: int, kappa: int, trunc: int | None = None) -> float:
    return (1.0 if m == n else 0.0) + petersson_kloosterman_side(m, n, q, kappa, trunc).value


@dataclass(frozen=True)
class HarmonicFamily:
    level: int
    weight: int
    forms: tuple
    weights: np.ndarray
    residual: float = 0.0
    condition: float = 1.0
    trunc: int = 0

    def __post_init__(self):
        if np.any(np.asarray(self.weights) <= 0):
            raise PeterssonFitError("fitted harmonic weights are not all positive")

    def weight_corridor(self) -> tuple[float, float]:
        """Fitted constants c1, c2 in c1 L <= omega_f <= c2 U for the standard corridor."""
        k, q = self.weight, self.level
        lower = 1.0 / (k * (q + 1) * math.log(k * q) ** 3)
        upper = (math.log(k * q) + 1) / (k * (q + 1))
        w = np.asarray(self.weights)
        return float(w.min() / lower), float(w.max() / upper)


def petersson_pairs(q: int, size: int = 12) -> list[tuple[int, int]]:
    return [(m, n) for m in range(1, size + 1) for n in range(m, size + 1) if math.gcd(m * n, q) == 1]


def harmonic_weights(forms, trunc: int | None = None, size: int = 12, max_residual: float = 1e-2,
                     max_condition: float = 1e8) -> HarmonicFamily:
    """Fit omega_f to the Petersson formula over the pairs (m, n) <= size coprime to q.

    Rows are weighted by the inverse tail estimate of their Kloosterman side,
    so pairs with large mn (whose truncated sums are noisiest) count for less.
    The reported residual is the unweighted maximum over all pairs.
    """
    forms = list(forms)
    if not forms:
        raise PeterssonFitError("empty family")
    q, k = forms[0].level, forms[0].weight
    if any(f.level != q or f.weight != k for f in forms):
        raise PeterssonFitError("family mixes levels or weights")
    if not is_prime(q):
        raise PeterssonFitError("harmonic weights are only fitted at prime level")
    if len(forms) > 25:
        raise PeterssonFitError("family dimension above 25")
    trunc = trunc or 10_000 * q
    pairs = petersson_pairs(q, size)
    A = np.array([[f.lam_at(m) * f.lam_at(n) for f in forms] for m, n in pairs])
    sides = [petersson_kloosterman_side(m, n, q, k, trunc) for m, n in pairs]
    b = np.array([(1.0 if m == n else 0.0) + side.value for (m, n), side in zip(pairs, sides)])
    sigma = np.array([max(side.tail_estimate, 1e-15) for side in sides])
    cond = float(np.linalg.cond(A))
    if cond > max_condition:
        raise PeterssonFitError(f"ill-conditioned Petersson system (cond {cond:.3g})")
    w, *_ = np.linalg.lstsq(A / sigma[:, None], b / sigma, rcond=None)
    resid = float(np.max(np.abs(A @ w - b)))
    if resid > max_residual:
        raise PeterssonFitError(f"Petersson residual {resid:.3g} above {max_residual}")
    return HarmonicFamily(q, k, tuple(forms), w, resid, cond, trunc)


def petersson_residuals(family: HarmonicFamily, size: int = 12) -> dict:
    """Eigendata side minus Kloosterman side for every (m, n) pair."""
    q, k = family.level, family.weight
    out = {}
    for m, n in petersson_pairs(q, size):
        spec = sum(w * f.lam_at(m) * f.lam_at(n) for w, f in zip(family.weights, family.forms))
        out[(m, n)] = spec - petersson_rhs(m, n, q, k, family.trunc)
    return out


def petersson_triple(family: HarmonicFamily | None, n1: int, n2: int, n3: int, q: int, kappa: int,
                     trunc: int | None = None) -> tuple[complex | None, complex]:
    """sum_f omega_f lambda(n1) lambda(n2) lambda(n3), from eigendata and from the Petersson side.

    The second value reduces lambda(n2) lambda(n3) by the Hecke relation and
    applies the trace formula to each pair (n1, m). With family=None only that
    value is computed.
    """
    if math.gcd(n1 * n2 * n3, q) != 1:
        raise ValueError("petersson_triple needs (n1 n2 n3, q) = 1")
    eig = None
    if family is not None:
        eig = sum(w * f.lam_at(n1) * f.lam_at(n2) * f.lam_at(n3)
                  for w, f in zip(family.weights, family.forms))
        trunc = trunc or family.trunc
    g = math.gcd(n2, n3)
    kl = sum(petersson_rhs(n1, n2 * n3 // (d * d), q, kappa, trunc) for d in divisors(g))
    return eig, kl


# ---------------------------------------------------------------- central values

def sign_condition(kappa: int, chi: DirichletCharacter) -> bool:
    return (1j**kappa).real == chi(-1).real


def _check_twist(f: Newform, chi: DirichletCharacter | None) -> DirichletCharacter:
    chi = chi or quadratic_character(f.level)
    if chi.modulus != f.level:
        raise ValueError("twisting character must have the level as modulus")
    if not sign_condition(f.weight, chi):
        raise ValueError(f"sign condition i^k = chi(-1) fails for weight {f.weight}, q = {f.level}")
    return chi


def central_cutoff(f: Newform, alpha=0.0, eps: float = 1e-12) -> int:
    return int(math.ceil(V_tail_cutoff(f.weight, abs(complex(alpha).real), eps) * f.level)) + 1


def completed_central_value(f: Newform, chi: DirichletCharacter | None = None, alpha=0.0,
                            trunc: int | None = None) -> complex:
    """Lambda(1/2 + alpha, f x chi) from the symmetric smoothed sum with weights V_(1/2 +- alpha)."""
    chi = _check_twist(f, chi)
    alpha = complex(alpha)
    if abs(alpha.real) >= 0.5:
        raise ValueError("need |Re alpha| < 1/2")
    N = trunc or central_cutoff(f, alpha)
    if N > f.length:
        raise NewformDataError(f"{f.label}: need {N} coefficients, have {f.length}")
    n = np.arange(1, N + 1)
    coeff = f.lam[:N] * chi(n).real / np.sqrt(n)
    x = n / f.level
    return complex(coeff @ (V_weight_closed(alpha, x, f.weight) + V_weight_closed(-alpha, x, f.weight)))


def central_L_value(f: Newform, chi: DirichletCharacter | None = None) -> float:
    """L(1/2, f x chi) = Lambda(1/2) / Gamma(k/2)."""
    return completed_central_value(f, chi).real / math.gamma(f.weight / 2)


def spectral_cubic_moment(family: HarmonicFamily, chi: DirichletCharacter | None, alpha: ShiftTriple,
                          trunc: int | None = None) -> complex:
    total = 0j
    for w, f in zip(family.weights, family.forms):
        prod = 1 + 0j
        for a in alpha:
            prod *= completed_central_value(f, chi, a, trunc)
        total += w * prod
    return total
