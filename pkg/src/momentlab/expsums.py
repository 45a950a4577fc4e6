"""Finite exponential and character sums: Kloosterman and Ramanujan sums, the
triple sum G, the hybrid sums H and g, and the Euler factors K and P.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .characters import (
    DirichletCharacter,
    character_group,
    gauss_sum,
    kronecker_minus_one,
    primitive_core,
    quadratic_character,
)
from .numth import (
    check_odd_squarefree,
    compensated_sum,
    divisors,
    euler_phi,
    factorize,
    inverse_mod,
    moebius,
    nearest_integer,
    prime_factors,
)
from .specfun import PoleProximityError

BRUTE_FORCE_LIMIT = 1000
# G over the full cube via a 3-d FFT costs c^3 memory; beyond this we go point by point
FFT_CUBE_LIMIT = 200
PRIME_POWER_TABLE_LIMIT = 200_000


@lru_cache(maxsize=256)
def unit_inverses(c: int) -> tuple[np.ndarray, np.ndarray]:
    """Units a mod c and their inverses, as parallel int64 arrays."""
    if c == 1:
        return np.array([0]), np.array([0])
    a = np.arange(1, c)
    a = a[np.gcd(a, c) == 1]
    inv = np.array([pow(int(x), -1, c) for x in a])
    return a, inv


def kloosterman(m: int, n: int, c: int) -> float:
    """S(m, n; c) by direct summation over the units mod c."""
    if c < 1:
        raise ValueError("modulus must be positive")
    a, inv = unit_inverses(c)
    arg = ((a * (m % c)) % c + (inv * (n % c)) % c) % c
    return math.fsum(np.cos(2 * np.pi * arg / c))


@lru_cache(maxsize=None)
def _kloosterman_table(pe: int) -> np.ndarray:
    """S(1, t; pe) for every t mod pe, from one FFT.

    S(1, t; c) = sum_x e(xbar / c) e(t x / c), which is c * ifft of x -> e(xbar/c).
    """
    a, inv = unit_inverses(pe)
    f = np.zeros(pe, dtype=complex)
    f[a] = np.exp(2j * np.pi * inv / pe)
    table = (np.fft.ifft(f) * pe).real.copy()
    table.setflags(write=False)
    return table


def _kloosterman_prime_power(a: int, b: int, p: int, e: int) -> float:
    pe = p**e
    a %= pe
    b %= pe
    if a % p:
        if pe > PRIME_POWER_TABLE_LIMIT:
            return kloosterman(a, b, pe)
        return float(_kloosterman_table(pe)[a * b % pe])
    if b % p:
        return _kloosterman_prime_power(b, a, p, e)
    if e == 1:
        return float(p - 1)
    # p divides both: the sum over units mod p^e covers each unit mod p^(e-1) p times
    return p * _kloosterman_prime_power(a // p, b // p, p, e - 1)


def kloosterman_fast(m: int, n: int, c: int) -> float:
    """S(m, n; c) through twisted multiplicativity over the prime powers of c."""
    out = 1.0
    for p, ex in factorize(c).factors:
        pe = p**ex
        rest = c // pe
        rbar = inverse_mod(rest, pe)
        out *= _kloosterman_prime_power(rbar * m, rbar * n, p, ex)
        if out == 0.0:
            break
    return out


@lru_cache(maxsize=4096)
def ramanujan(k: int, m: int) -> int:
    """R_k(m) = S(0, m; k), summed directly and rounded with a guard."""
    if k < 1:
        raise ValueError("modulus must be positive")
    a, _ = unit_inverses(k)
    total = math.fsum(np.cos(2 * np.pi * ((a * (m % k)) % k) / k))
    return nearest_integer(total, f"R_{k}({m})")


def ramanujan_divisor_form(k: int, m: int) -> int:
    """sum over d | (k, m) of d mu(k/d); an independent route to R_k(m)."""
    g = math.gcd(k, m)
    return sum(d * moebius(k // d) for d in divisors(g))


# ---------------------------------------------------------------- G

def _character_on(chi: DirichletCharacter, c: int) -> np.ndarray:
    if c % chi.modulus:
        raise ValueError("the character modulus must divide c")
    return chi.values[np.arange(c) % chi.modulus]


@lru_cache(maxsize=32)
def kloosterman_matrix(c: int) -> np.ndarray:
    """S(a, t; c) for all a, t mod c, as a c x c real matrix."""
    x, xinv = unit_inverses(c)
    rng = np.arange(c)
    left = np.exp(2j * np.pi * np.outer(rng, x) / c)
    right = np.exp(2j * np.pi * np.outer(xinv, rng) / c)
    return (left @ right).real


@lru_cache(maxsize=16)
def _G_cube(c: int, chi: DirichletCharacter) -> np.ndarray:
    chi_c = _character_on(chi, c)
    S = kloosterman_matrix(c)
    rng = np.arange(c)
    prod23 = np.outer(rng, rng) % c
    F = (chi_c[:, None, None] * chi_c[None, :, None] * chi_c[None, None, :]
         * S[:, prod23])
    # numpy's inverse FFT uses e(+ax/c), which is the phase in G
    cube = np.fft.ifftn(F) * c**3
    cube.setflags(write=False)
    return cube


def _G_point(m1: int, m2: int, m3: int, c: int, chi: DirichletCharacter) -> complex:
    chi_c = _character_on(chi, c)
    S = kloosterman_matrix(c)
    rng = np.arange(c)
    row2 = chi_c * np.exp(2j * np.pi * m2 * rng / c)
    row3 = chi_c * np.exp(2j * np.pi * m3 * rng / c)
    # B[t] = sum over a2 a3 = t of the two twisted rows
    B = np.zeros(c, dtype=complex)
    np.add.at(B, (np.outer(rng, rng) % c).ravel(), np.outer(row2, row3).ravel())
    row1 = chi_c * np.exp(2j * np.pi * m1 * rng / c)
    return complex(row1 @ (S @ B))


def G_bruteforce(m1: int, m2: int, m3: int, c: int, chi: DirichletCharacter) -> complex:
    """The triple sum sum_a chi(a1 a2 a3) S(a1, a2 a3; c) e_c(m . a) over (Z/cZ)^3.

    Up to c = 200 the whole cube of values is computed at once by an FFT and
    cached; above that each point costs O(c^2). c is capped at 1000.
    """
    if c > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force G is limited to c <= {BRUTE_FORCE_LIMIT}")
    if c <= FFT_CUBE_LIMIT:
        return complex(_G_cube(c, chi)[m1 % c, m2 % c, m3 % c])
    return _G_point(m1, m2, m3, c, chi)


@dataclass(frozen=True)
class GFactorizationInput:
    m1: int
    m2: int
    m3: int
    r: int
    q: int
    h: int = field(init=False)
    k: int = field(init=False)
    ell: int = field(init=False)
    coprime_ok: bool = field(init=False)

    def __post_init__(self):
        check_odd_squarefree(self.q)
        if self.r < 1:
            raise ValueError("r must be positive")
        h = math.gcd(self.r, self.q)
        k = math.gcd(self.m1 * self.m2 * self.m3, self.q)
        ok = (math.gcd(self.m1, self.r) == 1
              and math.gcd(math.gcd(self.m2 * self.m3, self.q), self.r) == 1)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coprime_ok", ok)
        object.__setattr__(self, "ell", self.q // (h * k) if ok else 0)

    @property
    def c(self) -> int:
        return self.q * self.r


def G_factored(inp: GFactorizationInput, chi: DirichletCharacter | None = None) -> complex:
    """G in closed form through Ramanujan sums and H on the leftover modulus."""
    q, r, h, k, ell = inp.q, inp.r, inp.h, inp.k, inp.ell
    if chi is not None and chi != quadratic_character(q):
        raise ValueError("the closed form holds for the quadratic character mod q")
    if not inp.coprime_ok:
        return 0j
    c = inp.c
    prod = inp.m1 * inp.m2 * inp.m3
    rk = ramanujan(k, inp.m1) * ramanujan(k, inp.m2) * ramanujan(k, inp.m3)
    if rk == 0:
        return 0j
    w = inverse_mod(r * h * k, ell) * prod
    phase = np.exp(2j * np.pi * (prod % c) / c)
    scale = kronecker_minus_one(k * ell) * r * r * q * h / euler_phi(k)
    return complex(phase * scale * rk * H_sum(w, ell))


# ---------------------------------------------------------------- H and g

@lru_cache(maxsize=512)
def _chi_shift_row(q: int) -> np.ndarray:
    """chi(u) chi(u + 1) for u mod q, chi the Jacobi symbol mod q."""
    chi = quadratic_character(q).values.real
    return chi * np.roll(chi, -1)


def H_sum(w: int, q: int) -> complex:
    """sum over u, v mod q of chi(uv(u+1)(v+1)) e_q((uv - 1) w), directly."""
    check_odd_squarefree(q)
    if q > BRUTE_FORCE_LIMIT:
        raise ValueError(f"direct H is limited to q <= {BRUTE_FORCE_LIMIT}")
    if q == 1:
        return 1 + 0j
    A = _chi_shift_row(q)
    rng = np.arange(q)
    arg = ((np.outer(rng, rng) - 1) * (w % q)) % q
    return complex(A @ np.exp(2j * np.pi * arg / q) @ A)


def g_chi_psi(q: int, psi: DirichletCharacter) -> complex:
    """sum over u, v mod q of chi(uv(u+1)(v+1)) psi(uv - 1)."""
    check_odd_squarefree(q)
    if psi.modulus != q:
        raise ValueError("psi must have modulus q")
    if q > BRUTE_FORCE_LIMIT:
        raise ValueError(f"direct g is limited to q <= {BRUTE_FORCE_LIMIT}")
    if q == 1:
        return 1 + 0j
    A = _chi_shift_row(q)
    rng = np.arange(q)
    idx = (np.outer(rng, rng) - 1) % q
    return complex(A @ psi.values[idx] @ A)


def H_via_characters_coprime(w: int, q: int) -> complex:
    """The character expansion of H(w; q) taken literally.

    Only valid for (w, q) = 1: at a prime p | w with p = 1 mod 4 it is off by 2.
    """
    check_odd_squarefree(q)
    total = []
    for q2 in divisors(q):
        q1 = q // q2
        coeff = moebius(q1) * kronecker_minus_one(q1) / euler_phi(q2)
        arg = inverse_mod(q1, q2) * w if q2 > 1 else 0
        inner = []
        for psi in character_group(q2):
            val = psi(arg)
            if val == 0:
                continue
            inner.append(gauss_sum(psi.conjugate()) * g_chi_psi(q2, psi) * val)
        total.append(coeff * compensated_sum(inner))
    return compensated_sum(total)


def H_via_characters(w: int, q: int) -> complex:
    """H(w; q) rebuilt from Gauss sums and g over the characters of each q2 | q.

    With d = (w, q), H(w; q) = H(w dbar; q/d) H(0; d) and H(0; d) = 1, so the
    expansion is applied on q/d where w is a unit.
    """
    check_odd_squarefree(q)
    d = math.gcd(w, q)
    if d > 1:
        rest = q // d
        w = w * inverse_mod(d, rest) % rest if rest > 1 else 0
        return H_via_characters_coprime(w, rest)
    return H_via_characters_coprime(w, q)


# ---------------------------------------------------------------- K and P

def _local_inverse(value: complex, p: int, z: complex) -> complex:
    d = 1 - value * p ** (-z)
    if abs(d) < 1e-8:
        raise PoleProximityError(f"Euler factor at p={p} vanishes at z={z}")
    return 1 / d


def K_euler(s, u1, u2, u3, h: int, k: int, q: int, psi: DirichletCharacter) -> complex:
    """The finite sum over k1, k2, k3 | k with k | k1 k2 k3 and (k1 k2 k3, qh/k) = 1."""
    if moebius(k) == 0:
        raise ValueError("k must be square-free")
    zs = (s + u2 + u3, s + u1 + u3, s + u1 + u2)
    guard = q * h // k
    divs = divisors(k)
    terms = []
    for k1 in divs:
        for k2 in divs:
            for k3 in divs:
                kk = k1 * k2 * k3
                if kk % k or math.gcd(kk, guard) != 1:
                    continue
                t = psi(kk) * moebius(k1) * moebius(k2) * moebius(k3)
                if t == 0:
                    continue
                for ki, z in zip((k1, k2, k3), zs):
                    t *= euler_phi(ki) * ki ** (-z)
                    for p in prime_factors(ki):
                        t *= _local_inverse(psi(p), p, z)
                terms.append(t)
    return compensated_sum(terms)


def K_bound(s, u1, u2, u3, h: int, k: int) -> float:
    expo = 3 - 3 * complex(s).real - 2 * complex(u1 + u2 + u3).real
    return (k / math.gcd(k, h)) ** expo


def P_euler(s, u1, u2, u3, q: int, h: int, ell2: int, psi: DirichletCharacter) -> complex:
    """Leftover Euler factors relating the partial L-products to complete ones."""
    if psi.modulus != ell2:
        raise ValueError("psi must have modulus ell2")
    star_mod, star = primitive_core(psi)
    bar, star_bar = psi.conjugate(), star.conjugate()
    out = 1 + 0j
    for p in prime_factors(ell2):
        if star_mod % p:
            out *= 1 - star_bar(p) * p ** (-(1 - s))
    for p in prime_factors(q // h):
        if ell2 % p:
            out *= 1 - bar(p) * p ** (-(1 - s))
    for p in prime_factors(q):
        if ell2 % p:
            for z in (s + u2 + u3, s + u1 + u3, s + u1 + u2):
                out *= 1 - psi(p) * p ** (-z)
    return complex(out)
