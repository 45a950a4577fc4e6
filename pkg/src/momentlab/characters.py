"""Dirichlet characters modulo an odd square-free q.

A character is stored as one exponent per prime p | q: on the smallest
primitive root g_p it takes the value e((exponent) / (p - 1)). Evaluation is a
table lookup once the value table for the character has been built.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product

import numpy as np

from .numth import (
    check_odd_squarefree,
    compensated_sum,
    discrete_log_table,
    euler_phi,
    jacobi_symbol,
    moebius,
    divisors,
    prime_factors,
)
from .specfun import log_gamma


def e(x: float) -> complex:
    return cmath.exp(2j * math.pi * x)


@lru_cache(maxsize=4096)
def _value_table(modulus: int, primes: tuple, exponents: tuple) -> np.ndarray:
    n = np.arange(modulus)
    phase = np.zeros(modulus)
    alive = np.ones(modulus, dtype=bool)
    real_valued = True
    for p, ex in zip(primes, exponents):
        ind = np.asarray(discrete_log_table(p))[n % p]
        alive &= ind >= 0
        phase += ex * np.where(ind >= 0, ind, 0) / (p - 1)
        real_valued &= (2 * ex) % (p - 1) == 0
    vals = np.exp(2j * np.pi * phase)
    if real_valued:
        vals = np.round(vals.real) + 0j
    vals[~alive] = 0
    vals.setflags(write=False)
    return vals


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        check_odd_squarefree(self.modulus)
        ps = self.primes
        if len(self.exponents) != len(ps):
            raise ValueError("need one exponent per prime factor of the modulus")
        object.__setattr__(self, "exponents",
                           tuple(int(x) % (p - 1) for x, p in zip(self.exponents, ps)))

    @property
    def primes(self) -> tuple[int, ...]:
        return prime_factors(self.modulus)

    @cached_property
    def values(self) -> np.ndarray:
        """psi(n) for n = 0, ..., modulus - 1."""
        return _value_table(self.modulus, self.primes, self.exponents)

    def __call__(self, n):
        if isinstance(n, (int, np.integer)):
            return complex(self.values[int(n) % self.modulus])
        return self.values[np.asarray(n) % self.modulus]

    @property
    def parity(self) -> int:
        """0 for even characters, 1 for odd ones; psi(-1) = (-1)^parity."""
        return sum(self.exponents) % 2

    @property
    def conductor(self) -> int:
        return math.prod(p for p, x in zip(self.primes, self.exponents) if x)

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def is_trivial(self) -> bool:
        return not any(self.exponents)

    @property
    def is_real(self) -> bool:
        return all((2 * x) % (p - 1) == 0 for p, x in zip(self.primes, self.exponents))

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(-x for x in self.exponents))

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        m = math.lcm(self.modulus, other.modulus)
        a, b = self.lift(m), other.lift(m)
        return DirichletCharacter(m, tuple(x + y for x, y in zip(a.exponents, b.exponents)))

    def component(self, d: int) -> "DirichletCharacter":
        """The factor of this character living modulo d, for d | modulus."""
        if self.modulus % d:
            raise ValueError(f"{d} does not divide {self.modulus}")
        ex = dict(zip(self.primes, self.exponents))
        return DirichletCharacter(d, tuple(ex[p] for p in prime_factors(d)))

    def lift(self, modulus: int) -> "DirichletCharacter":
        """The character modulo a multiple of the modulus induced by this one."""
        if modulus % self.modulus:
            raise ValueError(f"{self.modulus} does not divide {modulus}")
        ex = dict(zip(self.primes, self.exponents))
        return DirichletCharacter(modulus, tuple(ex.get(p, 0) for p in prime_factors(modulus)))

    def __repr__(self):
        return f"DirichletCharacter(q={self.modulus}, exps={self.exponents})"


def trivial_character(q: int = 1) -> DirichletCharacter:
    check_odd_squarefree(q)
    return DirichletCharacter(q, (0,) * len(prime_factors(q)))


@lru_cache(maxsize=256)
def character_group(q: int) -> tuple[DirichletCharacter, ...]:
    """All phi(q) characters mod q, trivial first, in lexicographic exponent order."""
    check_odd_squarefree(q)
    ranges = [range(p - 1) for p in prime_factors(q)]
    return tuple(DirichletCharacter(q, ex) for ex in product(*ranges))


def primitive_characters(q: int) -> list[DirichletCharacter]:
    return [psi for psi in character_group(q) if psi.is_primitive]


def quadratic_character(q: int) -> DirichletCharacter:
    """The real primitive character mod q; agrees with the Jacobi symbol (n | q)."""
    check_odd_squarefree(q)
    return DirichletCharacter(q, tuple((p - 1) // 2 for p in prime_factors(q)))


def kronecker_minus_one(d: int) -> int:
    """chi_d(-1) for the Jacobi symbol modulo odd square-free d."""
    return jacobi_symbol(-1, d)


def primitive_core(psi: DirichletCharacter) -> tuple[int, DirichletCharacter]:
    star = psi.component(psi.conductor)
    return star.modulus, star


def gauss_sum(psi: DirichletCharacter) -> complex:
    q = psi.modulus
    vals = psi.values
    phases = np.exp(2j * np.pi * np.arange(q) / q)
    return compensated_sum(vals * phases)


def root_number(psi: DirichletCharacter) -> complex:
    if not psi.is_primitive:
        raise ValueError("root_number needs a primitive character")
    return gauss_sum(psi) / (1j**psi.parity * math.sqrt(psi.modulus))


def gamma_factor_X(ell: int, u, parity: int):
    """X_ell(1/2 + u) = (ell/pi)^(-u) Gamma((1/2 - u + a)/2) / Gamma((1/2 + u + a)/2).

    Vectorized in u. Raises PoleProximityError within 1e-8 of a pole of the
    numerator Gamma.
    """
    u = np.asarray(u, dtype=complex)
    top = (0.5 - u + parity) / 2.0
    bottom = (0.5 + u + parity) / 2.0
    lg_top = log_gamma(top)
    # zeros of X (poles of the bottom Gamma) are legitimate values
    k = np.round(bottom.real)
    at_zero = (k <= 0) & (np.abs(bottom - k) < 1e-8)
    safe_bottom = np.where(at_zero, 1.0, bottom)
    out = np.exp(-u * math.log(ell / math.pi) + lg_top - log_gamma(safe_bottom))
    out = np.where(at_zero, 0.0, out)
    return complex(out) if out.ndim == 0 else out


def count_primitive(q: int) -> int:
    """Number of primitive characters mod q, by Moebius inversion of phi over divisors."""
    return sum(moebius(q // d) * euler_phi(d) for d in divisors(q))
