"""Integer arithmetic for small moduli: factorizations, multiplicative functions,
Jacobi symbols and modular inverses.

Everything here is exact and deterministic. Moduli stay below 10^4 in practice,
so trial division is all we need.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)


@dataclass(frozen=True)
class ResidueClass:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)


@lru_cache(maxsize=65536)
def factorize(n: int) -> Factorization:
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    m = n
    out = []
    for p in (2, 3):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            out.append((p, e))
    # 6k +- 1 wheel
    p = 5
    step = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            out.append((p, e))
        p += step
        step = 6 - step
    if m > 1:
        out.append((m, 1))
    return Factorization(n, tuple(out))


def prime_factors(n: int) -> tuple[int, ...]:
    return factorize(n).primes


def is_squarefree(n: int) -> bool:
    return factorize(n).is_squarefree()


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n).factors == ((n, 1),)


def moebius(n: int) -> int:
    f = factorize(n)
    if not f.is_squarefree():
        return 0
    return -1 if len(f.factors) % 2 else 1


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n).factors:
        out = out // p * (p - 1)
    return out


def nu(n: int) -> int:
    """Number of distinct prime factors."""
    return len(factorize(n).factors)


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n).factors:
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def num_divisors(n: int) -> int:
    return math.prod(e + 1 for _, e in factorize(n).factors)


def jacobi_symbol(a: int, n: int) -> int:
    if n < 1 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    return a, x0, y0


def inverse_mod(a: int, m: int) -> int:
    if m == 1:
        return 0
    g, x, _ = egcd(a % m, m)
    if g != 1:
        raise ZeroDivisionError(f"{a} is not invertible mod {m}")
    return x % m


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """Residue mod m1*m2 congruent to r1 mod m1 and r2 mod m2 (coprime moduli)."""
    t = (r2 - r1) * inverse_mod(m1, m2) % m2
    return (r1 + m1 * t) % (m1 * m2)


def divisor_pairs(q: int) -> list[tuple[int, int, int]]:
    """All ordered triples (h, k, l) with h*k*l = q, for square-free q.

    The name is historical: the triples index the (h, k) splitting used when the
    triple sum G is factored, with l = q/(hk).
    """
    if q < 1 or not is_squarefree(q):
        raise ValueError(f"divisor_pairs needs a square-free modulus, got {q}")
    ps = prime_factors(q)
    out = []
    for slots in product(range(3), repeat=len(ps)):
        parts = [1, 1, 1]
        for p, s in zip(ps, slots):
            parts[s] *= p
        out.append(tuple(parts))
    return sorted(out)


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest primitive root of an odd prime p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return 1
    qs = prime_factors(p - 1)
    g = 2
    while any(pow(g, (p - 1) // r, p) == 1 for r in qs):
        g += 1
    return g


@lru_cache(maxsize=None)
def discrete_log_table(p: int) -> tuple[int, ...]:
    """ind[a] with g^ind[a] = a mod p for the smallest primitive root g; ind[0] = -1."""
    g = primitive_root(p)
    ind = [-1] * p
    x = 1
    for k in range(p - 1):
        ind[x] = k
        x = x * g % p
    return tuple(ind)


def check_odd_squarefree(q: int) -> None:
    if q < 1 or q % 2 == 0 or not is_squarefree(q):
        raise ValueError(f"modulus must be odd and square-free, got {q}")


def odd_squarefree_upto(n: int, start: int = 3) -> list[int]:
    return [q for q in range(start, n + 1) if q % 2 and is_squarefree(q)]


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, v in enumerate(sieve) if v]


def compensated_sum(values) -> complex:
    """Sum complex values with exact-rounding accumulation of each component."""
    vals = list(values)
    re = math.fsum(v.real for v in vals)
    im = math.fsum(v.imag for v in vals)
    return complex(re, im)


def nearest_integer(x: complex, what: str = "sum", guard: float = 1e-6) -> int:
    """Round a sum that must be an integer, failing loudly if it is not close."""
    n = round(x.real)
    if abs(x - n) > guard:
        raise ArithmeticError(f"{what} = {x!r} is not within {guard} of an integer")
    return int(n)
