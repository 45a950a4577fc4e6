from itertools import product

import pytest

from momentlab.numth import (crt_pair, divisor_pairs, euler_phi, factorize, inverse_mod, is_prime, is_squarefree,
                             jacobi_symbol, moebius, nearest_integer, nu, odd_squarefree_upto, primes_upto)


def trial_division(n):
    out, p = [], 2
    while n > 1:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    return out


@pytest.mark.parametrize("n", [1, 15, 2310, 2**10 * 3**4, 9973, 600851475143])
def test_factorize_matches_trial_division(n):
    assert list(factorize(n).factors) == trial_division(n)


def test_factorize_rejects_zero():
    with pytest.raises(ValueError):
        factorize(0)


def test_moebius_small():
    assert (moebius(1), moebius(6), moebius(12), moebius(30)) == (1, 1, 0, -1)


def test_euler_phi_counts_units(oracle):
    assert euler_phi(1) == 1 and euler_phi(5) == 4
    for n, count in oracle["units_phi"].items():
        assert euler_phi(int(n)) == count


def test_jacobi_against_enumerated_squares(oracle):
    for key, value in oracle["jacobi"].items():
        a, n = map(int, key.split(","))
        assert jacobi_symbol(a, n) == value


def test_nu():
    assert (nu(1), nu(15), nu(105)) == (0, 2, 3)


def test_divisor_pairs():
    assert sorted(divisor_pairs(5)) == [(1, 1, 5), (1, 5, 1), (5, 1, 1)]
    assert divisor_pairs(1) == [(1, 1, 1)]
    brute = {(h, k, l) for h, k, l in product(range(1, 16), repeat=3) if h * k * l == 15}
    assert set(divisor_pairs(15)) == brute and len(brute) == 9


def test_modular_helpers():
    assert inverse_mod(3, 7) * 3 % 7 == 1
    x = crt_pair(2, 3, 4, 5)
    assert x % 3 == 2 and x % 5 == 4
    with pytest.raises(ZeroDivisionError):
        inverse_mod(5, 15)


def test_prime_and_squarefree_lists():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert all(is_prime(p) for p in primes_upto(200))
    assert odd_squarefree_upto(21) == [3, 5, 7, 11, 13, 15, 17, 19, 21]
    assert not is_squarefree(45)


def test_nearest_integer_guard():
    assert nearest_integer(80.0000001 + 1e-9j) == 80
    with pytest.raises(ArithmeticError):
        nearest_integer(80.4)
