import cmath
import math
import random
from itertools import product

import pytest

from momentlab.characters import character_group, quadratic_character, trivial_character
from momentlab.expsums import (G_bruteforce, G_factored, GFactorizationInput, H_sum, H_via_characters, K_bound,
                               K_euler, P_euler, g_chi_psi, kloosterman, kloosterman_fast, ramanujan,
                               ramanujan_divisor_form)
from momentlab.numth import euler_phi, inverse_mod


def kloosterman_loop(m, n, c):
    return sum(math.cos(2 * math.pi * (m * a + n * pow(a, -1, c)) / c)
               for a in range(1, c + 1) if math.gcd(a, c) == 1)


def test_kloosterman_examples(oracle):
    assert kloosterman(0, 0, 15) == pytest.approx(euler_phi(15))
    assert kloosterman(1, 1, 2) == pytest.approx(1)
    assert kloosterman(1, 1, 5) == pytest.approx(oracle["kloosterman_1_1_5"], abs=1e-12)


@pytest.mark.parametrize("c", [1, 7, 9, 12, 25, 77, 360, 1001])
def test_kloosterman_fast_matches_loop(c):
    for m, n in ((1, 1), (2, 5), (0, 3), (6, 10)):
        assert kloosterman_fast(m, n, c) == pytest.approx(kloosterman_loop(m, n, c), abs=1e-9)
        assert kloosterman(m, n, c) == pytest.approx(kloosterman_loop(m, n, c), abs=1e-9)


def test_weil_bound_at_primes():
    for p in (101, 103, 107):
        assert abs(kloosterman_fast(1, 3, p)) <= 2 * math.sqrt(p) + 1e-9


def test_ramanujan_examples():
    assert ramanujan(5, 5) == 4 and ramanujan(5, 1) == -1 and ramanujan(15, 3) == -2
    for k, m in product(range(1, 40), range(-6, 30)):
        assert ramanujan(k, m) == ramanujan_divisor_form(k, m)


def test_G_examples():
    chi = quadratic_character(5)
    assert abs(G_bruteforce(0, 0, 0, 5, chi) - 80) < 1e-6
    assert abs(G_bruteforce(1, 0, 0, 10, chi) + 80) < 1e-6
    assert abs(G_bruteforce(2, 0, 0, 10, chi)) < 1e-6
    assert G_factored(GFactorizationInput(0, 0, 0, 2, 5), chi) == 0
    assert G_factored(GFactorizationInput(2, 0, 0, 2, 5), chi) == 0


def test_G_point_vs_cube_for_one_entry():
    # the point evaluator is only used above the FFT limit; pin it to the literal triple sum here
    from momentlab.expsums import _G_point
    c, chi = 15, quadratic_character(15)
    literal = 0j
    for a1, a2, a3 in product(range(c), repeat=3):
        v = chi(a1 * a2 * a3)
        if v:
            literal += v * kloosterman_loop(a1, a2 * a3, c) * cmath.exp(2j * math.pi * (a1 + 2 * a2 - a3) / c)
    assert abs(_G_point(1, 2, -1, c, chi) - literal) < 1e-6
    assert abs(G_bruteforce(1, 2, -1, c, chi) - literal) < 1e-6


@pytest.mark.parametrize("q,r", [(5, 1), (5, 2), (5, 3), (15, 1), (15, 2)])
def test_G_factored_grid(q, r):
    chi = quadratic_character(q)
    for m in product(range(-4, 5), repeat=3):
        assert abs(G_factored(GFactorizationInput(*m, r, q), chi) - G_bruteforce(*m, q * r, chi)) < 1e-6


def test_H_two_ways_and_periodicity():
    chi = quadratic_character(5)
    for w in (0, 2):
        # group the (u, v) pairs by t = uv
        by_t = [sum(chi(u * v * (u + 1) * (v + 1)) for u in range(5) for v in range(5) if (u * v) % 5 == t)
                for t in range(5)]
        restructured = sum(by_t[t] * cmath.exp(2j * math.pi * (t - 1) * w / 5) for t in range(5))
        assert abs(H_sum(w, 5) - restructured) < 1e-9
    for q in (5, 15):
        assert abs(H_sum(3 * q, q) - H_sum(0, q)) < 1e-9


def test_H_crt_multiplicativity():
    for w in range(15):
        left = H_sum(w, 15)
        right = H_sum(w * inverse_mod(5, 3), 3) * H_sum(w * inverse_mod(3, 5), 5)
        assert abs(left - right) < 1e-8


@pytest.mark.parametrize("q", [5, 7, 15, 21])
def test_H_via_characters(q):
    for w in range(q):
        assert abs(H_via_characters(w, q) - H_sum(w, q)) < 1e-8


def test_g_chi_psi():
    worst = 0.0
    for q in (5, 7, 11, 13):
        for psi in character_group(q):
            worst = max(worst, abs(g_chi_psi(q, psi)) / q)
    assert worst < 4
    chi = quadratic_character(5)
    direct = sum(chi(u * v * (u + 1) * (v + 1)) for u in range(5) for v in range(5) if (u * v) % 5 != 1)
    assert abs(g_chi_psi(5, trivial_character(5)) - direct) < 1e-9
    for psi in character_group(15):
        split = g_chi_psi(3, psi.component(3)) * g_chi_psi(5, psi.component(5))
        assert abs(g_chi_psi(15, psi) - split) < 1e-9


def test_K_euler_bound():
    rng = random.Random(7)
    assert K_euler(0.7, 0.1, 0.1, 0.1, 1, 1, 5, trivial_character(1)) == 1
    for _ in range(100):
        k = rng.choice((3, 5, 15))
        h = rng.choice([d for d in (1, 3, 5, 15) if 15 % d == 0])
        s = complex(rng.uniform(0.5, 1.2), rng.uniform(-5, 5))
        us = [complex(rng.uniform(-0.05, 0.05), rng.uniform(-2, 2)) for _ in range(3)]
        psi = rng.choice(character_group(k))
        assert abs(K_euler(s, *us, h, k, 15, psi)) <= K_bound(s, *us, h, k) * (1 + 1e-9)
    psi = character_group(5)[1]
    assert abs(K_euler(0.8, 0.01, 0.02, 0.03, 5, 5, 5, psi)) <= 1 + 1e-9


def test_P_euler():
    for psi in character_group(5):
        if psi.is_primitive:
            assert P_euler(0.7, 0.1, 0.2, 0.3, 5, 1, 5, psi) == 1
    rng = random.Random(3)
    for _ in range(50):
        s = complex(rng.uniform(0.4, 1.0), rng.uniform(-3, 3))
        psi = rng.choice(character_group(5))
        assert abs(P_euler(s, 0.01, 0.02, 0.03, 15, 3, 5, psi)) <= 8 ** 2
    # term-by-term for q = 15, h = 3, ell2 = 5, psi trivial
    s, u = 0.6 + 0.5j, (0.01, 0.02, 0.03)
    psi = trivial_character(5)
    expected = (1 - 5 ** (-(1 - s))) * (1 - 3 ** (-(s + u[1] + u[2]))) * (1 - 3 ** (-(s + u[0] + u[2]))) \
        * (1 - 3 ** (-(s + u[0] + u[1])))
    assert abs(P_euler(s, *u, 15, 3, 5, psi) - expected) < 1e-12
