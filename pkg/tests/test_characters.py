import cmath
import math

import numpy as np
import pytest

from conftest import cplx
from momentlab.characters import (DirichletCharacter, character_group, count_primitive, gamma_factor_X, gauss_sum,
                                  primitive_characters, primitive_core, quadratic_character, root_number,
                                  trivial_character)
from momentlab.numth import euler_phi, jacobi_symbol


def test_group_sizes_and_parity():
    assert len(character_group(1)) == 1
    g5 = character_group(5)
    parities = [round(psi(-1).real) for psi in g5]
    assert len(g5) == 4 and parities.count(1) == 2 and parities.count(-1) == 2
    assert len(character_group(15)) == euler_phi(15) == 8


@pytest.mark.parametrize("q", [5, 15, 21, 35])
def test_characters_are_homomorphisms(q):
    units = [a for a in range(q) if math.gcd(a, q) == 1]
    for psi in character_group(q):
        for a in units:
            for b in units[:4]:
                assert abs(psi(a * b) - psi(a) * psi(b)) < 1e-12
        assert all(psi(a) == 0 for a in range(q) if math.gcd(a, q) > 1)


def test_orthogonality_mod_21():
    g = character_group(21)
    table = np.array([psi.values for psi in g])
    assert np.allclose(table @ table.conj().T, euler_phi(21) * np.eye(len(g)))


@pytest.mark.parametrize("q", [5, 7, 15, 35, 105])
def test_quadratic_character_is_jacobi(q):
    chi = quadratic_character(q)
    assert all(chi(n).real == jacobi_symbol(n, q) for n in range(q))


def test_quadratic_examples():
    assert quadratic_character(5)(2) == -1
    assert quadratic_character(5)(-1) == 1
    assert quadratic_character(7)(-1) == -1


def test_primitive_core():
    assert primitive_core(trivial_character(15))[0] == 1
    induced = quadratic_character(5).lift(15)
    cond, star = primitive_core(induced)
    assert cond == 5 and star == quadratic_character(5)
    assert all(induced(a) == star(a) for a in range(15) if math.gcd(a, 15) == 1)
    psi = primitive_characters(5)[0]
    assert primitive_core(psi) == (5, psi)


def test_count_primitive_matches_enumeration():
    for q in (3, 15, 35, 105):
        assert count_primitive(q) == len(primitive_characters(q))


def test_gauss_sums():
    assert abs(gauss_sum(quadratic_character(5)) - math.sqrt(5)) < 1e-12
    assert abs(gauss_sum(trivial_character(1)) - 1) < 1e-12
    for psi in primitive_characters(5):
        direct = sum(psi(a) * cmath.exp(2j * math.pi * a / 5) for a in range(5))
        assert abs(gauss_sum(psi) - direct) < 1e-12
        assert abs(abs(gauss_sum(psi)) ** 2 - 5) < 1e-12


def test_root_numbers():
    assert abs(root_number(quadratic_character(5)) - 1) < 1e-12
    assert abs(root_number(quadratic_character(7)) - 1) < 1e-12
    for psi in primitive_characters(15):
        assert abs(abs(root_number(psi)) - 1) < 1e-12
    with pytest.raises(ValueError):
        root_number(trivial_character(5))


def test_gamma_factor(oracle):
    assert abs(gamma_factor_X(5, 0, 0) - 1) < 1e-14
    assert abs(gamma_factor_X(7, 0, 1) - 1) < 1e-14
    u = 0.3 + 0.4j
    assert abs(gamma_factor_X(11, u, 1) * gamma_factor_X(11, -u, 1) - 1) < 1e-12
    assert abs(gamma_factor_X(5, 0.3, 0) - cplx(oracle["X_5_even_0.3"])) < 1e-10


def test_rejects_even_modulus():
    with pytest.raises(ValueError):
        DirichletCharacter(10, (0, 0))
