import math

import numpy as np
import pytest

from conftest import cplx
from momentlab.specfun import (ContourSpec, J_kernel, J_kernel_mellin, PoleProximityError, ShiftTriple, V_tail_cutoff,
                               V_triple, V_weight, V_weight_closed, W_check_direct, W_check_mellin_plane, bessel_J,
                               bessel_J_asymptotic, bessel_J_integral, bessel_J_series, contour_integral, gamma,
                               log_gamma, upper_incomplete_gamma)


def test_gamma_values(oracle):
    assert abs(gamma(1) - 1) < 1e-14
    assert abs(gamma(0.5) - math.sqrt(math.pi)) < 1e-14
    assert abs(gamma(2 + 3j) - cplx(oracle["gamma_2_3i"])) < 1e-12 * abs(cplx(oracle["gamma_2_3i"]))
    z = np.array([0.3 + 40j, -2.5 + 1j, 7.25])
    assert np.allclose(np.exp(log_gamma(z + 1)), z * np.exp(log_gamma(z)), rtol=1e-12)


def test_bessel(oracle):
    assert bessel_J(1, 0.0) == 0
    for x, ref in oracle["J1"].items():
        x = float(x)
        assert abs(bessel_J_integral(1, x) - ref) < 1e-9
        assert abs(bessel_J(1, x) - ref) < 1e-12
    assert abs(bessel_J_series(3, 10.0) - bessel_J_asymptotic(3, 10.0)) < 1e-9
    assert abs(bessel_J_series(3, 10.0) - oracle["J3_10"]) < 1e-12


def test_J_kernel_limits():
    small = J_kernel(2, 1e-7) / (4 * math.pi * 1j**2)
    assert abs(small - math.pi) < 1e-6
    assert J_kernel(2, 0.0) == pytest.approx(4 * math.pi * -1 * math.pi)
    x = 1e3
    assert abs(J_kernel(4, x)) <= 4 * math.pi * x ** -1.5 * 1.01


def test_J_kernel_mellin(oracle):
    for y, ref in oracle["J_kernel_k4"].items():
        y = float(y)
        v = J_kernel_mellin(4, y)
        assert abs(v.value - ref) < 1e-8
        assert abs(J_kernel(4, 2 * math.sqrt(y)) - ref) < 1e-12


def test_V_weight(oracle):
    assert abs(V_weight(0, 1e-6, 4) - 1) < 1e-6
    a = V_weight(0.1j, 1.0, 4, ContourSpec(1.0))
    b = V_weight(0.1j, 1.0, 4, ContourSpec(2.0))
    assert abs(a - b) < 1e-10
    assert abs(V_weight(0, 50.0, 4)) <= 1e-12
    for x, ref in oracle["V_k4"].items():
        assert abs(V_weight(0, float(x), 4) - cplx(ref)) < 1e-10
        assert abs(V_weight_closed(0, float(x), 4) - cplx(ref)) < 1e-12
    for x, ref in oracle["V_k2_shift"].items():
        assert abs(V_weight_closed(0.1j, float(x), 2) - cplx(ref)) < 1e-12
    with pytest.raises(PoleProximityError):
        V_weight(0.6, 1.0, 4, ContourSpec(0.5))


def test_incomplete_gamma_branches_meet():
    a = 2.3 + 0.4j
    y = np.array([a.real + 1 - 1e-9, a.real + 1 + 1e-9])
    lo, hi = upper_incomplete_gamma(a, y)
    assert abs(lo - hi) < 1e-8 * abs(lo)


def test_tail_cutoff_is_honest():
    x = V_tail_cutoff(4, 0.0, 1e-12)
    assert abs(V_weight_closed(0, x, 4)) < 1e-12


def test_V_triple(oracle):
    al = ShiftTriple(0.05, 0.1j, -0.02)
    swapped = ShiftTriple(0.05, -0.02, 0.1j)
    assert abs(V_triple(0.7, 0.3, 1.1, al, 5, 4) - V_triple(0.7, 1.1, 0.3, swapped, 5, 4)) < 1e-12
    zero = ShiftTriple(0, 0, 0)
    assert abs(V_triple(1, 1, 1, zero, 5, 4) - cplx(oracle["V_triple_111_q5_k4"])) < 1e-8


def test_shift_triple_bounds():
    with pytest.raises(ValueError):
        ShiftTriple(0.3, 0, 0)


def test_contour_integral_reports_its_error():
    # (1/2 pi i) int Gamma(s) x^-s ds over Re s = 1 is e^-x
    v = contour_integral(lambda s: gamma(s) * 2.0 ** (-s), ContourSpec(1.0, 40.0, 16))
    assert abs(v.value - math.exp(-2)) < 1e-12
    assert v.abs_error_estimate < 1e-8


@pytest.mark.slow
def test_W_direct_vs_mellin():
    alpha = (0.0, 0.0, 0.0)
    direct = W_check_direct((0, 0, 0), 5, alpha, 5, 4)
    mellin = W_check_mellin_plane("000", (0, 0, 0), 5, alpha, 5, 4)
    assert abs(direct.value - mellin.value) < 1e-6
    alpha = (0.02, 0.031, 0.017)
    direct = W_check_direct((1, 0, 0), 10, alpha, 5, 4)
    mellin = W_check_mellin_plane("m00", (1, 0, 0), 10, alpha, 5, 4)
    assert abs(direct.value - mellin.value) < 1e-5


@pytest.mark.slow
def test_W_direct_conjugate_symmetry():
    alpha = (0.01, 0.02, 0.03)
    a = W_check_direct((1, -2, 0), 5, alpha, 5, 4)
    b = W_check_direct((-1, 2, 0), 5, alpha, 5, 4)
    assert abs(a.value - b.value.conjugate()) < 1e-8


def test_W000_contour_shift():
    alpha = (0.1, 0.2j, -0.1)
    a = W_check_mellin_plane("000", (0, 0, 0), 5, alpha, 5, 4, spec_s=ContourSpec(0.75, 30.0, 8))
    b = W_check_mellin_plane("000", (0, 0, 0), 5, alpha, 5, 4, spec_s=ContourSpec(0.625, 30.0, 8))
    assert abs(a.value - b.value) < 1e-9


def test_W_pattern_mismatch_rejected():
    with pytest.raises(ValueError):
        W_check_mellin_plane("000", (1, 0, 0), 5, (0, 0, 0), 5, 4)
