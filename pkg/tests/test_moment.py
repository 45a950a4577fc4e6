import math
from itertools import permutations

import pytest

from conftest import cplx
from momentlab import moment
from momentlab.lfun import zeta
from momentlab.specfun import ContourSpec, PoleProximityError


def test_L_func_symmetry_and_value(oracle):
    u = (0.1, 0.2, 0.3)
    ref = cplx(oracle["L_func_q5_k4"])
    for p in permutations(u):
        assert abs(moment.L_func(*p, 5, 4) - ref) < 1e-10 * abs(ref)


def test_L_func_is_finite_across_the_pole():
    # (u1 + u2) zeta_q(1 + u1 + u2) -> phi(q)/q as u1 + u2 -> 0
    at = moment.L_func(0.1, -0.1, 0.3, 15, 4)
    expected = (8 / 15 * moment.xzeta_q_array(0.2, 15) * moment.xzeta_q_array(0.4, 15)
                * moment.L_inf(0.1, 15, 4) * moment.L_inf(-0.1, 15, 4) * moment.L_inf(0.3, 15, 4))
    assert abs(at - expected) < 1e-12 * abs(expected)
    near = moment.L_func(0.1, -0.1 + 1e-7, 0.3, 15, 4)
    assert abs(at - near) < 1e-6 * abs(at)


def test_main_term_matches_quotient():
    a = (0.05, 0.11, -0.07)
    L = moment.L_func(*a, 7, 4)
    denom = (a[0] + a[1]) * (a[1] + a[2]) * (a[2] + a[0])
    assert abs(moment.main_term(a, 7, 4) - L / denom) < 1e-10 * abs(L / denom)


def test_richardson_is_exact_on_quadratics():
    f = lambda d: 3 - 2 * d + 5 * d * d
    value, _ = moment.richardson(f)
    assert value == pytest.approx(3, abs=1e-12)
    g = lambda d: 1 + 4 * d**2 - 7 * d**4
    value, _ = moment.richardson(g, even=True)
    assert value == pytest.approx(1, abs=1e-12)
    with pytest.raises(ValueError):
        moment.richardson(f, deltas=(0.2, 0.1, 0.01))


def test_degenerate_shift_needs_ladder():
    with pytest.raises(PoleProximityError):
        moment.with_ladder(moment.main_term, (0, 0, 0), 5, 4, extrapolate=False)


def test_diagonal_direct_q5():
    a = moment.diagonal_direct((0, 0, 0), 5, 4)
    b = moment.diagonal_direct((0, 0, 0), 5, 4, eps=1e-16)
    assert abs(a - b) < 1e-9
    al = (0.02, 0.031, 0.017)
    swapped = (0.02, 0.017, 0.031)
    assert abs(moment.diagonal_direct(al, 5, 4) - moment.diagonal_direct(swapped, 5, 4)) < 1e-12


def test_M_term_contour_and_sign():
    args = (0.02, 0.031, 0.017, 5, 4)
    a = moment.M_term(*args)
    b = moment.M_term(*args, spec=ContourSpec(0.3, height_cut=40.0, nodes_per_unit=32))
    assert abs(a - b) < 1e-8 * max(1.0, abs(a))
    flipped = moment.M_term(0.02, 0.031, -0.017, 5, 4)
    assert abs(a - flipped) > 1e-6


def test_N_symmetry():
    n1 = moment.N_term(0.02, 0.031, 0.017, 7, 4)
    n2 = moment.N_term(0.031, 0.02, 0.017, 7, 4)
    assert abs(n1 - n2) < 1e-8


def test_ramanujan_dirichlet_identity(oracle):
    lhs, rhs, gap = moment.ramanujan_dirichlet_identity(5, 2, 10**4)
    assert gap <= 1e-3
    assert abs(rhs - cplx(oracle["ramanujan_dirichlet"]["5,2"])) < 1e-12
    _, _, gap2 = moment.ramanujan_dirichlet_identity(5, 2, 2 * 10**4)
    # at least the N^(1-s) halving; mean-zero periods of R_q give N^-s in practice
    assert gap2 / gap <= 0.5 + 0.05
    lhs, rhs, _ = moment.ramanujan_dirichlet_identity(1, 3, 10**4)
    assert abs(rhs - zeta(3)) < 1e-14 and abs(lhs - zeta(3)) < 1e-7
    lhs, rhs, gap = moment.ramanujan_dirichlet_identity(15, 2.5 + 1j, 10**4)
    assert gap < 1e-4 and abs(rhs - cplx(oracle["ramanujan_dirichlet"]["15,2.5+1j"])) < 1e-12


def test_fit_exponent():
    xs = [5, 7, 11, 13, 17]
    assert moment.fit_exponent(xs, [3 * x**-0.4 for x in xs]) == pytest.approx(-0.4)


def test_subconvexity_scaling_edges():
    assert moment.subconvexity_scaling([], 2) == []
    rows = moment.subconvexity_scaling([11, 17, 19], 2)
    # 17 = 1 mod 4 fails the sign condition at weight 2
    assert [r["q"] for r in rows] == [11, 19]
    assert all(r["min_L"] >= -1e-8 for r in rows)
    assert rows[0]["ratio"] == pytest.approx(rows[0]["max_L"] / (11 ** (1 / 3) * math.log(11) ** (7 / 3)))


def test_residual_report_at_zero_shift():
    r = moment.residual_report(11, 2, trunc=2000 * 11)
    assert math.isfinite(abs(r.residual))
    row = r.row()
    assert row["q"] == 11 and "residual_re" in row
