"""Invariant suites behind `momentlab verify` and the acceptance tests.

Each suite returns a list of Check records. A check carries the measured
quantity, its tolerance and the first failing tuple, so the CLI can print a
table and the tests can assert on it.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import expsums, forms, lfun, moment
from .characters import gamma_factor_X, primitive_characters, quadratic_character, root_number
from .numth import odd_squarefree_upto, primes_upto
from .specfun import J_kernel, J_kernel_mellin, W_check_direct, W_check_mellin_plane

ALPHA = (0.02, 0.031, 0.017)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tol: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.name:<34} {self.value:.3e}  (tol {self.tol:.1e})  {self.detail}".rstrip()


def _pmap(fn, items, threads: int):
    """Ordered map; results do not depend on the thread count."""
    items = list(items)
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _worst(name, gaps, tol, label=str) -> Check:
    """Largest gap over (key, gap) pairs against tol, naming the first offender."""
    gaps = list(gaps)
    key, top = max(gaps, key=lambda kv: kv[1])
    bad = [k for k, g in gaps if not g <= tol]
    detail = f"n={len(gaps)}" + (f" first failure {label(bad[0])}" if bad else "")
    return Check(name, float(top), tol, not bad, detail)


# ---------------------------------------------------------------- character sums

def charsums(threads: int = 1) -> list[Check]:
    grid = [(q, r) for q in (5, 15, 35) for r in (1, 2, 3, 5)]
    ms = list(product(range(-4, 5), repeat=3))

    def one(qr):
        q, r = qr
        chi = quadratic_character(q)
        worst = (0.0, None)
        for m in ms:
            inp = expsums.GFactorizationInput(*m, r, q)
            gap = abs(expsums.G_factored(inp, chi) - expsums.G_bruteforce(*m, r * q, chi))
            if gap > worst[0]:
                worst = (gap, m)
        return (q, r, worst[1]), worst[0]

    G = _pmap(one, grid, threads)
    H = []
    for q in (5, 7, 15, 21):
        for w in range(q):
            H.append(((q, w), abs(expsums.H_via_characters(w, q) - expsums.H_sum(w, q))))
    return [_worst("G factored vs brute force", G, 1e-6),
            _worst("H via characters vs direct", H, 1e-6)]


# ---------------------------------------------------------------- Mellin formulas

def mellin_cases():
    """(q, kappa, m, c) tuples covering every coordinate-plane pattern."""
    axis = (1, -2, 3)
    pairs = ((1, -2), (3, 1), (-3, -3))
    cases = []
    for q, kappa in product((5, 13), (4, 6)):
        cases.append((q, kappa, (0, 0, 0), q))
        for i, v in product(range(3), axis):
            m = [0, 0, 0]
            m[i] = v
            cases.append((q, kappa, tuple(m), q))
        for zero, (a, b) in product(range(3), pairs):
            m = [a, b]
            m.insert(zero, 0)
            cases.append((q, kappa, tuple(m), q))
        # r = 2 for the patterns whose closed forms carry the r-dependence
        cases.append((q, kappa, (2, 0, 0), 2 * q))
        cases.append((q, kappa, (1, -1, 0), 2 * q))
    return cases


def mellin(threads: int = 1, cases=None) -> list[Check]:
    cases = cases or mellin_cases()

    def one(case):
        q, kappa, m, c = case
        pattern = "".join("m" if x else "0" for x in m)
        direct = W_check_direct(m, c, ALPHA, q, kappa)
        plane = W_check_mellin_plane(pattern, m, c, ALPHA, q, kappa)
        return case, abs(direct.value - plane.value)

    W = _pmap(one, cases, threads)
    J = []
    for kappa, x in ((2, 0.7), (4, 3.3), (6, 11.0)):
        y = (x / 2) ** 2
        J.append(((kappa, x), abs(J_kernel_mellin(kappa, y).value - J_kernel(kappa, x))))
    return [_worst("W direct vs Mellin plane", W, 1e-5),
            _worst("J kernel vs Mellin form", J, 1e-8)]


# ---------------------------------------------------------------- L-functions and the sieve

CRITICAL_T = tuple(round(-19.5 + 4.3 * k, 6) for k in range(10))


def lfunctions(threads: int = 1) -> list[Check]:
    chars = [psi for q in odd_squarefree_upto(35) for psi in primitive_characters(q)]

    def one(psi):
        q = psi.modulus
        eps = root_number(psi)
        fe, oracle = 0.0, 0.0
        for t in CRITICAL_T:
            s = 0.5 + 1j * t
            val = lfun.dirichlet_L(psi, s)
            dual = lfun.dirichlet_L(psi.conjugate(), 1 - s)
            X = gamma_factor_X(q, 1j * t, psi.parity)
            fe = max(fe, abs(val - eps * X * dual) / max(1.0, abs(val)))
            oracle = max(oracle, abs(val - lfun.dirichlet_L_hurwitz(psi, s)) / max(1.0, abs(val)))
        return (q, psi.exponents), fe, oracle

    rows = _pmap(one, chars, threads)
    checks = [_worst("functional equation residual", [(k, f) for k, f, _ in rows], 1e-8),
              _worst("AFE vs Hurwitz oracle", [(k, o) for k, _, o in rows], 1e-8)]
    # partial sums of R_q(m) m^-s: the gap must shrink at least like N^(1 - Re s)
    rates = []
    for q, s in ((1, 2.0), (5, 2.0), (15, 2.5 + 1j)):
        Ns = (2500, 5000, 10000, 20000)
        gaps = [moment.ramanujan_dirichlet_identity(q, s, N)[2] for N in Ns]
        slope = moment.fit_exponent(Ns, gaps)
        rates.append(((q, s), slope - (1 - complex(s).real)))
    checks.append(_worst("Ramanujan series decay rate excess", rates, 0.1))
    return checks


SIEVE_GAPS = tuple(0.5 * k for k in range(21))


def large_sieve_table(q_max: int = 99, gaps=SIEVE_GAPS, threads: int = 1):
    """Rows (q, t1, t2, lhs, ref, ratio) with t1 = 0 and t2 = gap."""
    def one(q):
        return [(q, 0.0, g, *lfun.large_sieve_ratio(q, 0.0, g)) for g in gaps]

    return [row for rows in _pmap(one, odd_squarefree_upto(q_max), threads) for row in rows]


def sieve(threads: int = 1) -> list[Check]:
    return lfunctions(threads) + large_sieve(threads)


def large_sieve(threads: int = 1) -> list[Check]:
    checks = []
    table = large_sieve_table(threads=threads)
    ratios = np.array([r[-1] for r in table])
    finite = bool(np.all(np.isfinite(ratios)))
    checks.append(Check("large sieve max ratio", float(ratios.max()), math.inf, finite,
                        f"over {len(table)} (q, t) points"))
    per_q = {}
    for q, *_, ratio in table:
        per_q[q] = max(per_q.get(q, 0.0), ratio)
    slope = moment.fit_exponent(list(per_q), list(per_q.values()))
    checks.append(Check("large sieve growth exponent", slope, 0.1, slope <= 0.1))
    return checks


# ---------------------------------------------------------------- spectral side

def petersson(source=None, trunc_factor: int = 10_000, threads: int = 1) -> list[Check]:
    def one(q):
        fam = forms.harmonic_weights(forms.newforms_for(q, 2, source), trunc=trunc_factor * q)
        res = forms.petersson_residuals(fam)
        triples = [(n1, n2, n3) for n1, n2, n3 in ((2, 3, 3), (1, 2, 4), (2, 2, 5), (3, 4, 6), (1, 5, 5))
                   if math.gcd(n1 * n2 * n3, q) == 1]
        tri = []
        for t in triples:
            eig, kl = forms.petersson_triple(fam, *t, q, 2)
            tri.append(((q, *t), abs(eig - kl)))
        two = [((q, *mn), abs(v)) for mn, v in res.items()]
        return two, tri

    out = _pmap(one, (11, 17, 19), threads)
    return [_worst("Petersson two-point residual", [x for two, _ in out for x in two], 1e-4),
            _worst("Petersson triple dual path", [x for _, tri in out for x in tri], 1e-5)]


def positivity(source=None) -> list[Check]:
    values = []
    for kappa in (2, 4, 6):
        for q in forms.available_levels(kappa, source):
            chi = quadratic_character(q)
            if not forms.sign_condition(kappa, chi):
                continue
            for f in forms.newforms_for(q, kappa, source):
                values.append((f.label, forms.central_L_value(f, chi)))
    label, lowest = min(values, key=lambda kv: kv[1])
    return [Check("central values nonnegative", lowest, 1e-8, lowest >= -1e-8,
                  f"min over {len(values)} forms at {label}")]


def residual_envelope(source=None, trunc_factor: int = 2000, threads: int = 1) -> list[Check]:
    qs = [q for q in forms.available_levels(2, source) if q % 4 == 3]
    reports = _pmap(lambda q: moment.residual_report(q, 2, source=source, trunc=trunc_factor * q),
                    qs, threads)
    ratios = [abs(r.residual) / moment.envelope(r.q, 2) for r in reports]
    slope = moment.fit_exponent(qs, ratios)
    return [Check("moment residual envelope exponent", slope, 0.1, slope <= 0.1,
                  f"{len(qs)} levels, max ratio {max(ratios):.3g}")]


# ---------------------------------------------------------------- diagonal and lemmas

def diagonal(threads: int = 1, contour_height: float = 28.0) -> list[Check]:
    checks = []
    gap = abs(moment.diagonal_direct(ALPHA, 5, 4) - moment.diagonal_contour(ALPHA, 5, 4, height=contour_height))
    checks.append(Check("diagonal direct vs contour (q=5)", gap, 1e-6, gap <= 1e-6))

    sym = []
    for a, b, c in ((0.01, 0.02, 0.03), (0.031, -0.017, 0.02), (0.05 + 0.01j, 0.02, -0.04)):
        for q in (5, 13):
            sym.append(((q, a, b, c), abs(moment.N_term(a, b, c, q, 4) - moment.N_term(b, a, c, q, 4))))
    checks.append(_worst("N(a,b,c) = N(b,a,c)", sym, 1e-8))

    qs = odd_squarefree_upto(61, start=5)

    def trend(q):
        a = tuple(x / math.log(q) for x in (0.01, 0.02, 0.03))
        return abs(moment.diagonal_direct(a, q, 4) - moment.diagonal_asymptotic(a, q, 4))

    gaps = _pmap(trend, qs, threads)
    slope = moment.fit_exponent(qs, gaps)
    checks.append(Check("diagonal asymptotic error exponent", slope, -0.25, slope <= -0.25,
                        f"q in 5..61, |gap| {min(gaps):.3g}..{max(gaps):.3g}"))

    base = moment.diagonal_asymptotic(ALPHA, 13, 4)
    perm = max(abs(moment.diagonal_asymptotic(p, 13, 4) - base)
               for p in ((ALPHA[1], ALPHA[0], ALPHA[2]), (ALPHA[2], ALPHA[1], ALPHA[0]),
                         (ALPHA[0], ALPHA[2], ALPHA[1]), (ALPHA[1], ALPHA[2], ALPHA[0]),
                         (ALPHA[2], ALPHA[0], ALPHA[1])))
    checks.append(Check("diagonal asymptotic permutations", perm, 1e-7, perm <= 1e-7))

    q = 13

    def symmetrized(alpha, q, kappa):
        return sum(moment.diagonal_direct([s * a for s, a in zip(sg, alpha)], q, kappa)
                   for sg in moment.SIGNS)

    ladder = moment.with_ladder(symmetrized, (0, 0, 0), q, 4, even=True)
    exact = symmetrized((0, 0, 0), q, 4)
    checks.append(Check("ladder limit vs alpha = 0", abs(ladder - exact), 1e-4,
                        abs(ladder - exact) <= 1e-4))
    return checks


LEMMAS = ("axes-000", "m00", "0m0", "00m")


def lemma_sweep_levels(kappa: int = 4, q_max: int = 61) -> list[int]:
    return [q for q in primes_upto(q_max) if q > 3 and forms.sign_condition(kappa, quadratic_character(q))]


def lemma_gap(pattern: str, q: int, kappa: int = 4, alpha=ALPHA) -> float:
    """|closed-form left side - right side| of one coordinate-plane lemma."""
    from .specfun import ContourSpec

    alpha = tuple(complex(a) for a in alpha)
    if pattern == "axes-000":
        r = moment.coordinate_plane_sum(pattern, alpha, q, kappa)
        return abs(r.lhs - r.rhs)
    spec_s = ContourSpec(0.75, height_cut=30.0, nodes_per_unit=8)
    spec_u = ContourSpec(0.25, height_cut=30.0, nodes_per_unit=16)
    if pattern in ("m00", "0m0", "00m"):
        lhs = moment._axis_closed(pattern, alpha, q, kappa, spec_s, spec_u)
        (a, b), c = moment._axis_roles(pattern, alpha)
        return abs(lhs + moment.M_term(a, -b, c, q, kappa))
    return abs(moment._plane_closed(pattern, alpha, q, kappa, spec_s, spec_u))


def lemmas(threads: int = 1, envelope_constant: float = 5.0) -> list[Check]:
    checks = []
    # direct (m, r) summation against the summed Dirichlet series at q = 13
    direct = _pmap(lambda p: (p, moment.coordinate_plane_sum(p, ALPHA, 13, 4)),
                   ("m00", "0m0", "00m", "0mm"), threads)
    checks.append(_worst("lemma sums direct vs closed (q=13)",
                         [(p, abs(r.lhs - r.lhs_closed)) for p, r in direct], 1e-6))
    qs = lemma_sweep_levels()
    for pattern in LEMMAS + ("0mm", "mm0", "m0m"):
        gaps = _pmap(lambda q: lemma_gap(pattern, q), qs, threads)
        scaled = [g * math.sqrt(q) for g, q in zip(gaps, qs)]
        slope = moment.fit_exponent(qs, gaps)
        top = max(scaled)
        checks.append(Check(f"lemma {pattern} gap * sqrt(q)", top, envelope_constant,
                            top <= envelope_constant, f"fitted q-exponent {slope:.2f}"))
    return checks


SUITES = {
    "charsums": lambda ctx: charsums(ctx.threads),
    "mellin": lambda ctx: mellin(ctx.threads),
    "sieve": lambda ctx: sieve(ctx.threads),
    "petersson": lambda ctx: petersson(ctx.data, ctx.trunc_factor or 10_000, ctx.threads) + positivity(ctx.data),
    "diagonal": lambda ctx: diagonal(ctx.threads, getattr(ctx, "contour_T", 28.0)) + lemmas(ctx.threads),
}
