"""Acceptance criteria, one test each.

Each test records a few figures with ``record_property``; the conftest
summary prints them under a PASS/FAIL line per criterion.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction as F

import mpmath
import pytest

from _gen import (
    KAPPA_FIXTURES,
    bmy_pipeline,
    random_effective,
    random_plane_datum,
    scenario,
    zariski_case,
)
from logsurf.bmy import boundoldpoints, curve_invariants, main_quadratic, main_quadratic_coefficients
from logsurf.bounds import (
    coefficient_intervals,
    ceiling_identity,
    m_bound,
    p_sign_change,
    plane_numbers,
    r_plus_interval,
)
from logsurf.errors import ModelInconsistencyError, PreconditionError
from logsurf.intervals import RationalInterval, sqrt_interval
from logsurf.lattice import Cycle, Divisor, intersect, is_effective, leq
from logsurf.resolution import check_adjunction
from logsurf.verdicts import Verdict
from logsurf.zariski import negative_square, zariski_absolute, zariski_oracle, zariski_support

GRID = [F(i, 100) for i in range(101)]


@pytest.fixture(scope="module")
def corpus(request):
    rng = random.Random(request.config.getoption("--seed"))
    return [zariski_case(rng) for _ in range(500)], rng


@pytest.mark.criterion(1, "Zariski oracle equivalence on 500 random lattices")
def test_oracle_equivalence(corpus, record_property):
    cases, _ = corpus
    start = time.perf_counter()
    mismatches = 0
    for model, D, E in cases:
        if zariski_support(D, E, model).to_json() != zariski_oracle(D, E, model).to_json():
            mismatches += 1
    elapsed = time.perf_counter() - start
    record_property("cases", len(cases))
    record_property("mismatches", mismatches)
    record_property("seconds", f"{elapsed:.2f}")
    assert mismatches == 0
    assert elapsed < 30


@pytest.mark.criterion(2, "Zariski certificate and monotonicity laws")
def test_certificates_and_laws(corpus, record_property):
    cases, rng = corpus
    for model, D, E in cases:
        res = zariski_support(D, E, model)
        P, N = res.positive, res.negative
        assert res.certificate.holds
        # (i) P nef on E, (ii) N effective in E, (iii) P·E_j = 0 on supp N, (iv) D = P + N
        assert all(intersect(P, Divisor.prime(c), model) >= 0 for c in E)
        assert is_effective(N) and N.support <= set(E)
        assert all(intersect(P, Divisor.prime(c), model) == 0 for c in N.support)
        assert P + N == D

    pairs = {"divisor": 0, "cycle": 0, "absolute": 0}
    for model, D, E in cases:
        if min(pairs.values()) >= 200:
            break
        D2 = D + random_effective(rng, model.classes, 0.5)
        assert leq(zariski_support(D, E, model).positive, zariski_support(D2, E, model).positive)
        pairs["divisor"] += 1

        small = Cycle(tuple(sorted(rng.sample(list(E), rng.randint(0, len(E))), key=model.index)))
        a, b = zariski_support(D, small, model), zariski_support(D, E, model)
        assert leq(a.negative, b.negative) and leq(b.positive, a.positive)
        pairs["cycle"] += 1

        try:
            absolute = zariski_absolute(D, model)
        except (ModelInconsistencyError, PreconditionError):
            continue
        assert leq(b.negative, absolute.negative)
        assert negative_square(absolute, model) <= negative_square(b, model)
        pairs["absolute"] += 1
    for k, v in pairs.items():
        record_property(f"{k} pairs", v)
    assert min(pairs.values()) >= 200


@pytest.mark.criterion(3, "Adjunction identity on fixtures and 100 random resolution data")
def test_adjunction(seed, record_property):
    expected = {"smooth_transverse": 6, "nodal_cubic": 0, "tacnodal_quartic": 4}
    for name, value in expected.items():
        rep = check_adjunction(*scenario(name).require_curve())
        assert rep.lhs == rep.rhs == value, name
    rng = random.Random(seed)
    centers = 0
    for _ in range(100):
        model, datum, C = random_plane_datum(rng)
        rep = check_adjunction(model, datum, C)
        assert rep.lhs == rep.rhs
        centers += len(datum)
    record_property("random data", 100)
    record_property("blow-up centres", centers)


@pytest.mark.criterion(4, "Plane corollary numbers, A = 27 + 18√2 and the m-bound")
def test_plane_numbers(record_property):
    n = plane_numbers(6, 6)
    assert (n.e_open, n.kd_sq, n.difference) == (75, 81, 6)
    assert n.difference_closed == n.difference_printed == 6
    A, _ = coefficient_intervals(F(n.kd_sq), F(n.e_open), 64)
    assert A.width < F(1, 10**10)
    with mpmath.workprec(256):
        ref = 27 + 18 * mpmath.sqrt(2)
        assert mpmath.mpf(A.lo.numerator) / A.lo.denominator <= ref
        assert ref <= mpmath.mpf(A.hi.numerator) / A.hi.denominator
    assert m_bound(F(1)) == 300
    record_property("A width", f"{float(A.width):.3g}")


@pytest.mark.criterion(5, "Main quadratic on the quartic-line fixture")
def test_main_quadratic():
    inv = curve_invariants(*scenario("p2_quartic_line").require_curve())
    assert main_quadratic_coefficients(inv) == (-1, 4, 20)
    for a in GRID:
        value = main_quadratic(inv, a)
        assert value == -a * a + 4 * a + 20
        assert value >= 0


@pytest.mark.criterion(6, "Inequality chain on κ fixtures and boundoldpoints")
def test_chain(record_property):
    rows = 0
    for name in KAPPA_FIXTURES:
        for a in GRID:
            inv, _, _, red, chain = bmy_pipeline(name, a)
            assert chain.holds, (name, a, chain.failures())
            assert chain.principal is not None and chain.principal <= main_quadratic(inv, a)
            rows += len(chain.rows)
    for m in range(2, 51):
        for a in GRID:
            lhs, rhs = boundoldpoints(m, a)
            assert lhs <= rhs
    record_property("fixtures", len(KAPPA_FIXTURES))
    record_property("chain rows checked", rows)


@pytest.mark.criterion(7, "R₊ dominance and sign change on a 50×50 grid at 128 bits")
def test_r_plus_grid(record_property):
    unknown = 0
    for i in range(50):
        sigma = F(1, 3) + F(2, 3) * F(i, 50)
        for j in range(50):
            gamma = F(10 * j, 49)
            R = r_plus_interval(sigma, gamma, 128)
            verdict = RationalInterval.point(3 * gamma).compare_le(R)
            unknown += verdict is Verdict.UNKNOWN
            assert verdict is not Verdict.FAILS
            assert p_sign_change(sigma, gamma, R)
    record_property("unknown verdicts", unknown)
    assert unknown == 0


@pytest.mark.criterion(8, "Ceiling identity for t = 0..1000")
def test_ceiling_identity():
    for t in range(1001):
        assert ceiling_identity(t) == (t + 3, t + 3)


def _sound(p: int, q: int, iv: RationalInterval, bits: int) -> bool:
    """lo² <= p/q <= hi² and hi - lo <= 2^-bits·max(1, hi), in integers."""
    ln, ld = iv.lo.numerator, iv.lo.denominator
    hn, hd = iv.hi.numerator, iv.hi.denominator
    if ln * ln * q > p * ld * ld or p * hd * hd > hn * hn * q:
        return False
    width_num = (hn * ld - ln * hd) << bits  # (hi - lo)·2^bits = width_num / (hd·ld)
    return width_num <= max(hd, hn) * ld


@pytest.mark.criterion(9, "10⁶ sqrt_interval calls are sound and fast")
def test_interval_soundness(seed, record_property):
    rng = random.Random(seed)
    values = [F(rng.randint(0, 10**12), rng.randint(1, 10**6)) for _ in range(10**6)]
    start = time.perf_counter()
    bad = 0
    for v in values:
        iv = sqrt_interval(v, 64)
        if not _sound(v.numerator, v.denominator, iv, 64):
            bad += 1
    elapsed = time.perf_counter() - start
    record_property("calls", len(values))
    record_property("unsound", bad)
    record_property("seconds", f"{elapsed:.2f}")
    assert bad == 0
    assert elapsed < 10
