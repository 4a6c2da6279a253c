import functools
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grhgen.analytic import (
    CATALAN,
    EULER_GAMMA,
    TableTooSmall,
    arch_terms,
    dilog,
    disc_constant,
    ell,
    ell_values,
    grh_check,
    grh_check_coro,
    prime_sum,
    prime_sums,
    ti2,
)
from grhgen.numberfield import new_field
from grhgen.splitting import IdealNormTable, NormEntry
from oracles import arch_quad, brute_factor_degrees, trial_primes

CUBIC = [55137512477462689, 559752270111028720, 0, 1]


def test_constants():
    assert EULER_GAMMA == pytest.approx(float(mpmath.euler), abs=1e-16)
    assert CATALAN == pytest.approx(float(mpmath.catalan), abs=1e-16)
    series = math.fsum((-1) ** k / (2 * k + 1) ** 2 for k in range(2_000_000))
    assert abs(series - CATALAN) < 1e-12


def test_dilog_values():
    assert dilog(0.0) == 0.0
    assert dilog(1.0) == pytest.approx(math.pi**2 / 6, abs=1e-15)
    direct = math.fsum(0.5**k / k**2 for k in range(1, 61))
    assert abs(dilog(0.5) - direct) < 1e-14
    assert dilog(0.5) == pytest.approx(0.5822405265, abs=1e-10)
    with pytest.raises(ValueError):
        dilog(1.5)
    with pytest.raises(ValueError):
        dilog(-0.1)


def test_ti2_values():
    assert ti2(0.0) == 0.0
    assert abs(ti2(1.0) - CATALAN) < 1e-12
    direct = math.fsum((-1) ** k * 0.5 ** (2 * k + 1) / (2 * k + 1) ** 2 for k in range(40))
    assert abs(ti2(0.5) - direct) < 1e-14
    assert ti2(0.5) == pytest.approx(0.4872223583, abs=1e-10)
    with pytest.raises(ValueError):
        ti2(1.01)


@pytest.mark.parametrize("x", np.linspace(0, 1, 41))
def test_dilog_against_mpmath(x):
    assert abs(dilog(x) - float(mpmath.polylog(2, x))) < 1e-13
    assert abs(ti2(x) - float(mpmath.polylog(2, 1j * x).imag)) < 1e-13


def test_reflection_identity():
    for x in np.linspace(1e-9, 1 - 1e-9, 1000):
        resid = dilog(x) + dilog(1 - x) - (math.pi**2 / 6 - math.log(x) * math.log(1 - x))
        assert abs(resid) <= 1e-12


def test_arch_limits():
    a1, an = arch_terms(0.0)
    assert abs(a1) < 1e-14 and abs(an) < 1e-14
    a1, an = arch_terms(200.0)
    assert a1 == pytest.approx(4 * CATALAN, abs=1e-14)
    assert an == pytest.approx(math.pi**2 / 2, abs=1e-14)


@pytest.mark.parametrize("L", [0.5, 1, 2, 5, 10, 20])
def test_arch_vs_quadrature(L):
    a1, an = arch_terms(L)
    q1, qn = arch_quad(L)
    assert abs(a1 - q1) <= 1e-9
    assert abs(an - qn) <= 1e-9


def test_prime_sum_small_cases():
    nf = new_field([1, 0, 1])
    empty = IdealNormTable(nf.field_id, limit=10**6)
    assert prime_sum(empty, 5.0) == 0.0
    t = IdealNormTable(nf.field_id, limit=5)
    t._entries = [NormEntry(4, math.log(4), 2, 2, 1)]
    L = math.log(5)
    assert prime_sum(t, L) == pytest.approx(2 * math.log(4) * (L - math.log(4)) / 2, rel=1e-15)


def _brute_prime_sum(coeffs, L):
    total = 0.0
    limit = math.exp(L)
    for p in trial_primes(int(limit) + 1):
        degs, _ = brute_factor_degrees(coeffs, p, max_deg=len(coeffs) - 1)
        for f, cnt in degs:
            q = p**f
            for m in range(1, 7):
                if m * math.log(q) < L:
                    total += cnt * math.log(q) * (L - m * math.log(q)) / q ** (m / 2)
    return 2 * total


def test_prime_sum_brute_force_x2p1():
    nf = new_field([1, 0, 1])
    t = IdealNormTable.for_field(nf).extend(50, nf)
    L = math.log(50)
    assert abs(prime_sum(t, L) - _brute_prime_sum([1, 0, 1], L)) < 1e-10


def test_prime_sum_requires_table():
    nf = new_field([1, 0, 1])
    t = IdealNormTable.for_field(nf).extend(20, nf)
    with pytest.raises(TableTooSmall):
        prime_sum(t, math.log(30))


@pytest.fixture(scope="module")
def cubic():
    nf = new_field(CUBIC)
    return nf, IdealNormTable.for_field(nf).extend(40000, nf)


def test_vectorized_prime_sums_agree(cubic):
    nf, t = cubic
    Ls = np.linspace(0.1, math.log(40000), 57)
    fast = prime_sums(t, Ls)
    slow = np.array([prime_sum(t, L) for L in Ls])
    assert np.allclose(fast, slow, rtol=1e-11, atol=1e-11)
    assert np.all(np.diff(fast) >= 0)


def test_ell_at_zero(cubic):
    nf, t = cubic
    assert abs(ell(nf, t, 0.0).value) < 1e-13


def test_ell_assembly(cubic):
    nf, t = cubic
    v = ell(nf, t, 7.3)
    assert v.arch_r1 >= 0 and v.arch_n >= 0
    expect = -v.prime_sum + 7.3 * disc_constant(nf) + nf.r1 * v.arch_r1 + nf.n * v.arch_n
    assert v.value == pytest.approx(expect, rel=1e-15)
    assert ell_values(nf, t, [7.3])[0] == pytest.approx(v.value, rel=1e-11)


def test_cubic_basic_threshold(cubic):
    nf, t = cubic
    assert grh_check_coro(nf, t, math.log(19162)) < 0
    assert grh_check_coro(nf, t, math.log(19161)) >= 0
    # scan oracle: 19162 is the first integer in the neighbourhood that passes
    passing = [T for T in range(18000, 20001) if grh_check_coro(nf, t, math.log(T)) < 0]
    assert passing[0] == 19162


def test_homogeneity(cubic):
    nf, t = cubic
    rng = np.random.default_rng(1)
    for L in rng.uniform(0.5, math.log(40000), 30):
        v = ell(nf, t, L).value
        assert abs(v - L * grh_check(nf, t, L)) <= 1e-9 * (1 + abs(v))


def test_corollary_check_drops_dilog_terms(cubic):
    nf, t = cubic
    for L in [1.0, 3.0, 7.5, 9.8]:
        s = math.exp(-L / 2)
        dropped = (nf.r1 * 4 * ti2(s) + nf.n * (4 * dilog(s) - dilog(s * s))) / L
        diff = grh_check_coro(nf, t, L) - grh_check(nf, t, L)
        assert diff >= 0
        assert diff == pytest.approx(dropped, abs=1e-11)


def test_corollary_check_decreasing(cubic):
    nf, t = cubic
    vals = [grh_check_coro(nf, t, L) for L in np.linspace(0.3, math.log(40000), 400)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


@functools.lru_cache(maxsize=None)
def _small_cubic():
    nf = new_field([-1, -1, 0, 1])
    return nf, IdealNormTable.for_field(nf).extend(math.exp(10.01), nf)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 10.0), st.floats(1e-6, 1e-3))
def test_ell_lipschitz(L, h):
    nf, t = _small_cubic()
    _, w, _, _ = t.points()
    K = 2 * w.sum() + abs(disc_constant(nf)) + (nf.r1 + nf.n) * math.pi
    assert abs(ell(nf, t, L + h).value - ell(nf, t, L).value) <= K * h
