import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from grhgen import gfpoly
from grhgen.numberfield import IntPolynomial, discriminant, new_field
from grhgen.splitting import (
    CacheError,
    IdealNormTable,
    extend_table,
    load_cache,
    save_cache,
    sieve_primes,
    splitting_degrees,
)
from oracles import brute_factor_degrees, trial_primes

X2P1 = IntPolynomial((1, 0, 1))


def test_sieve_small():
    assert sieve_primes(10) == [2, 3, 5, 7]
    assert sieve_primes(2) == [2]
    with pytest.raises(ValueError):
        sieve_primes(1)


def test_sieve_million():
    ps = sieve_primes(10**6)
    assert len(ps) == 78498
    assert ps[:200] == trial_primes(ps[199])
    small = trial_primes(1000)
    assert ps[-5:] == [n for n in range(999900, 10**6) if all(n % q for q in small)][-5:]


def test_split_examples():
    assert splitting_degrees(X2P1, 5).degrees == ((1, 2),)
    assert not splitting_degrees(X2P1, 5).ramified
    rec3 = splitting_degrees(X2P1, 3)
    assert rec3.degrees == ((2, 1),) and not rec3.ramified
    rec2 = splitting_degrees(X2P1, 2)
    assert rec2.degrees == ((1, 1),) and rec2.ramified


def test_radical_in_small_characteristic():
    # x^4 + 1 = (x + 1)^4 over F_2; derivative vanishes
    assert gfpoly.radical([1, 0, 0, 0, 1], 2) == [1, 1]
    # x^6 = x^3 * x^3 over F_3 style p-th power plus squares
    assert gfpoly.radical([1, 0, 0, 0, 0, 0, 0], 3) == [1, 0]


def test_dedekind():
    assert gfpoly.dedekind_maximal((1, 0, 1), 2)
    assert not gfpoly.dedekind_maximal((-5, 0, 1), 2)
    assert not gfpoly.dedekind_maximal((-12, 0, 1), 2)


def _small_polys():
    for n in range(2, 5):
        for tail in itertools.product(range(-5, 6), repeat=n):
            coeffs = list(tail) + [1]
            if discriminant(IntPolynomial(tuple(coeffs))) != 0:
                yield coeffs


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_split_matches_brute_force(p):
    polys = list(_small_polys())
    # a deterministic slice keeps the runtime small; the acceptance test covers all
    for coeffs in polys[::7]:
        rec = splitting_degrees(IntPolynomial(tuple(coeffs)), p)
        degs, ram = brute_factor_degrees(coeffs, p)
        assert rec.degrees == degs, (coeffs, p)
        assert rec.ramified == ram
        if not rec.ramified:
            assert sum(f * c for f, c in rec.degrees) == len(coeffs) - 1


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6).flatmap(
    lambda n: st.lists(st.integers(-30, 30), min_size=n, max_size=n).map(lambda c: c + [1])),
    st.sampled_from(sieve_primes(1000)))
def test_fundamental_identity(coeffs, p):
    poly = IntPolynomial(tuple(coeffs))
    d = discriminant(poly)
    assume(d != 0 and d % p != 0)
    rec = splitting_degrees(poly, p)
    assert not rec.ramified
    assert sum(f * c for f, c in rec.degrees) == poly.degree


def test_table_x2p1():
    nf = new_field([1, 0, 1])
    t = IdealNormTable.for_field(nf).extend(10, nf)
    assert [e.norm for e in t.entries for _ in range(e.count)] == [2, 5, 5, 9]
    assert t.count_upto(10) == 4
    assert extend_table(t, 10, nf) == t
    bigger = extend_table(t, 100, nf)
    assert bigger.limit == 100 and t.limit == 10
    norms = [e.norm for e in bigger.entries]
    assert norms == sorted(norms) and max(norms) <= 100
    assert 49 in norms  # 7 inert, norm 49 once the limit passes it


def test_table_incremental_equals_direct():
    nf = new_field([-1, -1, 0, 1])
    a = IdealNormTable.for_field(nf).extend(50, nf).extend(400, nf).extend(1000, nf)
    b = IdealNormTable.for_field(nf).extend(1000, nf)
    assert a == b and a.entries == b.entries


def test_untrusted_prime_excluded():
    nf = new_field([-5, 0, 1])  # 2 divides the index of Z[sqrt 5]
    t = IdealNormTable.for_field(nf).extend(30, nf)
    assert 2 in t.excluded
    assert all(e.p != 2 for e in t.entries)


def test_cache_roundtrip(tmp_path):
    nf = new_field([-1, -1, 0, 1])
    t = IdealNormTable.for_field(nf).extend(5000, nf)
    path = save_cache(t, tmp_path)
    back = load_cache(nf.field_id, tmp_path)
    assert back == t and back.entries == t.entries
    # rebuilding gives the same bytes
    t2 = IdealNormTable.for_field(nf).extend(5000, nf)
    other = tmp_path / "again"
    assert save_cache(t2, other).read_bytes() == path.read_bytes()


def test_cache_errors(tmp_path):
    nf = new_field([-1, -1, 0, 1])
    save_cache(IdealNormTable.for_field(nf).extend(100, nf), tmp_path)
    src = tmp_path / f"{nf.field_id}.cache"
    with pytest.raises(CacheError):
        load_cache("0" * 64, tmp_path, path=src)
    empty = load_cache("f" * 64, tmp_path)
    assert empty.limit == 1 and not empty.entries
    bad = tmp_path / "bad.cache"
    bad.write_text(f"grhgen-cache v1 {nf.field_id} 100\n2 0 x\n")
    with pytest.raises(CacheError):
        load_cache(nf.field_id, tmp_path, path=bad)


def test_cache_header_format(tmp_path):
    nf = new_field([1, 0, 1])
    path = save_cache(IdealNormTable.for_field(nf).extend(10, nf), tmp_path)
    lines = path.read_text().splitlines()
    assert lines[0] == f"grhgen-cache v1 {nf.field_id} 10"
    assert lines[1:] == ["2 1 1:1", "3 0 2:1", "5 0 1:2", "7 0 2:1"]


def test_cache_restores_excluded_primes(tmp_path):
    nf = new_field([12, 0, 1])
    t = IdealNormTable.for_field(nf)
    t.extend(50, nf)
    assert t.excluded == [2]
    save_cache(t, tmp_path)
    back = load_cache(nf.field_id, tmp_path)
    assert back == t and back.excluded == [2]
