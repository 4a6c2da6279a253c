"""Defining polynomials and the field invariants the bounds depend on."""

from __future__ import annotations

import hashlib
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import gfpoly
from .primes import is_probable_prime, sieve_primes

log = logging.getLogger(__name__)

SUSPECT_LIMIT = 10**6
IRREDUCIBILITY_PRIMES = 100


class FieldError(ValueError):
    """Invalid defining polynomial."""


@dataclass(frozen=True)
class IntPolynomial:
    """Monic integer polynomial, coefficients constant term first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) < 3:
            raise FieldError("degree must be >= 2")
        if self.coeffs[-1] != 1:
            raise FieldError("polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def canonical(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if k and abs(c) == 1:
                coef = "-" if c < 0 else "+"
                terms.append(f"{coef} {mono}")
            else:
                terms.append(f"{'-' if c < 0 else '+'} {abs(c)}{'*' if mono else ''}{mono}")
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


@dataclass(frozen=True)
class NumberField:
    poly: IntPolynomial
    r1: int
    r2: int
    disc_poly: int
    log_abs_disc: float
    index_suspects: frozenset[int]
    disc_source: str = "polynomial-discriminant"
    cofactor_unfactored: bool = False
    irreducible_certified: bool = True
    warnings: tuple[str, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.poly.degree

    @property
    def field_id(self) -> str:
        return self.poly.digest()


# -- exact integer polynomial helpers (high degree first) -------------------

def _hf(poly: IntPolynomial) -> list[int]:
    return list(reversed(poly.coeffs))


def _strip(f: list) -> list:
    i = 0
    while i < len(f) and f[i] == 0:
        i += 1
    return f[i:]


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, over Z."""
    r = list(a)
    lb = b[0]
    e = len(a) - len(b) + 1
    for _ in range(e):
        if len(r) < len(b):
            r = [c * lb for c in r]
            continue
        lr = r[0]
        r = [c * lb for c in r]
        for j in range(len(b)):
            r[j] -= lr * b[j]
        r = r[1:]
    return _strip(r)


def _content(f: list[int]) -> int:
    g = 0
    for c in f:
        g = math.gcd(g, c)
    return g


def resultant(a: list[int], b: list[int]) -> int:
    """Resultant over Z by the subresultant PRS (high-degree-first input)."""
    a, b = _strip(list(a)), _strip(list(b))
    if not a or not b:
        return 0
    da, db = len(a) - 1, len(b) - 1
    s = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da % 2 and db % 2:
            s = -1
    ca, cb = _content(a), _content(b)
    a = [c // ca for c in a]
    b = [c // cb for c in b]
    t = ca**db * cb**da
    g = h = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        d = da - db
        if da % 2 and db % 2:
            s = -s
        r = _prem(a, b)
        if not r:
            return 0
        den = g * h**d
        a, b = b, [c // den for c in r]
        g = a[0]
        # h <- h^(1-d) * g^d, exact
        h = g**d // h ** (d - 1) if d >= 1 else h
        if len(b) == 1:
            break
    da = len(a) - 1
    h = b[0] ** da // h ** (da - 1) if da >= 1 else h
    return s * t * h


def discriminant(poly: IntPolynomial) -> int:
    """(-1)^(n(n-1)/2) Res(P, P') for monic P."""
    f = _hf(poly)
    n = len(f) - 1
    df = [c * (n - i) for i, c in enumerate(f[:-1])]
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, df)


def _sign_at(f: list[Fraction], plus: bool) -> int:
    lead = 1 if f[0] > 0 else -1
    if not plus and (len(f) - 1) % 2:
        lead = -lead
    return lead


def count_real_roots(poly: IntPolynomial) -> int:
    """Number of real roots of a squarefree polynomial (Sturm chain)."""
    f = [Fraction(c) for c in _hf(poly)]
    n = len(f) - 1
    chain = [f, [c * (n - i) for i, c in enumerate(f[:-1])]]
    while len(chain[-1]) > 1:
        a, b = chain[-2], chain[-1]
        r = list(a)
        while len(r) >= len(b):
            q = r[0] / b[0]
            for j in range(len(b)):
                r[j] -= q * b[j]
            r = _strip(r[1:])
            if not r:
                break
        if not r:
            break
        r = [-c for c in r]
        # rescale by a positive factor to keep numbers small
        scale = max(abs(c) for c in r)
        chain.append([c / scale for c in r])

    def changes(plus: bool) -> int:
        signs = [_sign_at(g, plus) for g in chain]
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)

    return changes(False) - changes(True)


def log_abs(v: int) -> float:
    """Natural log of |v| from the bit length and the top 64 bits."""
    v = abs(int(v))
    if v == 0:
        raise ValueError("log of zero")
    shift = max(v.bit_length() - 64, 0)
    return math.log(v >> shift) + shift * math.log(2.0)


# -- construction ------------------------------------------------------------

def _index_suspects(disc: int, limit: int) -> tuple[frozenset[int], bool]:
    """Primes p <= limit with p^2 | disc, and whether the cofactor may hide more."""
    rest = abs(disc)
    out = set()
    for p in sieve_primes(limit):
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            if e >= 2:
                out.add(p)
    hidden = False
    if rest > 1 and rest >= limit * limit and not is_probable_prime(rest):
        hidden = True
    return frozenset(out), hidden


def _integer_root(poly: IntPolynomial) -> int | None:
    roots = np.roots(np.array(_hf(poly), dtype=float))
    for z in roots:
        if abs(z.imag) > 1e-6 * max(1.0, abs(z)):
            continue
        for c in {math.floor(z.real), math.ceil(z.real)}:
            if abs(c) > 2**60:
                continue
            val = 0
            for a in _hf(poly):
                val = val * c + a
            if val == 0:
                return c
    return None


def certify_irreducible(poly: IntPolynomial, disc: int, max_p: int = IRREDUCIBILITY_PRIMES) -> bool:
    """True when the factorization patterns mod small primes rule out any factor.

    A factor of degree k over Q must show up as a sub-multiset of degrees
    summing to k modulo every unramified p; when no k in 1..n-1 survives all
    primes, P is irreducible.
    """
    n = poly.degree
    possible = set(range(1, n))
    for p in sieve_primes(max_p):
        if disc % p == 0:
            continue
        pattern = gfpoly.distinct_degree(gfpoly.from_int_poly(poly.coeffs, p), p)
        sums = {0}
        for d, k in pattern:
            for _ in range(k):
                sums |= {s + d for s in sums}
        possible &= sums
        if not possible:
            return True
    return False


def new_field(coeffs, user_log_disc: float | None = None,
              suspect_limit: int = SUSPECT_LIMIT) -> NumberField:
    """Validate ``coeffs`` (constant first) and compute the field invariants."""
    poly = IntPolynomial(tuple(coeffs))
    disc = discriminant(poly)
    if disc == 0:
        raise FieldError("polynomial is not squarefree (zero discriminant)")
    root = _integer_root(poly)
    if root is not None:
        raise FieldError(f"polynomial is reducible: x = {root} is a root")
    r1 = count_real_roots(poly)
    r2 = (poly.degree - r1) // 2
    suspects, hidden = _index_suspects(disc, suspect_limit)
    warnings = []
    if hidden:
        warnings.append("discriminant cofactor not fully factored; index primes may be missed")
    certified = certify_irreducible(poly, disc)
    if not certified:
        warnings.append("irreducibility not certified by small-prime patterns")
        log.warning("irreducibility of %s not certified", poly)
    if user_log_disc is not None:
        if user_log_disc <= 0:
            raise FieldError("log discriminant override must be positive")
        log_disc, source = float(user_log_disc), "user-supplied"
    else:
        log_disc, source = log_abs(disc), "polynomial-discriminant"
        if log_disc <= 0:
            raise FieldError("|disc P| must exceed 1")
    return NumberField(
        poly=poly,
        r1=r1,
        r2=r2,
        disc_poly=disc,
        log_abs_disc=log_disc,
        index_suspects=suspects,
        disc_source=source,
        cofactor_unfactored=hidden,
        irreducible_certified=certified,
        warnings=tuple(warnings),
    )


def parse_coeffs(text: str) -> list[int]:
    """Parse ``"c0,c1,...,cn"`` (constant first)."""
    parts = [t.strip() for t in text.strip().split(",")]
    if not parts or any(not t for t in parts):
        raise FieldError(f"malformed coefficient list: {text!r}")
    try:
        return [int(t) for t in parts]
    except ValueError as exc:
        raise FieldError(f"malformed coefficient list: {text!r}") from exc
