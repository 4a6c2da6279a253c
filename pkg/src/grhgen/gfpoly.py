"""Dense polynomials over F_p.

Polynomials are lists of ints in ``[0, p)``, highest degree first, with no
leading zeros; the zero polynomial is ``[]``.
"""

from __future__ import annotations


def strip(f: list[int]) -> list[int]:
    i = 0
    while i < len(f) and f[i] == 0:
        i += 1
    return f[i:]


def from_int_poly(coeffs, p: int) -> list[int]:
    """Reduce integer coefficients (constant term first) mod ``p``."""
    return strip([c % p for c in reversed(coeffs)])


def degree(f: list[int]) -> int:
    return len(f) - 1


def monic(f: list[int], p: int) -> list[int]:
    if not f or f[0] == 1:
        return f
    inv = pow(f[0], -1, p)
    return [c * inv % p for c in f]


def sub(f: list[int], g: list[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    f = [0] * (n - len(f)) + f
    g = [0] * (n - len(g)) + g
    return strip([(a - b) % p for a, b in zip(f, g)])


def mul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return strip([c % p for c in out])


def divmod_(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return [], f
    inv = pow(g[0], -1, p)
    r = list(f)
    q = [0] * (len(f) - len(g) + 1)
    for i in range(len(q)):
        c = r[i] * inv % p
        q[i] = c
        if c:
            for j in range(1, len(g)):
                r[i + j] = (r[i + j] - c * g[j]) % p
    return strip(q), strip(r[len(q):])


def rem(f: list[int], g: list[int], p: int) -> list[int]:
    return divmod_(f, g, p)[1]


def quo(f: list[int], g: list[int], p: int) -> list[int]:
    return divmod_(f, g, p)[0]


def gcd(f: list[int], g: list[int], p: int) -> list[int]:
    while g:
        f, g = g, rem(f, g, p)
    return monic(f, p)


def deriv(f: list[int], p: int) -> list[int]:
    n = len(f) - 1
    return strip([c * (n - i) % p for i, c in enumerate(f[:-1])])


def powmod(f: list[int], e: int, m: list[int], p: int) -> list[int]:
    """``f**e mod m`` by square-and-multiply."""
    result = [1]
    base = rem(f, m, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = rem(mul(base, base, p), m, p)
    return result


def _pth_root(f: list[int], p: int) -> list[int]:
    # f(x) = h(x)^p = h(x^p) over F_p, so keep every p-th coefficient
    n = len(f) - 1
    return [c for i, c in enumerate(f) if (n - i) % p == 0]


def radical(f: list[int], p: int) -> list[int]:
    """Product of the distinct monic irreducible factors of ``f``."""
    f = monic(f, p)
    if len(f) <= 1:
        return [1]
    df = deriv(f, p)
    if not df:
        return radical(_pth_root(f, p), p)
    g = gcd(f, df, p)
    w = quo(f, g, p)
    # strip from g every factor already present in w
    y = gcd(g, w, p)
    while len(y) > 1:
        g = quo(g, y, p)
        y = gcd(g, w, p)
    if len(g) <= 1:
        return monic(w, p)
    return monic(mul(w, radical(_pth_root(g, p), p), p), p)


def _reduce_monic(prod: list[int], f: list[int], p: int) -> list[int]:
    # unreduced integer coefficients in, canonical remainder mod monic f out
    n = len(f) - 1
    for i in range(len(prod) - n):
        c = prod[i] % p
        if c:
            for j in range(1, n + 1):
                prod[i + j] -= c * f[j]
    return strip([c % p for c in prod[-n:]]) if n else []


def _mulmod_monic(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                prod[i + j] += u * v
    if len(prod) < len(f):
        return strip([c % p for c in prod])
    return _reduce_monic(prod, f, p)


def _x_power_monic(e: int, f: list[int], p: int) -> list[int]:
    """``x^e mod f`` for monic ``f``, left to right: square, then shift by x."""
    r = [1]
    for bit in bin(e)[2:]:
        r = _mulmod_monic(r, r, f, p)
        if bit == "1":
            r = r + [0] if r else r
            if len(r) >= len(f):
                r = _reduce_monic(r, f, p)
    return r


def _frobenius_rows(f: list[int], p: int) -> list[list[int]]:
    """``x^(i*p) mod f`` for ``i < deg f``, each padded to ``deg f`` coefficients."""
    n = degree(f)
    xp = _x_power_monic(p, f, p)
    rows, cur = [], [1]
    for _ in range(n):
        rows.append([0] * (n - len(cur)) + cur)
        cur = _mulmod_monic(cur, xp, f, p)
    return rows


def _apply_frobenius(h: list[int], rows: list[list[int]], p: int) -> list[int]:
    # h(x)^p = h(x^p) = sum h_i * x^(i*p)
    n = len(rows)
    acc = [0] * n
    for i, c in enumerate(reversed(h)):
        if c:
            row = rows[i]
            for j in range(n):
                acc[j] += c * row[j]
    return strip([a % p for a in acc])


def distinct_degree(f: list[int], p: int) -> list[tuple[int, int]]:
    """Distinct-degree factorization of a monic squarefree ``f``.

    Returns ``(d, k)`` pairs: ``f`` has exactly ``k`` irreducible factors of
    degree ``d``. The factors themselves are never split apart.
    """
    f = monic(f, p)
    out: list[tuple[int, int]] = []
    if degree(f) < 2:
        return [(1, 1)] if degree(f) == 1 else out
    x = [1, 0]
    rows = _frobenius_rows(f, p)
    h = x
    d = 0
    while 2 * (d + 1) <= degree(f):
        d += 1
        h = _apply_frobenius(h, rows, p)
        g = gcd(f, sub(h, x, p), p)
        if len(g) > 1:
            out.append((d, degree(g) // d))
            f = quo(f, g, p)
            h = rem(h, f, p)
            # f divides the old modulus, so the old rows reduce to the new ones
            n = degree(f)
            rows = [[0] * (n - len(r)) + r for r in (rem(strip(row), f, p) for row in rows[:n])]
    if degree(f) > 0:
        out.append((degree(f), 1))
    return out


def dedekind_maximal(coeffs, p: int) -> bool:
    """Dedekind's criterion: is Z[x]/(P) maximal at ``p``?

    ``coeffs`` are the integer coefficients of the monic ``P``, constant
    term first.
    """
    fbar = from_int_poly(coeffs, p)
    g = radical(fbar, p)
    h = quo(fbar, g, p)
    # (g*h - P) / p computed over Z with lifts in [0, p)
    gh = _int_mul(g, h)
    P = list(reversed(coeffs))
    n = max(len(gh), len(P))
    gh = [0] * (n - len(gh)) + gh
    P = [0] * (n - len(P)) + P
    diff = [a - b for a, b in zip(gh, P)]
    assert all(c % p == 0 for c in diff)
    F = strip([(c // p) % p for c in diff])
    common = gcd(gcd(F, g, p), h, p) if F else gcd(g, h, p)
    return len(common) <= 1


def _int_mul(f: list[int], g: list[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out
