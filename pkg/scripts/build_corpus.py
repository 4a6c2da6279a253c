"""Regenerate the small-field corpus used by the ratio and witness checks.

Rule: for each degree n in 2..7 and each decade (10^(e-1), 10^e], e = 6..10,
take the first polynomial, in a fixed enumeration order, that is squarefree,
has no integer root, is certified irreducible by small-prime patterns and
whose |disc| falls in the decade.

* n = 2: x^2 + c with c increasing from floor(10^(e-1)/4) + 1.
* n >= 3: x^n + b*x^k + c ordered by h = max(|b|, c), then k = 1..n-1,
  then c, then |b|, then sign of b (positive first).

Prints the coefficient tuples (constant term first) as a Python literal.
"""

import math
import sys

from grhgen.numberfield import FieldError, IntPolynomial, discriminant, new_field

DECADES = range(6, 11)
H_MAX = 300


def _ok(coeffs):
    try:
        nf = new_field(coeffs)
    except FieldError:
        return False
    return nf.irreducible_certified


def _decade(d):
    return math.ceil(math.log10(abs(d)))


def quadratics():
    out = []
    for e in DECADES:
        c = 10 ** (e - 1) // 4 + 1
        while not (_decade(4 * c) == e and _ok([c, 0, 1])):
            c += 1
        out.append((c, 0, 1))
    return out


def higher(n):
    want = {e: None for e in DECADES}
    for h in range(1, H_MAX + 1):
        for k in range(1, n):
            for c in range(1, h + 1):
                for babs in range(h + 1):
                    if max(babs, c) != h:
                        continue
                    for b in ((babs, -babs) if babs else (0,)):
                        coeffs = [c] + [0] * (n - 1) + [1]
                        coeffs[k] += b
                        d = discriminant(IntPolynomial(tuple(coeffs)))
                        if d == 0:
                            continue
                        e = _decade(d)
                        if e in want and want[e] is None and _ok(coeffs):
                            want[e] = tuple(coeffs)
        if all(want.values()):
            break
    missing = [e for e, v in want.items() if v is None]
    if missing:
        sys.exit(f"degree {n}: no polynomial found for decades {missing}")
    return [want[e] for e in DECADES]


def main():
    corpus = quadratics()
    for n in range(3, 8):
        corpus += higher(n)
        print(f"# degree {n} done", file=sys.stderr)
    print("(")
    for c in corpus:
        print(f"    {c},")
    print(")")


if __name__ == "__main__":
    main()
