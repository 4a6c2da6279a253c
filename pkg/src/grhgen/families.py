"""Field families used for ratio statistics and plot data."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .numberfield import IntPolynomial, NumberField, discriminant, log_abs, new_field
from .primes import next_prime
from .search import bound, t0_formula
from .splitting import IdealNormTable


@dataclass(frozen=True)
class FamilyRow:
    label: str
    log_disc: float
    t_basic: int
    t_improved: int

    @property
    def loglog_disc(self) -> float:
        return math.log(self.log_disc)

    @property
    def ratio(self) -> float:
        return self.t_improved / self.t_basic

    @property
    def scaled(self) -> float:
        return self.ratio * self.loglog_disc**2

    CSV_HEADER = ("label", "log_disc", "loglog_disc", "t_basic", "t_improved", "ratio", "scaled")

    def csv_fields(self) -> list[str]:
        return [self.label, repr(self.log_disc), repr(self.loglog_disc), str(self.t_basic),
                str(self.t_improved), repr(self.ratio), repr(self.scaled)]


def pure_poly(degree: int, sign: int, a: int) -> tuple[list[int], str]:
    """``x^n + sign*p`` with ``p`` the first prime after ``10^a``."""
    p = next_prime(10**a)
    coeffs = [sign * p] + [0] * (degree - 1) + [1]
    return coeffs, f"x^{degree}{'+' if sign > 0 else '-'}{p}"


def biquadratic_poly(a1: int, a2: int) -> tuple[list[int], str]:
    """Minimal polynomial of sqrt(p1) + sqrt(p2); distinct primes when a1 == a2."""
    p1 = next_prime(10**a1)
    p2 = next_prime(10**a2)
    if p2 == p1:
        p2 = next_prime(p1)
    s, d = p1 + p2, (p1 - p2) ** 2
    return [d, 0, -2 * s, 0, 1], f"Q(sqrt{p1},sqrt{p2})"


def pure_family(degree: int, sign: int, a_values) -> list[tuple[list[int], str]]:
    return [pure_poly(degree, sign, a) for a in a_values]


def biquadratic_family(a1_values, a2_values) -> list[tuple[list[int], str]]:
    out = []
    for a1 in a1_values:
        for a2 in a2_values:
            if a2 >= a1:
                out.append(biquadratic_poly(a1, a2))
    return out


def estimated_t0(coeffs) -> float:
    poly = IntPolynomial(tuple(coeffs))
    return t0_formula(log_abs(discriminant(poly)), poly.degree)[0]


def pure_t0_estimate(degree: int, sign: int, a: int) -> float:
    """``T_0`` for ``x^n + sign*(10^a + 1)``, a cheap stand-in before any prime search."""
    return estimated_t0([sign * (10**a + 1)] + [0] * (degree - 1) + [1])


def biquadratic_t0_estimate(a1: int, a2: int) -> float:
    p1, p2 = 10**a1 + 1, 10**a2 + 3
    return estimated_t0([(p1 - p2) ** 2, 0, -2 * (p1 + p2), 0, 1])


def run_row(coeffs, label: str, **kwargs) -> FamilyRow:
    nf = new_field(coeffs)
    rep = bound(nf, IdealNormTable.for_field(nf), **kwargs)
    return FamilyRow(label, nf.log_abs_disc, rep.t_basic, rep.t_improved)


def emit_plotdata(rows, path) -> Path:
    """Two columns ``log_disc scaled``, ascending in ``log_disc``."""
    if not rows:
        raise ValueError("no rows to write")
    path = Path(path)
    lines = ["# columns: log_disc scaled  (scaled = t_improved/t_basic * loglog_disc^2)"]
    for r in sorted(rows, key=lambda r: r.log_disc):
        lines.append(f"{r.log_disc!r} {r.scaled!r}")
    path.write_text("\n".join(lines) + "\n")
    return path


# Output of scripts/build_corpus.py: one field per degree 2..7 and per decade
# 10^5 < |disc| <= 10^10, coefficients constant term first.
SMALL_FIELD_CORPUS: tuple[tuple[int, ...], ...] = (
    (25001, 0, 1),
    (250001, 0, 1),
    (2500001, 0, 1),
    (25000001, 0, 1),
    (250000001, 0, 1),
    (12, 0, 13, 1),
    (21, 0, 23, 1),
    (39, 0, 40, 1),
    (70, 0, 71, 1),
    (125, 0, 126, 1),
    (3, 0, 0, 5, 1),
    (6, 0, 0, 6, 1),
    (9, 0, 0, 9, 1),
    (13, 0, 0, 13, 1),
    (17, 0, 0, 19, 1),
    (2, 0, 0, 0, 2, 1),
    (3, 0, 0, 0, 3, 1),
    (4, 0, 0, 0, 4, 1),
    (5, 0, 0, 0, 5, 1),
    (7, 0, 0, 0, 7, 1),
    (1, 0, 2, 0, 0, 0, 1),
    (2, 0, 0, 0, 0, 0, 1),
    (3, 0, 0, 0, 0, 0, 1),
    (3, 0, 0, 0, 0, 3, 1),
    (4, 0, 0, 0, 0, 4, 1),
    (1, 1, 0, 0, 0, 0, 0, 1),
    (1, 2, 0, 0, 0, 0, 0, 1),
    (2, 0, 0, 0, 0, 0, 0, 1),
    (2, 0, 0, 0, 0, 0, 2, 1),
    (3, 0, 0, 0, 3, 0, 0, 1),
)


def small_field_corpus() -> list[NumberField]:
    return [new_field(c) for c in SMALL_FIELD_CORPUS]
