"""The linear form on triangle functions and the basic GRH check.

``F_L(x) = max(L - |x|, 0)`` is the self-convolution of the indicator of
``[-L/2, L/2]``. Everything here is evaluated on that family only; step
function Gram matrices are built from differences of these values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .numberfield import NumberField
from .splitting import IdealNormTable

EULER_GAMMA = 0.5772156649015329
CATALAN = 0.9159655941772190
PI = math.pi
C1 = PI**2 / 2
C2 = 4 * CATALAN
ZETA2 = PI**2 / 6
LOG_8PI = math.log(8 * PI)

_SERIES_TERMS = 64
_K = np.arange(1, _SERIES_TERMS + 1, dtype=float)
_K2 = _K * _K
_ODD = 2 * np.arange(_SERIES_TERMS, dtype=float) + 1


class TableTooSmall(ValueError):
    """The norm table must be extended before this evaluation."""

    def __init__(self, needed: int):
        super().__init__(f"norm table must reach {needed}")
        self.needed = needed


def _bernoulli(count: int) -> list[float]:
    # B_0..B_{count-1}, with B_1 = -1/2
    b = [Fraction(0)] * count
    for m in range(count):
        b[m] = Fraction(1)
        if m:
            s = sum(math.comb(m + 1, k) * b[k] for k in range(m))
            b[m] = -s / (m + 1)
    return [float(x) for x in b]


# coefficients B_k / (k+1)! of Li2(z) = sum_k B_k u^(k+1)/(k+1)!, u = -log(1-z)
_BCOEF = np.array([bk / math.factorial(k + 1) for k, bk in enumerate(_bernoulli(40))])


def _dilog_series(x):
    x = np.asarray(x, dtype=float)
    powers = x[..., None] ** _K
    return (powers / _K2).sum(axis=-1)


def dilog_array(x) -> np.ndarray:
    """Vectorized real dilogarithm on ``[0, 1]``."""
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x > 1)):
        raise ValueError("dilog argument outside [0, 1]")
    out = np.empty_like(x)
    lo = x <= 0.5
    out[lo] = _dilog_series(x[lo])
    hi = ~lo
    if np.any(hi):
        xh = x[hi]
        y = 1.0 - xh
        with np.errstate(divide="ignore", invalid="ignore"):
            cross = np.where(y > 0, np.log(xh) * np.log(np.where(y > 0, y, 1.0)), 0.0)
        out[hi] = ZETA2 - cross - _dilog_series(y)
    return out


def dilog(x: float) -> float:
    """Li2(x) for ``0 <= x <= 1``."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"dilog argument {x} outside [0, 1]")
    return float(dilog_array(np.array([x]))[0])


def ti2_array(y) -> np.ndarray:
    """Vectorized inverse tangent integral ``Im Li2(i y)`` on ``[0, 1]``."""
    y = np.asarray(y, dtype=float)
    if np.any((y < 0) | (y > 1)):
        raise ValueError("ti2 argument outside [0, 1]")
    out = np.empty_like(y)
    lo = y <= 0.5
    if np.any(lo):
        yl = y[lo][..., None]
        signs = np.where(np.arange(_SERIES_TERMS) % 2, -1.0, 1.0)
        out[lo] = (signs * yl**_ODD / (_ODD * _ODD)).sum(axis=-1)
    hi = ~lo
    if np.any(hi):
        # the alternating series crawls near y = 1; the Bernoulli expansion in
        # u = -log(1 - iy) has |u| < 0.9 < 2*pi there
        u = -np.log(1 - 1j * y[hi])
        upow = u[..., None] ** np.arange(1, len(_BCOEF) + 1)
        out[hi] = (upow * _BCOEF).sum(axis=-1).imag
    return out


def ti2(y: float) -> float:
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"ti2 argument {y} outside [0, 1]")
    return float(ti2_array(np.array([y]))[0])


def arch_terms_array(L):
    L = np.asarray(L, dtype=float)
    if np.any(L < 0):
        raise ValueError("L must be non-negative")
    s = np.exp(-L / 2)
    arch_r1 = 4 * CATALAN - 4 * ti2_array(s)
    arch_n = C1 - 4 * dilog_array(s) + dilog_array(s * s)
    return arch_r1, arch_n


def arch_terms(L: float) -> tuple[float, float]:
    """Closed forms of the cosh and sinh archimedean integrals for ``F_L``."""
    a, b = arch_terms_array(np.array([L]))
    return float(a[0]), float(b[0])


def _needed_limit(L) -> int:
    return math.floor(math.exp(float(np.max(L))) * (1 + 1e-12))


def _require(table: IdealNormTable, L) -> None:
    needed = _needed_limit(L)
    if table.limit < needed:
        raise TableTooSmall(needed)


def prime_sum(table: IdealNormTable, L: float) -> float:
    """``2 * sum count*log q * F_L(m log q) / q^(m/2)`` by exactly rounded summation."""
    if L <= 0:
        return 0.0
    _require(table, L)
    terms = []
    for e in table.entries:
        if e.log_norm >= L:
            break
        m = 1
        while m * e.log_norm < L:
            terms.append(e.count * e.log_norm * (L - m * e.log_norm) / e.norm ** (m / 2))
            m += 1
    return 2 * math.fsum(terms)


def prime_sums(table: IdealNormTable, Ls) -> np.ndarray:
    """Vectorized :func:`prime_sum` through prefix sums over the sorted points."""
    Ls = np.asarray(Ls, dtype=float)
    if Ls.size == 0:
        return Ls.copy()
    _require(table, Ls)
    x, _, cw, cxw = table.points()
    k = np.searchsorted(x, Ls, side="left")
    return 2 * (Ls * cw[k] - cxw[k])


def disc_constant(nf: NumberField) -> float:
    """``log D - n*gamma - n*log(8 pi) - r1*pi/2``."""
    return nf.log_abs_disc - nf.n * (EULER_GAMMA + LOG_8PI) - nf.r1 * PI / 2


@dataclass(frozen=True)
class EllValue:
    L: float
    prime_sum: float
    arch_r1: float
    arch_n: float
    value: float


def ell(nf: NumberField, table: IdealNormTable, L: float) -> EllValue:
    """The linear form at ``F_L``; negative means ``L`` already works."""
    if L < 0:
        raise ValueError("L must be non-negative")
    ps = prime_sum(table, L)
    a1, an = arch_terms(L)
    value = -ps + L * disc_constant(nf) + nf.r1 * a1 + nf.n * an
    return EllValue(L, ps, a1, an, value)


def ell_values(nf: NumberField, table: IdealNormTable, Ls) -> np.ndarray:
    """Vectorized ``ell(...).value``."""
    Ls = np.asarray(Ls, dtype=float)
    a1, an = arch_terms_array(Ls)
    return -prime_sums(table, Ls) + Ls * disc_constant(nf) + nf.r1 * a1 + nf.n * an


def grh_check(nf: NumberField, table: IdealNormTable, logT: float) -> float:
    """Right side minus left side of the homogenized inequality for ``F_L / L``.

    Equals ``ell(nf, table, logT).value / logT``.
    """
    if logT <= 0:
        raise ValueError("logT must be positive")
    return ell(nf, table, logT).value / logT


def grh_check_coro(nf: NumberField, table: IdealNormTable, logT: float) -> float:
    """Right side minus left side of the corollary-form check.

    This drops the dilogarithm corrections from the archimedean terms, so it
    is never below :func:`grh_check`. As a function of ``logT`` it is
    continuous and strictly decreasing: between prime-power points it has the
    form ``a + b/logT`` with ``b > 0``.
    """
    if logT <= 0:
        raise ValueError("logT must be positive")
    _require(table, logT)
    x, _, cw, cxw = table.points()
    k = int(np.searchsorted(x, logT, side="left"))
    lhs = 2 * (cw[k] - cxw[k] / logT)
    rhs = (nf.log_abs_disc - nf.n * (EULER_GAMMA + LOG_8PI - C1 / logT)
           - nf.r1 * (PI / 2 - C2 / logT))
    return rhs - lhs


def grh_check_coro_many(nf: NumberField, table: IdealNormTable, logTs) -> np.ndarray:
    logTs = np.asarray(logTs, dtype=float)
    _require(table, logTs)
    x, _, cw, cxw = table.points()
    k = np.searchsorted(x, logTs, side="left")
    lhs = 2 * (cw[k] - cxw[k] / logTs)
    rhs = (nf.log_abs_disc - nf.n * (EULER_GAMMA + LOG_8PI - C1 / logTs)
           - nf.r1 * (PI / 2 - C2 / logTs))
    return rhs - lhs
