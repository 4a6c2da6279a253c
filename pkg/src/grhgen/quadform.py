"""Gram matrices of the quadratic form on width-delta step functions.

With ``Phi_i`` the indicator of ``(-i delta, i delta)`` we have
``Phi_i * Phi_j = F_{(i+j) delta} - F_{|i-j| delta}``, so the matrix on
``S(N, delta)`` only needs ``tab[k] = ell(F_{k delta})`` for ``k <= 2N``.
A negative eigenvalue is detected through an LDL^T factorization grown one
row at a time; by Sylvester's law the negative pivots count the negative
eigenvalues of every leading block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_triangular

from .analytic import ell_values
from .numberfield import NumberField
from .splitting import IdealNormTable

PIVOT_RTOL = 1e-10


@dataclass(frozen=True)
class StepParams:
    N: int
    delta: float

    def __post_init__(self):
        if self.N < 1 or not self.delta > 0:
            raise ValueError("need N >= 1 and delta > 0")

    @property
    def log_t(self) -> float:
        return 2 * self.N * self.delta

    @property
    def t(self) -> float:
        return math.exp(self.log_t)


@dataclass
class LdlState:
    """Growing symmetric matrix with its incremental LDL^T factorization."""

    capacity: int
    tab: list[float] = field(default_factory=lambda: [0.0])
    dim: int = 0
    neg_count: int = 0
    first_negative: int | None = None
    zero_flags: list[int] = field(default_factory=list)
    rtol: float = PIVOT_RTOL

    def __post_init__(self):
        self.matrix = np.zeros((self.capacity, self.capacity))
        self.lower = np.eye(self.capacity)
        self.diag = np.zeros(self.capacity)
        self._norm_rows = np.zeros(self.capacity)

    @property
    def reliable(self) -> bool:
        return not self.zero_flags

    def tolerance(self) -> float:
        n = self.dim
        return self.rtol * float(np.max(self._norm_rows[:n])) if n else 0.0

    def push(self, tab_odd: float, tab_even: float) -> float:
        """Append ``tab[2N-1], tab[2N]`` and the row ``A[N, i] = tab[N+i] - tab[N-i]``."""
        self.tab += [float(tab_odd), float(tab_even)]
        N = self.dim + 1
        tab = self.tab
        return self.append_row([tab[N + i] - tab[N - i] for i in range(1, N + 1)])

    def append_row(self, row) -> float:
        """Border the matrix with ``row`` (length ``dim + 1``, diagonal last).

        Returns the new pivot, or ``nan`` once a zero pivot made the
        factorization unusable.
        """
        if self.dim >= self.capacity:
            raise IndexError("LdlState capacity exhausted")
        row = np.asarray(row, dtype=float)
        N = self.dim + 1
        if row.shape != (N,):
            raise ValueError(f"row must have length {N}")
        k = N - 1
        self.matrix[k, :N] = row
        self.matrix[:N, k] = row
        absrow = np.abs(row)
        self._norm_rows[:k] += absrow[:k]
        self._norm_rows[k] = absrow.sum()
        self.dim = N
        if not self.reliable:
            return math.nan
        if k:
            z = solve_triangular(self.lower[:k, :k], row[:k], lower=True,
                                 unit_diagonal=True, check_finite=False)
            l = z / self.diag[:k]
            d = row[k] - float(z @ l)
            self.lower[k, :k] = l
        else:
            d = float(row[0])
        self.diag[k] = d
        if abs(d) <= self.tolerance():
            self.zero_flags.append(N)
        elif d < 0:
            self.neg_count += 1
            if self.first_negative is None:
                self.first_negative = N
        return d

    def reconstruct(self) -> np.ndarray:
        n = self.dim
        L = self.lower[:n, :n]
        return (L * self.diag[:n]) @ L.T

    def block(self, n: int | None = None) -> np.ndarray:
        n = self.dim if n is None else n
        return self.matrix[:n, :n].copy()


def has_negative(state: LdlState, rule: str = "pivot") -> bool:
    """Whether the assembled block is certified to have a negative eigenvalue.

    ``rule="pivot"`` fires at the first negative pivot; ``rule="det"`` only
    when the determinant is negative (odd count of negative pivots, no zero).
    """
    if rule == "pivot":
        if state.first_negative is None:
            return False
        return not state.zero_flags or state.first_negative < state.zero_flags[0]
    if rule == "det":
        return state.reliable and state.neg_count % 2 == 1
    raise ValueError(f"unknown rule {rule!r}")


def tab_values(nf: NumberField, table: IdealNormTable, delta: float, n_max: int) -> np.ndarray:
    """``tab[k] = ell(F_{k delta})`` for ``0 <= k <= 2 n_max``, extending the table."""
    table.ensure(math.exp(2 * n_max * delta) * (1 + 1e-12), nf)
    ks = np.arange(2 * n_max + 1, dtype=float)
    vals = ell_values(nf, table, ks * delta)
    vals[0] = 0.0
    return vals


def assemble_row(state: LdlState, nf: NumberField, table: IdealNormTable, delta: float) -> LdlState:
    N = state.dim + 1
    table.ensure(math.exp(2 * N * delta) * (1 + 1e-12), nf)
    odd, even = ell_values(nf, table, np.array([(2 * N - 1) * delta, 2 * N * delta]))
    state.push(odd, even)
    return state


def _min_eig(m: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(m)[0]) if m.size else math.inf


def first_negative(row, n_max: int, rule: str = "pivot", rtol: float = PIVOT_RTOL) -> int:
    """Smallest ``N <= n_max`` whose leading block has a detected negative eigenvalue, else 0.

    ``row(N)`` returns row ``N`` of the matrix up to the diagonal. After a
    zero pivot the factorization is abandoned and the decision is taken from
    eigenvalues of the leading blocks instead (their smallest eigenvalue is
    non-increasing in ``N`` by interlacing).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    state = LdlState(n_max, rtol=rtol)
    for N in range(1, n_max + 1):
        state.append_row(row(N))
        if has_negative(state, rule):
            return N
        if not state.reliable:
            break
    if state.reliable:
        return 0
    start = state.zero_flags[0]
    while state.dim < n_max:
        state.append_row(row(state.dim + 1))
    full = state.block()
    tol = rtol * float(np.max(np.abs(full).sum(axis=1)))
    if _min_eig(full) >= -tol:
        return 0
    lo, hi = start, n_max
    while lo < hi:
        mid = (lo + hi) // 2
        if _min_eig(full[:mid, :mid]) < -tol:
            hi = mid
        else:
            lo = mid + 1
    return lo


def first_negative_dim(tab, n_max: int, rule: str = "pivot", rtol: float = PIVOT_RTOL) -> int:
    """:func:`first_negative` for the matrix ``tab[i+j] - tab[|i-j|]``."""
    tab = np.asarray(tab, dtype=float)

    def row(N):
        i = np.arange(1, N + 1)
        return tab[N + i] - tab[N - i]

    return first_negative(row, n_max, rule, rtol)


def ndelta(nf: NumberField, table: IdealNormTable, delta: float, n_max: int,
           rule: str = "pivot") -> int:
    """Smallest ``N <= n_max`` with ``(N, delta)`` good for the field, or 0."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if not delta > 0:
        raise ValueError("delta must be positive")
    return first_negative_dim(tab_values(nf, table, delta, n_max), n_max, rule)


def gram_matrix(tab, N: int) -> np.ndarray:
    """Dense ``A[i][j] = tab[i+j] - tab[|i-j|]``, ``1 <= i, j <= N``."""
    tab = np.asarray(tab, dtype=float)
    i = np.arange(1, N + 1)
    return tab[i[:, None] + i[None, :]] - tab[np.abs(i[:, None] - i[None, :])]
