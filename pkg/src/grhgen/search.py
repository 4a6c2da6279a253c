"""Bound drivers: the basic dichotomy and the step-function search."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import asdict, dataclass, field

from .analytic import EULER_GAMMA, grh_check_coro, grh_check_coro_many
from .numberfield import NumberField
from .quadform import StepParams, ndelta
from .splitting import IdealNormTable

log = logging.getLogger(__name__)

T_CAP = 10**12
N_CAP = 1 << 14
DELTA_STEP = 0.0625
N0 = 8


class CapExceeded(RuntimeError):
    """An internal iteration or size cap was hit."""


@dataclass
class BoundReport:
    t_basic: int
    t_improved: int | None
    witness: StepParams | None
    witness_value: int | None
    t0_cap: float
    ideal_count_basic: int
    ideal_count_improved: int | None
    log_abs_disc: float
    degree: int
    signature: tuple[int, int]
    flags: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    def to_dict(self, timings: bool = False) -> dict:
        d = asdict(self)
        d["signature"] = list(self.signature)
        if self.witness is not None:
            d["witness"] = {"N": self.witness.N, "delta": self.witness.delta}
        if not timings:
            d.pop("timings")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "BoundReport":
        d = dict(d)
        w = d.get("witness")
        d["witness"] = StepParams(w["N"], w["delta"]) if w else None
        d["signature"] = tuple(d["signature"])
        d.setdefault("timings", {})
        return cls(**d)


def _check(nf, table, T) -> float:
    table.ensure(T, nf)
    return grh_check_coro(nf, table, math.log(T))


def bdydf(nf: NumberField, table: IdealNormTable) -> int:
    """Smallest integer ``T >= 2`` passing the corollary-form check."""
    if _check(nf, table, 2) < 0:
        return 2
    lo, hi = 2, 4
    while _check(nf, table, hi) >= 0:
        lo, hi = hi, 2 * hi
        if hi > T_CAP:
            raise CapExceeded(f"basic bound not bracketed below {T_CAP}")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _check(nf, table, mid) < 0:
            hi = mid
        else:
            lo = mid
    # post-hoc scan of the final bracket (the check is monotone, so this is a guard)
    span = range(max(2, hi - 64), hi + 1)
    vals = grh_check_coro_many(nf, table, [math.log(t) for t in span])
    for t, v in zip(span, vals):
        if v < 0:
            return t
    return hi


def t0_formula(ld: float, n: int) -> tuple[float, bool]:
    """``T_0`` from ``log D`` and the degree; see :func:`t0_init`."""
    cap = 4.01 * ld * ld
    if ld <= math.e:
        return cap, True
    first = 4 * (ld + math.log(ld) - (EULER_GAMMA + math.log(2 * math.pi)) * n + 1
                 + (n + 1) * math.log(7 * ld) / ld) ** 2
    return min(first, cap), False


def t0_init(nf: NumberField) -> tuple[float, bool]:
    """Initial cap ``T_0`` and whether only the ``4.01 log^2 D`` form applied."""
    return t0_formula(nf.log_abs_disc, nf.n)


def _good(nf, table, N: int, T: int, rule: str) -> int:
    if T < 2:
        return 0
    return ndelta(nf, table, math.log(T) / (2 * N), N, rule)


def optimal_t(nf: NumberField, table: IdealNormTable, N: int, t_lo, t_hi,
              rule: str = "pivot", flags: list | None = None) -> int:
    """Smallest integer ``T`` in ``[t_lo, t_hi]`` with ``ndelta(log T/(2N), N) > 0``.

    Binary search assuming the predicate is monotone in ``T``. If it fails at
    ``ceil(t_hi)`` (rounding can push past a non-monotone pocket) the upper
    end is found by scanning upward, and the event is flagged.
    """
    if not 1 <= t_lo <= t_hi:
        raise ValueError("need 1 <= t_lo <= t_hi")
    lo = max(2, math.ceil(t_lo))
    hi = max(lo, math.ceil(t_hi))
    if not _good(nf, table, N, hi, rule):
        start = hi
        while not _good(nf, table, N, hi, rule):
            hi += 1
            if hi > 2 * start + 16:
                raise ValueError(f"predicate false at t_hi={t_hi} and above")
        if flags is not None:
            flags.append(f"optimal_t: upward scan from {start} to {hi} at N={N}")
        return hi
    while lo < hi:
        mid = (lo + hi) // 2
        if _good(nf, table, N, mid, rule):
            hi = mid
        else:
            lo = mid + 1
    return hi


def bound(nf: NumberField, table: IdealNormTable | None = None, *,
          n0: int = N0, delta_step: float = DELTA_STEP, rule: str = "pivot",
          basic_only: bool = False, n_cap: int = N_CAP) -> BoundReport:
    """Basic bound, then the improved bound by delta scan and N doubling."""
    if table is None:
        table = IdealNormTable.for_field(nf)
    flags = list(nf.warnings)
    timings = {}
    t = time.perf_counter()
    t_basic = bdydf(nf, table)
    timings["basic"] = time.perf_counter() - t
    t0, cap_only = t0_init(nf)
    if cap_only:
        flags.append("log discriminant <= e: T0 uses 4.01*log^2 D only")
    common = dict(
        t0_cap=t0, log_abs_disc=nf.log_abs_disc, degree=nf.n,
        signature=(nf.r1, nf.r2), timings=timings, flags=flags,
    )
    if basic_only:
        _exclusion_flag(table, t_basic, flags)
        return BoundReport(t_basic, None, None, None,
                           ideal_count_basic=table.count_upto(t_basic),
                           ideal_count_improved=None, **common)

    t = time.perf_counter()
    N = n0
    delta = delta_step
    while ndelta(nf, table, delta, N, rule) == 0:
        delta += delta_step
        if math.exp(2 * N * delta) > T_CAP:
            raise CapExceeded("delta scan exceeded the size cap")
    t_h = optimal_t(nf, table, N, max(1.0, math.exp(2 * N * (delta - delta_step))),
                    math.exp(2 * N * delta), rule, flags)
    best_n = N
    T = t_h + 1
    while t_h < T:
        T, best_n = t_h, N
        N *= 2
        if N > n_cap:
            raise CapExceeded(f"N exceeded {n_cap}")
        t_h = optimal_t(nf, table, N, 1, T, rule, flags)
    timings["improved"] = time.perf_counter() - t

    witness = StepParams(best_n, math.log(T) / (2 * best_n)) if T >= 2 else None
    wval = ndelta(nf, table, witness.delta, witness.N, rule) if witness else None
    t_improved = T
    if T > t_basic:
        # the basic test function lives in S(1, log(t_basic)/2)
        flags.append("step search did not beat the basic bound; basic bound kept")
        t_improved = t_basic
        witness = StepParams(1, math.log(t_basic) / 2) if t_basic >= 2 else None
        wval = ndelta(nf, table, witness.delta, 1, rule) if witness else None
    if t_improved > math.ceil(t0):
        flags.append("T0 cap applied")
        t_improved = math.ceil(t0)
    table.ensure(max(t_basic, t_improved), nf)
    _exclusion_flag(table, max(t_basic, t_improved), flags)
    return BoundReport(
        t_basic, t_improved, witness, wval,
        ideal_count_basic=table.count_upto(t_basic),
        ideal_count_improved=table.count_upto(t_improved), **common,
    )


def _exclusion_flag(table: IdealNormTable, upto: int, flags: list) -> None:
    skipped = [p for p in table.excluded if p <= upto]
    if skipped:
        flags.append("untrusted primes excluded: " + ",".join(map(str, skipped)))
