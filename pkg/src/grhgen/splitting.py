"""Prime-ideal norms from the factorization type of P mod p, with a cache."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import gfpoly
from .numberfield import IntPolynomial, NumberField
from .primes import primes_between, sieve_primes

__all__ = [
    "CacheError",
    "IdealNormTable",
    "NormEntry",
    "SplitRecord",
    "extend_table",
    "load_cache",
    "save_cache",
    "sieve_primes",
    "splitting_degrees",
]

MAX_PRIME = 1 << 62
CACHE_MAGIC = "grhgen-cache"
CACHE_VERSION = "v1"


class CacheError(ValueError):
    pass


@dataclass(frozen=True)
class SplitRecord:
    p: int
    degrees: tuple[tuple[int, int], ...]  # (residue degree f, number of primes)
    ramified: bool
    trusted: bool = True

    def format(self) -> str:
        degs = ",".join(f"{f}:{c}" for f, c in self.degrees)
        return f"{self.p} {int(self.ramified)} {degs}"

    @classmethod
    def parse(cls, line: str) -> "SplitRecord":
        try:
            p, ram, degs = line.split()
            pairs = tuple(
                (int(f), int(c)) for f, c in (item.split(":") for item in degs.split(","))
            )
            rec = cls(int(p), tuple(sorted(pairs)), ram == "1")
        except ValueError as exc:
            raise CacheError(f"malformed cache record: {line!r}") from exc
        if ram not in ("0", "1") or any(f < 1 or c < 1 for f, c in rec.degrees):
            raise CacheError(f"malformed cache record: {line!r}")
        return rec


def splitting_degrees(poly: IntPolynomial, p: int,
                      index_suspects=frozenset()) -> SplitRecord:
    """Residue degrees of the primes above ``p``, read off ``P mod p``."""
    if p >= MAX_PRIME:
        raise ValueError("prime too large for word-size arithmetic")
    fbar = gfpoly.from_int_poly(poly.coeffs, p)
    rad = gfpoly.radical(fbar, p)
    ramified = gfpoly.degree(rad) < gfpoly.degree(fbar)
    degs = tuple(sorted(gfpoly.distinct_degree(rad, p)))
    return SplitRecord(p, degs, ramified, trusted=p not in index_suspects)


def _trusted_record(nf: NumberField, p: int) -> SplitRecord:
    rec = splitting_degrees(nf.poly, p, nf.index_suspects)
    if not rec.trusted and gfpoly.dedekind_maximal(nf.poly.coeffs, p):
        # Z[x]/(P) is p-maximal, so the factorization type is exact
        rec = SplitRecord(rec.p, rec.degrees, rec.ramified, True)
    return rec


@dataclass(frozen=True)
class NormEntry:
    norm: int
    log_norm: float
    p: int
    f: int
    count: int


@dataclass
class IdealNormTable:
    """Prime-ideal norms of one field for all prime powers up to ``limit``."""

    field_id: str
    limit: int = 1
    records: dict[int, SplitRecord] = field(default_factory=dict)
    excluded: list[int] = field(default_factory=list)
    overrides: dict[int, SplitRecord] = field(default_factory=dict)
    _entries: list[NormEntry] | None = field(default=None, repr=False, compare=False)
    _points: tuple | None = field(default=None, repr=False, compare=False)

    @classmethod
    def for_field(cls, nf: NumberField, overrides=None) -> "IdealNormTable":
        return cls(nf.field_id, overrides=dict(overrides or {}))

    def __eq__(self, other):
        if not isinstance(other, IdealNormTable):
            return NotImplemented
        return (self.field_id, self.limit, self.records) == (
            other.field_id, other.limit, other.records)

    def copy(self) -> "IdealNormTable":
        return IdealNormTable(self.field_id, self.limit, dict(self.records),
                              list(self.excluded), dict(self.overrides))

    def extend(self, new_limit, nf: NumberField) -> "IdealNormTable":
        """Extend in place so all prime powers ``<= new_limit`` are listed."""
        if nf.field_id != self.field_id:
            raise CacheError("table belongs to another field")
        new_limit = int(math.floor(new_limit))
        if new_limit <= self.limit:
            return self
        for p in primes_between(self.limit, new_limit):
            if p in self.overrides:
                self.records[p] = self.overrides[p]
                continue
            rec = _trusted_record(nf, p)
            if rec.trusted:
                self.records[p] = rec
            else:
                self.excluded.append(p)
        self.limit = new_limit
        self._entries = None
        self._points = None
        return self

    def ensure(self, needed, nf: NumberField) -> "IdealNormTable":
        if needed > self.limit:
            # grow geometrically so repeated probes do not re-sieve tiny slices
            self.extend(max(needed, min(2 * self.limit, needed * 1.25), 64), nf)
        return self

    @property
    def entries(self) -> list[NormEntry]:
        if self._entries is None:
            out = []
            for p in sorted(self.records):
                for f, c in self.records[p].degrees:
                    q = p**f
                    if q <= self.limit:
                        out.append(NormEntry(q, math.log(q), p, f, c))
            out.sort(key=lambda e: (e.norm, e.p, e.f))
            self._entries = out
        return self._entries

    def count_upto(self, t) -> int:
        """Number of prime ideals (with multiplicity) of norm ``<= t``."""
        if t > self.limit:
            raise ValueError("table does not reach the requested norm")
        return sum(e.count for e in self.entries if e.norm <= t)

    def points(self):
        """Sorted prime-power abscissae ``m*log q`` with weights ``count*log q/q^(m/2)``.

        Returned with prefix sums of the weights and of ``weight*abscissa``.
        """
        if self._points is None:
            xs, ws = [], []
            for e in self.entries:
                q, lq = e.norm, e.log_norm
                qm, m = q, 1
                while qm <= self.limit:
                    xs.append(m * lq)
                    ws.append(e.count * lq / math.sqrt(qm))
                    qm *= q
                    m += 1
            x = np.array(xs, dtype=float)
            w = np.array(ws, dtype=float)
            order = np.argsort(x, kind="stable")
            x, w = x[order], w[order]
            cw = np.concatenate([[0.0], np.cumsum(w)])
            cxw = np.concatenate([[0.0], np.cumsum(w * x)])
            self._points = (x, w, cw, cxw)
        return self._points


def extend_table(table: IdealNormTable, new_limit, nf: NumberField) -> IdealNormTable:
    """Return a copy of ``table`` extended to ``new_limit``."""
    if new_limit < table.limit:
        raise ValueError("new_limit below current limit")
    return table.copy().extend(new_limit, nf)


def cache_path(cache_dir, field_id: str) -> Path:
    return Path(cache_dir) / f"{field_id}.cache"


def save_cache(table: IdealNormTable, cache_dir) -> Path:
    """Write the trusted records; excluded primes are simply absent."""
    path = cache_path(cache_dir, table.field_id)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{CACHE_MAGIC} {CACHE_VERSION} {table.field_id} {table.limit}"]
    lines += [table.records[p].format() for p in sorted(table.records)]
    tmp = path.with_suffix(".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    os.replace(tmp, path)
    return path


def load_cache(field_id: str, cache_dir, path=None) -> IdealNormTable:
    path = Path(path) if path is not None else cache_path(cache_dir, field_id)
    if not path.exists():
        return IdealNormTable(field_id)
    lines = path.read_text().splitlines()
    if not lines:
        raise CacheError(f"empty cache file {path}")
    head = lines[0].split()
    if len(head) != 4 or head[0] != CACHE_MAGIC or head[1] != CACHE_VERSION:
        raise CacheError(f"bad cache header in {path}")
    if head[2] != field_id:
        raise CacheError(f"cache digest mismatch: {head[2]} != {field_id}")
    try:
        limit = int(head[3])
    except ValueError as exc:
        raise CacheError(f"bad limit in {path}") from exc
    records = {}
    for line in lines[1:]:
        if not line.strip():
            continue
        rec = SplitRecord.parse(line)
        if rec.p > limit:
            raise CacheError(f"record p={rec.p} beyond declared limit {limit}")
        records[rec.p] = rec
    # every prime up to the limit is either recorded or was excluded
    excluded = [q for q in primes_between(1, limit) if q not in records] if limit > 1 else []
    return IdealNormTable(field_id, limit, records, excluded)
