"""Command line front end: ``grhgen bound | primes | batch``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .families import (
    FamilyRow,
    biquadratic_family,
    emit_plotdata,
    biquadratic_t0_estimate,
    pure_family,
    pure_t0_estimate,
    run_row,
)
from .numberfield import FieldError, new_field, parse_coeffs
from .search import N0, N_CAP, DELTA_STEP, CapExceeded, bound
from .splitting import CacheError, IdealNormTable, SplitRecord, load_cache, save_cache

EXIT_OK, EXIT_INPUT, EXIT_CAP = 0, 2, 3
BATCH_T0_LIMIT = 1e8

log = logging.getLogger("grhgen")


class InputError(ValueError):
    pass


@dataclass
class BoundConfig:
    coeffs: list[int]
    log_disc: float | None = None
    basic_only: bool = False
    json: bool = False
    cache_dir: Path | None = None
    delta_step: float = DELTA_STEP
    n0: int = N0
    n_max: int = N_CAP
    rule: str = "pivot"
    splits: dict[int, SplitRecord] = field(default_factory=dict)


@dataclass
class BatchConfig:
    family: str
    degree: int = 2
    sign: int = 1
    a_values: list[int] = field(default_factory=list)
    a2_values: list[int] = field(default_factory=list)
    csv_path: Path | None = None
    plot_path: Path | None = None
    jobs: int = 1
    force: bool = False
    n0: int = N0
    delta_step: float = DELTA_STEP


def read_poly(src: str) -> list[int]:
    """Coefficients from a literal list or a one-line file holding one."""
    p = Path(src)
    text = src
    if "," not in src and p.is_file():
        text = p.read_text().strip()
    return parse_coeffs(text)


def parse_split(text: str) -> SplitRecord:
    """``p=f:c,f:c,...`` for a prime the field cannot classify itself."""
    try:
        p_s, rest = text.split("=", 1)
        p = int(p_s)
        degrees = []
        for part in rest.split(","):
            f, c = part.split(":")
            degrees.append((int(f), int(c)))
    except ValueError as exc:
        raise InputError(f"malformed --split value {text!r}") from exc
    if p < 2 or any(f < 1 or c < 1 for f, c in degrees):
        raise InputError(f"malformed --split value {text!r}")
    return SplitRecord(p, tuple(sorted(degrees)), False, True)


def parse_range(text: str) -> list[int]:
    """``a..b`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return list(range(int(a), int(b) + 1))
        return [int(text)]
    except ValueError as exc:
        raise InputError(f"malformed range {text!r}") from exc


def _load_table(nf, cfg: BoundConfig) -> IdealNormTable:
    if cfg.cache_dir is None:
        table = IdealNormTable.for_field(nf, cfg.splits)
    else:
        table = load_cache(nf.field_id, cfg.cache_dir)
        table.overrides = dict(cfg.splits)
    for p in cfg.splits:
        if p <= table.limit:
            # records above the cached limit are picked up on extension
            table.records[p] = cfg.splits[p]
            if p in table.excluded:
                table.excluded.remove(p)
            table._entries = None
    return table


def render_text(nf, rep) -> str:
    lines = [
        f"polynomial={nf.poly}",
        f"degree={rep.degree} signature=({rep.signature[0]},{rep.signature[1]})",
        f"log_abs_disc={rep.log_abs_disc:.12g}",
        f"t0_cap={rep.t0_cap:.6f}",
        f"t_basic={rep.t_basic} ideals={rep.ideal_count_basic}",
    ]
    if rep.t_improved is not None:
        lines.append(f"t_improved={rep.t_improved} ideals={rep.ideal_count_improved}")
        if rep.witness is not None:
            lines.append(f"witness N={rep.witness.N} delta={rep.witness.delta:.12g} "
                         f"ndelta={rep.witness_value}")
    for f in rep.flags:
        lines.append(f"flag: {f}")
    return "\n".join(lines)


def cmd_bound(cfg: BoundConfig) -> int:
    nf = new_field(cfg.coeffs, user_log_disc=cfg.log_disc)
    table = _load_table(nf, cfg)
    rep = bound(nf, table, n0=cfg.n0, delta_step=cfg.delta_step, rule=cfg.rule,
                basic_only=cfg.basic_only, n_cap=cfg.n_max)
    if cfg.cache_dir is not None:
        save_cache(table, cfg.cache_dir)
    if cfg.json:
        print(json.dumps(rep.to_dict(), sort_keys=True, indent=2))
    else:
        print(render_text(nf, rep))
    return EXIT_OK


def cmd_primes(coeffs, up_to: int, list_all: bool, splits=None) -> int:
    if up_to < 1:
        raise InputError("--up-to must be positive")
    nf = new_field(coeffs)
    table = IdealNormTable.for_field(nf, splits)
    table.extend(up_to, nf)
    print(f"count={table.count_upto(up_to)}")
    if list_all:
        for e in table.entries:
            if e.norm > up_to:
                break
            for _ in range(e.count):
                print(e.norm, e.p, e.f)
    if table.excluded:
        print("excluded=" + ",".join(map(str, table.excluded)))
    return EXIT_OK


def _row(args):
    coeffs, label, kw = args
    return run_row(coeffs, label, **kw)


def cmd_batch(cfg: BatchConfig) -> int:
    if cfg.family == "pure":
        if cfg.degree < 2 or cfg.sign not in (1, -1):
            raise InputError("pure family needs --degree >= 2 and --sign +/-")
        params = [(a,) for a in cfg.a_values]
        estimate = lambda a: pure_t0_estimate(cfg.degree, cfg.sign, a)
    else:
        params = [(a1, a2) for a1 in cfg.a_values for a2 in cfg.a2_values if a2 >= a1]
        estimate = biquadratic_t0_estimate
    if not cfg.force:
        for prm in params:
            t0 = estimate(*prm)
            if t0 > BATCH_T0_LIMIT:
                raise InputError(
                    f"parameters {prm}: estimated T0 = {t0:.3g} > {BATCH_T0_LIMIT:.0e}; the "
                    "norm table is sieved up to about T0, O(T0 log log T0) work; use --force")
    if cfg.family == "pure":
        items = pure_family(cfg.degree, cfg.sign, cfg.a_values)
    else:
        items = biquadratic_family(cfg.a_values, cfg.a2_values)
    kw = dict(n0=cfg.n0, delta_step=cfg.delta_step)
    jobs = [(c, lab, kw) for c, lab in items]
    out = sys.stdout if cfg.csv_path is None else open(cfg.csv_path, "w", newline="")
    rows = []
    ex = ProcessPoolExecutor(cfg.jobs) if cfg.jobs > 1 and len(jobs) > 1 else None
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(FamilyRow.CSV_HEADER)
        out.flush()
        # rows arrive in input order and are flushed one by one
        for r in (ex.map(_row, jobs) if ex else map(_row, jobs)):
            rows.append(r)
            w.writerow(r.csv_fields())
            out.flush()
    finally:
        if ex is not None:
            ex.shutdown(cancel_futures=True)
        if out is not sys.stdout:
            out.close()
    if cfg.plot_path is not None:
        emit_plotdata(rows, cfg.plot_path)
    if rows:
        mean = sum(r.scaled for r in rows) / len(rows)
        print(f"rows={len(rows)} mean_scaled={mean:.4f}", file=sys.stderr)
    return EXIT_OK


def _sign(text: str) -> int:
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise argparse.ArgumentTypeError(f"sign must be + or -, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="grhgen", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="basic and improved bounds for one field")
    b.add_argument("--poly", required=True, help="c0,c1,...,cn or a file holding that")
    b.add_argument("--log-disc", type=float, help="use this log|disc K| instead of log|disc P|")
    b.add_argument("--basic-only", action="store_true")
    b.add_argument("--json", action="store_true")
    b.add_argument("--cache-dir", type=Path)
    b.add_argument("--delta-grid", type=float, default=DELTA_STEP)
    b.add_argument("--n0", type=int, default=N0)
    b.add_argument("--n-max", type=int, default=N_CAP)
    b.add_argument("--rule", choices=("pivot", "det"), default="pivot")
    b.add_argument("--split", action="append", default=[], metavar="p=f:c,...")

    p = sub.add_parser("primes", help="count prime ideals of small norm")
    p.add_argument("--poly", required=True)
    p.add_argument("--up-to", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.add_argument("--split", action="append", default=[], metavar="p=f:c,...")

    t = sub.add_parser("batch", help="run a family of fields")
    t.add_argument("--family", choices=("pure", "biquadratic"), required=True)
    t.add_argument("--degree", type=int, default=2)
    t.add_argument("--sign", type=_sign, default=1)
    t.add_argument("--a-min", type=int)
    t.add_argument("--a-max", type=int)
    t.add_argument("--a1-range")
    t.add_argument("--a2-range")
    t.add_argument("--csv", type=Path)
    t.add_argument("--plot-data", type=Path)
    t.add_argument("--jobs", type=int, default=1)
    t.add_argument("--force", action="store_true")
    t.add_argument("--delta-grid", type=float, default=DELTA_STEP)
    t.add_argument("--n0", type=int, default=N0)
    return ap


def _positive(name, v):
    if v <= 0:
        raise InputError(f"{name} must be positive")
    return v


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "bound":
        splits = {r.p: r for r in map(parse_split, args.split)}
        cfg = BoundConfig(read_poly(args.poly), args.log_disc, args.basic_only, args.json,
                          args.cache_dir, _positive("--delta-grid", args.delta_grid),
                          _positive("--n0", args.n0), _positive("--n-max", args.n_max),
                          args.rule, splits)
        if cfg.log_disc is not None and not math.isfinite(cfg.log_disc):
            raise InputError("--log-disc must be finite")
        return cmd_bound(cfg)
    if args.command == "primes":
        splits = {r.p: r for r in map(parse_split, args.split)}
        return cmd_primes(read_poly(args.poly), args.up_to, args.list, splits)
    if args.family == "pure":
        if args.a_min is None or args.a_max is None:
            raise InputError("pure family needs --a-min and --a-max")
        a_values = list(range(args.a_min, args.a_max + 1))
        a2_values = []
    else:
        if not args.a1_range or not args.a2_range:
            raise InputError("biquadratic family needs --a1-range and --a2-range")
        a_values, a2_values = parse_range(args.a1_range), parse_range(args.a2_range)
    if any(a < 1 for a in a_values + a2_values):
        raise InputError("family parameters must be positive")
    cfg = BatchConfig(args.family, args.degree, args.sign, a_values, a2_values, args.csv,
                      args.plot_data, max(1, args.jobs), args.force, _positive("--n0", args.n0),
                      _positive("--delta-grid", args.delta_grid))
    return cmd_batch(cfg)


def main(argv=None) -> int:
    try:
        return run(argv)
    except (InputError, FieldError, CacheError, OSError) as exc:
        print(f"grhgen: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"grhgen: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
