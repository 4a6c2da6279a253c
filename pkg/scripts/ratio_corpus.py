"""Ratio t_improved / t_basic over the small-field corpus, one line per field."""

import argparse
import csv
import sys
import time

from grhgen.families import SMALL_FIELD_CORPUS, FamilyRow
from grhgen.numberfield import new_field
from grhgen.search import bound


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--csv", help="write rows here instead of stdout")
    args = ap.parse_args()

    rows = []
    t = time.perf_counter()
    for c in SMALL_FIELD_CORPUS:
        nf = new_field(c)
        r = bound(nf)
        rows.append((nf, r, FamilyRow(str(nf.poly), nf.log_abs_disc, r.t_basic, r.t_improved)))
    dt = time.perf_counter() - t

    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["degree", "signature", "witness_N"] + list(FamilyRow.CSV_HEADER))
    for nf, r, row in rows:
        w.writerow([nf.n, f"{nf.r1}:{nf.r2}", r.witness.N] + row.csv_fields())
    if out is not sys.stdout:
        out.close()

    ratios = [row.ratio for _, _, row in rows]
    print(f"fields={len(rows)} mean_ratio={sum(ratios) / len(ratios):.4f} "
          f"min={min(ratios):.4f} max={max(ratios):.4f} time={dt:.1f}s", file=sys.stderr)
    for n in range(2, 8):
        sub = [row.ratio for nf, _, row in rows if nf.n == n]
        print(f"  degree {n}: mean_ratio={sum(sub) / len(sub):.4f}", file=sys.stderr)


if __name__ == "__main__":
    main()
