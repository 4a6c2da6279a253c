"""Scaled ratios for a truncated pure family x^n +/- p, p the first prime after 10^a.

Writes CSV rows and, optionally, two-column plot data (log_disc, scaled).
"""

import argparse
import sys

from grhgen.families import FamilyRow, emit_plotdata, pure_family, run_row


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degree", type=int, default=2)
    ap.add_argument("--a-max", type=int, default=25)
    ap.add_argument("--signs", default="+-")
    ap.add_argument("--plot-data", help="path prefix; one file per sign")
    args = ap.parse_args()

    w = sys.stdout
    print(",".join(FamilyRow.CSV_HEADER), file=w)
    for ch in args.signs:
        sign = 1 if ch == "+" else -1
        rows = [run_row(c, lab) for c, lab in pure_family(args.degree, sign, range(1, args.a_max + 1))]
        for r in rows:
            print(",".join(r.csv_fields()), file=w)
        inside = sum(8 <= r.scaled <= 22 for r in rows)
        mean = sum(r.scaled for r in rows) / len(rows)
        print(f"sign {ch}: mean scaled={mean:.3f}, {inside}/{len(rows)} in [8, 22]",
              file=sys.stderr)
        if args.plot_data:
            suffix = "plus" if sign > 0 else "minus"
            emit_plotdata(rows, f"{args.plot_data}_{args.degree}_{suffix}.dat")


if __name__ == "__main__":
    main()
