"""Basic and improved bounds for the cubic x^3 + 559752270111028720 x + 55137512477462689."""

import argparse
import json
import math

from grhgen.analytic import grh_check, grh_check_coro
from grhgen.numberfield import new_field
from grhgen.search import bound, optimal_t
from grhgen.splitting import IdealNormTable

COEFFS = [55137512477462689, 559752270111028720, 0, 1]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trace", action="store_true", help="print the best T for each N")
    args = ap.parse_args()

    nf = new_field(COEFFS)
    table = IdealNormTable.for_field(nf)
    rep = bound(nf, table)
    print(json.dumps(rep.to_dict(timings=True), indent=2, sort_keys=True))
    L = math.log(rep.t_basic)
    print(f"corollary check at t_basic: {grh_check_coro(nf, table, L):+.6f}")
    print(f"homogenized check at t_basic: {grh_check(nf, table, L):+.6f}")
    if args.trace:
        T = rep.t_basic
        for N in (8, 16, 32, 64, 128, 256):
            T = optimal_t(nf, table, N, 1, T)
            print(f"N={N:4d}  best T={T}  ideals={table.count_upto(T)}")


if __name__ == "__main__":
    main()
