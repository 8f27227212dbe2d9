#!/usr/bin/env python3
"""Survey the modular-data checks over (N, L, eps, zeta, iota) and both Kac-Peterson exponent signs."""

import argparse
import time

from sosface.boltzmann import ModelParams, valid_zeta_exponents
from sosface.fusion import check_modular


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-N", type=int, default=4)
    ap.add_argument("--max-L", type=int, default=3)
    args = ap.parse_args()
    print("N\tL\teps\tk\tiota\tsign\tresult")
    for N in range(2, args.max_N + 1):
        for L in range(1, args.max_L + 1):
            for eps in (1, -1):
                for k in valid_zeta_exponents(N, L, eps, primitive=True):
                    for iota in ((1, -1) if N % 2 == 0 else (1,)):
                        p = ModelParams.from_zeta(N, L, eps, k, iota)
                        for sign in (-1, 1):
                            t0 = time.perf_counter()
                            fails = check_modular(p, sign=sign)
                            kinds = sorted({f.split(" at ")[0] for f in fails})
                            res = "PASS" if not fails else "FAIL " + ", ".join(kinds)
                            print(f"{N}\t{L}\t{eps}\t{k}\t{iota}\t{sign:+d}\t{res}"
                                  f"\t{time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
