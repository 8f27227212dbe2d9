#!/usr/bin/env python3
"""Float unitarity checks for every unitary t = +-exp(+-pi i/(N+L)) and compatible zeta."""

import argparse

from sosface.exterior import check_unitarity, unitary_params


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-N", type=int, default=4)
    ap.add_argument("--max-L", type=int, default=3)
    ap.add_argument("--tol", type=float, default=1e-9)
    args = ap.parse_args()
    for N in range(2, args.max_N + 1):
        for L in range(1, args.max_L + 1):
            for eps in (1, -1):
                for p in unitary_params(N, L, eps):
                    fails = check_unitarity(p, args.tol)
                    print(f"N={N} L={L} eps={eps:+d} t_exp={p.kt} zeta_exp={p.kzeta}: "
                          + ("PASS" if not fails else f"FAIL {fails[0]}"))


if __name__ == "__main__":
    main()
