#!/usr/bin/env python3
"""Run the state-sum invariance battery for every admissible (L, eps, iota, zeta).

Compares the default normalization, the stated one and the twist-corrected prefactor,
and prints tau of a few small diagrams.
"""

import argparse

from sosface import statesum as ss
from sosface import su2
from sosface.boltzmann import valid_zeta_exponents

DIAGRAMS = {"empty": "", "unknot0 (S1xS2)": ss.UNKNOT, "hopf0": ss.HOPF, "trefoil+": ss.TREFOIL}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--L", type=int, nargs="+", default=[1, 2, 3])
    args = ap.parse_args()
    for L in args.L:
        for eps in (1, -1):
            for iota in (1, -1):
                for k in valid_zeta_exponents(2, L, eps):
                    p = su2.su2_params(L, eps, k, iota)
                    if su2.su2_problems(p):
                        continue
                    row = [f"L={L} eps={eps:+d} iota={iota:+d} k={k}"]
                    for label, kw in (("swapped", {}), ("stated", {"normalization": "stated"}),
                                      ("twist", {"twist_correction": True})):
                        fails = ss.check_invariance(p, **kw)
                        row.append(f"{label}:{'ok' if not fails else len(fails)}")
                    vals = [f"{name}={ss.tau(ss.parse_diagram(src), p).embed():.4f}" for name, src in DIAGRAMS.items()]
                    print("  ".join(row), " | ", " ".join(vals))


if __name__ == "__main__":
    main()
