#!/usr/bin/env python3
"""Compare Kac-Peterson S (both exponent signs) with braiding traces of fundamental pairs."""

import argparse

from sosface.boltzmann import ModelParams, valid_zeta_exponents
from sosface.exterior import s_fundamental_closed, s_fundamental_trace
from sosface.fusion import charge_conjugation, kac_peterson
from sosface.lattice import fundamental


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--L", type=int, default=2)
    args = ap.parse_args()
    for N in args.N:
        eps = 1
        k = valid_zeta_exponents(N, args.L, eps, primitive=True)[0]
        p = ModelParams.from_zeta(N, args.L, eps, k)
        S_lit, S_flip = kac_peterson(p.s_sign, p, -1), kac_peterson(p.s_sign, p, 1)
        print(f"N={N} L={args.L} zeta_exp={k} charge conjugation {charge_conjugation(S_lit)}")
        for q in range(1, N):
            for r in range(1, q + 1):
                a, b = fundamental(N, q), fundamental(N, r)
                tr = s_fundamental_trace(q, r, p.iota, p)
                print(f"  (q,r)=({q},{r})  trace={tr.embed():.6f}  closed={s_fundamental_closed(q, r, p.iota, p).embed():.6f}"
                      f"  KP(-)={S_lit[a, b].embed():.6f}  KP(+)={S_flip[a, b].embed():.6f}")


if __name__ == "__main__":
    main()
