"""Command-line front end: verification suites, tables and the state-sum invariant."""

from __future__ import annotations

import argparse
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from . import boltzmann, exterior, fusion, statesum, su2
from .boltzmann import ModelParams
from .cyclo import qint
from .lattice import fmt_weight

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
THREADS_ENV = "SOSFACE_THREADS"


@dataclass
class RunConfig:
    command: str
    N: int = 2
    L: int = 2
    eps: int = 1
    iota: int = 1
    zeta_exp: int = 1
    t_exp: int | None = None
    machine: bool = False
    suites: list[str] = field(default_factory=list)
    seed: int = 0
    embed: bool = False
    file: str | None = None
    kp_sign: int = -1
    normalization: str = "swapped"
    twist_correction: bool = False

    def params(self) -> ModelParams:
        if self.t_exp is None:
            return ModelParams.from_zeta(self.N, self.L, self.eps, self.zeta_exp, self.iota)
        return ModelParams(self.N, self.L, self.eps, self.iota, self.t_exp, self.zeta_exp)


class Out:
    """Text or `key<TAB>value` rows, written in call order."""

    def __init__(self, machine: bool, stream=None):
        self.machine = machine
        self.stream = stream or sys.stdout

    def row(self, key: str, value, text: str | None = None):
        if self.machine:
            print(f"{key}\t{value}", file=self.stream)
        else:
            print(text if text is not None else f"{key}: {value}", file=self.stream)


# suites ---------------------------------------------------------------------

Suite = Callable[[ModelParams, RunConfig], tuple[str, list[str]]]


def _skip(reason: str) -> tuple[str, list[str]]:
    return "SKIP", [reason]


def _result(fails: list[str]) -> tuple[str, list[str]]:
    return ("PASS", []) if not fails else ("FAIL", fails)


def _suite_ybe(p, cfg):
    return _result(boltzmann.check_ybe(p))


def _suite_hecke(p, cfg):
    return _result(boltzmann.check_hecke(p))


def _suite_inversion(p, cfg):
    return _result(boltzmann.check_inversion(p))


def _suite_frt(p, cfg):
    return _result(boltzmann.check_frt(p, 1) + boltzmann.check_frt(p, -1))


def _suite_det(p, cfg):
    fails = exterior.check_det_pairing(p, max_m=2)
    if fails and not p.eta_holds():
        fails.insert(0, "determinant pairing needs zeta^N = eps^(N-1) t")
    return _result(fails)


def _suite_drinfeld(p, cfg):
    got, want = exterior.drinfeld_check(p)
    return _result([] if got == want else [f"Drinfeld sum {got!r} != zeta^-1 t^N/[N] = {want!r}"])


def _suite_omega(p, cfg):
    return _result(exterior.check_omega(p))


def _suite_braiding(p, cfg):
    return _result(exterior.check_braiding_scalars(p))


def _suite_modular(p, cfg):
    if not p.zeta_primitive():
        return _skip("zeta is not primitive")
    return _result(fusion.check_modular(p, p.iota, cfg.kp_sign))


def _suite_su2(p, cfg):
    if p.N != 2:
        return _skip("N != 2")
    fails = su2.check_base_table(p) + su2.check_c_recursions(p)
    for m in range(p.L + 1):
        for n in range(p.L + 1):
            fails += su2.check_inverse(m, n, p)
    for m in (1, 2):
        for n in (1, 2):
            fails += su2.check_representatives(m, n, 1, p) + su2.check_representatives(m, n, -1, p)
    fails += su2.check_colored_ybe(1, 1, 2, p) + su2.check_colored_ybe(1, 2, 1, p)
    return _result(fails)


def _suite_statesum(p, cfg):
    probs = su2.su2_problems(p)
    if probs:
        return _skip("; ".join(probs))
    return _result(statesum.check_invariance(p, cfg.normalization, cfg.twist_correction))


SUITES: dict[str, tuple[Suite, str]] = {
    "ybe": (_suite_ybe, "Yang-Baxter equation w1 w2 w1 = w2 w1 w2"),
    "hecke": (_suite_hecke, "Hecke relation of the face operators"),
    "inversion": (_suite_inversion, "invertibility of every 2-path block"),
    "frt": (_suite_frt, "R-pairings annihilate the FRT ideal"),
    "det": (_suite_det, "R(det, e) = delta"),
    "drinfeld": (_suite_drinfeld, "Drinfeld value zeta^-1 t^N/[N]"),
    "omega": (_suite_omega, "closed-form action on Omega"),
    "braiding-scalars": (_suite_braiding, "double braiding scalars and fundamental traces"),
    "modular": (_suite_modular, "S symmetric, invertible, Verlinde, reconstruction, traces"),
    "su2": (_suite_su2, "SU(2) tables and duality coefficients"),
    "statesum-invariance": (_suite_statesum, "Kirby and planar-move invariance of tau"),
}


def cmd_verify(cfg: RunConfig, out: Out) -> int:
    p = cfg.params()
    names = cfg.suites or list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        out.row("error", f"unknown suite(s): {', '.join(unknown)}")
        return EXIT_CONFIG
    fatal = [x for x in p.problems() if "fails" not in x]
    if fatal:
        for x in fatal:
            out.row("error", x)
        return EXIT_CONFIG
    random.seed(cfg.seed)
    out.row("seed", cfg.seed)
    out.row("params", f"N={p.N} L={p.L} eps={p.eps} iota={p.iota} t_exp={p.kt} zeta_exp={p.kzeta}")
    if not p.eta_holds():
        out.row("warning", "zeta^N = eps^(N-1) t fails")
    threads = max(1, int(os.environ.get(THREADS_ENV, "1")))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(SUITES[n][0], p, cfg) for n in names]
        results = [f.result() for f in futures]
    status = EXIT_OK
    for name, (verdict, notes) in zip(names, results):
        out.row(f"suite.{name}", verdict, f"{verdict}  {name}: {SUITES[name][1]}")
        for note in notes[:20]:
            out.row(f"suite.{name}.detail", note, f"    {note}")
        if len(notes) > 20:
            out.row(f"suite.{name}.detail", f"... {len(notes) - 20} more", f"    ... {len(notes) - 20} more")
        if verdict == "FAIL":
            status = EXIT_FAIL
    return status


# tables -----------------------------------------------------------------------

def _num(out: Out, key: str, x, embed: bool):
    v = x.embed()
    if out.machine:
        out.row(key, f"{x.poly_str()}\t{v.real:.12g}\t{v.imag:.12g}")
    else:
        out.row(key, f"{x.poly_str()}" + (f"   ~ {v.real:.12g}{v.imag:+.12g}i" if embed else ""))


def cmd_smatrix(cfg: RunConfig, out: Out) -> int:
    p = cfg.params()
    probs = p.problems(mtc=True)
    if probs:
        for x in probs:
            out.row("error", x)
        return EXIT_CONFIG
    S = fusion.kac_peterson(p.s_sign, p, cfg.kp_sign)
    out.row("labels", " ".join(fmt_weight(x) for x in S.labels))
    for a in S.labels:
        for b in S.labels:
            _num(out, f"S[{fmt_weight(a)},{fmt_weight(b)}]", S[a, b], cfg.embed)
    return EXIT_OK


def cmd_fusion(cfg: RunConfig, out: Out) -> int:
    p = cfg.params()
    probs = p.problems(mtc=True)
    if probs:
        for x in probs:
            out.row("error", x)
        return EXIT_CONFIG
    S = fusion.kac_peterson(p.s_sign, p, cfg.kp_sign)
    try:
        fus = fusion.verlinde(S)
    except ValueError as exc:
        out.row("error", str(exc))
        return EXIT_FAIL
    V = S.labels
    for a in V:
        if not out.machine:
            out.row("", "", f"N_({fmt_weight(a)}, mu)^nu  rows mu, columns nu")
        for b in V:
            row = [fus.get((a, b, c), 0) for c in V]
            if out.machine:
                for c, k in zip(V, row):
                    out.row(f"N[{fmt_weight(a)},{fmt_weight(b)};{fmt_weight(c)}]", k)
            else:
                out.row("", "", f"  {fmt_weight(b):>10} " + " ".join(f"{k:2d}" for k in row))
    return EXIT_OK


def cmd_dims(cfg: RunConfig, out: Out) -> int:
    p = cfg.params()
    probs = p.problems()
    if probs:
        for x in probs:
            out.row("error", x)
        return EXIT_CONFIG
    if p.N == 2:
        for i in range(p.L + 1):
            _num(out, f"[{i + 1}]", qint(i + 1, p.t), True)
            _num(out, f"theta_{i}", su2.theta_su2(i, p.iota, p), cfg.embed)
        out.row("B", " ".join(f"({k};{i},{j})" for k, i, j in sorted(su2.b_set(p.L))))
    else:
        for lam in fusion.vertices(p.N, p.L):
            _num(out, f"D{fmt_weight(lam)}", exterior.Dq(lam, p), True)
            _num(out, f"theta{fmt_weight(lam)}", fusion.theta_weight(lam, p), cfg.embed)
    return EXIT_OK


def cmd_tau(cfg: RunConfig, out: Out) -> int:
    p = cfg.params()
    probs = su2.su2_problems(p)
    if probs:
        for x in probs:
            out.row("error", x)
        return EXIT_CONFIG
    try:
        text = open(cfg.file, encoding="utf-8").read() if cfg.file else ""
        d = statesum.parse_diagram(text)
    except (OSError, statesum.DiagramError) as exc:
        out.row("error", str(exc))
        return EXIT_CONFIG
    lk = statesum.linking(d)
    val = statesum.tau(d, p, cfg.normalization, cfg.twist_correction)
    out.row("components", d.n_components)
    out.row("signature", lk.signature)
    out.row("linking", ";".join(",".join(map(str, r)) for r in lk.matrix))
    _num(out, "Delta^2", statesum.delta_squared(p), True)
    _num(out, "gauss", statesum.gauss_sum(p), True)
    v = val.embed()
    out.row("tau", f"({val.a.poly_str()}) + ({val.b.poly_str()})*Delta")
    out.row("tau.float", f"{v.real:.12g}{v.imag:+.12g}i")
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "smatrix": cmd_smatrix, "fusion": cmd_fusion, "dims": cmd_dims, "tau": cmd_tau}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sosface", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--N", type=int, default=2)
        sp.add_argument("--L", type=int, default=2)
        sp.add_argument("--eps", type=int, default=1, choices=(1, -1))
        sp.add_argument("--iota", type=int, default=1, choices=(1, -1))
        sp.add_argument("--zeta-exp", type=int, default=1, help="zeta = exp(pi i k / (N(N+L)))")
        sp.add_argument("--t-exp", type=int, default=None, help="override t = exp(pi i k / (N+L))")
        sp.add_argument("--format", choices=("text", "machine"), default="text")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--embed", action="store_true")
        sp.add_argument("--kp-sign", type=int, default=-1, choices=(1, -1),
                        help="exponent sign in the Kac-Peterson sum (-1 as stated)")
        if name == "verify":
            sp.add_argument("--suite", action="append", default=[], help="repeatable; default all")
        if name in ("verify", "tau"):
            sp.add_argument("--normalization", choices=("swapped", "stated"), default="swapped")
            sp.add_argument("--twist-correction", action="store_true")
        if name == "tau":
            sp.add_argument("--file", default=None)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    suites = [s for item in getattr(ns, "suite", []) for s in item.split(",") if s]
    cfg = RunConfig(ns.command, ns.N, ns.L, ns.eps, ns.iota, ns.zeta_exp, ns.t_exp,
                    ns.format == "machine", suites, ns.seed, ns.embed,
                    getattr(ns, "file", None), ns.kp_sign,
                    getattr(ns, "normalization", "swapped"), getattr(ns, "twist_correction", False))
    try:
        return COMMANDS[cfg.command](cfg, Out(cfg.machine))
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
