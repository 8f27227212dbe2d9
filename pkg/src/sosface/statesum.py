"""Sliced link diagrams and the SU(2)_L state-sum invariant of 3-manifolds.

A diagram is a top-to-bottom list of events acting on a row of strands:
``cap i`` creates strands i, i+1; ``cup i`` joins them; ``x+ i`` / ``x- i``
crosses them.  In ``x+ i`` the strand running from top position i to bottom
position i+1 passes over; in ``x- i`` it passes under.

A state assigns to every region of the complement a vertex of G_{2,L}; an arc
of color l with regions (a, b) on its left and right carries the triple
(l; a b).  The unbounded region carries 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Optional

from .boltzmann import ModelParams
from .cyclo import CycNum, QuadNum, qint
from .su2 import admissible, c_coeff, su2_problems, theta_su2, w_table


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Event:
    kind: str  # cap | cup | x+ | x-
    pos: int
    line: int = 0


@dataclass
class SlicedDiagram:
    events: tuple[Event, ...]
    widths: tuple[int, ...]          # strand count before each event, plus the final one
    arcs_in: tuple[tuple[int, ...], ...]   # arc ids entering each event from above
    arcs_out: tuple[tuple[int, ...], ...]  # arc ids leaving each event downward
    arc_component: tuple[int, ...]
    arc_down: tuple[bool, ...]       # orientation of each arc
    n_components: int
    crossing_signs: tuple[Optional[int], ...] = field(default=())

    @property
    def n_crossings(self) -> int:
        return sum(1 for e in self.events if e.kind in ("x+", "x-"))

    def strand_components(self, k: int) -> tuple[int, ...]:
        """Component of each strand just before event k."""
        return tuple(self.arc_component[a] for a in self._strands_before(k))

    def _strands_before(self, k: int) -> list[int]:
        strands: list[int] = []
        for e, ins, outs in zip(self.events[:k], self.arcs_in, self.arcs_out):
            strands[e.pos:e.pos + len(ins)] = list(outs)
        return strands


_LINE = re.compile(r"^(cap|cup|x\+|x-)\s+(\d+)$")


def parse_events(text: str) -> list[Event]:
    events = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            col = len(raw) - len(raw.lstrip()) + 1
            raise DiagramError(f"line {n}, column {col}: cannot parse {raw.strip()!r}")
        events.append(Event(m.group(1), int(m.group(2)), n))
    return events


def parse_diagram(text: str) -> SlicedDiagram:
    return build_diagram(parse_events(text))


def build_diagram(events: list[Event]) -> SlicedDiagram:
    strands: list[int] = []
    widths = []
    arcs_in, arcs_out = [], []
    n_arcs = 0
    # endpoint (arc, 0=top / 1=bottom) -> partner endpoint through the event
    partner: dict = {}
    for e in events:
        widths.append(len(strands))
        where = f"line {e.line}: " if e.line else ""
        if e.kind == "cap":
            if e.pos > len(strands):
                raise DiagramError(f"{where}cap {e.pos} outside 0..{len(strands)}")
            a, b = n_arcs, n_arcs + 1
            n_arcs += 2
            partner[(a, 0)], partner[(b, 0)] = (b, 0), (a, 0)
            strands[e.pos:e.pos] = [a, b]
            arcs_in.append(())
            arcs_out.append((a, b))
            continue
        if e.pos + 2 > len(strands):
            if len(strands) < 2:
                raise DiagramError(f"{where}strands underflow at {e.kind} {e.pos}")
            raise DiagramError(f"{where}{e.kind} {e.pos} outside 0..{len(strands) - 2}")
        a, b = strands[e.pos], strands[e.pos + 1]
        if e.kind == "cup":
            partner[(a, 1)], partner[(b, 1)] = (b, 1), (a, 1)
            del strands[e.pos:e.pos + 2]
            arcs_in.append((a, b))
            arcs_out.append(())
        else:
            c, d = n_arcs, n_arcs + 1  # c at pos (continues b), d at pos+1 (continues a)
            n_arcs += 2
            partner[(a, 1)], partner[(d, 0)] = (d, 0), (a, 1)
            partner[(b, 1)], partner[(c, 0)] = (c, 0), (b, 1)
            strands[e.pos:e.pos + 2] = [c, d]
            arcs_in.append((a, b))
            arcs_out.append((c, d))
    widths.append(len(strands))
    if strands:
        raise DiagramError(f"{len(strands)} open strands at the bottom")

    comp = [-1] * n_arcs
    down = [True] * n_arcs
    n_comp = 0
    for e, outs in zip(events, arcs_out):
        if e.kind != "cap" or comp[outs[0]] >= 0:
            continue
        arc, going_down = outs[0], True
        while comp[arc] < 0:
            comp[arc] = n_comp
            down[arc] = going_down
            nxt, end = partner[(arc, 1 if going_down else 0)]
            arc, going_down = nxt, end == 0
        n_comp += 1

    signs = []
    for e, ins, outs in zip(events, arcs_in, arcs_out):
        if e.kind not in ("x+", "x-"):
            signs.append(None)
            continue
        # strand A: top pos -> bottom pos+1 (arc outs[1]); strand B: top pos+1 -> bottom pos
        va = (1, -1) if down[outs[1]] else (-1, 1)
        vb = (-1, -1) if down[outs[0]] else (1, 1)
        over, under = (va, vb) if e.kind == "x+" else (vb, va)
        cross = over[0] * under[1] - over[1] * under[0]
        signs.append(1 if cross > 0 else -1)

    return SlicedDiagram(tuple(events), tuple(widths), tuple(arcs_in), tuple(arcs_out),
                         tuple(comp), tuple(down), n_comp, tuple(signs))


# linking data ---------------------------------------------------------------

@dataclass(frozen=True)
class LinkingData:
    matrix: tuple[tuple[int, ...], ...]
    signature: int


def signature(mat) -> int:
    """Signature of a symmetric rational matrix by congruence elimination."""
    A = [[Fraction(x) for x in row] for row in mat]
    sig = 0
    while A:
        n = len(A)
        piv = next((i for i in range(n) if A[i][i] != 0), None)
        if piv is not None:
            p = A[piv][piv]
            sig += 1 if p > 0 else -1
            rest = [i for i in range(n) if i != piv]
            A = [[A[i][j] - A[i][piv] * A[piv][j] / p for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if A[i][j] != 0), None)
        if pair is None:
            break
        # hyperbolic block [[0, a], [a, 0]] contributes 0
        i, j = pair
        a = A[i][j]
        rest = [k for k in range(n) if k not in pair]
        A = [[A[r][s] - (A[r][i] * A[j][s] + A[r][j] * A[i][s]) / a for s in rest] for r in rest]
    return sig


def linking(d: SlicedDiagram) -> LinkingData:
    p = d.n_components
    twice = [[0] * p for _ in range(p)]
    for e, ins, outs, s in zip(d.events, d.arcs_in, d.arcs_out, d.crossing_signs):
        if s is None:
            continue
        ca, cb = d.arc_component[outs[0]], d.arc_component[outs[1]]
        if ca == cb:
            twice[ca][ca] += 2 * s
        else:
            twice[ca][cb] += s
            twice[cb][ca] += s
    assert all(x % 2 == 0 for row in twice for x in row), "odd inter-component crossing count"
    mat = tuple(tuple(x // 2 for x in row) for row in twice)
    return LinkingData(mat, signature(mat))


# local weights and state sums ---------------------------------------------

# which braiding table an x+ event uses; fixed so that a positive curl
# multiplies a loop of color c by theta_c
XPLUS_SIGN = -1


@lru_cache(maxsize=None)
def _c_table(params: ModelParams) -> dict:
    L = params.L
    return {(l, a, b): c_coeff(l, a, b, params) for l in range(L + 1) for a in range(L + 1)
            for b in range(L + 1) if admissible(l, a, b, L)}


@lru_cache(maxsize=None)
def _c_inv_table(params: ModelParams) -> dict:
    return {k: v.inv() for k, v in _c_table(params).items()}


@lru_cache(maxsize=None)
def _w_index(m: int, n: int, sign: int, params: ModelParams) -> dict:
    idx: dict = {}
    for (h, i, j, k), v in w_table(m, n, sign, params).entries.items():
        idx.setdefault((h, i, k), []).append((j, v))
    return idx


def cap_weight(l: int, outer: int, inner: int, params: ModelParams) -> CycNum:
    return _c_table(params).get((l, outer, inner), CycNum.zero(params.M))


def cup_weight(l: int, outer: int, inner: int, params: ModelParams) -> CycNum:
    v = _c_inv_table(params).get((l, inner, outer))
    return CycNum.zero(params.M) if v is None else v


def crossing_weight(kind: str, m: int, n: int, h: int, i: int, e: int, f: int, params: ModelParams) -> CycNum:
    sign = XPLUS_SIGN if kind == "x+" else -XPLUS_SIGN
    for j, v in _w_index(m, n, sign, params).get((h, i, f), ()):
        if j == e:
            return v
    return CycNum.zero(params.M)


def local_weight(event: Event, colors: tuple[int, ...], above: tuple[int, ...], below: tuple[int, ...],
                 params: ModelParams) -> CycNum:
    """<lambda|A> for one event.

    `colors` are the strand colors on the side where the event has strands
    (below a cap, above a cup or crossing); `above`/`below` are region labels.
    """
    i = event.pos
    zero = CycNum.zero(params.M)
    if event.kind == "cap":
        if below[:i + 1] != above[:i + 1] or below[i + 2] != above[i] or below[i + 3:] != above[i + 1:]:
            return zero
        return cap_weight(colors[i], below[i], below[i + 1], params)
    if event.kind == "cup":
        if above[i] != above[i + 2] or above[:i + 1] + above[i + 3:] != below:
            return zero
        return cup_weight(colors[i], above[i], above[i + 1], params)
    if above[:i + 1] != below[:i + 1] or above[i + 2:] != below[i + 2:]:
        return zero
    return crossing_weight(event.kind, colors[i], colors[i + 1], above[i], above[i + 1], below[i + 1],
                           above[i + 2], params)


def state_sum(d: SlicedDiagram, coloring: tuple[int, ...], params: ModelParams) -> CycNum:
    """sum over states of the given color of the product of local weights."""
    L = params.L
    ct, cit = _c_table(params), _c_inv_table(params)
    vec: dict = {(0,): CycNum.one(params.M)}
    for e, ins, outs in zip(d.events, d.arcs_in, d.arcs_out):
        i = e.pos
        out: dict = {}
        if e.kind == "cap":
            l = coloring[d.arc_component[outs[0]]]
            for regs, v in vec.items():
                a = regs[i]
                for b in range(L + 1):
                    w = ct.get((l, a, b))
                    if w is not None:
                        key = regs[:i + 1] + (b, a) + regs[i + 1:]
                        out[key] = out[key] + v * w if key in out else v * w
        elif e.kind == "cup":
            l = coloring[d.arc_component[ins[0]]]
            for regs, v in vec.items():
                if regs[i] != regs[i + 2]:
                    continue
                w = cit.get((l, regs[i + 1], regs[i]))
                if w is None:
                    continue
                key = regs[:i + 1] + regs[i + 3:]
                out[key] = out[key] + v * w if key in out else v * w
        else:
            m, n = coloring[d.arc_component[ins[0]]], coloring[d.arc_component[ins[1]]]
            sign = XPLUS_SIGN if e.kind == "x+" else -XPLUS_SIGN
            idx = _w_index(m, n, sign, params)
            for regs, v in vec.items():
                for j, w in idx.get((regs[i], regs[i + 1], regs[i + 2]), ()):
                    key = regs[:i + 1] + (j,) + regs[i + 2:]
                    out[key] = out[key] + v * w if key in out else v * w
        vec = {k: v for k, v in out.items() if not v.is_zero()}
    return vec.get((0,), CycNum.zero(params.M))


def colored_eval(d: SlicedDiagram, coloring: tuple[int, ...], params: ModelParams,
                 twist_correction: bool = False) -> CycNum:
    """prod_q iota^{c_q} [c_q + 1] times the state sum of color c.

    With twist_correction the prefactor becomes (-eps)^c [c+1] chi^{c f_q},
    chi = -eps*iota and f_q the framing of component q; see `tau`.
    """
    if len(coloring) != d.n_components:
        raise ValueError("one color per component is required")
    pre = CycNum.one(params.M)
    framings = [row[q] for q, row in enumerate(linking(d).matrix)] if twist_correction else None
    chi = -params.eps * params.iota
    for q, c in enumerate(coloring):
        pre = pre * qint(c + 1, params.t)
        if twist_correction:
            pre = pre * (-params.eps) ** (c % 2) * chi ** ((c * framings[q]) % 2)
        else:
            pre = pre * params.iota ** (c % 2)
    return pre * state_sum(d, tuple(coloring), params)


def link_sum(d: SlicedDiagram, params: ModelParams, twist_correction: bool = False) -> CycNum:
    acc = CycNum.zero(params.M)
    for col in product(range(params.L + 1), repeat=d.n_components):
        acc = acc + colored_eval(d, col, params, twist_correction)
    return acc


# the 3-manifold invariant -----------------------------------------------

def delta_squared(params: ModelParams) -> CycNum:
    return sum((qint(i + 1, params.t) ** 2 for i in range(params.L + 1)), CycNum.zero(params.M))


def gauss_sum(params: ModelParams) -> CycNum:
    """sum_i iota^i zeta^{-i(i+2)} [i+1]^2, i.e. sum theta_i^{-1} [i+1]^2."""
    return sum((theta_su2(i, params.iota, params).inv() * qint(i + 1, params.t) ** 2
                for i in range(params.L + 1)), CycNum.zero(params.M))


def tau(d: SlicedDiagram, params: ModelParams, normalization: str = "swapped",
        twist_correction: bool = False) -> QuadNum:
    """The invariant of the 3-manifold obtained by surgery along d.

    Delta is the fixed square root of sum [i+1]^2 and Dg the Gauss sum.
    normalization="swapped" (default) is Dg^sigma Delta^(-sigma-p-1), the
    Reshetikhin-Turaev prefactor; "stated" is Delta^sigma Dg^(-sigma-p-1),
    which fails Kirby invariance.  The local weights do not depend on iota;
    they realise the ribbon structure with iota = -eps, and twist_correction
    reweights colors so that iota = eps is handled as well.
    """
    probs = su2_problems(params)
    if probs:
        raise ValueError("; ".join(probs))
    dg = gauss_sum(params)
    if dg.is_zero():
        raise ZeroDivisionError("Gauss sum vanishes")
    delta = QuadNum.sqrt_of(delta_squared(params))
    dgq = delta._coerce(dg)
    sig = linking(d).signature
    p = d.n_components
    F = delta._coerce(link_sum(d, params, twist_correction))
    if normalization == "stated":
        return delta ** sig * dgq ** (-sig - p - 1) * F
    if normalization == "swapped":
        return dgq ** sig * delta ** (-sig - p - 1) * F
    raise ValueError(f"unknown normalization {normalization!r}")


def mirror(d: SlicedDiagram) -> SlicedDiagram:
    swap = {"x+": "x-", "x-": "x+"}
    return build_diagram([Event(swap.get(e.kind, e.kind), e.pos, e.line) for e in d.events])


def disjoint_union(*ds: SlicedDiagram) -> SlicedDiagram:
    """Stack diagrams vertically; they share only the unbounded region."""
    return build_diagram([e for d in ds for e in d.events])


def hopf_table(params: ModelParams) -> list[list[CycNum]]:
    """State sums of the 0-framed Hopf link colored (i, j), without color prefactors."""
    d = parse_diagram(HOPF)
    L = params.L
    return [[state_sum(d, (i, j), params) for j in range(L + 1)] for i in range(L + 1)]


UNKNOT = "cap 0\ncup 0\n"
HOPF = "cap 0\ncap 2\nx+ 1\nx+ 1\ncup 0\ncup 0\n"
CURL_POS = "cap 0\nx+ 0\ncup 0\n"
CURL_NEG = "cap 0\nx- 0\ncup 0\n"
TREFOIL = "cap 0\ncap 2\nx+ 1\nx+ 1\nx+ 1\ncup 0\ncup 0\n"


# invariance battery ---------------------------------------------------------

# pairs of diagrams related by planar moves, compared color by color
MOVES = {
    "zigzag-right": ("cap 0\ncup 0", "cap 0\ncap 2\ncup 1\ncup 0"),
    "zigzag-left": ("cap 0\ncup 0", "cap 0\ncap 0\ncup 1\ncup 0"),
    "reidemeister-2": ("cap 0\ncap 2\ncup 0\ncup 0", "cap 0\ncap 2\nx+ 1\nx- 1\ncup 0\ncup 0"),
    "reidemeister-2-inverse": ("cap 0\ncap 2\ncup 0\ncup 0", "cap 0\ncap 2\nx- 1\nx+ 1\ncup 0\ncup 0"),
    "reidemeister-3": ("cap 0\ncap 2\ncap 4\nx+ 1\nx+ 2\nx+ 1\ncup 0\ncup 0\ncup 0",
                       "cap 0\ncap 2\ncap 4\nx+ 2\nx+ 1\nx+ 2\ncup 0\ncup 0\ncup 0"),
    "reidemeister-3-mixed": ("cap 0\ncap 2\ncap 4\nx+ 1\nx+ 2\nx- 1\ncup 0\ncup 0\ncup 0",
                             "cap 0\ncap 2\ncap 4\nx- 2\nx+ 1\nx+ 2\ncup 0\ncup 0\ncup 0"),
    "distant-exchange": ("cap 0\ncap 2\nx+ 0\nx- 2\ncup 0\ncup 0",
                         "cap 0\ncap 2\nx- 2\nx+ 0\ncup 0\ncup 0"),
    "cap-past-crossing": ("cap 0\ncap 2\nx+ 1\nx+ 1\ncap 4\nx+ 3\ncup 3\ncup 0\ncup 0",
                          "cap 0\ncap 2\ncap 4\nx+ 1\nx+ 1\nx+ 3\ncup 3\ncup 0\ncup 0"),
}

KIRBY_BASE = {"empty": "", "unknot0": UNKNOT, "trefoil+": TREFOIL, "hopf": HOPF}


def check_moves(params: ModelParams) -> list[str]:
    fails = []
    for name, (a, b) in MOVES.items():
        da, db = parse_diagram(a), parse_diagram(b)
        if da.n_components != db.n_components:
            fails.append(f"{name}: component count differs")
            continue
        for col in product(range(params.L + 1), repeat=da.n_components):
            if state_sum(da, col, params) != state_sum(db, col, params):
                fails.append(f"{name} at colors {col}")
    return fails


def check_invariance(params: ModelParams, normalization: str = "swapped",
                     twist_correction: bool = False) -> list[str]:
    """S^3 presentations agree, stabilization is invisible, and moves hold color by color."""
    fails = []
    kw = dict(normalization=normalization, twist_correction=twist_correction)
    empty = tau(parse_diagram(""), params, **kw)
    for name, src in (("hopf0", HOPF), ("unknot+1", CURL_POS), ("unknot-1", CURL_NEG)):
        if tau(parse_diagram(src), params, **kw) != empty:
            fails.append(f"tau({name}) != tau(empty)")
    stab = [parse_diagram(CURL_POS), parse_diagram(CURL_NEG)]
    for name, src in KIRBY_BASE.items():
        d = parse_diagram(src)
        base = tau(d, params, **kw)
        for u, tag in zip(stab, ("+1", "-1")):
            if tau(disjoint_union(d, u), params, **kw) != base:
                fails.append(f"tau({name} + unknot{tag}) != tau({name})")
    return fails + check_moves(params)
