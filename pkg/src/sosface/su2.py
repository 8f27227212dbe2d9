"""SU(2)_L specialization: admissible triples, duality coefficients, braiding tables.

Vertices of G_{2,L} are the integers 0..L and a path is a tuple of heights
(i_0, ..., i_k) with unit steps.  Weights here are in the rational basis
sigma(p), which differs from the Omega-basis weights of `boltzmann` by the
gauge kappa(p)^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .boltzmann import ModelParams, mat_inverse
from .cyclo import CycNum, cyc_make, qfact, qint, qint_inv

HPath = tuple[int, ...]


class BTriple(NamedTuple):
    k: int
    i: int
    j: int


def admissible(k: int, i: int, j: int, L: int) -> bool:
    return (0 <= i <= L and 0 <= j <= L and 0 <= k <= L and abs(i - j) <= k <= i + j
            and (i + j + k) % 2 == 0 and i + j + k <= 2 * L)


@lru_cache(maxsize=None)
def b_set(L: int) -> frozenset:
    r = range(L + 1)
    return frozenset(BTriple(k, i, j) for k in r for i in r for j in r if admissible(k, i, j, L))


def su2_params(L: int, eps: int = 1, kzeta: int = 1, iota: int = 1) -> ModelParams:
    """N=2 parameters with zeta = zeta_{4(L+2)}^kzeta and t = eps * zeta^2."""
    return ModelParams.from_zeta(2, L, eps, kzeta, iota)


def su2_problems(params: ModelParams) -> list[str]:
    """Constraints for the state-sum invariant, beyond the generic ones."""
    out = params.problems()
    if params.N != 2:
        out.append("state sums need N = 2")
    if params.L % 2 and params.eps != 1:
        out.append("eps must be 1 when L is odd")
    return out


def _sqrt_minus_one(params: ModelParams) -> CycNum:
    return cyc_make(params.M, params.M // 4)


def c_coeff(k: int, i: int, j: int, params: ModelParams) -> CycNum:
    """Duality coefficient c(k; i j).

    The prefactor (-eps)^((i-j)/2) has a half-integer exponent when k is odd;
    for eps = 1 it is taken as sqrt(-1)^(i-j) with sqrt(-1) = exp(pi i/2).
    """
    if not admissible(k, i, j, params.L):
        raise ValueError(f"({k}; {i} {j}) is not admissible at level {params.L}")
    t = params.t
    val = (qfact((i + j + k) // 2 + 1, t) * qfact((i - j + k) // 2, t) * qfact((-i + j + k) // 2, t)
           * qint_inv(i + 1, t) / qfact((i + j - k) // 2, t))
    if params.eps == 1:
        val = val * _sqrt_minus_one(params) ** (i - j)
    return val


def sigma_face(a: int, b: int, c: int, d: int, params: ModelParams) -> CycNum:
    """w^Sigma[a b; c d]: corners top-left, top-right, bottom-left, bottom-right."""
    L = params.L
    zero = CycNum.zero(params.M)
    if any(not 0 <= x <= L for x in (a, b, c, d)):
        return zero
    if abs(a - b) != 1 or abs(b - d) != 1 or abs(a - c) != 1 or abs(c - d) != 1:
        return zero
    zi = params.zeta_inv
    t = params.t
    if a == d:
        s = b - a
        if c == b:
            return -zi * s * t ** (-s * (a + 1)) * qint_inv(a + 1, t)
        return zi * params.eps * qint(a + 1 + s, t) * qint_inv(a + 1, t)
    return zi * t if c == b else zero


@lru_cache(maxsize=None)
def _sigma_block(a: int, d: int, params: ModelParams, inverse: bool):
    mids = tuple(b for b in (a - 1, a + 1) if 0 <= b <= params.L and abs(b - d) == 1)
    mat = tuple(tuple(sigma_face(a, b, c, d, params) for b in mids) for c in mids)
    return mids, (mat_inverse(mat) if inverse else mat)


def _apply_face(vec: dict, pos: int, params: ModelParams, inverse: bool) -> dict:
    out: dict = {}
    for path, coef in vec.items():
        a, b, d = path[pos - 1], path[pos], path[pos + 1]
        mids, mat = _sigma_block(a, d, params, inverse)
        col = mids.index(b)
        for row, c in enumerate(mids):
            w = mat[row][col]
            if w.is_zero():
                continue
            key = path[:pos] + (c,) + path[pos + 1:]
            out[key] = out[key] + coef * w if key in out else coef * w
    return {k: v for k, v in out.items() if not v.is_zero()}


def crossing(path: HPath, m: int, n: int, params: ModelParams, inverse: bool = False) -> dict:
    """Move the trailing n steps of an (m + n)-step path in front of the leading m."""
    vec = {path: CycNum.one(params.M)}
    for k in range(1, n + 1):
        for pos in range(k + m - 1, k - 1, -1):
            vec = _apply_face(vec, pos, params, inverse)
    return vec


def hpaths(i: int, j: int, k: int, L: int) -> list[HPath]:
    """All height paths of length k from i to j."""
    out = []

    def rec(acc):
        if len(acc) == k + 1:
            if acc[-1] == j:
                out.append(tuple(acc))
            return
        h = acc[-1]
        for nxt in (h - 1, h + 1):
            if 0 <= nxt <= L and abs(nxt - j) <= k - len(acc):
                rec(acc + [nxt])

    rec([i])
    return out


def valley(i: int, j: int, k: int) -> HPath:
    low = (i + j - k) // 2
    return tuple(range(i, low - 1, -1)) + tuple(range(low + 1, j + 1))


def sign_index(p: HPath) -> int:
    """L(p): the valley path has 0 and each local min -> max flip adds 1."""
    v = valley(p[0], p[-1], len(p) - 1)
    diff = sum(a - b for a, b in zip(p, v))
    assert diff % 2 == 0 and diff >= 0
    return diff // 2


def sign_index_inversions(p: HPath) -> int:
    """Same statistic as the number of (up, down) step pairs in that order."""
    steps = [b - a for a, b in zip(p, p[1:])]
    return sum(1 for a in range(len(steps)) for b in range(a + 1, len(steps)) if steps[a] > steps[b])


@dataclass(frozen=True)
class WTable:
    m: int
    n: int
    sign: int
    entries: dict  # (h, i, j, k) -> CycNum


@lru_cache(maxsize=None)
def _w_from(m: int, n: int, sign: int, q: HPath, r: HPath, params: ModelParams) -> dict:
    eps = params.eps
    pre = eps ** (sign_index(q) + sign_index(r))
    out: dict = {}
    for path, coef in crossing(q + r[1:], m, n, params, inverse=(sign < 0)).items():
        u, v = path[: n + 1], path[n:]
        j = path[n]
        val = coef * (pre * eps ** (sign_index(u) + sign_index(v)))
        out[j] = out[j] + val if j in out else val
    return out


def w_pm(m: int, n: int, sign: int, h: int, i: int, j: int, k: int, params: ModelParams,
         q: HPath | None = None, r: HPath | None = None) -> CycNum:
    """w^{sign}_{mn}[h i/j k]; q, r default to the valley representatives."""
    L = params.L
    if not (admissible(m, h, i, L) and admissible(n, i, k, L)
            and admissible(n, h, j, L) and admissible(m, j, k, L)):
        return CycNum.zero(params.M)
    q = valley(h, i, m) if q is None else q
    r = valley(i, k, n) if r is None else r
    return _w_from(m, n, sign, q, r, params).get(j, CycNum.zero(params.M))


@lru_cache(maxsize=None)
def w_table(m: int, n: int, sign: int, params: ModelParams) -> WTable:
    L = params.L
    ent = {}
    for h in range(L + 1):
        for i in range(L + 1):
            for k in range(L + 1):
                if not (admissible(m, h, i, L) and admissible(n, i, k, L)):
                    continue
                for j, v in _w_from(m, n, sign, valley(h, i, m), valley(i, k, n), params).items():
                    if admissible(n, h, j, L) and admissible(m, j, k, L) and not v.is_zero():
                        ent[(h, i, j, k)] = v
    return WTable(m, n, sign, ent)


def theta_su2(i: int, iota: int, params: ModelParams) -> CycNum:
    return params.zeta ** (i * (i + 2)) * iota ** (i % 2)


# consistency checks ------------------------------------------------------

def check_base_table(params: ModelParams) -> list[str]:
    """w^+_{11} against the base Sigma face weights."""
    fails = []
    L = params.L
    tab = w_table(1, 1, 1, params).entries
    for h in range(L + 1):
        for i in range(L + 1):
            for j in range(L + 1):
                for k in range(L + 1):
                    if tab.get((h, i, j, k), CycNum.zero(params.M)) != sigma_face(h, i, j, k, params):
                        fails.append(f"w+_11[{h} {i}/{j} {k}]")
    return fails


def check_inverse(m: int, n: int, params: ModelParams) -> list[str]:
    """sum_j w+_{mn}[h i/j k] w-_{nm}[h j/i' k] = delta_{i i'}."""
    L = params.L
    fails = []
    wp = w_table(m, n, 1, params).entries
    wm = w_table(n, m, -1, params).entries
    zero = CycNum.zero(params.M)
    for h in range(L + 1):
        for k in range(L + 1):
            I = [i for i in range(L + 1) if admissible(m, h, i, L) and admissible(n, i, k, L)]
            J = [j for j in range(L + 1) if admissible(n, h, j, L) and admissible(m, j, k, L)]
            for i in I:
                for i2 in I:
                    s = zero
                    for j in J:
                        a, b = wp.get((h, i, j, k)), wm.get((h, j, i2, k))
                        if a is not None and b is not None:
                            s = s + a * b
                    if s != (1 if i == i2 else 0):
                        fails.append(f"w+_{m}{n} w-_{n}{m} at h={h} k={k} i={i} i'={i2}")
    return fails


def check_representatives(m: int, n: int, sign: int, params: ModelParams) -> list[str]:
    """The table does not depend on the chosen q, r."""
    L = params.L
    fails = []
    for h in range(L + 1):
        for i in range(L + 1):
            for k in range(L + 1):
                if not (admissible(m, h, i, L) and admissible(n, i, k, L)):
                    continue
                base = _w_from(m, n, sign, valley(h, i, m), valley(i, k, n), params)
                for q in hpaths(h, i, m, L):
                    for r in hpaths(i, k, n, L):
                        other = _w_from(m, n, sign, q, r, params)
                        zero = CycNum.zero(params.M)
                        for j in set(base) | set(other):
                            if not admissible(n, h, j, L) or not admissible(m, j, k, L):
                                continue
                            if base.get(j, zero) != other.get(j, zero):
                                fails.append(f"w{sign}_{m}{n} depends on representative at {h},{i},{j},{k}")
    return fails


def check_c_recursions(params: ModelParams) -> list[str]:
    """Both recursions satisfied by c(k; i j) and the ratio law."""
    L = params.L
    t = params.t
    eps = params.eps
    fails = []
    for k, i, j in sorted(b_set(L)):
        c = c_coeff(k, i, j, params)
        if admissible(k, i + 1, j + 1, L):
            lhs = c_coeff(k, i + 1, j + 1, params) / c
            rhs = qint(i + 1, t) * qint((i + j + k) // 2 + 2, t) / (qint(i + 2, t) * qint((i + j - k) // 2 + 1, t))
            if lhs != rhs:
                fails.append(f"diagonal recursion at ({k};{i} {j})")
        for s in (1, -1):
            if admissible(k, i + s, j - s, L) and (s * (j - i) + k) // 2 > 0:
                lhs = c_coeff(k, i + s, j - s, params) / c
                rhs = (-eps) * qint(i + 1, t) * qint((s * i - s * j + k) // 2 + 1, t) / (
                    qint(i + 1 + s, t) * qint((-s * i + s * j + k) // 2, t))
                if lhs != rhs:
                    fails.append(f"antidiagonal recursion ({s:+d}) at ({k};{i} {j})")
        ratio = c / c_coeff(k, j, i, params)
        if ratio != (-eps) ** ((i - j) % 2) * qint(j + 1, t) / qint(i + 1, t):
            fails.append(f"ratio law at ({k};{i} {j})")
    return fails


def _colored_step(vec: dict, colors: tuple, pos: int, params: ModelParams, sign: int):
    """Braid strands pos, pos+1 of a colored region chain (h0, h1, ..., hn)."""
    m, n = colors[pos], colors[pos + 1]
    tab = w_table(m, n, sign, params).entries
    out: dict = {}
    for regs, coef in vec.items():
        h, i, k = regs[pos], regs[pos + 1], regs[pos + 2]
        for (hh, ii, j, kk), w in tab.items():
            if (hh, ii, kk) == (h, i, k):
                key = regs[: pos + 1] + (j,) + regs[pos + 2:]
                out[key] = out[key] + coef * w if key in out else coef * w
    new_colors = colors[:pos] + (n, m) + colors[pos + 2:]
    return {k: v for k, v in out.items() if not v.is_zero()}, new_colors


def check_colored_ybe(a: int, b: int, c: int, params: ModelParams) -> list[str]:
    """c_1 c_2 c_1 = c_2 c_1 c_2 on Sigma^a (x) Sigma^b (x) Sigma^c."""
    L = params.L
    fails = []
    for h in range(L + 1):
        for x in range(L + 1):
            if not admissible(a, h, x, L):
                continue
            for y in range(L + 1):
                if not admissible(b, x, y, L):
                    continue
                for k in range(L + 1):
                    if not admissible(c, y, k, L):
                        continue
                    start = {(h, x, y, k): CycNum.one(params.M)}
                    res = []
                    for word in ((0, 1, 0), (1, 0, 1)):
                        vec, cols = start, (a, b, c)
                        for pos in word:
                            vec, cols = _colored_step(vec, cols, pos, params, 1)
                        res.append(vec)
                    keys = set(res[0]) | set(res[1])
                    zero = CycNum.zero(params.M)
                    if any(res[0].get(key, zero) != res[1].get(key, zero) for key in keys):
                        fails.append(f"colored YBE ({a},{b},{c}) at {(h, x, y, k)}")
    return fails
