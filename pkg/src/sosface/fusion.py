"""Modular data of SU(N)_L: Kac-Peterson S-matrices, twists and Verlinde fusion."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np

from .boltzmann import ModelParams, mat_inverse
from .cyclo import CycNum, field, qint, qint_inv
from .exterior import Dq, bomega, s_fundamental_trace
from .lattice import Weight, depth, fundamental, inner_tilde, rho, size, vertices, zero


@dataclass(frozen=True)
class SMatrix:
    params: ModelParams
    iota: int
    labels: tuple[Weight, ...]
    entries: tuple[tuple[CycNum, ...], ...]

    def __getitem__(self, key):
        a, b = key
        return self.entries[self.labels.index(a)][self.labels.index(b)]

    def embed(self) -> np.ndarray:
        return np.array([[x.embed() for x in row] for row in self.entries])


def _perm_sign(w) -> int:
    sign = 1
    w = list(w)
    for i in range(len(w)):
        while w[i] != i:
            j = w[i]
            w[i], w[j] = w[j], w[i]
            sign = -sign
    return sign


def _zeta_power_sum(expo_counts: dict, params: ModelParams) -> CycNum:
    """sum_k c_k zeta^k for zeta = zeta_{2N(N+L)}^{kzeta}."""
    M = params.M
    f = field(M)
    scale = params.kzeta * M // (2 * params.N * (params.N + params.L))
    acc = [0] * f.phi
    for k, c in expo_counts.items():
        if c:
            for j, v in enumerate(f.powers[(k * scale) % M]):
                if v:
                    acc[j] += c * v
    return CycNum(M, acc)


def _weyl_sum(lam: Weight, mu: Weight, params: ModelParams, sign: int = -1) -> CycNum:
    N = params.N
    r = rho(N)
    a = [x + y for x, y in zip(lam, r)]
    b = [x + y for x, y in zip(mu, r)]
    counts: dict = {}
    for w in permutations(range(N)):
        wa = [0] * N
        for i in range(N):
            wa[w[i]] = a[i]
        e = 2 * sign * inner_tilde(wa, b)
        counts[e] = counts.get(e, 0) + _perm_sign(w)
    return _zeta_power_sum(counts, params)


@lru_cache(maxsize=None)
def kac_peterson(iota: int, params: ModelParams, sign: int = -1) -> SMatrix:
    """S^iota(zeta) with exponent sign*2*(w(lam+rho)|mu+rho)~; sign=-1 is the stated formula.

    sign=+1 gives S^iota(zeta^{-1}), which equals S^iota(zeta) with one index dualized.
    """
    N = params.N
    V = vertices(N, params.L)
    den = _weyl_sum(zero(N), zero(N), params, sign)
    if den.is_zero():
        raise ZeroDivisionError("vanishing Weyl denominator; zeta not primitive")
    dinv = den.inv()
    n = len(V)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            val = _weyl_sum(V[i], V[j], params, sign) * dinv * iota ** ((size(V[i]) + size(V[j])) % 2)
            rows[i][j] = rows[j][i] = val
    return SMatrix(params, iota, V, tuple(tuple(r) for r in rows))


def theta_weight(lam: Weight, params: ModelParams) -> CycNum:
    """zeta^{(lam | lam + 2 rho)~}."""
    r = rho(params.N)
    e = inner_tilde(lam, [x + 2 * y for x, y in zip(lam, r)])
    return _zeta_power_sum({e: 1}, params)


def D_at(lam: Weight, t: CycNum) -> CycNum:
    N = len(lam)
    acc = CycNum.one(t.M)
    z = zero(N)
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            acc = acc * qint(depth(lam, i, j), t) * qint_inv(depth(z, i, j), t)
    return acc


def verlinde(S: SMatrix, tol: float = 1e-6) -> dict:
    """Fusion coefficients {(lam, mu, nu): N} solved from S and verified exactly.

    The linear solve is done in floating point and rounded; the exact
    identity S_{nu0} sum_xi N^xi S_{xi nu} = S_{lam nu} S_{mu nu} is then
    checked for every triple, which pins down N since S is invertible.
    """
    V = S.labels
    n = len(V)
    Sf = S.embed()
    Sinv = np.linalg.inv(Sf)
    fus: dict = {}
    for a in range(n):
        for b in range(a, n):
            B = Sf[a, :] * Sf[b, :] / Sf[:, 0]
            vals = B @ Sinv
            for c in range(n):
                x = vals[c]
                k = round(x.real)
                if abs(x - k) > tol:
                    raise ValueError(f"non-integer fusion coefficient at {V[a]},{V[b]},{V[c]}: {x}")
                if k < 0:
                    raise ValueError(f"negative fusion coefficient at {V[a]},{V[b]},{V[c]}")
                if k:
                    fus[(V[a], V[b], V[c])] = fus[(V[b], V[a], V[c])] = k
    E = S.entries
    for a in range(n):
        for b in range(a, n):
            nz = [(c, fus[(V[a], V[b], V[c])]) for c in range(n) if (V[a], V[b], V[c]) in fus]
            for v in range(n):
                lhs = sum((E[c][v] * k for c, k in nz), CycNum.zero(S.params.M)) * E[v][0]
                if lhs != E[a][v] * E[b][v]:
                    raise ValueError(f"Verlinde identity fails at {V[a]},{V[b]},{V[v]}")
    return fus


def fusion_table(fus: dict, labels) -> list[list[list[int]]]:
    return [[[fus.get((a, b, c), 0) for c in labels] for b in labels] for a in labels]


def check_modular(params: ModelParams, iota: int | None = None, sign: int = -1) -> list[str]:
    """Itemized failures of the modular-data checks; empty when all pass.

    `sign` selects the exponent sign of the Kac-Peterson sum (see kac_peterson).
    """
    iota = params.iota if iota is None else iota
    p = ModelParams(params.N, params.L, params.eps, iota, params.kt, params.kzeta)
    probs = p.problems(mtc=True)
    if probs:
        return probs
    fails = []
    sgn = p.s_sign
    S = kac_peterson(sgn, p, sign)
    V = S.labels
    n = len(V)
    M = p.M
    E = S.entries
    # (a) symmetric and invertible
    if any(E[i][j] != E[j][i] for i in range(n) for j in range(n)):
        fails.append("S not symmetric")
    if E[0][0] != 1:
        fails.append("S_00 != 1")
    try:
        mat_inverse(E)
    except ZeroDivisionError:
        fails.append("S singular")
    # (b) Verlinde integrality
    try:
        fus = verlinde(S)
    except ValueError as exc:
        return fails + [str(exc)]
    # S_{lam 0} = iota^{|lam|} D(lam)_t
    for i, lam in enumerate(V):
        if E[i][0] != Dq(lam, p) * iota ** (size(lam) % 2):
            fails.append(f"S_(lam,0) at {lam}")
    # N^mu_{lam Lambda_m} = indicator of B Omega^m
    for m in range(1, p.N):
        Lm = fundamental(p.N, m)
        bo = set(bomega(m, p.N, p.L))
        for lam in V:
            for mu in V:
                if fus.get((lam, Lm, mu), 0) != (1 if (lam, mu) in bo else 0):
                    fails.append(f"N^{mu}_({lam},Lambda_{m})")
    # (c) reconstruction of S from fusion, twists and dimensions
    t0 = p.zeta ** p.N
    th = {lam: theta_weight(lam, p) for lam in V}
    dims = {lam: D_at(lam, t0) * sgn ** (size(lam) % 2) for lam in V}
    for i, lam in enumerate(V):
        for j in range(i, n):
            mu = V[j]
            acc = CycNum.zero(M)
            for nu in V:
                k = fus.get((lam, mu, nu), 0)
                if k:
                    acc = acc + th[nu] * dims[nu] * k
            if acc != E[i][j] * th[lam] * th[mu]:
                fails.append(f"S reconstruction at {lam},{mu}")
    # (d) fundamental entries from the braiding trace
    for q in range(1, p.N):
        for r in range(1, q + 1):
            a, b = fundamental(p.N, q), fundamental(p.N, r)
            if a in V and b in V and s_fundamental_trace(q, r, iota, p) != S[a, b]:
                fails.append(f"trace of double braiding at (Lambda_{q}, Lambda_{r})")
    return fails


def charge_conjugation(S: SMatrix) -> list[int] | None:
    """Index permutation given by S^2 / (S^2)_00, or None if S^2 is not a scaled permutation."""
    E = S.entries
    n = len(E)
    M = S.params.M
    sq = [[sum((E[i][k] * E[k][j] for k in range(n)), CycNum.zero(M)) for j in range(n)] for i in range(n)]
    s00 = sq[0][0]
    perm = []
    for i in range(n):
        nz = [j for j in range(n) if not sq[i][j].is_zero()]
        if len(nz) != 1 or sq[i][nz[0]] != s00:
            return None
        perm.append(nz[0])
    return perm
