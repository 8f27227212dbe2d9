"""SU(N)_L SOS Boltzmann weights, face operators and partition functions.

Face convention: a face has corners a (top-left), b (top-right),
c (bottom-left), d (bottom-right).  Its top edge a->b and right edge b->d
form the input path; its left edge a->c and bottom edge c->d form the output
path.  The face operator on C G^2 is  w(a b d) = sum_c w[a,b;c,d] (a c d),
and w[r p/s q] (left r, top p, bottom s, right q) is the same number.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd, lcm
from typing import Iterable, Optional

from .cyclo import CycNum, cyc_make, qint, qint_inv
from .lattice import Path, Weight, all_paths, depth, kappa_sq, paths, shift, step, vertices

Vec = dict  # Path -> CycNum


@dataclass(frozen=True)
class ModelParams:
    N: int
    L: int
    eps: int = 1
    iota: int = 1
    kt: int = 1
    kzeta: int = 1

    @classmethod
    def from_zeta(cls, N: int, L: int, eps: int, kzeta: int, iota: int = 1) -> "ModelParams":
        """Derive t from zeta^N = eps^(N-1) t."""
        n2 = 2 * (N + L)
        kt = kzeta % n2
        if eps ** (N - 1) == -1:
            kt = (kt + N + L) % n2
        return cls(N, L, eps, iota, kt, kzeta)

    @cached_property
    def M(self) -> int:
        return lcm(4, 2 * self.N * (self.N + self.L))

    @cached_property
    def t(self) -> CycNum:
        return cyc_make(self.M, self.kt * self.M // (2 * (self.N + self.L)))

    @cached_property
    def zeta(self) -> CycNum:
        return cyc_make(self.M, self.kzeta * self.M // (2 * self.N * (self.N + self.L)))

    @cached_property
    def zeta_inv(self) -> CycNum:
        return self.zeta.inv()

    def t_primitive(self) -> bool:
        return gcd(self.kt, 2 * (self.N + self.L)) == 1

    def eta_holds(self) -> bool:
        return self.zeta ** self.N == self.t * (self.eps ** (self.N - 1))

    def zeta_primitive(self) -> bool:
        return gcd(self.kzeta, 2 * self.N * (self.N + self.L)) == 1

    def problems(self, mtc: bool = False) -> list[str]:
        out = []
        if self.N < 2 or self.L < 1:
            out.append("need N >= 2 and L >= 1")
        if self.eps not in (1, -1) or self.iota not in (1, -1):
            out.append("eps and iota must be +1 or -1")
        if self.iota == -1 and self.N % 2:
            out.append("iota = -1 requires N even")
        if not self.t_primitive():
            out.append("t is not a primitive 2(N+L)-th root of unity")
        if not self.eta_holds():
            out.append("zeta^N = eps^(N-1) t fails")
        if mtc and not self.zeta_primitive():
            out.append("zeta is not a primitive 2N(N+L)-th root of unity")
        return out

    def validate(self, mtc: bool = False) -> "ModelParams":
        probs = self.problems(mtc)
        if probs:
            raise ValueError("; ".join(probs))
        return self

    @property
    def s_sign(self) -> int:
        """Sign in S^{+-iota}: the second family (N even, eps = -1) flips iota."""
        return self.iota * self.eps ** (self.N - 1)

    def q(self, n: int) -> CycNum:
        return qint(n, self.t)

    def qinv(self, n: int) -> CycNum:
        return qint_inv(n, self.t)


def valid_zeta_exponents(N: int, L: int, eps: int, primitive: bool = False) -> list[int]:
    """All k with zeta = zeta_{2N(N+L)}^k giving a primitive t."""
    out = []
    for k in range(2 * N * (N + L)):
        p = ModelParams.from_zeta(N, L, eps, k)
        if p.t_primitive() and (not primitive or p.zeta_primitive()):
            out.append(k)
    return out


def _step_index(a: Weight, b: Weight) -> Optional[int]:
    for i in range(1, len(a) + 1):
        if shift(a, i) == b:
            return i
    return None


@lru_cache(maxsize=None)
def corner_weight(a: Weight, b: Weight, c: Weight, d: Weight, params: ModelParams) -> CycNum:
    """w[a b; c d]; zero unless the four corners form a face of G_{N,L}."""
    L = params.L
    zero = CycNum.zero(params.M)
    i = _step_index(a, b)
    j = _step_index(b, d)
    k = _step_index(a, c)
    l = _step_index(c, d)
    if None in (i, j, k, l):
        return zero
    if step(a, i, L) is None or step(b, j, L) is None or step(a, k, L) is None or step(c, l, L) is None:
        return zero
    zi = params.zeta_inv
    if i == j:
        return zi * params.t if k == i else zero
    dd = depth(a, i, j)
    if k == i:
        return -zi * params.t ** (-dd) * params.qinv(dd)
    return zi * params.eps * params.q(dd - 1) * params.qinv(dd)


def weight(p: Path, q: Path, params: ModelParams) -> CycNum:
    """Weight of the face whose input is the 2-path p and output the 2-path q."""
    if p.src != q.src or p.rng != q.rng:
        return CycNum.zero(params.M)
    a, b, d = p.vertices()
    c = q.vertices()[1]
    return corner_weight(a, b, c, d, params)


def face_weight(r: Path, p: Path, s: Path, q: Path, params: ModelParams) -> CycNum:
    """w[r p/s q] with left r, top p, bottom s, right q (single edges)."""
    if r.src != p.src or p.rng != q.src or r.rng != s.src or s.rng != q.rng:
        return CycNum.zero(params.M)
    return corner_weight(p.src, p.rng, r.rng, q.rng, params)


@lru_cache(maxsize=None)
def _middles(a: Weight, d: Weight, L: int) -> tuple[Weight, ...]:
    out = []
    for i in range(1, len(a) + 1):
        b = step(a, i, L)
        if b is None:
            continue
        for j in range(1, len(a) + 1):
            if step(b, j, L) == d:
                out.append(b)
    return tuple(sorted(set(out)))


@lru_cache(maxsize=None)
def block(a: Weight, d: Weight, params: ModelParams) -> tuple[tuple[Weight, ...], tuple[tuple[CycNum, ...], ...]]:
    """The weight matrix on 2-paths a -> * -> d, rows = output middles."""
    mids = _middles(a, d, params.L)
    mat = tuple(tuple(corner_weight(a, b, c, d, params) for b in mids) for c in mids)
    return mids, mat


def mat_inverse(mat):
    """Exact Gauss-Jordan inverse of a small square matrix of CycNum."""
    n = len(mat)
    if n == 0:
        return ()
    M = mat[0][0].M
    aug = [list(row) + [CycNum.one(M) if i == j else CycNum.zero(M) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular block")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inv()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@lru_cache(maxsize=None)
def block_inv(a: Weight, d: Weight, params: ModelParams):
    mids, mat = block(a, d, params)
    return mids, mat_inverse(mat)


def corner_weight_inv(a, b, c, d, params: ModelParams) -> CycNum:
    mids, inv = block_inv(a, d, params)
    if b not in mids or c not in mids:
        return CycNum.zero(params.M)
    return inv[mids.index(c)][mids.index(b)]


def apply_face(vec: Vec, i: int, params: ModelParams, inverse: bool = False) -> Vec:
    """Apply w_{i/m} (1-based position, acting on steps i, i+1) to a path vector."""
    out: Vec = {}
    for path, coef in vec.items():
        verts = path.vertices()
        a, b, d = verts[i - 1], verts[i], verts[i + 1]
        mids, mat = block_inv(a, d, params) if inverse else block(a, d, params)
        col = mids.index(b)
        for row, c in enumerate(mids):
            w = mat[row][col]
            if w.is_zero():
                continue
            steps = list(path.steps)
            steps[i - 1] = _step_index(a, c)
            steps[i] = _step_index(c, d)
            key = Path(path.src, tuple(steps))
            val = out.get(key)
            out[key] = coef * w if val is None else val + coef * w
    return {k: v for k, v in out.items() if not v.is_zero()}


def face_op(m: int, i: int, params: ModelParams, inverse: bool = False) -> dict:
    """Sparse matrix {(out, in): value} of w_{i/m} on C G^m."""
    mat = {}
    for p in all_paths(params.N, params.L, m):
        for q, v in apply_face({p: CycNum.one(params.M)}, i, params, inverse).items():
            mat[(q, p)] = v
    return mat


def face_op_inv(m: int, i: int, params: ModelParams) -> dict:
    return face_op(m, i, params, inverse=True)


def sparse_matmul(A: dict, B: dict) -> dict:
    by_row: dict = {}
    for (k, j), v in B.items():
        by_row.setdefault(k, []).append((j, v))
    out: dict = {}
    for (i, k), a in A.items():
        for j, b in by_row.get(k, ()):
            out[(i, j)] = out.get((i, j), 0) + a * b
    return {k: v for k, v in out.items() if not (isinstance(v, CycNum) and v.is_zero()) and v != 0}


def braid_word(vec: Vec, word: Iterable[int], params: ModelParams, inverse: bool = False) -> Vec:
    """Apply faces in order (first element acts first)."""
    for i in word:
        vec = apply_face(vec, i, params, inverse)
    return vec


def crossing_word(n: int, m: int) -> list[int]:
    """Face positions moving m trailing steps in front of n leading steps, in application order."""
    word = []
    for k in range(1, m + 1):
        word.extend(range(k + n - 1, k - 1, -1))
    return word


def crossing_op(vec: Vec, n: int, m: int, params: ModelParams) -> Vec:
    """C_{n,m}: (n steps)(m steps) -> (m steps)(n steps), the partition-function operator."""
    return braid_word(vec, crossing_word(n, m), params)


def crossing_op_inv(vec: Vec, n: int, m: int, params: ModelParams) -> Vec:
    """Inverse of C_{n,m}: maps (m steps)(n steps) -> (n steps)(m steps)."""
    return braid_word(vec, reversed(crossing_word(n, m)), params, inverse=True)


def crossing_op_invweights(vec: Vec, n: int, m: int, params: ModelParams) -> Vec:
    """Same shape as C_{n,m} but built from the inverse face weights."""
    return braid_word(vec, crossing_word(n, m), params, inverse=True)


def _corners_ok(r: Path, p: Path, q: Path, s: Path) -> bool:
    return r.src == p.src and p.rng == s.src and r.rng == q.src and q.rng == s.rng


def partition(r: Path, p: Path, q: Path, s: Path, params: ModelParams) -> CycNum:
    """w[r p/q s]: left r and right s of length m, top p and bottom q of length n."""
    if not _corners_ok(r, p, q, s):
        return CycNum.zero(params.M)
    n, m = p.length, r.length
    out = crossing_op({p.concat(s): CycNum.one(params.M)}, n, m, params)
    return out.get(r.concat(q), CycNum.zero(params.M))


def partition_recursive(r: Path, p: Path, q: Path, s: Path, params: ModelParams,
                        order: str = "row") -> CycNum:
    """The same value from the horizontal/vertical recursions, split order selectable."""
    return _part_rec(r, p, q, s, params, order)


@lru_cache(maxsize=None)
def _part_rec(r: Path, p: Path, q: Path, s: Path, params: ModelParams, order: str) -> CycNum:
    zero = CycNum.zero(params.M)
    if not _corners_ok(r, p, q, s):
        return zero
    n, m = p.length, r.length
    if n == 0:
        return CycNum.one(params.M) if r == s else zero
    if m == 0:
        return CycNum.one(params.M) if p == q else zero
    if n == 1 and m == 1:
        return face_weight(r, p, q, s, params)
    split_h = n >= 2 and (order == "row" or m == 1)
    if split_h:
        p1, p2 = p.sub(0, 1), p.sub(1, n)
        q1, q2 = q.sub(0, 1), q.sub(1, n)
        acc = zero
        for a in paths(p1.rng, q1.rng, m, params.L):
            x = _part_rec(r, p1, q1, a, params, order)
            if not x.is_zero():
                acc = acc + x * _part_rec(a, p2, q2, s, params, order)
        return acc
    r1, r2 = r.sub(0, 1), r.sub(1, m)
    s1, s2 = s.sub(0, 1), s.sub(1, m)
    acc = zero
    for a in paths(r1.rng, s1.rng, n, params.L):
        x = _part_rec(r1, p, a, s1, params, order)
        if not x.is_zero():
            acc = acc + x * _part_rec(r2, a, q, s2, params, order)
    return acc


def r_pairing(p: Path, q: Path, r: Path, s: Path, params: ModelParams, sign: int = 1) -> CycNum:
    """R^{+-}(e(p;q), e(r;s)) for p, q of equal length and r, s of equal length."""
    zero = CycNum.zero(params.M)
    if sign == 1:
        return partition(r, q, p, s, params)
    if not (s.rng == q.src and p.rng == r.src and s.src == p.src and q.rng == r.rng):
        return zero
    out = crossing_op_inv({s.concat(q): CycNum.one(params.M)}, p.length, r.length, params)
    return out.get(p.concat(r), zero)


def sigma_weight(a, b, c, d, params: ModelParams) -> CycNum:
    """Weight in the basis kappa(p)^2 p: (kappa(in)/kappa(out))^2 w."""
    w = corner_weight(a, b, c, d, params)
    if w.is_zero():
        return w
    i, j, k, l = _step_index(a, b), _step_index(b, d), _step_index(a, c), _step_index(c, d)
    return w * kappa_sq(Path(a, (i, j)), params) / kappa_sq(Path(a, (k, l)), params)


def braid_rep(m: int, lam: Weight, mu: Weight, params: ModelParams):
    """Generator matrices of B_m on C G^m_{lam mu} (list of row lists, basis order = path order)."""
    basis = paths(lam, mu, m, params.L)
    index = {p: n for n, p in enumerate(basis)}
    mats = []
    for i in range(1, m):
        mat = [[CycNum.zero(params.M) for _ in basis] for _ in basis]
        for col, p in enumerate(basis):
            for q, v in apply_face({p: CycNum.one(params.M)}, i, params).items():
                mat[index[q]][col] = v
        mats.append(mat)
    return basis, mats


# verification suites -------------------------------------------------------

def _vec_eq(u: Vec, v: Vec) -> bool:
    keys = set(u) | set(v)
    return all((u.get(k) - v.get(k, 0) if k in u else -v[k]).is_zero() for k in keys)


def check_ybe(params: ModelParams) -> list[str]:
    """w1 w2 w1 = w2 w1 w2 on every basis path of G^3; returns counterexample paths."""
    bad = []
    one = CycNum.one(params.M)
    for p in all_paths(params.N, params.L, 3):
        lhs = braid_word({p: one}, [1, 2, 1], params)
        rhs = braid_word({p: one}, [2, 1, 2], params)
        if not _vec_eq(lhs, rhs):
            bad.append(str(p))
    return bad


def check_inversion(params: ModelParams) -> list[str]:
    bad = []
    for a in vertices(params.N, params.L):
        for d in vertices(params.N, params.L):
            mids, mat = block(a, d, params)
            if not mids:
                continue
            try:
                _, inv = block_inv(a, d, params)
            except ZeroDivisionError:
                bad.append(f"singular block {a}->{d}")
                continue
            n = len(mids)
            for i in range(n):
                for j in range(n):
                    s = sum((mat[i][k] * inv[k][j] for k in range(n)), CycNum.zero(params.M))
                    if s != (1 if i == j else 0):
                        bad.append(f"block {a}->{d}")
    return bad


def check_hecke(params: ModelParams) -> list[str]:
    """(w - zeta^-1 t)(w + zeta^-1 t^-1) = 0 on every 2x2 block."""
    bad = []
    e1 = params.zeta_inv * params.t
    e2 = -params.zeta_inv * params.t.inv()
    for a in vertices(params.N, params.L):
        for d in vertices(params.N, params.L):
            mids, mat = block(a, d, params)
            n = len(mids)
            A = [[mat[i][j] - (e1 if i == j else 0) for j in range(n)] for i in range(n)]
            B = [[mat[i][j] - (e2 if i == j else 0) for j in range(n)] for i in range(n)]
            for i in range(n):
                for j in range(n):
                    s = sum((A[i][k] * B[k][j] for k in range(n)), CycNum.zero(params.M))
                    if not s.is_zero():
                        bad.append(f"block {a}->{d}")
    return bad


def frt_generator(pq: Path, ab: Path, params: ModelParams) -> dict:
    """The FRT ideal generator indexed by 2-paths p.q and a.b, as {(x, y): coef} for e(x; y)."""
    out: dict = {}
    one = CycNum.one(params.M)
    # sum_{r.s} w[r p/s q] e(a.b; r.s)
    for rs, v in apply_face({pq: one}, 1, params).items():
        out[(ab, rs)] = out.get((ab, rs), 0) + v
    # - sum_{c.d} w[a c/b d] e(c.d; p.q): input c.d, output a.b
    for cd in paths(ab.src, ab.rng, 2, params.L):
        v = apply_face({cd: one}, 1, params).get(ab)
        if v is not None:
            out[(cd, pq)] = out.get((cd, pq), 0) - v
    return out


def check_frt(params: ModelParams, sign: int = 1) -> list[str]:
    """R(gen, e) and R(e, gen) vanish for every ideal generator and every length-2 e(r; s)."""
    bad = []
    two = all_paths(params.N, params.L, 2)
    by_ends: dict = {}
    for p in two:
        by_ends.setdefault((p.src, p.rng), []).append(p)
    for pq in two:
        for ab in by_ends[(pq.src, pq.rng)]:
            gen = frt_generator(pq, ab, params)
            for r in two:
                for s in two:
                    left = sum((c * r_pairing(x, y, r, s, params, sign) for (x, y), c in gen.items()),
                               CycNum.zero(params.M))
                    right = sum((c * r_pairing(r, s, x, y, params, sign) for (x, y), c in gen.items()),
                                CycNum.zero(params.M))
                    if not left.is_zero() or not right.is_zero():
                        bad.append(f"gen({pq},{ab}) vs e({r};{s})")
    return bad
