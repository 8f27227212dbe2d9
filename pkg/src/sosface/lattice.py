"""Level-L weights of sl_N, the graph G_{N,L}, paths and their statistics.

A weight is a tuple (lam_1, ..., lam_N) with L >= lam_1 >= ... >= lam_N = 0.
Adding hat(i) for i < N raises lam_i by one; adding hat(N) lowers every
other coordinate by one, which keeps the lam_N = 0 normalization.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import NamedTuple, Optional, Sequence

from .cyclo import CycNum, qint

Weight = tuple[int, ...]


class Path(NamedTuple):
    src: Weight
    steps: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.steps)

    def vertices(self) -> list[Weight]:
        out = [self.src]
        lam = self.src
        for i in self.steps:
            lam = shift(lam, i)
            out.append(lam)
        return out

    @property
    def rng(self) -> Weight:
        lam = self.src
        for i in self.steps:
            lam = shift(lam, i)
        return lam

    def concat(self, other: "Path") -> "Path":
        assert self.rng == other.src, "paths do not compose"
        return Path(self.src, self.steps + other.steps)

    def sub(self, a: int, b: int) -> "Path":
        """Steps a..b-1 as a path starting from the a-th vertex."""
        lam = self.src
        for i in self.steps[:a]:
            lam = shift(lam, i)
        return Path(lam, self.steps[a:b])

    def __str__(self) -> str:
        return f"{fmt_weight(self.src)}|{','.join(map(str, self.steps))}"


def fmt_weight(lam: Weight) -> str:
    return "[" + ",".join(map(str, lam[:-1])) + "]"


def zero(N: int) -> Weight:
    return (0,) * N


def fundamental(N: int, m: int) -> Weight:
    """Lambda_m = hat(1) + ... + hat(m); Lambda_N = 0."""
    if m % N == 0:
        return zero(N)
    return tuple(1 if j < m else 0 for j in range(N))


def size(lam: Weight) -> int:
    return sum(lam)


@lru_cache(maxsize=None)
def vertices(N: int, L: int) -> tuple[Weight, ...]:
    out = []
    for comb in combinations_with_replacement(range(L + 1), N - 1):
        lam = tuple(sorted(comb, reverse=True)) + (0,)
        out.append(lam)
    return tuple(sorted(set(out)))


def shift(lam: Weight, i: int) -> Weight:
    """lam + hat(i) in normalized form, without level check."""
    N = len(lam)
    if i < N:
        return lam[: i - 1] + (lam[i - 1] + 1,) + lam[i:]
    return tuple(x - 1 for x in lam[:-1]) + (0,)


def step(lam: Weight, i: int, L: int) -> Optional[Weight]:
    N = len(lam)
    if not 1 <= i <= N:
        return None
    if i < N:
        if i >= 2 and lam[i - 1] + 1 > lam[i - 2]:
            return None
        if lam[i - 1] + 1 > L:
            return None
        return shift(lam, i)
    if lam[N - 2] < 1:
        return None
    return shift(lam, i)


@lru_cache(maxsize=None)
def paths_from(lam: Weight, m: int, L: int) -> tuple[Path, ...]:
    """All paths of length m starting at lam, depth-first in step order 1..N."""
    N = len(lam)
    out: list[Path] = []

    def rec(cur: Weight, acc: tuple[int, ...]):
        if len(acc) == m:
            out.append(Path(lam, acc))
            return
        for i in range(1, N + 1):
            nxt = step(cur, i, L)
            if nxt is not None:
                rec(nxt, acc + (i,))

    rec(lam, ())
    return tuple(out)


@lru_cache(maxsize=None)
def paths(lam: Weight, mu: Weight, m: int, L: int) -> tuple[Path, ...]:
    return tuple(p for p in paths_from(lam, m, L) if p.rng == mu)


@lru_cache(maxsize=None)
def all_paths(N: int, L: int, m: int) -> tuple[Path, ...]:
    return tuple(p for lam in vertices(N, L) for p in paths_from(lam, m, L))


def depth(lam: Weight, i: int, j: int) -> int:
    return lam[i - 1] - lam[j - 1] + j - i


def inversions(steps: Sequence[int]) -> int:
    """Number of pairs k < l with i_k < i_l."""
    n = len(steps)
    return sum(1 for k in range(n) for l in range(k + 1, n) if steps[k] < steps[l])


@lru_cache(maxsize=None)
def _edge_kappa_sq(lam: Weight, i: int, t: CycNum) -> CycNum:
    N = len(lam)
    acc = CycNum.one(t.M)
    for k in range(i + 1, N + 1):
        for d in range(depth(zero(N), i, k) + 1, depth(lam, i, k) + 1):
            acc = acc * qint(d + 1, t) / qint(d - 1, t)
    return acc


def kappa_sq(p: Path, params) -> CycNum:
    """kappa(p)^2 as a product over edges of A_d^2 = [d+1]/[d-1]."""
    acc = CycNum.one(params.M)
    lam = p.src
    for i in p.steps:
        acc = acc * _edge_kappa_sq(lam, i, params.t)
        lam = shift(lam, i)
    return acc


def inner_tilde(x: Sequence[int], y: Sequence[int]) -> int:
    """N times the Euclidean product of sum x_i hat(i) and sum y_i hat(i)."""
    N = len(x)
    val = N * sum(a * b for a, b in zip(x, y)) - sum(x) * sum(y)
    assert isinstance(val, int)
    return val


def rho(N: int) -> tuple[int, ...]:
    return tuple(N - 1 - j for j in range(N))
