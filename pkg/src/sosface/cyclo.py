"""Exact arithmetic in cyclotomic fields Q(zeta_M) and one quadratic extension.

Elements are stored as an integer numerator vector in the power basis
1, z, ..., z^(phi-1) (z = exp(2 pi i / M)) over a positive common
denominator, reduced modulo the cyclotomic polynomial Phi_M.  The
representation is canonical, so equality is structural.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

import sympy

MAX_ORDER = 10_000

Scalar = Union[int, Fraction, "CycNum"]


class _Field:
    """Per-order tables: Phi_M, reduction rows, powers of z, conjugation."""

    def __init__(self, M: int):
        if M < 1:
            raise ValueError("order must be positive")
        self.M = M
        x = sympy.Symbol("x")
        coeffs = sympy.Poly(sympy.cyclotomic_poly(M, x), x).all_coeffs()[::-1]
        self.phi_poly = [int(c) for c in coeffs]
        self.phi = len(coeffs) - 1
        n = self.phi
        # rows[e - n] = reduction of z^e for n <= e <= 2n - 2
        rows = []
        cur = [-c for c in self.phi_poly[:n]]
        for _ in range(max(n - 1, 1)):
            rows.append(cur)
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [a - top * c for a, c in zip(cur, self.phi_poly[:n])]
        self.rows = rows
        powers = []
        v = [0] * n
        v[0] = 1
        for _ in range(M):
            powers.append(tuple(v))
            top = v[-1]
            v = [0] + v[:-1]
            if top:
                v = [a - top * c for a, c in zip(v, self.phi_poly[:n])]
        self.powers = powers
        self.roots = [cmath.exp(2j * math.pi * k / M) for k in range(n)]

    def reduce(self, poly: list[int]) -> list[int]:
        n = self.phi
        out = poly[:n] + [0] * max(0, n - len(poly))
        for e in range(len(poly) - 1, n - 1, -1):
            c = poly[e] if e < len(poly) else 0
            if c:
                row = self.rows[e - n]
                for k in range(n):
                    if row[k]:
                        out[k] += c * row[k]
        return out


@lru_cache(maxsize=None)
def field(M: int) -> _Field:
    return _Field(M)


def _normalize(num: Sequence[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-a for a in num]
        den = -den
    g = den
    for a in num:
        if a:
            g = math.gcd(g, a)
            if g == 1:
                break
    if not any(num):
        return tuple(0 for _ in num), 1
    if g != 1:
        num = [a // g for a in num]
        den //= g
    return tuple(num), den


class CycNum:
    """An element of Q(zeta_M) in canonical reduced form."""

    __slots__ = ("M", "num", "den", "_hash")

    def __init__(self, M: int, num: Sequence[int], den: int = 1, _canonical: bool = False):
        self.M = M
        if _canonical:
            self.num, self.den = tuple(num), den
        else:
            f = field(M)
            if len(num) > f.phi:
                num = f.reduce(list(num))
            elif len(num) < f.phi:
                num = list(num) + [0] * (f.phi - len(num))
            self.num, self.den = _normalize(num, den)
        self._hash = None

    # construction helpers
    @classmethod
    def from_rational(cls, M: int, q: Union[int, Fraction]) -> "CycNum":
        q = Fraction(q)
        n = field(M).phi
        return cls(M, [q.numerator] + [0] * (n - 1), q.denominator)

    @classmethod
    def zero(cls, M: int) -> "CycNum":
        return cls.from_rational(M, 0)

    @classmethod
    def one(cls, M: int) -> "CycNum":
        return cls.from_rational(M, 1)

    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.M != self.M:
                raise ValueError(f"order mismatch: {self.M} vs {other.M}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_rational(self.M, other)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return CycNum(self.M, [a + b for a, b in zip(self.num, o.num)], self.den)
        return CycNum(self.M, [a * o.den + b * self.den for a, b in zip(self.num, o.num)],
                      self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.M, [-a for a in self.num], self.den, _canonical=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycNum(self.M, [a * q.numerator for a in self.num], self.den * q.denominator)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.num, o.num
        nz_a = [(i, x) for i, x in enumerate(a) if x]
        nz_b = [(j, y) for j, y in enumerate(b) if y]
        prod = [0] * (2 * len(a) - 1)
        for i, x in nz_a:
            for j, y in nz_b:
                prod[i + j] += x * y
        return CycNum(self.M, field(self.M).reduce(prod), self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = CycNum.one(self.M)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return not self.is_zero()

    def inv(self) -> "CycNum":
        """Inverse via the extended Euclidean algorithm over Q[x] modulo Phi_M."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        f = field(self.M)
        a = _trim([Fraction(c) for c in self.num])
        if len(a) == 1:
            return CycNum.from_rational(self.M, Fraction(self.den) / a[0])
        b = [Fraction(c) for c in f.phi_poly]
        # invariant: s * self_num = a (mod Phi)
        s0, s1 = [Fraction(1)], [Fraction(0)]
        r0, r1 = a, b
        while len(r1) > 1 or r1[0] != 0:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        # r0 is a nonzero constant
        c = r0[0]
        coeffs = [x / c * self.den for x in s0]
        den = 1
        for x in coeffs:
            den = den * x.denominator // math.gcd(den, x.denominator)
        return CycNum(self.M, [int(x * den) for x in coeffs], den)

    def conj(self) -> "CycNum":
        f = field(self.M)
        out = [0] * f.phi
        for k, c in enumerate(self.num):
            if c:
                img = f.powers[(-k) % self.M]
                for j, v in enumerate(img):
                    if v:
                        out[j] += c * v
        return CycNum(self.M, out, self.den)

    def to_order(self, M2: int) -> "CycNum":
        """Image under Q(zeta_M) -> Q(zeta_M2), zeta_M -> zeta_M2^(M2/M)."""
        if M2 == self.M:
            return self
        if M2 % self.M:
            raise ValueError(f"{self.M} does not divide {M2}")
        if M2 > MAX_ORDER:
            raise ValueError("order exceeds configured bound")
        step = M2 // self.M
        f2 = field(M2)
        out = [0] * f2.phi
        for k, c in enumerate(self.num):
            if c:
                for j, v in enumerate(f2.powers[(k * step) % M2]):
                    if v:
                        out[j] += c * v
        return CycNum(M2, out, self.den)

    def embed(self) -> complex:
        f = field(self.M)
        return sum(c * r for c, r in zip(self.num, f.roots) if c) / self.den

    def rational(self) -> Fraction | None:
        """The rational value if the element lies in Q, else None."""
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.rational() == other
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.M == other.M and self.den == other.den and self.num == other.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.M, self.num, self.den))
        return self._hash

    def poly_str(self) -> str:
        terms = []
        for k, c in enumerate(self.num):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else ""
            else:
                coef = str(c)
            terms.append(coef + ("*" if mono and abs(c) != 1 else "") + mono if mono else coef)
        s = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        if self.den != 1:
            s = f"({s})/{self.den}"
        return s

    def __repr__(self):
        v = self.embed()
        return f"{self.poly_str()} [M={self.M}] ~ {v.real:.12g}{v.imag:+.12g}j"


def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _pdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and not (len(a) == 1 and a[0] == 0):
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        a = _trim(a[:-1]) if len(a) > 1 else [Fraction(0)]
        if len(a) < len(b):
            break
    return _trim(q), _trim(a)


@lru_cache(maxsize=None)
def cyc_make(M: int, k: int) -> CycNum:
    """zeta_M^k in canonical form."""
    f = field(M)
    return CycNum(M, f.powers[k % M], 1, _canonical=True)


def cyc_arith(op: str, *args) -> CycNum:
    """Dispatcher over the field operations (add, mul, neg, inv, pow, conj)."""
    if op == "add":
        return args[0] + args[1]
    if op == "mul":
        return args[0] * args[1]
    if op == "neg":
        return -args[0]
    if op == "inv":
        return args[0].inv()
    if op == "pow":
        return args[0] ** args[1]
    if op == "conj":
        return args[0].conj()
    raise ValueError(f"unknown op {op!r}")


@lru_cache(maxsize=None)
def qint(n: int, t: CycNum) -> CycNum:
    """Quantum integer [n] = (t^n - t^-n)/(t - t^-1), summed as a geometric series."""
    one = CycNum.one(t.M)
    if t == one or t == -one:
        raise ValueError("quantum integer undefined at t = +-1")
    if n < 0:
        return -qint(-n, t)
    tinv = t.inv()
    acc = CycNum.zero(t.M)
    term = t ** (n - 1) if n else one
    t2inv = tinv * tinv
    for _ in range(n):
        acc = acc + term
        term = term * t2inv
    return acc


@lru_cache(maxsize=None)
def qint_inv(n: int, t: CycNum) -> CycNum:
    return qint(n, t).inv()


@lru_cache(maxsize=None)
def qfact(n: int, t: CycNum) -> CycNum:
    if n < 0:
        raise ValueError("negative factorial")
    if n == 0:
        return CycNum.one(t.M)
    return qfact(n - 1, t) * qint(n, t)


class QuadNum:
    """a + b*Delta with Delta^2 = radicand, a, b in a common cyclotomic field."""

    __slots__ = ("a", "b", "radicand")

    def __init__(self, a: CycNum, b: CycNum, radicand: CycNum):
        self.a, self.b, self.radicand = a, b, radicand

    def _coerce(self, other) -> "QuadNum":
        if isinstance(other, QuadNum):
            if other.radicand != self.radicand:
                raise ValueError("radicand mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_rational(self.a.M, other)
        return QuadNum(other, CycNum.zero(self.a.M), self.radicand)

    @classmethod
    def sqrt_of(cls, radicand: CycNum) -> "QuadNum":
        return cls(CycNum.zero(radicand.M), CycNum.one(radicand.M), radicand)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadNum(self.a + o.a, self.b + o.b, self.radicand)

    __radd__ = __add__

    def __neg__(self):
        return QuadNum(-self.a, -self.b, self.radicand)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadNum(self.a * o.a + self.b * o.b * self.radicand,
                       self.a * o.b + self.b * o.a, self.radicand)

    __rmul__ = __mul__

    def inv(self) -> "QuadNum":
        norm = self.a * self.a - self.b * self.b * self.radicand
        if norm.is_zero():
            raise ZeroDivisionError("non-invertible quadratic element")
        ninv = norm.inv()
        return QuadNum(self.a * ninv, -self.b * ninv, self.radicand)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = self._coerce(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        x, y = self.a - o.a, o.b - self.b
        if y.is_zero():
            return x.is_zero()
        # equal iff x = y*Delta; only possible when the radicand is a square in the field
        if x * x != y * y * self.radicand:
            return False
        r = (x / y).embed()
        return abs(r - self.delta_embed()) < abs(r + self.delta_embed())

    def __hash__(self):
        return hash(self.radicand)

    def conj(self) -> "QuadNum":
        """Complex conjugate, assuming the conjugate radicand equals the radicand."""
        if self.radicand.conj() != self.radicand:
            raise ValueError("radicand is not real")
        s = 1 if self.radicand.embed().real > 0 else -1
        return QuadNum(self.a.conj(), self.b.conj() * s, self.radicand)

    def delta_embed(self) -> complex:
        """The fixed square root: principal branch of the embedded radicand."""
        return cmath.sqrt(self.radicand.embed())

    def embed(self) -> complex:
        return self.a.embed() + self.b.embed() * self.delta_embed()

    def __repr__(self):
        v = self.embed()
        return f"({self.a.poly_str()}) + ({self.b.poly_str()})*Delta ~ {v.real:.12g}{v.imag:+.12g}j"
