"""Exact Bernoulli and Euler polynomial algebra over the rationals."""
from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Iterable

from .mpcore import DomainError, PrecCtx, bernoulli_number, to_complex

__all__ = [
    "RationalPoly",
    "bernoulli_poly",
    "euler_poly",
    "bernoulli_higher_poly",
    "scaled_B",
    "c_h",
    "c_h_sum",
]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class RationalPoly:
    """Univariate polynomial with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``.  Trailing zeros are
    stripped, so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RationalPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        """Exact Horner evaluation at a rational (or integer) point."""
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate(self, x, ctx: PrecCtx):
        """Numeric Horner evaluation at an arbitrary complex point."""
        if isinstance(x, (int, Fraction)):
            v = self(x)
            return ctx.mp.mpc(ctx.mp.mpf(v.numerator) / v.denominator)
        z = to_complex(x, ctx)
        acc = ctx.mp.mpc(0)
        for c in reversed(self.coeffs):
            acc = acc * z + ctx.mp.mpf(c.numerator) / c.denominator
        return acc

    def compose_affine(self, a, b) -> "RationalPoly":
        """The polynomial ``x -> self(a*x + b)``."""
        lin = RationalPoly([b, a])
        acc = RationalPoly()
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc


def _as_poly(p) -> RationalPoly:
    return p if isinstance(p, RationalPoly) else RationalPoly([p])


_lock = threading.Lock()
_bern: dict[int, RationalPoly] = {}
_euler: dict[int, RationalPoly] = {}
_higher: dict[tuple[int, int], RationalPoly] = {}


def bernoulli_poly(n: int) -> RationalPoly:
    """``B_n(x)`` from ``t e^{xt} / (e^t - 1)``: ``sum_k C(n,k) B_k x^(n-k)``."""
    if n < 0:
        raise DomainError("index must be nonnegative")
    p = _bern.get(n)
    if p is None:
        coeffs = [Fraction(0)] * (n + 1)
        for k in range(n + 1):
            coeffs[n - k] = math.comb(n, k) * bernoulli_number(k)
        p = RationalPoly(coeffs)
        with _lock:
            _bern.setdefault(n, p)
    return p


def euler_poly(n: int) -> RationalPoly:
    """``E_n(x)`` from ``2 e^{xt} / (e^t + 1)``.

    Multiplying the generating function by ``e^t + 1`` gives
    ``E_n(x) = x**n - 1/2 * sum_{k<n} C(n,k) E_k(x)``.
    """
    if n < 0:
        raise DomainError("index must be nonnegative")
    p = _euler.get(n)
    if p is None:
        acc = RationalPoly([0] * n + [1])
        for k in range(n):
            acc = acc - Fraction(math.comb(n, k), 2) * euler_poly(k)
        p = acc
        with _lock:
            _euler.setdefault(n, p)
    return p


def bernoulli_higher_poly(r: int, k: int) -> RationalPoly:
    """``B_k^<r>(x)``: ``k!`` times the ``t**k`` coefficient of ``(t e^{xt}/(e^t-1))**r``.

    Built as an ``r``-fold Cauchy product of exponential generating series,
    ``B_k^<r> = sum_i C(k,i) B_i^<r-1> B_{k-i}``.
    """
    if r < 1 or k < 0:
        raise DomainError("need r >= 1 and k >= 0")
    if r == 1:
        return bernoulli_poly(k)
    p = _higher.get((r, k))
    if p is None:
        acc = RationalPoly()
        for i in range(k + 1):
            acc = acc + math.comb(k, i) * bernoulli_higher_poly(r - 1, i) * bernoulli_poly(k - i)
        p = acc
        with _lock:
            _higher.setdefault((r, k), p)
    return p


def scaled_B(r: int, k: int, z, omega2, ctx: PrecCtx):
    """``(2 pi i / omega2)**k * B_k^<r>(z)``: Laurent data of the ``r``-th power of F."""
    mp = ctx.mp
    w2 = to_complex(omega2, ctx)
    if w2 == 0:
        raise DomainError("omega2 must be nonzero")
    val = bernoulli_higher_poly(r, k).evaluate(z, ctx)
    if k == 0:
        return val
    return (2 * mp.pi * mp.j / w2) ** k * val


def c_h(n: int, h: int, ctx: PrecCtx | None = None):
    """Root-of-unity sum ``sum_{j<n} eta**(j(1-h))`` with ``eta = e^{pi i/n}``.

    Odd ``h`` gives an exact integer; even ``h`` needs ``ctx`` and returns
    ``2 / (1 - eta**(1-h))``.
    """
    if n < 2:
        raise DomainError("n must be >= 2")
    if (h - 1) % (2 * n) == 0:
        return Fraction(n)
    if h % 2:
        return Fraction(0)
    if ctx is None:
        raise DomainError("even h gives a non-rational value; pass a PrecCtx")
    mp = ctx.mp
    eta_pow = mp.expjpi(mp.mpf(1 - h) / n)
    return 2 / (1 - eta_pow)


def c_h_sum(n: int, h: int, ctx: PrecCtx):
    """The defining sum of :func:`c_h`, evaluated term by term."""
    mp = ctx.mp
    return mp.fsum(mp.expjpi(mp.mpf(j * (1 - h)) / n) for j in range(n))

