"""Arbitrary-precision numeric substrate.

Every numeric routine in the package takes an explicit :class:`PrecCtx`.
The context owns a private :class:`mpmath.MPContext`, so no routine ever
touches mpmath's global precision.  Values produced under a context are
plain ``mpf``/``mpc`` numbers of that context.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import NamedTuple

import mpmath

__all__ = [
    "PrecCtx",
    "HypseriesError",
    "DomainError",
    "PoleError",
    "ConvergenceError",
    "PrecisionError",
    "to_real",
    "to_complex",
    "pi",
    "agm",
    "cpow",
    "hurwitz_zeta",
    "bernoulli_number",
    "zeta_even",
    "PiMultiple",
    "rational_reconstruct",
]


class HypseriesError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(HypseriesError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """The operation was evaluated at (or numerically on top of) a pole."""

    def __init__(self, message: str, point=None):
        super().__init__(message)
        self.point = point


class ConvergenceError(HypseriesError, ArithmeticError):
    """A limit did not settle within the iteration budget."""


class PrecisionError(HypseriesError, ArithmeticError):
    """The working precision is too low for the requested result."""


@dataclass(frozen=True)
class PrecCtx:
    """Requested decimal digits plus guard digits.

    ``digits`` is the accuracy promised for final answers; all arithmetic
    runs at ``working = digits + guard`` decimal digits.
    """

    digits: int = 30
    guard: int = 20
    _local: threading.local = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.digits) != self.digits or self.digits < 10:
            raise DomainError(f"digits must be an integer >= 10, got {self.digits!r}")
        if int(self.guard) != self.guard or self.guard < 20:
            raise DomainError(f"guard must be an integer >= 20, got {self.guard!r}")
        object.__setattr__(self, "_local", threading.local())

    @property
    def working(self) -> int:
        return self.digits + self.guard

    @property
    def mp(self) -> mpmath.MPContext:
        """Per-thread mpmath context at the working precision.

        Some mpmath routines raise the precision of their context while they
        run, so each thread gets its own context.
        """
        mp = getattr(self._local, "mp", None)
        if mp is None:
            mp = mpmath.MPContext()
            mp.dps = self.working
            self._local.mp = mp
        return mp

    @property
    def eps(self):
        """``10**-working`` as a number of this context."""
        return self.mp.mpf(10) ** (-self.working)

    @property
    def tol(self):
        """``10**-digits``: the accuracy target of final answers."""
        return self.mp.mpf(10) ** (-self.digits)

    def refined(self, extra: int = 20) -> "PrecCtx":
        return PrecCtx(self.digits + extra, self.guard)

    def for_terms(self, n_terms: int) -> "PrecCtx":
        """Context whose guard also absorbs rounding over ``n_terms`` additions."""
        extra = math.ceil(math.log10(max(n_terms, 1)))
        return PrecCtx(self.digits, self.guard + extra)


def _parse_real(s: str, mp):
    if "/" in s:
        f = Fraction(s)
        return mp.mpf(f.numerator) / f.denominator
    return mp.mpf(s)


def _parse_string(text: str, mp):
    """Parse ``"p/q"``, decimals, complex literals ``"a+bi"``, ``"2i"``, ``"-i"`` and ``"rho"``."""
    s = text.strip().replace(" ", "").replace("j", "i")
    if not s:
        raise DomainError("empty numeric literal")
    if s in ("rho", "-rho"):
        r = mp.expjpi(mp.mpf(2) / 3)
        return -r if s[0] == "-" else r
    try:
        if not s.endswith("i"):
            return _parse_real(s, mp)
        body = s[:-1]
        split = None
        for pos in range(len(body) - 1, 0, -1):
            if body[pos] in "+-" and body[pos - 1] not in "eE":
                split = pos
                break
        re_part, im_part = ("0", body) if split is None else (body[:split], body[split:])
        if im_part in ("", "+", "-"):
            im_part += "1"
        return mp.mpc(_parse_real(re_part, mp), _parse_real(im_part, mp))
    except (ValueError, TypeError, ZeroDivisionError):
        raise DomainError(f"malformed numeric literal {text!r}") from None


def _convert(x, mp):
    if isinstance(x, Fraction) or (isinstance(x, _RationalABC) and not isinstance(x, int)):
        return mp.mpf(x.numerator) / x.denominator
    if isinstance(x, str):
        return _parse_string(x, mp)
    return mp.mpmathify(x)


def to_real(x, ctx: PrecCtx):
    """Convert ``x`` to a real number at the working precision of ``ctx``."""
    v = _convert(x, ctx.mp)
    if isinstance(v, ctx.mp.mpc):
        if v.imag != 0:
            raise DomainError(f"expected a real value, got {x!r}")
        v = v.real
    if not ctx.mp.isfinite(v):
        raise DomainError(f"non-finite value {x!r}")
    return +v


def to_complex(x, ctx: PrecCtx):
    """Convert ``x`` to a complex number at the working precision of ``ctx``."""
    v = ctx.mp.mpc(_convert(x, ctx.mp))
    if not ctx.mp.isfinite(v):
        raise DomainError(f"non-finite value {x!r}")
    return v


def pi(ctx: PrecCtx):
    return +ctx.mp.pi


def agm(a, b, ctx: PrecCtx):
    """Arithmetic-geometric mean of two positive reals."""
    mp = ctx.mp
    a, b = to_real(a, ctx), to_real(b, ctx)
    if a <= 0 or b <= 0:
        raise DomainError("agm requires positive arguments")
    tol = ctx.eps * max(a, b)
    for _ in range(10 * ctx.working):
        if abs(a - b) <= tol:
            return (a + b) / 2
        a, b = (a + b) / 2, mp.sqrt(a * b)
    raise ConvergenceError("agm iteration did not converge")


def _integer_value(x, mp):
    if x.imag != 0:
        return None
    r = x.real
    if mp.isint(r):
        return int(r)
    return None


def cpow(base, exponent, ctx: PrecCtx):
    """Principal power ``base**exponent``.

    Integer exponents use exact binary powering; anything else is
    ``exp(exponent * log(base))`` with ``arg(log)`` in ``(-pi, pi]``.
    """
    mp = ctx.mp
    base, exponent = to_complex(base, ctx), to_complex(exponent, ctx)
    if base == 0:
        if exponent.real <= 0:
            raise DomainError("0 raised to an exponent with nonpositive real part")
        return mp.mpc(0)
    n = _integer_value(exponent, mp)
    if n is not None:
        return base**n
    return mp.exp(exponent * mp.log(base))


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # Akiyama-Tanigawa gives B_1 = +1/2; flipped below to the t/(e^t - 1) convention.
    out = []
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    if n >= 1:
        out[1] = -out[1]
    return tuple(out)


_bern_lock = threading.Lock()
_bern_cache: list[Fraction] = []


def bernoulli_number(n: int) -> Fraction:
    """Exact ``B_n`` with ``B_1 = -1/2`` (generating function ``t/(e^t - 1)``)."""
    if n < 0:
        raise DomainError("Bernoulli index must be nonnegative")
    if n < len(_bern_cache):
        return _bern_cache[n]
    with _bern_lock:
        if n >= len(_bern_cache):
            size = max(n, 2 * len(_bern_cache), 32)
            _bern_cache[:] = _bernoulli_table(size)
    return _bern_cache[n]


class PiMultiple(NamedTuple):
    """Exact value ``coeff * pi**power``."""

    coeff: Fraction
    power: int

    def evaluate(self, ctx: PrecCtx):
        return to_real(self.coeff, ctx) * ctx.mp.pi**self.power


def zeta_even(n: int) -> PiMultiple:
    """Riemann zeta at a positive even integer as an exact multiple of pi**n."""
    if n != int(n) or n < 2 or n % 2:
        raise DomainError(f"zeta_even needs an even integer >= 2, got {n!r}")
    k = n // 2
    coeff = (-1) ** (k + 1) * bernoulli_number(n) * Fraction(2**n, 2 * math.factorial(n))
    return PiMultiple(coeff, n)


def hurwitz_zeta(s, a, ctx: PrecCtx):
    """``sum_{m>=0} (a + m)**(-s)`` by Euler-Maclaurin summation.

    Direct summation runs to a cutoff ``M``; the tail is the integral term,
    the half-term and Bernoulli corrections.  ``M`` is doubled whenever the
    asymptotic correction series stops decreasing before reaching the
    working precision.
    """
    mp = ctx.mp
    s, a = to_complex(s, ctx), to_complex(a, ctx)
    if a.real <= 0:
        raise DomainError("hurwitz_zeta requires Re(a) > 0")
    if s == 1:
        raise PoleError("hurwitz_zeta has a pole at s = 1", point=s)
    eps = ctx.eps
    cutoff = max(math.ceil(0.6 * ctx.working), math.ceil(2 * abs(complex(s))), 10)
    max_order = 4 * ctx.working + 40
    for _ in range(12):
        head = mp.fsum(cpow(a + m, -s, ctx) for m in range(cutoff))
        base = a + cutoff
        inv = 1 / base
        lead = cpow(base, -s, ctx)
        tail = lead * base / (s - 1) + lead / 2
        scale = abs(head) + abs(tail) + eps
        rising = s  # (s)_{2j-1}
        power = lead * inv  # base**(-s-2j+1)
        prev = None
        ok = False
        for j in range(1, max_order):
            term = to_real(bernoulli_number(2 * j), ctx) / mp.factorial(2 * j) * rising * power
            tail += term
            size = abs(term)
            if size <= eps * scale:
                ok = True
                break
            if prev is not None and size > prev:
                break
            prev = size
            rising *= (s + 2 * j - 1) * (s + 2 * j)
            power *= inv * inv
        if ok:
            return head + tail
        cutoff *= 2
    raise ConvergenceError("Euler-Maclaurin tail did not reach working precision")


def rational_reconstruct(x, max_den: int, ctx: PrecCtx):
    """Recover ``p/q`` with ``q <= max_den`` from a high-precision real.

    Walks the continued-fraction convergents of ``x`` and returns the first
    one within ``10**-(digits - 5)`` of ``x``.  Returns ``None`` when no
    convergent qualifies.
    """
    mp = ctx.mp
    if max_den < 1:
        raise DomainError("max_den must be positive")
    needed = 2 * math.log10(max_den) + 10
    if ctx.working < needed:
        raise PrecisionError(
            f"need at least {math.ceil(needed)} working digits for max_den={max_den}"
        )
    x = to_real(x, ctx)
    threshold = mp.mpf(10) ** (-(ctx.digits - 5))
    p0, q0, p1, q1 = 0, 1, 1, 0
    rest = x
    while True:
        a = int(mp.floor(rest))
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        if q1 > max_den:
            return None
        if abs(x - mp.mpf(p1) / q1) < threshold:
            return Fraction(p1, q1)
        frac = rest - a
        if frac == 0:
            return None
        rest = 1 / frac
