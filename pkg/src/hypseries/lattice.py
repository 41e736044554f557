"""Lattice sums over ``m*w1 + n*w2`` and the iterated-limit engine.

Conditionally convergent double series are summed symmetrically in each
index.  A single symmetric limit ``lim_N sum_{|n|<=N}`` is handled in one of
two ways:

* a closed form (Lipschitz summation, see :func:`row_sum`), or
* pairing ``n`` with ``-n`` and handing the paired series to mpmath's
  adaptive Richardson/Shanks extrapolation.

The second route never uses a closed form, so it doubles as the oracle
for the first.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from .mpcore import (
    ConvergenceError,
    DomainError,
    PoleError,
    PrecCtx,
    bernoulli_number,
    cpow,
    hurwitz_zeta,
    to_complex,
    to_real,
    zeta_even,
)
from .polys import bernoulli_poly

__all__ = [
    "SummationOrder",
    "LatticeSpec",
    "accelerated_sum",
    "symmetric_limit",
    "lim_sum",
    "bernoulli_gf_derivs",
    "row_sum",
    "bilateral_hurwitz",
    "periodic_zeta",
    "eisenstein_G",
    "z2_series",
    "katayama_sum",
    "kronecker_sum",
    "barnes_zeta2",
]


class SummationOrder(str, Enum):
    """How a conditionally convergent double series is summed.

    ``M_FIRST_THEN_N`` is ``lim_{M->oo} lim_{N->oo}``, read left to right:
    the ``n``-sum is the inner limit and ``m`` is summed outside it.
    ``N_FIRST_THEN_M`` swaps the roles.  ``SIMULTANEOUS`` grows square
    boxes ``max(|m|, |n|) <= R``.
    """

    SIMULTANEOUS = "simultaneous"
    M_FIRST_THEN_N = "m-first"
    N_FIRST_THEN_M = "n-first"

    @classmethod
    def parse(cls, value) -> "SummationOrder":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {
            "simultaneous": cls.SIMULTANEOUS,
            "sim": cls.SIMULTANEOUS,
            "m-first": cls.M_FIRST_THEN_N,
            "mfirstthenn": cls.M_FIRST_THEN_N,
            "m-first-then-n": cls.M_FIRST_THEN_N,
            "n-first": cls.N_FIRST_THEN_M,
            "nfirstthenm": cls.N_FIRST_THEN_M,
            "n-first-then-m": cls.N_FIRST_THEN_M,
        }
        try:
            return aliases[key]
        except KeyError:
            raise DomainError(f"unknown summation order {value!r}") from None


_CHECK_CTX = PrecCtx(10)


@dataclass(frozen=True)
class LatticeSpec:
    """Periods ``(omega1, omega2)`` with ``omega2/omega1`` in the upper half-plane.

    The periods are stored as given (numbers, fractions or strings such as
    ``"i"``) and converted at the precision of whichever context uses them.
    """

    omega1: object = 1
    omega2: object = "i"

    def __post_init__(self):
        self.periods(_CHECK_CTX)

    def periods(self, ctx: PrecCtx):
        """``(w1, w2, tau)`` as numbers of ``ctx``."""
        w1, w2 = to_complex(self.omega1, ctx), to_complex(self.omega2, ctx)
        if w1 == 0:
            raise DomainError("omega1 must be nonzero")
        tau = w2 / w1
        if tau.imag <= 0:
            raise DomainError("omega2/omega1 must lie in the upper half-plane")
        return w1, w2, tau


# ---------------------------------------------------------------------------
# one-dimensional limits


def _limit_tol(ctx: PrecCtx):
    return ctx.mp.mpf(10) ** (-(ctx.digits + ctx.guard // 2))


def _workprec(ctx: PrecCtx) -> int:
    # Fixed extrapolation precision, so nested sums do not compound it.
    return 4 * (int(ctx.working * 3.33) + 20)


def accelerated_sum(f: Callable[[int], object], ctx: PrecCtx, start: int = 1, maxterms: int | None = None):
    """``sum_{n >= start} f(n)`` with adaptive Richardson/Shanks extrapolation.

    Raises :class:`ConvergenceError` when the extrapolated values do not
    settle to ``10**-(digits + guard/2)`` within the term budget.
    """
    mp = ctx.mp
    if maxterms is None:
        maxterms = 40 * ctx.working
    tol = _limit_tol(ctx)
    try:
        return +mp.nsum(
            lambda n: f(int(n)),
            [start, mp.inf],
            tol=tol,
            strict=True,
            maxterms=maxterms,
            workprec=_workprec(ctx),
        )
    except mp.NoConvergence:
        raise ConvergenceError("series did not converge within the term budget") from None


def symmetric_limit(f: Callable[[int], object], ctx: PrecCtx, maxterms: int | None = None):
    """``lim_N sum_{|n|<=N} f(n)``, summing the pairs ``f(n) + f(-n)``."""
    return f(0) + accelerated_sum(lambda n: f(n) + f(-n), ctx, 1, maxterms)


# ---------------------------------------------------------------------------
# the double-limit engine


def lim_sum(
    term: Callable[[int, int], object],
    order: SummationOrder,
    ctx: PrecCtx,
    inner_closed_form: Optional[Callable[[int], object]] = None,
    m_support: Optional[int] = None,
    maxterms: int | None = None,
):
    """Value of ``sum_{m,n} term(m, n)`` in the requested order.

    Parameters
    ----------
    term
        ``term(m, n)``; excluded lattice points must return 0.
    order
        :class:`SummationOrder`.
    inner_closed_form
        For the iterated orders, the inner limit as a function of the outer
        index (``m`` for ``M_FIRST_THEN_N``, ``n`` for ``N_FIRST_THEN_M``).
    m_support
        When the terms vanish to working precision for ``|m| > m_support``
        the ``m``-direction is summed as a finite range.
    """
    order = SummationOrder.parse(order)
    mp = ctx.mp

    def m_range():
        return range(-m_support, m_support + 1)

    if order is SummationOrder.M_FIRST_THEN_N:
        inner = inner_closed_form or (
            lambda m: symmetric_limit(lambda n: term(m, n), ctx, maxterms)
        )
        if m_support is not None:
            return mp.fsum(inner(m) for m in m_range())
        return symmetric_limit(inner, ctx, maxterms)

    if order is SummationOrder.N_FIRST_THEN_M:
        if inner_closed_form is not None:
            inner = inner_closed_form
        elif m_support is not None:
            def inner(n):
                return mp.fsum(term(m, n) for m in m_range())
        else:
            def inner(n):
                return symmetric_limit(lambda m: term(m, n), ctx, maxterms)
        return symmetric_limit(inner, ctx, maxterms)

    # Simultaneous: a series over square shells max(|m|, |n|) = R.
    def shell(R):
        if m_support is not None and R > m_support:
            return mp.fsum(term(m, R) + term(m, -R) for m in m_range())
        parts = [term(m, R) + term(m, -R) for m in range(-R, R + 1)]
        parts += [term(R, n) + term(-R, n) for n in range(-R + 1, R)]
        return mp.fsum(parts)

    return term(0, 0) + accelerated_sum(shell, ctx, 1, maxterms)


# ---------------------------------------------------------------------------
# Lipschitz summation


_upoly_lock = threading.Lock()
_upolys: list[list[int]] = [[0, 1]]


def _u_poly(i: int) -> list[int]:
    """Integer coefficients of ``d^i/dt^i u`` as a polynomial in ``u = 1/(e^t - 1)``."""
    if i < len(_upolys):
        return _upolys[i]
    with _upoly_lock:
        while len(_upolys) <= i:
            p = _upolys[-1]
            dp = [c * k for k, c in enumerate(p)][1:]
            out = [0] * (len(dp) + 2)
            # u' = -(u + u^2)
            for k, c in enumerate(dp):
                out[k + 1] -= c
                out[k + 2] -= c
            _upolys.append(out)
    return _upolys[i]


def bernoulli_gf_derivs(beta, t, jmax: int, ctx: PrecCtx) -> list:
    """Derivatives ``g^(j)(t)``, ``j = 0..jmax``, of ``g(t) = e^{beta t}/(e^t - 1)``.

    Far from the imaginary axis ``g`` is expanded as a geometric series in
    ``e^{-|t|}``; near it the derivatives of ``u = 1/(e^t - 1)`` are
    polynomials in ``u``.
    """
    mp = ctx.mp
    beta = to_real(beta, ctx) if not isinstance(beta, mp.mpf) else beta
    t = mp.mpc(t)
    eps = ctx.eps
    if abs(t.real) > 1:
        sign = -1 if t.real < 0 else 1
        # t.real < 0: g = -sum_{r>=0} e^{(beta+r)t};  t.real > 0: g = sum_{r>=1} e^{(beta-r)t}
        r = 0 if sign < 0 else 1
        acc = [mp.mpc(0)] * (jmax + 1)
        rate = abs(t.real)
        while True:
            c = beta + r if sign < 0 else beta - r
            e = mp.exp(c * t)
            p = mp.mpf(1)
            for j in range(jmax + 1):
                acc[j] += e * p
                p *= c
            size = abs(e) * (abs(c) + 1) ** jmax
            if size < eps * 1e-3 and r * rate > jmax:
                break
            r += 1
        if sign < 0:
            acc = [-a for a in acc]
        return acc
    em1 = mp.expm1(t)
    if abs(em1) < mp.mpf(10) ** (-(ctx.working // 2)):
        raise PoleError("Lipschitz kernel evaluated at a pole", point=t)
    u = 1 / em1
    ud = []
    for i in range(jmax + 1):
        coeffs = _u_poly(i)
        acc = mp.mpc(0)
        for c in reversed(coeffs):
            acc = acc * u + c
        ud.append(acc)
    e = mp.exp(beta * t)
    out = []
    for j in range(jmax + 1):
        s = mp.fsum(math.comb(j, i) * beta ** (j - i) * ud[i] for i in range(j + 1))
        out.append(e * s)
    return out


def _frac_part(beta, mp):
    return beta - mp.floor(beta)


def row_sum(k: int, a, beta, ctx: PrecCtx, method: str = "lipschitz"):
    """``lim_N sum_{|n|<=N} e^{2 pi i n beta} / (n + a)**k`` for integer ``k >= 1``.

    ``method="lipschitz"`` uses
    ``-(2 pi i)**k / (k-1)! * g^(k-1)(-2 pi i a)`` with
    ``g(t) = e^{{beta} t}/(e^t - 1)``; for ``k = 1`` and integer ``beta`` the
    two one-sided kernels ``{beta} = 0`` and ``1`` are averaged, which is
    what the symmetric limit produces.  ``method="paired"`` sums
    ``f(n) + f(-n)`` with extrapolation; ``method="hurwitz"`` (``k >= 2``,
    rational ``beta``) splits into residue classes and uses Hurwitz zeta
    tails.
    """
    if int(k) != k or k < 1:
        raise DomainError("k must be a positive integer")
    mp = ctx.mp
    a = to_complex(a, ctx)
    if abs(a - mp.nint(a.real)) < mp.mpf(10) ** (-(ctx.working // 2)):
        raise PoleError("a is an integer", point=a)
    if method == "paired":
        beta_r = to_real(beta, ctx)
        return symmetric_limit(lambda n: mp.expjpi(2 * n * beta_r) * cpow(n + a, -k, ctx), ctx)
    if method == "hurwitz":
        return _row_sum_hurwitz(k, a, beta, ctx)
    if method != "lipschitz":
        raise DomainError(f"unknown row_sum method {method!r}")
    b = _frac_part(to_real(beta, ctx), mp)
    t = -2 * mp.pi * mp.j * a
    scale = -((2 * mp.pi * mp.j) ** k) / mp.factorial(k - 1)
    if b == 0 and k == 1:
        g0 = bernoulli_gf_derivs(mp.mpf(0), t, 0, ctx)[0]
        return scale * (g0 + mp.mpf(1) / 2)  # g_1 = g_0 + 1
    return scale * bernoulli_gf_derivs(b, t, k - 1, ctx)[k - 1]


def bilateral_hurwitz(k: int, c, ctx: PrecCtx):
    """``sum_{n in Z} (n + c)**-k`` for ``k >= 2``, via two Hurwitz zeta tails."""
    if k < 2:
        raise DomainError("bilateral_hurwitz needs k >= 2")
    mp = ctx.mp
    c = to_complex(c, ctx)
    n0 = int(mp.floor(abs(c.real))) + 1
    head = mp.fsum(cpow(n + c, -k, ctx) for n in range(-n0 + 1, n0))
    tail = hurwitz_zeta(k, n0 + c, ctx) + (-1) ** k * hurwitz_zeta(k, n0 - c, ctx)
    return head + tail


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    f = Fraction(x).limit_denominator(10**6)
    if abs(float(f) - float(x)) > 1e-15:
        raise DomainError(f"{x!r} is not a rational with a small denominator")
    return f


def _row_sum_hurwitz(k, a, beta, ctx: PrecCtx):
    # n = q*n' + j:  sum_j e^{2 pi i j beta} q^{-k} sum_{n'} (n' + (j + a)/q)^{-k}
    mp = ctx.mp
    b = _as_fraction(beta)
    b -= math.floor(b)
    q = b.denominator
    total = mp.mpc(0)
    for j in range(q):
        phase = mp.expjpi(2 * mp.mpf(j * b.numerator) / q)
        total += phase * bilateral_hurwitz(k, (j + a) / q, ctx)
    return total / mp.mpf(q) ** k


def periodic_zeta(k: int, beta, ctx: PrecCtx):
    """``lim_N sum_{0<|n|<=N} e^{2 pi i n beta} n**-k`` in closed form.

    Equals ``-(2 pi i)**k B_k({beta})/k!``, except ``k = 1`` with integer
    ``beta`` where the symmetric sum vanishes.
    """
    mp = ctx.mp
    if k < 1:
        raise DomainError("k must be >= 1")
    if isinstance(beta, (int, Fraction, str)):
        b = _as_fraction(beta)
        b -= math.floor(b)
        if k == 1 and b == 0:
            return mp.mpc(0)
        val = bernoulli_poly(k).evaluate(b, ctx)
    else:
        bv = _frac_part(to_real(beta, ctx), mp)
        if k == 1 and bv == 0:
            return mp.mpc(0)
        val = bernoulli_poly(k).evaluate(bv, ctx)
    return -((2 * mp.pi * mp.j) ** k) * val / mp.factorial(k)


# ---------------------------------------------------------------------------
# Eisenstein series


def _check_weight(weight):
    if int(weight) != weight or weight < 2 or weight % 2:
        raise DomainError(f"weight must be an even integer >= 2, got {weight!r}")


def _reduce_tau(tau, mp):
    """Move ``tau`` into the standard fundamental domain.

    Returns ``(tau', factors)`` where ``G(tau) = prod(f**-2k) * G(tau')`` and
    each ``f`` is the ``tau`` at which an inversion was applied.
    """
    factors = []
    for _ in range(200):
        tau = tau - mp.nint(tau.real)
        if abs(tau) >= 1 - mp.mpf(10) ** (-10):
            return tau, factors
        factors.append(tau)
        tau = -1 / tau
    raise ConvergenceError("modular reduction did not terminate")


def _lambert(power: int, q, ctx: PrecCtx, alternating: bool = False, odd_only: bool = False):
    """``sum_{r>=1} (+-1)^r r^power q^r / (1 - q^(r or 2r))``."""
    mp = ctx.mp
    aq = abs(q)
    if aq >= 1:
        raise DomainError("nome must lie inside the unit disc")
    eps = ctx.eps
    total = mp.mpc(0)
    qr = mp.mpc(1)
    r = 0
    log_aq = math.log(float(aq)) if aq > 0 else -1e9
    while True:
        r += 1
        qr *= q
        den = 1 - (qr * qr if odd_only else qr)
        term = mp.mpf(r) ** power * qr / den
        if alternating and r % 2:
            term = -term
        total += term
        bound = math.exp(power * math.log(r + 1) + (r + 1) * log_aq) / (1 - float(aq))
        if bound < float(eps) * 1e-3 * max(1.0, float(abs(total))):
            return total
        if r > 10**6:
            raise ConvergenceError("q-series did not converge")


def _g_qseries(weight: int, tau, ctx: PrecCtx):
    mp = ctx.mp
    k = weight
    base, factors = _reduce_tau(tau, mp)
    q = mp.exp(2 * mp.pi * mp.j * base)
    val = 2 * zeta_even(k).evaluate(ctx) + 2 * (2 * mp.pi * mp.j) ** k / mp.factorial(k - 1) * _lambert(k - 1, q, ctx)
    for f in reversed(factors):
        val = val / f**k
    return val


def _g2_qseries(tau, ctx: PrecCtx):
    mp = ctx.mp
    q = mp.exp(2 * mp.pi * mp.j * tau)
    std = 2 * zeta_even(2).evaluate(ctx) - 8 * mp.pi**2 * _lambert(1, q, ctx)
    # Summing n inside m instead of the standard order costs 2 pi i / tau.
    return std - 2 * mp.pi * mp.j / tau


def _g_level2_qseries(weight: int, tau, ctx: PrecCtx):
    mp = ctx.mp
    k = weight
    Q = mp.exp(mp.pi * mp.j * tau)
    return 2 * (mp.pi * mp.j) ** k / mp.factorial(k - 1) * _lambert(k - 1, Q, ctx, alternating=True, odd_only=True)


def eisenstein_G(weight: int, tau, ctx: PrecCtx, variant: str = "full", method: str = "qseries"):
    """Eisenstein series of the lattice ``Z + tau Z``.

    ``variant="full"``: ``G_w(tau) = sum' (m + n tau)**-w``; weight 2 is summed
    with ``m`` outside and ``n`` inside.  ``variant="level2"``:
    ``sum_{m,n} (2m + 1 + (2n + 1) tau)**-w``.

    ``method="qseries"`` uses the Lambert-series expansions;
    ``method="direct"`` sums lattice rows through :func:`lim_sum`, with
    each row from Hurwitz zeta tails (weight 2: Lipschitz rows).
    """
    _check_weight(weight)
    tau = to_complex(tau, ctx)
    if tau.imag <= 0:
        raise DomainError("tau must lie in the upper half-plane")
    if variant not in ("full", "level2"):
        raise DomainError(f"unknown variant {variant!r}")
    if weight == 2 and variant == "level2":
        raise DomainError("level-2 series of weight 2 is not supported")
    if method == "qseries":
        if variant == "level2":
            return _g_level2_qseries(weight, tau, ctx)
        if weight == 2:
            return _g2_qseries(tau, ctx)
        return _g_qseries(weight, tau, ctx)
    if method != "direct":
        raise DomainError(f"unknown method {method!r}")
    return _g_direct(weight, tau, variant, ctx)


def _g_direct(weight, tau, variant, ctx: PrecCtx):
    mp = ctx.mp
    k = weight
    half = mp.mpf(1) / 2
    if variant == "level2":
        def row(n):
            return bilateral_hurwitz(k, half + (n + half) * tau, ctx) / mp.mpf(2) ** k

        return lim_sum(lambda m, n: 0, SummationOrder.N_FIRST_THEN_M, ctx, inner_closed_form=row)
    if k == 2:
        def row2(m):
            if m == 0:
                return 2 * zeta_even(2).evaluate(ctx) / tau**2
            return row_sum(2, m / tau, 0, ctx) / tau**2

        return lim_sum(lambda m, n: 0, SummationOrder.M_FIRST_THEN_N, ctx, inner_closed_form=row2)

    def row(n):
        if n == 0:
            return 2 * hurwitz_zeta(k, 1, ctx)
        return bilateral_hurwitz(k, n * tau, ctx)

    return lim_sum(lambda m, n: 0, SummationOrder.N_FIRST_THEN_M, ctx, inner_closed_form=row)


# ---------------------------------------------------------------------------
# two-variable and twisted lattice sums


def z2_series(s1: int, s2: int, tau, ctx: PrecCtx):
    """``sum_{m != 0} sum_n m**-s1 (m + n tau)**-s2``, ``n`` summed inside ``m``.

    ``s2 = 1`` is admitted with symmetric inner and outer limits: the inner
    row is then ``(pi/tau) cot(pi m/tau)``, odd in ``m``, so even ``s1`` gives
    0 and odd ``s1 >= 3`` converges.
    """
    if int(s1) != s1 or int(s2) != s2:
        raise DomainError("s1 and s2 must be integers")
    s1, s2 = int(s1), int(s2)
    if s2 < 1:
        raise DomainError("s2 must be >= 1")
    if s2 == 1 and s1 % 2 and s1 < 3:
        raise DomainError("the outer sum diverges for s2 = 1 and odd s1 < 3")
    mp = ctx.mp
    tau = to_complex(tau, ctx)
    if tau.imag <= 0:
        raise DomainError("tau must lie in the upper half-plane")
    if s2 == 1 and s1 % 2 == 0:
        return mp.mpc(0)

    def inner(m):
        if m == 0:
            return mp.mpc(0)
        return mp.mpf(m) ** (-s1) * row_sum(s2, m / tau, 0, ctx) / tau**s2

    return lim_sum(lambda m, n: 0, SummationOrder.M_FIRST_THEN_N, ctx, inner_closed_form=inner)


def _negate(raw, value):
    # keep exact inputs exact so integer twists are detected reliably
    if isinstance(raw, (Fraction, int, str)):
        return -_as_fraction(raw)
    return -value


def _twisted(k, xi, x, y, lat: LatticeSpec, order, ctx: PrecCtx, method: str):
    """``Lim sum e^{-2 pi i (m x + n y)} (xi + m w1 + n w2)**-k`` (origin dropped if ``xi = 0``)."""
    mp = ctx.mp
    order = SummationOrder.parse(order)
    w1, w2, _ = lat.periods(ctx)
    xi = to_complex(xi, ctx)
    xr, yr = to_real(x, ctx), to_real(y, ctx)
    at_origin = xi == 0

    def term(m, n):
        if at_origin and m == 0 and n == 0:
            return mp.mpc(0)
        return mp.expjpi(-2 * (m * xr + n * yr)) * cpow(xi + m * w1 + n * w2, -k, ctx)

    if method == "direct" or order is SummationOrder.SIMULTANEOUS:
        return lim_sum(term, order, ctx)
    if method != "closed":
        raise DomainError(f"unknown method {method!r}")
    if order is SummationOrder.M_FIRST_THEN_N:
        def inner(m):
            if at_origin and m == 0:
                return periodic_zeta(k, _negate(y, yr), ctx) / w2**k
            return mp.expjpi(-2 * m * xr) * row_sum(k, (xi + m * w1) / w2, -yr, ctx) / w2**k
    else:
        def inner(n):
            if at_origin and n == 0:
                return periodic_zeta(k, _negate(x, xr), ctx) / w1**k
            return mp.expjpi(-2 * n * yr) * row_sum(k, (xi + n * w2) / w1, -xr, ctx) / w1**k
    return lim_sum(term, order, ctx, inner_closed_form=inner)


def katayama_sum(j: int, x, y, lat: LatticeSpec, order, ctx: PrecCtx, method: str = "closed"):
    """``Lim sum' e^{-2 pi i (m x + n y)} / (m w1 + n w2)**(j+1)``.

    ``method="closed"`` evaluates the inner limit of an iterated order by
    Lipschitz summation; ``method="direct"`` (and the simultaneous order)
    sums terms with extrapolation only.
    """
    if int(j) != j or j < 0:
        raise DomainError("j must be a nonnegative integer")
    return _twisted(int(j) + 1, 0, x, y, lat, order, ctx, method)


def kronecker_sum(xi, x, y, lat: LatticeSpec, order, ctx: PrecCtx, method: str = "closed"):
    """``Lim sum e^{-2 pi i (m x + n y)} / (xi + m w1 + n w2)``: Kronecker's double series."""
    xi_c = to_complex(xi, ctx)
    if xi_c == 0:
        raise PoleError("xi = 0 is a lattice point", point=xi)
    return _twisted(1, xi_c, x, y, lat, order, ctx, method)


# ---------------------------------------------------------------------------
# Barnes double zeta


def barnes_zeta2(s, y, tau, ctx: PrecCtx):
    """``sum_{m,n>=0} ((1-y)(1+tau) + m + n tau)**-s`` for ``Re s > 2``.

    Each row in ``m`` is a Hurwitz zeta value.  The rows are summed directly
    up to a cutoff ``N`` and the remaining rows by Euler-Maclaurin in ``n``,
    using ``d/dn zeta_H(s, c + n tau) = -s tau zeta_H(s + 1, c + n tau)``.
    """
    mp = ctx.mp
    s = to_complex(s, ctx)
    if s.real <= 2:
        raise DomainError("barnes_zeta2 needs Re(s) > 2")
    yv = to_real(y, ctx)
    if not 0 <= yv < 1:
        raise DomainError("y must lie in [0, 1)")
    tau = to_complex(tau, ctx)
    if tau.imag <= 0:
        raise DomainError("tau must lie in the upper half-plane")
    c0 = (1 - yv) * (1 + tau)

    def zh(sv, a):
        # shift rows whose offset has drifted into Re(a) <= 0
        if a.real > 0:
            return hurwitz_zeta(sv, a, ctx)
        shift = int(mp.floor(-a.real)) + 1
        head = mp.fsum(cpow(a + j, -sv, ctx) for j in range(shift))
        return head + hurwitz_zeta(sv, a + shift, ctx)

    eps = ctx.eps
    cutoff = max(ctx.working, int(2 * abs(complex(s))) + 10)
    for _ in range(8):
        head = mp.fsum(zh(s, c0 + n * tau) for n in range(cutoff))
        aN = c0 + cutoff * tau
        tail = zh(s - 1, aN) / ((s - 1) * tau) + zh(s, aN) / 2
        scale = abs(head) + abs(tail)
        rising = s  # (s)_{2p-1}
        prev = None
        ok = False
        for p in range(1, 4 * ctx.working):
            order = 2 * p - 1
            deriv = (-tau) ** order * rising * zh(s + order, aN)
            b = bernoulli_number(2 * p)
            corr = -mp.mpf(b.numerator) / b.denominator / mp.factorial(2 * p) * deriv
            tail += corr
            size = abs(corr)
            if size <= eps * scale:
                ok = True
                break
            if prev is not None and size > prev:
                break
            prev = size
            rising *= (s + order) * (s + order + 1)
        if ok:
            return head + tail
        cutoff *= 2
    raise ConvergenceError("Euler-Maclaurin tail of the Barnes zeta did not settle")
