"""Series built from hyperbolic sine and cosine factors.

Every factor ``1/sinh(m pi i/tau)`` and ``1/cosh((m+1/2) pi i/tau)`` decays
like ``exp(-alpha |m|)`` with ``alpha = pi Re(i/tau) > 0``; truncation
points are chosen from that bound.  Powers ``m**s`` always have a positive
real base.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .lattice import (
    LatticeSpec,
    SummationOrder,
    lim_sum,
    row_sum,
    symmetric_limit,
    z2_series,
)
from .mpcore import ConvergenceError, DomainError, PoleError, PrecCtx, cpow, hurwitz_zeta, to_complex, to_real
from .polys import bernoulli_poly, c_h

__all__ = [
    "s1",
    "s1_deriv",
    "c1",
    "s2_series",
    "c2_series",
    "gfrak2",
    "gfrak2_rhs",
    "g_script",
    "mellin_lhs",
    "mellin_rhs",
    "sinh_product_sum",
    "coth_power_sum",
    "sinh_power_sum",
    "prop_p_zeta_rhs",
    "lemma_l1_sum",
    "zeta_q",
    "f_q",
]


def _tau(tau, ctx: PrecCtx):
    t = to_complex(tau, ctx)
    if t.imag <= 0:
        raise DomainError("tau must lie in the upper half-plane")
    return t


def _alpha(tau, mp):
    """Decay rate ``pi Re(i/tau)`` of ``1/sinh(m pi i/tau)``."""
    return mp.pi * (mp.j / tau).real


def csch(x, mp):
    """``1/sinh(x)`` without forming ``sinh`` of a large argument."""
    if x.real > 0:
        return -2 * mp.exp(-x) / mp.expm1(-2 * x)
    if x.real < 0:
        return -csch(-x, mp)
    sh = mp.sinh(x)
    if abs(sh) < mp.eps * 16:
        raise PoleError("sinh vanishes", point=x)
    return 1 / sh


def sech(x, mp):
    if x.real < 0:
        x = -x
    e = mp.exp(-x)
    return 2 * e / (1 + e * e)


def _cutoff(rate: float, power: float, ctx: PrecCtx, extra_digits: float = 3.0, start: int = 1) -> int:
    """Smallest ``M`` with ``e^{-rate m} m^power`` below ``10**-(working+extra)`` of its peak for all ``m >= M``."""
    if rate <= 0:
        raise DomainError("series has no exponential decay")
    target = -(ctx.working + extra_digits) * math.log(10) + math.log(max(1e-300, 1 - math.exp(-rate)))
    peak = -math.inf
    m = max(start, 1)
    while True:
        val = -rate * m + power * math.log(m)
        peak = max(peak, val)
        if m * rate > power and val - peak < target:
            return m
        m += 1
        if m > 10**7:
            raise ConvergenceError("truncation point out of range")


def _real_power(s):
    return float(s.real) if hasattr(s, "real") else float(s)


# ---------------------------------------------------------------------------
# single series


def s1(s, tau, ctx: PrecCtx, terms: int | None = None):
    """``S_1(s; tau) = sum_{m>=1} (-1)^m / (sinh(m pi i/tau) m^s)``."""
    mp = ctx.mp
    s, tau = to_complex(s, ctx), _tau(tau, ctx)
    x = mp.pi * mp.j / tau
    M = terms or _cutoff(float(_alpha(tau, mp)), -_real_power(s), ctx)
    out = []
    for m in range(1, M + 1):
        t = csch(m * x, mp) * mp.power(m, -s)
        out.append(-t if m % 2 else t)
    return mp.fsum(out)


def s1_deriv(s, tau, ctx: PrecCtx, terms: int | None = None):
    """``d/ds S_1(s; tau) = -sum (-1)^m log(m) / (sinh(m pi i/tau) m^s)``."""
    mp = ctx.mp
    s, tau = to_complex(s, ctx), _tau(tau, ctx)
    x = mp.pi * mp.j / tau
    M = terms or _cutoff(float(_alpha(tau, mp)), -_real_power(s) + 1, ctx)
    out = []
    for m in range(2, M + 1):
        t = csch(m * x, mp) * mp.log(m) * mp.power(m, -s)
        out.append(t if m % 2 else -t)
    return mp.fsum(out)


def c1(s, tau, ctx: PrecCtx, terms: int | None = None):
    """``sum_{m>=0} (-1)^m / (cosh((m+1/2) pi i/tau) (m+1/2)^s)``.

    At ``tau = i`` this is Ramanujan's series with ``cosh((m+1/2) pi)``.
    """
    mp = ctx.mp
    s, tau = to_complex(s, ctx), _tau(tau, ctx)
    x = mp.pi * mp.j / tau
    M = terms or _cutoff(float(_alpha(tau, mp)), -_real_power(s), ctx)
    half = mp.mpf(1) / 2
    out = []
    for m in range(0, M + 1):
        t = sech((m + half) * x, mp) * mp.power(m + half, -s)
        out.append(-t if m % 2 else t)
    return mp.fsum(out)


# ---------------------------------------------------------------------------
# antidiagonal double series


def _antidiagonal_cutoffs(tau, s, ctx: PrecCtx, cutoff_scale: float):
    mp = ctx.mp
    alpha = float(_alpha(tau, mp))
    # antidiagonal K carries K terms of size e^{-alpha K}, weighted by K^{-s}
    kmax = _cutoff(alpha, 1 - _real_power(s), ctx)
    # off the central stretch the product gains e^{-2 alpha} per step
    spread = _cutoff(2 * alpha, 0, ctx)
    return int(math.ceil(kmax * cutoff_scale)), int(math.ceil(spread * cutoff_scale))


def s2_series(s, tau, ctx: PrecCtx, cutoff_scale: float = 1.0):
    """``S_2(s; tau)``: sum over ``m, n != 0``, ``m + n > 0`` of
    ``(-1)^{m+n} / (sinh(m pi i/tau) sinh(n pi i/tau) (m+n)^s)``.

    Grouped on antidiagonals ``K = m + n``.
    """
    mp = ctx.mp
    s, tau = to_complex(s, ctx), _tau(tau, ctx)
    x = mp.pi * mp.j / tau
    kmax, spread = _antidiagonal_cutoffs(tau, s, ctx, cutoff_scale)
    cache: dict[int, object] = {}

    def cs(j):
        v = cache.get(j)
        if v is None:
            v = cache[j] = csch(j * x, mp)
        return v

    total = []
    for K in range(1, kmax + 1):
        diag = mp.fsum(cs(m) * cs(K - m) for m in range(-spread, K + spread + 1) if m != 0 and m != K)
        w = diag * mp.power(K, -s)
        total.append(-w if K % 2 else w)
    return mp.fsum(total)


def c2_series(s, tau, ctx: PrecCtx, cutoff_scale: float = 1.0):
    """``C_2(s; tau)``: sum over ``m + n + 1 > 0`` of
    ``(-1)^{m+n} / (cosh((m+1/2) pi i/tau) cosh((n+1/2) pi i/tau) (m+n+1)^s)``.

    Grouped on antidiagonals ``K = m + n + 1`` and summed term by term.
    """
    mp = ctx.mp
    s, tau = to_complex(s, ctx), _tau(tau, ctx)
    x = mp.pi * mp.j / tau
    half = mp.mpf(1) / 2
    kmax, spread = _antidiagonal_cutoffs(tau, s, ctx, cutoff_scale)
    cache: dict[int, object] = {}

    def sh(j):
        v = cache.get(j)
        if v is None:
            v = cache[j] = sech((j + half) * x, mp)
        return v

    total = []
    for K in range(1, kmax + 1):
        diag = mp.fsum(sh(m) * sh(K - 1 - m) for m in range(-spread, K + spread))
        w = diag * mp.power(K, -s)
        total.append(w if K % 2 else -w)
    return mp.fsum(total)


def c2_antidiagonal(K: int, tau, ctx: PrecCtx):
    """``sum_m 1/(cosh((m+1/2) pi i/tau) cosh((K-m-1/2) pi i/tau))`` for one antidiagonal."""
    mp = ctx.mp
    tau = _tau(tau, ctx)
    x = mp.pi * mp.j / tau
    half = mp.mpf(1) / 2
    spread = _cutoff(2 * float(_alpha(tau, mp)), 0, ctx)
    return mp.fsum(sech((m + half) * x, mp) * sech((K - 1 - m + half) * x, mp) for m in range(-spread, K + spread))


# ---------------------------------------------------------------------------
# hyperbolic Eisenstein analogues


def gfrak2(s1_: int, k: int, tau, ctx: PrecCtx, method: str = "lipschitz"):
    """``sum_{m != 0} sum_n (-1)^n / (sinh(m pi i/tau) m^{s1} (m + n tau)^k)`` for ``k >= 2``.

    The inner alternating sum is ``tau^-k R_k(m/tau, 1/2)`` (Lipschitz) or,
    with ``method="paired"``, the extrapolated sum of ``(n, -n)`` pairs.
    """
    if int(k) != k or k < 2:
        raise DomainError("gfrak2 needs an integer k >= 2")
    mp = ctx.mp
    tau = _tau(tau, ctx)
    s = to_complex(s1_, ctx)
    x = mp.pi * mp.j / tau
    half = mp.mpf(1) / 2
    M = _cutoff(float(_alpha(tau, mp)), max(0.0, -_real_power(s)), ctx)

    def inner(m):
        if method == "paired":
            return symmetric_limit(lambda n: (-1) ** (n % 2) * cpow(m + n * tau, -k, ctx), ctx)
        if method != "lipschitz":
            raise DomainError(f"unknown method {method!r}")
        return row_sum(k, m / tau, half, ctx) / tau**k

    total = []
    for m in range(1, M + 1):
        for mm in (m, -m):
            total.append(csch(mm * x, mp) * cpow(mm, -s, ctx) * inner(mm))
    return mp.fsum(total)


def gfrak2_rhs(s, k: int, tau, ctx: PrecCtx):
    """``(tau/(pi i)) sum_nu (2 pi i/tau)^{2 nu}/(2 nu)! B_{2nu}(1/2) Z_2(s, k+1-2nu; tau)``."""
    mp = ctx.mp
    tau = _tau(tau, ctx)
    total = []
    for nu in range(k // 2 + 1):
        b = bernoulli_poly(2 * nu)(Fraction(1, 2))
        if b == 0:
            continue
        coeff = (2 * mp.pi * mp.j / tau) ** (2 * nu) / mp.factorial(2 * nu) * (mp.mpf(b.numerator) / b.denominator)
        total.append(coeff * z2_series(s, k + 1 - 2 * nu, tau, ctx))
    return tau / (mp.pi * mp.j) * mp.fsum(total)


def _exact_or_real(v, ctx):
    # exact inputs (floats by their binary value) keep boundary tests exact
    if isinstance(v, (int, Fraction)) or (isinstance(v, float) and math.isfinite(v)):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError:
            pass
    return to_real(v, ctx)


def _frac(v):
    return v - math.floor(v)


def g_script(k: int, r: int, x, y, z, lat: LatticeSpec, order, ctx: PrecCtx, method: str = "closed"):
    """Hyperbolic sine analogue of a twisted Eisenstein series.

    ``sum_{m != 0, n} (-1)^{rn} sinh(m pi i/tau)^{-r}
    e^{2 pi i (m (x + r(z-1/2)/tau) + n (y + r(z-1/2)))} / (m w1 + n w2)^k``

    For ``k = 1`` (``0 < z < 1``, ``y + rz`` not an integer) and for ``k = 2``
    at ``z`` in ``{0, 1}`` (``(x, y) != (0, 0)``) the value depends on a
    symmetric limit and ``order`` selects it; otherwise the series converges
    absolutely.  ``method="closed"`` evaluates an inner ``n``-limit by
    Lipschitz summation (the ``n``-twist is ``e^{2 pi i n (y + rz)}``);
    ``method="direct"`` sums terms only.
    """
    if int(k) != k or k < 1 or int(r) != r or r < 1:
        raise DomainError("k and r must be positive integers")
    k, r = int(k), int(r)
    mp = ctx.mp
    order = SummationOrder.parse(order)
    w1, w2, tau = lat.periods(ctx)
    xe, ye, ze = _exact_or_real(x, ctx), _exact_or_real(y, ctx), _exact_or_real(z, ctx)
    if not 0 <= ze <= 1:
        raise DomainError("z must lie in [0, 1]")
    beta = ye + r * ze
    origin = _frac(xe) == 0 and _frac(ye) == 0
    if k == 1:
        if not 0 < ze < 1 or _frac(beta) == 0:
            raise DomainError("k = 1 needs 0 < z < 1 and y + r z not an integer")
    elif k == 2 and ze in (0, 1) and origin:
        raise DomainError("k = 2 at z in {0, 1} needs (x, y) != (0, 0)")
    xr, yr, zr = (to_real(v, ctx) if not isinstance(v, Fraction) else mp.mpf(v.numerator) / v.denominator for v in (xe, ye, ze))
    br = yr + r * zr
    half = mp.mpf(1) / 2
    xarg = mp.pi * mp.j / tau
    cache: dict[int, object] = {}

    def amp(m):
        v = cache.get(m)
        if v is None:
            v = csch(m * xarg, mp) ** r * mp.exp(2 * mp.pi * mp.j * m * (xr + r * (zr - half) / tau))
            cache[m] = v
        return v

    def term(m, n):
        if m == 0:
            return mp.mpc(0)
        return amp(m) * mp.expjpi(2 * n * br) * cpow(m * w1 + n * w2, -k, ctx)

    alpha = float(_alpha(tau, mp))
    zf = float(zr)
    m_rate = 2 * r * alpha * min(zf, 1 - zf)
    m_support = _cutoff(m_rate, 0, ctx) if m_rate > 0 else None

    if order is SummationOrder.M_FIRST_THEN_N and method == "closed":
        beta_arg = Fraction(beta) if isinstance(beta, Fraction) else br

        def inner(m):
            if m == 0:
                return mp.mpc(0)
            return amp(m) * row_sum(k, m * w1 / w2, beta_arg, ctx) / w2**k

        return lim_sum(term, order, ctx, inner_closed_form=inner, m_support=m_support)
    if method not in ("closed", "direct"):
        raise DomainError(f"unknown method {method!r}")
    return lim_sum(term, order, ctx, m_support=m_support)


# ---------------------------------------------------------------------------
# root-of-unity products


def _mellin_check(n, p, y):
    if int(n) != n or n < 2:
        raise DomainError("n must be an integer >= 2")
    if int(p) != p:
        raise DomainError("p must be an integer")
    if 0 < y < 1:
        return
    if y in (0, 1) and 2 * p > n:
        return
    raise DomainError("need 0 < y < 1, or y in {0, 1} with p > n/2")


def mellin_lhs(n: int, p: int, y, ctx: PrecCtx):
    """``C_{2p+1} sum_{m != 0} cos(2 m pi y)/m^{2p+1-n} prod_j cosh(2 m pi i eta^j (y-1/2))/sinh(m pi i eta^j)``.

    ``eta = e^{pi i/n}`` and ``j = 1..n-1``.  The summand is even in ``m``.
    For ``y`` in ``{0, 1}`` the product tends to ``(-1)^{n-1}``, which is
    split off and summed as a zeta value.
    """
    ye = _exact_or_real(y, ctx)
    _mellin_check(n, p, ye)
    mp = ctx.mp
    n, p = int(n), int(p)
    yr = ye if not isinstance(ye, Fraction) else mp.mpf(ye.numerator) / ye.denominator
    C = c_h(n, 2 * p + 1, ctx)
    if C == 0:
        return mp.mpc(0)
    C = mp.mpc(C) if not isinstance(C, Fraction) else mp.mpf(C.numerator) / C.denominator
    e = 2 * p + 1 - n
    etas = [mp.expjpi(mp.mpf(j) / n) for j in range(1, n)]
    half = mp.mpf(1) / 2
    boundary = ye in (0, 1)
    limit = (-1) ** (n - 1)

    def prod(m):
        acc = mp.mpc(1)
        for et in etas:
            w = m * mp.pi * mp.j * et
            acc *= mp.cosh(2 * w * (yr - half)) * csch(w, mp)
        return acc

    rate = sum(math.sin(j * math.pi / n) for j in range(1, n)) * math.pi
    if boundary:
        rate = 2 * math.pi * min(math.sin(j * math.pi / n) for j in range(1, n))
    else:
        rate *= 1 - abs(2 * float(yr) - 1)
    M = _cutoff(rate, max(0.0, -e), ctx)
    total = []
    for m in range(1, M + 1):
        P = prod(m)
        if boundary:
            P -= limit
        total.append(mp.cospi(2 * m * yr) * P * mp.power(m, -e))
    s = mp.fsum(total)
    if boundary:
        s += limit * hurwitz_zeta(e, 1, ctx)
    return 2 * C * s


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def mellin_rhs(n: int, p: int, y, ctx: PrecCtx):
    """``-2^{n-1} (2 pi i)^{2p+1-n} eta^{-n(n-1)/2} sum prod_nu B_{2 m_nu}(y)/(2 m_nu)! eta^{2(nu-1) m_nu}``."""
    ye = _exact_or_real(y, ctx)
    _mellin_check(n, p, ye)
    mp = ctx.mp
    n, p = int(n), int(p)
    if p < 0:
        return mp.mpc(0)
    eta = mp.expjpi(mp.mpf(1) / n)
    vals = {}
    for mv in range(p + 1):
        b = bernoulli_poly(2 * mv)
        if isinstance(ye, Fraction):
            q = b(ye) / math.factorial(2 * mv)
            vals[mv] = mp.mpf(q.numerator) / q.denominator
        else:
            vals[mv] = b.evaluate(ye, ctx).real / math.factorial(2 * mv)
    total = []
    for comp in _compositions(p, n):
        term = mp.mpc(1)
        for nu, mv in enumerate(comp):
            term *= vals[mv] * eta ** (2 * nu * mv)
        total.append(term)
    pref = -mp.mpf(2) ** (n - 1) * (2 * mp.pi * mp.j) ** (2 * p + 1 - n) / eta ** (n * (n - 1) // 2)
    return pref * mp.fsum(total)


def sinh_product_sum(s, args, ctx: PrecCtx, alternating: bool = False):
    """``sum_{m>=1} (+-1)^m / (prod_w sinh(m pi i w) m^s)`` over a list of ``w``.

    Every ``w`` needs ``Im w != 0`` for the factors to grow; a real integer
    ``w`` makes every term singular.
    """
    mp = ctx.mp
    s = to_complex(s, ctx)
    ws = [to_complex(w, ctx) for w in args]
    if not ws:
        raise DomainError("need at least one sinh factor")
    for w in ws:
        if abs(w.imag) < mp.mpf(10) ** (-(ctx.working // 2)):
            if abs(w.real - mp.nint(w.real)) < mp.mpf(10) ** (-(ctx.working // 2)):
                raise PoleError("sinh(m pi i w) vanishes for every m: w is an integer", point=w)
            raise DomainError("a factor with real w does not decay")
    rate = math.pi * sum(abs(float(w.imag)) for w in ws)
    M = _cutoff(rate, -_real_power(s), ctx)
    total = []
    for m in range(1, M + 1):
        acc = mp.power(m, -s)
        for w in ws:
            acc *= csch(m * mp.pi * mp.j * w, mp)
        total.append(-acc if alternating and m % 2 else acc)
    return mp.fsum(total)


def coth_power_sum(s: int, w, power: int, ctx: PrecCtx):
    """``sum_{m>=1} coth(m pi i w)^power / m^s`` for integer ``s >= 2``.

    ``coth(m pi i w)`` tends to ``L = sign(-Im w)``; the series of
    ``coth^power - L^power`` decays exponentially and ``L^power zeta(s)`` is
    added back.
    """
    mp = ctx.mp
    if int(s) != s or s < 2:
        raise DomainError("s must be an integer >= 2")
    w = to_complex(w, ctx)
    if w.imag == 0:
        raise DomainError("w must not be real")
    L = -1 if w.imag > 0 else 1
    rate = 2 * math.pi * abs(float(w.imag))
    M = _cutoff(rate, -float(s), ctx)
    total = []
    for m in range(1, M + 1):
        v = m * mp.pi * mp.j * w
        c = mp.cosh(v) * csch(v, mp)
        total.append((c**power - L**power) * mp.power(m, -s))
    return mp.fsum(total) + L**power * hurwitz_zeta(int(s), 1, ctx)


# ---------------------------------------------------------------------------
# q-zeta material


def sinh_power_sum(k: int, ctx: PrecCtx):
    """``sum_{m>=1} sinh(m pi)^{-2k}``."""
    if int(k) != k or k < 1:
        raise DomainError("k must be a positive integer")
    mp = ctx.mp
    M = _cutoff(2 * k * math.pi, 0, ctx)
    return mp.fsum(csch(mp.mpf(m) * mp.pi, mp) ** (2 * k) for m in range(1, M + 1))


def prop_p_zeta_rhs(k: int, ctx: PrecCtx):
    """``(1/pi) sum_{m>=1} sinh(m pi)^{1-2k} lim_N sum_{|n|<=N} (-1)^n/(m + n i)``.

    The inner alternating limit is summed numerically (paired terms with
    extrapolation), not in closed form.
    """
    if int(k) != k or k < 1:
        raise DomainError("k must be a positive integer")
    mp = ctx.mp
    M = _cutoff((2 * k - 1) * math.pi, 0, ctx)
    total = []
    for m in range(1, M + 1):
        inner = symmetric_limit(lambda n, m=m: (-1) ** (n % 2) / mp.mpc(m, n), ctx)
        total.append(csch(mp.mpf(m) * mp.pi, mp) ** (2 * k - 1) * inner)
    return mp.fsum(total) / mp.pi


def lemma_l1_sum(k: int, q, ctx: PrecCtx):
    """``sum_{m in Z} 1/((q^{2m+1} + q^{-2m-1})(q^{2(m-k)+1} + q^{-2(m-k)-1}))`` for ``|q| < 1``."""
    mp = ctx.mp
    q = to_complex(q, ctx)
    if not 0 < abs(q) < 1:
        raise DomainError("need 0 < |q| < 1")
    rate = -2 * math.log(float(abs(q)))
    M = _cutoff(rate, 0, ctx) + abs(int(k)) + 1

    def inv(a):
        # 1/(q^a + q^-a) = q^|a| / (1 + q^{2|a|})
        a = abs(a)
        qa = q**a
        return qa / (1 + qa * qa)

    return mp.fsum(inv(2 * m + 1) * inv(2 * (m - k) + 1) for m in range(-M, M + 1))


def _check_nome(q, ctx):
    q = to_complex(q, ctx)
    if not 0 < abs(q) < 1:
        raise DomainError("need 0 < |q| < 1")
    return q


def f_q(s, t, q, ctx: PrecCtx):
    """``(1-q)^s sum_{m>=1} q^{mt} / (1-q^m)^s`` with principal powers."""
    mp = ctx.mp
    s, t = to_complex(s, ctx), to_complex(t, ctx)
    q = _check_nome(q, ctx)
    logq = mp.log(q)
    rate = -float((t * logq).real)
    if rate <= 0:
        raise DomainError("the series diverges: need Re(t log q) < 0")
    M = _cutoff(rate, 0, ctx)
    total = []
    for m in range(1, M + 1):
        qm = q**m
        total.append(cpow(qm, t, ctx) * cpow(1 - qm, -s, ctx) if not _int_like(t) else qm ** int(t.real) * cpow(1 - qm, -s, ctx))
    return cpow(1 - q, s, ctx) * mp.fsum(total)


def _int_like(v):
    return v.imag == 0 and v.real == int(v.real)


def zeta_q(s, q, ctx: PrecCtx):
    """``zeta_q(s) = f_q(s, s - 1)``."""
    s = to_complex(s, ctx)
    return f_q(s, s - 1, q, ctx)
