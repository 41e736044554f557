"""Lemniscate-type constants, Hurwitz numbers and generalized Hurwitz numbers.

Laurent coefficients are read off numerically by the discrete Cauchy
integral

    c_n ~ (1/K) sum_p f(rho w^p) (rho w^p)^(-n),   w = e^(2 pi i/K),

whose aliasing error is ``O((rho/R)^K)`` for a nearest singularity at
distance ``R``.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .lattice import LatticeSpec, bernoulli_gf_derivs, eisenstein_G
from .mpcore import (
    DomainError,
    PoleError,
    PrecCtx,
    PrecisionError,
    agm,
    rational_reconstruct,
    to_real,
)
from .polys import bernoulli_higher_poly, bernoulli_poly, scaled_B
from .thetafn import kronecker_E0, theta, theta_d0

__all__ = [
    "lemniscate_constants",
    "HurwitzTable",
    "hurwitz_number",
    "laurent_coefficients",
    "gen_hurwitz",
    "k_closed",
    "k_residue",
    "g_from_k",
    "rational_form",
    "TABLE",
]


# ---------------------------------------------------------------------------
# constants

_const_lock = threading.Lock()
_const_cache: dict[int, tuple[str, str]] = {}


def lemniscate_constants(ctx: PrecCtx):
    """``(varpi, varpi_tilde)``.

    ``varpi = pi/agm(1, sqrt 2)`` and ``varpi_tilde = (35 G_6(rho))^(1/6)``,
    the positive real root, with ``G_6(rho)`` from its q-expansion.
    """
    mp = ctx.mp
    key = ctx.working
    hit = _const_cache.get(key)
    if hit is None:
        vp = mp.pi / agm(1, mp.sqrt(2), ctx)
        rho = mp.expjpi(mp.mpf(2) / 3)
        g6 = eisenstein_G(6, rho, ctx)
        vt = mp.root(35 * g6.real, 6)
        hit = (mp.nstr(vp, ctx.working + 5), mp.nstr(vt, ctx.working + 5))
        with _const_lock:
            _const_cache.setdefault(key, hit)
    return mp.mpf(hit[0]), mp.mpf(hit[1])


# ---------------------------------------------------------------------------
# Hurwitz numbers


@dataclass(frozen=True)
class TableEntry:
    value: object
    provenance: str  # "reconstructed" or "derived"


class HurwitzTable:
    """Append-only map from keys to exact or numeric values with provenance.

    Readers never block one another; writers are serialized and an existing
    key is never overwritten.
    """

    PROVENANCES = ("reconstructed", "derived")

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()

    def get(self, key):
        return self._data.get(key)

    def put(self, key, value, provenance: str) -> TableEntry:
        if provenance not in self.PROVENANCES:
            raise DomainError(f"unknown provenance {provenance!r}")
        with self._lock:
            existing = self._data.get(key)
            if existing is not None:
                return existing
            entry = TableEntry(value, provenance)
            # copy-on-write keeps concurrent readers on a consistent dict
            data = dict(self._data)
            data[key] = entry
            self._data = data
            return entry

    def __contains__(self, key):
        return key in self._data

    def __len__(self):
        return len(self._data)

    def items(self):
        return sorted(self._data.items(), key=lambda kv: repr(kv[0]))


TABLE = HurwitzTable()


def _hurwitz_ratio(index: int, variant: str, ctx: PrecCtx):
    mp = ctx.mp
    vp, _ = lemniscate_constants(ctx)
    g = eisenstein_G(index, mp.mpc(0, 1), ctx, variant="full" if variant == "full" else "level2")
    return (mp.factorial(index) * g / (2 * vp) ** index).real


def hurwitz_number(index: int, variant: str = "full", ctx: PrecCtx | None = None) -> Fraction:
    """``H_{4k}`` (``variant="full"``) or ``H^1_{4k}`` (``variant="div2"``).

    ``(4k)! G_{4k}(i) / (2 varpi)^{4k}``, rationally reconstructed with
    denominators up to ``10**(working/3)`` and confirmed at 20 more digits.
    """
    if int(index) != index or index < 4 or index % 4:
        raise DomainError("index must be a positive multiple of 4")
    if variant not in ("full", "div2"):
        raise DomainError(f"unknown variant {variant!r}")
    ctx = ctx or PrecCtx(30)
    key = ("H", variant, int(index))
    hit = TABLE.get(key)
    if hit is not None:
        return hit.value
    found = None
    for c in (ctx, ctx.refined()):
        q = rational_reconstruct(_hurwitz_ratio(index, variant, c), 10 ** (c.working // 3), c)
        if q is None or (found is not None and q != found):
            raise PrecisionError(
                f"could not reconstruct the Hurwitz number of index {index}; raise digits"
            )
        found = q
    return TABLE.put(key, found, "reconstructed").value


# ---------------------------------------------------------------------------
# contour extraction


def laurent_coefficients(f: Callable, indices, radius, ctx: PrecCtx, points: int | None = None) -> dict:
    """Laurent coefficients ``c_n`` of ``f`` at 0 for each ``n`` in ``indices``."""
    mp = ctx.mp
    K = points or 4 * ctx.working
    nodes = [radius * mp.expjpi(mp.mpf(2 * p) / K) for p in range(K)]
    values = [f(x) for x in nodes]
    out = {}
    for n in indices:
        out[n] = mp.fsum(v * x ** (-n) for v, x in zip(values, nodes)) / K
    return out


def _with_retry(extract: Callable, radius, ctx: PrecCtx):
    for _ in range(4):
        try:
            return extract(radius)
        except PoleError:
            radius = radius * ctx.mp.mpf(0.7)
    raise PrecisionError("contour keeps meeting a pole; raise digits or move the parameters")


def _shortest(w1, w2, mp):
    """Length of the shortest nonzero vector of ``Z w1 + Z w2`` (Lagrange reduction)."""
    a, b = w1, w2
    if abs(a) > abs(b):
        a, b = b, a
    for _ in range(200):
        mu = mp.nint((b * mp.conj(a)).real / abs(a) ** 2)
        b = b - mu * a
        if abs(b) >= abs(a):
            return abs(a)
        a, b = b, a
    return abs(a)


def _frac(v):
    return v - math.floor(v)


def _exact(v):
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError:
            return None
    if isinstance(v, float) and math.isfinite(v):
        # the exact binary value, as mpmath would read it
        return Fraction(v)
    return None


def _norm_point(x, y, ctx: PrecCtx):
    """Reduce ``(x, y)`` mod 1 and report whether it is the lattice origin."""
    ex, ey = _exact(x), _exact(y)
    mp = ctx.mp
    if ex is not None and ey is not None:
        fx, fy = _frac(ex), _frac(ey)
        return mp.mpf(fx.numerator) / fx.denominator, mp.mpf(fy.numerator) / fy.denominator, fx == 0 and fy == 0, fx == 0
    xr, yr = to_real(x, ctx), to_real(y, ctx)
    xr, yr = xr - mp.floor(xr), yr - mp.floor(yr)
    return xr, yr, xr == 0 and yr == 0, xr == 0


def _kernel(xi, x, y, w1, tau, ctx: PrecCtx):
    """Kronecker's kernel for ``0 <= x < 1`` (``x = 0`` only with ``y`` off the integers)."""
    mp = ctx.mp
    u = xi / w1
    shift = x * tau - y
    num = theta_d0(tau, ctx) * theta(u + shift, tau, ctx)
    den = theta(u, tau, ctx) * theta(shift, tau, ctx)
    if den == 0:
        raise PoleError("kernel evaluated on a pole", point=xi)
    return mp.exp(2 * mp.j * mp.pi * x * u) / w1 * num / den


def _h_origin(l: int, w1, tau, ctx: PrecCtx):
    """``H_l(w1, w2) = (-1)^(l-1) l! w1^-l G_l(tau)`` (``G_2`` summed with ``m`` outermost)."""
    mp = ctx.mp
    if l == 0:
        return mp.mpc(1)
    if l % 2:
        return mp.mpc(0)
    g = eisenstein_G(l, tau, ctx)
    return (-1) ** (l - 1) * mp.factorial(l) * g / w1**l


def gen_hurwitz(l: int, x, y, lat: LatticeSpec, ctx: PrecCtx, radius_scale: float = 1.0, method: str = "auto"):
    """Generalized Hurwitz number ``H_l(x, y; w1, w2)``.

    ``l!`` times the ``xi^(l-1)`` Laurent coefficient of Kronecker's kernel,
    extracted on a circle of radius ``0.4 * radius_scale`` times the distance
    to the nearest nonzero lattice point.  ``(x, y)`` enter modulo 1.  At
    the lattice origin the value is taken from the Eisenstein series unless
    ``method="contour"``, which extracts it from the regularized kernel.
    ``H_0 = 1`` by convention.
    """
    if int(l) != l or l < 0:
        raise DomainError("l must be a nonnegative integer")
    l = int(l)
    mp = ctx.mp
    w1, w2, tau = lat.periods(ctx)
    xr, yr, origin, on_axis = _norm_point(x, y, ctx)
    if l == 0:
        return mp.mpc(1)
    if origin and method != "contour":
        return _h_origin(l, w1, tau, ctx)
    radius = mp.mpf(0.4) * radius_scale * _shortest(w1, w2, mp)
    if origin:
        f = lambda xi: kronecker_E0(xi, w1, w2, ctx)
    else:
        f = lambda xi: _kernel(xi, xr, yr, w1, tau, ctx)
    coeffs = _with_retry(lambda rad: laurent_coefficients(f, [l - 1], rad, ctx), radius, ctx)
    return mp.factorial(l) * coeffs[l - 1]


# ---------------------------------------------------------------------------
# K coefficients


def _beta(y, r, z, ctx: PrecCtx):
    ey, ez = _exact(y), _exact(z)
    if ey is not None and ez is not None:
        return _frac(ey + r * ez)
    mp = ctx.mp
    b = to_real(y, ctx) + r * to_real(z, ctx)
    return b - mp.floor(b)


def _check_z(z, ctx):
    ez = _exact(z)
    zr = ez if ez is not None else to_real(z, ctx)
    if not 0 <= zr <= 1:
        raise DomainError("z must lie in [0, 1]")
    return zr


def _assemble(k: int, r: int, h_over_fact: Callable[[int], object], scB_r: Callable[[int], object],
              scB_1: Callable[[int], object], skip_one: bool, ctx: PrecCtx):
    """Combine Laurent data into ``K_{k,r}``.

    ``h_over_fact(l) = H_l/l!``, ``scB_r(j) = B^<r>_j(z; w2)/j!`` and
    ``scB_1(j) = B_j({y + rz}; w2)/j!``.
    """
    mp = ctx.mp
    total = []
    for l in range(r + 1, k + r + 1):
        total.append(h_over_fact(l) * scB_r(k + r - l))
    for l in range(0, r + 1):
        if skip_one and l == 1:
            continue
        h = h_over_fact(l)
        if h == 0:
            continue
        inner = scB_r(k + r - l)
        for j in range(0, r - l + 1):
            rising = mp.factorial(k + j - 1) / mp.factorial(k - 1)
            inner -= scB_r(r - j - l) * (-1) ** j / mp.factorial(j) * rising * scB_1(k + j)
        total.append(h * inner)
    return mp.factorial(k) * mp.fsum(total)


def _scaled_tables(r, z, beta, w2, ctx: PrecCtx):
    mp = ctx.mp
    cache_r: dict[int, object] = {}
    cache_1: dict[int, object] = {}

    def scB_r(j):
        v = cache_r.get(j)
        if v is None:
            v = cache_r[j] = scaled_B(r, j, z, w2, ctx) / mp.factorial(j)
        return v

    def scB_1(j):
        v = cache_1.get(j)
        if v is None:
            v = cache_1[j] = scaled_B(1, j, beta, w2, ctx) / mp.factorial(j)
        return v

    return scB_r, scB_1


def k_closed(k: int, r: int, x, y, z, lat: LatticeSpec, ctx: PrecCtx):
    """``K_{k,r}(x, y, z; w1, w2)`` from generalized Hurwitz numbers and Bernoulli data.

    At ``(x, y) = (0, 0)`` (mod 1) the ``l = 1`` term is omitted and
    ``z = 1`` is excluded.
    """
    if int(k) != k or k < 1 or int(r) != r or r < 1:
        raise DomainError("k and r must be positive integers")
    k, r = int(k), int(r)
    mp = ctx.mp
    zv = _check_z(z, ctx)
    w1, w2, tau = lat.periods(ctx)
    _, _, origin, _ = _norm_point(x, y, ctx)
    if origin and zv == 1:
        raise DomainError("z = 1 is excluded at (x, y) = (0, 0)")
    beta = _beta(0 if origin else y, r, z, ctx)
    scB_r, scB_1 = _scaled_tables(r, z, beta, w2, ctx)
    cache: dict[int, object] = {}

    def h_over_fact(l):
        v = cache.get(l)
        if v is None:
            v = cache[l] = gen_hurwitz(l, x, y, lat, ctx) / mp.factorial(l)
        return v

    return _assemble(k, r, h_over_fact, scB_r, scB_1, origin, ctx)


def g_from_k(k: int, r: int, kval, lat: LatticeSpec, ctx: PrecCtx):
    """``G_k^<r> = -(1/k!) (w2/(pi i))^r K_{k,r}``."""
    mp = ctx.mp
    _, w2, _ = lat.periods(ctx)
    return -(w2 / (mp.pi * mp.j)) ** r * kval / mp.factorial(k)


def _f_taylor(beta, xi, w2, jmax: int, ctx: PrecCtx):
    """``f_j(xi) = (-1)^j F^(j)(xi, beta, w2)/j!`` for ``j <= jmax``."""
    mp = ctx.mp
    c = 2 * mp.pi * mp.j / w2
    derivs = bernoulli_gf_derivs(beta, c * xi, jmax, ctx)
    return [(-1) ** j * c ** (j + 1) * derivs[j] / mp.factorial(j) for j in range(jmax + 1)]


def _f_value(beta, xi, w2, ctx: PrecCtx):
    mp = ctx.mp
    c = 2 * mp.pi * mp.j / w2
    t = c * xi
    if abs(t) < mp.mpf(10) ** (-(ctx.working // 2)):
        raise PoleError("F evaluated at its pole", point=xi)
    return c * mp.exp(beta * t) / mp.expm1(t)


def k_residue(k: int, r: int, x, y, z, lat: LatticeSpec, ctx: PrecCtx, radius_scale: float = 1.0,
              return_kernel: bool = False):
    """``K_{k,r}`` from the residue construction.

    ``frak_K_r(xi) = D_r(xi) - sum_{j<=r} d_{-1-j} f_j(xi)`` where ``d_i`` are
    Laurent coefficients of ``D_r = E F(., z)^r`` at 0 and
    ``f_j(xi) = (-1)^j F^(j)(xi, {y+rz})/j!``.  Then ``K_{k,r}`` is ``k!``
    times the ``xi^(k-1)`` Taylor coefficient of ``frak_K_r``, taken by a
    second contour extraction.  At ``(x, y) = (0, 0)`` the regularized kernel
    replaces ``E``.  With ``return_kernel`` the function ``frak_K_r`` itself
    is returned.
    """
    if int(k) != k or k < 1 or int(r) != r or r < 1:
        raise DomainError("k and r must be positive integers")
    k, r = int(k), int(r)
    mp = ctx.mp
    _check_z(z, ctx)
    for v in (x, y):
        vr = to_real(v, ctx)
        if not -1 < vr < 1:
            raise DomainError("need -1 < x, y < 1")
    w1, w2, tau = lat.periods(ctx)
    xr, yr, origin, _ = _norm_point(x, y, ctx)
    beta = _beta(0 if origin else y, r, z, ctx)
    beta_n = mp.mpf(beta.numerator) / beta.denominator if isinstance(beta, Fraction) else beta
    ez = _exact(z)
    zn = mp.mpf(ez.numerator) / ez.denominator if ez is not None else to_real(z, ctx)

    if origin:
        E = lambda xi: kronecker_E0(xi, w1, w2, ctx)
    else:
        E = lambda xi: _kernel(xi, xr, yr, w1, tau, ctx)

    def D(xi):
        return E(xi) * _f_value(zn, xi, w2, ctx) ** r

    radius = mp.mpf(0.4) * radius_scale * min(_shortest(w1, w2, mp), abs(w2))
    d = _with_retry(lambda rad: laurent_coefficients(D, range(-r - 1, 0), rad, ctx), radius, ctx)

    def frak(xi):
        fj = _f_taylor(beta_n, xi, w2, r, ctx)
        return D(xi) - mp.fsum(d[-1 - j] * fj[j] for j in range(r + 1))

    if return_kernel:
        return frak
    c = _with_retry(lambda rad: laurent_coefficients(frak, [k - 1], rad, ctx), radius, ctx)
    return mp.factorial(k) * c[k - 1]


# ---------------------------------------------------------------------------
# square lattice in exact Hurwitz data


def rational_form(k: int, r: int, z, ctx: PrecCtx):
    """``pi^r G_k^<r>(0, 0, z; 1, i)`` from exact Hurwitz numbers.

    On the square lattice ``H_l/l! = (-1)^(l-1) G_l(i)``: ``G_2(i) = -pi``,
    ``G_{4j}(i) = (2 varpi)^{4j} H_{4j}/(4j)!`` and every other ``G_l(i)``
    vanishes.  Bernoulli data are ``(2 pi)^j B_j^<r>(z)``.
    """
    if int(k) != k or k < 1 or int(r) != r or r < 1:
        raise DomainError("k and r must be positive integers")
    k, r = int(k), int(r)
    mp = ctx.mp
    zf = _exact(z)
    if zf is None or not 0 <= zf < 1:
        raise DomainError("z must be an exact rational in [0, 1)")
    vp, _ = lemniscate_constants(ctx)
    beta = _frac(r * zf)

    def h_over_fact(l):
        if l == 0:
            return mp.mpf(1)
        if l == 2:
            return mp.pi
        if l % 4 == 0:
            h = hurwitz_number(l, "full", ctx)
            return -(2 * vp) ** l * (mp.mpf(h.numerator) / h.denominator) / mp.factorial(l)
        return mp.mpf(0)

    def scaled(poly_value: Fraction, j):
        return (2 * mp.pi) ** j * (mp.mpf(poly_value.numerator) / poly_value.denominator) / mp.factorial(j)

    scB_r = lambda j: scaled(bernoulli_higher_poly(r, j)(zf), j)
    scB_1 = lambda j: scaled(bernoulli_poly(j)(beta), j)
    kval = _assemble(k, r, h_over_fact, scB_r, scB_1, True, ctx)
    return -kval / mp.factorial(k)
