"""Jacobi's odd theta function and the kernels built from it.

``theta(z, tau) = -i sum_n exp(pi i (n+1/2)^2 tau + 2 pi i (n+1/2) z + pi i n)``

Arguments are first reduced into the cell ``|Re z| <= 1/2``,
``|Im z| <= Im(tau)/2`` with the two quasi-periodicity laws, so the series
always runs over a handful of terms.
"""
from __future__ import annotations

import math

from .mpcore import DomainError, PoleError, PrecCtx, to_complex, to_real

__all__ = [
    "theta",
    "theta_prime",
    "theta_d0",
    "kronecker_E",
    "kronecker_E0",
    "f_factor",
    "h_func",
]


def _check_tau(tau):
    if tau.imag <= 0:
        raise DomainError("tau must lie in the upper half-plane")


def _reduce(z, tau, mp):
    """Split ``z = z0 + a + b*tau`` with ``z0`` in the fundamental cell."""
    b = int(mp.nint(z.imag / tau.imag))
    w = z - b * tau
    a = int(mp.nint(w.real))
    return w - a, a, b


def _lattice_distance(w, tau, mp):
    w0, _, _ = _reduce(w, tau, mp)
    return abs(w0)


def _series(z0, tau, ctx: PrecCtx, derivative: bool):
    mp = ctx.mp
    # |term_n| ~ exp(-pi Im(tau) (n+1/2)^2 + 2 pi (n+1/2) |Im z0|); solve for the cutoff.
    a = math.pi * float(tau.imag)
    b = 2 * math.pi * abs(float(z0.imag))
    c = (ctx.working + 5) * math.log(10)
    t = (b + math.sqrt(b * b + 4 * a * c)) / (2 * a)
    nmax = int(math.ceil(t)) + 1
    ipi = mp.j * mp.pi
    total = mp.mpc(0)
    for n in range(-nmax - 1, nmax + 1):
        h = mp.mpf(2 * n + 1) / 2
        term = mp.exp(ipi * (h * h * tau + 2 * h * z0))
        if n % 2:
            term = -term
        if derivative:
            term *= 2 * ipi * h
        total += term
    return -mp.j * total


def theta(z, tau, ctx: PrecCtx):
    """Jacobi odd theta function ``theta(z, tau)`` for ``Im(tau) > 0``."""
    mp = ctx.mp
    z, tau = to_complex(z, ctx), to_complex(tau, ctx)
    _check_tau(tau)
    z0, a, b = _reduce(z, tau, mp)
    val = _series(z0, tau, ctx, derivative=False)
    if b:
        val *= mp.exp(-mp.j * mp.pi * (b * b * tau + 2 * b * z0))
    return -val if (a + b) % 2 else val


def theta_prime(z, tau, ctx: PrecCtx):
    """``d/dz theta(z, tau)`` by term-wise differentiation."""
    mp = ctx.mp
    z, tau = to_complex(z, ctx), to_complex(tau, ctx)
    _check_tau(tau)
    z0, a, b = _reduce(z, tau, mp)
    val = _series(z0, tau, ctx, derivative=True)
    if b:
        th = _series(z0, tau, ctx, derivative=False)
        val = (val - 2 * mp.j * mp.pi * b * th) * mp.exp(
            -mp.j * mp.pi * (b * b * tau + 2 * b * z0)
        )
    return -val if (a + b) % 2 else val


def theta_d0(tau, ctx: PrecCtx):
    """``theta'(0, tau)``."""
    return theta_prime(0, tau, ctx)


def _pole_radius(ctx: PrecCtx):
    return ctx.mp.mpf(10) ** (-(ctx.working // 2))


def _lattice_tau(omega1, omega2, ctx: PrecCtx):
    w1, w2 = to_complex(omega1, ctx), to_complex(omega2, ctx)
    if w1 == 0:
        raise DomainError("omega1 must be nonzero")
    tau = w2 / w1
    if tau.imag <= 0:
        raise DomainError("omega2/omega1 must lie in the upper half-plane")
    return w1, w2, tau


def kronecker_E(xi, x, y, omega1, omega2, ctx: PrecCtx):
    """Kronecker's kernel.

    ``E = e^{2 pi i x xi/w1}/w1 * theta'(0) theta(xi/w1 + x tau - y) /
    (theta(xi/w1) theta(x tau - y))`` with ``tau = w2/w1`` and ``0 < x < 1``.
    Its Laurent expansion at ``xi = 0`` is ``1/xi + sum_j H_{j+1}/(j+1)! xi^j``.
    """
    mp = ctx.mp
    xi = to_complex(xi, ctx)
    x, y = to_real(x, ctx), to_real(y, ctx)
    if not 0 < x < 1:
        raise DomainError("kronecker_E needs 0 < x < 1")
    w1, _, tau = _lattice_tau(omega1, omega2, ctx)
    u = xi / w1
    if _lattice_distance(u, tau, mp) < _pole_radius(ctx):
        raise PoleError("xi is on the period lattice", point=xi)
    shift = x * tau - y
    num = theta_d0(tau, ctx) * theta(u + shift, tau, ctx)
    den = theta(u, tau, ctx) * theta(shift, tau, ctx)
    return mp.exp(2 * mp.j * mp.pi * x * u) / w1 * num / den


def kronecker_E0(xi, omega1, omega2, ctx: PrecCtx):
    """Kronecker's kernel at ``(x, y) = (0, 0)`` with the ``1/(x w2)`` pole removed.

    Letting ``x -> 0`` in :func:`kronecker_E` at ``y = 0`` gives
    ``1/(x w2) + (theta'(u)/theta(u) + 2 pi i u/tau)/w1 + O(x)``; this returns
    the finite part.  Its Laurent coefficients are the lattice sums
    ``-G_{2k}`` summed with the ``w1``-index outermost.
    """
    mp = ctx.mp
    xi = to_complex(xi, ctx)
    w1, _, tau = _lattice_tau(omega1, omega2, ctx)
    u = xi / w1
    if _lattice_distance(u, tau, mp) < _pole_radius(ctx):
        raise PoleError("xi is on the period lattice", point=xi)
    log_deriv = theta_prime(u, tau, ctx) / theta(u, tau, ctx)
    return (log_deriv + 2 * mp.j * mp.pi * u / tau) / w1


def f_factor(xi, z, omega2, ctx: PrecCtx):
    """``(2 pi i/w2) e^{2 pi i xi z/w2} / (e^{2 pi i xi/w2} - 1)``."""
    mp = ctx.mp
    xi, z, w2 = to_complex(xi, ctx), to_complex(z, ctx), to_complex(omega2, ctx)
    if w2 == 0:
        raise DomainError("omega2 must be nonzero")
    t = xi / w2
    if abs(t - mp.nint(t.real)) < _pole_radius(ctx):
        raise PoleError("xi is an integer multiple of omega2", point=xi)
    c = 2 * mp.pi * mp.j
    return c / w2 * mp.exp(c * t * z) / mp.expm1(c * t)


def h_func(z, u, v, tau, ctx: PrecCtx):
    """Meromorphic ``h(z; u, v)`` with simple poles on ``Z + 1/2 + tau Z/2``.

    ``h = e^{2 pi i u (z-1/2)} theta'(0; tau/2) theta(z-1/2+u tau/2-v; tau/2)
    / (theta(z-1/2; tau/2) theta(u tau/2 - v; tau/2))``
    """
    mp = ctx.mp
    z, tau = to_complex(z, ctx), to_complex(tau, ctx)
    u, v = to_real(u, ctx), to_real(v, ctx)
    _check_tau(tau)
    if mp.isint(u) and mp.isint(v):
        raise DomainError("(u, v) must not be an integer point")
    half = tau / 2
    w = z - mp.mpf(1) / 2
    if _lattice_distance(w, half, mp) < _pole_radius(ctx):
        raise PoleError("z is a pole of h", point=z)
    shift = u * half - v
    num = theta_d0(half, ctx) * theta(w + shift, half, ctx)
    den = theta(w, half, ctx) * theta(shift, half, ctx)
    return mp.exp(2 * mp.j * mp.pi * u * w) * num / den
