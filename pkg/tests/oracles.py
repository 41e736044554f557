"""Reference values computed once by independent means and frozen.

Each constant records how it was obtained.  None of them was produced by
the package under test.
"""
from fractions import Fraction

import mpmath

# Gamma(1/4)**2 / (2 sqrt(2 pi)), mpmath gamma at 90 digits
VARPI = "2.6220575542921198104648395898911194136827549514316231628168217038007905870704143"

# Gamma(1/6) Gamma(1/2) / (3 Gamma(2/3)) = 2 int_0^1 dx / sqrt(1 - x^6); both
# evaluated with mpmath at 90 digits, agreeing to 47 digits (quadrature limited)
VARPI_TILDE = "2.4286506478875816118199416897809312485550348448749092744166294188054056873617692"

# theta'(0, i) = 2 pi eta(i)^3 with eta(i) = Gamma(1/4) / (2 pi^(3/4))
THETA_D0_I = "2.848694603987787316079985057120911720742964530321134629095223863344328805678294"

# S_2(3+i; i) by brute force over the box |m|, |n| <= 60 at 40 digits (the
# neglected terms are below e^{-60 pi})
S2_3PI_I = ("0.0013555115267306480903414873482561332", "-0.00057593922982671929995162456977493882")

def gf_coefficients(expr, var, order):
    """Exact Taylor coefficients ``[c_0, ..., c_order]`` of a sympy expression."""
    import sympy

    ser = sympy.series(expr, var, 0, order + 1).removeO()
    return [Fraction(str(sympy.Rational(ser.coeff(var, k)))) for k in range(order + 1)]


def mp_at(dps):
    ctx = mpmath.MPContext()
    ctx.dps = dps
    return ctx


def varpi(dps=60):
    return mp_at(dps).mpf(VARPI)


def varpi_tilde(dps=60):
    return mp_at(dps).mpf(VARPI_TILDE)
