"""Hyperbolic sine and cosine series at tau = i and tau = rho.

S_1(s; tau) = sum (-1)^m / (sinh(m pi i/tau) m^s) decays geometrically, so
a few dozen terms give 50 digits.  At negative odd s the values at i are
powers of varpi/pi; the double cosh series C_2 collapses to -2 S_1(s-1).

Run:  python3 demos/02_sinh_and_cosh_series.py
"""
from hypseries import PrecCtx
from hypseries.hurwitz import lemniscate_constants
from hypseries.hyper import c1, c2_series, s1

ctx = PrecCtx(40)
mp = ctx.mp
varpi, varpi_tilde = lemniscate_constants(ctx)
a = varpi / mp.pi

print("S_1(3; i)   =", mp.nstr(s1(3, "i", ctx).real, 40))
print("  -pi^3/360 =", mp.nstr(-mp.pi**3 / 360, 40))
print("S_1(-3; i)  =", mp.nstr(s1(-3, "i", ctx).real, 40))
print("  -(varpi/pi)^4/8 =", mp.nstr(-a**4 / 8, 40))

# Ramanujan's alternating cosh series
print("\nsum (-1)^m / (cosh((m+1/2) pi) (m+1/2)) =", mp.nstr(c1(1, "i", ctx).real, 40))
print("  pi/4 =", mp.nstr(mp.pi / 4, 40))

# Double cosh series against the single sinh series at a generic point
s, tau = mp.mpc("2.7", "-1.3"), mp.mpc("0.35", "1.2")
lhs = c2_series(s, tau, ctx)
rhs = -2 * s1(s - 1, tau, ctx)
print("\nC_2(s; tau)        =", mp.nstr(lhs, 25))
print("-2 S_1(s - 1; tau) =", mp.nstr(rhs, 25))
print("difference         =", mp.nstr(abs(lhs - rhs), 3))

# Positive multiples of 4 at tau = i
print("\nC_2(4k; i) / pi^(4k-1):")
for k in (1, 2, 3):
    print(f"  k = {k}:", mp.nstr(c2_series(4 * k, "i", ctx).real / mp.pi ** (4 * k - 1), 25))
print("  (1/180, 13/226800, 4009/6810804000 =", mp.nstr(mp.mpf(1) / 180, 10), mp.nstr(mp.mpf(13) / 226800, 10),
      mp.nstr(mp.mpf(4009) / 6810804000, 10), ")")
