"""Lemniscate constants and Hurwitz numbers.

The square lattice Z + iZ has Eisenstein series G_4k(i) that are rational
multiples of (2 varpi)^4k.  We compute varpi two ways, then recover the
rational Hurwitz numbers from high-precision floating values.

Run:  python3 demos/01_lemniscate_and_hurwitz.py
"""
from hypseries import PrecCtx
from hypseries.hurwitz import hurwitz_number, lemniscate_constants
from hypseries.lattice import eisenstein_G

ctx = PrecCtx(50)
mp = ctx.mp

# varpi = pi / agm(1, sqrt 2), cross-checked with the gamma-function form
varpi, varpi_tilde = lemniscate_constants(ctx)
gamma_form = mp.gamma(mp.mpf(1) / 4) ** 2 / (2 * mp.sqrt(2 * mp.pi))
print("varpi        ", mp.nstr(varpi, 50))
print("  gamma form ", mp.nstr(gamma_form, 50))
print("varpi_tilde  ", mp.nstr(varpi_tilde, 50))

# G_4(i) = varpi^4 / 15
g4 = eisenstein_G(4, "i", ctx)
print("\nG_4(i) * 15 / varpi^4 =", mp.nstr(g4.real * 15 / varpi**4, 30))

# Hurwitz numbers: (4k)! G_4k(i) / (2 varpi)^4k, read back as exact fractions
print("\nHurwitz numbers H_4k and their 2-division analogues:")
for idx in (4, 8, 12, 16, 20):
    full = hurwitz_number(idx, "full", ctx)
    half = hurwitz_number(idx, "div2", ctx)
    print(f"  H_{idx:<3d} = {str(full):>16s}    H1_{idx:<3d} = {half}")
