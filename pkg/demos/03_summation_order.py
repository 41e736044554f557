"""Why summation order matters for lattice sums.

G_2(tau) = sum' (m + n tau)^-2 converges only conditionally.  Summing n
inside and m outside gives one value, the reverse order another; they differ
by 2 pi at tau = i.  A sinh weight of high enough power restores agreement.

Run:  python3 demos/03_summation_order.py
"""
from fractions import Fraction

from hypseries import PrecCtx
from hypseries.hyper import g_script
from hypseries.lattice import LatticeSpec, SummationOrder, eisenstein_G

ctx = PrecCtx(20)
mp = ctx.mp


# Each row has a closed form: sum_n (m + n i)^-2 = pi^2 / sinh(pi m)^2 for
# m != 0, and the m = 0 row is -2 zeta(2).  The columns are the same with a
# sign flip.  Summing rows first (m outside) and columns first differ by 2 pi.
rows = -mp.pi**2 / 3 + 2 * mp.nsum(lambda m: (mp.pi / mp.sinh(mp.pi * m)) ** 2, [1, mp.inf])
cols = mp.pi**2 / 3 - 2 * mp.nsum(lambda n: (mp.pi / mp.sinh(mp.pi * n)) ** 2, [1, mp.inf])
print("m outside, by rows    :", mp.nstr(rows, 20))
print("n outside, by columns :", mp.nstr(cols, 20))
print("difference            :", mp.nstr(cols - rows, 20), "= 2 pi")
print("library G_2(i)        :", mp.nstr(eisenstein_G(2, "i", ctx).real, 20), "(m outside)")

# The weight sinh(m pi)^-5 makes the k = 1 series order-independent.
print("\nk = 1, r = 5 hyperbolic sine lattice sum:")
for order in SummationOrder:
    val = g_script(1, 5, 0, 0, Fraction(1, 2), LatticeSpec(1, "i"), order, ctx)
    print(f"  {order.value:13s}", mp.nstr(val.real, 20))
