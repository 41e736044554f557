from fractions import Fraction

import pytest

from oracles import S2_3PI_I, varpi
from hypseries.hyper import (
    c1,
    c2_antidiagonal,
    c2_series,
    coth_power_sum,
    csch,
    f_q,
    g_script,
    gfrak2,
    gfrak2_rhs,
    lemma_l1_sum,
    mellin_lhs,
    mellin_rhs,
    prop_p_zeta_rhs,
    s1,
    s1_deriv,
    s2_series,
    sech,
    sinh_power_sum,
    sinh_product_sum,
    zeta_q,
)
from hypseries.lattice import LatticeSpec, SummationOrder
from hypseries.mpcore import DomainError, PoleError, PrecCtx, to_complex


def s1_oracle(s, tau, mp):
    x = mp.pi * mp.j / tau
    return mp.nsum(lambda m: (-1) ** int(m) * mp.csch(m * x) * mp.power(m, -s), [1, mp.inf])


class TestS1:
    @pytest.mark.parametrize("s,tau", [("3", "i"), ("2.5+1i", "0.2+1.1i"), ("-4-2i", "-0.3+0.8i")])
    def test_against_nsum(self, s, tau):
        ctx = PrecCtx(30)
        mp = ctx.mp
        sc, tc = to_complex(s, ctx), to_complex(tau, ctx)
        ref = s1_oracle(sc, tc, mp)
        assert abs(s1(sc, tc, ctx) - ref) < mp.mpf(10) ** -30 * max(1, abs(ref))

    @pytest.mark.parametrize("k,coeff", [(0, Fraction(-1, 360)), (1, Fraction(-13, 453600)), (2, Fraction(-4009, 13621608000))])
    def test_cauchy_mellin_values(self, k, coeff):
        ctx = PrecCtx(40)
        mp = ctx.mp
        want = mp.mpf(coeff.numerator) / coeff.denominator * mp.pi ** (4 * k + 3)
        assert abs(s1(4 * k + 3, "i", ctx) - want) < mp.mpf(10) ** -40

    def test_negative_three_at_i(self):
        ctx = PrecCtx(40)
        mp = ctx.mp
        assert abs(s1(-3, "i", ctx) + (varpi(60) / mp.pi) ** 4 / 8) < mp.mpf(10) ** -40

    def test_truncation_stable(self):
        ctx = PrecCtx(30)
        a = s1("2+i", "0.1+0.9i", ctx)
        b = s1("2+i", "0.1+0.9i", ctx, terms=400)
        assert abs(a - b) < ctx.eps

    def test_derivative_by_finite_difference(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        h = mp.mpf(10) ** -15
        fd = (s1(-5 + h, "i", ctx) - s1(-5 - h, "i", ctx)) / (2 * h)
        assert abs(s1_deriv(-5, "i", ctx) - fd) < mp.mpf(10) ** -25

    def test_lower_half_plane(self):
        with pytest.raises(DomainError):
            s1(3, "-i", PrecCtx(10))


class TestC1:
    def test_ramanujan_values(self):
        ctx = PrecCtx(40)
        mp = ctx.mp
        assert abs(c1(1, "i", ctx) - mp.pi / 4) < mp.mpf(10) ** -40
        assert abs(c1(5, "i", ctx) - mp.pi**5 / 24) < mp.mpf(10) ** -40

    def test_against_nsum(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        s, tau = mp.mpc(1.5, -0.5), mp.mpc(0.25, 1)
        x = mp.pi * mp.j / tau
        ref = mp.nsum(lambda m: (-1) ** int(m) * mp.sech((m + 0.5) * x) * mp.power(m + 0.5, -s), [0, mp.inf])
        assert abs(c1(s, tau, ctx) - ref) < mp.mpf(10) ** -30


class TestDoubleSeries:
    def test_s2_frozen_box_value(self):
        ctx = PrecCtx(35)
        mp = ctx.mp
        want = mp.mpc(*S2_3PI_I)
        assert abs(s2_series("3+i", "i", ctx) - want) < mp.mpf(10) ** -36

    def test_c2_against_box(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        s, tau = mp.mpc(2.5, 1), mp.mpc(0.2, 1.1)
        x = mp.pi * mp.j / tau
        N = 40
        box = mp.fsum(
            (-1) ** (m + n) * mp.sech((m + 0.5) * x) * mp.sech((n + 0.5) * x) * mp.power(m + n + 1, -s)
            for m in range(-N, N)
            for n in range(-N, N)
            if m + n + 1 > 0
        )
        assert abs(c2_series(s, tau, ctx) - box) < mp.mpf(10) ** -30

    @pytest.mark.parametrize(
        "s,tau",
        [("5", "i"), ("-3+2i", "0.5+1.5i"), ("2.7+0.4i", "-0.2+0.9i"), ("0", "2i"), ("-7", "0.1+0.7i")],
    )
    def test_c2_is_minus_twice_s1(self, s, tau):
        ctx = PrecCtx(30)
        sc = to_complex(s, ctx)
        assert abs(c2_series(sc, tau, ctx) + 2 * s1(sc - 1, tau, ctx)) < ctx.mp.mpf(10) ** -30

    @pytest.mark.parametrize("k,coeff", [(1, Fraction(1, 180)), (2, Fraction(13, 226800))])
    def test_c2_positive_values(self, k, coeff):
        ctx = PrecCtx(40)
        mp = ctx.mp
        want = mp.mpf(coeff.numerator) / coeff.denominator * mp.pi ** (4 * k - 1)
        assert abs(c2_series(4 * k, "i", ctx) - want) < mp.mpf(10) ** -40

    @pytest.mark.parametrize("s", [-4, -8])
    def test_c2_vanishing(self, s):
        ctx = PrecCtx(30)
        assert abs(c2_series(s, "i", ctx)) < ctx.mp.mpf(10) ** -30

    @pytest.mark.parametrize("K", [1, 2, 5])
    def test_antidiagonal_closed_form(self, K):
        # sum_m sech((m+1/2)x) sech((K-m-1/2)x) = 2K csch(Kx) at x = pi i/tau, from partial fractions
        ctx = PrecCtx(30)
        mp = ctx.mp
        tau = mp.mpc(0.3, 1.2)
        x = mp.pi * mp.j / tau
        assert abs(c2_antidiagonal(K, tau, ctx) - 2 * K * mp.csch(K * x)) < mp.mpf(10) ** -30

    def test_cutoff_self_consistency(self):
        ctx = PrecCtx(30)
        for f in (s2_series, c2_series):
            assert abs(f("1.5+i", "0.4+1.3i", ctx) - f("1.5+i", "0.4+1.3i", ctx, cutoff_scale=2.0)) < ctx.eps


class TestGfrak:
    @pytest.mark.parametrize("s,k,tau", [(3, 4, "2i"), (2, 3, "0.3+1.2i")])
    def test_against_nsum(self, s, k, tau):
        ctx = PrecCtx(20)
        mp = ctx.mp
        t = to_complex(tau, ctx)
        x = mp.pi * mp.j / t

        def inner(m):
            return mp.nsum(lambda n: (-1) ** int(n) * (m + n * t) ** -k, [-mp.inf, mp.inf])

        M = 40 if tau == "2i" else 25
        ref = mp.fsum(mp.csch(mm * x) * mp.mpf(mm) ** -s * inner(mm) for m in range(1, M) for mm in (m, -m))
        assert abs(ref) > 0.01
        assert abs(gfrak2(s, k, t, ctx) - ref) < mp.mpf(10) ** -20

    def test_symmetric_cases_vanish(self):
        # s + k even: the m and -m terms cancel
        ctx = PrecCtx(20)
        assert gfrak2(2, 4, "2i", ctx) == 0

    def test_methods_agree(self):
        ctx = PrecCtx(20)
        a = gfrak2(1, 4, "0.2+i", ctx)
        b = gfrak2(1, 4, "0.2+i", ctx, method="paired")
        assert abs(a - b) < ctx.mp.mpf(10) ** -20

    def test_closed_value(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        vp = varpi(60)
        want = vp**4 / (15 * mp.pi) - 7 * mp.pi**3 / 90 + mp.pi**2 / 6
        assert abs(gfrak2(0, 3, "i", ctx) - want) < mp.mpf(10) ** -30

    @pytest.mark.parametrize("k", [3, 4])
    def test_eisenstein_expansion(self, k):
        ctx = PrecCtx(20)
        assert abs(gfrak2(0, k, "i", ctx) - gfrak2_rhs(0, k, "i", ctx)) < ctx.mp.mpf(10) ** -20

    def test_domain(self):
        with pytest.raises(DomainError):
            gfrak2(0, 1, "i", PrecCtx(10))
        with pytest.raises(DomainError):
            gfrak2(0, 3, "i", PrecCtx(10), method="nope")


class TestGScript:
    def test_orders_agree_absolutely_convergent(self):
        ctx = PrecCtx(15)
        lat = LatticeSpec(1, "i")
        args = (3, 1, "0.3", "0.4", Fraction(1, 2), lat)
        a = g_script(*args, SummationOrder.M_FIRST_THEN_N, ctx)
        b = g_script(*args, SummationOrder.M_FIRST_THEN_N, ctx, method="direct")
        assert abs(a - b) < ctx.mp.mpf(10) ** -15

    def test_reciprocity(self):
        ctx = PrecCtx(20)
        mp = ctx.mp
        half = Fraction(1, 2)
        tau = mp.mpc(0, 2)
        a = g_script(1, 1, 0, 0, half, LatticeSpec(1, tau), "m_first_then_n", ctx)
        b = g_script(1, 1, 0, 0, half, LatticeSpec(1, -1 / tau), "m_first_then_n", ctx)
        want = (tau**2 - 1) * mp.pi / (3 * tau * mp.j) - 2
        assert abs(a + b - want) < mp.mpf(10) ** -20

    @pytest.mark.parametrize(
        "k,r,x,y,z",
        [(1, 1, 0, 0, 0), (1, 1, 0, Fraction(1, 2), Fraction(1, 2)), (2, 1, 0, 0, 1), (0, 1, 0, 0, Fraction(1, 2)), (3, 1, 0, 0, 2)],
    )
    def test_domain(self, k, r, x, y, z):
        with pytest.raises(DomainError):
            g_script(k, r, x, y, z, LatticeSpec(1, "i"), "m_first_then_n", PrecCtx(10))


class TestRootOfUnity:
    @pytest.mark.parametrize(
        "n,p,y",
        [(2, 1, Fraction(1, 2)), (3, 3, Fraction(1, 2)), (5, 5, Fraction(1, 2)), (3, 6, 0), (3, 2, Fraction(1, 3)), (4, 3, Fraction(1, 4))],
    )
    def test_mellin_sides_agree(self, n, p, y):
        ctx = PrecCtx(30)
        lhs, rhs = mellin_lhs(n, p, y, ctx), mellin_rhs(n, p, y, ctx)
        assert abs(lhs - rhs) < ctx.mp.mpf(10) ** -30 * max(1, abs(rhs))

    def test_sinh_triple(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        w = 1 / to_complex("rho", ctx)
        want = -mp.pi**4 / 5670
        assert abs(sinh_product_sum(4, [w, w], ctx) - want) < mp.mpf(10) ** -30
        assert abs(mellin_lhs(3, 3, Fraction(1, 2), ctx) / 6 - want) < mp.mpf(10) ** -30

    def test_tenth_roots(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        xi = mp.expjpi(mp.mpf(1) / 5)
        val = sinh_product_sum(6, [xi, xi**2, xi**3, xi**4], ctx, alternating=True)
        assert abs(val + mp.pi**6 / 935550) < mp.mpf(10) ** -30

    def test_eighth_root_reading_hits_a_pole(self):
        # xi^4 = -1 for xi = e^{2 pi i/8}: every sinh(m pi i xi^4) vanishes
        ctx = PrecCtx(20)
        xi = ctx.mp.expjpi(ctx.mp.mpf(1) / 4)
        with pytest.raises(PoleError):
            sinh_product_sum(6, [xi, xi**2, xi**3, xi**4], ctx, alternating=True)

    def test_coth_squared(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        val = coth_power_sum(10, 1 / to_complex("rho", ctx), 2, ctx)
        assert abs(val - 40247 * mp.pi**10 / 3831077250) < mp.mpf(10) ** -30

    def test_coth_against_nsum(self):
        ctx = PrecCtx(25)
        mp = ctx.mp
        w = mp.mpc(0.3, 0.7)
        ref = mp.nsum(lambda m: mp.coth(m * mp.pi * mp.j * w) ** 3 / m**4, [1, mp.inf])
        assert abs(coth_power_sum(4, w, 3, ctx) - ref) < mp.mpf(10) ** -25

    def test_domains(self):
        ctx = PrecCtx(10)
        with pytest.raises(DomainError):
            mellin_lhs(3, 1, 0, ctx)
        with pytest.raises(DomainError):
            sinh_product_sum(2, [], ctx)
        with pytest.raises(DomainError):
            sinh_product_sum(2, ["0.5"], ctx)
        with pytest.raises(DomainError):
            coth_power_sum(1, "i", 2, ctx)


class TestQZeta:
    def test_sinh_power_sums(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        vp = varpi(60)
        assert abs(sinh_power_sum(1, ctx) - (mp.mpf(1) / 6 - 1 / (2 * mp.pi))) < mp.mpf(10) ** -30
        want = (vp**4 / (15 * mp.pi**4) - mp.mpf(11) / 45 + 2 / (3 * mp.pi)) / 2
        assert abs(sinh_power_sum(2, ctx) - want) < mp.mpf(10) ** -30

    @pytest.mark.parametrize("k", [1, 2])
    def test_alternating_representation(self, k):
        ctx = PrecCtx(20)
        assert abs(sinh_power_sum(k, ctx) - prop_p_zeta_rhs(k, ctx)) < ctx.mp.mpf(10) ** -20

    @pytest.mark.parametrize("k", [1, 2, 3])
    @pytest.mark.parametrize("q", ["0.5", "0.3+0.2i", "exp(-pi/2)"])
    def test_lemma_closed_form(self, k, q):
        ctx = PrecCtx(30)
        mp = ctx.mp
        qv = mp.exp(-mp.pi / 2) if q.startswith("exp") else to_complex(q, ctx)
        want = -k / (qv ** (2 * k) - qv ** (-2 * k))
        assert abs(lemma_l1_sum(k, qv, ctx) - want) < mp.mpf(10) ** -30

    def test_f_q_against_direct_sum(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        q = mp.mpc("0.4", "0.1")
        ref = (1 - q) ** 3 * mp.fsum(q ** (2 * m) / (1 - q**m) ** 3 for m in range(1, 200))
        assert abs(f_q(3, 2, q, ctx) - ref) < mp.mpf(10) ** -30
        assert zeta_q(3, q, ctx) == f_q(3, 2, q, ctx)

    def test_f_q_four_two(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        q = mp.exp(-2 * mp.pi)
        vp = varpi(60)
        want = (1 - q) ** 4 / 32 * (vp**4 / (15 * mp.pi**4) - mp.mpf(11) / 45 + 2 / (3 * mp.pi))
        assert abs(f_q(4, 2, q, ctx) - want) < mp.mpf(10) ** -30

    def test_domains(self):
        ctx = PrecCtx(10)
        with pytest.raises(DomainError):
            lemma_l1_sum(1, 1, ctx)
        with pytest.raises(DomainError):
            f_q(2, -1, "0.5", ctx)
        with pytest.raises(DomainError):
            sinh_power_sum(0, ctx)


class TestHelpers:
    def test_csch_sech_large_argument(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        x = mp.mpc(5000, 1)
        assert abs(csch(x, mp) - 2 * mp.exp(-x)) < mp.mpf(10) ** -2200
        assert abs(sech(-x, mp) - 2 * mp.exp(-x)) < mp.mpf(10) ** -2200

    def test_csch_pole(self):
        ctx = PrecCtx(20)
        with pytest.raises(PoleError):
            csch(ctx.mp.mpc(0, ctx.mp.pi), ctx.mp)
