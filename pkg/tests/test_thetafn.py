from fractions import Fraction

import pytest

from oracles import THETA_D0_I
from hypseries.lattice import LatticeSpec, SummationOrder, kronecker_sum
from hypseries.mpcore import DomainError, PoleError, PrecCtx, to_complex
from hypseries.polys import scaled_B
from hypseries.thetafn import (
    f_factor,
    h_func,
    kronecker_E,
    kronecker_E0,
    theta,
    theta_d0,
    theta_prime,
)


def jtheta_oracle(z, tau, mp):
    # theta(z, tau) = theta_1(pi z, e^{pi i tau}) in mpmath's normalization
    return mp.jtheta(1, mp.pi * z, mp.exp(mp.j * mp.pi * tau))


def trapezoid_coefficients(f, n, radius, points, mp):
    """Taylor coefficients ``c_0..c_{n-1}`` of ``f`` from samples on a circle."""
    samples = [f(radius * mp.expjpi(mp.mpf(2 * j) / points)) for j in range(points)]
    return [
        mp.fsum(samples[j] * mp.expjpi(-mp.mpf(2 * j * k) / points) for j in range(points)) / points / radius**k
        for k in range(n)
    ]


class TestTheta:
    @pytest.mark.parametrize("tau", ["i", "rho", "0.3+1.1i"])
    def test_zero_at_origin(self, tau):
        ctx = PrecCtx(30)
        assert abs(theta(0, tau, ctx)) < ctx.eps

    @pytest.mark.parametrize("z", ["0.3+0.2i", "-1.7+2.9i", "4.25-3.1i", "0.5"])
    @pytest.mark.parametrize("tau", ["i", "0.3+1.1i", "-0.45+0.6i"])
    def test_against_mpmath_jtheta(self, z, tau):
        ctx = PrecCtx(30)
        mp = ctx.mp
        zc, tc = to_complex(z, ctx), to_complex(tau, ctx)
        ref = jtheta_oracle(zc, tc, mp)
        assert abs(theta(zc, tc, ctx) - ref) < mp.mpf(10) ** -35 * max(1, abs(ref))

    def test_periodicity_in_one(self):
        ctx = PrecCtx(30)
        z = ctx.mp.mpc("0.37", "0.21")
        assert abs(theta(z + 1, "i", ctx) + theta(z, "i", ctx)) < ctx.eps * 100

    def test_quasi_periodicity_in_tau(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        z, tau = mp.mpc("0.11", "-0.4"), mp.mpc("0.3", "1.1")
        want = -mp.exp(-mp.pi * mp.j * tau - 2 * mp.pi * mp.j * z) * theta(z, tau, ctx)
        assert abs(theta(z + tau, tau, ctx) - want) < ctx.eps * 1000

    def test_domain(self):
        with pytest.raises(DomainError):
            theta(0.1, "-i", PrecCtx(10))
        with pytest.raises(DomainError):
            theta(0.1, 2, PrecCtx(10))


class TestThetaDerivative:
    def test_frozen_value_at_i(self):
        ctx = PrecCtx(60)
        assert abs(theta_d0("i", ctx) - ctx.mp.mpf(THETA_D0_I)) < ctx.mp.mpf(10) ** -62

    @pytest.mark.parametrize("tau", ["i", "rho", "2i", "0.3+1.1i"])
    def test_finite_difference(self, tau):
        ctx = PrecCtx(30)
        mp = ctx.mp
        h = mp.mpf(10) ** (-(ctx.working // 3))
        fd = (theta(h, tau, ctx) - theta(-h, tau, ctx)) / (2 * h)
        d0 = theta_d0(tau, ctx)
        assert abs(d0 - fd) < mp.mpf(10) ** (-(ctx.working // 3) * 2 + 5) * abs(d0)
        assert abs(d0) > 0.1

    def test_real_at_i(self):
        ctx = PrecCtx(30)
        assert abs(theta_d0("i", ctx).imag) < ctx.eps

    def test_theta_prime_off_cell(self):
        # theta' away from the fundamental cell, against mpmath
        ctx = PrecCtx(30)
        mp = ctx.mp
        z, tau = mp.mpc(2.3, 1.9), mp.mpc(0.2, 0.8)
        ref = mp.pi * mp.jtheta(1, mp.pi * z, mp.exp(mp.j * mp.pi * tau), 1)
        assert abs(theta_prime(z, tau, ctx) - ref) < mp.mpf(10) ** -33 * abs(ref)


class TestKroneckerE:
    def test_translation_by_omega1(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        xi, x, y = mp.mpc("0.13", "0.27"), mp.mpf("0.3"), mp.mpf("0.4")
        lhs = kronecker_E(xi + 1, x, y, 1, "i", ctx)
        rhs = kronecker_E(xi, x, y, 1, "i", ctx) * mp.expjpi(2 * x)
        assert abs(lhs - rhs) < ctx.eps * 1000

    def test_simple_pole(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        xi = mp.mpf(10) ** -10
        assert abs(xi * kronecker_E(xi, "0.3", "0.4", 1, "i", ctx) - 1) < mp.mpf(10) ** -9

    def test_against_kronecker_double_series(self):
        # Eichler-summed double series with extrapolated inner sums, 15 digits
        ctx = PrecCtx(15)
        lat = LatticeSpec(1, "i")
        direct = kronecker_sum("0.2", "0.3", "0.4", lat, SummationOrder.M_FIRST_THEN_N, ctx, method="direct")
        assert abs(kronecker_E("0.2", "0.3", "0.4", 1, "i", ctx) - direct) < 1e-15

    def test_general_periods(self):
        ctx = PrecCtx(20)
        mp = ctx.mp
        w1, w2 = mp.mpc(2, 0.5), mp.mpc(-0.3, 1.7)
        lat = LatticeSpec(w1, w2)
        direct = kronecker_sum("0.1+0.05i", "0.6", "0.25", lat, SummationOrder.M_FIRST_THEN_N, ctx)
        assert abs(kronecker_E("0.1+0.05i", "0.6", "0.25", w1, w2, ctx) - direct) < 1e-20

    def test_pole_and_domain(self):
        ctx = PrecCtx(20)
        with pytest.raises(PoleError):
            kronecker_E(0, "0.3", "0.4", 1, "i", ctx)
        with pytest.raises(PoleError):
            kronecker_E("1+i", "0.3", "0.4", 1, "i", ctx)
        with pytest.raises(DomainError):
            kronecker_E("0.1", 0, "0.4", 1, "i", ctx)

    def test_E0_laurent_coefficients(self):
        # E0 = 1/xi - sum_k G_{2k} xi^{2k-1}; G_2(i) = -pi, G_6(i) = 0
        ctx = PrecCtx(25)
        mp = ctx.mp
        c = trapezoid_coefficients(lambda xi: kronecker_E0(xi, 1, "i", ctx) - 1 / xi, 6, mp.mpf(1) / 3, 96, mp)
        assert abs(c[1] - mp.pi) < mp.mpf(10) ** -25
        assert abs(c[5]) < mp.mpf(10) ** -25


class TestFFactor:
    def test_translation(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        xi, z, w2 = mp.mpc("0.2", "0.1"), mp.mpf("0.35"), mp.mpc("0.4", "1.3")
        lhs = f_factor(xi + w2, z, w2, ctx)
        assert abs(lhs - f_factor(xi, z, w2, ctx) * mp.expjpi(2 * z)) < ctx.eps * 1000

    def test_normalization(self):
        ctx = PrecCtx(30)
        xi = ctx.mp.mpf(10) ** -12
        assert abs(xi * f_factor(xi, "0.7", "i", ctx) - 1) < 1e-11

    def test_laurent_matches_scaled_bernoulli(self):
        ctx = PrecCtx(25)
        mp = ctx.mp
        z, w2 = Fraction(3, 10), mp.mpc(0.5, 2)
        g = lambda xi: xi * f_factor(xi, z, w2, ctx) if xi != 0 else mp.mpf(1)
        c = mp.taylor(g, 0, 6, method="quad", radius=1)
        for k in range(7):
            assert abs(c[k] - scaled_B(1, k, z, w2, ctx) / mp.factorial(k)) < mp.mpf(10) ** -25

    def test_pole(self):
        with pytest.raises(PoleError):
            f_factor("2i", "0.5", "i", PrecCtx(10))


class TestHFunction:
    U, V = Fraction(3, 10), Fraction(1, 5)

    def test_translation_by_one(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        z = mp.mpc("0.13", "0.07")
        lhs = h_func(z + 1, self.U, self.V, "i", ctx)
        assert abs(lhs - mp.expjpi(mp.mpf(3) / 5) * h_func(z, self.U, self.V, "i", ctx)) < ctx.eps * 1000

    def test_translation_by_half_tau(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        z = mp.mpc("0.13", "0.07")
        lhs = h_func(z + mp.j / 2, self.U, self.V, "i", ctx)
        rhs = mp.expjpi(2 * mp.mpf(self.V.numerator) / self.V.denominator) * h_func(z, self.U, self.V, "i", ctx)
        assert abs(lhs - rhs) < ctx.eps * 1000

    def test_small_u_limit(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        u = mp.mpf(10) ** -8
        val = u * h_func(mp.mpc("0.2", "0.1"), u, 0, "i", ctx)
        assert abs(val - 2 / mp.j) < 1e-6

    @pytest.mark.parametrize("m", [-2, -1, 0, 1, 2])
    def test_residues(self, m):
        ctx = PrecCtx(30)
        mp = ctx.mp
        eps = mp.mpf(10) ** -15
        pole = m + mp.mpf(1) / 2
        res = eps * h_func(pole + eps, self.U, self.V, "i", ctx)
        assert abs(res - mp.expjpi(mp.mpf(3 * m) / 5)) < 1e-13

    def test_errors(self):
        ctx = PrecCtx(20)
        with pytest.raises(PoleError):
            h_func("0.5", self.U, self.V, "i", ctx)
        with pytest.raises(DomainError):
            h_func("0.1", 1, 0, "i", ctx)
