import math

import numpy as np
import pytest
from scipy.integrate import quad

from restriction_lab.analysis import (
    OscIntSpec,
    bessel_j0,
    bessel_j0_deriv,
    cosine_weight_kernel,
    cosine_weight_kernel_many,
    fresnel_constant,
    hankel_decay_transform,
    hankel_decay_transform_many,
    j0_extrema,
    j0_zeros,
)

# --- independent series oracles: straight float64 power series + bisection ---


def series_j0(x: float) -> float:
    u = x * x / 4
    total, term = 0.0, 1.0
    for m in range(40):
        total += term if m % 2 == 0 else -term
        term *= u / ((m + 1) * (m + 1))
    return total


def series_j0_deriv(x: float) -> float:
    # J0' = -J1 via the J1 power series
    u = x * x / 4
    total, term = 0.0, 1.0
    for m in range(40):
        total += term if m % 2 == 0 else -term
        term *= u / ((m + 1) * (m + 2))
    return -x / 2 * total


def bisect(f, lo, hi, iters=80):
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if (f(mid) <= 0) == (flo <= 0):
            lo, flo = mid, f(mid)
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestBesselJ0:
    def test_at_zero(self):
        assert bessel_j0(0.0) == 1.0

    def test_first_zero_from_series_bisection(self):
        root = bisect(series_j0, 2.0, 3.0)
        assert abs(root - 2.404825557695773) < 1e-12
        assert abs(bessel_j0(root)) < 1e-10

    def test_first_extremum_from_series_bisection(self):
        ext = bisect(series_j0_deriv, 3.0, 4.5)
        assert abs(ext - 3.8317059702075123) < 1e-12
        assert abs(bessel_j0_deriv(ext)) < 1e-10

    def test_against_series_below_crossover(self):
        for x in np.linspace(0.01, 6.9, 113):
            assert abs(bessel_j0(x) - series_j0(x)) < 2e-13

    def test_modulus_bound_to_1e4(self):
        xs = np.linspace(0.0, 1e4, 200001)
        vals = np.array([0.0])
        from restriction_lab.analysis import _j0

        vals = _j0(xs)
        assert np.max(np.abs(vals)) <= 1.0

    def test_tier_seams_match_reference(self):
        import scipy.special as sp

        for seam in (7.0, 17.0):
            for x in (seam - 1e-9, seam, seam + 1e-9):
                assert abs(bessel_j0(x) - sp.j0(x)) < 1e-12

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            bessel_j0(float("inf"))


class TestExtrema:
    def test_first_extremum(self):
        table = j0_extrema(1)
        assert abs(table.z[0] - 3.8317059702) < 1e-9

    def test_spacing_near_pi(self):
        table = j0_extrema(50)
        assert 3.0 < table.z[1] - table.z[0] < 3.3
        assert abs(table.z[49] - table.z[48] - math.pi) < 1e-2

    def test_envelope_margin_1000(self):
        table = j0_extrema(1000)
        assert table.envelope_margin() >= 0.4

    def test_values_are_alternating_extrema(self):
        table = j0_extrema(12)
        signs = np.sign(table.values)
        assert np.all(signs[:-1] * signs[1:] == -1)
        assert table.values[0] < 0  # first extremum is the first minimum

    def test_table_csv(self):
        table = j0_extrema(3)
        text = table.to_csv()
        assert text.startswith("j,z_j,J0(z_j)\n")
        assert len(text.strip().splitlines()) == 4

    def test_zeros_interlace(self):
        zeros = j0_zeros(10)
        table = j0_extrema(9)
        assert np.all(zeros[:-1] < table.z[:9])
        assert np.all(table.z[:9] < zeros[1:])


class TestCosineKernel:
    def test_small_lambda_law_half(self):
        # lambda^{1/2} K -> sqrt(pi/2); at lambda = 1e-3 the exact finite-lambda
        # correction is ~5%, within the paper's one-sided constant
        val = 1e-3**0.5 * cosine_weight_kernel(0.5, 1e-3)
        assert abs(val - 1.2533141) / 1.2533141 < 0.06

    def test_against_adaptive_quadrature(self):
        for kappa, lam in [(0.9, 1.0), (0.3, 0.07), (0.5, 12.0)]:
            oracle, err = quad(
                lambda r: (1 + r) ** (-kappa), 0, np.inf, weight="cos", wvar=lam,
                limit=400,
            )
            mine = cosine_weight_kernel(kappa, lam)
            assert abs(mine - oracle) <= 1e-6 * abs(oracle) + 2 * err

    def test_homogeneity_of_limit_law(self):
        # exact finite-lambda correction is (sqrt(2)-1) lambda^{1/2}/((1-k)C),
        # i.e. ~2.1% at lambda = 1e-3, and shrinks like sqrt(lambda)
        ratio = cosine_weight_kernel(0.5, 1e-3) / cosine_weight_kernel(0.5, 2e-3)
        assert abs(ratio - 2**0.5) / 2**0.5 < 0.03
        ratio4 = cosine_weight_kernel(0.5, 1e-5) / cosine_weight_kernel(0.5, 2e-5)
        assert abs(ratio4 - 2**0.5) / 2**0.5 < 0.003

    def test_law_converges_at_deep_lambda(self):
        # the limit itself, far below the slow O(lambda^{1-kappa}) transient
        for kappa in (0.3, 0.5, 0.7):
            lam = 1e-9
            val = lam ** (1 - kappa) * cosine_weight_kernel(kappa, lam)
            assert abs(val / fresnel_constant(kappa) - 1) < 0.02

    def test_batch_matches_scalar_and_is_batch_independent(self):
        lams = np.array([0.003, 1.0, 40.0, 1e-7])
        batch = cosine_weight_kernel_many(0.45, lams)
        for lam, got in zip(lams, batch):
            assert got == cosine_weight_kernel(0.45, lam)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            cosine_weight_kernel(1.5, 1.0)
        with pytest.raises(ValueError):
            cosine_weight_kernel(0.5, 0.0)


class TestFresnelConstant:
    @pytest.mark.parametrize("kappa", [0.5, 0.25, 0.75])
    def test_gamma_oracle(self, kappa):
        oracle = math.gamma(1 - kappa) * math.sin(math.pi * kappa / 2)
        assert abs(fresnel_constant(kappa) - oracle) < 1e-6 * oracle

    def test_positive_on_grid(self):
        for i in range(1, 18):
            assert fresnel_constant(i / 18) > 0


class TestHankelTransform:
    def test_scaling_ratio(self):
        h1 = hankel_decay_transform(1.5, 1e-2)
        h2 = hankel_decay_transform(1.5, 5e-3)
        assert abs(h1 / h2 - 2 ** (1.5 - 2)) / 2**-0.5 < 0.05

    def test_brute_force_oracle_at_s_one(self):
        import scipy.special as sp

        r = np.linspace(1e-9, 20000.0, 2_000_001)
        integrand = 2 * math.pi * r * (1 + r * r) ** -0.75 * sp.j0(r)
        trapezoid = getattr(np, "trapezoid", None) or np.trapz
        oracle = trapezoid(integrand, r)
        mine = hankel_decay_transform(1.5, 1.0)
        assert abs(mine - oracle) < 1e-3 * abs(mine)

    def test_bounded_as_delta_approaches_two(self):
        val = hankel_decay_transform(1.999, 1e-2)
        assert math.isfinite(val)
        assert 0 < val < 1e3

    def test_batch_matches_scalar(self):
        svals = np.array([1e-3, 0.3, 1.9])
        batch = hankel_decay_transform_many(1.4, svals)
        for s, got in zip(svals, batch):
            assert got == hankel_decay_transform(1.4, s)

    def test_rejects_bad_delta(self):
        with pytest.raises(ValueError):
            hankel_decay_transform(2.5, 1.0)


class TestOscIntSpec:
    def test_valid(self):
        spec = OscIntSpec(kappa=0.5, lam=1e-3, decay_sigma=1.0)
        assert spec.kappa + spec.decay_sigma > 1

    def test_invalid_hypotheses(self):
        with pytest.raises(ValueError):
            OscIntSpec(kappa=0.2, lam=1.0, decay_sigma=0.5)
        with pytest.raises(ValueError):
            OscIntSpec(kappa=1.2, lam=1.0, decay_sigma=2.0)
