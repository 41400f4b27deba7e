"""Broadening ratio, chirp optimum, symbol rates and their expansions."""
import math

import numpy as np
import pytest

import pdlab as p

PS = 1e-12
SIGMA = 4.25 * PS


class TestGammaGaussian:
    def test_identity_at_zero(self, air):
        assert p.gamma_gaussian(SIGMA, 0.7, air.beta, 0.0).gamma == 1.0

    def test_recovery_point(self, air):
        # the C=0.3 curve returns to its initial width around 500 km
        assert p.gamma_gaussian(SIGMA, 0.3, air.beta, 5e5).gamma == pytest.approx(1.0, abs=0.005)

    def test_plain_broadening_200km(self, air):
        assert p.gamma_gaussian(SIGMA, 0.0, air.beta, 2e5).gamma == pytest.approx(1.0244, abs=1e-3)

    def test_unchirped_form_match(self):
        # with C=0 the general ratio collapses to sqrt(1 + (L beta / sigma^2)^2)
        rng = np.random.default_rng(11)
        for _ in range(50):
            s = rng.uniform(0.5, 20) * PS
            b = rng.uniform(-3e-26, 3e-26)
            length = rng.uniform(0, 1e6)
            want = math.sqrt(1.0 + (length * b / s ** 2) ** 2)
            assert p.gamma_gaussian(s, 0.0, b, length).gamma == pytest.approx(want, rel=1e-14)

    def test_floor_property(self):
        # Gamma never drops below 1/sqrt(1+C^2)
        rng = np.random.default_rng(5)
        for _ in range(200):
            s = rng.uniform(0.5, 20) * PS
            c = rng.uniform(-40, 40)
            b = rng.uniform(-3e-26, 3e-26)
            length = rng.uniform(0, 1e7)
            g = p.gamma_gaussian(s, c, b, length).gamma
            assert g >= 1.0 / math.sqrt(1.0 + c * c) - 1e-12


class TestGammaNumeric:
    def test_gaussian_family_agreement(self, smf):
        mode = p.GeneralizedGaussianMode(SIGMA, 2.0, 2.0)
        res = p.gamma_numeric(mode, p.PropagationSpec(smf, 400.0))
        want = p.gamma_gaussian(SIGMA, 2.0, smf.beta, 400.0).gamma
        assert res.gamma == pytest.approx(want, rel=5e-3)
        assert res.method == "numeric"

    def test_sub_gaussian_dips_deeper(self, air):
        lengths = np.linspace(0, 4e5, 21)
        dips = {}
        for q in (1.0, 8.0):
            rs = p.gamma_numeric_sweep(p.GeneralizedGaussianMode(SIGMA, 1.0, q),
                                       air, lengths)
            dips[q] = min(r.gamma for r in rs)
            assert dips[q] < 1.0
        assert dips[1.0] < dips[8.0]

    def test_timebin_monotone_on_fiber(self, smf):
        mode = p.TimeBinQubitMode(5 * PS, 0.25 * PS, 1.0, math.pi / 2, 0.0)
        rs = p.gamma_numeric_sweep(mode, smf, [0.0, 400.0, 800.0])
        gs = [r.gamma for r in rs]
        assert gs[0] == pytest.approx(1.0, abs=1e-9)
        assert gs[0] < gs[1] < gs[2]

    def test_sweep_matches_single_calls(self, smf):
        mode = p.SechMode(SIGMA, 1.0)
        lengths = [100.0, 400.0]
        batch = p.gamma_numeric_sweep(mode, smf, lengths)
        for length, res in zip(lengths, batch):
            single = p.gamma_numeric(mode, p.PropagationSpec(smf, length))
            assert res.gamma == pytest.approx(single.gamma, rel=1e-9)


class TestChirpOptimum:
    def test_air_reference_point(self, air):
        # frozen: L_min = 247946.64714360883 m, Gamma_min = 0.9578262852211513
        opt = p.chirp_optimum(SIGMA, 0.3, air.beta)
        assert opt.has_interior_min
        assert opt.l_min == pytest.approx(247946.64714360883, rel=1e-12)
        assert 247e3 <= opt.l_min <= 250e3
        assert opt.gamma_min == pytest.approx(0.9578, abs=1e-3)
        assert opt.sigma_min == pytest.approx(SIGMA / math.sqrt(1.09), rel=1e-12)

    def test_no_interior_minimum(self, air, smf):
        for sigma, c, beta in [(SIGMA, 0.0, air.beta), (SIGMA, -1.0, air.beta),
                               (SIGMA, 2.0, smf.beta)]:
            opt = p.chirp_optimum(sigma, c, beta)
            assert not opt.has_interior_min
            assert opt.l_min is None
            assert opt.gamma_min == 1.0

    def test_fiber_negative_chirp(self, smf):
        opt = p.chirp_optimum(SIGMA, -2.0, smf.beta)
        assert opt.has_interior_min and opt.l_min > 0
        at_min = p.gamma_gaussian(SIGMA, -2.0, smf.beta, opt.l_min).gamma
        assert at_min == pytest.approx(1.0 / math.sqrt(5.0), rel=1e-12)

    def test_consistency_with_curve_minimum(self, air):
        opt = p.chirp_optimum(SIGMA, 0.3, air.beta)
        lengths = np.linspace(0, 5e5, 200)
        gs = [p.gamma_gaussian(SIGMA, 0.3, air.beta, length).gamma for length in lengths]
        k = int(np.argmin(gs))
        step = lengths[1] - lengths[0]
        assert abs(lengths[k] - opt.l_min) <= step


class TestSymbolRate:
    def test_baseline(self):
        res = p.symbol_rate(SIGMA)
        assert res.f_symbol == pytest.approx(39.2e9, abs=0.1e9)
        assert res.t_symbol == pytest.approx(6 * SIGMA, rel=1e-15)

    def test_reciprocal_scaling(self):
        assert p.symbol_rate(2 * SIGMA).f_symbol == pytest.approx(
            p.symbol_rate(SIGMA).f_symbol / 2, rel=1e-14)

    def test_long_fiber_limit(self, smf):
        # f_S -> sigma/(6 L |beta|) when L beta dominates; 1e7 m gives 6.16 MBd
        res = p.symbol_rate_gaussian(SIGMA, 0.0, smf.beta, 1e7)
        assert res.f_symbol == pytest.approx(SIGMA / (6 * 1e7 * abs(smf.beta)), rel=1e-7)
        assert res.f_symbol == pytest.approx(6.1594e6, rel=1e-4)

    def test_negative_chirp_boost_asymmetry(self, smf):
        # beta<0: C<0 has a rate maximum at L>0, C>0 decays monotonically
        lengths = np.geomspace(1.0, 1e4, 120)
        f_neg = [p.symbol_rate_gaussian(SIGMA, -0.5, smf.beta, length).f_symbol
                 for length in lengths]
        f_pos = [p.symbol_rate_gaussian(SIGMA, +0.5, smf.beta, length).f_symbol
                 for length in lengths]
        assert max(f_neg) > f_neg[0] * 1.05
        assert all(b <= a + 1e-6 for a, b in zip(f_pos, f_pos[1:]))


class TestAsymptotics:
    def test_large_l(self, smf):
        exact = p.symbol_rate_gaussian(SIGMA, 2.0, smf.beta, 1e7).f_symbol
        approx = p.symbol_rate_asymptotic("large_L", SIGMA, 2.0, smf.beta, 1e7)
        assert approx == pytest.approx(exact, rel=0.01)

    def test_large_c(self, smf):
        exact = p.symbol_rate_gaussian(SIGMA, 200.0, smf.beta, 1e5).f_symbol
        approx = p.symbol_rate_asymptotic("large_C", SIGMA, 200.0, smf.beta, 1e5)
        assert approx == pytest.approx(exact, rel=0.01)

    def test_large_l_leading_term(self, smf):
        lead = SIGMA / (6 * 1e8 * abs(smf.beta) * math.sqrt(5.0))
        got = p.symbol_rate_asymptotic("large_L", SIGMA, 2.0, smf.beta, 1e8)
        assert got == pytest.approx(lead, rel=1e-3)

    def test_bad_inputs(self, smf):
        with pytest.raises(p.ParameterDomainError):
            p.symbol_rate_asymptotic("large_C", SIGMA, 0.0, smf.beta, 1e5)
        with pytest.raises(p.ParameterDomainError):
            p.symbol_rate_asymptotic("nope", SIGMA, 1.0, smf.beta, 1e5)


def test_broadening_result_invariants(air):
    res = p.gamma_gaussian(SIGMA, 0.3, air.beta, 1e5)
    assert res.gamma == pytest.approx(res.sigma_l / res.sigma0, rel=1e-15)
    assert res.gamma > 0
