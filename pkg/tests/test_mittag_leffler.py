import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracspec import (AccuracyWarning, MlParams, ml_asymptotic, ml_eval,
                      ml_series, ml_stretched_exp, mittag_leffler)

A_GRID = [0.5, 0.75, 0.9]


class TestParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            MlParams(alpha=0.0)
        with pytest.raises(ValueError):
            MlParams(alpha=1.2)
        with pytest.raises(ValueError):
            MlParams(alpha=0.5, series_tol=0.0)
        with pytest.raises(ValueError):
            MlParams(alpha=0.5, series_max_terms=0)
        with pytest.raises(ValueError):
            MlParams(alpha=0.5, asymptote_switch=-1.0)


class TestSeries:
    def test_zero_is_exactly_one(self):
        assert ml_series(0.0, MlParams(alpha=0.75)) == 1.0

    def test_alpha_one_is_exponential(self):
        assert ml_series(-1.0, MlParams(alpha=1.0)) == pytest.approx(math.exp(-1), rel=1e-14)

    def test_half_order_erfc_identity(self, ml_ref):
        # E_{1/2}(-1) = e * erfc(1); frozen from the 50-digit reference
        got = ml_series(-1.0, MlParams(alpha=0.5))
        assert got == pytest.approx(0.42758357615580700441, rel=1e-13)
        assert float(ml_ref(-1.0, 0.5)) == pytest.approx(0.42758357615580700441, rel=1e-15)

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            ml_series(math.inf, MlParams(alpha=0.5))

    def test_max_terms_warning(self):
        with pytest.warns(AccuracyWarning):
            ml_series(-3.0, MlParams(alpha=0.75, series_max_terms=5))

    def test_cancellation_guard_warning(self):
        # far outside the trustworthy range: peak partial sum dwarfs the value
        with pytest.warns(AccuracyWarning):
            ml_series(-40.0, MlParams(alpha=0.75))


class TestStretchedExp:
    def test_t_zero(self):
        assert ml_stretched_exp(2.0, 0.0, 0.75) == 1.0

    def test_alpha_one(self):
        assert ml_stretched_exp(1.0, 1.0, 1.0) == pytest.approx(math.exp(-1), rel=1e-15)

    def test_short_time_agreement_with_series(self):
        # first-order agreement only: at lambda=2, t=0.01, alpha=0.75 the gap
        # is 5.980e-4 (reference value), dominated by the quadratic term
        diff = abs(ml_stretched_exp(2.0, 0.01, 0.75)
                   - ml_series(-2.0 * 0.01 ** 0.75, MlParams(alpha=0.75)))
        assert diff == pytest.approx(5.97999651e-4, rel=1e-6)
        # and the gap closes to first order as t -> 0
        diff_small = abs(ml_stretched_exp(2.0, 1e-4, 0.75)
                         - ml_series(-2.0 * 1e-4 ** 0.75, MlParams(alpha=0.75)))
        assert diff_small < 1e-5

    def test_negative_t_rejected(self):
        with pytest.raises(ValueError):
            ml_stretched_exp(1.0, -0.5, 0.75)


class TestAsymptotic:
    def test_leading_term_value(self):
        # x^-1 / Gamma(1 - alpha) at alpha = 1/2: 1e-6 / sqrt(pi)
        got = ml_asymptotic(1e6, 0.5, n_terms=1)
        assert got == pytest.approx(1e-6 / math.sqrt(math.pi), rel=1e-12)

    def test_one_term_within_five_percent(self, ml_ref):
        ref = float(ml_ref(-100.0, 0.75))
        assert ml_asymptotic(100.0, 0.75, 1) == pytest.approx(ref, rel=0.05)

    def test_three_terms_beat_one(self, ml_ref):
        ref = float(ml_ref(-100.0, 0.75))
        e1 = abs(ml_asymptotic(100.0, 0.75, 1) - ref)
        e3 = abs(ml_asymptotic(100.0, 0.75, 3) - ref)
        assert e3 < e1

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            ml_asymptotic(-1.0, 0.75)
        with pytest.raises(ValueError):
            ml_asymptotic(10.0, 1.0)
        with pytest.raises(ValueError):
            ml_asymptotic(10.0, 0.75, n_terms=0)


class TestEval:
    def test_at_zero(self):
        for alpha in A_GRID + [1.0]:
            assert ml_eval(0.0, MlParams(alpha=alpha)) == 1.0

    def test_alpha_one_exponential_identity(self):
        z = np.linspace(-20.0, 5.0, 100)
        got = ml_eval(z, MlParams(alpha=1.0))
        assert np.all(np.abs(got - np.exp(z)) <= 1e-12 * np.maximum(1.0, np.exp(z)))

    def test_deep_negative_matches_reference(self, ml_ref):
        ref = float(ml_ref(-50.0, 0.9))
        assert ml_eval(-50.0, MlParams(alpha=0.9)) == pytest.approx(ref, rel=1e-8)

    @pytest.mark.parametrize("alpha", A_GRID)
    def test_scattered_reference_values(self, alpha, ml_ref):
        for x in [0.3, 2.0, 7.0, 12.0, 30.0, 75.0, 300.0, 1e4]:
            ref = float(ml_ref(-x, alpha))
            assert ml_eval(-x, MlParams(alpha=alpha)) == pytest.approx(ref, rel=2e-7), \
                f"x={x}"

    @pytest.mark.parametrize("alpha", A_GRID)
    def test_monotone_decreasing_on_negative_axis(self, alpha):
        x = np.linspace(0.0, 100.0, 40)
        vals = ml_eval(-x, MlParams(alpha=alpha))
        assert np.all(np.diff(vals) < 0)

    @pytest.mark.parametrize("alpha", A_GRID)
    def test_branch_seam_agreement(self, alpha):
        # series vs quadrature at the series cutoff, quadrature vs asymptotic
        # at the far switch; both seams must agree much tighter than 1e-6
        p = MlParams(alpha=alpha)
        cutoff = p.series_neg_cutoff
        from fracspec.mittag_leffler import _integral_core
        s = ml_series(-cutoff, p)
        q = float(_integral_core(np.array([cutoff]), alpha)[0])
        assert abs(s - q) / abs(s) < 1e-6
        q50 = float(_integral_core(np.array([p.asymptote_switch]), alpha)[0])
        a50 = ml_asymptotic(p.asymptote_switch, alpha)
        assert abs(q50 - a50) / abs(q50) < 1e-6

    def test_array_shape_and_scalar(self):
        p = MlParams(alpha=0.75)
        out = ml_eval(np.array([-1.0, -10.0, -100.0]), p)
        assert out.shape == (3,)
        assert isinstance(ml_eval(-1.0, p), float)

    def test_convenience_wrapper(self):
        assert mittag_leffler(-5.0, 1.0) == pytest.approx(math.exp(-5), rel=1e-15)


@settings(max_examples=60, deadline=None)
@given(x=st.floats(min_value=0.0, max_value=1e4),
       alpha=st.floats(min_value=0.05, max_value=1.0))
def test_positivity_on_negative_axis(x, alpha):
    # accuracy warnings may fire for alpha -> 1 near the series cutoff; the
    # sign is robust regardless
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AccuracyWarning)
        assert ml_eval(-x, MlParams(alpha=alpha)) > 0.0


@settings(max_examples=40, deadline=None)
@given(x1=st.floats(min_value=0.0, max_value=99.0),
       gap=st.floats(min_value=1e-3, max_value=10.0),
       alpha=st.sampled_from(A_GRID))
def test_complete_monotonicity_spot(x1, gap, alpha):
    p = MlParams(alpha=alpha)
    assert ml_eval(-(x1 + gap), p) < ml_eval(-x1, p)
