import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nbuetest.errors import BadParameter, NonpositiveUserConstant, UnknownScale
from nbuetest.samples import make_sample
from nbuetest.statistic import (
    HP1975,
    check_scale_for,
    coefficients,
    default_scale,
    gamma_star,
    gamma_star_batch,
    gamma_star_order_form,
    generalized,
    scale,
)

from oracles import gamma_order_form_py, hp1975_py

# 50-digit mpmath evaluation of 4 * 0.5**0.25 - 3.2
E2_N2_QUARTER = 0.16358566101485817212


lifetimes = st.lists(
    st.one_of(st.just(0.0), st.floats(min_value=1e-6, max_value=1e6)),
    min_size=2, max_size=60,
).filter(lambda v: any(x > 0 for x in v))
js = st.sampled_from([0.25, 0.5, 1.0, 2.0])


class TestCoefficients:
    def test_n2_j1(self):
        assert list(coefficients(2, 1).e) == [0.5, 0.0]

    def test_n4_j1(self):
        assert list(coefficients(4, 1).e) == [0.5, 0.25, 0.0, -0.25]

    def test_n2_quarter(self):
        e = coefficients(2, 0.25).e
        assert e[0] == 0.8
        assert e[1] == pytest.approx(E2_N2_QUARTER, abs=1e-15)

    @pytest.mark.parametrize("n", [2, 3, 7, 50, 100])
    def test_j1_closed_form(self, n):
        i = np.arange(1, n + 1)
        assert np.array_equal(coefficients(n, 1).e, (n + 2 - 2 * i) / (2 * n))

    @pytest.mark.parametrize("n,j", [(2, 0.25), (10, 0.5), (60, 0.25), (100, 2.0), (37, 3.7)])
    def test_strictly_decreasing_and_top(self, n, j):
        e = coefficients(n, j).e
        assert np.all(np.diff(e) < 0)
        assert e[0] == 1 / (j + 1)

    @pytest.mark.parametrize("n,j", [(1, 1.0), (0, 1.0), (5, 0.0), (5, -1.0), (5, float("nan"))])
    def test_bad_parameters(self, n, j):
        with pytest.raises(BadParameter):
            coefficients(n, j)

    def test_hp1975_shift(self):
        n = 6
        np.testing.assert_allclose(coefficients(n, HP1975).e,
                                   coefficients(n, 1).e - 1 / (2 * n), atol=1e-16)


class TestGammaStar:
    def test_two_points_j1(self):
        assert gamma_star(make_sample([1, 3]), 1.0) == 0.25
        assert gamma_star_order_form(make_sample([1, 3]), 1.0) == pytest.approx(0.25, abs=1e-15)

    @pytest.mark.parametrize("n", [2, 5, 30])
    @pytest.mark.parametrize("j", [0.25, 1.0, 2.0])
    def test_constant_sample(self, n, j):
        assert gamma_star(make_sample([3.3] * n), j) == pytest.approx(1 / (j + 1), abs=1e-15)

    def test_two_points_hp1975(self):
        assert gamma_star(make_sample([1, 3]), HP1975) == pytest.approx(0.0, abs=1e-15)
        assert gamma_star_order_form(make_sample([1, 3]), HP1975) == pytest.approx(0.0, abs=1e-15)

    @settings(max_examples=400, deadline=None)
    @given(lifetimes, js)
    def test_dual_form_agreement(self, values, j):
        s = make_sample(values)
        a = gamma_star(s, j)
        assert abs(a - gamma_star_order_form(s, j)) <= 1e-12
        assert abs(a - gamma_order_form_py(values, j)) <= 1e-12

    @settings(max_examples=300, deadline=None)
    @given(lifetimes, js, st.floats(min_value=1e-3, max_value=1e3))
    def test_scale_invariance(self, values, j, c):
        s = make_sample(values)
        scaled = make_sample([c * v for v in values])
        a, b = gamma_star(s, j), gamma_star(scaled, j)
        assert abs(a - b) <= 1e-12 * max(1.0, abs(a))

    @settings(max_examples=300, deadline=None)
    @given(lifetimes, js)
    def test_range(self, values, j):
        s = make_sample(values)
        e = coefficients(s.n, j).e
        g = gamma_star(s, j)
        assert e[-1] - 1e-15 <= g <= e[0] + 1e-15

    @settings(max_examples=300, deadline=None)
    @given(lifetimes)
    def test_variant_gap(self, values):
        s = make_sample(values)
        assert abs(gamma_star(s, 1.0) - gamma_star(s, HP1975) - 1 / (2 * s.n)) <= 1e-12
        assert abs(gamma_star(s, HP1975) - hp1975_py(values)) <= 1e-12

    def test_batch_matches_scalar(self):
        rng = np.random.default_rng(3)
        x = rng.exponential(size=(50, 9))
        for v in (generalized(0.25), generalized(1.0), HP1975):
            got = gamma_star_batch(x, coefficients(9, v))
            want = [gamma_star(make_sample(row), v) for row in x]
            np.testing.assert_allclose(got, want, atol=1e-13)


class TestScale:
    def test_j_one(self):
        sv = scale(0.25, 2, "paper_j_one")
        assert sv.scaled == pytest.approx(1.224745, abs=1e-6)
        assert sv.scale_factor == math.sqrt(24)

    def test_none(self):
        assert scale(-0.3, 17, "none").scaled == -0.3

    def test_j_quarter_table_cell(self):
        # n=2, alpha=0.05 cell of the j=0.25 table is printed as 0.4233
        assert abs(scale(0.1954069, 2, "paper_j_quarter").scaled - 0.4233) <= 4e-4

    def test_user(self):
        sv = scale(0.5, 4, "user", 3.0)
        assert sv.scaled == pytest.approx(3.0)

    @pytest.mark.parametrize("c", [None, 0.0, -1.0])
    def test_user_nonpositive(self, c):
        with pytest.raises(NonpositiveUserConstant):
            scale(0.5, 4, "user", c)

    def test_unknown(self):
        with pytest.raises(UnknownScale):
            scale(0.5, 4, "sqrt")

    @given(st.floats(-10, 10), st.integers(2, 500), st.sampled_from(["paper_j_one", "paper_j_quarter"]))
    def test_scaled_is_factor_times_raw(self, x, n, name):
        sv = scale(x, n, name)
        assert sv.scaled == sv.scale_factor * sv.raw

    def test_defaults_and_hp_restriction(self):
        assert default_scale(0.25) == "paper_j_quarter"
        assert default_scale(1.0) == "paper_j_one"
        assert default_scale(HP1975) == "paper_j_one"
        assert default_scale(0.5) == "none"
        check_scale_for(HP1975, "paper_j_one")
        with pytest.raises(BadParameter):
            check_scale_for(HP1975, "paper_j_quarter")
