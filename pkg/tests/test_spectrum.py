import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_two_branch
from lyapspec.errors import DegenerateSpectrum, OutOfDomain
from lyapspec.mapspec import MapSpec, construct_tn, make_two_branch, parse_spec, preset
from lyapspec.pressure import LN2, moment_arrays
from lyapspec.spectrum import (
    closed_form_two_branch,
    critical_alpha,
    dimension,
    domain,
    eval_spectrum,
    sample_alphas,
    sample_spectrum,
    spectrum_arrays,
    tau,
    tau_array,
)


class TestDomain:
    def test_s4(self):
        dom = domain(preset("S4"))
        assert dom.alpha_min == pytest.approx(math.log(5 / 4), abs=1e-12)
        assert dom.alpha_max == pytest.approx(math.log(3380), abs=1e-12)
        assert dom.contains(3.0) and not dom.contains(dom.alpha_min)

    def test_fig4(self):
        dom = domain(preset("Fig4"))
        assert dom.alpha_min == pytest.approx(math.log(2), abs=1e-14)
        assert dom.alpha_max == pytest.approx(100 * math.log(2), abs=1e-12)

    def test_degenerate(self):
        with pytest.raises(DegenerateSpectrum):
            domain(parse_spec("2 1/2"))
        with pytest.raises(DegenerateSpectrum):
            critical_alpha(parse_spec("2 1/4"))

    def test_two_values(self):
        dom = domain(parse_spec("1 1/2\n1 1/4"))
        assert (dom.alpha_min, dom.alpha_max) == pytest.approx((math.log(2), math.log(4)))
        assert dom.contains(critical_alpha(parse_spec("1 1/2\n1 1/4")))

    def test_s8_top(self):
        assert domain(preset("S8")).alpha_max == pytest.approx(29.7341, abs=1e-4)


class TestDimension:
    def test_symmetric_cantor(self):
        assert dimension(parse_spec("2 1/3")) == pytest.approx(math.log(2) / math.log(3), abs=1e-15)

    def test_single_class(self):
        assert dimension(parse_spec("2 1/4")) == pytest.approx(0.5, abs=1e-12)

    def test_s8_digits(self):
        assert abs(dimension(preset("S8")) - 0.865154) <= 1e-6

    def test_full_interval(self):
        assert dimension(parse_spec("2 1/2")) == 1.0

    @pytest.mark.parametrize(
        "name, value, tol", [("S4", 0.8167, 1e-3), ("S6", 0.8600, 1e-3), ("S8", 0.865154, 1e-5)]
    )
    def test_presets(self, name, value, tol):
        assert abs(dimension(preset(name)) - value) <= tol

    def test_moran_residual(self, preset_spec):
        assert abs(LN2 * moment_arrays(preset_spec, dimension(preset_spec))[0]) <= 1e-12

    def test_tn_dimension_bounded_by_first_class(self):
        # the j = 6 class alone already gives F(36/64) >= 1
        dim = dimension(construct_tn(30))
        assert 36 / 64 < dim < 36 / 64 + 1e-6


class TestTau:
    def test_inverse(self, preset_spec):
        alphas = sample_alphas(preset_spec, 200, 1e-3)
        t = tau_array(preset_spec, alphas)
        _, mean, _ = moment_arrays(preset_spec, -t)
        assert np.all(np.abs(mean - alphas) <= 1e-12 * (1 + alphas))
        assert np.max(np.abs(mean - alphas) / alphas) < 1e-13
        assert np.all(np.diff(t) > 0)

    def test_at_critical_alpha(self):
        spec = preset("S4")
        assert tau(spec, critical_alpha(spec)) == pytest.approx(-dimension(spec), abs=1e-8)

    def test_fig4_inflection_alpha(self):
        spec = preset("Fig4")
        assert 61.72 <= float(moment_arrays(spec, -tau(spec, 61.73))[1]) <= 61.74

    def test_scalar(self):
        spec = preset("S6")
        alpha = 5.0
        assert float(moment_arrays(spec, -tau(spec, alpha))[1]) == pytest.approx(alpha, rel=1e-14)

    def test_zero_at_counting_alpha(self, preset_spec):
        # p'(0) is the uniform average of the exponents over all branches
        alpha0 = float(moment_arrays(preset_spec, 0.0)[1])
        assert abs(tau(preset_spec, alpha0)) < 1e-12

    def test_dense_table_path(self):
        spec = preset("Fig6")
        alphas = sample_alphas(spec, 5000, 1e-4)
        t = tau_array(spec, alphas)
        _, mean, _ = moment_arrays(spec, -t)
        assert np.max(np.abs(mean - alphas) / alphas) < 1e-13

    @pytest.mark.parametrize("where", ["min", "max", "below", "above"])
    def test_outside(self, where):
        spec = preset("S4")
        dom = domain(spec)
        alpha = {
            "min": dom.alpha_min,
            "max": dom.alpha_max,
            "below": dom.alpha_min - 1,
            "above": dom.alpha_max + 1,
        }[where]
        with pytest.raises(OutOfDomain):
            tau(spec, alpha)


class TestClosedForm:
    def test_twenty_random_specs(self, rng):
        worst = 0.0
        for _ in range(20):
            spec = random_two_branch(rng, rng.uniform(1.1, 50.0))
            a, b = np.exp(np.sort(spec.lyapunov_exponents))
            alphas = sample_alphas(spec, 100, 1e-3)
            _, L, _, _ = spectrum_arrays(spec, alphas)
            exact = np.array([closed_form_two_branch(a, b, x) for x in alphas])
            worst = max(worst, float(np.max(np.abs(L - exact))))
        assert worst <= 1e-10

    @settings(max_examples=30, deadline=None)
    @given(st.floats(1.05, 3.0), st.floats(1.05, 30.0), st.floats(0.01, 0.99))
    def test_property(self, log2_a, ratio, frac):
        spec = MapSpec.from_classes([(0.0, -log2_a), (0.0, -ratio * log2_a)])
        a, b = 2.0**log2_a, 2.0 ** (ratio * log2_a)
        dom = domain(spec)
        alpha = dom.alpha_min + frac * dom.width
        assert eval_spectrum(spec, alpha).L == pytest.approx(
            closed_form_two_branch(a, b, alpha), abs=1e-10
        )

    def test_s4_extremes_thousand_points(self):
        spec = make_two_branch("4/5", "1/3380")
        alphas = sample_alphas(spec, 1002, 1e-4)[1:-1]
        _, L, _, _ = spectrum_arrays(spec, alphas)
        exact = [closed_form_two_branch(5 / 4, 3380, x) for x in alphas]
        assert np.max(np.abs(L - exact)) <= 1e-10
        assert eval_spectrum(spec, 4.4269).L == pytest.approx(
            closed_form_two_branch(5 / 4, 3380, 4.4269), abs=1e-10
        )

    def test_critical_value_is_dimension(self):
        spec = parse_spec("1 1/2\n1 1/4")
        value = closed_form_two_branch(2.0, 4.0, critical_alpha(spec))
        assert value == pytest.approx(dimension(spec), abs=1e-10)

    def test_endpoints_and_errors(self):
        assert closed_form_two_branch(2.0, 8.0, math.log(2)) == 0.0
        assert closed_form_two_branch(2.0, 8.0, math.log(8)) == 0.0
        with pytest.raises(OutOfDomain):
            closed_form_two_branch(2.0, 8.0, 0.1)
        with pytest.raises(OutOfDomain):
            closed_form_two_branch(8.0, 2.0, 1.0)


class TestShape:
    def test_critical_point(self, preset_spec):
        dim = dimension(preset_spec)
        pt = eval_spectrum(preset_spec, critical_alpha(preset_spec))
        assert abs(pt.L - dim) <= 1e-10
        assert abs(pt.dL) <= 1e-10
        assert pt.s == pytest.approx(dim, abs=1e-9)

    def test_argmax_matches_critical_alpha(self, preset_spec):
        alphas = sample_alphas(preset_spec, 20001, 1e-4)
        _, L, _, _ = spectrum_arrays(preset_spec, alphas)
        i = int(np.argmax(L))
        step = alphas[1] - alphas[0]
        assert abs(alphas[i] - critical_alpha(preset_spec)) <= step

    def test_bounds(self, preset_spec):
        dim = dimension(preset_spec)
        _, L, _, _ = spectrum_arrays(preset_spec, sample_alphas(preset_spec, 4000, 1e-6))
        assert np.all(L >= -1e-12)
        assert np.all(L <= dim + 1e-12)

    def test_derivative_sign(self, preset_spec):
        crit = critical_alpha(preset_spec)
        alphas = sample_alphas(preset_spec, 3000, 1e-4)
        _, _, dL, _ = spectrum_arrays(preset_spec, alphas)
        gap = np.abs(alphas - crit) > 1e-6 * domain(preset_spec).width
        assert np.all(dL[gap & (alphas < crit)] > 0)
        assert np.all(dL[gap & (alphas > crit)] < 0)

    def test_finite_differences(self, preset_spec):
        dom = domain(preset_spec)
        alphas = sample_alphas(preset_spec, 1000, 0.01)
        h = 1e-6 * dom.width
        _, L, dL, d2L = spectrum_arrays(preset_spec, alphas)
        _, Lp, dLp, _ = spectrum_arrays(preset_spec, alphas + h)
        _, Lm, dLm, _ = spectrum_arrays(preset_spec, alphas - h)
        fd1 = (Lp - Lm) / (2 * h)
        fd2 = (dLp - dLm) / (2 * h)
        assert np.max(np.abs(fd1 - dL)) / np.max(np.abs(dL)) <= 1e-6
        assert np.max(np.abs(fd2 - d2L)) / np.max(np.abs(d2L)) <= 1e-5

    def test_two_branch_is_concave_below_threshold(self):
        spec = make_two_branch("1/2", "1/16")
        _, _, _, d2L = spectrum_arrays(spec, sample_alphas(spec, 500, 1e-3))
        assert np.all(d2L < 0)


def test_sample_three_points():
    spec = preset("S4")
    dom = domain(spec)
    pts = sample_spectrum(spec, 3, 0.25)
    assert len(pts) == 3
    assert pts[1].alpha == pytest.approx(0.5 * (dom.alpha_min + dom.alpha_max), rel=1e-15)


def test_sample_fig4_bounds():
    spec = preset("Fig4")
    dim = dimension(spec)
    assert all(0 <= p.L <= dim for p in sample_spectrum(spec, 1000, 1e-4))


def test_sample_degenerate():
    with pytest.raises(DegenerateSpectrum):
        sample_spectrum(parse_spec("2 1/3"), 10, 0.1)


def test_sample_spectrum_fields():
    pts = sample_spectrum(preset("S4"), 5, 0.1)
    assert len(pts) == 5
    assert all(p.s == -p.t for p in pts)
    assert [p.alpha for p in pts] == sorted(p.alpha for p in pts)


@pytest.mark.parametrize("n, margin", [(1, 0.1), (10, 0.0), (10, 0.5), (10, -0.1)])
def test_sample_alphas_rejects(n, margin):
    with pytest.raises(ValueError):
        sample_alphas(preset("S4"), n, margin)
