"""Spectral pipeline: reflection, sampling, DFT, tables, truncated series."""

import json

import numpy as np
import pytest

from conftest import constant_row, make_toy_instance
from oracles import naive_dft, reflect_reference, trapezoid_coefficients
from trigsip.instances import builtin_example
from trigsip.spectral import (
    FourierTable,
    default_sample_count,
    dft_coefficients,
    eval_truncated,
    fourier_table,
    reflect_even,
    sample_uniform,
    truncated_rows,
)

TWO_PI = 2.0 * np.pi


class TestReflectEven:
    def test_branch_endpoints(self):
        for eid, n in ((1, 5), (2, 5), (5, 10)):
            inst = builtin_example(eid, n)
            refl = reflect_even(inst)
            for j in range(inst.n + 1):
                assert refl.rows[j](np.pi) == pytest.approx(inst.rows[j](0.0), abs=1e-12)
                assert refl.rows[j](0.0) == pytest.approx(inst.rows[j](TWO_PI), abs=1e-12)
                assert refl.rows[j](TWO_PI) == pytest.approx(refl.rows[j](0.0), abs=1e-12)

    def test_even_about_pi(self):
        t = np.linspace(0.0, np.pi, 1000)
        for eid, n in ((1, 5), (3, 8)):
            refl = reflect_even(builtin_example(eid, n))
            for j in range(refl.n + 1):
                left = refl.rows[j](t)
                right = refl.rows[j](TWO_PI - t)
                assert np.allclose(left, right, atol=1e-10), (eid, j)

    def test_matches_independent_reflection(self):
        t = np.linspace(0.0, TWO_PI, 2001)
        for eid, n in ((1, 5), (2, 8), (4, 9)):
            inst = builtin_example(eid, n)
            refl = reflect_even(inst)
            for j in range(inst.n + 1):
                expected = reflect_reference(inst.rows[j])(t)
                assert np.allclose(refl.rows[j](t), expected, atol=1e-12), (eid, j)

    def test_max_preserved_on_image_grid(self):
        # reflection is a change of variable: values on a grid equal the
        # original row's values on the image of that grid
        t = np.linspace(0.0, TWO_PI, 10_000)
        image = np.where(t <= np.pi, TWO_PI - 2.0 * t, 2.0 * t - TWO_PI)
        for eid, n in ((1, 5), (2, 8), (5, 10)):
            inst = builtin_example(eid, n)
            refl = reflect_even(inst)
            for j in range(inst.n + 1):
                m_refl = float(np.max(refl.rows[j](t)))
                m_orig = float(np.max(inst.rows[j](image)))
                assert m_refl == pytest.approx(m_orig, abs=1e-10), (eid, j)


class TestSampleUniform:
    def test_constant(self):
        assert np.array_equal(sample_uniform(constant_row(1.0), 4), np.ones(4))

    def test_cosine(self):
        assert np.allclose(sample_uniform(np.cos, 4), [1.0, 0.0, -1.0, 0.0], atol=1e-12)

    def test_reflected_example5_row_is_double_cosine(self):
        refl = reflect_even(builtin_example(5))
        samples = sample_uniform(refl.rows[1], 8)
        t = TWO_PI * np.arange(8) / 8
        assert np.allclose(samples, 2.0 * np.cos(t), atol=1e-12)

    def test_non_finite_sample_rejected(self):
        def bad(t):
            t = np.asarray(t, dtype=float)
            with np.errstate(divide="ignore"):
                return 1.0 / t

        with pytest.raises(ValueError, match="non-finite"):
            sample_uniform(bad, 8)


class TestDftCoefficients:
    def test_cosine_samples(self):
        c = dft_coefficients([1.0, 0.0, -1.0, 0.0], 1)
        assert c[0] == pytest.approx(0.0, abs=1e-15)
        assert c[1] == pytest.approx(0.5, abs=1e-15)

    def test_impulse(self):
        c = dft_coefficients([1.0, 0.0, 0.0, 0.0], 1)
        assert c[0] == pytest.approx(0.25, abs=1e-15)
        assert c[1] == pytest.approx(0.25, abs=1e-15)

    def test_aliasing_floor_enforced(self):
        with pytest.raises(ValueError, match="2K\\+2"):
            dft_coefficients(np.ones(8), 4)
        with pytest.raises(ValueError):
            dft_coefficients(np.ones(4), -1)

    def test_fast_path_matches_naive_sum(self):
        rng = np.random.default_rng(7)
        samples = rng.standard_normal(64)
        got = dft_coefficients(samples, 16)
        expected = naive_dft(samples, 16)
        scale = np.max(np.abs(expected))
        assert np.max(np.abs(got - expected)) <= 1e-12 * scale

    def test_fast_path_matches_naive_sum_many_sizes(self):
        rng = np.random.default_rng(123)
        for _ in range(50):
            N = int(rng.choice([64, 256, 1024]))
            K = int(rng.integers(1, min(40, (N - 2) // 2) + 1))
            samples = rng.standard_normal(N)
            got = dft_coefficients(samples, K)
            expected = naive_dft(samples, K)
            scale = max(1e-30, float(np.max(np.abs(expected))))
            assert np.max(np.abs(got - expected)) <= 1e-12 * scale

    def test_linearity(self):
        rng = np.random.default_rng(11)
        for N in (96, 128):  # exercises both the direct and the fast path
            f = rng.standard_normal(N)
            g = rng.standard_normal(N)
            lhs = dft_coefficients(2.5 * f - 1.25 * g, 10)
            rhs = 2.5 * dft_coefficients(f, 10) - 1.25 * dft_coefficients(g, 10)
            assert np.max(np.abs(lhs - rhs)) <= 1e-12

    def test_parseval_for_cosine_samples(self):
        for N, K in ((4, 1), (8, 3), (64, 31)):
            samples = sample_uniform(np.cos, N)
            c = dft_coefficients(samples, K)
            energy = float(np.mean(samples**2))
            # real samples: |c_{-k}| = |c_k|, so the two-sided sum doubles k >= 1
            spectral = float(np.abs(c[0]) ** 2 + 2.0 * np.sum(np.abs(c[1:]) ** 2))
            assert energy == pytest.approx(spectral, abs=1e-10)

    def test_parseval_for_band_limited_signal(self):
        rng = np.random.default_rng(3)
        N, K = 64, 31
        t = TWO_PI * np.arange(N) / N
        r = rng.standard_normal(9)
        s = rng.standard_normal(9)
        samples = r[0] + sum(
            2.0 * (r[k] * np.cos(k * t) + s[k] * np.sin(k * t)) for k in range(1, 9)
        )
        c = dft_coefficients(samples, K)
        energy = float(np.mean(samples**2))
        spectral = float(np.abs(c[0]) ** 2 + 2.0 * np.sum(np.abs(c[1:]) ** 2))
        assert energy == pytest.approx(spectral, abs=1e-10)


class TestDefaultSampleCount:
    def test_rule(self):
        assert default_sample_count(1) == 256
        assert default_sample_count(8) == 256
        assert default_sample_count(32) == 256
        assert default_sample_count(33) == 512
        assert default_sample_count(100) == 1024

    def test_always_resolves_k(self):
        for K in range(1, 300, 7):
            N = default_sample_count(K)
            assert N >= 2 * K + 2
            assert N & (N - 1) == 0


class TestFourierTable:
    def test_constant_instance(self):
        tab = fourier_table(make_toy_instance(), 4)
        assert tab.r[0][0] == pytest.approx(-1.0, abs=1e-14)
        assert np.max(np.abs(tab.r[:, 1:])) <= 1e-14
        assert np.array_equal(tab.s, np.zeros_like(tab.s))

    def test_example5_analytic_coefficients(self):
        tab = fourier_table(builtin_example(5), 20, mode="analytic")
        assert tab.source == "analytic"
        assert tab.r[0][0] == 1.0
        for j in range(1, 11):
            expected = np.zeros(21)
            expected[2 * j - 1] = 1.0
            assert np.array_equal(tab.r[j], expected)
        assert np.array_equal(tab.s, np.zeros_like(tab.s))

    def test_example5_analytic_agrees_with_dft(self):
        analytic = fourier_table(builtin_example(5), 20, mode="analytic")
        sampled = fourier_table(builtin_example(5), 20, mode="reflect_then_dft")
        # reflected rows are exact trig polynomials, so the DFT is exact
        assert np.max(np.abs(analytic.r - sampled.r)) <= 1e-12

    def test_analytic_mode_requires_registration(self):
        with pytest.raises(ValueError, match="closed-form"):
            fourier_table(builtin_example(1, 5), 8, mode="analytic")

    def test_example2_reflected_table_against_quadrature(self):
        inst = builtin_example(2, 5)
        refl = reflect_even(inst)
        exact = np.array(
            [trapezoid_coefficients(refl.rows[j], 16).real for j in range(6)]
        )
        # the N=256 default leaves visible aliasing from the 1/k^2 tails
        # of the kinked reflection; the quadrature-grade agreement needs a
        # denser sampling of the same rows
        tab_default = fourier_table(inst, 16, N=256)
        assert np.array_equal(tab_default.s, np.zeros_like(tab_default.s))
        assert np.max(np.abs(tab_default.r - exact)) <= 2.5e-4
        tab_dense = fourier_table(inst, 16, N=16384)
        assert np.max(np.abs(tab_dense.r - exact)) <= 1e-6

    def test_reflected_tables_are_real(self):
        # imaginary parts vanish to roundoff before zeroing and exactly after
        for eid, n in ((1, 5), (2, 8), (3, 8), (4, 9), (5, 10)):
            inst = builtin_example(eid, n)
            refl = reflect_even(inst)
            raw_imag = 0.0
            scale = 0.0
            for j in range(inst.n + 1):
                c = dft_coefficients(sample_uniform(refl.rows[j], 256), 16)
                raw_imag = max(raw_imag, float(np.max(np.abs(c.imag))))
                scale = max(scale, float(np.max(np.abs(c.real))))
            assert raw_imag <= 1e-10 * max(1.0, scale)
            tab = fourier_table(inst, 16, N=256)
            assert np.array_equal(tab.s, np.zeros_like(tab.s))

    def test_direct_mode_keeps_imaginary_parts(self):
        tab = fourier_table(builtin_example(1, 5), 16, mode="direct_dft")
        assert np.max(np.abs(tab.s)) > 1e-3
        assert np.all(tab.s[:, 0] == 0.0)

    def test_sample_floor_enforced(self):
        with pytest.raises(ValueError, match="2K\\+2"):
            fourier_table(builtin_example(1, 5), 16, N=32)

    def test_json_roundtrip(self):
        tab = fourier_table(builtin_example(1, 5), 8)
        doc = json.loads(tab.to_json())
        assert set(doc) == {"K", "N", "r", "s", "source"}
        back = FourierTable.from_json(tab.to_json())
        assert back.K == tab.K and back.N == tab.N and back.source == tab.source
        assert np.array_equal(back.r, tab.r)
        assert np.array_equal(back.s, tab.s)


class TestEvalTruncated:
    def test_constant_table(self):
        tab = fourier_table(make_toy_instance(), 4)
        t = np.linspace(0.0, TWO_PI, 50)
        assert np.allclose(eval_truncated(tab, 0, t), -1.0, atol=1e-13)

    def test_single_cosine_coefficient(self):
        tab = FourierTable(K=1, N=4, r=np.array([[0.0, 0.5]]),
                           s=np.array([[0.0, 0.0]]), source="dft")
        assert eval_truncated(tab, 0, 0.0) == pytest.approx(1.0, abs=1e-15)

    def test_example5_analytic_row(self):
        tab = fourier_table(builtin_example(5), 20, mode="analytic")
        assert eval_truncated(tab, 1, np.pi / 3) == pytest.approx(1.0, abs=1e-12)

    def test_row_bounds_checked(self):
        tab = fourier_table(make_toy_instance(), 4)
        with pytest.raises(ValueError, match="row"):
            eval_truncated(tab, 5, 0.0)

    def test_truncated_rows_stacks_eval(self):
        tab = fourier_table(builtin_example(1, 5), 8)
        t = np.linspace(0.0, TWO_PI, 33)
        stacked = truncated_rows(tab, t)
        assert stacked.shape == (6, 33)
        for j in range(6):
            assert np.allclose(stacked[j], eval_truncated(tab, j, t), atol=1e-14)

    def test_truncation_error_decays_with_k(self):
        t = np.linspace(0.0, TWO_PI, 1000)
        for eid, n in ((1, 5), (2, 8), (3, 8), (4, 9), (5, 10)):
            inst = builtin_example(eid, n)
            refl = reflect_even(inst)
            for j in range(inst.n + 1):
                errs = []
                for K in (8, 16, 32):
                    tab = fourier_table(inst, K)
                    errs.append(
                        float(np.max(np.abs(eval_truncated(tab, j, t) - refl.rows[j](t))))
                    )
                assert errs[1] <= errs[0] + 1e-14, (eid, j, errs)
                assert errs[2] <= errs[1] + 1e-14, (eid, j, errs)
