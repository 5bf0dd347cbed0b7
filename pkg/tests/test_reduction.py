"""Moment-program assembly: data layout, embedding, moment-matrix structure."""

import json

import numpy as np
import pytest

from conftest import constant_row, make_toy_instance
from oracles import trapezoid_coefficients
from trigsip.instances import SipInstance, builtin_example
from trigsip.reduction import (
    EmbeddedLmi,
    MomentLmi,
    build_complex_moment_program,
    build_real_moment_program,
    embed_hermitian,
    skew_from_moments,
    toeplitz_from_moments,
)
from trigsip.spectral import fourier_table, reflect_even
from trigsip.sdp import solve_sdp


class TestToeplitzFromMoments:
    def test_unit_vector_gives_identity(self):
        assert np.array_equal(toeplitz_from_moments([1.0, 0.0, 0.0]), np.eye(3))

    def test_all_ones_is_psd(self):
        T = toeplitz_from_moments(np.ones(5))
        assert np.array_equal(T, np.ones((5, 5)))
        assert np.linalg.eigvalsh(T)[0] >= -1e-12

    def test_symmetrized_point_mass_is_psd(self):
        w = np.cos(1.3 * np.arange(7))
        T = toeplitz_from_moments(w)
        assert np.allclose(T, T.T, atol=0)
        assert np.linalg.eigvalsh(T)[0] >= -1e-10


class TestSkewFromMoments:
    def test_layout(self):
        V = skew_from_moments([2.0, 3.0])
        assert np.array_equal(V, np.array([
            [0.0, 2.0, 3.0],
            [-2.0, 0.0, 2.0],
            [-3.0, -2.0, 0.0],
        ]))
        assert np.array_equal(V, -V.T)


class TestEmbedHermitian:
    def test_identity(self):
        assert np.array_equal(embed_hermitian(np.eye(3), np.zeros((3, 3))), np.eye(6))

    def test_unit_imaginary_moment(self):
        # embeds the Hermitian matrix [[1, i], [-i, 1]] with spectrum {0, 2}
        M = embed_hermitian(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))
        assert np.allclose(np.linalg.eigvalsh(M), [0.0, 0.0, 2.0, 2.0], atol=1e-12)

    def test_zero(self):
        M = embed_hermitian(np.zeros((2, 2)), np.zeros((2, 2)))
        assert np.array_equal(M, np.zeros((4, 4)))

    def test_symmetry_checked(self):
        with pytest.raises(ValueError, match="skew"):
            embed_hermitian(np.eye(2), np.eye(2))
        with pytest.raises(ValueError, match="symmetric"):
            embed_hermitian(np.array([[1.0, 2.0], [0.0, 1.0]]), np.zeros((2, 2)))
        with pytest.raises(ValueError):
            embed_hermitian(np.eye(2), np.zeros((3, 3)))


class TestEmbeddingPsdEquivalence:
    def test_embedded_spectrum_doubles_hermitian_spectrum(self):
        rng = np.random.default_rng(2024)
        for K in (2, 5, 10):
            for trial in range(100):
                w = rng.standard_normal(K + 1)
                v = rng.standard_normal(K)
                if trial % 2 == 0:
                    # shift half the draws to PSD so both verdicts occur
                    H0 = toeplitz_from_moments(w) + 1j * skew_from_moments(v)
                    lam0 = float(np.linalg.eigvalsh(H0)[0].real)
                    w = w.copy()
                    w[0] += max(0.0, -lam0) + rng.uniform(0.01, 1.0)
                H = toeplitz_from_moments(w) + 1j * skew_from_moments(v)
                M = embed_hermitian(toeplitz_from_moments(w), skew_from_moments(v))
                eig_h = np.linalg.eigvalsh(H)
                eig_m = np.linalg.eigvalsh(M)
                assert np.max(np.abs(eig_m - np.repeat(eig_h, 2))) <= 1e-8
                assert (eig_h[0] >= -1e-10) == (eig_m[0] >= -1e-10)


class TestAtomicMeasureMoments:
    def test_atomic_measures_give_psd_embeddings(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            K = int(rng.integers(2, 11))
            n_atoms = int(rng.integers(1, 6))
            lam = rng.uniform(0.0, 2.0, n_atoms)
            ts = rng.uniform(0.0, 2.0 * np.pi, n_atoms)
            k = np.arange(K + 1)
            w = (lam[:, None] * np.cos(np.outer(ts, k))).sum(axis=0)
            v = -(lam[:, None] * np.sin(np.outer(ts, k))).sum(axis=0)
            M = embed_hermitian(toeplitz_from_moments(w), skew_from_moments(v[1:]))
            assert np.linalg.eigvalsh(M)[0] >= -1e-10


class TestBuildRealMomentProgram:
    def test_constant_table(self):
        inst = SipInstance(n=1, c=np.array([1.0]),
                           rows=(constant_row(1.0), constant_row(-1.0)), label="c")
        prog = build_real_moment_program(fourier_table(inst, 4), inst.c)
        assert np.allclose(prog.p, [1.0, 0, 0, 0, 0], atol=1e-13)
        assert np.allclose(prog.E, [[-1.0, 0, 0, 0, 0]], atol=1e-13)
        assert np.array_equal(prog.c, inst.c)
        assert prog.K == 4

    def test_example5_analytic(self):
        inst = builtin_example(5)
        prog = build_real_moment_program(fourier_table(inst, 20, mode="analytic"), inst.c)
        expected_p = np.zeros(21)
        expected_p[0] = 1.0
        assert np.array_equal(prog.p, expected_p)
        for j in range(1, 11):
            expected = np.zeros(21)
            expected[2 * j - 1] = 2.0
            assert np.array_equal(prog.E[j - 1], expected)

    def test_example1_against_quadrature_oracle(self):
        inst = builtin_example(1, 5)
        refl = reflect_even(inst)
        # N chosen dense enough that DFT aliasing is below the oracle tolerance
        prog = build_real_moment_program(fourier_table(inst, 8, N=16384), inst.c)
        for j in range(1, 6):
            exact = trapezoid_coefficients(refl.rows[j], 8).real
            expected = np.concatenate([[exact[0]], 2.0 * exact[1:]])
            assert np.max(np.abs(prog.E[j - 1] - expected)) <= 1e-6, j

    def test_doubling_convention(self):
        # p[0] = r[0][0], p[k] = 2 r[0][k]; same per constraint row
        inst = builtin_example(1, 5)
        tab = fourier_table(inst, 8)
        prog = build_real_moment_program(tab, inst.c)
        assert prog.p[0] == tab.r[0][0]
        assert np.array_equal(prog.p[1:], 2.0 * tab.r[0][1:])
        for j in range(1, 6):
            assert prog.E[j - 1][0] == tab.r[j][0]
            assert np.array_equal(prog.E[j - 1][1:], 2.0 * tab.r[j][1:])

    def test_rejects_nonzero_imaginary_parts(self):
        inst = builtin_example(1, 5)
        tab = fourier_table(inst, 8, mode="direct_dft")
        with pytest.raises(ValueError, match="imaginary"):
            build_real_moment_program(tab, inst.c)

    def test_json_roundtrip(self):
        inst = builtin_example(1, 5)
        prog = build_real_moment_program(fourier_table(inst, 8), inst.c)
        doc = json.loads(prog.to_json())
        assert set(doc) == {"K", "p", "E", "c"}
        back = MomentLmi.from_json(prog.to_json())
        assert np.array_equal(back.p, prog.p)
        assert np.array_equal(back.E, prog.E)


class TestBuildComplexMomentProgram:
    def test_zero_s_table_degenerates_to_real_path(self):
        inst = builtin_example(1, 5)
        tab = fourier_table(inst, 8)
        cplx = build_complex_moment_program(tab, inst.c)
        assert np.array_equal(cplx.q, np.zeros_like(cplx.q))
        assert np.array_equal(cplx.F, np.zeros_like(cplx.F))

    def test_mixed_trig_row_coefficients(self):
        inst = SipInstance(n=1, c=np.array([1.0]),
                           rows=(lambda t: np.cos(t) + np.sin(t), constant_row(-1.0)),
                           label="mix")
        prog = build_complex_moment_program(fourier_table(inst, 1, mode="direct_dft"),
                                            inst.c)
        assert prog.p[1] == pytest.approx(1.0, abs=1e-6)
        assert prog.q[0] == pytest.approx(1.0, abs=1e-6)

    def test_same_table_value_agreement_with_real_path(self):
        # on an all-zero-s table both assemblies describe the same program
        inst = builtin_example(1, 5)
        tab = fourier_table(inst, 8)
        tol = 1e-8
        real_sol = solve_sdp(build_real_moment_program(tab, inst.c).sdp_problem(), tol=tol)
        cplx_sol = solve_sdp(build_complex_moment_program(tab, inst.c).sdp_problem(), tol=tol)
        assert real_sol.status == "optimal" and cplx_sol.status == "optimal"
        v_real = float(inst.c @ real_sol.x_multipliers)
        v_cplx = float(inst.c @ cplx_sol.x_multipliers)
        assert abs(v_real - v_cplx) <= 10.0 * tol

    def test_json_roundtrip(self):
        inst = builtin_example(1, 5)
        prog = build_complex_moment_program(fourier_table(inst, 8), inst.c)
        doc = json.loads(prog.to_json())
        assert set(doc) == {"K", "p", "q", "E", "F", "c"}
        back = EmbeddedLmi.from_json(prog.to_json())
        assert np.array_equal(back.q, prog.q)
        assert np.array_equal(back.F, prog.F)
