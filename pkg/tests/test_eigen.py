import math

import numpy as np
import pytest

from signedcut import (
    DimensionTooLargeError,
    InsufficientSpectrumError,
    SolverConfig,
    Spectrum,
    StringSpec,
    dense_spectrum,
    dense_spectrum_deflated,
    eigenvector_condition_number,
    estimate_largest_eigenvalue,
    graph_from_edges,
    laplacian,
    lobpcg_smallest,
    path_string,
    spectral_gap,
    trivial_index,
)

from test_graph import random_graph


def path_eigenvalues(n):
    """Closed-form spectrum of the unit string: 2 - 2 cos(k pi / n)."""
    return 2.0 - 2.0 * np.cos(np.arange(n) * np.pi / n)


def angle_between(u, v):
    return math.acos(min(1.0, abs(float(u @ v))))


def make_spectrum(values, vectors=None):
    values = np.asarray(values, dtype=float)
    k = len(values)
    if vectors is None:
        vectors = np.eye(k)
    return Spectrum(
        eigenvalues=values,
        eigenvectors=np.asarray(vectors, dtype=float),
        residual_norms=np.zeros(k),
        converged=np.ones(k, dtype=bool),
    )


class TestDenseSpectrum:
    def test_unit_path_n3(self):
        s = dense_spectrum(laplacian(path_string(StringSpec(3)), "standard"))
        np.testing.assert_allclose(s.eigenvalues, [0, 1, 3], atol=1e-12)

    @pytest.mark.parametrize("n", [20, 75])
    def test_unit_path_closed_form(self, n):
        s = dense_spectrum(laplacian(path_string(StringSpec(n)), "standard"))
        np.testing.assert_allclose(s.eigenvalues, path_eigenvalues(n), atol=1e-10)

    def test_signed_single_negative_edge(self):
        g = graph_from_edges(2, [(0, 1, -1.0)])
        s = dense_spectrum(laplacian(g, "signed"))
        np.testing.assert_allclose(s.eigenvalues, [0, 2], atol=1e-14)
        null = s.eigenvectors[:, 0]
        assert abs(abs(null[0]) - abs(null[1])) < 1e-12 and null[0] * null[1] < 0

    def test_orthonormal_and_residuals(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            g = random_graph(rng)
            s = dense_spectrum(laplacian(g, "standard"))
            gram = s.eigenvectors.T @ s.eigenvectors
            assert np.abs(gram - np.eye(s.k)).max() <= 1e-10
            assert (np.diff(s.eigenvalues) >= -1e-12).all()
            assert s.residual_norms.max() <= 1e-10 * max(1.0, s.spread)

    def test_dimension_guard(self):
        op = laplacian(graph_from_edges(2500, [(0, 1, 1.0)]), "standard")
        with pytest.raises(DimensionTooLargeError):
            dense_spectrum(op)

    def test_deflated_removes_trivial(self):
        s = dense_spectrum_deflated(laplacian(path_string(StringSpec(10)), "standard"))
        assert s.k == 9
        np.testing.assert_allclose(s.eigenvalues, path_eigenvalues(10)[1:], atol=1e-10)
        ones = np.ones(10) / math.sqrt(10)
        assert np.abs(s.eigenvectors.T @ ones).max() <= 1e-10


class TestLobpcg:
    def test_unit_path_matches_oracle(self):
        op = laplacian(path_string(StringSpec(75)), "standard")
        cfg = SolverConfig(k=5, block_size=8, tol=1e-8, max_iter=500, seed=3)
        s, trace = lobpcg_smallest(op, cfg)
        oracle = dense_spectrum(op)
        assert s.converged.all()
        np.testing.assert_allclose(s.eigenvalues, oracle.eigenvalues[:5], atol=1e-7)
        for c in range(5):
            assert angle_between(s.eigenvectors[:, c], oracle.eigenvectors[:, c]) <= 1e-6

    def test_truncated_string_keeps_sign_change_at_negative_edge(self):
        g = path_string(StringSpec(75, overrides=((36, -0.05),)))
        op = laplacian(g, "standard")
        cfg = SolverConfig(k=5, block_size=5, tol=1e-8, max_iter=30, seed=11,
                           deflate_ones=True)
        s, trace = lobpcg_smallest(op, cfg)
        assert not s.converged.all()
        lead = s.eigenvectors[:, 0]
        assert lead[36] * lead[37] < 0

    def test_negative_eigenvalue_2x2_with_deflation(self):
        g = graph_from_edges(2, [(0, 1, -1.0)])
        op = laplacian(g, "standard")
        s, _ = lobpcg_smallest(op, SolverConfig(k=1, block_size=1, tol=1e-10,
                                                max_iter=50, seed=0, deflate_ones=True))
        assert s.eigenvalues[0] == pytest.approx(-2.0, abs=1e-10)
        v = s.eigenvectors[:, 0]
        assert abs(abs(v[0]) - abs(v[1])) < 1e-8 and v[0] * v[1] < 0

    def test_deflation_keeps_iterates_off_ones(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            g = random_graph(rng)
            op = laplacian(g, "standard")
            k = min(3, g.n - 1)
            cfg = SolverConfig(k=k, block_size=k, tol=1e-8, max_iter=500,
                               seed=int(rng.integers(1 << 20)), deflate_ones=True)
            s, _ = lobpcg_smallest(op, cfg)
            ones = np.ones(g.n) / math.sqrt(g.n)
            assert np.abs(s.eigenvectors.T @ ones).max() <= 1e-8

    def test_ritz_values_non_increasing(self):
        rng = np.random.default_rng(14)
        for _ in range(10):
            g = random_graph(rng)
            op = laplacian(g, "standard")
            k = min(4, g.n - 1)
            cfg = SolverConfig(k=k, block_size=k, tol=1e-9, max_iter=300,
                               seed=int(rng.integers(1 << 20)))
            _, trace = lobpcg_smallest(op, cfg)
            ritz = np.array(trace.ritz_values)
            if len(ritz) > 1:
                assert np.diff(ritz, axis=0).max() <= 1e-12

    def test_bitwise_deterministic(self):
        op = laplacian(path_string(StringSpec(40, overrides=((10, -0.3),))), "standard")
        cfg = SolverConfig(k=3, block_size=4, tol=1e-9, max_iter=200, seed=42)
        s1, t1 = lobpcg_smallest(op, cfg)
        s2, t2 = lobpcg_smallest(op, cfg)
        assert s1.eigenvalues.tobytes() == s2.eigenvalues.tobytes()
        assert s1.eigenvectors.tobytes() == s2.eigenvectors.tobytes()
        assert len(t1) == len(t2)
        for a, b in zip(t1.ritz_values, t2.ritz_values):
            assert a.tobytes() == b.tobytes()

    def test_unconverged_is_flagged_not_raised(self):
        op = laplacian(path_string(StringSpec(75)), "standard")
        cfg = SolverConfig(k=3, block_size=3, tol=1e-12, max_iter=3, seed=0)
        s, trace = lobpcg_smallest(op, cfg)
        assert not s.converged.all()
        assert len(trace) == 3

    def test_block_size_must_fit(self):
        op = laplacian(path_string(StringSpec(4)), "standard")
        with pytest.raises(ValueError):
            lobpcg_smallest(op, SolverConfig(k=4, block_size=4))

    def test_residual_norms_and_orthonormality(self):
        op = laplacian(path_string(StringSpec(30)), "standard")
        cfg = SolverConfig(k=3, block_size=5, tol=1e-9, max_iter=400, seed=5)
        s, _ = lobpcg_smallest(op, cfg)
        A = op.dense()
        for c in range(3):
            expect = np.linalg.norm(A @ s.eigenvectors[:, c]
                                    - s.eigenvalues[c] * s.eigenvectors[:, c])
            assert s.residual_norms[c] == pytest.approx(expect, rel=1e-6, abs=1e-12)
        gram = s.eigenvectors.T @ s.eigenvectors
        assert np.abs(gram - np.eye(3)).max() <= 1e-10
        assert (np.diff(s.eigenvalues) >= -1e-12).all()


class TestGapAndConditioning:
    def test_gap_simple(self):
        s = make_spectrum([0.0, 1.0, 3.0])
        assert spectral_gap(s, 1) == 1.0

    def test_gap_excluding_trivial(self):
        n = 4
        ones = np.ones(n) / 2.0
        Q, _ = np.linalg.qr(np.column_stack([ones, np.eye(n)[:, :3]]))
        s = make_spectrum([0.0, 1.0, 3.0, 4.0], Q)
        assert spectral_gap(s, 1, exclude_trivial=True) == 2.0
        assert spectral_gap(s, 1, exclude_trivial=False) == 1.0

    def test_gap_unit_path_closed_form(self):
        n = 75
        s = dense_spectrum(laplacian(path_string(StringSpec(n)), "standard"))
        got = spectral_gap(s, 1, exclude_trivial=True)
        lam = path_eigenvalues(n)
        assert got == pytest.approx(lam[2] - lam[1], abs=1e-10)

    def test_insufficient(self):
        s = make_spectrum([1.0])
        with pytest.raises(InsufficientSpectrumError):
            spectral_gap(s, 0)

    def test_condition_number_simple(self):
        s = make_spectrum([0.0, 1.0, 3.0])
        assert eigenvector_condition_number(s, 1) == pytest.approx(3.0)

    def test_condition_number_clustered_is_infinite(self):
        s = make_spectrum([0.0, 1.0, 1.0 + 1e-15, 3.0])
        assert math.isinf(eigenvector_condition_number(s, 1))

    def test_condition_number_with_supplied_top(self):
        s = make_spectrum([0.0, 1.0])
        assert eigenvector_condition_number(s, 0, largest_eigenvalue=10.0) == pytest.approx(10.0)

    def test_trivial_detection_needs_ones_alignment(self):
        s = make_spectrum([0.0, 1.0, 3.0])  # eigenvectors are coordinate axes
        assert trivial_index(s) is None
        n = 4
        Q, _ = np.linalg.qr(np.column_stack([np.ones(n) / 2.0, np.eye(n)[:, :3]]))
        s2 = make_spectrum([0.0, 1.0, 3.0, 4.0], Q)
        assert trivial_index(s2) == 0


def test_gap_study_ratios_depend_on_string_length():
    """Freeze the gap-ratio behavior at two string lengths.

    The 100-mass string with the special edge between vertices 37 and 38
    gives the headline ratios (roughly 4x, 1/3x, 12x); the 75-mass string
    compresses them, so only the condition-number ratio survives there.
    """
    from signedcut import gap_study

    long_row = gap_study(100, 36, (-0.05,))["sweep"][0]
    assert long_row["gap_standard_over_baseline"] == pytest.approx(4.22, abs=0.05)
    assert long_row["gap_signed_over_baseline"] == pytest.approx(0.293, abs=0.005)
    assert long_row["condition_signed_over_standard"] == pytest.approx(14.4, abs=0.2)

    short_row = gap_study(75, 36, (-0.05,))["sweep"][0]
    assert short_row["gap_standard_over_baseline"] == pytest.approx(1.795, abs=0.01)
    assert short_row["gap_signed_over_baseline"] == pytest.approx(0.166, abs=0.005)
    # the signed-over-standard conditioning penalty is stable across lengths
    assert 7.2 <= short_row["condition_signed_over_standard"] <= 16.8


def test_estimate_largest_eigenvalue():
    rng = np.random.default_rng(21)
    for _ in range(10):
        g = random_graph(rng)
        op = laplacian(g, "standard")
        top = float(np.linalg.eigvalsh(op.dense()).max())
        est = estimate_largest_eigenvalue(op, seed=1)
        assert est <= top + 1e-8
        assert est >= 0.5 * top - 1e-8
