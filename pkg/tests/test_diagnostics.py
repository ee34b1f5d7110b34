"""Column geometry diagnostics for fitted maps."""

import math

import numpy as np
import pytest

from xlalign import (
    DEFAULT_FLAG_THRESHOLD,
    LinearMap,
    column_cosines,
    column_norms,
    dilation_report,
    fit_procrustes,
    ortho_report,
)
from xlalign.errors import ZeroColumnError

from conftest import make_pairs


def cosine_oracle(A):
    """Double loop over column pairs, scalar math only."""
    A = np.asarray(A, dtype=float)
    dim = A.shape[1]
    out = []
    for j in range(dim):
        for k in range(j + 1, dim):
            num = sum(A[i, j] * A[i, k] for i in range(A.shape[0]))
            nj = math.sqrt(sum(A[i, j] ** 2 for i in range(A.shape[0])))
            nk = math.sqrt(sum(A[i, k] ** 2 for i in range(A.shape[0])))
            out.append(num / (nj * nk))
    return out


class TestColumnCosines:
    def test_identity_all_zero(self):
        p = column_cosines(np.eye(4))
        assert p.shape == (6,)
        assert np.all(p == 0.0)

    def test_matches_oracle(self, rng):
        for _ in range(20):
            dim = int(rng.integers(2, 8))
            A = rng.standard_normal((dim, dim))
            got = column_cosines(A)
            want = cosine_oracle(A)
            assert got == pytest.approx(want, abs=1e-12)

    def test_invariant_under_column_rescaling(self, rng):
        A = rng.standard_normal((5, 5))
        scales = rng.uniform(0.1, 10.0, size=5)
        assert column_cosines(A * scales) == pytest.approx(
            column_cosines(A), abs=1e-12
        )

    def test_zero_column_names_index(self):
        A = np.eye(3)
        A[:, 2] = 0.0
        with pytest.raises(ZeroColumnError) as exc:
            column_cosines(A)
        assert exc.value.column == 2


class TestOrthoReport:
    def test_shear_fixture(self):
        # columns (1,0) and (1,1): cosine 1/sqrt(2), above the default flag cut
        report = ortho_report(LinearMap(A=[[1.0, 1.0], [0.0, 1.0]], b=[0.0, 0.0]))
        expect = 1.0 / math.sqrt(2.0)
        assert report.mean_abs_p == pytest.approx(expect, abs=1e-12)
        assert report.sigma_p == pytest.approx(0.0, abs=1e-12)
        assert report.min_p == pytest.approx(expect, abs=1e-12)
        assert report.max_p == pytest.approx(expect, abs=1e-12)
        assert report.flagged_pairs == 1

    def test_default_threshold_value(self):
        assert DEFAULT_FLAG_THRESHOLD == pytest.approx(
            math.cos(0.75 * math.pi / 2.0), abs=1e-15
        )
        assert DEFAULT_FLAG_THRESHOLD == pytest.approx(0.38268, abs=1e-5)

    def test_orthogonal_matrix_scores_zero(self, rng):
        q, r = np.linalg.qr(rng.standard_normal((6, 6)))
        q *= np.sign(np.diag(r))
        report = ortho_report(LinearMap(A=q, b=np.zeros(6)))
        assert report.mean_abs_p < 1e-10
        assert report.sigma_p < 1e-10
        assert report.flagged_pairs == 0

    def test_sigma_is_population_std_of_signed_values(self, rng):
        for _ in range(10):
            dim = int(rng.integers(2, 7))
            A = rng.standard_normal((dim, dim))
            p = cosine_oracle(A)
            mean = sum(p) / len(p)
            want = math.sqrt(sum((v - mean) ** 2 for v in p) / len(p))
            report = ortho_report(LinearMap(A=A, b=np.zeros(dim)))
            assert report.sigma_p == pytest.approx(want, abs=1e-12)
            assert report.mean_abs_p == pytest.approx(
                sum(abs(v) for v in p) / len(p), abs=1e-12
            )
            assert report.min_p == pytest.approx(min(p), abs=1e-12)
            assert report.max_p == pytest.approx(max(p), abs=1e-12)

    def test_custom_threshold_changes_flag_count(self):
        fitted = LinearMap(A=[[1.0, 1.0], [0.0, 1.0]], b=[0.0, 0.0])
        assert ortho_report(fitted, threshold=0.9).flagged_pairs == 0
        assert ortho_report(fitted, threshold=0.5).flagged_pairs == 1

    def test_single_dim_has_no_pairs(self):
        report = ortho_report(LinearMap(A=[[3.0]], b=[0.0]))
        assert report.mean_abs_p == 0.0
        assert report.sigma_p == 0.0
        assert report.flagged_pairs == 0

    def test_procrustes_fit_passes_clean(self):
        pairs = make_pairs(200, 8, seed=11)
        result = fit_procrustes(pairs)
        report = ortho_report(result.map)
        assert report.mean_abs_p < 1e-10
        assert report.flagged_pairs == 0


class TestDilationReport:
    def test_diagonal_fixture(self):
        # norms 1 and 3: mean 2, population std 1, spread 2
        report = dilation_report(LinearMap(A=[[1.0, 0.0], [0.0, 3.0]], b=[0.0, 0.0]))
        assert report.alpha_bar == pytest.approx(2.0, abs=1e-12)
        assert report.nstd == pytest.approx(0.5, abs=1e-12)
        assert report.range == pytest.approx(1.0, abs=1e-12)
        assert report.min_alpha == pytest.approx(1.0, abs=1e-12)
        assert report.max_alpha == pytest.approx(3.0, abs=1e-12)

    def test_column_norms_match_oracle(self, rng):
        A = rng.standard_normal((4, 4))
        want = [math.sqrt(sum(A[i, j] ** 2 for i in range(4))) for j in range(4)]
        assert column_norms(A) == pytest.approx(want, abs=1e-12)

    def test_uniform_scaling_has_zero_spread(self, rng):
        q, r = np.linalg.qr(rng.standard_normal((5, 5)))
        q *= np.sign(np.diag(r))
        report = dilation_report(LinearMap(A=2.5 * q, b=np.zeros(5)))
        assert report.alpha_bar == pytest.approx(2.5, abs=1e-10)
        assert report.nstd < 1e-10
        assert report.range < 1e-10

    def test_scale_invariant_ratios(self, rng):
        A = rng.standard_normal((4, 4))
        base = dilation_report(LinearMap(A=A, b=np.zeros(4)))
        scaled = dilation_report(LinearMap(A=7.0 * A, b=np.zeros(4)))
        assert scaled.nstd == pytest.approx(base.nstd, rel=1e-12)
        assert scaled.range == pytest.approx(base.range, rel=1e-12)
        assert scaled.alpha_bar == pytest.approx(7.0 * base.alpha_bar, rel=1e-12)

    def test_procrustes_fit_is_uniform(self):
        pairs = make_pairs(200, 8, seed=12)
        result = fit_procrustes(pairs)
        report = dilation_report(result.map)
        assert report.nstd < 1e-9
        assert report.range < 1e-9
