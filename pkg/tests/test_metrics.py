"""Improvement metrics against a naive per-sample oracle."""

import math
import warnings

import numpy as np
import pytest

from xlalign import (
    EmbeddingSet,
    LinearMap,
    PairedEmbeddings,
    evaluate,
    improvement_report,
    mean_distance,
)
from xlalign.errors import (
    DegenerateDenominatorError,
    DimensionMismatchError,
    ZeroNormRowError,
)

from conftest import make_pairs


def metrics_oracle(original, mapped, target):
    """Plain-Python per-sample loop: distances, cosines, step counts."""
    n = len(original)
    dist_orig, dist_mapped, cos_orig, cos_mapped = [], [], [], []
    for e, e_tilde, e_prime in zip(original, mapped, target):
        dist_orig.append(math.sqrt(sum((a - b) ** 2 for a, b in zip(e, e_prime))))
        dist_mapped.append(math.sqrt(sum((a - b) ** 2 for a, b in zip(e_tilde, e_prime))))

        def cosine(x, y):
            nx = math.sqrt(sum(v * v for v in x))
            ny = math.sqrt(sum(v * v for v in y))
            return sum(a * b for a, b in zip(x, y)) / (nx * ny)

        cos_orig.append(cosine(e, e_prime))
        cos_mapped.append(cosine(e_tilde, e_prime))
    d = sum(dist_orig) / n
    d_tilde = sum(dist_mapped) / n
    return {
        "dD": (d - d_tilde) / min(d, d_tilde),
        "dC": sum(cm - co for cm, co in zip(cos_mapped, cos_orig)) / n,
        "fD": sum(1 for do, dm in zip(dist_orig, dist_mapped) if do - dm > 0) / n,
        "fC": sum(1 for co, cm in zip(cos_orig, cos_mapped) if cm - co > 0) / n,
        "d": d,
        "d_tilde": d_tilde,
    }


class TestMeanDistance:
    def test_coincident_sets(self, rng):
        s = EmbeddingSet("en", rng.standard_normal((5, 3)))
        assert mean_distance(s, s) == 0.0

    def test_hand_example(self):
        x = EmbeddingSet("en", [[1.0, 0.0], [0.0, 1.0]])
        y = EmbeddingSet("de", [[0.0, 1.0], [0.0, 1.0]])
        assert mean_distance(x, y) == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-12)

    def test_homogeneous_under_scaling(self, rng):
        a = rng.standard_normal((8, 4))
        b = rng.standard_normal((8, 4))
        base = mean_distance(EmbeddingSet("en", a), EmbeddingSet("de", b))
        for c in (2.0, -3.5, 0.25):
            scaled = mean_distance(EmbeddingSet("en", c * a), EmbeddingSet("de", c * b))
            assert scaled == pytest.approx(abs(c) * base, rel=1e-12)

    def test_count_mismatch_errors(self, rng):
        x = EmbeddingSet("en", rng.standard_normal((3, 2)))
        y = EmbeddingSet("de", rng.standard_normal((4, 2)))
        with pytest.raises(DimensionMismatchError):
            mean_distance(x, y)


class TestEvaluate:
    def test_identity_map_scores_exactly_zero(self):
        pairs = make_pairs(20, 5, seed=3)
        report = evaluate(LinearMap.identity(5), pairs)
        assert report.dD == 0.0
        assert report.dC == 0.0
        assert report.fD == 0.0
        assert report.fC == 0.0
        assert report.n == 20

    def test_hand_computed_two_dim_example(self):
        pairs = PairedEmbeddings(
            EmbeddingSet("en", [[1.0, 0.0]]),
            EmbeddingSet("de", [[0.0, 1.0]]),
        )
        fitted = LinearMap(A=[[0.5, 0.0], [0.0, 0.5]], b=[0.0, 0.5])
        report = evaluate(fitted, pairs)
        assert report.dD == pytest.approx(1.0, abs=1e-12)
        assert report.dC == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-6)
        assert report.fD == 1.0
        assert report.fC == 1.0
        assert report.d_original == pytest.approx(math.sqrt(2.0), abs=1e-15)
        assert report.d_mapped == pytest.approx(math.sqrt(0.5), abs=1e-15)

    def test_matches_naive_oracle_on_random_inputs(self, rng):
        for trial in range(30):
            n = int(rng.integers(1, 200))
            dim = int(rng.integers(1, 9))
            pairs = make_pairs(n, dim, seed=1000 + trial)
            fitted = LinearMap(
                A=rng.standard_normal((dim, dim)),
                b=rng.standard_normal(dim),
            )
            mapped = pairs.source.data @ fitted.A.T + fitted.b
            if (np.linalg.norm(mapped, axis=1) == 0.0).any():
                continue
            report = evaluate(fitted, pairs)
            want = metrics_oracle(pairs.source.data, mapped, pairs.target.data)
            assert report.dD == pytest.approx(want["dD"], abs=1e-12)
            assert report.dC == pytest.approx(want["dC"], abs=1e-12)
            assert report.fD == want["fD"]
            assert report.fC == want["fC"]

    def test_fractions_are_multiples_of_one_over_n(self, rng):
        for trial in range(10):
            n = int(rng.integers(1, 50))
            pairs = make_pairs(n, 3, seed=trial)
            fitted = LinearMap(A=rng.standard_normal((3, 3)), b=rng.standard_normal(3))
            report = evaluate(fitted, pairs)
            for frac in (report.fD, report.fC):
                assert frac == round(frac * n) / n

    def test_antisymmetric_under_role_swap(self, rng):
        pairs = make_pairs(40, 4, seed=6)
        fitted = LinearMap(A=rng.standard_normal((4, 4)), b=rng.standard_normal(4))
        mapped = EmbeddingSet("en~mapped", pairs.source.data @ fitted.A.T + fitted.b)
        forward = improvement_report(pairs.source, mapped, pairs.target)
        backward = improvement_report(mapped, pairs.source, pairs.target)
        assert backward.dD == pytest.approx(-forward.dD, rel=1e-12)

    def test_invariant_under_joint_rotation(self, rng):
        # rotating mapped and target together leaves all four scores put
        dim = 5
        pairs = make_pairs(30, dim, seed=9)
        fitted = LinearMap(A=rng.standard_normal((dim, dim)), b=rng.standard_normal(dim))
        base = evaluate(fitted, pairs)

        q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
        q *= np.sign(np.diag(r))
        src_rot = pairs.source.data @ q.T
        tgt_rot = pairs.target.data @ q.T
        # conjugated map sends rotated sources to rotated images
        fitted_rot = LinearMap(A=q @ fitted.A @ q.T, b=q @ fitted.b)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            pairs_rot = PairedEmbeddings(
                EmbeddingSet("en", src_rot), EmbeddingSet("de", tgt_rot)
            )
        rotated = evaluate(fitted_rot, pairs_rot)
        assert rotated.dD == pytest.approx(base.dD, abs=1e-10)
        assert rotated.dC == pytest.approx(base.dC, abs=1e-10)
        assert rotated.fD == pytest.approx(base.fD, abs=1e-10)
        assert rotated.fC == pytest.approx(base.fC, abs=1e-10)

    def test_degenerate_denominator_carries_distances(self):
        rows = np.random.default_rng(0).standard_normal((6, 3))
        pairs = PairedEmbeddings(EmbeddingSet("en", rows), EmbeddingSet("de", rows + 1.0))
        exact = LinearMap(A=np.eye(3), b=np.ones(3))
        with pytest.raises(DegenerateDenominatorError) as exc:
            evaluate(exact, pairs)
        assert exc.value.d_mapped < 1e-12
        assert exc.value.d_original > 0.0

    def test_zero_norm_row_names_index(self):
        pairs = PairedEmbeddings(
            EmbeddingSet("en", [[1.0, 0.0], [0.0, 0.0]]),
            EmbeddingSet("de", [[0.0, 1.0], [1.0, 1.0]]),
        )
        with pytest.raises(ZeroNormRowError) as exc:
            evaluate(LinearMap.identity(2), pairs)
        assert exc.value.row == 1
