import numpy as np
import pytest

from lblab.errors import AlignmentError, DegenerateInputError, InvalidInputError
from lblab.metrics import LearnabilityVector, correlation_matrix, pearson, rank_correlation


def _vector(scores, ids=None) -> LearnabilityVector:
    scores = np.asarray(scores, dtype=np.float64)
    return LearnabilityVector(scores, ids or tuple(f"s{i}" for i in range(scores.size)))


class TestPearson:
    def test_positive_linear(self):
        assert pearson([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0, abs=1e-12)

    def test_negative_linear(self):
        assert pearson([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0, abs=1e-12)

    def test_hand_value(self):
        assert pearson([1, 2, 3, 4], [1, 3, 2, 4]) == pytest.approx(0.8, abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            pearson([1, 2, 3], [1, 2])

    def test_too_short(self):
        with pytest.raises(InvalidInputError):
            pearson([1], [1])

    def test_constant_vector(self):
        with pytest.raises(DegenerateInputError):
            pearson([1, 1, 1], [1, 2, 3])

    @pytest.mark.parametrize("scale", [1e-300, 1e200, 1e300])
    def test_extreme_scale(self, scale):
        assert pearson([scale, 2 * scale, 3 * scale], [1, 2, 3]) == pytest.approx(1.0, abs=1e-12)
        assert pearson([1, 2, 3], [3 * scale, 2 * scale, scale]) == pytest.approx(-1.0, abs=1e-12)

    def test_properties(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            n = int(rng.integers(2, 50))
            x = rng.normal(size=n)
            y = rng.normal(size=n) + rng.normal() * x
            a, b = rng.uniform(0.01, 100.0), rng.uniform(-100.0, 100.0)
            r = pearson(x, y)
            assert abs(r) <= 1.0 + 1e-12
            assert pearson(y, x) == pytest.approx(r, abs=1e-12)
            assert pearson(x, x) == pytest.approx(1.0, abs=1e-12)
            assert pearson(x, a * y + b) == pytest.approx(r, abs=1e-9)


class TestRankCorrelation:
    def test_identical(self):
        v = _vector([0.9, 0.2, 0.5, 0.7])
        assert rank_correlation(v, v) == pytest.approx(1.0, abs=1e-12)

    def test_reversed(self):
        assert rank_correlation(_vector([0.9, 0.5, 0.1]), _vector([0.1, 0.5, 0.9])) == pytest.approx(-1.0, abs=1e-12)

    def test_with_ties(self):
        # ranks [1, 3, 3, 4] against [1, 2, 3, 4]
        expected = 4.5 / np.sqrt(4.75 * 5.0)
        assert rank_correlation(_vector([0.9, 0.5, 0.5, 0.1]), _vector([0.8, 0.6, 0.4, 0.2])) == pytest.approx(expected, abs=1e-12)

    def test_misaligned(self):
        a = _vector([0.1, 0.2, 0.3], ("a", "b", "c"))
        b = _vector([0.1, 0.2, 0.3], ("a", "c", "b"))
        with pytest.raises(AlignmentError, match="'c'"):
            rank_correlation(a, b)


class TestCorrelationMatrix:
    def test_identical_vectors(self):
        v = _vector([0.1, 0.4, 0.3])
        np.testing.assert_allclose(correlation_matrix([v, v]), [[1.0, 1.0], [1.0, 1.0]], atol=1e-12)

    def test_affine_invariance(self):
        v1 = _vector([0.1, 0.2, 0.35, 0.4])
        v2 = _vector(2 * v1.scores)
        v3 = _vector([0.3, 0.1, 0.4, 0.2])
        matrix = correlation_matrix([v1, v2, v3])
        assert matrix[0, 1] == pytest.approx(1.0, abs=1e-12)

    def test_rank_mode(self):
        matrix = correlation_matrix([_vector([0.9, 0.5, 0.5, 0.1]), _vector([0.8, 0.6, 0.4, 0.2])], mode="rank")
        expected = 4.5 / np.sqrt(4.75 * 5.0)
        np.testing.assert_allclose(matrix, [[1.0, expected], [expected, 1.0]], atol=1e-12)

    def test_symmetric_unit_diagonal(self):
        rng = np.random.default_rng(1)
        vectors = [_vector(rng.random(20)) for _ in range(4)]
        for mode in ("score", "rank"):
            matrix = correlation_matrix(vectors, mode=mode)
            np.testing.assert_array_equal(matrix, matrix.T)
            np.testing.assert_array_equal(np.diag(matrix), np.ones(4))

    def test_permutation_leaves_correlations_unchanged(self):
        rng = np.random.default_rng(2)
        for _ in range(1000):
            n = int(rng.integers(3, 30))
            a, b = np.round(rng.random(n), 2), np.round(rng.random(n), 2)
            if np.ptp(a) == 0 or np.ptp(b) == 0:
                continue
            ids = tuple(f"s{i}" for i in range(n))
            perm = rng.permutation(n)
            permuted_ids = tuple(ids[i] for i in perm)
            for mode in ("score", "rank"):
                before = correlation_matrix([_vector(a, ids), _vector(b, ids)], mode=mode)
                after = correlation_matrix([_vector(a[perm], permuted_ids), _vector(b[perm], permuted_ids)], mode=mode)
                np.testing.assert_allclose(after, before, atol=1e-12)

    def test_needs_two_vectors(self):
        with pytest.raises(InvalidInputError):
            correlation_matrix([_vector([0.1, 0.2])])

    def test_unknown_mode(self):
        v = _vector([0.1, 0.2])
        with pytest.raises(InvalidInputError):
            correlation_matrix([v, v], mode="spearman")

    def test_misaligned(self):
        with pytest.raises(AlignmentError):
            correlation_matrix([_vector([0.1, 0.2], ("a", "b")), _vector([0.1, 0.2], ("a", "c"))])
