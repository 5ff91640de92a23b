"""Tests for exact matrices, orthogonalization, and the error metric."""

import math

import numpy as np
import pytest

from ternary_dct.dctcore import (
    NotOrthogonalizableError,
    SingularRowError,
    TERNARY_DCT2,
    TERNARY_DCT4,
    TransformKind,
    as_ternary,
    exact_dct_ii,
    exact_dct_iv,
    exact_matrix,
    is_row_orthogonal,
    orthogonalize,
    row_normalized,
    signed_dct,
    ternary_matrix,
    total_error_energy,
)

# Reference values computed independently with 50-digit arithmetic and
# rounded to double precision.
ENTRY_II_10 = 0.6532814824381883
ENTRY_IV_00 = 0.6935199226610737
ERR_TERNARY_II = 0.9565580058014489
ERR_TERNARY_IV = 0.8379115259017224
ERR_SIGNED_II = 0.9565580058014489
ERR_SIGNED_IV = 2.3592745992918504


def naive_dct_ii(n):
    out = [[0.0] * n for _ in range(n)]
    for k in range(n):
        scale = math.sqrt(1.0 / n) if k == 0 else math.sqrt(2.0 / n)
        for t in range(n):
            out[k][t] = scale * math.cos(k * (2 * t + 1) * math.pi / (2 * n))
    return np.array(out)


def naive_dct_iv(n):
    out = [[0.0] * n for _ in range(n)]
    for k in range(n):
        for t in range(n):
            out[k][t] = math.sqrt(2.0 / n) * math.cos((2 * k + 1) * (2 * t + 1) * math.pi / (4 * n))
    return np.array(out)


class TestExactMatrices:
    def test_dct_ii_first_row_is_constant(self):
        row = exact_dct_ii(4)[0]
        assert np.max(np.abs(row - 0.5)) < 1e-15

    def test_dct_ii_known_entry(self):
        assert abs(exact_dct_ii(4)[1, 0] - ENTRY_II_10) < 1e-12

    def test_dct_iv_known_entries(self):
        mat = exact_dct_iv(4)
        assert abs(mat[0, 0] - ENTRY_IV_00) < 1e-12
        assert abs(mat[3, 3] + ENTRY_IV_00) < 1e-12

    def test_dct_iv_is_symmetric(self):
        mat = exact_dct_iv(4)
        assert np.array_equal(mat, mat.T)

    @pytest.mark.parametrize("n", [1, 2, 4, 8, 16])
    def test_rows_orthonormal(self, n):
        for build in (exact_dct_ii, exact_dct_iv):
            mat = build(n)
            assert np.max(np.abs(mat @ mat.T - np.eye(n))) < 1e-12

    @pytest.mark.parametrize("n", [2, 4, 8])
    def test_matches_naive_cosine_sums(self, n):
        assert np.max(np.abs(exact_dct_ii(n) - naive_dct_ii(n))) < 1e-14
        assert np.max(np.abs(exact_dct_iv(n) - naive_dct_iv(n))) < 1e-14

    @pytest.mark.parametrize("bad", [0, -3, 2.5, "4"])
    def test_invalid_size_rejected(self, bad):
        with pytest.raises(ValueError):
            exact_dct_ii(bad)
        with pytest.raises(ValueError):
            exact_dct_iv(bad)

    def test_exact_matrix_shorthand(self):
        assert np.array_equal(exact_matrix("ii"), exact_dct_ii(4))
        assert np.array_equal(exact_matrix(TransformKind.DCT4), exact_dct_iv(4))

    def test_signed_dct_ii_signs(self):
        expected = np.array(
            [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, -1, 1], [1, -1, 1, -1]]
        )
        assert np.array_equal(signed_dct("ii"), expected)


class TestTernaryValidation:
    def test_builtin_matrices_are_ternary(self):
        for mat in (TERNARY_DCT2, TERNARY_DCT4):
            assert np.array_equal(as_ternary(mat), mat)

    def test_float_entries_allowed_when_integral(self):
        out = as_ternary([[1.0, 0.0, 0.0, -1.0]] + [[0, 0, 0, 0]] * 3)
        assert out.dtype == np.int64

    @pytest.mark.parametrize(
        "bad",
        [
            [[2, 0, 0, 0]] + [[0, 0, 0, 0]] * 3,
            [[-2, 1, 1, 1]] + [[0, 0, 0, 0]] * 3,
            [[0.5, 0, 0, 0]] + [[0, 0, 0, 0]] * 3,
        ],
    )
    def test_bad_entries_rejected(self, bad):
        with pytest.raises(ValueError):
            as_ternary(bad)

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            as_ternary([[1, 0, 0, 1]])


class TestRowOrthogonality:
    def test_builtin_matrices(self):
        assert is_row_orthogonal(TERNARY_DCT2)
        assert is_row_orthogonal(TERNARY_DCT4)

    def test_signed_matrices(self):
        assert is_row_orthogonal(signed_dct("ii"))
        assert not is_row_orthogonal(signed_dct("iv"))

    def test_overlapping_rows(self):
        mat = [[1, 1, 0, 0], [1, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0]]
        assert not is_row_orthogonal(mat)

    def test_zero_row_is_orthogonal_to_everything(self):
        mat = [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]
        assert is_row_orthogonal(mat)


class TestOrthogonalize:
    def test_diagonal_values_ii(self):
        d, _ = orthogonalize(TERNARY_DCT2)
        expected = np.array([0.5, 1.0 / math.sqrt(2.0), 0.5, 1.0 / math.sqrt(2.0)])
        assert np.max(np.abs(d - expected)) < 1e-12

    def test_diagonal_values_iv(self):
        d, _ = orthogonalize(TERNARY_DCT4)
        assert np.max(np.abs(d - 1.0 / math.sqrt(3.0))) < 1e-12

    @pytest.mark.parametrize("mat", [TERNARY_DCT2, TERNARY_DCT4])
    def test_scaled_matrix_is_orthonormal(self, mat):
        d, scaled = orthogonalize(mat)
        assert np.max(np.abs(scaled @ scaled.T - np.eye(4))) < 1e-12
        assert np.max(np.abs(scaled - d[:, None] * np.asarray(mat))) == 0.0

    def test_identity_needs_no_scaling(self):
        d, scaled = orthogonalize(np.eye(4, dtype=int))
        assert np.array_equal(d, np.ones(4))
        assert np.array_equal(scaled, np.eye(4))

    def test_non_orthogonal_rows_raise(self):
        mat = [[1, 1, 0, 0], [1, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0]]
        with pytest.raises(NotOrthogonalizableError):
            orthogonalize(mat)

    def test_signed_dct_iv_cannot_be_orthogonalized(self):
        with pytest.raises(NotOrthogonalizableError):
            orthogonalize(signed_dct("iv"))

    def test_zero_row_raises_singular(self):
        mat = [[0, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [0, 0, 0, 1]]
        with pytest.raises(SingularRowError):
            orthogonalize(mat)

    def test_row_normalized_agrees_for_orthogonal_input(self):
        _, scaled = orthogonalize(TERNARY_DCT2)
        assert np.max(np.abs(row_normalized(TERNARY_DCT2) - scaled)) == 0.0

    def test_row_normalized_signed_iv(self):
        unit = row_normalized(signed_dct("iv"))
        norms = (unit * unit).sum(axis=1)
        assert np.max(np.abs(norms - 1.0)) < 1e-12

    def test_row_normalized_zero_row_raises(self):
        with pytest.raises(SingularRowError):
            row_normalized([[0, 0, 0, 0]] + [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])


class TestErrorEnergy:
    def test_exact_match_is_zero(self):
        for kind in ("ii", "iv"):
            report = total_error_energy(exact_matrix(kind), kind, method="quadrature")
            assert report.closed_form_value == 0.0
            assert abs(report.quadrature_value) < 1e-12

    def test_reference_values(self):
        cases = [
            (row_normalized(TERNARY_DCT2), "ii", ERR_TERNARY_II, 0.957),
            (row_normalized(TERNARY_DCT4), "iv", ERR_TERNARY_IV, 0.838),
            (row_normalized(signed_dct("ii")), "ii", ERR_SIGNED_II, 0.957),
            (row_normalized(signed_dct("iv")), "iv", ERR_SIGNED_IV, 2.359),
        ]
        for candidate, kind, frozen, rounded in cases:
            for method in ("quadrature", "closed_form"):
                report = total_error_energy(candidate, kind, method=method)
                assert abs(report.value - frozen) < 1e-9
                assert abs(report.value - rounded) < 1e-3

    def test_methods_agree(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            a = rng.uniform(-1.0, 1.0, (4, 4))
            report = total_error_energy(a, "ii")
            assert abs(report.quadrature_value - report.closed_form_value) < 1e-6

    def test_value_follows_requested_method(self):
        a = row_normalized(TERNARY_DCT2)
        rq = total_error_energy(a, "ii", method="quadrature")
        rc = total_error_energy(a, "ii", method="closed_form")
        assert rq.value == rq.quadrature_value
        assert rc.value == rc.closed_form_value
        assert rq.method == "quadrature" and rc.method == "closed_form"

    def test_per_row_sums_to_value(self):
        a = row_normalized(TERNARY_DCT4)
        report = total_error_energy(a, "iv", method="closed_form")
        assert len(report.per_row) == 4
        assert abs(sum(report.per_row) - report.value) < 1e-12

    def test_target_detection(self):
        assert total_error_energy(np.eye(4), exact_dct_ii(4)).target is TransformKind.DCT2
        assert total_error_energy(np.eye(4), exact_dct_iv(4)).target is TransformKind.DCT4
        assert total_error_energy(np.eye(4), np.eye(4)).target is None

    def test_parseval_on_random_pairs(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            a = rng.uniform(-2.0, 2.0, (4, 4))
            b = rng.uniform(-2.0, 2.0, (4, 4))
            report = total_error_energy(a, b, method="quadrature")
            frob = math.pi * float(((a - b) ** 2).sum())
            assert abs(report.quadrature_value - frob) < 1e-6

    def test_sign_flip_changes_error_by_inner_product(self):
        # flipping the sign of row m changes the total error energy by
        # 4 * pi * <scaled row m, target row m>; orthogonality and the
        # addition count are unaffected
        for kind, ternary in (("ii", TERNARY_DCT2), ("iv", TERNARY_DCT4)):
            target = exact_matrix(kind)
            _, scaled = orthogonalize(ternary)
            base = total_error_energy(scaled, kind).closed_form_value
            for m in range(4):
                flipped = ternary.copy()
                flipped[m] *= -1
                assert is_row_orthogonal(flipped)
                _, scaled_flipped = orthogonalize(flipped)
                got = total_error_energy(scaled_flipped, kind).closed_form_value
                predicted = base + 4.0 * math.pi * float(np.dot(scaled[m], target[m]))
                assert abs(got - predicted) < 1e-9

    def test_invalid_method(self):
        with pytest.raises(ValueError):
            total_error_energy(np.eye(4), "ii", method="simpson")

    def test_non_finite_rejected(self):
        bad = np.full((4, 4), np.nan)
        with pytest.raises(ValueError):
            total_error_energy(bad, "ii")
        with pytest.raises(ValueError):
            total_error_energy(np.eye(4), bad)

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            total_error_energy(np.eye(3), exact_dct_ii(4))

    def test_ternary_matrix_returns_copies(self):
        mat = ternary_matrix("ii")
        mat[0, 0] = 0
        assert TERNARY_DCT2[0, 0] == 1
