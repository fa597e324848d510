import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from landau.grid import (SQRT2, GridSpec, ScalarField, SpinField, VectorField,
                         periodize_even, reflect_even, total_variation)

SPEC = GridSpec(16, pad=4)


def labels(vals):
    return SpinField(SPEC, np.asarray(vals, dtype=np.int64))


label_arrays = st.lists(
    st.lists(st.integers(0, 3), min_size=16, max_size=16),
    min_size=16, max_size=16).map(lambda v: np.array(v, dtype=np.int64))


class TestGridSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            GridSpec(6)
        with pytest.raises(ValueError):
            GridSpec(9)
        with pytest.raises(ValueError):
            GridSpec(16, pad=1)

    def test_cell_centers(self):
        c = GridSpec(8).cell_centers()
        assert c[0] == pytest.approx(-0.5 + 1 / 16)
        assert np.allclose(c, -c[::-1])


class TestFields:
    def test_spin_rejects_bad_labels(self):
        with pytest.raises(ValueError):
            labels(np.full((16, 16), 4))
        with pytest.raises(ValueError):
            SpinField(SPEC, np.zeros((16, 16)))  # floats are not labels

    def test_vectors_land_on_wells(self):
        m = labels(np.arange(256).reshape(16, 16) % 4)
        v = m.vectors()
        assert np.allclose(np.linalg.norm(v, axis=-1), 1.0)
        assert np.allclose(np.abs(v), 1 / SQRT2)

    def test_g_signs(self):
        m = labels(np.tile(np.array([[0, 1], [2, 3]]), (8, 8)))
        g = m.g()
        assert set(np.unique(g)) == {-0.5, 0.5}
        assert g[0, 0] == 0.5 and g[0, 1] == -0.5

    def test_vector_field_rejects_nonfinite(self):
        bad = np.zeros((16, 16, 2))
        bad[0, 0, 0] = np.nan
        with pytest.raises(ValueError):
            VectorField(SPEC, bad)


class TestPeriodizeEven:
    def test_constant_stays_constant(self):
        out = periodize_even(np.full((8, 8), 3.25))
        assert out.shape == (16, 16)
        assert np.all(out == 3.25)

    def test_linear_becomes_tent(self):
        n = 16
        spec = GridSpec(n, pad=4)
        x = np.broadcast_to(spec.cell_centers()[:, None], (n, n))
        out = periodize_even(ScalarField(spec, x))
        assert out.spec.n == 2 * n
        # even about the x = 1/2 midline: mirrored cells match exactly
        for t in range(n):
            assert np.all(out.values[n + t, :] == out.values[n - 1 - t, :])

    def test_restriction_is_identity(self):
        rng = np.random.default_rng(1)
        a = rng.normal(size=(8, 8))
        out = reflect_even(a)
        assert np.array_equal(out[:8, :8], a)
        assert np.array_equal(out[8:, :8], a[::-1])
        assert np.array_equal(out[:8, 8:], a[:, ::-1])


class TestTotalVariation:
    def test_uniform_is_zero(self):
        assert total_variation(labels(np.zeros((16, 16), dtype=int))) == 0.0

    def test_single_180_wall(self):
        vals = np.zeros((16, 16), dtype=int)
        vals[8:, :] = 3  # antipodal well across a vertical midline
        assert total_variation(labels(vals)) == pytest.approx(2.0)

    def test_single_90_wall(self):
        vals = np.zeros((16, 16), dtype=int)
        vals[8:, :] = 1
        assert total_variation(labels(vals)) == pytest.approx(SQRT2)

    def test_stripe_count_scales_linearly(self):
        n = 64
        spec = GridSpec(n, pad=4)
        for k in (1, 2, 4, 8):
            width = n // (k + 1)
            band = np.minimum(np.arange(n)[:, None] // width, k) % 2
            vals = (band * np.ones((1, n), dtype=int)).astype(np.int64)
            tv = total_variation(SpinField(spec, vals))
            assert tv == pytest.approx(k * SQRT2)

    @given(label_arrays)
    @settings(max_examples=25, deadline=None)
    def test_symmetry_invariance(self, vals):
        tv = total_variation(labels(vals))
        # global sign flips of either component preserve all jumps
        assert total_variation(labels(vals ^ 1)) == pytest.approx(tv)
        assert total_variation(labels(vals ^ 2)) == pytest.approx(tv)
        assert total_variation(labels(vals ^ 3)) == pytest.approx(tv)
        # transpose of the grid with the matching component swap
        swap = np.array([0, 2, 1, 3])
        assert total_variation(labels(swap[vals].T)) == pytest.approx(tv)
        # mirror of the grid with the matching component flip
        assert total_variation(labels(vals[::-1] ^ 1)) == pytest.approx(tv)
