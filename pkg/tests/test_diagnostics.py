import math

import numpy as np
import pytest

from landau.constructions import (ZigZagParams, build_stripes, build_uniform,
                                  build_zigzag, check_M0)
from landau.diagnostics import (BesovIndices, axis_mode_maximum,
                                besov_seminorm, g_field, h_minus1_norm,
                                mixed_h_minus2, report,
                                spectral_support_check)
from landau.grid import GridSpec, ScalarField

IDX = BesovIndices(s=1.0 / 3.0, p=3.0, q=math.inf)


def xgrid(spec):
    return np.broadcast_to(spec.cell_centers()[:, None], (spec.n, spec.n))


class TestGField:
    def test_values(self):
        spec = GridSpec(32, pad=4)
        g = g_field(build_uniform(0, spec))
        assert np.all(g.values == 0.5)
        g = g_field(build_uniform(1, spec))
        assert np.all(g.values == -0.5)


class TestMixedNorm:
    def test_constant_is_zero(self):
        spec = GridSpec(64, pad=4)
        g = ScalarField(spec, np.full((64, 64), 0.5))
        assert mixed_h_minus2(g) == 0.0
        assert mixed_h_minus2(g, periodic=True) == 0.0

    def test_x_only_oscillation_is_null(self):
        spec = GridSpec(64, pad=4)
        g = ScalarField(spec, np.cos(2 * np.pi * 3 * xgrid(spec)))
        assert mixed_h_minus2(g, periodic=True) < 1e-28

    def test_balanced_diagonal_laminate(self):
        spec = GridSpec(128, pad=4)
        m = build_stripes("diagonal", 7, (0, 1), spec)
        val = mixed_h_minus2(g_field(m), periodic=True)
        # quarter variance divided by the multiplier value 1/4 on the
        # diagonal, i.e. exactly 1/16
        assert val == pytest.approx(1.0 / 16.0, abs=1e-12)

    def test_reflection_identity_for_even_fields(self):
        # an even-frequency product mode is its own reflection, so the
        # two readings agree exactly
        spec = GridSpec(64, pad=4)
        x = xgrid(spec)
        y = x.T
        g = ScalarField(spec, np.cos(2 * np.pi * 2 * x) * np.cos(2 * np.pi * 4 * y))
        a = mixed_h_minus2(g, periodic=True)
        b = mixed_h_minus2(g)
        assert a == pytest.approx(b, rel=1e-12)


class TestHMinus1:
    def test_constant_is_zero(self):
        spec = GridSpec(64, pad=4)
        assert h_minus1_norm(ScalarField(spec, np.ones((64, 64)))) == 0.0

    def test_single_mode_formula(self):
        spec = GridSpec(128, pad=4)
        a, k = 0.7, 3
        g = ScalarField(spec, a * np.cos(2 * np.pi * k * xgrid(spec)))
        assert h_minus1_norm(g) == pytest.approx(a * a / (2 * k * k), rel=1e-12)


class TestSpectralSupport:
    def test_agrees_with_line_integrals(self):
        spec = GridSpec(128, pad=4)
        fields = [build_uniform(0, spec),
                  build_stripes("axis", 4, (0, 1), spec),
                  build_stripes("axis", 4, (0, 3), spec),
                  build_stripes("diagonal", 7, (0, 1), spec),
                  build_zigzag(ZigZagParams(3, 3), spec),
                  build_zigzag(ZigZagParams(2, 8), spec)]
        for m in fields:
            assert spectral_support_check(m)[0] == check_M0(m)[0]

    def test_axis_mode_maximum_oracle(self):
        spec = GridSpec(64, pad=4)
        g = ScalarField(spec, 0.3 * np.cos(2 * np.pi * 5 * xgrid(spec)))
        assert axis_mode_maximum(g) == pytest.approx(0.15, rel=1e-12)


class TestBesov:
    def test_constant_is_zero(self):
        spec = GridSpec(64, pad=4)
        assert besov_seminorm(ScalarField(spec, np.ones((64, 64))), IDX) == 0.0

    def test_laminate_refinement_ratio(self):
        # refining a laminate by 4 should scale the 1/3-seminorm by
        # 4^(1/3), within 30 percent
        spec = GridSpec(512, pad=4)
        coarse = besov_seminorm(build_stripes("axis", 4, (0, 1), spec), IDX)
        fine = besov_seminorm(build_stripes("axis", 16, (0, 1), spec), IDX)
        assert fine / coarse == pytest.approx(4.0 ** (1.0 / 3.0), rel=0.3)

    def test_smooth_mode_is_resolution_stable(self):
        vals = []
        for n in (128, 256):
            spec = GridSpec(n, pad=4)
            f = ScalarField(spec, np.sin(2 * np.pi * xgrid(spec)))
            vals.append(besov_seminorm(f, IDX))
        assert abs(vals[1] - vals[0]) / vals[0] < 0.05

    def test_indices_validation(self):
        with pytest.raises(ValueError):
            BesovIndices(s=0.0, p=3.0, q=6.0)
        with pytest.raises(ValueError):
            BesovIndices(s=1.5, p=3.0, q=6.0)
        with pytest.raises(ValueError):
            BesovIndices(s=0.5, p=0.5, q=6.0)

    def test_finite_q_accumulates_scales(self):
        spec = GridSpec(128, pad=4)
        m = build_zigzag(ZigZagParams(2, 2), spec)
        assert besov_seminorm(m, BesovIndices(1 / 3, 3.0, 6.0)) >= \
            besov_seminorm(m, IDX)


class TestReport:
    def test_keys_and_consistency(self):
        spec = GridSpec(128, pad=4)
        m = build_zigzag(ZigZagParams(3, 3), spec)
        rep = report(m)
        assert rep["n"] == 128
        assert rep["spectral_support_pass"] is True
        assert rep["besov_scales"] == 5
        assert rep["mixed_h_minus2"] > 0.0
        assert rep["h_minus1_norm"] > 0.0
        import json
        json.dumps(rep)  # JSON friendly end to end
