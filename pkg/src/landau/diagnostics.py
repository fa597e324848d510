"""Measurable quantities behind the scaling analysis: the oscillation
field g = m1 m2, its negative Sobolev norms, spectral support, and a
finite-difference Besov seminorm.

Conventions match the elasticity module: integer frequencies, 2 pi
factors cancelled, and the mixed multiplier evaluated on the reflected
torus unless the fully periodic reading is requested.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import ScalarField, SpinField, reflect_even


@dataclass(frozen=True)
class BesovIndices:
    s: float
    p: float
    q: float  # math.inf allowed

    def __post_init__(self):
        if not (0.0 < self.s < 1.0):
            raise ValueError("the finite-difference characterization needs 0 < s < 1")
        if self.p < 1.0 or self.q < 1.0:
            raise ValueError("integrability indices must be >= 1")


def g_field(m: SpinField) -> ScalarField:
    """g = m1 m2, exactly +-1/2 per cell."""
    return ScalarField(m.spec, m.g())


def _coeffs(vals: np.ndarray) -> np.ndarray:
    N = vals.shape[0]
    return np.fft.fft2(vals) / N ** 2


def _kgrids(N: int):
    k = np.fft.fftfreq(N, d=1.0 / N)
    return np.meshgrid(k, k, indexing="ij")


def mixed_h_minus2(g: ScalarField, periodic: bool = False) -> float:
    """sum_{k != 0} (k1 k2)^2 / |k|^4 |g^(k)|^2, the squared mixed
    H^-2 seminorm of d2 g / dx dy with 2 pi factors cancelled.

    Defaults to the reflected torus, matching the magnetostriction code
    path; periodic=True evaluates unit-cell coefficients instead.  The
    multiplier is 0-homogeneous, so no area factor appears in either
    case.
    """
    vals = g.values if periodic else reflect_even(g.values)
    c = _coeffs(vals)
    K1, K2 = _kgrids(vals.shape[0])
    ksq = K1 * K1 + K2 * K2
    ksq[0, 0] = 1.0
    mult = (K1 * K2) ** 2 / ksq ** 2
    return float((mult * np.abs(c) ** 2).sum())


def h_minus1_norm(g: ScalarField) -> float:
    """sum_{k != 0} |g^(k)|^2 / |k|^2 with unit-cell coefficients."""
    c = _coeffs(g.values)
    K1, K2 = _kgrids(g.values.shape[0])
    ksq = K1 * K1 + K2 * K2
    ksq[0, 0] = 1.0
    w = np.abs(c) ** 2 / ksq
    w[0, 0] = 0.0
    return float(w.sum())


def axis_mode_maximum(g: ScalarField) -> float:
    """Largest |g^(k)| over the axes k1 = 0 or k2 = 0, k = 0 included.

    The axis modes are exactly the Fourier transforms of the row and
    column line integrals of g, mean included, so this maximum vanishes
    iff every line integral does.
    """
    c = np.abs(_coeffs(g.values))
    return float(max(c[0, :].max(), c[:, 0].max()))


def spectral_support_check(m: SpinField, tol: float = 1e-10):
    """Passes iff every mode of g^ with k1 k2 = 0 vanishes below tol.

    Equivalent to the vanishing of the row and column line integrals of
    g (the class membership test); the two are asserted to agree by the
    test suite.
    """
    worst = axis_mode_maximum(g_field(m))
    return worst < tol, worst


def besov_seminorm(f, idx: BesovIndices) -> float:
    """Dyadic finite-difference Besov seminorm.

    For scales t = 2^-j, j = 1 .. log2(n) - 2, measures
        sup over grid shifts z with |z| <= t of ||Delta_z f||_Lp / t^s
    and takes the l^q norm over scales.  Shifts run along the axes and
    the two diagonals at the largest admissible step; differences are
    one-sided and truncated at the boundary (no wrap).  Finite grids
    truncate the scale range, which is reported by the companion CLI
    alongside the value.
    """
    if isinstance(f, ScalarField):
        vals = f.values
    elif isinstance(f, SpinField):
        vals = f.vectors()[:, :, 0]
    else:
        vals = np.asarray(f, dtype=float)
    n = vals.shape[0]
    jmax = int(np.log2(n)) - 2
    levels = []
    for j in range(1, jmax + 1):
        t = 2.0 ** (-j)
        step = max(1, int(round(t * n)))
        diag = max(1, int(np.floor(t * n / np.sqrt(2.0))))
        shifts = [(step, 0), (0, step), (diag, diag), (diag, -diag)]
        best = 0.0
        for a, b in shifts:
            sa = slice(a, None) if a >= 0 else slice(None, a)
            sa0 = slice(None, -a) if a > 0 else (slice(-a, None) if a < 0 else slice(None))
            sb = slice(b, None) if b >= 0 else slice(None, b)
            sb0 = slice(None, -b) if b > 0 else (slice(-b, None) if b < 0 else slice(None))
            d = vals[sa, sb] - vals[sa0, sb0]
            if d.size == 0:
                continue
            lp = float((np.abs(d) ** idx.p).mean()) ** (1.0 / idx.p)
            best = max(best, lp)
        levels.append(best / t ** idx.s)
    levels = np.array(levels)
    if np.isinf(idx.q):
        return float(levels.max()) if levels.size else 0.0
    return float((levels ** idx.q).sum() ** (1.0 / idx.q))


def report(m: SpinField) -> dict:
    """All diagnostics of a spin field in one JSON-friendly dict."""
    g = g_field(m)
    ok, worst = spectral_support_check(m)
    idx = BesovIndices(s=1.0 / 3.0, p=3.0, q=6.0)
    return {
        "n": m.spec.n,
        "mixed_h_minus2": mixed_h_minus2(g),
        "mixed_h_minus2_periodic": mixed_h_minus2(g, periodic=True),
        "h_minus1_norm": h_minus1_norm(g),
        "spectral_support_pass": bool(ok),
        "axis_mode_maximum": worst,
        "besov_1_3": besov_seminorm(m, idx),
        "besov_scales": int(np.log2(m.spec.n)) - 2,
    }
