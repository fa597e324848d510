"""Discrete fields on the unit square G = (-1/2, 1/2)^2.

Cell-centered scalar and spin fields live on an n x n grid of cells; the
cell (i, j) has center ((i + 1/2)/n - 1/2, (j + 1/2)/n - 1/2), with i
along x and j along y.  Vector fields (the relaxed competitors) sample
their values at the same cell centers, which keeps every energy term and
its gradient on a single lattice.

The four easy axes (wells) are the unit vectors (+-1, +-1)/sqrt(2).
Spin fields store a symbolic 2-bit well label per cell so membership in
the well set is exact, never a floating-point question.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SQRT2 = float(np.sqrt(2.0))

# Well labels: bit 0 flips the x component, bit 1 flips the y component.
#   0 -> (+1, +1)/sqrt(2)    1 -> (-1, +1)/sqrt(2)
#   2 -> (+1, -1)/sqrt(2)    3 -> (-1, -1)/sqrt(2)
WELLS = np.array(
    [[1.0, 1.0], [-1.0, 1.0], [1.0, -1.0], [-1.0, -1.0]]
) / SQRT2

# g = m1 * m2 on each well, times 2 (so it is integer valued).
WELL_G_SIGN = np.array([1, -1, -1, 1])


@dataclass(frozen=True)
class GridSpec:
    """Grid resolution and the padding factor used by the stray-field
    transform.  n is the number of cells per side."""

    n: int
    pad: int = 8

    def __post_init__(self):
        if self.n < 8:
            raise ValueError(f"n must be at least 8, got {self.n}")
        if self.n % 2 != 0:
            raise ValueError(f"n must be even, got {self.n}")
        if self.pad < 2:
            raise ValueError(f"pad must be at least 2, got {self.pad}")

    @property
    def h(self) -> float:
        return 1.0 / self.n

    def cell_centers(self):
        """Return 1d array of cell-center coordinates along one axis."""
        return (np.arange(self.n) + 0.5) / self.n - 0.5


@dataclass
class SpinField:
    """Piecewise-constant magnetization with values in the well set.

    values holds one well label (0..3) per cell.
    """

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.shape != (self.spec.n, self.spec.n):
            raise ValueError(
                f"label array shape {v.shape} does not match n={self.spec.n}"
            )
        if not np.issubdtype(v.dtype, np.integer):
            raise ValueError("well labels must be integers")
        if v.min() < 0 or v.max() > 3:
            raise ValueError("well labels must lie in 0..3")
        self.values = v.astype(np.int8)

    def vectors(self) -> np.ndarray:
        """(n, n, 2) array of unit magnetization vectors."""
        return WELLS[self.values]

    def g(self) -> np.ndarray:
        """(n, n) array of g = m1 * m2, valued in {-1/2, +1/2}."""
        return 0.5 * WELL_G_SIGN[self.values].astype(float)

    def as_vector_field(self) -> "VectorField":
        return VectorField(self.spec, self.vectors())


@dataclass
class VectorField:
    """Unconstrained R^2-valued field sampled at cell centers."""

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.spec.n, self.spec.n, 2):
            raise ValueError(
                f"vector array shape {v.shape} does not match n={self.spec.n}"
            )
        if not np.all(np.isfinite(v)):
            raise ValueError("vector field has non-finite entries")
        self.values = v


@dataclass
class ScalarField:
    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.spec.n, self.spec.n):
            raise ValueError(
                f"scalar array shape {v.shape} does not match n={self.spec.n}"
            )
        if not np.all(np.isfinite(v)):
            raise ValueError("scalar field has non-finite entries")
        self.values = v


# ----------------------------------------------------------------------
# even periodization onto the doubled cell G* = (-1/2, 3/2)^2
# ----------------------------------------------------------------------

def reflect_even(a: np.ndarray) -> np.ndarray:
    """Even-reflect an (n, n, ...) cell array to (2n, 2n, ...).

    The reflection is about the cell-centered midlines x = 1/2 and then
    y = 1/2, so the output restricted to the first n x n block equals the
    input exactly and the result is even-symmetric on the doubled torus.
    """
    b = np.concatenate([a, a[::-1]], axis=0)
    return np.concatenate([b, b[:, ::-1]], axis=1)


def periodize_even(f):
    """Even periodization of a ScalarField or a raw cell array.

    Returns the same kind of object on the doubled grid.  SymTensorField
    inputs are handled by elasticity; this entry point covers the scalar
    and array cases used by the diagnostics.
    """
    if isinstance(f, ScalarField):
        spec2 = GridSpec(2 * f.spec.n, f.spec.pad)
        return ScalarField(spec2, reflect_even(f.values))
    return reflect_even(np.asarray(f))


# ----------------------------------------------------------------------
# interface measurement
# ----------------------------------------------------------------------

def total_variation(m: SpinField) -> float:
    """Anisotropic total variation of the magnetization.

    Sums |jump of m| over interior cell edges, weighted by the edge
    length 1/n.  Adjacent wells jump by sqrt(2) (90 degree wall) and
    antipodal wells by 2 (180 degree wall).  Diagonal walls rendered as
    staircases are overcounted by up to sqrt(2); that is a constant
    factor, documented, and does not move any scaling exponent.
    """
    vec = m.vectors()
    n = m.spec.n
    jx = np.linalg.norm(vec[1:, :] - vec[:-1, :], axis=-1)
    jy = np.linalg.norm(vec[:, 1:] - vec[:, :-1], axis=-1)
    return float((jx.sum() + jy.sum()) / n)
