"""The four energy terms of the diffuse functional F_eta and its sharp
interface limit F_0.

F_eta(v) = mu eta int |grad v|^2
         + (mu/eta) int (|v|^2 - 1)^2 + phi(v)
         + kd * || div v~ ||^2_{H^-1(R^2)}
         + inf_u int || eps(u) - eps0(v) ||^2

with phi(z) = (z1^2 - z2^2)^2 and eps0(z) = z (x) z - I/2.  Sharp spin
fields replace the first two terms by mu * total variation.

Normalization anchors (enforced by the test suite):
  * uniformly magnetized unit square -> magnetostatic 0.5 as pad grows,
  * balanced diagonal laminate -> magnetostriction 0.25 in the fully
    periodic evaluation,
  * v = (x, 0) -> exchange 1 - 1/n at mu eta = 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .elasticity import (SymTensorField, periodic_residual_energy,
                         solve_spectral)
from .grid import (GridSpec, ScalarField, SpinField, VectorField,
                   reflect_even)


@dataclass(frozen=True)
class ModelParams:
    mu: float
    eta: float
    kd_scale: float = 1.0

    def __post_init__(self):
        if self.mu <= 0:
            raise ValueError("mu must be positive")
        if self.eta <= 0:
            raise ValueError("eta must be positive")
        if self.kd_scale < 0:
            raise ValueError("kd_scale must be nonnegative")


@dataclass
class EnergyBreakdown:
    exchange_or_wall: float
    potential: float
    magnetostatic: float
    magnetostriction: float

    @property
    def total(self) -> float:
        return (self.exchange_or_wall + self.potential
                + self.magnetostatic + self.magnetostriction)

    def to_dict(self, params: ModelParams | None = None) -> dict:
        d = {
            "exchange_or_wall": self.exchange_or_wall,
            "potential": self.potential,
            "magnetostatic": self.magnetostatic,
            "magnetostriction": self.magnetostriction,
            "total": self.total,
        }
        if params is not None:
            d["params"] = {"mu": params.mu, "eta": params.eta,
                           "kd_scale": params.kd_scale}
        return d

    def to_json(self, params: ModelParams | None = None) -> str:
        return json.dumps(self.to_dict(params), indent=2)


def eps0_of_vectors(vals: np.ndarray) -> np.ndarray:
    """Preferred strain eps0(z) = z (x) z - I/2 as an (n, n, 3) array."""
    return np.stack(
        [vals[:, :, 0] ** 2 - 0.5,
         vals[:, :, 1] ** 2 - 0.5,
         vals[:, :, 0] * vals[:, :, 1]],
        axis=-1,
    )


def preferred_strain(f: SpinField | VectorField) -> SymTensorField:
    if isinstance(f, SpinField):
        # on wells the diagonal of eps0 vanishes identically; build it
        # from g so that this is exact
        g = f.g()
        vals = np.zeros((f.spec.n, f.spec.n, 3))
        vals[:, :, 2] = g
        return SymTensorField(f.spec, vals)
    return SymTensorField(f.spec, eps0_of_vectors(f.values))


# ----------------------------------------------------------------------
# local terms
# ----------------------------------------------------------------------

def exchange_diffuse(v: VectorField, p: ModelParams) -> float:
    """mu eta * discrete Dirichlet energy with one-sided differences and
    no periodic wrap (natural boundary)."""
    n = v.spec.n
    dx = (v.values[1:, :, :] - v.values[:-1, :, :]) * n
    dy = (v.values[:, 1:, :] - v.values[:, :-1, :]) * n
    return p.mu * p.eta * float((dx ** 2).sum() + (dy ** 2).sum()) / n ** 2


def bulk_potential(v: VectorField, p: ModelParams) -> float:
    """(mu/eta) * int (|v|^2 - 1)^2 + (v1^2 - v2^2)^2; zero exactly on
    the wells."""
    v1 = v.values[:, :, 0]
    v2 = v.values[:, :, 1]
    gl = (v1 ** 2 + v2 ** 2 - 1.0) ** 2
    phi = (v1 ** 2 - v2 ** 2) ** 2
    return p.mu / p.eta * float((gl + phi).mean())


def wall_energy(m: SpinField, p: ModelParams) -> float:
    from .grid import total_variation
    return p.mu * total_variation(m)


# ----------------------------------------------------------------------
# nonlocal terms
# ----------------------------------------------------------------------

def _cell_vectors(f: SpinField | VectorField) -> np.ndarray:
    return f.vectors() if isinstance(f, SpinField) else f.values


def magnetostatic_energy(f: SpinField | VectorField, p: ModelParams) -> float:
    """kd * || div of the zero-extended field ||^2 in H^-1, on a padded
    torus of side pad.

    With normalized coefficients c_k = FFT / N^2 on the pad*n grid the
    energy is  kd * pad^2 * sum_{k != 0} |k . c_k|^2 / |k|^2,  a Riemann
    sum of the whole-plane integral that converges as pad grows.
    """
    if p.kd_scale == 0.0:
        return 0.0
    vals = _cell_vectors(f)
    n = f.spec.n
    pad = f.spec.pad
    N = pad * n
    # real-input FFTs on the half spectrum keep memory manageable at large n
    padded = np.zeros((N, N))
    padded[:n, :n] = vals[:, :, 0]
    c1 = np.fft.rfft2(padded) / N ** 2
    padded[:, :] = 0.0
    padded[:n, :n] = vals[:, :, 1]
    c2 = np.fft.rfft2(padded) / N ** 2
    k1 = np.fft.fftfreq(N, d=1.0 / N)[:, None]
    k2 = np.fft.rfftfreq(N, d=1.0 / N)[None, :]
    ksq = k1 * k1 + k2 * k2
    ksq[0, 0] = 1.0
    div2 = np.abs(k1 * c1 + k2 * c2) ** 2 / ksq
    div2[0, 0] = 0.0
    # columns 0 and Nyquist appear once in the half spectrum, the rest twice
    total = 2.0 * div2.sum() - div2[:, 0].sum() - div2[:, -1].sum()
    return p.kd_scale * pad ** 2 * float(total)


def magnetostriction_energy(f: SpinField | VectorField,
                            periodic: bool = False) -> float:
    """Minimal elastic misfit of the preferred strain.

    Evaluated via the spectral solver on the even-reflected field by
    default; periodic=True uses unit-cell coefficients instead, which is
    the right reading for patterns that are exactly periodic on G.
    """
    if isinstance(f, SpinField) and not periodic:
        # on the wells the preferred strain is pure shear g, for which the
        # multiplier collapses to 4 (k1 k2 / |k|^2)^2 |g^|^2; one real FFT
        # instead of the full solve keeps large grids affordable
        big = reflect_even(f.g())
        N = big.shape[0]
        c12 = np.fft.rfft2(big) / N ** 2
        k1 = np.fft.fftfreq(N, d=1.0 / N)[:, None]
        k2 = np.fft.rfftfreq(N, d=1.0 / N)[None, :]
        ksq = k1 * k1 + k2 * k2
        ksq[0, 0] = 1.0
        per_mode = 4.0 * (k1 * k2 / ksq) ** 2 * np.abs(c12) ** 2
        total = 2.0 * per_mode.sum() - per_mode[:, 0].sum() - per_mode[:, -1].sum()
        return float(total)
    V = preferred_strain(f)
    if periodic:
        return periodic_residual_energy(V)
    return solve_spectral(V).residual_energy


# ----------------------------------------------------------------------
# assembled functionals
# ----------------------------------------------------------------------

def total_relaxed(v: VectorField, p: ModelParams) -> EnergyBreakdown:
    """F_eta of a relaxed competitor."""
    return EnergyBreakdown(
        exchange_or_wall=exchange_diffuse(v, p),
        potential=bulk_potential(v, p),
        magnetostatic=magnetostatic_energy(v, p),
        magnetostriction=magnetostriction_energy(v),
    )


def total_sharp(m: SpinField, p: ModelParams) -> EnergyBreakdown:
    """F_0 of a sharp competitor; the potential slot is zero by
    construction."""
    if not isinstance(m, SpinField):
        raise TypeError("total_sharp expects a SpinField")
    return EnergyBreakdown(
        exchange_or_wall=wall_energy(m, p),
        potential=0.0,
        magnetostatic=magnetostatic_energy(m, p),
        magnetostriction=magnetostriction_energy(m),
    )
