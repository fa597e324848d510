"""Parameter sweeps over mu and the scaling-law fit.

The sweep protocol is fixed so that runs are comparable across machines
and revisions:

* the slot count (k, l) comes from optimize_kl against a calibrated
  prefactor c (measured once per sweep at k = l = 4 on the base grid);
* the resolution follows resolution_rule: the nearest power of two to
  8 k l, at least 128 and capped at 4096 (the cap trades a measurable
  upward bias of the nonlocal terms at the largest (k, l) against
  memory; at the cap a grid is 4096^2 cells and one padded transform
  about half a gigabyte);
* the padding factor shrinks with n (8 up to n = 512, then 4, then 2 at
  the cap) so that the stray-field transform stays affordable; the
  residual pad dependence of the magnetostatic term is below a percent
  at these sizes;
* every mu produces one row for the zig-zag competitor (mode
  "construction" or "minimize"); with include_landau the normal Landau
  state at the same k is appended as an extra row with mode "landau",
  which is the comparison the ordering check reads.

Workers in a parallel sweep share nothing but the argument list, so
jobs > 1 is bitwise identical to jobs = 1.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .constructions import (ZigZagParams, build_normal_landau, build_zigzag,
                            optimize_kl)
from .energy import ModelParams, total_sharp
from .grid import GridSpec
from .relax import MinimizeConfig, minimize_F_eta

N_CAP = 4096


@dataclass(frozen=True)
class PhysicalParams:
    """Material constants: exchange stiffness, anisotropy, stray-field
    constant, shear modulus and magnetostriction constant."""

    exchange: float        # A
    anisotropy: float      # Ka
    stray: float           # Kd
    shear_modulus: float   # c44
    lambda111: float       # magnetostriction constant

    def __post_init__(self):
        for name in ("exchange", "anisotropy", "stray", "shear_modulus"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.lambda111 == 0:
            raise ValueError("lambda111 must be nonzero")


def nondimensionalize(phys: PhysicalParams) -> ModelParams:
    """Reduce the material constants to the three model parameters.

    The elastic energy scale c44 lambda111^2 is the unit; then
    mu = sqrt(A Ka) / (c44 lambda111^2), eta = sqrt(A / Ka), and
    kd_scale = Kd / (c44 lambda111^2).
    """
    elastic = phys.shear_modulus * phys.lambda111 ** 2
    return ModelParams(
        mu=float(np.sqrt(phys.exchange * phys.anisotropy) / elastic),
        eta=float(np.sqrt(phys.exchange / phys.anisotropy)),
        kd_scale=float(phys.stray / elastic),
    )


def resolution_rule(k: int, l: int, cap: int = N_CAP) -> int:
    """Nearest power of two to 8 k l, at least 128, at most cap."""
    target = 8.0 * k * l
    n = 128
    while n < target and n < cap:
        n *= 2
    if n > 128 and abs(n / 2 - target) <= abs(n - target):
        n //= 2
    return max(128, min(n, cap))


def pad_rule(n: int) -> int:
    return 8 if n <= 512 else (4 if n <= 2048 else 2)


@dataclass
class SweepRecord:
    mu: float
    k: int
    l: int
    n: int
    pad: int
    mode: str
    wall: float
    potential: float
    magnetostatic: float
    magnetostriction: float
    total: float
    seconds: float


CSV_COLUMNS = ("mu", "k", "l", "n", "pad", "mode", "wall", "potential",
               "magnetostatic", "magnetostriction", "total", "seconds")


def calibrate_prefactor(kd_scale: float = 1.0) -> float:
    """Measured nonlocal prefactor c of the model energy
    mu (k + l) + c / (k l): sixteen times the nonlocal energy of the
    k = l = 4 zig-zag on its own sweep grid."""
    n = resolution_rule(4, 4)
    spec = GridSpec(n, pad=pad_rule(n))
    m = build_zigzag(ZigZagParams(4, 4), spec)
    b = total_sharp(m, ModelParams(1.0, 1.0, kd_scale))
    return 16.0 * (b.magnetostatic + b.magnetostriction)


def _sweep_point(args) -> list[SweepRecord]:
    mu, c, mode, kd_scale, cap, minimize_iters, include_landau = args
    k, l, _ = optimize_kl(mu, c)
    n = resolution_rule(k, l, cap)
    spec = GridSpec(n, pad=pad_rule(n))
    p = ModelParams(mu, mu, kd_scale)
    out = []

    t0 = time.perf_counter()
    m = build_zigzag(ZigZagParams(k, l), spec)
    if mode == "minimize":
        cfg = MinimizeConfig(max_iters=minimize_iters)
        res = minimize_F_eta(m, p, cfg)
        b = res.breakdown
    else:
        b = total_sharp(m, p)
    out.append(SweepRecord(mu, k, l, n, spec.pad, mode,
                           b.exchange_or_wall, b.potential, b.magnetostatic,
                           b.magnetostriction, b.total,
                           time.perf_counter() - t0))

    if include_landau:
        t0 = time.perf_counter()
        bl = total_sharp(build_normal_landau(k, spec), p)
        out.append(SweepRecord(mu, k, l, n, spec.pad, "landau",
                               bl.exchange_or_wall, bl.potential,
                               bl.magnetostatic, bl.magnetostriction,
                               bl.total, time.perf_counter() - t0))
    return out


def run_sweep(mus, mode: str = "construction", c: float | None = None,
              kd_scale: float = 1.0, jobs: int = 1, cap: int = N_CAP,
              minimize_iters: int = 60,
              include_landau: bool = False) -> list[SweepRecord]:
    """Evaluate the optimized competitors at each mu.

    Returns records in mu order: one zig-zag row per mu (the requested
    mode); with include_landau the Landau comparator row (mode
    "landau") follows each one.
    """
    mus = [float(m) for m in mus]
    if any(m <= 0 for m in mus):
        raise ValueError("all mu values must be positive")
    if mode not in ("construction", "minimize"):
        raise ValueError(f"sweep mode must be construction or minimize, got {mode!r}")
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    if c is None:
        c = calibrate_prefactor(kd_scale)
    args = [(mu, c, mode, kd_scale, cap, minimize_iters, include_landau)
            for mu in mus]
    if jobs == 1:
        chunks = [_sweep_point(a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_sweep_point, args))
    return [r for chunk in chunks for r in chunk]


def write_csv(records, path) -> None:
    import csv
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(CSV_COLUMNS)
        for r in records:
            d = asdict(r)
            w.writerow([repr(d[c]) if isinstance(d[c], float) else d[c]
                        for c in CSV_COLUMNS])


def read_csv(path) -> list[SweepRecord]:
    import csv
    out = []
    with open(path, newline="") as f:
        rd = csv.DictReader(f)
        missing = set(CSV_COLUMNS) - set(rd.fieldnames or ())
        if missing:
            raise ValueError(f"sweep csv is missing columns: {sorted(missing)}")
        for row in rd:
            out.append(SweepRecord(
                mu=float(row["mu"]), k=int(row["k"]), l=int(row["l"]),
                n=int(row["n"]), pad=int(row["pad"]), mode=row["mode"],
                wall=float(row["wall"]), potential=float(row["potential"]),
                magnetostatic=float(row["magnetostatic"]),
                magnetostriction=float(row["magnetostriction"]),
                total=float(row["total"]), seconds=float(row["seconds"])))
    return out


def sweep_manifest(records, config: dict) -> dict:
    """Reproducibility manifest for a sweep: the resolved configuration,
    a hash of it, and summary statistics of the records."""
    blob = json.dumps(config, sort_keys=True)
    return {
        "config": config,
        "config_sha256": hashlib.sha256(blob.encode()).hexdigest(),
        "rows": len(records),
        "modes": sorted({r.mode for r in records}),
        "mu_range": [min(r.mu for r in records), max(r.mu for r in records)]
        if records else None,
    }


def fit_exponent(mus, totals):
    """Least-squares fit of log(total) against log(mu).

    Returns (slope, intercept, r_squared); needs at least three points.
    """
    mus = np.asarray(list(mus), dtype=float)
    totals = np.asarray(list(totals), dtype=float)
    if mus.shape != totals.shape or mus.size < 3:
        raise ValueError("fit needs at least three (mu, total) pairs")
    if np.any(mus <= 0) or np.any(totals <= 0):
        raise ValueError("fit needs positive mu and total values")
    x = np.log(mus)
    y = np.log(totals)
    A = np.vstack([x, np.ones_like(x)]).T
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    pred = A @ np.array([slope, intercept])
    ss_res = float(((y - pred) ** 2).sum())
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return float(slope), float(intercept), r2
