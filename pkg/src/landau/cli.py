"""Command line interface.

Subcommands: construct, energy, minimize, sweep, fit, oracle-check,
diagnose.  Exit codes: 0 success, 1 internal error, 2 usage or input
error.  The output directory defaults to the LANDAU_OUT environment
variable (falling back to the working directory); every run writes a
manifest with the resolved configuration next to its outputs.

An optional config file (--config, one key=value per line, # comments)
supplies defaults for any flag of the subcommand; explicit flags win.
Unknown keys are rejected rather than ignored.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import constructions, diagnostics, fields_io, relax, scaling
from .energy import ModelParams, total_relaxed, total_sharp
from .grid import GridSpec, SpinField, VectorField, total_variation

ENV_OUT = "LANDAU_OUT"


class UsageError(Exception):
    """Bad flags, bad config, or unreadable input: exit code 2."""


# ----------------------------------------------------------------------
# config plumbing
# ----------------------------------------------------------------------

def _read_config(path) -> dict:
    try:
        lines = open(path).read().splitlines()
    except OSError as e:
        raise UsageError(f"cannot read config file: {e}") from e
    out = {}
    for ln, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{ln}: expected key=value, got {raw!r}")
        key, val = line.split("=", 1)
        out[key.strip().replace("-", "_")] = val.strip()
    return out


def _merge_config(args: argparse.Namespace, defaults: dict) -> dict:
    """Resolve the run configuration: hard defaults, then config file
    values, then explicit flags (argparse uses SUPPRESS so only flags
    actually given appear in the namespace)."""
    given = vars(args)
    cfg = dict(defaults)
    if "config" in given and given["config"]:
        file_vals = _read_config(given["config"])
        unknown = set(file_vals) - set(defaults)
        if unknown:
            raise UsageError(
                f"unknown config keys for this command: {sorted(unknown)}")
        for key, val in file_vals.items():
            want = type(defaults[key]) if defaults[key] is not None else str
            try:
                cfg[key] = want(val) if want is not bool else val.lower() in ("1", "true", "yes")
            except ValueError as e:
                raise UsageError(f"config key {key}: {e}") from e
    for key, val in given.items():
        if key in defaults and val is not None:
            cfg[key] = val
    return cfg


def _outdir(cfg: dict) -> str:
    out = cfg.get("out") or os.environ.get(ENV_OUT) or "."
    os.makedirs(out, exist_ok=True)
    return out


def _write_manifest(outdir: str, command: str, cfg: dict) -> None:
    path = os.path.join(outdir, f"manifest-{command}.json")
    with open(path, "w") as f:
        json.dump({"command": command, "config": cfg}, f, indent=2,
                  sort_keys=True, default=str)
        f.write("\n")


def _load_field(path):
    if not os.path.exists(path):
        raise UsageError(f"no such field file: {path}")
    try:
        return fields_io.load_field(path)
    except ValueError as e:
        raise UsageError(str(e)) from e


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

CONSTRUCT_DEFAULTS = {"k": 4, "l": 4, "n": 256, "pad": 8, "well": 0,
                      "wells": "0,1", "normal": "axis", "out": None,
                      "name": None}


def cmd_construct(args) -> int:
    cfg = _merge_config(args, CONSTRUCT_DEFAULTS)
    pattern = args.pattern
    try:
        spec = GridSpec(cfg["n"], pad=cfg["pad"])
        if pattern == "zigzag":
            m = constructions.build_zigzag(
                constructions.ZigZagParams(cfg["k"], cfg["l"]), spec)
        elif pattern == "landau":
            m = constructions.build_normal_landau(cfg["k"], spec)
        elif pattern == "stripes":
            wells = tuple(int(w) for w in str(cfg["wells"]).split(","))
            if len(wells) != 2:
                raise UsageError("stripes needs exactly two wells, e.g. --wells 0,1")
            m = constructions.build_stripes(cfg["normal"], cfg["k"], wells, spec)
        elif pattern == "uniform":
            m = constructions.build_uniform(cfg["well"], spec)
        else:
            raise UsageError(f"unknown pattern {pattern!r}")
    except ValueError as e:
        raise UsageError(str(e)) from e
    outdir = _outdir(cfg)
    name = cfg["name"] or f"{pattern}.field"
    path = os.path.join(outdir, name)
    fields_io.save_field(m, path)
    _write_manifest(outdir, f"construct-{pattern}", cfg)
    passed, worst = constructions.check_M0(m)
    print(json.dumps({
        "field": path,
        "pattern": pattern,
        "n": spec.n,
        "total_variation": total_variation(m),
        "M0_pass": passed,
        "M0_worst": worst,
    }, indent=2))
    return 0


ENERGY_DEFAULTS = {"mu": 1e-3, "eta": 1e-3, "kd": 1.0, "sharp": False,
                   "out": None}


def cmd_energy(args) -> int:
    cfg = _merge_config(args, ENERGY_DEFAULTS)
    f = _load_field(args.field)
    p = ModelParams(cfg["mu"], cfg["eta"], cfg["kd"])
    if isinstance(f, SpinField):
        b = total_sharp(f, p)
    elif cfg["sharp"]:
        raise UsageError("--sharp requires a spin field file")
    else:
        b = total_relaxed(f, p)
    _write_manifest(_outdir(cfg), "energy", cfg)
    print(b.to_json(p))
    return 0


MINIMIZE_DEFAULTS = {"mu": 1e-3, "kd": 1.0, "max_iters": 200,
                     "grad_tol": 1e-6, "out": None, "name": "minimized.field"}


def cmd_minimize(args) -> int:
    cfg = _merge_config(args, MINIMIZE_DEFAULTS)
    f = _load_field(args.field)
    if not isinstance(f, (SpinField, VectorField)):
        raise UsageError("minimize needs a spin or vector field")
    p = ModelParams(cfg["mu"], 1.0, cfg["kd"])
    mc = relax.MinimizeConfig(max_iters=cfg["max_iters"],
                              grad_tol=cfg["grad_tol"])
    res = relax.minimize_F_eta(f, p, mc)
    outdir = _outdir(cfg)
    path = os.path.join(outdir, cfg["name"])
    fields_io.save_field(res.field, path)
    trace_path = os.path.join(outdir, cfg["name"] + ".trace.csv")
    with open(trace_path, "w") as fh:
        fh.write("stage,eta,iter,energy,step\n")
        for stage, eta, it, energy, step in res.trace:
            fh.write(f"{stage},{eta!r},{it},{energy!r},{step!r}\n")
    _write_manifest(outdir, "minimize", cfg)
    print(json.dumps({"field": path, "trace": trace_path,
                      "converged": res.converged,
                      **res.breakdown.to_dict()}, indent=2))
    return 0


SWEEP_DEFAULTS = {"mu_min": 1e-4, "mu_max": 1e-2, "points": 8,
                  "mode": "construction", "jobs": 1, "landau": False,
                  "minimize_iters": 60, "out": None, "name": "sweep.csv"}


def cmd_sweep(args) -> int:
    cfg = _merge_config(args, SWEEP_DEFAULTS)
    if cfg["points"] < 1:
        raise UsageError("points must be at least 1")
    if cfg["mu_min"] <= 0 or cfg["mu_max"] < cfg["mu_min"]:
        raise UsageError("need 0 < mu-min <= mu-max")
    mus = np.logspace(np.log10(cfg["mu_min"]), np.log10(cfg["mu_max"]),
                      cfg["points"])
    try:
        records = scaling.run_sweep(mus, mode=cfg["mode"], jobs=cfg["jobs"],
                                    include_landau=cfg["landau"],
                                    minimize_iters=cfg["minimize_iters"])
    except ValueError as e:
        raise UsageError(str(e)) from e
    outdir = _outdir(cfg)
    path = os.path.join(outdir, cfg["name"])
    scaling.write_csv(records, path)
    manifest = scaling.sweep_manifest(records, cfg)
    with open(os.path.join(outdir, "manifest-sweep.json"), "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True, default=str)
        f.write("\n")
    print(json.dumps({"csv": path, "rows": len(records),
                      "config_sha256": manifest["config_sha256"]}, indent=2))
    return 0


FIT_DEFAULTS = {"mode": "construction", "out": None}


def cmd_fit(args) -> int:
    cfg = _merge_config(args, FIT_DEFAULTS)
    if not os.path.exists(args.csv):
        raise UsageError(f"no such sweep csv: {args.csv}")
    try:
        records = [r for r in scaling.read_csv(args.csv) if r.mode == cfg["mode"]]
        slope, intercept, r2 = scaling.fit_exponent(
            [r.mu for r in records], [r.total for r in records])
    except ValueError as e:
        raise UsageError(str(e)) from e
    _write_manifest(_outdir(cfg), "fit", cfg)
    print(json.dumps({"slope": slope, "intercept": intercept,
                      "r_squared": r2, "points": len(records)}, indent=2))
    return 0


DIAGNOSE_DEFAULTS = {"out": None}


def cmd_diagnose(args) -> int:
    cfg = _merge_config(args, DIAGNOSE_DEFAULTS)
    f = _load_field(args.field)
    if not isinstance(f, SpinField):
        raise UsageError("diagnose needs a spin field")
    rep = diagnostics.report(f)
    passed, worst = constructions.check_M0(f)
    rep["M0_pass"] = passed
    rep["M0_worst"] = worst
    _write_manifest(_outdir(cfg), "diagnose", cfg)
    print(json.dumps(rep, indent=2, default=float))
    return 0


ORACLE_DEFAULTS = {"seed": 7, "out": None}


def cmd_oracle_check(args) -> int:
    """Fast end-to-end battery of the frozen oracles; exit 1 if any
    disagrees."""
    from .elasticity import SymTensorField, solve_direct, solve_spectral
    cfg = _merge_config(args, ORACLE_DEFAULTS)
    rng = np.random.default_rng(cfg["seed"])
    failures = []

    def check(name, ok, detail):
        print(f"{'ok  ' if ok else 'FAIL'} {name}: {detail}")
        if not ok:
            failures.append(name)

    # two elastic solvers agree on random smooth fields
    n = 32
    spec = GridSpec(n, pad=4)
    kx = np.fft.fftfreq(n, 1.0 / n)
    smooth = np.exp(-0.08 * (kx[:, None] ** 2 + kx[None, :] ** 2))
    for trial in range(3):
        vals = np.stack([np.fft.ifft2(np.fft.fft2(rng.normal(size=(n, n)))
                                      * smooth).real for _ in range(3)], axis=-1)
        V = SymTensorField(spec, vals)
        a = solve_spectral(V).residual_energy
        b = solve_direct(V).residual_energy
        rel = abs(a - b) / max(abs(a), 1e-14)
        check(f"elasticity solvers trial {trial}", rel < 1e-6, f"rel {rel:.2e}")

    # uniform square magnetostatic anchor
    m = constructions.build_uniform(0, GridSpec(128, pad=8))
    e = total_sharp(m, ModelParams(1.0, 1.0, 1.0)).magnetostatic
    check("uniform magnetostatic 0.5", abs(e - 0.5) < 0.01, f"{e:.4f}")

    # balanced diagonal laminate quarter-variance anchor
    from .energy import magnetostriction_energy
    lam = constructions.build_stripes("diagonal", 7, (0, 1), GridSpec(128, pad=4))
    e = magnetostriction_energy(lam, periodic=True)
    check("diagonal laminate 0.25", abs(e - 0.25) < 1e-10, f"{e:.12f}")

    # gradient of the full functional against central differences
    p = ModelParams(0.3, 0.2, 1.3)
    vals = np.stack([np.fft.ifft2(np.fft.fft2(rng.normal(size=(n, n)))
                                  * smooth).real for _ in range(2)], axis=-1)
    d = rng.normal(size=(n, n, 2))
    d /= np.linalg.norm(d)
    h = 1e-6
    ep = total_relaxed(VectorField(spec, vals + h * d), p).total
    em = total_relaxed(VectorField(spec, vals - h * d), p).total
    fd = (ep - em) / (2 * h)
    an = float((relax.gradient_F_eta(VectorField(spec, vals), p).values * d).sum())
    rel = abs(fd - an) / max(abs(fd), 1e-14)
    check("gradient vs finite differences", rel < 1e-5, f"rel {rel:.2e}")

    # exact M0 balance of the zig-zag generator
    m = constructions.build_zigzag(constructions.ZigZagParams(3, 3),
                                   GridSpec(128, pad=4))
    ok, worst = constructions.check_M0(m)
    check("zig-zag M0 balance", ok, f"worst {worst:.1e}")

    _write_manifest(_outdir(cfg), "oracle-check", cfg)
    return 1 if failures else 0


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    parser = argparse.ArgumentParser(
        prog="landau",
        description="Spectral toolkit for zig-zag Landau states in cubic "
                    "ferromagnets with magnetostriction.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_, argument_default=S)
        p.set_defaults(fn=fn)
        p.add_argument("--config", default=None)
        p.add_argument("--out", help=f"output directory (default ${ENV_OUT} or .)")
        return p

    p = add("construct", cmd_construct, "generate a pattern and write a field file")
    p.add_argument("pattern", choices=["zigzag", "landau", "stripes", "uniform"])
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--pad", type=int)
    p.add_argument("--well", type=int)
    p.add_argument("--wells")
    p.add_argument("--normal", choices=["axis", "diagonal"])
    p.add_argument("--name")

    p = add("energy", cmd_energy, "print the energy breakdown of a field file")
    p.add_argument("field")
    p.add_argument("--mu", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--kd", type=float)
    p.add_argument("--sharp", action="store_true")

    p = add("minimize", cmd_minimize, "gradient descent from a field file")
    p.add_argument("field")
    p.add_argument("--mu", type=float)
    p.add_argument("--kd", type=float)
    p.add_argument("--max-iters", type=int, dest="max_iters")
    p.add_argument("--grad-tol", type=float, dest="grad_tol")
    p.add_argument("--name")

    p = add("sweep", cmd_sweep, "optimized competitors over a mu range")
    p.add_argument("--mu-min", type=float, dest="mu_min")
    p.add_argument("--mu-max", type=float, dest="mu_max")
    p.add_argument("--points", type=int)
    p.add_argument("--mode", choices=["construction", "minimize"])
    p.add_argument("--jobs", type=int)
    p.add_argument("--landau", action="store_true",
                   help="append normal-Landau comparator rows")
    p.add_argument("--minimize-iters", type=int, dest="minimize_iters")
    p.add_argument("--name")

    p = add("fit", cmd_fit, "fit the scaling exponent of a sweep csv")
    p.add_argument("csv")
    p.add_argument("--mode")

    p = add("oracle-check", cmd_oracle_check, "run the fast oracle battery")
    p.add_argument("--seed", type=int)

    p = add("diagnose", cmd_diagnose, "spectral diagnostics of a spin field")
    p.add_argument("field")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001 - the cli boundary
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
