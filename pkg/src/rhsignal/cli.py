"""Command-line front end.

Exit status: 0 on success, 1 when ``verify`` finds a residual over
tolerance, 2 on usage, configuration or input-parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import halfline, io, line_basis, line_transforms, verify
from .exceptions import ParseError
from .line_operators import SubalgebraIndex
from .specfun import BasisSpec, gauss_hermite, gauss_laguerre

COMMANDS = ("expand", "synth", "frft", "project", "energy", "halfline", "transform", "verify")


@dataclass
class JobConfig:
    command: str
    n_max: int = 16
    alpha: float | None = None
    k: int | None = None
    r: int | None = None
    angle: float | None = None
    order: int | None = None
    tolerance: float = 1e-9
    seed: int = 0
    input_path: str | None = None
    output_path: str | None = None
    format: str | None = None
    kind: str | None = None
    method: str = "lstsq"
    grid: tuple = field(default=None)

    def validate(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if not self.tolerance > 0:
            raise ValueError("--tol must be positive")
        if self.n_max is not None and self.n_max < 0:
            raise ValueError("--n-max must be non-negative")
        if self.command != "verify" and not self.input_path:
            raise ValueError(f"{self.command} needs --in")
        needs = {
            "frft": ("angle",),
            "project": ("k", "r"),
            "energy": ("k",),
            "halfline": ("alpha",),
        }.get(self.command, ())
        for name in needs:
            if getattr(self, name) is None:
                raise ValueError(f"{self.command} needs --{name.replace('_', '-')}")
        if self.command == "project":
            SubalgebraIndex(self.k, self.r)
        if self.k is not None and self.k < 1:
            raise ValueError("--k must be a positive integer")
        return self


def _parse_grid(text):
    try:
        start, stop, num = text.split(":")
        return float(start), float(stop), int(num)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"grid must look like start:stop:num, got {text!r}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input_path", help="input file (signal or coefficients)")
    common.add_argument("--out", dest="output_path", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"),
                        help="output format (default: from --out extension, else json)")
    common.add_argument("--n-max", type=int, default=16, help="basis truncation order")
    common.add_argument("--alpha", type=float, help="Laguerre parameter (> -1)")
    common.add_argument("--k", type=int, help="number of residue classes")
    common.add_argument("--r", type=int, help="residue class kept by project")
    common.add_argument("--angle", type=float, help="fractional Fourier angle in radians")
    common.add_argument("--order", type=int, help="quadrature order")
    common.add_argument("--tol", dest="tolerance", type=float, default=1e-9)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--kind", choices=("plus", "minus"), help="half-line transform kernel")
    common.add_argument("--method", choices=("lstsq", "spline"), default="lstsq",
                        help="how sampled signals are projected onto a basis")
    common.add_argument("--grid", type=_parse_grid,
                        help="output grid start:stop:num (use --grid=-5:5:101 for a negative start)")

    parser = argparse.ArgumentParser(
        prog="rhsignal",
        description="Hermite/Laguerre expansions, fractional transforms and subspace filters.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "expand": "sampled signal on the line -> Hermite coefficients",
        "synth": "coefficients -> sampled signal",
        "frft": "fractional Fourier transform of coefficients or a signal",
        "project": "keep one (k, r) residue class of a coefficient vector",
        "energy": "energy per residue class modulo k",
        "halfline": "sampled half-line signal -> Laguerre coefficients",
        "transform": "half-line sine/cosine transform (or its fractional version with --k)",
        "verify": "run the invariant suite",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name], description=helps[name])
    return parser


def config_from_args(ns):
    d = {k: v for k, v in vars(ns).items() if k in JobConfig.__dataclass_fields__}
    return JobConfig(**d).validate()


def _out_format(cfg):
    if cfg.format:
        return cfg.format
    if cfg.output_path:
        return io.infer_format(cfg.output_path)
    return "json"


def _emit_coeffs(cfg, c):
    if cfg.output_path:
        io.write_coeffs(cfg.output_path, c, _out_format(cfg))
    else:
        print(json.dumps({"family": c.basis.family, "alpha": c.basis.alpha,
                          "n_max": c.basis.n_max,
                          "coefficients": [[v.real, v.imag] for v in c.coeffs]}))


def _emit_signal(cfg, s):
    if cfg.output_path:
        io.write_signal(cfg.output_path, s, _out_format(cfg))
    else:
        for x, v in zip(s.grid, s.values):
            print(f"{float(x)!r},{float(v.real)!r},{float(v.imag)!r}")


def _default_grid(basis):
    if basis.family == "hermite":
        ext = max(8.0, 1.5 * np.sqrt(2 * basis.n_max + 1))
        return np.linspace(-ext, ext, 801)
    return np.linspace(0.05, max(20.0, 1.5 * (4 * basis.n_max + 2 * basis.alpha + 2)), 800)


def _grid(cfg, basis=None):
    if cfg.grid is not None:
        return np.linspace(*cfg.grid)
    if basis is None:
        return None
    return _default_grid(basis)


def _rule(cfg, spec):
    if cfg.order is None:
        return None
    if spec.family == "hermite":
        return gauss_hermite(cfg.order)
    return gauss_laguerre(cfg.order, spec.alpha)


def _cmd_expand(cfg):
    sig = io.read_signal(cfg.input_path, domain="full_line")
    spec = BasisSpec.hermite(cfg.n_max)
    _emit_coeffs(cfg, line_basis.analyze(sig, spec, _rule(cfg, spec), cfg.method))


def _cmd_halfline(cfg):
    sig = io.read_signal(cfg.input_path, domain="half_line")
    spec = BasisSpec.laguerre(cfg.n_max, cfg.alpha)
    _emit_coeffs(cfg, halfline.analyze_halfline(sig, spec, _rule(cfg, spec), cfg.method))


def _cmd_synth(cfg):
    c = io.read_coeffs(cfg.input_path)
    grid = _grid(cfg, c.basis)
    if c.basis.family == "hermite":
        _emit_signal(cfg, line_basis.synthesize(c, grid))
    else:
        _emit_signal(cfg, halfline.synthesize_halfline(c, grid))


def _cmd_frft(cfg):
    if io.detect_kind(cfg.input_path) == "coeffs":
        _emit_coeffs(cfg, line_transforms.frft_coeff(io.read_coeffs(cfg.input_path), cfg.angle))
        return
    sig = io.read_signal(cfg.input_path, domain="full_line")
    spec = BasisSpec.hermite(cfg.n_max)
    _emit_signal(cfg, line_transforms.frft_signal(sig, cfg.angle, spec, _rule(cfg, spec),
                                                  _grid(cfg)))


def _energy_report(c, k):
    e = line_transforms.subspace_energy(c, k)
    return {"k": k, "energy": [float(v) for v in e], "total": float(e.sum())}


def _cmd_project(cfg):
    c = io.read_coeffs(cfg.input_path)
    kept = line_transforms.project(c, SubalgebraIndex(cfg.k, cfg.r))
    if cfg.output_path:
        io.write_coeffs(cfg.output_path, kept, _out_format(cfg))
        report = _energy_report(c, cfg.k)
        report["kept"] = {"r": cfg.r, "energy": float(kept.norm() ** 2)}
        print(json.dumps(report))
    else:
        _emit_coeffs(cfg, kept)


def _cmd_energy(cfg):
    c = io.read_coeffs(cfg.input_path)
    report = _energy_report(c, cfg.k)
    if cfg.output_path and _out_format(cfg) == "csv":
        lines = ["r,energy"] + [f"{r},{v!r}" for r, v in enumerate(report["energy"])]
        with open(cfg.output_path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    elif cfg.output_path:
        with open(cfg.output_path, "w") as fh:
            fh.write(json.dumps(report) + "\n")
    else:
        print(json.dumps(report))


def _cmd_transform(cfg):
    if io.detect_kind(cfg.input_path) == "coeffs":
        c = io.read_coeffs(cfg.input_path)
        kind = cfg.kind or ("plus" if c.basis.alpha == 0.5 else "minus")
        _emit_coeffs(cfg, halfline.frt_coeff(kind, c, cfg.k or 2))
        return
    if cfg.kind is None:
        raise ValueError("transform of a signal needs --kind plus|minus")
    sig = io.read_signal(cfg.input_path, domain="half_line")
    grid = _grid(cfg)
    if grid is None:
        grid = sig.grid
    if cfg.k is not None:
        out = halfline.frt_signal(cfg.kind, sig, cfg.k, cfg.n_max, grid)
    else:
        out = halfline.transform_T(cfg.kind, sig, grid, m=cfg.order or 400)
    _emit_signal(cfg, out)


def _cmd_verify(cfg):
    checks, elapsed = verify.timed_run(cfg.tolerance, cfg.seed)
    table = verify.format_table(checks, elapsed)
    if cfg.output_path:
        with open(cfg.output_path, "w") as fh:
            fh.write(table + "\n")
    print(table)
    return 0 if verify.all_passed(checks) else 1


_DISPATCH = {
    "expand": _cmd_expand,
    "synth": _cmd_synth,
    "frft": _cmd_frft,
    "project": _cmd_project,
    "energy": _cmd_energy,
    "halfline": _cmd_halfline,
    "transform": _cmd_transform,
    "verify": _cmd_verify,
}


def run(config):
    """Execute one job; returns the process exit status."""
    return _DISPATCH[config.command](config) or 0


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return run(cfg)
    except (ParseError, ValueError, OSError) as exc:
        print(f"rhsignal: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
