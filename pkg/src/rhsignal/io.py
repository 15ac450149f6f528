"""Reading and writing signal and coefficient files.

Signal CSV: one sample per line, ``x,re[,im]``; blank lines and ``#``
comments are skipped, and a ``# domain=half_line`` comment marks a half-line
signal.  Coefficient JSON::

    {"family": "laguerre", "alpha": 0.5, "n_max": 2,
     "coefficients": [[re, im], [re, im], [re, im]]}

Coefficient CSV has lines ``n,re,im`` under a ``# family=... n_max=...``
header.  Floats are written with ``repr`` (shortest round-trip form, at
most 17 significant digits), so write-then-read is bit-faithful.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .exceptions import ParseError
from .line_basis import CoeffVector, SampledSignal
from .specfun import BasisSpec

__all__ = ["read_signal", "write_signal", "read_coeffs", "write_coeffs", "detect_kind",
           "infer_format"]


def infer_format(path, fmt=None):
    if fmt:
        if fmt not in ("csv", "json"):
            raise ParseError(f"unknown format {fmt!r}")
        return fmt
    return "json" if Path(path).suffix.lower() == ".json" else "csv"


def _float(tok, loc):
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"not a number: {tok.strip()!r}", loc) from None


def _header_fields(line):
    out = {}
    for item in line.lstrip("#").split():
        if "=" in item:
            key, _, val = item.partition("=")
            out[key.strip()] = val.strip()
    return out


def _read_lines(path):
    try:
        return Path(path).read_text().splitlines()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from None


def read_signal(path, fmt=None, domain=None):
    """Load a :class:`SampledSignal` from CSV or JSON.

    ``domain`` overrides whatever the file declares.
    """
    fmt = infer_format(path, fmt)
    if fmt == "json":
        obj = _load_json(path)
        if not isinstance(obj, dict) or "grid" not in obj or "values" not in obj:
            raise ParseError("signal JSON needs 'grid' and 'values'", str(path))
        grid = obj["grid"]
        values = [_pair(v, f"{path}:values[{i}]") for i, v in enumerate(obj["values"])]
        declared = obj.get("domain", "full_line")
    else:
        grid, values, declared = [], [], "full_line"
        for lineno, raw in enumerate(_read_lines(path), 1):
            loc = f"{path}:{lineno}"
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                declared = _header_fields(line).get("domain", declared)
                continue
            fields = line.split(",")
            if len(fields) not in (2, 3):
                raise ParseError(f"expected 'x,re[,im]', got {len(fields)} fields", loc)
            x = _float(fields[0], loc)
            re = _float(fields[1], loc)
            im = _float(fields[2], loc) if len(fields) == 3 else 0.0
            grid.append(x)
            values.append(complex(re, im))
    try:
        return SampledSignal(np.array(grid, dtype=float), np.array(values, dtype=complex),
                             domain or declared)
    except ValueError as exc:
        raise ParseError(str(exc), str(path)) from None


def write_signal(path, signal, fmt=None):
    fmt = infer_format(path, fmt)
    if fmt == "json":
        obj = {
            "domain": signal.domain,
            "grid": [float(x) for x in signal.grid],
            "values": [[float(v.real), float(v.imag)] for v in signal.values],
        }
        Path(path).write_text(json.dumps(obj) + "\n")
        return
    lines = [f"# domain={signal.domain}"]
    lines += [f"{float(x)!r},{float(v.real)!r},{float(v.imag)!r}"
              for x, v in zip(signal.grid, signal.values)]
    Path(path).write_text("\n".join(lines) + "\n")


def _load_json(path):
    text = "\n".join(_read_lines(path))
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{path}:{exc.lineno}") from None


def _pair(v, loc):
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(t, (int, float)) for t in v):
        return complex(v[0], v[1])
    raise ParseError(f"expected a number or [re, im], got {v!r}", loc)


def _basis_from(fields, loc):
    family = fields.get("family")
    if family not in ("hermite", "laguerre"):
        raise ParseError(f"unknown or missing basis family {family!r}", loc)
    try:
        n_max = int(fields["n_max"])
    except (KeyError, TypeError, ValueError):
        raise ParseError("missing or non-integer n_max", loc) from None
    alpha = fields.get("alpha")
    try:
        if family == "laguerre":
            if alpha is None:
                raise ParseError("laguerre basis needs alpha", loc)
            return BasisSpec.laguerre(n_max, float(alpha))
        return BasisSpec.hermite(n_max)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), loc) from None


def read_coeffs(path, fmt=None):
    """Load a :class:`CoeffVector`; the declared ``n_max`` must match the data length."""
    fmt = infer_format(path, fmt)
    if fmt == "json":
        obj = _load_json(path)
        if not isinstance(obj, dict):
            raise ParseError("coefficient JSON must be an object", str(path))
        basis = _basis_from(obj, str(path))
        raw = obj.get("coefficients")
        if not isinstance(raw, list):
            raise ParseError("missing 'coefficients' list", str(path))
        coeffs = [_pair(v, f"{path}:coefficients[{i}]") for i, v in enumerate(raw)]
    else:
        header, coeffs, loc0 = None, [], str(path)
        for lineno, raw in enumerate(_read_lines(path), 1):
            loc = f"{path}:{lineno}"
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                fields = _header_fields(line)
                if "family" in fields:
                    header, loc0 = fields, loc
                continue
            parts = line.split(",")
            if len(parts) not in (2, 3):
                raise ParseError(f"expected 'n,re[,im]', got {len(parts)} fields", loc)
            try:
                n = int(parts[0])
            except ValueError:
                raise ParseError(f"bad index {parts[0]!r}", loc) from None
            if n != len(coeffs):
                raise ParseError(f"expected index {len(coeffs)}, got {n}", loc)
            im = _float(parts[2], loc) if len(parts) == 3 else 0.0
            coeffs.append(complex(_float(parts[1], loc), im))
        if header is None:
            raise ParseError("missing '# family=... n_max=...' header", str(path))
        basis = _basis_from(header, loc0)
    if len(coeffs) != basis.size:
        raise ParseError(
            f"n_max={basis.n_max} needs {basis.size} coefficients, file has {len(coeffs)}",
            str(path))
    return CoeffVector(basis, np.array(coeffs, dtype=complex))


def write_coeffs(path, c, fmt=None):
    fmt = infer_format(path, fmt)
    b = c.basis
    if fmt == "json":
        obj = {"family": b.family, "alpha": b.alpha, "n_max": b.n_max,
               "coefficients": [[float(v.real), float(v.imag)] for v in c.coeffs]}
        Path(path).write_text(json.dumps(obj) + "\n")
        return
    head = f"# family={b.family} n_max={b.n_max}"
    if b.alpha is not None:
        head += f" alpha={b.alpha!r}"
    lines = [head] + [f"{n},{float(v.real)!r},{float(v.imag)!r}" for n, v in enumerate(c.coeffs)]
    Path(path).write_text("\n".join(lines) + "\n")


def detect_kind(path, fmt=None):
    """``'coeffs'`` or ``'signal'``, judged from the file's contents."""
    fmt = infer_format(path, fmt)
    if fmt == "json":
        obj = _load_json(path)
        return "coeffs" if isinstance(obj, dict) and "coefficients" in obj else "signal"
    for raw in _read_lines(path):
        line = raw.strip()
        if line.startswith("#") and "family" in _header_fields(line):
            return "coeffs"
    return "signal"
