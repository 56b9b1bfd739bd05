"""Command-line front end: zero tables, spectra, field grids, verification.

Commands
--------
zeros   first zeros of J_m or of the annular cross-product determinant
modes   TM spectrum below a frequency cutoff (optionally as a histogram)
field   one mode sampled over a rho/phi/z grid
verify  run the built-in invariant suites

Common flags: ``--format {csv,json}``, ``--out PATH`` (default stdout),
``--config PATH`` (flat key=value file; explicit flags win). CSV output
is comma-separated with a header row and LF line endings; JSON output is
a single document ``{"schema": "coaxmode/1", "command": ..., "params":
{...}, "rows": [...]}``. Numbers are serialized with shortest-round-trip
repr (up to 17 significant digits), so identical runs are byte-identical
and CSV and JSON carry identical values.

Exit codes: 0 success, 1 numerical failure (or failed verification),
2 argument/validation errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional

from . import __version__
from .cavity import (AnnulusGeometry, C_LIGHT, CylinderGeometry,
                     ModeIndex, enumerate_modes_below, mode_count_histogram)
from .errors import CoaxmodeError, GeometryError, DomainError, OrderError
from .fields import FieldPoint, transverse_fields
from .roots import bessel_zeros, cross_product_zeros
from .verify import MODULES, run_checks

SCHEMA = "coaxmode/1"


class _UsageError(Exception):
    """Bad arguments detected after parsing; mapped to exit code 2."""


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(command: str, params: dict, columns: list[str], rows: list[dict],
          fmt: str, out: Optional[str]) -> None:
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow(_fmt(row[c]) for c in columns)
        text = buffer.getvalue()
    else:
        doc = {"schema": SCHEMA, "command": command, "params": params, "rows": rows}
        text = json.dumps(doc, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise _UsageError(f"{path}:{lineno}: expected key=value, got {raw.rstrip()!r}")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


_CONFIG_TYPES = {
    "kind": str, "m": int, "count": int, "a": float, "b": float, "l": float,
    "cavity": str, "omega_max": float, "freq_max_hz": float, "histogram": int,
    "mode": str, "sign": str, "amplitude": str, "rho": str, "phi": str, "z": str,
    "format": str, "module": str,
}


def _apply_config(args: argparse.Namespace) -> None:
    if not getattr(args, "config", None):
        return
    for key, raw in _load_config(args.config).items():
        if key not in _CONFIG_TYPES:
            raise _UsageError(f"unknown config key {key!r}")
        if getattr(args, key, None) is None:
            try:
                setattr(args, key, _CONFIG_TYPES[key](raw))
            except ValueError as exc:
                raise _UsageError(f"config key {key!r}: {exc}") from exc


def _require(args: argparse.Namespace, name: str):
    value = getattr(args, name, None)
    if value is None:
        raise _UsageError(f"--{name.replace('_', '-')} is required")
    return value


def _geometry(args: argparse.Namespace):
    cavity_kind = _require(args, "cavity")
    b = _require(args, "b")
    l = _require(args, "l")
    if cavity_kind == "cylinder":
        if args.a is not None:
            raise _UsageError("--a applies to the annulus only; "
                              "drop it or use --cavity annulus")
        return CylinderGeometry(b=b, l=l)
    if cavity_kind == "annulus":
        return AnnulusGeometry(a=_require(args, "a"), b=b, l=l)
    raise _UsageError(f"--cavity must be cylinder or annulus, got {cavity_kind!r}")


def _parse_grid(spec: str, flag: str) -> list[float]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise _UsageError(f"{flag} expects LO:HI:COUNT, got {spec!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise _UsageError(f"{flag}: {exc}") from exc
    if n < 1 or hi < lo:
        raise _UsageError(f"{flag}: need COUNT >= 1 and HI >= LO, got {spec!r}")
    if n == 1:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_zeros(args) -> int:
    kind = _require(args, "kind")
    if kind == "cross":
        a = _require(args, "a")
        b = _require(args, "b")
        if a >= b:
            raise _UsageError(f"--a must be smaller than --b (inner < outer); "
                              f"got a={a!r}, b={b!r}")
    elif kind == "bessel":
        if args.a is not None or args.b is not None:
            raise _UsageError("--a/--b apply to --kind cross only")
    else:
        raise _UsageError(f"--kind must be bessel or cross, got {kind!r}")
    m = abs(_require(args, "m"))  # the table of J_{-m} equals that of J_m
    count = _require(args, "count")
    if kind == "bessel":
        table = bessel_zeros(m, count)
        params = {"kind": kind, "m": m, "count": count}
    else:
        table = cross_product_zeros(m, a, b, count)
        params = {"kind": kind, "m": m, "count": count, "a": a, "b": b}
    rows = [{"m": m, "n": i + 1, "value": z, "residual": r}
            for i, (z, r) in enumerate(zip(table.zeros, table.residuals))]
    _emit("zeros", params, ["m", "n", "value", "residual"], rows, args.format, args.out)
    return 0


def _omega_max(args) -> float:
    if args.omega_max is not None and args.freq_max_hz is not None:
        raise _UsageError("give either --omega-max or --freq-max-hz, not both")
    if args.omega_max is not None:
        return args.omega_max
    if args.freq_max_hz is not None:
        return 2.0 * math.pi * args.freq_max_hz
    raise _UsageError("--omega-max or --freq-max-hz is required")


def _cmd_modes(args) -> int:
    geometry = _geometry(args)
    omega_max = _omega_max(args)
    params = {"cavity": type(geometry).__name__.removesuffix("Geometry").lower(),
              "b": geometry.b, "l": geometry.l, "omega_max": omega_max}
    if isinstance(geometry, AnnulusGeometry):
        params["a"] = geometry.a
    if args.histogram is not None:
        hist = mode_count_histogram(geometry, omega_max, args.histogram)
        params["histogram_bins"] = args.histogram
        rows = [{"omega_bin_edge": edge, "cumulative_count": count}
                for edge, count in hist]
        _emit("modes", params, ["omega_bin_edge", "cumulative_count"], rows,
              args.format, args.out)
        return 0
    rows = [{"m": e.index.m, "n": e.index.n, "p": e.index.p, "gamma": e.gamma,
             "omega_rad_s": e.omega, "degeneracy": e.degeneracy}
            for e in enumerate_modes_below(geometry, omega_max)]
    _emit("modes", params,
          ["m", "n", "p", "gamma", "omega_rad_s", "degeneracy"], rows,
          args.format, args.out)
    return 0


def _cmd_field(args) -> int:
    geometry = _geometry(args)
    mode_spec = _require(args, "mode")
    try:
        m, n, p = (int(v) for v in mode_spec.split(","))
    except ValueError as exc:
        raise _UsageError(f"--mode expects M,N,P integers, got {mode_spec!r}") from exc
    index = ModeIndex(m, n, p)
    sign = {"+": 1, "-": -1}.get(_require(args, "sign"))
    if sign is None:
        raise _UsageError(f"--sign must be + or -, got {args.sign!r}")
    amp_spec = args.amplitude if args.amplitude is not None else "1"
    try:
        re, _, im = amp_spec.partition(",")
        amplitude = complex(float(re), float(im) if im else 0.0)
    except ValueError as exc:
        raise _UsageError(f"--amplitude expects RE or RE,IM, got {amp_spec!r}") from exc

    rho_lo = geometry.a if isinstance(geometry, AnnulusGeometry) else 0.0
    rhos = _parse_grid(_require(args, "rho"), "--rho")
    phis = _parse_grid(_require(args, "phi"), "--phi")
    zs = _parse_grid(_require(args, "z"), "--z")
    if rhos[0] < rho_lo or rhos[-1] > geometry.b or zs[0] < 0.0 or zs[-1] > geometry.l:
        raise _UsageError(
            f"grid leaves the cavity: rho must stay in [{rho_lo}, {geometry.b}], "
            f"z in [0, {geometry.l}]")

    params = {"cavity": type(geometry).__name__.removesuffix("Geometry").lower(),
              "b": geometry.b, "l": geometry.l, "mode": [m, n, p],
              "sign": "+" if sign > 0 else "-",
              "amplitude": [amplitude.real, amplitude.imag]}
    if isinstance(geometry, AnnulusGeometry):
        params["a"] = geometry.a
    columns = ["rho", "phi", "z",
               "re_ez", "im_ez", "re_erho", "im_erho", "re_ephi", "im_ephi",
               "re_brho", "im_brho", "re_bphi", "im_bphi"]
    rows = []
    for rho in rhos:
        for phi in phis:
            for z in zs:
                s = transverse_fields(geometry, index, sign, amplitude,
                                      FieldPoint(rho, phi, z))
                rows.append({
                    "rho": rho, "phi": phi, "z": z,
                    "re_ez": s.e_z.real, "im_ez": s.e_z.imag,
                    "re_erho": s.e_rho.real, "im_erho": s.e_rho.imag,
                    "re_ephi": s.e_phi.real, "im_ephi": s.e_phi.imag,
                    "re_brho": s.b_rho.real, "im_brho": s.b_rho.imag,
                    "re_bphi": s.b_phi.real, "im_bphi": s.b_phi.imag,
                })
    _emit("field", params, columns, rows, args.format, args.out)
    return 0


def _cmd_verify(args) -> int:
    module = args.module_pos or args.module
    if module is not None and module not in MODULES:
        raise _UsageError(f"unknown module {module!r}; pick one of {', '.join(MODULES)}")
    scale = 0.0 if args.inject_zero_tolerance else 1.0
    results = run_checks(module, tolerance_scale=scale)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.module}.{r.check}: {r.detail}", file=sys.stderr)
    rows = [{"module": r.module, "check": r.check, "passed": r.passed,
             "detail": r.detail} for r in results]
    params = {"module": module or "all", "all_passed": all(r.passed for r in results)}
    _emit("verify", params, ["module", "check", "passed", "detail"], rows,
          args.format, args.out)
    return 0 if params["all_passed"] else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("csv", "json"), default=None,
                     help="output format (default csv)")
    sub.add_argument("--out", default=None, metavar="PATH",
                     help="write output to PATH instead of stdout")
    sub.add_argument("--config", default=None, metavar="PATH",
                     help="flat key=value file supplying defaults; flags override")


def _add_geometry(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--cavity", choices=("cylinder", "annulus"), default=None,
                     help="cavity cross-section")
    sub.add_argument("--a", type=float, default=None, help="inner radius, meters (annulus)")
    sub.add_argument("--b", type=float, default=None, help="outer/wall radius, meters")
    sub.add_argument("--l", type=float, default=None, help="cavity height, meters")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coaxmode",
        description="TM mode spectra and fields of cylindrical and annular cavities")
    parser.add_argument("--version", action="version", version=f"coaxmode {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    zeros = commands.add_parser("zeros", help="radial eigenvalue tables")
    zeros.add_argument("--kind", choices=("bessel", "cross"), default=None)
    zeros.add_argument("--m", type=int, default=None, help="angular order")
    zeros.add_argument("--count", type=int, default=None, help="how many zeros")
    zeros.add_argument("--a", type=float, default=None, help="inner radius, meters (cross)")
    zeros.add_argument("--b", type=float, default=None, help="outer radius, meters (cross)")
    _add_common(zeros)
    zeros.set_defaults(run=_cmd_zeros)

    modes = commands.add_parser("modes", help="TM spectrum below a cutoff")
    _add_geometry(modes)
    modes.add_argument("--omega-max", dest="omega_max", type=float, default=None,
                       help="angular frequency cutoff, rad/s")
    modes.add_argument("--freq-max-hz", dest="freq_max_hz", type=float, default=None,
                       help="frequency cutoff in Hz (converted via omega = 2 pi f)")
    modes.add_argument("--histogram", type=int, default=None, metavar="BINS",
                       help="emit cumulative mode counts at BINS edges instead")
    _add_common(modes)
    modes.set_defaults(run=_cmd_modes)

    field = commands.add_parser("field", help="sample one mode on a grid")
    _add_geometry(field)
    field.add_argument("--mode", default=None, metavar="M,N,P")
    field.add_argument("--sign", choices=("+", "-"), default=None,
                       help="azimuthal orientation e^{+imphi} or e^{-imphi}")
    field.add_argument("--amplitude", default=None, metavar="RE[,IM]")
    field.add_argument("--rho", default=None, metavar="LO:HI:COUNT")
    field.add_argument("--phi", default=None, metavar="LO:HI:COUNT")
    field.add_argument("--z", default=None, metavar="LO:HI:COUNT")
    _add_common(field)
    field.set_defaults(run=_cmd_field)

    verify = commands.add_parser("verify", help="run the invariant suites")
    verify.add_argument("module_pos", nargs="?", default=None,
                        help=f"optional module filter: {', '.join(MODULES)}")
    verify.add_argument("--module", default=None, help="module filter (same as positional)")
    verify.add_argument("--inject-zero-tolerance", action="store_true",
                        help=argparse.SUPPRESS)
    _add_common(verify)
    verify.set_defaults(run=_cmd_verify)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        if args.format is None:
            # data commands default to CSV; the verification report to JSON
            args.format = "json" if args.command == "verify" else "csv"
        return args.run(args)
    except _UsageError as exc:
        print(f"coaxmode {args.command}: {exc}", file=sys.stderr)
        return 2
    except (GeometryError, DomainError, OrderError) as exc:
        print(f"coaxmode {args.command}: {exc}", file=sys.stderr)
        return 2
    except CoaxmodeError as exc:
        print(f"coaxmode {args.command}: numerical failure: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"coaxmode {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
