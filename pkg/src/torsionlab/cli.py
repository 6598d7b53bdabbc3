"""Command-line interface: ``torsionlab {compute|verify|spectrum}``.

Exit codes: 0 success, 1 failed verification, 2 invalid arguments,
3 internal consistency or zero-finder failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import re
import sys
from dataclasses import dataclass, field

from . import spectrum, torsion, verify
from .cache import ZeroCache
from .chain_torsion import rs_torsion_closed
from .errors import ConsistencyError, DomainError, UnsupportedGeometryError, ZeroFinderError
from .geometry import ConeGeometry, disc
from .zeta_engine import F_ZERO_TOLERANCE

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

DEFAULT_TOLERANCES = {"fzero": F_ZERO_TOLERANCE, "pipeline": 1e-7}

_PI_LITERAL = re.compile(r"^\s*(?P<num>\d+(?:\.\d*)?)?\s*\*?\s*pi\s*(?:/\s*(?P<den>\d+(?:\.\d*)?))?\s*$")


class UsageError(Exception):
    pass


def parse_angle(text: str) -> float:
    """Angle in radians from ``30deg``, ``0.5236rad``, ``pi/6``, ``2pi/5`` or a bare number (radians)."""
    t = text.strip().lower()
    m = _PI_LITERAL.match(t)
    try:
        if m:
            num = float(m.group("num") or 1.0)
            den = float(m.group("den") or 1.0)
            return num * math.pi / den
        if t.endswith("deg"):
            return math.radians(float(t[:-3]))
        if t.endswith("rad"):
            return float(t[:-3])
        return float(t)
    except ValueError:
        raise UsageError(f"cannot parse angle {text!r}") from None


def parse_tolerances(items) -> dict:
    tols = dict(DEFAULT_TOLERANCES)
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or name not in tols:
            raise UsageError(f"--tol expects NAME=VALUE with NAME in {sorted(tols)}, got {item!r}")
        try:
            v = float(value)
        except ValueError:
            raise UsageError(f"tolerance {name} is not a number: {value!r}") from None
        if not v > 0:
            raise UsageError(f"tolerance {name} must be positive")
        tols[name] = v
    return tols


@dataclass
class RunConfig:
    command: str
    target: str | None = None
    dim: int | None = None
    section: str | None = None
    alpha: float = math.pi / 2.0
    length: float = 1.0
    rank: int = 1
    bc: str = "abs"
    method: str = "closed"
    degree: int = 0
    cutoff: float | None = None
    fmt: str = "json"
    cache: str | None = None
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    log10: bool = False
    suite: str = "all"

    def geometry(self) -> ConeGeometry:
        if self.target == "disc" or (self.section is None and self.dim is not None):
            if self.dim is None:
                raise UsageError("disc needs --dim")
            return disc(self.dim, self.length, self.rank)
        if self.section is None:
            raise UsageError("cone needs --section {circle,sphere}")
        n = 1 if self.section == "circle" else 2
        if self.dim is not None and self.dim != n + 1:
            raise UsageError(f"--dim {self.dim} contradicts --section {self.section}")
        return ConeGeometry(n, self.alpha, self.length, self.rank)


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def _num(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    x = float(x)
    if not math.isfinite(x):
        return None
    return float(f"{x:.15g}") + 0.0  # folds -0.0 into 0.0


def _clean(obj, scale: float = 1.0):
    """Round floats to 15 significant digits, multiplying them by ``scale``."""
    if isinstance(obj, dict):
        return {k: _clean(v, scale) for k, v in obj.items()}
    if isinstance(obj, float):
        return _num(obj * scale)
    return obj


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    else:
        yield prefix, obj


def _fmt_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.15g}"
    return str(v)


def emit_mapping(data: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in _flatten(data):
            w.writerow([k, _fmt_value(v)])
    else:
        rows = list(_flatten(data))
        width = max(len(k) for k, _ in rows)
        for k, v in rows:
            out.write(f"{k.ljust(width)}  {_fmt_value(v)}\n")


def emit_table(columns: list, rows: list, fmt: str, out, meta: dict) -> None:
    if fmt == "json":
        out.write(json.dumps({**meta, "rows": [dict(zip(columns, r)) for r in rows]}, indent=2) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt_value(v) for v in r])
    else:
        text = [[_fmt_value(v) for v in r] for r in rows]
        widths = [max([len(c)] + [len(r[i]) for r in text]) for i, c in enumerate(columns)]
        out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
        for r in text:
            out.write("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() + "\n")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_compute(cfg: RunConfig, out) -> int:
    geom = cfg.geometry()
    tols = cfg.tolerances
    methods = ("closed", "pipeline") if cfg.method == "both" else (cfg.method,)
    reports = {m: torsion.analytic_torsion(geom, cfg.bc, m, tols["fzero"]) for m in methods}
    primary = reports[methods[0]]
    residuals = {}
    if len(reports) == 2:
        gap = reports["pipeline"].log_value - reports["closed"].log_value
        residuals["pipeline_minus_closed"] = gap
        if abs(gap) > tols["pipeline"]:
            raise ConsistencyError(f"pipeline and closed form differ by {gap:.3e} (tolerance {tols['pipeline']:.1e})")
    log_tau = rs_torsion_closed(geom, cfg.bc)
    if geom.dim >= 2:
        try:
            rep = torsion.consistency_report(geom, cfg.bc, tols["fzero"])
        except UnsupportedGeometryError:
            rep = None
        if rep is not None:
            residuals["anomaly_bm"] = rep.comparison.bm_value
            residuals["anomaly_df"] = rep.comparison.df_value
            residuals["residual_bm"] = rep.residual_bm
            residuals["residual_df"] = rep.residual_df
    breakdown = (dict(primary.breakdown) if len(reports) == 1
                 else {name: dict(r.breakdown) for name, r in zip(("closed_form", "pipeline"), reports.values())})
    data = {
        "geometry": {**geom.as_dict(), "kind": "disc" if geom.is_disc else "cone"},
        "bc": cfg.bc,
        "method": cfg.method,
        "log_torsion": primary.log_value,
        "log_rs_torsion": log_tau,
        "breakdown": breakdown,
        "residuals": residuals,
        "units": "log10" if cfg.log10 else "natural_log",
    }
    scale = 1.0 / math.log(10.0) if cfg.log10 else 1.0
    for key in ("log_torsion", "log_rs_torsion", "breakdown", "residuals"):
        data[key] = _clean(data[key], scale)
    data["geometry"] = _clean(data["geometry"])
    emit_mapping(data, cfg.fmt, out)
    return EXIT_OK


def cmd_spectrum(cfg: RunConfig, out) -> int:
    if cfg.cutoff is None or not cfg.cutoff > 0:
        raise UsageError("spectrum needs --cutoff > 0")
    geom = cfg.geometry()
    if geom.n not in (1, 2):
        raise UsageError("spectra are available for the cones over S^1 and S^2 (disc dimensions 2 and 3)")
    section = "circle" if geom.n == 1 else "sphere"
    desc = spectrum.spectrum(section, cfg.degree, cfg.bc, geom.nu, geom.l)
    cache = ZeroCache.from_env(cfg.cache)
    try:
        rows = spectrum.enumerate_eigenvalues(desc, cfg.cutoff, cache.zeros_upto)
    finally:
        cache.save()
    columns = ["eigenvalue", "multiplicity", "band", "n", "k", "order"]
    table = [[_num(e.value), e.multiplicity, e.band, e.n, e.k, _num(e.order)] for e in rows]
    meta = {"section": section, "degree": cfg.degree, "bc": cfg.bc, "nu": _num(geom.nu),
            "length": _num(geom.l), "cutoff": _num(cfg.cutoff)}
    emit_table(columns, table, cfg.fmt, out, meta)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out) -> int:
    results = verify.run_suite(cfg.suite)
    columns = ["check", "status", "residual", "tolerance", "detail"]
    rows = [[r.check_id, "PASS" if r.passed else "FAIL", _num(r.residual), _num(r.tolerance), r.detail or r.description]
            for r in results]
    failed = sum(not r.passed for r in results)
    meta = {"suite": cfg.suite, "passed": len(results) - failed, "failed": failed}
    emit_table(columns, rows, cfg.fmt, out, meta)
    if cfg.fmt == "text":
        out.write(f"{len(results) - failed}/{len(results)} checks passed\n")
    return EXIT_OK if failed == 0 else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_geometry(p):
    p.add_argument("--dim", type=int, help="dimension m of the disc (or cone dimension)")
    p.add_argument("--section", choices=("circle", "sphere"), help="cross-section of the cone")
    p.add_argument("--alpha", default="pi/2", help="cone angle: 30deg, 0.52rad, pi/6 (default pi/2)")
    p.add_argument("--length", type=float, default=1.0, help="cone length l (default 1)")
    p.add_argument("--rank", type=int, default=1, help="dimension of the orthogonal representation")
    p.add_argument("--bc", choices=("abs", "rel"), default="abs", help="boundary condition")
    p.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="json")
    p.add_argument("--cache", help="zero cache file (default $TORSIONLAB_CACHE)")
    p.add_argument("--tol", action="append", metavar="NAME=VALUE",
                   help=f"override a tolerance; names: {', '.join(sorted(DEFAULT_TOLERANCES))}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="torsionlab", description="Analytic and Reidemeister torsion of discs and cones.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pc = sub.add_parser("compute", help="log-torsion of a disc or cone")
    pc.add_argument("target", choices=("disc", "cone"))
    _add_geometry(pc)
    pc.add_argument("--method", choices=("closed", "pipeline", "both"), default="closed")
    pc.add_argument("--log10", action="store_true", help="report base-10 logarithms")

    ps = sub.add_parser("spectrum", help="Hodge-Laplacian eigenvalues up to a cutoff")
    _add_geometry(ps)
    ps.add_argument("--degree", type=int, default=0, help="form degree q")
    ps.add_argument("--cutoff", type=float, required=True, help="largest eigenvalue to list")

    pv = sub.add_parser("verify", help="run self-check suites")
    pv.add_argument("suite", nargs="?", default="all", choices=verify.SUITES + ("all",))
    pv.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="text")
    return parser


def config_from_args(ns) -> RunConfig:
    cfg = RunConfig(command=ns.command)
    if ns.command == "verify":
        cfg.suite, cfg.fmt = ns.suite, ns.fmt
        return cfg
    cfg.dim, cfg.section = ns.dim, ns.section
    cfg.alpha = parse_angle(ns.alpha)
    cfg.length, cfg.rank, cfg.bc, cfg.fmt, cfg.cache = ns.length, ns.rank, ns.bc, ns.fmt, ns.cache
    cfg.tolerances = parse_tolerances(ns.tol)
    if ns.command == "compute":
        cfg.target, cfg.method, cfg.log10 = ns.target, ns.method, ns.log10
        if cfg.target == "cone" and cfg.section is None:
            raise UsageError("compute cone needs --section")
    else:
        cfg.degree, cfg.cutoff = ns.degree, ns.cutoff
        if cfg.section is None and cfg.dim is None:
            raise UsageError("spectrum needs --section or --dim")
    cfg.geometry()  # validate before dispatch
    return cfg


_COMMANDS = {"compute": cmd_compute, "spectrum": cmd_spectrum, "verify": cmd_verify}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    err = sys.stderr
    try:
        ns = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING)
        cfg = config_from_args(ns)
        buf = io.StringIO()
        code = _COMMANDS[cfg.command](cfg, buf)
        out.write(buf.getvalue())
        return code
    except (UsageError, DomainError, UnsupportedGeometryError) as exc:
        err.write(f"torsionlab: error: {exc}\n")
        return EXIT_USAGE
    except (ConsistencyError, ZeroFinderError) as exc:
        err.write(f"torsionlab: internal consistency failure: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
