"""Command-line entry point.

Every command writes a single JSON report (inputs echoed, outputs with
their error estimates, wall time) to ``--out`` or stdout.  Exit status:

* 0 — all residuals within their declared tolerances
* 1 — tolerance failure
* 2 — configuration error (bad flags, unreadable files, bad expressions)
* 3 — numerical-certification failure (tail or window could not certify)

A plain-text config file of ``key = value`` lines may be supplied with
``--config``; command-line flags override file entries.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

from .errors import (ConfigError, DisagreementError, DomainError,
                     TableParseError, ToleranceError, WeiltraceError)
from .exprs import format_function, parse_function
from .explicit import verify_explicit_formula
from .grids import QuadratureSpec
from .operators import (TruncationSpec, character, poisson_check,
                        twisted_poisson_check, zspectral_check)
from .special import PoleError, l_chi, xi, zeta
from .traces import LogGridSpec, build_phi, phi_log_identity, \
    toeplitz_trace_check
from .transforms import mellin, mellin_parity
from .families import ParityFunction
from .zeros import find_zeros, load_zeros, save_zeros

__all__ = ["main", "run", "RunConfig"]

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_CONFIG = 2
EXIT_CERTIFICATION = 3

CACHE_ENV = "WEILTRACE_CACHE"


class RunConfig(dict):
    """Merged flag + config-file values for one command invocation."""

    @property
    def command(self):
        return self["command"]


def _jsonable(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _parse_complex(text: str) -> complex:
    try:
        parts = text.split(",")
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ConfigError(f"cannot parse {text!r} as 're,im'")


def _parse_trunc(text: str | None, primes=None, e_max=None) -> TruncationSpec:
    kwargs = {}
    if text:
        for item in text.split(","):
            key, _, val = item.partition("=")
            key = key.strip()
            if key not in ("n_max", "p_max", "e_max", "tail_tol"):
                raise ConfigError(f"unknown truncation field {key!r}")
            kwargs[key] = float(val) if key == "tail_tol" else int(val)
    if primes is not None:
        kwargs["p_max"] = int(primes)
    if e_max is not None:
        kwargs["e_max"] = int(e_max)
    return TruncationSpec(**kwargs)


def _parse_function(text: str):
    if text is None:
        raise ConfigError("a function expression is required (--f)")
    return parse_function(text)


def _resolve_zeros(source: str, out_path: str | None):
    """Zero table from a file path or 'auto:T' with file caching."""
    if source is None:
        raise ConfigError("a zero source is required (--zeros)")
    if source.startswith("auto:"):
        try:
            height = float(source[len("auto:"):])
        except ValueError:
            raise ConfigError(f"bad zero source {source!r}") from None
        cache_dir = os.environ.get(CACHE_ENV) or (
            os.path.dirname(os.path.abspath(out_path)) if out_path
            else os.getcwd())
        cache = os.path.join(cache_dir, f"zeros_auto_{height:g}.txt")
        if os.path.exists(cache):
            table = load_zeros(cache)
            if table.height_bound >= height:
                return table, cache
        table = find_zeros(height)
        os.makedirs(cache_dir, exist_ok=True)
        save_zeros(table, cache)
        return table, cache
    if not os.path.exists(source):
        raise ConfigError(f"zero file not found: {source}")
    return load_zeros(source), source


def _values_command(cfg: RunConfig) -> tuple[dict, bool]:
    cmd = cfg.command
    s = _parse_complex(cfg["s"])
    if cmd == "mellin":
        f = _parse_function(cfg["f"])
        mv = (mellin_parity if isinstance(f, ParityFunction) else mellin)(
            f, s)
        return {"value": mv.value, "est_error": mv.est_error}, True
    if cmd == "zeta":
        return {"value": zeta(s)}, True
    if cmd == "xi":
        v = xi(s)
        return {"xi": v.xi, "zeta": v.zeta,
                "gamma_factor": v.gamma_factor}, True
    if cmd == "lchi":
        chi = character(int(cfg["modulus"]), int(cfg["index"]))
        return {"value": l_chi(chi, s)}, True
    raise ConfigError(f"unknown command {cmd!r}")


def _check_command(cfg: RunConfig) -> tuple[dict, bool]:
    cmd = cfg.command
    tr = _parse_trunc(cfg.get("trunc"))
    if cmd == "check-poisson":
        f = _parse_function(cfg["f"])
        xs = [float(t) for t in (cfg.get("x") or "0.25,0.5,1,2,4").split(",")]
        tol = float(cfg.get("tol") or 1e-10)
        residuals = {str(x): poisson_check(f, x, tr) for x in xs}
        worst = max(residuals.values())
        return {"residuals": residuals, "max_residual": worst,
                "tolerance": tol}, worst < tol
    if cmd == "check-zspectral":
        f = _parse_function(cfg["f"])
        s = _parse_complex(cfg.get("s") or "2,0")
        tol = float(cfg.get("tol") or 1e-8)
        res = zspectral_check(f, s, tr)
        return {"residual": res, "tolerance": tol}, res < tol
    if cmd == "check-twisted-poisson":
        f = _parse_function(cfg["f"])
        chi = character(int(cfg["modulus"]), int(cfg["index"]))
        xs = [float(t) for t in (cfg.get("x") or "0.5,1,2").split(",")]
        tol = float(cfg.get("tol") or 1e-7)
        residuals, kappas = {}, {}
        for x in xs:
            res, kappa = twisted_poisson_check(chi, f, x, tr)
            residuals[str(x)], kappas[str(x)] = res, kappa
        worst = max(residuals.values())
        kappa_defect = max(abs(abs(k) - 1.0) for k in kappas.values())
        ok = worst < tol and kappa_defect < 1e-12
        return {"residuals": residuals, "kappa": kappas,
                "max_residual": worst, "kappa_modulus_defect": kappa_defect,
                "tolerance": tol}, ok
    if cmd == "check-trace-lemma":
        f0 = _parse_function(cfg["f0"])
        f1 = _parse_function(cfg["f1"])
        phi = build_phi(float(cfg.get("phi_width") or 1.0))
        grid = LogGridSpec(n_points=int(cfg.get("n") or 2048),
                           half_width=float(cfg.get("window") or 8.0))
        tol = float(cfg.get("tol") or 1e-6)
        res = toeplitz_trace_check(f0, f1, phi, grid)
        return {"residual": res, "tolerance": tol}, res < tol
    if cmd == "check-phi-identity":
        phi = build_phi(float(cfg.get("phi_width") or 1.0))
        xs = [float(t) for t in (cfg.get("x") or "0.5,1,2.718281828459045"
                                 ).split(",")]
        tol = float(cfg.get("tol") or 1e-10)
        residuals = {str(x): phi_log_identity(phi, x) for x in xs}
        worst = max(residuals.values())
        return {"residuals": residuals, "max_residual": worst,
                "tolerance": tol}, worst < tol
    raise ConfigError(f"unknown command {cmd!r}")


def _zeros_command(cfg: RunConfig) -> tuple[dict, bool]:
    height = float(cfg.get("max_height") or 0.0)
    if not height > 0:
        raise ConfigError("zeros requires --max-height T > 0")
    table = find_zeros(height)
    out = cfg.get("table_out")
    if out:
        save_zeros(table, out)
    return {"count": len(table.ordinates),
            "ordinates": list(table.ordinates),
            "precision": table.precision,
            "table_path": out}, True


def _verify_command(cfg: RunConfig) -> tuple[dict, bool]:
    f = _parse_function(cfg["f"])
    table, table_path = _resolve_zeros(cfg.get("zeros"), cfg.get("out"))
    tr = _parse_trunc(cfg.get("trunc"), primes=cfg.get("primes"),
                      e_max=cfg.get("e_max"))
    tol = float(cfg.get("tol") or 1e-4)
    report = verify_explicit_formula(f, table, tr, budget_check=False)
    out = report.as_dict()
    out["zero_table"] = table_path
    out["tolerance"] = tol
    ok = report.residual < tol and report.residual < report.total_budget
    return out, ok


_HANDLERS = {
    "mellin": _values_command, "zeta": _values_command,
    "xi": _values_command, "lchi": _values_command,
    "zeros": _zeros_command,
    "check-poisson": _check_command, "check-zspectral": _check_command,
    "check-twisted-poisson": _check_command,
    "check-trace-lemma": _check_command,
    "check-phi-identity": _check_command,
    "verify-explicit-formula": _verify_command,
}


def _read_config_file(path: str) -> dict:
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    values = {}
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, eq, val = line.partition("=")
            if not eq:
                raise ConfigError(
                    f"{path}:{line_no}: expected 'key = value'")
            values[key.strip().replace("-", "_")] = val.strip()
    return values


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="plain-text key=value config file")
    common.add_argument("--out", help="report output path (default stdout)")
    common.add_argument("-v", "--verbose", action="count", default=0)
    parser = argparse.ArgumentParser(
        prog="weiltrace", parents=[common],
        description="Explicit-formula and zeta-operator verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, *flags):
        p = sub.add_parser(name, parents=[common])
        for flag, kw in flags:
            p.add_argument(flag, **kw)
        return p

    s_flag = ("--s", {"help": "point as 're,im'"})
    f_flag = ("--f", {"help": "function expression"})
    trunc_flag = ("--trunc", {"help": "n_max=..,p_max=..,e_max=..,"
                              "tail_tol=.."})
    add("mellin", f_flag, s_flag)
    add("zeta", s_flag)
    add("xi", s_flag)
    add("lchi", ("--modulus", {"type": int}), ("--index", {"type": int}),
        s_flag)
    add("zeros", ("--max-height", {"type": float, "dest": "max_height"}),
        ("--table-out", {"dest": "table_out",
                         "help": "zero table output path"}))
    add("check-poisson", f_flag, ("--x", {"help": "comma list of x"}),
        trunc_flag, ("--tol", {}))
    add("check-zspectral", f_flag, s_flag, trunc_flag, ("--tol", {}))
    add("check-twisted-poisson", f_flag, ("--modulus", {"type": int}),
        ("--index", {"type": int}), ("--x", {}), trunc_flag, ("--tol", {}))
    add("check-trace-lemma", ("--f0", {}), ("--f1", {}),
        ("--n", {"type": int}), ("--window", {"type": float}),
        ("--phi-width", {"type": float, "dest": "phi_width"}),
        ("--tol", {}))
    add("check-phi-identity", ("--x", {}),
        ("--phi-width", {"type": float, "dest": "phi_width"}), ("--tol", {}))
    add("verify-explicit-formula", f_flag,
        ("--zeros", {"help": "zero table path or auto:T"}),
        ("--primes", {"type": int}), ("--e-max", {"type": int,
                                                  "dest": "e_max"}),
        trunc_flag, ("--tol", {}))
    return parser


def _merge_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        cfg.update(_read_config_file(args.config))
    for key, val in vars(args).items():
        if key == "config":
            continue
        if val is not None or key not in cfg:
            cfg[key] = val
    return cfg


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute one command; returns (exit_status, report_dict)."""
    start = time.perf_counter()
    inputs = {k: v for k, v in cfg.items()
              if k not in ("out", "verbose") and v is not None}
    try:
        outputs, ok = _HANDLERS[cfg.command](cfg)
        status = EXIT_OK if ok else EXIT_TOLERANCE
    except (ConfigError, TableParseError, PoleError, DomainError) as exc:
        outputs, ok = {"error": str(exc),
                       "error_type": type(exc).__name__}, False
        status = EXIT_CONFIG
    except (ToleranceError, DisagreementError) as exc:
        outputs, ok = {"error": str(exc),
                       "error_type": type(exc).__name__}, False
        status = EXIT_CERTIFICATION
    report = {
        "command": cfg.command,
        "inputs": _jsonable(inputs),
        "outputs": _jsonable(outputs),
        "passed": ok,
        "wall_time_s": time.perf_counter() - start,
    }
    return status, report


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else 0
    try:
        cfg = _merge_config(args)
        status, report = run(cfg)
    except WeiltraceError as exc:
        report = {"error": str(exc), "error_type": type(exc).__name__}
        status = EXIT_CONFIG
    text = json.dumps(report, indent=2)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
        if getattr(args, "verbose", 0):
            print(text)
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
