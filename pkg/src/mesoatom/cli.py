"""Command-line front end.

Every flag has a JSON config key of the same name (dashes become
underscores).  Values are merged as preset < config file < flags.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .constants import PRESETS
from .errors import ConfigError, DomainError, NoSuchLevel, OracleError
from .oracle import ShootingConfig, verify_spectrum
from .params import DimensionlessParams, PhysicalParams, params_from_config
from .quantum_numbers import spectrum_caps
from .specialfn import HarmonicSection, harmonic_eval
from .spectrum import build_spectrum, find_level
from .wavefunction import radial_profile, sample, sobolev_norm

EXIT_OK, EXIT_CONFIG, EXIT_NO_LEVEL, EXIT_ORACLE = 0, 2, 3, 4

SPECTRUM_COLUMNS = ("two_q", "l2", "n", "kappa", "N", "eps", "lambda", "energy_erg", "degeneracy")
WAVEFUNCTION_COLUMNS = ("chi", "x", "Q", "dQ_dchi")
HARMONICS_COLUMNS = ("chart", "theta", "phi", "re", "im")

PARAM_KEYS = ("mu", "z_alpha", "two_q", "a_cm", "m0_g", "Z", "gm")

CSV_FIRST = ("wavefunction", "harmonics")

DEFAULTS: dict[str, Any] = {
    "max_levels": 100_000,
    "tol": 1e-10,
    "bracket_pad": 1e-10,
    "samples": 2001,
    "chi_min": 1e-3,
    "chi_max": 15.0,
    "n_theta": 32,
    "n_phi": 64,
    "m2": None,
}


# --- serialization -----------------------------------------------------------


def fmt_float(x: float) -> str:
    """17 significant digits, enough to round-trip any double."""
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x}")
    return format(x, ".17g")


def _scalar(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt_float(float(v))
    if isinstance(v, str):
        return json.dumps(v)
    raise TypeError(f"cannot serialize {type(v).__name__}")


def to_json(obj, indent: int = 0) -> str:
    """JSON with fixed key order and 17-digit floats."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        body = ",\n".join(f"{inner}{json.dumps(str(k))}: {to_json(v, indent + 1)}" for k, v in obj.items())
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(_scalar(v) for v in obj) + "]"
        body = ",\n".join(inner + to_json(v, indent + 1) for v in obj)
        return "[\n" + body + "\n" + pad + "]"
    return _scalar(obj)


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        if any(ch in v for ch in ',"\n\r'):
            return '"' + v.replace('"', '""') + '"'
        return v
    return _scalar(v)


def to_csv(columns, rows) -> str:
    out = io.StringIO()
    out.write(",".join(columns) + "\n")
    for r in rows:
        out.write(",".join(_csv_cell(r[c]) for c in columns) + "\n")
    return out.getvalue()


# --- configuration -----------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: DimensionlessParams | None
    physical: PhysicalParams | None
    output_format: str = "json"
    output_path: Path | None = None
    options: dict[str, Any] = field(default_factory=dict)
    provenance: str | None = None

    def opt(self, key: str):
        return self.options.get(key, DEFAULTS.get(key))


def _load_config_file(path: str) -> dict[str, Any]:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc.msg} at line {exc.lineno}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in data.items()}


def resolve(command: str, flags: dict[str, Any]) -> RunConfig:
    """Merge preset, config file and flags into a validated RunConfig."""
    flags = {k: v for k, v in flags.items() if v is not None}
    merged: dict[str, Any] = {}
    if "config" in flags:
        file_cfg = _load_config_file(flags.pop("config"))
        preset = flags.get("preset", file_cfg.pop("preset", None))
        merged.update(file_cfg)
    else:
        preset = flags.get("preset")
    flags.pop("preset", None)
    provenance = None
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}; known: {', '.join(PRESETS)}")
        merged = {**PRESETS[preset]["values"], **merged}
        provenance = PRESETS[preset]["provenance"]
    merged.update(flags)
    # a dimensionless flag on the command line overrides physical keys from
    # a file or preset rather than clashing with them
    if any(flags.get(k) is not None for k in ("mu", "z_alpha")):
        for k in ("a_cm", "m0_g", "Z", "gm"):
            if k not in flags:
                merged.pop(k, None)
        provenance = None
    elif any(flags.get(k) is not None for k in ("a_cm", "m0_g", "Z")):
        for k in ("mu", "z_alpha"):
            if k not in flags:
                merged.pop(k, None)

    param_cfg = {k: merged.get(k) for k in PARAM_KEYS}
    if command == "harmonics" and all(param_cfg[k] is None for k in ("mu", "z_alpha", "a_cm", "m0_g", "Z")):
        # the angular problem only needs q
        params, physical = None, None
        two_q = param_cfg["two_q"] or 0
        if int(two_q) != two_q:
            raise ConfigError(f"two_q must be an integer, got {two_q}")
        merged["two_q_only"] = int(two_q)
    else:
        params, physical = params_from_config(param_cfg)
    fmt = merged.pop("format", "csv" if command in CSV_FIRST else "json")
    if fmt not in ("json", "csv"):
        raise ConfigError(f"format must be json or csv, got {fmt!r}")
    out = merged.pop("out", None)
    options = {k: v for k, v in merged.items() if k not in PARAM_KEYS}
    for key in ("max_levels", "samples", "n_theta", "n_phi"):
        if key in options and not (isinstance(options[key], int) and options[key] >= 1):
            raise ConfigError(f"{key} must be a positive integer, got {options[key]!r}")
    return RunConfig(command, params, physical, fmt, None if out is None else Path(out), options, provenance)


def _header(cfg: RunConfig) -> dict[str, Any]:
    h: dict[str, Any] = {"command": cfg.command}
    if cfg.provenance:
        h["provenance"] = cfg.provenance
    p = cfg.params
    if p is None:
        h["params"] = {"two_q": cfg.opt("two_q_only")}
        return h
    h["params"] = {"mu": p.mu, "z_alpha": p.z_alpha, "two_q": p.two_q}
    if cfg.physical is not None:
        ph = cfg.physical
        h["physical"] = {"a_cm": ph.a, "m0_g": ph.m0, "Z": ph.Z, "gm": ph.gm}
    return h


# --- commands ----------------------------------------------------------------


@dataclass
class Output:
    text: str
    sidecar: str | None = None


def spectrum_records(cfg: RunConfig):
    spec = build_spectrum(cfg.params, cfg.physical, max_count=cfg.opt("max_levels"))
    rows = [
        {
            "two_q": lv.two_q,
            "l2": lv.two_l,
            "n": lv.n,
            "kappa": lv.kappa,
            "N": lv.principal,
            "eps": lv.eps,
            "lambda": lv.lam,
            "energy_erg": lv.energy_erg,
            "degeneracy": lv.degeneracy,
        }
        for lv in spec.levels
    ]
    return spec, rows


def run_spectrum(cfg: RunConfig) -> Output:
    spec, rows = spectrum_records(cfg)
    if cfg.output_format == "csv":
        return Output(to_csv(SPECTRUM_COLUMNS, rows))
    doc = _header(cfg)
    doc.update(
        spectrum_empty=not rows,
        truncated=spec.truncated,
        N0=spec.bounds.n0_cap,
        q0_cap=spec.bounds.q0_cap,
        levels=rows,
    )
    return Output(to_json(doc) + "\n")


def run_caps(cfg: RunConfig) -> Output:
    b = spectrum_caps(cfg.params.mu, cfg.params.z_alpha)
    rec = {"N0": b.n0_cap, "q0_cap": b.q0_cap, "empty": b.empty_for(cfg.params.two_q)}
    if cfg.output_format == "csv":
        return Output(to_csv(tuple(rec), [rec]))
    doc = _header(cfg)
    doc.update(rec)
    return Output(to_json(doc) + "\n")


def _selected_level(cfg: RunConfig):
    n, two_l = cfg.opt("n"), cfg.opt("l2")
    if n is None or two_l is None:
        raise ConfigError("wavefunction needs --n and --l2")
    return find_level(cfg.params, int(n), int(two_l), cfg.physical)


def run_wavefunction(cfg: RunConfig) -> Output:
    level = _selected_level(cfg)
    prof = radial_profile(level, cfg.params)
    try:
        chi, x, q, dq = sample(prof, float(cfg.opt("chi_min")), float(cfg.opt("chi_max")), cfg.opt("samples"))
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    meta = {
        "n": level.n,
        "l2": level.two_l,
        "two_q": level.two_q,
        "C": prof.norm_const,
        "kappa": level.kappa,
        "lambda": level.lam,
        "eps": level.eps,
        "sobolev_norm": sobolev_norm(prof),
        "charge": 1.0,
    }
    rows = [dict(zip(WAVEFUNCTION_COLUMNS, r)) for r in zip(chi.tolist(), x.tolist(), q.tolist(), dq.tolist())]
    if cfg.output_format == "csv":
        doc = _header(cfg)
        doc.update(meta)
        return Output(to_csv(WAVEFUNCTION_COLUMNS, rows), to_json(doc) + "\n")
    doc = _header(cfg)
    doc.update(meta)
    doc["samples"] = rows
    return Output(to_json(doc) + "\n")


def harmonic_rows(two_q: int, two_l: int, two_m: int, n_theta: int, n_phi: int):
    # cell midpoints in theta stay off both poles, so both charts are valid
    theta = (np.arange(n_theta) + 0.5) * math.pi / n_theta
    phi = 2 * math.pi * np.arange(n_phi) / n_phi
    T, P = np.meshgrid(theta, phi, indexing="ij")
    rows = []
    for chart in (1, -1):
        y = harmonic_eval(HarmonicSection(two_q, two_l, two_m, chart), T, P)
        for t, p, v in zip(T.ravel().tolist(), P.ravel().tolist(), y.ravel().tolist()):
            rows.append({"chart": chart, "theta": t, "phi": p, "re": v.real, "im": v.imag})
    return rows


def run_harmonics(cfg: RunConfig) -> Output:
    two_q = cfg.opt("two_q_only") if cfg.params is None else cfg.params.two_q
    two_l = cfg.opt("l2")
    two_l = abs(two_q) if two_l is None else int(two_l)
    two_m = cfg.opt("m2")
    two_m = -two_l if two_m is None else int(two_m)
    try:
        rows = harmonic_rows(two_q, two_l, two_m, cfg.opt("n_theta"), cfg.opt("n_phi"))
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    if cfg.output_format == "csv":
        return Output(to_csv(HARMONICS_COLUMNS, rows))
    doc = _header(cfg)
    doc.update(l2=two_l, m2=two_m, grid=rows)
    return Output(to_json(doc) + "\n")


MAX_VERIFY_LEVELS = 10_000


def run_verify(cfg: RunConfig) -> Output:
    spec = build_spectrum(cfg.params, max_count=MAX_VERIFY_LEVELS)
    if spec.truncated:
        raise ConfigError(f"spectrum has more than {MAX_VERIFY_LEVELS} levels; too large to verify by shooting")
    shoot_cfg = ShootingConfig(tol=float(cfg.opt("tol")), bracket_pad=float(cfg.opt("bracket_pad")))
    rep = verify_spectrum(cfg.params, shoot_cfg)
    rec = {
        "levels_checked": rep.levels_checked,
        "max_rel_err": rep.max_rel_err,
        "completeness_ok": rep.completeness_ok,
        "runtime_s": rep.runtime_s,
    }
    if cfg.output_format == "csv":
        return Output(to_csv(tuple(rec), [rec]))
    doc = _header(cfg)
    doc.update(rec)
    return Output(to_json(doc) + "\n")


COMMANDS = {
    "spectrum": run_spectrum,
    "wavefunction": run_wavefunction,
    "harmonics": run_harmonics,
    "verify": run_verify,
    "caps": run_caps,
}


# --- argument parsing --------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # one-line diagnostic, config-error exit code
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("parameters")
    g.add_argument("--mu", type=float, help="m0 a c / hbar")
    g.add_argument("--z-alpha", type=float, help="Z e^2 / hbar c, below 1/2")
    g.add_argument("--two-q", type=int, help="twice the monopole number q")
    g.add_argument("--a-cm", type=float, help="curvature radius in cm")
    g.add_argument("--m0-g", type=float, help="meson mass in g")
    g.add_argument("--Z", type=int, dest="Z", help="nuclear charge number")
    g.add_argument("--gm", type=float, help="magnetic charge in statC")
    g.add_argument("--preset", choices=sorted(PRESETS))
    o = common.add_argument_group("output")
    o.add_argument("--max-levels", type=int)
    o.add_argument("--format", choices=("json", "csv"))
    o.add_argument("--out", help="output file (default stdout)")
    o.add_argument("--config", help="JSON file with the same keys as the flags")

    parser = _Parser(prog="mesoatom", description="Dyon-bound meson levels on hyperbolic space.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("spectrum", parents=[common], help="closed-form level table")
    sub.add_parser("caps", parents=[common], help="N0 and |q|0")
    w = sub.add_parser("wavefunction", parents=[common], help="sampled radial function of one level")
    w.add_argument("--n", type=int)
    w.add_argument("--l2", type=int, help="2l")
    w.add_argument("--samples", type=int)
    w.add_argument("--chi-min", type=float)
    w.add_argument("--chi-max", type=float)
    h = sub.add_parser("harmonics", parents=[common], help="monopole harmonic on a (theta, phi) grid")
    h.add_argument("--l2", type=int, help="2l (default 2|q|)")
    h.add_argument("--m2", type=int, help="2m (default -2l)")
    h.add_argument("--n-theta", type=int)
    h.add_argument("--n-phi", type=int)
    v = sub.add_parser("verify", parents=[common], help="check every level against the shooting solver")
    v.add_argument("--tol", type=float)
    v.add_argument("--bracket-pad", type=float)
    return parser


def _emit(cfg: RunConfig, out: Output) -> None:
    if cfg.output_path is None:
        sys.stdout.write(out.text)
        if out.sidecar is not None:
            sys.stderr.write(out.sidecar)
    else:
        cfg.output_path.write_text(out.text, newline="\n")
        if out.sidecar is not None:
            sidecar_path(cfg.output_path).write_text(out.sidecar, newline="\n")
    if cfg.provenance and cfg.output_format == "csv":
        sys.stderr.write(f"# preset: {cfg.provenance}\n")


def sidecar_path(path: Path) -> Path:
    return path.with_name(path.name + ".json")


def main(argv: list[str] | None = None) -> int:
    args = vars(build_parser().parse_args(argv))
    command = args.pop("command")
    try:
        cfg = resolve(command, args)
        _emit(cfg, COMMANDS[command](cfg))
    except NoSuchLevel as exc:
        sys.stderr.write(f"mesoatom: no such level: {exc}\n")
        return EXIT_NO_LEVEL
    except OracleError as exc:
        sys.stderr.write(f"mesoatom: oracle failure {type(exc).__name__}: {exc}\n")
        return EXIT_ORACLE
    except (ConfigError, DomainError) as exc:
        sys.stderr.write(f"mesoatom: config error: {exc}\n")
        return EXIT_CONFIG
    except OSError as exc:
        sys.stderr.write(f"mesoatom: config error: cannot write output: {exc.strerror}\n")
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
