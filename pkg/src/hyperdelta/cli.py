"""Command-line driver: ``hyperdelta smatrix|sturmian|wavefunction|verify``.

Configuration is a flat ``key = value`` file plus ``--key value`` overrides.
Results go to CSV (default) or JSON, on stdout or to ``out``.
"""
from __future__ import annotations

import argparse
import hashlib
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import geometry as geo
from . import scattering as sc
from . import sturmian as st
from . import verify as vf
from . import wavefunction as wf
from .errors import AccuracyError, HyperDeltaError

COMMANDS = ("smatrix", "sturmian", "wavefunction", "verify")
EXIT_OK, EXIT_NUMERIC, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    """Malformed or out-of-range configuration."""


def _opt_float(s):
    return None if s in ("", "none", "None") else float(s)


def _opt_str(s):
    return None if s in ("", "none", "None", "-") else s


def _choice(*allowed):
    def conv(s):
        if s not in allowed:
            raise ValueError(f"expected one of {', '.join(allowed)}")
        return s
    return conv


# key -> (converter, default).  Order fixes the config echo and the hash.
KEYS = {
    "c": (float, -1.0),
    "k": (_opt_float, None),
    "k_min": (float, 0.0),
    "k_max": (_opt_float, None),
    "k_steps": (int, 51),
    "R_min": (float, 0.5),
    "R_max": (float, 5.0),
    "R_steps": (int, 10),
    "theta_min": (float, 0.0),
    "theta_max": (float, math.pi / 3),
    "theta_steps": (int, 13),
    "t_max": (float, 40.0),
    "rel_tol": (float, 1e-7),
    "representation": (_choice("closed", "kl", "both"), "closed"),
    "format": (_choice("csv", "json"), "csv"),
    "out": (_opt_str, None),
    "nu_axis": (_choice("imag", "real"), "imag"),
    "nu_min": (float, 0.0),
    "nu_max": (float, 6.0),
    "nu_steps": (int, 61),
    "Rp_min": (float, 0.1),
    "Rp_max": (float, 100.0),
    "Rp_steps": (int, 13),
    "kappa_max": (int, 12),
    "fault": (_choice("none", "invert_s"), "none"),
    "tolerance": (_opt_float, None),
}


def parse_config_text(text: str, source: str = "<config>") -> dict:
    out = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if not sep:
            parts = line.split(None, 1)
            if len(parts) != 2:
                raise ConfigError(f"{source}:{n}: expected 'key = value'")
            key, val = parts
        key, val = key.strip(), val.strip()
        if key not in KEYS:
            raise ConfigError(f"{source}:{n}: unknown key {key!r}")
        out[key] = val
    return out


def resolve_config(raw: dict) -> dict:
    cfg = {}
    for key, (conv, default) in KEYS.items():
        if key in raw and raw[key] is not None:
            try:
                cfg[key] = conv(raw[key])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"bad value for {key}: {raw[key]!r} ({exc})") from None
        else:
            cfg[key] = default
    for key, val in cfg.items():
        if isinstance(val, float) and not math.isfinite(val):
            raise ConfigError(f"{key} must be finite")
    if cfg["c"] == 0:
        raise ConfigError("c must be non-zero")
    for key in ("k_steps", "R_steps", "theta_steps", "nu_steps", "Rp_steps"):
        if cfg[key] < 1:
            raise ConfigError(f"{key} must be >= 1")
    if cfg["R_min"] < 0 or cfg["R_max"] < cfg["R_min"]:
        raise ConfigError("need 0 <= R_min <= R_max")
    if cfg["theta_max"] < cfg["theta_min"]:
        raise ConfigError("need theta_min <= theta_max")
    if not 0 < cfg["Rp_min"] <= cfg["Rp_max"]:
        raise ConfigError("need 0 < Rp_min <= Rp_max")
    if cfg["nu_max"] < cfg["nu_min"]:
        raise ConfigError("need nu_min <= nu_max")
    if not 0 < cfg["rel_tol"] < 1:
        raise ConfigError("rel_tol must lie in (0, 1)")
    if cfg["kappa_max"] < 0:
        raise ConfigError("kappa_max must be >= 0")
    if cfg["tolerance"] is not None and cfg["tolerance"] <= 0:
        raise ConfigError("tolerance must be positive")
    return cfg


def config_hash(cfg: dict) -> str:
    """sha256 of the resolved config; the output path is not part of the run."""
    blob = json.dumps({k: v for k, v in cfg.items() if k != "out"}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _threshold(cfg) -> float:
    return math.pi * abs(cfg["c"]) / 6


def _require_channel(cfg, ks):
    if cfg["c"] >= 0:
        raise ConfigError("this command needs an attractive coupling (c < 0)")
    thr = _threshold(cfg)
    for k in ks:
        if not 0 <= k < thr:
            raise ConfigError(f"k={k!r} outside the open channel [0, {thr:.12g})")


def _k_values(cfg):
    if cfg["k"] is not None:
        ks = [cfg["k"]]
    else:
        kmax = 0.9 * _threshold(cfg) if cfg["k_max"] is None else cfg["k_max"]
        if kmax < cfg["k_min"]:
            raise ConfigError("need k_min <= k_max")
        ks = list(np.linspace(cfg["k_min"], kmax, cfg["k_steps"]))
    _require_channel(cfg, ks)
    return [float(k) for k in ks]


def _quadrature(cfg) -> wf.QuadratureSpec:
    try:
        return wf.QuadratureSpec(t_max=cfg["t_max"], rel_tol=cfg["rel_tol"])
    except HyperDeltaError as exc:
        raise ConfigError(str(exc)) from None


@dataclass
class ResultEnvelope:
    command: str
    config: dict
    schema: list
    rows: list
    diagnostics: dict = field(default_factory=dict)
    ok: bool = True

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.schema):
                raise ValueError("row width does not match schema")


def cmd_smatrix(cfg) -> ResultEnvelope:
    params = st.ModelParams(cfg["c"])
    rows, worst, prev = [], 0.0, None
    unwrap = 0.0
    for k in _k_values(cfg):
        sol = sc.solve(k, params)
        # delta_unwrapped: continuous branch of arg(S)/2 along the sweep
        if prev is not None:
            while sol.delta + unwrap - prev > math.pi / 2:
                unwrap -= math.pi
            while sol.delta + unwrap - prev < -math.pi / 2:
                unwrap += math.pi
        d = sol.delta + unwrap
        prev = d
        mod = abs(sol.S)
        worst = max(worst, abs(mod - 1))
        rows.append([k, sol.S.real, sol.S.imag, mod, d, sol.S3.real, sol.S3.imag])
    schema = ["k", "re_S", "im_S", "abs_S", "delta_unwrapped", "re_S3", "im_S3"]
    ok = worst <= 1e-12
    return ResultEnvelope("smatrix", cfg, schema, rows, {"max_unitarity_residual": worst}, ok)


def cmd_sturmian(cfg) -> ResultEnvelope:
    params = st.ModelParams(cfg["c"])
    grid = np.linspace(cfg["nu_min"], cfg["nu_max"], cfg["nu_steps"])
    nus = 1j * grid if cfg["nu_axis"] == "imag" else grid.astype(complex)
    rows, worst_fig2, poles = [], 0.0, 0
    nan = math.nan
    for r in st.rho_curve(nus, params):
        nu, rho = r["nu"], r["rho"]
        poles += r["pole"]
        if math.isfinite(r["fig2_residual"]):
            worst_fig2 = max(worst_fig2, r["fig2_residual"])
        rows.append(["rho", nu.real, nu.imag, rho.real, rho.imag, r["Lambda"],
                     int(r["pole"]), "", nan, nan, nan, nan])
    for Rp in np.geomspace(cfg["Rp_min"], cfg["Rp_max"], cfg["Rp_steps"]):
        for root in st.adiabatic_roots(float(Rp), params, cfg["kappa_max"]):
            rows.append(["root", nan, nan, nan, nan, root.Lambda, 0, root.kappa,
                         float(Rp), root.q.real, root.q.imag, root.Lambda * Rp**2])
    schema = ["kind", "re_nu", "im_nu", "re_rho", "im_rho", "Lambda", "pole",
              "kappa", "R_prime", "re_q", "im_q", "Lambda_R2"]
    diag = {"max_fig2_residual": worst_fig2, "pole_rows": poles}
    return ResultEnvelope("sturmian", cfg, schema, rows, diag, worst_fig2 <= 1e-10)


def cmd_wavefunction(cfg) -> ResultEnvelope:
    params = st.ModelParams(cfg["c"])
    k = cfg["k"] if cfg["k"] is not None else 0.5 * _threshold(cfg)
    _require_channel(cfg, [k])
    sol = sc.solve(k, params)
    energy = sc.channel_energy(k, params)
    q = _quadrature(cfg)
    rep = cfg["representation"]
    Rs = np.linspace(cfg["R_min"], cfg["R_max"], cfg["R_steps"])
    ths = np.linspace(cfg["theta_min"], cfg["theta_max"], cfg["theta_steps"])
    rows, notes, nodes = [], [], 0
    for R in Rs:
        for th in ths:
            th = geo.wrap_angle(float(th))
            p = geo.HyperPoint(float(R), th, geo.sector_of(th))
            closed = wf.psi_closed_form(p, energy, sol, params)
            tag, ratio, val = "closed", math.nan, closed
            if rep in ("kl", "both"):
                try:
                    res = wf.kl_integral(p, energy, sol, params, q, full_output=True)
                    nodes += res.nodes
                    tag = "kl"
                    if rep == "kl":
                        val = res.value
                    else:
                        r = res.value / closed
                        ratio = abs(r)
                        tag = "both"
                except (HyperDeltaError, ValueError) as exc:
                    tag = "closed_fallback"
                    notes.append(f"R={p.R:.6g} theta={p.theta:.6g}: {exc}")
            rows.append([p.R, p.theta, p.j, val.real, val.imag, abs(val), tag, ratio])
    schema = ["R", "theta", "j", "re_psi", "im_psi", "abs_psi", "representation", "ratio"]
    diag = {"k": k, "kl_nodes": nodes, "fallbacks": len(notes), "notes": notes}
    ratios = [r[-1] for r in rows if math.isfinite(r[-1])]
    if ratios:
        diag["ratio_spread"] = (max(ratios) - min(ratios)) / ratios[0]
    return ResultEnvelope("wavefunction", cfg, schema, rows, diag, True)


def cmd_verify(cfg) -> ResultEnvelope:
    c = cfg["c"]
    if c >= 0:
        raise ConfigError("verify runs the 2+1 suite and needs c < 0")
    scale = abs(c)
    ctx = vf.SuiteContext(
        params=st.ModelParams(c),
        k_values=tuple(k * scale for k in vf.DEFAULT_K),
        R_values=vf.DEFAULT_R,
        fault=cfg["fault"],
    )
    results = vf.run_suite(ctx, cfg["tolerance"])
    rows = [[r.name, r.max_residual, r.tolerance, "pass" if r.passed else "fail"] for r in results]
    ok = all(r.passed for r in results)
    diag = {"checks": len(results), "failed": sum(not r.passed for r in results)}
    return ResultEnvelope("verify", cfg, ["name", "max_residual", "tolerance", "status"], rows, diag, ok)


HANDLERS = {
    "smatrix": cmd_smatrix,
    "sturmian": cmd_sturmian,
    "wavefunction": cmd_wavefunction,
    "verify": cmd_verify,
}


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v) + 0.0:.16e}"
    return str(v)


def render_csv(env: ResultEnvelope) -> str:
    buf = io.StringIO()
    buf.write(f"# {env.command} {__version__} {config_hash(env.config)}\n")
    buf.write(",".join(env.schema) + "\n")
    for row in env.rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _json_value(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    return v


def render_json(env: ResultEnvelope) -> str:
    doc = {
        "command": env.command,
        "version": __version__,
        "config_hash": config_hash(env.config),
        "config": env.config,
        "schema": env.schema,
        "rows": [{k: _json_value(v) for k, v in zip(env.schema, row)} for row in env.rows],
        "diagnostics": {k: _json_value(v) for k, v in env.diagnostics.items()},
        "ok": env.ok,
    }
    return json.dumps(doc, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperdelta", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", metavar="FILE")
    for key in KEYS:
        p.add_argument(f"--{key}", dest=key, metavar="VALUE")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        raw = {}
        if ns.config:
            try:
                text = Path(ns.config).read_text()
            except OSError as exc:
                raise ConfigError(f"cannot read config: {exc}") from None
            raw.update(parse_config_text(text, ns.config))
        raw.update({k: getattr(ns, k) for k in KEYS if getattr(ns, k) is not None})
        cfg = resolve_config(raw)
        t0 = time.perf_counter()
        env = HANDLERS[ns.command](cfg)
    except ConfigError as exc:
        print(f"hyperdelta: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (HyperDeltaError, ArithmeticError, AccuracyError) as exc:
        print(f"hyperdelta: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    env.diagnostics["wall_time_s"] = time.perf_counter() - t0

    if cfg["format"] == "json":
        text = render_json(env)
    else:
        text = render_csv(env)
        for key, val in env.diagnostics.items():
            print(f"# {key}: {val}", file=sys.stderr)
    if cfg["out"]:
        with open(cfg["out"], "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
    return EXIT_OK if env.ok else EXIT_NUMERIC
