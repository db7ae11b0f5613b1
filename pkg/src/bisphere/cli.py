"""Command line driver: single evaluations, sweeps, blow-up and response curves.

Output is deterministic: identical configs produce byte-identical files.
CSV carries a #-prefixed header block (tool version, config hash, column
units) and no timestamps; JSON mirrors the same schema with sorted keys.
Exit codes: 0 success, 2 invalid configuration, 3 numerical failure
(truncation cap, pole guard, quadrature non-convergence, regime
underflow).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .capacitance import (
    capacitance_asymptotic_rescaled,
    capacitance_exact,
    rescale,
    sigma_terms,
)
from .errors import (
    ConfigError,
    PoleProximityError,
    QuadratureConvergenceError,
    RegimeUnderflowError,
    TruncationCapError,
)
from .fields import blowup_study, eval_grad_mode, eval_potential, potential_series
from .geometry import (
    REGION_INSIDE_D1,
    REGION_INSIDE_D2,
    ResonatorPair,
    classify,
    epsilon_from_regime,
    frame_from_pair,
    log_epsilon_from_regime,
    to_bispherical,
)
from .scattering import response_curve
from .spectra import (
    Material,
    eigen,
    resonance_asymptotic,
    resonant_frequencies,
)

VERSION = "0.1.0"

_NUMERICAL_ERRORS = (
    TruncationCapError,
    PoleProximityError,
    QuadratureConvergenceError,
    RegimeUnderflowError,
    OverflowError,
)

# tol left unset picks a per-command default: tight for pointwise
# quantities, looser for the blow-up sweep where it multiplies runtime
_TOL_DEFAULT = 1e-10
_TOL_BLOWUP_DEFAULT = 1e-8


@dataclass
class RunConfig:
    r1: float | None = None
    r2: float | None = None
    eps: float | None = None
    delta: float | None = None
    beta: float | None = None
    c0: float | None = None
    rho: float = 1.0
    rho_b: float = 1e-3
    kappa: float = 1.0
    kappa_b: float = 1e-3
    tol: float | None = None
    out: str | None = None
    format: str = "csv"
    jobs: int = 1
    mode: int = 2
    samples: int = 400
    eps_grid: str | None = None
    delta_grid: str | None = None
    omega_grid: str | None = None
    direction: str = "0,0,1"
    points: list = field(default_factory=list)
    quantity: str | None = None
    error_json: bool = False


_CONFIG_KEYS = {f.name for f in fields(RunConfig)}


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def _merge_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        for key, val in _load_config(args.config).items():
            setattr(cfg, key, val)
    for key in _CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None and val != []:
            setattr(cfg, key, val)
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {cfg.format!r}")
    if cfg.jobs < 1:
        raise ConfigError(f"jobs must be >= 1, got {cfg.jobs}")
    if cfg.tol is not None and not cfg.tol > 0.0:
        raise ConfigError(f"tol must be positive, got {cfg.tol}")
    return cfg


def _require_radii(cfg: RunConfig) -> tuple[float, float]:
    if cfg.r1 is None or cfg.r2 is None:
        raise ConfigError("both --r1 and --r2 are required")
    return float(cfg.r1), float(cfg.r2)


def _regime_given(cfg: RunConfig) -> bool:
    return cfg.beta is not None or cfg.c0 is not None


def _resolve_epsilon(cfg: RunConfig) -> float:
    """Exactly one of a literal gap or a regime triple must be given."""
    if cfg.eps is not None:
        if _regime_given(cfg):
            raise ConfigError("give either --eps or the regime (--delta --beta --c0), not both")
        if not cfg.eps > 0.0:
            raise ConfigError(f"eps must be positive, got {cfg.eps}")
        return float(cfg.eps)
    if cfg.beta is not None:
        if cfg.delta is None:
            raise ConfigError("regime mode needs --delta together with --beta")
        return epsilon_from_regime(cfg.delta, cfg.beta, cfg.c0 if cfg.c0 is not None else 1.0)
    raise ConfigError("geometry needs --eps or a regime (--delta --beta [--c0])")


def _material(cfg: RunConfig, delta: float | None = None) -> Material:
    """Material from the density/bulk-modulus flags.

    In regime mode the contrast delta overrides both interior
    parameters proportionally, which keeps the interior wave speed
    equal to the unscaled one.
    """
    if delta is None and cfg.delta is not None and cfg.beta is not None:
        delta = cfg.delta
    if delta is not None:
        if not 0.0 < delta < 1.0:
            raise ConfigError(f"contrast delta must be in (0, 1), got {delta}")
        return Material(
            rho=cfg.rho, rho_b=delta * cfg.rho, kappa=cfg.kappa, kappa_b=delta * cfg.kappa
        )
    return Material(rho=cfg.rho, rho_b=cfg.rho_b, kappa=cfg.kappa, kappa_b=cfg.kappa_b)


def _parse_grid(text: str, *, log_scale: bool, name: str) -> list[float]:
    try:
        if ":" in text:
            lo_s, hi_s, n_s = text.split(":")
            lo, hi, n = float(lo_s), float(hi_s), int(n_s)
            if n < 1:
                raise ValueError("grid needs at least one point")
            if n == 1:
                return [lo]
            if log_scale:
                if not (lo > 0.0 and hi > 0.0):
                    raise ValueError("log grid endpoints must be positive")
                vals = np.geomspace(lo, hi, n)
            else:
                vals = np.linspace(lo, hi, n)
            return [float(v) for v in vals]
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad {name} grid {text!r}: {exc}") from exc


def _parse_vec3(text: str, name: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError(f"{name} must be three comma-separated numbers, got {text!r}")
    try:
        x, y, z = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"bad {name} {text!r}: {exc}") from exc
    return x, y, z


def _config_hash(cfg: RunConfig) -> str:
    payload = asdict(cfg)
    for key in ("out", "jobs", "error_json"):
        payload.pop(key, None)
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _fmt(v) -> str:
    if isinstance(v, float):
        # repr of the builtin float: shortest round-trip form, and numpy
        # scalars are unwrapped so they don't print as np.float64(...)
        return repr(float(v))
    return str(v)


def _emit(cfg, columns, rows, units, comments=(), summary=None) -> None:
    h = _config_hash(cfg)
    if cfg.format == "csv":
        lines = [
            f"# artifact-version: {VERSION}",
            f"# config-hash: {h}",
            "# units: " + " ".join(f"{c}={units.get(c, '1')}" for c in columns),
            ",".join(columns),
        ]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        lines.extend(f"# {c}" for c in comments)
        text = "\n".join(lines) + "\n"
    else:
        clean_rows = [
            [None if isinstance(v, float) and math.isnan(v) else v for v in row]
            for row in rows
        ]
        obj = {
            "version": VERSION,
            "config_hash": h,
            "units": units,
            "columns": columns,
            "rows": clean_rows,
        }
        if summary is not None:
            obj["summary"] = {
                k: (None if isinstance(v, float) and math.isnan(v) else v)
                for k, v in summary.items()
            }
        text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cap_row(r1: float, r2: float, eps: float, tol: float) -> list[float]:
    pair = ResonatorPair(r1, r2, eps)
    frame = frame_from_pair(pair)
    cmat = capacitance_exact(frame, tol=tol)
    ct = rescale(cmat, pair)
    st = sigma_terms(frame, pair)
    try:
        asym = capacitance_asymptotic_rescaled(pair)
        a_vals = [asym.ct11, asym.ct12, asym.ct21, asym.ct22]
    except ValueError:
        a_vals = [math.nan] * 4
    e_vals = [ct.ct11, ct.ct12, ct.ct21, ct.ct22]
    rel = [
        abs(a - e) / abs(e) if not math.isnan(a) else math.nan
        for a, e in zip(a_vals, e_vals)
    ]
    return (
        [r1, r2, eps, cmat.c11, cmat.c12, cmat.c21, cmat.c22]
        + e_vals
        + [st.sigma1, st.sigma2]
        + a_vals
        + rel
        + [float(cmat.n_terms)]
    )


_CAP_COLUMNS = [
    "r1", "r2", "eps",
    "c11", "c12", "c21", "c22",
    "ct11", "ct12", "ct21", "ct22",
    "sigma1", "sigma2",
    "asym_ct11", "asym_ct12", "asym_ct21", "asym_ct22",
    "relerr_ct11", "relerr_ct12", "relerr_ct21", "relerr_ct22",
    "n_terms",
]

_CAP_UNITS = {
    "r1": "length", "r2": "length", "eps": "length",
    "c11": "length", "c12": "length", "c21": "length", "c22": "length",
    "ct11": "1/length^2", "ct12": "1/length^2",
    "ct21": "1/length^2", "ct22": "1/length^2",
    "sigma1": "1/length^2", "sigma2": "1/length^2",
    "asym_ct11": "1/length^2", "asym_ct12": "1/length^2",
    "asym_ct21": "1/length^2", "asym_ct22": "1/length^2",
}


def cmd_capacitance(cfg: RunConfig) -> None:
    r1, r2 = _require_radii(cfg)
    eps = _resolve_epsilon(cfg)
    tol = cfg.tol if cfg.tol is not None else _TOL_DEFAULT
    row = _cap_row(r1, r2, eps, tol)
    _emit(cfg, _CAP_COLUMNS, [row], _CAP_UNITS)


def _resonance_row(
    r1: float, r2: float, delta: float, beta: float, c0: float
) -> list[float]:
    """One regime-sweep row.

    The exact route needs the gap to be representable as a float AND a
    series budget of roughly 1/sqrt(eps) terms; regime gaps shrink like
    exp(-1/delta^(1-beta)), so past a modest contrast the exact columns
    go NaN and only the closed form remains. That is the point of the
    sweep: the closed form keeps working where brute force cannot.
    """
    m = Material(rho=1.0, rho_b=delta, kappa=1.0, kappa_b=delta)
    log_eps = log_epsilon_from_regime(delta, beta, c0)
    asym = resonance_asymptotic((r1, r2), m, log_eps=log_eps)
    eps, o1e, o2e = math.nan, math.nan, math.nan
    if log_eps > math.log(2.3e-308):
        try:
            pair = ResonatorPair(r1, r2, math.exp(log_eps))
            frame = frame_from_pair(pair)
            sp = eigen(rescale(capacitance_exact(frame, tol=1e-12), pair))
            ex = resonant_frequencies(sp, m)
            eps, o1e, o2e = pair.epsilon, ex.omega1, ex.omega2
        except TruncationCapError:
            pass
    ratio1 = asym.omega1 / o1e if not math.isnan(o1e) else math.nan
    ratio2 = asym.omega2 / o2e if not math.isnan(o2e) else math.nan
    return [delta, eps, log_eps, o1e, o2e, asym.omega1, asym.omega2, ratio1, ratio2]


_RES_COLUMNS = [
    "delta", "eps", "log_eps",
    "omega1_exact", "omega2_exact",
    "omega1_asym", "omega2_asym",
    "ratio_asym_exact_1", "ratio_asym_exact_2",
]

_RES_UNITS = {
    "eps": "length", "omega1_exact": "1/time", "omega2_exact": "1/time",
    "omega1_asym": "1/time", "omega2_asym": "1/time",
}


def cmd_resonances(cfg: RunConfig) -> None:
    r1, r2 = _require_radii(cfg)
    if cfg.delta_grid is not None:
        if cfg.beta is None:
            raise ConfigError("a delta sweep needs the regime exponent --beta")
        c0 = cfg.c0 if cfg.c0 is not None else 1.0
        deltas = _parse_grid(cfg.delta_grid, log_scale=True, name="delta")
        for d in deltas:
            if not 0.0 < d < 1.0:
                raise ConfigError(f"contrast delta must be in (0, 1), got {d}")
        rows = [_resonance_row(r1, r2, d, cfg.beta, c0) for d in deltas]
        _emit(cfg, _RES_COLUMNS, rows, _RES_UNITS)
        return

    eps = _resolve_epsilon(cfg)
    m = _material(cfg)
    pair = ResonatorPair(r1, r2, eps)
    frame = frame_from_pair(pair)
    tol = cfg.tol if cfg.tol is not None else _TOL_DEFAULT
    sp = eigen(rescale(capacitance_exact(frame, tol=tol), pair))
    ex = resonant_frequencies(sp, m)
    asym = resonance_asymptotic(pair, m)
    rows = [[
        m.delta, eps, math.log(eps),
        ex.omega1, ex.omega2, asym.omega1, asym.omega2,
        asym.omega1 / ex.omega1, asym.omega2 / ex.omega2,
    ]]
    _emit(cfg, _RES_COLUMNS, rows, _RES_UNITS)


def cmd_blowup(cfg: RunConfig) -> None:
    r1, r2 = _require_radii(cfg)
    if cfg.eps_grid is None:
        raise ConfigError("blowup needs --eps-grid lo:hi:n (log-spaced) or a comma list")
    grid = _parse_grid(cfg.eps_grid, log_scale=True, name="eps")
    tol = cfg.tol if cfg.tol is not None else _TOL_BLOWUP_DEFAULT
    try:
        study = blowup_study(
            (r1, r2), _material(cfg), grid,
            samples=cfg.samples, tol=tol, jobs=cfg.jobs,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    columns = [
        "eps", "max_grad_u1", "max_grad_u2", "loc_xi",
        "u1_times_eps", "u1_times_eps_logeps", "u2_times_eps", "u2_times_eps_logeps",
    ]
    units = {
        "eps": "length",
        "max_grad_u1": "1/length", "max_grad_u2": "1/length",
        "u1_times_eps_logeps": "1", "u2_times_eps": "1",
    }
    rows = [
        [row.epsilon, row.max_grad_u1, row.max_grad_u2, row.location.xi, a, b, c, d]
        for row, a, b, c, d in zip(
            study.rows,
            study.comp_u1_eps, study.comp_u1_eps_log,
            study.comp_u2_eps, study.comp_u2_eps_log,
        )
    ]
    comments = [
        f"fitted-slope-u1: {study.slope_u1!r}",
        f"fitted-slope-u2: {study.slope_u2!r}",
    ]
    summary = {"slope_u1": study.slope_u1, "slope_u2": study.slope_u2}
    _emit(cfg, columns, rows, units, comments=comments, summary=summary)


def cmd_field(cfg: RunConfig) -> None:
    r1, r2 = _require_radii(cfg)
    eps = _resolve_epsilon(cfg)
    if not cfg.points:
        raise ConfigError("field needs at least one --point x,y,z")
    pair = ResonatorPair(r1, r2, eps)
    frame = frame_from_pair(pair)
    tol = cfg.tol if cfg.tol is not None else _TOL_DEFAULT
    ps = potential_series(frame, tol=tol)
    sp = eigen(rescale(capacitance_exact(frame, tol=tol), pair))
    rows = []
    for text in cfg.points:
        xyz = np.array(_parse_vec3(text, "point"))
        region = classify(frame, xyz)
        if region in (REGION_INSIDE_D1, REGION_INSIDE_D2):
            which = 1 if region == REGION_INSIDE_D1 else 2
            raise ConfigError(
                f"point {text} lies inside resonator {which}; "
                "fields are only defined in the exterior"
            )
        p = to_bispherical(frame, xyz)
        v1 = eval_potential(ps, 1, p)
        v2 = eval_potential(ps, 2, p)
        g1 = eval_grad_mode(1, sp, ps, p)
        g2 = eval_grad_mode(2, sp, ps, p)
        rows.append(
            [xyz[0], xyz[1], xyz[2], v1, v2,
             sp.d1 * v1 + v2, sp.d2 * v1 + v2,
             g1[0], g1[1], g1[2], g2[0], g2[1], g2[2]]
        )
    columns = [
        "x1", "x2", "x3", "v1", "v2", "u1", "u2",
        "grad_u1_x", "grad_u1_y", "grad_u1_z",
        "grad_u2_x", "grad_u2_y", "grad_u2_z",
    ]
    units = {c: "1/length" for c in columns if c.startswith("grad")}
    units.update({"x1": "length", "x2": "length", "x3": "length"})
    _emit(cfg, columns, rows, units)


def cmd_scattering(cfg: RunConfig) -> None:
    r1, r2 = _require_radii(cfg)
    eps = _resolve_epsilon(cfg)
    if cfg.omega_grid is None:
        raise ConfigError("scattering needs --omega-grid lo:hi:n or a comma list")
    omegas = _parse_grid(cfg.omega_grid, log_scale=False, name="omega")
    direction = _parse_vec3(cfg.direction, "direction")
    m = _material(cfg)
    pair = ResonatorPair(r1, r2, eps)
    frame = frame_from_pair(pair)
    tol = cfg.tol if cfg.tol is not None else _TOL_DEFAULT
    cmat = capacitance_exact(frame, tol=tol)
    freqs = resonant_frequencies(eigen(rescale(cmat, pair)), m)
    rows = [list(r) for r in response_curve(cmat, pair, m, omegas, direction)]
    columns = ["omega", "abs_a", "abs_b"]
    units = {"omega": "1/time", "abs_a": "1", "abs_b": "1"}
    comments = [f"omega1: {freqs.omega1!r}", f"omega2: {freqs.omega2!r}"]
    summary = {"omega1": freqs.omega1, "omega2": freqs.omega2}
    _emit(cfg, columns, rows, units, comments=comments, summary=summary)


def _sweep_cap_cell(args: tuple) -> list[float]:
    r1, r2, eps, tol = args
    return _cap_row(r1, r2, eps, tol)


def _sweep_res_cell(args: tuple) -> list[float]:
    r1, r2, delta, beta, c0 = args
    return _resonance_row(r1, r2, delta, beta, c0)


def cmd_sweep(cfg: RunConfig) -> None:
    r1, r2 = _require_radii(cfg)
    if cfg.quantity == "capacitance":
        if cfg.eps_grid is None:
            raise ConfigError("a capacitance sweep needs --eps-grid")
        grid = _parse_grid(cfg.eps_grid, log_scale=True, name="eps")
        tol = cfg.tol if cfg.tol is not None else _TOL_DEFAULT
        cells = [(r1, r2, e, tol) for e in grid]
        rows = _map_cells(_sweep_cap_cell, cells, cfg.jobs)
        _emit(cfg, _CAP_COLUMNS, rows, _CAP_UNITS)
    elif cfg.quantity == "resonances":
        if cfg.delta_grid is None:
            raise ConfigError("a resonance sweep needs --delta-grid")
        if cfg.beta is None:
            raise ConfigError("a resonance sweep needs the regime exponent --beta")
        c0 = cfg.c0 if cfg.c0 is not None else 1.0
        deltas = _parse_grid(cfg.delta_grid, log_scale=True, name="delta")
        for d in deltas:
            if not 0.0 < d < 1.0:
                raise ConfigError(f"contrast delta must be in (0, 1), got {d}")
        cells = [(r1, r2, d, cfg.beta, c0) for d in deltas]
        rows = _map_cells(_sweep_res_cell, cells, cfg.jobs)
        _emit(cfg, _RES_COLUMNS, rows, _RES_UNITS)
    else:
        raise ConfigError("sweep needs --quantity capacitance or resonances")


def _map_cells(fn, cells, jobs: int):
    if jobs <= 1 or len(cells) <= 1:
        return [fn(c) for c in cells]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, cells))


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="bisphere",
        description="Close-to-touching spherical resonator pair: capacitance, "
        "resonances, fields, gap blow-up and scattering response.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON file with RunConfig keys; flags override")
        p.add_argument("--r1", type=float, help="radius of sphere 1")
        p.add_argument("--r2", type=float, help="radius of sphere 2")
        p.add_argument("--eps", type=float, help="gap width between the spheres")
        p.add_argument("--delta", type=float, help="contrast (regime mode)")
        p.add_argument("--beta", type=float, help="regime exponent in (0, 1)")
        p.add_argument("--c0", type=float, help="regime gap scale (default 1)")
        p.add_argument("--rho", type=float, help="background density")
        p.add_argument("--rho-b", dest="rho_b", type=float, help="interior density")
        p.add_argument("--kappa", type=float, help="background bulk modulus")
        p.add_argument(
            "--kappa-b", dest="kappa_b", type=float, help="interior bulk modulus"
        )
        p.add_argument("--tol", type=float, help="series tolerance")
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), help="output format")
        p.add_argument("--jobs", type=int, help="parallel workers for sweeps")
        p.add_argument(
            "--error-json",
            dest="error_json",
            action="store_const",
            const=True,
            help="report failures as JSON on stdout",
        )

    p = sub.add_parser("capacitance", help="capacitance matrix and asymptotics")
    common(p)

    p = sub.add_parser("resonances", help="resonant frequencies, exact and asymptotic")
    common(p)
    p.add_argument("--delta-grid", dest="delta_grid", help="lo:hi:n log grid or comma list")

    p = sub.add_parser("blowup", help="gap-gradient blow-up study")
    common(p)
    p.add_argument("--eps-grid", dest="eps_grid", help="lo:hi:n log grid or comma list")
    p.add_argument("--samples", type=int, help="gap-axis samples per gap")

    p = sub.add_parser("field", help="potentials, modes and gradients at points")
    common(p)
    p.add_argument(
        "--point",
        dest="points",
        action="append",
        metavar="X,Y,Z",
        help="Cartesian evaluation point; repeatable",
    )

    p = sub.add_parser("scattering", help="modal response curve |a|, |b| vs omega")
    common(p)
    p.add_argument("--omega-grid", dest="omega_grid", help="lo:hi:n linear grid or comma list")
    p.add_argument("--direction", help="incident direction x,y,z (default 0,0,1)")

    p = sub.add_parser("sweep", help="tabulate a quantity over a parameter grid")
    common(p)
    p.add_argument("--quantity", choices=("capacitance", "resonances"))
    p.add_argument("--eps-grid", dest="eps_grid", help="lo:hi:n log grid or comma list")
    p.add_argument("--delta-grid", dest="delta_grid", help="lo:hi:n log grid or comma list")

    return top


_COMMANDS = {
    "capacitance": cmd_capacitance,
    "resonances": cmd_resonances,
    "blowup": cmd_blowup,
    "field": cmd_field,
    "scattering": cmd_scattering,
    "sweep": cmd_sweep,
}


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    error_json = bool(getattr(args, "error_json", False))
    try:
        cfg = _merge_config(args)
        error_json = cfg.error_json
        _COMMANDS[args.command](cfg)
        return 0
    except (ConfigError, ValueError) as exc:
        _report_error(exc, error_json)
        return 2
    except _NUMERICAL_ERRORS as exc:
        _report_error(exc, error_json)
        return 3


def _report_error(exc: Exception, as_json: bool) -> None:
    if as_json:
        sys.stdout.write(
            json.dumps(
                {"error": type(exc).__name__, "message": str(exc)}, sort_keys=True
            )
            + "\n"
        )
    else:
        sys.stderr.write(f"error: {exc}\n")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
