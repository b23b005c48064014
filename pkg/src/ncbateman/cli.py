"""
Command-line front end.

    ncbateman derive   --config run.cfg [--format json|csv] [--out FILE]
    ncbateman spectrum --config run.cfg [--tol 1e-10]
    ncbateman simulate --config run.cfg --out traj.csv [--plot traj.svg]
    ncbateman sweep    --config run.cfg --out sweep.csv
    ncbateman verify   [--config run.cfg] [--seed N]

Exit codes: 0 success, 1 usage/config error, 2 verification failure,
3 numerical-domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys

import numpy as np

from . import dynamics, spectra, verification
from .config import PARAM_KEYS, ConfigError, RunConfig, parse_config
from .params import DomainError, SystemParams, derive, dirac_bracket, duality_report

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_DOMAIN = 0, 1, 2, 3

TRAJECTORY_COLUMNS = ("t", "u1", "u2", "v1", "v2")

SWEEP_COLUMNS = (
    "gamma", "omega", "epsilon", "eta", "theta", "hbar",
    "positive_regime", "valid", "gamma_R", "theta_star", "critical_ratio", "regime",
    "omega_plus_re", "omega_plus_im", "omega_minus_re", "omega_minus_im",
    "omega_tilde_1", "omega_tilde_2", "agreement_error",
)


class VerificationFailure(Exception):
    pass


def fmt(x) -> str:
    """17 significant digits, locale independent."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, str):
        return x
    # + 0.0 folds negative zero
    return format(float(x) + 0.0, ".17g")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _jsonable(obj.real), "im": _jsonable(obj.imag)}
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj) + 0.0
        return x if math.isfinite(x) else str(x)
    if hasattr(obj, "value"):
        return obj.value
    return obj


def to_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _params_dict(p: SystemParams) -> dict:
    return {k: getattr(p, k) for k in PARAM_KEYS}


# -- commands -----------------------------------------------------------------


def cmd_derive(cfg: RunConfig, fmt_: str = "json") -> str:
    p = cfg.params
    rep = duality_report(p)
    report = {
        "params": _params_dict(p),
        "positive_regime": p.positive_regime,
        "derived": derive(p).as_dict(),
        "gamma_R": rep.gamma_R,
        "theta_star": rep.theta_star,
        "critical_ratio": rep.critical_ratio,
        "regime": rep.regime.value,
        "note": rep.note,
    }
    try:
        report["dirac_bracket"] = dirac_bracket(p)
    except DomainError:
        report["dirac_bracket"] = None
    if fmt_ == "csv":
        flat = [("positive_regime", p.positive_regime)]
        flat += [(k, v) for k, v in _params_dict(p).items()]
        for k, v in report["derived"].items():
            flat += [(k + "_re", v.real), (k + "_im", v.imag)]
        flat += [(k, report[k]) for k in ("gamma_R", "theta_star", "critical_ratio", "regime", "dirac_bracket")]
        return to_csv(("name", "value"), flat)
    return to_json(report)


def cmd_spectrum(cfg: RunConfig, fmt_: str = "json", tol: float | None = None) -> tuple[str, bool | None]:
    """Both spectrum routes; the flag is False when agreement exceeds `tol`.

    The flag is None when the canonical route does not exist (mixed-sign
    couplings), which is reported but is not a verification failure.
    """
    p = cfg.params
    if not p.positive_regime:
        raise DomainError("spectrum requires the positive regime: eta > 1 and epsilon > omega^2")
    tol = tol or cfg.get("tol") or cfg.tolerances.get("agreement", spectra.AGREEMENT_TOL)
    rep = spectra.spectrum_report(p)
    # mixed-sign couplings without a real rotation: nothing to compare
    comparable = rep.route_metadata["canonical_route"] == "ok"
    ok = rep.agreement_error <= tol if comparable else None
    if fmt_ == "csv":
        header = ("omega_plus_re", "omega_plus_im", "omega_minus_re", "omega_minus_im",
                  "omega_tilde_1", "omega_tilde_2", "agreement_error", "passed")
        row = (rep.omega_plus.real, rep.omega_plus.imag, rep.omega_minus.real, rep.omega_minus.imag,
               rep.omega_tilde_1.real, rep.omega_tilde_2.real, rep.agreement_error, ok)
        return to_csv(header, [row]), ok
    body = {
        "params": _params_dict(p),
        "omega_plus": rep.omega_plus,
        "omega_minus": rep.omega_minus,
        "omega_tilde_1": rep.omega_tilde_1,
        "omega_tilde_2": rep.omega_tilde_2,
        "agreement_error": rep.agreement_error,
        "tolerance": tol,
        "passed": ok,
        "route_metadata": rep.route_metadata,
    }
    return to_json(body), ok


def simulate(cfg: RunConfig) -> dynamics.Trajectory:
    variant = cfg.get("variant", "BATEMAN")
    try:
        variant = dynamics.Variant(variant.upper())
    except ValueError:
        raise ConfigError(f"unknown variant {variant!r}; choose from {[v.value for v in dynamics.Variant]}")
    t_max = cfg.get("t_max", 100.0)
    n = cfg.get("n_samples", 2001)
    if not t_max > 0 or n < 2:
        raise ConfigError("t_max must be > 0 and n_samples >= 2")
    x0 = cfg.get("initial_state", [1.0, 0.0, 0.0, 0.0])
    if len(x0) != 4:
        raise ConfigError("initial_state needs four numbers: u1, u2, v1, v2")
    model = dynamics.build_model(variant, cfg.params)
    if np.iscomplexobj(model.A):
        raise DomainError(f"{variant.value} has complex coefficients at these parameters")
    return dynamics.propagate(model, np.array(x0, dtype=float), np.linspace(0.0, t_max, n))


def cmd_simulate(cfg: RunConfig, fmt_: str = "csv") -> tuple[str, dynamics.Trajectory]:
    tr = simulate(cfg)
    if fmt_ == "json":
        body = {
            "variant": tr.model.variant.value,
            "frame": tr.model.coordinate_frame,
            "truncated": tr.truncated,
            "method": tr.method,
            "columns": list(TRAJECTORY_COLUMNS),
            "rows": np.column_stack([tr.times, tr.states]).tolist(),
        }
        return to_json(body), tr
    rows = np.column_stack([tr.times, tr.states])
    return to_csv(TRAJECTORY_COLUMNS, rows), tr


def svg_plot(tr: dynamics.Trajectory, width: int = 960, height: int = 540) -> str:
    """Polyline plot of u1 and u2 against t in a fixed 960x540 viewBox."""
    margin = 40
    t = tr.times
    ys = np.real(tr.states[:, :2])
    ymax = float(np.max(np.abs(ys))) or 1.0
    tspan = float(t[-1] - t[0]) or 1.0
    sx = (width - 2 * margin) / tspan
    sy = (height - 2 * margin) / (2 * ymax)
    mid = height / 2

    def points(col):
        return " ".join(f"{margin + (ti - t[0]) * sx:.2f},{mid - yi * sy:.2f}" for ti, yi in zip(t, ys[:, col]))

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{mid:.2f}" x2="{width - margin}" y2="{mid:.2f}" stroke="#999" stroke-width="1"/>',
        f'<polyline fill="none" stroke="#1f77b4" stroke-width="1.2" points="{points(0)}"/>',
        f'<polyline fill="none" stroke="#d62728" stroke-width="1.2" points="{points(1)}"/>',
        f'<text x="{margin}" y="{margin - 12}" font-family="sans-serif" font-size="14">'
        f'{tr.model.variant.value}: u1 (blue), u2 (red) vs t; |u| max {ymax:.4g}</text>',
        "</svg>",
    ]
    return "\n".join(lines) + "\n"


def sweep_rows(cfg: RunConfig) -> list[tuple]:
    """Rows over the grid product, lexicographic in (gamma, omega, epsilon, eta, theta, hbar)."""
    if not cfg.grids:
        raise ConfigError("sweep needs at least one <param>_grid or <param>_range")
    axes = [cfg.grids.get(k, [getattr(cfg.params, k)]) for k in PARAM_KEYS]
    tol = cfg.tolerances.get("agreement", spectra.AGREEMENT_TOL)
    rows = []
    for combo in itertools.product(*axes):
        p = SystemParams(**dict(zip(PARAM_KEYS, (float(x) for x in combo))))
        rep = duality_report(p)
        op = om = complex(math.nan, math.nan)
        ot1 = ot2 = err = math.nan
        valid = False
        try:
            d = derive(p)
            op, om = spectra.pathintegral_spectrum(d)
            if p.positive_regime:
                sr = spectra.spectrum_report(p, d)
                ot1, ot2, err = sr.omega_tilde_1.real, sr.omega_tilde_2.real, sr.agreement_error
                valid = err <= tol and all(map(math.isfinite, (ot1, ot2, err, op.real, om.real)))
        except DomainError:
            pass
        rows.append((
            *combo, p.positive_regime, valid, rep.gamma_R, rep.theta_star, rep.critical_ratio,
            rep.regime.value, op.real, op.imag, om.real, om.imag, ot1, ot2, err,
        ))
    return rows


def cmd_sweep(cfg: RunConfig, fmt_: str = "csv") -> str:
    rows = sweep_rows(cfg)
    if fmt_ == "json":
        return to_json([dict(zip(SWEEP_COLUMNS, r)) for r in rows])
    return to_csv(SWEEP_COLUMNS, rows)


def cmd_verify(cfg: RunConfig, seed: int | None = None) -> tuple[str, bool]:
    seed = cfg.seed if seed is None else seed
    checks = verification.run_all(
        seed=seed,
        n_random=cfg.get("n_random", 200),
        tolerances=cfg.tolerances,
        fault=cfg.get("fault"),
    )
    ok = all(c.passed for c in checks)
    covered = sorted({c.module for c in checks})
    body = {
        "passed": ok,
        "seed": seed,
        "modules_covered": covered,
        "checks": [c.as_dict() for c in checks],
    }
    return to_json(body), ok


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncbateman", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("derive", "spectrum", "simulate", "sweep", "verify"):
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="flat key = value config file")
        sp.add_argument("--out", help="output file (default stdout)")
        sp.add_argument("--format", choices=("json", "csv"), default=None)
        sp.add_argument("--plot", help="SVG plot path (simulate only)")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--tol", type=float, default=None)
    return parser


DEFAULT_FORMAT = {"derive": "json", "spectrum": "json", "simulate": "csv", "sweep": "csv", "verify": "json"}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    fmt_ = args.format or DEFAULT_FORMAT[args.command]
    try:
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                cfg = parse_config(fh.read(), source=args.config)
        else:
            cfg = parse_config("")
        if args.seed is not None:
            cfg = RunConfig(cfg.params, cfg.settings, cfg.grids, cfg.tolerances, args.seed)
        if args.tol is not None and not args.tol > 0:
            raise ConfigError("--tol must be positive")

        if args.command == "derive":
            _emit(cmd_derive(cfg, fmt_), args.out)
        elif args.command == "spectrum":
            text, ok = cmd_spectrum(cfg, fmt_, args.tol)
            _emit(text, args.out)
            if ok is False:
                raise VerificationFailure("dual-route agreement exceeds tolerance")
        elif args.command == "simulate":
            text, tr = cmd_simulate(cfg, fmt_)
            _emit(text, args.out)
            if args.plot:
                _emit(svg_plot(tr), args.plot)
        elif args.command == "sweep":
            _emit(cmd_sweep(cfg, fmt_), args.out)
        else:
            if args.tol is not None:
                cfg.tolerances.setdefault("agreement", args.tol)
            text, ok = cmd_verify(cfg, args.seed)
            _emit(text, args.out)
            if not ok:
                raise VerificationFailure("one or more invariants failed")
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (DomainError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical-domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
