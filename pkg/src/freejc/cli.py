"""Command-line front end: ``freejc {verify,spectrum,bands,density}``.

Energies are always reported as eps - N Omega in recoil units; the absolute
offset is recorded in the metadata block of every output.  CSV outputs carry
the metadata as leading ``# `` comment lines; JSON outputs carry it under
``"meta"``.  Exit codes: 0 success, 1 check failure, 2 bad configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import adiabatic as ad
from .checks import SUITES, run_checks
from .density import floquet_density, periodicity, reduced_density, state_density, uniformity
from .hilbert import make_space
from .operators import SystemParams
from .stationary import EmptySectorError, q_scan, solve_joint

log = logging.getLogger("freejc")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
MIN_N_MAX = 4
STANDING_TOL = 1e-3

UNITS = {
    "energy": "recoil energy hbar^2 k^2 / 2M, reported as eps - N hbar Omega",
    "momentum": "hbar k",
    "position": "eta = k z",
    "detuning": "excited level at Omega + Delta",
}


class ConfigError(ValueError):
    """Invalid or inconsistent command-line configuration."""


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    return str(x)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    return x


def _dump_json(obj):
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def _csv_text(meta, header, rows, extra=None):
    buf = io.StringIO()
    for line in _dump_json({"meta": meta, **(extra or {})}).splitlines():
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _emit(args, meta, header, rows, extra=None):
    """Write the table in the requested format, plus a JSON sidecar for CSV files."""
    extra = extra or {}
    if args.format == "json":
        text = _dump_json({"meta": meta, "columns": list(header), "rows": rows, **extra})
    else:
        text = _csv_text(meta, header, rows, extra if args.output is None else None)
    if args.output is None:
        sys.stdout.write(text)
        return
    out = Path(args.output)
    out.write_text(text)
    if args.format == "csv" and extra:
        out.with_suffix(".json").write_text(_dump_json({"meta": meta, **extra}))


# -- configuration -----------------------------------------------------------

def _resolve_coupling(args):
    """Return (zeta, xi) from --zeta/--xi/--Delta; --xi alone sets zeta = sqrt(xi Delta)."""
    Delta = args.Delta
    if args.xi is None:
        zeta = 1.0 if args.zeta is None else args.zeta
        xi = zeta ** 2 / Delta if Delta > 0 else None
        return zeta, xi
    if args.xi < 0:
        raise ConfigError("--xi must be non-negative")
    if Delta <= 0:
        raise ConfigError("--xi needs --Delta > 0 (xi = zeta^2 / Delta)")
    if args.zeta is None:
        return math.sqrt(args.xi * Delta), args.xi
    implied = args.zeta ** 2 / Delta
    if abs(implied - args.xi) > 1e-12 * max(1.0, args.xi):
        raise ConfigError(f"--xi {args.xi} disagrees with --zeta^2/--Delta = {implied}")
    return args.zeta, args.xi


def _params(args):
    zeta, xi = _resolve_coupling(args)
    try:
        params = SystemParams(Omega=args.Omega, Delta=args.Delta, zeta=zeta,
                              alpha=args.alpha, N=args.N)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    return params, xi


def _p_values(args):
    if args.p_range is None:
        return [float(args.p)]
    start, stop, num = args.p_range
    if num != int(num) or num < 1:
        raise ConfigError("--p-range NUM must be a positive integer")
    if stop < start:
        raise ConfigError("--p-range needs START <= STOP")
    return [float(v) for v in np.linspace(start, stop, int(num))]


def _meta(command, args, params=None, xi=None, **more):
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")}
    meta = {"command": command, "version": __version__, "config": config, "units": UNITS}
    if params is not None:
        meta["resolved"] = {"Omega": params.Omega, "Delta": params.Delta, "zeta": params.zeta,
                            "alpha": params.alpha, "N": params.N, "xi": xi}
        meta["energy_offset"] = params.energy_offset
    meta.update(more)
    return meta


def _is_standing(alpha):
    return abs(alpha - np.pi / 4) <= STANDING_TOL


# -- commands ----------------------------------------------------------------

def cmd_verify(args):
    unknown = [c for c in args.check or [] if c not in SUITES]
    if unknown:
        raise ConfigError(f"unknown check(s) {unknown}; choose from {sorted(SUITES)}")
    if args.n_max < 1:
        raise ConfigError("--n-max must be >= 1")
    if args.n_max < MIN_N_MAX:
        log.warning("n_max=%d is below %d: most plane waves sit at the truncation edge; "
                    "only interior rows are checked", args.n_max, MIN_N_MAX)
    results = run_checks(args.check, n_max=args.n_max, alphas=args.alpha)
    records = [r.to_record() for r in results]
    ok = all(r.passed for r in results)
    if args.format == "json":
        text = _dump_json({"meta": _meta("verify", args), "checks": records, "passed": ok})
    else:
        lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name:32s} defect={r.defect:.3e}  "
                 f"threshold={r.threshold:.1e}  {r.detail}".rstrip() for r in results]
        lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
        text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_spectrum(args):
    params, xi = _params(args)
    ps = _p_values(args)
    if args.n_max < MIN_N_MAX:
        raise ConfigError(f"--n-max must be >= {MIN_N_MAX} for spectra")
    rows = []
    if params.alpha == 0:
        header = ["p", "q", "index", "eps_rel", "lower_weight", "source"]
        for p in ps:
            q = p - round(p)
            states = solve_joint(make_space(params.N, q, args.n_max), params, p, args.k)
            for i, s in enumerate(states):
                rows.append([p, q, i, s.eps_rel, s.lower_weight(), "full"])
            if args.adiabatic:
                if params.N != 1 or xi is None:
                    raise ConfigError("--adiabatic needs N = 1 and Delta > 0")
                for i, e in enumerate(ad.spectrum_traveling(xi, p)):
                    rows.append([p, q, i, e, 1.0, "adiabatic"])
        mode = "traveling"
    else:
        if args.adiabatic:
            raise ConfigError("--adiabatic overlay is defined for --alpha 0 only")
        header = ["p", "q", "index", "eps_rel", "lower_weight"]
        for p in ps:
            # only offsets with p - q integer carry states
            qs = [p - round(p)] if args.q is None else [args.q]
            for q, states in q_scan(params, p, qs, args.n_max, args.k):
                for i, s in enumerate(states):
                    rows.append([p, q, i, s.eps_rel, s.lower_weight()])
        mode = "q-scan"
    meta = _meta("spectrum", args, params, xi, mode=mode)
    _emit(args, meta, header, rows)
    return EXIT_OK


def _edge_records(bs, xi, p):
    floquet = bs.edges()
    try:
        m = ad.mathieu_bands(xi, p, n_levels=max(1, (len(floquet) + 1) // 2))
    except ValueError:
        return [{"label": f"edge{i}", "floquet": e, "mathieu": None, "disagreement": None}
                for i, e in enumerate(floquet)]
    out = []
    for i, e in enumerate(floquet):
        mv = float(m.edges[i]) if i < len(m.edges) else None
        out.append({"label": m.labels[i] if i < len(m.labels) else f"edge{i}",
                    "floquet": e, "mathieu": mv,
                    "disagreement": None if mv is None else abs(e - mv)})
    return out


def cmd_bands(args):
    _, xi = _resolve_coupling(args)
    if xi is None:
        raise ConfigError("bands need xi: pass --xi or --zeta with --Delta > 0")
    if args.eps_max <= args.eps_min:
        raise ConfigError("--eps-max must exceed --eps-min")
    if args.eps_step <= 0 or args.ode_tol <= 0:
        raise ConfigError("--eps-step and --ode-tol must be positive")
    bs = ad.band_structure(xi, args.p, (args.eps_min, args.eps_max), args.eps_step,
                           args.ode_tol, args.quadratic)
    extra = {
        "bands": [{"index": b.index, "lower": b.lower, "upper": b.upper,
                   "open_lower": b.open_lower, "open_upper": b.open_upper} for b in bs.bands],
        "gaps": [{"index": g.index, "lower": g.lower, "upper": g.upper, "width": g.width}
                 for g in bs.gaps],
        "edges": _edge_records(bs, xi, args.p),
        "max_imag_discriminant": bs.max_imag_discriminant,
    }
    meta = _meta("bands", args, xi=xi, basis="standing waves (alpha = pi/4)",
                 energy_offset=args.Omega, resolved={"xi": xi, "p": args.p})
    _emit(args, meta, ["band_index", "eps_rel", "p_quasi"], bs.rows(), extra)
    return EXIT_OK


def cmd_density(args):
    params, xi = _params(args)
    p = float(args.p)
    if args.source == "full":
        if args.n_max < MIN_N_MAX:
            raise ConfigError(f"--n-max must be >= {MIN_N_MAX}")
        q = p - round(p)
        states = solve_joint(make_space(params.N, q, args.n_max), params, p)
        if not 0 <= args.state < len(states):
            raise ConfigError(f"--state must be in [0, {len(states) - 1}]")
        s = states[args.state]
        d = state_density(s, args.samples)
        info = {"eps_rel": s.eps_rel, "lower_weight": s.lower_weight(), "q": q}
    else:
        if xi is None or params.N != 1:
            raise ConfigError("adiabatic densities need N = 1 and Delta > 0")
        if params.alpha == 0:
            eta, a0, a1 = ad.traveling_state(xi, p, args.branch, args.samples)
            d = reduced_density(eta, [a0, a1])
            eps = ad.spectrum_traveling(xi, p)[0 if args.branch == "minus" else 1]
            info = {"eps_rel": eps, "branch": args.branch}
        elif _is_standing(params.alpha):
            eps = args.eps if args.eps is not None else ad.lowest_band_edge(xi, p)
            fs = ad.floquet_state(xi, p, eps, args.samples, quasi_sign=args.quasi_sign)
            d = floquet_density(fs)
            info = {"eps_rel": fs.eps_rel, "p_quasi": fs.p_quasi}
        else:
            raise ConfigError("--source adiabatic supports --alpha 0 or pi/4 only")
    metrics = {"mean": d.mean(), "uniformity": uniformity(d),
               "periodicity_pi": periodicity(d, np.pi), "state": info}
    meta = _meta("density", args, params, xi, source=args.source)
    _emit(args, meta, ["eta", "rho"], list(zip(d.eta, d.rho)), {"metrics": metrics})
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def _add_output(sp):
    sp.add_argument("--output", "-o", help="output file (default: stdout)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_physics(sp, alpha_default=0.0):
    sp.add_argument("--alpha", type=float, default=alpha_default, help="basis angle")
    sp.add_argument("--N", type=int, default=1, help="excitation number")
    sp.add_argument("--zeta", type=float, default=None, help="coupling (default 1)")
    sp.add_argument("--Delta", type=float, default=100.0, help="detuning")
    sp.add_argument("--Omega", type=float, default=100.0, help="mode frequency")
    sp.add_argument("--xi", type=float, default=None, help="light shift zeta^2/Delta")


def build_parser():
    parser = argparse.ArgumentParser(prog="freejc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the self-check suites")
    v.add_argument("--check", action="append", help=f"one of {sorted(SUITES)} (repeatable)")
    v.add_argument("--alpha", type=float, action="append", help="restrict basis angles (repeatable)")
    v.add_argument("--n-max", type=int, default=12)
    _add_output(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("spectrum", help="joint eigenvalues eps - N Omega versus p")
    _add_physics(s)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--p", type=float, default=0.0)
    g.add_argument("--p-range", type=float, nargs=3, metavar=("START", "STOP", "NUM"))
    s.add_argument("--q", type=float, default=None, help="plane-wave offset (alpha != 0)")
    s.add_argument("--n-max", type=int, default=12)
    s.add_argument("--k", type=int, default=None, help="keep the k lowest states per p")
    s.add_argument("--adiabatic", action="store_true", help="overlay the light-shift branches")
    _add_output(s)
    s.set_defaults(func=cmd_spectrum)

    b = sub.add_parser("bands", help="Hill-equation bands at alpha = pi/4")
    b.add_argument("--zeta", type=float, default=None)
    b.add_argument("--Delta", type=float, default=100.0)
    b.add_argument("--Omega", type=float, default=100.0)
    b.add_argument("--xi", type=float, default=None)
    b.add_argument("--p", type=float, default=0.0)
    b.add_argument("--eps-min", type=float, default=-1.0)
    b.add_argument("--eps-max", type=float, default=5.0)
    b.add_argument("--eps-step", type=float, default=0.01)
    b.add_argument("--ode-tol", type=float, default=1e-10)
    b.add_argument("--quadratic", type=float, default=ad.QUADRATIC_COEFF,
                   help="coefficient of xi^2 sin^2 2eta in the Hill potential")
    _add_output(b)
    b.set_defaults(func=cmd_bands)

    d = sub.add_parser("density", help="reduced centre-of-mass density rho(eta)")
    _add_physics(d)
    d.add_argument("--p", type=float, default=0.0)
    d.add_argument("--source", choices=("adiabatic", "full"), default="adiabatic")
    d.add_argument("--branch", choices=("minus", "plus"), default="minus")
    d.add_argument("--eps", type=float, default=None, help="energy inside a band (default: band bottom)")
    d.add_argument("--quasi-sign", type=int, choices=(1, -1), default=1)
    d.add_argument("--state", type=int, default=0, help="state index for --source full")
    d.add_argument("--n-max", type=int, default=12)
    d.add_argument("--samples", type=int, default=512)
    _add_output(d)
    d.set_defaults(func=cmd_density)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, EmptySectorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
