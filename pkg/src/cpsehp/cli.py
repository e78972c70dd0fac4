"""qsolve: command-line front end.

Parameters come from built-in defaults, then a flat ``key = value`` config
file (``--config`` or $QSOLVE_CONFIG), then command-line flags, each
overriding the previous. Exit codes: 0 success, 2 validation or domain
error, 3 numerical non-convergence.
"""

import argparse
import csv
import io
import math
import os
import sys

import numpy as np

from . import __version__
from .curves import PropertyCurve, atomic_write, curve_to_csv, curve_to_json, format_float
from .curves import records_to_json
from .errors import (AssetError, DimensionError, DomainError, GridError, NonConvergence,
                     NumericalError, ValidationError)
from .hft import expval_T, expval_inv_r, expval_inv_r2, expval_p2, expval_screened_inv_r
from .model import PotentialParams, criticality, pekeris_inverse_r, validate
from .nu import QuantumNumbers, enumerate_bound_states, thermo_reduction
from .reference import REPORT_FIELDS, comparison_report, flag_counts
from .superstat import REPORT_NOTE, SuperstatParams, superstat_curve
from .thermo import closed_form_properties, thermo_curve
from .wavefun import density_profile, support_scale

EXIT_OK, EXIT_DOMAIN, EXIT_NUMERIC = 0, 2, 3

PARAM_DEFAULTS = {"v1": 0.1, "v2": 0.02, "B": 0.2, "alpha": 0.01, "mu": 1.0, "hbar": 1.0,
                  "kind": "CPSEHP"}


class UsageError(Exception):
    pass


def load_config(path):
    """Parse a flat ``key = value`` file; '#' starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _add_params(p):
    g = p.add_argument_group("potential parameters")
    for name in ("v1", "v2", "B", "alpha", "mu", "hbar"):
        g.add_argument(f"--{name}", type=float, default=None)
    g.add_argument("--kind", default=None,
                   choices=["CPSEHP", "Hellmann", "Yukawa", "ScreenedHyperbolic", "Coulomb"])


def _add_output(p):
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--out", default=None, help="output path (default: stdout)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qsolve",
        description="Closed-form CPSEHP spectra, expectation values and thermodynamics.",
        epilog="Precedence: flags > config file (--config or $QSOLVE_CONFIG) > defaults.",
    )
    parser.add_argument("--config", default=None, help="flat key = value config file")
    parser.add_argument("--version", action="version", version=f"qsolve {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="closed-form bound-state energies")
    _add_params(p)
    _add_output(p)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--l-max", type=int, default=None)
    p.add_argument("--details", action="store_true",
                   help="add beta_wf, eta and the normalizability flag")

    p = sub.add_parser("density", help="probability density |R(r)|^2")
    _add_params(p)
    _add_output(p)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--points", type=int, default=None)

    p = sub.add_parser("expval", help="Hellmann-Feynman expectation values")
    _add_params(p)
    _add_output(p)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--l-max", type=int, default=None)

    p = sub.add_parser("thermo", help="partition function and thermodynamic properties")
    _add_params(p)
    _add_output(p)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--beta-min", type=float, default=None)
    p.add_argument("--beta-max", type=float, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--compare", action="store_true",
                   help="add closed-form Z, U and C columns (report-only)")

    p = sub.add_parser("superstat", help="superstatistics properties")
    _add_params(p)
    _add_output(p)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--q", type=float, default=None, help="fixed q for a beta sweep")
    p.add_argument("--beta", type=float, default=None, help="fixed beta for a q sweep")
    p.add_argument("--beta-min", type=float, default=None)
    p.add_argument("--beta-max", type=float, default=None)
    p.add_argument("--q-min", type=float, default=None)
    p.add_argument("--q-max", type=float, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--mode", choices=["band", "semi_infinite"], default=None)

    p = sub.add_parser("tables", help="compare against the printed reference tables")
    _add_output(p)
    p.add_argument("--table", default=None, help="1..5 or 'all'")

    p = sub.add_parser("validate", help="validate parameters and report criticality")
    _add_params(p)
    p.add_argument("--l-max", type=int, default=None)

    p = sub.add_parser("pekeris", help="the 1/r approximant against 1/r")
    _add_output(p)
    p.add_argument("--alphas", default=None, help="comma-separated alpha values")
    p.add_argument("--r-min", type=float, default=None)
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    return parser


COMMAND_DEFAULTS = {
    "format": "csv", "out": None, "n_max": 5, "l_max": 3, "n": 0, "l": 0, "r_max": None,
    "points": 400, "beta_min": -5.0, "beta_max": -0.1, "steps": 50, "q": 0.0, "beta": None,
    "q_min": 0.0, "q_max": 1.0, "mode": "band", "table": "all", "alphas": "0.01,0.02,0.03,0.04",
    "r_min": 0.1,
}


def resolve(args):
    """Fill unset options from the config file and then the defaults."""
    path = args.config or os.environ.get("QSOLVE_CONFIG")
    config = load_config(path) if path else {}
    values = dict(vars(args))
    for key, value in values.items():
        if value is not None or key in ("config", "command"):
            continue
        if key in config:
            values[key] = config[key]
        elif key in PARAM_DEFAULTS:
            values[key] = PARAM_DEFAULTS[key]
        elif key in COMMAND_DEFAULTS:
            values[key] = COMMAND_DEFAULTS[key]
    converters = {"n_max": int, "l_max": int, "n": int, "l": int, "points": int, "steps": int}
    for key in ("v1", "v2", "B", "alpha", "mu", "hbar", "r_max", "beta_min", "beta_max",
                "q", "beta", "q_min", "q_max", "r_min"):
        converters[key] = float
    for key, conv in converters.items():
        if key in values and values[key] is not None:
            try:
                values[key] = conv(values[key])
            except (TypeError, ValueError):
                raise UsageError(f"option {key}: cannot convert {values[key]!r}") from None
    return argparse.Namespace(**values)


def params_from(args):
    raw = PotentialParams(v1=args.v1, v2=args.v2, B=args.B, alpha=args.alpha, mu=args.mu,
                          hbar=args.hbar, kind=args.kind)
    return validate(raw)


def _records_text(records, fields, fmt):
    if fmt == "json":
        return records_to_json([{k: r[k] for k in fields} for r in records])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for r in records:
        writer.writerow([format_float(r[k]) if isinstance(r[k], float) else r[k]
                         for k in fields])
    return buf.getvalue()


def _emit(text, args):
    if args.out:
        atomic_write(args.out, text)
    else:
        sys.stdout.write(text)


def _emit_curve(curve, args):
    _emit(curve_to_json(curve) if args.format == "json" else curve_to_csv(curve), args)


def _grid(lo, hi, steps):
    if steps < 1:
        raise UsageError("--steps must be >= 1")
    return np.linspace(lo, hi, steps)


def cmd_spectrum(args):
    params = params_from(args)
    records = []
    for l in range(args.l_max + 1):
        for s in enumerate_bound_states(params, l, args.n_max):
            rec = {"n": s.n, "l": s.l, "E": s.energy}
            if args.details:
                rec.update(beta_wf=s.beta_wf, eta=s.eta, normalizable=s.nu_consistent)
            records.append(rec)
    fields = ["n", "l", "E"] + (["beta_wf", "eta", "normalizable"] if args.details else [])
    _emit(_records_text(records, fields, args.format), args)


def cmd_density(args):
    from .nu import energy

    params = params_from(args)
    qn = QuantumNumbers(args.n, args.l)
    E = energy(params, qn)
    r_max = args.r_max if args.r_max is not None else 30.0 * support_scale(params, qn, E)
    r = np.linspace(0.0, r_max, args.points)
    _emit_curve(density_profile(params, qn, E, r), args)


def cmd_expval(args):
    params = params_from(args)
    records = []
    for l in range(args.l_max + 1):
        for s in enumerate_bound_states(params, l, args.n_max):
            qn = QuantumNumbers(s.n, l)
            records.append({
                "n": s.n, "l": l, "E": s.energy,
                "inv_r2": expval_inv_r2(params, qn),
                "screened_inv_r": expval_screened_inv_r(params, qn),
                "inv_r": expval_inv_r(params, qn),
                "T": expval_T(params, qn),
                "p2": expval_p2(params, qn),
            })
    fields = ["n", "l", "E", "inv_r2", "screened_inv_r", "inv_r", "T", "p2"]
    _emit(_records_text(records, fields, args.format), args)


def cmd_thermo(args):
    params = params_from(args)
    red = thermo_reduction(params, args.l)
    curve = thermo_curve(red, _grid(args.beta_min, args.beta_max, args.steps))
    if args.compare:
        cf = [closed_form_properties(red, b) for b in curve.x]
        for name in "ZUC":
            curve.columns[f"{name}_closed"] = np.array([getattr(p, name) for p in cf])
    _emit_curve(curve, args)


def cmd_superstat(args):
    params = params_from(args)
    red = thermo_reduction(params, args.l)
    if args.beta is not None:
        grid = [SuperstatParams(q, args.beta, args.mode)
                for q in _grid(args.q_min, args.q_max, args.steps)]
        curve = superstat_curve(red, grid, x_name="q")
    else:
        grid = [SuperstatParams(args.q, b, args.mode)
                for b in _grid(args.beta_min, args.beta_max, args.steps)]
        curve = superstat_curve(red, grid, x_name="beta")
    _emit_curve(curve, args)


def cmd_tables(args):
    if args.table == "all":
        ids = (1, 2, 3, 4, 5)
    else:
        try:
            ids = (int(args.table),)
        except ValueError:
            raise UsageError(f"--table must be 1..5 or 'all', got {args.table!r}") from None
        if ids[0] not in range(1, 6):
            raise UsageError(f"--table must be 1..5 or 'all', got {args.table!r}")
    rows = comparison_report(ids)
    records = [{k: getattr(r, k) for k in REPORT_FIELDS} for r in rows]
    _emit(_records_text(records, list(REPORT_FIELDS), args.format), args)
    counts = flag_counts(rows)
    print(" ".join(f"{k}={v}" for k, v in counts.items()), file=sys.stderr)


def cmd_validate(args):
    params = params_from(args)
    print(f"valid: {params}")
    for l in range(args.l_max + 1):
        rep = criticality(params, l)
        state = "supercritical" if rep.supercritical else "ok"
        print(f"l={l} discriminant={format_float(rep.discriminant)} {state}")


def cmd_pekeris(args):
    try:
        alphas = [float(a) for a in str(args.alphas).split(",") if a.strip()]
    except ValueError:
        raise UsageError(f"--alphas: cannot parse {args.alphas!r}") from None
    r = np.linspace(args.r_min, args.r_max if args.r_max is not None else 200.0, args.points)
    cols = {"inv_r": 1.0 / r}
    for a in alphas:
        cols[f"alpha={a:g}"] = pekeris_inverse_r(a, r)
    _emit_curve(PropertyCurve(x_name="r", x=r, columns=cols), args)


COMMANDS = {
    "spectrum": cmd_spectrum, "density": cmd_density, "expval": cmd_expval,
    "thermo": cmd_thermo, "superstat": cmd_superstat, "tables": cmd_tables,
    "validate": cmd_validate, "pekeris": cmd_pekeris,
}


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_DOMAIN
    try:
        args = resolve(args)
        COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qsolve: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValidationError as exc:
        for field_name, msg in exc.violations:
            print(f"qsolve: invalid {field_name}: {msg}", file=sys.stderr)
        return EXIT_DOMAIN
    except (DomainError, GridError, DimensionError, AssetError) as exc:
        print(f"qsolve: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (NonConvergence, NumericalError) as exc:
        print(f"qsolve: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"qsolve: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
