"""Command line interface: ``kdvsharp <airy|propagate|hilbert|check|sharpness|suite> ...``."""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from .airy import airy_ai, find_airy_max
from .families import FAMILY_NAMES
from .grid import boundary_mass, read_csv, write_csv
from .hilbert import hilbert_transform
from .propagator import PropagatorParams, kdv_group
from .reports import reports_to_csv, reports_to_json

CHECKS = ("linfty", "bilinear", "j_forms", "schrodinger", "landau", "besov", "minimizer")


def _floats(text: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}")


def _ints(text: str) -> list:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _warn_json(message, category, filename, lineno, file=None, line=None):
    sys.stderr.write(json.dumps({"warning": category.__name__, "message": str(message)}) + "\n")


def _add_grid(p):
    p.add_argument("--grid-L", type=float, default=60.0, help="half width L of the box [-L, L) (default 60)")
    p.add_argument("--grid-N", type=int, default=2**14, help="number of grid points, a power of two (default 16384)")


def _add_output(p, default_format="csv"):
    p.add_argument("--out", type=Path, default=None, help="output file or directory (default: stdout / $KDVSHARP_OUTPUT_DIR)")
    p.add_argument("--format", choices=("csv", "json"), default=default_format)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kdvsharp", description="Numerical checks of weighted dispersive estimates for the Airy group.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("airy", help="evaluate Ai or locate its maximum")
    asub = p.add_subparsers(dest="airy_command", required=True)
    e = asub.add_parser("eval", help="Ai(z), Ai'(z) and error estimate as JSON")
    e.add_argument("--z", type=float, required=True)
    asub.add_parser("max", help="x0, ||Ai||_inf and 2||Ai||_inf^2 as JSON")

    p = sub.add_parser("propagate", help="apply U(t) to a grid function CSV")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--method", choices=("spectral", "airy_convolution"), default="spectral")
    p.add_argument("--in", dest="inp", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("hilbert", help="Hilbert transform of a grid function CSV")
    p.add_argument("--method", choices=("multiplier", "principal_value", "sinc"), default="multiplier")
    p.add_argument("--in", dest="inp", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("check", help="run one estimate over a test family")
    p.add_argument("estimate", choices=CHECKS)
    p.add_argument("--t", type=_floats, default=[0.5, 1.0, 2.0, 4.0], help="comma separated times")
    p.add_argument("--family", choices=FAMILY_NAMES, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--constants", choices=("stated", "corrected"), default="stated")
    _add_grid(p)
    _add_output(p)

    p = sub.add_parser("sharpness", help="extremizing sequence ratios as CSV n,ratio,bound,gap")
    p.add_argument("--n", type=_ints, default=[8, 16, 32, 64, 128])
    p.add_argument("--constants", choices=("stated", "corrected"), default="stated")
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("suite", help="run every check; exit status 1 if any check fails")
    p.add_argument("--t", type=_floats, default=[0.5, 1.0, 2.0, 4.0])
    p.add_argument("--family", choices=FAMILY_NAMES, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--constants", choices=("stated", "corrected"), default="stated")
    _add_grid(p)
    _add_output(p)
    return ap


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _cmd_airy(args) -> int:
    if args.airy_command == "eval":
        ev = airy_ai(args.z)
        print(json.dumps({"z": ev.z, "value": ev.value, "derivative": ev.derivative, "abs_error_estimate": ev.abs_error_estimate}))
    else:
        ext = find_airy_max()
        print(json.dumps({"x0": ext.x0, "ai_max": ext.ai_max, "sharp_constant": ext.sharp_constant}))
    return 0


def _cmd_propagate(args) -> int:
    f = read_csv(args.inp)
    g = kdv_group(f, PropagatorParams(args.t, args.method))
    frac = boundary_mass(g).tail_fraction
    if frac > 1e-8:
        warnings.warn(f"tail fraction {frac:.3g} after propagation; enlarge --grid-L", RuntimeWarning)
    write_csv(args.out, g)
    return 0


def _cmd_hilbert(args) -> int:
    write_csv(args.out, hilbert_transform(read_csv(args.inp), args.method))
    return 0


def _cmd_check(args) -> int:
    from . import estimates as est
    from .extremizer import verify_minimizer_identity
    from .grid import GridFunction, GridSpec
    from .families import family, standard_family

    if not args.t or any(not t > 0 for t in args.t):
        raise ValueError(f"--t values must all be > 0, got {args.t}")
    spec = GridSpec(args.grid_L, args.grid_N)
    members = standard_family(args.seed) if args.family is None else family(args.family, args.seed)
    partner = GridFunction.from_callable(spec, lambda x: np.exp(-((x - 0.5) ** 2)) * (1.0 + 0.3 * x))
    rows = []
    if args.estimate == "minimizer":
        rows = [verify_minimizer_identity(lam, spec) for lam in (1.0, 3.0)]
    elif args.estimate == "besov":
        for t in args.t:
            g = est.scaling_orbit(lambda x: est.bump(x / 4.0), spec, t, rescale_grid=False)
            rows.append(est.check_besov_decay(kdv_group(g, t), t, back=g))
    else:
        for t in sorted(args.t):
            for m in members:
                phi = GridFunction.from_callable(spec, m.fn)
                if args.estimate == "linfty":
                    rows.append(est.check_linfty_estimate(phi, t, constants=args.constants))
                elif args.estimate == "bilinear":
                    rows.append(est.check_bilinear_estimate(phi, partner, t, "statement"))
                    rows.append(est.check_bilinear_estimate(phi, partner, t, "proof"))
                elif args.estimate == "j_forms":
                    rows.extend(est.check_j_form_estimates(phi, partner, t, args.constants))
                elif args.estimate == "schrodinger":
                    rows.append(est.check_schrodinger_estimate(phi, t, args.constants))
                else:
                    rows.append(est.check_landau_inequality(phi))
            if args.estimate == "landau":
                break
    text = reports_to_csv(rows) if args.format == "csv" else reports_to_json(rows)
    _emit(text, args.out)
    return 0 if all(r.passes for r in rows if r.numeric) else 1


def _cmd_sharpness(args) -> int:
    from .extremizer import sharpness_experiment
    from .suite import sharpness_csv

    res = sharpness_experiment(args.n, args.constants)
    _emit(sharpness_csv(res), args.out)
    return 0 if res.all_pass else 1


def _cmd_suite(args) -> int:
    from .suite import RunConfig, default_output_dir, run_suite

    cfg = RunConfig(
        grid_L=args.grid_L,
        grid_N=args.grid_N,
        t_values=tuple(args.t),
        test_family=args.family,
        seed=args.seed,
        output_dir=args.out if args.out is not None else default_output_dir(),
        format=args.format,
        constants=args.constants,
    )
    res = run_suite(cfg)
    s = res.summary
    print(f"{s['pass_count']} passed, {s['fail_count']} failed, max ratio {s['max_ratio']:.6g}; reports in {cfg.output_dir}")
    for r in res.reports:
        if not r.passes:
            print(f"FAIL {r.name} t={r.t:g} ratio={r.ratio:.6g} constant={r.claimed_constant} {r.metadata.get('member', '')}")
    return 0 if res.all_pass else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    warnings.showwarning = _warn_json
    handlers = {
        "airy": _cmd_airy,
        "propagate": _cmd_propagate,
        "hilbert": _cmd_hilbert,
        "check": _cmd_check,
        "sharpness": _cmd_sharpness,
        "suite": _cmd_suite,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"kdvsharp {args.command}: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
