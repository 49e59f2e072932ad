"""Command line interface.

Subcommands: synth (integrate a profile to a CSV trace), classify (full
report for one profile), verify (regression suite), oracle (nullspace
detection only), sweep (parameter grids to CSV). JSON output is
deterministic: sorted keys, no timestamps, shortest round-trip floats.

Exit codes: 0 success, 1 fixture failures from verify, 2 input or
configuration validation errors, 3 integration or quadrature failures.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import os
import sys
from typing import Optional

from .classifier import Tolerances, classify_profile, oracle_detect
from .errors import (ConfigError, DegenerateAxisError, ExpressionError,
                     FrameError, GridMismatchError, IntegrationError,
                     OutOfDomainError, ProfileError, QuadratureError)
from .frames import FrameKind
from .hyperbolic import make_h3_type2_profile
from .integrator import integrate_frame, write_trace_csv
from .profiles import CurvatureProfile, load_profile
from .suite import DEFAULT_SEED, load_suite
from .verifier import render_table, run_theorem_suite

log = logging.getLogger("lcl.cli")

_VALIDATION_ERRORS = (ProfileError, ExpressionError, ConfigError,
                      OutOfDomainError, DegenerateAxisError,
                      GridMismatchError, FileNotFoundError,
                      IsADirectoryError, json.JSONDecodeError)
_NUMERIC_ERRORS = (IntegrationError, FrameError, QuadratureError)


def _dumps(obj, pretty: bool) -> str:
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _tolerances(args) -> Tolerances:
    kw = {}
    if getattr(args, "tol_cond", None) is not None:
        kw["eps_cond"] = args.tol_cond
    if getattr(args, "tol_axis", None) is not None:
        kw["eps_axis"] = args.tol_axis
    return Tolerances(**kw)


def _add_common(sub, drift: bool = True, tols: bool = True) -> None:
    sub.add_argument("--h", type=float, default=None,
                     help="integration step (default: span/1000)")
    if drift:
        sub.add_argument("--drift", choices=("monitor", "project"),
                         default="monitor",
                         help="frame drift handling during integration")
    if tols:
        sub.add_argument("--tol-cond", type=float, default=None,
                         help="relative residual tolerance for checks")
        sub.add_argument("--tol-axis", type=float, default=None,
                         help="axis constancy tolerance")


def _add_profile_arg(sub) -> None:
    sub.add_argument("profile", nargs="?", default=None,
                     help="profile JSON file")
    sub.add_argument("-p", "--profile", dest="profile_opt", default=None,
                     help="profile JSON file (alternative to the positional)")


def _profile_path(args) -> str:
    path = args.profile_opt or args.profile
    if path is None:
        raise ConfigError("a profile JSON file is required "
                          "(positional or -p)")
    return path


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lcl",
        description="Curvature-profile laboratory for spacelike curves "
                    "with null frame directions")
    sub = ap.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="integrate a profile to a CSV trace")
    _add_profile_arg(synth)
    synth.add_argument("-o", "--output", default=None,
                       help="output CSV (default: <profile>_trace.csv)")
    synth.add_argument("--emit-gnuplot", action="store_true",
                       help="also write a gnuplot script next to the CSV")
    _add_common(synth, tols=False)

    cls = sub.add_parser("classify", help="classify one profile")
    _add_profile_arg(cls)
    cls.add_argument("--json", action="store_true", dest="as_json",
                     help="compact deterministic JSON (the default)")
    cls.add_argument("--pretty", action="store_true",
                     help="human-readable report instead of JSON")
    cls.add_argument("-o", "--output", default=None)
    _add_common(cls)

    ver = sub.add_parser("verify", help="run the regression suite")
    ver.add_argument("--suite", default=None,
                     help="suite JSON file (default: bundled fixtures)")
    ver.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ver.add_argument("--json", action="store_true", dest="as_json")
    ver.add_argument("--pretty", action="store_true",
                     help="indented JSON (implies --json)")
    ver.add_argument("-o", "--output", default=None)
    _add_common(ver, drift=False)

    orc = sub.add_parser("oracle", help="nullspace axis detection only")
    _add_profile_arg(orc)
    orc.add_argument("--k", type=int, choices=(0, 1, 2, 3), default=None,
                     help="frame row to test (default: all four)")
    orc.add_argument("--json", action="store_true", dest="as_json")
    orc.add_argument("--pretty", action="store_true",
                     help="indented JSON (implies --json)")
    orc.add_argument("-o", "--output", default=None)
    _add_common(orc)

    swp = sub.add_parser("sweep", help="classify a parameter grid to CSV")
    swp.add_argument("spec", help="sweep specification JSON file")
    swp.add_argument("-o", "--output", required=True, help="output CSV")
    _add_common(swp, drift=False)
    return ap


def cmd_synth(args) -> int:
    path = _profile_path(args)
    profile = load_profile(path)
    trace = integrate_frame(profile, h=args.h, drift_mode=args.drift)
    out = args.output
    if out is None:
        stem, _ = os.path.splitext(path)
        out = stem + "_trace.csv"
    write_trace_csv(trace, out)
    print(f"wrote {trace.n} samples to {out} "
          f"(max Gram residual {trace.max_gram_residual:.3e})")
    if args.emit_gnuplot:
        gp = os.path.splitext(out)[0] + ".gp"
        with open(gp, "w", encoding="utf-8") as fh:
            fh.write(_gnuplot_script(os.path.basename(out)))
        print(f"wrote {gp}")
    return 0


def _gnuplot_script(csv_name: str) -> str:
    return (
        "set datafile separator ','\n"
        "set key autotitle columnhead\n"
        "set title 'spatial projection (x2, x3, x4)'\n"
        f"splot '{csv_name}' using 3:4:5 with lines\n"
        "pause -1 'press enter for the Gram residual plot'\n"
        "set title 'frame orthonormality drift'\n"
        "set logscale y\n"
        f"plot '{csv_name}' using 1:22 with lines\n"
        "pause -1\n"
    )


def cmd_classify(args) -> int:
    profile = load_profile(_profile_path(args))
    report = classify_profile(profile, h=args.h, drift_mode=args.drift,
                              tol=_tolerances(args))
    if args.pretty and not args.as_json:
        _emit(_render_report(report), args.output)
    else:
        _emit(_dumps(report.to_json_dict(), pretty=False), args.output)
    return 0


def _render_report(report) -> str:
    lines = [f"profile : {report.label or '(unlabeled)'}",
             f"kind    : {report.kind.value}",
             f"max Gram residual : {report.max_gram_residual:.3e}",
             "verdicts:"]
    for k in range(4):
        res = report.condition_residuals.get(k)
        res_txt = f"residual {res:.3e}" if isinstance(res, float) else "residual n/a"
        ora = report.oracle[k]
        agree = "agrees" if report.agreement[k] else "DISAGREES"
        lines.append(f"  k{k}: {report.verdicts[k].value:<12} ({res_txt}; "
                     f"oracle {ora.verdict.value}, sigma_min "
                     f"{ora.sigma_min:.3e}, {agree})")
    if report.constants:
        lines.append("constants:")
        for name, c in sorted(report.constants.items()):
            lines.append(f"  {name} = {c.value!r} (residual {c.residual:.3e})")
    if report.axes:
        lines.append("axes:")
        for cand, val in report.axes:
            mark = "ok" if val.passed else "FAILED"
            u = ", ".join(f"{x:.6g}" for x in cand.u_at_start())
            lines.append(f"  k{cand.k} [{cand.source}] ({u}) "
                         f"max_dU {val.max_du:.3e} g_var {val.g_variance:.3e} "
                         f"{mark}")
    if report.closure_notes:
        lines.append("closure: " + "; ".join(report.closure_notes))
    if report.pseudohyperbolic:
        hyp = report.pseudohyperbolic
        lines.append(f"pseudohyperbolic family: {hyp['is_h3_family']}"
                     + (f" (c = {hyp['c_ratio']})" if hyp["is_h3_family"] else ""))
    if report.flags:
        lines.append("flags:")
        lines.extend(f"  ! {f}" for f in report.flags)
    return "\n".join(lines)


def cmd_verify(args) -> int:
    fixtures = None
    if args.suite is not None:
        fixtures = load_suite(args.suite)
        if not fixtures:
            print("warning: suite file contains zero fixtures; "
                  "nothing to verify", file=sys.stderr)
            return 0
    summary = run_theorem_suite(fixtures=fixtures, seed=args.seed,
                                tol=_tolerances(args), h=args.h)
    if args.as_json or args.pretty:
        _emit(_dumps(summary.to_json_dict(), args.pretty), args.output)
    else:
        _emit(render_table(summary), args.output)
    log.info("suite runtime %.2f s", summary.runtime)
    return 0 if summary.passed else 1


def cmd_oracle(args) -> int:
    profile = load_profile(_profile_path(args))
    trace = integrate_frame(profile, h=args.h, drift_mode=args.drift)
    ks = [args.k] if args.k is not None else [0, 1, 2, 3]
    tol = _tolerances(args)
    results = {k: oracle_detect(trace, k, tol) for k in ks}
    if args.as_json or args.pretty:
        payload = {f"k{k}": r.to_json_dict() for k, r in results.items()}
        _emit(_dumps(payload, args.pretty), args.output)
    else:
        lines = []
        for k, r in results.items():
            u = (", ".join(f"{x:.6g}" for x in r.vector.to_array())
                 if r.vector else "none")
            note = f" [{r.note}]" if r.note else ""
            lines.append(f"k{k}: {r.verdict.value:<3} sigma_min "
                         f"{r.sigma_min:.3e} threshold {r.threshold:.3e} "
                         f"U = ({u}){note}")
        _emit("\n".join(lines), args.output)
    return 0


# ---------------------------------------------------------------------------
# sweep

_SWEEP_FAMILIES = ("pn-constant", "pn-affine", "psn-quadratic",
                   "h3-exponential")


def _sweep_profile(family: str, params: dict, domain, sigma_extra) -> CurvatureProfile:
    lo, hi = domain
    if family == "pn-constant":
        kappa = f"{params['kappa']!r}"
        tau = f"{params['tau']!r}"
        return CurvatureProfile.create(kind=FrameKind.PARTIALLY_NULL,
                                       kappa=kappa, tau=tau,
                                       domain=(lo, hi))
    if family == "pn-affine":
        k = params["kappa"]
        tau = (f"{k!r}*{params['C']!r}*({params['c0']!r} "
               f"+ {k!r}*(s - {lo!r}))")
        return CurvatureProfile.create(kind=FrameKind.PARTIALLY_NULL,
                                       kappa=f"{k!r}", tau=tau,
                                       domain=(lo, hi))
    if family == "psn-quadratic":
        tau = str(params.get("tau", "1"))
        sigma = f"({tau})*(-s^2/2 + {params['a']!r}*s + {params['b']!r})"
        if sigma_extra:
            sigma = f"({sigma}) + {sigma_extra}"
        return CurvatureProfile.create(kind=FrameKind.PSEUDO_NULL, tau=tau,
                                       sigma=sigma, domain=(lo, hi))
    if family == "h3-exponential":
        p = make_h3_type2_profile(params["c"], params["lam"], params["mu"],
                                  (lo, hi))
        if sigma_extra:
            base = p.to_json_dict()
            sigma = f"({base['sigma']}) + {sigma_extra}"
            return CurvatureProfile.create(kind=FrameKind.PSEUDO_NULL,
                                           tau=base["tau"], sigma=sigma,
                                           domain=(lo, hi))
        return p
    raise ConfigError(f"unknown sweep family {family!r}; expected one of "
                      + ", ".join(_SWEEP_FAMILIES))


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def cmd_sweep(args) -> int:
    import csv as _csv

    with open(args.spec, encoding="utf-8") as fh:
        spec = json.load(fh)
    family = spec.get("family")
    if family not in _SWEEP_FAMILIES:
        raise ConfigError(f"sweep spec needs a family in {_SWEEP_FAMILIES}")
    domain = spec.get("domain")
    if (not isinstance(domain, (list, tuple)) or len(domain) != 2
            or not domain[0] < domain[1]):
        raise ConfigError("sweep spec needs a domain [s_min, s_max]")
    raw_params = spec.get("parameters")
    if not isinstance(raw_params, dict) or not raw_params:
        raise ConfigError("sweep spec needs a non-empty parameters object")
    names = sorted(raw_params)
    values = []
    for name in names:
        vals = raw_params[name]
        if not isinstance(vals, list) or not vals:
            raise ConfigError(f"parameter {name!r} must map to a non-empty list")
        values.append(vals)
    pert = spec.get("sigma_perturbation")
    scales = [None]
    if pert is not None:
        if family.startswith("pn"):
            raise ConfigError("sigma perturbations only apply to pseudo "
                              "null families")
        if not isinstance(pert, dict) or "expr" not in pert:
            raise ConfigError("sigma_perturbation needs an expr")
        scales = [float(s) for s in pert.get("scales", [1.0])]

    tol = _tolerances(args)
    header = (["family"] + names + ["perturbation_scale", "status",
               "k0", "k1", "k2", "k3", "residual_k1", "residual_k2",
               "sigma_min_k0", "sigma_min_k1", "sigma_min_k2",
               "sigma_min_k3", "agree_k0", "agree_k1", "agree_k2",
               "agree_k3", "max_gram_residual"])
    rows = []
    for combo in itertools.product(*values):
        params = dict(zip(names, combo))
        for scale in scales:
            extra = None
            scale_out = 0.0
            if scale is not None and scale != 0.0:
                extra = f"{scale!r}*({pert['expr']})"
                scale_out = scale
            row = [family] + [_fmt(v) for v in combo] + [_fmt(scale_out)]
            try:
                profile = _sweep_profile(family, params, domain, extra)
                report = classify_profile(profile, h=args.h, tol=tol)
            except Exception as exc:
                row += [f"error: {exc}"] + [""] * (len(header) - len(row) - 1)
                rows.append(row)
                continue
            row.append("ok")
            row += [report.verdicts[k].value for k in range(4)]
            row += [_fmt(report.condition_residuals[1]),
                    _fmt(report.condition_residuals[2])]
            row += [_fmt(report.oracle[k].sigma_min) for k in range(4)]
            row += [str(report.agreement[k]) for k in range(4)]
            row.append(_fmt(report.max_gram_residual))
            rows.append(row)

    with open(args.output, "w", newline="", encoding="utf-8") as fh:
        writer = _csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.output}")
    return 0


_COMMANDS = {"synth": cmd_synth, "classify": cmd_classify,
             "verify": cmd_verify, "oracle": cmd_oracle, "sweep": cmd_sweep}


def _configure_logging() -> None:
    level = os.environ.get("LCL_LOG", "error").strip().lower()
    chosen = {"error": logging.ERROR, "info": logging.INFO,
              "debug": logging.DEBUG}.get(level, logging.ERROR)
    logging.basicConfig(stream=sys.stderr, level=chosen,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[list] = None) -> int:
    _configure_logging()
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _NUMERIC_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
