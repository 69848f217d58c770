"""Command-line interface.

Every subcommand writes CSV (or JSON with --json) to --out or stdout, led by
'#' provenance lines: package version, command, full parameter set, seed and
digits.  Exit status is 0 when every check in the run passes, 1 on a failed
check or a domain error, 2 on a usage error.
"""
import argparse
import csv
import io
import json
import math
import sys

import mpmath
import numpy as np

from . import __version__, acceptance, dpp, numerics, painleve
from .errors import WhitkernError
from .kernels import factorization_lhs, factorization_rhs, whittaker_dpp_kernel
from .moments import (WeightSpec, hankel_det, hankel_det_restricted, moment_quad,
                      moment_whittaker)
from .results import CheckResult, rel_err
from .specfun import WhittakerIndex, whittaker_w, whittaker_w_deriv

# descriptive check names, with the numeric labels used elsewhere as aliases
IDENTITY_ALIASES = {"2.5": "hankel-operator-det", "2.16": "laguerre-minor", "4.1": "kernel-factorization",
                    "4.12": "resolvent-diagonal", "4.13": "endpoint-log-derivative",
                    "4.20": "paired-hankel-det", "5.6": "composed-kernel", "5.14": "block-inverse",
                    "6.10": "stieltjes-eigenrelation", "6.14": "norm-bound", "6.15": "trace"}


class UsageError(Exception):
    pass


def _number(s):
    """Real or complex number from a string such as '0.25', '0.25j' or '1+2j'."""
    s = str(s).strip()
    try:
        return float(s)
    except ValueError:
        try:
            z = complex(s.replace("i", "j"))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"not a number: {s!r}") from exc
        return z.real if z.imag == 0 else z


def _floats(s):
    try:
        return [float(v) for v in str(s).split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {s!r}") from exc


def _ints(s):
    try:
        return [int(v) for v in str(s).split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from exc


def _interval(s):
    v = _floats(s)
    if len(v) != 2 or not v[0] < v[1]:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi' with lo < hi, got {s!r}")
    return tuple(v)


def _fmt(v):
    if isinstance(v, mpmath.mpf):
        return mpmath.nstr(v, 30, min_fixed=-5, max_fixed=5)
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, complex):
        return repr(v)
    return str(v)


def _jsonable(v):
    if isinstance(v, mpmath.mpf):
        return _fmt(v)
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return v.item()
    if isinstance(v, complex):
        return repr(v)
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    return v


class Output:
    """Collects header lines and rows, then renders CSV or JSON deterministically."""

    def __init__(self, args, command, quantity):
        self.args = args
        self.header = {"version": __version__, "command": command, "quantity": quantity,
                       "params": {k: _jsonable(_param(v)) for k, v in sorted(vars(args).items())
                                  if k not in ("func", "out", "json", "config", "command")},
                       "seed": getattr(args, "seed", None), "digits": args.digits}
        self.columns = None
        self.rows = []

    def add(self, row):
        if self.columns is None:
            self.columns = list(row)
        self.rows.append(row)

    def render(self):
        if self.args.json:
            return json.dumps({**self.header, "columns": self.columns or [],
                               "rows": [{k: _jsonable(v) for k, v in r.items()} for r in self.rows]},
                              indent=1, sort_keys=False) + "\n"
        buf = io.StringIO()
        buf.write(f"# whitkern {self.header['version']}\n")
        buf.write(f"# command: {self.header['command']}\n")
        buf.write(f"# quantity: {self.header['quantity']}\n")
        buf.write(f"# params: {json.dumps(self.header['params'], sort_keys=True)}\n")
        buf.write(f"# seed: {self.header['seed']}\n")
        buf.write(f"# digits: {self.header['digits']}\n")
        if self.columns:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.columns)
            for r in self.rows:
                w.writerow([_fmt(r.get(c, "")) for c in self.columns])
        return buf.getvalue()


def _param(v):
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt(x) for x in v)
    return v


def _write(args, text):
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as f:
            f.write(text)


def _check_rows(out, results):
    ok = True
    for r in results:
        row = {"identity": r.name, "params": json.dumps({k: _jsonable(v) for k, v in r.params.items()},
                                                       sort_keys=True),
               "lhs": r.lhs, "rhs": r.rhs, "residual": r.residual, "tol": r.tol, "pass": r.passed}
        out.add(row)
        ok &= r.passed
    return ok


# ---- subcommands ------------------------------------------------------------------

def cmd_eval_whittaker(args):
    out = Output(args, "eval-whittaker", "W_{kappa,mu}(x) and its x-derivative")
    for x in args.x:
        out.add({"kappa": args.kappa, "mu": args.mu, "x": x,
                 "W": float(whittaker_w(args.kappa, args.mu, x, args.levels)),
                 "dW": float(whittaker_w_deriv(args.kappa, args.mu, x, args.levels))})
    return out, True


def cmd_moments(args):
    out = Output(args, "moments", "moments of x^b (1-x)^a e^{-t/x} on (0,1)")
    spec = WeightSpec(args.a, args.b, args.t)
    forms = ["direct", "xi", "whittaker"] if args.form == "all" else [args.form]
    ok = True
    with numerics.digits(args.digits):
        for m in args.m:
            vals = {f: (moment_whittaker(spec, m) if f == "whittaker" else moment_quad(spec, m, f))
                    for f in forms}
            row = {"m": m, **{f"mu_{f}": v for f, v in vals.items()}}
            if len(forms) > 1:
                spread = max(float(abs(v - vals["direct"]) / abs(vals["direct"])) for v in vals.values())
                row["max_rel_spread"] = spread
                ok &= spread <= args.tol
            out.add(row)
    return out, ok


def cmd_hankel_det(args):
    out = Output(args, "hankel-det", "Hankel determinant of the moment matrix")
    spec = WeightSpec(args.a, args.b, args.t)
    with numerics.digits(args.digits):
        if args.s is None:
            val = hankel_det(spec, args.N, args.digits)
        else:
            val = hankel_det_restricted(spec, args.N, args.s, args.digits)
        out.add({"N": args.N, "a": args.a, "b": args.b, "t": args.t, "s": "" if args.s is None else args.s,
                 "det": float(val), "det_mp": val})
    return out, True


def _identity_results(name, args):
    from . import operators as op
    if name == "hankel-operator-det":
        return [op.det_identity_25((args.kappa, args.mu), args.eps, args.lam, alpha=args.alpha)]
    if name == "laguerre-minor":
        minor, predicted, literal = op.laguerre_leading_minor(WhittakerIndex.of(args.kappa, args.mu), args.alpha, 2,
                                                            args.eps)
        return [CheckResult(name, {"kappa": args.kappa, "mu": args.mu, "alpha": args.alpha, "N": 2},
                            float(minor), float(predicted), rel_err(minor, predicted), 1e-8,
                            {"literal_prefactor": float(literal)})]
    if name == "kernel-factorization":
        return acceptance.criterion_6()
    if name in ("resolvent-diagonal", "endpoint-log-derivative"):
        return [r for r in acceptance.criterion_7() if r.name.startswith(name)]
    if name == "paired-hankel-det":
        return acceptance.criterion_8()
    if name in ("composed-kernel", "block-inverse"):
        return acceptance.criterion_9()
    if name in ("stieltjes-eigenrelation", "norm-bound", "trace"):
        return [r for r in acceptance.criterion_10() if r.name.startswith(name.split("-")[0])]
    raise UsageError(f"unknown identity {name!r}")


def cmd_identity_check(args):
    name = IDENTITY_ALIASES.get(args.which, args.which)
    out = Output(args, "identity-check", f"both sides of the {name} identity")
    ok = _check_rows(out, _identity_results(name, args))
    return out, ok


def cmd_painleve_check(args):
    with numerics.digits(args.digits):
        if args.eq == "pv":
            out = Output(args, "painleve-check", "normalized residual of sigma-form Painleve V")
            s = painleve.sigma_pv_residual(args.N, args.a, args.b, args.t0, args.h, args.stencil, args.digits)
            passed = s.residual <= args.tol
            out.add({"N": args.N, "a": args.a, "b": args.b, "t0": args.t0, "h": args.h,
                     "residual": s.residual, "normalizer": s.normalizer, "pass": passed})
        else:
            out = Output(args, "painleve-check", "normalized residual of sigma-form Painleve VI")
            s = painleve.sigma_pvi_residual(args.N, args.a, args.b, args.t0, args.h, args.d1, args.d2,
                                            args.stencil, args.reflect, args.digits)
            passed = s.residual <= args.tol
            out.add({"N": args.N, "a": args.a, "b": args.b, "s0": args.t0, "h": args.h,
                     "reflect": args.reflect, "d1": s.fit[0], "d2": s.fit[1],
                     "residual": s.residual, "normalizer": s.normalizer, "pass": passed})
    return out, passed


def cmd_gap_prob(args):
    out = Output(args, "gap-prob", "probability of no points in [lo, s] for the Whittaker kernel")
    kern = whittaker_dpp_kernel(args.a)
    for s in np.linspace(args.smax / args.steps, args.smax, args.steps):
        out.add({"s": float(s), "P": dpp.gap_probability(kern, float(s), args.lo, args.n)})
    return out, True


def cmd_dpp_sample(args):
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    kern = whittaker_dpp_kernel(args.a)
    dec = dpp.mercer(kern, args.interval, args.nodes)
    samples = dpp.Sampler(dec, args.grid).sample(args.n, args.seed)
    out = Output(args, "dpp-sample", "one point configuration per line, points space-separated")
    if args.json:
        for i, s in enumerate(samples):
            out.add({"sample": i, "points": " ".join(repr(float(x)) for x in s)})
        return out, True
    lines = [ln for ln in out.render().splitlines() if ln.startswith("#")]
    lines += [" ".join(repr(float(x)) for x in s) for s in samples]
    return "\n".join(lines) + "\n", True


def cmd_kernel_check(args):
    out = Output(args, "kernel-check", "kernel representations and spectrum")
    rows = []
    direct = whittaker_dpp_kernel(args.a, "direct")
    stieltjes = whittaker_dpp_kernel(args.a)
    x = np.array(args.x)
    pairs = [(direct.matrix(x)[i, j], stieltjes.matrix(x)[i, j]) for i in range(x.size) for j in range(x.size)]
    errs = [rel_err(p, q) for p, q in pairs]
    k = int(np.argmax(errs))
    rows.append(CheckResult("dpp-kernel-forms", {"a": args.a}, pairs[k][0], pairs[k][1], errs[k], 1e-8))
    lam = dpp.nystrom(stieltjes, args.interval, args.nodes, dpp.default_rule(args.interval)).eigenvalues
    rows.append(CheckResult("dpp-eigenvalues", {"a": args.a, "interval": _param(args.interval)},
                            float(lam.min()), float(lam.max()), max(0.0, -lam.min(), lam.max() - 1), 1e-10))
    if args.kappa is not None:
        mu = 0.0 if args.mu is None else args.mu
        pairs = [(float(np.squeeze(factorization_lhs(args.kappa, mu, p, q))),
                  float(np.squeeze(factorization_rhs(args.kappa, mu, p, q))))
                 for p in x for q in x if p != q]
        errs = [rel_err(p, q) for p, q in pairs]
        k = int(np.argmax(errs))
        rows.append(CheckResult("kernel-factorization", {"kappa": args.kappa, "mu": str(mu)},
                                pairs[k][0], pairs[k][1], errs[k], 1e-7))
    return out, _check_rows(out, rows)


def cmd_report(args):
    results = acceptance.run(args.criteria, args.seed)
    out = Output(args, "report", "acceptance suite: one row per check")
    ok = True
    summary = []
    for k, rows in results.items():
        crit_ok = all(r.passed for r in rows)
        ok &= crit_ok
        summary.append((k, crit_ok))
        for r in rows:
            out.add({"criterion": k, "identity": r.name,
                     "params": json.dumps({p: _jsonable(v) for p, v in r.params.items()}, sort_keys=True),
                     "lhs": r.lhs, "rhs": r.rhs, "residual": r.residual, "tol": r.tol, "pass": r.passed})
    n_pass = sum(r["pass"] for r in out.rows)
    lines = [f"criterion {k:2d} {'PASS' if c else 'FAIL'}  {acceptance.TITLES[k]}" for k, c in summary]
    lines.append(f"{n_pass}/{len(out.rows)} checks passed")
    sys.stderr.write("\n".join(lines) + "\n")
    return out, ok


# ---- parser ----------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="whitkern", description="Whittaker kernels, Hankel determinants "
                                "and the associated point processes.")
    p.add_argument("--version", action="version", version=f"whitkern {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--json", action="store_true", help="write JSON instead of CSV")
    common.add_argument("--config", default=None, help="JSON file of default parameters")
    common.add_argument("--digits", type=int, default=numerics.DEFAULT_DIGITS,
                        help="working decimal digits (default $WHITKERN_DIGITS or 120)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval-whittaker", parents=[common], help="W and W' at points x")
    s.add_argument("--kappa", type=float, required=True)
    s.add_argument("--mu", type=_number, required=True, help="real, or imaginary such as 0.25j")
    s.add_argument("--x", type=_floats, required=True, help="comma-separated x > 0")
    s.add_argument("--levels", type=int, default=10)
    s.set_defaults(func=cmd_eval_whittaker)

    s = sub.add_parser("moments", parents=[common], help="moments of the deformed Jacobi weight")
    s.add_argument("--a", type=float, required=True)
    s.add_argument("--b", type=float, required=True)
    s.add_argument("--t", type=float, default=0.0)
    s.add_argument("--m", type=_ints, default=[0, 1, 2])
    s.add_argument("--form", choices=["direct", "xi", "whittaker", "all"], default="direct")
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_moments)

    s = sub.add_parser("hankel-det", parents=[common], help="Hankel determinant of moments")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--a", type=float, required=True)
    s.add_argument("--b", type=float, required=True)
    s.add_argument("--t", type=float, default=0.0)
    s.add_argument("--s", type=float, default=None, help="restrict the moments to [s, 1]")
    s.set_defaults(func=cmd_hankel_det)

    s = sub.add_parser("identity-check", parents=[common], help="verify one operator identity")
    s.add_argument("--which", required=True,
                   choices=sorted(set(IDENTITY_ALIASES.values())) + sorted(IDENTITY_ALIASES))
    s.add_argument("--kappa", type=float, default=0.0)
    s.add_argument("--mu", type=float, default=0.25)
    s.add_argument("--eps", type=float, default=0.1)
    s.add_argument("--lam", type=float, default=1.0)
    s.add_argument("--alpha", type=float, default=0.0)
    s.set_defaults(func=cmd_identity_check)

    s = sub.add_parser("painleve-check", parents=[common], help="sigma-form Painleve residuals")
    s.add_argument("--eq", choices=["pv", "pvi"], required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--a", type=float, default=0.0)
    s.add_argument("--b", type=float, default=0.0)
    s.add_argument("--t0", type=float, default=0.5, help="t0 for pv, restriction point s0 for pvi")
    s.add_argument("--h", type=float, default=1e-3)
    s.add_argument("--stencil", type=int, choices=[3, 5], default=5)
    s.add_argument("--d1", type=float, default=None)
    s.add_argument("--d2", type=float, default=None)
    s.add_argument("--reflect", action="store_true", help="pvi in the variable 1 - s")
    s.add_argument("--tol", type=float, default=None)
    s.set_defaults(func=cmd_painleve_check)

    s = sub.add_parser("gap-prob", parents=[common], help="gap probability curve (s, P)")
    s.add_argument("--a", type=float, required=True)
    s.add_argument("--smax", type=float, required=True)
    s.add_argument("--steps", type=int, default=20)
    s.add_argument("--lo", type=float, default=dpp.DEFAULT_LO)
    s.add_argument("--n", type=int, default=120)
    s.set_defaults(func=cmd_gap_prob)

    s = sub.add_parser("dpp-sample", parents=[common], help="exact samples of the Whittaker process")
    s.add_argument("--a", type=float, required=True)
    s.add_argument("--interval", type=_interval, default=(dpp.DEFAULT_LO, 4.0))
    s.add_argument("--n", type=int, default=10)
    s.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    s.add_argument("--nodes", type=int, default=200)
    s.add_argument("--grid", type=int, default=2048)
    s.set_defaults(func=cmd_dpp_sample)

    s = sub.add_parser("kernel-check", parents=[common], help="kernel forms, spectrum, factorization")
    s.add_argument("--a", type=float, default=0.2)
    s.add_argument("--x", type=_floats, default=[0.3, 1.0, 2.5])
    s.add_argument("--interval", type=_interval, default=(dpp.DEFAULT_LO, 4.0))
    s.add_argument("--nodes", type=int, default=120)
    s.add_argument("--kappa", type=float, default=None)
    s.add_argument("--mu", type=_number, default=None)
    s.set_defaults(func=cmd_kernel_check)

    s = sub.add_parser("report", parents=[common], help="run the acceptance suite")
    s.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    s.add_argument("--criteria", type=_ints, default=None, help="subset, e.g. 1,2,3")
    s.set_defaults(func=cmd_report)
    return p


def _apply_config(parser, argv):
    """Parse argv with defaults taken from the --config JSON file, if any.

    Command-line flags override config values; config keys must name options
    of the chosen subcommand.
    """
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, rest = pre.parse_known_args(argv)
    if known.config is None:
        return parser.parse_args(argv)
    subs = parser._subparsers._group_actions[0].choices
    command = next((a for a in rest if a in subs), None)
    if command is None:
        return parser.parse_args(argv)
    try:
        with open(known.config) as f:
            cfg = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config {known.config}: {exc}")
    if not isinstance(cfg, dict):
        parser.error("config must be a JSON object")
    sub = subs[command]
    dests = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, val in cfg.items():
        dest = key.replace("-", "_")
        if dest not in dests or dest in ("config", "func", "help"):
            parser.error(f"unknown config key {key!r} for {command}")
        action = dests[dest]
        try:
            defaults[dest] = action.type(val if isinstance(val, str) else _param(val)) \
                if action.type and not isinstance(val, bool) else val
        except (argparse.ArgumentTypeError, ValueError) as exc:
            parser.error(f"bad config value for {key!r}: {exc}")
        # an option supplied by the config is no longer required on the command line
        action.required = False
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = _apply_config(parser, argv)
    if getattr(args, "tol", "unset") is None:
        args.tol = 1e-4 if args.eq == "pv" else 1e-3
    try:
        with numerics.digits(args.digits):
            result, ok = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (WhitkernError, ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"whitkern: error: {exc}\n")
        return 1
    _write(args, result if isinstance(result, str) else result.render())
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
