"""Command line front end: ``visangle compute|verify|table|ball``.

Exit status is 0 on success, 1 when a verification suite fails and 2 on
malformed input.  The default seed comes from the ``VISANGLE_SEED``
environment variable when ``--seed`` is not given.
"""

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import lab, metrics, specfun
from .errors import ConvergenceError, DegenerateInputError, DomainError, PoleError, RangeError, UsageError
from .geom import parse_domain
from .verify import SuiteId, VerifyConfig, run_suite

SEED_ENV = "VISANGLE_SEED"
_INPUT_ERRORS = (UsageError, DomainError, RangeError, DegenerateInputError, PoleError)

_TABLE_FNS = {
    "phiK": "phi_K(r), needs --K",
    "mu": "Groetzsch modulus mu(r)",
    "mu_inv": "inverse of mu, argument m > 0",
    "K": "complete elliptic integral of the first kind",
    "E": "complete elliptic integral of the second kind",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _floats(text):
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None
    if not vals:
        raise UsageError("empty number list")
    return vals


def _point(text):
    p = np.array(_floats(text))
    if len(p) < 2 or not np.all(np.isfinite(p)):
        raise UsageError(f"a point needs at least two finite coordinates, got {text!r}")
    return p


def _grid(text):
    """``a:b:step`` (inclusive of b up to rounding) or a comma list."""
    if ":" not in text:
        return np.array(_floats(text))
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"range must look like start:stop:step, got {text!r}")
    a, b, h = (float(v) for v in parts)
    if not h > 0 or b < a:
        raise UsageError("range needs step > 0 and stop >= start")
    count = int(np.floor((b - a) / h + 1e-9)) + 1
    return np.round(a + h * np.arange(count), 12)


def _fmt(value, digits):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating, int, np.integer)):
        return f"{float(value):.{digits}g}"
    return str(value)


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return VerifyConfig().seed
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def _header(config):
    return "# visangle " + " ".join(f"{k}={v}" for k, v in config.items()) + "\n"


def _csv(rows):
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _json(obj):
    return json.dumps(obj, indent=2) + "\n"


# --- subcommands ----------------------------------------------------------------------


def _compute(args, config):
    G = parse_domain(args.domain)
    x, y = _point(args.x), _point(args.y)
    converged = True
    lower = upper = None
    witness = None
    if args.metric == "v":
        res = metrics.vam(G, x, y)
        witness = res.witness
        lower, upper = (float(b) for b in metrics.vam_bounds(G, x, y))
    elif args.metric == "rho":
        res = metrics.rho(G, x, y)
    elif args.metric == "rho_star":
        res = metrics.rho_star(G, x, y)
    elif args.metric == "j":
        res = metrics.jmetric(G, x, y)
    else:
        params = metrics.QhSolverParams(node_count=args.nodes, max_iters=args.max_iters)
        try:
            res = metrics.qh_distance(G, x, y, params)
        except ConvergenceError as exc:
            res, converged = exc.best, False
        lower, upper = res.enclosure
    d = args.digits
    if args.format == "json":
        out = {
            "config": config,
            "result": {
                "metric": args.metric,
                "value": res.value,
                "lower": lower,
                "upper": upper,
                "witness": None if witness is None else [float(v) for v in witness],
                "converged": converged,
            },
        }
        return _json(out), 0
    wit = "" if witness is None else " ".join(_fmt(v, d) for v in witness)
    rows = [["metric", "value", "lower", "upper", "witness", "converged"],
            [args.metric, _fmt(res.value, d), _fmt(lower, d), _fmt(upper, d), wit, _fmt(converged, d)]]
    return _header(config) + _csv(rows), 0


def _verify(args, config):
    kw = {"seed": config["seed"]}
    for name in ("K", "L", "eps"):
        val = getattr(args, name)
        if val is not None:
            kw[f"{name}_list"] = tuple(_floats(val))
    for name in ("pairs", "vk_pairs", "tol"):
        val = getattr(args, name)
        if val is not None:
            kw[name] = val
    cfg = VerifyConfig(**kw)
    report = run_suite(args.suite, cfg)
    code = 0 if report.passed else 1
    if args.format == "json":
        data = report.to_dict()
        data["params"]["cli"] = config
        return _json(data), code
    rows = [["name", "status", "worst_violation", "label"]]
    rows += [[c.name, c.status, _fmt(c.worst_violation, args.digits), c.label] for c in report.checks]
    return _header(config) + _csv(rows), code


def _table(args, config):
    x = _grid(args.r)
    fn = args.fn
    if fn == "phiK":
        if args.K is None:
            raise UsageError("phiK needs --K")
        vals = specfun.phi(float(args.K), x)
    elif fn == "mu":
        vals = specfun.grotzsch_mu(x)
    elif fn == "mu_inv":
        vals = specfun.grotzsch_mu_inv(x)
    elif fn in ("K", "E"):
        pair = specfun.elliptic(x)
        vals = pair.k_value if fn == "K" else pair.e_value
    else:
        try:
            fid = specfun.PaperFunctionId(fn)
        except ValueError:
            choices = ", ".join(list(_TABLE_FNS) + [f.value for f in specfun.PaperFunctionId])
            raise UsageError(f"unknown function {fn!r}; choose from {choices}") from None
        K = None if args.K is None else float(args.K)
        vals = specfun.paper_fn(fid, x, K=K, L=args.L, eps=args.eps)
    vals = np.atleast_1d(vals)
    arg = "m" if fn == "mu_inv" else ("K" if fn in ("VS3_F", "VS3_G") else "r")
    if args.format == "json":
        return _json({"config": config, "rows": [{arg: float(a), fn: float(v)} for a, v in zip(x, vals)]}), 0
    rows = [[arg, fn]] + [[_fmt(a, args.digits), _fmt(v, args.digits)] for a, v in zip(x, vals)]
    return _header(config) + _csv(rows), 0


def _ball(args, config):
    G = parse_domain(args.domain)
    sample = lab.metric_ball_boundary(G, _point(args.center), args.radius, args.metric, args.resolution)
    if args.format == "json":
        return _json({"config": config, **sample.to_dict()}), 0
    return _header(config) + sample.to_csv(args.digits), 0


# --- argument grammar -------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write to this file instead of standard output")
    common.add_argument("--digits", type=int, default=10, help="significant digits (default 10)")
    common.add_argument("--seed", type=int, help=f"random seed (default: ${SEED_ENV} or the built-in seed)")

    p = _Parser(prog="visangle", description="Visual angle metric toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", parents=[common], help="evaluate one metric for one pair of points")
    c.add_argument("--domain", required=True, help="ball:<n>, half:<n> or poly:x1,y1;x2,y2;...")
    c.add_argument("--metric", required=True, choices=["v", "rho", "rho_star", "j", "k"])
    c.add_argument("--x", required=True, help="comma-separated coordinates")
    c.add_argument("--y", required=True, help="comma-separated coordinates")
    c.add_argument("--nodes", type=int, default=64, help="polyline nodes for k")
    c.add_argument("--max-iters", type=int, default=2000, help="solver iteration cap for k")
    c.add_argument("--format", choices=["csv", "json"], default="csv")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", required=True, choices=[s.value for s in SuiteId])
    v.add_argument("--K", help="comma-separated dilatations (default 1,1.25,1.5,2,4)")
    v.add_argument("--L", help="comma-separated bilipschitz constants")
    v.add_argument("--eps", help="comma-separated epsilons in (0, 1)")
    v.add_argument("--pairs", type=int, help="random pairs per domain for the inequality suites")
    v.add_argument("--vk-pairs", type=int, help="random pairs per domain for VK")
    v.add_argument("--tol", type=float, help="slack added to sampled inequalities")
    v.add_argument("--format", choices=["csv", "json"], default="json")

    t = sub.add_parser("table", parents=[common], help="tabulate a special function")
    t.add_argument("--fn", required=True, help="phiK, mu, mu_inv, K, E or a lemma function id such as VS1_F1")
    t.add_argument("--r", required=True, help="start:stop:step or a comma list")
    t.add_argument("--K", type=float)
    t.add_argument("--L", type=float)
    t.add_argument("--eps", type=float)
    t.add_argument("--format", choices=["csv", "json"], default="csv")

    b = sub.add_parser("ball", parents=[common], help="sample a metric sphere")
    b.add_argument("--domain", required=True)
    b.add_argument("--center", required=True)
    b.add_argument("--radius", required=True, type=float)
    b.add_argument("--metric", default="v", choices=list(lab.METRICS))
    b.add_argument("--resolution", type=int, default=64)
    b.add_argument("--format", choices=["csv", "json"], default="csv")
    return p


_HANDLERS = {"compute": _compute, "verify": _verify, "table": _table, "ball": _ball}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if args.digits < 1 or args.digits > 17:
            raise UsageError("--digits must lie between 1 and 17")
        config = {k: v for k, v in vars(args).items() if k not in ("out",) and v is not None}
        config["seed"] = _seed(args)
        text, code = _HANDLERS[args.command](args, config)
    except _INPUT_ERRORS as exc:
        print(f"visangle: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
