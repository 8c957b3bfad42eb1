"""Command-line front end: classifiers, certificate solvers, experiment scans.

Exact rationals are written as `p/q`, integers, or `inf`; decimal input is
rejected for classifier and feasibility parameters so boundary decisions
stay exact.  Integer ranges are written `a..b`.  Scans write CSV with
`#key=value` metadata lines (sorted keys), a header row, then data rows in
17-significant-digit decimals with LF line endings.

Exit codes: 0 success, 1 argument errors, 2 numerical failures.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from .errors import ConfigurationError, NumericalError
from .exponents import (
    DomainError,
    ExtScalar,
    RadialParams,
    SeparableParams,
    Verdict,
    classify_radial,
    classify_separable,
    riesz_diagram,
)
from .experiments import (
    PittResult,
    ScanResult,
    constant_density_sums,
    dual_scan,
    knapp_scan,
    l2_endpoint_scan,
    pitt_sweep,
)
from .feasibility import Infeasible, solve_one, solve_two
from .analysis import cosine_weight_kernel, fresnel_constant

__all__ = ["main", "run", "write_csv", "scan_to_csv"]


def _rational(text: str) -> ExtScalar:
    try:
        return ExtScalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(
            f"{text!r} is not an exact rational (use p/q, an integer, or 'inf')"
        ) from exc


def _int_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, _, hi = text.partition("..")
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise ValueError
            return list(range(lo_i, hi_i + 1))
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"{text!r} is not an integer range 'a..b' or comma list"
        ) from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma list of integers") from exc


def _fmt(x: float) -> str:
    return format(x, ".17g")


def scan_to_csv(result: ScanResult) -> str:
    lines = [f"#{k}={result.metadata[k]}" for k in sorted(result.metadata)]
    lines.append("param,lhs,rhs,ratio,log2_param,log2_ratio")
    for s in result.samples:
        lines.append(
            ",".join(
                [
                    _fmt(s.param),
                    _fmt(s.lhs),
                    _fmt(s.rhs),
                    _fmt(s.ratio),
                    _fmt(math.log2(s.param)),
                    _fmt(math.log2(s.ratio)),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _pitt_to_csv(result: PittResult) -> str:
    lines = [f"#{k}={result.metadata[k]}" for k in sorted(result.metadata)]
    lines.append("scale,variant,ratio")
    for scale, variant, ratio in result.ratios:
        lines.append(f"{_fmt(scale)},{variant},{_fmt(ratio)}")
    return "\n".join(lines) + "\n"


def write_csv(text: str, path: str | None) -> None:
    """Write CSV bytes to a path (LF endings) or echo to stdout."""
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", newline="\n") as handle:
        handle.write(text)


def _verdict_payload(verdict: Verdict, params: dict[str, ExtScalar]) -> dict:
    payload = {"decision": verdict.decision}
    if verdict.bounded:
        payload["case"] = verdict.case_tag
    else:
        payload["violated"] = verdict.violated
    payload.update({k: str(v) for k, v in params.items()})
    return payload


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="restriction-lab",
        description="Sharp weighted circle-extension estimates: classifiers, "
        "certificates, and counterexample scans.",
    )
    parser.add_argument("--config", help="file of key=value defaults (flags override)")
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker hint; wall time only, never output bytes "
        "(default: RESTRICTION_LAB_THREADS or machine parallelism)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("classify", help="decide boundedness of a weighted estimate")
    p.add_argument("--kind", choices=("separable", "radial"), required=True)
    p.add_argument("--alpha", type=_rational, help="separable weight exponent (exact)")
    p.add_argument("--beta", type=_rational, help="separable weight exponent (exact)")
    p.add_argument("--gamma", type=_rational, help="radial weight exponent (exact)")
    p.add_argument("--r", type=_rational, required=True, help="source exponent in [1,inf]")
    p.add_argument("--q", type=_rational, required=True, help="target exponent in (0,inf]")
    add_format(p)

    p = sub.add_parser("diagram", help="classify a (1/r, 1/q) grid at fixed weights")
    p.add_argument("--kind", choices=("separable", "radial"), required=True)
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--beta", type=_rational)
    p.add_argument("--gamma", type=_rational)
    p.add_argument("--grid-n", type=int, required=True)
    add_format(p)

    p = sub.add_parser("feasibility", help="interpolation-exponent certificates")
    p.add_argument("--prop", choices=("one", "two"), required=True)
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--beta", type=_rational)
    p.add_argument("--gamma", type=_rational)
    p.add_argument("--r", type=_rational, required=True)
    p.add_argument("--q", type=_rational, required=True)
    add_format(p)

    p = sub.add_parser("knapp", help="cap-density scaling scan")
    p.add_argument("--kind", choices=("separable", "radial"), required=True)
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--beta", type=_rational)
    p.add_argument("--gamma", type=_rational)
    p.add_argument("--r", type=_rational, required=True)
    p.add_argument("--q", type=_rational, required=True)
    p.add_argument("--delta-exps", type=_int_range, default=list(range(2, 6)),
                   help="k values for delta = 2^-k, e.g. 2..5")
    add_format(p)

    p = sub.add_parser("constant", help="constant-density partial sums")
    p.add_argument("--kind", choices=("separable", "radial"), required=True)
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--beta", type=_rational)
    p.add_argument("--gamma", type=_rational)
    p.add_argument("--q", type=_rational, required=True)
    p.add_argument("--n-list", type=_int_list, default=[10**4, 10**5])
    p.add_argument("--rings", type=int, default=0,
                   help="cross-check against the extrema-annulus masses (0 = off)")
    add_format(p)

    p = sub.add_parser("l2-endpoint", help="L2 endpoint blow-up scan")
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--beta", type=_rational, required=True)
    p.add_argument("--r", type=_rational, required=True)
    p.add_argument("--delta", type=float, default=0.25)
    p.add_argument("--eps-exps", type=_int_range, default=list(range(3, 8)))
    add_format(p)

    p = sub.add_parser("pitt", help="weighted weak-norm dilation sweep")
    p.add_argument("--beta", type=_rational, required=True)
    p.add_argument("--p", type=_rational, required=True)
    p.add_argument("--q", type=_rational, required=True)
    p.add_argument("--scale-exps", type=_int_range, default=list(range(-6, 7)),
                   help="k values for s = 2^k")
    add_format(p)

    p = sub.add_parser("dual", help="dual restricted-norm blow-up scan")
    p.add_argument("--kind", choices=("separable", "radial"), required=True)
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--beta", type=_rational)
    p.add_argument("--gamma", type=_rational)
    p.add_argument("--r", type=_rational, required=True)
    p.add_argument("--q", type=_rational, required=True)
    p.add_argument("--eps-exps", type=_int_range, default=list(range(3, 8)))
    add_format(p)

    p = sub.add_parser("oscint", help="decaying-cosine kernel and its small-lambda law")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--lam", type=float, required=True)
    add_format(p)

    return parser


def _require(args, names: list[str]) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise DomainError(f"missing required exact parameters: {', '.join(missing)}")


def _weights(args) -> dict[str, ExtScalar]:
    if args.kind == "separable":
        _require(args, ["alpha", "beta"])
        return {"alpha": args.alpha, "beta": args.beta}
    _require(args, ["gamma"])
    return {"gamma": args.gamma}


def _cmd_classify(args) -> int:
    weights = _weights(args)
    if args.kind == "separable":
        verdict = classify_separable(
            SeparableParams(args.alpha, args.beta, args.r, args.q)
        )
    else:
        verdict = classify_radial(RadialParams(args.gamma, args.r, args.q))
    params = dict(weights)
    params.update({"r": args.r, "q": args.q})
    if args.format == "json":
        write_csv(json.dumps(_verdict_payload(verdict, params)) + "\n", args.out)
    else:
        write_csv(str(verdict) + "\n", args.out)
    return 0


def _cmd_diagram(args) -> int:
    weights = _weights(args)
    rows = riesz_diagram(args.kind, weights, args.grid_n)
    meta = {k: str(v) for k, v in weights.items()}
    meta.update({"kind": args.kind, "grid_n": str(args.grid_n)})
    lines = [f"#{k}={meta[k]}" for k in sorted(meta)]
    lines.append("inv_r,inv_q,decision,case")
    for row in rows:
        lines.append(f"{row.inv_r},{row.inv_q},{row.verdict.decision},{row.verdict.label}")
    write_csv("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_feasibility(args) -> int:
    if args.prop == "one":
        _require(args, ["alpha", "beta"])
        outcome = solve_one(args.alpha, args.beta, args.r, args.q)
    else:
        _require(args, ["gamma"])
        outcome = solve_two(args.gamma, args.r, args.q)
    if isinstance(outcome, Infeasible):
        if args.format == "json":
            write_csv(json.dumps({"feasible": False, "reason": outcome.reason}) + "\n",
                      args.out)
        else:
            write_csv("INFEASIBLE\n", args.out)
    else:
        if args.format == "json":
            payload = {"feasible": True}
            payload.update(
                dict(part.split("=") for part in outcome.record().split(" "))
            )
            write_csv(json.dumps(payload) + "\n", args.out)
        else:
            write_csv(f"FEASIBLE {outcome.record()}\n", args.out)
    return 0


def _scan_output(args, result: ScanResult) -> int:
    if args.format in ("csv",):
        write_csv(scan_to_csv(result), args.out)
        return 0
    if args.format == "json":
        payload = {
            "samples": [
                {"param": s.param, "lhs": s.lhs, "rhs": s.rhs, "ratio": s.ratio}
                for s in result.samples
            ],
            "fitted_slope": result.fitted.slope,
            "stderr": result.fitted.stderr,
            "r_squared": result.fitted.r_squared,
            "predicted_slope": str(result.predicted.slope),
            "log_flag": result.predicted.log_flag,
        }
        write_csv(json.dumps(payload) + "\n", args.out)
        return 0
    lines = [
        f"fitted slope {result.fitted.slope:+.4f} (stderr {result.fitted.stderr:.4f}), "
        f"predicted {result.predicted}"
    ]
    for s in result.samples:
        lines.append(f"param={_fmt(s.param)} ratio={_fmt(s.ratio)}")
    write_csv("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_knapp(args) -> int:
    weights = {k: v for k, v in _weights(args).items()}
    result = knapp_scan(args.kind, r=args.r, q=args.q, delta_exps=args.delta_exps,
                        **weights)
    return _scan_output(args, result)


def _cmd_constant(args) -> int:
    weights = _weights(args)
    result = constant_density_sums(
        args.kind, q=args.q, n_list=args.n_list, cross_check_rings=args.rings,
        **weights,
    )
    verdict = "DIVERGENT" if result.divergent else "CONVERGENT"
    if args.format == "json":
        payload = {
            "exponent": str(ExtScalar(result.exponent)),
            "verdict": verdict.lower(),
            "sums": [[n, v] for n, v in result.sums],
        }
        if result.ring_sums is not None:
            payload["ring_sums"] = [[n, v] for n, v in result.ring_sums]
        write_csv(json.dumps(payload) + "\n", args.out)
        return 0
    if args.format == "csv":
        meta = {k: str(v) for k, v in weights.items()}
        meta.update({"kind": args.kind, "q": str(args.q),
                     "exponent": str(ExtScalar(result.exponent)),
                     "verdict": verdict.lower()})
        lines = [f"#{k}={meta[k]}" for k in sorted(meta)]
        lines.append("n,partial_sum")
        for n, v in result.sums:
            lines.append(f"{n},{_fmt(v)}")
        write_csv("\n".join(lines) + "\n", args.out)
        return 0
    lines = [f"{verdict} index-exponent={ExtScalar(result.exponent)}"]
    for n, v in result.sums:
        lines.append(f"S_{n} = {_fmt(v)}")
    if result.ring_sums:
        for n, v in result.ring_sums:
            lines.append(f"ring mass B_{n} = {_fmt(v)}")
    write_csv("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_l2_endpoint(args) -> int:
    result = l2_endpoint_scan(args.alpha, args.beta, args.r, args.delta, args.eps_exps)
    return _scan_output(args, result)


def _cmd_pitt(args) -> int:
    scales = [2.0**k for k in args.scale_exps]
    result = pitt_sweep(args.beta, args.p, args.q, scales)
    if args.format == "csv":
        write_csv(_pitt_to_csv(result), args.out)
        return 0
    if args.format == "json":
        payload = {
            "max_ratio": result.max_ratio,
            "ratios": [[s, v, r] for s, v, r in result.ratios],
        }
        write_csv(json.dumps(payload) + "\n", args.out)
        return 0
    lines = [f"max ratio {_fmt(result.max_ratio)}"]
    for s, variant, ratio in result.ratios:
        lines.append(f"s={_fmt(s)} {variant}: {_fmt(ratio)}")
    write_csv("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_dual(args) -> int:
    weights = _weights(args) if args.kind == "radial" else {}
    if args.kind == "separable":
        _require(args, ["alpha", "beta"])
        weights = {"alpha": args.alpha, "beta": args.beta}
    result = dual_scan(args.kind, r=args.r, q=args.q, eps_exps=args.eps_exps, **weights)
    return _scan_output(args, result)


def _cmd_oscint(args) -> int:
    kernel = cosine_weight_kernel(args.kappa, args.lam)
    constant = fresnel_constant(args.kappa)
    normalized = args.lam ** (1 - args.kappa) * kernel / constant
    if args.format == "json":
        payload = {
            "kappa": args.kappa,
            "lambda": args.lam,
            "kernel": kernel,
            "fresnel_constant": constant,
            "normalized": normalized,
        }
        write_csv(json.dumps(payload) + "\n", args.out)
        return 0
    write_csv(
        f"K={_fmt(kernel)} C={_fmt(constant)} lambda^(1-kappa)K/C={_fmt(normalized)}\n",
        args.out,
    )
    return 0


_COMMANDS = {
    "classify": _cmd_classify,
    "diagram": _cmd_diagram,
    "feasibility": _cmd_feasibility,
    "knapp": _cmd_knapp,
    "constant": _cmd_constant,
    "l2-endpoint": _cmd_l2_endpoint,
    "pitt": _cmd_pitt,
    "dual": _cmd_dual,
    "oscint": _cmd_oscint,
}


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    """Prepend key=value pairs from --config FILE as default flags."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        return argv
    path = argv[idx + 1]
    try:
        with open(path) as handle:
            pairs = [
                line.strip().split("=", 1)
                for line in handle
                if line.strip() and not line.startswith("#")
            ]
    except OSError as exc:
        parser.error(f"cannot read config {path}: {exc}")
    extra: list[str] = []
    for key, value in pairs:
        flag = "--" + key.strip().replace("_", "-")
        if flag not in argv:  # explicit flags override the file
            extra.extend([flag, value.strip()])
    # insert config defaults right after the subcommand token
    for i, token in enumerate(argv):
        if token in _COMMANDS:
            return argv[: i + 1] + extra + argv[i + 1 :]
    return argv + extra


def run(argv: list[str]) -> int:
    """Dispatch a CLI invocation; never raises on user input."""
    parser = _build_parser()
    try:
        argv = _apply_config(parser, list(argv))
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on argument errors and 0 on --help
        return 0 if exc.code in (0, None) else 1

    if args.threads is None:
        env = os.environ.get("RESTRICTION_LAB_THREADS")
        args.threads = int(env) if env and env.isdigit() else (os.cpu_count() or 1)
    if args.threads < 1:
        sys.stderr.write("error: --threads must be >= 1\n")
        return 1

    try:
        return _COMMANDS[args.command](args)
    except NumericalError as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"i/o failure: {exc}\n")
        return 2
    except (DomainError, ConfigurationError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
