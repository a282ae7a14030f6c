"""Command-line front end with deterministic CSV/JSON reports.

Commands: validate, phi, predict, capacity, scheme, simulate, mi, sweep.
A flat key=value config file can pre-fill any flag; explicit flags win.
Exit codes: 0 success, 1 usage, 2 numerical condition, 3 I/O.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import asymptotics, mi, prediction, simulate, spectra
from .errors import (
    BlockTooLarge,
    ConditionTwelveFails,
    DimensionTooLarge,
    Diverges,
    DomainError,
    EmbeddingFailure,
    IllConditioned,
    NoDensity,
    NonConvergent,
    NotNormalized,
    ParamOutOfRange,
    QuadratureFailure,
    TooShort,
    UsageError,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3

_NUMERICAL_ERRORS = (
    ConditionTwelveFails, Diverges, NonConvergent, EmbeddingFailure,
    QuadratureFailure, IllConditioned, NoDensity, DimensionTooLarge,
    TooShort, BlockTooLarge, DomainError,
)

_COMMANDS = ("validate", "phi", "predict", "capacity", "scheme",
             "simulate", "mi", "sweep")

SWEEP_HEADER = "model,b,alpha,snr,upper_g,block_coeff,iid_coeff,mi_estimate,mi_stderr,seed"
MI_HEADER = "b,snr,alpha,estimate,std_error,n_samples,seed"


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace

    def resolved(self) -> dict:
        """Full resolved configuration, echoed into every report."""
        skip = {"config"}
        out = {"command": self.command}
        for key in sorted(vars(self.args)):
            if key in skip:
                continue
            val = getattr(self.args, key)
            if val is not None:
                out[key] = val
        return out


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------

def _fmt_float(x: float, digits: int) -> str:
    if x != x:
        return '"nan"'
    if x in (float("inf"), float("-inf")):
        return f'"{x}"'
    return format(float(x), f".{digits}g")


def _json_dumps(obj, digits: int = 17) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj), digits)
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(obj, dict):
        inner = ", ".join(f"{_json_dumps(str(k))}: {_json_dumps(v, digits)}"
                          for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_json_dumps(v, digits) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".12g")
    return str(v)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated float list, got {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated int list, got {text!r}")


def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--model", choices=["memoryless", "ar1", "bandlimited", "table", "line"])
    common.add_argument("--a", type=float)
    common.add_argument("--lambda-c", dest="lambda_c", type=float)
    common.add_argument("--table", type=str)
    common.add_argument("--mass", type=float)
    common.add_argument("--loc", type=float, default=0.0)
    common.add_argument("--residual", choices=["memoryless", "ar1", "bandlimited", "none"])
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", type=str)
    common.add_argument("--format", dest="fmt", choices=["csv", "json"])

    parser = _Parser(prog="fadelab", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    sub.add_parser("validate", parents=[common])

    p = sub.add_parser("phi", parents=[common])
    p.add_argument("--method", choices=["integral", "series", "limit", "all"], default="all")
    p.add_argument("--tol", type=float, default=1e-7)

    p = sub.add_parser("predict", parents=[common])
    p.add_argument("--delta2", type=float, required=True)
    p.add_argument("--past", type=str, default="inf")

    sub.add_parser("capacity", parents=[common])

    p = sub.add_parser("scheme", parents=[common])
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--A", dest="amplitude", type=float, default=1.0)

    p = sub.add_parser("simulate", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--A", dest="amplitude", type=float, default=1.0)

    p = sub.add_parser("mi", parents=[common])
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--A", dest="amplitude", type=float, default=1.0)
    p.add_argument("--sigma2", type=float, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--partitions", type=int, default=1)

    p = sub.add_parser("sweep", parents=[common])
    p.add_argument("--b-list", dest="b_list", type=_int_list, required=True)
    p.add_argument("--alpha-list", dest="alpha_list", type=_float_list, required=True)
    p.add_argument("--snr-list", dest="snr_list", type=_float_list, required=True)
    p.add_argument("--mc", action="store_true")
    p.add_argument("--A", dest="amplitude", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--partitions", type=int, default=1)

    return parser


def _read_config_file(path: str) -> dict[str, str]:
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    out = {}
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"malformed config line: {raw.strip()!r}")
        key, val = line.split("=", 1)
        out[key.strip().replace("-", "_")] = val.strip()
    return out


# flag spellings for config keys, per command
_CONFIG_KEYS = {
    "model": "--model", "a": "--a", "lambda_c": "--lambda-c", "table": "--table",
    "mass": "--mass", "loc": "--loc", "residual": "--residual", "seed": "--seed",
    "out": "--out", "format": "--format", "method": "--method", "tol": "--tol",
    "delta2": "--delta2", "past": "--past", "b": "--b", "alpha": "--alpha",
    "A": "--A", "n": "--n", "sigma2": "--sigma2", "samples": "--samples",
    "partitions": "--partitions", "b_list": "--b-list", "alpha_list": "--alpha-list",
    "snr_list": "--snr-list", "mc": "--mc",
}


def parse_config(argv: list[str]) -> RunConfig:
    """Resolve command line plus optional config file into a RunConfig."""
    argv = list(argv)
    file_kv: dict[str, str] = {}
    if "--config" in argv:
        i = argv.index("--config")
        if i + 1 >= len(argv):
            raise UsageError("--config needs a path")
        file_kv = _read_config_file(argv[i + 1])
        del argv[i:i + 2]

    command = None
    if argv and not argv[0].startswith("-"):
        command = argv.pop(0)
    if command is None:
        command = file_kv.pop("command", None)
    else:
        file_kv.pop("command", None)
    if command is None:
        raise UsageError("no command given")
    if command not in _COMMANDS:
        raise UsageError(f"unknown command {command!r}")

    merged = []
    for key, val in file_kv.items():
        if key not in _CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r}")
        flag = _CONFIG_KEYS[key]
        if key == "mc":
            if val.lower() in ("1", "true", "yes"):
                merged.append(flag)
        else:
            merged.extend([flag, val])
    merged.extend(argv)

    parser = build_parser()
    args = parser.parse_args([command] + merged)
    _range_check(command, args)
    return RunConfig(command=command, args=args)


def _range_check(command: str, args: argparse.Namespace):
    """Validate every numeric parameter before dispatch."""
    def bad(msg):
        raise UsageError(msg)

    if getattr(args, "a", None) is not None and not abs(args.a) < 1.0:
        bad(f"|a| must be < 1, got {args.a}")
    if getattr(args, "lambda_c", None) is not None and not (0.0 < args.lambda_c <= 0.5):
        bad(f"lambda_c must lie in (0, 1/2], got {args.lambda_c}")
    if getattr(args, "mass", None) is not None and not (0.0 < args.mass <= 1.0):
        bad(f"mass must lie in (0, 1], got {args.mass}")
    if getattr(args, "seed", 0) < 0:
        bad("seed must be a non-negative integer")
    for key, lo in (("b", 1), ("n", 1), ("samples", 10_000), ("partitions", 1)):
        v = getattr(args, key, None)
        if v is not None and v < lo:
            bad(f"--{key} must be >= {lo}, got {v}")
    v = getattr(args, "alpha", None)
    if v is not None and not (0.0 <= v <= 1.0):
        bad(f"alpha must lie in [0, 1], got {v}")
    v = getattr(args, "amplitude", None)
    if v is not None and v <= 0.0:
        bad(f"--A must be > 0, got {v}")
    v = getattr(args, "sigma2", None)
    if v is not None and v <= 0.0:
        bad(f"sigma2 must be > 0, got {v}")
    v = getattr(args, "delta2", None)
    if v is not None and v < 0.0:
        bad(f"delta2 must be >= 0, got {v}")
    v = getattr(args, "tol", None)
    if v is not None and v <= 0.0:
        bad(f"tol must be > 0, got {v}")
    past = getattr(args, "past", None)
    if past is not None and past != "inf":
        try:
            if int(past) < 1:
                bad("--past must be 'inf' or a positive integer")
        except ValueError:
            bad(f"--past must be 'inf' or a positive integer, got {past!r}")
    for key in ("alpha_list", "snr_list", "b_list"):
        vals = getattr(args, key, None)
        if vals is not None and not vals:
            bad(f"--{key.replace('_', '-')} must not be empty")
    if getattr(args, "alpha_list", None) is not None:
        if any(not (0.0 <= a <= 1.0) for a in args.alpha_list):
            bad("alpha list entries must lie in [0, 1]")
    if getattr(args, "snr_list", None) is not None:
        if any(s <= 0.0 for s in args.snr_list):
            bad("snr list entries must be > 0")
    if getattr(args, "b_list", None) is not None:
        if any(b < 1 for b in args.b_list):
            bad("b list entries must be >= 1")


def _build_model(args: argparse.Namespace) -> spectra.FadingModel:
    kind = getattr(args, "model", None)
    if kind is None:
        raise UsageError("--model is required")
    if kind == "memoryless":
        return spectra.memoryless()
    if kind == "ar1":
        if args.a is None:
            raise UsageError("--a is required for the ar1 model")
        return spectra.ar1(args.a)
    if kind == "bandlimited":
        if args.lambda_c is None:
            raise UsageError("--lambda-c is required for the bandlimited model")
        return spectra.bandlimited(args.lambda_c)
    if kind == "table":
        if args.table is None:
            raise UsageError("--table is required for the table model")
        return spectra.load_tabulated_density(args.table)
    # spectral line(s)
    if args.mass is None:
        raise UsageError("--mass is required for the line model")
    residual = None
    res_kind = args.residual or ("none" if args.mass >= 1.0 else None)
    if res_kind is None:
        raise UsageError("--residual is required when --mass < 1")
    if res_kind != "none":
        if res_kind == "memoryless":
            residual = spectra.memoryless()
        elif res_kind == "ar1":
            if args.a is None:
                raise UsageError("--a is required for an ar1 residual")
            residual = spectra.ar1(args.a)
        else:
            if args.lambda_c is None:
                raise UsageError("--lambda-c is required for a bandlimited residual")
            residual = spectra.bandlimited(args.lambda_c)
    return spectra.line_plus_residual([(args.loc, args.mass)], residual)


# ---------------------------------------------------------------------------
# command bodies
# ---------------------------------------------------------------------------

def _cmd_validate(cfg, model):
    report = spectra.validate(model)
    return dict(report.to_dict()), None


def _cmd_phi(cfg, model):
    args = cfg.args
    out = {}
    if args.method in ("integral", "all"):
        out["phi_integral"] = asymptotics.phi_integral(model)
    if args.method in ("series", "all"):
        out["phi_series"] = asymptotics.phi_series(model, tol=args.tol)
    if args.method in ("limit", "all"):
        est = prediction.phi_via_limit(model)
        out["phi_limit"] = est.value
        out["limit_indicator"] = est.indicator
    if args.method == "all":
        spread_fast = abs(out["phi_integral"] - out["phi_series"])
        spread_limit = abs(out["phi_limit"] - out["phi_integral"])
        out["within_tolerance"] = bool(spread_fast <= 1e-6 and spread_limit <= 1e-3)
        if not out["within_tolerance"]:
            raise QuadratureFailure(
                f"phi cross-method disagreement: integral {out['phi_integral']:.9g}, "
                f"series {out['phi_series']:.9g}, limit {out['phi_limit']:.9g}")
    return out, None


def _cmd_predict(cfg, model):
    args = cfg.args
    past = None if args.past == "inf" else int(args.past)
    res = prediction.predict(prediction.PredictionQuery(
        model=model, noise_variance=args.delta2, past_length=past))
    return {
        "error": res.error,
        "method": res.method,
        "past_length": "inf" if res.past_length is None else res.past_length,
        "delta2": res.noise_variance,
        "clipped": res.clipped,
    }, None


def _cmd_capacity(cfg, model):
    ca = asymptotics.capacity_asymptote(model)
    out = {"regime": ca.regime}
    if ca.regime == asymptotics.REGIME_SPECTRAL_LINE:
        out["linear_slope"] = ca.linear_slope
    else:
        out = {"phi": ca.phi, "regime": ca.regime,
               "kappa": ca.kappa, "alpha_star": ca.alpha_star}
    return out, None


def _cmd_scheme(cfg, model):
    args = cfg.args
    scheme = simulate.BlockScheme(amplitude=args.amplitude, duty_cycle=args.alpha,
                                  block_length=args.b)
    coeffs = asymptotics.scheme_coefficients(model, args.b, args.alpha)
    support = (1 if args.alpha < 1.0 else 0) + (2 ** args.b if args.alpha > 0.0 else 0)
    return {
        "A": scheme.amplitude,
        "alpha": scheme.duty_cycle,
        "b": scheme.block_length,
        "support_size": support,
        "mean_power": args.alpha * args.amplitude ** 2,
        "fourth_moment": args.alpha * args.amplitude ** 4,
        "s_of_b": coeffs.s_of_b,
        "block_coeff": coeffs.block_coeff,
        "iid_coeff": coeffs.iid_coeff,
    }, None


def _cmd_simulate(cfg, model):
    args = cfg.args
    scheme = simulate.BlockScheme(amplitude=args.amplitude, duty_cycle=args.alpha,
                                  block_length=args.b)
    x = simulate.gen_inputs(scheme, args.n, args.seed)
    trace = simulate.apply_channel(x, model, args.sigma2, args.seed)
    return None, trace


def _cmd_mi(cfg, model):
    args = cfg.args
    scheme = simulate.BlockScheme(amplitude=args.amplitude, duty_cycle=args.alpha,
                                  block_length=args.b)
    est = mi.mi_monte_carlo(scheme, model, args.sigma2, args.samples,
                            args.seed, n_partitions=args.partitions)
    return {
        "b": est.block_length,
        "snr": est.snr,
        "alpha": est.duty_cycle,
        "estimate": est.estimate,
        "std_error": est.std_error,
        "n_samples": est.n_samples,
        "seed": est.seed,
        "n_partitions": est.n_partitions,
    }, None


def _cmd_sweep(cfg, model):
    args = cfg.args
    ca = asymptotics.capacity_asymptote(model)
    if ca.regime == asymptotics.REGIME_SPECTRAL_LINE:
        raise NoDensity("sweep needs a density-regime model")
    phi = ca.phi
    label = spectra.model_label(model)
    block_max, block_arg = asymptotics.asymptotic_block_max(phi)
    iid_max, iid_arg = asymptotics.asymptotic_iid_max(phi)
    summary = {
        "phi": phi,
        "asymptotic_block_max": block_max,
        "asymptotic_block_argmax": block_arg,
        "asymptotic_iid_max": iid_max,
        "asymptotic_iid_argmax": iid_arg,
        "iid_vs_block_gap": block_max - iid_max,
    }
    rows = []
    for b in args.b_list:
        for alpha in args.alpha_list:
            coeffs = asymptotics.scheme_coefficients(model, b, alpha)
            for snr in args.snr_list:
                est = stderr = None
                if args.mc:
                    scheme = simulate.BlockScheme(
                        amplitude=args.amplitude, duty_cycle=alpha, block_length=b)
                    sigma2 = args.amplitude ** 2 / snr
                    r = mi.mi_monte_carlo(scheme, model, sigma2, args.samples,
                                          args.seed, n_partitions=args.partitions)
                    est, stderr = r.estimate / b, r.std_error / b
                rows.append({
                    "model": label, "b": b, "alpha": alpha, "snr": snr,
                    "upper_g": asymptotics.upper_bound_g(phi, alpha),
                    "block_coeff": coeffs.block_coeff,
                    "iid_coeff": coeffs.iid_coeff,
                    "mi_estimate": est, "mi_stderr": stderr,
                    "seed": args.seed,
                })
    return {"summary": summary, "rows": rows}, None


# ---------------------------------------------------------------------------
# report writing
# ---------------------------------------------------------------------------

def _config_comment_lines(cfg: RunConfig) -> list[str]:
    resolved = cfg.resolved()
    return [f"# {k}={_csv_cell(v)}" for k, v in resolved.items()]


def _emit(cfg: RunConfig, result, trace, fh):
    fmt = cfg.args.fmt or ("csv" if cfg.command in ("simulate", "sweep", "mi") else "json")
    if trace is not None:
        if fmt == "json":
            payload = {"config": cfg.resolved(),
                       "k": list(range(trace.x.size)),
                       "re_x": trace.x.real, "im_x": trace.x.imag,
                       "re_h": trace.h.real, "im_h": trace.h.imag,
                       "re_y": trace.y.real, "im_y": trace.y.imag}
            fh.write(_json_dumps(payload) + "\n")
        else:
            simulate.trace_to_csv(trace, fh)
        return

    if cfg.command == "sweep":
        if fmt == "json":
            fh.write(_json_dumps({"config": cfg.resolved(), **result}) + "\n")
            return
        for line in _config_comment_lines(cfg):
            fh.write(line + "\n")
        for k, v in result["summary"].items():
            fh.write(f"# {k}={_csv_cell(v)}\n")
        fh.write(SWEEP_HEADER + "\n")
        cols = SWEEP_HEADER.split(",")
        for row in result["rows"]:
            fh.write(",".join(_csv_cell(row[c]) for c in cols) + "\n")
        return

    if cfg.command == "mi" and fmt == "csv":
        for line in _config_comment_lines(cfg):
            fh.write(line + "\n")
        fh.write(MI_HEADER + "\n")
        fh.write(",".join(_csv_cell(result[c]) for c in
                          ("b", "snr", "alpha", "estimate", "std_error",
                           "n_samples", "seed")) + "\n")
        return

    if fmt == "json":
        fh.write(_json_dumps({"config": cfg.resolved(), **result}) + "\n")
    else:
        for line in _config_comment_lines(cfg):
            fh.write(line + "\n")
        keys = [k for k, v in result.items() if not isinstance(v, (dict, list, tuple))]
        fh.write(",".join(keys) + "\n")
        fh.write(",".join(_csv_cell(result[k]) for k in keys) + "\n")


def _write_report(cfg: RunConfig, result, trace) -> None:
    out = getattr(cfg.args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            _emit(cfg, result, trace, fh)
    else:
        _emit(cfg, result, trace, sys.stdout)


_DISPATCH = {
    "validate": _cmd_validate,
    "phi": _cmd_phi,
    "predict": _cmd_predict,
    "capacity": _cmd_capacity,
    "scheme": _cmd_scheme,
    "simulate": _cmd_simulate,
    "mi": _cmd_mi,
    "sweep": _cmd_sweep,
}


def execute(cfg: RunConfig) -> int:
    """Run one resolved command, writing its report; returns the exit code."""
    try:
        model = _build_model(cfg.args)
    except (ParamOutOfRange, NotNormalized) as exc:
        raise UsageError(str(exc)) from exc
    except FileNotFoundError as exc:
        sys.stderr.write(f"fadelab: cannot read table: {exc}\n")
        return EXIT_IO

    try:
        result, trace = _DISPATCH[cfg.command](cfg, model)
    except _NUMERICAL_ERRORS as exc:
        payload = {"config": cfg.resolved(), "error": type(exc).__name__,
                   "detail": str(exc)}
        fmt = cfg.args.fmt or "json"
        text = (_json_dumps(payload) + "\n") if fmt == "json" else (
            "".join(f"# {k}={_csv_cell(v)}\n" for k, v in cfg.resolved().items())
            + f"error,{type(exc).__name__}\ndetail,{_csv_cell(str(exc))}\n")
        out = getattr(cfg.args, "out", None)
        try:
            if out:
                with open(out, "w", encoding="utf-8", newline="") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
        except OSError as io_exc:
            sys.stderr.write(f"fadelab: cannot write report: {io_exc}\n")
            return EXIT_IO
        return EXIT_NUMERICAL

    try:
        _write_report(cfg, result, trace)
    except OSError as exc:
        sys.stderr.write(f"fadelab: cannot write report: {exc}\n")
        return EXIT_IO
    return EXIT_OK


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_config(argv)
        return execute(cfg)
    except UsageError as exc:
        sys.stderr.write(f"fadelab: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"fadelab: {exc}\n")
        return EXIT_IO


def main() -> None:
    sys.exit(run())
