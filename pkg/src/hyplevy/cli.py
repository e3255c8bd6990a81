"""The hyplevy command.

Subcommands compute exact moments (variance, cumulants), recover densities
(density), interrogate sequences of dimension pairs (probe, classify), draw
Monte Carlo samples (sample), replay a manifest of runs (sweep), and expose
the special-function layer for spot checks (specfun).

Conventions shared by every subcommand:

- CSV outputs start with a single comment line
  `# provenance: {...json...}` carrying argv, package version, and a UTC
  timestamp (plus the seed where one is in play), followed by a snake_case
  header; floats are printed with %.17g so files round-trip exactly.
- Structured results also land in a JSON sidecar next to the CSV
  (`<name>.meta.json`), serialized with sorted keys.
- Relative output paths resolve against $HYPLEVY_OUTDIR when that is set.
- Exit codes: 0 success, 1 a sweep finished with failed runs, 2 invalid
  input, 3 a numerical procedure failed to converge.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConvergenceError, DomainError, HyplevyError
from .measures import (
    DimensionPair,
    codim_limit_cumulant,
    cumulant,
    log_variance,
    make_measure,
    variance,
)
from .regime import (
    ExplicitFamily,
    FixedCodimensionFamily,
    PowerLawFamily,
    classify_sequence,
    probe_regime,
)
from .sampler import SamplerConfig, empirical_cumulants, sample
from .spectral import invert_to_density
from .specfun import (
    beta_dist_stats,
    chebyshev_tail_bound,
    gamma_ratio_log_bounds,
    inc_beta,
    log_gamma,
    reg_inc_beta,
    stirling_log_bounds,
    wendel_lower,
)
from .spectral import taylor_remainder_bound

__all__ = ["main", "entrypoint", "build_parser"]

_EXIT_OK = 0
_EXIT_PARTIAL = 1
_EXIT_INVALID = 2
_EXIT_NUMERICAL = 3


def _fmt(value: float) -> str:
    return "%.17g" % float(value)


def _out_path(name: str) -> Path:
    path = Path(name)
    if not path.is_absolute():
        base = os.environ.get("HYPLEVY_OUTDIR")
        if base:
            path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _provenance(argv: list[str], **extra) -> dict:
    prov = {
        "argv": list(argv),
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    prov.update(extra)
    return prov


def _write_csv(path: Path, header: list[str], rows, prov: dict) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("# provenance: " + json.dumps(prov, sort_keys=True) + "\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(
                ",".join(str(v) if isinstance(v, (int, np.integer)) else _fmt(v) for v in row)
                + "\n"
            )


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _add_measure_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--family",
        required=True,
        choices=("hyperbolic", "rescaled", "limit"),
        help="which Levy measure: raw pair, unit-variance pair, or codimension limit",
    )
    sub.add_argument("--d", type=int, help="ambient dimension (pair families)")
    sub.add_argument("--k", type=int, help="submanifold dimension (pair families)")
    sub.add_argument("--b", type=int, help="codimension (limit family)")


def _measure_from_args(args: argparse.Namespace):
    if args.family == "limit":
        if args.b is None:
            raise DomainError("--family limit requires --b")
        return make_measure("limit", args.b)
    if args.d is None or args.k is None:
        raise DomainError(f"--family {args.family} requires --d and --k")
    return make_measure(args.family, DimensionPair(args.d, args.k))


def _measure_tag(args: argparse.Namespace) -> dict:
    if args.family == "limit":
        return {"family": args.family, "b": args.b}
    return {"family": args.family, "d": args.d, "k": args.k}


def _add_sequence_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--sequence",
        required=True,
        choices=("fixed-codim", "power-law", "explicit"),
        help="how the dimension pairs grow",
    )
    sub.add_argument("--b", type=int, help="codimension (fixed-codim)")
    sub.add_argument("--offset", type=int, default=2, help="d_n = n + offset (fixed-codim)")
    sub.add_argument("--gamma", type=float, help="power-law coefficient")
    sub.add_argument("--beta", type=float, help="power-law exponent, in (0, 1)")
    sub.add_argument("--step", type=int, default=4, help="d_n = step * n (power-law)")
    sub.add_argument(
        "--rounding", choices=("ceil", "floor"), default="ceil", help="power-law k rounding"
    )
    sub.add_argument("--pairs", help="explicit list, formatted d:k,d:k,...")


def _family_from_args(args: argparse.Namespace):
    if args.sequence == "fixed-codim":
        if args.b is None:
            raise DomainError("--sequence fixed-codim requires --b")
        return FixedCodimensionFamily(b=args.b, d_offset=args.offset)
    if args.sequence == "power-law":
        if args.gamma is None or args.beta is None:
            raise DomainError("--sequence power-law requires --gamma and --beta")
        return PowerLawFamily(
            gamma=args.gamma, beta=args.beta, d_step=args.step, rounding=args.rounding
        )
    if not args.pairs:
        raise DomainError("--sequence explicit requires --pairs d:k,d:k,...")
    pairs = []
    for chunk in args.pairs.split(","):
        d_str, _, k_str = chunk.partition(":")
        try:
            pairs.append(DimensionPair(int(d_str), int(k_str)))
        except ValueError as exc:
            raise DomainError(f"bad pair {chunk!r} in --pairs") from exc
    return ExplicitFamily(pairs=tuple(pairs))


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise DomainError(f"expected a comma-separated integer list, got {text!r}") from exc


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise DomainError(f"expected a comma-separated float list, got {text!r}") from exc


def _cmd_variance(args: argparse.Namespace, argv: list[str]) -> int:
    pair = DimensionPair(args.d, args.k)
    _print_json(
        {
            "d": pair.d,
            "k": pair.k,
            "r": pair.r,
            "codim": pair.codim,
            "alpha": pair.alpha,
            "variance": variance(pair),
            "log_variance": log_variance(pair),
        }
    )
    return _EXIT_OK


def _cmd_cumulants(args: argparse.Namespace, argv: list[str]) -> int:
    if args.max_order < 2:
        raise DomainError("--max-order must be at least 2")
    orders = range(2, args.max_order + 1)
    payload = _measure_tag(args)
    if args.family == "limit":
        if args.b is None:
            raise DomainError("--family limit requires --b")
        values = {str(m): codim_limit_cumulant(args.b, m) for m in orders}
    else:
        if args.d is None or args.k is None:
            raise DomainError(f"--family {args.family} requires --d and --k")
        pair = DimensionPair(args.d, args.k)
        raw = {m: cumulant(pair, m) for m in orders}
        if args.family == "rescaled":
            sig2 = variance(pair)
            values = {str(m): raw[m] / sig2 for m in orders}
        else:
            values = {str(m): raw[m] for m in orders}
    payload["cumulants"] = values
    _print_json(payload)
    return _EXIT_OK


def _cmd_density(args: argparse.Namespace, argv: list[str]) -> int:
    measure = _measure_from_args(args)
    grid = invert_to_density(
        measure, half_width=args.half_width, n_points=args.n_points
    )
    path = _out_path(args.out)
    prov = _provenance(argv)
    _write_csv(path, ["x", "value"], zip(grid.xs, grid.values), prov)
    meta = dict(grid.meta)
    meta.update(_measure_tag(args))
    _write_json(path.with_name(path.name + ".meta.json"), meta)
    print(f"wrote {path} ({len(grid.values)} rows)")
    return _EXIT_OK


def _cmd_probe(args: argparse.Namespace, argv: list[str]) -> int:
    family = _family_from_args(args)
    table = probe_regime(family, _int_list(args.n), _float_list(args.eps))
    path = _out_path(args.out)
    prov = _provenance(argv)
    rows = [
        (
            row.n,
            row.d,
            row.k,
            row.r,
            row.sigma,
            row.threshold_stat,
            row.epsilon,
            row.tail_second_moment,
        )
        for row in table.rows
    ]
    _write_csv(
        path,
        ["n", "d", "k", "r", "sigma", "threshold_stat", "epsilon", "tail_second_moment"],
        rows,
        prov,
    )
    verdict = table.verdict
    _write_json(
        path.with_name(path.name + ".meta.json"),
        {
            "label": verdict.label,
            "threshold_limit": verdict.threshold_limit,
            "rationale": verdict.rationale,
        },
    )
    print(f"wrote {path} ({len(rows)} rows, verdict {verdict.label})")
    return _EXIT_OK


def _cmd_classify(args: argparse.Namespace, argv: list[str]) -> int:
    verdict = classify_sequence(_family_from_args(args), margin=args.margin)
    _print_json(
        {
            "label": verdict.label,
            "threshold_limit": verdict.threshold_limit,
            "rationale": verdict.rationale,
        }
    )
    return _EXIT_OK


def _cmd_sample(args: argparse.Namespace, argv: list[str]) -> int:
    measure = _measure_from_args(args)
    config = SamplerConfig(
        cutoff_delta=args.delta, seed=args.seed, batch_size=args.batch_size
    )
    batch = sample(measure, args.n, config)
    path = _out_path(args.out)
    prov = _provenance(argv, seed=args.seed)
    _write_csv(path, ["value"], ((v,) for v in batch.values), prov)
    sidecar = dict(batch.diagnostics)
    sidecar.update(_measure_tag(args))
    sidecar["n"] = args.n
    sidecar["seed"] = args.seed
    sidecar["cutoff_delta"] = args.delta
    order = min(4, max(1, args.n - 1))
    sidecar["empirical_cumulants"] = {
        str(m + 1): v for m, v in enumerate(empirical_cumulants(batch.values, order))
    } if args.n >= 8 else {}
    _write_json(path.with_name(path.name + ".meta.json"), sidecar)
    print(f"wrote {path} ({args.n} rows)")
    return _EXIT_OK


def _cmd_specfun(args: argparse.Namespace, argv: list[str]) -> int:
    op = args.op
    vals = args.args
    def need(n: int) -> None:
        if len(vals) != n:
            raise DomainError(f"op {op!r} takes {n} numeric arguments, got {len(vals)}")

    if op == "log-gamma":
        need(1)
        result = {"value": log_gamma(vals[0])}
    elif op == "inc-beta":
        need(3)
        result = {"value": inc_beta(vals[0], vals[1], vals[2])}
    elif op == "reg-inc-beta":
        need(3)
        result = {"value": reg_inc_beta(vals[0], vals[1], vals[2])}
    elif op == "beta-stats":
        need(2)
        mean, var = beta_dist_stats(vals[0], vals[1])
        result = {"mean": mean, "variance": var}
    elif op == "chebyshev-tail":
        need(3)
        side, bound = chebyshev_tail_bound(vals[0], vals[1], vals[2])
        result = {"side": side, "bound": bound}
    elif op == "gamma-ratio-bounds":
        need(2)
        lo, hi = gamma_ratio_log_bounds(vals[0], vals[1])
        result = {"log_lower": lo, "log_upper": hi}
    elif op == "stirling-bounds":
        need(1)
        lo, hi = stirling_log_bounds(vals[0])
        result = {"log_lower": lo, "log_upper": hi}
    elif op == "wendel-lower":
        need(2)
        result = {"value": wendel_lower(vals[0], vals[1])}
    elif op == "taylor-bound":
        need(2)
        n = int(vals[0])
        if n != vals[0]:
            raise DomainError("taylor-bound order must be an integer")
        result = {"value": taylor_remainder_bound(n, vals[1])}
    else:  # argparse choices make this unreachable
        raise DomainError(f"unknown op {op!r}")
    result["op"] = op
    result["args"] = vals
    _print_json(result)
    return _EXIT_OK


def _cmd_sweep(args: argparse.Namespace, argv: list[str]) -> int:
    manifest_path = Path(args.manifest)
    try:
        manifest = json.loads(manifest_path.read_text())
    except OSError as exc:
        raise DomainError(f"cannot read manifest {args.manifest!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DomainError(f"manifest {args.manifest!r} is not valid JSON: {exc}") from exc
    runs = manifest.get("runs")
    if not isinstance(runs, list) or not all(
        isinstance(r, dict) and isinstance(r.get("argv"), list) for r in runs
    ):
        raise DomainError('manifest must look like {"runs": [{"argv": [...]}, ...]}')

    def one(run_argv: list[str]):
        if run_argv and run_argv[0] == "sweep":
            return _EXIT_INVALID, "nested sweep is not allowed"
        return _execute([str(tok) for tok in run_argv])

    argvs = [r["argv"] for r in runs]
    if args.parallel > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=args.parallel) as pool:
            results = list(pool.map(one, argvs))
    else:
        results = [one(a) for a in argvs]

    report = {
        "runs": [
            {
                "argv": [str(tok) for tok in a],
                "status": "ok" if code == _EXIT_OK else "error",
                "exit_code": code,
                **({"error": msg} if msg else {}),
            }
            for a, (code, msg) in zip(argvs, results)
        ]
    }
    _print_json(report)
    return _EXIT_OK if all(code == _EXIT_OK for code, _ in results) else _EXIT_PARTIAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyplevy",
        description="limit laws of Poisson processes of totally geodesic submanifolds",
    )
    parser.add_argument("--version", action="version", version=f"hyplevy {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("variance", help="exact variance of a dimension pair")
    p.add_argument("d", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=_cmd_variance)

    p = subs.add_parser("cumulants", help="exact cumulants of a measure")
    _add_measure_args(p)
    p.add_argument("--max-order", type=int, default=4)
    p.set_defaults(func=_cmd_cumulants)

    p = subs.add_parser("density", help="recover the density by Fourier inversion")
    _add_measure_args(p)
    p.add_argument("--half-width", type=float, default=12.0)
    p.add_argument("--n-points", type=int, default=16384)
    p.add_argument("--out", required=True, help="CSV output path")
    p.set_defaults(func=_cmd_density)

    p = subs.add_parser("probe", help="tabulate a sequence of dimension pairs")
    _add_sequence_args(p)
    p.add_argument("--n", required=True, help="comma-separated sequence indices")
    p.add_argument("--eps", required=True, help="comma-separated epsilon values")
    p.add_argument("--out", required=True, help="CSV output path")
    p.set_defaults(func=_cmd_probe)

    p = subs.add_parser("classify", help="Gaussian / degenerate / indeterminate verdict")
    _add_sequence_args(p)
    p.add_argument("--margin", type=float, default=0.1)
    p.set_defaults(func=_cmd_classify)

    p = subs.add_parser("sample", help="draw Monte Carlo samples")
    _add_measure_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta", type=float, default=1e-3, help="jump truncation level")
    p.add_argument("--batch-size", type=int, default=100_000)
    p.add_argument("--out", required=True, help="CSV output path")
    p.set_defaults(func=_cmd_sample)

    p = subs.add_parser("sweep", help="run every entry of a JSON manifest")
    p.add_argument("manifest", help='JSON file {"runs": [{"argv": [...]}, ...]}')
    p.add_argument("--parallel", type=int, default=1)
    p.set_defaults(func=_cmd_sweep)

    p = subs.add_parser("specfun", help="spot-check the special-function layer")
    p.add_argument(
        "--op",
        required=True,
        choices=(
            "log-gamma",
            "inc-beta",
            "reg-inc-beta",
            "beta-stats",
            "chebyshev-tail",
            "gamma-ratio-bounds",
            "stirling-bounds",
            "wendel-lower",
            "taylor-bound",
        ),
    )
    p.add_argument("args", type=float, nargs="*")
    p.set_defaults(func=_cmd_specfun)

    return parser


def _execute(argv: list[str]) -> tuple[int, str | None]:
    """Parse and run one command line; (exit_code, error message or None)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else _EXIT_INVALID
        return (code, "argument parsing failed" if code != 0 else None)
    try:
        return args.func(args, argv), None
    except ConvergenceError as exc:
        return _EXIT_NUMERICAL, str(exc)
    except (DomainError, HyplevyError, ValueError) as exc:
        return _EXIT_INVALID, str(exc)
    except OSError as exc:
        return _EXIT_INVALID, str(exc)


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    code, message = _execute(list(argv))
    if message:
        print(f"hyplevy: error: {message}", file=sys.stderr)
    return code


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
