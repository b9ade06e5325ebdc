"""Command-line front end.

Subcommands: sample (write a space file), curvature, spectrum, bgcheck
(ball-growth check), bound (walk curvature bound), verify (named
experiments).  Every output embeds the fully resolved run
configuration, runs are deterministic given --seed, and worker count
never changes any value.  Exit status: 0 all checks passed, 1 a
verdict failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .curvature import kappa_all_pairs, kappa_sampled
from .errors import CoarseCurvError, InvalidParameterError
from .experiments import EXPERIMENTS, run_experiment
from .fileio import load_space, space_from_dict, space_to_dict
from .modelbounds import check_bishop_gromov, walk_curvature_bound
from .samplers import GeneratorSpec, generate
from .spaces import (
    delta_walk,
    gaussian_walk,
    neighbor_uniform_walk,
    r_step_walk,
)
from .spectral import check_bracket, laplacian, liouville_check, spectrum

SCHEMA_LINE = "# schema=v1"

# above this point count, curvature/spectrum runs subsample pairs
ALL_PAIRS_LIMIT = 100
DEFAULT_PAIR_BUDGET = 500


def _parse_scalar(text: str):
    try:
        return int(text)
    except ValueError:
        return float(text)


def parse_generator_spec(text: str, seed: int) -> GeneratorSpec:
    """Parse 'name:key=value,key=value' into a GeneratorSpec."""
    name, _, rest = text.partition(":")
    params = {}
    if rest:
        for item in rest.split(","):
            key, eq, val = item.partition("=")
            if not eq:
                raise InvalidParameterError(
                    f"bad generator parameter {item!r}; expected key=value")
            params[key.strip()] = _parse_scalar(val.strip())
    return GeneratorSpec(name=name.strip(), params=params, seed=seed)


def build_kernel(space, spec: str):
    """Build a kernel from a spec string:
    r-step:<r> | gaussian:<t> | delta | neighbor-uniform."""
    name, _, arg = spec.partition(":")
    name = name.strip()
    if name == "r-step":
        if not arg:
            raise InvalidParameterError("r-step kernel needs a radius")
        return r_step_walk(space, float(arg))
    if name == "gaussian":
        if not arg:
            raise InvalidParameterError("gaussian kernel needs a time")
        return gaussian_walk(space, float(arg))
    if name == "delta":
        return delta_walk(space)
    if name == "neighbor-uniform":
        return neighbor_uniform_walk(space)
    raise InvalidParameterError(f"unknown kernel spec {spec!r}")


def _resolve_space(args, seed):
    if args.space and args.generator:
        raise InvalidParameterError("give --space or --generator, not both")
    if args.space:
        return load_space(args.space), {"space_file": args.space}
    if args.generator:
        spec = parse_generator_spec(args.generator, seed)
        return generate(spec), {"generator": {
            "name": spec.name, "params": spec.params, "seed": spec.seed}}
    raise InvalidParameterError("need --space FILE or --generator SPEC")


def _tolerances(items):
    tol = {}
    for item in items or []:
        key, eq, val = item.partition("=")
        if not eq:
            raise InvalidParameterError(
                f"bad --tol {item!r}; expected name=value")
        tol[key.strip()] = float(val)
    return tol


def _workers(args):
    if args.workers is not None:
        return max(1, args.workers)
    env = os.environ.get("CRL_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InvalidParameterError(f"bad CRL_WORKERS value {env!r}")
    return 1


def _write_text(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(config, report, out):
    doc = {"config": config, "report": report}
    _write_text(json.dumps(doc, sort_keys=True, indent=2,
                           default=_jsonable) + "\n", out)


def _jsonable(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    raise TypeError(f"not JSON-serializable: {type(obj)}")


def _emit_csv(config, header, rows, out):
    lines = [SCHEMA_LINE,
             "# config=" + json.dumps(config, sort_keys=True,
                                      default=_jsonable),
             ",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, float):
                cells.append(repr(cell))
            else:
                cells.append(str(cell))
        lines.append(",".join(cells))
    _write_text("\n".join(lines) + "\n", out)


def _kappa_report(space, kernel, seed, workers, tol):
    n = space.n
    budget = int(tol.get("pair_budget", DEFAULT_PAIR_BUDGET))
    if n <= ALL_PAIRS_LIMIT:
        return kappa_all_pairs(space, kernel, workers=workers)
    cap = int(tol.get("near_pair_cap", budget))
    return kappa_sampled(space, kernel, pair_budget=budget, seed=seed,
                         workers=workers, near_pair_cap=cap)


def cmd_sample(args) -> int:
    seed = args.seed
    if not args.generator:
        raise InvalidParameterError("sample needs --generator")
    spec = parse_generator_spec(args.generator, seed)
    space = generate(spec)
    doc = space_to_dict(space)
    doc["config"] = {
        "command": "sample",
        "generator": {"name": spec.name, "params": spec.params,
                      "seed": spec.seed},
    }
    _write_text(json.dumps(doc, sort_keys=True, default=_jsonable) + "\n",
                args.out)
    return 0


def cmd_curvature(args) -> int:
    seed = args.seed
    workers = _workers(args)
    tol = _tolerances(args.tol)
    space, src = _resolve_space(args, seed)
    if not args.kernel:
        raise InvalidParameterError("curvature needs --kernel")
    kernel = build_kernel(space, args.kernel)
    rep = _kappa_report(space, kernel, seed, workers, tol)
    config = {"command": "curvature", "kernel": args.kernel, "seed": seed,
              "workers": workers, "tolerances": tol, **src}
    if args.format == "csv":
        rows = [(x, y, d, w1, k) for x, y, d, w1, k in rep.pairs]
        _emit_csv(config, ["x", "y", "d", "w1", "kappa"], rows, args.out)
    else:
        report = {
            "kappa_inf": rep.kappa_inf,
            "witness": rep.witness,
            "pairs": rep.pairs,
            "sampling": rep.meta,
        }
        _emit_json(config, report, args.out)
    return 0


def cmd_spectrum(args) -> int:
    seed = args.seed
    workers = _workers(args)
    tol = _tolerances(args.tol)
    space, src = _resolve_space(args, seed)
    if not args.kernel:
        raise InvalidParameterError("spectrum needs --kernel")
    kernel = build_kernel(space, args.kernel)
    delta = laplacian(kernel)
    spec_rep = spectrum(delta)
    krep = _kappa_report(space, kernel, seed, workers, tol)
    verdict = check_bracket(spec_rep, krep.kappa_inf,
                            tol=tol.get("bracket", 1e-7))
    lv = liouville_check(delta, krep.kappa_inf)
    config = {"command": "spectrum", "kernel": args.kernel, "seed": seed,
              "workers": workers, "tolerances": tol, **src}
    in_bracket = {}
    lo, hi = verdict.bracket
    for k, lam in enumerate(spec_rep.eigenvalues):
        is_real = abs(lam.imag) <= spec_rep.imag_tol
        inb = bool(is_real and lo - verdict.tol <= lam.real <= hi + verdict.tol)
        in_bracket[k] = (is_real, inb)
    if args.format == "csv":
        rows = [(float(l.real), float(l.imag), int(in_bracket[k][0]),
                 int(in_bracket[k][1]))
                for k, l in enumerate(spec_rep.eigenvalues)]
        _emit_csv(config, ["re", "im", "is_real", "in_bracket"], rows,
                  args.out)
    else:
        report = {
            "eigenvalues": [{"re": float(l.real), "im": float(l.imag)}
                            for l in spec_rep.eigenvalues],
            "kappa_inf": krep.kappa_inf,
            "bracket": list(verdict.bracket),
            "bracket_passed": verdict.passed,
            "violations": verdict.violations,
            "constant_modes": verdict.constant_indices,
            "envelope_violations": verdict.envelope_violations,
            "disk_notes": [(k, {"re": l.real, "im": l.imag})
                           for k, l in verdict.disk_notes],
            "liouville": {
                "applicable": lv.applicable,
                "kernel_dimension": lv.kernel_dimension,
                "passed": lv.passed,
            },
        }
        _emit_json(config, report, args.out)
    return 0 if verdict.passed else 1


def cmd_bgcheck(args) -> int:
    seed = args.seed
    tol = _tolerances(args.tol)
    space, src = _resolve_space(args, seed)
    if args.K is None or args.N is None:
        raise InvalidParameterError("bgcheck needs --K and --N")
    budget = int(tol.get("budget", 40))
    radius_pairs = None
    if args.r is not None:
        if "R" not in tol:
            raise InvalidParameterError(
                "bgcheck with --r needs the outer radius too: --tol R=<value>")
        radius_pairs = [(args.r, tol["R"])]
    rep = check_bishop_gromov(space, args.K, args.N,
                              radius_pairs=radius_pairs, budget=budget,
                              seed=seed, slack=tol.get("slack"))
    config = {"command": "bgcheck", "K": args.K, "N": args.N, "r": args.r,
              "seed": seed, "tolerances": tol, **src}
    if args.format == "csv":
        _emit_csv(config, ["x", "r", "R", "lhs", "rhs", "margin"],
                  rep.evaluations, args.out)
    else:
        report = {
            "ok": rep.ok,
            "evaluations": len(rep.evaluations),
            "violations": rep.violations,
            "worst": rep.worst,
            "skipped": rep.skipped,
            "coverage": list(rep.coverage),
            "slack": rep.slack_description,
        }
        _emit_json(config, report, args.out)
    return 0 if rep.ok else 1


def cmd_bound(args) -> int:
    if args.K is None or args.N is None or args.r is None:
        raise InvalidParameterError("bound needs --K, --N and --r")
    value = walk_curvature_bound(args.K, args.N, args.r)
    config = {"command": "bound", "K": args.K, "N": args.N, "r": args.r}
    if args.format == "csv":
        _emit_csv(config, ["bound"], [(value,)], args.out)
    else:
        _emit_json(config, {"bound": value}, args.out)
    return 0


def cmd_verify(args) -> int:
    if not args.experiment:
        raise InvalidParameterError(
            f"verify needs --experiment; have {sorted(EXPERIMENTS)}")
    workers = _workers(args)
    tol = _tolerances(args.tol)
    result = run_experiment(args.experiment, seed=args.seed, workers=workers,
                            tolerances=tol)
    config = {"command": "verify", "experiment": result.name,
              "seed": args.seed, "workers": workers, "tolerances": tol}
    _emit_json(config, {"passed": result.passed, **result.report}, args.out)
    return 0 if result.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coarsecurv",
        description="Coarse Ricci curvature of finite metric measure "
                    "spaces via exact L1 optimal transport.")
    sub = parser.add_subparsers(dest="command", required=True)
    handlers = {
        "sample": cmd_sample,
        "curvature": cmd_curvature,
        "spectrum": cmd_spectrum,
        "bgcheck": cmd_bgcheck,
        "bound": cmd_bound,
        "verify": cmd_verify,
    }
    for name, handler in handlers.items():
        p = sub.add_parser(name)
        p.add_argument("--space", help="space file (JSON)")
        p.add_argument("--generator",
                       help="generator spec, e.g. euclidean_grid:side_count=50,spacing=0.02")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--kernel",
                       help="r-step:<r> | gaussian:<t> | delta | neighbor-uniform")
        p.add_argument("--K", type=float)
        p.add_argument("--N", type=float)
        p.add_argument("--r", type=float)
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=["csv", "json"], default="json")
        p.add_argument("--workers", type=int, default=None,
                       help="worker processes (default CRL_WORKERS or 1)")
        p.add_argument("--tol", action="append", metavar="NAME=VALUE",
                       help="tolerance/parameter overrides")
        p.add_argument("--experiment", choices=sorted(EXPERIMENTS))
        p.set_defaults(handler=handler)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (InvalidParameterError, FileNotFoundError, json.JSONDecodeError,
            KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CoarseCurvError as e:
        # numeric failure (solver, certification): counts as a failed run
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
