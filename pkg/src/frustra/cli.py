"""Command-line batch runner.

Subcommands: scaling, cool, frustration, interference, fig1, bounds-check.
Tabular scans emit CSV, scalar reports JSON, plot data TSV.  Every file
output gets a run-manifest JSON written next to it; reruns with the same
manifest reproduce the bytes exactly.

Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .spin_core import (
    Bipartition,
    SizeLimitError,
    ValidationError,
    block_entropy,
)
from .models import ModelSpec, build_model, default_initial_state
from .cooling import (
    GROUND,
    cool,
    cool_excited,
    cooled_entropy_scan,
    maximize_cooled_entropy,
    reports_to_csv,
)
from .frustration import InternalConsistencyError, frustration_degree_model
from .closed_forms import (
    ising_gas_rho_k,
    mg_bounds,
    heisenberg_gas_bound,
    single_bond_cooled_state,
)
from .interference import covering_interference, curve_to_tsv, rvb_interference_curve

USAGE_ERROR = 2
NUMERICAL_ERROR = 3

_MODEL_KINDS = {
    "ising-gas": "IsingGasLR",
    "heisenberg-gas": "HeisenbergGasLR",
    "mg": "MajumdarGhosh",
    "single-bond": "SingleBondIsing",
    "shastry": "ShastrySutherland",
    "rvb": "RVBPlaquette",
}


def parse_range(text: str) -> list:
    """Parse "a", "a..b", or "a..b..step" into an inclusive integer list."""
    parts = text.split("..")
    try:
        nums = [int(p) for p in parts]
    except ValueError as exc:
        raise ValidationError(f"bad range {text!r}") from exc
    if len(nums) == 1:
        return nums
    if len(nums) == 2:
        a, b = nums
        return list(range(a, b + 1))
    if len(nums) == 3:
        a, b, step = nums
        return list(range(a, b + 1, step))
    raise ValidationError(f"bad range {text!r}")


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".frustra-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, text: str, outputs: dict | None = None) -> None:
    """Write the payload to --output (plus manifest) or stdout."""
    if args.output is None:
        sys.stdout.write(text)
        return
    _atomic_write(args.output, text)
    manifest = {
        "subcommand": args.command,
        "parameters": {
            k: v
            for k, v in sorted(vars(args).items())
            if k not in ("command", "func") and v is not None
        },
        "outputs": outputs or {"main": os.path.abspath(args.output)},
        "seed": args.seed,
        "version": __version__,
    }
    _atomic_write(args.output + ".manifest.json", json.dumps(manifest, sort_keys=True, indent=2) + "\n")


def _spec_from_args(args) -> ModelSpec:
    kind = _MODEL_KINDS[args.model]
    if args.n is not None:
        n = int(args.n)
        if kind == "ShastrySutherland":
            m = n
        else:
            if n % 2:
                raise ValidationError("--n (site count) must be even")
            m = n // 2
    elif args.m is not None:
        m = int(args.m)
    else:
        raise ValidationError("need --m or --n")
    return ModelSpec(
        kind=kind,
        m=m,
        lam=args.lam,
        j1=args.j1,
        j2=args.j2,
        sign=args.sign,
    )


def cmd_scaling(args) -> int:
    sizes = parse_range(args.n) if args.n else [2 * m for m in parse_range(args.m)]
    ks = parse_range(args.k)
    rows = ["size,k,entropy,source,lower_bound,upper_bound"]
    for n in sizes:
        for k in ks:
            if not (0 < k < n):
                raise ValidationError(f"cut k={k} invalid for {n} sites")
            lower = upper = ""
            if args.model == "ising-gas" and args.source == "analytic":
                e = ising_gas_rho_k(n // 2, args.lam, k).entropy()
            elif args.model == "single-bond" and args.source == "analytic":
                st = single_bond_cooled_state(n // 2)
                e = block_entropy(st, Bipartition.contiguous(k))
            elif args.source == "ed":
                spec_args = argparse.Namespace(
                    model=args.model, n=n, m=None, lam=args.lam,
                    j1=args.j1, j2=args.j2, sign=args.sign,
                )
                spec = _spec_from_args(spec_args)
                h = build_model(spec)
                cut = Bipartition.contiguous(k)
                if spec.kind == "MajumdarGhosh":
                    e, _, _ = maximize_cooled_entropy(h, cut, seed=args.seed)
                    lo, up = mg_bounds(k, n)
                    lower, upper = f"{lo:.12g}", f"{up:.12g}"
                else:
                    cooled = cool(h, default_initial_state(spec), cap=args.dense_cap)
                    e = block_entropy(cooled.state, cut)
            else:
                raise ValidationError(
                    f"no {args.source} source for model {args.model}"
                )
            rows.append(f"{n},{k},{e:.12g},{args.source},{lower},{upper}")
    _emit(args, "\n".join(rows) + "\n")
    return 0


def cmd_cool(args) -> int:
    spec = _spec_from_args(args)
    initial = default_initial_state(spec)
    thresholds = [GROUND] if args.threshold is None else [float(args.threshold)]
    n = build_model(spec).num_sites
    ks = parse_range(args.k) if args.k else [n // 2]
    cuts = [Bipartition.contiguous(k) for k in ks]
    reports = cooled_entropy_scan(spec, initial, thresholds, cuts)
    _emit(args, reports_to_csv(reports))
    return 0


def cmd_frustration(args) -> int:
    spec = _spec_from_args(args)
    report = frustration_degree_model(spec)
    _emit(args, report.to_json() + "\n")
    return 0


def cmd_interference(args) -> int:
    if args.model == "heisenberg-gas":
        spec = _spec_from_args(args)
        ks = parse_range(args.k) if args.k else list(range(1, spec.m + 1))
        rows = []
        for k in ks:
            rep = covering_interference(spec.m, k)
            rows.append(
                {
                    "k": k,
                    "e_super": rep.e_super,
                    "e_avg": rep.e_avg,
                    "ratio": rep.ratio,
                    "verdict": rep.verdict,
                }
            )
        _emit(args, json.dumps(rows, sort_keys=True, indent=2) + "\n")
        return 0
    grid = _d_grid(args)
    curve = rvb_interference_curve(args.shape, grid)
    _emit(args, curve_to_tsv(curve))
    return 0


def _d_grid(args):
    lo, hi, step = args.d_min, args.d_max, args.d_step
    n = int(round((hi - lo) / step))
    return [lo + i * step for i in range(n + 1)]


def cmd_fig1(args) -> int:
    grid = _d_grid(args)
    outdir = args.output or "."
    os.makedirs(outdir, exist_ok=True)
    outputs = {}
    for shape in ("square", "horizontal"):
        curve = rvb_interference_curve(shape, grid)
        path = os.path.join(outdir, f"fig1_{shape}.tsv")
        _atomic_write(path, curve_to_tsv(curve))
        outputs[shape] = os.path.abspath(path)
    manifest = {
        "subcommand": "fig1",
        "parameters": {"d_min": args.d_min, "d_max": args.d_max, "d_step": args.d_step},
        "outputs": outputs,
        "seed": args.seed,
        "version": __version__,
    }
    _atomic_write(
        os.path.join(outdir, "fig1.manifest.json"),
        json.dumps(manifest, sort_keys=True, indent=2) + "\n",
    )
    return 0


def cmd_bounds_check(args) -> int:
    spec = _spec_from_args(args)
    h = build_model(spec)
    n = h.num_sites
    rng = np.random.default_rng(args.seed)
    results = []
    if spec.kind == "MajumdarGhosh":
        from .models import mg_dimer_states

        gp, gm = mg_dimer_states(spec.m)
        for _ in range(args.samples):
            a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
            from .spin_core import StateVector

            st = StateVector(n, a * gp.amplitudes + b * gm.amplitudes).normalized()
            for k in range(1, n):
                e = block_entropy(st, Bipartition.contiguous(k))
                lo, up = mg_bounds(k, n)
                results.append(
                    {"k": k, "entropy": e, "lower": lo, "upper": up,
                     "ok": bool(lo - 1e-9 <= e <= up + 1e-9)}
                )
    elif spec.kind == "HeisenbergGasLR":
        cooled = cool(h, default_initial_state(spec), cap=args.dense_cap)
        for k in range(1, n):
            cut = Bipartition.contiguous(k)
            e = block_entropy(cooled.state, cut)
            blacks = sum(1 for s in cut.system_sites if s < spec.m)
            whites = k - blacks
            up = heisenberg_gas_bound(blacks, whites)
            results.append(
                {"k": k, "entropy": e, "upper": up, "ok": bool(e <= up + 1e-9)}
            )
    else:
        raise ValidationError(f"bounds-check does not support {args.model}")
    summary = {
        "model": args.model,
        "checked": len(results),
        "violations": [r for r in results if not r["ok"]],
        "all_ok": all(r["ok"] for r in results),
    }
    _emit(args, json.dumps(summary, sort_keys=True, indent=2) + "\n")
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", default=None, help="output file (default stdout)")
    p.add_argument("--format", default=None, choices=["csv", "json", "tsv"],
                   help="output format (informational; each command has a native format)")
    p.add_argument("--dense-cap", type=int, default=None, dest="dense_cap")
    p.add_argument("--seed", type=int, default=0)


def _add_model_params(p: argparse.ArgumentParser, models) -> None:
    p.add_argument("--model", required=True, choices=models)
    p.add_argument("--m", default=None, help="half the site count (or plaquette count)")
    p.add_argument("--n", default=None, help="site count (or lattice size for shastry)")
    p.add_argument("--lambda", type=float, default=0.0, dest="lam")
    p.add_argument("--j1", type=float, default=1.0)
    p.add_argument("--j2", type=float, default=0.5)
    p.add_argument("--sign", default="frustrated", choices=["frustrated", "unfrustrated"])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="frustra", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scaling", help="block-entropy scaling scans")
    _add_model_params(p, ["ising-gas", "heisenberg-gas", "mg", "single-bond"])
    p.add_argument("--k", required=True, help="cut size or range a..b[..step]")
    p.add_argument("--source", default="ed", choices=["ed", "analytic"])
    _add_common(p)
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("cool", help="cool a model and report cut entropies")
    _add_model_params(p, ["ising-gas", "heisenberg-gas", "mg", "single-bond"])
    p.add_argument("--k", default=None, help="cut size or range")
    p.add_argument("--threshold", default=None, help="absolute energy threshold")
    _add_common(p)
    p.set_defaults(func=cmd_cool)

    p = sub.add_parser("frustration", help="frustration-degree report")
    _add_model_params(p, ["ising-gas", "heisenberg-gas", "mg", "single-bond", "shastry"])
    _add_common(p)
    p.set_defaults(func=cmd_frustration)

    p = sub.add_parser("interference", help="interference ratios")
    p.add_argument("--model", default="rvb", choices=["rvb", "heisenberg-gas"])
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", default=None)
    p.add_argument("--lambda", type=float, default=0.0, dest="lam")
    p.add_argument("--j1", type=float, default=1.0)
    p.add_argument("--j2", type=float, default=0.5)
    p.add_argument("--sign", default="frustrated")
    p.add_argument("--k", default=None)
    p.add_argument("--shape", default="square", choices=["square", "horizontal", "vertical"])
    p.add_argument("--d-min", type=float, default=0.02)
    p.add_argument("--d-max", type=float, default=0.98)
    p.add_argument("--d-step", type=float, default=0.02)
    _add_common(p)
    p.set_defaults(func=cmd_interference)

    p = sub.add_parser("fig1", help="write both interference ratio curves as TSV")
    p.add_argument("--d-min", type=float, default=0.02)
    p.add_argument("--d-max", type=float, default=0.98)
    p.add_argument("--d-step", type=float, default=0.02)
    _add_common(p)
    p.set_defaults(func=cmd_fig1)

    p = sub.add_parser("bounds-check", help="verify analytic entropy bounds")
    _add_model_params(p, ["mg", "heisenberg-gas"])
    p.add_argument("--samples", type=int, default=20)
    _add_common(p)
    p.set_defaults(func=cmd_bounds_check)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    if args.dense_cap is not None:
        os.environ["FRUSTRA_DENSE_CAP"] = str(args.dense_cap)
    try:
        return args.func(args)
    except (ValidationError, SizeLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (InternalConsistencyError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return NUMERICAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
