"""Command-line interface: measure modules, run verification suites, build universes, print Coxeter orbits."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import models, numerics
from .ffmat import EnumerationBudgetExceeded, check_prime
from .grmeasure import gr_measure
from .quiverrep import Representation
from .structure import IsoClassRegistry, default_budget, exhaustive_universe, is_indecomposable
from .suites import ALIASES, SUITES, Context, resolve, run_suite

EXIT_OK, EXIT_ERROR, EXIT_REFUTED, EXIT_SKIPPED = 0, 1, 2, 3


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False)


def load_module(spec: str, p: int, seed: int = 0) -> Representation:
    """A model id (``W:tau^-1(P_2)``) or a path to a representation JSON file."""
    path = Path(spec)
    if spec.endswith(".json") or path.is_file():
        return Representation.from_json(path.read_text())
    return models.build(models.parse_model_id(spec, p), p, seed)


def cmd_measure(args) -> int:
    m = load_module(args.spec, args.prime, args.seed)
    reg = IsoClassRegistry(m.quiver, m.p, args.seed)
    w = is_indecomposable(m, seed=args.seed)
    res = gr_measure(m, reg)
    subs = []
    for cid in res.gr_submodule_class_ids:
        sub = res.witnesses[cid]
        subs.append({
            "dims": list(reg[cid].dims),
            "factor_dims": [a - b for a, b in zip(m.dims, sub.dims)],
            "inclusion": [x.tolist() for x in sub.inclusion],
            "representative": reg[cid].rep.to_dict(),
        })
    data = {
        "binary": res.measure.binary(),
        "dims": list(m.dims),
        "gr_submodules": subs,
        "indecomposable": bool(w.indecomposable),
        "confidence": w.confidence,
        "measure": list(res.measure.elements),
        "p": m.p,
        "rational": str(res.measure.rational()),
        "spec": args.spec,
    }
    if args.format == "json":
        _emit(_dumps(data), args.out)
    else:
        lines = [
            f"module    {args.spec}  dims {tuple(m.dims)}  p={m.p}",
            f"measure   {res.measure}  = {res.measure.rational()}  = {res.measure.binary()}",
            f"verdict   {'indecomposable' if w.indecomposable else 'decomposable'} ({w.confidence})",
        ]
        for s in subs:
            lines.append(f"GR sub    dims {tuple(s['dims'])}  factor dims {tuple(s['factor_dims'])}  "
                         f"inclusion {s['inclusion']}")
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    ctx = Context(p=args.prime, cap=args.cap, imax=args.imax, nmax=args.nmax, amax=args.amax,
                  seed=args.seed, budget=args.budget, jobs=args.jobs)
    report = run_suite(args.suite, ctx)
    if args.format == "json":
        _emit(_dumps(report.to_dict()), args.out)
    else:
        _emit(report.to_table(), args.out)
    return report.exit_code


def cmd_universe(args) -> int:
    q = models.QUIVERS[args.quiver]
    reg = exhaustive_universe(q, args.cap if args.cap is not None else 3, args.prime, args.budget, args.seed)
    text = reg.export_json()
    if args.out:
        _emit(text, args.out)
    if args.format == "json" and not args.out:
        print(text)
    elif not args.out or args.format == "table":
        by = {}
        for e in reg:
            by.setdefault(e.dims, []).append(e)
        print(f"{len(reg)} class{'' if len(reg) == 1 else 'es'} on {args.quiver} with total dimension <= {args.cap}, p={args.prime}")
        for d in sorted(by, key=lambda d: (sum(d), d)):
            n_abs = sum(bool(e.absolutely_indecomposable) for e in by[d])
            print(f"  {d}: {len(by[d])} class{'' if len(by[d]) == 1 else 'es'} ({n_abs} absolutely indecomposable)")
        for d, est in reg.skipped:
            print(f"  skipped {d}: {est} normal-form tuples over budget")
    return EXIT_SKIPPED if reg.skipped else EXIT_OK


def _parse_dims(text: str) -> tuple:
    return tuple(int(x) for x in text.strip("()[] ").replace(" ", "").split(",") if x)


def cmd_orbit(args) -> int:
    q = models.QUIVERS[args.quiver]
    x = _parse_dims(args.dims)
    rows = list(numerics.coxeter_orbit(q, x, args.kmin, args.kmax))
    if args.format == "json":
        data = [{"k": k, "vector": list(v) if v is not None else None, "total": t, "signal": s}
                for k, v, t, s in rows]
        _emit(_dumps({"dims": list(x), "orbit": data, "quiver": args.quiver}), args.out)
    else:
        lines = [f"{'k':>4}  {'vector':<20} {'total':>7}  signal"]
        for k, v, t, s in rows:
            lines.append(f"{k:>4}  {str(tuple(v)) if v is not None else '-':<20} "
                         f"{t if t is not None else '-':>7}  {s or ''}")
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", "--prime", type=int, default=2, help="field size (prime)")
    common.add_argument("--cap", type=int, default=None, help="total dimension cap")
    common.add_argument("--imax", type=int, default=1, help="bound on tau shifts")
    common.add_argument("--nmax", type=int, default=4, help="bound on family lengths n")
    common.add_argument("--amax", type=int, default=2, help="bound on family parameters a")
    common.add_argument("--jobs", type=int, default=1, help="claims evaluated concurrently")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized subroutines")
    common.add_argument("--budget", type=int, default=None,
                        help="raw enumeration cap (default 2^24, or $GRKIT_BUDGET)")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--out", default=None, help="write output to FILE")

    ap = argparse.ArgumentParser(prog="grkit", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", parents=[common], help="GR measure of a model id or representation file")
    m.add_argument("spec")
    m.set_defaults(func=cmd_measure)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", help="suite name, alias, or 'all': " + ", ".join(list(SUITES) + sorted(ALIASES)))
    v.set_defaults(func=cmd_verify)

    u = sub.add_parser("universe", parents=[common], help="exhaustive registry of indecomposables")
    u.add_argument("--quiver", choices=sorted(models.QUIVERS), default="W")
    u.set_defaults(func=cmd_universe)

    o = sub.add_parser("orbit", parents=[common], help="Coxeter orbit of a dimension vector")
    o.add_argument("dims", help="e.g. 0,1,1")
    o.add_argument("--quiver", choices=sorted(models.QUIVERS), default="W")
    o.add_argument("--kmin", type=int, default=-3)
    o.add_argument("--kmax", type=int, default=3)
    o.set_defaults(func=cmd_orbit)
    return ap


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget is None:
        args.budget = default_budget()
    try:
        check_prime(args.prime)
        if args.command == "verify":
            resolve(args.suite)
        return args.func(args)
    except (models.ModelError, KeyError, ValueError, OSError) as exc:
        print(f"grkit: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except EnumerationBudgetExceeded as exc:
        print(f"grkit: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_SKIPPED


if __name__ == "__main__":
    sys.exit(main())
