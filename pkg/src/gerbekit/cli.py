"""Command line interface: generate fixtures, run identity checks, merge reports.

    gerbekit gen    --builtin delta4 --out complex.json
    gerbekit seed   --kind bundle --group su2 --eps 0.01 --seed 7 \
                    --complex delta4 --out fields.json
    gerbekit check  bianchi-exact --group su2 --seed 7 --out reports/
    gerbekit check  all --group so3 --out reports/
    gerbekit report --out reports/
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bundle import curvature_c
from .checks import (CHECK_ORDER, CSV_HEADER, CheckResult, RunConfig,
                     resolve_complex, rows_to_csv, run_check)
from .cochain import save_fields
from .errors import GerbekitError
from .fixtures import random_linear_gerbe, rng_for, smooth_bundle
from .liegroup import get_group
from .simplicial import boundary_complex, standard_simplex

BUILTINS = {f"delta{n}": (standard_simplex, n) for n in range(6)}
BUILTINS.update({f"boundary{n}": (boundary_complex, n) for n in range(1, 6)})


def _floats(text: str):
    return [float(p) for p in text.split(",")]


def cmd_gen(args) -> int:
    if args.builtin:
        if args.builtin not in BUILTINS:
            print(f"error: unknown builtin {args.builtin!r}; "
                  f"known: {', '.join(sorted(BUILTINS))}", file=sys.stderr)
            return 2
        fn, n = BUILTINS[args.builtin]
        cx = fn(n)
    else:
        from .simplicial import SimplicialComplex
        with open(args.file) as fh:
            cx = SimplicialComplex.from_json(fh.read())
    with open(args.out, "w") as fh:
        fh.write(cx.to_json())
    print(f"wrote {args.out}: {cx!r}")
    return 0


def cmd_seed(args) -> int:
    group = get_group(args.group)
    cx = resolve_complex(args.complex)
    rng = rng_for(args.seed, f"seed-{args.kind}")
    if args.kind == "bundle":
        b = smooth_bundle(group, cx, args.eps, rng)
        save_fields(args.out, group, edges=b.f, triangles=curvature_c(b))
    elif args.kind == "gerbe":
        L = random_linear_gerbe(group, cx, args.eps, rng)
        save_fields(args.out, group, edges=L.mu, triangles=L.B)
    else:
        print(f"error: unknown field kind {args.kind!r}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    return 0


def _write_result(res: CheckResult, outdir: str) -> None:
    os.makedirs(outdir, exist_ok=True)
    with open(os.path.join(outdir, f"{res.check}.csv"), "w") as fh:
        fh.write(rows_to_csv(res.rows))
    with open(os.path.join(outdir, f"{res.check}.json"), "w") as fh:
        json.dump(res.summary(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_check(args) -> int:
    cfg = RunConfig(group=args.group, seed=args.seed, n_seeds=args.n_seeds,
                    eps_list=_floats(args.eps), delta_list=_floats(args.delta),
                    tol_exact=args.tol, slope_margin=args.slope_margin,
                    complex_spec=args.complex)
    names = CHECK_ORDER if args.name == "all" else [args.name]
    all_pass = True
    for name in names:
        try:
            res = run_check(name, cfg)
        except GerbekitError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        all_pass &= res.passed
        status = "pass" if res.passed else "FAIL"
        slope = "" if res.slope is None else f" slope={res.slope:.2f}/{res.expected:.1f}"
        print(f"{name:16s} {status}{slope} max_residual={res.max_residual:.3e}"
              + (f"  [{res.notes}]" if res.notes else ""))
        if args.out:
            _write_result(res, args.out)
    return 0 if all_pass else 1


def cmd_report(args) -> int:
    if not os.path.isdir(args.out):
        print(f"error: no such directory {args.out!r}", file=sys.stderr)
        return 2
    rows = []
    for name in sorted(os.listdir(args.out)):
        if not name.endswith(".csv") or name == "report.csv":
            continue
        with open(os.path.join(args.out, name)) as fh:
            lines = fh.read().splitlines()
        if lines and lines[0] == ",".join(CSV_HEADER):
            rows.extend(lines[1:])
    with open(os.path.join(args.out, "report.csv"), "w") as fh:
        fh.write(",".join(CSV_HEADER) + "\n")
        for line in rows:
            fh.write(line + "\n")
    print(f"wrote {os.path.join(args.out, 'report.csv')} ({len(rows)} rows)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gerbekit",
                                description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a builtin or validated complex file")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", help="delta0..delta5 or boundary1..boundary5")
    src.add_argument("--file", help="round-trip an existing complex file")
    g.add_argument("--out", required=True)
    g.set_defaults(fn=cmd_gen)

    s = sub.add_parser("seed", help="write a random field file")
    s.add_argument("--kind", default="bundle", choices=("bundle", "gerbe"))
    s.add_argument("--group", default="su2", choices=("su2", "so3"))
    s.add_argument("--eps", type=float, default=0.01)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--complex", default="delta4")
    s.add_argument("--out", required=True)
    s.set_defaults(fn=cmd_seed)

    c = sub.add_parser("check", help="run one identity check or 'all'")
    c.add_argument("name")
    c.add_argument("--group", default="su2", choices=("su2", "so3"))
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--n-seeds", type=int, default=5)
    c.add_argument("--eps", default="0.1,0.03162277660168379,0.01,0.0031622776601683794")
    c.add_argument("--delta", default="0.1,0.01,0.001")
    c.add_argument("--tol", type=float, default=1e-10)
    c.add_argument("--slope-margin", type=float, default=0.2)
    c.add_argument("--complex", default="delta4")
    c.add_argument("--out")
    c.set_defaults(fn=cmd_check)

    r = sub.add_parser("report", help="merge per-check CSVs in a directory")
    r.add_argument("--out", required=True)
    r.set_defaults(fn=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
