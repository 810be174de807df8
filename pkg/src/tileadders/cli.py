"""``tileadd`` command line.

Exit codes: 0 success, 1 a verification or property check failed, 2 usage
error.  Bit strings on the command line are written most significant bit
first.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from contextlib import contextmanager
from typing import List, Optional

from . import bench as benchmod
from . import proplab, render, stats
from .constructions import KINDS, build
from .engine import DEFAULT_KERNEL, RNG_NAME, run_continuous, run_parallel
from .templates import decode, fill, format_msb, parse_msb


class UsageError(Exception):
    pass


@contextmanager
def _output(path: Optional[str]):
    if not path or path == "-":
        yield sys.stdout
        return
    try:
        f = open(path, "w", newline="")
    except OSError as e:
        raise OSError(f"cannot write {path}: {e.strerror}") from e
    with f:
        yield f


def _bits(text: str, n: int):
    try:
        bits = parse_msb(text)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if len(bits) > n:
        raise UsageError(f"{text!r} has more than {n} bits")
    return bits + (0,) * (n - len(bits))


def cmd_build_adder(args) -> int:
    tac = build(args.kind, args.n)
    with _output(args.out) as f:
        json.dump(tac.to_dict(), f, indent=1 if args.format == "pretty" else None)
        f.write("\n")
    return 0


def cmd_run(args) -> int:
    tac = build(args.kind, args.n)
    a, b = _bits(args.a, args.n), _bits(args.b, args.n)
    sys_ = tac.system(a + b)
    if args.mode == "parallel":
        res = run_parallel(sys_)
    else:
        res = run_continuous(sys_, args.rng_seed)
    out_bits = decode(res, tac.output)
    with _output(args.out) as f:
        if args.format == "ascii":
            f.write(render.to_ascii(res))
        elif args.format == "svg":
            f.write(render.to_svg(res, tac.geometry))
        else:
            doc = {"kind": args.kind, "n": args.n, "a": args.a, "b": args.b,
                   "sum": format_msb(out_bits), "mode": args.mode,
                   "rng": RNG_NAME, "rng_seed": args.rng_seed, "kernel": DEFAULT_KERNEL}
            doc.update(res.to_dict())
            json.dump(doc, f)
            f.write("\n")
    return 0


def cmd_verify(args) -> int:
    if args.exhaustive and args.n > 8:
        raise UsageError("--exhaustive is only allowed for n <= 8")
    pairs = None
    if args.pair:
        pairs = [(_bits(a, args.n), _bits(b, args.n)) for a, b in args.pair]
    rep = benchmod.verify(args.kind, args.n, args.exhaustive, args.samples, args.rng_seed, pairs)
    with _output(args.out) as f:
        for line in rep.failures:
            f.write(f"FAIL {line}\n")
        f.write(f"{args.kind} n={args.n}: {rep.passed}/{rep.total} pass\n")
    return 0 if rep.ok else 1


def cmd_bench(args) -> int:
    kinds = args.kinds or list(KINDS)
    for k in kinds:
        if k not in KINDS:
            raise UsageError(f"unknown kind {k!r}")
    recs = benchmod.bench(kinds, args.n, args.trials, args.modes, args.rng_seed,
                          args.inputs, args.workers)
    with _output(args.out) as f:
        benchmod.write_csv(recs, f)
    return 0


def cmd_render(args) -> int:
    tac = build(args.kind, args.n)
    a, b = _bits(args.a, args.n), _bits(args.b, args.n)
    obj = fill(tac.input, a + b) if args.seed_only else run_parallel(tac.system(a + b))
    with _output(args.out) as f:
        f.write(render.to_svg(obj, tac.geometry) if args.format == "svg" else render.to_ascii(obj))
    return 0


def cmd_prop_check(args) -> int:
    rng = random.Random(args.rng_seed)
    kinds = args.kinds or list(KINDS)
    ok = True
    with _output(args.out) as f:
        for case_id in range(args.cases):
            kind = kinds[case_id % len(kinds)]
            tac = build(kind, args.n)
            bits = [rng.randint(0, 1) for _ in range(2 * args.n)]
            idx = rng.randrange(2 * args.n)
            r = rng.randint(0, args.max_r)
            verdict = proplab.diff_propagation_check(
                proplab.PerturbationCase.flip_bit(tac, bits, idx), r)
            ok &= verdict
            f.write(f"diff-{case_id} {kind} n={args.n} bit={idx} r={r} {'ok' if verdict else 'FAIL'}\n")
        if args.n >= 2:
            for kind in kinds:
                tac = build(kind, args.n)
                i, j = proplab.max_separation_pair(tac)
                c = proplab.build_comm_tac(tac, i, j)
                fl = proplab.comm_runtime_floor(c)
                ok &= fl.ok
                f.write(f"comm-{kind} n={args.n} i={i} j={j} delta={c.delta} "
                        f"max_rho={fl.max_rho} floor={fl.floor} {'ok' if fl.ok else 'FAIL'}\n")
    return 0 if ok else 1


def cmd_stats(args) -> int:
    with _output(args.out) as f:
        w = csv.writer(f, lineterminator="\n")
        if args.verb == "longest-run":
            s = stats.expected_longest_run_mc(args.n, args.trials, args.rng_seed)
            w.writerow(["n", "trials", "mean", "variance", "ci95_half"])
            w.writerow([args.n, s.trials, s.mean, s.variance, s.ci95_half])
        elif args.verb == "max-exp-sums":
            cfg = stats.MaxSumsConfig.uniform(args.m, args.k, args.lam, args.trials)
            s = stats.max_exp_sums_estimate(cfg, args.rng_seed)
            w.writerow(["m", "k", "lambda", "trials", "mean", "variance", "ci95_half"])
            w.writerow([args.m, args.k, args.lam, s.trials, s.mean, s.variance, s.ci95_half])
        else:
            bound = stats.chernoff_exp_bound(args.n, args.delta)
            p, se = stats.empirical_tail(args.n, args.delta, args.trials, rng_seed=args.rng_seed)
            w.writerow(["n", "delta", "bound", "empirical", "stderr"])
            w.writerow([args.n, args.delta, bound, p, se])
    return 0


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rng-seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", default=None)

    p = argparse.ArgumentParser(prog="tileadd", description="Tile self-assembly adders.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(fn=fn)
        return sp

    def kind_n(sp):
        sp.add_argument("kind", choices=KINDS)
        sp.add_argument("n", type=int)

    sp = add("build-adder", cmd_build_adder, help="emit tile set, templates and geometry as JSON")
    kind_n(sp)

    sp = add("run", cmd_run, help="run one addition")
    kind_n(sp)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--mode", choices=("parallel", "continuous"), default="parallel")

    sp = add("verify", cmd_verify, help="check decoded sums against integer addition")
    kind_n(sp)
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--pair", nargs=2, action="append", metavar=("A", "B"))

    sp = add("bench", cmd_bench, help="write benchmark CSV")
    sp.add_argument("--kinds", nargs="*", default=None)
    sp.add_argument("--n", nargs="*", type=int, default=[])
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--modes", nargs="*", default=list(benchmod.MODES), choices=benchmod.MODES)
    sp.add_argument("--inputs", nargs="*", default=list(benchmod.INPUT_KINDS),
                    choices=benchmod.INPUT_KINDS)
    sp.add_argument("--workers", type=int, default=1)

    sp = add("render", cmd_render, help="draw the seed or terminal assembly")
    kind_n(sp)
    sp.add_argument("--a", default="0")
    sp.add_argument("--b", default="0")
    sp.add_argument("--seed-only", action="store_true")

    sp = add("prop-check", cmd_prop_check, help="propagation radius and communication floor")
    sp.add_argument("--kinds", nargs="*", default=None)
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--cases", type=int, default=20)
    sp.add_argument("--max-r", type=int, default=10)

    sp = add("stats", cmd_stats, help="probability utilities")
    sp.add_argument("verb", choices=("longest-run", "max-exp-sums", "chernoff"))
    sp.add_argument("--n", type=int, default=1024)
    sp.add_argument("--trials", type=int, default=10_000)
    sp.add_argument("--m", type=int, default=100)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--lam", type=float, default=1.0)
    sp.add_argument("--delta", type=float, default=1.0)
    return p


_FORMATS = {
    "build-adder": (None, "pretty"),
    "run": (None, "json", "ascii", "svg"),
    "render": (None, "ascii", "svg"),
}


def main(argv: Optional[List[str]] = None) -> int:
    p = _parser()
    args = p.parse_args(argv)
    allowed = _FORMATS.get(args.cmd, (None, "csv", "text"))
    if args.format not in allowed:
        p.error(f"--format {args.format!r} is not valid for {args.cmd}")
    if getattr(args, "n", 1) is not None and isinstance(args.n, int) and args.n < 1:
        p.error("n must be at least 1")
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"tileadd: error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"tileadd: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
