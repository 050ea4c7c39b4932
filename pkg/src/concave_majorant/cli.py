"""Command-line interface: samplers, exact tables, transforms and the acceptance suite."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .acceptance import DEFAULT_SEED, SUITES, run_suite
from .core import (BernoulliLattice, Cauchy, FiniteSupport, Gaussian, MajorantError, Rademacher,
                   RngStream, SymmetricStable, Uniform, build_walk, sample_walk)
from .hull import argmax_decomposition, concave_majorant
from .lattice import gf_HKF
from .poissonfaces import geometric_length, sample_face_point_process
from .randperm import composition_prob_mc
from .transform import invert_3214, path_transform_3214, theorem1_transform

CHUNK = 1000  # rows per RNG stream; fixed so output does not depend on --threads


def parse_model(text: str):
    """Model from ``name[:params]``.

    ``gaussian[:mean,sd]``, ``cauchy[:loc,scale]``, ``uniform[:a,b]``,
    ``stable:alpha[,scale]``, ``rademacher``, ``bernoulli:p`` and
    ``atoms:v@p,v@p,...`` with rational values and probabilities.
    """
    name, _, arg = text.strip().partition(":")
    name = name.lower()
    parts = [a for a in arg.split(",") if a] if arg else []
    try:
        if name == "gaussian":
            return Gaussian(*map(float, parts))
        if name == "cauchy":
            return Cauchy(*map(float, parts))
        if name == "uniform":
            return Uniform(*map(float, parts))
        if name == "stable":
            return SymmetricStable(*map(float, parts))
        if name == "rademacher":
            return Rademacher()
        if name == "bernoulli":
            return BernoulliLattice(Fraction(parts[0]))
        if name == "atoms":
            atoms = []
            for a in parts:
                v, p = a.split("@")
                atoms.append((Fraction(v), Fraction(p)))
            return FiniteSupport(tuple(atoms))
    except (ValueError, IndexError, TypeError, ZeroDivisionError, MajorantError) as e:
        raise argparse.ArgumentTypeError(f"bad model {text!r}: {e}")
    raise argparse.ArgumentTypeError(f"unknown model {text!r}")


def parse_q(text: str) -> float:
    q = float(text)
    if not 0 < q < 1:
        raise argparse.ArgumentTypeError("q must lie in (0, 1)")
    return q


def parse_walk(text: str) -> list:
    try:
        return [Fraction(x) for x in text.replace(" ", "").split(",") if x]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad walk {text!r}")


def parse_grid(text: str) -> list:
    return [float(x) for x in text.split(",") if x.strip()]


def exact(x):
    """JSON-safe scalar: rationals as "p/q", non-finite floats as null."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, (list, tuple)):
        return [exact(v) for v in x]
    if isinstance(x, dict):
        return {str(k): exact(v) for k, v in x.items()}
    return x


def _dash(c) -> str:
    return "-".join(str(b) for b in c)


def walk_row(walk) -> dict:
    if walk.n == 0:
        return {"n": 0, "F": 0, "H": 0, "M": 0, "L": 0, "S_n": 0, "faces": "", "touches": ""}
    maj = concave_majorant(walk)
    split = argmax_decomposition(walk, maj)
    tt = maj.touch_times
    return {"n": walk.n, "F": maj.F, "H": maj.H, "M": split.M, "L": split.L,
            "S_n": walk.values[-1], "faces": _dash(maj.composition),
            "touches": _dash(b - a for a, b in zip(tt, tt[1:]))}


def _simulate_chunk(model, n, q, rng, size) -> list:
    rows = []
    for _ in range(size):
        length = n if q is None else int(geometric_length(q, rng))
        rows.append(walk_row(sample_walk(model, length, rng)))
    return rows


def _chunked(samples: int, seed: int, label: str, threads: int, work) -> list:
    """Run ``work(rng, size)`` over fixed-size chunks and concatenate in order."""
    root = RngStream(seed).fork(label)
    jobs = [(root.fork(f"chunk-{i}"), min(CHUNK, samples - i * CHUNK))
            for i in range(math.ceil(samples / CHUNK))]
    with ThreadPoolExecutor(max_workers=max(threads, 1)) as pool:
        parts = list(pool.map(lambda job: work(*job), jobs))
    return [row for part in parts for row in part]


def cmd_simulate(args) -> tuple:
    if (args.n is None) == (args.q is None):
        raise argparse.ArgumentTypeError("give exactly one of --n and --q")
    if args.n is not None and args.n < 0:
        raise argparse.ArgumentTypeError("--n must be non-negative")
    rows = _chunked(args.samples, args.seed, "simulate", args.threads,
                    lambda rng, size: _simulate_chunk(args.model_obj, args.n, args.q, rng, size))
    return rows, True


def cmd_poisson(args) -> tuple:
    def work(rng, size):
        out = []
        for _ in range(size):
            proc = sample_face_point_process(args.q, args.model_obj, rng)
            out.append(proc)
        return out
    procs = _chunked(args.samples, args.seed, "poisson", args.threads, work)
    rows = []
    for i, proc in enumerate(procs):
        for p in sorted(proc.points, key=lambda p: p.increment / p.length, reverse=True):
            rows.append({"sample": i, "length": p.length, "increment": p.increment,
                         "slope": p.increment / p.length})
    return rows, True


def cmd_gf(args) -> tuple:
    tables = dict(zip("HKF", gf_HKF(args.model_obj, args.order_s, args.order_t)))
    out = {name: [[str(c) for c in s.grid[n]] for n in range(args.order_s + 1)]
           for name, s in tables.items()}
    return out, True


def cmd_transform(args) -> tuple:
    walk = build_walk(args.walk)
    if args.inverse is not None:
        U, orig = invert_3214(args.inverse, walk)
        return {"k": args.inverse, "U": U, "increments": list(orig.increments),
                "values": list(orig.values)}, True
    if args.U is not None:
        k, out = path_transform_3214(walk, args.U)
        return {"U": args.U, "k": k, "increments": list(out.increments),
                "values": list(out.values)}, True
    res = theorem1_transform(walk.increments, RngStream(args.seed).fork("transform"))
    return {"permutation": list(res.permutation), "increments": list(res.walk.increments),
            "values": list(res.walk.values), "partition": list(res.partition),
            "segment_composition": list(res.segment_composition),
            "face_composition": list(res.face_composition)}, True


def cmd_verify(args) -> tuple:
    numbers = SUITES[args.suite]

    def one(i):
        return run_suite(f"criterion-{i}", args.seed, args.scale)[0]
    with ThreadPoolExecutor(max_workers=max(args.threads, 1)) as pool:
        results = list(pool.map(one, numbers))
    for r in results:
        print(r.line(), file=sys.stderr)
    return [r.report() for r in results], all(r.passed for r in results)


def cmd_experiment(args) -> tuple:
    rows = []
    root = RngStream(args.seed).fork("stable-index")
    for alpha in args.alphas:
        est = composition_prob_mc(SymmetricStable(alpha), (1, 2, 1), args.samples,
                                  root.fork(f"alpha-{alpha!r}"))
        rows.append({"alpha": alpha, "two_p121": 2 * est.value, "se": 2 * est.se,
                     "samples": est.samples})
    return rows, True


COMMANDS = {"simulate": cmd_simulate, "poisson": cmd_poisson, "gf": cmd_gf,
            "transform": cmd_transform, "verify": cmd_verify, "experiment": cmd_experiment}
TABULAR = {"simulate", "poisson", "experiment"}
COLUMNS = {"simulate": ["n", "F", "H", "M", "L", "S_n", "faces", "touches"],
           "poisson": ["sample", "length", "increment", "slope"],
           "experiment": ["alpha", "two_p121", "se", "samples"]}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=["csv", "json"], default=None)
    common.add_argument("--timing", action="store_true", help="add wall time to JSON reports")

    p = argparse.ArgumentParser(prog="concave-majorant",
                                description="Concave majorants of random walks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", parents=[common], help="majorant statistics of sampled walks")
    s.add_argument("--model", default="gaussian")
    s.add_argument("--n", type=int)
    s.add_argument("--q", type=parse_q, help="geometric length parameter instead of --n")
    s.add_argument("--samples", type=int, default=1000)

    s = sub.add_parser("poisson", parents=[common], help="Poisson point process of faces")
    s.add_argument("--model", default="gaussian")
    s.add_argument("--q", type=parse_q, required=True)
    s.add_argument("--samples", type=int, default=1)

    s = sub.add_parser("gf", parents=[common], help="exact generating function tables for H, K, F")
    s.add_argument("--model", default="rademacher")
    s.add_argument("--order-s", type=int, default=8)
    s.add_argument("--order-t", type=int)

    s = sub.add_parser("transform", parents=[common], help="rearrange a given walk")
    s.add_argument("walk", type=parse_walk, help="comma separated increments, e.g. 2,-3,1")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--U", type=int, help="apply the 3214 map at time U")
    g.add_argument("--inverse", type=int, metavar="K", help="undo the 3214 map with k = K")

    s = sub.add_parser("verify", parents=[common], help="run acceptance criteria")
    s.add_argument("suite", nargs="?", default="all", choices=sorted(SUITES, key=str))
    s.add_argument("--scale", type=float, default=1.0, help="multiply sample sizes")

    s = sub.add_parser("experiment", parents=[common],
                       help="2 p(1,2,1) across symmetric stable indices")
    s.add_argument("--alphas", type=parse_grid, default=parse_grid("0.5,1,1.5,2"))
    s.add_argument("--samples", type=int, default=10**5)
    return p


def render(command: str, payload, args, fmt: str, elapsed: float | None) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=COLUMNS[command], lineterminator="\n")
        w.writeheader()
        for row in payload:
            w.writerow({k: exact(v) for k, v in row.items()})
        return buf.getvalue()
    params = {k: v for k, v in vars(args).items()
              if k not in ("command", "seed", "out", "format", "timing", "threads", "model_obj")}
    report = {"command": command, "parameters": exact(params), "seed": args.seed,
              "results": exact(payload)}
    if elapsed is not None:
        report["wall_time"] = elapsed
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "samples", 1) < 0:
        parser.error("--samples must be non-negative")
    if getattr(args, "order_s", None) is not None and args.order_t is None:
        args.order_t = args.order_s
    if getattr(args, "order_s", 0) < 0 or (getattr(args, "order_t", None) or 0) < 0:
        parser.error("series orders must be non-negative")
    if hasattr(args, "model"):
        try:
            args.model_obj = parse_model(args.model)
        except argparse.ArgumentTypeError as e:
            parser.error(str(e))
    fmt = args.format or ("csv" if args.command in TABULAR else "json")
    if fmt == "csv" and args.command not in TABULAR:
        parser.error(f"{args.command} only writes JSON")
    start = time.perf_counter()
    try:
        payload, ok = COMMANDS[args.command](args)
    except argparse.ArgumentTypeError as e:
        parser.error(str(e))
    except MajorantError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    text = render(args.command, payload, args, fmt,
                  time.perf_counter() - start if args.timing else None)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
