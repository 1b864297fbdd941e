"""Command-line entry point.

Spaces travel as JSON ``{"n": int, "d": [[...]]}``; point sets as CSV with
header ``label,x1,...,xk``. Every command reads ``--input`` (stdin when
omitted) and writes to ``--out`` (stdout when omitted). Exit status is 0 on
success, 1 on a domain error and 2 on a usage error.
"""
import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from .classify import classify
from .embed import PointConfig, angle_classification, config_to_metric, schoenberg_embed
from .errors import MetricError, NumericalFault
from .generators import (
    gen_box_corners,
    gen_circle,
    gen_discrete,
    gen_random_nonobtuse,
    gen_regular_simplex,
    gen_star,
    join_discrete_space,
    join_circle_space,
)
from .l1geom import l1_metric, l1_necessary_condition, l1_upper_bounds
from .linalg import EIG_TOL
from .measures import m_value, m_value_oracle
from .metric import require_metric
from .subspace import enumerate_maximal_strict_subspaces, maximal_strict_subspace
from .knr import knr_lower_bound_search

FAMILIES = ("discrete", "circle", "star", "box", "simplex", "join", "random")


@dataclass(frozen=True)
class RunConfig:
    """Flags shared by every command."""

    command: str
    tol: float = EIG_TOL
    seed: int = 0
    threads: int = 1
    input: str = None
    out: str = None

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("tolerance must be positive")
        if self.threads < 1:
            raise UsageError("threads must be >= 1")

    @classmethod
    def from_args(cls, args):
        return cls(args.command, args.tol, args.seed, args.threads, args.input, args.out)


class InputError(Exception):
    """Malformed input document."""


class UsageError(Exception):
    """Flag combination the parser cannot catch by itself."""


# --- I/O ------------------------------------------------------------------

def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def dumps(obj):
    # repr-based float output is the shortest string that round-trips exactly
    return json.dumps(_plain(obj), allow_nan=False) + "\n"


def space_json(d, **extra):
    d = np.asarray(d, dtype=float)
    return {"n": int(d.shape[0]), "d": d.tolist(), **extra}


def points_csv(cfg):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label"] + [f"x{j + 1}" for j in range(cfg.dim)])
    for name, row in zip(cfg.names(), cfg.points):
        w.writerow([name] + [repr(float(v)) for v in row])
    return buf.getvalue()


def parse_space(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "d" not in doc:
        raise InputError('space JSON needs a "d" matrix')
    try:
        d = np.array(doc["d"], dtype=float)
    except (TypeError, ValueError):
        raise InputError('"d" must be a numeric matrix') from None
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise InputError(f'"d" must be square, got shape {d.shape}')
    if "n" in doc and doc["n"] != d.shape[0]:
        raise InputError(f'"n" = {doc["n"]} does not match a {d.shape[0]}x{d.shape[0]} matrix')
    return d


def parse_points(text, norm="l2"):
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if not rows or rows[0][0].strip() != "label":
        raise InputError('points CSV needs a header "label,x1,...,xk"')
    width = len(rows[0]) - 1
    labels, pts = [], []
    for line, r in enumerate(rows[1:], start=2):
        if len(r) != width + 1:
            raise InputError(f"line {line}: expected {width + 1} fields, got {len(r)}")
        try:
            pts.append([float(v) for v in r[1:]])
        except ValueError:
            raise InputError(f"line {line}: non-numeric coordinate") from None
        labels.append(r[0])
    if not pts:
        raise InputError("points CSV has no rows")
    return PointConfig(np.array(pts, dtype=float).reshape(len(pts), width), labels, norm=norm)


def is_json(text):
    return text.lstrip().startswith("{")


def read_input(args):
    if args.input is None or args.input == "-":
        return sys.stdin.read()
    with open(args.input) as fh:
        return fh.read()


def read_space(args):
    """Distance matrix from space JSON or from a points CSV (squared
    Euclidean distances, or L1 distances with ``--norm l1``)."""
    text = read_input(args)
    if is_json(text):
        return require_metric(parse_space(text))
    cfg = parse_points(text, args.norm)
    return l1_metric(cfg) if cfg.norm == "l1" else config_to_metric(cfg)


def write_output(args, text):
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)


# --- commands -------------------------------------------------------------

def cmd_classify(args):
    c = classify(read_space(args), args.run.tol, args.hypermetric_bound)
    return dumps(c.to_dict())


def cmd_m_value(args):
    d = read_space(args)
    out = m_value(d, args.run.tol).to_dict()
    if args.oracle:
        out["oracle_lower_bound"] = m_value_oracle(d, budget=args.oracle, seed=args.run.seed)
    return dumps(out)


def cmd_embed(args):
    cfg = schoenberg_embed(read_space(args), args.run.tol)
    if args.format == "json":
        return dumps({"k": cfg.k, "dim": cfg.dim, "points": cfg.points})
    return points_csv(cfg)


def cmd_config(args):
    cfg = parse_points(read_input(args), args.norm)
    if cfg.norm == "l1":
        d = l1_metric(cfg)
        return dumps(space_json(d) if args.to_metric else {"norm": "l1", "k": cfg.k})
    if args.to_metric:
        return dumps(space_json(config_to_metric(cfg)))
    cls = angle_classification(cfg)
    return dumps({"norm": "l2", "k": cfg.k, "angles": cls.kind, "witness": cls.witness})


def cmd_subspace(args):
    d = read_space(args)
    out = maximal_strict_subspace(d, args.run.tol).to_dict()
    if args.all:
        out["all_maximal"] = [list(s) for s in enumerate_maximal_strict_subspaces(d, args.run.tol)]
    return dumps(out)


def cmd_l1_bounds(args):
    text = read_input(args)
    if is_json(text):
        holds, m, bound = l1_necessary_condition(require_metric(parse_space(text)), args.run.tol)
        return dumps({"necessary_condition_holds": holds, "m": None if not np.isfinite(m) else m, "bound": bound})
    return dumps(l1_upper_bounds(parse_points(text, "l1")).to_dict())


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"family {args.family!r} needs " + ", ".join("--" + m.replace("_", "-") for m in missing))


def cmd_generate(args):
    fam = args.family
    cfg = None
    if fam == "discrete":
        _need(args, "n")
        d = gen_discrete(args.n)
    elif fam == "circle":
        _need(args, "n")
        d = gen_circle(args.n, args.radius)
    elif fam == "star":
        _need(args, "n")
        cfg, d, _ = gen_star(args.n)
    elif fam == "box":
        _need(args, "half_sides")
        cfg, d = gen_box_corners(args.half_sides, args.subset)
    elif fam == "simplex":
        _need(args, "n")
        cfg = PointConfig(gen_regular_simplex(args.n))
        d = config_to_metric(cfg)
    elif fam == "join":
        _need(args, "m", "eps")
        build = join_discrete_space if args.second == "discrete" else join_circle_space
        d = build(args.m, args.eps)
    else:
        _need(args, "n", "dim")
        cfg = gen_random_nonobtuse(args.n, args.dim, args.run.seed)
        d = config_to_metric(cfg)
    if args.format == "csv":
        if cfg is None:
            raise UsageError(f"family {fam!r} has no point coordinates; use --format json")
        return points_csv(cfg)
    return dumps(space_json(d))


def cmd_search_knr(args):
    res = knr_lower_bound_search(
        args.n,
        args.r,
        budget=args.budget,
        seed=args.run.seed,
        restarts=args.restarts,
        threshold=args.threshold,
        threads=args.run.threads,
    )
    if args.history:
        with open(args.history, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["move", "ratio"])
            w.writerows((int(m), repr(float(v))) for m, v in res.history)
    return dumps(res.to_dict())


# --- parser ---------------------------------------------------------------

def _positive(kind):
    def conv(s):
        try:
            v = kind(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None
        if not v > 0:
            raise argparse.ArgumentTypeError(f"must be positive: {s!r}")
        return v

    return conv


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="input file (default: stdin)")
    common.add_argument("--out", "-o", help="output file (default: stdout)")
    common.add_argument("--tol", type=_positive(float), default=EIG_TOL, help="relative tolerance (default: %(default)g)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=_positive(int), default=os.cpu_count() or 1)
    common.add_argument("--norm", choices=("l2", "l1"), default="l2", help="metric of a points CSV input")

    parser = argparse.ArgumentParser(prog="qhmspace", description="Finite quasihypermetric spaces and the constant M.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="QH / strict QH / M status of a space")
    p.add_argument("--hypermetric-bound", type=int, default=None, help="also test hypermetric inequalities with |b_i| <= bound")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("m-value", parents=[common], help="compute M(X) and the invariant measure")
    p.add_argument("--oracle", type=_positive(int), default=None, metavar="ITERS", help="also report a gradient-ascent lower bound")
    p.set_defaults(func=cmd_m_value)

    p = sub.add_parser("embed", parents=[common], help="non-obtuse point set realizing a QH space")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("config", parents=[common], help="angle class of a point set, or its metric")
    p.add_argument("--to-metric", action="store_true", help="emit the space JSON instead of the angle class")
    p.set_defaults(func=cmd_config)

    p = sub.add_parser("subspace", parents=[common], help="maximal strictly QH subspace")
    p.add_argument("--enumerate", "--all", dest="all", action="store_true",
                   help="enumerate all maximal strict subspaces (small n)")
    p.set_defaults(func=cmd_subspace)

    p = sub.add_parser("l1-bounds", parents=[common], help="upper bounds on M for L1 point sets")
    p.add_argument("--points", dest="input", help="points CSV (same as --input)")
    p.set_defaults(func=cmd_l1_bounds)

    p = sub.add_parser("generate", parents=[common], help="construct an example space")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--radius", type=_positive(float), default=1.0)
    p.add_argument("--half-sides", type=_positive(float), nargs="+")
    p.add_argument("--subset", type=int, nargs="+")
    p.add_argument("--second", choices=("discrete", "circle"), default="discrete",
                   help="join partner of discrete(m): discrete(2), or four circle points")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("search-knr", parents=[common], help="empirical lower bound for K(n, r)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--budget", type=_positive(int), default=100_000)
    p.add_argument("--restarts", type=_positive(int), default=8)
    p.add_argument("--threshold", type=_positive(float), default=5.0)
    p.add_argument("--history", help="also write the (move, ratio) history as CSV to this file")
    p.set_defaults(func=cmd_search_knr)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        args.run = RunConfig.from_args(args)
        text = args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MetricError, NumericalFault, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    write_output(args, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
