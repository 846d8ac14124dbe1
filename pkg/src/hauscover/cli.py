"""Command-line front end.

Exit status: 0 success, 1 a checked inequality or axiom failed, 2 usage or
input error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__
from . import coarea as co
from . import intervals as iv
from ._accel import backend_name
from .checks import coarea_suite, inequality_suite
from .covering import CoverQuery, CoverSizeError, CoveringFamily, cover, measure_profile
from .formats import (MalformedInputError, dumps, format_csv, format_intervals, format_matrix,
                      parse_values, read_intervals, read_matrix)
from .generators import (CantorSpec, GeneratorSizeError, RandomSpec, cantor, random_space,
                         sample_points)
from .metric import (FiniteMetricSpace, MetricMap, MetricStructureError, PreconditionError,
                     validate_metric)


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ parsing


def parse_grid(text):
    """``a:b:step`` (inclusive of b up to rounding) or a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"grid {text!r} must look like a:b:step")
        a, b, step = (float(Fraction(p)) for p in parts)
        if step == 0 or (b - a) / step < 0:
            raise UsageError(f"grid {text!r} does not progress from a to b")
        count = int(np.floor((b - a) / step + 1e-9)) + 1
        return [a + i * step for i in range(count)]
    vals = [float(Fraction(x)) for x in text.split(",") if x.strip()]
    if not vals:
        raise UsageError("empty grid")
    return vals


def _index_list(text):
    return [int(x) for x in text.replace(";", ",").split(",") if x.strip()]


def _blocks(text):
    return CoveringFamily(tuple(tuple(_index_list(b)) for b in text.split(";") if b.strip()))


def build_parser():
    p = argparse.ArgumentParser(prog="hauscover", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"hauscover {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def outputs(sp, formats=("json",)):
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--timing", action="store_true", help="record elapsed_ms (breaks byte-identical reruns)")

    def inputs(sp):
        g = sp.add_argument_group("input set")
        g.add_argument("--matrix", help="distance-matrix text file")
        g.add_argument("--intervals", help='interval JSON file {"intervals": [[a, b], ...]}')
        g.add_argument("--cantor-depth", type=int, help="middle-ratio Cantor iterate of this depth")
        g.add_argument("--ratio", default="1/3", help="Cantor ratio (default 1/3)")
        g.add_argument("--random", type=int, metavar="N", help="seeded random space with N points")
        g.add_argument("--dim", type=int, default=2)
        g.add_argument("--synthetic", action="store_true", help="random space from repaired weights")
        g.add_argument("--seed", type=int, default=0)
        g.add_argument("--subset", help="comma-separated point indices (default: all points)")

    def cover_opts(sp):
        sp.add_argument("--delta", type=float, default=0.0, help="resolution floor")
        sp.add_argument("--method", choices=("exact", "greedy"), default="exact")
        sp.add_argument("--cap", type=int, help="partition-search size cap (env HAUSCOVER_CAP)")

    s = sub.add_parser("validate", help="check the metric axioms of a distance matrix")
    s.add_argument("--matrix", required=True)
    s.add_argument("--slack", type=float, default=0.0)
    outputs(s)

    s = sub.add_parser("content", help="Hausdorff content of a set")
    inputs(s)
    cover_opts(s)
    s.add_argument("--alpha", type=float, required=True)
    outputs(s)

    s = sub.add_parser("premeasure", help="eps-restricted premeasure along an eps grid")
    inputs(s)
    cover_opts(s)
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--eps-grid", required=True)
    outputs(s, ("json", "csv"))

    s = sub.add_parser("profile", help="alpha x eps table for dimension plots")
    inputs(s)
    cover_opts(s)
    s.add_argument("--alpha-grid", required=True)
    s.add_argument("--eps-grid", required=True)
    outputs(s, ("csv", "json"))

    s = sub.add_parser("coarea", help="slicing report for a covering family")
    inputs(s)
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--delta", type=float, default=0.0)
    s.add_argument("--eps", type=float, help="also check the eps-family slice bound")
    s.add_argument("--values", help="file of function values, one per point (finite spaces)")
    s.add_argument("--blocks", help='covering blocks "0,1;2,3" (finite spaces)')
    s.add_argument("--split", type=int, default=1, help="split each interval component into K pieces")
    s.add_argument("--t-samples", help="comma-separated slice heights")
    s.add_argument("--n-samples", type=int, default=21, help="evenly spaced heights if --t-samples is absent")
    s.add_argument("--level-tol", type=float, default=0.0)
    s.add_argument("--cap", type=int)
    outputs(s)

    s = sub.add_parser("generate", help="emit a Cantor union, a random space or a sampled space")
    s.add_argument("kind", nargs="?", choices=("cantor", "random", "sample"))
    s.add_argument("--job", help='JSON job file {"generator": ..., params}')
    s.add_argument("--ratio", default="1/3")
    s.add_argument("--depth", type=int, default=0)
    s.add_argument("--origin", type=float, default=0.0)
    s.add_argument("--scale", type=float, default=1.0)
    s.add_argument("--n", type=int, default=8)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--synthetic", action="store_true")
    s.add_argument("--intervals")
    s.add_argument("--cantor-depth", type=int)
    s.add_argument("--mode", choices=("endpoints", "net"), default="endpoints")
    s.add_argument("--net-delta", type=float)
    s.add_argument("--out")

    s = sub.add_parser("check", help="run the seeded inequality and coarea suites")
    s.add_argument("--seed", type=int, default=42)
    s.add_argument("--cases", type=int, default=500, help="inequality cases")
    s.add_argument("--coarea-cases", type=int, default=200)
    s.add_argument("--out")
    return p


# ------------------------------------------------------------------ helpers


def _config(args):
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}
    cfg["backend"] = backend_name()
    return cfg


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(args, body):
    return {"version": __version__, "config": _config(args), **body}


def _load_input(args):
    """Returns ``("interval", U)`` or ``("finite", space, E)``."""
    given = [x for x in ("matrix", "intervals", "cantor_depth", "random") if getattr(args, x) is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --matrix, --intervals, --cantor-depth, --random")
    if args.intervals is not None:
        return ("interval", read_intervals(args.intervals))
    if args.cantor_depth is not None:
        return ("interval", cantor(CantorSpec(ratio=Fraction(args.ratio), depth=args.cantor_depth)))
    if args.matrix is not None:
        d = read_matrix(args.matrix)
        rep = validate_metric(d)
        if not rep.ok:
            raise UsageError(f"{args.matrix}: not a metric ({', '.join(rep.axioms())} violated)")
        space = FiniteMetricSpace(d)
    else:
        space = random_space(RandomSpec(args.seed, args.random, dim=args.dim, synthetic=args.synthetic))
    E = _index_list(args.subset) if args.subset else list(range(space.size))
    return ("finite", space, tuple(sorted(set(E))))


def _timed(fn, *a):
    t0 = time.perf_counter()
    r = fn(*a)
    return r, (time.perf_counter() - t0) * 1e3


def _result_row(res, alpha, eps, delta, ms, args):
    return {
        "alpha": alpha,
        "eps": eps,
        "delta": delta,
        "value": res.value,
        "attained": res.attained,
        "method": res.method,
        "elapsed_ms": round(ms, 3) if args.timing else None,
    }


# ----------------------------------------------------------------- commands


def cmd_validate(args):
    rep = validate_metric(read_matrix(args.matrix), slack=args.slack)
    _emit(dumps(_report(args, rep.as_dict())), args.out)
    return 0 if rep.ok else 1


def cmd_content(args):
    src = _load_input(args)
    if src[0] == "interval":
        U = src[1]
        res, ms = _timed(iv.content_exact, U, args.alpha)
        query = {"set": "intervals", "components": len(U), "alpha": args.alpha}
    else:
        _, space, E = src
        q = CoverQuery(space, E, args.alpha, args.delta, None, args.method, args.cap)
        res, ms = _timed(cover, q)
        query = {"set": "finite", "points": list(E), "alpha": args.alpha, "delta": args.delta}
    body = {"query": query, **res.as_dict(), "elapsed_ms": round(ms, 3) if args.timing else None}
    _emit(dumps(_report(args, body)), args.out)
    return 0


def _eps_rows(src, alpha, grid, args):
    rows = []
    if src[0] == "interval":
        for eps in grid:
            res, ms = _timed(iv.hausdorff_eps, src[1], alpha, eps)
            rows.append(_result_row(res, alpha, eps, 0.0, ms, args))
    else:
        _, space, E = src
        t0 = time.perf_counter()
        prof = measure_profile(space, E, alpha, args.delta, grid, args.method, args.cap)
        ms = (time.perf_counter() - t0) * 1e3 / len(grid)
        rows.extend(_result_row(res, alpha, eps, args.delta, ms, args) for eps, res in prof)
    return rows


def _descending(grid):
    grid = sorted(set(grid), reverse=True)
    if any(not e > 0 for e in grid):
        raise UsageError("eps values must be positive")
    return grid


def cmd_premeasure(args):
    src = _load_input(args)
    rows = _eps_rows(src, args.alpha, _descending(parse_grid(args.eps_grid)), args)
    if args.format == "csv":
        _emit(format_csv(rows), args.out)
    else:
        body = {"rows": rows}
        if src[0] == "interval":
            body["measure"] = iv.hausdorff_measure(src[1], args.alpha).value
        else:
            body["measure_estimate"] = rows[-1]["value"]
        _emit(dumps(_report(args, body)), args.out)
    return 0


def cmd_profile(args):
    src = _load_input(args)
    grid = _descending(parse_grid(args.eps_grid))
    alphas = sorted(set(parse_grid(args.alpha_grid)))
    if any(not a > 0 for a in alphas):
        raise UsageError("alpha values must be positive")
    rows = []
    for a in alphas:
        rows.extend(_eps_rows(src, a, grid, args))
    rows.sort(key=lambda r: (r["alpha"], r["eps"]))
    if args.format == "csv":
        _emit(format_csv(rows), args.out)
    else:
        _emit(dumps(_report(args, {"rows": rows})), args.out)
    return 0


def _samples(args, lo, hi):
    if args.t_samples:
        return parse_grid(args.t_samples)
    if args.n_samples < 1:
        raise UsageError("--n-samples must be positive")
    return np.linspace(lo, hi, args.n_samples).tolist()


def cmd_coarea(args):
    src = _load_input(args)
    if src[0] == "interval":
        U = src[1]
        if args.split < 1:
            raise UsageError("--split must be positive")
        pieces = []
        for a, b in U:
            cuts = np.linspace(a, b, args.split + 1)
            cuts[0], cuts[-1] = a, b
            pieces.extend(zip(cuts[:-1].tolist(), cuts[1:].tolist()))
        lo, hi = U.components[0][0], U.components[-1][1]
        rep = co.coarea_report_intervals(U, pieces, args.alpha, _samples(args, lo, hi), args.eps, args.delta)
    else:
        _, space, E = src
        if not args.values or not args.blocks:
            raise UsageError("finite-space coarea needs --values and --blocks")
        with open(args.values) as fh:
            vals = parse_values(fh.read(), args.values)
        f = MetricMap.real(space, vals)
        fam = _blocks(args.blocks)
        v = f.values()
        rep = co.coarea_report(space, E, f, fam, args.alpha, _samples(args, float(v.min()), float(v.max())),
                               args.eps, args.delta, args.level_tol, cap=args.cap)
    _emit(dumps(_report(args, rep.as_dict())), args.out)
    return 0 if rep.ok else 1


def _generate(kind, p):
    if kind == "cantor":
        spec = CantorSpec(ratio=Fraction(str(p.get("ratio", "1/3"))), depth=int(p.get("depth", 0)),
                          origin=float(p.get("origin", 0.0)), scale=float(p.get("scale", 1.0)))
        return format_intervals(cantor(spec))
    if kind == "random":
        spec = RandomSpec(int(p.get("seed", 0)), int(p.get("n", 8)), dim=int(p.get("dim", 2)),
                          synthetic=bool(p.get("synthetic", False)))
        return format_matrix(random_space(spec).distances)
    if kind == "sample":
        if p.get("intervals"):
            U = read_intervals(p["intervals"])
        elif p.get("cantor_depth") is not None:
            U = cantor(CantorSpec(ratio=Fraction(str(p.get("ratio", "1/3"))), depth=int(p["cantor_depth"])))
        else:
            raise UsageError("sample needs --intervals or --cantor-depth")
        pts = sample_points(U, p.get("mode", "endpoints"), p.get("net_delta"))
        header = "# values: " + " ".join(repr(float(x)) for x in pts) + "\n"
        return header + format_matrix(FiniteMetricSpace.from_values(pts).distances)
    raise UsageError(f"unknown generator {kind!r}")


def cmd_generate(args):
    if args.job:
        try:
            with open(args.job) as fh:
                job = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedInputError(args.job, exc.lineno, f"invalid JSON: {exc.msg}") from None
        if not isinstance(job, dict) or "generator" not in job:
            raise MalformedInputError(args.job, 1, "job needs a 'generator' key")
        kind, params = job["generator"], job
    else:
        if args.kind is None:
            raise UsageError("generate needs a kind or --job")
        kind, params = args.kind, vars(args)
    _emit(_generate(kind, params), args.out)
    return 0


def cmd_check(args):
    ineq = inequality_suite(args.seed, args.cases)
    coa = coarea_suite(args.seed, args.coarea_cases)
    ok = ineq["violations"] == 0 and coa["violations"] == 0
    body = {"ok": ok, "suites": [ineq, coa]}
    _emit(dumps(_report(args, body)), args.out)
    return 0 if ok else 1


COMMANDS = {
    "validate": cmd_validate,
    "content": cmd_content,
    "premeasure": cmd_premeasure,
    "profile": cmd_profile,
    "coarea": cmd_coarea,
    "generate": cmd_generate,
    "check": cmd_check,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, MalformedInputError, MetricStructureError, PreconditionError, CoverSizeError,
            GeneratorSizeError, iv.IntervalStructureError, ValueError) as exc:
        print(f"hauscover: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"hauscover: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
