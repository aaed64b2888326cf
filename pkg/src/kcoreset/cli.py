"""Command-line entry point.

Exit status: 0 on success, 1 on invalid input or arguments, 2 on I/O errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import io
from .coreset import build_fixed_p, theoretical_sample_size, uniform_coreset
from .metric import ValidationError
from .oneshot import AUTO, build_oneshot
from .oracle import DP, PERTURBED, UNIFORM, exact_sensitivity, measure_error, sample_queries
from .seeding import sub_seed
from .sensitivity import sensitivity_bound
from .synth import generate

STRATEGY_ALIASES = {"dp": DP, "uniform": UNIFORM, "perturbed": PERTURBED,
                    DP: DP, UNIFORM: UNIFORM, PERTURBED: PERTURBED}


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _floats(text):
    return [float(v) for v in text.split(",") if v.strip()]


def _ints(text):
    return [int(v) for v in text.split(",") if v.strip()]


def _spacing(text):
    return AUTO if text == AUTO else float(text)


def parse_queries(text):
    strategy, _, count = text.partition(":")
    if strategy not in STRATEGY_ALIASES or not count.isdigit() or int(count) < 1:
        raise UsageError(f"--queries expects STRATEGY:COUNT with STRATEGY in dp/uniform/perturbed, got {text!r}")
    return STRATEGY_ALIASES[strategy], int(count)


def _load(args):
    return io.load_distance_matrix(args.input) if args.metric else io.load_points_csv(args.input)


def _check_common(args):
    if getattr(args, "k", None) is not None and args.k < 1:
        raise UsageError("--k must be positive")
    if getattr(args, "delta", None) is not None and not 0 < args.delta < 1:
        raise UsageError("--delta must lie in (0, 1)")
    if getattr(args, "m", None) is not None and isinstance(args.m, int) and args.m < 1:
        raise UsageError("--m must be positive")


def cmd_build(args):
    if args.p < 1:
        raise UsageError("--p must be >= 1")
    c = build_fixed_p(_load(args), args.k, args.p, args.delta, args.m, args.seed)
    io.save_coreset(args.out, c)
    print(f"wrote {args.out}: fixed-p coreset, m={c.m}, mean_S={c.provenance['mean_S']!r}")


def cmd_build_oneshot(args):
    if args.p_max < 1:
        raise UsageError("--p-max must be >= 1")
    c = build_oneshot(_load(args), args.k, args.p_max, args.delta, args.m, args.seed, args.spacing)
    io.save_coreset(args.out, c)
    print(f"wrote {args.out}: one-shot coreset, m={c.m}, grid size={len(c.provenance['grid'])}, "
          f"mean_S={c.provenance['mean_S']!r}")


def cmd_eval(args):
    data = _load(args)
    c = io.load_coreset(args.coreset)
    if c.n != data.n:
        raise ValidationError(f"coreset was built on n={c.n} points, input has {data.n}")
    k = args.k if args.k is not None else c.provenance.get("k")
    if k is None:
        raise UsageError("--k is required when the coreset does not record k")
    # without --seed the coreset's own seed drives the query family
    seed = [args.seed] if args.seed is not None else c.provenance.get("seed", [0])
    strategy, count = parse_queries(args.queries)
    fam = sample_queries(data, k, args.p, count, strategy, sub_seed(seed, 7))
    rep = measure_error(data, c, fam, args.p)
    rep.meta.update({"queries": args.queries, "k": int(k), "seed": list(fam.seed)})
    text = io.report_to_text(rep)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_oracle(args):
    data = _load(args)
    sigma = exact_sensitivity(data, args.k, args.p)
    prof = sensitivity_bound(data, args.k, args.p, args.delta, args.seed)
    dominated = bool(np.all(prof.s >= sigma))
    doc = {"k": args.k, "p": args.p, "sigma": sigma.tolist(), "s": prof.s.tolist(),
           "mean_S": prof.mean_S, "dominance": dominated}
    text = json.dumps(doc, indent=1) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_synth(args):
    spec = io.load_synth_spec(args.spec)
    if args.seed is not None:
        spec = type(spec).from_dict({**spec.to_dict(), "seed": args.seed})
    io.save_points_csv(args.out, generate(spec).points)


def cmd_bench(args):
    data = _load(args)
    ps, ms, seeds = _floats(args.ps), _ints(args.m), _ints(args.seeds)
    if not ps or not ms or not seeds:
        raise UsageError("--ps, --m and --seeds need at least one value")
    if min(ps) < 1 or max(ps) > args.p_max:
        raise UsageError("every --ps value must lie in [1, --p-max]")
    strategy, count = parse_queries(args.queries)
    rows = []
    for seed in seeds:
        fams = {p: sample_queries(data, args.k, p, count, strategy, (seed, 7, i)) for i, p in enumerate(ps)}
        for m in ms:
            one = build_oneshot(data, args.k, args.p_max, args.delta, m, (seed, 0), args.spacing)
            uni = uniform_coreset(data, m, (seed, 2))
            for i, p in enumerate(ps):
                fixed = build_fixed_p(data, args.k, p, args.delta, m, (seed, 1, i))
                for name, c in (("one-shot", one), ("fixed-p", fixed), ("uniform", uni)):
                    r = measure_error(data, c, fams[p], p)
                    rows.append([name, p, m, seed, r.max_error, r.mean_error])
    out = open(args.out, "w", encoding="utf-8", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["method", "p", "m", "seed", "max_error", "mean_error"])
        for row in rows:
            w.writerow([row[0], repr(row[1]), row[2], row[3], repr(row[4]), repr(row[5])])
    finally:
        if args.out:
            out.close()


def cmd_advise_m(args):
    m_theory = theoretical_sample_size(args.n, args.k, args.p, args.eps, args.delta, args.space, args.d)
    print(f"theoretical m = {m_theory}")
    if args.m is not None:
        print(f"chosen m = {args.m} ({args.m / m_theory:.3g} of the theoretical size)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kcoreset", description="Coresets for k-clustering with power p.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def data_args(sp):
        sp.add_argument("--in", dest="input", required=True, help="points CSV (or distance matrix with --metric)")
        sp.add_argument("--metric", action="store_true", help="input is a square distance matrix")

    sp = sub.add_parser("build", help="fixed-p coreset")
    data_args(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--delta", type=float, default=0.1)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("build-oneshot", help="one coreset for all p in [1, p_max]")
    data_args(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p-max", type=float, required=True)
    sp.add_argument("--spacing", type=_spacing, default=AUTO, help="grid spacing, or 'auto' for 1/ln n")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--delta", type=float, default=0.1)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_build_oneshot)

    sp = sub.add_parser("eval", help="relative cost error of a coreset over a query family")
    data_args(sp)
    sp.add_argument("--coreset", required=True)
    sp.add_argument("--queries", default="dp:100", help="STRATEGY:COUNT, e.g. dp:100")
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--seed", type=int, help="query seed (defaults to the coreset's seed)")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("oracle", help="exact sensitivities and dominance of the bound (small inputs)")
    data_args(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--delta", type=float, default=0.1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("synth", help="synthetic points CSV from a spec document")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--seed", type=int, help="override the spec's seed")
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("bench", help="one-shot vs fixed-p vs uniform error table")
    data_args(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p-max", type=float, required=True)
    sp.add_argument("--ps", required=True, help="comma-separated powers to evaluate")
    sp.add_argument("--m", required=True, help="comma-separated coreset sizes")
    sp.add_argument("--seeds", required=True, help="comma-separated seeds")
    sp.add_argument("--spacing", type=_spacing, default=AUTO)
    sp.add_argument("--delta", type=float, default=0.1)
    sp.add_argument("--queries", default="dp:50")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("advise-m", help="worst-case coreset size next to a chosen m")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--space", choices=("metric", "euclidean"), default="metric")
    sp.add_argument("--d", type=int)
    sp.add_argument("--m", type=int)
    sp.set_defaults(func=cmd_advise_m)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _check_common(args)
        args.func(args)
    except OSError as exc:
        print(f"kcoreset: I/O error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"kcoreset: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
