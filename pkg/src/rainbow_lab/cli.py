"""Command line entry point: ``rainbow-lab <subcommand> ...``.

Exit codes: 0 on success, 1 on domain errors (printed as ``error: <Kind>:
<message>`` or as a JSON object with ``--json``), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import coloring as col
from . import graphon as gph
from .blowup import FIXTURE_NAMES, VERTEX_BUDGET, BlowupSpec, blowup_coloring, fixture, verify_blowup
from .errors import RainbowLabError
from .graphs import load_graph
from .stochastic import SearchConfig, estimate_density, local_search
from .witness import build_witness_graphon, certify_uncommon


class UsageError(Exception):
    pass


def load_coloring(source: str) -> col.EdgeColoring:
    if source.startswith("fixture:"):
        name = source.split(":", 1)[1]
        if name not in FIXTURE_NAMES:
            raise UsageError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
        return fixture(name)
    if not os.path.exists(source):
        raise UsageError(f"no such coloring file: {source}")
    return col.read_coloring(source)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from None


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("RAINBOW_LAB_THREADS")
    return int(env) if env and env.isdigit() and int(env) > 0 else 1


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_count(args):
    h = load_graph(args.pattern)
    c = load_coloring(args.coloring)
    res = col.count_rainbow(h, c, workers=_threads(args))
    _emit(args,
          {"copies": res.copies, "total": res.total, "density_per_copy": str(res.density_per_copy)},
          f"{res.copies}\n(total copies {res.total}, rainbow fraction {res.density_per_copy})")


def cmd_threshold(args):
    h = load_graph(args.pattern)
    t = col.blowup_threshold(h, args.r, args.m)
    need = col.minimal_beating_count(t)
    _emit(args, {"threshold": str(t), "minimal_beating_count": need},
          f"threshold: {t}\nminimal beating count: {need}")


def cmd_uniform_expect(args):
    h = load_graph(args.pattern)
    exp = col.expected_uniform_count(h, args.r, args.n)
    payload = {"expected": str(exp)}
    text = f"expected rainbow copies: {exp}"
    if args.enumerate:
        mean = col.empirical_uniform_mean(h, args.r, args.n)
        payload["enumerated_mean"] = str(mean)
        payload["agree"] = mean == exp
        text += f"\nenumerated mean: {mean}\nagree: {mean == exp}"
    _emit(args, payload, text)


def cmd_density(args):
    h = load_graph(args.pattern)
    w = gph.read_graphon(args.graphon)
    res = gph.rainbow_density(h, w, budget=args.density_budget)
    _emit(args, {"density": str(res.value), "injections": res.injection_count},
          f"rainbow density: {res.value}\ninjections: {res.injection_count}")


def cmd_baseline(args):
    h = load_graph(args.pattern)
    b = gph.baseline_density(h, args.r)
    _emit(args, {"baseline": str(b)}, f"baseline density: {b}")


def cmd_witness(args):
    h = load_graph(args.pattern)
    cert = certify_uncommon(h, args.r, k=args.k, epsilon=args.epsilon, budget=args.density_budget)
    if args.emit_graphon:
        gph.write_graphon(build_witness_graphon(cert.r, cert.k, cert.epsilon), args.emit_graphon)
    _emit(args, cert.to_dict(), cert.format_text())


def cmd_blowup(args):
    seed = load_coloring(args.seed)
    spec = BlowupSpec(seed, args.d)
    payload = {"m": seed.n, "d": args.d, "n": spec.n, "r": seed.r}
    lines = [f"blowup of K_{seed.n} to K_{spec.n} ({seed.r} colors)"]
    if args.verify:
        if not args.pattern:
            raise UsageError("--verify needs --pattern")
        if args.d >= 3 and not args.deep:
            raise UsageError("verification at depth >= 3 is slow; pass --deep to run it")
        rep = verify_blowup(load_graph(args.pattern), spec, workers=_threads(args),
                            vertex_budget=args.vertex_cap)
        payload.update({"seed_count": rep.seed_count, "actual": rep.actual,
                        "lower_bound": rep.lower_bound, "holds": rep.holds})
        lines += [f"seed rainbow copies: {rep.seed_count}", f"blowup rainbow copies: {rep.actual}",
                  f"lower bound: {rep.lower_bound}", f"holds: {rep.holds}"]
    if args.out:
        col.write_coloring(blowup_coloring(spec, args.vertex_cap), args.out)
        payload["out"] = args.out
        lines.append(f"written: {args.out}")
    _emit(args, payload, "\n".join(lines))


def cmd_sample(args):
    h = load_graph(args.pattern)
    w = gph.read_graphon(args.graphon)
    rep = estimate_density(h, w, args.n, args.trials, args.seed, colorings=args.colorings)
    payload = {
        "n": rep.n, "trials": rep.trials, "colorings": rep.colorings, "hits": rep.hits,
        "empirical_mean": str(rep.empirical_mean), "exact_target": str(rep.exact_target),
        "standard_error_bound": str(rep.standard_error_bound),
        "bias_allowance": str(rep.bias_allowance), "consistent": rep.consistent(),
    }
    text = "\n".join([
        f"empirical mean: {rep.empirical_mean} (~{float(rep.empirical_mean):.6f})",
        f"exact target: {rep.exact_target} (~{float(rep.exact_target):.6f})",
        f"standard error: ~{float(rep.standard_error_bound):.2e}",
        f"consistent (3 SE + bias): {rep.consistent()}",
    ])
    _emit(args, payload, text)


def cmd_search(args):
    h = load_graph(args.pattern)
    cfg = SearchConfig(args.m, args.r, h, max_steps=args.budget, restarts=args.restarts,
                       seed=args.seed, workers=_threads(args))
    res = local_search(cfg)
    summary = {"count": res.count.copies, "total": res.count.total,
               "threshold": str(res.threshold), "beat": res.beats_threshold}
    if args.out:
        col.write_coloring(res.coloring, args.out)
        summary["out"] = args.out
    else:
        summary["coloring"] = col.format_coloring_text(res.coloring)
    print(json.dumps(summary, indent=2))


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress):
        flags = argparse.ArgumentParser(add_help=False)

        def default(value):
            return argparse.SUPPRESS if suppress else value

        flags.add_argument("--json", action="store_true", default=default(False),
                           help="machine-readable output")
        flags.add_argument("--threads", type=_positive, default=default(None),
                           help="worker cap (fallback: RAINBOW_LAB_THREADS)")
        flags.add_argument("--density-budget", type=_positive, default=default(gph.DENSITY_BUDGET))
        flags.add_argument("--vertex-cap", type=_positive, default=default(VERTEX_BUDGET))
        return flags

    # sub-level copies must not overwrite flags given before the subcommand
    common = global_flags(suppress=True)
    parser = argparse.ArgumentParser(prog="rainbow-lab", parents=[global_flags(suppress=False)],
                                     description="Rainbow copies of small graphs in colored K_n.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="count rainbow copies in a coloring")
    p.add_argument("--pattern", required=True)
    p.add_argument("--coloring", required=True, help="coloring file or fixture:K5 / fixture:K8")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("threshold", parents=[common], help="count a seed of K_m must beat")
    p.add_argument("--pattern", required=True)
    p.add_argument("-r", type=_positive, required=True)
    p.add_argument("-m", type=_positive, required=True)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("uniform-expect", parents=[common], help="expected rainbow copies, uniform coloring")
    p.add_argument("--pattern", required=True)
    p.add_argument("-r", type=_positive, required=True)
    p.add_argument("-n", type=_positive, required=True)
    p.add_argument("--enumerate", action="store_true", help="also average over all colorings")
    p.set_defaults(func=cmd_uniform_expect)

    p = sub.add_parser("density", parents=[common], help="exact rainbow density in a step graphon")
    p.add_argument("--pattern", required=True)
    p.add_argument("--graphon", required=True)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("baseline", parents=[common], help="rainbow density of the uniform coloring")
    p.add_argument("--pattern", required=True)
    p.add_argument("-r", type=_positive, required=True)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("witness", parents=[common], help="certify r-rainbow uncommonness")
    p.add_argument("--pattern", required=True)
    p.add_argument("-r", type=_positive, required=True)
    p.add_argument("--epsilon", type=_fraction, default=None)
    p.add_argument("--k", type=_positive, default=None)
    p.add_argument("--emit-graphon", default=None, metavar="FILE")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("blowup", parents=[common], help="iterated blowup of a seed coloring")
    p.add_argument("--seed", required=True, help="coloring file or fixture:K5 / fixture:K8")
    p.add_argument("-d", type=_positive, required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--pattern", default=None)
    p.add_argument("--deep", action="store_true", help="allow verification at depth >= 3")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("sample", parents=[common], help="Monte Carlo rainbow density")
    p.add_argument("--pattern", required=True)
    p.add_argument("--graphon", required=True)
    p.add_argument("-n", type=_positive, required=True)
    p.add_argument("--trials", type=_positive, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--colorings", type=_positive, default=None)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("search", parents=[common], help="hill-climb for a good seed coloring")
    p.add_argument("--pattern", required=True)
    p.add_argument("-m", type=_positive, required=True)
    p.add_argument("-r", type=_positive, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=_positive, default=20000, help="steps per restart")
    p.add_argument("--restarts", type=_positive, default=8)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_search)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"rainbow-lab: error: {exc}", file=sys.stderr)
        return 2
    except RainbowLabError as exc:
        kind = type(exc).__name__
        if args.json:
            print(json.dumps({"error": kind, "message": str(exc)}))
        else:
            print(f"error: {kind}: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
