"""Command line entry point: ``orcycles <subcommand> ...``.

Exit codes: 0 success, 1 nothing found (or a claim refuted), 2 usage or
input error, 3 search budget exhausted. Every run writes a manifest
(to ``--manifest`` or stderr). Result files are written atomically.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .constructions import (
    apex_class_sizes,
    blowup_classes,
    blowup_cycle,
    blowup_with_apex,
    butterfly_gadget,
    class_sizes,
    complete_bipartite_digraph,
    directed_cycle,
    extremal_3cycle_classes,
    extremal_3cycle_vertex,
    random_degree_conditioned,
    rotational_tournament,
    transitive_tournament,
)
from .errors import BudgetExceeded, EmbeddingNotFound, OrientedGraphError
from .finders import (
    find_3cycle_through,
    find_4cycle_through,
    find_5cycle_through,
    find_6cycle_through,
    find_butterfly,
    find_lcycle_through,
    find_path_345,
)
from .graph import degree_summary
from .io import atomic_write, dump_json, read_edge_list, to_dot, write_edge_list
from .oracle import (
    DEFAULT_BUDGET,
    SplitExperimentConfig,
    has_cycle_exact,
    random_split_experiment,
    threshold_search,
)
from .walks import (
    check_embedding,
    closed_walk_of_length,
    embed_walk_greedy,
    pattern_to_walk,
)

SCHEMA_VERSION = 1
JOBS_ENV = "ORCYCLES_JOBS"

EXIT_OK, EXIT_NOT_FOUND, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _int_list(text: str) -> list[int]:
    if not text:
        return []
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a fraction such as 1/3, got {text!r}")


def _emit(args, payload: dict) -> None:
    payload = {"schema": SCHEMA_VERSION, **payload}
    text = dump_json(payload)
    if getattr(args, "output", None):
        atomic_write(args.output, text)
    else:
        sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------------


def _generate(args):
    fam = args.family
    meta = {"family": fam}
    need = {"blowup": ("k", "n"), "rotational": ("n",), "extremal3": ("m",), "apex": ("n",),
            "transitive": ("n",), "cycle": ("n",), "bipartite": ("n",), "random": ("n", "target")}
    for name in need.get(fam, ()):
        if getattr(args, name) is None:
            raise UsageError(f"--family {fam} needs --{name}")
    if fam == "blowup":
        G = blowup_cycle(args.k, args.n)
        meta.update(k=args.k, n=args.n, class_sizes=class_sizes(args.k, args.n),
                    classes=[list(r) for r in blowup_classes(args.k, args.n)])
    elif fam == "rotational":
        G = rotational_tournament(args.n)
    elif fam == "extremal3":
        G, u = extremal_3cycle_vertex(args.m)
        meta.update(m=args.m, u=u, classes=extremal_3cycle_classes(args.m))
    elif fam == "apex":
        G, u = blowup_with_apex(args.n)
        meta.update(u=u, class_sizes=apex_class_sizes(args.n))
    elif fam == "butterfly":
        G = butterfly_gadget()
        meta.update(labels={"x": 0, "a": 1, "z": 2, "b": 3, "y": 4})
    elif fam == "transitive":
        G = transitive_tournament(args.n)
    elif fam == "cycle":
        G = directed_cycle(args.n)
    elif fam == "bipartite":
        G = complete_bipartite_digraph(args.n)
    else:
        G = random_degree_conditioned(args.n, args.target, args.seed)
        meta.update(target=args.target, seed=args.seed)
    d = degree_summary(G)
    meta.update(n_vertices=G.n, n_edges=G.num_edges(), mode=G.mode,
                min_out=d.min_out, min_in=d.min_in, min_semi=d.min_semi)
    write_edge_list(args.output, G)
    atomic_write(args.meta or f"{args.output}.json", dump_json(meta))
    return EXIT_OK, {"outputs": [args.output, args.meta or f"{args.output}.json"]}


_FINDERS = {
    "3cycle": lambda G, a: find_3cycle_through(G, a.through),
    "4cycle": lambda G, a: find_4cycle_through(G, a.through, fallback=not a.no_fallback, budget=a.budget),
    "5cycle": lambda G, a: find_5cycle_through(G, a.through, fallback=not a.no_fallback, budget=a.budget),
    "6cycle": lambda G, a: find_6cycle_through(G, a.through, fallback=not a.no_fallback, budget=a.budget),
    "butterfly": lambda G, a: find_butterfly(G, a.through),
}


def _find(args):
    G = read_edge_list(args.input)
    if args.what == "lcycle":
        if args.length is None:
            raise UsageError("--what lcycle needs --length")
        res = find_lcycle_through(G, args.through, args.length,
                                  fallback=not args.no_fallback, budget=args.budget)
    elif args.what == "path345":
        if args.to is None:
            raise UsageError("--what path345 needs --to")
        res = find_path_345(G, args.through, args.to, args.avoid)
    else:
        res = _FINDERS[args.what](G, args)
    out = {"query": {"what": args.what, "through": args.through, "length": args.length,
                     "to": args.to, "avoid": args.avoid}, **res.to_dict()}
    _emit(args, out)
    if res.trace.budget_exceeded:
        return EXIT_BUDGET, {}
    return (EXIT_OK if res.found else EXIT_NOT_FOUND), {}


def _walk(args):
    G = read_edge_list(args.input)
    w = closed_walk_of_length(G, args.length)
    _emit(args, {"query": {"length": args.length},
                 "witness": None if w is None else w.to_dict(),
                 "strategy": None if w is None else w.strategy})
    return (EXIT_OK if w is not None else EXIT_NOT_FOUND), {}


def _pattern(args):
    G = read_edge_list(args.input)
    W = pattern_to_walk(args.embed)
    out = {"query": {"pattern": args.embed}, "shape": W.to_dict()}
    try:
        mapping = embed_walk_greedy(G, W)
    except EmbeddingNotFound as e:
        out.update(embedding=None, failed_element=e.element)
        _emit(args, out)
        return EXIT_NOT_FOUND, {}
    if not check_embedding(G, W, mapping):
        raise AssertionError("embedding failed re-validation")
    out["embedding"] = {str(k): v for k, v in sorted(mapping.items())}
    out["walk"] = [mapping[v] for v in W.homomorphism]
    _emit(args, out)
    return EXIT_OK, {}


def _verify(args):
    G = read_edge_list(args.input)
    if args.no_cycle == args.has_cycle:
        raise UsageError("pass exactly one of --no-cycle / --has-cycle")
    w = has_cycle_exact(G, args.length, through=args.through, budget=args.budget)
    claim = "no-cycle" if args.no_cycle else "has-cycle"
    holds = (w is None) if args.no_cycle else (w is not None)
    _emit(args, {"query": {"claim": claim, "length": args.length, "through": args.through,
                           "input": args.input},
                 "result": holds, "exhaustive": True,
                 "witness": None if w is None else w.to_dict(),
                 "shards": 1, "seed": args.seed})
    return (EXIT_OK if holds else EXIT_NOT_FOUND), {}


def _search_threshold(args):
    rec = threshold_search(args.length, args.n, args.budget, jobs=args.jobs,
                           seed=args.seed, samples=args.samples)
    report = rec.to_dict()
    witness_path = args.witness_out
    if witness_path:
        write_edge_list(witness_path, rec.lower_witness)
        report["witness_file"] = witness_path
    _emit(args, {"query": {"length": args.length, "n": args.n}, "result": report,
                 "exhaustive": rec.exhaustive, "shards": rec.shards, "seed": args.seed})
    return EXIT_OK, {"outputs": [p for p in (witness_path,) if p]}


def _split_experiment(args):
    if args.input:
        G = read_edge_list(args.input)
    elif args.k is not None and args.n is not None:
        G = blowup_cycle(args.k, args.n)
    else:
        raise UsageError("pass --in FILE or --k K --n N for a blow-up")
    cfg = SplitExperimentConfig(trials=args.trials, alpha=args.alpha, base=args.base,
                                size_correction=not args.no_correction,
                                relaxed=args.relaxed, tolerance=args.tolerance)
    report = random_split_experiment(G, cfg, seed=args.seed)
    _emit(args, {"query": {"trials": args.trials, "alpha": args.alpha, "base": str(args.base)},
                 "result": report,
                 "seed": args.seed})
    return EXIT_OK, {}


def _export_dot(args):
    G = read_edge_list(args.input)
    text = to_dot(G)
    if args.output:
        atomic_write(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK, {}


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orcycles", description="Cycle finders and checks for oriented graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--manifest", help="write the run manifest here instead of stderr")
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a named graph family as an edge list")
    g.add_argument("--family", required=True,
                   choices=["blowup", "rotational", "extremal3", "apex", "butterfly",
                            "transitive", "cycle", "bipartite", "random"])
    g.add_argument("--k", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--target", type=float, help="target semidegree as a fraction of n")
    g.add_argument("-o", "--output", required=True)
    g.add_argument("--meta", help="JSON sidecar path (default: OUTPUT.json)")
    g.set_defaults(func=_generate)

    f = sub.add_parser("find", help="run a constructive finder")
    f.add_argument("--what", required=True,
                   choices=["3cycle", "4cycle", "5cycle", "6cycle", "lcycle", "path345", "butterfly"])
    f.add_argument("--through", type=int, required=True)
    f.add_argument("--to", type=int, help="end vertex for path345")
    f.add_argument("--length", type=int)
    f.add_argument("--avoid", type=_int_list, default=[])
    f.add_argument("--in", dest="input", required=True)
    f.add_argument("--no-fallback", action="store_true")
    f.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    f.add_argument("-o", "--output")
    f.set_defaults(func=_find)

    w = sub.add_parser("walk", help="closed walk of a given length")
    w.add_argument("--length", type=int, required=True)
    w.add_argument("--in", dest="input", required=True)
    w.add_argument("-o", "--output")
    w.set_defaults(func=_walk)

    pt = sub.add_parser("pattern", help="embed the walk for an oriented cycle pattern")
    pt.add_argument("--embed", required=True)
    pt.add_argument("--in", dest="input", required=True)
    pt.add_argument("-o", "--output")
    pt.set_defaults(func=_pattern)

    v = sub.add_parser("verify", help="exact check for presence or absence of a cycle")
    v.add_argument("--no-cycle", action="store_true")
    v.add_argument("--has-cycle", action="store_true")
    v.add_argument("--length", type=int, required=True)
    v.add_argument("--through", type=int)
    v.add_argument("--in", dest="input", required=True)
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    v.add_argument("-o", "--output")
    v.set_defaults(func=_verify)

    t = sub.add_parser("search-threshold", help="bracket the semidegree forcing a cycle length")
    t.add_argument("--length", type=int, required=True)
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    t.add_argument("--jobs", type=int, default=_default_jobs())
    t.add_argument("--samples", type=int, default=64)
    t.add_argument("--witness-out")
    t.add_argument("-o", "--output")
    t.set_defaults(func=_search_threshold)

    s = sub.add_parser("split-experiment", help="random half-split semidegree experiment")
    s.add_argument("--in", dest="input")
    s.add_argument("--k", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--base", type=_fraction, default=Fraction(3, 8),
                   help="base fraction of u, e.g. 1/3 (default 3/8)")
    s.add_argument("--tolerance", type=float, default=1e-2)
    s.add_argument("--relaxed", action="store_true")
    s.add_argument("--no-correction", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=_split_experiment)

    d = sub.add_parser("export-dot", help="convert an edge list to DOT")
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("-o", "--output")
    d.set_defaults(func=_export_dot)
    return p


def _manifest(args, argv, code, extra, wall):
    params = {k: str(v) if isinstance(v, Fraction) else v
              for k, v in sorted(vars(args).items()) if k not in ("func", "manifest")}
    return {
        "schema": SCHEMA_VERSION,
        "subcommand": args.command,
        "parameters": params,
        "seed": args.seed,
        "inputs": [args.input] if getattr(args, "input", None) else [],
        "outputs": extra.get("outputs", [p for p in (getattr(args, "output", None),) if p]),
        "argv": list(argv),
        "version": __version__,
        "exit_code": code,
        "wall_time": wall,
    }


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    start = time.perf_counter()
    extra = {}
    try:
        code, extra = args.func(args)
    except BudgetExceeded as e:
        print(f"orcycles: budget exhausted: {e}", file=sys.stderr)
        code = EXIT_BUDGET
    except UsageError as e:
        print(f"orcycles: {e}", file=sys.stderr)
        code = EXIT_USAGE
    except (OrientedGraphError, OSError, ValueError, IndexError) as e:
        print(f"orcycles: {type(e).__name__}: {e}", file=sys.stderr)
        code = EXIT_USAGE
    manifest = _manifest(args, argv, code, extra, time.perf_counter() - start)
    if args.manifest:
        try:
            atomic_write(args.manifest, json.dumps(manifest, sort_keys=True, indent=2) + "\n")
        except OSError as e:
            print(f"orcycles: cannot write manifest: {e}", file=sys.stderr)
            return EXIT_USAGE
    else:
        print(json.dumps(manifest, sort_keys=True), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
