"""Command-line interface.

Exit codes: 0 success, 2 failed validation or bad input, 3 infeasible,
4 parse error, 5 internal consistency error.
"""
from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import formats
from .errors import (InfeasibleError, InternalConsistencyError, NoPackingError, ParseError,
                     SizeLimitError, ThresholdViolation)

EXIT_OK, EXIT_INVALID, EXIT_INFEASIBLE, EXIT_PARSE, EXIT_INTERNAL = 0, 2, 3, 4, 5


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_graph(path: str):
    return formats.parse_graph(_read(path))


def _write(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dot(args, g, subs=()) -> None:
    if getattr(args, "dot", None):
        Path(args.dot).write_text(formats.emit_dot(g, list(subs)))


def _groups(g) -> list[tuple[int, ...]]:
    """Group labels of the blacks; unlabeled blacks form singleton groups."""
    by = {}
    loose = []
    for b in g.blacks():
        lab = g.group(b)
        if lab is None:
            loose.append((b,))
        else:
            by.setdefault(lab, []).append(b)
    return [tuple(sorted(v)) for _, v in sorted(by.items())] + loose


# commands ------------------------------------------------------------------

def cmd_kappa(args) -> int:
    from .connectivity import element_connectivity_value
    g = _load_graph(args.graph)
    if args.pairs == "all":
        bs = g.blacks()
        pairs = [(a, b) for i, a in enumerate(bs) for b in bs[i + 1:]]
    else:
        try:
            u, v = (int(x) for x in args.pairs.split(","))
        except ValueError:
            raise ValueError("--pairs takes 'all' or 'u,v'") from None
        pairs = [(u, v)]
    vals = []
    for u, v in pairs:
        val = element_connectivity_value(g, u, v)
        vals.append(val)
        print(f"{u} {v} {val}")
    if len(vals) > 1:
        print(f"min {min(vals)}")
    return EXIT_OK


def _record_json(rec) -> dict:
    d = dataclasses.asdict(rec)
    d["op"] = type(rec).__name__
    return d


def cmd_reduce(args) -> int:
    from .reduction import reduce_to_bipartite
    g = _load_graph(args.graph)
    red = reduce_to_bipartite(g, verify=args.verify)
    if args.trace:
        Path(args.trace).write_text(formats.dump_certificate(
            {"records": [_record_json(r) for r in red.trace.records],
             "decisions": [[e, d.value] for e, d in red.decisions]}))
    _write(args, formats.emit_graph(red.reduced))
    _dot(args, red.reduced)
    return EXIT_OK


def _emit_packing(args, g, p) -> int:
    _write(args, formats.dump_certificate(formats.packing_certificate(p)))
    _dot(args, g, p.subgraphs)
    print(f"{len(p)} {p.kind}", file=sys.stderr)
    return EXIT_OK


def cmd_pack_trees(args) -> int:
    from .packing import pack_trees_random_coloring
    g = _load_graph(args.graph)
    p = pack_trees_random_coloring(g, g.blacks(), args.k, seed=args.seed, verify=args.verify)
    return _emit_packing(args, g, p)


def cmd_pack_forests(args) -> int:
    from .packing import pack_forests
    g = _load_graph(args.graph)
    p = pack_forests(g, _groups(g), args.k, seed=args.seed, verify=args.verify)
    return _emit_packing(args, g, p)


def cmd_pack_planar(args) -> int:
    from .planar import pack_planar_forests, pack_planar_trees
    g = _load_graph(args.graph)
    if args.forests:
        p = pack_planar_forests(g, _groups(g), args.k, args.genus_c, verify=args.verify)
    else:
        p = pack_planar_trees(g, g.blacks(), args.k, args.genus_c, verify=args.verify)
    return _emit_packing(args, g, p)


def cmd_pack_treewidth(args) -> int:
    from .treewidth import pack_treewidth_trees
    g = _load_graph(args.graph)
    td = formats.parse_td(_read(args.td))
    p = pack_treewidth_trees(g, g.blacks(), args.k, td, seed=args.seed)
    return _emit_packing(args, g, p)


def cmd_spiders(args) -> int:
    from .spider import spider_decompose
    g = _load_graph(args.graph)
    bs = g.blacks()
    sd = spider_decompose(g, bs, args.k)
    _write(args, formats.dump_certificate(formats.spider_certificate(sd, bs, args.k)))
    _dot(args, sd.host, [sp.edges() for sp in sd.spiders])
    return EXIT_OK


def cmd_ssk(args) -> int:
    from .ssk import SskInstance
    text = _read(args.graph)
    g = formats.parse_graph(text)
    inst = SskInstance(g, args.root, tuple(b for b in g.blacks() if b != args.root), args.k)
    inst.check_feasible()
    seeds = list(range(args.seeds)) if args.seeds else [args.seed]
    jobs = [(formats.emit_graph(g), args.root, args.k, s) for s in seeds]
    if len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(len(jobs), os.cpu_count() or 1)) as pool:
            runs = list(pool.map(_ssk_run, jobs))
    else:
        runs = [_ssk_run(jobs[0])]
    for seed, res in runs:
        print(f"seed {seed} cost {res.cost}", file=sys.stderr)
    seed, best = min(runs, key=lambda sr: (sr[1].cost, sr[0]))
    doc = formats.ssk_certificate(inst, best)
    doc["seed"] = seed
    if len(runs) > 1:
        doc["costs_by_seed"] = {str(s): str(r.cost) for s, r in runs}
    _write(args, formats.dump_certificate(doc))
    _dot(args, g, [best.edges])
    return EXIT_OK


def _ssk_run(payload):
    text, root, k, seed = payload
    from .ssk import SskInstance, greedy_ssk
    g = formats.parse_graph(text)
    inst = SskInstance(g, root, tuple(b for b in g.blacks() if b != root), k)
    return seed, greedy_ssk(inst, seed=seed)


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    doc = formats.load_certificate(_read(args.certificate))
    if doc["kind"] != args.kind:
        raise ValueError(f"certificate is of kind {doc['kind']!r}, not {args.kind!r}")
    if args.kind == "packing":
        from .oracle import validate_packing
        from .packing import Packing
        p = Packing([frozenset(s) for s in doc["subgraphs"]], [tuple(t) for t in doc["groups"]],
                    doc.get("subgraph_kind", "trees"))
        rep = validate_packing(g, p.groups, p)
        ok, summary = rep.passed, rep.summary()
    elif args.kind == "spiders":
        from .graph import subdivide_terminal_edges
        from .oracle import validate_spider_decomposition
        from .spider import Spider, SpiderDecomposition
        blacks = doc["blacks"]
        host, _ = subdivide_terminal_edges(g.recolored(blacks))
        spiders = [Spider(s["head"], s["legs"], s["leg_edges"]) for s in doc["spiders"]]
        sd = SpiderDecomposition(spiders, {}, host)
        rep = validate_spider_decomposition(host, blacks, doc["k"], sd)
        ok, summary = rep.passed, rep.summary()
    else:
        from .ssk import SskInstance, verify_ssk_feasible
        inst = SskInstance(g, doc["root"], tuple(doc["terminals"]), doc["k"])
        missing = [e for e in doc["edges"] if e not in g.edges]
        if missing:
            ok, summary = False, f"unknown edges {missing[:5]}"
        else:
            rep = verify_ssk_feasible(doc["edges"], inst)
            ok = rep.passed
            summary = "pass" if ok else "; ".join(f"{t}: {v} < {inst.k}" for t, v in rep.failures)
            cost = sum((g.edges[e].cost for e in doc["edges"]), Fraction(0))
            if ok and "cost" in doc and Fraction(doc["cost"]) != cost:
                ok, summary = False, f"declared cost {doc['cost']} but edges cost {cost}"
    print(summary)
    return EXIT_OK if ok else EXIT_INVALID


def _param(tok: str):
    key, sep, val = tok.partition("=")
    if not sep:
        raise ValueError(f"generator parameters look like name=value, got {tok!r}")
    for conv in (int, float):
        try:
            return key.replace("-", "_"), conv(val)
        except ValueError:
            pass
    return key.replace("-", "_"), val


def cmd_gen(args) -> int:
    from .generators import GENERATORS, generate_instance
    params = dict(_param(t) for t in args.params)
    if args.seed is not None:
        params["seed"] = args.seed
    if args.kind not in GENERATORS:
        raise ValueError(f"unknown generator kind {args.kind!r}; choose from {sorted(GENERATORS)}")
    inst = generate_instance(args.kind, **params)
    g = inst.graph.copy()
    for i, t in enumerate(inst.groups):
        for x in t:
            g.set_vertex(x, "black", i)
    notes = [f"kind={args.kind} " + " ".join(f"{k}={v}" for k, v in sorted(params.items())),
             f"k={inst.k}", "groups=" + ";".join(",".join(map(str, t)) for t in inst.groups)]
    _write(args, formats.emit_graph(g, notes))
    if inst.td is not None and args.td_out:
        Path(args.td_out).write_text(formats.emit_td(inst.td, len(g.vertices)))
    _dot(args, g)
    return EXIT_OK


# parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="elemconn", description="Element-connectivity tools.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, graph=True, out=True):
        p = sub.add_parser(name, help=help_text)
        if graph:
            p.add_argument("graph", help="graph document ('-' for stdin)")
        if out:
            p.add_argument("--out", help="write the main output here instead of stdout")
            p.add_argument("--dot", help="also write a DOT rendering here")
        p.set_defaults(func=fn)
        return p

    p = add("kappa", cmd_kappa, "element connectivity between black pairs", out=False)
    p.add_argument("--pairs", default="all", help="'all' or 'u,v'")

    p = add("reduce", cmd_reduce, "reduce to a bipartite graph preserving connectivity")
    p.add_argument("--verify", action="store_true", help="recheck every pair after every step")
    p.add_argument("--trace", help="write the operation trace as JSON here")

    for name, fn, text in (("pack-trees", cmd_pack_trees, "pack Steiner trees on all blacks"),
                           ("pack-forests", cmd_pack_forests, "pack Steiner forests for the black groups")):
        p = add(name, fn, text)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--verify", action="store_true", help="check the declared connectivity first")

    p = add("pack-planar", cmd_pack_planar, "planar tree or forest packing")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--forests", action="store_true")
    p.add_argument("--genus-c", type=int, default=None, help="per-merge divisor for bounded genus")
    p.add_argument("--verify", action="store_true", help="test planarity of the input")

    p = add("pack-treewidth", cmd_pack_treewidth, "tree packing with a tree decomposition")
    p.add_argument("--td", required=True, help="tree decomposition file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = add("spiders", cmd_spiders, "spider decomposition of the blacks")
    p.add_argument("--k", type=int, required=True)

    p = add("ssk", cmd_ssk, "greedy single-sink k-vertex-connectivity; terminals are the blacks")
    p.add_argument("--root", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--seed", type=int, default=0)
    grp.add_argument("--seeds", type=int, help="run seeds 0..N-1 and keep the cheapest")

    p = add("verify", cmd_verify, "check a certificate against a graph", out=False)
    p.add_argument("--certificate", required=True)
    p.add_argument("--kind", required=True, choices=["packing", "spiders", "ssk"])

    p = add("gen", cmd_gen, "generate an instance", graph=False)
    p.add_argument("kind")
    p.add_argument("params", nargs="*", help="name=value parameters")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--td-out", help="write the decomposition here when the kind has one")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InfeasibleError, NoPackingError, ThresholdViolation) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InternalConsistencyError as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, KeyError, TypeError, SizeLimitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
