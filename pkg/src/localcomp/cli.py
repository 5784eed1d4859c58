"""Command-line front end.

    localcomp check MODEL
    localcomp cover MODEL
    localcomp marginals MODEL (--all | --target X,Y) [--cover] [--normalize]
                              [--oracle] [--tree-out PATH] [--trace PATH]

Exit codes: 0 success, 1 invalid input, 2 undefined combination,
3 not a hypertree, 4 oracle mismatch.
"""

import argparse
import sys
from pathlib import Path

from .errors import DomainError, UndefinedCombination
from .hypergraph import Hypergraph, construction_sequence, edge_key, fmt_edge, hypertree_cover
from .markov_tree import from_construction_sequence
from .model import ModelError, dumps, factor_record, load_model, variables_record
from .potential import Potential, normalize
from .propagation import brute_force_marginal, propagate
from .valuation import Factorization, assign_to_cover

EXIT_OK, EXIT_INPUT, EXIT_UNDEFINED, EXIT_NOT_HYPERTREE, EXIT_ORACLE = range(5)
ORACLE_TOL = 1e-9


class _Exit(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    # usage errors are invalid input (exit 1), not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _Exit(EXIT_INPUT, f"{self.prog}: error: {message}")


def _sequence_json(seq):
    return [{"hyperedge": list(edge_key(h)),
             "branch": list(edge_key(b)) if b is not None else None}
            for h, b in seq.steps]


def _domain_hypergraph(model):
    return Hypergraph(f.variables for f in model.factors)


def cmd_check(args, out):
    model = load_model(args.model)
    H = _domain_hypergraph(model)
    connected = H.is_connected()
    seq = construction_sequence(H) if connected else None
    out.write(f"hyperedges: {' '.join(fmt_edge(h) for h in H)}\n")
    out.write(f"connected: {'yes' if connected else 'no'}\n")
    out.write(f"hypertree: {'yes' if seq is not None else 'no'}\n")
    if seq is None:
        return EXIT_NOT_HYPERTREE
    out.write("construction sequence:\n")
    for h, b in seq.steps:
        out.write(f"  {fmt_edge(h)}" + (f" <- {fmt_edge(b)}" if b is not None else "") + "\n")
    return EXIT_OK


def cmd_cover(args, out):
    model = load_model(args.model)
    comps = []
    for comp in _domain_hypergraph(model).components():
        cover, seq = hypertree_cover(comp)
        comps.append({
            "input": [list(edge_key(h)) for h in comp],
            "cover": [list(edge_key(h)) for h in cover],
            "sequence": _sequence_json(seq),
            "max_size": max(len(h) for h in cover),
        })
    out.write(dumps({"components": comps}))
    return EXIT_OK


def _component_plan(model, use_cover):
    """Per connected component: (factorization on a hypertree, Markov tree)."""
    plans = []
    for comp in _domain_hypergraph(model).components():
        factors = [f for f in model.factors if f.variables <= comp.universe]
        F = Factorization.from_factors(factors, model.variables)
        seq = construction_sequence(F.hypergraph)
        if seq is None:
            if not use_cover:
                raise _Exit(EXIT_NOT_HYPERTREE,
                            f"factor domains {F.hypergraph!r} do not form a hypertree "
                            "(use --cover)")
            cover, seq = hypertree_cover(F.hypergraph)
            F = assign_to_cover(F, cover)
        plans.append((F, from_construction_sequence(seq)))
    return plans


def cmd_marginals(args, out):
    model = load_model(args.model)
    H = _domain_hypergraph(model)
    if not args.cover and construction_sequence(H) is None:
        raise _Exit(EXIT_NOT_HYPERTREE,
                    f"factor domains {H!r} do not form a hypertree (use --cover)")
    plans = _component_plan(model, args.cover)

    target = None
    if args.target is not None:
        target = frozenset(s.strip() for s in args.target.split(",") if s.strip())
        if not any(target in T.vertices for _, T in plans):
            raise _Exit(EXIT_INPUT, f"--target {fmt_edge(target)} is not a vertex of the tree")

    results = []
    for F, T in plans:
        try:
            results.append(propagate(F, T))
        except UndefinedCombination as exc:
            raise _Exit(EXIT_UNDEFINED, f"undefined combination: {exc}")

    marginals = {}
    for k, res in enumerate(results):
        scale = 1.0
        if model.algebra == "potential":
            # other components contribute their total mass as a constant factor
            for m, other in enumerate(results):
                if m != k:
                    scale *= next(iter(other.marginals.values())).total()
        for h, v in res.marginals.items():
            if scale != 1.0:
                v = Potential(v.domain, v.frames, v.table * scale)
            marginals[h] = v

    if args.oracle:
        full = Factorization.from_factors(model.factors, model.variables)
        for h, v in marginals.items():
            try:
                ref = brute_force_marginal(full, h)
            except UndefinedCombination as exc:
                raise _Exit(EXIT_UNDEFINED, f"undefined combination: {exc}")
            if not v.isclose(ref, ORACLE_TOL):
                raise _Exit(EXIT_ORACLE, f"oracle mismatch on {fmt_edge(h)}")

    if args.tree_out:
        trees = [T.to_json() for _, T in plans]
        Path(args.tree_out).write_text(dumps(trees[0] if len(trees) == 1 else trees),
                                       encoding="utf-8")
    if args.trace:
        trace = []
        for res in results:
            V = res.tree.vertices
            for ev in res.trace:
                if ev["rule"] == 1:
                    trace.append({"rule": 1, "from": list(edge_key(V[ev["from"]])),
                                  "to": list(edge_key(V[ev["to"]])), "domain": ev["domain"]})
                else:
                    trace.append({"rule": 2, "vertex": ev["domain"]})
        Path(args.trace).write_text(dumps(trace), encoding="utf-8")

    chosen = [h for h in sorted(marginals, key=edge_key) if target is None or h == target]
    records = []
    for h in chosen:
        v = marginals[h]
        if args.normalize and isinstance(v, Potential):
            v = normalize(v)
        records.append(factor_record(v))
    out.write(dumps({
        "algebra": model.algebra,
        "variables": variables_record(model.variables),
        "marginals": records,
    }))
    return EXIT_OK


def build_parser():
    p = _Parser(prog="localcomp", description="Local computation of marginals on hypertrees.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    c = sub.add_parser("check", help="test whether the factor domains form a hypertree")
    c.add_argument("model")
    c.set_defaults(func=cmd_check)
    c = sub.add_parser("cover", help="hypertree cover of the factor domains")
    c.add_argument("model")
    c.set_defaults(func=cmd_cover)
    m = sub.add_parser("marginals", help="marginals on every vertex of a Markov tree")
    m.add_argument("model")
    g = m.add_mutually_exclusive_group(required=True)
    g.add_argument("--target", metavar="VARS", help="comma-separated hyperedge, e.g. X,Y")
    g.add_argument("--all", action="store_true")
    m.add_argument("--cover", action="store_true",
                   help="enlarge to a hypertree cover when the domains are not a hypertree")
    m.add_argument("--normalize", action="store_true")
    m.add_argument("--oracle", action="store_true",
                   help="check every marginal against combine-then-marginalize")
    m.add_argument("--tree-out", metavar="PATH")
    m.add_argument("--trace", metavar="PATH")
    m.set_defaults(func=cmd_marginals)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except _Exit as exc:
        err.write(f"{exc}\n")
        return exc.code
    except ModelError as exc:
        err.write(f"invalid model: {exc}\n")
        return EXIT_INPUT
    except DomainError as exc:
        err.write(f"invalid model: {exc}\n")
        return EXIT_INPUT
    except UndefinedCombination as exc:
        err.write(f"undefined combination: {exc}\n")
        return EXIT_UNDEFINED


if __name__ == "__main__":
    sys.exit(main())
