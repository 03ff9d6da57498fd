"""Command-line interface: ``rigikit <command> [options]``.

Results go to standard output as ``json``, ``tsv`` or ``human`` text; progress
messages and errors go to standard error.  Exit status is 0 on success, 1
when a verification finds violations and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import enumeration as en
from . import verify as vf
from .constructions import (
    catalog,
    catalog_names,
    cycle_attach,
    one_extension,
    spider_split,
    vertex_split,
    zero_extension,
)
from .field import generic_rank
from .graph import Graph, Graph6Error, decode_graph6, delta, encode_graph6, eta, read_edge_list
from .matroid import RigidityOracle
from .rank_contribution import (
    check_rc_geq_d,
    check_rc_Kfree,
    check_rc_tbound,
    rc_exact,
    rc_monte_carlo,
    rc_star_exact,
    rc_star_monte_carlo,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- output ------------------------------------------------------------------


def _plain(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, tuple):
        return [_plain(y) for y in x]
    if isinstance(x, list):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, float) and x in (float("inf"), float("-inf")):
        return "inf" if x > 0 else "-inf"
    return x


def _dumps(x) -> str:
    return json.dumps(_plain(x), sort_keys=True, separators=(",", ":"))


def render(record: dict, fmt: str, primary: str | None = None) -> str:
    """One record as text.  ``tsv`` is ``key<TAB>json-value`` per top-level key."""
    record = _plain(record)
    if fmt == "json":
        return _dumps(record)
    if fmt == "tsv":
        return "\n".join(f"{k}\t{_dumps(record[k])}" for k in sorted(record))
    lines = []
    if primary is not None and primary in record:
        v = record[primary]
        lines.append(_dumps(v) if not isinstance(v, str) else v)
    for k in sorted(record):
        if k == primary:
            continue
        v = record[k]
        lines.append(f"{k}: {v if isinstance(v, str) else _dumps(v)}")
    return "\n".join(lines)


def parse_tsv(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        key, _, value = line.partition("\t")
        out[key] = json.loads(value)
    return out


# -- inputs ------------------------------------------------------------------


def _load_graphs(args) -> list[tuple[str, Graph]]:
    sources = [s for s in ("graph6", "g6_file", "edge_list", "catalog") if getattr(args, s, None) is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --graph6, --g6-file, --edge-list, --catalog")
    src = sources[0]
    try:
        if src == "graph6":
            return [(args.graph6, decode_graph6(args.graph6))]
        if src == "g6_file":
            lines = [ln.strip() for ln in Path(args.g6_file).read_text().splitlines()]
            lines = [ln for ln in lines if ln and not ln.startswith(">>")]
            if not lines:
                raise UsageError(f"{args.g6_file} contains no graphs")
            return [(ln, decode_graph6(ln)) for ln in lines]
        if src == "edge_list":
            return [(args.edge_list, read_edge_list(Path(args.edge_list).read_text()))]
        entry = catalog(args.catalog)
        return [(args.catalog, entry.graph)]
    except (Graph6Error, ValueError, OSError) as exc:
        raise UsageError(str(exc)) from exc


def _add_input(p):
    g = p.add_argument_group("graph input (exactly one)")
    g.add_argument("--graph6", metavar="TEXT", help="graph in graph6 format")
    g.add_argument("--g6-file", metavar="PATH", help="file of graph6 lines (one record per graph)")
    g.add_argument("--edge-list", metavar="PATH", help="edge-list file: header 'n m', then one 'u v' per line")
    g.add_argument("--catalog", metavar="NAME", help="catalogue name, e.g. W5 or 'glued_cliques(4,5,2)'")


def _default_seed() -> int:
    raw = os.environ.get("RIGIKIT_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _add_common(p, dim=True, dim_required=False):
    if dim:
        p.add_argument("--dim", "-d", type=int, required=dim_required, default=None if dim_required else 2,
                       help="dimension d (default 2)")
    p.add_argument("--seed", type=int, default=_default_seed(), help="random seed (default: $RIGIKIT_SEED or 0)")
    p.add_argument("--format", choices=("json", "tsv", "human"), default="human", help="output format")
    p.add_argument("--timings", action="store_true", help="include wall-clock milliseconds in reports")


def _pair(text: str) -> tuple[int, int]:
    parts = text.replace(",", " ").split()
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected a vertex pair 'u,v', got {text!r}")
    return int(parts[0]), int(parts[1])


def _vertices(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()] if text.strip() else []


# -- graph commands -------------------------------------------------------------


def _base(name, args, G, label) -> dict:
    return {"command": name, "input": label, "n": G.n, "d": args.dim, "seed": args.seed}


def cmd_rank(args, G, label):
    rec = _base("rank", args, G, label)
    rec["trials"] = args.trials
    rec["rank"] = generic_rank(G, args.dim, args.trials, args.seed)
    return rec, "rank"


def cmd_rigid(args, G, label):
    O = RigidityOracle(G, args.dim, args.seed)
    rec = _base("rigid", args, G, label)
    rec.update(rigid=O.is_rigid(), dof=O.dof(), rank=O.rank())
    return rec, "rigid"


def cmd_dof(args, G, label):
    O = RigidityOracle(G, args.dim, args.seed)
    rec = _base("dof", args, G, label)
    rec.update(dof=O.dof(), rank=O.rank(), rigid_rank=O.rigid_rank())
    return rec, "dof"


def cmd_closure(args, G, label):
    O = RigidityOracle(G, args.dim, args.seed)
    added = O.linked_pairs()
    rec = _base("closure", args, G, label)
    rec.update(closure=encode_graph6(G.add_edges(added)), added=added, closed=not added)
    return rec, "closure"


def cmd_linked(args, G, label):
    O = RigidityOracle(G, args.dim, args.seed)
    rec = _base("linked", args, G, label)
    if args.pair is None:
        rec["linked_pairs"] = O.linked_pairs()
        return rec, "linked_pairs"
    rec.update(pair=args.pair, linked=O.is_linked(*args.pair))
    return rec, "linked"


def cmd_bridge(args, G, label):
    O = RigidityOracle(G, args.dim, args.seed)
    rec = _base("bridge", args, G, label)
    if args.edge is None:
        rec["bridges"] = O.bridges()
        return rec, "bridges"
    rec.update(edge=args.edge, bridge=O.is_bridge(args.edge))
    return rec, "bridge"


def cmd_circuit(args, G, label):
    O = RigidityOracle(G, args.dim, args.seed)
    rec = _base("circuit", args, G, label)
    if args.pair is not None:
        rec.update(pair=args.pair, circuit=O.fundamental_circuit(args.pair))
    else:
        rec["circuit"] = O.find_circuit()
    return rec, "circuit"


def cmd_rup(args, G, label):
    O = RigidityOracle(G, args.dim, args.seed)
    rec = _base("rup", args, G, label)
    rec.update(rup=O.rup(), rank=O.rank(), cone_rank=O.cone_rank())
    if args.cone_set is not None:
        U = _vertices(args.cone_set)
        rec.update(cone_set=U, cone_set_rank=O.cone_rank(U))
    return rec, "rup"


def _vertex_list(args, G):
    if args.vertex is None:
        return list(range(G.n))
    if not 0 <= args.vertex < G.n:
        raise UsageError(f"vertex {args.vertex} out of range")
    return [args.vertex]


def cmd_rc(args, G, label):
    O = RigidityOracle(G, args.dim, args.seed)
    rec = _base("rc", args, G, label)
    vs = _vertex_list(args, G)
    if args.samples:
        ests = [rc_monte_carlo(O, v, args.samples, [args.seed, v]) for v in vs]
        rec.update(samples=args.samples, rc=[e.mean for e in ests], stderr=[e.stderr for e in ests])
    else:
        rec["rc"] = [rc_exact(O, v) for v in vs]
        if args.vertex is None:
            rec["rank"] = O.rank()
    rec["vertices"] = vs
    return rec, "rc"


def cmd_rcstar(args, G, label):
    O = RigidityOracle(G, args.dim, args.seed)
    rec = _base("rcstar", args, G, label)
    vs = _vertex_list(args, G)
    if args.samples:
        ests = [rc_star_monte_carlo(O, v, args.samples, [args.seed, v]) for v in vs]
        rec.update(samples=args.samples, rcstar=[e.mean for e in ests], stderr=[e.stderr for e in ests])
    else:
        rec["rcstar"] = [rc_star_exact(O, v) for v in vs]
    if args.check:
        rec["checks"] = [chk(O, v).as_dict() for v in vs for chk in (check_rc_tbound, check_rc_Kfree, check_rc_geq_d)]
    rec["vertices"] = vs
    return rec, "rcstar"


def cmd_construct(args, G, label):
    d = args.dim
    op = args.op
    if op == "zero":
        H = zero_extension(G, d, _vertices(args.S or ""))
    elif op == "one":
        if args.edge is None:
            raise UsageError("one-extension needs --edge")
        H = one_extension(G, d, args.edge, _vertices(args.S or ""))
    elif op in ("split", "spider"):
        if args.z is None or args.Nu is None or args.Nv is None:
            raise UsageError(f"{op} needs --z, --Nu and --Nv")
        fn = vertex_split if op == "split" else spider_split
        H = fn(G, d, args.z, _vertices(args.Nu), _vertices(args.Nv))
    elif op == "cycle":
        if not args.pairs:
            raise UsageError("cycle needs --pairs 'a,b;c,d;...'")
        H = cycle_attach(G, [_pair(p) for p in args.pairs.split(";")])
    else:  # cone
        H = G.cone(None if args.S is None else _vertices(args.S or ""))
    rec = _base("construct", args, G, label)
    rec.update(op=op, result=encode_graph6(H), result_n=H.n, result_edges=H.num_edges)
    if args.check:
        rec["result_rigid"] = RigidityOracle(H, d, args.seed).is_rigid()
    return rec, "result"


GRAPH_COMMANDS = {
    "rank": (cmd_rank, "generic rigidity-matroid rank"),
    "rigid": (cmd_rigid, "is the graph d-rigid (with dof)"),
    "dof": (cmd_dof, "degrees of freedom"),
    "closure": (cmd_closure, "rigidity closure and the linked pairs it adds"),
    "linked": (cmd_linked, "is a non-adjacent pair linked (or list all linked pairs)"),
    "bridge": (cmd_bridge, "is an edge a bridge (or list all bridges)"),
    "circuit": (cmd_circuit, "a circuit, or the fundamental circuit of a linked pair"),
    "rup": (cmd_rup, "cone rank gap r(G^w) - r(G)"),
    "rc": (cmd_rc, "rank contributions (exact, or Monte Carlo with --samples)"),
    "rcstar": (cmd_rcstar, "contracted rank contributions and their lower-bound checks"),
    "construct": (cmd_construct, "apply an extension, split, cycle attachment or cone"),
}


# -- non-graph commands -------------------------------------------------------------


def cmd_catalog(args):
    if args.name is None:
        return [({"command": "catalog", "names": catalog_names()}, "names")]
    try:
        entry = catalog(args.name)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    G, exp = entry.graph, entry.expected
    rec = {
        "command": "catalog",
        "name": entry.name,
        "params": entry.params,
        "graph6": encode_graph6(G),
        "n": G.n,
        "num_edges": G.num_edges,
        "delta": delta(G),
        "eta": eta(G),
        "expected": {k: getattr(exp, k) for k in ("n", "num_edges", "delta", "eta", "d", "is_d_rigid")},
        "mismatches": entry.mismatches(args.seed),
    }
    return [(rec, "graph6")]


def cmd_enumerate(args):
    try:
        flt = en.EnumerationFilter(args.n, args.filter, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    graphs = [encode_graph6(G) for G in en.enumerate_graphs(flt)]
    if args.format == "human":
        return [({"graphs": "\n".join(graphs)}, "graphs")] if graphs else []
    return [({"command": "enumerate", "n": args.n, "filter": args.filter, "k": args.k,
              "count": len(graphs), "graphs": graphs}, "count")]


def _report_records(rep: vf.VerificationReport, args):
    if args.witness_dir:
        out = Path(args.witness_dir)
        out.mkdir(parents=True, exist_ok=True)
        stem = "_".join([rep.claim] + [f"{k}{v}" for k, v in sorted(rep.params.items())])
        for kind in ("violations", "witnesses"):
            items = getattr(rep, kind)
            if items:
                (out / f"{stem}.{kind}.g6").write_text("\n".join(items) + "\n")
    return rep.as_dict(args.timings)


def _progress(args):
    if getattr(args, "quiet", False):
        return None
    return lambda msg: print(f"[progress] {msg}", file=sys.stderr, flush=True)


def cmd_threshold(which):
    def run(args):
        try:
            rep = vf.threshold_report(which, args.n, args.dim, args.seed, args.jobs)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        rec = _report_records(rep, args)
        rec["value"] = rep.data["value"]
        rec.pop("data", None)
        return [(rec, "value")]

    return run


CLAIMS = (
    "R3", "R2", "global2d", "degree-sum", "ecount", "linked-neighbourhood", "min-degree-d", "min-degree-3",
    "small-circuits", "coning", "rup-bounds", "rc", "preservation",
)


def cmd_verify(args):
    c, n, d, seed, jobs, prog = args.claim, args.n, args.dim, args.seed, args.jobs, _progress(args)
    needs_n = c not in ("preservation",)
    if needs_n and n is None:
        raise UsageError(f"--n is required for claim {c}")
    try:
        if c == "R3":
            rep = vf.verify_theorem_R3(n, seed, jobs, prog)
        elif c == "R2":
            rep = vf.verify_theorem_R2(n, seed, jobs, prog)
        elif c == "global2d":
            rep = vf.verify_global_2d(n, seed, jobs, prog)
        elif c == "degree-sum":
            if args.bound_kind is None:
                raise UsageError("--bound-kind is required for degree-sum")
            rep = vf.verify_degree_sum(n, d, args.bound_kind, seed, jobs, prog)
        elif c == "ecount":
            rep = vf.verify_ecount(n, d)
        elif c == "linked-neighbourhood":
            rep = vf.verify_linked_neighbourhood(n, d, seed, jobs, prog)
        elif c == "min-degree-d":
            rep = vf.verify_min_degree_d(n, d, seed)
        elif c == "min-degree-3":
            rep = vf.verify_min_degree_3(n, seed)
        elif c == "small-circuits":
            rep = vf.verify_small_circuits(n, seed)
        elif c == "coning":
            rep = vf.verify_coning(n, d, seed)
        elif c == "rup-bounds":
            rep = vf.verify_rup_bounds(n, d, seed)
        elif c == "rc":
            rep = vf.verify_rc(n, d, seed)
        else:
            rep = vf.verify_preservation(args.op, d, args.instances, seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return [(_report_records(rep, args), "passed")], rep.passed


def cmd_random(args):
    try:
        rep = vf.random_rigidity_experiment(args.n, args.p, args.dim, args.samples, args.seed, _progress(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rec = _report_records(rep, args)
    return [(rec, "data")]


def cmd_chain(args):
    if any(getattr(args, s) is not None for s in ("graph6", "g6_file", "edge_list", "catalog")):
        rows = []
        for label, G in _load_graphs(args):
            pairing = vf.standard_pairing(G.n) if args.pairing is None else [_pair(p) for p in args.pairing.split(";")]
            try:
                r = vf.verify_contraction_chain(G, pairing, args.dim, args.seed)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
            rec = {"command": "chain-check", "input": label, "seed": args.seed, **r.as_dict()}
            rows.append(((rec, "certificate"), r.consistent))
        return [x for x, _ in rows], all(ok for _, ok in rows)
    if args.n is None:
        raise UsageError("give an input graph or --n for a G(n,1/2) sample run")
    try:
        rep = vf.chain_experiment(args.n, args.dim, args.samples, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return [(_report_records(rep, args), "counts")], rep.passed


# -- parser ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rigikit", description="Generic rigidity of graphs: ranks, constructions and verification.")
    parser.add_argument("--version", action="version", version=f"rigikit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, (_, help_text) in GRAPH_COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        _add_input(p)
        _add_common(p)
        if name == "rank":
            p.add_argument("--trials", type=int, default=1, help="random evaluations; the maximum is reported")
        if name in ("linked", "circuit"):
            p.add_argument("--pair", type=_pair, help="non-adjacent vertex pair 'u,v'")
        if name in ("bridge", "construct"):
            p.add_argument("--edge", type=_pair, help="edge 'u,v'")
        if name == "rup":
            p.add_argument("--cone-set", metavar="VERTICES", help="also report the rank of the cone over these vertices")
        if name in ("rc", "rcstar"):
            p.add_argument("--vertex", type=int, help="single vertex (default: every vertex)")
            p.add_argument("--samples", type=int, default=0, help="Monte Carlo samples (0 = exact)")
        if name == "rcstar":
            p.add_argument("--check", action="store_true", help="run the three lower-bound checks")
        if name == "construct":
            p.add_argument("--op", required=True, choices=("zero", "one", "split", "spider", "cycle", "cone"))
            p.add_argument("--S", metavar="VERTICES", help="attachment set (extensions) or cone set")
            p.add_argument("--z", type=int, help="vertex to split")
            p.add_argument("--Nu", metavar="VERTICES", help="neighbours kept by the split vertex")
            p.add_argument("--Nv", metavar="VERTICES", help="neighbours of the new vertex")
            p.add_argument("--pairs", metavar="PAIRS", help="cycle attachment pairs 'a,b;c,d;e,f'")
            p.add_argument("--check", action="store_true", help="also report whether the result is d-rigid")

    p = sub.add_parser("catalog", help="named graphs and their recorded invariants")
    p.add_argument("--name", help="catalogue name; omit to list names")
    _add_common(p, dim=False)

    p = sub.add_parser("enumerate", help="one graph6 line per isomorphism class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--filter", choices=(en.ALL, en.MIN_DEGREE, en.ETA, en.COMPLEMENT_EDGE_DEGREE_SUM), default=en.ALL)
    p.add_argument("--k", type=int, default=0, help="filter parameter")
    _add_common(p, dim=False)

    for which in ("f", "g"):
        p = sub.add_parser(f"compute-{which}", help=f"smallest {'minimum degree' if which == 'f' else 'degree sum'} forcing d-rigidity")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--witness-dir", help=argparse.SUPPRESS)
        _add_common(p)

    p = sub.add_parser("verify", help="exhaustive check of one statement")
    p.add_argument("--claim", required=True, choices=CLAIMS)
    p.add_argument("--n", type=int)
    p.add_argument("--bound-kind", choices=vf.DEGREE_SUM_KINDS)
    p.add_argument("--op", choices=("zero", "one", "split", "spider", "cycle"), default="zero", help="preservation operation")
    p.add_argument("--instances", type=int, default=300, help="preservation instances")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--witness-dir", help="write violation and witness lists as .g6 files here")
    p.add_argument("--quiet", action="store_true", help="no progress messages")
    _add_common(p)

    p = sub.add_parser("random-experiment", help="rigid fraction of G(n,p) samples")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--witness-dir", help=argparse.SUPPRESS)
    _add_common(p, dim_required=True)

    p = sub.add_parser("chain-check", help="contraction-chain rigidity certificate")
    _add_input(p)
    p.add_argument("--n", type=int, help="sample G(n,1/2) instead of reading a graph")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--pairing", help="pairs 'a,b;c,d;...' (default: i with i + n/2)")
    p.add_argument("--witness-dir", help=argparse.SUPPRESS)
    _add_common(p, dim_required=True)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    ok = True
    try:
        if args.command in GRAPH_COMMANDS:
            fn = GRAPH_COMMANDS[args.command][0]
            records = []
            for label, G in _load_graphs(args):
                try:
                    records.append(fn(args, G, label))
                except ValueError as exc:
                    raise UsageError(str(exc)) from exc
        elif args.command == "catalog":
            records = cmd_catalog(args)
        elif args.command == "enumerate":
            records = cmd_enumerate(args)
        elif args.command in ("compute-f", "compute-g"):
            records = cmd_threshold(args.command[-1])(args)
        elif args.command == "verify":
            records, ok = cmd_verify(args)
        elif args.command == "random-experiment":
            records = cmd_random(args)
        else:
            records, ok = cmd_chain(args)
    except UsageError as exc:
        print(f"rigikit {args.command}: error: {exc}", file=stderr)
        return EXIT_USAGE
    sep = "\n" if args.format != "human" else "\n\n"
    text = sep.join(render(rec, args.format, primary) for rec, primary in records)
    if text:
        print(text, file=stdout)
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())
