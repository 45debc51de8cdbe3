"""Command-line front end.

Human-readable summaries go to stdout; JSON payloads are written only to
``--out``. Exit codes: 0 ok, 2 bad input, 3 budget exceeded, 4 lower-bound
mode not applicable, 5 floating point tolerance failure, 1 internal error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from . import bicliques, closure, constructions, families, jsonio, matchings
from .config import Budget, default_budget, parse_budget
from .errors import BudgetError, InputError, InternalInvariantViolation, ModeInapplicable, ToleranceFailure
from .graph import SkeletonGraph
from .polytope import HPolytope, VPolytope, enumerate_vertices, is_simple

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_BUDGET, EXIT_MODE, EXIT_TOLERANCE = 0, 1, 2, 3, 4, 5


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    budget: Budget = field(default_factory=Budget)
    tolerance: float | None = None
    out: str | None = None
    seed: int = 0


def _load_polytope(path: str):
    return jsonio.polytope_from_json(jsonio.read_json(path))


def _as_h(P) -> HPolytope:
    if isinstance(P, HPolytope):
        return P
    from .polytope import facet_description

    return facet_description(P)[0]


def _as_v(P) -> VPolytope:
    if isinstance(P, VPolytope):
        return VPolytope.hull(P.vertices)
    return enumerate_vertices(P)[0]


def _parse_vector(text: str):
    return jsonio._parse_rats(x for x in text.split(","))


# construct -----------------------------------------------------------------------


def cmd_construct(args, cfg: RunConfig) -> tuple[dict, list[str]]:
    lines = []
    if args.kind == "gon":
        tol = cfg.tolerance if cfg.tolerance is not None else 1e-9
        Q, proj, report = constructions.build_gon_extension(args.k, tol=tol)
        payload = jsonio.extension_to_json(Q, proj)
        payload["report"] = report.to_json()
        lines.append(f"regular {2 ** args.k}-gon: Q in R^{Q.ambient_dim} with {len(Q.inequalities)} inequalities")
        if args.verify:
            lines.append(f"facets: {report.facet_count}, simple={str(report.simple).lower()}")
            lines.append(f"projection matches the regular polygon: {report.matches_regular_gon}")
        return payload, lines
    if args.kind == "reflect":
        if not args.inputs or args.a is None or args.beta is None:
            raise InputError("reflect needs P.json, --a and --beta")
        P = _as_h(_load_polytope(args.inputs[0]))
        h = constructions.Halfspace(_parse_vector(args.a), jsonio._parse_rats([args.beta])[0])
        ext = constructions.reflection_extension(P, h)
        payload = jsonio.extension_to_json(ext.Q, ext.projection)
        lines.append(f"reflection extension: Q in R^{ext.Q.ambient_dim}, {len(ext.Q.inequalities)} inequalities")
        if args.verify:
            verdict = constructions.reflection_simplicity(P, h, cross_check=True)
            payload["verification"] = {
                "predicate_simple": verdict.simple,
                "branch": verdict.branch,
                "enumerated_simple": verdict.enumerated_simple,
            }
            lines.append(f"predicate: simple={str(verdict.simple).lower()} ({verdict.branch})")
            lines.append(f"enumerated: simple={str(verdict.enumerated_simple).lower()}")
        return payload, lines
    if args.kind == "disjunction":
        if len(args.inputs) != 2:
            raise InputError("disjunction needs P1.json and P2.json")
        P1, P2 = (_as_v(_load_polytope(p)) for p in args.inputs)
        ext = constructions.disjunctive_extension(P1, P2)
        payload = jsonio.extension_to_json(ext.Q, ext.projection)
        lines.append(f"disjunctive extension: Q in R^{ext.Q.ambient_dim}, {len(ext.Q.inequalities)} inequalities")
        if args.verify:
            V, inc = enumerate_vertices(ext.Q, cfg.budget)
            predicted = constructions.disjunctive_simplicity(P1, P2)
            image = VPolytope.hull(ext.projection(v) for v in V.vertices)
            target = VPolytope.hull(P1.vertices + P2.vertices)
            payload["verification"] = {
                "predicate_simple": predicted,
                "enumerated_simple": is_simple(inc),
                "projection_ok": image == target,
            }
            lines.append(f"predicate: simple={str(predicted).lower()}; enumerated: simple={str(is_simple(inc)).lower()}")
            lines.append(f"projection equals conv(P1 u P2): {image == target}")
        return payload, lines
    raise InputError(f"unknown construction {args.kind!r}")


# skeletons and bounds ----------------------------------------------------------------


def _family_params(args) -> tuple[str, dict]:
    fam = args.family.replace("-", "_")
    if fam == "hypersimplex":
        if args.n is None or args.k is None:
            raise InputError("hypersimplex needs --n and --k")
        return fam, {"n": args.n, "k": args.k}
    if fam == "spanning_tree":
        if args.n is None:
            raise InputError("spanning-tree needs --n")
        return fam, {"n": args.n}
    if fam == "flow":
        if args.dag is None:
            raise InputError("flow needs --dag")
        return fam, {"dag": families.DagDesc.from_json(jsonio.read_json(args.dag))}
    if fam == "perfect_matching":
        if args.nodes is None:
            raise InputError("perfect-matching needs --nodes")
        return fam, {"nodes": args.nodes}
    raise InputError(f"unknown family {args.family!r}")


def cmd_skeleton(args, cfg: RunConfig) -> tuple[dict, list[str]]:
    fam, params = _family_params(args)
    G = families.family_skeleton(fam, params, cfg.budget)
    payload = G.to_json()
    payload["family"] = fam
    payload["max_degree"] = G.max_degree()
    payload["complete"] = G.is_complete()
    lines = [
        f"{fam} skeleton: {G.n} vertices, {G.edge_count()} edges, max degree {G.max_degree()}"
        + (" (complete graph)" if G.is_complete() else "")
    ]
    return payload, lines


MODES = {
    "exact": closure.EXACT,
    "singleton": closure.SINGLETON,
    "singleton_shortcut": closure.SINGLETON,
    "isolated": closure.DEGREE,
    "degree_bound": closure.DEGREE,
}


def cmd_lowerbound(args, cfg: RunConfig) -> tuple[dict, list[str]]:
    if args.graph:
        G = SkeletonGraph.from_json(jsonio.read_json(args.graph))
        source = args.graph
    elif args.family:
        fam, params = _family_params(args)
        G = families.family_skeleton(fam, params, cfg.budget)
        source = fam
    else:
        raise InputError("lowerbound needs --graph or --family")
    mode = MODES[args.mode]
    cert = closure.cover_lower_bound(G, mode, cfg.budget)
    payload = cert.to_json()
    lines = [f"{source}: {G.n} vertices"]
    if mode == closure.SINGLETON:
        lines.append("every pair closes to the full vertex set: all proper closed sets are singletons")
    elif mode == closure.DEGREE:
        lines.append("all proper closed sets isolated")
        lines.append(f"max degree {G.max_degree()}")
    else:
        lines.append(f"optimal cover: {payload['cover']}")
    lines.append(f"simple extension complexity >= {cert.bound} ({mode})")
    return payload, lines


# verification and matchings --------------------------------------------------------


def cmd_verify(args, cfg: RunConfig) -> tuple[dict, list[str]]:
    data = jsonio.read_json(args.witness)
    try:
        P = _as_v(jsonio.polytope_from_json(data["P"]))
        Q = _as_h(jsonio.polytope_from_json(data["Q"]))
        proj = jsonio.projection_from_json(data["projection"])
    except KeyError as exc:
        raise InputError(f"witness is missing {exc}") from exc
    w = bicliques.ExtensionWitness.build(P, Q, proj, cfg.budget)
    report = bicliques.analyze_witness(w, args.drop_facet or (), cfg.budget)
    lines = [
        f"Q: {report['Q_vertex_count']} vertices, {report['Q_facet_count']} facets, simple={str(report['Q_simple']).lower()}",
        f"P: {report['P_vertex_count']} vertices",
        f"biclique covering: {'ok' if report['covering']['ok'] else 'VIOLATED'}",
    ]
    if report["covering"]["uncovered_count"]:
        lines.append(f"uncovered (face, vertex) pairs: {report['covering']['uncovered_count']}")
    for f in report["facets"]:
        ok = f["subface_closed"] and f["conditions"]["passed"] and f["vertex_set_closed"] is not False
        kind = "proper" if f["proper"] else "not proper"
        lines.append(f"  facet {f['facet']} ({kind}, |V|={len(f['vertices'])}): {'pass' if ok else 'FAIL'}")
    lines.append(f"necessary conditions for a simple extension: {'pass' if report['necessary_conditions_hold'] else 'fail'}")
    if not report["necessary_conditions_hold"]:
        lines.append("cannot be simple: a proper facet violates the necessary conditions")
    lines.append(f"verdict: {report['verdict']}")
    return report, lines


def _load_matching(path: str) -> matchings.Matching:
    data = jsonio.read_json(path)
    try:
        return matchings.Matching.from_json(data)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path} is not a matching") from exc


def cmd_common_neighbor(args, cfg: RunConfig) -> tuple[dict, list[str]]:
    if len(args.matchings) != 3:
        raise InputError("common-neighbor needs three matching files")
    M1, M2, M3 = (_load_matching(p) for p in args.matchings)
    result = matchings.three_common_neighbor(M1, M2, M3)
    if result.kind == "pairwise_adjacent":
        lines = ["PairwiseAdjacent: the three matchings are pairwise adjacent"]
    else:
        lines = [f"CommonNeighbor: {result.matching.to_json()}"]
        for i, step in enumerate(result.trace, 1):
            lines.append(
                f"  step {i}: case {step['case']}, edge {step['edge']} (j={step['j']}), "
                f"components {step['c_before']} -> {step['c_after']}"
            )
    return result.to_json(), lines


def cmd_sample(args, cfg: RunConfig) -> tuple[dict, list[str]]:
    report = closure.sample_random_01(args.d, args.vertices, args.samples, args.sigma, cfg.seed)
    lines = [
        f"{report.samples} random 0/1 polytopes in dimension {report.d} with {report.vertex_count} vertices",
        f"complete skeleton: {report.complete} ({report.fraction:.3f})",
    ]
    return report.to_json(), lines


def cmd_closure(args, cfg: RunConfig) -> tuple[dict, list[str]]:
    G = SkeletonGraph.from_json(jsonio.read_json(args.graph))
    seed = [int(x) for x in args.nodes.split(",") if x.strip()]
    cert = closure.closure(G, seed)
    lines = [
        f"closure of {sorted(cert.seed)}: {sorted(cert.final)}",
        f"proper={str(cert.proper).lower()} isolated={str(cert.isolated).lower()}",
    ]
    return cert.to_json(), lines


# argument parsing -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON payload here")
    common.add_argument("--budget", help='budget override, "N" or "key=N,..."')
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, help="incidence tolerance (regular polygon construction only)")

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--n", type=int)
    family.add_argument("--k", type=int)
    family.add_argument("--nodes", type=int)
    family.add_argument("--dag")

    parser = argparse.ArgumentParser(prog="simplext", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build an extension")
    c.add_argument("kind", choices=["reflect", "gon", "disjunction"])
    c.add_argument("inputs", nargs="*")
    c.add_argument("--k", type=int, default=3)
    c.add_argument("--a", help="halfspace normal, comma separated rationals")
    c.add_argument("--beta", help="halfspace right-hand side")
    c.add_argument("--verify", action="store_true")

    s = sub.add_parser("skeleton", parents=[common, family], help="1-skeleton of a polytope family")
    s.add_argument("family", choices=["hypersimplex", "spanning-tree", "flow", "perfect-matching"])

    lb = sub.add_parser("lowerbound", parents=[common, family], help="closed-set lower bound")
    lb.add_argument("--family", choices=["hypersimplex", "spanning-tree", "flow", "perfect-matching"])
    lb.add_argument("--graph")
    lb.add_argument("--mode", choices=sorted(MODES), default="singleton")

    v = sub.add_parser("verify", parents=[common], help="check an extension witness")
    v.add_argument("witness")
    v.add_argument("--drop-facet", type=int, action="append", help="leave a facet out of the analysis")

    cn = sub.add_parser("common-neighbor", parents=[common], help="matching adjacent to three matchings")
    cn.add_argument("matchings", nargs="+")

    sa = sub.add_parser("sample", parents=[common], help="random 0/1 polytopes")
    sa.add_argument("--d", type=int, required=True)
    sa.add_argument("--vertices", type=int, required=True)
    sa.add_argument("--samples", type=int, default=100)
    sa.add_argument("--sigma", type=float, default=0.3)

    cl = sub.add_parser("closure", parents=[common], help="close a node set in a graph")
    cl.add_argument("--graph", required=True)
    cl.add_argument("--nodes", required=True, help="comma separated node ids")
    return parser


COMMANDS = {
    "construct": cmd_construct,
    "skeleton": cmd_skeleton,
    "lowerbound": cmd_lowerbound,
    "verify": cmd_verify,
    "common-neighbor": cmd_common_neighbor,
    "sample": cmd_sample,
    "closure": cmd_closure,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        budget = default_budget()
        if args.budget:
            budget = parse_budget(args.budget, budget)
        cfg = RunConfig(
            command=args.command,
            inputs=list(getattr(args, "inputs", []) or []),
            budget=budget,
            tolerance=args.tol,
            out=args.out,
            seed=args.seed,
        )
        payload, lines = COMMANDS[args.command](args, cfg)
    except ModeInapplicable as exc:
        print(f"mode not applicable: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {exc.witness}", file=sys.stderr)
        return EXIT_MODE
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ToleranceFailure as exc:
        print(f"tolerance failure: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except InternalInvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    for line in lines:
        print(line)
    if cfg.out:
        jsonio.write_json(cfg.out, payload)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
