"""Command-line entry point.

Exit codes: 0 success, 1 for negative mathematical results (failed
verification, no certificate), 2 for usage errors, 3 when a resource cap
is exceeded.  Output is deterministic for fixed inputs, configuration and
seed, regardless of the thread count.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import graph as graphs
from .graph import Graph, GraphError, load_graph, parse_labeled_graph_text
from .homset import HomTooLarge, enumerate_homs
from .indep import (IndepSystem, almost_bipartite_grobner, bipartite_grobner,
                    complement_cycle_basis)
from .polytope import PolytopeCapExceeded, build_polytope, facets, simplicity
from .tfp import (GlueError, GlueSpec, LiftTooLarge, check_codim_zero,
                  glue_basis, outerplanar_pipeline)
from .toric import (Binomial, OrientedBasis, ResourceCapExceeded, build_system,
                    format_binomial, markov_basis, parse_basis_text,
                    verify_grobner)
from .coloring import (analyze_certificate, find_low_degree_binomial,
                       format_certificate, is_k_colorable)
from .hibi import hibi_vs_topgraded, parse_poset_text

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


@dataclass
class RunConfig:
    degree_cap: int = 4
    mono_cap: int = 10**7
    threads: int = 1
    fmt: str = "text"
    seed: int = 0


class Report:
    """Accumulates deterministic text lines plus a JSON payload."""

    def __init__(self, command: str, config: RunConfig):
        self.command = command
        self.config = config
        self.lines = []
        self.payload = {}

    def say(self, line: str):
        self.lines.append(line)

    def emit(self, out=None):
        out = out if out is not None else sys.stdout
        if self.config.fmt == "json":
            # thread count is deliberately not echoed: output must be
            # byte-identical across thread counts
            doc = {"schema": 1, "command": self.command,
                   "seed": self.config.seed, "result": self.payload}
            out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        else:
            out.write("\n".join(self.lines) + "\n")


def _graph_arg(value: str) -> Graph:
    return load_graph(value)


def _spoonish(h: Graph) -> bool:
    return h.n == 2 and h.edges == frozenset({(0, 1), (1, 1)})


def _set_name(s) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


def _basis_lines(basis: OrientedBasis, system) -> list:
    return [format_binomial(b, system) for b in basis]


# ---------------------------------------------------------------------------
# subcommands

def cmd_homs(args, cfg: RunConfig) -> int:
    g, h = load_graph(args.G), load_graph(args.H)
    homs = enumerate_homs(g, h, count_cap=cfg.mono_cap)
    rep = Report("homs", cfg)
    spoonish = _spoonish(h)
    entries = []
    for m in homs.maps:
        text = "(" + ",".join(map(str, m)) + ")"
        if spoonish:
            s = sorted(v for v in range(g.n) if m[v] == 0)
            text += "  " + _set_name(s)
            entries.append({"map": list(m), "independent_set": s})
        else:
            entries.append({"map": list(m)})
        rep.say(text)
    rep.say(f"total {len(homs)}")
    rep.payload = {"count": len(homs), "homs": entries}
    rep.emit()
    return EXIT_OK


def cmd_markov(args, cfg: RunConfig) -> int:
    g, h = load_graph(args.G), load_graph(args.H)
    system = build_system(g, h, count_cap=cfg.mono_cap)
    res = markov_basis(system, args.cap, mono_cap=cfg.mono_cap, threads=cfg.threads)
    rep = Report("markov", cfg)
    for b in res.basis:
        rep.say(format_binomial(b, system))
    status = "stable" if res.stable_at_cap else "up to cap"
    rep.say(f"width {res.width} ({status}, cap {res.cap})")
    rep.payload = {"basis": _basis_lines(res.basis, system), "width": res.width,
                   "cap": res.cap, "stable_at_cap": res.stable_at_cap,
                   "additions_by_degree": {str(k): v for k, v in
                                           res.additions_by_degree.items()}}
    rep.emit()
    return EXIT_OK


def cmd_width(args, cfg: RunConfig) -> int:
    g, h = load_graph(args.G), load_graph(args.H)
    system = build_system(g, h, count_cap=cfg.mono_cap)
    res = markov_basis(system, args.cap, mono_cap=cfg.mono_cap, threads=cfg.threads)
    rep = Report("width", cfg)
    rep.say(str(res.width))
    rep.payload = {"width": res.width, "cap": res.cap,
                   "stable_at_cap": res.stable_at_cap}
    rep.emit()
    return EXIT_OK


def cmd_verify_grobner(args, cfg: RunConfig) -> int:
    g, h = load_graph(args.G), load_graph(args.H)
    system = build_system(g, h, count_cap=cfg.mono_cap)
    with open(args.basis) as fh:
        basis = parse_basis_text(fh.read(), system)
    ok = verify_grobner(system, basis, args.cap, mono_cap=cfg.mono_cap,
                        threads=cfg.threads)
    rep = Report("verify-grobner", cfg)
    rep.say("grobner basis verified" if ok else "verification failed")
    rep.payload = {"verified": ok, "cap": args.cap, "elements": len(basis)}
    rep.emit()
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_indep_grobner(args, cfg: RunConfig) -> int:
    g = load_graph(args.G)
    isys = IndepSystem(g, count_cap=cfg.mono_cap)
    rep = Report("indep-grobner", cfg)
    bip = graphs.is_bipartite(g)
    if bip is not None:
        basis = bipartite_grobner(isys, bip)
        tags = {b: "uncovered" for b in basis}
        kind = "bipartite"
    else:
        tagged = almost_bipartite_grobner(isys)
        basis, tags = tagged.basis, tagged.tags
        kind = f"almost-bipartite (apex {tagged.labeling.apex})"
    rep.say(f"# {kind}")
    entries = []
    for b in basis:
        line = format_binomial(b, isys.system)
        rep.say(f"{line}  # {tags[b]}")
        entries.append({"binomial": line, "tag": tags[b]})
    rep.payload = {"kind": kind, "basis": entries}
    rep.emit()
    return EXIT_OK


def cmd_glue(args, cfg: RunConfig) -> int:
    with open(args.G1) as fh:
        labels1, edges1 = parse_labeled_graph_text(fh.read())
    with open(args.G2) as fh:
        labels2, edges2 = parse_labeled_graph_text(fh.read())
    all_labels = sorted(set(labels1) | set(labels2))
    if all_labels != list(range(len(all_labels))):
        raise GraphError("glued labels must cover 0..n-1 without gaps")
    union = Graph(len(all_labels), edges1 + edges2)
    h = load_graph(args.H)
    spec = GlueSpec(union, labels1, labels2, h)
    from .tfp import check_codim_zero
    if not check_codim_zero(spec, count_cap=cfg.mono_cap):
        rep = Report("glue", cfg)
        rep.say("intersection configuration is not linearly independent; "
                "the lift construction does not apply")
        rep.payload = {"codim_zero": False, "shared": list(spec.shared)}
        rep.emit()
        return EXIT_NEGATIVE
    ctx = spec.context(count_cap=cfg.mono_cap)
    basis1 = OrientedBasis.make(())
    basis2 = OrientedBasis.make(())
    if args.basis1:
        with open(args.basis1) as fh:
            basis1 = parse_basis_text(fh.read(), ctx.sys1)
    if args.basis2:
        with open(args.basis2) as fh:
            basis2 = parse_basis_text(fh.read(), ctx.sys2)
    res = glue_basis(spec, basis1, basis2, lift_cap=args.lift_cap)
    rep = Report("glue", cfg)
    rep.say(f"# intersection vertices {list(spec.shared)}")
    for b in res.basis:
        rep.say(format_binomial(b, ctx.sys_union))
    rep.say(f"degrees {list(res.degrees_full)}")
    rep.payload = {"shared": list(spec.shared),
                   "basis": _basis_lines(res.basis, ctx.sys_union),
                   "degrees": list(res.degrees_full)}
    rep.emit()
    return EXIT_OK


def cmd_polytope(args, cfg: RunConfig) -> int:
    g, h = load_graph(args.G), load_graph(args.H)
    poly = build_polytope(g, h, count_cap=cfg.mono_cap)
    rep = Report("polytope", cfg)
    rep.say(f"{poly.num_vertices} vertices in R^{poly.ambient_dim}")
    rep.payload = {"vertices": poly.num_vertices, "ambient_dim": poly.ambient_dim,
                   "maps": [list(m) for m in poly.labels]}
    if args.facets:
        desc = facets(poly)
        rep.say(f"dimension {desc.dim}, {len(desc.facets)} facets")
        fdata = []
        for f in desc.facets:
            rep.say(f"  normal {list(f.normal)} <= {f.offset} incident {list(f.incident)}")
            fdata.append({"normal": list(f.normal), "offset": f.offset,
                          "incident": list(f.incident)})
        srep = simplicity(poly, desc)
        rep.say(f"simple: {srep.simple}; incidence counts {sorted(set(srep.counts))}")
        rep.payload.update({"dim": desc.dim, "facets": fdata,
                            "simple": srep.simple, "counts": list(srep.counts)})
    rep.emit()
    return EXIT_OK


def cmd_hibi(args, cfg: RunConfig) -> int:
    with open(args.poset) as fh:
        poset = parse_poset_text(fh.read())
    cmp = hibi_vs_topgraded(poset)
    rep = Report("hibi", cfg)
    rep.say(f"lattice relations: {len(cmp.hibi_basis)}")
    rep.say(f"top-graded basis: {len(cmp.top.basis)}")
    rep.say(f"generators match: {cmp.generators_match}")
    rep.say(f"mutual generation: {cmp.mutual_generation}")
    rep.payload = {"relations": len(cmp.hibi_basis), "top_basis": len(cmp.top.basis),
                   "generators_match": cmp.generators_match,
                   "mutual_generation": cmp.mutual_generation}
    rep.emit()
    return EXIT_OK if cmp.mutual_generation else EXIT_NEGATIVE


def cmd_chromatic_cert(args, cfg: RunConfig) -> int:
    g = load_graph(args.G)
    relation = []
    if args.relation:
        with open(args.relation) as fh:
            for raw in fh.read().splitlines():
                line = raw.split("#", 1)[0].strip()
                if line:
                    u, v = line.split()
                    relation.append((int(u), int(v)))
    system, b = find_low_degree_binomial(g, degree_cap=args.cap,
                                         mono_cap=cfg.mono_cap)
    rep = Report("chromatic-cert", cfg)
    if b is None:
        rep.say(f"no disjoint-support binomial of degree <= {args.cap}")
        rep.payload = {"found": False, "cap": args.cap}
        rep.emit()
        return EXIT_NEGATIVE
    cert = analyze_certificate(g, system, b, relation)
    rep.say(format_certificate(cert))
    rep.payload = {
        "found": True,
        "degree": cert.degree,
        "binomial": format_binomial(b, system, maps=True),
        "verdict": cert.verdict,
        "table": [{"match": row.position + 1,
                   "identifications": [{"pair": list(p), "marker": mk}
                                       for p, mk in row.identifications]}
                  for row in cert.table]}
    rep.emit()
    return EXIT_OK if cert.verdict != "INCONCLUSIVE" else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# reproduction scenarios

def _scenario_p4p3(rep, cfg):
    system = build_system(graphs.path(4), graphs.path(3))
    res = markov_basis(system, 3, threads=cfg.threads)
    for b in res.basis:
        rep.say(format_binomial(b, system, maps=True))
    rep.payload["generators"] = [format_binomial(b, system, maps=True)
                                 for b in res.basis]


def _scenario_prism_width(rep, cfg):
    isys, basis, cubic = complement_cycle_basis(3)
    res = markov_basis(isys.system, 4, threads=cfg.threads)
    rep.say(f"width {res.width}")
    rep.say(f"cubic present: {any(b.unordered_key() == cubic.unordered_key() for b in res.basis)}")
    rep.payload.update({"width": res.width, "basis_size": len(res.basis)})


def _scenario_c4_bipartite(rep, cfg):
    isys = IndepSystem(graphs.cycle(4))
    basis = bipartite_grobner(isys)
    for b in basis:
        rep.say(" * ".join(isys.set_name(v) for v in b.plus) + " - "
                + " * ".join(isys.set_name(v) for v in b.minus))
    ok = verify_grobner(isys.system, basis, 4, threads=cfg.threads)
    rep.say(f"grobner verified: {ok}")
    rep.payload.update({"size": len(basis), "verified": ok})


def _scenario_c5_almost_bipartite(rep, cfg):
    isys = IndepSystem(graphs.cycle(5))
    tagged = almost_bipartite_grobner(isys)
    for b in tagged.basis:
        rep.say(" * ".join(isys.set_name(v) for v in b.plus) + " - "
                + " * ".join(isys.set_name(v) for v in b.minus)
                + f"  # {tagged.tags[b]}")
    ok = verify_grobner(isys.system, tagged.basis, 4, threads=cfg.threads)
    rep.say(f"grobner verified: {ok}")
    rep.payload.update({"size": len(tagged.basis), "verified": ok})


def _scenario_c4_polytope(rep, cfg):
    poly = build_polytope(graphs.cycle(4), graphs.spoon())
    desc = facets(poly)
    srep = simplicity(poly, desc)
    rep.say(f"{poly.num_vertices} vertices, {len(desc.facets)} facets, "
            f"simple: {srep.simple}")
    empty = build_polytope(graphs.cycle(3), graphs.cycle(4))
    rep.say(f"triangle-into-square polytope vertices: {empty.num_vertices}")
    rep.payload.update({"vertices": poly.num_vertices, "facets": len(desc.facets),
                        "simple": srep.simple, "empty_check": empty.num_vertices})


def _scenario_k3k4(rep, cfg):
    system = build_system(graphs.complete(3), graphs.complete(4))
    b12 = _degree12_binomial(system)
    rep.say(f"degree-12 binomial member: {system.membership(b12)}")
    from .toric import iter_fibers
    clean = all(not list(iter_fibers(system, t, min_size=2)) for t in (2, 3, 4))
    rep.say(f"no relations up to degree 4: {clean}")
    rep.payload.update({"member": system.membership(b12), "clean_to_4": clean})


def _scenario_fan_k4(rep, cfg):
    system = build_system(graphs.complete(3), graphs.complete(4))
    base = OrientedBasis.make([_degree12_binomial(system)])
    fan = Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)])
    res = outerplanar_pipeline(fan, graphs.complete(4), base_basis=base,
                               lift_cap=5000, allow_truncation=True)
    rep.say(f"degrees {list(res.degrees_full)} (truncated: {res.truncated})")
    rep.payload.update({"degrees": list(res.degrees_full), "truncated": res.truncated})


def _scenario_k5_coloring(rep, cfg):
    system = build_system(graphs.complete(3), graphs.complete(5))

    def var(s):
        return system.homs.index[tuple(int(c) - 1 for c in s)]

    b = Binomial.make([var(s) for s in "123 145 325 341 521 543".split()],
                      [var(s) for s in "125 143 321 345 523 541".split()])
    cert = analyze_certificate(graphs.complete(5), system, b)
    rep.say(format_certificate(cert))
    rep.payload.update({"verdict": cert.verdict})


def _scenario_octahedron_coloring(rep, cfg):
    octa = graphs.octahedron()
    system = build_system(graphs.complete(3), octa)

    def var(s):
        return system.homs.index[tuple(int(c) - 1 for c in s)]

    b = Binomial.make([var(s) for s in "135 146 236 245".split()],
                      [var(s) for s in "136 145 235 246".split()])
    cert = analyze_certificate(octa, system, b, relation=[(0, 1), (2, 3), (4, 5)])
    rep.say(format_certificate(cert))
    rep.say(f"octahedron 4-colorable: {is_k_colorable(octa, 4)}")
    rep.payload.update({"verdict": cert.verdict,
                        "four_colorable": is_k_colorable(octa, 4)})


def _scenario_hibi_small(rep, cfg):
    from .hibi import Poset
    for name, poset in [("chain2", Poset(2, [(0, 1)])),
                        ("antichain2", Poset(2, [])),
                        ("vee", Poset(3, [(0, 1), (0, 2)]))]:
        cmp = hibi_vs_topgraded(poset)
        rep.say(f"{name}: relations {len(cmp.hibi_basis)}, match {cmp.generators_match}, "
                f"mutual {cmp.mutual_generation}")
        rep.payload[name] = {"match": cmp.generators_match,
                             "mutual": cmp.mutual_generation}


def _scenario_spoon_widths(rep, cfg):
    for n in (3, 4, 5):
        system = build_system(graphs.complete(n), graphs.spoon())
        res = markov_basis(system, 3, threads=cfg.threads)
        rep.say(f"complete:{n} -> spoon width {res.width}")
        rep.payload[f"K{n}"] = res.width


def _degree12_binomial(system):
    def var(s):
        return system.homs.index[tuple(int(c) - 1 for c in s)]

    left = [var(s) for s in "123 214 341 432 231 142 413 324 312 421 134 243".split()]
    right = [var(s) for s in "124 213 342 431 234 143 412 321 314 423 132 241".split()]
    return Binomial.make(left, right)


SCENARIOS = {
    "p4p3": _scenario_p4p3,
    "prism-width": _scenario_prism_width,
    "c4-bipartite": _scenario_c4_bipartite,
    "c5-almost-bipartite": _scenario_c5_almost_bipartite,
    "c4-polytope": _scenario_c4_polytope,
    "k3k4-binomial": _scenario_k3k4,
    "fan-k4": _scenario_fan_k4,
    "k5-coloring": _scenario_k5_coloring,
    "octahedron-coloring": _scenario_octahedron_coloring,
    "hibi-small": _scenario_hibi_small,
    "spoon-widths": _scenario_spoon_widths,
}


def cmd_reproduce(args, cfg: RunConfig) -> int:
    names = sorted(SCENARIOS) if args.all else [args.name]
    if not args.all and args.name not in SCENARIOS:
        print(f"unknown scenario {args.name!r}; known: {', '.join(sorted(SCENARIOS))}",
              file=sys.stderr)
        return EXIT_USAGE
    rep = Report("reproduce", cfg)
    for name in names:
        rep.say(f"== {name}")
        sub = Report(name, cfg)
        SCENARIOS[name](sub, cfg)
        rep.lines.extend(sub.lines)
        rep.payload[name] = sub.payload
    rep.emit()
    return EXIT_OK


# ---------------------------------------------------------------------------
# dispatch

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="homtoric",
                                  description="toric ideals of graph homomorphisms")
    top.add_argument("--json", action="store_true", help="JSON output")
    top.add_argument("--threads", type=int, default=1)
    top.add_argument("--seed", type=int, default=0)
    top.add_argument("--mono-cap", type=int, default=10**7,
                     help="monomial enumeration cap")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homs", help="enumerate homomorphisms")
    p.add_argument("G")
    p.add_argument("H")
    p.set_defaults(func=cmd_homs)

    p = sub.add_parser("markov", help="minimal-degree generating set")
    p.add_argument("G")
    p.add_argument("H")
    p.add_argument("--cap", type=int, default=4)
    p.set_defaults(func=cmd_markov)

    p = sub.add_parser("width", help="Markov width up to a degree cap")
    p.add_argument("G")
    p.add_argument("H")
    p.add_argument("--cap", type=int, default=4)
    p.set_defaults(func=cmd_width)

    p = sub.add_parser("verify-grobner", help="directed fiber-graph check")
    p.add_argument("G")
    p.add_argument("H")
    p.add_argument("--basis", required=True)
    p.add_argument("--cap", type=int, default=4)
    p.set_defaults(func=cmd_verify_grobner)

    p = sub.add_parser("indep-grobner", help="independence-ideal basis")
    p.add_argument("G")
    p.set_defaults(func=cmd_indep_grobner)

    p = sub.add_parser("glue", help="codimension-zero gluing")
    p.add_argument("G1")
    p.add_argument("G2")
    p.add_argument("H")
    p.add_argument("--basis1")
    p.add_argument("--basis2")
    p.add_argument("--lift-cap", type=int, default=200_000)
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("polytope", help="homomorphism polytope")
    p.add_argument("G")
    p.add_argument("H")
    p.add_argument("--facets", action="store_true")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("hibi", help="lattice relations vs top-graded ideal")
    p.add_argument("poset")
    p.set_defaults(func=cmd_hibi)

    p = sub.add_parser("chromatic-cert", help="coloring obstruction certificate")
    p.add_argument("G")
    p.add_argument("--relation")
    p.add_argument("--cap", type=int, default=5)
    p.set_defaults(func=cmd_chromatic_cert)

    p = sub.add_parser("reproduce", help="run named worked examples")
    p.add_argument("name", nargs="?")
    p.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_reproduce)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "reproduce" and not args.all and not args.name:
        parser.error("reproduce needs a scenario name or --all")
    cfg = RunConfig(mono_cap=args.mono_cap, threads=args.threads,
                    fmt="json" if args.json else "text", seed=args.seed)
    try:
        return args.func(args, cfg)
    except (GraphError, GlueError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HomTooLarge, ResourceCapExceeded, LiftTooLarge,
            PolytopeCapExceeded) as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
