"""Algebraic obstructions to 4-colorability.

The ideal of triangle placements into K4 is generated by a single binomial
of degree 12, so any binomial of smaller degree in the triangle ideal of a
test graph must collapse under every 4-coloring: some permutation matches
the two sides factor by factor, forcing vertex-color identifications.  A
certificate is such a binomial plus the table of identifications forced by
each choice of matching.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from . import graph as graphs
from .graph import Graph
from .homset import Hom, compose
from .toric import Binomial, ToricSystem, build_system, iter_fibers

GENERATOR_DEGREE_K3_K4 = 12


@dataclass(frozen=True)
class TableRow:
    position: int               # image of the first factor under the matching
    identifications: tuple      # ((u, v), marker) with marker in {"", "adjacent", "relation"}


@dataclass(frozen=True)
class ObstructionCertificate:
    graph: Graph
    binomial: Binomial
    degree: int
    table: tuple                # TableRow per possible image of factor 1
    verdict: str                # NOT_4_COLORABLE | PROPERTY | INCONCLUSIVE
    relation: tuple = ()


def find_low_degree_binomial(g: Graph, degree_cap: int = 6, *,
                             test_graph: Graph = None,
                             mono_cap: int = 10**7, **homcaps):
    """Smallest-degree binomial with disjoint monomial supports in the
    test-graph ideal of ``g`` (triangle placements by default);
    lexicographically smallest such pair.  None when nothing exists up to
    the cap."""
    if test_graph is None:
        test_graph = graphs.complete(3)
    system = build_system(test_graph, g, **homcaps)
    if system.num_vars == 0:
        raise ValueError("no placements of the test graph; the ideal is empty")
    for t in range(2, degree_cap + 1):
        best = None
        for _, monos in iter_fibers(system, t, min_size=2, mono_cap=mono_cap):
            monos = sorted(monos)
            for i in range(len(monos)):
                for j in range(i + 1, len(monos)):
                    if set(monos[i]).isdisjoint(monos[j]):
                        pair = (monos[i], monos[j])
                        if best is None or pair < best:
                            best = pair
                        break
        if best is not None:
            return system, Binomial(*best)
    return system, None


def analyze_certificate(g: Graph, system: ToricSystem, b: Binomial,
                        relation=(), *,
                        generator_degree: int = GENERATOR_DEGREE_K3_K4
                        ) -> ObstructionCertificate:
    """Scan all matchings of the two sides.  NOT_4_COLORABLE when every
    permutation forces an identification of adjacent vertices; PROPERTY
    when every permutation forces a pair from the supplied relation.

    ``generator_degree`` is the known minimal generator degree of the
    test-graph-into-coloring-target ideal (12 for triangles into K4); test
    graphs other than the triangle need a caller-supplied threshold.
    """
    d = b.degree
    if d >= generator_degree:
        raise ValueError(f"certificate degree must be below {generator_degree}")
    if not set(b.plus).isdisjoint(b.minus):
        raise ValueError("certificate binomial must have disjoint supports")
    if not system.membership(b):
        raise ValueError("binomial is not in the triangle ideal")
    rel = {tuple(sorted(p)) for p in relation}
    phis = [system.homs.maps[v] for v in b.plus]
    psis = [system.homs.maps[v] for v in b.minus]

    def idents(i, j):
        pairs = set()
        for a, bb in zip(phis[i], psis[j]):
            if a != bb:
                pairs.add((a, bb) if a < bb else (bb, a))
        return tuple(sorted(pairs))

    ident_cache = {(i, j): idents(i, j) for i in range(d) for j in range(d)}
    every_adjacent = True
    every_relation = bool(rel)
    for perm in permutations(range(d)):
        forced = set()
        for i in range(d):
            forced.update(ident_cache[(i, perm[i])])
        if not any(g.adjacent(u, v) for u, v in forced):
            every_adjacent = False
        if rel and not (forced & rel):
            every_relation = False
        if not every_adjacent and not (rel and every_relation):
            break
    rows = []
    for j in range(d):
        marked = []
        for u, v in ident_cache[(0, j)]:
            if g.adjacent(u, v):
                marked.append(((u, v), "adjacent"))
            elif (u, v) in rel:
                marked.append(((u, v), "relation"))
            else:
                marked.append(((u, v), ""))
        rows.append(TableRow(j, tuple(marked)))
    if every_adjacent:
        verdict = "NOT_4_COLORABLE"
    elif rel and every_relation:
        verdict = "PROPERTY"
    else:
        verdict = "INCONCLUSIVE"
    return ObstructionCertificate(g, b, d, tuple(rows), verdict,
                                  tuple(sorted(rel)))


def pushforward(xi: Hom, b: Binomial, system_src: ToricSystem,
                system_dst: ToricSystem):
    """Apply a coloring variable-wise: r_phi -> r_{xi o phi}.  Returns the
    image binomial or None when both sides collapse to the same monomial."""
    if xi.source != system_src.h:
        raise ValueError("coloring must map out of the source system's target graph")
    if xi.target != system_dst.h:
        raise ValueError("coloring must map into the target system's target graph")

    def push(mono):
        out = []
        for v in mono:
            phi = Hom(system_src.g, system_src.h, system_src.homs.maps[v])
            out.append(system_dst.homs.index[compose(phi, xi).map])
        return tuple(sorted(out))

    img = Binomial.make(push(b.plus), push(b.minus))
    if img is not None and not system_dst.membership(img):
        raise AssertionError("pushforward left the ideal")
    return img


# ---------------------------------------------------------------------------
# brute-force coloring (oracle-grade, used for verdict confirmation)

def is_k_colorable(g: Graph, k: int) -> bool:
    if not g.is_loopfree():
        return False
    colors = [-1] * g.n
    order = sorted(range(g.n), key=lambda v: -len(g.neighbors(v)))

    def backtrack(i):
        if i == g.n:
            return True
        v = order[i]
        used = {colors[u] for u in g.neighbors(v) if colors[u] != -1}
        for c in range(k):
            if c not in used:
                colors[v] = c
                if backtrack(i + 1):
                    return True
                colors[v] = -1
        return False

    return backtrack(0)


def chromatic_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        if is_k_colorable(g, k):
            return k
    return g.n


def format_certificate(cert: ObstructionCertificate) -> str:
    lines = [f"degree {cert.degree} binomial, verdict {cert.verdict}"]
    for row in cert.table:
        parts = []
        for (u, v), marker in row.identifications:
            text = f"{u}={v}"
            if marker:
                text += f" [{marker}]"
            parts.append(text)
        lines.append(f"  match 1 -> {row.position + 1}: " + (", ".join(parts) or "none"))
    return "\n".join(lines)
