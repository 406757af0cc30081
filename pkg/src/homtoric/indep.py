"""Ideals of independent sets: everything specific to the spoon target.

Variables of the ring correspond to independent sets of the source graph.
For a bipartite source each variable splits as (A, B) = (S & V1, S & V2);
for an almost-bipartite source (bipartite after deleting one apex vertex)
variables additionally carry a marker recording whether the apex is in
the set.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import graph as graphs
from .graph import Graph, Bipartition, AlmostBipartiteSplit
from .homset import enumerate_homs, indep_encode
from .toric import (Binomial, MoveIndex, OrientedBasis, ToricSystem,
                    markov_basis)


class IndepSystem:
    """Toric system for G -> spoon together with the independent-set
    encoding of its variables."""

    __slots__ = ("graph", "system", "sets", "index")

    def __init__(self, g: Graph, **caps):
        self.graph = g
        homs = enumerate_homs(g, graphs.spoon(), **caps)
        self.system = ToricSystem(g, graphs.spoon(), homs)
        self.sets, self.index = indep_encode(g, homs)

    @property
    def num_vars(self):
        return len(self.sets)

    def var(self, vertices) -> int:
        s = frozenset(vertices)
        if s not in self.index:
            raise KeyError(f"{sorted(s)} is not an independent set of the graph")
        return self.index[s]

    def set_name(self, i: int) -> str:
        return "{" + ",".join(map(str, sorted(self.sets[i]))) + "}"


def indep_system(g: Graph, **caps) -> IndepSystem:
    return IndepSystem(g, **caps)


@dataclass(frozen=True)
class MultiDegree:
    total: int
    by_vertex: tuple


def multidegree(isys: IndepSystem, mono) -> MultiDegree:
    """Per-vertex count of factors containing the vertex."""
    counts = [0] * isys.graph.n
    for v in mono:
        for x in isys.sets[v]:
            counts[x] += 1
    return MultiDegree(len(mono), tuple(counts))


# ---------------------------------------------------------------------------
# bipartite sources

def _straighten(a, b, c, d):
    """((A&C, B|D), (A|C, B&D)) - the comparable pair with the same
    vertex statistics."""
    return (a & c, b | d), (a | c, b & d)


def _require_no_isolated(g: Graph):
    # a vertex on no edge is invisible to the edge statistics, so the
    # quadratic sorting binomials cannot generate the ideal (degree-one
    # generators like r_{v} - r_{} appear instead)
    if not all(g.degree_on_edge(v) for v in range(g.n)):
        raise ValueError("source graph must have every vertex on an edge")


def bipartite_grobner(isys: IndepSystem, bip: Bipartition = None) -> OrientedBasis:
    """All sorting binomials r_{A,B} r_{C,D} - r_{A&C, B|D} r_{A|C, B&D}
    over incomparable pairs of independent sets, oriented with the
    incomparable pair leading.  This oriented set passes the directed
    fiber-graph check for any loop-free bipartite source without isolated
    vertices."""
    g = isys.graph
    _require_no_isolated(g)
    if bip is None:
        bip = graphs.is_bipartite(g)
    if bip is None:
        raise ValueError("graph is not bipartite")
    v1, v2 = bip.part1, bip.part2
    elems = []
    n = isys.num_vars
    for i in range(n):
        si = isys.sets[i]
        a, b = si & v1, si & v2
        for j in range(i + 1, n):
            sj = isys.sets[j]
            c, d = sj & v1, sj & v2
            (t1a, t1b), (t2a, t2b) = _straighten(a, b, c, d)
            t1, t2 = t1a | t1b, t2a | t2b
            if {t1, t2} == {si, sj}:
                continue
            minus = tuple(sorted((isys.index[t1], isys.index[t2])))
            elems.append(Binomial((i, j), minus))
    return OrientedBasis.make(elems)


# ---------------------------------------------------------------------------
# almost-bipartite sources

@dataclass(frozen=True)
class ApexLabeling:
    apex: int
    part1: frozenset
    part2: frozenset
    circ: tuple     # (var, A, B) for sets without the apex
    bullet: tuple   # (var, C, D) for sets containing the apex


def apex_labeling(isys: IndepSystem, split: AlmostBipartiteSplit = None) -> ApexLabeling:
    g = isys.graph
    if split is None:
        split = graphs.is_almost_bipartite(g)
    if split is None:
        raise ValueError("graph is not almost bipartite")
    v1, v2 = split.part1, split.part2
    circ, bullet = [], []
    for i, s in enumerate(isys.sets):
        if split.apex in s:
            bullet.append((i, s & v1, s & v2))
        else:
            circ.append((i, s & v1, s & v2))
    return ApexLabeling(split.apex, v1, v2, tuple(circ), tuple(bullet))


@dataclass(frozen=True)
class TaggedBasis:
    basis: OrientedBasis
    tags: dict          # Binomial -> "uncovered" | "covered" | "mixed"
    labeling: ApexLabeling = None


def almost_bipartite_grobner(isys: IndepSystem,
                             split: AlmostBipartiteSplit = None) -> TaggedBasis:
    """Quadratic square-free oriented basis for an almost-bipartite source.

    Three families: sorting binomials among apex-free variables
    (uncovered), among apex variables (covered), and the mixed moves that
    shift a subset E out of the apex-free A-part into the apex C-part or
    transfer a single vertex from the apex D-part to the apex-free B-part.
    Every element is oriented with the unstraightened side leading, so
    directed moves run toward the normal form.
    """
    g = isys.graph
    _require_no_isolated(g)
    lab = apex_labeling(isys, split)
    nbrs = {v: g.neighbors(v) for v in range(g.n)}
    elems = {}

    def emit(plus, minus, tag):
        b = Binomial.make(plus, minus)
        if b is None:
            return
        key = b.unordered_key()
        prev = elems.get(key)
        if prev is not None and prev[0] != b:
            raise AssertionError("conflicting orientations for one binomial")
        elems[key] = (b, tag)

    def straighten_family(vars_, make_set, tag):
        for x in range(len(vars_)):
            i, a, b = vars_[x]
            for y in range(x + 1, len(vars_)):
                j, c, d = vars_[y]
                (t1a, t1b), (t2a, t2b) = _straighten(a, b, c, d)
                s1, s2 = make_set(t1a, t1b), make_set(t2a, t2b)
                if {s1, s2} == {isys.sets[i], isys.sets[j]}:
                    continue
                minus = tuple(sorted((isys.index[s1], isys.index[s2])))
                emit((i, j), minus, tag)

    apex = frozenset({lab.apex})
    straighten_family(lab.circ, lambda p, q: p | q, "uncovered")
    straighten_family(lab.bullet, lambda p, q: p | q | apex, "covered")

    # mixed moves: shift E from the circ A-part into the bullet C-part
    for i, a, b in lab.circ:
        for j, c, d in lab.bullet:
            pool = sorted(a - c)
            for mask in range(1, 1 << len(pool)):
                e = frozenset(pool[t] for t in range(len(pool)) if mask >> t & 1)
                ne = frozenset().union(*(nbrs[x] for x in e)) - e
                s1 = (a - e) | b | (ne & d)
                s2 = c | e | (d - ne) | apex
                k1, k2 = isys.index.get(s1), isys.index.get(s2)
                if k1 is None or k2 is None:
                    continue
                emit((i, j), tuple(sorted((k1, k2))), "mixed")

    # mixed moves: transfer one vertex from the bullet D-part to the circ B-part
    for i, a, b in lab.circ:
        for j, c, d in lab.bullet:
            for u in sorted(d - b):
                s1 = a | b | {u}
                k1 = isys.index.get(s1)
                if k1 is None:
                    continue
                s2 = c | (d - {u}) | apex
                emit((i, j), tuple(sorted((k1, isys.index[s2]))), "mixed")

    basis = OrientedBasis.make([b for b, _ in elems.values()])
    tags = {b: tag for b, tag in elems.values()}
    return TaggedBasis(basis, tags, lab)


# ---------------------------------------------------------------------------
# normal forms

def straightening_potential(isys: IndepSystem, part1, mono) -> tuple:
    """Lexicographic pair (sum |A|^2+|B|^2, -sum |A||B|) over the factors.

    Meet/join moves on an incomparable coordinate raise the first entry;
    the remaining nonzero moves swap comparable coordinate pairs, leave the
    first entry fixed and raise the second.  Strict lexicographic increase
    on every move bounds the reduction length.
    """
    squares = 0
    cross = 0
    for v in mono:
        s = isys.sets[v]
        a = len(s & part1)
        b = len(s) - a
        squares += a * a + b * b
        cross += a * b
    return (squares, -cross)


class ReductionStuck(RuntimeError):
    pass


def reduce_to_sink(index: MoveIndex, mono, *, max_steps=None, on_step=None):
    """Apply oriented moves (smallest resulting monomial first) until no
    lead divides the monomial."""
    mono = tuple(sorted(mono))
    steps = 0
    cap = max_steps if max_steps is not None else 1000 + 200 * len(mono)
    while True:
        nxt = index.directed_neighbors(mono)
        if not nxt:
            return mono
        new = min(nxt)
        if on_step is not None:
            on_step(mono, new)
        mono = new
        steps += 1
        if steps > cap:
            raise ReductionStuck(f"no sink after {steps} moves")


def normal_form(isys: IndepSystem, mono, basis: OrientedBasis = None, *,
                bip: Bipartition = None, max_steps=None) -> tuple:
    """Reduce a monomial with the oriented moves of the bipartite or
    almost-bipartite basis; checks the strictly increasing potential on
    plain bipartite sources."""
    g = isys.graph
    if basis is None:
        bip = bip or graphs.is_bipartite(g)
        if bip is not None:
            basis = bipartite_grobner(isys, bip)
        else:
            tagged = almost_bipartite_grobner(isys)
            basis = tagged.basis
    index = MoveIndex(basis)
    check = None
    if bip is not None:
        def check(old, new):
            lo = straightening_potential(isys, bip.part1, old)
            hi = straightening_potential(isys, bip.part1, new)
            if hi <= lo:
                raise AssertionError("sorting move failed to increase the potential")
    return reduce_to_sink(index, mono, max_steps=max_steps, on_step=check)


def is_chain_monomial(isys: IndepSystem, part1, mono) -> bool:
    """Factors form a chain A_1 <= ... <= A_k with B_1 >= ... >= B_k."""
    pairs = []
    for v in mono:
        s = isys.sets[v]
        pairs.append((s & part1, s - part1))
    for a1, b1 in pairs:
        for a2, b2 in pairs:
            if not ((a1 <= a2 and b1 >= b2) or (a2 <= a1 and b2 >= b1)):
                return False
    return True


# ---------------------------------------------------------------------------
# top graded part

@dataclass(frozen=True)
class TopGraded:
    alpha: int
    vars: tuple            # variable indices of the full system
    sets: tuple            # the maximum independent sets, aligned with vars
    subsystem: object
    basis: OrientedBasis


def top_graded(isys: IndepSystem, degree_cap: int = 3, **kw) -> TopGraded:
    """Restriction to the variables of maximum independent-set size; the
    restriction is a face of the underlying polytope, so its generators
    come straight from the layered fiber construction."""
    alpha = max((len(s) for s in isys.sets), default=0)
    idxs = tuple(i for i, s in enumerate(isys.sets) if len(s) == alpha)
    sub = isys.system.restrict_columns(idxs, labels=tuple(isys.sets[i] for i in idxs))
    res = markov_basis(sub, degree_cap, **kw)
    return TopGraded(alpha, idxs, tuple(isys.sets[i] for i in idxs), sub, res.basis)


# ---------------------------------------------------------------------------
# complements of even cycles

def complement_cycle_basis(k: int, **caps):
    """Minimal quadratics plus the alternating-matching binomial of degree
    k for the complement of the cycle on 2k vertices; its width is exactly
    k."""
    if k < 2:
        raise ValueError("needs k >= 2")
    g = graphs.complement(graphs.cycle(2 * k))
    isys = IndepSystem(g, **caps)
    n = 2 * k
    even = sorted(isys.var({2 * i, (2 * i + 1) % n}) for i in range(k))
    odd = sorted(isys.var({(2 * i + 1) % n, (2 * i + 2) % n}) for i in range(k))
    special = Binomial.make(*sorted((tuple(even), tuple(odd))))
    quads = markov_basis(isys.system, 2).basis
    basis = OrientedBasis.make(list(quads) + [special])
    return isys, basis, special
