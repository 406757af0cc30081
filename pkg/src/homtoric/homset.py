"""Enumeration and manipulation of graph homomorphisms.

A homomorphism G -> H is stored as the tuple (phi(0), ..., phi(n-1)).
``HomSet`` holds all of them in lexicographic order of that tuple; the
position of a map in the list is its variable index in the associated
polynomial ring.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import Graph, induced_subgraph


class HomTooLarge(RuntimeError):
    """Search space above the configured resource cap."""


@dataclass(frozen=True)
class Hom:
    source: Graph
    target: Graph
    map: tuple

    def __post_init__(self):
        if len(self.map) != self.source.n:
            raise ValueError("map length does not match the source")
        if not is_hom(self.source, self.target, self.map):
            raise ValueError(f"{self.map} does not preserve edges")

    def __call__(self, v: int) -> int:
        return self.map[v]


def is_hom(g: Graph, h: Graph, mapping) -> bool:
    return all(h.adjacent(mapping[u], mapping[v]) for u, v in g.edges)


def _bfs_order(g: Graph):
    order = []
    seen = [False] * g.n
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in sorted(g.neighbors(u)):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


class HomSet:
    """All homomorphisms G -> H, sorted lexicographically by map tuple."""

    __slots__ = ("source", "target", "maps", "index")

    def __init__(self, source: Graph, target: Graph, maps):
        self.source = source
        self.target = target
        self.maps = tuple(sorted(maps))
        self.index = {m: i for i, m in enumerate(self.maps)}

    def __len__(self):
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)

    def __getitem__(self, i):
        return self.maps[i]

    def hom(self, i: int) -> Hom:
        return Hom(self.source, self.target, self.maps[i])


def enumerate_homs(g: Graph, h: Graph, *, search_cap: int = 10**12,
                   count_cap: int = 10**7) -> HomSet:
    """Backtracking over the vertices of G in BFS order with forward
    checking against the adjacency of H."""
    if g.n > 0 and h.n ** g.n > search_cap:
        raise HomTooLarge(f"|V(H)|^|V(G)| = {h.n}**{g.n} exceeds the cap")
    order = _bfs_order(g)
    pos = {v: i for i, v in enumerate(order)}
    # per assigned vertex: earlier neighbors to check, plus own loop
    checks = []
    for i, v in enumerate(order):
        earlier = [u for u in g.neighbors(v) if pos[u] < i]
        checks.append((v, earlier, g.has_loop(v)))
    maps = []
    assign = [0] * g.n

    def backtrack(i):
        if i == g.n:
            maps.append(tuple(assign))
            if len(maps) > count_cap:
                raise HomTooLarge(f"more than {count_cap} homomorphisms")
            return
        v, earlier, loop = checks[i]
        for w in range(h.n):
            if loop and not h.adjacent(w, w):
                continue
            if all(h.adjacent(w, assign[u]) for u in earlier):
                assign[v] = w
                backtrack(i + 1)

    backtrack(0)
    return HomSet(g, h, maps)


def restrict(hom: Hom, vertices) -> Hom:
    """Restriction to the induced subgraph on ``vertices`` (relabeled
    0..|S|-1 in sorted order)."""
    sub = induced_subgraph(hom.source, vertices)
    return Hom(sub.graph, hom.target, tuple(hom.map[v] for v in sub.vertices))


def compose(first: Hom, second: Hom) -> Hom:
    """Pointwise composition second o first."""
    if first.target != second.source:
        raise ValueError("target of the first map must equal source of the second")
    return Hom(first.source, second.target,
               tuple(second.map[w] for w in first.map))


def restriction_tuple(mapping, vertices) -> tuple:
    """Map tuple restricted to a sorted vertex list (no Hom wrapper)."""
    return tuple(mapping[v] for v in vertices)


UNLOOPED, LOOPED = 0, 1


def indep_encode(g: Graph, homs: HomSet):
    """Bijection Hom(G, spoon) <-> independent sets of G.

    The independent set is the preimage of the unlooped vertex 0.
    Returns (sets, index) with sets[i] the frozenset for variable i.
    """
    t = homs.target
    if t.n != 2 or t.edges != frozenset({(0, 1), (1, 1)}):
        raise ValueError("independence encoding needs the spoon target")
    sets = [frozenset(v for v in range(g.n) if m[v] == UNLOOPED) for m in homs.maps]
    index = {s: i for i, s in enumerate(sets)}
    if len(index) != len(sets):
        raise AssertionError("independent-set encoding is not injective")
    return sets, index
