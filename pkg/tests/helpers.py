"""Shared test helpers: exhaustive graph generation up to isomorphism and
independent brute-force oracles for cross-checking the library."""

from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations, product

import numpy as np

from homtoric.graph import Graph, is_connected


@lru_cache(maxsize=None)
def graphs_upto_iso(n, connected=False, no_isolated=False):
    """All loop-free graphs on n vertices up to isomorphism."""
    if n == 0:
        return ()
    pairs = list(combinations(range(n), 2))
    m = len(pairs)
    pair_pos = {p: i for i, p in enumerate(pairs)}
    masks = np.arange(1 << m, dtype=np.int64)
    canon = masks.copy()
    for perm in permutations(range(n)):
        targets = [pair_pos[tuple(sorted((perm[u], perm[v])))] for u, v in pairs]
        pm = np.zeros_like(masks)
        for b in range(m):
            pm |= ((masks >> b) & 1) << targets[b]
        np.minimum(canon, pm, out=canon)
    reps = np.unique(canon)
    out = []
    for mask in map(int, reps):
        g = Graph(n, [pairs[b] for b in range(m) if mask >> b & 1])
        if connected and not is_connected(g):
            continue
        if no_isolated and not all(g.degree_on_edge(v) for v in range(g.n)):
            continue
        out.append(g)
    return tuple(out)


def naive_homs(g, h):
    """Product filtering over all vertex maps."""
    out = []
    for m in product(range(h.n), repeat=g.n):
        if all(h.adjacent(m[u], m[v]) for u, v in g.edges):
            out.append(m)
    return sorted(out)


def brute_bipartition_exists(g):
    """Try all 2^n two-colorings."""
    if any(u == v for u, v in g.edges):
        return False
    for mask in range(1 << g.n):
        if all((mask >> u & 1) != (mask >> v & 1) for u, v in g.edges):
            return True
    return g.n == 0


def naive_independent_sets(g):
    out = []
    for mask in range(1 << g.n):
        s = [v for v in range(g.n) if mask >> v & 1]
        if any(g.has_loop(v) for v in s):
            continue
        if all(not g.adjacent(u, v) for u, v in combinations(s, 2)):
            out.append(frozenset(s))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def naive_fibers(system, degree):
    """Pure-python fiber grouping by exact image, no numpy involved."""
    fibers = {}
    for mono in combinations_with_replacement(range(system.num_vars), degree):
        fibers.setdefault(system.image(mono), []).append(mono)
    return {k: sorted(v) for k, v in fibers.items()}


def _naive_components(monos, basis):
    """Component partition under moves, applying binomials in both
    directions by direct multiset division."""
    from collections import Counter
    moves = [(Counter(p), Counter(q)) for p, q in basis]
    moves += [(q, p) for p, q in moves]
    monoset = set(monos)
    seen = set()
    comps = []
    for start in sorted(monos):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            m = stack.pop()
            cm = Counter(m)
            for cp, cq in moves:
                if all(cm[k] >= v for k, v in cp.items()):
                    nxt = tuple(sorted((+(cm - cp) + cq).elements()))
                    if nxt in monoset and nxt not in seen:
                        seen.add(nxt)
                        comp.add(nxt)
                        stack.append(nxt)
        comps.append(sorted(comp))
    return comps


def naive_markov_width(system, cap):
    """Independent layered reimplementation used as the width oracle."""
    from collections import Counter
    basis = []
    width = 0
    for t in range(2, cap + 1):
        fibers = naive_fibers(system, t)
        for key in sorted(fibers):
            monos = fibers[key]
            if len(monos) < 2:
                continue
            while True:
                comps = _naive_components(monos, basis)
                if len(comps) == 1:
                    break
                a, b = comps[0][0], comps[1][0]
                ca, cb = Counter(a), Counter(b)
                common = ca & cb
                p = tuple(sorted((ca - common).elements()))
                q = tuple(sorted((cb - common).elements()))
                basis.append((p, q))
                width = max(width, len(p), len(q))
    return width
