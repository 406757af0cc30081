"""Toric machinery for ideals of graph homomorphisms.

The defining matrix A has one row per pair (edge of G, edge map into H)
and one 0/1 column per homomorphism G -> H; the entry is 1 exactly when
the homomorphism restricts to that edge map.  Binomials live in the
polynomial ring with one variable per homomorphism; a monomial is stored
as a sorted tuple of variable indices (repeats encode exponents).

All arithmetic is exact integer arithmetic.  numpy is used only to group
monomials of a fixed degree into fibers; membership and basis decisions
work on exact Python integers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .graph import Graph
from .homset import HomSet, enumerate_homs
from .util import parallel_map


class ResourceCapExceeded(RuntimeError):
    pass


DEFAULT_MONO_CAP = 10**7


# ---------------------------------------------------------------------------
# monomials and binomials

def monomial(*variables) -> tuple:
    return tuple(sorted(variables))


def strip_common(plus, minus):
    """Remove the gcd monomial from both sides."""
    cp, cm = Counter(plus), Counter(minus)
    common = cp & cm
    if not common:
        return tuple(plus), tuple(minus)
    p = tuple(sorted((cp - common).elements()))
    m = tuple(sorted((cm - common).elements()))
    return p, m


@dataclass(frozen=True)
class Binomial:
    """plus - minus with disjoint supports; plus is the declared leading
    side when the binomial sits in an oriented basis."""
    plus: tuple
    minus: tuple

    @staticmethod
    def make(plus, minus):
        p, m = strip_common(sorted(plus), sorted(minus))
        if not p and not m:
            return None
        return Binomial(p, m)

    @property
    def degree(self) -> int:
        return max(len(self.plus), len(self.minus))

    def is_squarefree(self) -> bool:
        return (len(set(self.plus)) == len(self.plus)
                and len(set(self.minus)) == len(self.minus))

    def unordered_key(self):
        return (self.plus, self.minus) if self.plus <= self.minus else (self.minus, self.plus)

    def flipped(self) -> "Binomial":
        return Binomial(self.minus, self.plus)

    def relabel(self, var_map) -> "Binomial":
        return Binomial(tuple(sorted(var_map[v] for v in self.plus)),
                        tuple(sorted(var_map[v] for v in self.minus)))


@dataclass(frozen=True)
class OrientedBasis:
    """A list of binomials, each oriented plus -> minus.  ``weights`` is an
    optional per-variable tuple-of-ints weight (compared lexicographically
    after summing over the factors of a monomial); when present it must
    strictly separate the two sides of every element."""
    elements: tuple
    weights: tuple = None

    @staticmethod
    def make(binomials, weights=None):
        elems = sorted(set(b for b in binomials if b is not None),
                       key=lambda b: (b.degree, b.plus, b.minus))
        return OrientedBasis(tuple(elems), weights)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def degree(self) -> int:
        return max((b.degree for b in self.elements), default=0)

    def degrees(self):
        return sorted({b.degree for b in self.elements})

    def is_squarefree(self) -> bool:
        return all(b.is_squarefree() for b in self.elements)

    def monomial_weight(self, mono):
        if self.weights is None:
            raise ValueError("basis carries no weights")
        width = max((len(w) for w in self.weights), default=0)
        total = [0] * width
        for v in mono:
            w = self.weights[v]
            for i, x in enumerate(w):
                total[i] += x
        return tuple(total)


# ---------------------------------------------------------------------------
# the system

class ToricSystem:
    """Edge-separator matrix of Hom(G, H) with exact column data."""

    __slots__ = ("g", "h", "homs", "rows", "row_index", "cols",
                 "key_matrix", "key_reduced", "labels")

    def __init__(self, g: Graph, h: Graph, homs: HomSet, labels=None):
        self.g = g
        self.h = h
        self.homs = homs
        rows = []
        for (u, v) in sorted(g.edges):
            if u == v:
                maps = [(w,) for w in range(h.n) if h.adjacent(w, w)]
            else:
                maps = sorted((a, b) for a in range(h.n) for b in range(h.n)
                              if h.adjacent(a, b))
            rows.extend(((u, v), rho) for rho in maps)
        self.rows = tuple(rows)
        self.row_index = {r: i for i, r in enumerate(rows)}
        cols = []
        for m in homs.maps:
            entries = []
            for (u, v) in sorted(g.edges):
                rho = (m[u],) if u == v else (m[u], m[v])
                entries.append(self.row_index[((u, v), rho)])
            cols.append(tuple(sorted(entries)))
        self.cols = tuple(cols)
        self.labels = labels
        self.key_matrix, self.key_reduced = self._build_key()

    # -- construction helpers ------------------------------------------------

    def _build_key(self):
        """Fiber-grouping key.  For the spoon target on a source without
        isolated vertices the per-vertex multidegree is an equivalent,
        much smaller key; otherwise the full matrix is used."""
        n_vars = len(self.homs)
        spoonish = (self.h.n == 2 and self.h.edges == frozenset({(0, 1), (1, 1)}))
        no_isolated = all(self.g.degree_on_edge(v) for v in range(self.g.n))
        if spoonish and no_isolated and self.g.n > 0:
            key = np.zeros((self.g.n, n_vars), dtype=np.int16)
            for j, m in enumerate(self.homs.maps):
                for v in range(self.g.n):
                    if m[v] == 0:
                        key[v, j] = 1
            return key, True
        key = np.zeros((len(self.rows), n_vars), dtype=np.int16)
        for j, col in enumerate(self.cols):
            for r in col:
                key[r, j] += 1
        return key, False

    # -- exact images ----------------------------------------------------------

    @property
    def num_vars(self):
        return len(self.homs)

    @property
    def num_rows(self):
        return len(self.rows)

    def image(self, mono) -> tuple:
        img = Counter()
        for v in mono:
            img.update(self.cols[v])
        return tuple(sorted(img.items()))

    def membership(self, binomial: Binomial) -> bool:
        for v in binomial.plus + binomial.minus:
            if not (0 <= v < self.num_vars):
                raise IndexError(f"variable {v} out of range")
        return self.image(binomial.plus) == self.image(binomial.minus)

    def check_basis_members(self, basis: OrientedBasis):
        for b in basis:
            if not self.membership(b):
                raise ValueError(f"binomial {b.plus} - {b.minus} is not in the ideal")

    def restrict_columns(self, var_indices, labels=None) -> "SubSystem":
        return SubSystem(self, tuple(var_indices), labels)

    def column_sums_homogeneous(self) -> bool:
        m = len(self.g.edges)
        return all(len(c) == m for c in self.cols)


class SubSystem:
    """Column restriction of a ToricSystem (same rows, fewer variables)."""

    __slots__ = ("parent", "vars", "cols", "key_matrix", "key_reduced", "labels")

    def __init__(self, parent: ToricSystem, var_indices: tuple, labels=None):
        self.parent = parent
        self.vars = var_indices
        self.cols = tuple(parent.cols[v] for v in var_indices)
        self.key_matrix = np.ascontiguousarray(parent.key_matrix[:, list(var_indices)])
        self.key_reduced = parent.key_reduced
        self.labels = labels

    @property
    def num_vars(self):
        return len(self.vars)

    def image(self, mono) -> tuple:
        img = Counter()
        for v in mono:
            img.update(self.cols[v])
        return tuple(sorted(img.items()))

    def membership(self, binomial: Binomial) -> bool:
        return self.image(binomial.plus) == self.image(binomial.minus)

    def check_basis_members(self, basis: OrientedBasis):
        for b in basis:
            if not self.membership(b):
                raise ValueError(f"binomial {b.plus} - {b.minus} is not in the ideal")


def build_system(g: Graph, h: Graph, **caps) -> ToricSystem:
    return ToricSystem(g, h, enumerate_homs(g, h, **caps))


# ---------------------------------------------------------------------------
# fiber enumeration

def _monomials_with_images(system, degree: int, mono_cap: int):
    """(IDX, IMG) arrays for all degree-``degree`` monomials, IDX sorted so
    the last column is nondecreasing."""
    key = system.key_matrix
    n_vars = key.shape[1]
    if n_vars == 0:
        return np.zeros((0, degree), dtype=np.int32), np.zeros((0, key.shape[0]), dtype=np.int16)
    idx = np.arange(n_vars, dtype=np.int32).reshape(n_vars, 1)
    img = np.ascontiguousarray(key.T)
    for t in range(2, degree + 1):
        last = idx[:, -1]
        ends = np.searchsorted(last, np.arange(n_vars), side="right")
        total = int(ends.sum())
        if total > mono_cap:
            raise ResourceCapExceeded(
                f"{total} monomials of degree {t} exceed the cap {mono_cap}")
        new_idx = np.empty((total, t), dtype=np.int32)
        new_img = np.empty((total, key.shape[0]), dtype=np.int16)
        pos = 0
        for j in range(n_vars):
            e = int(ends[j])
            if e == 0:
                continue
            new_idx[pos:pos + e, :-1] = idx[:e]
            new_idx[pos:pos + e, -1] = j
            new_img[pos:pos + e] = img[:e] + key[:, j]
            pos += e
        idx, img = new_idx, new_img
    return idx, img


def iter_fibers(system, degree: int, *, min_size: int = 1,
                mono_cap: int = DEFAULT_MONO_CAP):
    """Yield (key_bytes, [monomial, ...]) for every fiber of the given
    degree, in a canonical deterministic order."""
    idx, img = _monomials_with_images(system, degree, mono_cap)
    if idx.shape[0] == 0:
        return
    a = np.ascontiguousarray(img)
    void = a.view(np.dtype((np.void, a.dtype.itemsize * a.shape[1]))).ravel()
    uniq, inverse, counts = np.unique(void, return_inverse=True, return_counts=True)
    order = np.argsort(inverse, kind="stable")
    start = 0
    for k in range(len(uniq)):
        c = int(counts[k])
        if c >= min_size:
            rows = order[start:start + c]
            yield uniq[k].tobytes(), [tuple(int(x) for x in idx[r]) for r in rows]
        start += c


def fiber_of(system, mono, *, mono_cap: int = DEFAULT_MONO_CAP):
    """All monomials sharing the image of ``mono`` (same degree)."""
    mono = tuple(sorted(mono))
    target = system.image(mono)
    for _, monos in iter_fibers(system, len(mono), mono_cap=mono_cap):
        if mono in monos:
            got = [m for m in monos if system.image(m) == target]
            return sorted(got)
    raise AssertionError("monomial missing from its own fiber enumeration")


# ---------------------------------------------------------------------------
# moves

class MoveIndex:
    """Lookup from a monomial side to the binomials it leads or trails."""

    __slots__ = ("undirected", "directed", "side_degrees", "lead_degrees")

    def __init__(self, basis=()):
        self.undirected = {}
        self.directed = {}
        self.side_degrees = set()
        self.lead_degrees = set()
        for b in basis:
            self.add(b)

    def add(self, b: Binomial):
        self.undirected.setdefault(b.plus, []).append(b.minus)
        self.undirected.setdefault(b.minus, []).append(b.plus)
        self.directed.setdefault(b.plus, []).append(b.minus)
        self.side_degrees.add(len(b.plus))
        self.side_degrees.add(len(b.minus))
        self.lead_degrees.add(len(b.plus))

    @staticmethod
    def _subtuples(mono, d):
        if d == len(mono):
            return (mono,)
        return set(combinations(mono, d))

    def neighbors(self, mono):
        """Monomials reachable by one move in either direction."""
        out = []
        for d in self.side_degrees:
            if d > len(mono):
                continue
            for sub in self._subtuples(mono, d):
                partners = self.undirected.get(sub)
                if not partners:
                    continue
                base = _multiset_sub(mono, sub)
                for q in partners:
                    out.append(tuple(sorted(base + q)))
        return out

    def directed_neighbors(self, mono):
        """Monomials reached by one oriented move lead -> trail."""
        out = []
        for d in self.lead_degrees:
            if d > len(mono):
                continue
            for sub in self._subtuples(mono, d):
                tails = self.directed.get(sub)
                if not tails:
                    continue
                base = _multiset_sub(mono, sub)
                for q in tails:
                    out.append(tuple(sorted(base + q)))
        return out


def _multiset_sub(mono, sub):
    out = list(mono)
    for x in sub:
        out.remove(x)
    return tuple(out)


def _components(monos, index: MoveIndex):
    pos = {m: i for i, m in enumerate(monos)}
    parent = list(range(len(monos)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, m in enumerate(monos):
        for nb in index.neighbors(m):
            j = pos.get(nb)
            if j is None:
                raise AssertionError("move left the fiber; non-member basis element?")
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    comps = {}
    for i in range(len(monos)):
        comps.setdefault(find(i), []).append(i)
    return list(comps.values()), pos


def _fiber_connected(monos, index: MoveIndex) -> bool:
    """Connectivity with an early exit once one component remains."""
    n = len(monos)
    if n <= 1:
        return True
    pos = {m: i for i, m in enumerate(monos)}
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    remaining = n
    for i, m in enumerate(monos):
        for nb in index.neighbors(m):
            j = pos.get(nb)
            if j is None:
                raise AssertionError("move left the fiber; non-member basis element?")
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
                remaining -= 1
                if remaining == 1:
                    return True
    return remaining == 1


# ---------------------------------------------------------------------------
# Markov bases

@dataclass(frozen=True)
class MarkovResult:
    basis: OrientedBasis
    cap: int
    additions_by_degree: dict = field(default_factory=dict)

    @property
    def width(self) -> int:
        return self.basis.degree

    @property
    def stable_at_cap(self) -> bool:
        """No new generators were needed in the last two layers.  Heuristic
        evidence of completeness; no terminating degree bound is certified."""
        return all(self.additions_by_degree.get(t, 0) == 0
                   for t in (self.cap - 1, self.cap))

    @property
    def certified_complete(self) -> bool:
        return False


def markov_basis(system, degree_cap: int, *,
                 mono_cap: int = DEFAULT_MONO_CAP, threads: int = 1) -> MarkovResult:
    """Layered fiber construction of a minimal-degree generating set.

    For each degree t = 2..cap the fibers of degree-t monomials are
    enumerated; whenever a fiber is disconnected under the moves collected
    so far, binomials joining the lexicographically smallest representative
    pairs are added.  Binomials are stored with common factors stripped, so
    duplicate columns surface as degree-1 generators.
    """
    if degree_cap < 2:
        raise ValueError("degree cap must be at least 2")
    index = MoveIndex()
    additions = []
    additions_by_degree = {}
    for t in range(2, degree_cap + 1):
        count_t = 0
        for _, monos in iter_fibers(system, t, min_size=2, mono_cap=mono_cap):
            monos = sorted(monos)
            while True:
                comps, pos = _components(monos, index)
                if len(comps) == 1:
                    break
                mins = sorted(min(monos[i] for i in comp) for comp in comps)
                m0 = mins[0]
                b = Binomial.make(m0, mins[1])
                index.add(b)
                additions.append(b)
                count_t += 1
        additions_by_degree[t] = count_t
    return MarkovResult(OrientedBasis.make(additions), degree_cap, additions_by_degree)


def markov_width(system, degree_cap: int, **kw) -> int:
    """Maximum degree in the minimal basis up to the cap; 0 for the trivial
    ideal.  A value equal to the cap may be a lower bound only."""
    return markov_basis(system, degree_cap, **kw).width


def verify_markov(system, basis: OrientedBasis, degree_cap: int, *,
                  mono_cap: int = DEFAULT_MONO_CAP, threads: int = 1) -> bool:
    """True when every fiber of degree <= cap is connected under the moves."""
    system.check_basis_members(basis)
    index = MoveIndex(basis)

    def check(fiber):
        _, monos = fiber
        return _fiber_connected(monos, index)

    for t in range(2, degree_cap + 1):
        fibers = iter_fibers(system, t, min_size=2, mono_cap=mono_cap)
        for ok in parallel_map(check, fibers, threads=threads):
            if not ok:
                return False
    return True


def verify_grobner(system, basis: OrientedBasis, degree_cap: int, *,
                   mono_cap: int = DEFAULT_MONO_CAP, threads: int = 1) -> bool:
    """Directed fiber-graph criterion: every fiber graph must be connected,
    acyclic, and have a unique sink."""
    system.check_basis_members(basis)
    index = MoveIndex(basis)

    def check(fiber):
        _, monos = fiber
        return _fiber_is_grobner(monos, index)

    # singleton fibers pass automatically: moves preserve the image, so no
    # edge can leave a fiber and a lone monomial is its own unique sink
    for t in range(2, degree_cap + 1):
        fibers = iter_fibers(system, t, min_size=2, mono_cap=mono_cap)
        for ok in parallel_map(check, fibers, threads=threads):
            if not ok:
                return False
    return True


def _fiber_is_grobner(monos, index: MoveIndex) -> bool:
    monos = sorted(monos)
    pos = {m: i for i, m in enumerate(monos)}
    n = len(monos)
    out_edges = [set() for _ in range(n)]
    for i, m in enumerate(monos):
        for nb in index.directed_neighbors(m):
            j = pos.get(nb)
            if j is None:
                raise AssertionError("move left the fiber; non-member basis element?")
            if j != i:
                out_edges[i].add(j)
    # connectivity (undirected)
    if n > 1:
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(n):
            for j in out_edges[i]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
        if len({find(i) for i in range(n)}) != 1:
            return False
    # unique sink
    sinks = [i for i in range(n) if not out_edges[i]]
    if len(sinks) != 1:
        return False
    # acyclicity (Kahn)
    indeg = [0] * n
    for i in range(n):
        for j in out_edges[i]:
            indeg[j] += 1
    stack = [i for i in range(n) if indeg[i] == 0]
    seen = 0
    while stack:
        i = stack.pop()
        seen += 1
        for j in out_edges[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                stack.append(j)
    return seen == n


@dataclass(frozen=True)
class FiberGraph:
    key: tuple
    monomials: tuple
    edges: tuple          # directed (i, j) pairs into ``monomials``


def fiber_graph(system, mono, basis: OrientedBasis, *,
                mono_cap: int = DEFAULT_MONO_CAP) -> FiberGraph:
    monos = fiber_of(system, mono, mono_cap=mono_cap)
    index = MoveIndex(basis)
    pos = {m: i for i, m in enumerate(monos)}
    edges = set()
    for i, m in enumerate(monos):
        for nb in index.directed_neighbors(m):
            j = pos[nb]
            if j != i:
                edges.add((i, j))
    return FiberGraph(system.image(mono), tuple(monos), tuple(sorted(edges)))


# ---------------------------------------------------------------------------
# basis restriction and witnesses

def restrict_basis(sys_big: ToricSystem, basis: OrientedBasis,
                   sys_small: ToricSystem) -> OrientedBasis:
    """Intersect a basis of I(G -> H2) with the subring of maps into
    H1 <= H2 (same vertex set); the result generates I(G -> H1)."""
    h1, h2 = sys_small.h, sys_big.h
    if h1.n != h2.n or not h1.edges <= h2.edges:
        raise ValueError("target of the small system must be a subgraph on the same vertices")
    if sys_small.g != sys_big.g:
        raise ValueError("both systems must share the source graph")
    var_map = {}
    for i, m in enumerate(sys_big.homs.maps):
        j = sys_small.homs.index.get(m)
        if j is not None:
            var_map[i] = j
    kept = []
    for b in basis:
        if all(v in var_map for v in b.plus + b.minus):
            kept.append(b.relabel(var_map))
    return OrientedBasis.make(kept)


@dataclass(frozen=True)
class NormalityWitness:
    normal: bool = False
    cohen_macaulay: bool = False
    koszul: bool = False

    def flags(self):
        out = []
        if self.normal:
            out.append("normal")
        if self.cohen_macaulay:
            out.append("cohen-macaulay")
        if self.koszul:
            out.append("koszul")
        return out


def normality_witness(basis: OrientedBasis, *, grobner_verified: bool) -> NormalityWitness:
    """Record the consequences of a verified square-free (and quadratic)
    Groebner basis.  Silent flags are not negatives."""
    if not grobner_verified:
        raise ValueError("witness requires a basis that passed the Groebner check")
    squarefree = basis.is_squarefree()
    quadratic = basis.degree <= 2
    return NormalityWitness(normal=squarefree,
                            cohen_macaulay=squarefree,
                            koszul=squarefree and quadratic)


# ---------------------------------------------------------------------------
# basis file format

def format_monomial(mono, system=None, *, maps=False) -> str:
    if maps and system is not None:
        return "*".join("(" + ",".join(map(str, system.homs.maps[v])) + ")" for v in mono)
    return "*".join(str(v) for v in mono)


def format_binomial(b: Binomial, system=None, *, maps=False) -> str:
    return (f"{format_monomial(b.plus, system, maps=maps)} - "
            f"{format_monomial(b.minus, system, maps=maps)}")


def parse_monomial(text: str, system) -> tuple:
    out = []
    for token in text.strip().split("*"):
        token = token.strip()
        if not token:
            continue
        if token.startswith("("):
            m = tuple(int(x) for x in token.strip("()").split(","))
            if m not in system.homs.index:
                raise ValueError(f"{token} is not a homomorphism of the system")
            out.append(system.homs.index[m])
        else:
            v = int(token)
            if not (0 <= v < system.num_vars):
                raise ValueError(f"variable {v} out of range")
            out.append(v)
    return tuple(sorted(out))


def parse_basis_text(text: str, system) -> OrientedBasis:
    """One binomial per line, ``<lead> - <trail>``, factors '*'-joined as
    variable indices or parenthesized map literals."""
    elems = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lead, sep, trail = line.partition(" - ")
        if not sep:
            raise ValueError(f"bad binomial line: {raw!r}")
        p, m = strip_common(parse_monomial(lead, system), parse_monomial(trail, system))
        if not p and not m:
            raise ValueError(f"zero binomial: {raw!r}")
        elems.append(Binomial(p, m))
    return OrientedBasis.make(elems)
