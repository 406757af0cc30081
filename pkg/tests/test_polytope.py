import random

import pytest

from homtoric import graph as G
from homtoric.graph import Graph
from homtoric.polytope import (PolytopeCapExceeded, build_polytope,
                               face_check, facets, simplicity,
                               stable_set_iso, stable_set_polytope)

from helpers import naive_independent_sets


def square_sets(maps):
    return [frozenset(v for v in range(4) if m[v] == 0) for m in maps]


# the eight facet incidence sets of the square-into-spoon polytope,
# written as independent sets in 1-based vertex names
SQUARE_FACETS = [
    {"1", "2", "13", "24"},
    {"2", "3", "13", "24"},
    {"1", "4", "13", "24"},
    {"3", "4", "13", "24"},
    {"", "1", "2", "3", "13"},
    {"", "1", "3", "4", "13"},
    {"", "1", "2", "4", "24"},
    {"", "2", "3", "4", "24"},
]


def test_square_polytope_shape():
    poly = build_polytope(G.cycle(4), G.spoon())
    assert poly.num_vertices == 7
    assert poly.ambient_dim == 12
    assert all(set(v) <= {0, 1} for v in poly.vertices)


def test_square_polytope_facets_match_table():
    poly = build_polytope(G.cycle(4), G.spoon())
    desc = facets(poly)
    assert desc.dim == 4
    assert len(desc.facets) == 8
    sets = square_sets(poly.labels)

    def name(s):
        return "".join(str(v + 1) for v in sorted(s))

    got = {frozenset(name(sets[i]) for i in f.incident) for f in desc.facets}
    expected = {frozenset(f) for f in SQUARE_FACETS}
    assert got == expected


def test_square_polytope_simplicity():
    poly = build_polytope(G.cycle(4), G.spoon())
    desc = facets(poly)
    rep = simplicity(poly, desc)
    assert not rep.simple
    sets = square_sets(poly.labels)
    counts = {frozenset(s): c for s, c in zip(sets, rep.counts)}
    assert counts[frozenset()] == 4
    for v in range(4):
        assert counts[frozenset({v})] == 5  # 3 deletion facets + 2 edge facets
    assert counts[frozenset({0, 2})] == 6
    assert counts[frozenset({1, 3})] == 6


def test_triangle_into_square_empty():
    poly = build_polytope(G.cycle(3), G.cycle(4))
    assert poly.num_vertices == 0
    assert facets(poly).dim == -1


def test_segment():
    poly = build_polytope(G.complete(2), G.complete(2))
    desc = facets(poly)
    assert poly.num_vertices == 2
    assert desc.dim == 1
    assert sorted(f.incident for f in desc.facets) == [(0,), (1,)]
    rep = simplicity(poly, desc)
    assert rep.simple
    assert rep.counts == (1, 1)


def test_point_polytope():
    # a single homomorphism gives a point with no facets
    one = build_polytope(G.spoon(), G.complete_looped(1))
    assert one.num_vertices == 1
    assert facets(one).dim == 0
    assert facets(one).facets == ()


def test_stable_set_iso_c4_matches_reduced_rows():
    iso = stable_set_iso(G.cycle(4))
    for pt, s in zip(iso.points, iso.sets):
        assert pt == tuple(1 if v in s else 0 for v in range(4))
    assert len(set(iso.points)) == 7


def test_stable_set_iso_injective_random():
    rng = random.Random(31)
    for _ in range(10):
        n = rng.randint(3, 7)
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                      if rng.random() < 0.5])
        if not all(g.degree_on_edge(v) for v in range(n)):
            continue
        iso = stable_set_iso(g)
        assert len(set(iso.points)) == len(iso.points)
        assert sorted(iso.sets, key=lambda s: (len(s), sorted(s))) == \
            naive_independent_sets(g)


def test_stable_set_iso_preserves_facet_structure():
    # same facet count and incidence multiset on both sides of the collapse
    for g in (G.cycle(4), G.cycle(5), G.complete(3)):
        big = build_polytope(g, G.spoon())
        small = stable_set_polytope(g)
        fb, fs = facets(big), facets(small)
        assert fb.dim == fs.dim
        assert len(fb.facets) == len(fs.facets)
        inc_b = sorted(tuple(sorted(f.incident)) for f in fb.facets)
        inc_s = sorted(tuple(sorted(f.incident)) for f in fs.facets)
        assert inc_b == inc_s


def test_stable_set_iso_preconditions():
    with pytest.raises(ValueError):
        stable_set_iso(G.spoon())
    with pytest.raises(ValueError):
        stable_set_iso(Graph(3, [(0, 1)]))


def test_simplex_from_complete_graph():
    poly = stable_set_polytope(G.complete(3))
    desc = facets(poly)
    assert poly.num_vertices == 4
    assert desc.dim == 3
    assert len(desc.facets) == 4
    assert simplicity(poly, desc).simple


def test_c5_stable_set_polytope_eleven_facets():
    poly = stable_set_polytope(G.cycle(5))
    desc = facets(poly)
    assert len(desc.facets) == 11
    # 5 nonnegativity + 5 edge + 1 odd-hole inequality
    by_kind = {"nonneg": 0, "edge": 0, "hole": 0}
    for f in desc.facets:
        n = f.normal
        pos = [i for i, x in enumerate(n) if x != 0]
        if len(pos) == 1 and n[pos[0]] == -1 and f.offset == 0:
            by_kind["nonneg"] += 1
        elif sorted(n) == [0, 0, 0, 1, 1] and f.offset == 1:
            u, v = [i for i, x in enumerate(n) if x == 1]
            assert G.cycle(5).adjacent(u, v)
            by_kind["edge"] += 1
        elif n == (1, 1, 1, 1, 1) and f.offset == 2:
            by_kind["hole"] += 1
    assert by_kind == {"nonneg": 5, "edge": 5, "hole": 1}


def test_vertex_cap():
    poly = stable_set_polytope(G.cycle(5))
    with pytest.raises(PolytopeCapExceeded):
        facets(poly, vertex_cap=5)


def test_face_check_loop_deletion():
    cert = face_check(G.cycle(4), G.complete_looped(2), G.spoon())
    assert not cert.improper
    assert cert.deleted_edges == ((0, 0),)
    # all seven spoon maps are on the face
    assert len(cert.face_vertices) == 7


def test_face_check_vertex_deletion():
    # dropping a looped vertex from the two-vertex looped target
    h2 = G.complete_looped(2)
    h1 = G.complete_looped(1)
    cert = face_check(G.path(3), h2, h1)
    assert cert.deleted_vertices == (1,)
    assert len(cert.face_vertices) == 1  # only the constant map survives


def test_face_check_improper():
    cert = face_check(G.cycle(4), G.spoon(), G.spoon())
    assert cert.improper
    assert len(cert.face_vertices) == 7


def test_face_check_validates_subgraph():
    with pytest.raises(ValueError):
        face_check(G.cycle(4), G.spoon(), G.complete(3))
