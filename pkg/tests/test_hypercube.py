from itertools import combinations

import pytest

from rainbowcube import (
    ColoredCubeGraph,
    VirtualCayleyCube,
    candidate_edges,
    cayley_coloring,
    edge_coordinate,
    format_graph,
    min_degree,
    parse_graph,
    validate,
)
from rainbowcube.errors import (
    DifferingBitCount,
    EmptyGraph,
    FormatError,
    LimitExceeded,
    VertexNotInGraph,
)
from rainbowcube.gen import subgraph_min_degree
from rainbowcube.prng import SplitMix64


def bits(s: str) -> int:
    return int(s, 2)


class TestEdgeCoordinate:
    def test_low_bit(self):
        assert edge_coordinate(bits("010"), bits("011")) == 0

    def test_high_bit(self):
        assert edge_coordinate(bits("000"), bits("100")) == 2

    def test_two_bits_differ(self):
        with pytest.raises(DifferingBitCount):
            edge_coordinate(bits("010"), bits("001"))

    def test_equal_vertices(self):
        with pytest.raises(DifferingBitCount):
            edge_coordinate(5, 5)


class TestCayleyColoring:
    def test_single_dimension(self):
        g = cayley_coloring(1)
        assert g.n_vertices() == 2
        assert list(g.edges()) == [(0, 1, 0)]

    def test_q3_counts(self):
        g = cayley_coloring(3)
        assert g.n_vertices() == 8
        assert g.n_edges() == 12
        by_color = {}
        for u, v, c in g.edges():
            by_color.setdefault(c, []).append((u, v))
        assert sorted(by_color) == [0, 1, 2]
        for c, cls in by_color.items():
            assert len(cls) == 4
            touched = [x for e in cls for x in e]
            assert len(set(touched)) == len(touched)  # perfect matching

    def test_color_equals_coordinate(self):
        g = cayley_coloring(4)
        for u, v, c in g.edges():
            assert c == edge_coordinate(u, v)

    def test_no_rainbow_4_cycle_in_q3(self):
        # brute force over all 4-vertex cycles
        g = cayley_coloring(3)
        verts = sorted(g.vertices)
        for quad in combinations(verts, 4):
            for a, b, c, d in [(0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3)]:
                ring = [quad[a], quad[b], quad[c], quad[d]]
                pairs = list(zip(ring, ring[1:] + ring[:1]))
                if not all(g.has_edge(u, v) for u, v in pairs):
                    continue
                colors = [g.edge_color(u, v) for u, v in pairs]
                assert len(set(colors)) < 4

    def test_materialization_guard(self):
        with pytest.raises(LimitExceeded):
            cayley_coloring(17)


class TestValidate:
    def test_cayley_passes(self):
        assert validate(cayley_coloring(3)).ok

    def test_virtual_passes(self):
        assert validate(VirtualCayleyCube(40)).ok

    def test_improper_coloring_reported(self):
        g = ColoredCubeGraph(2, [(0, 1, 0), (0, 2, 0)])
        report = validate(g)
        assert not report.ok
        failure = report.first_failure()
        assert failure.name == "proper-coloring"
        assert "00" in failure.witness

    def test_bad_edge_reported(self):
        g = ColoredCubeGraph(2, [(bits("00"), bits("11"), 0)], unchecked=True)
        report = validate(g)
        assert not report.ok
        assert report.first_failure().name == "edge-coordinate"

    def test_checked_constructor_rejects_bad_edge(self):
        with pytest.raises(ValueError):
            ColoredCubeGraph(2, [(0, 3, 0)])


class TestMinDegree:
    def test_cayley_regular(self):
        assert min_degree(cayley_coloring(4)).min_degree == 4

    def test_missing_edge(self):
        g3 = cayley_coloring(3)
        edges = [(u, v, c) for u, v, c in g3.edges()][1:]
        g = ColoredCubeGraph(3, edges, vertices=g3.vertices)
        assert min_degree(g).min_degree == 2

    def test_isolated_vertex(self):
        g = ColoredCubeGraph(3, [], vertices=[0])
        assert min_degree(g).min_degree == 0

    def test_empty(self):
        with pytest.raises(EmptyGraph):
            min_degree(ColoredCubeGraph(3))

    def test_degree_map(self):
        summary = min_degree(cayley_coloring(2))
        assert summary.degrees == {0: 2, 1: 2, 2: 2, 3: 2}


class TestCandidateEdges:
    def test_no_bans(self):
        g = cayley_coloring(3)
        assert len(candidate_edges(g, 0)) == 3

    def test_color_bans(self):
        g = cayley_coloring(3)
        out = candidate_edges(g, 0, {0, 1}, ())
        assert len(out) == 1
        assert out[0][0] == 2  # coordinate 2

    def test_everything_banned(self):
        g = cayley_coloring(3)
        assert candidate_edges(g, 0, {0}, {1, 2}) == []

    def test_unknown_vertex(self):
        with pytest.raises(VertexNotInGraph):
            candidate_edges(cayley_coloring(2), 9)

    def test_cayley_count_formula(self):
        # in the coordinate coloring, bans remove |union of named classes| edges
        g = cayley_coloring(4)
        rng = SplitMix64(7)
        for _ in range(100):
            x = rng.randrange(16)
            fc = {rng.randrange(6) for _ in range(rng.randrange(4))}
            fx = {rng.randrange(6) for _ in range(rng.randrange(4))}
            named = {c for c in fc | fx if c < 4}
            assert len(candidate_edges(g, x, fc, fx)) == 4 - len(named)

    def test_counting_lower_bound(self):
        # with r incident edges having distinct colors in fc and distinct
        # coordinates in fx, at least deg(x) - |fc| - |fx| + r survive
        for seed in range(40):
            rng = SplitMix64(seed)
            g = subgraph_min_degree(4, 1 + rng.randrange(4), rng.next_u64())
            x = rng.randrange(16)
            incident = g.incident(x)
            if not incident:
                continue
            r = rng.randrange(len(incident) + 1)
            witnesses = list(incident)
            rng.shuffle(witnesses)
            witnesses = witnesses[:r]
            fc = {c for _, _, c in witnesses}
            fx = {q for q, _, _ in witnesses}
            for _ in range(rng.randrange(3)):
                fc.add(rng.randrange(8))
                fx.add(rng.randrange(8))
            got = len(candidate_edges(g, x, fc, fx))
            assert got >= g.degree(x) - len(fc) - len(fx) + r


class TestEdgeFlipInvariant:
    def test_flipping_the_coordinate_crosses_the_edge(self):
        for seed in range(5):
            g = subgraph_min_degree(4, 2, seed)
            assert validate(g).ok
            for u, v, _ in g.edges():
                assert u ^ (1 << edge_coordinate(u, v)) == v


class TestViews:
    def test_restrict_filters(self):
        g = cayley_coloring(3)
        view = g.restrict({0}, {1})
        assert view.degree(0) == 1
        assert view.delta() == 1
        assert not view.has_edge(0, 1)
        assert view.has_edge(0, 4)

    def test_restrict_compose(self):
        g = cayley_coloring(3)
        view = g.restrict({0}).restrict((), {1})
        assert view.banned_colors == frozenset({0})
        assert view.banned_coords == frozenset({1})
        assert view.base is g

    def test_empty_restrict_is_identity(self):
        g = cayley_coloring(3)
        assert g.restrict() is g

    def test_virtual_view_delta(self):
        g = VirtualCayleyCube(50)
        assert g.delta() == 50
        view = g.restrict({1, 2, 99}, {2, 3})
        assert view.delta() == 50 - 3  # classes 1, 2, 3; 99 is out of range


class TestVirtualCayley:
    def test_counts(self):
        g = VirtualCayleyCube(30)
        assert g.n_vertices() == 1 << 30
        assert g.degree(12345) == 30

    def test_incident_matches_materialized(self):
        big, small = VirtualCayleyCube(3), cayley_coloring(3)
        for x in range(8):
            assert big.incident(x) == small.incident(x)


class TestGraphFormat:
    def test_round_trip(self):
        g = subgraph_min_degree(3, 2, 5)
        again = parse_graph(format_graph(g))
        assert again.dimension == g.dimension
        assert list(again.edges()) == list(g.edges())
        assert again.vertices == g.vertices

    def test_isolated_vertex_round_trip(self):
        g = ColoredCubeGraph(2, [(0, 1, 7)], vertices=[3])
        again = parse_graph(format_graph(g))
        assert again.vertices == {0, 1, 3}

    def test_comments_and_blanks(self):
        g = parse_graph("# a host\ncube 2\n\nedge 00 01 4  # first\n")
        assert list(g.edges()) == [(0, 1, 4)]

    def test_vertices_implied_by_edges(self):
        g = parse_graph("cube 2\nedge 00 01 0\n")
        assert g.vertices == {0, 1}

    def test_strict_vertices(self):
        text = "cube 2\nvertex 00\nedge 00 01 0\n"
        with pytest.raises(FormatError):
            parse_graph(text, strict_vertices=True)
        ok = "cube 2\nvertex 00\nvertex 01\nedge 00 01 0\n"
        assert parse_graph(ok, strict_vertices=True).n_edges() == 1

    def test_rejects_malformed(self):
        for text in [
            "edge 00 01 0\n",          # no header
            "cube 0\n",                # bad dimension
            "cube 2\nedge 00 11 0\n",  # two bits differ
            "cube 2\nedge 00 01 -1\n", # negative color
            "cube 2\nedge 0 1 0\n",    # wrong width
            "cube 2\nbogus\n",
        ]:
            with pytest.raises(FormatError):
                parse_graph(text)
