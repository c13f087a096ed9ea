import json
import math
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thrackle_lab.constructions import gen_gk, gen_hk
from thrackle_lab.graph import (
    AT_MOST_ONE_TRIANGLE,
    DISJOINT_SIX_CYCLES,
    NO_FOUR_CYCLE,
    Cycle,
    Graph,
    GraphFormatError,
    blocks,
    check_quasithrackle_axioms,
    check_six_cycle_conflicts,
    check_thrackle_axioms,
    cycles_of_length,
    enumerate_cycles_up_to,
    girth,
    is_bipartite,
    is_connected,
    parse_graph,
    parse_inline_edges,
)
from zoo import complete, cube, cycle, k33, path, two_triangles


@st.composite
def small_graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return Graph(n, tuple(chosen))


def brute_cycle_count(g: Graph, max_len: int) -> int:
    """Count cycles by testing every vertex subset for a Hamiltonian cycle of its induced subgraph."""
    total = 0
    for size in range(3, min(max_len, g.n) + 1):
        for subset in combinations(range(g.n), size):
            first, rest = subset[0], subset[1:]
            seen = set()
            for perm in _perms(rest):
                seq = (first,) + perm
                if all(g.has_edge(seq[i], seq[(i + 1) % size]) for i in range(size)):
                    key = frozenset(frozenset((seq[i], seq[(i + 1) % size])) for i in range(size))
                    seen.add(key)
            total += len(seen)
    return total


def _perms(items):
    from itertools import permutations

    return permutations(items)


def has_odd_cycle(g: Graph) -> bool:
    return any(c.length % 2 for c in enumerate_cycles_up_to(g, max(g.n, 3)))


# ---------------------------------------------------------------------------
# parsing


def test_parse_edge_list_triangle():
    g = parse_graph("0 1\n1 2\n2 0")
    assert (g.n, g.m) == (3, 3)
    assert g.edges == ((0, 1), (1, 2), (2, 0))


def test_parse_json_c4():
    g = parse_graph('{"n":4,"edges":[[0,1],[1,2],[2,3],[3,0]]}')
    assert (g.n, g.m) == (4, 4)
    assert is_bipartite(g)[0]


def test_parse_header_and_blank_lines():
    g = parse_graph("#n 5\n\n0 1\n\n1 2\n")
    assert (g.n, g.m) == (5, 2)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("0 0", "loop"),
        ("0 1\n1 0", "parallel"),
        ("0 1\n1 x", "line 2"),
        ("#n 2\n0 5", "range"),
        ('{"n": 2, "edges": [[0, 2]]}', "range"),
        ('{"n": 2, "edges": [[0, 1]', "JSON"),
    ],
)
def test_parse_errors_carry_location(text, fragment):
    with pytest.raises(GraphFormatError, match=fragment):
        parse_graph(text)


def test_inline_edges_and_round_trip():
    g = parse_inline_edges("0-1,1-2,2-0")
    assert g.m == 3
    again = parse_graph(json.dumps(g.to_json()))
    assert again.to_json() == g.to_json()
    assert all(u < v for u, v in g.to_json()["edges"])


# ---------------------------------------------------------------------------
# bipartiteness and girth


def test_bipartite_examples():
    assert is_bipartite(cycle(4)) == (True, None)
    ok, witness = is_bipartite(cycle(5))
    assert not ok and witness.length == 5
    ok, witness = is_bipartite(gen_gk(2))
    assert not ok and witness.length == 3


@pytest.mark.parametrize("g, expected", [(cycle(6), 6), (path(3), math.inf), (complete(4), 3), (k33(), 4), (cube(), 4)])
def test_girth(g, expected):
    assert girth(g) == expected


def test_girth_of_h1_is_five():
    # oracle: shortest length over the full cycle enumeration
    g = gen_hk(1)
    assert min(c.length for c in enumerate_cycles_up_to(g, g.n)) == 5
    assert girth(g) == 5


# ---------------------------------------------------------------------------
# cycles


def test_enumerate_examples():
    assert [c.length for c in enumerate_cycles_up_to(cycle(6), 6)] == [6]
    k4 = enumerate_cycles_up_to(complete(4), 4)
    assert sum(c.length == 3 for c in k4) == 4 and sum(c.length == 4 for c in k4) == 3
    assert enumerate_cycles_up_to(cycle(4), 3) == []
    with pytest.raises(ValueError):
        enumerate_cycles_up_to(cycle(4), 2)


def test_cycle_canonical_form():
    g = cycle(5)
    a = Cycle.from_vertices(g, [3, 4, 0, 1, 2])
    b = Cycle.from_vertices(g, [2, 1, 0, 4, 3])
    assert a == b and a.vertices == (0, 1, 2, 3, 4)
    with pytest.raises(ValueError):
        Cycle.from_vertices(g, [0, 2, 3])


@settings(max_examples=150, deadline=None)
@given(small_graphs(max_n=7), st.integers(3, 7))
def test_cycle_count_matches_subset_brute_force(g, max_len):
    cycles = enumerate_cycles_up_to(g, max_len)
    assert len(cycles) == brute_cycle_count(g, max_len)
    assert len(set(cycles)) == len(cycles)


@settings(max_examples=200, deadline=None)
@given(small_graphs())
def test_bipartite_matches_odd_cycle_search(g):
    ok, witness = is_bipartite(g)
    assert ok == (not has_odd_cycle(g))
    if witness is not None:
        assert witness.length % 2 == 1
        assert Cycle.from_vertices(g, witness.vertices) == witness


# ---------------------------------------------------------------------------
# blocks


def brute_cut_vertices(g: Graph) -> set[int]:
    base = nx.number_connected_components(g.to_networkx())
    cuts = set()
    for v in range(g.n):
        h = g.to_networkx()
        h.remove_node(v)
        if nx.number_connected_components(h) > base:
            cuts.add(v)
    return cuts


def test_blocks_examples():
    dec = blocks(gen_gk(2))
    assert len(dec.blocks) == 2 and dec.cut_vertices == (0,)
    assert all(len(b) == 3 for b in dec.blocks)
    dec = blocks(cycle(6))
    assert len(dec.blocks) == 1 and dec.cut_vertices == () and dec.is_biconnected
    dec = blocks(two_triangles())
    assert len(dec.blocks) == 2 and dec.cut_vertices == ()
    assert not blocks(path(2)).is_biconnected


@settings(max_examples=200, deadline=None)
@given(small_graphs())
def test_blocks_partition_edges(g):
    dec = blocks(g)
    flat = sorted(e for b in dec.blocks for e in b)
    assert flat == list(range(g.m))
    membership = [sum(v in bv for bv in dec.block_vertices) for v in range(g.n)]
    assert {v for v in range(g.n) if membership[v] >= 2} == set(dec.cut_vertices)
    assert set(dec.cut_vertices) == brute_cut_vertices(g)


# ---------------------------------------------------------------------------
# axioms


def _report(reports, axiom):
    return next(r for r in reports if r.axiom == axiom)


def test_thrackle_axioms_examples():
    c4 = _report(check_thrackle_axioms(cycle(4)), NO_FOUR_CYCLE)
    assert not c4.holds and c4.witness[0].length == 4
    g2 = _report(check_thrackle_axioms(gen_gk(2)), AT_MOST_ONE_TRIANGLE)
    assert not g2.holds and [c.length for c in g2.witness] == [3, 3]
    assert all(r.holds for r in check_thrackle_axioms(gen_hk(1)))


def test_witnesses_are_genuine():
    g = cube()
    reports = check_thrackle_axioms(g)
    six = _report(reports, DISJOINT_SIX_CYCLES)
    assert not six.holds
    a, b = six.witness
    assert a != b and set(a.vertices) & set(b.vertices)
    for r in reports:
        for c in r.witness or ():
            assert Cycle.from_vertices(g, c.vertices) == c


def test_six_cycle_conflicts():
    for k in (1, 2, 3):
        assert check_six_cycle_conflicts(gen_hk(k)) == []
    assert check_six_cycle_conflicts(cycle(6)) == []
    q3 = cube()
    sixes = cycles_of_length(q3, 6)
    conflicts = check_six_cycle_conflicts(q3)
    # every pair of distinct 6-cycles of the cube shares a vertex
    assert len(conflicts) == len(sixes) * (len(sixes) - 1) // 2 > 0


def test_six_cycle_conflict_by_joining_edge():
    # two vertex-disjoint hexagons joined by one edge
    edges = [(i, (i + 1) % 6) for i in range(6)] + [(6 + i, 6 + (i + 1) % 6) for i in range(6)] + [(0, 6)]
    g = Graph.from_edges(edges)
    assert _report(check_thrackle_axioms(g), DISJOINT_SIX_CYCLES).holds
    assert len(check_six_cycle_conflicts(g)) == 1


def test_quasithrackle_axiom():
    assert not check_quasithrackle_axioms(cycle(4)).holds
    assert check_quasithrackle_axioms(gen_gk(3)).holds
    k4 = check_quasithrackle_axioms(complete(4))
    assert not k4.holds and k4.witness[0].length == 4


@settings(max_examples=150, deadline=None)
@given(small_graphs(), st.data())
def test_thrackle_axioms_monotone_under_deletion(g, data):
    if not all(r.holds for r in check_thrackle_axioms(g)) or g.m == 0:
        return
    drop = data.draw(st.sets(st.integers(0, g.m - 1)))
    assert all(r.holds for r in check_thrackle_axioms(g.without_edges(drop)))


def test_connectivity():
    assert is_connected(cycle(5))
    assert not is_connected(two_triangles())
    assert is_connected(Graph(1, ()))
