import itertools

import pytest
from hypothesis import given, settings, strategies as st

from polyrecon import orientations as ori
from polyrecon.errors import CapacityError, DegeneracyError, InputError
from polyrecon.face_lattice import total_faces
from polyrecon.fixtures import solid
from polyrecon.graphs import Graph
from polyrecon.orientations import MinimizerProfile, Orientation

from conftest import (
    SMALL_SOLIDS,
    brute_indegrees,
    brute_initial_krics,
    brute_orientations,
    complete_graph,
    cycle_graph,
    path_graph,
    wheel_graph,
)


def _brute_min(g, sink=None):
    vals = [sum(2 ** d for d in brute_indegrees(g, h)) for h in brute_orientations(g, sink)]
    best = min(vals)
    return best, vals.count(best)


def test_f_O_examples():
    p = path_graph(3)
    assert ori.f_O(Orientation(p, {(0, 1): 1, (1, 2): 2})) == 1 + 2 + 2
    assert ori.f_O(Orientation(p, {(0, 1): 1, (1, 2): 1})) == 1 + 4 + 1
    tri = complete_graph(3)
    o = Orientation(tri, [1, 2, 2])  # (0,1)->1, (0,2)->2, (1,2)->2
    assert o.indegree == (0, 1, 2)
    assert ori.f_O(o) == 7
    assert o.sinks() == [2] and o.sources() == [0]
    assert ori.f_O(o.reversed()) == 7
    assert o.reversed().sinks() == [0]


def test_orientation_rejects_cycles_and_bad_heads():
    tri = complete_graph(3)
    with pytest.raises(InputError):
        Orientation(tri, {(0, 1): 1, (1, 2): 2, (0, 2): 0})
    with pytest.raises(InputError):
        Orientation(tri, {(0, 1): 2, (1, 2): 2, (0, 2): 2})
    with pytest.raises(InputError):
        Orientation(tri, {(0, 1): 1})


@pytest.mark.parametrize("g,count", [
    (path_graph(2), 2),
    (complete_graph(3), 6),
    (cycle_graph(4), 14),
    (complete_graph(4), 24),
    (cycle_graph(5), 30),
])
def test_enumeration_counts(g, count):
    found = list(ori.enumerate_acyclic(g))
    assert len(found) == count
    assert len(set(found)) == count
    assert count == sum(1 for _ in brute_orientations(g))


@pytest.mark.parametrize("name", ["tetrahedron", "square_pyramid", "triangular_prism"])
def test_enumeration_matches_brute_force(name):
    g = solid(name).graph
    mine = {tuple(sorted(o.direction.items())) for o in ori.enumerate_acyclic(g)}
    brute = {tuple(sorted(h.items())) for h in brute_orientations(g)}
    assert mine == brute


def test_enumeration_respects_forced_edges():
    g = cycle_graph(4)
    forced = ori.sink_constraints(g, 0)
    found = list(ori.enumerate_acyclic(g, forced))
    assert len(found) == sum(1 for _ in brute_orientations(g, sink=0))
    assert all(0 in o.sinks() for o in found)


@pytest.mark.parametrize("g,expected", [
    (complete_graph(4), (15, 24)),
    (cycle_graph(4), (9, 12)),
    (wheel_graph(4), (19, 40)),
])
def test_min_f_O_frozen(g, expected):
    value, witnesses = ori.min_f_O(g)
    assert (value, len(witnesses)) == expected
    assert _brute_min(g) == expected


def test_min_with_sink_frozen():
    value, witnesses = ori.min_f_O_with_sink(cycle_graph(4), 0)
    assert (value, len(witnesses)) == (9, 3)
    assert _brute_min(cycle_graph(4), sink=0) == (9, 3)


@pytest.mark.parametrize("name", SMALL_SOLIDS[:3] + ["square_pyramid"])
def test_min_f_O_matches_brute_force(name):
    g = solid(name).graph
    value, witnesses = ori.min_f_O(g)
    assert (value, len(witnesses)) == _brute_min(g)
    for y in (0, g.vertex_count - 1):
        v2, w2 = ori.min_f_O_with_sink(g, y)
        assert (v2, len(w2)) == _brute_min(g, sink=y)
        assert MinimizerProfile(g, y).value == v2


def test_enumeration_cap():
    big = complete_graph(8)  # 28 edges is allowed; 36 is not
    with pytest.raises(CapacityError):
        ori.min_f_O(complete_graph(9))
    assert len(big.edges) == ori.MAX_ENUMERATION_EDGES


def test_bad_sink():
    with pytest.raises(InputError):
        ori.min_f_O_with_sink(cycle_graph(4), 9)
    with pytest.raises(InputError):
        MinimizerProfile(cycle_graph(4), -1)


def test_is_initial():
    g = cycle_graph(4)
    o = Orientation(g, {(0, 1): 1, (1, 2): 2, (2, 3): 2, (0, 3): 3})
    assert ori.is_initial(o, [])
    assert ori.is_initial(o, [0])
    assert ori.is_initial(o, [0, 1])
    assert not ori.is_initial(o, [1])
    assert ori.is_initial(o, range(4))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["tetrahedron", "square_pyramid", "triangular_prism", "cube"]),
       st.randoms(use_true_random=False), st.integers(1, 2))
def test_initial_krics_match_brute_force(name, rnd, k):
    g = solid(name).graph
    # random acyclic orientation from a random linear order
    order = list(range(g.vertex_count))
    rnd.shuffle(order)
    rank = {v: i for i, v in enumerate(order)}
    heads = {(a, b): (b if rank[a] < rank[b] else a) for a, b in g.edges}
    o = Orientation(g, heads)
    assert ori.initial_krics(o, k) == brute_initial_krics(g, heads, k)


@pytest.mark.parametrize("name", SMALL_SOLIDS)
def test_profile_equals_union_over_witnesses(name):
    # the two routes to the minimiser class must agree
    g = solid(name).graph
    value, witnesses = ori.min_f_O(g)
    prof = MinimizerProfile(g)
    assert prof.value == value
    d = min(g.degrees())
    union = set()
    for o in witnesses:
        for k in range(d + 1):
            union.update((s, k) for s in ori.initial_krics(o, k))
    assert set(prof.initial_krics()) == union


@pytest.mark.parametrize("name", ["hexagonal_roof", "split_bipyramid_dual"])
def test_profile_with_sink_equals_union_over_witnesses(name):
    g = solid(name).graph
    for y in (0, 1):
        value, witnesses = ori.min_f_O_with_sink(g, y)
        prof = MinimizerProfile(g, y)
        assert prof.value == value
        union = set()
        for o in witnesses:
            union.update(s for s in ori.initial_krics(o, 2) if y not in s)
        assert {s for s, _ in prof.initial_krics(2)} == union


def test_profile_initial_sets_agree_with_witnesses(pyramid):
    g = pyramid.graph
    _, witnesses = ori.min_f_O(g)
    prof = MinimizerProfile(g)
    for r in range(g.vertex_count + 1):
        for s in itertools.combinations(range(g.vertex_count), r):
            expected = any(ori.is_initial(o, s) for o in witnesses)
            assert prof.is_minimizer_initial(s) == expected


def test_p8_sink_minimum(p8):
    # 47 faces, deg(y) = 6, 24 faces through y: 47 + 2**6 - 24 = 87
    g = p8.graph
    for y in (0, 1):
        assert MinimizerProfile(g, y).value == 87
    value, witnesses = ori.min_f_O_with_sink(g, 0)
    assert (value, len(witnesses)) == (87, 70)


def test_profile_cap():
    with pytest.raises(CapacityError):
        MinimizerProfile(Graph(ori.MAX_PROFILE_VERTICES + 1, []))
    # the sink does not count toward the cap
    prof = MinimizerProfile(path_graph(ori.MAX_PROFILE_VERTICES + 1), 0)
    assert prof.value > 0


@pytest.mark.parametrize("name", SMALL_SOLIDS)
def test_lower_bound_and_equality_conditions(name):
    L = solid(name)
    g = L.graph
    bound = ori.fo_lower_bound(L)
    assert bound == total_faces(L)
    for o in ori.enumerate_acyclic(g):
        val = ori.f_O(o)
        assert val >= bound
        assert (val == bound) == ori.good_conditions(L, o).all


def test_simple_polytopes_attain_the_bound():
    for name in ["tetrahedron", "cube", "triangular_prism", "pentagonal_prism"]:
        L = solid(name)
        assert MinimizerProfile(L.graph).value == total_faces(L)
    # the square pyramid is not simple at the apex, but the apex can be the
    # source, and only sinks need to be simple
    L = solid("square_pyramid")
    assert MinimizerProfile(L.graph).value == 19 == total_faces(L)


def test_good_conditions_segment():
    from polyrecon.face_lattice import lattice_from_facets

    seg = lattice_from_facets(2, [[0], [1]])
    o = Orientation(seg.graph, [1])
    gc = ori.good_conditions(seg, o)
    assert gc.all and ori.f_O(o) == total_faces(seg) == 3


def test_good_conditions_failures(cube):
    # two sinks on a square face
    g = cube.graph
    bad = Orientation(g, {e: (e[1] if bin(e[1]).count("1") % 2 else e[0]) for e in g.edges})
    gc = ori.good_conditions(cube, bad)
    assert not gc.unique_sink
    assert not gc.all
    with pytest.raises(InputError):
        ori.good_conditions(cube, Orientation(cycle_graph(4), [1, 3, 2, 3]))


def test_linear_functional_square():
    sq = cycle_graph(4)  # 0-1-2-3-0
    coords = [(0, 0), (1, 0), (1, 1), (0, 1)]
    o = ori.linear_functional_orientation(sq, coords, (1, 2))
    assert o.sinks() == [2] and o.sources() == [0]
    assert ori.f_O(o) == 9


def test_linear_functional_cube(cube):
    coords = [((v >> 0) & 1, (v >> 1) & 1, (v >> 2) & 1) for v in range(8)]
    o = ori.linear_functional_orientation(cube.graph, coords, (1, 2, 4))
    assert o.indegree == tuple(bin(v).count("1") for v in range(8))
    assert ori.f_O(o) == 27 == total_faces(cube)
    assert ori.good_conditions(cube, o).all


def test_linear_functional_degenerate(cube):
    coords = [((v >> 0) & 1, (v >> 1) & 1, (v >> 2) & 1) for v in range(8)]
    with pytest.raises(DegeneracyError):
        ori.linear_functional_orientation(cube.graph, coords, (1, 1, 1))
    with pytest.raises(InputError):
        ori.linear_functional_orientation(cube.graph, coords[:3], (1, 2, 4))


def test_orientation_json_round_trip(cube):
    _, witnesses = ori.min_f_O(cube.graph)
    o = witnesses[0]
    text = ori.orientation_to_json(o)
    assert ori.orientation_from_json(text, cube.graph) == o
    assert ori.orientation_from_json(text) == o
    assert ori.orientation_to_json(ori.orientation_from_json(text)) == text
    with pytest.raises(InputError):
        ori.orientation_from_json('{"edges": [[0, 1, "xx"]]}')
