import itertools

import pytest
from hypothesis import given, settings, strategies as st

from polyrecon.errors import CapacityError, InputError
from polyrecon.graphs import (
    CANONICAL_MAX_VERTICES,
    Graph,
    are_isomorphic,
    canonical_form,
    graph_from_json,
    graph_to_json,
    induced_subgraph,
    is_k_regular_connected,
    relabel,
)

from conftest import complete_graph, cycle_graph, path_graph


def test_graph_rejects_bad_edges():
    with pytest.raises(InputError):
        Graph(3, frozenset({(0, 0)}))
    with pytest.raises(InputError):
        Graph(3, frozenset({(0, 3)}))
    with pytest.raises(InputError):
        Graph(3, [(0, 1), (1, 0)])


def test_induced_subgraph_examples():
    c4 = cycle_graph(4)
    sub, ids = induced_subgraph(c4, {0, 1, 2})
    assert ids == (0, 1, 2)
    assert sub == path_graph(3)
    sub, _ = induced_subgraph(c4, range(4))
    assert sub == c4
    sub, ids = induced_subgraph(c4, {0, 2})
    assert sub.vertex_count == 2 and not sub.edges and ids == (0, 2)
    with pytest.raises(InputError):
        induced_subgraph(c4, {0, 7})


def test_induced_subgraph_keeps_id_map():
    g = Graph(5, [(1, 3), (3, 4), (0, 1)])
    sub, ids = induced_subgraph(g, {4, 3, 1})
    assert ids == (1, 3, 4)
    assert {(ids[a], ids[b]) for a, b in sub.edges} == {(1, 3), (3, 4)}


def test_is_k_regular_connected():
    assert is_k_regular_connected(complete_graph(3), 2)
    assert not is_k_regular_connected(path_graph(3), 2)
    two_triangles = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not is_k_regular_connected(two_triangles, 2)
    assert is_k_regular_connected(Graph(1, []), 0)
    assert not is_k_regular_connected(Graph(0, []), 0)


def test_canonical_form_examples(p3, p4):
    c4 = cycle_graph(4)
    assert canonical_form(c4) == canonical_form(relabel(c4, [2, 0, 3, 1]))
    assert canonical_form(c4) != canonical_form(path_graph(4))
    assert canonical_form(p3.graph) == canonical_form(p4.graph)
    assert isinstance(canonical_form(c4), bytes)


def test_canonical_form_cap():
    n = CANONICAL_MAX_VERTICES + 1
    with pytest.raises(CapacityError):
        canonical_form(path_graph(n))


def test_canonical_form_respects_colours():
    g = path_graph(3)
    assert canonical_form(g, [0, 1, 0]) != canonical_form(g, [1, 0, 0])
    assert canonical_form(g, [1, 0, 0]) == canonical_form(g, [0, 0, 1])


def _all_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph(n, [p for i, p in enumerate(pairs) if bits >> i & 1])


def _brute_iso(g, h):
    return any(relabel(g, list(p)).edges == h.edges for p in itertools.permutations(range(g.vertex_count)))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_canonical_form_separates_all_small_graphs(n):
    # every graph on n vertices, bucketed by certificate; buckets must match
    # the isomorphism classes found by trying all permutations
    buckets = {}
    for g in _all_graphs(n):
        buckets.setdefault(canonical_form(g), []).append(g)
    reps = [b[0] for b in buckets.values()]
    for a, b in itertools.combinations(reps, 2):
        assert not _brute_iso(a, b)
    for bucket in buckets.values():
        for g in bucket[1:]:
            assert _brute_iso(bucket[0], g)
    expected_classes = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34}
    assert len(buckets) == expected_classes[n]


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=6, max_value=6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12),
                        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12))))
def test_canonical_form_on_six_vertices_matches_brute_force(data):
    n, e1, e2 = data
    g = Graph(n, {tuple(sorted(e)) for e in e1 if e[0] != e[1]})
    h = Graph(n, {tuple(sorted(e)) for e in e2 if e[0] != e[1]})
    assert (canonical_form(g) == canonical_form(h)) == _brute_iso(g, h)


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 9).flatmap(lambda n: st.tuples(
    st.just(n),
    st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] < e[1])),
    st.permutations(list(range(n))),
)))
def test_canonical_form_relabelling_invariance(data):
    n, edges, perm = data
    g = Graph(n, edges)
    h = relabel(g, perm)
    assert canonical_form(g) == canonical_form(h)
    assert are_isomorphic(g, h)
    assert sorted(g.degrees()) == sorted(h.degrees())


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(
    st.just(n),
    st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] < e[1])),
    st.integers(0, 4),
)))
def test_regularity_of_full_induced_subgraph(data):
    n, edges, k = data
    g = Graph(n, edges)
    sub, _ = induced_subgraph(g, range(n))
    assert is_k_regular_connected(sub, k) == is_k_regular_connected(g, k)


def test_graph_json_round_trip_is_bit_exact(p3):
    text = graph_to_json(p3.graph)
    assert graph_from_json(text) == p3.graph
    assert graph_to_json(graph_from_json(text)) == text
    assert text.startswith('{"vertices": 8, "edges": [[0, 1], [0, 3]')


def test_graph_json_errors():
    with pytest.raises(InputError):
        graph_from_json("{}")
    with pytest.raises(InputError):
        graph_from_json('{"vertices": 2, "edges": [[0, 1, 2]]}')
    with pytest.raises(InputError):
        graph_from_json("not json")


@pytest.mark.parametrize("g", [Graph(24, []), complete_graph(16), cycle_graph(30)], ids=["empty24", "K16", "C30"])
def test_canonical_form_fast_on_symmetric_graphs(g):
    import time

    t = time.perf_counter()
    cert = canonical_form(g)
    assert time.perf_counter() - t < 5.0
    perm = list(range(g.vertex_count))[::-1]
    assert canonical_form(relabel(g, perm)) == cert


def test_colours_out_of_range():
    with pytest.raises(InputError):
        canonical_form(path_graph(2), [0, 300])
