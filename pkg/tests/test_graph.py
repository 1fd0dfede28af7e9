import json
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qdnet.graph import (GraphFormatError, GraphWarning, WeightedGraph, canonicalize, degree,
                         edge_count, export_dot, output_subgraph, parse_graph, random_graph,
                         serialize_graph, strip_input_edges)
from qdnet.statevec import cluster_oracle, max_deviation


def doc(**kw):
    base = {"d": 2, "vertices": 2, "edges": [[0, 1, 1]], "inputs": []}
    base.update(kw)
    return json.dumps(base)


def test_parse_minimal():
    g = parse_graph(doc())
    assert g.v == 2 and g.d == 2 and g.edges() == [(0, 1, 1)] and g.inputs == ()


def test_parse_accepts_bytes():
    assert parse_graph(doc().encode()) == parse_graph(doc())


def test_symmetric_duplicate_accepted():
    g = parse_graph(doc(vertices=3, edges=[[0, 1, 1], [1, 0, 1]]))
    assert g.edges() == [(0, 1, 1)]


@pytest.mark.parametrize("kw, message", [
    ({"edges": [[0, 0, 1]]}, "self-loop"),
    ({"edges": [[0, 1, 1], [1, 0, 2]], "d": 3}, "conflicting"),
    ({"inputs": [5]}, "out of range"),
    ({"inputs": [0, 0]}, "duplicate"),
    ({"d": 1}, "d must be"),
    ({"edges": [[0, 2, 1]]}, "missing vertex"),
    ({"extra": 1}, "unknown keys"),
    ({"edges": [[0, 1]]}, "triple"),
    ({"d": 2.5}, "integer"),
])
def test_parse_errors(kw, message):
    with pytest.raises(GraphFormatError, match=message):
        parse_graph(doc(**kw))


def test_parse_syntax_error():
    with pytest.raises(GraphFormatError, match="JSON"):
        parse_graph("{not json")


def test_canonicalize_reduces_weights():
    g = canonicalize(WeightedGraph.from_edges(2, 2, [(0, 1, 3)]))
    assert g[0, 1] == 1
    g = canonicalize(WeightedGraph.from_edges(3, 2, [(0, 1, -1)]))
    assert g[0, 1] == 2


def test_canonicalize_drops_vanishing_edge():
    with pytest.warns(GraphWarning, match="vanishes"):
        g = canonicalize(WeightedGraph.from_edges(2, 2, [(0, 1, 2)]))
    assert g.edges() == [] and g.notes


def test_canonicalize_preserves_cluster_state(rng):
    for d in (2, 3, 5):
        for _ in range(10):
            w = rng.integers(-7, 8, size=(4, 4))
            w = np.triu(w, 1)
            raw = WeightedGraph(d, w + w.T)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", GraphWarning)
                canon = canonicalize(raw)
            assert canon.is_canonical()
            assert max_deviation(cluster_oracle(raw), cluster_oracle(canon)) < 1e-10


def test_strip_input_edges():
    g = WeightedGraph.from_edges(2, 4, [(0, 1, 1), (0, 2, 1), (1, 3, 1)], [0, 1])
    with pytest.warns(GraphWarning, match=r"\(0, 1\)"):
        s = strip_input_edges(g)
    assert s[0, 1] == 0 and s[0, 2] == 1 and s[1, 3] == 1
    assert strip_input_edges(s) == s


def test_strip_input_edges_fixed_points(triangle):
    assert strip_input_edges(triangle) == triangle
    g = WeightedGraph.from_edges(2, 3, [(0, 2, 1)], [0, 1])
    assert strip_input_edges(g) == g


def test_output_subgraph():
    g = WeightedGraph.from_edges(2, 6, [(0, 2, 1), (2, 3, 1), (4, 5, 1), (1, 5, 1)], [0, 1])
    sub = output_subgraph(g)
    assert sub.v == 4 and sub.inputs == ()
    assert sub.edges() == [(0, 1, 1), (2, 3, 1)]


def test_output_subgraph_degenerate(triangle):
    assert output_subgraph(triangle) == triangle
    assert output_subgraph(triangle.with_inputs([0, 1, 2])).v == 0


def test_edge_count_and_degree(triangle, star):
    assert edge_count(triangle) == 3
    assert edge_count(WeightedGraph.from_edges(2, 3, [])) == 0
    assert degree(star, 0) == 3 and degree(star, 1) == 1


def test_export_dot(single_edge):
    text = export_dot(single_edge)
    assert '0 -- 1 [label="1"]' in text
    assert "0 [shape=box]" in export_dot(single_edge.with_inputs([0]))
    assert export_dot(WeightedGraph(2, np.zeros((0, 0), int))) == "graph G {\n}\n"
    assert export_dot(single_edge) == export_dot(single_edge)


def test_relabel_round_trip(rng):
    g = random_graph(rng, 5, 3, inputs=[3, 1])
    order = [3, 1, 0, 2, 4]
    r = g.relabel(order)
    assert r.inputs == (0, 1)
    for a in range(5):
        for b in range(5):
            assert r[a, b] == g[order[a], order[b]]


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7), st.integers(1, 6), st.integers(0, 2 ** 32 - 1))
def test_serialize_round_trip(d, v, seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(0, v + 1))
    inputs = [int(x) for x in rng.permutation(v)[:k]]
    g = random_graph(rng, v, d, inputs=inputs)
    text = serialize_graph(g)
    assert parse_graph(text) == g
    assert serialize_graph(parse_graph(text)) == text


def test_serialize_sorts_edges():
    g = parse_graph(doc(vertices=3, edges=[[2, 1, 1], [1, 0, 1]]))
    assert json.loads(serialize_graph(g))["edges"] == [[0, 1, 1], [1, 2, 1]]
