"""Weighted graphs with an input/output vertex partition.

Weights only enter the cluster amplitudes through chi, so they are stored
reduced mod d. Vertices are dense indices 0..v-1.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class GraphFormatError(ValueError):
    """Malformed or inconsistent graph description."""


class GraphWarning(UserWarning):
    """Non-fatal graph adjustment (dropped edge, removed input link)."""


_KEYS = {"d", "vertices", "edges", "inputs"}


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    d: int
    weights: np.ndarray
    inputs: tuple[int, ...] = ()
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.int64)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise GraphFormatError("weight matrix must be square")
        if int(self.d) < 2:
            raise GraphFormatError(f"d must be >= 2, got {self.d}")
        if not np.array_equal(w, w.T):
            raise GraphFormatError("weight matrix must be symmetric")
        if np.any(np.diag(w) != 0):
            raise GraphFormatError("self-loops are not allowed")
        inputs = tuple(int(x) for x in self.inputs)
        if len(set(inputs)) != len(inputs):
            raise GraphFormatError("duplicate input vertex")
        for x in inputs:
            if not 0 <= x < w.shape[0]:
                raise GraphFormatError(f"input vertex {x} out of range")
        w.setflags(write=False)
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "inputs", inputs)

    @classmethod
    def from_edges(cls, d: int, v: int, edges: Iterable[Sequence[int]],
                   inputs: Sequence[int] = ()) -> "WeightedGraph":
        w = np.zeros((v, v), dtype=np.int64)
        for i, j, weight in edges:
            w[i, j] = w[j, i] = weight
        return cls(d, w, tuple(inputs))

    @property
    def v(self) -> int:
        return self.weights.shape[0]

    @property
    def outputs(self) -> tuple[int, ...]:
        xs = set(self.inputs)
        return tuple(i for i in range(self.v) if i not in xs)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return int(self.weights[ij])

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (self.d == other.d and self.inputs == other.inputs
                and np.array_equal(self.weights, other.weights))

    def __hash__(self):
        return hash((self.d, self.inputs, self.weights.tobytes()))

    def __repr__(self):
        return (f"WeightedGraph(d={self.d}, v={self.v}, "
                f"edges={self.edges()}, inputs={self.inputs})")

    def is_canonical(self) -> bool:
        return bool(np.all((self.weights >= 0) & (self.weights < self.d)))

    def edges(self) -> list[tuple[int, int, int]]:
        """(i, j, weight) with i < j, sorted, nonzero weights only."""
        iu, ju = np.nonzero(np.triu(self.weights, 1))
        return [(int(i), int(j), int(self.weights[i, j])) for i, j in zip(iu, ju)]

    def neighbors(self, vertex: int) -> list[int]:
        return [int(k) for k in np.nonzero(self.weights[vertex])[0]]

    def relabel(self, order: Sequence[int]) -> "WeightedGraph":
        """Graph in which new vertex k is old vertex order[k]."""
        order = list(order)
        if sorted(order) != list(range(self.v)):
            raise ValueError("order must be a permutation of the vertices")
        pos = {old: new for new, old in enumerate(order)}
        w = self.weights[np.ix_(order, order)]
        return WeightedGraph(self.d, w, tuple(pos[x] for x in self.inputs))

    def with_inputs(self, inputs: Sequence[int]) -> "WeightedGraph":
        return WeightedGraph(self.d, self.weights, tuple(inputs))


def canonicalize(graph: WeightedGraph) -> WeightedGraph:
    """Reduce weights into [0, d); edges with weight = 0 mod d are dropped."""
    w = graph.weights
    reduced = np.mod(w, graph.d)
    notes = list(graph.notes)
    for i, j in zip(*np.nonzero(np.triu((w != 0) & (reduced == 0), 1))):
        msg = f"edge ({i}, {j}) weight {w[i, j]} vanishes mod {graph.d}; dropped"
        warnings.warn(msg, GraphWarning, stacklevel=2)
        notes.append(msg)
    return WeightedGraph(graph.d, reduced, graph.inputs, tuple(notes))


def strip_input_edges(graph: WeightedGraph) -> WeightedGraph:
    """Remove every edge joining two input vertices."""
    w = graph.weights.copy()
    xs = list(graph.inputs)
    notes = list(graph.notes)
    for a in range(len(xs)):
        for b in range(a + 1, len(xs)):
            i, j = sorted((xs[a], xs[b]))
            if w[i, j]:
                msg = f"removed input-input edge ({i}, {j})"
                warnings.warn(msg, GraphWarning, stacklevel=2)
                notes.append(msg)
                w[i, j] = w[j, i] = 0
    return WeightedGraph(graph.d, w, graph.inputs, tuple(notes))


def input_edges(graph: WeightedGraph) -> list[tuple[int, int, int]]:
    xs = set(graph.inputs)
    return [e for e in graph.edges() if e[0] in xs and e[1] in xs]


def output_subgraph(graph: WeightedGraph) -> WeightedGraph:
    ys = list(graph.outputs)
    return WeightedGraph(graph.d, graph.weights[np.ix_(ys, ys)], ())


def edge_count(graph: WeightedGraph) -> int:
    return int(np.count_nonzero(np.triu(graph.weights, 1)))


def degree(graph: WeightedGraph, vertex: int) -> int:
    return int(np.count_nonzero(graph.weights[vertex]))


def inputs_first_order(graph: WeightedGraph) -> list[int]:
    """Vertex order placing inputs (in listed order) before outputs."""
    return list(graph.inputs) + list(graph.outputs)


# -- file formats ----------------------------------------------------------

def _as_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise GraphFormatError(f"{what} must be an integer, got {value!r}")
    return value


def parse_graph(text: str | bytes) -> WeightedGraph:
    """Parse the JSON graph format and return a canonicalized graph."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GraphFormatError("graph file must contain a JSON object")
    unknown = set(doc) - _KEYS
    if unknown:
        raise GraphFormatError(f"unknown keys: {sorted(unknown)}")
    missing = {"d", "vertices"} - set(doc)
    if missing:
        raise GraphFormatError(f"missing keys: {sorted(missing)}")

    d = _as_int(doc["d"], "d")
    if d < 2:
        raise GraphFormatError(f"d must be >= 2, got {d}")
    v = _as_int(doc["vertices"], "vertices")
    if v < 0:
        raise GraphFormatError("vertex count must be non-negative")
    edges = doc.get("edges", [])
    inputs = doc.get("inputs", [])
    if not isinstance(edges, list) or not isinstance(inputs, list):
        raise GraphFormatError("edges and inputs must be arrays")

    w = np.zeros((v, v), dtype=np.int64)
    seen: dict[tuple[int, int], int] = {}
    for edge in edges:
        if not isinstance(edge, list) or len(edge) != 3:
            raise GraphFormatError(f"edge must be an [i, j, weight] triple: {edge!r}")
        i, j, weight = (_as_int(x, "edge entry") for x in edge)
        if not (0 <= i < v and 0 <= j < v):
            raise GraphFormatError(f"edge ({i}, {j}) references a missing vertex")
        if i == j:
            raise GraphFormatError(f"self-loop at vertex {i}")
        key = (min(i, j), max(i, j))
        if key in seen and seen[key] != weight:
            raise GraphFormatError(
                f"conflicting weights {seen[key]} and {weight} for edge {key}")
        seen[key] = weight
        w[i, j] = w[j, i] = weight

    xs = tuple(_as_int(x, "input") for x in inputs)
    for x in xs:
        if not 0 <= x < v:
            raise GraphFormatError(f"input vertex {x} out of range")
    if len(set(xs)) != len(xs):
        raise GraphFormatError("duplicate input vertex")
    return canonicalize(WeightedGraph(d, w, xs))


def load_graph(path) -> WeightedGraph:
    with open(path, "rb") as fh:
        return parse_graph(fh.read())


def serialize_graph(graph: WeightedGraph) -> str:
    doc = {
        "d": graph.d,
        "vertices": graph.v,
        "edges": [list(e) for e in graph.edges()],
        "inputs": list(graph.inputs),
    }
    return json.dumps(doc) + "\n"


def export_dot(graph: WeightedGraph) -> str:
    """Graphviz text; input vertices are drawn as boxes."""
    lines = ["graph G {"]
    xs = set(graph.inputs)
    for i in range(graph.v):
        lines.append(f"  {i} [shape=box];" if i in xs else f"  {i};")
    for i, j, weight in graph.edges():
        lines.append(f'  {i} -- {j} [label="{weight}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def random_graph(rng: np.random.Generator, v: int, d: int, p: float = 0.5,
                 inputs: Sequence[int] = ()) -> WeightedGraph:
    """Random canonical graph: each pair is an edge with probability p."""
    w = np.zeros((v, v), dtype=np.int64)
    for i in range(v):
        for j in range(i + 1, v):
            if rng.random() < p:
                w[i, j] = w[j, i] = rng.integers(1, d)
    return WeightedGraph(d, w, tuple(inputs))
