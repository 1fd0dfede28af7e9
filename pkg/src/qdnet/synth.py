"""Compile weighted graphs into Fourier / controlled-shift networks.

All emitted lists are in application order. Absent edges emit no gate, so
the counts are exact: v + l for cluster and encoder networks, n + l - 1 for
the single-input direct encoder.
"""

from __future__ import annotations

import warnings

from .circuit import Circuit, CPhase, CShift, Fourier, Gate
from .graph import (GraphWarning, WeightedGraph, edge_count, inputs_first_order,
                    output_subgraph, strip_input_edges)


class PreconditionError(ValueError):
    """The graph does not satisfy the synthesis preconditions."""


def _require_canonical(graph: WeightedGraph) -> None:
    if not graph.is_canonical():
        raise PreconditionError("graph weights must be canonicalized into [0, d)")


def synth_cluster_phase_form(graph: WeightedGraph) -> Circuit:
    """Fourier on every vertex, then one controlled phase per edge."""
    _require_canonical(graph)
    gates: list[Gate] = [Fourier(j) for j in range(graph.v)]
    gates += [CPhase(i, j, w) for i, j, w in graph.edges()]
    return Circuit(graph.d, graph.v, tuple(gates))


def _shift_form_gates(graph: WeightedGraph, offset: int = 0) -> list[Gate]:
    gates: list[Gate] = []
    w = graph.weights
    for j in range(graph.v):
        gates.append(Fourier(j + offset))
        for k in range(j + 1, graph.v):
            if w[j, k]:
                gates.append(CShift(j + offset, k + offset, int(w[j, k])))
    return gates


def synth_cluster_shift_form(graph: WeightedGraph) -> Circuit:
    """Fourier on vertex j followed by the shifts j -> k for k > j, per vertex."""
    _require_canonical(graph)
    return Circuit(graph.d, graph.v, tuple(_shift_form_gates(graph)))


def encoder_layout(graph: WeightedGraph) -> tuple[WeightedGraph, list[int]]:
    """Strip input-input edges and renumber so inputs occupy the low wires.

    Returns the relabeled graph and ``order`` with ``order[wire] = vertex``.
    """
    _require_canonical(graph)
    if not graph.inputs:
        raise PreconditionError("encoder network needs at least one input vertex")
    stripped = strip_input_edges(graph)
    order = inputs_first_order(stripped)
    return stripped.relabel(order), order


def synth_encoder_network(graph: WeightedGraph) -> Circuit:
    """Network for F_X u F_X* with inputs renumbered to wires 0..k-1.

    Each input x contributes its shifts onto the outputs followed by F_x; the
    cluster network of the output subgraph is appended. ``wires`` on the
    result maps each wire back to its graph vertex.
    """
    relabeled, order = encoder_layout(graph)
    k = len(relabeled.inputs)
    w = relabeled.weights
    gates: list[Gate] = []
    for x in range(k):
        for y in range(k, relabeled.v):
            if w[x, y]:
                gates.append(CShift(x, y, int(w[x, y])))
        gates.append(Fourier(x))
    gates += _shift_form_gates(output_subgraph(relabeled), offset=k)
    return Circuit(graph.d, graph.v, tuple(gates), tuple(order))


def direct_layout(graph: WeightedGraph) -> tuple[WeightedGraph, list[int]]:
    """Renumber a single-input graph to input 0, outputs 1..n and check w(0,1) = 1."""
    _require_canonical(graph)
    if len(graph.inputs) != 1:
        raise PreconditionError(
            f"direct encoder needs exactly one input vertex, got {len(graph.inputs)}")
    order = inputs_first_order(graph)
    relabeled = graph.relabel(order)
    if relabeled.v < 2:
        raise PreconditionError("direct encoder needs at least one output vertex")
    if relabeled[0, 1] != 1:
        raise PreconditionError(
            f"direct encoder needs weight 1 between the input and the first output "
            f"(vertex {order[1]}), got {relabeled[0, 1]}")
    return relabeled, order


def synth_direct_encoder(graph: WeightedGraph) -> Circuit:
    """Output-only encoder: shifts from output 1 copying the input's links, then
    the cluster network of the output subgraph.

    Wire m of the result carries graph vertex ``wires[m]`` (the outputs in
    order); the data digit is loaded on wire 0.
    """
    relabeled, order = direct_layout(graph)
    n = relabeled.v - 1
    w = relabeled.weights
    # graph index i (1..n) lives on wire i - 1
    gates: list[Gate] = [CShift(0, i - 1, int(w[0, i])) for i in range(2, n + 1) if w[0, i]]
    gates += _shift_form_gates(output_subgraph(relabeled))
    return Circuit(graph.d, n, tuple(gates), tuple(order[1:]))


def predicted_counts(graph: WeightedGraph) -> dict[str, int | None]:
    """Gate totals each synthesis would emit, or None where it does not apply."""
    v, l = graph.v, edge_count(graph)
    counts: dict[str, int | None] = {"cluster-phase": v + l, "cluster-shift": v + l}
    if graph.inputs:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", GraphWarning)
            counts["encoder"] = v + edge_count(strip_input_edges(graph))
    else:
        counts["encoder"] = None
    try:
        direct_layout(graph)
    except PreconditionError:
        counts["direct"] = None
    else:
        counts["direct"] = (v - 1) + l - 1
    return counts
