"""Identity checks run by ``qdnet verify``.

Each check compares a synthesized network (or the measured pipeline) against
a closed-form reference and yields a :class:`Check` with the max deviation.
"""

from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import code
from . import statevec as sv
from .circuit import gate_count, lower_phases
from .graph import GraphWarning, WeightedGraph, edge_count, strip_input_edges
from .synth import (PreconditionError, direct_layout, predicted_counts,
                    synth_cluster_phase_form, synth_cluster_shift_form,
                    synth_direct_encoder, synth_encoder_network)

TOL = 1e-10


@dataclass
class Check:
    name: str
    status: str  # "pass", "fail" or "skip"
    deviation: float | None = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def line(self) -> str:
        dev = "-" if self.deviation is None else f"{self.deviation:.17g}"
        text = f"{self.name:<11} {self.status:<4} max_dev={dev}"
        return f"{text} {self.detail}" if self.detail else text

    def as_dict(self) -> dict:
        return asdict(self)


class Skip(Exception):
    pass


def _judge(name: str, dev: float, detail: str = "") -> Check:
    return Check(name, "pass" if dev <= TOL else "fail", float(dev), detail)


def _stripped(graph: WeightedGraph) -> WeightedGraph:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", GraphWarning)
        return strip_input_edges(graph)


def _need_unitary(graph: WeightedGraph) -> None:
    if graph.d ** graph.v > sv.MAX_UNITARY_DIM:
        raise Skip(f"register d^v={graph.d ** graph.v} too large for dense matrices")


def _need_inputs(graph: WeightedGraph) -> None:
    if not graph.inputs:
        raise Skip("graph has no input vertices")


def _need_direct(graph: WeightedGraph) -> None:
    try:
        direct_layout(graph)
    except PreconditionError as exc:
        raise Skip(str(exc)) from None


def check_cluster(graph, rng):
    if graph.d ** graph.v > sv.MAX_STATE_DIM:
        raise Skip("register too large for state simulation")
    out = sv.run(synth_cluster_shift_form(graph), sv.ground_state(graph.v, graph.d))
    return _judge("cluster", sv.max_deviation(out, sv.cluster_oracle(graph)))


def check_gatecounts(graph, rng):
    want = predicted_counts(graph)
    got = {
        "cluster-phase": len(synth_cluster_phase_form(graph)),
        "cluster-shift": len(synth_cluster_shift_form(graph)),
    }
    if want["encoder"] is not None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", GraphWarning)
            got["encoder"] = len(synth_encoder_network(graph))
    if want["direct"] is not None:
        got["direct"] = len(synth_direct_encoder(graph))
    gap = max(abs(got[k] - want[k]) for k in got)
    detail = " ".join(f"{k}={got[k]}/{want[k]}" for k in got)
    return Check("gatecounts", "pass" if gap == 0 else "fail", float(gap), detail)


def check_equivalence(graph, rng):
    _need_unitary(graph)
    a = sv.circuit_unitary(synth_cluster_phase_form(graph))
    b = sv.circuit_unitary(synth_cluster_shift_form(graph))
    return _judge("equivalence", sv.max_deviation(a, b))


def check_lowering(graph, rng):
    _need_unitary(graph)
    phase = synth_cluster_phase_form(graph)
    a = sv.circuit_unitary(lower_phases(phase))
    b = sv.circuit_unitary(phase)
    return _judge("lowering", sv.max_deviation(a, b), f"gates={len(lower_phases(phase))}")


def check_encoder(graph, rng):
    _need_inputs(graph)
    _need_unitary(graph)
    g = _stripped(graph)
    circ = synth_encoder_network(g)
    net = code.reorder(sv.circuit_unitary(circ), range(g.v), range(g.v))
    return _judge("encoder", sv.max_deviation(net, code.encoder_dynamics_oracle(g)))


def check_isometry(graph, rng):
    _need_inputs(graph)
    ok, dev = code.isometry_check(code.encoder_oracle(_stripped(graph)))
    return _judge("isometry", dev)


def check_identity(graph, rng):
    _need_inputs(graph)
    _need_unitary(graph)
    g = _stripped(graph)
    report = code.verify_encoder_identity(g)
    detail = (f"variant={'+'.join(report.matching) or 'none'} "
              f"swapped_dev={report.swapped_deviation:.17g}")
    return _judge("identity", report.deviation, detail)


def check_channel(graph, rng):
    _need_inputs(graph)
    _need_unitary(graph)
    g = _stripped(graph)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", GraphWarning)
        cc = code.channel_C(g)
        cc_conj = code.channel_C(g, conjugate=True)
    pipe = code.channel_pipeline(g)
    dev = code.channel_deviation(cc, pipe)
    b_plain = code.branch_deviation(cc, pipe)
    b_conj = code.branch_deviation(cc_conj, pipe)
    matching = [name for name, x in (("u^(h)", b_plain), ("u^(h)*", b_conj)) if x <= TOL]
    return _judge("channel", dev, f"branch_correction={'+'.join(matching) or 'none'}")


def check_outcomes(graph, rng):
    _need_inputs(graph)
    _need_unitary(graph)
    g = _stripped(graph)
    if not code.isometry_check(code.encoder_oracle(g))[0]:
        raise Skip("code is not isometric, outcome probabilities depend on the input")
    k = len(g.inputs)
    if rng is None:
        states = [code.basis_input(g, h.digits) for h in code.enumerate_group(g.inputs, g.d)]
        source = "basis inputs"
    else:
        states = [code.random_state(rng, g.inputs, g.d) for _ in range(20)]
        source = "20 random inputs"
    target = g.d ** (-k)
    dev = max(abs(b.probability - target)
              for s in states for b in code.measured_encoding(g, s, mode="all"))
    return _judge("outcomes", dev, f"target=d^-{k} over {source}")


def check_direct(graph, rng):
    _need_direct(graph)
    if graph.d ** (graph.v - 1) > sv.MAX_UNITARY_DIM:
        raise Skip("output register too large for dense matrices")
    zw = code.z_operator(graph) @ code.direct_embedding(graph)
    v = code.encoder_oracle(graph)
    return _judge("direct", float(np.max(np.abs(zw.matrix - v.matrix))))


def check_inblock(graph, rng):
    _need_direct(graph)
    _need_unitary(graph)
    return _judge("inblock", code.input_block_deviation(graph))


def check_sample(graph, rng):
    _need_inputs(graph)
    _need_unitary(graph)
    if rng is None:
        raise Skip("sampling needs --seed")
    g = _stripped(graph)
    psi = code.random_state(rng, g.inputs, g.d)
    seed = int(rng.integers(2 ** 31))
    (branch,) = code.measured_encoding(g, psi, mode="sample", seed=seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", GraphWarning)
        b = code.channel_C(g).branches[branch.outcome.digits]
    expected = b @ psi.amplitudes
    dev = float(np.max(np.abs(branch.state.amplitudes - expected)))
    return _judge("sample", dev, f"outcome={''.join(map(str, branch.outcome.digits))} "
                                 f"p={branch.probability:.17g}")


CHECKS: dict[str, Callable] = {
    "cluster": check_cluster,
    "gatecounts": check_gatecounts,
    "equivalence": check_equivalence,
    "lowering": check_lowering,
    "encoder": check_encoder,
    "isometry": check_isometry,
    "identity": check_identity,
    "channel": check_channel,
    "outcomes": check_outcomes,
    "direct": check_direct,
    "inblock": check_inblock,
    "sample": check_sample,
}


def run_checks(graph: WeightedGraph, names=None, seed: int | None = None) -> list[Check]:
    rng = None if seed is None else np.random.default_rng(seed)
    results = []
    for name in names or CHECKS:
        try:
            results.append(CHECKS[name](graph, rng))
        except Skip as reason:
            results.append(Check(name, "skip", None, str(reason)))
    return results


def graph_summary(graph: WeightedGraph) -> dict:
    return {
        "d": graph.d,
        "v": graph.v,
        "l": edge_count(graph),
        "inputs": len(graph.inputs),
        "outputs": len(graph.outputs),
        "predicted": predicted_counts(graph),
    }
