"""Graph-code encoders and their coding channels.

Channels are kept in the Schroedinger picture as one Kraus branch per
classical measurement outcome h on the input digits.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import statevec as sv
from .circuit import Circuit, CShift
from .graph import GraphWarning, WeightedGraph, strip_input_edges
from .group import MultiIndex, basis_digits, enumerate_group, index_of
from .statevec import LinearMap, StateVector
from .synth import (PreconditionError, direct_layout, encoder_layout,
                    synth_direct_encoder, synth_encoder_network)

TOL = 1e-10


class Branch(NamedTuple):
    outcome: MultiIndex
    state: StateVector
    probability: float


@dataclass(frozen=True, eq=False)
class ChannelBranches:
    """rho -> sum_h B_h rho B_h^* (x) |h><h| with B_h = branches[h]."""

    d: int
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    branches: dict[tuple[int, ...], np.ndarray]
    isometric: bool = True
    notes: tuple[str, ...] = field(default=())

    def completeness_deviation(self) -> float:
        dim = self.d ** len(self.inputs)
        total = sum(b.conj().T @ b for b in self.branches.values())
        return float(np.max(np.abs(total - np.eye(dim))))


# -- closed forms ------------------------------------------------------------

def reorder(op: LinearMap, domain: Sequence[int] | None = None,
            codomain: Sequence[int] | None = None) -> LinearMap:
    """Same operator with the tensor factors listed in a different order."""
    domain = op.domain if domain is None else tuple(domain)
    codomain = op.codomain if codomain is None else tuple(codomain)
    if sorted(domain) != sorted(op.domain) or sorted(codomain) != sorted(op.codomain):
        raise ValueError("reordering must permute the existing vertex lists")
    d, nc, nd = op.d, len(op.codomain), len(op.domain)
    t = op.matrix.reshape((d,) * (nc + nd))
    perm = [op.codomain.index(v) for v in codomain] + [nc + op.domain.index(v) for v in domain]
    m = t.transpose(perm).reshape(d ** nc, d ** nd)
    return LinearMap(d, domain, codomain, m)


def encoder_oracle(graph: WeightedGraph) -> LinearMap:
    """v|h> = d^{|X|/2} sum_g Psi(h, g) |g>, read off the cluster amplitudes."""
    if not graph.inputs:
        raise PreconditionError("graph code needs at least one input vertex")
    xs, ys = graph.inputs, graph.outputs
    psi = sv.cluster_oracle(graph).amplitudes.reshape((graph.d,) * graph.v)
    m = psi.transpose(list(ys) + list(xs)).reshape(graph.d ** len(ys), graph.d ** len(xs))
    return LinearMap(graph.d, xs, ys, graph.d ** (len(xs) / 2) * m)


def isometry_check(op: LinearMap, tol: float = TOL) -> tuple[bool, float]:
    gram = op.matrix.conj().T @ op.matrix
    dev = float(np.max(np.abs(gram - np.eye(gram.shape[0]))))
    return dev <= tol, dev


def creation_operator(graph: WeightedGraph) -> LinearMap:
    """u = Phi F_V, from the phase oracle and Fourier matrices."""
    vs = tuple(range(graph.v))
    return sv.phase_operator(graph) @ sv.fourier_op(vs, vs, graph.d)


def encoder_dynamics_oracle(graph: WeightedGraph, swap_conjugation: bool = False) -> LinearMap:
    """F_X u F_X* on the full register (F_X* u F_X when ``swap_conjugation``)."""
    vs = tuple(range(graph.v))
    left = sv.fourier_op(vs, graph.inputs, graph.d, inverse=swap_conjugation)
    right = sv.fourier_op(vs, graph.inputs, graph.d, inverse=not swap_conjugation)
    return left @ creation_operator(graph) @ right


def identity_rhs(graph: WeightedGraph, swap_conjugation: bool = False) -> LinearMap:
    """d^{|X|/2} w_X* F_X u F_X* w_Y as a map from inputs to outputs."""
    vs = tuple(range(graph.v))
    xs, ys = graph.inputs, graph.outputs
    w_y = sv.embed_w_map(xs, ys, graph.d, order=vs)
    w_x = sv.embed_w_map(ys, xs, graph.d, order=vs)
    core = encoder_dynamics_oracle(graph, swap_conjugation)
    return (w_x.adjoint @ core @ w_y).scaled(graph.d ** (len(xs) / 2))


@dataclass(frozen=True)
class IdentityReport:
    deviation: float
    swapped_deviation: float

    @property
    def matching(self) -> tuple[str, ...]:
        pairs = (("F_X.u.F_X*", self.deviation), ("F_X*.u.F_X", self.swapped_deviation))
        return tuple(name for name, dev in pairs if dev <= TOL)


def verify_encoder_identity(graph: WeightedGraph) -> IdentityReport:
    """Compare both conjugation orders of the identity against the encoder oracle."""
    v = encoder_oracle(graph)
    return IdentityReport(sv.max_deviation(identity_rhs(graph), v),
                       sv.max_deviation(identity_rhs(graph, swap_conjugation=True), v))


# -- measured encoding pipeline ---------------------------------------------

def _check_normalized(state: StateVector) -> None:
    if abs(state.norm - 1.0) > TOL:
        raise ValueError(f"input state is not normalized (norm {state.norm!r})")


def _prepare(graph: WeightedGraph) -> tuple[WeightedGraph, Circuit]:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", GraphWarning)
        stripped = strip_input_edges(graph)
    return stripped, synth_encoder_network(stripped)


def measured_encoding(graph: WeightedGraph, input_state: StateVector, mode: str = "all",
                      seed: int | None = None,
                      outcome: Sequence[int] | MultiIndex | None = None) -> list[Branch]:
    """Embed the input with ground outputs, run the encoder network, measure inputs.

    ``mode`` is ``"all"`` (every outcome), ``"branch"`` (only ``outcome``) or
    ``"sample"`` (one outcome drawn with ``numpy.random.default_rng(seed)``).
    Output states are returned unnormalized.
    """
    if input_state.vertices != graph.inputs:
        raise ValueError(f"input state on {input_state.vertices}, graph inputs {graph.inputs}")
    _check_normalized(input_state)
    stripped, circuit = _prepare(graph)
    order = circuit.wires
    xs, ys = stripped.inputs, stripped.outputs
    full = sv.embed_w(input_state, ys, order=order)
    final = sv.run(circuit, full)

    if mode == "branch":
        if outcome is None:
            raise ValueError("branch mode needs an outcome")
        h = outcome if isinstance(outcome, MultiIndex) else MultiIndex(xs, tuple(outcome), graph.d)
        targets = [h]
    elif mode in ("all", "sample"):
        targets = enumerate_group(xs, graph.d)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    branches = []
    for h in targets:
        rest, p = sv.postselect(final, xs, h)
        branches.append(Branch(h, rest, p))
    if mode == "sample":
        if seed is None:
            raise ValueError("sample mode needs an explicit seed")
        probs = np.array([b.probability for b in branches])
        pick = np.random.default_rng(seed).choice(len(branches), p=probs / probs.sum())
        return [branches[pick]]
    return branches


def channel_C(graph: WeightedGraph, conjugate: bool = False) -> ChannelBranches:
    """Branches B_h = d^{-|X|/2} v u^(h), or with u^(h)* when ``conjugate``."""
    v = encoder_oracle(graph)
    ok, dev = isometry_check(v)
    notes = ()
    if not ok:
        msg = f"encoder is not an isometry (max deviation {dev:.3g})"
        warnings.warn(msg, GraphWarning, stacklevel=2)
        notes = (msg,)
    k = len(graph.inputs)
    scale = graph.d ** (-k / 2)
    branches = {}
    for h in enumerate_group(graph.inputs, graph.d):
        mult = sv.multiplier_op(h).matrix
        if conjugate:
            mult = mult.conj()
        branches[h.digits] = scale * (v.matrix @ mult)
    return ChannelBranches(graph.d, graph.inputs, graph.outputs, branches, ok, notes)


def channel_pipeline(graph: WeightedGraph) -> ChannelBranches:
    """Branches of the measured scheme, one column per input basis vector."""
    stripped, circuit = _prepare(graph)
    xs, ys = stripped.inputs, stripped.outputs
    d, k, m = graph.d, len(xs), len(ys)
    w = sv.embed_w_map(xs, ys, d, order=circuit.wires).matrix
    out = sv.run_batch(circuit, w)
    # wires are inputs then outputs, so the row index splits as (h, g)
    t = out.reshape(d ** k, d ** m, d ** k)
    branches = {h: t[i].copy() for i, h in enumerate(_digit_tuples(k, d))}
    ok, _ = isometry_check(encoder_oracle(stripped))
    return ChannelBranches(d, xs, ys, branches, ok)


def _digit_tuples(n: int, d: int) -> list[tuple[int, ...]]:
    return [tuple(int(x) for x in row) for row in basis_digits(n, d)]


def superoperator(branches: ChannelBranches, outcome: tuple[int, ...] | None = None) -> np.ndarray:
    """Row-major vec convention: vec(B rho B*) = (B (x) conj B) vec(rho).

    Summed over all outcomes unless ``outcome`` picks one classical branch.
    """
    keys = branches.branches.keys() if outcome is None else [outcome]
    return sum(np.kron(branches.branches[h], branches.branches[h].conj()) for h in keys)


def channel_deviation(a: ChannelBranches, b: ChannelBranches) -> float:
    """Max entrywise gap of the per-outcome superoperators (classical output kept)."""
    if set(a.branches) != set(b.branches):
        raise ValueError("channels have different outcome sets")
    return max(float(np.max(np.abs(superoperator(a, h) - superoperator(b, h))))
               for h in a.branches)


def branch_deviation(a: ChannelBranches, b: ChannelBranches) -> float:
    return max(float(np.max(np.abs(a.branches[h] - b.branches[h]))) for h in a.branches)


# -- direct single-input encoder --------------------------------------------

def direct_encoding(graph: WeightedGraph, input_state: StateVector) -> StateVector:
    """Load the data on the first output, ground the rest, run the direct network."""
    relabeled, order = direct_layout(graph)
    if len(input_state) != graph.d:
        raise ValueError("direct encoding takes a single-digit input state")
    _check_normalized(input_state)
    circuit = synth_direct_encoder(graph)
    start = StateVector(graph.d, circuit.wires,
                        np.kron(input_state.amplitudes, sv.ground_state(circuit.size - 1, graph.d).amplitudes))
    return sv.run(circuit, start)


def z_operator(graph: WeightedGraph) -> LinearMap:
    return sv.circuit_unitary(synth_direct_encoder(graph))


def direct_embedding(graph: WeightedGraph) -> LinearMap:
    """w_{2..n}: first output digit -> that digit with the other outputs grounded."""
    _, order = direct_layout(graph)
    return sv.embed_w_map(order[1:2], order[2:], graph.d, order=order[1:])


def input_block_deviation(graph: WeightedGraph) -> float:
    """Gap in d^{1/2} w_0* F_0 c_0 |h,0> = b_0 w_{2..n} |h> over all h."""
    relabeled, _ = direct_layout(graph)
    d, v = graph.d, relabeled.v
    n = v - 1
    w = relabeled.weights
    vs = tuple(range(v))
    c0 = Circuit(d, v, tuple(CShift(0, y, int(w[0, y])) for y in range(1, v) if w[0, y]))
    lhs_core = sv.fourier_op(vs, [0], d) @ sv.circuit_unitary(c0)
    load = sv.embed_w_map((0,), vs[1:], d, order=vs)
    drop = sv.embed_w_map(vs[1:], (0,), d, order=vs)
    lhs = (drop.adjoint @ lhs_core @ load).scaled(np.sqrt(d))
    b0 = Circuit(d, n, tuple(CShift(0, y - 1, int(w[0, y])) for y in range(2, v) if w[0, y]),
                 vs[1:])
    rhs = sv.circuit_unitary(b0) @ sv.embed_w_map((1,), vs[2:], d, order=vs[1:])
    return float(np.max(np.abs(lhs.matrix - rhs.matrix)))


def random_state(rng: np.random.Generator, vertices: Sequence[int], d: int) -> StateVector:
    dim = d ** len(vertices)
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector(d, tuple(vertices), amps / np.linalg.norm(amps))


def basis_input(graph: WeightedGraph, digits: Sequence[int]) -> StateVector:
    amps = np.zeros(graph.d ** len(graph.inputs), dtype=np.complex128)
    amps[index_of(digits, graph.d)] = 1.0
    return StateVector(graph.d, graph.inputs, amps)
