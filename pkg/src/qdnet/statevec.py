"""Dense state-vector simulation and closed-form reference operators.

The simulator (``apply_gate``/``run``/``circuit_unitary``) goes through the
kernels in :mod:`qdnet.kernels`. The oracles (``cluster_oracle``,
``phase_operator``, ``fourier_op``, ``shift_op``, ``multiplier_op``,
``embed_w``) are assembled from closed forms and Kronecker products and never
touch the kernels, so they can serve as independent references.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .circuit import CPHASE, CSHIFT, FOURIER, FOURIER_INV, Circuit, Gate
from .graph import WeightedGraph
from .group import MultiIndex, basis_digits, index_of

MAX_UNITARY_DIM = 4096
MAX_STATE_DIM = 2 ** 20


class RegisterSizeError(ValueError):
    """Register too large for dense treatment, or sizes disagree."""


@dataclass(frozen=True, eq=False)
class StateVector:
    d: int
    vertices: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != self.d ** len(self.vertices):
            raise RegisterSizeError(
                f"{amps.size} amplitudes for {len(self.vertices)} digits at d={self.d}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def __len__(self):
        return self.amplitudes.size

    def normalized(self) -> "StateVector":
        return StateVector(self.d, self.vertices, self.amplitudes / self.norm)


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Dense matrix from l2(Z_d^domain) to l2(Z_d^codomain)."""

    d: int
    domain: tuple[int, ...]
    codomain: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(int(v) for v in self.domain))
        object.__setattr__(self, "codomain", tuple(int(v) for v in self.codomain))
        m = np.asarray(self.matrix, dtype=np.complex128)
        want = (self.d ** len(self.codomain), self.d ** len(self.domain))
        if m.shape != want:
            raise RegisterSizeError(f"matrix shape {m.shape}, expected {want}")
        object.__setattr__(self, "matrix", m)

    def __matmul__(self, other):
        if isinstance(other, LinearMap):
            if other.codomain != self.domain:
                raise ValueError(f"cannot compose: {other.codomain} -> {self.domain}")
            return LinearMap(self.d, other.domain, self.codomain, self.matrix @ other.matrix)
        if isinstance(other, StateVector):
            if other.vertices != self.domain:
                raise ValueError(f"state on {other.vertices}, map expects {self.domain}")
            return StateVector(self.d, self.codomain, self.matrix @ other.amplitudes)
        return NotImplemented

    @property
    def adjoint(self) -> "LinearMap":
        return LinearMap(self.d, self.codomain, self.domain, self.matrix.conj().T)

    def scaled(self, factor: complex) -> "LinearMap":
        return LinearMap(self.d, self.domain, self.codomain, factor * self.matrix)


def max_deviation(a, b) -> float:
    a = a.matrix if isinstance(a, LinearMap) else getattr(a, "amplitudes", a)
    b = b.matrix if isinstance(b, LinearMap) else getattr(b, "amplitudes", b)
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)), initial=0.0))


def _vertices(vertices) -> tuple[int, ...]:
    return tuple(range(vertices)) if isinstance(vertices, int) else tuple(vertices)


def ground_state(vertices, d: int) -> StateVector:
    vs = _vertices(vertices)
    amps = np.zeros(d ** len(vs), dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(d, vs, amps)


def basis_state(vertices, d: int, digits: Sequence[int]) -> StateVector:
    vs = _vertices(vertices)
    if len(digits) != len(vs):
        raise RegisterSizeError("digit string length does not match the register")
    if any(not 0 <= int(g) < d for g in digits):
        raise ValueError(f"digit out of range for d={d}")
    amps = np.zeros(d ** len(vs), dtype=np.complex128)
    amps[index_of(digits, d)] = 1.0
    return StateVector(d, vs, amps)


# -- simulator ---------------------------------------------------------------

def _apply_inplace(psi: np.ndarray, gate: Gate, d: int, n: int, backend) -> None:
    if gate.kind == FOURIER:
        backend.fourier(psi, d, n, gate.i, 1)
    elif gate.kind == FOURIER_INV:
        backend.fourier(psi, d, n, gate.i, -1)
    elif gate.kind == CSHIFT:
        backend.cshift(psi, d, n, gate.i, gate.j, gate.power)
    elif gate.kind == CPHASE:
        backend.cphase(psi, d, n, gate.i, gate.j, gate.power)
    else:
        raise ValueError(f"unknown gate kind {gate.kind!r}")


def _check_gate(gate: Gate, d: int, n: int) -> None:
    for w in gate.wires:
        if not 0 <= w < n:
            raise IndexError(f"gate {gate} addresses wire {w} of a {n}-digit register")
    if gate.j is not None and not 1 <= gate.power < d:
        raise ValueError(f"gate power {gate.power} outside [1, {d})")


def apply_gate(state: StateVector, gate: Gate, backend=None) -> StateVector:
    n = len(state.vertices)
    _check_gate(gate, state.d, n)
    psi = state.amplitudes.copy().reshape(-1, 1)
    _apply_inplace(psi, gate, state.d, n, backend or kernels.backend)
    return StateVector(state.d, state.vertices, psi[:, 0])


def run_batch(circuit: Circuit, psi: np.ndarray, backend=None) -> np.ndarray:
    """Apply the circuit to each column of ``psi``; returns a new array."""
    backend = backend or kernels.backend
    out = np.array(psi, dtype=np.complex128, order="C", copy=True)
    if out.ndim == 1:
        out = out.reshape(-1, 1)
    if out.shape[0] != circuit.d ** circuit.size:
        raise RegisterSizeError("state dimension does not match the circuit register")
    for gate in circuit.gates:
        _apply_inplace(out, gate, circuit.d, circuit.size, backend)
    return out


def run(circuit: Circuit, state: StateVector, backend=None) -> StateVector:
    if state.d != circuit.d or len(state.vertices) != circuit.size:
        raise RegisterSizeError(
            f"circuit on {circuit.size} digits (d={circuit.d}) vs state on "
            f"{len(state.vertices)} digits (d={state.d})")
    if len(state) > MAX_STATE_DIM:
        raise RegisterSizeError(f"state dimension {len(state)} exceeds {MAX_STATE_DIM}")
    out = run_batch(circuit, state.amplitudes, backend)
    return StateVector(state.d, state.vertices, out[:, 0])


def circuit_unitary(circuit: Circuit, backend=None) -> LinearMap:
    dim = circuit.d ** circuit.size
    if dim > MAX_UNITARY_DIM:
        raise RegisterSizeError(f"unitary dimension {dim} exceeds {MAX_UNITARY_DIM}")
    wires = circuit.wires if circuit.wires is not None else tuple(range(circuit.size))
    m = run_batch(circuit, np.eye(dim, dtype=np.complex128), backend)
    return LinearMap(circuit.d, wires, wires, m)


# -- closed-form oracles -----------------------------------------------------

def _cluster_exponents(graph: WeightedGraph) -> np.ndarray:
    g = basis_digits(graph.v, graph.d)
    w = np.triu(graph.weights, 1)
    # sum_{i<j} w_ij g_i g_j, reduced mod d per basis state
    return np.einsum("ni,ij,nj->n", g, w, g) % graph.d


def cluster_oracle(graph: WeightedGraph) -> StateVector:
    """Cluster amplitudes d^{-v/2} prod_{i<j} chi(g_i|g_j)^{w_ij}."""
    e = _cluster_exponents(graph)
    amps = np.exp(2j * np.pi * e / graph.d) * graph.d ** (-graph.v / 2)
    return StateVector(graph.d, tuple(range(graph.v)), amps)


def phase_operator(graph: WeightedGraph) -> LinearMap:
    e = _cluster_exponents(graph)
    vs = tuple(range(graph.v))
    return LinearMap(graph.d, vs, vs, np.diag(np.exp(2j * np.pi * e / graph.d)))


def fourier_matrix(d: int, inverse: bool = False) -> np.ndarray:
    k = np.arange(d)
    sign = -1 if inverse else 1
    return np.exp(sign * 2j * np.pi * (np.outer(k, k) % d) / d) / np.sqrt(d)


def _kron_local(d: int, vertices: Sequence[int], local: dict[int, np.ndarray]) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.complex128)
    eye = np.eye(d, dtype=np.complex128)
    for v in vertices:
        out = np.kron(out, local.get(v, eye))
    return out


def fourier_op(vertices: Sequence[int], targets: Sequence[int], d: int,
               inverse: bool = False) -> LinearMap:
    """Product of local Fourier transforms on ``targets`` within ``vertices``."""
    vs = tuple(vertices)
    f = fourier_matrix(d, inverse)
    m = _kron_local(d, vs, {t: f for t in targets})
    return LinearMap(d, vs, vs, m)


def shift_op(h: MultiIndex) -> LinearMap:
    """u(h)|h'> = |h' + h>."""
    x = np.eye(h.d, dtype=np.complex128)
    local = {v: np.roll(x, g, axis=0) for v, g in zip(h.vertices, h.digits)}
    return LinearMap(h.d, h.vertices, h.vertices, _kron_local(h.d, h.vertices, local))


def multiplier_op(h: MultiIndex) -> LinearMap:
    """Diagonal chi(h|h') on |h'>."""
    g = np.arange(h.d)
    local = {v: np.diag(np.exp(2j * np.pi * (hv * g % h.d) / h.d))
             for v, hv in zip(h.vertices, h.digits)}
    return LinearMap(h.d, h.vertices, h.vertices, _kron_local(h.d, h.vertices, local))


def _merge_order(a: Sequence[int], b: Sequence[int], order: Sequence[int] | None):
    if set(a) & set(b):
        raise ValueError(f"vertex sets overlap: {sorted(set(a) & set(b))}")
    full = tuple(sorted(set(a) | set(b))) if order is None else tuple(order)
    if sorted(full) != sorted(set(a) | set(b)):
        raise ValueError("order must list exactly the union of the vertex sets")
    return full


def embed_w_map(domain: Sequence[int], K: Sequence[int], d: int,
                order: Sequence[int] | None = None) -> LinearMap:
    """Isometry w_K: psi on ``domain`` -> |0_K> (x) psi on domain u K."""
    domain = tuple(domain)
    full = _merge_order(domain, K, order)
    rows = basis_digits(len(domain), d)
    pos = [full.index(v) for v in domain]
    target = np.zeros((rows.shape[0], len(full)), dtype=np.int64)
    target[:, pos] = rows
    idx = target @ (d ** np.arange(len(full) - 1, -1, -1, dtype=np.int64))
    m = np.zeros((d ** len(full), d ** len(domain)), dtype=np.complex128)
    m[idx, np.arange(rows.shape[0])] = 1.0
    return LinearMap(d, domain, full, m)


def embed_w(state: StateVector, K: Sequence[int],
            order: Sequence[int] | None = None) -> StateVector:
    return embed_w_map(state.vertices, K, state.d, order) @ state


def postselect(state: StateVector, K: Sequence[int],
               h: MultiIndex | Sequence[int]) -> tuple[StateVector, float]:
    """Apply <h|_K (x) 1; returns the unnormalized remainder and its weight."""
    if not isinstance(h, MultiIndex):
        h = MultiIndex(tuple(K), tuple(h), state.d)
    elif h.vertices != tuple(K):
        raise ValueError(f"outcome keyed by {h.vertices}, expected {tuple(K)}")
    if h.d != state.d:
        raise ValueError("modulus mismatch")
    missing = set(h.vertices) - set(state.vertices)
    if missing:
        raise ValueError(f"vertices {sorted(missing)} not in the state")
    n = len(state.vertices)
    t = state.amplitudes.reshape((state.d,) * n) if n else state.amplitudes.reshape(())
    index = [slice(None)] * n
    for v, g in zip(h.vertices, h.digits):
        index[state.vertices.index(v)] = g
    rest = tuple(v for v in state.vertices if v not in set(h.vertices))
    amps = np.array(t[tuple(index)], dtype=np.complex128).reshape(-1)
    return StateVector(state.d, rest, amps), float(np.vdot(amps, amps).real)
