import warnings

import numpy as np
import pytest

from qdnet import code
from qdnet import statevec as sv
from qdnet.graph import GraphWarning, WeightedGraph, random_graph
from qdnet.synth import PreconditionError

from oracles import basis, graph_code_matrix


def parity_column(d, n):
    return np.array([(-1) ** sum(g) for g in basis(n, d)]) * 2 ** (-n / 2)


@pytest.fixture
def edgeless_code():
    return WeightedGraph.from_edges(2, 2, [], [0])


def test_encoder_oracle_star(star):
    v = code.encoder_oracle(star).matrix
    assert np.max(np.abs(v[:, 0] - 2 ** -1.5)) < 1e-12
    assert np.max(np.abs(v[:, 1] - parity_column(2, 3))) < 1e-12


def test_encoder_oracle_edgeless(edgeless_code):
    v = code.encoder_oracle(edgeless_code).matrix
    assert np.allclose(v[:, 0], np.sqrt(2) * 0.5) and np.allclose(v[:, 1], v[:, 0])


def test_encoder_oracle_matches_bruteforce(rng):
    for d in (2, 3):
        for inputs in ([0], [2], [1, 3]):
            g = random_graph(rng, 4, d, p=0.7, inputs=inputs)
            ref = graph_code_matrix(g.weights.tolist(), d, list(inputs))
            assert np.max(np.abs(code.encoder_oracle(g).matrix - ref)) < 1e-12


def test_encoder_oracle_needs_inputs(triangle):
    with pytest.raises(PreconditionError):
        code.encoder_oracle(triangle)


def test_isometry_check(star, edgeless_code):
    w = sv.embed_w_map((1, 2), (0,), 3)
    assert code.isometry_check(w)[0]
    assert code.isometry_check(code.encoder_oracle(star))[0]
    ok, dev = code.isometry_check(code.encoder_oracle(edgeless_code))
    assert not ok and dev > 0.5


def test_measured_encoding_branch(star):
    psi = code.basis_input(star, [0])
    (b,) = code.measured_encoding(star, psi, mode="branch", outcome=(0,))
    expected = code.encoder_oracle(star).matrix[:, 0] / np.sqrt(2)
    assert np.max(np.abs(b.state.amplitudes - expected)) < 1e-12
    assert abs(b.probability - 0.5) < 1e-12
    assert b.state.vertices == (1, 2, 3)


def test_measured_encoding_all_sums_to_one(rng):
    g = random_graph(rng, 5, 3, p=0.6, inputs=[0, 3])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", GraphWarning)
        branches = code.measured_encoding(g, code.random_state(rng, g.inputs, 3))
    assert len(branches) == 9
    assert abs(sum(b.probability for b in branches) - 1) < 1e-10


def test_measured_encoding_isometric_probabilities(rng, star):
    for _ in range(5):
        psi = code.random_state(rng, star.inputs, 2)
        for b in code.measured_encoding(star, psi):
            assert abs(b.probability - 0.5) < 1e-10


def test_measured_encoding_sample_is_seeded(rng, star):
    psi = code.random_state(rng, star.inputs, 2)
    a = code.measured_encoding(star, psi, mode="sample", seed=7)
    b = code.measured_encoding(star, psi, mode="sample", seed=7)
    assert a[0].outcome == b[0].outcome
    assert np.array_equal(a[0].state.amplitudes, b[0].state.amplitudes)
    outcomes = {code.measured_encoding(star, psi, mode="sample", seed=s)[0].outcome.digits
                for s in range(40)}
    assert outcomes == {(0,), (1,)}


def test_measured_encoding_errors(star):
    bad = sv.StateVector(2, (0,), [1, 1])
    with pytest.raises(ValueError, match="normalized"):
        code.measured_encoding(star, bad)
    with pytest.raises(ValueError):
        code.measured_encoding(star, code.basis_input(star, [0]), mode="branch", outcome=(2,))
    with pytest.raises(ValueError, match="seed"):
        code.measured_encoding(star, code.basis_input(star, [0]), mode="sample")


def test_direct_encoding_star(star):
    out = code.direct_encoding(star, code.basis_input(star, [1]))
    assert out.vertices == (1, 2, 3)
    assert np.max(np.abs(out.amplitudes - parity_column(2, 3))) < 1e-12


def test_direct_encoding_path():
    for d in (2, 3, 5):
        g = WeightedGraph.from_edges(d, 2, [(0, 1, 1)], [0])
        f = sv.fourier_matrix(d)
        for h in range(d):
            out = code.direct_encoding(g, code.basis_input(g, [h]))
            assert np.max(np.abs(out.amplitudes - f[:, h])) < 1e-12


def _direct_graph(rng, d, n):
    g = random_graph(rng, n + 1, d, p=0.6, inputs=[0])
    w = g.weights.copy()
    w[0, 1] = w[1, 0] = 1
    return WeightedGraph(d, w, (0,))


def test_direct_encoding_matches_oracle(rng):
    for d in (2, 3):
        for _ in range(20):
            g = _direct_graph(rng, d, int(rng.integers(1, 5)))
            v = code.encoder_oracle(g)
            for h in range(d):
                out = code.direct_encoding(g, code.basis_input(g, [h]))
                assert np.max(np.abs(out.amplitudes - v.matrix[:, h])) < 1e-10


def test_channel_C_branches(star):
    c = code.channel_C(star)
    v = code.encoder_oracle(star).matrix
    assert np.allclose(c.branches[(0,)], v / np.sqrt(2))
    assert np.allclose(c.branches[(1,)], v @ np.diag([1, -1]) / np.sqrt(2))
    assert c.completeness_deviation() < 1e-10


def test_channel_C_warns_when_not_isometric(edgeless_code):
    with pytest.warns(GraphWarning, match="not an isometry"):
        c = code.channel_C(edgeless_code)
    assert not c.isometric


def test_channel_pipeline_shapes(rng):
    g = random_graph(rng, 4, 3, p=0.7, inputs=[1])
    p = code.channel_pipeline(g)
    assert set(p.branches) == {(0,), (1,), (2,)}
    assert all(b.shape == (27, 3) for b in p.branches.values())


def test_branch_correction_direction_at_d3(rng):
    """The pipeline's outcome-h branch carries u^(h), not its adjoint."""
    g = WeightedGraph.from_edges(3, 4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)], [0])
    pipe = code.channel_pipeline(g)
    assert code.branch_deviation(code.channel_C(g), pipe) < 1e-10
    assert code.branch_deviation(code.channel_C(g, conjugate=True), pipe) > 0.1
    # the total channel cannot tell the two apart on diagonal inputs but can on coherences
    assert code.channel_deviation(code.channel_C(g), pipe) < 1e-10


def test_pipeline_zero_branch_is_scaled_code(rng):
    for d in (2, 3):
        g = random_graph(rng, 4, d, p=0.7, inputs=[0])
        pipe = code.channel_pipeline(g)
        v = code.encoder_oracle(g).matrix
        assert np.max(np.abs(pipe.branches[(0,)] - v / np.sqrt(d))) < 1e-10


def test_pipeline_matches_measured_encoding(rng):
    g = random_graph(rng, 4, 3, p=0.7, inputs=[0, 2])
    pipe = code.channel_pipeline(g)
    psi = code.random_state(rng, g.inputs, 3)
    for b in code.measured_encoding(g, psi):
        expected = pipe.branches[b.outcome.digits] @ psi.amplitudes
        assert np.max(np.abs(b.state.amplitudes - expected)) < 1e-12


def test_identity_variants():
    for d in (2, 3):
        star = WeightedGraph.from_edges(d, 4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)], [0])
        report = code.verify_encoder_identity(star)
        assert report.deviation < 1e-10
        if d == 2:
            assert report.matching == ("F_X.u.F_X*", "F_X*.u.F_X")
        else:
            assert report.matching == ("F_X.u.F_X*",) and report.swapped_deviation > 0.1


def test_input_block_identity(rng, star):
    assert code.input_block_deviation(star) < 1e-10
    for d in (2, 3, 5):
        for _ in range(5):
            g = _direct_graph(rng, d, int(rng.integers(1, 4)))
            assert code.input_block_deviation(g) < 1e-10


def test_z_operator_is_unitary_and_encodes(rng):
    g = _direct_graph(rng, 3, 3)
    z = code.z_operator(g).matrix
    assert np.max(np.abs(z.conj().T @ z - np.eye(27))) < 1e-10
    zw = code.z_operator(g) @ code.direct_embedding(g)
    assert np.max(np.abs(zw.matrix - code.encoder_oracle(g).matrix)) < 1e-10


def test_reorder_round_trip(rng):
    m = rng.normal(size=(8, 4)) + 0j
    op = sv.LinearMap(2, (3, 5), (0, 1, 2), m)
    back = code.reorder(code.reorder(op, (5, 3), (2, 0, 1)), (3, 5), (0, 1, 2))
    assert np.array_equal(back.matrix, m)


def test_superoperator_convention(rng):
    b = rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2))
    ch = code.ChannelBranches(2, (0,), (1, 2), {(0,): b})
    rho = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    lhs = (code.superoperator(ch) @ rho.reshape(-1)).reshape(4, 4)
    assert np.max(np.abs(lhs - b @ rho @ b.conj().T)) < 1e-12
