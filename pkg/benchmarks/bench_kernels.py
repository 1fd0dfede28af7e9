"""Time the numba and numpy gate kernels on a cluster-state circuit.

Both backends run the same shift-form circuit on the same register; the
first numba call is made once beforehand so compilation is not timed.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qdnet import kernels
from qdnet import statevec as sv
from qdnet.graph import random_graph
from qdnet.synth import synth_cluster_shift_form


def time_backend(circuit, psi, backend, repeats: int) -> tuple[float, np.ndarray]:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        out = sv.run_batch(circuit, psi, backend)
        best = min(best, time.perf_counter() - start)
    return best, out


def main() -> None:
    parser = argparse.ArgumentParser(description="Benchmark qudit gate kernels")
    parser.add_argument("--d", type=int, default=3)
    parser.add_argument("--v", type=int, default=11)
    parser.add_argument("--p", type=float, default=0.5, help="edge probability")
    parser.add_argument("--batch", type=int, default=1, help="state columns per run")
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    graph = random_graph(rng, args.v, args.d, p=args.p)
    circuit = synth_cluster_shift_form(graph)
    dim = args.d ** args.v
    psi = np.zeros((dim, args.batch), dtype=np.complex128)
    psi[0] = 1.0

    sv.run_batch(circuit, psi[:, :1].copy(), kernels.numba_kernels)

    t_np, out_np = time_backend(circuit, psi, kernels.numpy_kernels, args.repeats)
    t_nb, out_nb = time_backend(circuit, psi, kernels.numba_kernels, args.repeats)
    dev = float(np.max(np.abs(out_np - out_nb)))

    print("bench_kernels")
    print(f"d={args.d} v={args.v} dim={dim} batch={args.batch} gates={len(circuit)}")
    print(f"numpy_sec={t_np:.6f}")
    print(f"numba_sec={t_nb:.6f}")
    print(f"speedup={t_np / max(t_nb, 1e-12):.2f}")
    print(f"max_backend_dev={dev:.3e}")


if __name__ == "__main__":
    main()
