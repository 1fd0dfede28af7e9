"""Logical networks for qudit cluster states and graph codes."""

from .circuit import (Circuit, CPhase, CShift, Fourier, FourierInv, Gate, emit_netlist,
                      gate_count, invert, lower_phases, parse_netlist)
from .graph import (WeightedGraph, canonicalize, export_dot, load_graph, output_subgraph,
                    parse_graph, serialize_graph, strip_input_edges)
from .group import Digit, MultiIndex, add_mod, chi, chi_tuple, enumerate_group
from .statevec import (LinearMap, StateVector, circuit_unitary, cluster_oracle,
                       ground_state, run)
from .synth import (PreconditionError, synth_cluster_phase_form, synth_cluster_shift_form,
                    synth_direct_encoder, synth_encoder_network)

__version__ = "0.1.0"
