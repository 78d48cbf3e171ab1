"""Entanglement entropy and spin squeezing of two atoms in a dispersive cavity."""

from .bipartite import (
    bloch_decompose,
    binary_entropy,
    concurrence_pure,
    density,
    entropy_closed,
    entropy_numeric,
    eof,
    max_entanglement_times,
    mean_spin_mag_closed,
    partial_trace,
    probabilities,
)
from .dynamics import CavityParams, delta0, effective_hamiltonian, evolve, scan_times
from .kernels import BACKEND
from .spin_model import CoherentPrep, coherent_state, collective_ops, dicke_to_product, single_atom_ops
from .squeezing import mean_spin, rotate_to_mean_frame, squeezing_params, squeezing_scan

__version__ = "0.1.0"
