"""Entanglement versus mixedness for two coupled qubits under phase damping.

The library evaluates the closed-form dephasing family and its full measure
set (linear entropy, negativity, concurrence, entanglement of formation,
Uhlmann fidelity, Bures distance, relative entropy), distance-based
entanglement measures against mixed, maximally mixed and pure references,
a numerically minimized closest-separable-state distance, and an exact
qubits-plus-reservoir simulation that validates every closed form.
"""

from . import channel, matcore, measures, oracle, refsearch, states
from .channel import ChannelParams, DecoherenceFactor, apply_channel, decoherence_factor, evolve, kraus_ops
from .kernels import BACKEND as KERNEL_BACKEND
from .measures import (
    MeasureRecord,
    bures_distance,
    concurrence_family,
    concurrence_wootters,
    eof,
    linear_entropy,
    negativity,
    relative_entropy_exact,
    relative_entropy_linearized,
    uhlmann_fidelity,
)
from .refsearch import CssResult, OptimizerConfig, closest_separable_bures
from .states import FamilyParams, TwoQubitState, initial_pure, maximally_mixed, mixed_reference, validate

__version__ = "0.1.0"

__all__ = [
    "ChannelParams",
    "CssResult",
    "DecoherenceFactor",
    "FamilyParams",
    "KERNEL_BACKEND",
    "MeasureRecord",
    "OptimizerConfig",
    "TwoQubitState",
    "apply_channel",
    "bures_distance",
    "channel",
    "closest_separable_bures",
    "concurrence_family",
    "concurrence_wootters",
    "decoherence_factor",
    "eof",
    "evolve",
    "initial_pure",
    "kraus_ops",
    "linear_entropy",
    "matcore",
    "maximally_mixed",
    "measures",
    "mixed_reference",
    "negativity",
    "oracle",
    "refsearch",
    "relative_entropy_exact",
    "relative_entropy_linearized",
    "states",
    "uhlmann_fidelity",
    "validate",
]
