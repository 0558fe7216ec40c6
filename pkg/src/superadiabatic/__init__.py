"""Superadiabatic iterations and counterdiabatic shortcuts for two-level systems."""

from .control import ControlProtocol, static_protocol
from .engine import (
    FrameTrajectory,
    IterationStack,
    basis_equivalence_check,
    build_frame,
    coupling,
    iterate,
    lift_frame,
    parallel_phase,
)
from .pauli import (
    CartesianTriple,
    SphericalTriple,
    compose,
    decompose,
    eigensystem,
    frame_rotation,
    from_spherical,
    to_spherical,
)
from .propagator import (
    NormDriftWarning,
    PopulationTrace,
    StateTrajectory,
    adiabatic_overlap,
    populations,
    propagate,
    propagate_modified,
    superadiabatic_approximation,
)
from .protocols import (
    FAST_SWEEP,
    SLOW_SWEEP,
    AnalysisReport,
    InvariantAnsatz,
    LZParams,
    adiabaticity_margin,
    edge_commutators,
    feasibility_curves,
    feasibility_onset,
    invariance_residual,
    invariant_matrix,
    invariant_profiles,
    invariant_to_controls,
    landau_zener,
    lz_feasibility,
    shortcut_bc_check,
)
from .sampling import SampledFunction, derivative

__version__ = "0.1.0"
