"""Cyclic networks of quantum gates: construction, classification, spectra, dynamics."""

from .linalg import (
    Spectrum,
    apply,
    basis_state,
    check_state,
    check_unitary,
    dense_eigendecomposition,
    haar_unitary,
    matrix_power_direct,
    unitarity_defect,
)
from .gates import (
    ControlDown,
    ControlNot,
    ControlUp,
    CyclicNetwork,
    DiagonalLayer,
    NotGate,
    SingleQubit,
    TwoLevel,
    alternating_pair_network,
    compile_cycle,
    compress_network,
    compress_same_orientation,
    control_down_matrix,
    control_up_matrix,
    diagonal_matrix,
    dumps_network,
    gate_matrix,
    load_network,
    loads_network,
    network_from_json,
    network_to_json,
    save_network,
    two_level_matrix,
    u2_matrix,
    u2_parameters,
)
from .group import (
    U4_PAIR_ORDER,
    GroupClass,
    U4Parameters,
    build_u4,
    classify,
    decompose_u3,
    extract_so3_angles,
    extract_u4_parameters,
    synthesize_so3,
)
from .spectral import (
    AlternatingPairAnalysis,
    CubicCoefficients,
    DegenerateSpectrumError,
    alternating_pair_root,
    alternating_pair_trace,
    alternating_su3_analysis,
    block_form_eigenstates,
    cubic_coefficients,
    real_trace_eigenvalues,
    solve_cubic,
    spectrum_closed_form,
)
from .dynamics import (
    ClosedFormElement,
    CyclePowerTable,
    PerturbationScenario,
    chain_evolve,
    closed_form_amplitude,
    evolve,
    matrix_power_spectral,
    nu1_to_phi,
    perturb,
    perturbed_amplitude_series,
    rotation_pair_spectrum,
    so3_example_closed_form,
)
from .protocols import (
    MemoryRecord,
    PhaseEstimate,
    SensorReading,
    cycle_applications,
    inverse_cycle_operator,
    memory_retrieve,
    memory_store,
    phase_estimation_demo,
    reset_cycle_applications,
    sensor_probability,
    sensor_run,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
