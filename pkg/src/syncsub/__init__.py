"""Synchronization subspaces for bipartite quantum clock systems."""

from .opcore import (
    NumericalError,
    Spectrum,
    Subspace,
    as_complex_matrix,
    commutator,
    evolve,
    hermitian_eig,
    null_space,
    operator_norm,
    projector,
    tensor_product,
)
from .clocks import (
    BlockStructure,
    ClockObservable,
    CompatibilityVerdict,
    block_structure,
    classify_compatibility,
    clock_from_hamiltonian,
    compatibility_residual,
    make_clock,
    random_compatible,
)
from .sync import (
    DriftReport,
    SyncOperatorBundle,
    SyncSystem,
    drift_trace,
    local_system,
    make_system,
    preservation_residual,
    sample_kernel_state,
    stability_window,
    sync_bundle,
    sync_operator,
)
from .grouprep import (
    CharacterTable,
    ContainmentReport,
    FiniteGroup,
    HsyncVerdict,
    IsotypicDecomposition,
    Representation,
    SchurReport,
    builtin_group,
    commutant_dimension,
    diagonal_isotypic_subspace,
    hsync_membership,
    isotypic_projectors,
    make_group,
    make_representation,
    multiplicities,
    observable_from_class_function,
    random_equivariant_observable,
    regular_representation,
    representation_from_generators,
    schur_scalars,
    tensor_representation,
    trivial_representation,
    validate_representation,
    verify_kernel_containment,
)

__version__ = "0.1.0"
