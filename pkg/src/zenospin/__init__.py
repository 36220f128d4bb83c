"""Spin dynamics of radical-ion-pair recombination as a continuous measurement.

The library builds two-electron/two-nucleus spin Hamiltonians, the quantum
(double-commutator) and classical (anticommutator) evolution generators,
their eigenvalue spectra, and the slow-mode statistics behind low-field
magnetic sensitivity and deuteration effects.
"""

from .dynamics import (
    ExpansionTrajectory,
    ModeExpansion,
    Trajectory,
    evolve_expansion,
    evolve_ode,
    expand_observable,
    initial_singlet_state,
)
from .liouville import (
    CLASSICAL,
    KINDS,
    QUANTUM,
    Superoperator,
    build_classical_liouvillian,
    build_liouvillian,
    build_quantum_liouvillian,
    devectorize,
    vectorize,
)
from .magnetics import (
    LARMOR_PER_GAUSS,
    HamiltonianEigensystem,
    SpinSystem,
    build_hamiltonian,
    hamiltonian_eigensystem,
    larmor_frequency,
    projector_matrix_elements,
    total_fz,
)
from .sensitivity import (
    DEUTERIUM_COUPLING_SCALE,
    DEUTERIUM_SPIN,
    PAIR_NAMES,
    DeuterationStudy,
    IsotopeSubstitution,
    ScanResult,
    deuteration_study,
    field_scan,
    substitute_isotope,
    yield_drop_estimate,
)
from .spectra import (
    BranchPoint,
    Eigenmode,
    EigenmodeSet,
    ModeClassification,
    branch_scan,
    classify_modes,
    eigenmodes,
)
from .spin_ops import (
    CompositeSpace,
    SpinMultiplet,
    electron_projectors,
    embed,
    multiplicity,
    singlet_projector,
    spin_operators,
)

__version__ = "0.1.0"

__all__ = [
    "CLASSICAL",
    "DEUTERIUM_COUPLING_SCALE",
    "DEUTERIUM_SPIN",
    "KINDS",
    "LARMOR_PER_GAUSS",
    "PAIR_NAMES",
    "QUANTUM",
    "BranchPoint",
    "CompositeSpace",
    "DeuterationStudy",
    "Eigenmode",
    "EigenmodeSet",
    "ExpansionTrajectory",
    "HamiltonianEigensystem",
    "IsotopeSubstitution",
    "ModeClassification",
    "ModeExpansion",
    "ScanResult",
    "SpinMultiplet",
    "SpinSystem",
    "Superoperator",
    "Trajectory",
    "branch_scan",
    "build_classical_liouvillian",
    "build_hamiltonian",
    "build_liouvillian",
    "build_quantum_liouvillian",
    "classify_modes",
    "deuteration_study",
    "devectorize",
    "eigenmodes",
    "electron_projectors",
    "embed",
    "evolve_expansion",
    "evolve_ode",
    "expand_observable",
    "field_scan",
    "hamiltonian_eigensystem",
    "initial_singlet_state",
    "larmor_frequency",
    "multiplicity",
    "projector_matrix_elements",
    "singlet_projector",
    "spin_operators",
    "substitute_isotope",
    "total_fz",
    "vectorize",
    "yield_drop_estimate",
]
