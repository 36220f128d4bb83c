"""Magnetic Hamiltonian of the radical pair and its eigensystem.

The Hamiltonian combines an electron Zeeman term along z with isotropic
contact hyperfine couplings, electron j to nucleus j:

    H = omega * (s1z + s2z) + a1 * I1.s1 + a2 * I2.s2

All frequencies and rates are angular frequencies in 1/us with hbar = 1.
"""

from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidFieldError, NonHermitianError, ShapeError
from .spin_ops import CompositeSpace, check_half_integer, embed, spin_operators

# Electron gyromagnetic ratio: 2.8 MHz per gauss, read directly as 1/us per G.
LARMOR_PER_GAUSS = 2.8

EIG_RTOL = 1e-10


@dataclass(frozen=True)
class SpinSystem:
    """Physical scenario: two electrons, two nuclei, field and measurement rates.

    I1, I2   nuclear spin quantum numbers (half-integers)
    a1, a2   isotropic hyperfine couplings, 1/us (sign allowed)
    omega    electron Larmor frequency, 1/us
    kS, kT   singlet / triplet measurement rates, 1/us
    """

    I1: float
    I2: float
    a1: float
    a2: float
    omega: float
    kS: float
    kT: float

    def __post_init__(self):
        object.__setattr__(self, "I1", check_half_integer(self.I1))
        object.__setattr__(self, "I2", check_half_integer(self.I2))
        if self.omega < 0:
            raise InvalidFieldError(f"omega must be >= 0, got {self.omega}")
        if self.kS < 0 or self.kT < 0:
            raise ValueError(f"rates must be >= 0, got kS={self.kS}, kT={self.kT}")

    @property
    def space(self) -> CompositeSpace:
        return CompositeSpace.for_nuclear_spins(self.I1, self.I2)

    @property
    def dim(self) -> int:
        """Hilbert-space dimension N = 4(2*I1+1)(2*I2+1)."""
        return self.space.dim

    def replace(self, **changes) -> "SpinSystem":
        return replace(self, **changes)


def larmor_frequency(b_gauss: float) -> float:
    """Electron Larmor angular frequency in 1/us for a field in gauss."""
    if b_gauss < 0:
        raise InvalidFieldError(f"magnetic field must be >= 0, got {b_gauss} G")
    return LARMOR_PER_GAUSS * b_gauss


def build_hamiltonian(system: SpinSystem):
    """Dense Hermitian N x N matrix of the Zeeman + hyperfine Hamiltonian."""
    space = system.space
    sx, sy, sz = spin_operators(0.5)
    h = system.omega * (
        embed(sz, space.ELECTRON_1, space) + embed(sz, space.ELECTRON_2, space)
    )
    pairs = (
        (system.a1, space.ELECTRON_1, space.NUCLEUS_1),
        (system.a2, space.ELECTRON_2, space.NUCLEUS_2),
    )
    for coupling, e_slot, n_slot in pairs:
        if coupling == 0.0:
            continue
        nx, ny, nz = spin_operators(space.factor_spin(n_slot))
        for e_op, n_op in ((sx, nx), (sy, ny), (sz, nz)):
            h += coupling * (embed(e_op, e_slot, space) @ embed(n_op, n_slot, space))
    return h


def total_fz(space: CompositeSpace):
    """Total z angular momentum s1z + s2z + I1z + I2z (commutes with H)."""
    fz = np.zeros((space.dim, space.dim), dtype=complex)
    for slot in range(4):
        fz += embed(spin_operators(space.factor_spin(slot))[2], slot, space)
    return fz


@dataclass(frozen=True)
class HamiltonianEigensystem:
    """Real spectrum (ascending) and orthonormal eigenvector columns."""

    energies: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.energies)


def hamiltonian_eigensystem(h) -> HamiltonianEigensystem:
    """Diagonalize a Hermitian matrix; raises NonHermitianError otherwise."""
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {h.shape}")
    scale = max(np.abs(h).max(), 1.0)
    if np.abs(h - h.conj().T).max() > EIG_RTOL * scale:
        raise NonHermitianError("matrix is not Hermitian within 1e-10 relative")
    energies, vectors = np.linalg.eigh(h)
    return HamiltonianEigensystem(energies=energies, vectors=vectors)


def projector_matrix_elements(projector, eig: HamiltonianEigensystem):
    """Projector in the Hamiltonian eigenbasis: q = V^dag Q V.

    q inherits Hermiticity and idempotency, so its spectrum is exactly {0, 1}.
    """
    projector = np.asarray(projector, dtype=complex)
    if projector.shape != eig.vectors.shape:
        raise ShapeError(
            f"projector {projector.shape} does not match eigenbasis "
            f"{eig.vectors.shape}"
        )
    return eig.vectors.conj().T @ projector @ eig.vectors
