"""Angular-momentum operators on the electron-electron-nucleus-nucleus space.

All operators are dense complex arrays. The composite Hilbert space has a
fixed factor order

    electron 1 (dim 2) x electron 2 (dim 2) x nucleus 1 x nucleus 2

and every embedded operator follows that order, so N = 4(2*I1+1)(2*I2+1).
Within each factor the basis is |I, m> with m descending from +I to -I.
"""

from dataclasses import dataclass

import numpy as np

from .errors import EmbeddingError, InvalidSpinError

# Entries are O(1) and built from exact arithmetic plus square roots, so
# double precision keeps identities tight to ~1e-15; 1e-12 is the contract.
CONSTRUCTION_ATOL = 1e-12


def check_half_integer(spin) -> float:
    """Validate and canonicalize a spin quantum number (0, 1/2, 1, ...)."""
    spin = float(spin)
    if spin < 0 or abs(2 * spin - round(2 * spin)) > 1e-9:
        raise InvalidSpinError(
            f"spin must be a non-negative half-integer, got {spin}"
        )
    return round(2 * spin) / 2


def multiplicity(spin) -> int:
    """Number of magnetic sublevels 2*spin + 1."""
    return int(round(2 * check_half_integer(spin))) + 1


def spin_operators(spin):
    """Build (Jx, Jy, Jz) for a single spin in the descending-m basis.

    Jz = diag(I, I-1, ..., -I) and the ladder elements are
    <I,m+1| J+ |I,m> = sqrt(I(I+1) - m(m+1)), from which
    Jx = (J+ + J-)/2 and Jy = (J+ - J-)/2i.
    """
    spin = check_half_integer(spin)
    dim = int(round(2 * spin)) + 1
    m = spin - np.arange(dim)
    jz = np.diag(m + 0j)
    jplus = np.zeros((dim, dim), dtype=complex)
    for col in range(1, dim):
        jplus[col - 1, col] = np.sqrt(spin * (spin + 1) - m[col] * (m[col] + 1))
    jminus = jplus.conj().T
    jx = (jplus + jminus) / 2
    jy = (jplus - jminus) / 2j
    return jx, jy, jz


@dataclass(frozen=True)
class SpinMultiplet:
    """A single |I, m> multiplet of dimension 2I+1."""

    spin: float

    def __post_init__(self):
        object.__setattr__(self, "spin", check_half_integer(self.spin))

    @property
    def dim(self) -> int:
        return int(round(2 * self.spin)) + 1

    def operators(self):
        return spin_operators(self.spin)


@dataclass(frozen=True)
class CompositeSpace:
    """Tensor product electron-1 x electron-2 x nucleus-1 x nucleus-2."""

    nucleus1: SpinMultiplet
    nucleus2: SpinMultiplet

    ELECTRON_1 = 0
    ELECTRON_2 = 1
    NUCLEUS_1 = 2
    NUCLEUS_2 = 3

    @classmethod
    def for_nuclear_spins(cls, I1, I2) -> "CompositeSpace":
        return cls(SpinMultiplet(I1), SpinMultiplet(I2))

    @property
    def factor_dims(self) -> tuple:
        return (2, 2, self.nucleus1.dim, self.nucleus2.dim)

    @property
    def dim(self) -> int:
        return 4 * self.nucleus1.dim * self.nucleus2.dim

    def factor_spin(self, slot: int) -> float:
        return (0.5, 0.5, self.nucleus1.spin, self.nucleus2.spin)[slot]


def embed(op, slot: int, space: CompositeSpace):
    """Embed a single-factor operator as 1 x ... x op x ... x 1.

    The slot indexes the fixed factor order (0, 1 = electrons; 2, 3 = nuclei).
    """
    dims = space.factor_dims
    if not 0 <= slot < len(dims):
        raise EmbeddingError(f"slot must be 0..3, got {slot}")
    op = np.asarray(op, dtype=complex)
    want = dims[slot]
    if op.shape != (want, want):
        raise EmbeddingError(
            f"operator is {op.shape} but factor {slot} has dim {want}"
        )
    left = int(np.prod(dims[:slot], dtype=np.int64))
    right = int(np.prod(dims[slot + 1:], dtype=np.int64))
    return np.kron(np.eye(left), np.kron(op, np.eye(right)))


def spin_vector(slot: int, space: CompositeSpace):
    """The three embedded components (Jx, Jy, Jz) of the spin at `slot`."""
    ops = spin_operators(space.factor_spin(slot))
    return tuple(embed(op, slot, space) for op in ops)


def electron_spin_vectors(space: CompositeSpace):
    """Embedded (s1x, s1y, s1z) and (s2x, s2y, s2z)."""
    return spin_vector(space.ELECTRON_1, space), spin_vector(space.ELECTRON_2, space)


def singlet_projector(space: CompositeSpace):
    """Projector onto the two-electron singlet, identity on the nuclei.

    Built basis-free as QS = 1/4 - s1.s2; idempotency and trace N/4 pin it
    uniquely.
    """
    s1, s2 = electron_spin_vectors(space)
    dot = sum(a @ b for a, b in zip(s1, s2))
    return 0.25 * np.eye(space.dim) - dot


def electron_projectors(space: CompositeSpace):
    """Singlet and triplet projectors (QS, QT) with QS + QT = 1."""
    qs = singlet_projector(space)
    qt = np.eye(space.dim) - qs
    return qs, qt
