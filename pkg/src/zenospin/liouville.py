"""Superoperator matrices generating dR/dt = A R for vectorized densities.

Vectorization stacks columns, so vec(X rho Y) = (Y^T kron X) vec(rho). Two
generators are built from the same Hamiltonian and projectors:

quantum (continuous measurement, double commutator):
    d rho/dt = -i[H, rho] - kS [QS, [QS, rho]] - kT [QT, [QT, rho]]

classical (phenomenological anticommutator decay):
    d rho/dt = -i[H, rho] - kS (QS rho + rho QS) - kT (QT rho + rho QT)

The two differ exactly by the measurement recovery terms +2 k Q rho Q; the
classical generator leaks trace while the quantum one preserves it.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError
from .magnetics import SpinSystem, build_hamiltonian
from .spin_ops import electron_projectors

QUANTUM = "quantum"
CLASSICAL = "classical"
KINDS = (QUANTUM, CLASSICAL)


def vectorize(rho):
    """Column-stack a square matrix into a length-N^2 vector."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {rho.shape}")
    return rho.reshape(-1, order="F")


def devectorize(vec):
    """Inverse of vectorize; the length must be a perfect square."""
    vec = np.asarray(vec)
    if vec.ndim != 1:
        raise ShapeError(f"expected a 1-d vector, got shape {vec.shape}")
    dim = int(round(np.sqrt(vec.size)))
    if dim * dim != vec.size:
        raise ShapeError(f"length {vec.size} is not a perfect square")
    return vec.reshape(dim, dim, order="F")


@dataclass(frozen=True)
class Superoperator:
    """Dense N^2 x N^2 generator together with its provenance."""

    matrix: np.ndarray
    kind: str
    system: SpinSystem

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _commutator_part(h):
    eye = np.eye(h.shape[0])
    return -1j * (np.kron(eye, h) - np.kron(h.T, eye))


def _measurement_part(projector, rate, recovery):
    """Superoperator of -rate (Q rho + rho Q [- 2 Q rho Q])."""
    eye = np.eye(projector.shape[0])
    part = np.kron(eye, projector) + np.kron(projector.T, eye)
    if recovery:
        part = part - 2.0 * np.kron(projector.T, projector)
    return -rate * part


def _build(system: SpinSystem, kind: str) -> Superoperator:
    h = build_hamiltonian(system)
    qs, qt = electron_projectors(system.space)
    recovery = kind == QUANTUM
    a = _commutator_part(h)
    a += _measurement_part(qs, system.kS, recovery)
    a += _measurement_part(qt, system.kT, recovery)
    return Superoperator(matrix=a, kind=kind, system=system)


def build_quantum_liouvillian(system: SpinSystem) -> Superoperator:
    """Trace-preserving generator of the continuous-measurement evolution."""
    return _build(system, QUANTUM)


def build_classical_liouvillian(system: SpinSystem) -> Superoperator:
    """Trace-decaying generator of the phenomenological evolution."""
    return _build(system, CLASSICAL)


def build_liouvillian(system: SpinSystem, kind: str) -> Superoperator:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    return _build(system, kind)
