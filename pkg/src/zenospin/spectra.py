"""Eigenmode spectra of the generators and slow/fast mode bookkeeping.

Each eigenvalue of a generator is written -lambda + i*Omega with decay rate
lambda >= 0 and mixing frequency Omega. Modes whose decay rate stays below
the Larmor frequency are "slow"; their count drives the low-field magnetic
sensitivity.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import InvalidScanError, InvalidThresholdError, NumericalError
from .liouville import Superoperator, build_liouvillian
from .magnetics import SpinSystem

# Decay rates this close to zero (or to the threshold) are treated as exact.
LAMBDA_CLAMP = 1e-9


@dataclass(frozen=True)
class Eigenmode:
    """One eigenvalue -lambda + i*Omega with its right eigenvector."""

    decay_rate: float
    mixing_frequency: float
    rvec: np.ndarray


@dataclass(frozen=True)
class EigenmodeSet:
    """All n = N^2 eigenmodes of a generator, sorted by (lambda, Omega).

    `values` holds the raw complex eigenvalues; `decay_rates` is -Re(values)
    clamped to 0 within 1e-9, and `mixing_frequencies` is Im(values).
    `vectors` holds the right eigenvectors as columns in matching order.
    """

    system: SpinSystem
    kind: str
    values: np.ndarray
    vectors: np.ndarray
    decay_rates: np.ndarray
    mixing_frequencies: np.ndarray

    @property
    def n(self) -> int:
        return len(self.values)

    def mode(self, index: int) -> Eigenmode:
        return Eigenmode(
            decay_rate=self.decay_rates[index],
            mixing_frequency=self.mixing_frequencies[index],
            rvec=self.vectors[:, index],
        )

    def __iter__(self):
        return (self.mode(i) for i in range(self.n))


def clamp_decay_rates(values):
    """Decay rates lambda = -Re(value), snapping |lambda| <= 1e-9 to zero."""
    lam = -np.real(values)
    lam = np.where(np.abs(lam) <= LAMBDA_CLAMP, 0.0, lam)
    return lam


def eigenmodes(superop: Superoperator) -> EigenmodeSet:
    """Full right eigendecomposition of a generator, sorted ascending.

    Sort key is (decay rate, mixing frequency); ties keep LAPACK order.
    """
    try:
        values, vectors = scipy.linalg.eig(superop.matrix)
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(
            f"eigendecomposition failed for {superop.kind} generator of "
            f"{superop.system}: {exc}"
        ) from exc
    if not np.all(np.isfinite(values)):
        raise NumericalError(
            f"eigensolver returned non-finite values for {superop.system}"
        )
    lam = clamp_decay_rates(values)
    omega = np.imag(values)
    order = np.lexsort((omega, lam))
    return EigenmodeSet(
        system=superop.system,
        kind=superop.kind,
        values=values[order],
        vectors=vectors[:, order],
        decay_rates=lam[order],
        mixing_frequencies=omega[order],
    )


@dataclass(frozen=True)
class ModeClassification:
    """Counts of slow (lambda < threshold) and fast modes."""

    n_slow: int
    n_fast: int
    threshold: float

    @property
    def n(self) -> int:
        return self.n_slow + self.n_fast

    @property
    def slow_fraction(self) -> float:
        return self.n_slow / self.n


def classify_modes(modes: EigenmodeSet, omega: float) -> ModeClassification:
    """Split modes at the lambda = omega line.

    Slow means lambda < omega strictly, except that rates within 1e-9 of the
    threshold count as slow (the clamp tolerance, applied symmetrically).
    """
    if omega <= 0:
        raise InvalidThresholdError(f"threshold must be > 0, got {omega}")
    n_slow = int(np.count_nonzero(modes.decay_rates <= omega + LAMBDA_CLAMP))
    return ModeClassification(
        n_slow=n_slow, n_fast=modes.n - n_slow, threshold=omega
    )


@dataclass(frozen=True)
class BranchPoint:
    """Spectrum summary at one recombination rate of a branch scan."""

    kS: float
    decay_rates: np.ndarray
    mixing_frequencies: np.ndarray
    n_slow: int


def _scan_map(worker, items, threads):
    if threads <= 1 or len(items) <= 1:
        return [worker(item) for item in items]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, items))


def branch_scan(system: SpinSystem, ks_values, kind: str,
                kT_ratio: float = 0.2, threads: int = 1):
    """Eigenmode spectra over a grid of singlet rates with kT = ratio * kS.

    Returns one BranchPoint per grid value, in grid order; rate/frequency
    arrays are in the (lambda, Omega)-sorted mode order. The template's
    omega is the slow/fast threshold at every point.
    """
    ks_values = np.asarray(ks_values, dtype=float)
    if ks_values.size == 0:
        raise InvalidScanError("kS grid is empty")
    if np.any(ks_values < 0):
        raise InvalidScanError("kS grid must be non-negative")
    if np.any(np.diff(ks_values) <= 0):
        raise InvalidScanError("kS grid must be strictly increasing")

    def point(ks):
        modes = eigenmodes(
            build_liouvillian(
                system.replace(kS=ks, kT=kT_ratio * ks), kind
            )
        )
        n_slow = classify_modes(modes, system.omega).n_slow
        return BranchPoint(
            kS=ks,
            decay_rates=modes.decay_rates,
            mixing_frequencies=modes.mixing_frequencies,
            n_slow=n_slow,
        )

    return _scan_map(point, list(ks_values), threads)
