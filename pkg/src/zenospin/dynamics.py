"""State preparation and time propagation of the singlet probability.

Two independent routes compute <QS(t)>: a mode expansion over the generator
eigenbasis,

    <QS(t)> = sum_l A_l exp((-lambda_l + i Omega_l) t),

and a fixed-step RK4 integration of dR/dt = A R. Agreement between the two
is the library's main self-check.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ShapeError
from .liouville import Superoperator, devectorize, vectorize
from .spectra import EigenmodeSet
from .spin_ops import CompositeSpace, electron_projectors, singlet_projector

# Right-eigenvector matrices worse conditioned than this are rejected for
# expansion coefficients; callers should integrate instead.
CONDITION_LIMIT = 1e10

# RK4 step: at most 1e-3 / ||A|| so the local truncation error stays far
# below the 1e-8 equivalence tolerance.
STEP_SCALE = 1e-3


def initial_singlet_state(space: CompositeSpace):
    """Electron singlet with maximally mixed nuclei: rho0 = QS / Tr QS."""
    qs = singlet_projector(space)
    return qs / np.trace(qs).real


@dataclass(frozen=True)
class ModeExpansion:
    """Amplitudes of <QS(t)> over the eigenmodes of one generator.

    well_conditioned is False when the eigenvector matrix was too
    ill-conditioned to trust the linear solve; use the ODE route then.
    """

    decay_rates: np.ndarray
    mixing_frequencies: np.ndarray
    amplitudes: np.ndarray
    condition_number: float
    well_conditioned: bool

    def evaluate(self, times):
        """Complex mode sum at each sample time."""
        times = np.asarray(times, dtype=float)
        exponents = -self.decay_rates + 1j * self.mixing_frequencies
        return np.exp(np.outer(times, exponents)) @ self.amplitudes


def expand_observable(modes: EigenmodeSet, rho0) -> ModeExpansion:
    """Decompose vec(rho0) in the right eigenbasis and contract with vec(QS).

    Solving V c = vec(rho0) avoids forming left eigenvectors explicitly;
    A_l = c_l <vec(QS), v_l> so that sum_l A_l = <QS(0)>.
    """
    rho_vec = vectorize(np.asarray(rho0, dtype=complex))
    if rho_vec.size != modes.n:
        raise ShapeError(
            f"state has {rho_vec.size} components, generator has {modes.n} modes"
        )
    qs_vec = vectorize(electron_projectors(modes.system.space)[0])
    cond = float(np.abs(np.linalg.cond(modes.vectors, p=1)))
    well_conditioned = bool(np.isfinite(cond) and cond <= CONDITION_LIMIT)
    if not well_conditioned:
        coeffs = np.full(modes.n, np.nan, dtype=complex)
    else:
        coeffs = np.linalg.solve(modes.vectors, rho_vec)
    amplitudes = coeffs * (qs_vec.conj() @ modes.vectors)
    return ModeExpansion(
        decay_rates=modes.decay_rates,
        mixing_frequencies=modes.mixing_frequencies,
        amplitudes=amplitudes,
        condition_number=float(cond),
        well_conditioned=well_conditioned,
    )


@dataclass(frozen=True)
class Trajectory:
    """Sampled singlet/triplet probabilities and the density-matrix trace."""

    times: np.ndarray
    singlet: np.ndarray
    triplet: np.ndarray
    trace: np.ndarray
    states: list | None = None


@dataclass(frozen=True)
class ExpansionTrajectory:
    """<QS(t)> from the mode sum plus the leftover imaginary part."""

    times: np.ndarray
    singlet: np.ndarray
    imag_residual: np.ndarray


def _norm_bound(matrix):
    """Cheap upper bound on the spectral norm: sqrt(norm1 * norminf)."""
    abs_m = np.abs(matrix)
    return float(np.sqrt(abs_m.sum(axis=0).max() * abs_m.sum(axis=1).max()))


def evolve_ode(superop: Superoperator, rho0, times, keep_states: bool = False):
    """Propagate dR/dt = A R with fixed-step RK4 and sample observables.

    The grid must be non-decreasing and start at t >= 0; integration always
    starts from rho0 at t = 0. Step size is capped at min(1e-3/||A||, grid
    spacing).
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ShapeError("time grid must be a non-empty 1-d array")
    if times[0] < 0 or np.any(np.diff(times) < 0):
        raise ValueError("time grid must be non-decreasing and start at t >= 0")

    a = superop.matrix
    rho0 = np.asarray(rho0, dtype=complex)
    r = vectorize(rho0)
    if r.size != superop.dim:
        raise ShapeError(
            f"state has {r.size} components, generator is {superop.dim}-dim"
        )

    qs, qt = electron_projectors(superop.system.space)
    qs_vec = vectorize(qs).conj()
    qt_vec = vectorize(qt).conj()
    id_vec = vectorize(np.eye(rho0.shape[0])).conj()

    gaps = np.diff(times)
    positive_gaps = gaps[gaps > 0]
    h_max = STEP_SCALE / max(_norm_bound(a), 1e-30)
    if positive_gaps.size:
        h_max = min(h_max, positive_gaps.min())
    if h_max <= 0 or not np.isfinite(h_max):
        raise NumericalError(f"RK4 step underflow (h = {h_max})")

    singlet = np.empty(times.size)
    triplet = np.empty(times.size)
    trace = np.empty(times.size)
    states = [] if keep_states else None

    def record(i, vec):
        singlet[i] = (qs_vec @ vec).real
        triplet[i] = (qt_vec @ vec).real
        trace[i] = (id_vec @ vec).real
        if keep_states:
            states.append(devectorize(vec.copy()))

    t = 0.0
    for i, target in enumerate(times):
        span = target - t
        if span > 0:
            steps = max(1, int(np.ceil(span / h_max)))
            h = span / steps
            for _ in range(steps):
                k1 = a @ r
                k2 = a @ (r + 0.5 * h * k1)
                k3 = a @ (r + 0.5 * h * k2)
                k4 = a @ (r + h * k3)
                r = r + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            t = target
        record(i, r)

    if not (np.all(np.isfinite(singlet)) and np.all(np.isfinite(trace))):
        raise NumericalError("RK4 produced non-finite observables")
    return Trajectory(
        times=times, singlet=singlet, triplet=triplet, trace=trace, states=states
    )


def evolve_expansion(expansion: ModeExpansion, times) -> ExpansionTrajectory:
    """Evaluate the mode sum; the imaginary residue is reported, not dropped."""
    times = np.asarray(times, dtype=float)
    values = expansion.evaluate(times)
    return ExpansionTrajectory(
        times=times,
        singlet=values.real,
        imag_residual=np.abs(values.imag),
    )
