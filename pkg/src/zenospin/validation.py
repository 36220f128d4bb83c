"""Self-check suite behind the `validate` subcommand.

Every check is a cheap, deterministic invariant of the library on fixed
small systems: operator algebra, generator construction against a direct
right-hand-side evaluation, conservation laws, and agreement between the
eigenmode expansion and the RK4 integrator.
"""

from dataclasses import dataclass

import numpy as np

from .dynamics import evolve_expansion, evolve_ode, expand_observable, \
    initial_singlet_state
from .liouville import CLASSICAL, QUANTUM, build_liouvillian, devectorize, \
    vectorize
from .magnetics import SpinSystem, build_hamiltonian, total_fz
from .spectra import eigenmodes
from .spin_ops import electron_projectors, spin_operators

CHECK_SYSTEM = SpinSystem(I1=0.5, I2=0.5, a1=1.5, a2=3.0, omega=1.0,
                          kS=1.0, kT=0.2)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check(name, worst, bound):
    return CheckResult(name=name, passed=bool(worst < bound),
                       detail=f"worst {worst:.3e} (bound {bound:.0e})")


def _commutators():
    worst = 0.0
    for spin in (0.5, 1.0, 1.5):
        jx, jy, jz = spin_operators(spin)
        for a, b, c in ((jx, jy, jz), (jy, jz, jx), (jz, jx, jy)):
            worst = max(worst, np.abs(a @ b - b @ a - 1j * c).max())
    return _check("spin-operator commutators", worst, 1e-12)


def _projector_algebra():
    space = CHECK_SYSTEM.replace(I2=1.0).space
    qs, qt = electron_projectors(space)
    eye = np.eye(space.dim)
    worst = max(np.abs(qs @ qs - qs).max(), np.abs(qt @ qt - qt).max(),
                np.abs(qs @ qt).max(), np.abs(qs + qt - eye).max(),
                abs(np.trace(qs).real - space.dim / 4))
    return _check("projector algebra", worst, 1e-12)


def _hamiltonian_symmetry():
    h = build_hamiltonian(CHECK_SYSTEM)
    fz = total_fz(CHECK_SYSTEM.space)
    worst = max(np.abs(h - h.conj().T).max(),
                np.abs(h @ fz - fz @ h).max(), abs(np.trace(h)))
    return _check("Hamiltonian hermiticity and Fz symmetry", worst, 1e-10)


def _vectorization():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(3):
        x, rho, y = (rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
                     for _ in range(3))
        direct = vectorize(x @ rho @ y)
        worst = max(worst, np.abs(
            direct - np.kron(y.T, x) @ vectorize(rho)).max())
        worst = max(worst, np.abs(devectorize(vectorize(rho)) - rho).max())
    return _check("column-stacking identities", worst, 1e-12)


def _generator_vs_direct_rhs(kind):
    system = CHECK_SYSTEM
    h = build_hamiltonian(system)
    qs, qt = electron_projectors(system.space)
    rng = np.random.default_rng(13)
    x = rng.normal(size=(system.dim, system.dim)) * (1 + 0j)
    rho = x @ x.conj().T
    rho /= np.trace(rho).real
    expect = -1j * (h @ rho - rho @ h)
    if kind == QUANTUM:
        for k, q in ((system.kS, qs), (system.kT, qt)):
            inner = q @ rho - rho @ q
            expect -= k * (q @ inner - inner @ q)
    else:
        expect -= system.kS * (qs @ rho + rho @ qs)
        expect -= system.kT * (qt @ rho + rho @ qt)
    got = devectorize(build_liouvillian(system, kind).matrix @ vectorize(rho))
    return _check(f"{kind} generator matches direct evaluation",
                  np.abs(got - expect).max(), 1e-10)


def _trace_preservation():
    a = build_liouvillian(CHECK_SYSTEM, QUANTUM).matrix
    left = vectorize(np.eye(CHECK_SYSTEM.dim)).conj() @ a
    return _check("quantum generator preserves trace", np.abs(left).max(),
                  1e-10)


def _conjugation_closure():
    modes = eigenmodes(build_liouvillian(CHECK_SYSTEM, QUANTUM))
    vals = modes.values
    worst = 0.0
    for v in vals[np.abs(vals.imag) > 1e-9][:32]:
        worst = max(worst, np.abs(vals - v.conjugate()).min())
    growing = max(vals.real.max(), 0.0)
    return _check("spectrum closed under conjugation, no growing modes",
                  max(worst, growing), 1e-8)


def _oracle_equivalence():
    rho0 = initial_singlet_state(CHECK_SYSTEM.space)
    times = np.linspace(0.0, 1.0, 11)
    worst = 0.0
    for kind in (QUANTUM, CLASSICAL):
        superop = build_liouvillian(CHECK_SYSTEM, kind)
        traj = evolve_ode(superop, rho0, times)
        signal = evolve_expansion(
            expand_observable(eigenmodes(superop), rho0), times)
        worst = max(worst, np.abs(signal.singlet - traj.singlet).max(),
                    signal.imag_residual.max())
        if kind == QUANTUM:
            worst = max(worst, np.abs(traj.trace - 1.0).max())
    return _check("mode expansion agrees with RK4", worst, 1e-8)


def _classical_trace_decay():
    system = SpinSystem(I1=0.5, I2=0.5, a1=0.0, a2=0.0, omega=0.0,
                        kS=1.7, kT=0.0)
    rho0 = initial_singlet_state(system.space)
    times = np.linspace(0.0, 1.5, 7)
    traj = evolve_ode(build_liouvillian(system, CLASSICAL), rho0, times)
    expect = np.exp(-2 * system.kS * times)
    worst = np.abs(traj.trace / expect - 1.0).max()
    return _check("classical trace decays as exp(-2 kS t)", worst, 1e-6)


def _mode_count():
    n = eigenmodes(build_liouvillian(CHECK_SYSTEM.replace(I2=1.0),
                                     QUANTUM)).n
    ok = n == 576
    return CheckResult(name="mode count n = N^2", passed=ok,
                       detail=f"got {n}, expected 576")


def run_validation():
    """Run every check; returns the list of CheckResults."""
    return [
        _commutators(),
        _projector_algebra(),
        _hamiltonian_symmetry(),
        _vectorization(),
        _generator_vs_direct_rhs(QUANTUM),
        _generator_vs_direct_rhs(CLASSICAL),
        _trace_preservation(),
        _conjugation_closure(),
        _mode_count(),
        _oracle_equivalence(),
        _classical_trace_decay(),
    ]
