import numpy as np
import pytest

from zenospin import (
    CLASSICAL, QUANTUM, EigenmodeSet, SpinSystem, build_liouvillian,
    eigenmodes, evolve_expansion, evolve_ode, expand_observable,
    initial_singlet_state, vectorize,
)
from zenospin.errors import ShapeError
from conftest import BRANCH_SYSTEM


def test_initial_state_properties():
    system = BRANCH_SYSTEM
    rho0 = initial_singlet_state(system.space)
    from zenospin import electron_projectors

    qs, qt = electron_projectors(system.space)
    assert abs(np.trace(rho0).real - 1.0) < 1e-12
    assert abs(np.trace(rho0 @ qs).real - 1.0) < 1e-12
    assert abs(np.trace(rho0 @ qt).real) < 1e-12
    assert np.linalg.eigvalsh(rho0).min() > -1e-14
    # purity of pure electron pair times maximally mixed nuclei
    assert abs(np.trace(rho0 @ rho0).real - 4 / system.dim) < 1e-12


def test_initial_state_no_nuclei_is_pure():
    from zenospin import CompositeSpace

    rho0 = initial_singlet_state(CompositeSpace.for_nuclear_spins(0.0, 0.0))
    assert abs(np.trace(rho0 @ rho0).real - 1.0) < 1e-12


@pytest.mark.parametrize("kind", [QUANTUM, CLASSICAL])
def test_expansion_sums_to_initial_singlet(kind):
    modes = eigenmodes(build_liouvillian(BRANCH_SYSTEM, kind))
    expansion = expand_observable(modes, initial_singlet_state(
        BRANCH_SYSTEM.space))
    assert expansion.well_conditioned
    total = expansion.amplitudes.sum()
    assert abs(total - 1.0) < 1e-9


@pytest.mark.parametrize("kind", [QUANTUM, CLASSICAL])
def test_expansion_matches_ode(kind):
    superop = build_liouvillian(BRANCH_SYSTEM, kind)
    rho0 = initial_singlet_state(BRANCH_SYSTEM.space)
    times = np.linspace(0.0, 2.0, 41)
    traj = evolve_ode(superop, rho0, times)
    signal = evolve_expansion(expand_observable(eigenmodes(superop), rho0),
                              times)
    assert np.abs(signal.singlet - traj.singlet).max() < 1e-8
    assert signal.imag_residual.max() < 1e-8


def test_quantum_trajectory_invariants():
    superop = build_liouvillian(BRANCH_SYSTEM, QUANTUM)
    rho0 = initial_singlet_state(BRANCH_SYSTEM.space)
    times = np.linspace(0.0, 3.0, 16)
    traj = evolve_ode(superop, rho0, times, keep_states=True)
    np.testing.assert_allclose(traj.trace, 1.0, atol=1e-9)
    np.testing.assert_allclose(traj.singlet + traj.triplet, 1.0, atol=1e-9)
    purities = []
    for state in traj.states:
        assert np.abs(state - state.conj().T).max() < 1e-9
        assert np.linalg.eigvalsh(state).min() > -1e-9
        purities.append(np.trace(state @ state).real)
    assert all(b <= a + 1e-9 for a, b in zip(purities, purities[1:]))


def test_classical_trace_monotone():
    superop = build_liouvillian(BRANCH_SYSTEM, CLASSICAL)
    rho0 = initial_singlet_state(BRANCH_SYSTEM.space)
    traj = evolve_ode(superop, rho0, np.linspace(0.0, 3.0, 16))
    assert np.all(np.diff(traj.trace) <= 1e-12)


def test_classical_pure_singlet_trace_decay():
    # with H = 0 and kT = 0 a singlet state keeps its shape and the trace
    # decays as exp(-2 kS t)
    system = SpinSystem(I1=0.5, I2=0.5, a1=0.0, a2=0.0, omega=0.0,
                        kS=1.7, kT=0.0)
    superop = build_liouvillian(system, CLASSICAL)
    rho0 = initial_singlet_state(system.space)
    times = np.linspace(0.0, 2.0, 21)
    traj = evolve_ode(superop, rho0, times)
    expect = np.exp(-2 * system.kS * times)
    np.testing.assert_allclose(traj.trace, expect, rtol=1e-6)


@pytest.mark.parametrize("kind", [QUANTUM, CLASSICAL])
def test_unitary_limit_preserves_purity(kind):
    system = BRANCH_SYSTEM.replace(kS=0.0, kT=0.0)
    superop = build_liouvillian(system, kind)
    rho0 = initial_singlet_state(system.space)
    traj = evolve_ode(superop, rho0, np.linspace(0.0, 2.0, 9),
                      keep_states=True)
    purity0 = np.trace(rho0 @ rho0).real
    for state in traj.states:
        assert abs(np.trace(state @ state).real - purity0) < 1e-9


def test_singlet_triplet_oscillation():
    # one contact-coupled spin-1/2 nucleus, no field, no measurement:
    # <QS(t)> = 5/8 + 3 cos(a t)/8, undamped (frozen from the RK4 oracle)
    a = 2.0
    system = SpinSystem(I1=0.5, I2=0.5, a1=a, a2=0.0, omega=0.0,
                        kS=0.0, kT=0.0)
    superop = build_liouvillian(system, QUANTUM)
    rho0 = initial_singlet_state(system.space)
    times = np.linspace(0.0, 4 * np.pi / a, 81)
    traj = evolve_ode(superop, rho0, times)
    np.testing.assert_allclose(traj.singlet, 0.625 + 0.375 * np.cos(a * times),
                               atol=1e-8)
    modes = eigenmodes(superop)
    expansion = expand_observable(modes, rho0)
    weighted = np.abs(expansion.amplitudes) > 1e-12
    assert expansion.decay_rates[weighted].max() == 0.0
    signal = evolve_expansion(expansion, times)
    assert np.abs(signal.singlet - traj.singlet).max() < 1e-8


def test_fast_modes_decay_leaving_slow_terms():
    system = BRANCH_SYSTEM.replace(kS=5.0, kT=1.0)
    modes = eigenmodes(build_liouvillian(system, QUANTUM))
    expansion = expand_observable(modes, initial_singlet_state(system.space))
    slow = modes.decay_rates < system.omega
    fast_rates = modes.decay_rates[~slow]
    t_late = 30.0 / fast_rates.min()
    full = expansion.evaluate([t_late])[0]
    amp = expansion.amplitudes[slow]
    exponents = (-modes.decay_rates[slow]
                 + 1j * modes.mixing_frequencies[slow])
    truncated = (np.exp(exponents * t_late) * amp).sum()
    assert abs(full - truncated) < 1e-6


def test_single_term_expansion_evaluates():
    from zenospin import ModeExpansion

    expansion = ModeExpansion(
        decay_rates=np.array([0.5]),
        mixing_frequencies=np.array([2.0]),
        amplitudes=np.array([1.0 + 0j]),
        condition_number=1.0,
        well_conditioned=True,
    )
    value = expansion.evaluate([0.0])[0]
    assert value == pytest.approx(1.0)
    signal = evolve_expansion(expansion, [0.0, 1.0])
    assert signal.singlet[0] == pytest.approx(1.0)
    assert signal.singlet[1] == pytest.approx(np.exp(-0.5) * np.cos(2.0))


def test_zero_generator_constant_trajectory():
    system = SpinSystem(I1=0.5, I2=0.5, a1=0.0, a2=0.0, omega=0.0,
                        kS=0.0, kT=0.0)
    superop = build_liouvillian(system, QUANTUM)
    rho0 = initial_singlet_state(system.space)
    traj = evolve_ode(superop, rho0, np.linspace(0.0, 5.0, 6))
    np.testing.assert_allclose(traj.singlet, 1.0, atol=1e-12)
    np.testing.assert_allclose(traj.trace, 1.0, atol=1e-12)


def test_evolve_rejects_bad_grids():
    superop = build_liouvillian(BRANCH_SYSTEM, QUANTUM)
    rho0 = initial_singlet_state(BRANCH_SYSTEM.space)
    with pytest.raises(ValueError):
        evolve_ode(superop, rho0, [1.0, 0.5])
    with pytest.raises(ValueError):
        evolve_ode(superop, rho0, [-1.0, 0.5])
    with pytest.raises(ShapeError):
        evolve_ode(superop, rho0, np.zeros((0,)))


def test_expansion_shape_mismatch():
    modes = eigenmodes(build_liouvillian(BRANCH_SYSTEM, QUANTUM))
    with pytest.raises(ShapeError):
        expand_observable(modes, np.eye(4))


def test_ill_conditioned_eigenbasis_flagged():
    modes = eigenmodes(build_liouvillian(BRANCH_SYSTEM, QUANTUM))
    vectors = modes.vectors.copy()
    vectors[:, 1] = vectors[:, 0]  # defective basis
    broken = EigenmodeSet(
        system=modes.system, kind=modes.kind, values=modes.values,
        vectors=vectors, decay_rates=modes.decay_rates,
        mixing_frequencies=modes.mixing_frequencies)
    expansion = expand_observable(
        broken, initial_singlet_state(BRANCH_SYSTEM.space))
    assert not expansion.well_conditioned
