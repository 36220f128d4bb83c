import numpy as np
import pytest

from zenospin import (
    SpinSystem, build_hamiltonian, electron_projectors, hamiltonian_eigensystem,
    larmor_frequency, projector_matrix_elements, total_fz,
)
from zenospin.errors import InvalidFieldError, NonHermitianError, ShapeError
from conftest import random_system


def test_larmor_scale():
    assert larmor_frequency(0.0) == 0.0
    assert larmor_frequency(1.0) == pytest.approx(2.8)
    # 2.8 per gauss applied literally; 0.5 G gives 1.4, not 0.7
    assert larmor_frequency(0.5) == pytest.approx(1.4)


def test_larmor_rejects_negative():
    with pytest.raises(InvalidFieldError):
        larmor_frequency(-0.1)


def test_spin_system_validation():
    with pytest.raises(InvalidFieldError):
        SpinSystem(I1=0.5, I2=0.5, a1=1.0, a2=1.0, omega=-1.0, kS=0.0, kT=0.0)
    with pytest.raises(ValueError):
        SpinSystem(I1=0.5, I2=0.5, a1=1.0, a2=1.0, omega=1.0, kS=-1.0, kT=0.0)
    with pytest.raises(ValueError):
        SpinSystem(I1=0.7, I2=0.5, a1=1.0, a2=1.0, omega=1.0, kS=0.0, kT=0.0)


def test_pure_zeeman_spectrum():
    system = SpinSystem(I1=0.5, I2=0.5, a1=0.0, a2=0.0, omega=1.0,
                        kS=0.0, kT=0.0)
    vals = np.sort(np.linalg.eigvalsh(build_hamiltonian(system)))
    np.testing.assert_allclose(vals, [-1.0] * 4 + [0.0] * 8 + [1.0] * 4,
                               atol=1e-12)


def test_contact_coupling_spectrum():
    # single coupled pair: I.s has eigenvalues 1/4 (triplet) and -3/4
    # (singlet), each tensored with the spectators
    a = 2.0
    system = SpinSystem(I1=0.5, I2=0.5, a1=a, a2=0.0, omega=0.0,
                        kS=0.0, kT=0.0)
    vals = np.sort(np.linalg.eigvalsh(build_hamiltonian(system)))
    np.testing.assert_allclose(vals, [-3 * a / 4] * 4 + [a / 4] * 12,
                               atol=1e-12)


def test_hamiltonian_hermitian_traceless(rng):
    for _ in range(10):
        system = random_system(rng)
        h = build_hamiltonian(system)
        assert np.abs(h - h.conj().T).max() < 1e-12
        assert abs(np.trace(h)) < 1e-10


def test_hamiltonian_commutes_with_total_fz(rng):
    for _ in range(5):
        system = random_system(rng)
        h = build_hamiltonian(system)
        fz = total_fz(system.space)
        assert np.abs(h @ fz - fz @ h).max() < 1e-10


def test_spectrum_symmetric_under_nucleus_exchange(rng):
    for _ in range(5):
        system = random_system(rng)
        system = system.replace(I2=system.I1)
        swapped = system.replace(a1=system.a2, a2=system.a1)
        e1 = np.linalg.eigvalsh(build_hamiltonian(system))
        e2 = np.linalg.eigvalsh(build_hamiltonian(swapped))
        np.testing.assert_allclose(e1, e2, atol=1e-10)


def test_zeeman_fan_at_high_field():
    # high-field eigenvalues approach m_s * omega + O(a); the four electron
    # branches separate linearly in omega
    base = dict(I1=0.5, I2=0.5, a1=1.0, a2=2.0, kS=0.0, kT=0.0)
    for omega in (50.0, 100.0):
        vals = np.linalg.eigvalsh(build_hamiltonian(SpinSystem(omega=omega,
                                                               **base)))
        branch = np.round(vals / omega).astype(int)
        assert sorted(set(branch)) == [-1, 0, 1]
        np.testing.assert_allclose(vals, branch * omega, atol=2.5)


def test_eigensystem_contract(rng):
    system = random_system(rng)
    h = build_hamiltonian(system)
    eig = hamiltonian_eigensystem(h)
    assert np.all(np.diff(eig.energies) >= -1e-12)
    v = eig.vectors
    assert np.abs(v.conj().T @ v - np.eye(len(eig.energies))).max() < 1e-10
    resid = h @ v - v * eig.energies
    assert np.abs(resid).max() < 1e-10 * max(1.0, np.abs(h).max())


def test_eigensystem_simple_cases():
    eig = hamiltonian_eigensystem(np.zeros((4, 4)))
    np.testing.assert_allclose(eig.energies, 0.0, atol=1e-14)
    d = np.diag([1.0, 2.0, 3.0])
    eig = hamiltonian_eigensystem(d)
    np.testing.assert_allclose(eig.energies, [1.0, 2.0, 3.0], atol=1e-14)


def test_eigensystem_against_independent_solver():
    import scipy.linalg

    system = SpinSystem(I1=0.5, I2=0.5, a1=1.0, a2=2.0, omega=0.0,
                        kS=0.0, kT=0.0)
    h = build_hamiltonian(system)
    ours = hamiltonian_eigensystem(h).energies
    theirs = np.sort(scipy.linalg.eig(h)[0].real)
    np.testing.assert_allclose(ours, theirs, atol=1e-9)


def test_eigensystem_rejects_non_hermitian():
    with pytest.raises(NonHermitianError):
        hamiltonian_eigensystem(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_projector_elements_identity_basis():
    system = SpinSystem(I1=0.5, I2=0.5, a1=0.0, a2=0.0, omega=0.0,
                        kS=0.0, kT=0.0)
    qs = electron_projectors(system.space)[0]
    eig = hamiltonian_eigensystem(np.diag(np.arange(16.0)))
    np.testing.assert_allclose(projector_matrix_elements(qs, eig), qs,
                               atol=1e-12)


def test_projector_elements_spectrum(rng):
    for _ in range(5):
        system = random_system(rng)
        qs = electron_projectors(system.space)[0]
        eig = hamiltonian_eigensystem(build_hamiltonian(system))
        q = projector_matrix_elements(qs, eig)
        assert np.abs(q - q.conj().T).max() < 1e-10
        assert np.abs(q @ q - q).max() < 1e-10
        vals = np.sort(np.linalg.eigvalsh(q))
        n = system.dim
        np.testing.assert_allclose(
            vals, [0.0] * (3 * n // 4) + [1.0] * (n // 4), atol=1e-10)


def test_projector_elements_shape_check():
    system = SpinSystem(I1=0.5, I2=0.5, a1=1.0, a2=1.0, omega=1.0,
                        kS=0.0, kT=0.0)
    eig = hamiltonian_eigensystem(build_hamiltonian(system))
    with pytest.raises(ShapeError):
        projector_matrix_elements(np.eye(4), eig)


def _cross_level_mixing_mass(omega):
    """Basis-invariant S-T mixing strength across distinct energy levels."""
    system = SpinSystem(I1=0.5, I2=0.5, a1=1.0, a2=2.0, omega=omega,
                        kS=0.0, kT=0.0)
    eig = hamiltonian_eigensystem(build_hamiltonian(system))
    q = projector_matrix_elements(electron_projectors(system.space)[0], eig)
    e = eig.energies
    distinct = np.abs(e[:, None] - e[None, :]) > 1e-8
    return float((np.abs(q) ** 2 * distinct).sum())


def test_low_field_flatness_of_projector_elements():
    # a 10% field change barely moves the mixing elements at omega << a but
    # moves them strongly near omega ~ a
    low = abs(_cross_level_mixing_mass(0.11) - _cross_level_mixing_mass(0.1))
    low /= _cross_level_mixing_mass(0.1)
    mid = abs(_cross_level_mixing_mass(1.65) - _cross_level_mixing_mass(1.5))
    mid /= _cross_level_mixing_mass(1.5)
    assert low < 0.005
    assert mid > 5 * low
