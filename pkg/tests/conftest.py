import numpy as np
import pytest

from zenospin import SpinSystem

# Two spin-1/2 nuclei with couplings a2 = 2*a1 = 3*omega; the workhorse for
# branch scans and propagation checks.
BRANCH_SYSTEM = SpinSystem(I1=0.5, I2=0.5, a1=1.5, a2=3.0, omega=1.0,
                           kS=1.0, kT=0.2)

# Proton/deuteron comparison pair: a2 = 2.8*a1 before substitution.
PROTON_SYSTEM = SpinSystem(I1=0.5, I2=0.5, a1=1.5, a2=4.2, omega=1.0,
                           kS=50.0, kT=10.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240831)


def random_system(rng, max_spin=1.0):
    """A random valid SpinSystem with half-integer nuclear spins."""
    spins = np.arange(0.5, max_spin + 0.25, 0.5)
    return SpinSystem(
        I1=float(rng.choice(spins)),
        I2=float(rng.choice(spins)),
        a1=float(rng.uniform(-4.0, 4.0)),
        a2=float(rng.uniform(-4.0, 4.0)),
        omega=float(rng.uniform(0.1, 3.0)),
        kS=float(rng.uniform(0.0, 5.0)),
        kT=float(rng.uniform(0.0, 5.0)),
    )


def random_density_matrix(rng, dim):
    """Random full-rank density matrix (positive, unit trace)."""
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng, dim):
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (x + x.conj().T) / 2


def assert_complex_multisets_close(got, expect, atol=1e-8):
    """Match two complex multisets pairwise (optimal assignment)."""
    from scipy.optimize import linear_sum_assignment

    got = np.asarray(got)
    expect = np.asarray(expect)
    assert got.shape == expect.shape
    cost = np.abs(got[:, None] - expect[None, :])
    rows, cols = linear_sum_assignment(cost)
    worst = cost[rows, cols].max()
    assert worst < atol, f"multiset mismatch, worst pair distance {worst:.3e}"
