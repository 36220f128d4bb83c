"""Field scans, the half-fraction yield-drop estimator and deuteration.

The magnetic response proxy is the count of slow decay rates at each field:
half the slow percentage estimates the drop in singlet recombination yield.
Deuteration swaps a spin-1/2 nucleus for spin 1 and shrinks its coupling by
the moment ratio (0.307 for H -> D).
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidScanError
from .liouville import QUANTUM, build_liouvillian
from .magnetics import SpinSystem
from .spectra import _scan_map, classify_modes, eigenmodes
from .spin_ops import check_half_integer

DEUTERIUM_SPIN = 1.0
# Moment ratio mu_D / mu_H; rescales an isotropic proton coupling to the
# deuteron's.
DEUTERIUM_COUPLING_SCALE = 0.307

PAIR_NAMES = ("h/h", "h/d", "d/h", "d/d")


def yield_drop_estimate(slow_fraction: float) -> float:
    """Estimated singlet-yield drop in percent: half the slow percentage."""
    if not 0.0 <= slow_fraction <= 1.0:
        raise ValueError(f"slow fraction must be in [0, 1], got {slow_fraction}")
    return 50.0 * slow_fraction


@dataclass(frozen=True)
class ScanResult:
    """Per-field-point slow-mode statistics of one spin system.

    yield_drop_pct[i] is exactly 50 * slow_fraction[i]. decay_rates is the
    full sorted rate list per point when the scan retained it, else None.
    """

    omegas: np.ndarray
    n_modes: int
    n_slow: np.ndarray
    slow_fraction: np.ndarray
    yield_drop_pct: np.ndarray
    decay_rates: list | None = None

    @property
    def max_yield_drop_pct(self) -> float:
        return float(self.yield_drop_pct.max())


def field_scan(system: SpinSystem, omegas, kind: str = QUANTUM,
               keep_rates: bool = False, threads: int = 1) -> ScanResult:
    """Slow-mode counts over a field grid; only omega varies across points.

    Rates and couplings are held at their absolute values from `system`,
    and each point is classified against its own omega.
    """
    omegas = np.asarray(omegas, dtype=float)
    if omegas.size == 0:
        raise InvalidScanError("field grid is empty")
    if np.any(omegas <= 0):
        raise InvalidScanError("field grid must be strictly positive")
    if np.any(np.diff(omegas) <= 0):
        raise InvalidScanError("field grid must be strictly increasing")

    def point(omega):
        modes = eigenmodes(build_liouvillian(system.replace(omega=omega), kind))
        cls = classify_modes(modes, omega)
        rates = modes.decay_rates if keep_rates else None
        return cls, rates

    results = _scan_map(point, list(omegas), threads)
    n_slow = np.array([cls.n_slow for cls, _ in results])
    n_modes = results[0][0].n
    fraction = n_slow / n_modes
    return ScanResult(
        omegas=omegas,
        n_modes=n_modes,
        n_slow=n_slow,
        slow_fraction=fraction,
        yield_drop_pct=50.0 * fraction,
        decay_rates=[rates for _, rates in results] if keep_rates else None,
    )


@dataclass(frozen=True)
class IsotopeSubstitution:
    """Swap one nucleus for an isotope: new spin plus a coupling rescale."""

    target: int
    spin_after: float = DEUTERIUM_SPIN
    coupling_scale: float = DEUTERIUM_COUPLING_SCALE

    def __post_init__(self):
        if self.target not in (1, 2):
            raise ValueError(f"nucleus index must be 1 or 2, got {self.target}")
        check_half_integer(self.spin_after)
        if self.coupling_scale <= 0:
            raise ValueError(
                f"coupling scale must be > 0, got {self.coupling_scale}"
            )


def substitute_isotope(system: SpinSystem, sub: IsotopeSubstitution) -> SpinSystem:
    """New system with the target nucleus swapped; everything else unchanged."""
    if sub.target == 1:
        return system.replace(I1=sub.spin_after, a1=system.a1 * sub.coupling_scale)
    return system.replace(I2=sub.spin_after, a2=system.a2 * sub.coupling_scale)


@dataclass(frozen=True)
class DeuterationStudy:
    """Field scans of the four H/D substitution patterns of a radical pair.

    Pair tags read nucleus1/nucleus2 (radical-anion side first). The fully
    protonated couplings are scaled by `coupling_scale` wherever a nucleus
    is deuterated.
    """

    pairs: dict
    coupling_scale: float

    def max_yield_drop_pct(self, pair: str) -> float:
        return self.pairs[pair].max_yield_drop_pct

    @property
    def protonated_side1_max(self) -> float:
        """Largest yield drop among pairs with a protonated first nucleus."""
        return max(self.pairs["h/h"].max_yield_drop_pct,
                   self.pairs["h/d"].max_yield_drop_pct)

    @property
    def deuterated_side1_max(self) -> float:
        """Largest yield drop among pairs with a deuterated first nucleus."""
        return max(self.pairs["d/h"].max_yield_drop_pct,
                   self.pairs["d/d"].max_yield_drop_pct)


def deuteration_study(base: SpinSystem, omegas, kind: str = QUANTUM,
                      coupling_scale: float = DEUTERIUM_COUPLING_SCALE,
                      deuterium_spin: float = DEUTERIUM_SPIN,
                      keep_rates: bool = False,
                      threads: int = 1) -> DeuterationStudy:
    """Run the four-way H/D comparison over a common field grid.

    `base` carries the fully protonated parameters (both nuclear spins must
    be 1/2); its omega is ignored in favor of the grid.
    """
    if base.I1 != 0.5 or base.I2 != 0.5:
        raise ValueError(
            "base system must be fully protonated (I1 = I2 = 1/2), got "
            f"I1={base.I1}, I2={base.I2}"
        )
    subs = {
        1: IsotopeSubstitution(1, deuterium_spin, coupling_scale),
        2: IsotopeSubstitution(2, deuterium_spin, coupling_scale),
    }
    pairs = {}
    for name in PAIR_NAMES:
        system = base
        tag1, tag2 = name.split("/")
        if tag1 == "d":
            system = substitute_isotope(system, subs[1])
        if tag2 == "d":
            system = substitute_isotope(system, subs[2])
        pairs[name] = field_scan(system, omegas, kind,
                                 keep_rates=keep_rates, threads=threads)
    return DeuterationStudy(pairs=pairs, coupling_scale=coupling_scale)
