"""Scalar tunneling quantities for a barrier with height near the particle
energy: evanescent decay factor, tunneling length scale, transmission
coefficient and transmittance, plus natural/SI unit bookkeeping.

All SI arithmetic uses CODATA 2018 constants, hard-coded below for
reproducibility of the frozen fixtures.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, replace

# CODATA 2018
HBAR_SI = 1.054571817e-34  # J s
C_SI = 2.99792458e8  # m / s
ELECTRON_MASS_KG = 9.1093837015e-31
PROTON_MASS_KG = 1.67262192369e-27

NATURAL = "natural"
SI = "si"


class EvanescenceError(ValueError):
    """|E - V0| >= m: the momentum inside the barrier is not imaginary."""


class ZeroMomentumWarning(RuntimeWarning):
    """Transmittance evaluated at p = 0; the exact limit 0 is returned."""


@dataclass(frozen=True)
class UnitSystem:
    hbar: float
    c: float
    name: str


NATURAL_UNITS = UnitSystem(hbar=1.0, c=1.0, name=NATURAL)
SI_UNITS = UnitSystem(hbar=HBAR_SI, c=C_SI, name=SI)

_SYSTEMS = {NATURAL: NATURAL_UNITS, SI: SI_UNITS}


def _units(units) -> UnitSystem:
    if isinstance(units, UnitSystem):
        return units
    try:
        return _SYSTEMS[units]
    except KeyError:
        raise ValueError(f"unknown unit system {units!r}") from None


@dataclass(frozen=True)
class TunnelingParams:
    """Barrier scattering parameters in a tagged unit system.

    natural: energies/masses/momenta share one unit, lengths its inverse.
    si: energies in J, mass in kg, momentum in kg m/s, length in m.
    """

    energy: float
    barrier_height: float
    mass: float
    width: float
    momentum: float
    units: str = NATURAL

    def __post_init__(self):
        if self.mass <= 0:
            raise ValueError("mass must be positive")
        if self.width < 0:
            raise ValueError("width must be non-negative")
        if self.momentum < 0:
            raise ValueError("momentum must be non-negative")
        _units(self.units)


def decay_factor(energy: float, barrier_height: float, mass: float) -> float:
    """Evanescent decay rate k = m*sqrt(1 - (E - V0)^2/m^2), natural units.

    Maximal (k = m) when the energy equals the barrier height; requires
    |E - V0| < m.
    """
    if mass <= 0:
        raise ValueError("mass must be positive")
    ratio = (energy - barrier_height) / mass
    if abs(ratio) >= 1.0:
        raise EvanescenceError(
            f"|E - V0| = {abs(energy - barrier_height)} >= m = {mass}"
        )
    return mass * math.sqrt(1.0 - ratio * ratio)


def length_scale(mass_kg: float) -> float:
    """Tunneling length scale hbar/(m*c) in meters (reduced Compton length)."""
    if mass_kg <= 0:
        raise ValueError("mass must be positive")
    return HBAR_SI / (mass_kg * C_SI)


def _barrier_ratios(momentum, mass, width, z0, units):
    system = _units(units)
    if z0 is None:
        z0 = system.hbar / (mass * system.c)
    if z0 <= 0:
        raise ValueError("z0 must be positive")
    return width / z0, (mass * system.c) / momentum, system


def transmission_coeff(momentum: float, mass: float, width: float,
                       z0: float | None = None, units: str = NATURAL) -> complex:
    """Transmission coefficient for a barrier matched to the particle energy:

        exp(-i p l / hbar) / [cosh(l/z0) + i (m c / p) sinh(l/z0)]

    ``z0`` defaults to hbar/(m c) in the chosen unit system.
    """
    if momentum <= 0:
        raise ValueError("momentum must be positive (phase undefined at p = 0)")
    lam, mc_over_p, system = _barrier_ratios(momentum, mass, width, z0, units)
    phase = cmath.exp(-1j * momentum * width / system.hbar)
    return phase / (math.cosh(lam) + 1j * mc_over_p * math.sinh(lam))


def transmittance(momentum: float, mass: float, width: float,
                  z0: float | None = None, units: str = NATURAL) -> float:
    """Barrier transmittance 1/[cosh^2(l/z0) + (m c/p)^2 sinh^2(l/z0)].

    The p = 0 limit is exactly 0 and is returned as such with a
    ZeroMomentumWarning instead of raising.
    """
    if momentum == 0:
        warnings.warn("transmittance limit at p = 0 is exact zero",
                      ZeroMomentumWarning, stacklevel=2)
        return 0.0
    if momentum < 0:
        raise ValueError("momentum must be non-negative")
    lam, mc_over_p, _ = _barrier_ratios(momentum, mass, width, z0, units)
    # sech/tanh form stays finite up to lam ~ 709
    sech = 1.0 / math.cosh(lam)
    tanh = math.tanh(lam)
    return sech * sech / (1.0 + (mc_over_p * tanh) ** 2)


def transmittance_max(width: float, z0: float) -> float:
    """Extreme-relativistic ceiling sech^2(l/z0) of the transmittance."""
    if z0 <= 0:
        raise ValueError("z0 must be positive")
    sech = 1.0 / math.cosh(width / z0)
    return sech * sech


def convert_units(params: TunnelingParams, to: str,
                  reference_mass_kg: float = ELECTRON_MASS_KG) -> TunnelingParams:
    """Convert parameters between the natural and SI systems.

    One natural mass unit corresponds to ``reference_mass_kg``; energies
    scale with M c^2, momenta with M c and lengths with hbar/(M c), so the
    evanescent exponent m*z (natural) equals z/z0 (SI) after conversion.
    """
    if to not in _SYSTEMS:
        raise ValueError(f"unknown unit system {to!r}")
    if reference_mass_kg <= 0:
        raise ValueError("reference mass must be positive")
    if params.units == to:
        return params

    energy_scale = reference_mass_kg * C_SI * C_SI
    momentum_scale = reference_mass_kg * C_SI
    length_scale_m = HBAR_SI / (reference_mass_kg * C_SI)

    if to == SI:
        return TunnelingParams(
            energy=params.energy * energy_scale,
            barrier_height=params.barrier_height * energy_scale,
            mass=params.mass * reference_mass_kg,
            width=params.width * length_scale_m,
            momentum=params.momentum * momentum_scale,
            units=SI,
        )
    return TunnelingParams(
        energy=params.energy / energy_scale,
        barrier_height=params.barrier_height / energy_scale,
        mass=params.mass / reference_mass_kg,
        width=params.width / length_scale_m,
        momentum=params.momentum / momentum_scale,
        units=NATURAL,
    )


def evanescent_exponent(params: TunnelingParams) -> float:
    """Dimensionless decay exponent of the barrier profile over the width:
    m*l in natural units, l/z0 in SI units."""
    if params.units == NATURAL:
        return params.mass * params.width
    return params.width / length_scale(params.mass)
