"""Physical constants and unit-system selection.

All electromagnetic formulas in this package use Gaussian (cgs) conventions.
Base values are CODATA 2018 (exact SI definitions for e, h, c; recommended
values for m_e and alpha), converted to cgs.  Two systems are offered:

* ``gaussian-cgs`` -- cm, g, s, statcoulomb, erg.
* ``atomic``       -- hbar = m_e = e = 1, c = 1/alpha (Hartree atomic units).

Conversion to laboratory units (eV, Angstrom, seconds) only happens at the
I/O boundary through the ``*_unit_*`` scale fields of :class:`Constants`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

# CODATA 2018, cgs.
HBAR_CGS = 1.054571817e-27  # erg s  (h/2pi, h exact in SI)
ELECTRON_MASS_CGS = 9.1093837015e-28  # g
ELEMENTARY_CHARGE_CGS = 1.602176634e-19 * 2.99792458e9  # statC (e_SI * c/10)
SPEED_OF_LIGHT_CGS = 2.99792458e10  # cm/s
# Recommended alpha; the cgs table reproduces it to ~1e-10 (mu0 = 4pi e-7 in
# the Gaussian conversion).  Atomic mode uses the table's own alpha so that
# every derived identity holds to rounding.
FINE_STRUCTURE_CODATA = 7.2973525693e-3
ATOMIC_MASS_UNIT_CGS = 1.66053906660e-24  # g
HYDROGEN_MASS_U = 1.00782503207  # relative atomic mass of 1H

ERG_PER_EV = 1.602176634e-12
CM_PER_ANGSTROM = 1e-8
STATVOLT_PER_VOLT = 1.0 / 299.792458


class UnitSystem(str, Enum):
    GAUSSIAN_CGS = "gaussian-cgs"
    ATOMIC = "atomic"

    @classmethod
    def parse(cls, value: "str | UnitSystem") -> "UnitSystem":
        if isinstance(value, UnitSystem):
            return value
        key = str(value).strip().lower().replace("_", "-")
        for member in cls:
            if member.value == key:
                return member
        raise DomainError(
            f"unknown unit system {value!r}; expected 'gaussian-cgs' or 'atomic'"
        )


@dataclass(frozen=True)
class Constants:
    """A coherent set of constants in one unit system.

    The ``*_unit_*`` fields give the size of this system's unit in cgs, so
    ``energy * energy_unit_erg`` is an energy in erg regardless of mode.
    """

    system: UnitSystem
    hbar: float
    electron_mass: float
    elementary_charge: float
    speed_of_light: float
    length_unit_cm: float
    mass_unit_g: float
    time_unit_s: float
    energy_unit_erg: float

    def __post_init__(self):
        for name in ("hbar", "electron_mass", "elementary_charge", "speed_of_light"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be strictly positive")

    @property
    def bohr_radius(self) -> float:
        return self.hbar**2 / (self.electron_mass * self.elementary_charge**2)

    @property
    def compton_wavelength(self) -> float:
        """Reduced Compton wavelength hbar/(m c)."""
        return self.hbar / (self.electron_mass * self.speed_of_light)

    @property
    def fine_structure(self) -> float:
        return self.elementary_charge**2 / (self.hbar * self.speed_of_light)

    @property
    def hydrogen_mass(self) -> float:
        return HYDROGEN_MASS_U * ATOMIC_MASS_UNIT_CGS / self.mass_unit_g

    @property
    def atomic_field(self) -> float:
        """Internal atomic field scale e/a0^2."""
        return self.elementary_charge / self.bohr_radius**2

    @property
    def dirac_unit(self) -> float:
        """hbar c / e: the magnetic charge with e g/(hbar c) = 1."""
        return self.hbar * self.speed_of_light / self.elementary_charge

    @property
    def flux_quantum(self) -> float:
        """Superconducting flux quantum hc/2e = pi hbar c / e."""
        return math.pi * self.dirac_unit

    def to_ev(self, energy: float) -> float:
        return energy * self.energy_unit_erg / ERG_PER_EV

    def from_angstrom(self, length_angstrom: float) -> float:
        return length_angstrom * CM_PER_ANGSTROM / self.length_unit_cm

    def to_seconds(self, t: float) -> float:
        return t * self.time_unit_s

    def from_seconds(self, t_s: float) -> float:
        return t_s / self.time_unit_s


def make_unit_system(mode: "str | UnitSystem" = UnitSystem.GAUSSIAN_CGS) -> Constants:
    """Build the constant table for ``mode`` ('gaussian-cgs' or 'atomic')."""
    mode = UnitSystem.parse(mode)
    if mode is UnitSystem.GAUSSIAN_CGS:
        return Constants(
            system=mode,
            hbar=HBAR_CGS,
            electron_mass=ELECTRON_MASS_CGS,
            elementary_charge=ELEMENTARY_CHARGE_CGS,
            speed_of_light=SPEED_OF_LIGHT_CGS,
            length_unit_cm=1.0,
            mass_unit_g=1.0,
            time_unit_s=1.0,
            energy_unit_erg=1.0,
        )
    # Hartree units; scales derived from the cgs table so the two stay coherent.
    cgs = make_unit_system(UnitSystem.GAUSSIAN_CGS)
    a0 = cgs.bohr_radius
    hartree = cgs.elementary_charge**2 / a0
    return Constants(
        system=mode,
        hbar=1.0,
        electron_mass=1.0,
        elementary_charge=1.0,
        speed_of_light=1.0 / cgs.fine_structure,
        length_unit_cm=a0,
        mass_unit_g=cgs.electron_mass,
        time_unit_s=cgs.hbar / hartree,
        energy_unit_erg=hartree,
    )


def photon_energy(wavelength: float, c: Constants) -> float:
    """Photon energy 2 pi hbar c / wavelength (wavelength in the system's length unit)."""
    if not wavelength > 0:
        raise DomainError(f"wavelength must be positive, got {wavelength!r}")
    return 2.0 * math.pi * c.hbar * c.speed_of_light / wavelength
