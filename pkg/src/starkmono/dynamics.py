"""Magnetic charge carried through radiative mixing with the ground state.

An excited level |n> and the ground level |0> are mixed with angular
frequency omega_n = (E_n - E_1)/hbar:

    psi_n(t) = cos(w t) psi_n(0) + sin(w t) psi_0(0)
    psi_0(t) = cos(w t) psi_0(0) - sin(w t) psi_n(0)

so the charge of the excited component is g_n cos^2(w t), that of the ground
component g_n sin^2(w t), and their sum stays g_n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .monopole import MagneticCharge, solve_magnetic_charge
from .parabolic import bound_energy
from .units import Constants


def transition_frequency(n: int, c: Constants) -> float:
    if int(n) != n or n < 2:
        raise DomainError(f"transition needs an excited level n >= 2, got {n!r}")
    return (bound_energy(n, c) - bound_energy(1, c)) / c.hbar


@dataclass(frozen=True)
class MixedPair:
    n: int
    omega_n: float
    g_n: MagneticCharge

    def __post_init__(self):
        if self.n < 2:
            raise DomainError("mixed pair needs n >= 2")
        if not self.omega_n > 0:
            raise DomainError("transition frequency must be positive")

    @classmethod
    def for_level(cls, n: int, c: Constants) -> "MixedPair":
        return cls(n, transition_frequency(n, c), solve_magnetic_charge(n, c))

    @property
    def period(self) -> float:
        """Period of the charge exchange, pi / omega_n."""
        return np.pi / self.omega_n


def _check_time(t):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or not np.all(np.isfinite(t)):
        raise DomainError("time must be finite and >= 0")
    return t


def mixed_amplitudes(pair: MixedPair, t, started_excited: bool = True):
    """Amplitudes (on |n>, on |0>) of the state that started excited (or in the ground level)."""
    t = _check_time(t)
    cos, sin = np.cos(pair.omega_n * t), np.sin(pair.omega_n * t)
    if started_excited:
        return cos, sin
    return -sin, cos


def charge_evolution(pair: MixedPair, t):
    """(g_n(t), g_0(t)) = (g_n cos^2 w t, g_n sin^2 w t)."""
    t = _check_time(t)
    cos, sin = np.cos(pair.omega_n * t), np.sin(pair.omega_n * t)
    g = pair.g_n.g
    return g * cos * cos, g * sin * sin


def charge_series(pair: MixedPair, t_max: float, steps: int):
    """Rows (t, g_n, g_0, sum) on ``steps`` equally spaced times in [0, t_max]."""
    if int(steps) != steps or steps < 1:
        raise DomainError(f"steps must be a positive integer, got {steps!r}")
    if not (np.isfinite(t_max) and t_max >= 0):
        raise DomainError(f"t_max must be finite and >= 0, got {t_max!r}")
    t = np.linspace(0.0, t_max, int(steps))
    g_n, g_0 = charge_evolution(pair, t)
    return np.column_stack([t, g_n, g_0, g_n + g_0])
