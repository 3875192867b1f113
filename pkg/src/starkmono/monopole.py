"""Magnetic charge of hydrogen Stark states.

Two routes to the permanent electric dipole of a parabolic state are
compared:

* charge-density route: d = e <r>, whose z-component is (3/2) n (n1 - n2) e a0;
* magnetic-current route: the expectation of the antisymmetrized-derivative
  dipole operator in the phase-dressed state

      Phi = psi exp(i (e g / hbar c) F - i M phi),   F = log(xi eta / a0^2).

In parabolic coordinates the z-component of that operator is

      D_z = (i g lambda / 8) * xi eta / (xi + eta) * (dbar/dxi - dbar/deta)

with ``a dbar b = a (db) - (da) b`` and lambda = hbar/(m c).  Its expectation
splits into a part linear in g (which vanishes for real psi) and a part
quadratic in g that produces the monopole energy shift.  Equating the
monopole shift to the linear Stark shift yields e g / hbar c = sqrt(3) n.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import DomainError, NumericalError, StringSingularityError
from .parabolic import (
    TWO_PI,
    ParabolicPoint,
    QuadratureRule,
    QuantumNumbers,
    expectation,
    integrate,
    integrate_sum_coordinates,
    parabolic_wavefunction,
    radial_gradient,
    radial_part,
    rule_for,
)
from .units import Constants

# Tolerance on the reduced (dimensionless) g-linear matrix element.
LINEAR_TERM_TOL = 1e-10
# Field/atomic-field ratio above which first-order perturbation theory is flagged.
PERTURBATIVE_LIMIT = 1e-2


class PerturbativeWarning(UserWarning):
    pass


class Measure(str, Enum):
    """Integration measure for the monopole energy shift.

    FLAT integrates over dxi deta only; VOLUME uses the full
    dV = (xi + eta)/4 dxi deta dphi under which psi is normalized.
    """

    FLAT = "flat"
    VOLUME = "volume"

    @classmethod
    def parse(cls, value: "str | Measure") -> "Measure":
        if isinstance(value, Measure):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise DomainError(f"unknown measure {value!r}; expected 'flat' or 'volume'") from None


@dataclass(frozen=True)
class StarkConfig:
    """Uniform static field of strength ``field_strength`` along +z."""

    field_strength: float

    def __post_init__(self):
        if not (math.isfinite(self.field_strength) and self.field_strength >= 0):
            raise DomainError(f"field strength must be finite and >= 0, got {self.field_strength!r}")

    def field_ratio(self, c: Constants) -> float:
        return self.field_strength / c.atomic_field

    def is_perturbative(self, c: Constants) -> bool:
        return self.field_ratio(c) < PERTURBATIVE_LIMIT

    def warn_if_strong(self, c: Constants) -> None:
        if not self.is_perturbative(c):
            warnings.warn(
                f"field is {self.field_ratio(c):.3g} of the atomic field e/a0^2; "
                "first-order shifts are unreliable",
                PerturbativeWarning,
                stacklevel=3,
            )


@dataclass(frozen=True)
class MagneticCharge:
    g: float
    n: int | None = None

    def coupling(self, c: Constants) -> float:
        """Dimensionless e g / (hbar c)."""
        return self.g / c.dirac_unit

    def scaled(self, factor: float) -> "MagneticCharge":
        return MagneticCharge(self.g * factor, self.n)

    def __neg__(self):
        return self.scaled(-1.0)


@dataclass(frozen=True)
class DressedState:
    base: QuantumNumbers
    charge: MagneticCharge


@dataclass(frozen=True)
class DipoleVector:
    dx: float
    dy: float
    dz: float

    def as_array(self) -> np.ndarray:
        return np.array([self.dx, self.dy, self.dz])


def _charge_value(g) -> float:
    return g.g if isinstance(g, MagneticCharge) else float(g)


# --------------------------------------------------------------------------
# Charge relations
# --------------------------------------------------------------------------


def dirac_charge(k: int, c: Constants) -> MagneticCharge:
    """Dirac-Saha charge with e g / hbar c = k / 2."""
    if int(k) != k or k < 1:
        raise DomainError(f"k must be an integer >= 1, got {k!r}")
    return MagneticCharge(0.5 * k * c.dirac_unit, None)


def shift_monopole_closed_form(qn: QuantumNumbers, stark: StarkConfig, g, c: Constants) -> float:
    """Asserted closed form e g^2 lambda E / (2 hbar c) * (n1 - n2)/n."""
    g = _charge_value(g)
    return (
        c.elementary_charge * g * g * c.compton_wavelength * stark.field_strength
        / (2.0 * c.hbar * c.speed_of_light)
        * (qn.n1 - qn.n2) / qn.n
    )


def stark_shift_closed_form(qn: QuantumNumbers, stark: StarkConfig, c: Constants) -> float:
    """Linear Stark shift (3/2) n (n1 - n2) E hbar^2/(m e)."""
    return (
        1.5 * qn.n * (qn.n1 - qn.n2) * stark.field_strength
        * c.hbar**2 / (c.electron_mass * c.elementary_charge)
    )


def solve_magnetic_charge(n: int, c: Constants) -> MagneticCharge:
    """Charge making the monopole shift equal the linear Stark shift at level n.

    With the common factor E (n1 - n2) cancelled,

        e g^2 lambda / (2 hbar c n) = (3/2) n hbar^2 / (m e)
        g^2 = 3 n^2 (hbar^2/(m e^2)) hbar c / lambda = 3 n^2 a0 hbar c / lambda

    and a0 / lambda = hbar c / e^2 turns this into (e g / hbar c)^2 = 3 n^2.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    g_squared = 3.0 * n * n * c.bohr_radius * c.hbar * c.speed_of_light / c.compton_wavelength
    return MagneticCharge(math.sqrt(g_squared), int(n))


# --------------------------------------------------------------------------
# Charge-density route
# --------------------------------------------------------------------------


def electric_dipole_conventional(
    qn: QuantumNumbers, rule: QuadratureRule | None = None, c: Constants | None = None
) -> DipoleVector:
    """e <r> by quadrature; x and y vanish by the azimuthal integral."""
    if c is None:
        raise DomainError("constants are required")
    rule = rule or rule_for(qn, c=c)
    z_mean = expectation(qn, lambda xi, eta: 0.5 * (xi - eta), rule, c)
    return DipoleVector(0.0, 0.0, c.elementary_charge * z_mean)


def stark_shift_conventional(
    qn: QuantumNumbers, stark: StarkConfig, c: Constants, rule: QuadratureRule | None = None,
    *, rtol: float = 1e-8,
) -> float:
    """Linear Stark shift, cross-checked against d . E from the dipole quadrature."""
    stark.warn_if_strong(c)
    closed = stark_shift_closed_form(qn, stark, c)
    via_dipole = electric_dipole_conventional(qn, rule, c).dz * stark.field_strength
    scale = c.elementary_charge * c.bohr_radius * stark.field_strength
    if abs(closed - via_dipole) > rtol * max(abs(closed), scale):
        raise NumericalError(
            f"Stark shift closed form {closed!r} disagrees with d.E = {via_dipole!r}"
        )
    return closed


# --------------------------------------------------------------------------
# Magnetic-current route
# --------------------------------------------------------------------------


def magnetic_current(qn: QuantumNumbers, g, p: ParabolicPoint, c: Constants) -> np.ndarray:
    """Local density Re(psi* (g L / (m c r)) psi) as a Cartesian vector.

    For an m-eigenstate, Re(psi* L psi) = hbar m |psi|^2 (r x phi_hat)/rho,
    i.e. hbar m |psi|^2 (z_hat - (z/rho) rho_hat).
    """
    r = p.r
    if r == 0:
        raise DomainError("magnetic current is singular at r = 0")
    g = _charge_value(g)
    rho = p.rho
    if qn.m == 0 or rho == 0.0:
        # psi ~ rho^|m| on the axis, so the density vanishes there.
        return np.zeros(3)
    dens = abs(parabolic_wavefunction(qn, p, c)) ** 2
    scale = g * c.hbar * qn.m * dens / (c.electron_mass * c.speed_of_light * r)
    cos_p, sin_p = math.cos(p.phi), math.sin(p.phi)
    radial = -p.z / rho
    return scale * np.array([radial * cos_p, radial * sin_p, 1.0])


def _operator_density(qn: QuantumNumbers, coupling: float, xi, eta, c: Constants, phi0: float):
    """w * [Phi* (dbar_xi - dbar_eta) Phi] at the nodes, w = xi eta/(xi + eta).

    Phi carries the dressing phase exp(i coupling F) and, to exercise the
    cancellation numerically, an arbitrary constant azimuthal phase phi0.
    """
    a0 = c.bohr_radius
    psi = radial_part(qn, xi, eta, c)
    dpsi_xi, dpsi_eta = radial_gradient(qn, xi, eta, c)
    phase = np.exp(1j * (coupling * np.log(xi * eta / a0**2) + phi0))
    phi_val = psi * phase
    d_xi = (dpsi_xi + 1j * coupling * psi / xi) * phase
    d_eta = (dpsi_eta + 1j * coupling * psi / eta) * phase
    bar_xi = np.conj(phi_val) * d_xi - np.conj(d_xi) * phi_val
    bar_eta = np.conj(phi_val) * d_eta - np.conj(d_eta) * phi_val
    return xi * eta / (xi + eta) * (bar_xi - bar_eta)


def _reduced_matrix_element(qn, coupling, rule, c, measure: Measure, phi0=1.0) -> complex:
    """Integral of the operator density under the chosen measure."""
    if measure is Measure.VOLUME:
        def integrand(xi, eta):
            return _operator_density(qn, coupling, xi, eta, c, phi0) * (xi + eta) / 4.0
        return TWO_PI * integrate(integrand, rule)
    return integrate_sum_coordinates(
        lambda xi, eta: _operator_density(qn, coupling, xi, eta, c, phi0), rule
    )


@dataclass(frozen=True)
class ShiftTerms:
    """Monopole energy shift split by order in g.

    ``linear_reduced`` is the bare g-linear matrix element made dimensionless
    with a0 (it multiplies g lambda E / 8 in the energy).
    """

    measure: Measure
    linear: float
    quadratic: float
    linear_reduced: float

    @property
    def total(self) -> float:
        return self.linear + self.quadratic


def monopole_shift_terms(
    qn: QuantumNumbers,
    stark: StarkConfig,
    g,
    rule: QuadratureRule | None = None,
    c: Constants | None = None,
    measure: "str | Measure" = Measure.FLAT,
) -> ShiftTerms:
    """Expectation of E D_z in the dressed state, separated into g and g^2 parts.

    The split uses the exact parity of the expectation under g -> -g: the
    operator is odd in g and the dressing phase flips with g, so
    M(g) - M(-g) isolates the linear part and M(g) + M(-g) the quadratic one.
    """
    if c is None:
        raise DomainError("constants are required")
    measure = Measure.parse(measure)
    rule = rule or rule_for(qn, c=c)
    g = _charge_value(g)
    kappa = g / c.dirac_unit
    prefactor = 1j * g * c.compton_wavelength * stark.field_strength / 8.0
    plus = _reduced_matrix_element(qn, kappa, rule, c, measure)
    minus = _reduced_matrix_element(qn, -kappa, rule, c, measure)
    m_plus = prefactor * plus
    m_minus = -prefactor * minus
    linear = 0.5 * (m_plus - m_minus)
    quadratic = 0.5 * (m_plus + m_minus)
    scale = abs(prefactor) * (abs(plus) + abs(minus))
    for name, val in (("linear", linear), ("quadratic", quadratic)):
        if abs(val.imag) > 1e-8 * scale:
            raise NumericalError(f"{name} part of the shift is not real: {val!r}")
    bare_linear = 0.5 * (plus + minus)
    reduced = abs(bare_linear) * (c.bohr_radius if measure is Measure.FLAT else 1.0)
    return ShiftTerms(measure, float(linear.real), float(quadratic.real), float(reduced))


def stark_shift_monopole(
    qn: QuantumNumbers,
    stark: StarkConfig,
    g,
    rule: QuadratureRule | None = None,
    c: Constants | None = None,
    mode: "str | Measure" = Measure.FLAT,
) -> float:
    """Monopole-route energy shift (the g^2 term).

    The g-linear term is evaluated as well and must vanish; a nonzero value
    raises :class:`NumericalError`.  In FLAT mode the result carries an extra
    inverse length relative to an energy, exactly as the flat integral does.
    """
    if c is None:
        raise DomainError("constants are required")
    stark.warn_if_strong(c)
    terms = monopole_shift_terms(qn, stark, g, rule, c, mode)
    if terms.linear_reduced > LINEAR_TERM_TOL:
        raise NumericalError(
            f"g-linear matrix element {terms.linear_reduced:.3e} does not vanish for {qn}"
        )
    return terms.quadratic


def dipole_from_magnetic_current(
    qn: QuantumNumbers, g, rule: QuadratureRule | None = None, c: Constants | None = None
) -> DipoleVector:
    """Dipole from the magnetic-current operator in the dressed state.

    Only z survives: the dressed state carries no azimuthal dependence, so
    the x and y integrands are proportional to cos(phi), sin(phi).
    """
    if c is None:
        raise DomainError("constants are required")
    unit = StarkConfig(1.0)
    terms = monopole_shift_terms(qn, unit, g, rule, c, Measure.VOLUME)
    return DipoleVector(0.0, 0.0, terms.total)


# --------------------------------------------------------------------------
# Identity between the two dipole routes
# --------------------------------------------------------------------------

SURFACE_DECAY_TOL = 1e-12


def surface_integrand(qn: QuantumNumbers, radius, c: Constants, nodes: int = 64):
    """R^3 times the angular integral of |psi|^2 on the sphere of radius R.

    This is the charge-density-sourced radial integrand whose tail the
    surface term at radius R has to account for.
    """
    x, w = np.polynomial.legendre.leggauss(nodes)
    radius = np.atleast_1d(np.asarray(radius, dtype=float))
    xi = radius[:, None] * (1.0 + x)
    eta = radius[:, None] * (1.0 - x)
    dens = radial_part(qn, xi, eta, c) ** 2
    return radius**3 * TWO_PI * (dens @ w)


@dataclass(frozen=True)
class SurfaceDecay:
    radius: float
    peak_radius: float
    ratio: float
    passed: bool


def surface_decay(qn: QuantumNumbers, c: Constants, radius: float | None = None,
                  tol: float = SURFACE_DECAY_TOL) -> SurfaceDecay:
    """Ratio of the surface integrand at ``radius`` (default 40 a0) to its peak."""
    a0 = c.bohr_radius
    radius = 40.0 * a0 if radius is None else radius
    grid = np.linspace(1e-3 * a0, max(radius, 6.0 * qn.n**2 * a0), 4001)
    prof = surface_integrand(qn, grid, c)
    at = float(surface_integrand(qn, radius, c)[0])
    k = int(np.argmax(prof))
    ratio = at / float(prof[k])
    return SurfaceDecay(float(radius), float(grid[k]), ratio, ratio < tol)


def residual_zeroing_charge(qn: QuantumNumbers, rule: QuadratureRule | None, c: Constants) -> MagneticCharge:
    """The g at which the magnetic-current dipole equals e<z>.

    The current-route dipole is exactly quadratic in g, so the zero of the
    residual is g = sqrt(d_density / d_current(g = dirac unit)) in Dirac units.
    """
    d_density = electric_dipole_conventional(qn, rule, c).dz
    if d_density == 0 or abs(d_density) < 1e-14 * c.elementary_charge * c.bohr_radius:
        raise DomainError(f"state {qn} has no permanent dipole; residual undefined")
    unit = c.dirac_unit
    d_unit = dipole_from_magnetic_current(qn, unit, rule, c).dz
    ratio = d_density / d_unit
    if ratio <= 0:
        raise NumericalError(
            f"dipole routes have opposite signs for {qn}; no real charge equates them"
        )
    return MagneticCharge(unit * math.sqrt(ratio), qn.n)


def identity_residual(qn: QuantumNumbers, g, rule: QuadratureRule | None = None,
                      c: Constants | None = None) -> float:
    """|d_density - d_current| / |d_density| for the z-components."""
    if c is None:
        raise DomainError("constants are required")
    rule = rule or rule_for(qn, c=c)
    d_density = electric_dipole_conventional(qn, rule, c).dz
    if abs(d_density) < 1e-14 * c.elementary_charge * c.bohr_radius:
        raise DomainError(f"state {qn} has no permanent dipole; residual undefined")
    d_current = dipole_from_magnetic_current(qn, g, rule, c).dz
    return abs(d_density - d_current) / abs(d_density)


@dataclass(frozen=True)
class IdentityReport:
    qn: QuantumNumbers
    dz_density: float
    dz_current: float
    g_zero: float
    coupling_zero: float
    coupling_sqrt3n: float
    residual: float
    surface: SurfaceDecay


def identity_check(qn: QuantumNumbers, rule: QuadratureRule | None, c: Constants,
                   surface_radius: float | None = None) -> IdentityReport:
    """Find the residual-zeroing charge, evaluate the residual there, run the decay check."""
    rule = rule or rule_for(qn, c=c)
    g0 = residual_zeroing_charge(qn, rule, c)
    return IdentityReport(
        qn=qn,
        dz_density=electric_dipole_conventional(qn, rule, c).dz,
        dz_current=dipole_from_magnetic_current(qn, g0, rule, c).dz,
        g_zero=g0.g,
        coupling_zero=g0.coupling(c),
        coupling_sqrt3n=math.sqrt(3.0) * qn.n,
        residual=identity_residual(qn, g0, rule, c),
        surface=surface_decay(qn, c, surface_radius),
    )


# --------------------------------------------------------------------------
# Dressed states and the string singularity
# --------------------------------------------------------------------------


def phase_exponent(ds: DressedState, p: ParabolicPoint, c: Constants) -> float:
    """(e g/hbar c) log(xi eta / a0^2) - M phi; singular where xi or eta vanish."""
    if p.xi == 0.0 and p.eta == 0.0:
        raise StringSingularityError("origin", "phase undefined at the origin")
    if p.xi == 0.0:
        raise StringSingularityError(
            "xi", f"phase singular on xi = 0 (negative z half-axis), z = {p.z}"
        )
    if p.eta == 0.0:
        raise StringSingularityError(
            "eta", f"phase singular on eta = 0 (positive z half-axis), z = {p.z}"
        )
    kappa = ds.charge.coupling(c)
    return kappa * math.log(p.xi * p.eta / c.bohr_radius**2) - ds.base.m * p.phi


def dressed_wavefunction(ds: DressedState, p: ParabolicPoint, c: Constants) -> complex:
    theta = phase_exponent(ds, p, c)
    return parabolic_wavefunction(ds.base, p, c) * complex(math.cos(theta), math.sin(theta))


@dataclass(frozen=True)
class StringReport:
    coupling: float
    slope_xi: float
    slope_eta: float
    singular_negative_z: bool
    singular_positive_z: bool
    modulus_preserved: bool


def _axis_slope(ds, points, c, coord):
    small = np.array([getattr(p, coord) for p in points])
    if len(points) < 3:
        raise DomainError(f"need at least 3 probes approaching {coord} = 0")
    if np.any(small <= 0) or small.min() / small.max() > 0.1:
        raise DomainError(f"probes do not approach {coord} = 0 (need >= 1 decade)")
    theta = np.array([phase_exponent(ds, p, c) for p in points])
    slope, _ = np.polyfit(np.log(small), theta, 1)
    return float(slope)


def string_singularity(ds: DressedState, axis_probe: Sequence[ParabolicPoint], c: Constants,
                       tol: float = 1e-9) -> StringReport:
    """Measure the log-divergence rate of the phase on each half of the z-axis.

    Probes with xi < eta approach the negative z half-axis (xi -> 0), the
    others the positive half-axis (eta -> 0).  Both groups are required.
    """
    to_xi = [p for p in axis_probe if p.xi < p.eta]
    to_eta = [p for p in axis_probe if p.eta < p.xi]
    if not to_xi or not to_eta:
        raise DomainError("probes must approach both xi = 0 and eta = 0")
    slope_xi = _axis_slope(ds, to_xi, c, "xi")
    slope_eta = _axis_slope(ds, to_eta, c, "eta")
    modulus_ok = all(
        math.isclose(abs(dressed_wavefunction(ds, p, c)), abs(parabolic_wavefunction(ds.base, p, c)),
                     rel_tol=1e-12, abs_tol=1e-300)
        for p in axis_probe
    )
    return StringReport(
        coupling=ds.charge.coupling(c),
        slope_xi=slope_xi,
        slope_eta=slope_eta,
        singular_negative_z=abs(slope_xi) > tol,
        singular_positive_z=abs(slope_eta) > tol,
        modulus_preserved=modulus_ok,
    )


def axis_probes(c: Constants, decades: int = 8, other: float = 1.0) -> list[ParabolicPoint]:
    """Probe points xi (or eta) = a0 10^-k, k = 1..decades, other coordinate fixed."""
    a0 = c.bohr_radius
    pts = []
    for k in range(1, decades + 1):
        pts.append(ParabolicPoint(a0 * 10.0**-k, other * a0, 0.3))
        pts.append(ParabolicPoint(other * a0, a0 * 10.0**-k, 0.3))
    return pts


# --------------------------------------------------------------------------
# Phase-term bookkeeping in the field-free equation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PhaseTermReport:
    xi_integral: float
    eta_integral: float
    xi_boundary: float
    eta_boundary: float
    log_flux_residual: float

    @property
    def vanishes(self) -> bool:
        return max(abs(self.xi_integral), abs(self.eta_integral)) < 1e-10


def log_flux_residual(points: Sequence[ParabolicPoint], c: Constants, h: float | None = None) -> float:
    """max |d/dxi (xi dF/dxi)| (and eta counterpart) by central differences."""
    a0 = c.bohr_radius
    h = a0 / 200.0 if h is None else h
    worst = 0.0
    for p in points:
        for x in (p.xi, p.eta):
            if x <= h:
                raise DomainError("point too close to the axis for the stencil")
            flux = lambda s: s * (1.0 / s)
            worst = max(worst, abs((flux(x + h) - flux(x - h)) / (2 * h)) * a0)
    return worst


def phase_term_expectation(qn: QuantumNumbers, rule: QuadratureRule | None = None,
                           c: Constants | None = None, points: Sequence[ParabolicPoint] = ()) -> PhaseTermReport:
    """Flat integrals of psi dpsi/dxi and psi dpsi/deta, with their boundary values.

    Each integral is a total derivative, so it equals -1/2 of the integral of
    psi^2 on the corresponding axis.  That boundary value is zero only when
    psi vanishes on the axis (|m| >= 1).  Results are made dimensionless with a0^2.
    """
    if c is None:
        raise DomainError("constants are required")
    rule = rule or rule_for(qn, c=c)
    a0 = c.bohr_radius

    def d_xi(xi, eta):
        return radial_part(qn, xi, eta, c) * radial_gradient(qn, xi, eta, c)[0]

    def d_eta(xi, eta):
        return radial_part(qn, xi, eta, c) * radial_gradient(qn, xi, eta, c)[1]

    nodes, weights = rule.nodes_xi, rule.factored_weights
    on_xi_axis = radial_part(qn, np.zeros_like(nodes), nodes, c)
    on_eta_axis = radial_part(qn, nodes, np.zeros_like(nodes), c)
    if not points:
        points = [ParabolicPoint(x * a0, y * a0) for x, y in ((0.3, 2.0), (1.0, 1.0), (5.0, 0.7))]
    area = a0 * a0
    return PhaseTermReport(
        xi_integral=integrate(d_xi, rule) * area,
        eta_integral=integrate(d_eta, rule) * area,
        xi_boundary=-0.5 * float(weights @ on_xi_axis**2) * area,
        eta_boundary=-0.5 * float(weights @ on_eta_axis**2) * area,
        log_flux_residual=log_flux_residual(points, c),
    )


# --------------------------------------------------------------------------
# Report record
# --------------------------------------------------------------------------


def monopole_report(qn: QuantumNumbers, c: Constants, field: float,
                    mode: "str | Measure" = Measure.FLAT, order: int = 80) -> dict:
    """One report row comparing both dipole routes and both energy-shift routes."""
    mode = Measure.parse(mode)
    rule = rule_for(qn, c=c, order=order)
    stark = StarkConfig(field)
    g = solve_magnetic_charge(qn.n, c)
    dz_density = electric_dipole_conventional(qn, rule, c).dz
    dz_current = dipole_from_magnetic_current(qn, g, rule, c).dz
    has_dipole = qn.n1 != qn.n2
    flat = monopole_shift_terms(qn, stark, g, rule, c, Measure.FLAT)
    volume = monopole_shift_terms(qn, stark, g, rule, c, Measure.VOLUME)
    chosen = flat if mode is Measure.FLAT else volume
    closed = shift_monopole_closed_form(qn, stark, g, c)
    row = {
        "qn": [qn.n1, qn.n2, qn.m],
        "mode": mode.value,
        "dz_charge_density": dz_density,
        "dz_magnetic_current": dz_current,
        "residual_identity": identity_residual(qn, g, rule, c) if has_dipole else None,
        "shift_monopole": closed,
        "shift_monopole_quadrature": chosen.quadratic,
        "shift_monopole_flat": flat.quadratic,
        "shift_monopole_volume": volume.quadratic,
        "volume_over_closed_form": volume.quadratic / closed if has_dipole else None,
        "flat_times_a0_over_volume": flat.quadratic * c.bohr_radius / volume.quadratic if has_dipole else None,
        "linear_term_reduced": chosen.linear_reduced,
        "shift_conventional": stark_shift_conventional(qn, stark, c, rule),
        "g_solved": g.g,
        "eg_over_hbar_c": g.coupling(c),
        "deviation_from_sqrt3n": g.coupling(c) - math.sqrt(3.0) * qn.n,
    }
    if has_dipole:
        g0 = residual_zeroing_charge(qn, rule, c)
        row["g_identity_zero"] = g0.g
        row["eg_over_hbar_c_identity_zero"] = g0.coupling(c)
    else:
        row["g_identity_zero"] = None
        row["eg_over_hbar_c_identity_zero"] = None
    return row

