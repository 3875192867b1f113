"""Beam deflection and ring/SQUID detection of magnetically charged atoms.

Atoms carrying magnetic charge g move through a box of uniform static
electric field and feel the dual Lorentz force

    F = -(g / c) v x E,

which is always perpendicular to v: inside the box the motion is the exact
dual of cyclotron motion, radius m v c / (g E).  Opposite charges bend in
opposite directions.  A charge threading a superconducting ring changes the
flux through it by 4 pi g, read out in flux quanta hc/2e.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ResolutionError, ValidityError
from .monopole import MagneticCharge
from .parabolic import bound_energy
from .units import Constants, photon_energy

NONRELATIVISTIC_LIMIT = 0.01
TWO_PHOTON_TOLERANCE = 2e-3


def _vec(value, name: str) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.shape != (3,) or not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be a finite 3-vector, got {value!r}")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


# --------------------------------------------------------------------------
# Excitation energetics
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ExcitationReport:
    wavelength: float
    photon_energy: float
    two_photon_sum: float
    transition_energy: float
    relative_mismatch: float
    single_photon_mismatch: float

    @property
    def two_photon_ok(self) -> bool:
        return self.relative_mismatch < TWO_PHOTON_TOLERANCE

    @property
    def single_photon_ok(self) -> bool:
        return self.single_photon_mismatch < TWO_PHOTON_TOLERANCE


def excitation_check(wavelength: float, c: Constants) -> ExcitationReport:
    """Compare one and two photons of ``wavelength`` with the 1 -> 2 gap."""
    e_photon = photon_energy(wavelength, c)
    gap = bound_energy(2, c) - bound_energy(1, c)
    return ExcitationReport(
        wavelength=wavelength,
        photon_energy=e_photon,
        two_photon_sum=2.0 * e_photon,
        transition_energy=gap,
        relative_mismatch=abs(2.0 * e_photon - gap) / gap,
        single_photon_mismatch=abs(e_photon - gap) / gap,
    )


# --------------------------------------------------------------------------
# Geometry and dynamics
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BeamSpec:
    mass: float
    speed: float
    position: np.ndarray
    direction: np.ndarray
    charge: MagneticCharge

    def __post_init__(self):
        if not self.mass > 0:
            raise DomainError("beam particle mass must be positive")
        if not self.speed > 0:
            raise DomainError("beam speed must be positive")
        object.__setattr__(self, "position", _vec(self.position, "position"))
        d = _vec(self.direction, "direction")
        norm = float(np.linalg.norm(d))
        if norm == 0:
            raise DomainError("beam direction must be nonzero")
        object.__setattr__(self, "direction", _vec(d / norm, "direction"))

    @property
    def velocity(self) -> np.ndarray:
        return self.speed * self.direction

    def with_charge(self, charge: MagneticCharge) -> "BeamSpec":
        return BeamSpec(self.mass, self.speed, self.position, self.direction, charge)


@dataclass(frozen=True)
class FieldRegion:
    """Uniform field inside the closed box [lower, upper]; zero outside."""

    field: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        for name in ("field", "lower", "upper"):
            object.__setattr__(self, name, _vec(getattr(self, name), name))
        if np.any(self.upper <= self.lower):
            raise DomainError("field region must have positive extent along every axis")

    @classmethod
    def everywhere(cls, field) -> "FieldRegion":
        big = 1e300
        return cls(field, [-big] * 3, [big] * 3)

    @property
    def strength(self) -> float:
        return float(np.linalg.norm(self.field))

    def contains(self, x) -> bool:
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def field_at(self, x) -> np.ndarray:
        return self.field if self.contains(x) else np.zeros(3)


@dataclass(frozen=True)
class RingDetector:
    radius: float
    center: np.ndarray
    normal: np.ndarray

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError("ring radius must be positive")
        object.__setattr__(self, "center", _vec(self.center, "center"))
        n = _vec(self.normal, "normal")
        if abs(float(np.linalg.norm(n)) - 1.0) > 1e-12:
            raise DomainError("ring normal must be a unit vector (to 1e-12)")
        object.__setattr__(self, "normal", n)

    @classmethod
    def facing(cls, radius, center, normal) -> "RingDetector":
        n = np.asarray(normal, dtype=float)
        return cls(radius, center, n / np.linalg.norm(n))


@dataclass
class Trajectory:
    t: np.ndarray
    position: np.ndarray
    velocity: np.ndarray
    dt: float
    charge: MagneticCharge = field(default_factory=lambda: MagneticCharge(0.0))

    def __len__(self):
        return len(self.t)

    @property
    def speed(self) -> np.ndarray:
        return np.linalg.norm(self.velocity, axis=1)

    def rows(self) -> np.ndarray:
        return np.column_stack([self.t, self.position, self.velocity])


def dual_lorentz_force(g, v, E, c: Constants) -> np.ndarray:
    """-(g/c) v x E: force on a magnetic charge moving through an electric field."""
    g = g.g if isinstance(g, MagneticCharge) else float(g)
    v = np.asarray(v, dtype=float)
    E = np.asarray(E, dtype=float)
    cross = np.array([
        v[1] * E[2] - v[2] * E[1],
        v[2] * E[0] - v[0] * E[2],
        v[0] * E[1] - v[1] * E[0],
    ])
    return -(g / c.speed_of_light) * cross


def integrate_trajectory(beam: BeamSpec, region: FieldRegion, dt: float, n_steps: int,
                         c: Constants) -> Trajectory:
    """Classical fixed-step RK4 integration of the dual-Lorentz equation of motion."""
    if not dt > 0:
        raise DomainError("time step must be positive")
    if int(n_steps) != n_steps or n_steps < 1:
        raise DomainError("n_steps must be a positive integer")
    n_steps = int(n_steps)
    limit = NONRELATIVISTIC_LIMIT * c.speed_of_light
    if beam.speed >= limit:
        raise ValidityError(f"beam speed {beam.speed:g} violates v/c < {NONRELATIVISTIC_LIMIT}")

    g_over_mc = beam.charge.g / (beam.mass * c.speed_of_light)
    zero = np.zeros(3)

    def accel(v, E):
        return -g_over_mc * np.array([
            v[1] * E[2] - v[2] * E[1],
            v[2] * E[0] - v[0] * E[2],
            v[0] * E[1] - v[1] * E[0],
        ])

    def rk4(x, v, h, E):
        a1 = accel(v, E)
        v2 = v + 0.5 * h * a1
        a2 = accel(v2, E)
        v3 = v + 0.5 * h * a2
        a3 = accel(v3, E)
        v4 = v + h * a3
        a4 = accel(v4, E)
        return (x + h / 6.0 * (v + 2.0 * (v2 + v3) + v4),
                v + h / 6.0 * (a1 + 2.0 * (a2 + a3) + a4))

    pos = np.empty((n_steps + 1, 3))
    vel = np.empty((n_steps + 1, 3))
    pos[0], vel[0] = beam.position, beam.velocity
    x, v = pos[0].copy(), vel[0].copy()
    for k in range(n_steps):
        inside = region.contains(x)
        E = region.field if inside else zero
        x_new, v_new = rk4(x, v, dt, E)
        if region.contains(x_new) != inside:
            # The force jumps at the box wall; split the step there so that
            # every RK4 stage sees a constant field.
            lo, hi = 0.0, 1.0
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if region.contains(rk4(x, v, mid * dt, E)[0]) == inside:
                    lo = mid
                else:
                    hi = mid
            xb, vb = rk4(x, v, hi * dt, E)
            x_new, v_new = rk4(xb, vb, (1.0 - hi) * dt, zero if inside else region.field)
        x, v = x_new, v_new
        if v @ v >= limit * limit:
            raise ValidityError(f"speed exceeded v/c = {NONRELATIVISTIC_LIMIT} at step {k + 1}")
        pos[k + 1], vel[k + 1] = x, v
    t = dt * np.arange(n_steps + 1)
    return Trajectory(t, pos, vel, dt, beam.charge)


def gyroradius(mass: float, speed_perp: float, g, field_strength: float, c: Constants) -> float:
    """m v c / (g E): radius of the circular orbit in a uniform field."""
    g = g.g if isinstance(g, MagneticCharge) else float(g)
    return mass * speed_perp * c.speed_of_light / (abs(g) * field_strength)


# --------------------------------------------------------------------------
# Beam separation
# --------------------------------------------------------------------------


class NoCrossingError(DomainError):
    pass


def plane_crossing(traj: Trajectory, plane_z: float) -> np.ndarray:
    """First point where the trajectory reaches z = plane_z (linear interpolation)."""
    z = traj.position[:, 2] - plane_z
    hits = np.nonzero((z[:-1] < 0) & (z[1:] >= 0) | (z[:-1] > 0) & (z[1:] <= 0))[0]
    if z[0] == 0:
        return traj.position[0].copy()
    if hits.size == 0:
        raise NoCrossingError(f"trajectory never reaches z = {plane_z}")
    k = int(hits[0])
    f = z[k] / (z[k] - z[k + 1])
    return traj.position[k] + f * (traj.position[k + 1] - traj.position[k])


def beam_separation(a: Trajectory, b: Trajectory, plane_z: float) -> float:
    """Transverse (x, y) distance between the two beams where they cross z = plane_z."""
    pa, pb = plane_crossing(a, plane_z), plane_crossing(b, plane_z)
    return float(math.hypot(pa[0] - pb[0], pa[1] - pb[1]))


# --------------------------------------------------------------------------
# Ring detector and SQUID read-out
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Crossing:
    time: float
    point: tuple
    sign: int


def _hermite_roots(s0, s1, d0, d1):
    """Roots in [0, 1] of the cubic Hermite interpolant of a signed distance."""
    # p(u) = a u^3 + b u^2 + d0 u + s0
    a = 2 * s0 - 2 * s1 + d0 + d1
    b = -3 * s0 + 3 * s1 - 2 * d0 - d1
    roots = np.roots([a, b, d0, s0]) if (a or b or d0) else np.array([])
    real = roots[np.abs(roots.imag) < 1e-12].real
    return np.sort(real[(real >= 0) & (real <= 1)])


def ring_crossings(traj: Trajectory, ring: RingDetector) -> list[Crossing]:
    """Signed passages through the ring's disk, in time order.

    A crossing is a sign change of the signed distance to the ring plane
    whose linearly interpolated point lies inside the disk.  If the cubic
    Hermite interpolant of that distance over one step has two or more roots
    near the disk, the step is too coarse and :class:`ResolutionError` is raised.
    """
    rel = traj.position - ring.center
    s = rel @ ring.normal
    ds = (traj.velocity @ ring.normal) * traj.dt
    out = []
    for k in range(len(s) - 1):
        if s[k] == 0 and k > 0:
            continue
        change = (s[k] < 0 <= s[k + 1]) or (s[k] > 0 >= s[k + 1]) or (s[k] == 0 and s[k + 1] != 0)
        roots = _hermite_roots(s[k], s[k + 1], ds[k], ds[k + 1])
        if len(roots) >= 2:
            seg = rel[k] + np.outer(roots, rel[k + 1] - rel[k])
            radial = seg - np.outer(seg @ ring.normal, ring.normal)
            if np.any(np.linalg.norm(radial, axis=1) <= ring.radius * 1.5):
                raise ResolutionError(
                    f"step {k} (t = {traj.t[k]:.6g}) may cross the ring plane twice; reduce dt"
                )
        if not change:
            continue
        f = s[k] / (s[k] - s[k + 1]) if s[k] != s[k + 1] else 0.0
        point = rel[k] + f * (rel[k + 1] - rel[k])
        radial = point - (point @ ring.normal) * ring.normal
        if np.linalg.norm(radial) <= ring.radius:
            sign = 1 if s[k + 1] > s[k] else -1
            where = ring.center + point
            out.append(Crossing(float(traj.t[k] + f * traj.dt), tuple(float(v) for v in where), sign))
    return out


def ring_flux_event(traj: Trajectory, ring: RingDetector, g, c: Constants) -> float:
    """Total flux change 4 pi g per signed crossing of the ring's disk."""
    g = g.g if isinstance(g, MagneticCharge) else float(g)
    return sum(4.0 * math.pi * g * x.sign for x in ring_crossings(traj, ring))


def squid_signal(flux: float, c: Constants) -> float:
    """Flux in units of the superconducting flux quantum hc/2e = pi hbar c / e."""
    return flux / c.flux_quantum
