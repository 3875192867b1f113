"""Hydrogen bound states in parabolic coordinates.

Coordinates are xi = r + z, eta = r - z and the azimuth phi, with volume
element dV = (xi + eta)/4 dxi deta dphi.  The eigenfunctions are the separable
Stark-basis states

    psi = N f(n1, |m|; xi/(n a0)) f(n2, |m|; eta/(n a0)) exp(i m phi)
    f(k, a; u) = u^(a/2) exp(-u/2) L_k^a(u)

with N fixed analytically so that the integral of |psi|^2 dV is one.  The
(xi, eta) factor is real; all complex structure lives in exp(i m phi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import roots_laguerre, roots_legendre

from .errors import DomainError, NumericalError
from .units import Constants

TWO_PI = 2.0 * math.pi
DEFAULT_ORDER = 80


@dataclass(frozen=True)
class QuantumNumbers:
    """Parabolic quantum numbers (n1, n2, m); principal n = n1 + n2 + |m| + 1."""

    n1: int
    n2: int
    m: int = 0

    def __post_init__(self):
        for name in ("n1", "n2", "m"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise DomainError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.n1 < 0 or self.n2 < 0:
            raise DomainError(
                f"n1 and n2 must be nonnegative, got ({self.n1}, {self.n2})"
            )

    @property
    def n(self) -> int:
        return self.n1 + self.n2 + abs(self.m) + 1

    def swapped(self) -> "QuantumNumbers":
        """The z-mirrored state (n1 <-> n2)."""
        return QuantumNumbers(self.n2, self.n1, self.m)

    def __str__(self):
        return f"({self.n1},{self.n2},{self.m})"


def states_with_n(n: int, m: int | None = None) -> list[QuantumNumbers]:
    """All parabolic states of principal quantum number n (optionally fixed m)."""
    if n < 1:
        raise DomainError(f"principal quantum number must be >= 1, got {n}")
    out = []
    ms = range(-(n - 1), n) if m is None else [m]
    for mm in ms:
        rest = n - 1 - abs(mm)
        for n1 in range(rest + 1):
            out.append(QuantumNumbers(n1, rest - n1, mm))
    return out


@dataclass(frozen=True)
class ParabolicPoint:
    xi: float
    eta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.xi) and math.isfinite(self.eta) and math.isfinite(self.phi)):
            raise DomainError("parabolic coordinates must be finite")
        if self.xi < 0 or self.eta < 0:
            raise DomainError(f"xi and eta must be >= 0, got ({self.xi}, {self.eta})")
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)

    @property
    def r(self) -> float:
        return 0.5 * (self.xi + self.eta)

    @property
    def z(self) -> float:
        return 0.5 * (self.xi - self.eta)

    @property
    def rho(self) -> float:
        return math.sqrt(self.xi * self.eta)

    def to_cartesian(self) -> tuple[float, float, float]:
        rho = self.rho
        return rho * math.cos(self.phi), rho * math.sin(self.phi), self.z

    @classmethod
    def from_cartesian(cls, x: float, y: float, z: float) -> "ParabolicPoint":
        r = math.sqrt(x * x + y * y + z * z)
        return cls(r + z, r - z, math.atan2(y, x))


def laguerre(k: int, alpha: float, x):
    """Generalized Laguerre polynomial L_k^alpha(x) by the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    if k < 0:
        return np.zeros_like(x)
    prev = np.ones_like(x)
    if k == 0:
        return prev
    cur = 1.0 + alpha - x
    for j in range(1, k):
        prev, cur = cur, ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev) / (j + 1)
    return cur


def laguerre_derivative(k: int, alpha: float, x):
    return -laguerre(k - 1, alpha + 1, x)


def _normalization(qn: QuantumNumbers, a0: float) -> float:
    a = abs(qn.m)
    moments = math.perm(qn.n1 + a, a) * math.perm(qn.n2 + a, a)
    return 1.0 / math.sqrt(math.pi * qn.n**4 * a0**3 * moments)


def _factor(k: int, a: int, u):
    return u ** (0.5 * a) * np.exp(-0.5 * u) * laguerre(k, a, u)


def _factor_derivative(k: int, a: int, u):
    lag = laguerre(k, a, u)
    dlag = laguerre_derivative(k, a, u)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_term = np.where(u > 0, 0.5 * a / u, 0.0) if a else 0.0
    return u ** (0.5 * a) * np.exp(-0.5 * u) * ((log_term - 0.5) * lag + dlag)


def radial_part(qn: QuantumNumbers, xi, eta, c: Constants):
    """The real (xi, eta) factor of the normalized eigenfunction, vectorized."""
    a0 = c.bohr_radius
    s = qn.n * a0
    a = abs(qn.m)
    u = np.asarray(xi, dtype=float) / s
    v = np.asarray(eta, dtype=float) / s
    return _normalization(qn, a0) * _factor(qn.n1, a, u) * _factor(qn.n2, a, v)


def radial_gradient(qn: QuantumNumbers, xi, eta, c: Constants):
    """Analytic (d/dxi, d/deta) of :func:`radial_part`."""
    a0 = c.bohr_radius
    s = qn.n * a0
    a = abs(qn.m)
    u = np.asarray(xi, dtype=float) / s
    v = np.asarray(eta, dtype=float) / s
    norm = _normalization(qn, a0)
    fu, fv = _factor(qn.n1, a, u), _factor(qn.n2, a, v)
    dfu, dfv = _factor_derivative(qn.n1, a, u), _factor_derivative(qn.n2, a, v)
    return norm * dfu * fv / s, norm * fu * dfv / s


def parabolic_wavefunction(qn: QuantumNumbers, p: ParabolicPoint, c: Constants) -> complex:
    """Normalized eigenfunction value psi_{n1 n2 m}(xi, eta, phi)."""
    if not isinstance(qn, QuantumNumbers):
        raise DomainError("qn must be a QuantumNumbers instance")
    amplitude = float(radial_part(qn, p.xi, p.eta, c))
    return amplitude * complex(math.cos(qn.m * p.phi), math.sin(qn.m * p.phi))


def bound_energy(n: int, c: Constants) -> float:
    """Field-free level -e^2/(2 a0 n^2)."""
    if int(n) != n or n < 1:
        raise DomainError(f"principal quantum number must be an integer >= 1, got {n!r}")
    return -c.elementary_charge**2 / (2.0 * c.bohr_radius * n * n)


def apply_h0(
    state_fn: Callable[[ParabolicPoint], complex],
    p: ParabolicPoint,
    c: Constants,
    h: float | None = None,
    *,
    coulomb: bool = True,
    centrifugal: bool = True,
) -> complex:
    """Field-free Hamiltonian applied to ``state_fn`` at ``p`` by finite differences.

    Uses the conservative second-order stencil for d/dxi(xi d/dxi) and its eta
    counterpart, a central difference in phi (angular step h/a0), and the
    Coulomb term -2e^2/(xi + eta).
    """
    a0 = c.bohr_radius
    if h is None:
        h = a0 / 200.0
    if not h > 0:
        raise DomainError("finite-difference step must be positive")
    xi, eta, phi = p.xi, p.eta, p.phi
    if xi <= 2 * h or eta <= 2 * h:
        raise DomainError(
            f"point (xi={xi}, eta={eta}) within 2h={2 * h} of the z-axis; stencil undefined"
        )

    def f(dxi=0.0, deta=0.0, dphi=0.0):
        return state_fn(ParabolicPoint(xi + dxi, eta + deta, phi + dphi))

    f0 = f()
    d_xi = ((xi + h / 2) * (f(dxi=h) - f0) - (xi - h / 2) * (f0 - f(dxi=-h))) / h**2
    d_eta = ((eta + h / 2) * (f(deta=h) - f0) - (eta - h / 2) * (f0 - f(deta=-h))) / h**2
    laplacian = 4.0 / (xi + eta) * (d_xi + d_eta)
    if centrifugal:
        hp = h / a0
        d_phi = (f(dphi=hp) - 2.0 * f0 + f(dphi=-hp)) / hp**2
        laplacian += d_phi / (xi * eta)
    value = -(c.hbar**2) / (2.0 * c.electron_mass) * laplacian
    if coulomb:
        value -= 2.0 * c.elementary_charge**2 / (xi + eta) * f0
    return value


# --------------------------------------------------------------------------
# Quadrature
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _unit_laguerre(order: int):
    x, w = roots_laguerre(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@dataclass(frozen=True)
class QuadratureRule:
    """Tensor Gauss-Laguerre rule on [0, inf)^2 with node scaling ``scale``.

    ``weights`` are the standard weights for the weight function exp(-x);
    :attr:`factored_weights` fold exp(x) and the scale back in so that
    ``sum W_i W_j f(xi_i, eta_j)`` approximates the plain double integral.
    """

    order: int
    scale: float = 1.0

    def __post_init__(self):
        if int(self.order) != self.order or self.order < 1:
            raise DomainError(f"quadrature order must be a positive integer, got {self.order}")
        if not self.scale > 0:
            raise DomainError(f"quadrature scale must be positive, got {self.scale}")

    @property
    def abscissae(self) -> np.ndarray:
        return _unit_laguerre(self.order)[0]

    @property
    def weights(self) -> np.ndarray:
        return _unit_laguerre(self.order)[1]

    @property
    def nodes_xi(self) -> np.ndarray:
        return self.scale * self.abscissae

    @property
    def nodes_eta(self) -> np.ndarray:
        return self.scale * self.abscissae

    @property
    def factored_weights(self) -> np.ndarray:
        x, w = _unit_laguerre(self.order)
        with np.errstate(divide="ignore"):
            return self.scale * np.exp(np.log(w) + x)

    def grid(self):
        """(xi, eta) meshes, xi along axis 0."""
        return np.meshgrid(self.nodes_xi, self.nodes_eta, indexing="ij")

    def doubled(self) -> "QuadratureRule":
        return QuadratureRule(2 * self.order, self.scale)


def rule_for(*states: QuantumNumbers, c: Constants, order: int = DEFAULT_ORDER) -> QuadratureRule:
    """Rule whose exponential weight matches the product of the given states.

    psi_a psi_b decays as exp(-x (1/n_a + 1/n_b)/(2 a0)); the scale is the
    harmonic mean of the n_i a0 so the integrand is polynomial times exp(-x/s).
    """
    if not states:
        raise DomainError("rule_for needs at least one state")
    if len(states) == 1:
        states = states * 2
    inv = sum(1.0 / q.n for q in states) / len(states)
    return QuadratureRule(order, c.bohr_radius / inv)


def integrate(fn: Callable, rule: QuadratureRule):
    """Double integral over xi, eta in [0, inf) of ``fn(xi, eta)``.

    ``fn`` is called once on the full meshgrid and must be vectorized.  The
    caller supplies any (xi + eta)/4 volume factor and azimuthal 2 pi.
    """
    xi, eta = rule.grid()
    values = np.asarray(fn(xi, eta))
    if values.shape != xi.shape:
        values = np.broadcast_to(values, xi.shape)
    bad = ~np.isfinite(values)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise NumericalError(
            f"integrand not finite at node xi={xi[i, j]!r}, eta={eta[i, j]!r}"
        )
    w = rule.factored_weights
    result = w @ values @ w
    return result.item() if np.ndim(result) == 0 else result


@lru_cache(maxsize=None)
def _unit_legendre(order: int):
    x, w = roots_legendre(order)
    x, w = 0.5 * (x + 1.0), 0.5 * w
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def integrate_sum_coordinates(fn: Callable, rule: QuadratureRule):
    """Double integral of ``fn(xi, eta)`` using xi = s t, eta = s (1 - t).

    Gauss-Laguerre in s (same order and scale as ``rule``) times
    Gauss-Legendre in t on (0, 1), with Jacobian s.  Integrands carrying a
    1/(xi + eta) factor become polynomial in (s, t), so the rule stays exact
    where the tensor rule of :func:`integrate` only converges algebraically.
    """
    t, wt = _unit_legendre(rule.order)
    s = rule.nodes_xi[:, None]
    xi, eta = s * t[None, :], s * (1.0 - t[None, :])
    values = np.asarray(fn(xi, eta)) * s
    bad = ~np.isfinite(values)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise NumericalError(
            f"integrand not finite at node xi={xi[i, j]!r}, eta={eta[i, j]!r}"
        )
    result = rule.factored_weights @ values @ wt
    return result.item() if np.ndim(result) == 0 else result


def expectation(qn: QuantumNumbers, fn: Callable, rule: QuadratureRule, c: Constants):
    """<qn| fn(xi, eta) |qn> with the full volume element."""

    def integrand(xi, eta):
        psi = radial_part(qn, xi, eta, c)
        return psi * psi * fn(xi, eta) * (xi + eta) / 4.0

    return TWO_PI * integrate(integrand, rule)


def norm(qn: QuantumNumbers, rule: QuadratureRule | None = None, c: Constants | None = None) -> float:
    if c is None:
        raise DomainError("constants are required")
    rule = rule or rule_for(qn, c=c)
    return expectation(qn, lambda xi, eta: 1.0, rule, c)


def overlap(a: QuantumNumbers, b: QuantumNumbers, rule: QuadratureRule | None, c: Constants) -> float:
    """<a|b>.  States with different m are orthogonal by the azimuthal integral."""
    if a.m != b.m:
        return 0.0
    rule = rule or rule_for(a, b, c=c)

    def integrand(xi, eta):
        return radial_part(a, xi, eta, c) * radial_part(b, xi, eta, c) * (xi + eta) / 4.0

    return TWO_PI * integrate(integrand, rule)
