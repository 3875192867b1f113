import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sint

from starkmono.errors import DomainError, StringSingularityError
from starkmono.monopole import (
    DressedState,
    MagneticCharge,
    Measure,
    PerturbativeWarning,
    StarkConfig,
    axis_probes,
    dipole_from_magnetic_current,
    dirac_charge,
    dressed_wavefunction,
    electric_dipole_conventional,
    identity_check,
    identity_residual,
    magnetic_current,
    monopole_report,
    monopole_shift_terms,
    phase_exponent,
    phase_term_expectation,
    residual_zeroing_charge,
    solve_magnetic_charge,
    stark_shift_conventional,
    stark_shift_monopole,
    string_singularity,
    surface_decay,
    surface_integrand,
)
from starkmono.parabolic import ParabolicPoint, QuantumNumbers, parabolic_wavefunction, radial_part, rule_for, states_with_n
from starkmono.units import make_unit_system

AU = make_unit_system("atomic")


def m0_states(n_max):
    return [q for n in range(1, n_max + 1) for q in states_with_n(n, m=0)]


def flat_oracle(qn, c, g, field):
    """Quadratic shift with the flat measure by adaptive 2-D quadrature.

    Reduced by hand: the operator acting on psi exp(i k F) gives
    (e g^2 lambda E / 4 hbar c) psi^2 (xi - eta)/(xi + eta).
    """
    pref = c.elementary_charge * g**2 * c.compton_wavelength * field / (4 * c.hbar * c.speed_of_light)
    a0 = c.bohr_radius
    f = lambda eta, xi: float(radial_part(qn, xi * a0, eta * a0, c)) ** 2 * (xi - eta) / (xi + eta)
    val, _ = sint.dblquad(f, 0, 40 * qn.n, 0, 40 * qn.n, epsabs=1e-14, epsrel=1e-11)
    return pref * val * a0 * a0


# --- charge relations ----------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 11))
def test_solve_magnetic_charge(units, n):
    g = solve_magnetic_charge(n, units)
    assert math.isclose(g.coupling(units) ** 2, 3 * n * n, rel_tol=1e-12)
    assert g.n == n


def test_charge_values_low_levels(cgs):
    assert math.isclose(solve_magnetic_charge(1, cgs).coupling(cgs), 1.7320508075688772, rel_tol=1e-12)
    assert math.isclose(solve_magnetic_charge(2, cgs).coupling(cgs), 2 * math.sqrt(3), rel_tol=1e-12)
    ratio = solve_magnetic_charge(1, cgs).g / dirac_charge(1, cgs).g
    assert math.isclose(ratio, 2 * math.sqrt(3), rel_tol=1e-12)


def test_closed_forms_agree_at_solved_charge(cgs):
    from starkmono.monopole import shift_monopole_closed_form, stark_shift_closed_form
    for qn in m0_states(5):
        stark = StarkConfig(1e-3 * cgs.atomic_field)
        a = shift_monopole_closed_form(qn, stark, solve_magnetic_charge(qn.n, cgs), cgs)
        b = stark_shift_closed_form(qn, stark, cgs)
        assert math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-300)


def test_dirac_charge(units):
    assert math.isclose(dirac_charge(1, units).coupling(units), 0.5, rel_tol=1e-15)
    assert math.isclose(dirac_charge(2, units).coupling(units), 1.0, rel_tol=1e-15)
    for bad in (0, -3, 1.5):
        with pytest.raises(DomainError):
            dirac_charge(bad, units)
    with pytest.raises(DomainError):
        solve_magnetic_charge(0, units)


def test_no_dirac_charge_equals_solved_charge():
    k = np.arange(1, 1_000_001)
    for n in range(1, 11):
        assert np.min(np.abs(k / 2 - math.sqrt(3) * n)) > 1e-7


# --- conventional dipole and shift -----------------------------------------


@pytest.mark.parametrize("qn", m0_states(4))
def test_dipole_closed_form(units, qn):
    d = electric_dipole_conventional(qn, rule_for(qn, c=units, order=80), units)
    expected = 1.5 * qn.n * (qn.n1 - qn.n2) * units.elementary_charge * units.bohr_radius
    scale = units.elementary_charge * units.bohr_radius
    assert abs(d.dz - expected) <= 1e-8 * max(abs(expected), scale)
    assert d.dx == d.dy == 0.0


def test_dipole_against_adaptive_quadrature():
    qn = QuantumNumbers(0, 1, 0)
    f = lambda eta, xi: 2 * math.pi * float(radial_part(qn, xi, eta, AU)) ** 2 * (xi + eta) / 4 * (xi - eta) / 2
    val, _ = sint.dblquad(f, 0, 120, 0, 120, epsabs=1e-12)
    assert abs(val - (-3.0)) < 1e-8
    assert math.isclose(electric_dipole_conventional(qn, None, AU).dz, val, rel_tol=1e-8)


def test_dipole_exchange_mirror(units):
    for qn in m0_states(4):
        a = electric_dipole_conventional(qn, None, units).dz
        b = electric_dipole_conventional(qn.swapped(), None, units).dz
        assert abs(a + b) <= 1e-10 * units.elementary_charge * units.bohr_radius


def test_stark_shift_conventional():
    qn = QuantumNumbers(0, 1, 0)
    assert math.isclose(stark_shift_conventional(qn, StarkConfig(1e-4), AU), -3e-4, rel_tol=1e-12)
    assert stark_shift_conventional(QuantumNumbers(1, 1, 0), StarkConfig(1e-4), AU) == 0.0
    a = stark_shift_conventional(qn, StarkConfig(1e-5), AU)
    b = stark_shift_conventional(qn, StarkConfig(2e-5), AU)
    assert math.isclose(b, 2 * a, rel_tol=1e-15)


def test_strong_field_warns():
    with pytest.warns(PerturbativeWarning):
        stark_shift_conventional(QuantumNumbers(0, 1, 0), StarkConfig(0.5), AU)


def test_stark_config_rejects_negative():
    with pytest.raises(DomainError):
        StarkConfig(-1.0)


# --- magnetic current -------------------------------------------------------


def _numeric_l_density(qn, x, y, z, c, h=1e-5):
    """Re(psi* (-i hbar) r x grad psi) by central differences in Cartesian space."""
    psi = lambda *v: parabolic_wavefunction(qn, ParabolicPoint.from_cartesian(*v), c)
    grad = []
    for k in range(3):
        e = np.zeros(3)
        e[k] = h
        p = np.array([x, y, z])
        grad.append((psi(*(p + e)) - psi(*(p - e))) / (2 * h))
    grad = np.array(grad)
    r = np.array([x, y, z])
    lpsi = -1j * c.hbar * np.cross(r, grad)
    return np.real(np.conj(psi(x, y, z)) * lpsi)


@pytest.mark.parametrize("qn", [QuantumNumbers(0, 0, 1), QuantumNumbers(1, 0, -1), QuantumNumbers(0, 1, 2)])
def test_magnetic_current_against_finite_differences(qn):
    g = 0.7
    for x, y, z in [(1.2, 0.4, 0.0), (0.5, -1.1, 0.8), (-2.0, 0.3, -1.4)]:
        p = ParabolicPoint.from_cartesian(x, y, z)
        expected = g * _numeric_l_density(qn, x, y, z, AU) / (AU.electron_mass * AU.speed_of_light * p.r)
        got = magnetic_current(qn, g, p, AU)
        assert np.allclose(got, expected, rtol=1e-7, atol=1e-9 * np.abs(expected).max())


def test_magnetic_current_examples(cgs):
    g = solve_magnetic_charge(2, cgs)
    a0 = cgs.bohr_radius
    for qn in m0_states(3):
        assert np.all(magnetic_current(qn, g, ParabolicPoint(a0, 2 * a0, 0.3), cgs) == 0)
    qn = QuantumNumbers(0, 0, 1)
    p = ParabolicPoint(1.5 * a0, 1.5 * a0, 0.9)  # z = 0
    dens = abs(parabolic_wavefunction(qn, p, cgs)) ** 2
    expected = g.g * cgs.hbar * dens / (cgs.electron_mass * cgs.speed_of_light * p.r)
    j = magnetic_current(qn, g, p, cgs)
    assert math.isclose(np.linalg.norm(j), expected, rel_tol=1e-12)
    assert np.allclose(magnetic_current(qn, g.scaled(2), p, cgs), 2 * j, rtol=1e-15)
    with pytest.raises(DomainError):
        magnetic_current(qn, g, ParabolicPoint(0.0, 0.0), cgs)


# --- magnetic-current route --------------------------------------------------------


def test_flat_shift_against_oracle(cgs):
    for qn in (QuantumNumbers(0, 1, 0), QuantumNumbers(2, 0, 0), QuantumNumbers(0, 2, 1)):
        g = solve_magnetic_charge(qn.n, cgs)
        field = 1e-4 * cgs.atomic_field
        got = stark_shift_monopole(qn, StarkConfig(field), g, None, cgs, "flat")
        assert math.isclose(got, flat_oracle(qn, cgs, g.g, field), rel_tol=1e-8)


def test_flat_shift_value_atomic():
    qn = QuantumNumbers(0, 1, 0)
    got = stark_shift_monopole(qn, StarkConfig(1e-4), solve_magnetic_charge(2, AU), None, AU, "flat")
    assert math.isclose(got, -1e-4 / (4 * math.pi), rel_tol=1e-10)


@pytest.mark.parametrize("qn", [q for q in m0_states(4) if q.n1 != q.n2])
def test_volume_shift_is_half_the_closed_form(cgs, qn):
    from starkmono.monopole import shift_monopole_closed_form
    g = solve_magnetic_charge(qn.n, cgs)
    stark = StarkConfig(1e-4 * cgs.atomic_field)
    got = stark_shift_monopole(qn, stark, g, None, cgs, "volume")
    assert math.isclose(got / shift_monopole_closed_form(qn, stark, g, cgs), 0.5, rel_tol=1e-9)


@pytest.mark.parametrize("mode", ["flat", "volume"])
def test_shift_symmetries(mode):
    stark = StarkConfig(1e-4)
    for qn in m0_states(4):
        g = solve_magnetic_charge(qn.n, AU)
        a = stark_shift_monopole(qn, stark, g, None, AU, mode)
        b = stark_shift_monopole(qn.swapped(), stark, g, None, AU, mode)
        assert abs(a + b) <= 1e-10 * max(abs(a), 1e-4)
        if qn.n1 == qn.n2:
            assert abs(a) < 1e-10 * 1e-4
        a2 = stark_shift_monopole(qn, stark, g.scaled(2), None, AU, mode)
        assert abs(a2 - 4 * a) <= 1e-10 * max(abs(a2), 1e-4)
        e2 = stark_shift_monopole(qn, StarkConfig(2e-4), g, None, AU, mode)
        assert abs(e2 - 2 * a) <= 1e-12 * max(abs(e2), 1e-4)


@pytest.mark.parametrize("mode", ["flat", "volume"])
def test_linear_term_vanishes(mode):
    for n in range(1, 5):
        for qn in states_with_n(n):
            g = solve_magnetic_charge(n, AU)
            terms = monopole_shift_terms(qn, StarkConfig(1e-4), g, None, AU, mode)
            assert terms.linear_reduced < 1e-10
            assert abs(terms.linear) < 1e-10 * 1e-4


def test_measure_parse():
    assert Measure.parse("FLAT") is Measure.FLAT
    with pytest.raises(DomainError):
        Measure.parse("cylindrical")


def test_dipole_from_current_parity_and_linearity(cgs):
    for qn in m0_states(3):
        if qn.n1 == qn.n2:
            d = dipole_from_magnetic_current(qn, solve_magnetic_charge(qn.n, cgs), None, cgs)
            assert abs(d.dz) < 1e-10 * cgs.elementary_charge * cgs.bohr_radius
    d0 = dipole_from_magnetic_current(QuantumNumbers(0, 1, 0), 0.0, None, cgs)
    assert d0.dz == 0 and d0.dx == 0 and d0.dy == 0


# --- identity between the dipole routes ------------------------------------------


def test_identity_residual_zeroing_charge(cgs):
    qn = QuantumNumbers(0, 1, 0)
    report = identity_check(qn, None, cgs)
    assert report.residual < 1e-8
    assert math.isclose(report.coupling_zero, math.sqrt(6) * 2, rel_tol=1e-9)
    assert math.isclose(report.coupling_sqrt3n, 2 * math.sqrt(3), rel_tol=1e-15)
    assert math.isclose(report.dz_current, report.dz_density, rel_tol=1e-8)


def test_identity_residual_at_solved_charge(cgs):
    qn = QuantumNumbers(0, 1, 0)
    r = identity_residual(qn, solve_magnetic_charge(2, cgs), None, cgs)
    assert math.isclose(r, 0.5, rel_tol=1e-9)


def test_identity_undefined_without_dipole(cgs):
    with pytest.raises(DomainError):
        identity_residual(QuantumNumbers(1, 1, 0), 1.0, None, cgs)
    with pytest.raises(DomainError):
        residual_zeroing_charge(QuantumNumbers(0, 0, 0), None, cgs)


def test_surface_integrand_against_adaptive_quadrature():
    qn = QuantumNumbers(0, 1, 0)
    R = 12.0

    def dens(theta):
        x, z = R * math.sin(theta), R * math.cos(theta)
        return abs(parabolic_wavefunction(qn, ParabolicPoint.from_cartesian(x, 0, z), AU)) ** 2 * math.sin(theta)

    val, _ = sint.quad(dens, 0, math.pi, epsabs=0, epsrel=1e-12)
    assert math.isclose(float(surface_integrand(qn, R, AU)[0]), R**3 * 2 * math.pi * val, rel_tol=1e-10)


def test_surface_decay_ratio(cgs):
    qn = QuantumNumbers(0, 1, 0)
    at40 = surface_decay(qn, cgs)
    at80 = surface_decay(qn, cgs, 80 * cgs.bohr_radius)
    assert at40.radius == 40 * cgs.bohr_radius
    assert 1e-12 < at40.ratio < 1e-10  # R^3 r^2 exp(-r/a0) tail at 40 a0
    assert at80.passed and at80.ratio < 1e-12
    assert at40.peak_radius < 20 * cgs.bohr_radius


# --- dressed states and the string ------------------------------------------------


def test_dressed_modulus_random_points(cgs):
    rng = np.random.default_rng(7)
    a0 = cgs.bohr_radius
    ds = DressedState(QuantumNumbers(1, 0, 1), solve_magnetic_charge(3, cgs))
    xi, eta, phi = rng.uniform(1e-3, 20, (3, 10_000))
    for x, y, p in zip(xi, eta, phi * 0.3):
        pt = ParabolicPoint(x * a0, y * a0, p)
        assert math.isclose(abs(dressed_wavefunction(ds, pt, cgs)), abs(parabolic_wavefunction(ds.base, pt, cgs)),
                            rel_tol=1e-13, abs_tol=1e-300)


def test_dressed_special_points(au):
    ds = DressedState(QuantumNumbers(0, 0, 2), solve_magnetic_charge(3, au))
    p = ParabolicPoint(2.0, 0.5, 0.4)  # xi eta = a0^2
    assert math.isclose(phase_exponent(ds, p, au), -2 * 0.4, rel_tol=1e-14)
    plain = DressedState(QuantumNumbers(1, 0, 0), MagneticCharge(0.0))
    q = ParabolicPoint(1.3, 0.2, 1.0)
    assert dressed_wavefunction(plain, q, au) == parabolic_wavefunction(plain.base, q, au)


@pytest.mark.parametrize("pt,axis", [(ParabolicPoint(0.0, 1.0), "xi"), (ParabolicPoint(1.0, 0.0), "eta"),
                                     (ParabolicPoint(0.0, 0.0), "origin")])
def test_dressed_axis_errors(au, pt, axis):
    ds = DressedState(QuantumNumbers(0, 1, 0), solve_magnetic_charge(2, au))
    with pytest.raises(StringSingularityError) as info:
        dressed_wavefunction(ds, pt, au)
    assert info.value.axis == axis


def test_string_slopes(units):
    for n in (1, 2, 5):
        ds = DressedState(QuantumNumbers(0, n - 1, 0), solve_magnetic_charge(n, units))
        rep = string_singularity(ds, axis_probes(units), units)
        assert abs(rep.slope_xi - rep.coupling) < 1e-6
        assert abs(rep.slope_eta - rep.coupling) < 1e-6
        assert rep.singular_negative_z and rep.singular_positive_z and rep.modulus_preserved


def test_string_absent_without_charge(au):
    rep = string_singularity(DressedState(QuantumNumbers(0, 1, 1), MagneticCharge(0.0)), axis_probes(au), au)
    assert rep.slope_xi == pytest.approx(0, abs=1e-12) and rep.slope_eta == pytest.approx(0, abs=1e-12)
    assert not rep.singular_negative_z and not rep.singular_positive_z


def test_string_probe_validation(au):
    ds = DressedState(QuantumNumbers(0, 1, 0), solve_magnetic_charge(2, au))
    only_xi = [p for p in axis_probes(au) if p.xi < p.eta]
    with pytest.raises(DomainError):
        string_singularity(ds, only_xi, au)
    flat = [ParabolicPoint(0.5 + 0.01 * k, 3.0) for k in range(4)] + [ParabolicPoint(3.0, 0.5 + 0.01 * k) for k in range(4)]
    with pytest.raises(DomainError):
        string_singularity(ds, flat, au)


# --- phase-term bookkeeping -----------------------------------------------------------


@pytest.mark.parametrize("qn", [QuantumNumbers(0, 0, 1), QuantumNumbers(1, 0, -1), QuantumNumbers(0, 1, 2)])
def test_phase_terms_vanish_off_axis_states(units, qn):
    rep = phase_term_expectation(qn, None, units)
    assert rep.vanishes
    assert rep.log_flux_residual < 1e-9


@pytest.mark.parametrize("qn", [QuantumNumbers(0, 0, 0), QuantumNumbers(0, 1, 0)])
def test_phase_terms_equal_axis_boundary_value(qn):
    rep = phase_term_expectation(qn, None, AU)
    on_axis, _ = sint.quad(lambda e: float(radial_part(qn, 0.0, e, AU)) ** 2, 0, np.inf)
    assert math.isclose(rep.xi_integral, -0.5 * on_axis, rel_tol=1e-10)
    assert math.isclose(rep.xi_integral, rep.xi_boundary, rel_tol=1e-10)
    assert math.isclose(rep.eta_integral, rep.eta_boundary, rel_tol=1e-10)


@given(st.floats(1e-2, 50), st.floats(1e-2, 50))
@settings(max_examples=30)
def test_log_flux_is_constant(xi, eta):
    from starkmono.monopole import log_flux_residual
    assert log_flux_residual([ParabolicPoint(xi, eta)], AU, h=1e-3) < 1e-9


# --- report -------------------------------------------------------------------


def test_report_row(cgs):
    row = monopole_report(QuantumNumbers(0, 1, 0), cgs, 1e-4 * cgs.atomic_field)
    assert row["mode"] == "flat"
    assert math.isclose(row["eg_over_hbar_c"], 2 * math.sqrt(3), rel_tol=1e-12)
    assert abs(row["deviation_from_sqrt3n"]) < 1e-12
    assert math.isclose(row["volume_over_closed_form"], 0.5, rel_tol=1e-9)
    assert math.isclose(row["flat_times_a0_over_volume"], 1 / (6 * math.pi), rel_tol=1e-9)
    assert math.isclose(row["residual_identity"], 0.5, rel_tol=1e-9)
    assert math.isclose(row["shift_monopole"], row["shift_conventional"], rel_tol=1e-12)
    assert row["linear_term_reduced"] < 1e-10
    none_row = monopole_report(QuantumNumbers(1, 1, 0), cgs, 1e-4 * cgs.atomic_field, mode="volume")
    assert none_row["residual_identity"] is None and none_row["g_identity_zero"] is None
