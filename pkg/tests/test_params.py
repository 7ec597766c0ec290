import math

import numpy as np
import pytest
from mpmath import mp, mpf
from mpmath import cos as mcos, factorial as mfact, sin as msin

from qubitflux import (
    CircuitConfig,
    ConfigError,
    MatchKind,
    bessel_j,
    classify_drive,
    default_config,
    derive_couplings,
    load_config,
)

mp.dps = 40


def series_oracle(order, x, terms=60):
    """Independent 60-term ascending-series evaluation at 40 digits."""
    x = mpf(x)
    total = mpf(0)
    for k in range(terms):
        total += (-1) ** k * (x / 2) ** (order + 2 * k) / (mfact(k) * mfact(k + order))
    return float(total)


# frozen from the 40-digit series oracle
J0_03 = 0.9776262465382961
J1_03 = 0.1483188162731040
# frozen derived couplings at f_e = 0.25, phi_c = 0.3, E_J1 = E_J2 = 0.05
CHI12_REF = 0.00125
G12_REF = 3.7079704068276002e-04
XI_REF = 0.14831259418192458
G1_REF = 1.0487284108140737e-02
EBAR_REF = 3.5289047798591137e-02


class TestBesselJ:
    def test_values_at_zero(self):
        assert bessel_j(0, 0.0) == 1.0
        assert bessel_j(1, 0.0) == 0.0

    def test_first_zero_of_j0(self):
        assert abs(bessel_j(0, 2.404826)) < 1e-5

    def test_matches_series_oracle_on_grid(self):
        for x in np.linspace(-12.0, 12.0, 100):
            assert abs(bessel_j(0, x) - series_oracle(0, x)) < 1e-12
            assert abs(bessel_j(1, x) - series_oracle(1, x)) < 1e-12

    def test_recurrence_branch_against_scipy(self):
        scipy_special = pytest.importorskip("scipy.special")
        for x in np.linspace(12.0, 30.0, 73):
            assert abs(bessel_j(0, x) - scipy_special.j0(x)) < 1e-12
            assert abs(bessel_j(1, x) - scipy_special.j1(x)) < 1e-12

    def test_sum_rule(self):
        # J0^2 + 2 J1^2 <= 1 holds for the first two orders alone
        for x in np.linspace(-5.0, 5.0, 101):
            assert bessel_j(0, x) ** 2 + 2.0 * bessel_j(1, x) ** 2 <= 1.0 + 1e-10

    def test_parity(self):
        assert bessel_j(0, -3.7) == bessel_j(0, 3.7)
        assert bessel_j(1, -3.7) == -bessel_j(1, 3.7)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            bessel_j(2, 1.0)
        with pytest.raises(ValueError):
            bessel_j(0, 31.0)


class TestCircuitConfig:
    def test_defaults_valid(self):
        cfg = default_config()
        assert cfg.eta1 < 1.0 and cfg.eta2 < 1.0

    def test_rejects_dominated_large_junction(self):
        with pytest.raises(ConfigError):
            CircuitConfig(e_j1=2.0)

    def test_rejects_nonpositive_energy(self):
        with pytest.raises(ConfigError):
            CircuitConfig(e_c1=0.0)

    def test_config_file_roundtrip(self, tmp_path):
        path = tmp_path / "circuit.cfg"
        path.write_text(
            "# demo\n"
            "e_j1 = 0.04\n"
            "flux_dc = 0.3   # quarter-ish\n"
            "drive_freq = 0.21\n"
        )
        cfg = load_config(path)
        assert cfg.e_j1 == 0.04
        assert cfg.flux_dc == 0.3
        assert cfg.e_j2 == default_config().e_j2

    def test_config_file_rejects_unknown_key(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("e_j9 = 1.0\n")
        with pytest.raises(ConfigError):
            load_config(path)


class TestDeriveCouplings:
    def test_zero_flux_kills_all_couplings(self):
        dc = derive_couplings(default_config().replace(flux_dc=0.0))
        assert dc.chi12 == 0.0
        assert dc.g12 == 0.0
        assert dc.xi12 == 0.0
        assert dc.g1 == 0.0 and dc.g2 == 0.0

    def test_half_flux_maximizes_chi_and_kills_drive(self):
        with pytest.warns(UserWarning):
            dc = derive_couplings(default_config().replace(flux_dc=0.5))
        assert dc.chi12 == pytest.approx(0.05 * 0.05, rel=1e-12)
        assert abs(dc.g12) < 1e-18
        assert abs(dc.xi12) < 1e-18

    def test_frozen_reference_values(self, dc):
        assert dc.chi12 == pytest.approx(CHI12_REF, abs=1e-15)
        assert dc.g12 == pytest.approx(G12_REF, abs=1e-15)
        assert dc.xi1 == pytest.approx(XI_REF, abs=1e-14)
        assert dc.xi2 == pytest.approx(XI_REF, abs=1e-14)
        assert dc.g1 == pytest.approx(G1_REF, abs=1e-14)
        assert dc.ebar_j1 == pytest.approx(EBAR_REF, abs=1e-14)

    def test_high_precision_cross_check(self, cfg):
        # re-evaluate the printed expressions at 40 digits
        fe = mpf(cfg.flux_dc)
        phic = 2 * mp.pi * mpf(cfg.flux_ac_amp)
        e1, e0 = mpf("0.05"), mpf(1)
        chi = e1 * e1 * msin(mp.pi * fe) ** 2 / e0
        g12 = e1 * e1 / e0 * msin(2 * mp.pi * fe) * series_oracle(1, phic)
        dc = derive_couplings(cfg)
        assert dc.chi12 == pytest.approx(float(chi), rel=1e-13)
        assert dc.g12 == pytest.approx(float(g12), rel=1e-12)

    def test_periodicity_in_flux(self, cfg):
        for fe in (0.1, 0.37, 0.62):
            a = derive_couplings(cfg.replace(flux_dc=fe))
            b = derive_couplings(cfg.replace(flux_dc=fe + 1.0))
            for name in ("chi12", "g12", "g1", "g2", "ebar_j1", "ebar_j2", "xi1"):
                assert getattr(a, name) == pytest.approx(getattr(b, name), abs=1e-12)
            assert a.xi12 == pytest.approx(b.xi12, abs=1e-12)

    def test_sign_structure(self, cfg):
        import warnings

        fes = np.linspace(0.0, 1.0, 41)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")  # f_e = 0 rows trip the detuning flag
            chis = [derive_couplings(cfg.replace(flux_dc=f)).chi12 for f in fes]
        assert min(chis) >= 0.0
        below = derive_couplings(cfg.replace(flux_dc=0.45)).g12
        above = derive_couplings(cfg.replace(flux_dc=0.55)).g12
        assert below * above < 0.0  # g12 flips sign across f_e = 1/2

    def test_drive_couplings_vanish_without_ac_flux(self, cfg):
        dc = derive_couplings(cfg.replace(flux_ac_amp=0.0))
        assert dc.xi1 == 0.0 and dc.g1 == 0.0 and dc.g12 == 0.0

    def test_quantized_flux_phase_rides_on_xi12(self, cfg):
        dc = derive_couplings(cfg.replace(flux_q_phase=0.7))
        assert np.angle(dc.xi12) == pytest.approx(0.7 - math.pi, abs=1e-12)

    def test_degenerate_detuning_flagged(self, cfg):
        with pytest.warns(UserWarning):
            dc = derive_couplings(cfg.replace(cap_ratio2=0.2))
        assert dc.chi_prime == 0.0
        assert dc.detuning_flagged


class TestClassifyDrive:
    def test_exact_matches(self, dc):
        assert classify_drive(dc.omega1 + dc.omega2, dc) is MatchKind.DOUBLE_FLIP
        assert classify_drive(abs(dc.omega2 - dc.omega1), dc) is MatchKind.EXCHANGE_FLIP
        assert classify_drive(dc.omega1, dc) is MatchKind.SINGLE_QUBIT_1
        assert classify_drive(dc.omega2, dc) is MatchKind.SINGLE_QUBIT_2

    def test_far_off_resonance_is_decoupled(self, dc):
        assert classify_drive(10.0, dc) is MatchKind.DECOUPLED
        assert classify_drive(1e-6, dc, tol=0.01) is MatchKind.DECOUPLED

    def test_nearest_target_wins(self, dc):
        omega = dc.omega1 * 1.001
        assert classify_drive(omega, dc, tol=0.05) is MatchKind.SINGLE_QUBIT_1

    def test_tol_validated(self, dc):
        with pytest.raises(ValueError):
            classify_drive(0.2, dc, tol=0.5)
