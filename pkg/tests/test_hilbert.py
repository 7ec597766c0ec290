import math

import numpy as np
import pytest

from qubitflux import (
    ConfigError,
    FockTruncation,
    MatchKind,
    default_config,
    derive_couplings,
    hamiltonian_lab,
    hamiltonian_quantized,
    hamiltonian_rwa,
    hamiltonian_spinboson,
    pauli,
)
from qubitflux.hilbert import joint_index, two_qubit_ket

HERM_TOL = 1e-14


def herm_defect(op):
    return float(np.max(np.abs(op.entries - op.entries.conj().T)))


class TestPauli:
    def test_x_flips_first_qubit(self):
        up_up = two_qubit_ket("ee")
        flipped = pauli("X", 1).entries @ up_up
        assert np.allclose(flipped, two_qubit_ket("ge"))

    def test_plus_minus_projector(self):
        proj = pauli("Plus", 2).entries @ pauli("Minus", 2).entries
        # projects onto qubit-2 excited subspace
        for labels, expect in (("ee", 1.0), ("eg", 0.0), ("ge", 1.0), ("gg", 0.0)):
            v = two_qubit_ket(labels)
            assert np.vdot(v, proj @ v) == pytest.approx(expect)

    def test_xx_involution(self):
        xx = pauli("X", 1).entries @ pauli("X", 2).entries
        assert np.max(np.abs(xx - xx.conj().T)) == 0.0
        assert np.allclose(xx @ xx, np.eye(4))

    def test_plus_raises_ground(self):
        assert np.allclose(pauli("Plus", 1).entries @ two_qubit_ket("ge"),
                           two_qubit_ket("ee"))


class TestHamiltonianLab:
    def test_drive_vanishes_at_t0(self, dc):
        h0 = hamiltonian_lab(dc, 0.0).entries
        x1, x2 = pauli("X", 1).entries, pauli("X", 2).entries
        z1, z2 = pauli("Z", 1).entries, pauli("Z", 2).entries
        static = (-dc.ebar_j1 * x1 - dc.ebar_j2 * x2 + dc.eps01 * z1
                  + dc.eps02 * z2 - dc.chi12 * (x1 @ x2))
        assert np.allclose(h0, static, atol=1e-15)

    def test_hermitian_over_drive_cycle(self, dc):
        for t in np.linspace(0.0, 2.0 * math.pi / dc.drive_freq, 17):
            assert herm_defect(hamiltonian_lab(dc, t)) < HERM_TOL

    def test_matches_hand_assembly(self, dc):
        t = math.pi / (2.0 * dc.drive_freq)
        h = hamiltonian_lab(dc, t).entries
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        z = np.diag([1.0, -1.0]).astype(complex)
        eye = np.eye(2, dtype=complex)
        expected = (
            -dc.ebar_j1 * np.kron(x, eye)
            - dc.ebar_j2 * np.kron(eye, x)
            + dc.eps01 * math.cos(dc.ebar_j1 * t) * np.kron(z, eye)
            + dc.eps02 * math.cos(dc.ebar_j2 * t) * np.kron(eye, z)
            - dc.chi12 * np.kron(x, x)
            + math.sin(dc.drive_freq * t)
            * (dc.g12 * np.kron(x, x)
               - dc.g1 * np.kron(x, eye) - dc.g2 * np.kron(eye, x))
        )
        assert np.allclose(h, expected, atol=1e-16)

    def test_drive_terms_average_out_over_period(self, dc):
        # midpoint quadrature of the sin-weighted part over one drive period
        period = 2.0 * math.pi / dc.drive_freq
        ts = (np.arange(1000) + 0.5) * (period / 1000)
        quiet = derive_couplings(default_config().replace(flux_ac_amp=0.0))
        acc = np.zeros((4, 4), dtype=complex)
        for t in ts:
            acc += hamiltonian_lab(dc, t).entries - hamiltonian_lab(quiet, t).entries
        assert np.max(np.abs(acc)) / 1000 < 1e-10


class TestHamiltonianRwa:
    def test_double_flip_couples_gg_ee_only(self, dc):
        h = hamiltonian_rwa(dc, MatchKind.DOUBLE_FLIP).entries
        gg, ee = two_qubit_ket("gg"), two_qubit_ket("ee")
        assert abs(np.vdot(ee, h @ gg)) == pytest.approx(abs(dc.g12) / 2.0, rel=1e-12)
        mask = np.ones((4, 4), dtype=bool)
        mask[0, 3] = mask[3, 0] = False
        assert np.max(np.abs(h[mask])) == 0.0

    def test_exchange_couples_ge_eg_only(self, dc):
        h = hamiltonian_rwa(dc, MatchKind.EXCHANGE_FLIP).entries
        ge, eg = two_qubit_ket("ge"), two_qubit_ket("eg")
        assert abs(np.vdot(eg, h @ ge)) == pytest.approx(abs(dc.g12) / 2.0, rel=1e-12)
        mask = np.ones((4, 4), dtype=bool)
        mask[1, 2] = mask[2, 1] = False
        assert np.max(np.abs(h[mask])) == 0.0

    def test_zero_coupling_gives_zero_matrix(self, cfg):
        dc0 = derive_couplings(cfg.replace(flux_ac_amp=0.0))
        assert np.max(np.abs(hamiltonian_rwa(dc0, MatchKind.DOUBLE_FLIP).entries)) == 0.0

    def test_hermitian(self, dc):
        for kind in (MatchKind.DOUBLE_FLIP, MatchKind.EXCHANGE_FLIP):
            assert herm_defect(hamiltonian_rwa(dc, kind)) < HERM_TOL

    def test_unsupported_kind_rejected(self, dc):
        with pytest.raises(ValueError):
            hamiltonian_rwa(dc, MatchKind.DECOUPLED)


class TestHamiltonianQuantized:
    def test_vacuum_ground_annihilated(self, dc):
        trunc = FockTruncation(n_max=5)
        h = hamiltonian_quantized(dc, trunc).entries
        v = np.zeros(24, dtype=complex)
        v[joint_index("gg", 0, 5)] = 1.0
        assert np.max(np.abs(h @ v)) == 0.0

    def test_single_photon_flip_amplitude(self, dc):
        n_max = 5
        h = hamiltonian_quantized(dc, FockTruncation(n_max=n_max)).entries
        for n in range(n_max):
            src = np.zeros(4 * (n_max + 1), dtype=complex)
            src[joint_index("ee", n, n_max)] = 1.0
            out = h @ src
            dst = joint_index("gg", n + 1, n_max)
            assert out[dst] == pytest.approx(dc.xi12 * math.sqrt(n + 1.0), rel=1e-14)
            out[dst] = 0.0
            assert np.max(np.abs(out)) == 0.0

    def test_exhaustive_elements_nmax5(self, dc):
        n_max = 5
        h = hamiltonian_quantized(dc, FockTruncation(n_max=n_max)).entries
        dim = 4 * (n_max + 1)
        expected = np.zeros((dim, dim), dtype=complex)
        for n in range(n_max):
            i = joint_index("gg", n + 1, n_max)
            j = joint_index("ee", n, n_max)
            expected[i, j] = dc.xi12 * math.sqrt(n + 1.0)
            expected[j, i] = np.conj(dc.xi12) * math.sqrt(n + 1.0)
        assert np.array_equal(h, expected)

    def test_hermitian_with_complex_coupling(self, cfg):
        dc = derive_couplings(cfg.replace(flux_q_phase=1.1))
        assert herm_defect(hamiltonian_quantized(dc, FockTruncation(n_max=7))) < HERM_TOL

    def test_conserved_quantity(self, dc):
        # one photon trades against BOTH qubit flips, so the conserved
        # combination uses the spin operators sz/2: a_dag a + (sz1 + sz2)/4
        n_max = 6
        m = n_max + 1
        h = hamiltonian_quantized(dc, FockTruncation(n_max=n_max)).entries
        number = np.diag(np.arange(m, dtype=float)).astype(complex)
        z = np.diag([1.0, -1.0]).astype(complex)
        eye2 = np.eye(2, dtype=complex)
        n_c = (np.kron(np.kron(eye2, eye2), number)
               + 0.25 * np.kron(np.kron(z, eye2), np.eye(m))
               + 0.25 * np.kron(np.kron(eye2, z), np.eye(m)))
        comm = h @ n_c - n_c @ h
        # the hard cutoff removes whole coupling pairs, never splits one,
        # so the commutator vanishes identically, boundary included
        assert np.max(np.abs(comm)) < 1e-14


class TestHamiltonianSpinboson:
    def test_zero_flux_decouples(self):
        cfg = default_config().replace(flux_dc=0.0)
        h = hamiltonian_spinboson(cfg, FockTruncation(n_max=4)).entries
        # no sx (x) (a + adag) part: H commutes with photon number
        m = 5
        number = np.kron(np.eye(4), np.diag(np.arange(m, dtype=float)))
        assert np.max(np.abs(h @ number - number @ h)) < 1e-14

    def test_phase_regime_enforced(self):
        cfg = default_config().replace(e_c0=0.5)
        with pytest.raises(ConfigError):
            hamiltonian_spinboson(cfg, FockTruncation(n_max=4))

    def test_printed_expressions(self):
        cfg = default_config()  # e_j0 = 1 = 50 e_c0
        trunc = FockTruncation(n_max=3)
        h = hamiltonian_spinboson(cfg, trunc).entries
        omega_p = math.sqrt(8.0 * 1.0 * 0.02)
        zeta = (1.0 / 0.04) ** 0.25
        g10 = -(0.05 / (2.0 * zeta)) * math.sin(math.pi * 0.25)
        assert omega_p == pytest.approx(0.4, abs=1e-15)
        # <e,e,1|H|e,e,1> = omega_p; coupling element carries g10 sqrt(1)
        i_ee1 = joint_index("ee", 1, 3)
        assert h[i_ee1, i_ee1] == pytest.approx(omega_p, abs=1e-14)
        i_ge0 = joint_index("ge", 0, 3)
        i_ee1 = joint_index("ee", 1, 3)
        assert h[i_ee1, i_ge0] == pytest.approx(g10, abs=1e-14)
        assert herm_defect(hamiltonian_spinboson(cfg, trunc)) < HERM_TOL
