"""The large junction as a quantized data bus.

In the phase regime the large junction is a harmonic oscillator at the
plasma frequency; eliminating it adiabatically leaves the qubit-qubit
coupling chi_ij = -2 g_i0 g_j0 / omega_p.  This module computes the bus
parameters, the effective coupling, and a numerical report comparing the
classical-inductance coupling against the eliminated-bus one, both
algebraically (flux sweep) and dynamically (full spin-boson propagation
against the effective two-qubit model).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .hilbert import FockTruncation, hamiltonian_spinboson
from .params import CircuitConfig, canonical_flux, derive_couplings

__all__ = [
    "BusParams",
    "EquivalenceReport",
    "bus_params",
    "effective_chi",
    "equivalence_report",
    "DEFAULT_OMEGA_P_RATIOS",
]

PHASE_REGIME_RATIO = 10.0
DEFAULT_OMEGA_P_RATIOS = (10.0, 30.0, 50.0, 100.0)


@dataclass(frozen=True)
class BusParams:
    """Oscillator parameters of the large junction.

    omega_p = sqrt(8 E_J0 E_c0), zeta = (E_J0 / 2 E_c0)^(1/4), and one
    g_i0 = -(E_Ji / 2 zeta) sin(pi f_e) per qubit hanging off the bus.
    """

    omega_p: float
    zeta: float
    g_bus: tuple[float, ...]

    def __post_init__(self):
        if self.omega_p <= 0.0:
            raise ValueError("omega_p must be positive")
        if len(self.g_bus) < 2:
            raise ValueError("need at least two qubits on the bus")


def bus_params(cfg: CircuitConfig) -> BusParams:
    """Bus parameters of a two-qubit config; requires E_J0 >= 10 E_c0."""
    if cfg.e_j0 < PHASE_REGIME_RATIO * cfg.e_c0:
        raise ConfigError("phase regime requires e_j0 >= 10*e_c0")
    zeta = (cfg.e_j0 / (2.0 * cfg.e_c0)) ** 0.25
    s1 = math.sin(math.pi * canonical_flux(cfg.flux_dc))
    return BusParams(
        omega_p=math.sqrt(8.0 * cfg.e_j0 * cfg.e_c0),
        zeta=zeta,
        g_bus=(
            -(cfg.e_j1 / (2.0 * zeta)) * s1,
            -(cfg.e_j2 / (2.0 * zeta)) * s1,
        ),
    )


def effective_chi(bus: BusParams, i: int, j: int) -> float:
    """Eliminated-bus coupling chi_ij = -2 g_i0 g_j0 / omega_p (1-based i, j)."""
    if i == j:
        raise ValueError("chi_ij needs two distinct qubits")
    n = len(bus.g_bus)
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"qubit index out of range 1..{n}")
    return -2.0 * bus.g_bus[i - 1] * bus.g_bus[j - 1] / bus.omega_p


@dataclass(frozen=True)
class EquivalenceReport:
    """Classical-vs-quantum bus comparison.

    Flux sweep: chi from the inductance formula and from the eliminated
    bus, plus their pointwise ratio (0 where both vanish).  Dynamical
    check: per omega_p/splitting target, the largest distance between the
    bus-ground projection of the spin-boson evolution and the effective
    two-qubit evolution over one coupling period, with the smallest bus
    ground-state occupancy seen along the way.
    """

    flux: np.ndarray
    chi_classical: np.ndarray
    chi_quantum: np.ndarray
    ratio: np.ndarray
    omega_p_ratios: tuple[float, ...]
    dyn_distance: tuple[float, ...]
    bus_ground_min: tuple[float, ...]
    chi_target: float


def _scaled_config(cfg: CircuitConfig, ratio: float) -> tuple[CircuitConfig, float]:
    """Rescale the circuit so omega_p = ratio * max qubit splitting.

    The effective coupling magnitude E_J1 E_J2 sin^2(pi f_e)/(4 E_J0) of the
    base config is held fixed; E_J0/E_c0 = 50 keeps the phase regime while
    eps = E_Ji/E_J0 shrinks as 1/ratio.
    """
    s = math.sin(math.pi * cfg.flux_dc) ** 2
    cf = abs(math.cos(math.pi * cfg.flux_dc))
    if s == 0.0 or cf == 0.0:
        raise ConfigError("flux_dc with sin(pi f_e) = 0 or cos(pi f_e) = 0 "
                          "leaves no coupling (or no splitting) to compare")
    chi_target = cfg.e_j1 * cfg.e_j2 * s / (4.0 * cfg.e_j0)
    rho = cfg.e_j2 / cfg.e_j1
    q = 50.0
    eps = math.sqrt(8.0 / q) / (2.0 * ratio * max(1.0, rho) * cf)
    e_j0 = 4.0 * chi_target / (rho * eps * eps * s)
    scaled = cfg.replace(
        e_j0=e_j0, e_c0=e_j0 / q, e_j1=eps * e_j0, e_j2=rho * eps * e_j0,
    )
    return scaled, chi_target


def _dynamical_check(cfg: CircuitConfig, trunc: FockTruncation,
                     n_times: int = 200) -> tuple[float, float]:
    """Max projection distance and min bus occupancy over one coupling period."""
    bus = bus_params(cfg)
    chi_q = effective_chi(bus, 1, 2)
    h_sb = hamiltonian_spinboson(cfg, trunc).entries
    cf = math.cos(math.pi * cfg.flux_dc)
    x = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    i2 = np.eye(2, dtype=complex)
    x1, x2 = np.kron(x, i2), np.kron(i2, x)
    lamb = (bus.g_bus[0] ** 2 + bus.g_bus[1] ** 2) / bus.omega_p
    h_eff = (-cfg.e_j1 * cf * x1 - cfg.e_j2 * cf * x2
             + chi_q * (x1 @ x2) - lamb * np.eye(4, dtype=complex))

    m = trunc.n_max + 1
    psi_q0 = np.zeros(4, dtype=complex)
    psi_q0[0] = 1.0                      # |up,up>: populates all four sx blocks
    fock0 = np.zeros(m, dtype=complex)
    fock0[0] = 1.0
    psi0 = np.kron(psi_q0, fock0)

    w, v = np.linalg.eigh(h_sb)
    c0 = v.conj().T @ psi0
    we, ve = np.linalg.eigh(h_eff)
    ce0 = ve.conj().T @ psi_q0

    period = 2.0 * math.pi / abs(chi_q)
    times = np.linspace(0.0, period, n_times)
    dist_max = 0.0
    occ_min = 1.0
    for t in times:
        psi = v @ (np.exp(-1j * w * t) * c0)
        grid = psi.reshape(4, m)
        proj = grid[:, 0]
        occ_min = min(occ_min, float(np.sum(np.abs(proj) ** 2)))
        psi_eff = ve @ (np.exp(-1j * we * t) * ce0)
        dist_max = max(dist_max, float(np.linalg.norm(proj - psi_eff)))
    return dist_max, occ_min


def equivalence_report(
    cfg: CircuitConfig,
    trunc: FockTruncation | None = None,
    flux_points: int = 50,
    omega_p_ratios: tuple[float, ...] = DEFAULT_OMEGA_P_RATIOS,
) -> EquivalenceReport:
    """Compare the two bus treatments algebraically and dynamically.

    The flux sweep holds the circuit energies of cfg and sweeps f_e over
    [0, 1); both couplings share the sin^2(pi f_e) shape, so their ratio is
    flux independent (reported as 0 where both vanish).  The dynamical rows
    rescale the circuit to each omega_p/splitting target at fixed coupling.
    """
    if trunc is None:
        trunc = FockTruncation(n_max=10, tail_bound=1e-10)
    for ratio in omega_p_ratios:
        if ratio < PHASE_REGIME_RATIO:
            raise ConfigError("omega_p must stay >= 10x the qubit splitting")

    flux = np.linspace(0.0, 1.0, flux_points, endpoint=False)
    chi_cl = np.empty(flux_points)
    chi_qu = np.empty(flux_points)
    ratio_col = np.zeros(flux_points)
    for k, fe in enumerate(flux):
        swept = cfg.replace(flux_dc=float(fe))
        chi_cl[k] = derive_couplings(swept).chi12
        chi_qu[k] = effective_chi(bus_params(swept), 1, 2)
        if chi_qu[k] != 0.0:
            ratio_col[k] = chi_cl[k] / chi_qu[k]

    distances = []
    occupancies = []
    chi_target = cfg.e_j1 * cfg.e_j2 * math.sin(math.pi * cfg.flux_dc) ** 2 \
        / (4.0 * cfg.e_j0)
    for ratio in omega_p_ratios:
        scaled, _ = _scaled_config(cfg, ratio)
        d, occ = _dynamical_check(scaled, trunc)
        distances.append(d)
        occupancies.append(occ)

    return EquivalenceReport(
        flux=flux,
        chi_classical=chi_cl,
        chi_quantum=chi_qu,
        ratio=ratio_col,
        omega_p_ratios=tuple(omega_p_ratios),
        dyn_distance=tuple(distances),
        bus_ground_min=tuple(occupancies),
        chi_target=chi_target,
    )
