"""Circuit parameters and the effective coupling constants derived from them.

Units: hbar = 1 and every energy is quoted in units of the large-junction
Josephson energy E_J0 (energies double as angular frequencies).  Fluxes are
fractions of the flux quantum; critical currents never appear directly since
I_ci / I_0 = E_Ji / E_J0.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, fields, replace

from .errors import ConfigError

__all__ = [
    "CircuitConfig",
    "DerivedCouplings",
    "MatchKind",
    "bessel_j",
    "canonical_flux",
    "derive_couplings",
    "classify_drive",
    "load_config",
    "default_config",
]


def canonical_flux(f_e: float) -> float:
    """Reduce a flux fraction to [0, 1).

    f_e is periodic with period 1; the reduction fixes the sign gauge of
    the sin/cos(pi f_e) coefficients so derived quantities share it.
    """
    return f_e % 1.0

# detuning below this multiple of chi12 is outside the large-detuning regime
DETUNING_MARGIN = 10.0

BESSEL_SERIES_CUT = 12.0
BESSEL_DOMAIN = 30.0


@dataclass(frozen=True)
class CircuitConfig:
    """Raw circuit parameters, all dimensionless (energies in units of E_J0).

    e_j1, e_j2     qubit Josephson energies
    e_j0           large-junction Josephson energy
    e_c0           large-junction charging energy (used by the bus model)
    e_c1, e_c2     qubit charging energies
    cap_ratio1/2   gate factors C_i V_gi / 2e; eps0_i = e_ci * cap_ratio_i
    flux_dc        f_e, dc flux fraction (period 1)
    flux_ac_amp    f_c, ac flux fraction; the Bessel argument is phi_c = 2*pi*f_c
    flux_q_amp     |f_q|, quantized-flux amplitude (magnitude)
    flux_q_phase   phase of f_q (radians)
    drive_freq     omega of the variable-frequency flux
    """

    e_j1: float = 0.05
    e_j2: float = 0.05
    e_j0: float = 1.0
    e_c0: float = 0.02
    e_c1: float = 0.5
    e_c2: float = 0.5
    cap_ratio1: float = 0.2
    cap_ratio2: float = 0.25
    flux_dc: float = 0.25
    flux_ac_amp: float = 0.3 / (2.0 * math.pi)
    flux_q_amp: float = 0.001
    flux_q_phase: float = 0.0
    drive_freq: float = 0.225

    def __post_init__(self):
        for name in ("e_j1", "e_j2", "e_j0", "e_c0", "e_c1", "e_c2"):
            if getattr(self, name) <= 0.0:
                raise ConfigError(f"{name} must be strictly positive")
        if not (self.e_j0 > self.e_j1 and self.e_j0 > self.e_j2):
            raise ConfigError("large junction must dominate: e_j0 > e_j1, e_j2")
        if not (self.eta1 < 1.0 and self.eta2 < 1.0):
            raise ConfigError("eta_i = e_ji/e_j0 must satisfy eta_i < 1")
        if self.flux_q_amp < 0.0:
            raise ConfigError("flux_q_amp is a magnitude; fold signs into flux_q_phase")

    @property
    def eta1(self) -> float:
        return self.e_j1 / self.e_j0

    @property
    def eta2(self) -> float:
        return self.e_j2 / self.e_j0

    @property
    def phi_c(self) -> float:
        return 2.0 * math.pi * self.flux_ac_amp

    def replace(self, **kw) -> "CircuitConfig":
        return replace(self, **kw)

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


class MatchKind(enum.Enum):
    """Drive-frequency matching condition of the variable-frequency flux."""

    DOUBLE_FLIP = "double_flip"      # omega = omega1 + omega2, flips both qubits
    EXCHANGE_FLIP = "exchange_flip"  # omega = |omega2 - omega1|, swaps excitation
    SINGLE_QUBIT_1 = "single_qubit_1"
    SINGLE_QUBIT_2 = "single_qubit_2"
    DECOUPLED = "decoupled"


@dataclass(frozen=True)
class DerivedCouplings:
    """Effective constants computed from a CircuitConfig.

    xi1/xi2 are the per-qubit Bessel drive factors (they differ once
    eta1 != eta2 because the correction term carries eta_i^2 + 3*eta_j^2).
    xi12 is complex: the phase of the quantized flux rides on it.
    detuning_flagged marks configs outside the large-detuning regime
    (delta < 10*chi12), where chi_prime loses meaning.
    """

    eta1: float
    eta2: float
    ebar_j1: float
    ebar_j2: float
    chi12: float
    eps01: float
    eps02: float
    delta: float
    chi_prime: float
    omega1: float
    omega2: float
    g1: float
    g2: float
    g12: float
    xi1: float
    xi2: float
    xi12: complex
    drive_freq: float
    detuning_flagged: bool


def _bessel_series(order: int, x: float) -> float:
    # ascending power series; exact summation via fsum keeps the
    # alternating-term cancellation at x ~ 12 below 1e-13
    half = 0.5 * x
    terms = []
    term = half**order / math.gamma(order + 1.0)
    k = 0
    while True:
        terms.append(term)
        k += 1
        term *= -(half * half) / (k * (k + order))
        if abs(term) < 1e-20 and k > 4:
            break
        if k > 80:
            break
    return math.fsum(terms)


def bessel_j(order: int, x: float) -> float:
    """Bessel function of the first kind, orders 0 and 1 only.

    Ascending power series below |x| = 12, normalized downward recurrence
    up to the validated domain |x| <= 30.  Absolute error < 1e-12.
    """
    if order not in (0, 1):
        raise ValueError("order must be 0 or 1")
    x = float(x)
    if abs(x) > BESSEL_DOMAIN:
        raise ValueError(f"|x| <= {BESSEL_DOMAIN} is the validated domain, got {x}")
    sign = 1.0
    if x < 0.0:
        x = -x
        if order == 1:
            sign = -1.0  # J1 is odd, J0 even
    if x < BESSEL_SERIES_CUT:
        return sign * _bessel_series(order, x)
    # Miller's algorithm: recurse J_{k-1} = (2k/x) J_k - J_{k+1} from a high
    # even order down to 0, then scale with J0 + 2*(J2 + J4 + ...) = 1.
    m = int(x) + 52
    if m % 2:
        m += 1
    jp = 0.0
    j = 1e-30
    j_low = [0.0, 0.0]  # J0, J1
    even_sum = 0.0
    for k in range(m, 0, -1):
        jm = (2.0 * k / x) * j - jp
        jp, j = j, jm
        if k - 1 == 1:
            j_low[1] = j
        if (k - 1) % 2 == 0 and k - 1 > 0:
            even_sum += j
    j_low[0] = j
    scale = j_low[0] + 2.0 * even_sum
    return sign * j_low[order] / scale


def derive_couplings(cfg: CircuitConfig) -> DerivedCouplings:
    """Evaluate every effective constant of the two-qubit circuit.

    chi12  = E_J1 E_J2 sin^2(pi f_e) / E_J0          (always-on coupling)
    g12    = (E_J1 E_J2/E_J0) sin(2 pi f_e) J1(phi_c) (drive-induced coupling)
    g_i    = 2 E_Ji sin(pi f_e) xi_i                  (single-qubit drive)
    xi12   = -2 pi f_q (E_J1 E_J2/E_J0) sin(2 pi f_e) (quantized-flux coupling)
    with the eta-corrected Ebar_Ji and the two-line Bessel factor xi_i.
    """
    fe = canonical_flux(cfg.flux_dc)
    phic = cfg.phi_c
    s1 = math.sin(math.pi * fe)
    s2 = math.sin(2.0 * math.pi * fe)
    c1 = math.cos(math.pi * fe)
    c2 = math.cos(2.0 * math.pi * fe)
    j0 = bessel_j(0, phic)
    j1 = bessel_j(1, phic)
    eta1, eta2 = cfg.eta1, cfg.eta2
    e_prod = cfg.e_j1 * cfg.e_j2 / cfg.e_j0

    def ebar(e_ji, sq_i, sq_j):
        return e_ji * c1 * (1.0 - 0.375 * s1 * s1 * (sq_i + 3.0 * sq_j))

    def xi(sq_i, sq_j):
        s = sq_i + 3.0 * sq_j
        return j1 * (1.0 - 3.0 * s / 16.0 * (1.0 - c2 * j0)) \
            + 0.375 * c1 * c1 * j0 * j1 * s

    xi1 = xi(eta1 * eta1, eta2 * eta2)
    xi2 = xi(eta2 * eta2, eta1 * eta1)
    chi12 = e_prod * s1 * s1
    g12 = e_prod * s2 * j1
    xi12 = -2.0 * math.pi * cfg.flux_q_amp * e_prod * s2 \
        * complex(math.cos(cfg.flux_q_phase), math.sin(cfg.flux_q_phase))
    eps01 = cfg.e_c1 * cfg.cap_ratio1
    eps02 = cfg.e_c2 * cfg.cap_ratio2
    delta = abs(eps02 - eps01)

    flagged = delta < DETUNING_MARGIN * chi12
    if delta > 0.0:
        chi_prime = chi12 * chi12 / (2.0 * delta)
    else:
        chi_prime = 0.0
        flagged = True
    if flagged and chi12 > 0.0:
        warnings.warn(
            "detuning |eps02 - eps01| is not large against chi12; the "
            "frame-shifted qubit frequencies are outside their validity regime",
            stacklevel=2,
        )

    return DerivedCouplings(
        eta1=eta1,
        eta2=eta2,
        ebar_j1=ebar(cfg.e_j1, eta1 * eta1, eta2 * eta2),
        ebar_j2=ebar(cfg.e_j2, eta2 * eta2, eta1 * eta1),
        chi12=chi12,
        eps01=eps01,
        eps02=eps02,
        delta=delta,
        chi_prime=chi_prime,
        omega1=eps01 - chi_prime,
        omega2=eps02 + chi_prime,
        g1=2.0 * cfg.e_j1 * s1 * xi1,
        g2=2.0 * cfg.e_j2 * s1 * xi2,
        g12=g12,
        xi1=xi1,
        xi2=xi2,
        xi12=xi12,
        drive_freq=cfg.drive_freq,
        detuning_flagged=flagged,
    )


# priority order used to break exact ties
_MATCH_PRIORITY = (
    MatchKind.DOUBLE_FLIP,
    MatchKind.EXCHANGE_FLIP,
    MatchKind.SINGLE_QUBIT_1,
    MatchKind.SINGLE_QUBIT_2,
)


def classify_drive(omega: float, dc: DerivedCouplings, tol: float = 0.05) -> MatchKind:
    """Classify omega against the four matching conditions.

    Targets are omega1+omega2 (double flip), |omega2-omega1| (exchange),
    omega1 and omega2 (single-qubit rotations), compared by relative
    mismatch |omega - target| / target within tol.  The closest qualifying
    target wins; exact ties fall back to the priority order above.
    """
    if not (0.0 < tol < 0.1):
        raise ValueError("tol must lie in (0, 0.1)")
    targets = {
        MatchKind.DOUBLE_FLIP: dc.omega1 + dc.omega2,
        MatchKind.EXCHANGE_FLIP: abs(dc.omega2 - dc.omega1),
        MatchKind.SINGLE_QUBIT_1: dc.omega1,
        MatchKind.SINGLE_QUBIT_2: dc.omega2,
    }
    best = MatchKind.DECOUPLED
    best_mismatch = math.inf
    for kind in _MATCH_PRIORITY:
        target = targets[kind]
        if target <= 0.0:
            continue
        mismatch = abs(omega - target) / target
        if mismatch <= tol and mismatch < best_mismatch:
            best = kind
            best_mismatch = mismatch
    return best


_CONFIG_KEYS = {f.name for f in fields(CircuitConfig)}


def load_config(path) -> CircuitConfig:
    """Read a flat `key = value` text file (# comments) into a CircuitConfig.

    Keys carry the CircuitConfig field names; missing keys fall back to the
    demo defaults, unknown keys are rejected.
    """
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, _, val = line.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = float(val.strip())
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: bad number {val.strip()!r}") from exc
    return CircuitConfig(**values)


def default_config() -> CircuitConfig:
    """Demo parameter set satisfying every stated inequality."""
    return CircuitConfig()
