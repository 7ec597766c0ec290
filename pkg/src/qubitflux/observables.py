"""Supercurrent operator, the reduced quantity kappa, and its series form.

kappa = 1 + <sx1 sx2> carries both the supercurrent expectation and (up to
the small eta^2 term) its fluctuation: on states in span{|gg>,|ee>} (x) field
the single-qubit sx averages vanish and

    <I>   = -(eta I_c / 2) sin(2 pi f_e) * kappa            (units of I_c)
    var I = (eta^2/4) sin^2(2 pi f_e) [1-(kappa-1)^2] I_c^2
            + 2 sin^2(pi f_e) kappa I_c^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import JointState, QubitInitial
from .hilbert import BASIS_TWO_QUBIT, OperatorMatrix
from .params import canonical_flux
from .photon_states import FieldState, poisson_cutoff

__all__ = [
    "SupercurrentSpec",
    "KappaTrace",
    "supercurrent_operator",
    "kappa_from_state",
    "supercurrent_from_kappa",
    "fluctuation_formula",
    "kappa_q_series",
    "kappa_q_coherent_ground",
]

KAPPA_SLACK = 1e-9


@dataclass(frozen=True)
class SupercurrentSpec:
    """Current ratios eta_i = I_ci/I_0 and the flux bias of the readout loop.

    Equal ratios put the operator in units of the shared critical current
    I_c; unequal ratios fall back to units of the large-junction I_0.  The
    kappa-based formulas require the equal-current case.
    """

    eta1: float
    eta2: float
    f_e: float

    def __post_init__(self):
        if not (0.0 < self.eta1 < 1.0 and 0.0 < self.eta2 < 1.0):
            raise ValueError("eta_i must lie in (0, 1)")

    @property
    def equal_currents(self) -> bool:
        return self.eta1 == self.eta2


@dataclass(frozen=True)
class KappaTrace:
    """A kappa(tau) time series with provenance."""

    tau_grid: np.ndarray
    kappa: np.ndarray
    model_tag: str                  # "classical_drive" or "quantized_field"
    field_meta: dict | None = None

    def __post_init__(self):
        object.__setattr__(self, "tau_grid", np.asarray(self.tau_grid, dtype=float))
        object.__setattr__(self, "kappa", np.asarray(self.kappa, dtype=float))

    def validate(self):
        lo, hi = float(np.min(self.kappa)), float(np.max(self.kappa))
        if lo < -KAPPA_SLACK or hi > 2.0 + KAPPA_SLACK:
            raise ValueError(f"kappa out of [0, 2]: range [{lo}, {hi}]")


def supercurrent_operator(spec: SupercurrentSpec) -> OperatorMatrix:
    """Circulating-supercurrent operator of the coupled two-qubit loop.

    sin(pi f_e) (I_c1 sx1 + I_c2 sx2)
      - (1/4 I_0) sin(2 pi f_e) [I_c1^2 + I_c2^2 + 2 I_c1 I_c2 sx1 sx2],
    reported per unit I_c when the critical currents are equal, per unit
    I_0 otherwise.
    """
    fe = canonical_flux(spec.f_e)
    s1 = math.sin(math.pi * fe)
    s2 = math.sin(2.0 * math.pi * fe)
    x = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    i2 = np.eye(2, dtype=complex)
    x1, x2 = np.kron(x, i2), np.kron(i2, x)
    xx = x1 @ x2
    ident = np.eye(4, dtype=complex)
    if spec.equal_currents:
        eta = spec.eta1
        mat = s1 * (x1 + x2) - 0.5 * eta * s2 * (ident + xx)
    else:
        e1, e2 = spec.eta1, spec.eta2
        mat = s1 * (e1 * x1 + e2 * x2) \
            - 0.25 * s2 * ((e1 * e1 + e2 * e2) * ident + 2.0 * e1 * e2 * xx)
    return OperatorMatrix(mat, BASIS_TWO_QUBIT)


def _state_as_qubit_field(psi) -> np.ndarray:
    if isinstance(psi, JointState):
        psi = psi.to_vector()
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1 or psi.size % 4:
        raise ValueError("state must be a vector over the two-qubit (x) Fock basis")
    return psi.reshape(4, psi.size // 4)


def kappa_from_state(psi) -> float:
    """1 + <sx1 sx2> of a normalized state, tracing out any field factor."""
    m = _state_as_qubit_field(psi)
    norm = float(np.sum(np.abs(m) ** 2))
    if abs(norm - 1.0) > 1e-6:
        raise ValueError(f"state not normalized (|psi|^2 = {norm})")
    # sx1 sx2 swaps ee<->gg and eg<->ge within each photon sector
    val = 2.0 * np.real(np.sum(np.conj(m[3]) * m[0] + np.conj(m[1]) * m[2]))
    return 1.0 + float(val)


def supercurrent_from_kappa(kappa, spec: SupercurrentSpec):
    """Supercurrent expectation -(eta/2) sin(2 pi f_e) kappa in units of I_c."""
    if not spec.equal_currents:
        raise ValueError("kappa-based supercurrent assumes equal critical currents")
    s2 = math.sin(2.0 * math.pi * canonical_flux(spec.f_e))
    return -0.5 * spec.eta1 * s2 * np.asarray(kappa)


def fluctuation_formula(kappa: float, spec: SupercurrentSpec) -> tuple[float, float]:
    """Supercurrent variance (full, dominant) in units of I_c^2.

    full     = (eta^2/4) sin^2(2 pi f_e) [1 - (kappa-1)^2]
               + 2 sin^2(pi f_e) kappa
    dominant drops the first term, negligible at small eta.
    """
    if not spec.equal_currents:
        raise ValueError("fluctuation formula assumes equal critical currents")
    if not (-KAPPA_SLACK <= kappa <= 2.0 + KAPPA_SLACK):
        raise ValueError("kappa must lie in [0, 2]")
    eta = spec.eta1
    fe = canonical_flux(spec.f_e)
    s1 = math.sin(math.pi * fe)
    s2 = math.sin(2.0 * math.pi * fe)
    dominant = 2.0 * s1 * s1 * kappa
    full = 0.25 * eta * eta * s2 * s2 * (1.0 - (kappa - 1.0) ** 2) + dominant
    return full, dominant


def kappa_q_series(init: QubitInitial, field: FieldState, tau):
    """Reduced supercurrent under the quantized field, evaluated as a series.

    kappa_q(tau) = 1 + 2 Re{ w0(tau) cos(theta) D(0) + sum_n u_n(tau) v_n(tau) }
    with
      w0  = cos(tau) sin(theta) e^{-i phi} D*(0) - sin(tau) cos(theta) D*(1)
      u_n = cos(tau sqrt(n+2)) sin(theta) e^{-i phi} D*(n+1)
            - sin(tau sqrt(n+2)) cos(theta) D*(n+2)
      v_n = cos(tau sqrt(n+1)) cos(theta) D(n+1)
            + sin(tau sqrt(n+1)) sin(theta) e^{i phi} D(n).
    Accepts a scalar or an array of tau values.
    """
    tau_in = np.asarray(tau, dtype=float)
    taus = np.atleast_1d(tau_in)
    d = field.amps
    dp = np.append(d, 0.0)
    n = np.arange(field.n_max)  # u_n v_n vanish identically past the support
    sq1 = np.sqrt(n + 1.0)
    sq2 = np.sqrt(n + 2.0)
    amp_e = math.sin(init.theta) * np.exp(1j * init.phi)
    amp_g = math.cos(init.theta)
    c2, s2 = np.cos(np.outer(taus, sq2)), np.sin(np.outer(taus, sq2))
    c1, s1 = np.cos(np.outer(taus, sq1)), np.sin(np.outer(taus, sq1))
    u = c2 * np.conj(amp_e * dp[n + 1]) - s2 * amp_g * np.conj(dp[n + 2])
    v = c1 * amp_g * dp[n + 1] + s1 * amp_e * d[n]
    w0 = np.cos(taus) * np.conj(amp_e * d[0]) - np.sin(taus) * amp_g * np.conj(dp[1])
    out = 1.0 + 2.0 * np.real(w0 * amp_g * d[0] + np.sum(u * v, axis=1))
    return out if tau_in.ndim else float(out[0])


def kappa_q_coherent_ground(nbar: float, phase: float, tau, bound: float = 1e-10):
    """Ground-state qubits with a coherent field: the specialized series.

    kappa_q(tau) = 1 - 2 cos(phase) e^{-nbar}
                   sum_n A(n) sin(tau sqrt(n+1)) cos(tau sqrt(n)),
    A(n) = nbar^{n+1/2} / (n! sqrt(n+1)), summed over the same support as
    the truncated coherent state so the two series routes agree exactly.
    """
    if nbar < 0.0 or nbar > 100.0:
        raise ValueError("nbar must lie in [0, 100]")
    tau_in = np.asarray(tau, dtype=float)
    taus = np.atleast_1d(tau_in)
    if nbar == 0.0:
        out = np.ones_like(taus)
        return out if tau_in.ndim else 1.0
    n_top = poisson_cutoff(nbar, bound)
    n = np.arange(n_top)  # pairs (n, n+1) inside the support
    log_a = (n + 0.5) * math.log(nbar) \
        - np.array([math.lgamma(k + 1.0) for k in n]) - 0.5 * np.log(n + 1.0)
    weights = np.exp(log_a - nbar)
    osc = np.sin(np.outer(taus, np.sqrt(n + 1.0))) * np.cos(np.outer(taus, np.sqrt(n)))
    out = 1.0 - 2.0 * math.cos(phase) * (osc @ weights)
    return out if tau_in.ndim else float(out[0])
