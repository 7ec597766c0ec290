"""Truncated photon-number amplitude vectors for the readout field states.

Three generators: a coherent state (Poissonian), the even superposition of
two opposite coherent states, and the squeezed vacuum.  The latter two are
supported on even photon numbers only, with the odd amplitudes exactly zero
by construction.  All factorials go through log-gamma so amplitudes stay
finite far past n = 170.

Truncation convention: a state built with an explicit n_max larger than its
support is padded with exact zeros.  `choose_truncation` adds a +5 level
margin on top of the minimal cutoff so that one photon of growth during the
dynamics never touches the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hilbert import FockTruncation

__all__ = [
    "FieldState",
    "coherent",
    "even_cat",
    "squeezed_vacuum",
    "vacuum",
    "choose_truncation",
]

TRUNCATION_MARGIN = 5
NBAR_MAX = 100.0


@dataclass(frozen=True)
class FieldState:
    """Photon amplitudes D(0..n_max) with provenance.

    kind is one of "coherent", "even_cat", "squeezed_vacuum", "vacuum",
    "custom"; meta carries the generator parameters.  tail_mass is the
    probability the truncation dropped from the untruncated state.
    """

    amps: np.ndarray
    kind: str
    tail_mass: float
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def n_max(self) -> int:
        return len(self.amps) - 1

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def mean_photon_number(self) -> float:
        p = self.probabilities()
        return float(np.sum(np.arange(len(p)) * p))

    def norm_squared(self) -> float:
        return float(np.sum(self.probabilities()))


def _check_nbar(nbar: float):
    if nbar < 0.0:
        raise ValueError("nbar must be non-negative")
    if nbar > NBAR_MAX:
        raise ValueError(f"nbar <= {NBAR_MAX} (log-space accuracy guard)")


def _cutoff_from_logp(logp_fn, bound: float, start: int = 0, step: int = 1) -> int:
    # smallest support index N with 1 - sum_{n<=N} P(n) < bound
    total = 0.0
    n = start
    while True:
        total += math.exp(logp_fn(n))
        if 1.0 - total < bound:
            return n
        n += step
        if n > 200000:
            raise RuntimeError("tail bound unreachable")


def _poisson_logp(nbar: float):
    def logp(n: int) -> float:
        return -nbar + n * math.log(nbar) - math.lgamma(n + 1.0)

    return logp


def poisson_cutoff(nbar: float, bound: float) -> int:
    """Minimal N with Poisson tail beyond N below bound."""
    if nbar == 0.0:
        return 0
    return _cutoff_from_logp(_poisson_logp(nbar), bound)


def coherent(nbar: float, phase: float = 0.0, bound: float = 1e-10,
             n_max: int | None = None) -> FieldState:
    """Coherent state with amplitude sqrt(nbar) e^{i phase}.

    D(n) = e^{-nbar/2} alpha^n / sqrt(n!), evaluated in log space; the
    support ends at the minimal cutoff for the tail bound, and any extra
    n_max requested beyond it is zero padding.
    """
    _check_nbar(nbar)
    if nbar == 0.0:
        return vacuum(n_max if n_max is not None else 0)
    n0 = poisson_cutoff(nbar, bound)
    if n_max is None:
        n_max = n0
    if n_max < n0:
        raise ValueError("n_max below the minimal cutoff for this tail bound")
    n = np.arange(n0 + 1)
    log_mag = -0.5 * nbar + 0.5 * (n * math.log(nbar)) \
        - 0.5 * np.array([math.lgamma(k + 1.0) for k in n])
    amps = np.zeros(n_max + 1, dtype=complex)
    amps[: n0 + 1] = np.exp(log_mag) * np.exp(1j * phase * n)
    tail = 1.0 - float(np.sum(np.abs(amps) ** 2))
    return FieldState(amps, "coherent", tail, {"nbar": nbar, "phase": phase, "bound": bound})


def _cat_alpha_sq(nbar: float) -> float:
    # mean photon number of the even superposition is u*tanh(u) with u = |alpha|^2;
    # invert so that the state actually carries nbar photons on average
    if nbar == 0.0:
        return 0.0
    u = max(nbar, math.sqrt(nbar))
    for _ in range(80):
        th = math.tanh(u)
        f = u * th - nbar
        df = th + u * (1.0 - th * th)
        step = f / df
        u -= step
        if abs(step) < 1e-15 * max(u, 1.0):
            break
    return u


def even_cat(nbar: float, bound: float = 1e-10, n_max: int | None = None) -> FieldState:
    """Normalized superposition of two opposite real coherent states.

    Supported on even n with D(2k) = u^k / sqrt((2k)! cosh u); u solves
    u tanh(u) = nbar so the mean photon number is exactly the requested one.
    """
    _check_nbar(nbar)
    u = _cat_alpha_sq(nbar)
    if u == 0.0:
        return vacuum(n_max if n_max is not None else 0)
    log_cosh = u + math.log1p(math.exp(-2.0 * u)) - math.log(2.0)

    def logp(k: int) -> float:  # probability of photon number 2k
        return 2.0 * (k * math.log(u) - 0.5 * math.lgamma(2.0 * k + 1.0)) - log_cosh

    k0 = _cutoff_from_logp(logp, bound)
    n0 = 2 * k0
    if n_max is None:
        n_max = n0
    if n_max < n0:
        raise ValueError("n_max below the minimal cutoff for this tail bound")
    amps = np.zeros(n_max + 1, dtype=complex)
    for k in range(k0 + 1):
        amps[2 * k] = math.exp(k * math.log(u) - 0.5 * math.lgamma(2.0 * k + 1.0)
                               - 0.5 * log_cosh)
    tail = 1.0 - float(np.sum(np.abs(amps) ** 2))
    return FieldState(amps, "even_cat", tail, {"nbar": nbar, "alpha_sq": u, "bound": bound})


def squeezed_vacuum(nbar: float, beta: float = 0.0, bound: float = 1e-10,
                    n_max: int | None = None) -> FieldState:
    """Squeezed vacuum with nbar = sinh^2 r and squeezing phase beta.

    D(2k) = sqrt((2k)!) / (2^k k! sqrt(cosh r)) * (-e^{i beta} tanh r)^k,
    the normalized even-photon form (sum_k C(2k,k) (tanh^2 r / 4)^k = cosh r).
    """
    _check_nbar(nbar)
    if nbar == 0.0:
        return vacuum(n_max if n_max is not None else 0)
    r = math.asinh(math.sqrt(nbar))
    log_t = math.log(math.tanh(r))
    log_cosh = math.log(math.cosh(r))

    def log_mag(k: int) -> float:
        return 0.5 * math.lgamma(2.0 * k + 1.0) - k * math.log(2.0) \
            - math.lgamma(k + 1.0) - 0.5 * log_cosh + k * log_t

    k0 = _cutoff_from_logp(lambda k: 2.0 * log_mag(k), bound)
    n0 = 2 * k0
    if n_max is None:
        n_max = n0
    if n_max < n0:
        raise ValueError("n_max below the minimal cutoff for this tail bound")
    amps = np.zeros(n_max + 1, dtype=complex)
    for k in range(k0 + 1):
        amps[2 * k] = math.exp(log_mag(k)) * np.exp(1j * k * (beta + math.pi))
    tail = 1.0 - float(np.sum(np.abs(amps) ** 2))
    return FieldState(amps, "squeezed_vacuum", tail,
                      {"nbar": nbar, "r": r, "beta": beta, "bound": bound})


def vacuum(n_max: int = TRUNCATION_MARGIN) -> FieldState:
    """Fock vacuum padded to n_max."""
    amps = np.zeros(max(n_max, 0) + 1, dtype=complex)
    amps[0] = 1.0
    return FieldState(amps, "vacuum", 0.0, {})


_GENERATORS = {
    "coherent": lambda nbar, bound: coherent(nbar, 0.0, bound),
    "even_cat": even_cat,
    "squeezed_vacuum": squeezed_vacuum,
    "vacuum": lambda nbar, bound: vacuum(0),
}


def choose_truncation(kind: str, nbar: float, bound: float = 1e-10) -> FockTruncation:
    """Minimal cutoff for the tail bound plus a +5 safety margin.

    The margin keeps the one-photon growth of the quantized dynamics off
    the truncation boundary, so truncated propagation is exact on the
    occupied blocks.
    """
    if not (0.0 < bound <= 1e-3):
        raise ValueError("bound must lie in (0, 1e-3]")
    if kind not in _GENERATORS:
        raise ValueError(f"kind must be one of {sorted(_GENERATORS)}")
    minimal = _GENERATORS[kind](nbar, bound).n_max
    return FockTruncation(n_max=minimal + TRUNCATION_MARGIN, tail_bound=bound)
