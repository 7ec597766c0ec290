"""State evolution: closed-form coefficients, classical-drive kappa, and an
independent unitary propagator used as the brute-force oracle.

Quantized runs work in the rescaled time tau = |xi12| t.  The closed form is
written for the coupling phase gauge arg(xi12) = pi/2 (the gauge in which the
block rotations are the real cos/sin pair); `evolve_full_quantized` fixes
that gauge into the Fock basis before propagating, so the two routes agree on
the same amplitude arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvariantError
from .hilbert import BASIS_TWO_QUBIT_FOCK, OperatorMatrix, quantized_coupling_matrix
from .photon_states import FieldState

__all__ = [
    "QubitInitial",
    "JointState",
    "evolve_closed_form",
    "evolve_full_quantized",
    "kappa_c",
    "propagate_oracle",
    "amplitude_distance",
]

NORM_TOL = 1e-10
CLOSED_FORM_GAUGE = 1j  # xi12/|xi12| assumed by the printed coefficient formulas


@dataclass(frozen=True)
class QubitInitial:
    """Entangled two-qubit start cos(theta)|g,g> + sin(theta) e^{i phi}|e,e>."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi / 2.0):
            raise ValueError("theta must lie in [0, pi/2]")
        if not (0.0 <= self.phi < 2.0 * math.pi):
            raise ValueError("phi must lie in [0, 2*pi)")

    def ket(self) -> np.ndarray:
        v = np.zeros(4, dtype=complex)
        v[0] = math.sin(self.theta) * np.exp(1j * self.phi)  # |e,e>
        v[3] = math.cos(self.theta)                          # |g,g>
        return v


@dataclass(frozen=True)
class JointState:
    """Joint qubit-field state at rescaled time tau.

    Closed-form mode stores the block coefficients a_n (on |e,e,n>),
    b_n (on |g,g,n+1>) and the frozen c_gg0 (on |g,g,0>); full mode stores
    a dense vector over the two-qubit (x) Fock basis.
    """

    tau: float
    n_max: int
    a_n: np.ndarray | None = None
    b_n: np.ndarray | None = None
    c_gg0: complex | None = None
    vector: np.ndarray | None = None

    @property
    def mode(self) -> str:
        return "closed_form" if self.vector is None else "full"

    def to_vector(self) -> np.ndarray:
        if self.vector is not None:
            return self.vector
        m = self.n_max + 1
        v = np.zeros(4 * m, dtype=complex)
        v[0:m] = self.a_n                 # |e,e,n>
        v[3 * m] = self.c_gg0             # |g,g,0>
        v[3 * m + 1: 4 * m] = self.b_n    # |g,g,n+1>
        return v

    def norm_squared(self) -> float:
        if self.vector is not None:
            return float(np.sum(np.abs(self.vector) ** 2))
        return float(
            np.sum(np.abs(self.a_n) ** 2)
            + np.sum(np.abs(self.b_n) ** 2)
            + abs(self.c_gg0) ** 2
        )


def evolve_closed_form(init: QubitInitial, field: FieldState, tau: float) -> JointState:
    """Block-rotation solution of the one-photon double-flip interaction.

    a_n(tau) = cos(tau sqrt(n+1)) sin(theta) e^{i phi} D(n)
             - sin(tau sqrt(n+1)) cos(theta) D(n+1)
    b_n(tau) = cos(tau sqrt(n+1)) cos(theta) D(n+1)
             + sin(tau sqrt(n+1)) sin(theta) e^{i phi} D(n)
    c_gg0    = cos(theta) D(0)  (constant: the vacuum |g,g,0> never moves).

    The field should carry the +5 truncation margin so the top block is
    unoccupied; the formulas then solve the truncated model exactly.
    """
    d = field.amps
    n_max = field.n_max
    dp = np.append(d, 0.0)  # D(n_max+1) = 0 past the truncation
    n = np.arange(n_max + 1)
    rot = tau * np.sqrt(n + 1.0)
    cs, sn = np.cos(rot), np.sin(rot)
    amp_e = math.sin(init.theta) * np.exp(1j * init.phi)
    amp_g = math.cos(init.theta)
    a_n = cs * amp_e * d - sn * amp_g * dp[1:]
    b_n = cs[:-1] * amp_g * dp[1:n_max + 1] + sn[:-1] * amp_e * d[:-1]
    state = JointState(tau=float(tau), n_max=n_max, a_n=a_n, b_n=b_n,
                       c_gg0=amp_g * d[0])
    defect = abs(state.norm_squared() - (1.0 - field.tail_mass))
    if defect > NORM_TOL:
        raise InvariantError(f"closed-form norm defect {defect:.2e}")
    return state


def kappa_c(init: QubitInitial, tau) -> np.ndarray | float:
    """Reduced supercurrent under the classical resonant drive.

    kappa_c = 1 + sin(2 theta) cos(tau) cos(phi) + cos(2 theta) sin(tau),
    with tau = |g12| t.  Accepts a scalar or an array of tau values.
    """
    tau = np.asarray(tau, dtype=float)
    out = (1.0
           + math.sin(2.0 * init.theta) * np.cos(tau) * math.cos(init.phi)
           + math.cos(2.0 * init.theta) * np.sin(tau))
    return out if out.ndim else float(out)


def _as_matrix(obj) -> np.ndarray:
    if isinstance(obj, OperatorMatrix):
        return obj.entries
    return np.asarray(obj, dtype=complex)


def _check_hermitian(h: np.ndarray, tol: float = 1e-12):
    defect = np.max(np.abs(h - np.conj(np.swapaxes(h, -1, -2))))
    if defect > tol:
        raise ValueError(f"Hamiltonian is not Hermitian (defect {defect:.2e})")


_CHUNK = 20000


def propagate_oracle(hamiltonian, psi0, t_final: float, steps: int | None = None,
                     t_eval=None, return_trajectory: bool = False):
    """Brute-force unitary propagation by exact matrix exponentials.

    hamiltonian may be
      * a static OperatorMatrix / dense array: one eigendecomposition,
        exact U(t) at any requested time;
      * a qutip-style list [H0, [H1, f1], [H2, f2], ...] with real f_k(t):
        midpoint-rule piecewise-constant exponentials over `steps` steps
        (callers supply >= 1000 steps per drive period);
      * a callable t -> matrix: same midpoint stepping, unvectorized.

    Returns the final state, or (times, states) when return_trajectory is
    set or t_eval is given (states has shape (len(times), dim)).  Norm
    drift beyond 1e-10 raises InvariantError.
    """
    psi0 = np.asarray(psi0, dtype=complex)

    static = not (isinstance(hamiltonian, (list, tuple)) or callable(hamiltonian))
    if static:
        h = _as_matrix(hamiltonian)
        _check_hermitian(h)
        w, v = np.linalg.eigh(h)
        c0 = v.conj().T @ psi0
        times = np.asarray(t_eval, dtype=float) if t_eval is not None \
            else np.array([t_final], dtype=float)
        states = (v @ (np.exp(-1j * np.outer(times, w)) * c0).T).T
        _check_drift(states[-1])
        if return_trajectory or t_eval is not None:
            return times, states
        return states[-1]

    if steps is None or steps < 1:
        raise ValueError("time-dependent propagation needs steps >= 1")
    dt = t_final / steps

    if callable(hamiltonian):
        psi = psi0.copy()
        traj = [psi0.copy()] if return_trajectory else None
        for k in range(steps):
            h = _as_matrix(hamiltonian((k + 0.5) * dt))
            if k == 0:
                _check_hermitian(h)
            w, v = np.linalg.eigh(h)
            psi = v @ (np.exp(-1j * w * dt) * (v.conj().T @ psi))
            if traj is not None:
                traj.append(psi.copy())
        _check_drift(psi)
        if traj is not None:
            return np.linspace(0.0, t_final, steps + 1), np.array(traj)
        return psi

    # list format: vectorized assembly + batched eigendecomposition
    h0 = _as_matrix(hamiltonian[0])
    parts = [(_as_matrix(h), f) for h, f in hamiltonian[1:]]
    _check_hermitian(h0)
    for h, _ in parts:
        _check_hermitian(h)
    dim = h0.shape[0]
    psi = psi0.copy()
    traj = np.empty((steps + 1, dim), dtype=complex) if return_trajectory else None
    if traj is not None:
        traj[0] = psi0
    t_mid = (np.arange(steps) + 0.5) * dt
    pos = 0
    for s0 in range(0, steps, _CHUNK):
        s1 = min(steps, s0 + _CHUNK)
        hb = np.broadcast_to(h0, (s1 - s0, dim, dim)).copy()
        for h, f in parts:
            coeff = np.asarray(f(t_mid[s0:s1]), dtype=float)
            hb += coeff[:, None, None] * h
        w, v = np.linalg.eigh(hb)
        phases = np.exp(-1j * w * dt)
        u = (v * phases[:, None, :]) @ np.conj(np.swapaxes(v, 1, 2))
        for k in range(s1 - s0):
            psi = u[k] @ psi
            pos += 1
            if traj is not None:
                traj[pos] = psi
    _check_drift(psi)
    if traj is not None:
        return np.linspace(0.0, t_final, steps + 1), traj
    return psi


def _check_drift(psi: np.ndarray):
    drift = abs(float(np.sum(np.abs(psi) ** 2)) - 1.0)
    if drift > NORM_TOL:
        raise InvariantError(f"unitarity drift {drift:.2e} exceeds {NORM_TOL}")


def evolve_full_quantized(init: QubitInitial, field: FieldState, tau_grid) -> list[JointState]:
    """Full-matrix propagation of the quantized interaction on a tau grid.

    Builds the dense coupling Hamiltonian at unit coupling in the
    arg(xi12) = pi/2 gauge, so the result agrees with the closed form on
    the same field amplitudes; physical couplings with another phase are
    related by a Fock-basis rephasing.
    """
    tau_grid = np.atleast_1d(np.asarray(tau_grid, dtype=float))
    n_max = field.n_max
    h = quantized_coupling_matrix(CLOSED_FORM_GAUGE, n_max)
    psi0 = np.kron(init.ket(), field.amps)
    nrm = math.sqrt(1.0 - field.tail_mass)
    psi0 = psi0 / nrm if nrm > 0 else psi0
    taus, states = propagate_oracle(
        OperatorMatrix(h, BASIS_TWO_QUBIT_FOCK, n_max=n_max), psi0,
        t_final=float(tau_grid[-1]), t_eval=tau_grid,
    )
    # undo the tail normalization so amplitudes line up with the closed form
    return [
        JointState(tau=float(t), n_max=n_max, vector=states[i] * nrm)
        for i, t in enumerate(taus)
    ]


def amplitude_distance(s1: JointState, s2: JointState) -> float:
    """Largest absolute amplitude difference between two joint states."""
    return float(np.max(np.abs(s1.to_vector() - s2.to_vector())))
