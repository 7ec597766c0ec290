"""Two charge qubits coupled through a large Josephson junction.

Variable-frequency flux control switches the qubit-qubit interaction on and
off; the circulating supercurrent reads the joint state out, and its time
trace fingerprints the statistics of the driving microwave field.
"""

from .databus import BusParams, EquivalenceReport, bus_params, effective_chi, \
    equivalence_report
from .dynamics import JointState, QubitInitial, amplitude_distance, \
    evolve_closed_form, evolve_full_quantized, kappa_c, propagate_oracle
from .errors import ConfigError, InvariantError
from .hilbert import FockTruncation, OperatorMatrix, hamiltonian_lab, \
    hamiltonian_quantized, hamiltonian_rwa, hamiltonian_spinboson, pauli
from .observables import KappaTrace, SupercurrentSpec, fluctuation_formula, \
    kappa_from_state, kappa_q_coherent_ground, kappa_q_series, \
    supercurrent_from_kappa, supercurrent_operator
from .params import CircuitConfig, DerivedCouplings, MatchKind, bessel_j, \
    classify_drive, default_config, derive_couplings, load_config
from .photon_states import FieldState, choose_truncation, coherent, even_cat, \
    squeezed_vacuum, vacuum

__version__ = "0.1.0"

__all__ = [
    "BusParams", "CircuitConfig", "ConfigError", "DerivedCouplings",
    "EquivalenceReport", "FieldState", "FockTruncation", "InvariantError",
    "JointState", "KappaTrace", "MatchKind", "OperatorMatrix", "QubitInitial",
    "SupercurrentSpec", "amplitude_distance", "bessel_j", "bus_params",
    "choose_truncation", "classify_drive", "coherent", "default_config",
    "derive_couplings", "effective_chi", "equivalence_report", "even_cat",
    "evolve_closed_form", "evolve_full_quantized", "fluctuation_formula",
    "hamiltonian_lab", "hamiltonian_quantized", "hamiltonian_rwa",
    "hamiltonian_spinboson", "kappa_c", "kappa_from_state",
    "kappa_q_coherent_ground", "kappa_q_series", "load_config", "pauli",
    "propagate_oracle", "squeezed_vacuum", "supercurrent_from_kappa",
    "supercurrent_operator", "vacuum",
]
