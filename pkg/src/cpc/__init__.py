"""Coherent parity check (CPC) quantum error correction toolkit.

Small binary-matrix code definitions, stabilizer derivations, syndrome
decoding, encoded-gate rewrites, and desk-scale Monte Carlo fidelity
simulation.
"""

from .gf2 import Gf2Matrix, multiply, row_space_equal, rref
from .model import (
    ClassicalCode,
    CpcCode,
    CpcFormatError,
    GeneralCpcCode,
    InvalidCodeError,
    from_classical,
    generalize,
    parse,
    serialize,
    validate,
)
from .circuits import (
    Circuit,
    Gate,
    OPAQUE,
    PauliString,
    circuit_from_text,
    circuit_to_text,
    circuits_equal,
    cnot_commutator,
    conjugate_pauli,
    decode_circuit,
    encode_circuit,
)
from .propagation import (
    cross_propagation,
    effective_codes,
    general_propagation,
    general_to_classical,
)
from .stabilizers import (
    CssConversionError,
    CssToCpcResult,
    code_distance,
    cpc_to_css,
    css_to_cpc,
    logical_operators,
    stabilizers_general,
    stabilizers_split,
    symplectic_matrix,
)
from .decoding import (
    CorrectabilityReport,
    DecodeTable,
    DecodingObstruction,
    IsingProblem,
    augment_for_cnot,
    cnot_compatible,
    decode,
    decode_table,
    error_table,
    is_single_error_correcting,
    ising_problem,
    ml_decode_exhaustive,
    solve_ising,
)
from .logical_ops import (
    PauliFrame,
    logical_cnot_circuit,
    logical_hadamard_circuit,
    logical_pauli_frame,
)
from .dynamics import (
    CoherentFidelity,
    ErrorModel,
    HalfLifeFit,
    SimConfig,
    SimResult,
    coherent_fidelity_631,
    fit_half_life,
    haar_state,
    simulate,
)
from .search import SearchResult, random_code, search

__version__ = "0.1.0"
