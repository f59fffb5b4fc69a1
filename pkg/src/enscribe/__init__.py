"""Entangled-cloning feasibility analysis for finite sets of quantum states."""

from .certificates import (
    EnscriptionCertificate,
    EnscriptionParams,
    canonical_q,
    certificate,
    enscription_residual,
    entangled_input,
    input_normalizer,
    q_to_Q,
    residual_via_states,
    tablet_flavor,
)
from .engine import (
    IllegibilityReport,
    QInterval,
    QRangeResult,
    direct_sum_enscribe,
    illegibility_screen,
    q_minus_one_dependence_check,
    q_range_real_uniform,
    q_range_two_text,
    solve_real_uniform_central,
    solve_two_text,
    thin_extension_family,
    uniform_sextic,
    z0_threshold,
)
from .machine import (
    AncillaStates,
    CloneOutcome,
    ancilla_states,
    controlled_swap,
    duan_guo_saturation,
    failure_state_symmetry_check,
    run_clone,
    sample_clone,
    success_probability,
)
from .procedures import (
    build_procedure,
    qubit_example,
    swap_operator,
    symmetrize_procedure,
    unitary_from_correspondence,
    verify_procedure,
)
from .search import SearchOptions, SearchResult, default_q_grid, feasibility_search
from .texts import (
    DirectSumSplit,
    EquivalenceWitness,
    QuantumText,
    TextClassification,
    classify,
    direct_sum_decompose,
    equivalent,
    gram,
    make_real_uniform,
    make_text,
)

__version__ = "0.1.0"
