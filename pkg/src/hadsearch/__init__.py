"""Energy-function construction, quadratization and annealing for
Hadamard-matrix search, orthogonal-vector-set and matrix-completion problems."""

from .annealer import AnnealConfig, ResultSet, Sample, anneal, energy, histogram
from .ising import (
    IsingModel,
    extract,
    from_document,
    load_model,
    model_digest,
    normalize,
    save_model,
    to_document,
    to_flat_text,
    to_physics_convention,
    to_qubo,
)
from .poly import (
    AncillaReuseError,
    Domain,
    DomainMismatchError,
    Polynomial,
    PolyStats,
)
from .problems import (
    Completion,
    HSearch,
    Layout,
    OrthoSet,
    ProblemSpec,
    build_ek_s,
    ek_constant,
    layout_for,
    parse_known_columns,
    read_known_columns,
    sylvester_hadamard,
)
from .reduce import (
    Delta,
    NonIntegralCoefficientError,
    PipelineResult,
    boolean_reduce,
    default_delta,
    h_and,
    q_to_s,
    run_pipeline,
    s_to_q,
)
from .verify import (
    BudgetExceededError,
    GroundReport,
    brute_force_ground,
    consistent_ancilla_extension,
    decode,
    direct_energy,
    evaluate_batch,
    is_hadamard,
    mutual_orthogonality,
)

__version__ = "0.1.0"

__all__ = [
    "AnnealConfig",
    "AncillaReuseError",
    "BudgetExceededError",
    "Completion",
    "Delta",
    "Domain",
    "DomainMismatchError",
    "GroundReport",
    "HSearch",
    "IsingModel",
    "Layout",
    "NonIntegralCoefficientError",
    "OrthoSet",
    "PipelineResult",
    "PolyStats",
    "Polynomial",
    "ProblemSpec",
    "ResultSet",
    "Sample",
    "anneal",
    "boolean_reduce",
    "brute_force_ground",
    "build_ek_s",
    "consistent_ancilla_extension",
    "decode",
    "default_delta",
    "direct_energy",
    "ek_constant",
    "energy",
    "evaluate_batch",
    "extract",
    "from_document",
    "h_and",
    "histogram",
    "is_hadamard",
    "layout_for",
    "load_model",
    "model_digest",
    "mutual_orthogonality",
    "normalize",
    "parse_known_columns",
    "q_to_s",
    "read_known_columns",
    "run_pipeline",
    "s_to_q",
    "save_model",
    "sylvester_hadamard",
    "to_document",
    "to_flat_text",
    "to_physics_convention",
    "to_qubo",
    "__version__",
]
