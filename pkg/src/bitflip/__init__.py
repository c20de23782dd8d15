"""Bit-flipping decoding, finite-geometry parity-check codes and pseudoredundancy certificates."""

from .constructions import (
    cyclic_hamming_matrix,
    euclidean_punctured,
    hamming_circulant,
    hamming_matrix,
    projective_plane,
    simplex_circulant,
    simplex_weight3_matrix,
)
from .decoder import DecodeResult, DecoderConfig, Status, TieBreak, TraceStep, Variant, decode, unsat_counts
from .fields import FiniteField, build_field
from .geometry import (
    ConfigurationWitness,
    design_pseudoweight_bound,
    expansion_check,
    find_configuration,
    max_pairwise_intersection,
    min_union_size,
)
from .gf2 import (
    BinaryMatrix,
    BlockSystem,
    column_blocks,
    min_distance,
    nullspace_basis,
    rank,
    same_code,
    syndrome,
)
from .instances import fig1_instance
from .spectral import (
    SpectralSummary,
    check_biregular_connected,
    tanner_distance_bound,
    tanner_expansion_bound,
    top_two_eigenvalues,
)
from .verifier import (
    Certificate,
    VerifyMode,
    VerifyReport,
    certify_pseudoredundancy,
    explore_runs,
    structural_t3_scan_c5,
    two_error_scan,
    verify_exhaustive,
)

__version__ = "0.1.0"
