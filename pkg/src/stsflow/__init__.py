"""Steiner triple systems, their block graphs, small nowhere-zero eigenvectors and flows."""

from .designs import (
    SteinerTripleSystem,
    StsValidationError,
    affine_plane_9,
    assmuss_mattson,
    binary_rank,
    bose,
    fano,
    find_resolution,
    find_subsystems,
    hamming_sts,
    load_catalog,
    parse_tau,
    read_sts,
    validate_sts,
    write_sts,
)
from .spectra import block_graph, block_graph_eigenvalues, is_eigenvector, lift, restrict
from .flows import (
    FlowCertificate,
    FlowError,
    am_five_flow,
    first_eig_nzi,
    load_certificate,
    min_flow_search,
    resolvable_flow,
    verify_flow,
)
from .johnson_min import N_of, T_of, brute_min, lower_bound, m1_jn3, upper_vector
from .crc import check_crc, enumerate_equitable_bipartitions, expected_count

__version__ = "0.1.0"
