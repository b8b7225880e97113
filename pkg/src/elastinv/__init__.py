"""Invariants, orbits and canonical forms of 3D elasticity tensors."""

from .basis import (
    CATALOG_VERSION,
    Fingerprint,
    InvariantDescriptor,
    catalog251,
    catalog_counts,
    evaluate_fingerprint,
    find_descriptor,
    zheng_closure,
)
from .exceptions import (
    ContractError,
    DomainError,
    ElastinvError,
    FormatError,
    InconsistentBranchError,
    UnsupportedLabelError,
)
from .harmonic import HarmonicParts, compose, decompose
from .intermediates import IntermediateSet, JInvariants, compute_intermediates, compute_j
from .io import read_tensor, write_tensor
from .orbit import OrbitVerdict, normalize, same_orbit
from .reconstruct import (
    CanonicalRepresentative,
    branch_probe,
    canonical_frame,
    prop1_canonicalize,
    prop2_canonicalize,
    reconstruct,
)
from .relations import RelationReport, certify_table1_degree, find_relation, sample_point
from .tensor import (
    ElasticityTensor,
    random_elasticity,
    random_rotation,
    rotate_elast,
    rotate_harm4,
    rotate_sym2,
    trace_product,
)

__version__ = "0.1.0"
