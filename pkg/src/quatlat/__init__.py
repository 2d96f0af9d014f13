"""quatlat - commensurability classes of arithmetic sublattices with exact arithmetic."""

__version__ = "0.1.0"

from .classify import (
    Certification,
    SplittingTypeCertificate,
    SubfieldInput,
    degree_formula,
    embedding_criterion,
    enumerate_classes,
    full_sublattice_report,
)
from .numfield import RATIONALS, decompose_prime, make_field
from .quat import QuaternionAlgebra, base_change, lattice_signature, make_algebra
from .relext import verify_automorphisms, verify_embedding

__all__ = [
    "Certification",
    "QuaternionAlgebra",
    "RATIONALS",
    "SplittingTypeCertificate",
    "SubfieldInput",
    "base_change",
    "decompose_prime",
    "degree_formula",
    "embedding_criterion",
    "enumerate_classes",
    "full_sublattice_report",
    "lattice_signature",
    "make_algebra",
    "make_field",
    "verify_automorphisms",
    "verify_embedding",
]
