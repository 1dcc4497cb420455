"""Reed-Solomon lattices, locally dense gadgets and the SVP reduction built on them."""
from .errors import VerificationFailed, WorkLimitExceeded
from .field_core import FieldElem, FieldPoly
from .rs_lattice import ParityCheckMatrix, build_parity_check, lattice_basis, min_dist_exact

__all__ = [
    "FieldElem",
    "FieldPoly",
    "ParityCheckMatrix",
    "VerificationFailed",
    "WorkLimitExceeded",
    "build_parity_check",
    "lattice_basis",
    "min_dist_exact",
]
