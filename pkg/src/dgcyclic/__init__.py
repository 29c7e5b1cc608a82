"""Exact cyclic-homology complexes of weight-graded dg categories."""
__version__ = "0.1.0"

from .checkreport import CheckReport
from .complexes import (Builders, BigradedComplex, Cone, LinearMap, UTotal, WindowTooSmall, X_complex,
                        connes_Clambda, cyclic_CC, hochschild, hodge_total, negative_CN, periodic_CP,
                        scX_complex)
from .io import InputDocument, ParseError, ValidationError, parse_input, serialize
from .linalg import KERNEL, SparseMatrix, homology_dim, rank
from .presentation import (FiniteDim, GeneratorDecl, SemiFree, adjoin_t, k_objects, naturalize,
                           validate_presentation)
from .report import Report, emit_report
from .theorems import (check_cone_iso, check_feigin_tsygan, check_hodge_theorem, check_homotopy,
                       check_master_diagram, check_pi_qiso, check_sbi, is_quasi_iso)

__all__ = [
    "Builders", "BigradedComplex", "CheckReport", "Cone", "FiniteDim", "GeneratorDecl", "InputDocument",
    "KERNEL", "LinearMap", "ParseError", "Report", "SemiFree", "SparseMatrix", "UTotal", "ValidationError",
    "WindowTooSmall", "X_complex", "adjoin_t", "check_cone_iso", "check_feigin_tsygan", "check_hodge_theorem",
    "check_homotopy", "check_master_diagram", "check_pi_qiso", "check_sbi", "connes_Clambda", "cyclic_CC",
    "emit_report", "hochschild", "hodge_total", "homology_dim", "is_quasi_iso", "k_objects", "naturalize",
    "negative_CN", "parse_input", "periodic_CP", "rank", "scX_complex", "serialize", "validate_presentation",
]
