import os


with open(os.path.join(os.path.dirname(__file__), 'VERSION'), encoding="utf-8") as f:
    VERSION = f.read().strip()


from .errors import KhTightError, BraidParseError, DiagramError, InvariantError, \
    ResourceLimitError
from .config import EngineLimits
from .braid_link import BraidWord, LinkDiagram, parse_braid, family_word, self_linking, \
    closure_diagram
from .khovanov import Flavor, Reduction, CubeComplex, build_complex, psi_chain
from .homology_engine import HomologyTable, homology, is_boundary, scan_reduce, scan_complex
from .classical_invariants import determinant, signature, thinness, qa_verify
from .transverse_verdict import PsiStatus, Verdict, VerdictReport, psi_test, s_invariant, \
    tightness_verdict
from .filtered import BiFilteredComplex, SpectralSequence, Filtration, pages
from .surgery import SurgeryDiagram, D3Result, braid_to_surgery, d3, h1_order, \
    fillability_verdict
from .lattice import GramLattice, E125_PLUMBING, E141_PLUMBING, enumerate_embeddings, \
    orthogonal_complement, parity_obstruction


__all__ = ["VERSION",
           "KhTightError", "BraidParseError", "DiagramError", "InvariantError",
           "ResourceLimitError", "EngineLimits",
           "BraidWord", "LinkDiagram", "parse_braid", "family_word", "self_linking",
           "closure_diagram",
           "Flavor", "Reduction", "CubeComplex", "build_complex", "psi_chain",
           "HomologyTable", "homology", "is_boundary", "scan_reduce", "scan_complex",
           "determinant", "signature", "thinness", "qa_verify",
           "PsiStatus", "Verdict", "VerdictReport", "psi_test", "s_invariant",
           "tightness_verdict",
           "BiFilteredComplex", "SpectralSequence", "Filtration", "pages",
           "SurgeryDiagram", "D3Result", "braid_to_surgery", "d3", "h1_order",
           "fillability_verdict",
           "GramLattice", "E125_PLUMBING", "E141_PLUMBING", "enumerate_embeddings",
           "orthogonal_complement", "parity_obstruction"]
