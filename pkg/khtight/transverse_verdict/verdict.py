"""
This module contains the tightness verdict for the contact structure on the branched double
cover of a transverse braid closure. A nonvanishing transverse element psi in reduced Khovanov
homology, together with a certificate that the spectral sequence to Heegaard Floer homology
collapses (total rank equal to the determinant), certifies tightness.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional
import logging
import time
import warnings

from ..braid_link import BraidWord, closure_diagram
from ..classical_invariants import CollapseCheck, Thinness, goeritz, rank_det_check, thinness
from ..config import EngineLimits, resolve_limits
from ..errors import InvariantError, KhTightError, ResourceLimitError
from ..homology_engine import class_level, closure_complex, filtered_levels, homology, \
    is_boundary
from ..khovanov import ChainVector, CubeComplex, Flavor, Reduction, build_complex, \
    canonical_generators, psi_chain


logger = logging.getLogger(__name__)

PSI_ZERO_CAVEAT = "psi = 0 does not imply that the contact structure is overtwisted"


class PsiStatus(str, Enum):
    NONZERO = "nonzero"
    ZERO = "zero"


class Verdict(str, Enum):
    TIGHT_CERTIFIED = "TIGHT_CERTIFIED"
    PSI_ZERO = "PSI_ZERO"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class PsiTest():
    """
    Outcome of the boundary test of psi in the reduced Khovanov complex.

    Attributes
    ----------
    status : :class:`~khtight.transverse_verdict.verdict.PsiStatus`
        NONZERO or ZERO.
    i : `int`
        Homological grading of psi.
    q : `int`
        Quantum grading of psi.
    witness : `frozenset[int]`, optional
        Generators of a chain y with dy = psi, if psi vanishes.
    """
    status: PsiStatus
    i: int
    q: int
    witness: Optional[frozenset] = None


def _psi_result(c: CubeComplex, psi: ChainVector) -> PsiTest:
    result = is_boundary(c, psi)
    if result.is_boundary:
        return PsiTest(PsiStatus.ZERO, psi.i, psi.q, result.witness)
    return PsiTest(PsiStatus.NONZERO, psi.i, psi.q)


def psi_test(w: BraidWord, limits: Optional[EngineLimits] = None,
             c: Optional[CubeComplex] = None) -> PsiTest:
    """
    Decides whether psi vanishes in reduced Khovanov homology by a direct boundary solve.
    Large diagrams are computed tangle-wise, carrying psi through the cancellations.

    Parameters
    ----------
    w : :class:`~khtight.braid_link.braid_word.BraidWord`
        Braid word.
    limits : :class:`~khtight.config.EngineLimits`, optional
        Resource limits.

        The default is None.
    c : :class:`~khtight.khovanov.complex.CubeComplex`, optional
        Reduced Khovanov complex of the full cube, if already built.

        The default is None.

    Returns
    -------
    :class:`~khtight.transverse_verdict.verdict.PsiTest`
        Result including the witness of a vanishing psi.
    """
    if c is not None:
        return _psi_result(*psi_chain(w, Reduction.REDUCED, c=c))
    return _psi_result(*closure_complex(w, Flavor.KHOVANOV_F2, Reduction.REDUCED, limits))


def psi_nonvanishing(w: BraidWord, limits: Optional[EngineLimits] = None) -> PsiStatus:
    """
    Returns NONZERO if psi is not a boundary in the reduced Khovanov complex, ZERO otherwise.
    """
    return psi_test(w, limits).status


def s_invariant(w: BraidWord, limits: Optional[EngineLimits] = None) -> int:
    """
    Returns the s-invariant of a braid closure over the two-element field: the filtration
    level of the class of the reduced canonical generator in Bar-Natan--Turner homology.
    Reduced homology of a knot is one-dimensional, so for large diagrams, computed
    tangle-wise, s is the level of the only class in degree 0.

    Parameters
    ----------
    w : :class:`~khtight.braid_link.braid_word.BraidWord`
        Braid word whose closure is a knot.
    limits : :class:`~khtight.config.EngineLimits`, optional
        Resource limits.

        The default is None.

    Returns
    -------
    `int`
        s-invariant.
    """
    d = closure_diagram(w)
    if not d.is_knot:
        raise InvariantError(f"The closure has {d.n_components} components; " +
                             "the s-invariant is defined for knots only")
    limits = resolve_limits(limits)
    if limits.use_scanning(d.n_crossings):
        c, _ = closure_complex(w, Flavor.BAR_NATAN_F2, Reduction.REDUCED, limits)
        levels = filtered_levels(c, 0).levels
        if len(levels) != 1:
            raise InvariantError("Reduced Bar-Natan--Turner homology of a knot has " +
                                 f"{len(levels)} classes in degree 0")
        return levels[0]
    c = build_complex(d, Flavor.BAR_NATAN_F2, Reduction.REDUCED, limits)
    _, (generator,) = canonical_generators(w, Reduction.REDUCED, c=c)
    return class_level(c, generator)


def s_bound_check(w: BraidWord, limits: Optional[EngineLimits] = None) -> bool:
    """
    Checks the bound sl <= s - 1 for a transverse knot.
    """
    return w.self_linking() <= s_invariant(w, limits) - 1


@dataclass(frozen=True)
class VerdictReport():
    """
    Tightness report of a transverse braid closure.

    Attributes
    ----------
    braid : `str`
        Letters of the braid word.
    strands : `int`
        Braid index.
    components : `int`
        Number of link components.
    sl : `int`
        Self-linking number.
    s : `int`, optional
        s-invariant (knots only).
    sigma : `int`, optional
        Signature.
    det : `int`, optional
        Determinant.
    kh_rank : `int`, optional
        Total rank of reduced Khovanov homology.
    thin : `bool`, optional
        True if reduced homology is supported on the diagonal q - 2i = sigma.
    collapse : `bool`
        True if total rank equals the determinant.
    psi_nonzero : `bool`, optional
        True if psi does not vanish.
    verdict : :class:`~khtight.transverse_verdict.verdict.Verdict`
        TIGHT_CERTIFIED, PSI_ZERO or INCONCLUSIVE.
    notes : `tuple[str]`
        Remarks and downgraded failures.
    provenance : `dict[str, str]`
        How each field was obtained.
    elapsed : `float`
        Wall-clock seconds spent.
    capped : `bool`
        True if a resource limit was hit.
    """
    braid: str
    strands: int
    components: int
    sl: int
    s: Optional[int]
    sigma: Optional[int]
    det: Optional[int]
    kh_rank: Optional[int]
    thin: Optional[bool]
    collapse: bool
    psi_nonzero: Optional[bool]
    verdict: Verdict
    notes: tuple = field(default_factory=tuple)
    provenance: dict = field(default_factory=dict)
    elapsed: float = 0.
    capped: bool = False

    def __post_init__(self):
        certified = self.verdict == Verdict.TIGHT_CERTIFIED
        if certified != (self.collapse and self.psi_nonzero is True):
            raise ValueError("TIGHT_CERTIFIED requires exactly the collapse and psi_nonzero flags")

    def to_dict(self) -> dict:
        return {"braid": self.braid, "strands": self.strands, "components": self.components,
                "sl": self.sl, "s": self.s, "sigma": self.sigma, "det": self.det,
                "kh_rank": self.kh_rank, "thin": self.thin, "collapse": self.collapse,
                "psi_nonzero": self.psi_nonzero, "verdict": self.verdict.value,
                "notes": list(self.notes), "provenance": dict(self.provenance),
                "elapsed": self.elapsed, "capped": self.capped}

    @staticmethod
    def from_dict(data: dict) -> "VerdictReport":
        data = dict(data)
        data["verdict"] = Verdict(data["verdict"])
        data["notes"] = tuple(data.get("notes", ()))
        return VerdictReport(**data)


def tightness_verdict(w: BraidWord, limits: Optional[EngineLimits] = None) -> VerdictReport:
    """
    Assembles the tightness report of a transverse braid closure. The verdict is
    TIGHT_CERTIFIED if psi does not vanish and the rank of reduced Khovanov homology equals the
    determinant, PSI_ZERO if psi vanishes (no conclusion about tightness) and INCONCLUSIVE
    otherwise. Failures of individual steps are recorded in the notes.

    Parameters
    ----------
    w : :class:`~khtight.braid_link.braid_word.BraidWord`
        Braid word.
    limits : :class:`~khtight.config.EngineLimits`, optional
        Resource limits.

        The default is None.

    Returns
    -------
    :class:`~khtight.transverse_verdict.verdict.VerdictReport`
        Report.
    """
    start = time.perf_counter()
    limits = resolve_limits(limits)
    d = closure_diagram(w)
    notes = []
    provenance = {"sl": "writhe - braid index"}
    capped = False
    s = sigma = det = kh_rank = thin = psi_nonzero = None
    collapse = False

    def record(step: str, ex: KhTightError) -> None:
        nonlocal capped
        capped = capped or isinstance(ex, ResourceLimitError)
        notes.append(f"{step}: {ex}")
        logger.info("%s failed for %s: %s", step, w.to_text(), ex)

    try:
        form = goeritz(d)
        det, sigma = form.determinant, form.signature
        provenance["det"] = provenance["sigma"] = "Goeritz matrix, Gordon-Litherland correction"
    except (KhTightError, ValueError) as ex:
        record("goeritz", ex)

    c = psi = None
    method = "tangle-wise scan" if limits.use_scanning(d.n_crossings) else "full cube"
    try:
        c, psi = closure_complex(w, Flavor.KHOVANOV_F2, Reduction.REDUCED, limits)
        table = homology(c)
        kh_rank = table.total_rank
        provenance["kh_rank"] = f"reduced Khovanov homology over GF(2), {method}"
        if sigma is not None and d.is_knot:
            thin = thinness(table, sigma) == Thinness.THIN
            provenance["thin"] = "support of reduced homology on q - 2i = sigma"
        if det:
            collapse = rank_det_check(table, det) == CollapseCheck.COLLAPSE_CERTIFIED
            provenance["collapse"] = "total rank = determinant"
    except KhTightError as ex:
        record("homology", ex)

    if c is not None:
        try:
            psi_nonzero = _psi_result(c, psi).status == PsiStatus.NONZERO
            provenance["psi_nonzero"] = f"boundary solve in the reduced complex, {method}"
        except KhTightError as ex:
            record("psi", ex)

    if d.is_knot:
        try:
            s = s_invariant(w, limits)
            provenance["s"] = "filtration level of the reduced canonical generator"
            if psi_nonzero is not None and thin:
                agree = psi_nonzero == (w.self_linking() == s - 1)
                notes.append("sl = s - 1 " + ("agrees" if agree else "disagrees") +
                             " with the psi solve")
        except KhTightError as ex:
            record("s", ex)
    else:
        notes.append("closure is a link: s-based criteria disabled, psi decided by direct solve")

    if psi_nonzero is True and collapse:
        verdict = Verdict.TIGHT_CERTIFIED
    elif psi_nonzero is False:
        verdict = Verdict.PSI_ZERO
        notes.append(PSI_ZERO_CAVEAT)
        warnings.warn(f"{w.to_text()}: {PSI_ZERO_CAVEAT}")
    else:
        verdict = Verdict.INCONCLUSIVE

    report = VerdictReport(w.to_text(), w.strands, d.n_components, w.self_linking(), s, sigma,
                           det, kh_rank, thin, collapse, psi_nonzero, verdict, tuple(notes),
                           provenance, time.perf_counter() - start, capped)
    logger.info("%s: %s", w.to_text(), verdict.value)
    return report


__all__ = ["PsiStatus", "Verdict", "PsiTest", "VerdictReport", "psi_test", "psi_nonvanishing",
           "s_invariant", "s_bound_check", "tightness_verdict", "PSI_ZERO_CAVEAT"]
