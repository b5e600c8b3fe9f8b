"""
This module contains the thinness test of reduced Khovanov homology and the rank-determinant
test certifying the collapse of the spectral sequence.
"""
from enum import Enum

from ..errors import InvariantError
from ..homology_engine import HomologyTable


class Thinness(str, Enum):
    THIN = "thin"
    NOT_THIN = "not_thin"


class CollapseCheck(str, Enum):
    COLLAPSE_CERTIFIED = "collapse_certified"
    UNKNOWN = "unknown"


def thinness(h: HomologyTable, sigma: int) -> Thinness:
    """
    Decides whether reduced homology is supported on the single diagonal q - 2i = sigma.

    Parameters
    ----------
    h : :class:`~khtight.homology_engine.homology.HomologyTable`
        Reduced Khovanov homology of a knot.
    sigma : `int`
        Signature of the knot.

    Returns
    -------
    :class:`~khtight.classical_invariants.thinness.Thinness`
        THIN or NOT_THIN.
    """
    return Thinness.THIN if h.diagonals() <= {sigma} else Thinness.NOT_THIN


def rank_det_check(h: HomologyTable, det: int) -> CollapseCheck:
    """
    Certifies the collapse of the spectral sequence at the second page if the total rank of
    reduced homology equals the determinant.

    Parameters
    ----------
    h : :class:`~khtight.homology_engine.homology.HomologyTable`
        Reduced Khovanov homology.
    det : `int`
        Determinant of the link.

    Returns
    -------
    :class:`~khtight.classical_invariants.thinness.CollapseCheck`
        COLLAPSE_CERTIFIED or UNKNOWN.
    """
    if det == 0:
        raise InvariantError("The rank-determinant test needs a nonzero determinant")
    if h.total_rank == abs(det):
        return CollapseCheck.COLLAPSE_CERTIFIED
    return CollapseCheck.UNKNOWN


__all__ = ["Thinness", "CollapseCheck", "thinness", "rank_det_check"]
