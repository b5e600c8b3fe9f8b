"""
This module contains the invariants of contact surgery diagrams: the order of the first
homology and the three-dimensional invariant d3 of the contact plane field,

    d3 = (c1^2 - 2 chi(X) - 3 sign(X) + 2) / 4 + m,

where X is the four-manifold given by the diagram, c1^2 = r^T Q^{-1} r for the rotation
vector r and the intersection form Q of X, and m is the number of contact (+1)-surgeries.
"""
from dataclasses import dataclass
from enum import Enum
import logging
import numpy as np
import sympy

from ..classical_invariants import form_signature, integer_determinant
from ..errors import InvariantError
from ..lattice import ParityResult, integer_kernel
from .diagram import SurgeryDiagram


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class D3Result():
    """
    d3 invariant of a contact surgery diagram, with its ingredients.

    Attributes
    ----------
    d3 : `sympy.Rational`
        d3 invariant.
    c1_sq : `sympy.Rational`
        Square of the first Chern class.
    chi : `int`
        Euler characteristic of X.
    sign : `int`
        Signature of X.
    m : `int`
        Number of contact (+1)-surgeries.
    h1_order : `int`
        Order of the first homology of the surgered manifold.
    """
    d3: sympy.Rational
    c1_sq: sympy.Rational
    chi: int
    sign: int
    m: int
    h1_order: int

    def __post_init__(self):
        expected = (self.c1_sq - 2 * self.chi - 3 * self.sign + 2) / sympy.Integer(4) + self.m
        if sympy.Rational(self.d3) != expected:
            raise ValueError(f"d3 = {self.d3} does not match its ingredients ({expected})")

    def to_dict(self) -> dict:
        return {"d3": str(self.d3), "c1_sq": str(self.c1_sq), "chi": self.chi,
                "sign": self.sign, "m": self.m, "h1_order": self.h1_order}

    @staticmethod
    def from_dict(data: dict) -> "D3Result":
        return D3Result(sympy.Rational(data["d3"]), sympy.Rational(data["c1_sq"]),
                        int(data["chi"]), int(data["sign"]), int(data["m"]),
                        int(data["h1_order"]))


def intersection_form(s: SurgeryDiagram) -> tuple[np.ndarray, np.ndarray]:
    """
    Returns a basis of H_2(X) in terms of the two-handles (the integer kernel of the one-handle
    incidences) and the intersection form of X in that basis.

    Parameters
    ----------
    s : :class:`~khtight.surgery.diagram.SurgeryDiagram`
        Diagram.

    Returns
    -------
    `tuple[numpy.ndarray, numpy.ndarray]`
        Basis vectors as columns and the Gram matrix.
    """
    if s.handles.shape[0] == 0 or len(s) == 0:
        basis = np.eye(len(s), dtype=np.int64)
    else:
        basis = integer_kernel(s.handles)
    return basis, basis.T @ s.linking @ basis


def h1_order(s: SurgeryDiagram) -> int:
    """
    Returns the order of the first homology of the surgered manifold (0 if infinite, 1 for
    the empty diagram, i.e. the three-sphere): |det Q| without one-handles, otherwise the
    absolute determinant of Q bordered by the one-handle incidences.
    """
    h = s.handles.shape[0]
    if h == 0:
        return abs(integer_determinant(s.linking))
    bordered = np.block([[np.zeros((h, h), dtype=np.int64), s.handles],
                         [s.handles.T, s.linking]])
    return abs(integer_determinant(bordered))


def d3(s: SurgeryDiagram) -> D3Result:
    """
    Computes the d3 invariant of a contact surgery diagram in exact rational arithmetic.
    With one-handles, X has chi = 1 - #one-handles + #components and its intersection form
    lives on the kernel of the one-handle incidences.

    Parameters
    ----------
    s : :class:`~khtight.surgery.diagram.SurgeryDiagram`
        Diagram with finite first homology.

    Returns
    -------
    :class:`~khtight.surgery.invariants.D3Result`
        d3 and its ingredients.
    """
    order = h1_order(s)
    if order == 0:
        raise InvariantError("The first homology is infinite (b_1 > 0 is not supported)")

    basis, gram = intersection_form(s)
    if gram.shape[0] == 0:
        c1_sq = sympy.Integer(0)
    else:
        q = sympy.Matrix(gram.tolist())
        r = sympy.Matrix((basis.T @ np.array(s.rotation_vector, dtype=np.int64)).tolist())
        if q.det() == 0:
            raise InvariantError("The intersection form of X is degenerate")
        c1_sq = sympy.Rational((r.T * q.LUsolve(r))[0, 0])
    chi = 1 - s.handles.shape[0] + len(s)
    sign = form_signature(gram)
    value = (c1_sq - 2 * chi - 3 * sign + 2) / sympy.Integer(4) + s.m
    result = D3Result(sympy.Rational(value), c1_sq, chi, sign, s.m, order)
    logger.debug("d3 of %s: %s", s, result.to_dict())
    return result


class Fillability(str, Enum):
    NOT_STEIN_FILLABLE = "not_stein_fillable"
    NO_OBSTRUCTION = "no_obstruction"


def fillability_verdict(result: D3Result, parity: ParityResult) -> Fillability:
    """
    Combines the parity obstruction with a computed d3: if the obstruction forces every Stein
    filling (with c1 = 0) to have b_2 = 0, a filling would be a rational homology ball and
    d3 would vanish; a nonzero computed d3 then rules out Stein fillings.

    Parameters
    ----------
    result : :class:`~khtight.surgery.invariants.D3Result`
        Computed d3.
    parity : :class:`~khtight.lattice.complement.ParityResult`
        Parity obstruction of the orthogonal complement.

    Returns
    -------
    :class:`~khtight.surgery.invariants.Fillability`
        NOT_STEIN_FILLABLE or NO_OBSTRUCTION.
    """
    if parity.forces_d3_zero and result.d3 != 0:
        return Fillability.NOT_STEIN_FILLABLE
    return Fillability.NO_OBSTRUCTION


__all__ = ["D3Result", "intersection_form", "d3", "h1_order", "Fillability", "fillability_verdict"]
