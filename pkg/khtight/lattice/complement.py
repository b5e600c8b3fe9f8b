"""
This module contains orthogonal complements of embedded lattices and the parity obstruction
to Stein fillings with nonzero second Betti number.
"""
from dataclasses import dataclass
from enum import Enum
import logging
import numpy as np
import sympy
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from ..errors import InvariantError
from .embedding import Embedding
from .gram import GramLattice


logger = logging.getLogger(__name__)


def _saturate(basis: sympy.Matrix) -> sympy.Matrix:
    # a k x k minor bounds the index of the lattice in its saturation
    rows = list(basis.T.rref()[1])
    index = abs(basis.extract(rows, list(range(basis.cols))).det())
    for p in sympy.primefactors(index):
        while True:
            null = DomainMatrix.from_Matrix(basis).convert_to(GF(p)).nullspace()
            if null.shape[0] == 0:
                break
            y = [int(c) % p for c in null.to_Matrix().row(0)]
            j = next(i for i, c in enumerate(y) if c != 0)
            inverse = pow(y[j], -1, p)
            y = sympy.Matrix([(c * inverse) % p for c in y])
            basis[:, j] = (basis * y) / p
    return basis


def integer_kernel(matrix: np.ndarray) -> np.ndarray:
    """
    Returns a basis of the integer kernel {x in Z^n : Mx = 0}. The rational null space is
    scaled to integer vectors, then saturated prime by prime until it spans every integer
    point of the kernel.

    Parameters
    ----------
    matrix : `numpy.ndarray`
        Integer matrix with n columns.

    Returns
    -------
    `numpy.ndarray`
        Matrix whose columns are a basis of the kernel.
    """
    matrix = np.atleast_2d(np.asarray(matrix, dtype=np.int64))
    n = matrix.shape[1]
    if matrix.shape[0] == 0:
        return np.eye(n, dtype=np.int64)

    vectors = []
    for v in sympy.Matrix(matrix.tolist()).nullspace():
        v = v * sympy.lcm([x.q for x in v])
        vectors.append(v / sympy.gcd(list(v)))
    if len(vectors) == 0:
        return np.zeros((n, 0), dtype=np.int64)

    basis = _saturate(sympy.Matrix.hstack(*vectors))
    return np.array(basis.tolist(), dtype=np.int64).reshape(n, len(vectors))


def reduce_form(basis: np.ndarray) -> np.ndarray:
    """
    Reduces a basis of a sublattice of <-1>^n: pairwise size reduction until no vector can be
    shortened by another, then unit vectors are split off orthogonally. A form that is
    isometric to a diagonal form of this kind comes out diagonal.

    Parameters
    ----------
    basis : `numpy.ndarray`
        Basis vectors as columns.

    Returns
    -------
    `numpy.ndarray`
        Reduced basis as columns, sorted by norm.
    """
    vectors = [np.array(b, dtype=np.int64) for b in np.asarray(basis, dtype=np.int64).T]
    changed = True
    while changed:
        changed = False
        vectors.sort(key=lambda v: (int(v @ v), tuple(-v)))
        for i in range(len(vectors)):
            for j in range(len(vectors)):
                if i == j:
                    continue
                a, b = vectors[i], vectors[j]
                norm_a = int(a @ a)
                factor = int(np.rint((a @ b) / norm_a))
                if factor != 0:
                    shorter = b - factor * a
                    if int(shorter @ shorter) < int(b @ b):
                        vectors[j] = shorter
                        changed = True

    for i, a in enumerate(vectors):
        if int(a @ a) == 1:
            for j in range(len(vectors)):
                if j != i:
                    vectors[j] = vectors[j] - int(a @ vectors[j]) * a

    vectors.sort(key=lambda v: (-int(v @ v), tuple(-v)))
    n = np.asarray(basis).shape[0]
    return np.array(vectors, dtype=np.int64).T.reshape(n, len(vectors))


def orthogonal_complement(e: Embedding) -> GramLattice:
    """
    Computes the orthogonal complement of the image of an embedding into <-1>^n, with the
    form of a reduced integral basis (diagonal whenever the reduction finds a diagonal
    basis).

    Parameters
    ----------
    e : :class:`~khtight.lattice.embedding.Embedding`
        Embedding.

    Returns
    -------
    :class:`~khtight.lattice.gram.GramLattice`
        Complement, its basis vectors labelled u1, u2, ...
    """
    basis = reduce_form(integer_kernel(e.vectors))
    gram = -basis.T @ basis
    complement = GramLattice(gram, [f"u{k + 1}" for k in range(basis.shape[1])])
    logger.debug("orthogonal complement: %s", complement)
    return complement


def complement_basis(e: Embedding) -> np.ndarray:
    """
    Returns the reduced basis (as columns) of the orthogonal complement.
    """
    return reduce_form(integer_kernel(e.vectors))


class Obstruction(str, Enum):
    OBSTRUCTED = "obstructed"
    NOT_OBSTRUCTED = "not_obstructed"


@dataclass(frozen=True)
class ParityResult():
    """
    Outcome of the parity obstruction.

    Attributes
    ----------
    status : :class:`~khtight.lattice.complement.Obstruction`
        OBSTRUCTED or NOT_OBSTRUCTED.
    k : `int`
        Index bound (order of the first homology of the boundary).
    odd : `tuple[int]`
        Indices of the summands <-d_i> with k^2 d_i odd.
    """
    status: Obstruction
    k: int
    odd: tuple

    @property
    def forces_d3_zero(self) -> bool:
        """
        True if a Stein filling (with vanishing first Chern class) must have b_2 = 0, hence
        d3 = 0.
        """
        return self.status == Obstruction.OBSTRUCTED

    def to_dict(self) -> dict:
        return {"status": self.status.value, "k": self.k, "odd": list(self.odd),
                "forces_d3_zero": self.forces_d3_zero}


def parity_obstruction(complement: GramLattice, h1_order: int) -> ParityResult:
    """
    Runs the parity obstruction on a diagonal complement <-d_1> + ... + <-d_m>. The second
    homology of a Stein filling with c_1 = 0 is a sublattice of the complement of index
    dividing k = h1_order, so it contains the vectors k u_i of square -k^2 d_i; c_1 is
    characteristic, so it evaluates as an odd integer on any vector of odd square -- which
    contradicts c_1 = 0 unless the filling has b_2 = 0.

    Parameters
    ----------
    complement : :class:`~khtight.lattice.gram.GramLattice`
        Diagonal complement.
    h1_order : `int`
        Index bound k.

    Returns
    -------
    :class:`~khtight.lattice.complement.ParityResult`
        Result.
    """
    if not isinstance(h1_order, int) or h1_order <= 0:
        raise ValueError("'h1_order' must be a positive integer")
    if not complement.is_diagonal():
        raise InvariantError("The parity obstruction needs a diagonal complement")

    odd = tuple(k for k, d in enumerate(complement.diagonal()) if (h1_order**2 * -d) % 2 == 1)
    status = Obstruction.OBSTRUCTED if len(odd) > 0 else Obstruction.NOT_OBSTRUCTED
    return ParityResult(status, h1_order, odd)


__all__ = ["integer_kernel", "reduce_form", "orthogonal_complement", "complement_basis",
           "Obstruction", "ParityResult", "parity_obstruction"]
