"""
This module contains the Goeritz form of a link diagram and the determinant and signature
derived from it (Gordon--Litherland), normalized such that the right-handed trefoil has
signature +2.
"""
from collections import deque
from dataclasses import dataclass
import numpy as np
import sympy

from ..braid_link import LinkDiagram, oriented_smoothing
from ..errors import DiagramError


@dataclass(frozen=True)
class GoeritzData():
    """
    Goeritz form of a checkerboard-colored diagram.

    Attributes
    ----------
    matrix : `numpy.ndarray`
        Symmetric integer Goeritz matrix (one white face deleted).
    correction : `int`
        Gordon--Litherland correction mu: the sum of the incidence numbers of the type-II
        crossings.
    coloring : `int`
        Checkerboard class used: 0 shades the face at corner 0 of crossing 0, 1 the other class.
    """
    matrix: np.ndarray
    correction: int
    coloring: int

    @property
    def determinant(self) -> int:
        return abs(integer_determinant(self.matrix))

    @property
    def signature(self) -> int:
        return form_signature(self.matrix) - self.correction


def integer_determinant(matrix: np.ndarray) -> int:
    """
    Returns the exact determinant of an integer matrix (1 for the empty matrix).
    """
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 1
    return int(sympy.Matrix(matrix.tolist()).det())


def form_signature(matrix: np.ndarray) -> int:
    """
    Returns the signature (positive minus negative eigenvalues) of a symmetric integer matrix.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.size == 0:
        return 0
    if not np.array_equal(matrix, matrix.T):
        raise ValueError("Matrix is not symmetric")
    eigenvalues = np.linalg.eigvalsh(matrix)
    tolerance = 1e-9 * max(1., float(np.max(np.abs(matrix))))
    return int(np.sum(eigenvalues > tolerance) - np.sum(eigenvalues < -tolerance))


def checkerboard(d: LinkDiagram) -> list[int]:
    """
    Returns a checkerboard coloring of the faces of a connected diagram: color 1 for the face
    containing corner 0 of crossing 0 and every face an even number of edges away from it.
    """
    edge_faces = {}
    for f, face in enumerate(d.faces):
        for c, j in face:
            edge_faces.setdefault(d.pd[c][(j + 1) % 4], []).append(f)

    colors = [-1] * len(d.faces)
    start = next(f for f, face in enumerate(d.faces) if (0, 0) in face)
    colors[start] = 1
    queue = deque([start])
    neighbours = [set() for _ in d.faces]
    for faces in edge_faces.values():
        if len(faces) == 2 and faces[0] != faces[1]:
            neighbours[faces[0]].add(faces[1])
            neighbours[faces[1]].add(faces[0])
    while queue:
        f = queue.popleft()
        for g in neighbours[f]:
            if colors[g] == -1:
                colors[g] = 1 - colors[f]
                queue.append(g)
            elif colors[g] == colors[f]:
                raise DiagramError("Diagram faces are not two-colorable")
    return colors


def goeritz(d: LinkDiagram, coloring: int = 0) -> GoeritzData:
    """
    Computes the Goeritz matrix of a connected diagram and the Gordon--Litherland correction.

    The white faces are the unshaded ones. A crossing has incidence +1 if its 0-smoothing joins
    the two white corners, -1 otherwise; it is of type II if its oriented smoothing joins the
    shaded corners.

    Parameters
    ----------
    d : :class:`~khtight.braid_link.diagram.LinkDiagram`
        Connected diagram.
    coloring : `int`, optional
        Checkerboard class to shade (0 or 1).

        The default is 0.

    Returns
    -------
    :class:`~khtight.classical_invariants.goeritz.GoeritzData`
        Goeritz form.
    """
    if coloring not in (0, 1):
        raise ValueError("'coloring' must be 0 or 1")
    if not d.is_connected:
        raise DiagramError("The Goeritz form requires a connected diagram")
    if d.n_crossings == 0:
        return GoeritzData(np.zeros((0, 0), dtype=np.int64), 0, coloring)

    shaded = checkerboard(d)
    if coloring == 1:
        shaded = [1 - s for s in shaded]
    face_of_corner = {}
    for f, face in enumerate(d.faces):
        for corner in face:
            face_of_corner[corner] = f
    white = [f for f in range(len(d.faces)) if shaded[f] == 0]
    position = {f: k for k, f in enumerate(white)}

    laplacian = np.zeros((len(white), len(white)), dtype=np.int64)
    correction = 0
    for c, sign in enumerate(d.signs):
        # the 0-smoothing joins corners 1 and 3, the 1-smoothing corners 0 and 2
        odd_white = shaded[face_of_corner[(c, 1)]] == 0
        eta = 1 if odd_white else -1
        j = 1 if odd_white else 0
        f, g = face_of_corner[(c, j)], face_of_corner[(c, j + 2)]
        if f != g:
            a, b = position[f], position[g]
            laplacian[a, a] += eta
            laplacian[b, b] += eta
            laplacian[a, b] -= eta
            laplacian[b, a] -= eta
        joins_odd = oriented_smoothing(sign) == 0
        if joins_odd != odd_white:
            correction += eta

    return GoeritzData(laplacian[1:, 1:], correction, coloring)


def determinant(d: LinkDiagram, coloring: int = 0) -> int:
    """
    Returns the determinant |det G| of a link from its Goeritz matrix.

    Parameters
    ----------
    d : :class:`~khtight.braid_link.diagram.LinkDiagram`
        Connected diagram.
    coloring : `int`, optional
        Checkerboard class to shade.

        The default is 0.

    Returns
    -------
    `int`
        Determinant.
    """
    return goeritz(d, coloring).determinant


def signature(d: LinkDiagram, coloring: int = 0) -> int:
    """
    Returns the signature sign(G) - mu of a link (right-handed trefoil: +2).

    Parameters
    ----------
    d : :class:`~khtight.braid_link.diagram.LinkDiagram`
        Connected diagram.
    coloring : `int`, optional
        Checkerboard class to shade.

        The default is 0.

    Returns
    -------
    `int`
        Signature.
    """
    return goeritz(d, coloring).signature


__all__ = ["GoeritzData", "integer_determinant", "form_signature", "checkerboard", "goeritz",
           "determinant", "signature"]
