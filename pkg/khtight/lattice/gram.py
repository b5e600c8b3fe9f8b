"""
This module contains negative definite integral lattices given by their Gram matrices, and
the plumbing lattices of the two star-shaped plumbings bounded by the branched double covers
of the 10_125 and 10_141 families.
"""
from typing import Optional
import numpy as np
import sympy


class GramLattice():
    """
    Negative definite integral lattice.

    Parameters
    ----------
    gram : `numpy.ndarray`
        Symmetric integer Gram matrix.
    labels : `list[str]`, optional
        Names of the basis vectors. If None, they are named v1, v2, ...

        The default is None.
    """
    def __init__(self, gram: np.ndarray, labels: Optional[list[str]] = None):
        gram = np.array(gram, dtype=np.int64)
        if gram.size == 0:
            gram = gram.reshape(0, 0)
        if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
            raise ValueError("'gram' must be a square matrix")
        if not np.array_equal(gram, gram.T):
            raise ValueError("'gram' must be symmetric")
        if labels is None:
            labels = [f"v{k + 1}" for k in range(gram.shape[0])]
        labels = tuple(labels)
        if len(labels) != gram.shape[0]:
            raise ValueError(f"Expected {gram.shape[0]} labels but got {len(labels)}")

        # leading principal minors of a negative definite form alternate in sign
        matrix = sympy.Matrix(gram.tolist())
        for k in range(1, gram.shape[0] + 1):
            if (-1)**k * matrix[:k, :k].det() <= 0:
                raise ValueError("'gram' is not negative definite")

        self._gram = gram
        self._gram.setflags(write=False)
        self._labels = labels

    @property
    def gram(self) -> np.ndarray:
        """
        Returns the Gram matrix (read-only).

        Returns
        -------
        `numpy.ndarray`
            Gram matrix.
        """
        return self._gram

    @property
    def labels(self) -> tuple[str, ...]:
        """
        Returns the names of the basis vectors.

        Returns
        -------
        `tuple[str]`
            Labels.
        """
        return self._labels

    @property
    def rank(self) -> int:
        return self._gram.shape[0]

    def __len__(self) -> int:
        return self.rank

    def __eq__(self, other) -> bool:
        if not isinstance(other, GramLattice):
            raise TypeError(f"Can not compare 'GramLattice' instance to '{type(other)}' instance")

        return np.array_equal(self._gram, other.gram)

    def __str__(self) -> str:
        if self.is_diagonal():
            return " + ".join(f"<{int(d)}>" for d in np.diag(self._gram)) or "<>"
        return f"lattice of rank {self.rank}"

    def determinant(self) -> int:
        """
        Returns the exact determinant of the Gram matrix (1 for the zero lattice).
        """
        if self.rank == 0:
            return 1
        return int(sympy.Matrix(self._gram.tolist()).det())

    def is_diagonal(self) -> bool:
        return np.array_equal(self._gram, np.diag(np.diag(self._gram)))

    def diagonal(self) -> tuple[int, ...]:
        """
        Returns the diagonal entries -- the form is <d_1> + ... + <d_m> if it is diagonal.
        """
        return tuple(int(d) for d in np.diag(self._gram))

    def to_dict(self) -> dict:
        return {"gram": self._gram.tolist(), "labels": list(self._labels)}

    @staticmethod
    def from_dict(data: dict) -> "GramLattice":
        return GramLattice(np.array(data["gram"], dtype=np.int64), data.get("labels"))


def plumbing_gram(weights: list[int], edges: list[tuple[int, int]],
                  labels: Optional[list[str]] = None) -> GramLattice:
    """
    Returns the lattice of a plumbing of disk bundles over spheres: vertex weights on the
    diagonal, +1 for every edge (vertices numbered from 0).

    Parameters
    ----------
    weights : `list[int]`
        Euler numbers of the vertices.
    edges : `list[tuple[int, int]]`
        Edges of the plumbing graph.
    labels : `list[str]`, optional
        Vertex names.

        The default is None.

    Returns
    -------
    :class:`~khtight.lattice.gram.GramLattice`
        Plumbing lattice.
    """
    n = len(weights)
    gram = np.diag(np.array(weights, dtype=np.int64)).reshape(n, n)
    for a, b in edges:
        if a == b or not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"Invalid edge ({a}, {b})")
        gram[a, b] += 1
        gram[b, a] += 1
    return GramLattice(gram, labels)


# star with center v3, legs v1, v2 and v4 - v5 - v6 - v7
E125_PLUMBING = plumbing_gram([-3, -2, -2, -2, -2, -2, -2],
                              [(0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)])

# star with center v3, legs v1, v2 and v4 - ... - v8
E141_PLUMBING = plumbing_gram([-3, -3, -2, -2, -2, -2, -2, -2],
                              [(0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)])


__all__ = ["GramLattice", "plumbing_gram", "E125_PLUMBING", "E141_PLUMBING"]
