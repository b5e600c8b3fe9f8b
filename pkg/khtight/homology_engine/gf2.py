"""
Linear algebra over the two-element field. Vectors are packed into Python integers (bit k is
the coefficient of basis vector k), so that row operations are single XORs.
"""
from dataclasses import dataclass
from typing import Optional
import numpy as np


@dataclass(frozen=True)
class SparseBitMatrix():
    """
    Sparse matrix over the two-element field, stored column by column.

    Attributes
    ----------
    rows : `int`
        Number of rows.
    cols : `int`
        Number of columns.
    columns : `tuple[tuple[int]]`
        Strictly increasing row indices of the nonzero entries of every column.
    """
    rows: int
    cols: int
    columns: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("Matrix dimensions must be nonnegative")
        if len(self.columns) != self.cols:
            raise ValueError(f"Expected {self.cols} columns but got {len(self.columns)}")
        for column in self.columns:
            if any(b <= a for a, b in zip(column, column[1:])):
                raise ValueError("Row indices must be strictly increasing within a column")
            if len(column) > 0 and (column[0] < 0 or column[-1] >= self.rows):
                raise ValueError("Row index out of range")

    @staticmethod
    def from_dense(matrix: np.ndarray) -> "SparseBitMatrix":
        """
        Creates a sparse matrix from a dense 0/1 matrix.

        Parameters
        ----------
        matrix : `numpy.ndarray`
            Matrix; entries are taken modulo 2.

        Returns
        -------
        :class:`~khtight.homology_engine.gf2.SparseBitMatrix`
            Sparse matrix.
        """
        matrix = np.asarray(matrix, dtype=np.int64) % 2
        if matrix.ndim != 2:
            raise ValueError("'matrix' must be two-dimensional")
        columns = tuple(tuple(int(r) for r in np.flatnonzero(matrix[:, j]))
                        for j in range(matrix.shape[1]))
        return SparseBitMatrix(matrix.shape[0], matrix.shape[1], columns)

    def to_dense(self) -> np.ndarray:
        result = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for j, column in enumerate(self.columns):
            result[list(column), j] = 1
        return result

    def bit_columns(self) -> list[int]:
        """
        Returns the columns packed into integers.
        """
        return [pack(column) for column in self.columns]


def pack(indices) -> int:
    """
    Packs a set of basis indices into an integer bit vector.
    """
    v = 0
    for k in indices:
        v ^= 1 << k
    return v


def unpack(v: int) -> list[int]:
    """
    Returns the indices of the set bits of an integer bit vector.
    """
    result = []
    while v:
        low = v & -v
        result.append(low.bit_length() - 1)
        v ^= low
    return result


class GF2Eliminator():
    """
    Incremental Gaussian elimination. Every inserted vector is reduced against the pivots
    (keyed by their lowest set bit); a nonzero remainder becomes a new pivot. Optionally tracks,
    for every pivot, the combination of inserted vectors it is made of.
    """
    def __init__(self, track: bool = False):
        self._pivots = {}
        self._track = track

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, v: int, combo: int = 0) -> tuple[int, int]:
        """
        Reduces a vector against the pivots.

        Returns
        -------
        `tuple[int, int]`
            Remainder and the combination (XOR of the tracked combinations) subtracted.
        """
        while v:
            low = v & -v
            pivot = self._pivots.get(low)
            if pivot is None:
                break
            v ^= pivot[0]
            if self._track:
                combo ^= pivot[1]
        return v, combo

    def insert(self, v: int, combo: int = 0) -> tuple[bool, int]:
        """
        Inserts a vector.

        Returns
        -------
        `tuple[bool, int]`
            True if the vector was independent of the pivots; otherwise the tracked combination
            whose XOR with the vector vanishes (a kernel element).
        """
        v, combo = self.reduce(v, combo)
        if v == 0:
            return False, combo
        self._pivots[v & -v] = (v, combo)
        return True, combo

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0


def rank_f2(m: SparseBitMatrix) -> int:
    """
    Returns the rank of a matrix over the two-element field.

    Parameters
    ----------
    m : :class:`~khtight.homology_engine.gf2.SparseBitMatrix`
        Matrix.

    Returns
    -------
    `int`
        Rank.
    """
    eliminator = GF2Eliminator()
    for column in m.bit_columns():
        eliminator.insert(column)
    return eliminator.rank


def rank_f2_dense(matrix: np.ndarray) -> int:
    """
    Returns the rank of a dense 0/1 matrix over the two-element field by row reduction.
    """
    work = np.array(matrix, dtype=np.uint8) % 2
    rank = 0
    n_rows, n_cols = work.shape
    for col in range(n_cols):
        candidates = np.flatnonzero(work[rank:, col])
        if len(candidates) == 0:
            continue
        pivot = rank + candidates[0]
        if pivot != rank:
            work[[rank, pivot]] = work[[pivot, rank]]
        others = np.flatnonzero(work[:, col])
        others = others[others != rank]
        work[others] ^= work[rank]
        rank += 1
        if rank == n_rows:
            break
    return rank


def solve_f2(columns: list[int], v: int) -> Optional[int]:
    """
    Solves sum_k x_k columns[k] = v.

    Returns
    -------
    `int`, optional
        Packed solution x, or None if v is not in the column span.
    """
    eliminator = GF2Eliminator(track=True)
    for k, column in enumerate(columns):
        eliminator.insert(column, 1 << k)
    remainder, combo = eliminator.reduce(v)
    return combo if remainder == 0 else None


__all__ = ["SparseBitMatrix", "GF2Eliminator", "pack", "unpack", "rank_f2", "rank_f2_dense",
           "solve_f2"]
