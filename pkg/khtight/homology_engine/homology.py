"""
This module contains the homology of cube complexes: bigraded dimensions, boundary tests and
filtration levels of homology classes.
"""
from dataclasses import dataclass
from typing import Iterable, Optional
import logging

from ..errors import InvariantError
from ..khovanov import CubeComplex, Flavor
from .gf2 import GF2Eliminator, unpack


logger = logging.getLogger(__name__)


class HomologyTable():
    """
    Dimensions of homology by bigrading.

    Parameters
    ----------
    dims : `dict[tuple[int, int], int]`
        Dimension per bigrading (i, q); zero entries are dropped.
    """
    def __init__(self, dims: dict):
        for key, value in dims.items():
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"Dimension at {key} must be a nonnegative integer")
        self._dims = {tuple(key): value for key, value in dims.items() if value != 0}

    @property
    def dims(self) -> dict:
        """
        Returns the nonzero dimensions.

        Returns
        -------
        `dict[tuple[int, int], int]`
            Dimension per bigrading.
        """
        return dict(self._dims)

    @property
    def total_rank(self) -> int:
        """
        Returns the sum of all dimensions.

        Returns
        -------
        `int`
            Total rank.
        """
        return sum(self._dims.values())

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self._dims.get(tuple(key), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomologyTable):
            raise TypeError(f"Can not compare 'HomologyTable' instance to '{type(other)}' instance")

        return self._dims == other.dims

    def __str__(self) -> str:
        return str(dict(sorted(self._dims.items())))

    def diagonals(self) -> set:
        """
        Returns the set of diagonals q - 2i supporting the homology.
        """
        return {q - 2 * i for i, q in self._dims}

    def shift_q(self, shift: int) -> "HomologyTable":
        return HomologyTable({(i, q + shift): v for (i, q), v in self._dims.items()})

    def to_dict(self) -> dict:
        return {"dims": [[i, q, v] for (i, q), v in sorted(self._dims.items())],
                "total_rank": self.total_rank}

    @staticmethod
    def from_dict(data: dict) -> "HomologyTable":
        return HomologyTable({(i, q): v for i, q, v in data["dims"]})


def _block_rank(c: CubeComplex, source: list[int], target: list[int]) -> int:
    position = {g: k for k, g in enumerate(target)}
    eliminator = GF2Eliminator()
    for g in source:
        v = 0
        for t in c.differential[g]:
            v ^= 1 << position[t]
        eliminator.insert(v)
    return eliminator.rank


def homology(c: CubeComplex, graded: bool = True) -> HomologyTable:
    """
    Computes the homology of a complex.

    Parameters
    ----------
    c : :class:`~khtight.khovanov.complex.CubeComplex`
        Complex.
    graded : `bool`, optional
        If True, the dimensions per bigrading (i, q) are computed; this requires a
        q-homogeneous (Khovanov flavor) differential. If False, the table is indexed by
        (i, filtration level) using the induced quantum filtration.

        The default is True.

    Returns
    -------
    :class:`~khtight.homology_engine.homology.HomologyTable`
        Homology.
    """
    if not graded:
        dims = {}
        for i in c.homological_degrees():
            for level in filtered_levels(c, i).levels:
                dims[(i, level)] = dims.get((i, level), 0) + 1
        return HomologyTable(dims)

    if c.flavor != Flavor.KHOVANOV_F2:
        raise InvariantError("Graded homology requires a q-homogeneous differential; " +
                             "use graded=False for filtered flavors")

    rank_out = {}
    for i, q in c.bigradings():
        rank_out[(i, q)] = _block_rank(c, c.block(i, q), c.block(i + 1, q))
    dims = {}
    for i, q in c.bigradings():
        size = len(c.block(i, q))
        dims[(i, q)] = size - rank_out[(i, q)] - rank_out.get((i - 1, q), 0)
    table = HomologyTable(dims)
    logger.debug("homology of %s: %s", c, table)
    return table


@dataclass(frozen=True)
class BoundaryResult():
    """
    Outcome of a boundary test.

    Attributes
    ----------
    is_boundary : `bool`
        True if the chain is a boundary.
    witness : `frozenset[int]`, optional
        Generator ids of a chain y with dy equal to the tested chain.
    """
    is_boundary: bool
    witness: Optional[frozenset] = None

    def __bool__(self) -> bool:
        return self.is_boundary


def _chain_ids(v) -> frozenset:
    ids = getattr(v, "ids", v)
    return frozenset(ids)


def is_boundary(c: CubeComplex, v: Iterable[int]) -> BoundaryResult:
    """
    Decides whether a cycle is a boundary; if so, a witness y with dy = v is returned.
    For the Khovanov flavor the solve is restricted to the (i-1, q) block.

    Parameters
    ----------
    c : :class:`~khtight.khovanov.complex.CubeComplex`
        Complex.
    v : `Iterable[int]` or :class:`~khtight.khovanov.generators.ChainVector`
        Generator ids of the cycle.

    Returns
    -------
    :class:`~khtight.homology_engine.homology.BoundaryResult`
        Result.
    """
    ids = _chain_ids(v)
    if len(ids) == 0:
        return BoundaryResult(True, frozenset())
    if len(c.apply(ids)) != 0:
        raise InvariantError("The chain is not a cycle")

    degrees = {c.generators[g].i for g in ids}
    if len(degrees) != 1:
        raise InvariantError("The chain is not homogeneous in the homological grading")
    i = degrees.pop()
    if c.flavor == Flavor.KHOVANOV_F2:
        qs = {c.generators[g].q for g in ids}
        if len(qs) != 1:
            raise InvariantError("The chain is not homogeneous in the quantum grading")
        q = qs.pop()
        source, target = c.block(i - 1, q), c.block(i, q)
    else:
        source, target = c.degree(i - 1), c.degree(i)

    position = {g: k for k, g in enumerate(target)}
    eliminator = GF2Eliminator(track=True)
    for k, g in enumerate(source):
        column = 0
        for t in c.differential[g]:
            column ^= 1 << position[t]
        eliminator.insert(column, 1 << k)
    remainder, combo = eliminator.reduce(sum(1 << position[g] for g in ids))
    if remainder != 0:
        return BoundaryResult(False)
    return BoundaryResult(True, frozenset(source[k] for k in unpack(combo)))


@dataclass(frozen=True)
class FilteredLevels():
    """
    Filtration levels of the homology classes in one homological degree.

    Attributes
    ----------
    degree : `int`
        Homological degree.
    levels : `tuple[int]`
        Levels of a basis of the homology adapted to the filtration, ascending.
    """
    degree: int
    levels: tuple


class _LevelScan():
    """
    Sweeps the quantum filtration F_n (generators with q >= n) of one homological degree from
    the top down, maintaining the cycles of F_n and the span of boundaries plus those cycles.
    """
    def __init__(self, c: CubeComplex, degree: int):
        self._c = c
        self._gens = c.degree(degree)
        self._position = {g: k for k, g in enumerate(self._gens)}
        upper = c.degree(degree + 1)
        self._upper = {g: k for k, g in enumerate(upper)}
        self._kernel = GF2Eliminator(track=True)
        self._classes = GF2Eliminator()
        for g in c.degree(degree - 1):
            column = 0
            for t in c.differential[g]:
                column ^= 1 << self._position[t]
            self._classes.insert(column)
        self._n_boundaries = self._classes.rank

    def thresholds(self) -> list[int]:
        return sorted({self._c.generators[g].q for g in self._gens}, reverse=True)

    def lower_to(self, threshold: int) -> int:
        """
        Adds all generators with q >= threshold not yet added; returns the number of
        classes of H(C) represented in F_threshold.
        """
        for k, g in enumerate(self._gens):
            if self._c.generators[g].q != threshold:
                continue
            image = 0
            for t in self._c.differential[g]:
                image ^= 1 << self._upper[t]
            independent, combo = self._kernel.insert(image, 1 << k)
            if not independent:
                self._classes.insert(combo)
        return self._classes.rank - self._n_boundaries

    def represents(self, v: int) -> bool:
        return self._classes.contains(v)

    def pack(self, ids) -> int:
        return sum(1 << self._position[g] for g in ids)


def filtered_levels(c: CubeComplex, degree: int = 0) -> FilteredLevels:
    """
    Computes the filtration levels of the homology classes of one homological degree:
    the level of a class is the largest n such that the class is represented by a cycle all of
    whose terms have quantum grading at least n. Levels are read off the rank jumps of the
    maps H(F_n) -> H(C).

    Parameters
    ----------
    c : :class:`~khtight.khovanov.complex.CubeComplex`
        Complex whose differential does not decrease q.
    degree : `int`, optional
        Homological degree.

        The default is 0.

    Returns
    -------
    :class:`~khtight.homology_engine.homology.FilteredLevels`
        Levels.
    """
    scan = _LevelScan(c, degree)
    levels = []
    seen = 0
    for threshold in scan.thresholds():
        count = scan.lower_to(threshold)
        levels.extend([threshold] * (count - seen))
        seen = count
    return FilteredLevels(degree, tuple(sorted(levels)))


def class_level(c: CubeComplex, v: Iterable[int]) -> int:
    """
    Returns the filtration level of the homology class of a cycle.

    Parameters
    ----------
    c : :class:`~khtight.khovanov.complex.CubeComplex`
        Complex whose differential does not decrease q.
    v : `Iterable[int]` or :class:`~khtight.khovanov.generators.ChainVector`
        Generator ids of the cycle.

    Returns
    -------
    `int`
        Largest n such that the class has a representative in F_n.
    """
    ids = _chain_ids(v)
    if len(ids) == 0 or len(c.apply(ids)) != 0:
        raise InvariantError("The chain is not a nonzero cycle")
    degrees = {c.generators[g].i for g in ids}
    if len(degrees) != 1:
        raise InvariantError("The chain is not homogeneous in the homological grading")

    scan = _LevelScan(c, degrees.pop())
    packed = scan.pack(ids)
    if scan.represents(packed):
        raise InvariantError("The cycle is a boundary; its class is zero")
    for threshold in scan.thresholds():
        scan.lower_to(threshold)
        if scan.represents(packed):
            return threshold
    raise InvariantError("The cycle is not represented in the complex")


def ors_splitting(unreduced: HomologyTable, reduced: HomologyTable) -> bool:
    """
    Checks the splitting Kh^{i,q} = Kh_red^{i,q-1} + Kh_red^{i,q+1} of unreduced homology over
    the two-element field.
    """
    expected = {}
    for (i, q), v in reduced.dims.items():
        for shift in (-1, 1):
            expected[(i, q + shift)] = expected.get((i, q + shift), 0) + v
    return HomologyTable(expected) == unreduced


__all__ = ["HomologyTable", "BoundaryResult", "FilteredLevels", "homology", "is_boundary",
           "filtered_levels", "class_level", "ors_splitting"]
