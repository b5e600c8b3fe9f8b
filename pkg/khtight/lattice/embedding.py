"""
This module contains the enumeration of embeddings of a negative definite lattice into the
standard lattice <-1>^n (x . y = -sum x_k y_k), up to the automorphisms of <-1>^n:
permutations and sign changes of the coordinates.
"""
from collections import deque
from dataclasses import dataclass
from itertools import product
from math import isqrt
from typing import Optional
import logging
import numpy as np

from .gram import GramLattice


logger = logging.getLogger(__name__)


def standard_product(x, y) -> int:
    """
    Returns the product of two vectors of <-1>^n.
    """
    return -int(np.dot(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)))


def canonical_form(vectors: np.ndarray) -> tuple:
    """
    Returns the canonical form of a set of vectors of <-1>^n under signed permutations of the
    coordinates: every coordinate column is negated if its first nonzero entry is positive,
    then the columns are sorted.

    Parameters
    ----------
    vectors : `numpy.ndarray`
        Matrix whose rows are the vectors.

    Returns
    -------
    `tuple[tuple[int]]`
        Sorted, sign-normalized columns.
    """
    vectors = np.asarray(vectors, dtype=np.int64)
    columns = []
    for column in vectors.T:
        nonzero = np.flatnonzero(column)
        if len(nonzero) > 0 and column[nonzero[0]] > 0:
            column = -column
        columns.append(tuple(int(x) for x in column))
    return tuple(sorted(columns))


@dataclass(frozen=True)
class Embedding():
    """
    Embedding of a lattice into <-1>^n.

    Attributes
    ----------
    lattice : :class:`~khtight.lattice.gram.GramLattice`
        Embedded lattice.
    vectors : `numpy.ndarray`
        Images of the basis vectors (one row per basis vector).
    """
    lattice: GramLattice
    vectors: np.ndarray

    def __post_init__(self):
        vectors = np.array(self.vectors, dtype=np.int64)
        if vectors.ndim != 2 or vectors.shape[0] != self.lattice.rank:
            raise ValueError(f"Expected {self.lattice.rank} image vectors")
        if not np.array_equal(-vectors @ vectors.T, self.lattice.gram):
            raise ValueError("The vectors do not reproduce the Gram matrix")
        vectors.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)

    @property
    def n(self) -> int:
        """
        Returns the rank of the ambient lattice.
        """
        return self.vectors.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Embedding):
            raise TypeError(f"Can not compare 'Embedding' instance to '{type(other)}' instance")

        return self.lattice == other.lattice and self.canonical() == other.canonical()

    def canonical(self) -> tuple:
        return canonical_form(self.vectors)

    def canonicalized(self) -> "Embedding":
        """
        Returns the embedding in canonical form.
        """
        return Embedding(self.lattice, np.array(self.canonical(), dtype=np.int64).T
                         .reshape(self.lattice.rank, self.n))

    def images(self) -> dict:
        """
        Returns the images as readable sums, e.g. {"v3": "e1+e2"}.
        """
        result = {}
        for label, v in zip(self.lattice.labels, self.vectors):
            terms = []
            for k, x in enumerate(v):
                if x == 0:
                    continue
                coefficient = {1: "+", -1: "-"}.get(int(x), f"{int(x):+d}")
                terms.append(f"{coefficient}e{k + 1}")
            result[label] = "".join(terms).lstrip("+") or "0"
        return result

    def to_dict(self) -> dict:
        return {"n": self.n, "labels": list(self.lattice.labels),
                "vectors": self.vectors.tolist()}


def _search_order(g: GramLattice, first: list[int]) -> list[int]:
    """
    Orders the vertices such that (after the given ones) every vertex is adjacent to an
    earlier one whenever possible.
    """
    order = list(first)
    seen = set(order)
    for start in list(first) + list(range(g.rank)):
        queue = deque([start])
        while queue:
            v = queue.popleft()
            if v not in seen:
                seen.add(v)
                order.append(v)
            for w in range(g.rank):
                if w not in seen and g.gram[v, w] != 0:
                    seen.add(w)
                    order.append(w)
                    queue.append(w)
    return order


def _candidates(norm: int, used: list[int], fresh: list[int], n: int):
    """
    Yields the vectors of square norm `norm` (entries on used coordinates arbitrary, entries on
    fresh coordinates positive, nonincreasing and on the lowest fresh coordinates).
    """
    bound = isqrt(norm)
    values = range(-bound, bound + 1)
    for head in product(values, repeat=len(used)):
        rest = norm - sum(x * x for x in head)
        if rest < 0:
            continue
        for tail in _fresh_parts(rest, bound, len(fresh)):
            v = np.zeros(n, dtype=np.int64)
            v[used] = head
            v[fresh[:len(tail)]] = tail
            yield v


def _fresh_parts(rest: int, bound: int, available: int):
    if rest == 0:
        yield ()
        return
    if available == 0:
        return
    for x in range(min(bound, isqrt(rest)), 0, -1):
        for tail in _fresh_parts(rest - x * x, x, available - 1):
            yield (x,) + tail


def enumerate_embeddings(g: GramLattice, n: int, forced: Optional[dict] = None,
                         limit: Optional[int] = None) -> list[Embedding]:
    """
    Enumerates all embeddings of a lattice into <-1>^n up to signed permutations of the
    coordinates, by backtracking over the vertices. New coordinates are only ever introduced
    as the lowest unused ones with positive entries, so every class is visited at least once;
    results are deduplicated by their canonical form.

    Parameters
    ----------
    g : :class:`~khtight.lattice.gram.GramLattice`
        Lattice.
    n : `int`
        Rank of the ambient lattice.
    forced : `dict[str, list[int]]`, optional
        Fixed images of some vertices (by label); the search extends this partial assignment
        only.

        The default is None.
    limit : `int`, optional
        Stop after this many classes.

        The default is None.

    Returns
    -------
    `list[` :class:`~khtight.lattice.embedding.Embedding` `]`
        Canonical representatives, sorted by canonical form. Empty if there is no embedding.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError("'n' must be a nonnegative integer")
    forced = dict(forced or {})
    assignment = {}
    for label, vector in forced.items():
        if label not in g.labels:
            raise ValueError(f"Unknown vertex '{label}'")
        vector = np.array(vector, dtype=np.int64)
        if vector.shape != (n,):
            raise ValueError(f"Image of '{label}' must have {n} coordinates")
        assignment[g.labels.index(label)] = vector

    def consistent(v: int, x: np.ndarray, assigned: dict) -> bool:
        if standard_product(x, x) != g.gram[v, v]:
            return False
        return all(standard_product(x, y) == g.gram[v, w] for w, y in assigned.items())

    for v, x in assignment.items():
        if not consistent(v, x, {w: y for w, y in assignment.items() if w != v}):
            logger.info("forced assignment of %s is inconsistent", g.labels[v])
            return []

    order = _search_order(g, sorted(assignment))[len(assignment):]
    found = {}

    def extend(depth: int, assigned: dict) -> bool:
        if depth == len(order):
            vectors = np.array([assigned[v] for v in range(g.rank)], dtype=np.int64)
            vectors = vectors.reshape(g.rank, n)
            key = canonical_form(vectors)
            if key not in found:
                found[key] = Embedding(g, vectors).canonicalized()
            return limit is not None and len(found) >= limit

        v = order[depth]
        support = set()
        for y in assigned.values():
            support.update(int(k) for k in np.flatnonzero(y))
        used = sorted(support)
        fresh = [k for k in range(n) if k not in support]
        for x in _candidates(-int(g.gram[v, v]), used, fresh, n):
            if consistent(v, x, assigned):
                assigned[v] = x
                if extend(depth + 1, assigned):
                    return True
                del assigned[v]
        return False

    if g.rank > 0 and any(g.gram[v, v] >= 0 for v in range(g.rank)):
        return []
    extend(0, dict(assignment))
    result = [found[key] for key in sorted(found)]
    logger.info("%d embedding class(es) into <-1>^%d", len(result), n)
    return result


__all__ = ["Embedding", "standard_product", "canonical_form", "enumerate_embeddings"]
