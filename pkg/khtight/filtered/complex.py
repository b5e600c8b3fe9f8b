"""
This module contains finitely generated bi-filtered chain complexes over the two-element
field. Every generator carries two integer levels: A (the differential never increases it)
and I (the differential never decreases it). Text format, shared with the Khovanov dumps:

    g <name> i=<I> a=<A>
    d <name> -> <name>[,<name>...]
"""
from dataclasses import dataclass
from typing import Optional, Union
import logging
import numpy as np

from ..errors import InvariantError
from ..homology_engine import cancel_pair
from ..homology_engine.gf2 import unpack
from ..khovanov import CubeComplex, parse_dump_records


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FilteredGenerator():
    """
    Generator of a bi-filtered complex.

    Attributes
    ----------
    name : `str`
        Name.
    a : `int`
        A-level (descending filtration).
    i : `int`
        I-level (ascending filtration).
    """
    name: str
    a: int
    i: int


class BiFilteredComplex():
    """
    Bi-filtered complex over the two-element field.

    Parameters
    ----------
    generators : `list[` :class:`~khtight.filtered.complex.FilteredGenerator` `]`
        Generators.
    differential : `dict[str, list[str]]`
        Targets of the differential by generator name; missing names have zero differential.
    """
    def __init__(self, generators: list[FilteredGenerator], differential: Optional[dict] = None):
        generators = tuple(generators)
        index = {}
        for k, g in enumerate(generators):
            if not isinstance(g, FilteredGenerator):
                raise TypeError("'generators' must contain instances of 'FilteredGenerator' " +
                                f"but not of '{type(g)}'")
            if g.name in index:
                raise ValueError(f"Duplicate generator '{g.name}'")
            index[g.name] = k

        packed = [0] * len(generators)
        for source, targets in (differential or {}).items():
            if source not in index:
                raise ValueError(f"Unknown generator '{source}'")
            for target in targets:
                if target not in index:
                    raise ValueError(f"Unknown generator '{target}'")
                if target == source:
                    raise ValueError(f"Generator '{source}' maps to itself")
                if generators[index[target]].i < generators[index[source]].i:
                    raise InvariantError(f"Arrow {source} -> {target} decreases the I-level")
                packed[index[source]] ^= 1 << index[target]

        self._generators = generators
        self._index = index
        self._packed = tuple(packed)

        for k, v in enumerate(packed):
            if self.apply(v) != 0:
                raise InvariantError(f"d(d({generators[k].name})) does not vanish")

    @property
    def generators(self) -> tuple[FilteredGenerator, ...]:
        """
        Returns the generators.

        Returns
        -------
        `tuple[` :class:`~khtight.filtered.complex.FilteredGenerator` `]`
            Generators.
        """
        return self._generators

    @property
    def packed_differential(self) -> tuple[int, ...]:
        """
        Returns the differential as bit vectors (bit k stands for generator k).

        Returns
        -------
        `tuple[int]`
            Image of every generator.
        """
        return self._packed

    def __len__(self) -> int:
        return len(self._generators)

    def __str__(self) -> str:
        arrows = sum(bin(v).count("1") for v in self._packed)
        return f"bi-filtered complex: {len(self)} generators, {arrows} arrows"

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiFilteredComplex):
            raise TypeError("Can not compare 'BiFilteredComplex' instance to " +
                            f"'{type(other)}' instance")

        return self._generators == other.generators and self._packed == other.packed_differential

    def index(self, name: str) -> int:
        return self._index[name]

    def targets(self, name: str) -> list[str]:
        """
        Returns the names of the terms of d(name).
        """
        return [self._generators[t].name for t in unpack(self._packed[self._index[name]])]

    def differential(self) -> dict:
        return {g.name: self.targets(g.name) for g in self._generators
                if self._packed[self._index[g.name]] != 0}

    def apply(self, v: int) -> int:
        """
        Applies the differential to a packed chain.
        """
        result = 0
        for k in unpack(v):
            result ^= self._packed[k]
        return result

    def names(self, v: int) -> tuple[str, ...]:
        """
        Returns the generator names of a packed chain.
        """
        return tuple(self._generators[k].name for k in unpack(v))

    def respects_a(self) -> bool:
        """
        Checks that the differential does not increase the A-level.
        """
        return all(self._generators[t].a <= g.a
                   for g, v in zip(self._generators, self._packed) for t in unpack(v))

    def to_text(self) -> str:
        lines = [f"g {g.name} i={g.i} a={g.a}" for g in self._generators]
        for source, targets in self.differential().items():
            lines.append(f"d {source} -> " + ",".join(targets))
        return "\n".join(lines) + "\n"


def parse_bifiltered(text: str) -> BiFilteredComplex:
    """
    Parses a bi-filtered complex from its text format. Every generator record needs the
    fields `i` and `a`; further fields (e.g. the quantum grading of Khovanov dumps) are
    ignored, so a Khovanov dump reads as the complex filtered by (skein, homological) level.

    Parameters
    ----------
    text : `str`
        Records.

    Returns
    -------
    :class:`~khtight.filtered.complex.BiFilteredComplex`
        Validated complex.
    """
    records, arrows = parse_dump_records(text)
    generators = []
    for name, fields in records.items():
        if "i" not in fields or "a" not in fields:
            raise ValueError(f"Generator '{name}' needs the fields 'i' and 'a'")
        generators.append(FilteredGenerator(name, fields["a"], fields["i"]))

    differential = {}
    for source, targets in arrows.items():
        # repeated targets cancel in characteristic two
        current = differential.setdefault(source, set())
        for target in targets:
            current ^= {target}
    return BiFilteredComplex(generators, {k: sorted(v) for k, v in differential.items()})


def from_cube_complex(c: CubeComplex) -> BiFilteredComplex:
    """
    Converts a Khovanov complex into the bi-filtered complex with A = skein level and
    I = homological grading.
    """
    generators = [FilteredGenerator(str(k), g.a, g.i) for k, g in enumerate(c.generators)]
    differential = {str(k): [str(t) for t in targets]
                    for k, targets in enumerate(c.differential) if len(targets) > 0}
    return BiFilteredComplex(generators, differential)


def cancel_reduce(c: BiFilteredComplex) -> BiFilteredComplex:
    """
    Reduces a bi-filtered complex by cancelling every arrow between generators of equal
    (A, I) bigrading. In the result no arrow preserves both levels; homology and the pages of
    both spectral sequences are unchanged.

    Parameters
    ----------
    c : :class:`~khtight.filtered.complex.BiFilteredComplex`
        Complex.

    Returns
    -------
    :class:`~khtight.filtered.complex.BiFilteredComplex`
        Reduced complex.
    """
    gens = c.generators
    succ = {k: set(unpack(v)) for k, v in enumerate(c.packed_differential)}
    pred = {k: set() for k in range(len(gens))}
    for k, targets in succ.items():
        for t in targets:
            pred[t].add(k)

    order = sorted(range(len(gens)), key=lambda k: (gens[k].i, -gens[k].a, k))
    cancelled = 0
    changed = True
    while changed:
        changed = False
        for x in order:
            if x not in succ:
                continue
            candidates = [y for y in succ[x] if (gens[y].a, gens[y].i) == (gens[x].a, gens[x].i)]
            if len(candidates) == 0:
                continue
            cancel_pair(succ, pred, x, min(candidates))
            cancelled += 1
            changed = True

    survivors = sorted(succ)
    reduced = BiFilteredComplex([gens[k] for k in survivors],
                                {gens[k].name: [gens[t].name for t in sorted(succ[k])]
                                 for k in survivors})
    logger.debug("cancellation: %d -> %d generators (%d pairs)", len(gens), len(reduced),
                 cancelled)
    return reduced


def _filtered_above(h: FilteredGenerator, g: FilteredGenerator) -> bool:
    return h.i >= g.i and h.a <= g.a


def random_bifiltered(rng: Union[int, np.random.Generator], size: int,
                      levels: int = 3) -> BiFilteredComplex:
    """
    Generates a random bi-filtered complex: a direct sum of two-generator acyclic pieces and
    single generators, conjugated by random filtered changes of basis g -> g + h. Basis
    changes that would create an arrow from a generator to itself are rejected.

    Parameters
    ----------
    rng : `int` or `numpy.random.Generator`
        Seed or random generator.
    size : `int`
        Number of generators.
    levels : `int`, optional
        Number of distinct values of each level.

        The default is 3.

    Returns
    -------
    :class:`~khtight.filtered.complex.BiFilteredComplex`
        Random complex.
    """
    if not isinstance(size, int) or size < 0:
        raise ValueError("'size' must be a nonnegative integer")
    rng = np.random.default_rng(rng)
    gens = [FilteredGenerator(f"g{k}", int(rng.integers(0, levels)), int(rng.integers(0, levels)))
            for k in range(size)]

    packed = [0] * size
    unpaired = [int(k) for k in rng.permutation(size)]
    while len(unpaired) > 1:
        x = unpaired.pop()
        partners = [y for y in unpaired if _filtered_above(gens[y], gens[x])]
        if len(partners) > 0 and rng.random() < 0.7:
            y = partners[int(rng.integers(0, len(partners)))]
            unpaired.remove(y)
            packed[x] = 1 << y

    for _ in range(2 * size):
        g, h = (int(k) for k in rng.integers(0, max(size, 1), size=2))
        if g == h or not _filtered_above(gens[h], gens[g]):
            continue

        def change(v: int) -> int:
            return v ^ (1 << h) if (v >> g) & 1 else v

        candidate = [change(packed[x]) for x in range(size)]
        candidate[g] = change(packed[g] ^ packed[h])
        if all(not (v >> x) & 1 for x, v in enumerate(candidate)):
            packed = candidate

    differential = {gens[k].name: [gens[t].name for t in unpack(v)]
                    for k, v in enumerate(packed) if v != 0}
    return BiFilteredComplex(gens, differential)


__all__ = ["FilteredGenerator", "BiFilteredComplex", "parse_bifiltered", "from_cube_complex",
           "cancel_reduce", "random_bifiltered"]
