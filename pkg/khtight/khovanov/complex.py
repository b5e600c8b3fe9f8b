"""
This module contains the Khovanov and Bar-Natan--Turner chain complexes over the two-element
field, built from the cube of resolutions of a diagram.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional
import logging

from ..braid_link import LinkDiagram
from ..config import EngineLimits, resolve_limits
from ..errors import InvariantError, ResourceLimitError
from .cube import CubeVertex, build_cube


logger = logging.getLogger(__name__)

PLUS = 1
MINUS = 0


class Flavor(str, Enum):
    """
    Differential of a cube complex.
    """
    KHOVANOV_F2 = "khovanov_f2"
    BAR_NATAN_F2 = "bar_natan_f2"


class Reduction(str, Enum):
    """
    Reduced (marked circle labelled v-) or unreduced complex.
    """
    UNREDUCED = "unreduced"
    REDUCED = "reduced"


@dataclass(frozen=True)
class ChainGenerator():
    """
    A labelled resolution.

    Attributes
    ----------
    state : `int`
        State of the cube vertex.
    weight : `int`
        Number of 1-smoothings of the state.
    labels : `int`
        Bit k is the label of circle k (1 = v+, 0 = v-).
    i : `int`
        Homological grading.
    q : `int`
        Quantum grading.
    a : `int`
        Skein (annular) level: axis-linking circles labelled v+ minus those labelled v-.
    """
    state: int
    weight: int
    labels: int
    i: int
    q: int
    a: int


def _frobenius_merge(flavor: Flavor, x: int, y: int) -> Optional[int]:
    if x == PLUS and y == PLUS:
        return PLUS
    if x != y:
        return MINUS
    return MINUS if flavor == Flavor.BAR_NATAN_F2 else None


def _frobenius_split(flavor: Flavor, x: int) -> list[tuple[int, int]]:
    if x == MINUS:
        return [(MINUS, MINUS)]
    result = [(PLUS, MINUS), (MINUS, PLUS)]
    if flavor == Flavor.BAR_NATAN_F2:
        result.append((PLUS, PLUS))
    return result


def _gradings(vertex: CubeVertex, labels: int, n_plus: int, n_minus: int,
              reduced: bool) -> tuple[int, int, int]:
    plus = bin(labels).count("1")
    minus = vertex.n_circles - plus
    i = vertex.weight - n_minus
    q = plus - minus + vertex.weight + n_plus - 2 * n_minus + (1 if reduced else 0)
    a = 0
    for k, linking in enumerate(vertex.axis_linking):
        if linking:
            a += 1 if (labels >> k) & 1 else -1
    return i, q, a


class CubeComplex():
    """
    Bigraded chain complex over the two-element field spanned by labelled resolutions.
    Generators are sorted by (i, q, state, labels), hence every (i, q) block is contiguous.

    Parameters
    ----------
    diagram : :class:`~khtight.braid_link.diagram.LinkDiagram`
        Underlying diagram.
    flavor : :class:`~khtight.khovanov.complex.Flavor`
        Differential.
    reduction : :class:`~khtight.khovanov.complex.Reduction`
        Reduced or unreduced.
    generators : `list[` :class:`~khtight.khovanov.complex.ChainGenerator` `]`
        Generators.
    differential : `list[tuple[int]]`
        Sorted target ids of every generator.
    vertices : `list[` :class:`~khtight.khovanov.cube.CubeVertex` `]`, optional
        Cube vertices (indexed by state) the generators live on.

        The default is None.
    """
    def __init__(self, diagram: LinkDiagram, flavor: Flavor, reduction: Reduction,
                 generators: list, differential: list, vertices: Optional[list] = None):
        if len(generators) != len(differential):
            raise ValueError("'generators' and 'differential' must have the same length")

        self._diagram = diagram
        self._flavor = Flavor(flavor)
        self._reduction = Reduction(reduction)
        self._generators = tuple(generators)
        self._differential = tuple(tuple(targets) for targets in differential)
        self._vertices = None if vertices is None else tuple(vertices)
        self._index = {(g.state, g.labels): k for k, g in enumerate(self._generators)}
        self._blocks = {}
        for k, g in enumerate(self._generators):
            self._blocks.setdefault((g.i, g.q), []).append(k)

    @property
    def diagram(self) -> LinkDiagram:
        return self._diagram

    @property
    def flavor(self) -> Flavor:
        return self._flavor

    @property
    def reduction(self) -> Reduction:
        return self._reduction

    @property
    def is_reduced(self) -> bool:
        return self._reduction == Reduction.REDUCED

    @property
    def generators(self) -> tuple[ChainGenerator, ...]:
        """
        Returns the generators.

        Returns
        -------
        `tuple[` :class:`~khtight.khovanov.complex.ChainGenerator` `]`
            Generators.
        """
        return self._generators

    @property
    def differential(self) -> tuple[tuple[int, ...], ...]:
        """
        Returns the differential as sorted target ids per generator.

        Returns
        -------
        `tuple[tuple[int]]`
            Differential.
        """
        return self._differential

    @property
    def vertices(self) -> Optional[tuple[CubeVertex, ...]]:
        return self._vertices

    def __len__(self) -> int:
        return len(self._generators)

    def __str__(self) -> str:
        return f"flavor: {self._flavor.value} reduction: {self._reduction.value} " + \
            f"generators: {len(self._generators)} crossings: {self._diagram.n_crossings}"

    def generator_id(self, state: int, labels: int) -> Optional[int]:
        """
        Returns the id of the generator with the given state and labels, None if there is
        no such generator.
        """
        return self._index.get((state, labels))

    def block(self, i: int, q: int) -> list[int]:
        """
        Returns the ids of all generators in bigrading (i, q).
        """
        return list(self._blocks.get((i, q), []))

    def bigradings(self) -> list[tuple[int, int]]:
        return sorted(self._blocks)

    def degree(self, i: int) -> list[int]:
        """
        Returns the ids of all generators in homological degree i, sorted by quantum grading.
        """
        result = []
        for (ii, _), ids in sorted(self._blocks.items()):
            if ii == i:
                result.extend(ids)
        return result

    def homological_degrees(self) -> list[int]:
        return sorted({i for i, _ in self._blocks})

    def apply(self, chain: Iterable[int]) -> frozenset:
        """
        Applies the differential to a chain (a set of generator ids).

        Parameters
        ----------
        chain : `Iterable[int]`
            Generator ids.

        Returns
        -------
        `frozenset[int]`
            Generator ids of the boundary.
        """
        result = set()
        for g in chain:
            result.symmetric_difference_update(self._differential[g])
        return frozenset(result)

    def check_d_squared(self) -> None:
        """
        Raises an :class:`~khtight.errors.InvariantError` if d∘d is not zero.
        """
        for g, targets in enumerate(self._differential):
            if len(self.apply(targets)) != 0:
                raise InvariantError(f"d∘d does not vanish on generator {g}")

    def check_filtration(self) -> None:
        """
        Raises an :class:`~khtight.errors.InvariantError` if the differential does not raise
        i by one, or (Khovanov flavor) changes q, or (Bar-Natan flavor) lowers q.
        """
        for g, targets in enumerate(self._differential):
            source = self._generators[g]
            for t in targets:
                target = self._generators[t]
                if target.i != source.i + 1:
                    raise InvariantError(f"Differential of generator {g} does not raise i by one")
                if self._flavor == Flavor.KHOVANOV_F2 and target.q != source.q:
                    raise InvariantError(f"Differential of generator {g} is not q-homogeneous")
                if target.q < source.q:
                    raise InvariantError(f"Differential of generator {g} lowers q")


def estimate_generators(vertices: list, reduced: bool) -> int:
    """
    Returns the number of generators a complex on these cube vertices would have.
    """
    return sum(1 << (v.n_circles - (1 if reduced else 0)) for v in vertices)


def _edge_maps(d: LinkDiagram, source: CubeVertex, target: CubeVertex, crossing: int):
    """
    Compares two adjacent resolutions: returns the circle map of the untouched circles and
    the touched circles on either side.
    """
    touched_edges = d.pd[crossing]
    src = source.resolution.circle_of_edge
    tgt = target.resolution.circle_of_edge
    touched_src = sorted({src[e] for e in touched_edges})
    touched_tgt = sorted({tgt[e] for e in touched_edges})
    rep_edge = {}
    for e, k in enumerate(src):
        rep_edge.setdefault(k, e)
    moves = [(k, tgt[e]) for k, e in rep_edge.items() if k not in touched_src]
    return moves, touched_src, touched_tgt


def build_complex(d: LinkDiagram, flavor: Flavor = Flavor.KHOVANOV_F2,
                  reduction: Reduction = Reduction.REDUCED,
                  limits: Optional[EngineLimits] = None) -> CubeComplex:
    """
    Builds the Khovanov or Bar-Natan--Turner complex of a diagram over the two-element field.
    The reduced complex is the subcomplex in which the marked circle is labelled v-,
    with quantum gradings shifted by +1.

    Parameters
    ----------
    d : :class:`~khtight.braid_link.diagram.LinkDiagram`
        Diagram.
    flavor : :class:`~khtight.khovanov.complex.Flavor`, optional
        Differential.

        The default is Flavor.KHOVANOV_F2.
    reduction : :class:`~khtight.khovanov.complex.Reduction`, optional
        Reduced or unreduced complex.

        The default is Reduction.REDUCED.
    limits : :class:`~khtight.config.EngineLimits`, optional
        Resource limits. If None, the limits are read from the environment.

        The default is None.

    Returns
    -------
    :class:`~khtight.khovanov.complex.CubeComplex`
        Chain complex.
    """
    flavor = Flavor(flavor)
    reduction = Reduction(reduction)
    limits = resolve_limits(limits)
    reduced = reduction == Reduction.REDUCED

    vertices = build_cube(d, limits)
    n_generators = estimate_generators(vertices, reduced)
    if n_generators > limits.generator_budget:
        raise ResourceLimitError(f"Complex would have {n_generators} generators, exceeding " +
                                 f"the budget of {limits.generator_budget}")

    n_plus, n_minus = d.n_positive, d.n_negative
    raw = []
    for v in vertices:
        marked_bit = 1 << v.marked_circle
        for labels in range(1 << v.n_circles):
            if reduced and labels & marked_bit:
                continue
            i, q, a = _gradings(v, labels, n_plus, n_minus, reduced)
            raw.append(ChainGenerator(v.state, v.weight, labels, i, q, a))
    raw.sort(key=lambda g: (g.i, g.q, g.state, g.labels))
    index = {(g.state, g.labels): k for k, g in enumerate(raw)}

    by_state = {}
    for k, g in enumerate(raw):
        by_state.setdefault(g.state, []).append(k)

    differential = [set() for _ in raw]
    for v in vertices:
        for crossing in range(d.n_crossings):
            if (v.state >> crossing) & 1:
                continue
            w = vertices[v.state | (1 << crossing)]
            moves, touched_src, touched_tgt = _edge_maps(d, v, w, crossing)
            for k in by_state.get(v.state, []):
                labels = raw[k].labels
                base = 0
                for src_circle, tgt_circle in moves:
                    if (labels >> src_circle) & 1:
                        base |= 1 << tgt_circle
                if len(touched_src) == 2:
                    x, y = ((labels >> c) & 1 for c in touched_src)
                    merged = _frobenius_merge(flavor, x, y)
                    outputs = [] if merged is None else [base | (merged << touched_tgt[0])]
                else:
                    x = (labels >> touched_src[0]) & 1
                    outputs = [base | (p << touched_tgt[0]) | (r << touched_tgt[1])
                               for p, r in _frobenius_split(flavor, x)]
                for out in outputs:
                    t = index.get((w.state, out))
                    if t is not None:
                        differential[k].symmetric_difference_update((t,))

    complex_ = CubeComplex(d, flavor, reduction, raw, [sorted(t) for t in differential],
                           vertices)
    logger.debug("built %s", complex_)
    if limits.check_d_squared:
        complex_.check_d_squared()
    return complex_


__all__ = ["Flavor", "Reduction", "ChainGenerator", "CubeComplex", "PLUS", "MINUS",
           "estimate_generators", "build_complex"]
