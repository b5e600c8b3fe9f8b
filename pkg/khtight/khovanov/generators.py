"""
This module contains the distinguished chains of a braid closure: the transverse element psi
and the canonical generators of Bar-Natan--Turner homology.
"""
from dataclasses import dataclass
from itertools import product
from typing import Optional

from ..braid_link import BraidWord, closure_diagram, oriented_state
from ..config import EngineLimits
from ..errors import InvariantError
from .complex import ChainGenerator, CubeComplex, Flavor, Reduction, build_complex


@dataclass(frozen=True)
class ChainVector():
    """
    A chain of a :class:`~khtight.khovanov.complex.CubeComplex` -- a set of generator ids
    (coefficients in the two-element field).

    Attributes
    ----------
    ids : `frozenset[int]`
        Generator ids.
    i : `int`, optional
        Homological grading, if the chain is homogeneous.
    q : `int`, optional
        Quantum grading of the lowest-q terms.
    """
    ids: frozenset
    i: Optional[int] = None
    q: Optional[int] = None

    def __len__(self) -> int:
        return len(self.ids)

    def lowest_q_part(self, c: CubeComplex) -> "ChainVector":
        """
        Returns the terms of lowest quantum grading.
        """
        if len(self.ids) == 0:
            return self
        q_min = min(c.generators[g].q for g in self.ids)
        return ChainVector(frozenset(g for g in self.ids if c.generators[g].q == q_min),
                           self.i, q_min)


def _check_braid_complex(c: CubeComplex, w: BraidWord) -> None:
    if c.vertices is None:
        raise InvariantError("The complex has no cube vertices (was it reduced?)")
    if c.diagram.n_crossings != len(w) or c.diagram.seam_edges != frozenset(range(w.strands)):
        raise InvariantError("The complex was not built from the closure of this braid word")


def _make_vector(c: CubeComplex, labelings: list, state: int) -> ChainVector:
    ids = set()
    for labels in labelings:
        g = c.generator_id(state, labels)
        if g is None:
            raise InvariantError(f"No generator with labels {labels:b} at state {state:b}")
        ids.symmetric_difference_update((g,))
    ids = frozenset(ids)
    if len(ids) == 0:
        return ChainVector(ids)
    gens = [c.generators[g] for g in ids]
    return ChainVector(ids, gens[0].i, min(g.q for g in gens))


def psi_chain(w: BraidWord, reduction: Reduction = Reduction.REDUCED,
              c: Optional[CubeComplex] = None,
              limits: Optional[EngineLimits] = None) -> tuple[CubeComplex, ChainVector]:
    """
    Returns the transverse element psi: the all-v- labelling of the oriented resolution of
    the braid closure. Its quantum grading is sl (unreduced) resp. sl+1 (reduced); its
    homological grading is 0.

    Parameters
    ----------
    w : :class:`~khtight.braid_link.braid_word.BraidWord`
        Braid word.
    reduction : :class:`~khtight.khovanov.complex.Reduction`, optional
        Reduced or unreduced complex.

        The default is Reduction.REDUCED.
    c : :class:`~khtight.khovanov.complex.CubeComplex`, optional
        Khovanov complex of the closure; built if None.

        The default is None.
    limits : :class:`~khtight.config.EngineLimits`, optional
        Resource limits used when building the complex.

        The default is None.

    Returns
    -------
    `tuple[` :class:`~khtight.khovanov.complex.CubeComplex` `,` :class:`ChainVector` `]`
        Complex and psi.
    """
    if c is None:
        c = build_complex(closure_diagram(w), Flavor.KHOVANOV_F2, reduction, limits)
    _check_braid_complex(c, w)
    return c, _make_vector(c, [0], oriented_state(c.diagram))


def canonical_generators(w: BraidWord, reduction: Reduction = Reduction.REDUCED,
                         c: Optional[CubeComplex] = None,
                         limits: Optional[EngineLimits] = None
                         ) -> tuple[CubeComplex, tuple[ChainVector, ...]]:
    """
    Returns the canonical cycles of the Bar-Natan--Turner complex of a braid closure.
    The circles of the oriented resolution are nested; they are labelled alternately by
    a = v- and b = v- + v+. The unreduced complex has two canonical generators (a on the
    odd resp. even positions), the reduced complex one (a on the marked, innermost circle).
    The lowest quantum part of each is psi.

    Parameters
    ----------
    w : :class:`~khtight.braid_link.braid_word.BraidWord`
        Braid word.
    reduction : :class:`~khtight.khovanov.complex.Reduction`, optional
        Reduced or unreduced complex.

        The default is Reduction.REDUCED.
    c : :class:`~khtight.khovanov.complex.CubeComplex`, optional
        Bar-Natan--Turner complex of the closure; built if None.

        The default is None.
    limits : :class:`~khtight.config.EngineLimits`, optional
        Resource limits used when building the complex.

        The default is None.

    Returns
    -------
    `tuple[` :class:`~khtight.khovanov.complex.CubeComplex` `, tuple[` :class:`ChainVector` `]]`
        Complex and canonical generators.
    """
    if c is None:
        c = build_complex(closure_diagram(w), Flavor.BAR_NATAN_F2, reduction, limits)
    _check_braid_complex(c, w)
    if c.flavor != Flavor.BAR_NATAN_F2:
        raise InvariantError("Canonical generators live in the Bar-Natan--Turner complex")

    state = oriented_state(c.diagram)
    b = w.strands
    patterns = [0] if c.is_reduced else [0, 1]
    result = []
    for parity in patterns:
        # circle k sits at position k; a = v- where (k + parity) is even
        free = [k for k in range(b) if (k + parity) % 2 == 1]
        labelings = []
        for bits in product((0, 1), repeat=len(free)):
            labels = 0
            for k, bit in zip(free, bits):
                labels |= bit << k
            labelings.append(labels)
        result.append(_make_vector(c, labelings, state))
    return c, tuple(result)


def skein_level(g: ChainGenerator) -> int:
    """
    Returns the skein (annular) level of a generator: the number of axis-linking circles
    labelled v+ minus the number labelled v-. The Khovanov differential never increases it.
    """
    return g.a


def minimal_skein_generators(c: CubeComplex) -> tuple[int, list[int]]:
    """
    Returns the minimal skein level of a complex and the ids of the generators attaining it.
    """
    if len(c) == 0:
        raise InvariantError("The complex is empty")
    level = min(g.a for g in c.generators)
    return level, [k for k, g in enumerate(c.generators) if g.a == level]


__all__ = ["ChainVector", "psi_chain", "canonical_generators", "skein_level",
           "minimal_skein_generators"]
