"""
This module contains the spectral sequences of a bi-filtered complex. For the filtration
F^p (generators of level at least p, with A counted negatively) the pages are

    E_r^p = Z_r^p / (Z_{r-1}^{p+1} + B_{r-1}^p),
    Z_r^p = F^p ∩ d^{-1}(F^{p+r}),  B_{r-1}^p = F^p ∩ d(F^{p-r+1}),

and every surviving class carries the level induced by the other filtration: the best level
among the chains representing it.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Union
import logging

from ..errors import InvariantError
from ..homology_engine import GF2Eliminator, unpack
from .complex import BiFilteredComplex


logger = logging.getLogger(__name__)


class Filtration(str, Enum):
    I = "I"
    A = "A"

    @property
    def other(self) -> "Filtration":
        return Filtration.A if self == Filtration.I else Filtration.I

    @property
    def sign(self) -> int:
        # A is descending: its stages are indexed by -A
        return 1 if self == Filtration.I else -1

    def key(self, g) -> int:
        return g.i if self == Filtration.I else -g.a


@dataclass(frozen=True)
class PageClass():
    """
    Basis element of a page (or of homology).

    Attributes
    ----------
    degree : `int`
        Level of the spectral sequence's filtration (an I- resp. A-value).
    level : `int`
        Induced level under the other filtration.
    representative : `tuple[str]`
        Generator names of a representing chain.
    """
    degree: int
    level: int
    representative: tuple

    def to_dict(self) -> dict:
        return {"degree": self.degree, "level": self.level,
                "representative": list(self.representative)}


@dataclass(frozen=True)
class SpectralPage():
    """
    Page E_r of a spectral sequence.

    Attributes
    ----------
    r : `int`
        Page number.
    classes : `tuple[` :class:`~khtight.filtered.spectral.PageClass` `]`
        Basis of the page.
    arrows : `tuple[tuple[int, tuple[int]]]`
        Nonzero values of d_r: class index -> indices of the classes of its image.
    rank : `int`
        Rank of d_r.
    """
    r: int
    classes: tuple
    arrows: tuple
    rank: int

    @property
    def dimension(self) -> int:
        return len(self.classes)

    @property
    def dims(self) -> dict:
        """
        Returns the dimension per filtration degree.

        Returns
        -------
        `dict[int, int]`
            Dimensions.
        """
        result = {}
        for c in self.classes:
            result[c.degree] = result.get(c.degree, 0) + 1
        return result

    @property
    def bigraded_dims(self) -> dict:
        """
        Returns the dimension per (degree, induced level).

        Returns
        -------
        `dict[tuple[int, int], int]`
            Dimensions.
        """
        result = {}
        for c in self.classes:
            result[(c.degree, c.level)] = result.get((c.degree, c.level), 0) + 1
        return result

    def image(self, name: str) -> list[tuple[str, ...]]:
        """
        Returns the image under d_r of the class represented by a single generator, as a list
        of class representatives.
        """
        for k, c in enumerate(self.classes):
            if c.representative == (name,):
                targets = dict(self.arrows).get(k, ())
                return [self.classes[t].representative for t in targets]
        raise ValueError(f"No class of page {self.r} is represented by '{name}'")

    def to_dict(self) -> dict:
        return {"r": self.r, "dimension": self.dimension, "rank": self.rank,
                "classes": [c.to_dict() for c in self.classes],
                "arrows": [[source, list(targets)] for source, targets in self.arrows]}


@dataclass(frozen=True)
class FilteredHomology():
    """
    Homology of the total complex with the filtration induced by one of the filtrations.

    Attributes
    ----------
    filtration : :class:`~khtight.filtered.spectral.Filtration`
        Inducing filtration.
    classes : `tuple[` :class:`~khtight.filtered.spectral.PageClass` `]`
        Basis adapted to the filtration; the degree of a class is its level.
    """
    filtration: Filtration
    classes: tuple

    @property
    def rank(self) -> int:
        return len(self.classes)

    @property
    def levels(self) -> tuple:
        return tuple(sorted(c.level for c in self.classes))

    def to_dict(self) -> dict:
        return {"filtration": self.filtration.value, "rank": self.rank,
                "levels": list(self.levels)}


@dataclass(frozen=True)
class SpectralSequence():
    """
    Pages E_0, ..., E_{r_max} of one filtration together with the homology of the total
    complex under the other filtration.

    Attributes
    ----------
    filtration : :class:`~khtight.filtered.spectral.Filtration`
        Filtration of the spectral sequence.
    pages : `tuple[` :class:`~khtight.filtered.spectral.SpectralPage` `]`
        Pages.
    homology : :class:`~khtight.filtered.spectral.FilteredHomology`
        Homology with the filtration induced by the other filtration.
    """
    filtration: Filtration
    pages: tuple
    homology: FilteredHomology

    def __getitem__(self, r: int) -> SpectralPage:
        return self.pages[r]

    def to_dict(self) -> dict:
        return {"filtration": self.filtration.value,
                "pages": [page.to_dict() for page in self.pages],
                "homology": self.homology.to_dict()}


def _kernel(c: BiFilteredComplex, domain: list[int], cut: int) -> list[int]:
    """
    Returns a basis of the chains spanned by `domain` whose differential has no terms
    in the bit mask `cut`.
    """
    eliminator = GF2Eliminator(track=True)
    kernel = []
    for g in domain:
        independent, combo = eliminator.insert(c.packed_differential[g] & cut, 1 << g)
        if not independent:
            kernel.append(combo)
    return kernel


def _quotient(c: BiFilteredComplex, domain: list[int], cut: int, denominators: list[int],
              filtration: Filtration) -> tuple[GF2Eliminator, list[tuple[int, int]]]:
    """
    Computes a basis of (kernel / denominators) adapted to the filtration, where the kernel
    is that of :func:`_kernel`. Classes are found by sweeping the filtration from its deepest
    stage; the stage at which a class first appears is its level.
    """
    quotient = GF2Eliminator(track=True)
    for v in denominators:
        quotient.insert(v)
    classes = []
    stages = sorted({filtration.key(c.generators[g]) for g in domain}, reverse=True)
    for t in stages:
        restricted = [g for g in domain if filtration.key(c.generators[g]) >= t]
        for z in _kernel(c, restricted, cut):
            independent, _ = quotient.insert(z, 1 << len(classes))
            if independent:
                classes.append((filtration.sign * t, z))
    return quotient, classes


def _check_a_filtration(c: BiFilteredComplex) -> None:
    if not c.respects_a():
        raise InvariantError("The differential increases the A-level")


def homology_levels(c: BiFilteredComplex,
                    filtration: Union[Filtration, str] = Filtration.A) -> FilteredHomology:
    """
    Computes the homology of the total complex with its induced filtration: the level of a
    class is the minimum, over the cycles representing it, of the maximal A-level of their
    terms (resp. the maximum of the minimal I-level).

    Parameters
    ----------
    c : :class:`~khtight.filtered.complex.BiFilteredComplex`
        Complex.
    filtration : :class:`~khtight.filtered.spectral.Filtration` or `str`, optional
        Inducing filtration.

        The default is Filtration.A.

    Returns
    -------
    :class:`~khtight.filtered.spectral.FilteredHomology`
        Homology.
    """
    filtration = Filtration(filtration)
    if filtration == Filtration.A:
        _check_a_filtration(c)
    everything = (1 << len(c)) - 1
    _, classes = _quotient(c, list(range(len(c))), everything, list(c.packed_differential),
                           filtration)
    return FilteredHomology(filtration, tuple(PageClass(level, level, c.names(z))
                                              for level, z in classes))


def pages(c: BiFilteredComplex, filtration: Union[Filtration, str] = Filtration.I,
          r_max: int = 5) -> SpectralSequence:
    """
    Computes the pages E_0, ..., E_{r_max} of the spectral sequence of one filtration, with
    the levels of the surviving classes under the other filtration, and the homology of the
    total complex with the filtration induced by the other filtration.

    Parameters
    ----------
    c : :class:`~khtight.filtered.complex.BiFilteredComplex`
        Complex.
    filtration : :class:`~khtight.filtered.spectral.Filtration` or `str`, optional
        Filtration of the spectral sequence, "I" or "A".

        The default is Filtration.I.
    r_max : `int`, optional
        Last page.

        The default is 5.

    Returns
    -------
    :class:`~khtight.filtered.spectral.SpectralSequence`
        Pages and filtered homology.
    """
    filtration = Filtration(filtration)
    if not isinstance(r_max, int) or r_max < 0:
        raise ValueError("'r_max' must be a nonnegative integer")
    _check_a_filtration(c)

    keys = [filtration.key(g) for g in c.generators]
    other = filtration.other
    low, high = (min(keys), max(keys)) if len(keys) > 0 else (0, -1)

    def stage(p: int) -> list[int]:
        return [g for g, k in enumerate(keys) if k >= p]

    def cut(p: int) -> int:
        return sum(1 << g for g, k in enumerate(keys) if k < p)

    def cycles(r: int, p: int) -> list[int]:
        return _kernel(c, stage(p), cut(p + r))

    result = []
    for r in range(r_max + 1):
        quotients = {}
        for p in range(low, high + 1):
            denominators = cycles(r - 1, p + 1) + [c.apply(z) for z in cycles(r - 1, p - r + 1)]
            quotients[p] = _quotient(c, stage(p), cut(p + r), denominators, other)

        classes, position = [], {}
        for p in range(low, high + 1):
            for j, (level, z) in enumerate(quotients[p][1]):
                position[(p, j)] = len(classes)
                classes.append(PageClass(filtration.sign * p, level, c.names(z)))

        arrows = []
        image_span = GF2Eliminator()
        for p in range(low, high + 1):
            for j, (_, z) in enumerate(quotients[p][1]):
                image = c.apply(z)
                if image == 0:
                    continue
                remainder, combo = quotients[p + r][0].reduce(image)
                if remainder != 0:
                    raise InvariantError(f"The differential of a class on E_{r} leaves the " +
                                         f"filtration level {p + r}")
                if combo == 0:
                    continue
                targets = tuple(position[(p + r, t)] for t in unpack(combo))
                arrows.append((position[(p, j)], targets))
                image_span.insert(sum(1 << t for t in targets))

        result.append(SpectralPage(r, tuple(classes), tuple(arrows), image_span.rank))
        logger.debug("E_%d of the %s-filtration: dimension %d, rank of d_%d %d", r,
                     filtration.value, len(classes), r, image_span.rank)

    return SpectralSequence(filtration, tuple(result), homology_levels(c, other))


__all__ = ["Filtration", "PageClass", "SpectralPage", "FilteredHomology", "SpectralSequence",
           "homology_levels", "pages"]
