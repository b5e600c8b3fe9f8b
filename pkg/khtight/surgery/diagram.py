"""
This module contains contact (+1)/(-1)-surgery diagrams on Legendrian unknots and the
surgery presentation of the branched double cover of a transverse braid closure.

The double cover of the four-ball branched along the b disks and the bands of a braid on b
strands is a handlebody with b - 1 one-handles and one two-handle per letter: the letter
sigma_i runs once over the one-handle i. Every positive (negative) letter is a contact
(-1)-surgery (resp. (+1)-surgery) on a Legendrian unknot with tb = -1 and rot = 0.

The relative presentation rewrites a word of odd index against the monodromy
sigma_{b-1} ... sigma_1 of the standard open book of the three-sphere instead and uses the
remaining letters only, without one-handles.
"""
from dataclasses import dataclass
from typing import Optional
import logging
import warnings
import numpy as np

from ..braid_link import BraidWord


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SurgeryComponent():
    """
    Component of a contact surgery diagram.

    Attributes
    ----------
    tb : `int`
        Thurston--Bennequin number.
    rot : `int`
        Rotation number.
    coeff : `int`
        Contact surgery coefficient, +1 or -1.
    """
    tb: int
    rot: int
    coeff: int

    def __post_init__(self):
        for name in ("tb", "rot", "coeff"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
                raise TypeError(f"'{name}' must be an instance of 'int' " +
                                f"but not of '{type(value)}'")
        if self.coeff not in (1, -1):
            raise ValueError(f"Contact surgery coefficient must be +1 or -1 but not {self.coeff}")
        if (self.tb + self.rot) % 2 == 0:
            raise ValueError("tb + rot of a Legendrian knot must be odd")

    @property
    def framing(self) -> int:
        """
        Returns the topological surgery coefficient tb + coeff.
        """
        return self.tb + self.coeff

    def to_dict(self) -> dict:
        return {"tb": int(self.tb), "rot": int(self.rot), "coeff": int(self.coeff)}


class SurgeryDiagram():
    """
    Contact surgery diagram: Legendrian components with their pairwise linking numbers,
    optionally attached over one-handles.

    Parameters
    ----------
    components : `list[` :class:`~khtight.surgery.diagram.SurgeryComponent` `]`
        Components.
    linking : `numpy.ndarray`
        Symmetric integer linking matrix; off-diagonal entries are linking numbers, diagonal
        entries the topological framings tb + coeff.
    letters : `tuple[int]`, optional
        Braid letters the components were lifted from, if generated from a braid.

        The default is None.
    handles : `numpy.ndarray`, optional
        Integer matrix with one row per one-handle and one column per component: the
        algebraic number of times the component runs over the one-handle.
        If None, the diagram has no one-handles.

        The default is None.
    """
    def __init__(self, components: list[SurgeryComponent], linking: np.ndarray,
                 letters: Optional[tuple] = None, handles: Optional[np.ndarray] = None):
        components = tuple(components)
        for component in components:
            if not isinstance(component, SurgeryComponent):
                raise TypeError("'components' must contain instances of 'SurgeryComponent' " +
                                f"but not of '{type(component)}'")
        linking = np.array(linking, dtype=np.int64).reshape(len(components), len(components))
        if not np.array_equal(linking, linking.T):
            raise ValueError("Linking matrix is not symmetric")
        for k, component in enumerate(components):
            if linking[k, k] != component.framing:
                raise ValueError(f"Diagonal entry {linking[k, k]} of component {k} does not " +
                                 f"match tb + coeff = {component.framing}")
        if letters is not None and len(letters) != len(components):
            raise ValueError("One braid letter per component expected")
        if handles is None:
            handles = np.zeros((0, len(components)), dtype=np.int64)
        handles = np.array(handles, dtype=np.int64)
        if handles.ndim != 2 and handles.size == 0:
            handles = np.zeros((0, len(components)), dtype=np.int64)
        if handles.ndim != 2 or handles.shape[1] != len(components):
            raise ValueError(f"'handles' must have {len(components)} columns but has shape " +
                             f"{handles.shape}")

        self._components = components
        self._linking = linking
        self._linking.setflags(write=False)
        self._letters = None if letters is None else tuple(int(x) for x in letters)
        self._handles = handles
        self._handles.setflags(write=False)

    @property
    def components(self) -> tuple[SurgeryComponent, ...]:
        """
        Returns the components.

        Returns
        -------
        `tuple[` :class:`~khtight.surgery.diagram.SurgeryComponent` `]`
            Components.
        """
        return self._components

    @property
    def linking(self) -> np.ndarray:
        """
        Returns the linking matrix (read-only).

        Returns
        -------
        `numpy.ndarray`
            Linking matrix.
        """
        return self._linking

    @property
    def letters(self) -> Optional[tuple[int, ...]]:
        """
        Returns the braid letters the components were lifted from, if any.

        Returns
        -------
        `tuple[int]`
            Letters.
        """
        return self._letters

    @property
    def handles(self) -> np.ndarray:
        """
        Returns the one-handle incidence matrix (read-only), one row per one-handle.

        Returns
        -------
        `numpy.ndarray`
            Incidence matrix.
        """
        return self._handles

    @property
    def rotation_vector(self) -> list[int]:
        return [c.rot for c in self._components]

    @property
    def m(self) -> int:
        """
        Returns the number of contact (+1)-surgeries.
        """
        return sum(1 for c in self._components if c.coeff == 1)

    def __len__(self) -> int:
        return len(self._components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SurgeryDiagram):
            raise TypeError("Can not compare 'SurgeryDiagram' instance to " +
                            f"'{type(other)}' instance")

        return self._components == other.components and \
            np.array_equal(self._linking, other.linking) and \
            np.array_equal(self._handles, other.handles)

    def __str__(self) -> str:
        text = f"surgery diagram: {len(self)} components, m = {self.m}"
        if self._handles.shape[0] > 0:
            text += f", {self._handles.shape[0]} one-handles"
        return text

    def permuted(self, order: list[int]) -> "SurgeryDiagram":
        """
        Returns the diagram with its components reordered.
        """
        order = list(order)
        if sorted(order) != list(range(len(self))):
            raise ValueError("'order' must be a permutation of the components")
        letters = None if self._letters is None else [self._letters[k] for k in order]
        return SurgeryDiagram([self._components[k] for k in order],
                              self._linking[np.ix_(order, order)], letters,
                              self._handles[:, order])

    def reversed_component(self, index: int) -> "SurgeryDiagram":
        """
        Returns the diagram with the orientation of one component reversed: its rotation
        number, its linking numbers and its one-handle incidences change sign.
        """
        flip = np.ones(len(self), dtype=np.int64)
        flip[index] = -1
        c = self._components[index]
        components = list(self._components)
        components[index] = SurgeryComponent(c.tb, -c.rot, c.coeff)
        return SurgeryDiagram(components, self._linking * np.outer(flip, flip), self._letters,
                              self._handles * flip)

    def to_dict(self) -> dict:
        data = {"components": [c.to_dict() for c in self._components],
                "linking": self._linking.tolist()}
        if self._letters is not None:
            data["letters"] = list(self._letters)
        if self._handles.shape[0] > 0:
            data["handles"] = self._handles.tolist()
        return data

    @staticmethod
    def from_dict(data: dict) -> "SurgeryDiagram":
        """
        Creates a diagram from its JSON form
        `{"components": [{"tb": .., "rot": .., "coeff": ..}], "linking": [[..]]}` with optional
        "letters" and "handles" entries.
        """
        components = [SurgeryComponent(int(c["tb"]), int(c["rot"]), int(c["coeff"]))
                      for c in data["components"]]
        linking = data.get("linking", [])
        if len(components) == 0:
            linking = np.zeros((0, 0), dtype=np.int64)
        return SurgeryDiagram(components, linking, data.get("letters"), data.get("handles"))


def free_reduce(letters: list[int]) -> list[int]:
    """
    Cancels adjacent pairs sigma_i sigma_i^{-1}.
    """
    result = []
    for letter in letters:
        if len(result) > 0 and result[-1] == -letter:
            result.pop()
        else:
            result.append(letter)
    return result


def lift_word(w: BraidWord) -> tuple[int, ...]:
    """
    Rewrites a braid word of odd index b relative to the monodromy sigma_{b-1} ... sigma_1 of
    the standard open book: the inverse prefix sigma_1^{-1} ... sigma_{b-1}^{-1} is prepended
    to every cyclic rotation of the word and the shortest freely reduced result is returned
    (ties go to the smallest rotation).

    Parameters
    ----------
    w : :class:`~khtight.braid_link.braid_word.BraidWord`
        Braid word of odd index.

    Returns
    -------
    `tuple[int]`
        Letters of the monodromy factorization.
    """
    if w.strands % 2 == 0:
        raise ValueError("The braid index must be odd")
    prefix = [-k for k in range(1, w.strands)]
    best = None
    for shift in range(max(1, len(w))):
        candidate = free_reduce(prefix + list(w.rotate(shift).letters))
        if best is None or len(candidate) < len(best):
            best = candidate
    return tuple(best)


def linking_number(letters: tuple[int, ...], p: int, q: int) -> int:
    """
    Returns the linking number of the lifts of the letters at positions p < q: copies of the
    same chain curve link -1, copies of adjacent chain curves link 1 if the lower index
    occurs later in the word and 0 otherwise, all others are unlinked.
    """
    a, b = abs(letters[p]), abs(letters[q])
    if a == b:
        return -1
    if a == b + 1:
        return 1
    return 0


def braid_to_surgery(w: BraidWord, stabilize: bool = True,
                     relative: bool = False) -> SurgeryDiagram:
    """
    Builds a contact surgery diagram of the branched double cover of a transverse braid
    closure: one Legendrian unknot (tb = -1, rot = 0) per letter, with contact coefficient
    -1 for positive and +1 for negative letters, attached over b - 1 one-handles.

    Parameters
    ----------
    w : :class:`~khtight.braid_link.braid_word.BraidWord`
        Braid word.
    stabilize : `bool`, optional
        Only used by the relative presentation. If True, a word of even index is positively
        stabilized first, which does not change the transverse link. If False, even indices
        are rejected.

        The default is True.
    relative : `bool`, optional
        If True, the letters of the monodromy factorization (see
        :func:`~khtight.surgery.diagram.lift_word`) are used instead and the diagram has no
        one-handles.

        The default is False.

    Returns
    -------
    :class:`~khtight.surgery.diagram.SurgeryDiagram`
        Surgery diagram.
    """
    if relative:
        if w.strands % 2 == 0:
            if not stabilize:
                raise ValueError(f"Braid index {w.strands} is even; stabilize the word first")
            warnings.warn(f"Braid index {w.strands} is even: the word is stabilized to " +
                          f"{w.strands + 1} strands")
            w = w.stabilize()
        letters = lift_word(w)
    else:
        letters = tuple(w.letters)

    n = len(letters)
    components = [SurgeryComponent(-1, 0, -1 if letter > 0 else 1) for letter in letters]
    linking = np.zeros((n, n), dtype=np.int64)
    for p in range(n):
        linking[p, p] = components[p].framing
        for q in range(p + 1, n):
            linking[p, q] = linking[q, p] = linking_number(letters, p, q)

    handles = None
    if not relative:
        handles = np.zeros((w.strands - 1, n), dtype=np.int64)
        for p, letter in enumerate(letters):
            handles[abs(letter) - 1, p] = 1

    s = SurgeryDiagram(components, linking, letters, handles)
    logger.debug("%s lifts to %s", w.to_text(), s)
    return s


__all__ = ["SurgeryComponent", "SurgeryDiagram", "free_reduce", "lift_word", "linking_number",
           "braid_to_surgery"]
