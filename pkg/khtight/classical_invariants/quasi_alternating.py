"""
This module contains the verification of quasi-alternating certificates: a tree obtained by
resolving a witness crossing of a braid closure in both ways, such that the determinants of
the two resolutions are nonzero and add up to the determinant of the parent, with recognized
quasi-alternating leaves.
"""
from dataclasses import dataclass, field
from typing import Callable, Optional, Union
import logging

from ..braid_link import BraidWord, LinkDiagram, closure_diagram, oriented_smoothing
from ..config import EngineLimits, resolve_limits
from ..errors import DiagramError, InvariantError
from ..homology_engine import HomologyTable, homology
from ..khovanov import Flavor, Reduction, build_complex
from .goeritz import determinant


logger = logging.getLogger(__name__)

RIGHT_TREFOIL = HomologyTable({(0, 2): 1, (2, 6): 1, (3, 8): 1})
LEFT_TREFOIL = HomologyTable({(0, -2): 1, (-2, -6): 1, (-3, -8): 1})

# Alternating leaves known by their braid words (up to cyclic rotation).
WHITELISTED_LEAVES = {
    (4, (2, 1, 1, 2, 2, 3, -2, 3)): ("5_2 knot and unknot", 14),
}


@dataclass(frozen=True)
class QANode():
    """
    Node of a quasi-alternating certificate.

    Attributes
    ----------
    label : `str`
        Braid word of the node, or a description of a smoothed diagram.
    crossings : `int`
        Number of crossings of the node's diagram.
    det : `int`
        Determinant.
    witness : `int`, optional
        Index of the resolved crossing (letter), None at leaves.
    leaf : `str`, optional
        Name of the recognized base case, None at inner nodes.
    children : `tuple[QANode]`
        The oriented resolution and the other resolution of the witness crossing.
    """
    label: str
    crossings: int
    det: int
    witness: Optional[int] = None
    leaf: Optional[str] = None
    children: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {"label": self.label, "crossings": self.crossings, "det": self.det,
                "witness": self.witness, "leaf": self.leaf,
                "children": [child.to_dict() for child in self.children]}

    @staticmethod
    def from_dict(data: dict) -> "QANode":
        return QANode(data["label"], data["crossings"], data["det"], data["witness"],
                      data["leaf"], tuple(QANode.from_dict(c) for c in data["children"]))


@dataclass(frozen=True)
class QACertificate():
    """
    Quasi-alternating certificate of a braid closure.

    Attributes
    ----------
    root : :class:`~khtight.classical_invariants.quasi_alternating.QANode`
        Root node.
    """
    root: QANode

    @property
    def depth(self) -> int:
        depth, node = 0, self.root
        while len(node.children) > 0:
            node = node.children[0]
            depth += 1
        return depth

    def nodes(self) -> list[QANode]:
        result, stack = [], [self.root]
        while stack:
            node = stack.pop()
            result.append(node)
            stack.extend(reversed(node.children))
        return result

    def leaves(self) -> list[QANode]:
        return [node for node in self.nodes() if len(node.children) == 0]

    def is_consistent(self) -> bool:
        """
        Checks determinant additivity and positivity at every node and that every leaf is
        recognized.
        """
        for node in self.nodes():
            if node.det <= 0:
                return False
            if len(node.children) == 0:
                if node.leaf is None:
                    return False
            elif node.det != sum(child.det for child in node.children):
                return False
        return True

    def to_dict(self) -> dict:
        return {"depth": self.depth, "root": self.root.to_dict()}

    @staticmethod
    def from_dict(data: dict) -> "QACertificate":
        return QACertificate(QANode.from_dict(data["root"]))


def _safe_determinant(d: LinkDiagram) -> int:
    try:
        return determinant(d)
    except DiagramError:
        # split diagrams have determinant zero
        return 0


def recognize_braid_leaf(w: BraidWord) -> Optional[tuple[str, int]]:
    """
    Recognizes quasi-alternating braid closures syntactically, up to cyclic rotation:
    the trivial 1-braid, (2, n) torus links sigma_1^n, connected sums sigma_1^a sigma_2^b of two
    of them, and whitelisted alternating leaves.

    Returns
    -------
    `tuple[str, int]`, optional
        Name and determinant of the leaf, None if the word is not recognized.
    """
    if w.strands == 1:
        return "unknot", 1
    letters = w.letters
    for shift in range(max(1, len(letters))):
        rotated = letters[shift:] + letters[:shift]
        known = WHITELISTED_LEAVES.get((w.strands, rotated))
        if known is not None:
            return known
        if len(rotated) == 0:
            continue
        if w.strands == 2 and len(set(rotated)) == 1:
            return f"T(2,{len(rotated) * (1 if rotated[0] > 0 else -1)})", len(rotated)
        if w.strands == 3:
            head = [k for k, letter in enumerate(rotated) if abs(letter) == 2]
            if len(head) == 0 or head[0] == 0:
                continue
            first, second = rotated[:head[0]], rotated[head[0]:]
            if len(set(first)) == 1 and len(set(second)) == 1:
                a, b = len(first), len(second)
                p = a * (1 if first[0] > 0 else -1)
                q = b * (1 if second[0] > 0 else -1)
                return f"T(2,{p})#T(2,{q})", a * b
    return None


def recognize_diagram_leaf(d: LinkDiagram, limits: Optional[EngineLimits] = None
                           ) -> Optional[tuple[str, int]]:
    """
    Recognizes an unknot or a trefoil from a diagram: a crossingless circle, or a knot whose
    reduced Khovanov homology over the two-element field has rank one (the unknot) or is the
    homology of a trefoil. These homologies detect the respective knots.

    Returns
    -------
    `tuple[str, int]`, optional
        Name and determinant of the leaf, None if the diagram is not recognized.
    """
    limits = resolve_limits(limits)
    if d.n_crossings == 0:
        return ("unknot", 1) if d.n_edges == 1 else None
    if not d.is_knot or d.n_crossings > limits.homology_leaf_cap:
        return None
    table = homology(build_complex(d, Flavor.KHOVANOV_F2, Reduction.REDUCED, limits))
    if table.total_rank == 1:
        return "unknot", 1
    if table == RIGHT_TREFOIL:
        return "right trefoil", 3
    if table == LEFT_TREFOIL:
        return "left trefoil", 3
    return None


def leading_block_witness(w: BraidWord) -> Optional[int]:
    """
    Returns the last letter of the leading block of equal negative letters (e.g. the last
    sigma_1^{-1} of sigma_1^{-r} ...), None if the word does not start with a negative letter.
    """
    if len(w) == 0 or w.letters[0] > 0:
        return None
    k = 0
    while k + 1 < len(w) and w.letters[k + 1] == w.letters[0]:
        k += 1
    return k


def last_negative_witness(w: BraidWord) -> Optional[int]:
    """
    Returns the last negative letter of the word, None if there is none.
    """
    negative = [k for k, letter in enumerate(w.letters) if letter < 0]
    return negative[-1] if len(negative) > 0 else None


WITNESS_STRATEGIES = {"leading_block": leading_block_witness,
                      "last_negative": last_negative_witness}


def _build_node(w: BraidWord, strategy: Callable, limits: EngineLimits, depth: int) -> QANode:
    d = closure_diagram(w)
    det = _safe_determinant(d)
    label = w.to_text() if len(w) > 0 else f"(empty, {w.strands} strands)"
    if det == 0:
        raise InvariantError(f"Determinant of {label} vanishes")

    leaf = recognize_braid_leaf(w) or recognize_diagram_leaf(d, limits)
    if leaf is not None:
        name, leaf_det = leaf
        if leaf_det != det:
            raise InvariantError(f"Leaf {label} recognized as {name} but its determinant is {det}")
        return QANode(label, d.n_crossings, det, leaf=name)

    witness = strategy(w)
    if witness is None or depth <= 0:
        raise InvariantError(f"Unrecognized leaf {label}")

    logger.debug("resolving crossing %d of %s", witness, label)
    oriented = _build_node(w.delete_letter(witness), strategy, limits, depth - 1)
    other = d.smooth(witness, 1 - oriented_smoothing(d.signs[witness]))
    other_det = _safe_determinant(other)
    other_label = f"{label} smoothed at {witness}"
    if other_det == 0:
        raise InvariantError(f"Determinant of {other_label} vanishes")
    other_leaf = recognize_diagram_leaf(other, limits)
    if other_leaf is None:
        raise InvariantError(f"Unrecognized leaf {other_label}")
    if other_leaf[1] != other_det:
        raise InvariantError(f"Leaf {other_label} recognized as {other_leaf[0]} but its " +
                             f"determinant is {other_det}")
    other_node = QANode(other_label, other.n_crossings, other_det, leaf=other_leaf[0])

    if det != oriented.det + other_det:
        raise InvariantError(f"Determinants do not add up at {label}: {det} != " +
                             f"{oriented.det} + {other_det}")
    return QANode(label, d.n_crossings, det, witness, None, (oriented, other_node))


def qa_verify(w: BraidWord, strategy: Union[str, Callable] = "leading_block",
              limits: Optional[EngineLimits] = None, max_depth: int = 64) -> QACertificate:
    """
    Builds and verifies a quasi-alternating certificate of a braid closure by recursively
    resolving witness crossings. The oriented resolution of a letter is the word without
    that letter; the other resolution must be a recognized leaf.

    Parameters
    ----------
    w : :class:`~khtight.braid_link.braid_word.BraidWord`
        Braid word.
    strategy : `str` or `Callable[[BraidWord], Optional[int]]`, optional
        Witness strategy: "leading_block", "last_negative" or a callable returning the letter
        index to resolve.

        The default is "leading_block".
    limits : :class:`~khtight.config.EngineLimits`, optional
        Resource limits for homology-based leaf recognition.

        The default is None.
    max_depth : `int`, optional
        Maximum recursion depth.

        The default is 64.

    Returns
    -------
    :class:`~khtight.classical_invariants.quasi_alternating.QACertificate`
        Verified certificate.
    """
    if isinstance(strategy, str):
        if strategy not in WITNESS_STRATEGIES:
            raise ValueError(f"Unknown witness strategy '{strategy}'")
        strategy = WITNESS_STRATEGIES[strategy]
    certificate = QACertificate(_build_node(w, strategy, resolve_limits(limits), max_depth))
    logger.info("quasi-alternating certificate of depth %d for %s", certificate.depth,
                w.to_text())
    return certificate


__all__ = ["QANode", "QACertificate", "RIGHT_TREFOIL", "LEFT_TREFOIL", "WHITELISTED_LEAVES",
           "recognize_braid_leaf", "recognize_diagram_leaf", "leading_block_witness",
           "last_negative_witness", "WITNESS_STRATEGIES", "qa_verify"]
