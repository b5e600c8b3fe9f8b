"""
This module contains planar link diagrams (braid closures and diagrams derived from them by
smoothing crossings), the tracing of resolutions and the oriented resolution of a braid.

Crossings are stored PD-style: four edge ids in counter-clockwise order, slot 0 being the
incoming end of the under-strand. The under-strand runs from slot 0 to slot 2, the over-strand
between slots 1 and 3 (entering at slot 3 at positive, at slot 1 at negative crossings).
Edges that do not appear at any crossing are free (crossingless) loops.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Optional
import logging

from .braid_word import BraidWord
from ..errors import DiagramError


logger = logging.getLogger(__name__)

# Slot pairs joined by the two smoothings of a crossing.
SMOOTHING_PAIRS = {0: ((0, 1), (2, 3)), 1: ((0, 3), (1, 2))}
_PARTNER = {0: (1, 0, 3, 2), 1: (3, 2, 1, 0)}


def incoming_slots(sign: int) -> tuple[int, int]:
    """
    Returns the two slots at which the strands of a crossing enter.

    Parameters
    ----------
    sign : `int`
        Sign of the crossing (+1 or -1).

    Returns
    -------
    `tuple[int, int]`
        Incoming slots.
    """
    return (0, 3) if sign > 0 else (0, 1)


def oriented_smoothing(sign: int) -> int:
    """
    Returns the smoothing (0 or 1) of a crossing that respects the orientation:
    the 0-smoothing at positive, the 1-smoothing at negative crossings.
    """
    return 0 if sign > 0 else 1


class _UnionFind():
    def __init__(self, size: int):
        self._parent = list(range(size))

    def find(self, x: int) -> int:
        while self._parent[x] != x:
            self._parent[x] = self._parent[self._parent[x]]
            x = self._parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x != y:
            if y < x:
                x, y = y, x
            self._parent[y] = x


class LinkDiagram():
    """
    A planar link diagram.

    Parameters
    ----------
    pd : `list[tuple[int, int, int, int]]`
        Crossings as edge ids in counter-clockwise order, slot 0 being the incoming
        under-strand.
    signs : `list[int]`
        Sign (+1 or -1) of each crossing.
    n_edges : `int`
        Number of edges; edge ids are 0, ..., n_edges-1. Edges not occurring in `pd`
        are free loops.
    marked_edge : `int`, optional
        Edge carrying the base point of reduced homology.

        The default is 0.
    seam_edges : `list[int]`, optional
        Edges crossing the seam of a closed braid (one per strand). Used to decide
        whether a circle links the braid axis. Empty for diagrams that are not braid
        closures.

        The default is an empty list.
    """
    def __init__(self, pd: list, signs: list, n_edges: int, marked_edge: int = 0,
                 seam_edges: Optional[list] = None):
        if len(pd) != len(signs):
            raise DiagramError("'pd' and 'signs' must have the same length")
        if not isinstance(n_edges, int) or n_edges < 1:
            raise DiagramError("'n_edges' must be a positive integer")
        if seam_edges is None:
            seam_edges = []

        self._pd = tuple(tuple(int(e) for e in crossing) for crossing in pd)
        self._signs = tuple(int(s) for s in signs)
        self._n_edges = n_edges
        self._marked_edge = marked_edge
        self._seam_edges = frozenset(seam_edges)

        if any(len(crossing) != 4 for crossing in self._pd):
            raise DiagramError("Every crossing must have four slots")
        if any(s not in (1, -1) for s in self._signs):
            raise DiagramError("Crossing signs must be +1 or -1")
        if not 0 <= marked_edge < n_edges:
            raise DiagramError(f"Marked edge {marked_edge} does not exist")

        counts = [0] * n_edges
        for crossing in self._pd:
            for e in crossing:
                if not 0 <= e < n_edges:
                    raise DiagramError(f"Edge {e} does not exist")
                counts[e] += 1
        if any(c not in (0, 2) for c in counts):
            raise DiagramError("Every edge must occur in exactly two crossing slots " +
                               "or in none (free loop)")

    @property
    def pd(self) -> tuple[tuple[int, int, int, int], ...]:
        """
        Returns the crossings.

        Returns
        -------
        `tuple[tuple[int, int, int, int]]`
            Crossings in PD form.
        """
        return self._pd

    @property
    def signs(self) -> tuple[int, ...]:
        """
        Returns the crossing signs.

        Returns
        -------
        `tuple[int]`
            Signs.
        """
        return self._signs

    @property
    def n_edges(self) -> int:
        """
        Returns the number of edges (including free loops).

        Returns
        -------
        `int`
            Number of edges.
        """
        return self._n_edges

    @property
    def marked_edge(self) -> int:
        """
        Returns the marked edge.

        Returns
        -------
        `int`
            Edge id.
        """
        return self._marked_edge

    @property
    def seam_edges(self) -> frozenset:
        """
        Returns the edges crossing the braid seam.

        Returns
        -------
        `frozenset[int]`
            Edge ids.
        """
        return self._seam_edges

    @property
    def n_crossings(self) -> int:
        """
        Returns the number of crossings.

        Returns
        -------
        `int`
            Number of crossings.
        """
        return len(self._pd)

    @property
    def n_positive(self) -> int:
        """
        Returns the number of positive crossings.
        """
        return sum(1 for s in self._signs if s > 0)

    @property
    def n_negative(self) -> int:
        """
        Returns the number of negative crossings.
        """
        return sum(1 for s in self._signs if s < 0)

    def writhe(self) -> int:
        return sum(self._signs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinkDiagram):
            raise TypeError(f"Can not compare 'LinkDiagram' instance to '{type(other)}' instance")

        return self._pd == other.pd and self._signs == other.signs and \
            self._n_edges == other.n_edges and self._marked_edge == other.marked_edge

    def __str__(self) -> str:
        return f"crossings: {self.n_crossings} edges: {self._n_edges} " + \
            f"components: {self.n_components} PD: {list(self._pd)}"

    @cached_property
    def occurrences(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """
        Returns, for every edge, its (crossing, slot) occurrences -- two for ordinary
        edges, none for free loops.
        """
        occ = [[] for _ in range(self._n_edges)]
        for c, crossing in enumerate(self._pd):
            for s, e in enumerate(crossing):
                occ[e].append((c, s))
        return tuple(tuple(o) for o in occ)

    @cached_property
    def heads(self) -> tuple[Optional[tuple[int, int]], ...]:
        """
        Returns, for every edge, the occurrence at which the edge enters a crossing
        (None for free loops).
        """
        result = []
        for occ in self.occurrences:
            head = None
            for c, s in occ:
                if s in incoming_slots(self._signs[c]):
                    head = (c, s)
            result.append(head)
        return tuple(result)

    @cached_property
    def free_loops(self) -> tuple[int, ...]:
        """
        Returns the edges that are free loops.
        """
        return tuple(e for e, occ in enumerate(self.occurrences) if len(occ) == 0)

    def other_end(self, edge: int, occurrence: tuple[int, int]) -> tuple[int, int]:
        """
        Returns the occurrence of `edge` at the end opposite to `occurrence`.
        """
        first, second = self.occurrences[edge]
        return second if first == occurrence else first

    @cached_property
    def component_of_edge(self) -> tuple[int, ...]:
        """
        Returns the link component of every edge; components are numbered by their
        smallest edge id.
        """
        uf = _UnionFind(self._n_edges)
        for crossing in self._pd:
            uf.union(crossing[0], crossing[2])
            uf.union(crossing[1], crossing[3])
        roots = {}
        result = []
        for e in range(self._n_edges):
            r = uf.find(e)
            if r not in roots:
                roots[r] = len(roots)
            result.append(roots[r])
        return tuple(result)

    @property
    def n_components(self) -> int:
        """
        Returns the number of link components.

        Returns
        -------
        `int`
            Number of components.
        """
        return max(self.component_of_edge) + 1

    @property
    def is_knot(self) -> bool:
        return self.n_components == 1

    @cached_property
    def pieces(self) -> int:
        """
        Returns the number of connected pieces of the diagram (as a planar graph,
        free loops counted separately).
        """
        uf = _UnionFind(self._n_edges)
        for crossing in self._pd:
            for e in crossing[1:]:
                uf.union(crossing[0], e)
        return len({uf.find(e) for e in range(self._n_edges)})

    @property
    def is_connected(self) -> bool:
        return self.pieces == 1

    @cached_property
    def faces(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """
        Returns the faces of the diagram as cycles of corners. Corner (c, j) is the
        region at crossing c between slots j and j+1. Faces are traced per connected
        piece; free loops are not included.
        """
        seen = set()
        result = []
        for c in range(self.n_crossings):
            for j in range(4):
                if (c, j) in seen:
                    continue
                face = []
                corner = (c, j)
                while corner not in seen:
                    seen.add(corner)
                    face.append(corner)
                    cc, jj = corner
                    slot = (jj + 1) % 4
                    corner = self.other_end(self._pd[cc][slot], (cc, slot))
                result.append(tuple(face))
        return tuple(result)

    def euler_characteristic(self) -> int:
        """
        Returns V - E + F where every connected piece is counted on its own sphere and a
        free loop counts as one vertex, one edge and two faces. Equals 2 * pieces for
        every valid planar diagram.

        Returns
        -------
        `int`
            Euler characteristic.
        """
        loops = len(self.free_loops)
        vertices = self.n_crossings + loops
        edges = self._n_edges
        faces = len(self.faces) + 2 * loops
        return vertices - edges + faces

    def smooth(self, crossing: int, resolution: int) -> "LinkDiagram":
        """
        Returns the diagram obtained by smoothing one crossing.
        The result is re-oriented: every component keeps the orientation of its smallest
        edge where that is well-defined.

        Parameters
        ----------
        crossing : `int`
            Index of the crossing.
        resolution : `int`
            0 for the 0-smoothing (slots 0-1 and 2-3 joined), 1 for the 1-smoothing.

        Returns
        -------
        :class:`~khtight.braid_link.diagram.LinkDiagram`
            Smoothed diagram; not a braid closure (no seam edges).
        """
        if not 0 <= crossing < self.n_crossings:
            raise ValueError(f"Crossing {crossing} does not exist")
        if resolution not in (0, 1):
            raise ValueError("'resolution' must be 0 or 1")

        uf = _UnionFind(self._n_edges)
        for a, b in SMOOTHING_PAIRS[resolution]:
            uf.union(self._pd[crossing][a], self._pd[crossing][b])

        relabel = {}
        for e in range(self._n_edges):
            r = uf.find(e)
            if r not in relabel:
                relabel[r] = len(relabel)
        n_edges = len(relabel)

        kept = [c for c in range(self.n_crossings) if c != crossing]
        pd = [tuple(relabel[uf.find(e)] for e in self._pd[c]) for c in kept]

        # Orientation hints: occurrences that were heads before smoothing.
        old_heads = {h for h in self.heads if h is not None}
        hint_heads = {(k, s) for k, c in enumerate(kept) for s in range(4) if (c, s) in old_heads}

        marked = relabel[uf.find(self._marked_edge)]
        return _orient(pd, n_edges, marked, hint_heads)

    def to_dict(self) -> dict:
        return {"pd": [list(c) for c in self._pd], "signs": list(self._signs),
                "n_edges": self._n_edges, "marked_edge": self._marked_edge,
                "seam_edges": sorted(self._seam_edges)}


def _orient(pd: list, n_edges: int, marked_edge: int, hint_heads: set) -> LinkDiagram:
    """
    Orients an unoriented PD diagram (slots 0/2 under, 1/3 over) and returns it with
    signs and slot 0 the incoming under-strand.
    """
    occ = [[] for _ in range(n_edges)]
    for c, crossing in enumerate(pd):
        for s, e in enumerate(crossing):
            occ[e].append((c, s))

    def other(edge, o):
        first, second = occ[edge]
        return second if first == o else first

    heads = set()
    visited = [False] * n_edges
    for e0 in range(n_edges):
        if visited[e0] or len(occ[e0]) == 0:
            continue
        candidates = [o for o in occ[e0] if o in hint_heads]
        head = candidates[0] if len(candidates) == 1 else occ[e0][1]
        e = e0
        while not visited[e]:
            visited[e] = True
            heads.add(head)
            c, s = head
            out_slot = (s + 2) % 4
            e = pd[c][out_slot]
            head = other(e, (c, out_slot))

    new_pd = []
    signs = []
    for c, crossing in enumerate(pd):
        if (c, 0) not in heads:
            crossing = crossing[2:] + crossing[:2]
            over_in = 1 if (c, 3) in heads else 3
        else:
            over_in = 3 if (c, 3) in heads else 1
        new_pd.append(tuple(crossing))
        signs.append(1 if over_in == 3 else -1)

    return LinkDiagram(new_pd, signs, n_edges, marked_edge)


def closure_diagram(w: BraidWord) -> LinkDiagram:
    """
    Returns the planar diagram of the closure of a braid word. Crossing k of the diagram
    is letter k of the word; edges 0, ..., b-1 are the strands at the bottom of the braid
    (they cross the seam) and edge 0, on the closure arc of strand 1, is the marked edge.

    Parameters
    ----------
    w : :class:`~khtight.braid_link.braid_word.BraidWord`
        Braid word.

    Returns
    -------
    :class:`~khtight.braid_link.diagram.LinkDiagram`
        Closure diagram.
    """
    if not isinstance(w, BraidWord):
        raise TypeError(f"'w' must be an instance of 'BraidWord' but not of '{type(w)}'")

    b = w.strands
    start = list(range(b))
    cur = list(start)
    next_id = b
    corners = []
    for letter in w.letters:
        i = abs(letter) - 1
        bl, br = cur[i], cur[i + 1]
        tl, tr = next_id, next_id + 1
        next_id += 2
        cur[i], cur[i + 1] = tl, tr
        corners.append((letter, bl, br, tr, tl))

    closing = {cur[p]: start[p] for p in range(b) if cur[p] != start[p]}
    used = set(start)
    raw = []
    for letter, bl, br, tr, tl in corners:
        bl, br, tr, tl = (closing.get(e, e) for e in (bl, br, tr, tl))
        raw.append((letter, (br, tr, tl, bl) if letter > 0 else (bl, br, tr, tl)))
        used.update((bl, br, tr, tl))

    relabel = {e: k for k, e in enumerate(sorted(used))}
    pd = [tuple(relabel[e] for e in crossing) for _, crossing in raw]
    signs = [1 if letter > 0 else -1 for letter, _ in raw]

    diagram = LinkDiagram(pd, signs, len(relabel), marked_edge=0, seam_edges=list(range(b)))
    logger.debug("closure of %s: %d crossings, %d components", w.to_text(),
                 diagram.n_crossings, diagram.n_components)
    return diagram


@dataclass(frozen=True)
class Resolution():
    """
    The circles of a complete resolution of a diagram.

    Attributes
    ----------
    state : `int`
        Bitmask; bit k is the smoothing (0 or 1) of crossing k.
    circle_of_edge : `tuple[int]`
        Circle index of every edge; circles are numbered by their smallest edge id.
    axis_linking : `tuple[bool]`
        Per circle, True if the circle winds around the braid axis.
    """
    state: int
    circle_of_edge: tuple
    axis_linking: tuple

    @property
    def n_circles(self) -> int:
        return len(self.axis_linking)

    def circles(self) -> tuple[tuple[int, ...], ...]:
        """
        Returns the edges of every circle.
        """
        result = [[] for _ in range(self.n_circles)]
        for e, k in enumerate(self.circle_of_edge):
            result[k].append(e)
        return tuple(tuple(c) for c in result)


def trace_resolution(d: LinkDiagram, state: int) -> Resolution:
    """
    Traces the circles of the complete resolution `state` of a diagram and decides for
    each circle whether it links the braid axis (nonzero signed count of seam passages).

    Parameters
    ----------
    d : :class:`~khtight.braid_link.diagram.LinkDiagram`
        Diagram.
    state : `int`
        Bitmask of smoothings.

    Returns
    -------
    :class:`~khtight.braid_link.diagram.Resolution`
        Traced resolution.
    """
    pd = d.pd
    heads = d.heads
    seam = d.seam_edges
    circle_of_edge = [-1] * d.n_edges
    axis_linking = []
    for e0 in range(d.n_edges):
        if circle_of_edge[e0] != -1:
            continue
        k = len(axis_linking)
        occ = d.occurrences[e0]
        if len(occ) == 0:
            circle_of_edge[e0] = k
            axis_linking.append(e0 in seam)
            continue

        winding = 0
        e, arrival = e0, occ[1]
        while circle_of_edge[e] == -1:
            circle_of_edge[e] = k
            if e in seam:
                winding += 1 if arrival == heads[e] else -1
            c, s = arrival
            out_slot = _PARTNER[(state >> c) & 1][s]
            e = pd[c][out_slot]
            arrival = d.other_end(e, (c, out_slot))
        axis_linking.append(winding != 0)

    return Resolution(state, tuple(circle_of_edge), tuple(axis_linking))


@dataclass(frozen=True)
class OrientedResolution():
    """
    The oriented resolution of a braid closure.

    Attributes
    ----------
    state : `tuple[int]`
        Smoothing per crossing: 0 at positive, 1 at negative crossings.
    circles : `tuple[tuple[int]]`
        Edges of every circle, circles ordered by smallest edge id.
    axis_linking : `tuple[bool]`
        Per circle, True if the circle encircles the braid axis.
    """
    state: tuple
    circles: tuple
    axis_linking: tuple

    @property
    def n_circles(self) -> int:
        return len(self.circles)


def oriented_state(d: LinkDiagram) -> int:
    """
    Returns the bitmask of the oriented resolution of a diagram.
    """
    return sum(oriented_smoothing(s) << c for c, s in enumerate(d.signs))


def oriented_resolution(w: BraidWord) -> OrientedResolution:
    """
    Returns the oriented resolution of the closure of a braid word. For a braid closure
    it consists of b circles, all of them linking the braid axis.

    Parameters
    ----------
    w : :class:`~khtight.braid_link.braid_word.BraidWord`
        Braid word.

    Returns
    -------
    :class:`~khtight.braid_link.diagram.OrientedResolution`
        Oriented resolution.
    """
    d = closure_diagram(w)
    resolution = trace_resolution(d, oriented_state(d))
    return OrientedResolution(tuple(oriented_smoothing(s) for s in d.signs),
                              resolution.circles(), resolution.axis_linking)


__all__ = ["LinkDiagram", "Resolution", "OrientedResolution", "SMOOTHING_PAIRS",
           "incoming_slots", "oriented_smoothing", "oriented_state", "closure_diagram",
           "trace_resolution", "oriented_resolution"]
