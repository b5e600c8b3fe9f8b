"""
This module contains the tangle-wise computation of the Khovanov and Bar-Natan--Turner complexes
of a braid closure. The braid is read letter by letter as a tangle complex over crossingless
matchings of its 2b boundary points; closed loops are delooped as soon as they appear and
isomorphisms are cancelled after every crossing, so the intermediate complexes stay small
even where the full resolution cube is out of reach. The transverse element psi is carried
through every cancellation as a morphism out of the identity matching.

Boundary points 0..b-1 are the bottom ends of the strands, b..2b-1 the top ends. A morphism
between two matchings is a set of basis cobordisms; a basis cobordism is a union of disks,
one per loop of the two matchings glued along their common points, and is encoded by the
bitmask of its dotted disks (loops ordered by their smallest point).
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional
import logging

from ..braid_link import BraidWord, closure_diagram
from ..config import EngineLimits, resolve_limits
from ..errors import InvariantError, ResourceLimitError
from ..khovanov import ChainGenerator, ChainVector, CubeComplex, Flavor, Reduction, \
    build_complex, psi_chain


logger = logging.getLogger(__name__)

VERTICAL = 0
HORIZONTAL = 1

# sign -> (resolution, shift of i, shift of q) of the 0- and the 1-smoothing
_RESOLUTIONS = {1: ((VERTICAL, 0, 1), (HORIZONTAL, 1, 2)),
                -1: ((HORIZONTAL, -1, -2), (VERTICAL, 0, -1))}


def identity_matching(strands: int) -> tuple[int, ...]:
    """
    Returns the matching of the trivial braid: bottom end j is joined to top end b+j.
    """
    return tuple(list(range(strands, 2 * strands)) + list(range(strands)))


@lru_cache(maxsize=None)
def loop_partition(m1: tuple, m2: tuple) -> tuple[tuple[int, ...], int]:
    """
    Returns the loops of the union of two matchings of the same points as a tuple assigning
    each point its loop index (loops ordered by their smallest point), and the number of loops.
    """
    loop = [-1] * len(m1)
    count = 0
    for start in range(len(m1)):
        if loop[start] != -1:
            continue
        p = start
        while loop[p] == -1:
            loop[p] = count
            p = m1[p]
            loop[p] = count
            p = m2[p]
        count += 1
    return tuple(loop), count


def resolve_top(m: tuple, j: int, resolution: int) -> tuple[tuple[int, ...], bool]:
    """
    Stacks the resolution of a crossing between strands j and j+1 on top of a matching.
    Returns the new matching and whether a closed loop split off.
    """
    if resolution == VERTICAL:
        return m, False
    b = len(m) // 2
    top, right = b + j, b + j + 1
    result = list(m)
    u, v = m[top], m[right]
    closed = u == right
    if not closed:
        result[u], result[v] = v, u
    result[top], result[right] = right, top
    return tuple(result), closed


def _frobenius_element(flavor: Flavor, n_out: int, dots: int, genus: int) -> list[int]:
    # terms of the connected cobordism applied to x^dots, as dot masks on its outgoing loops;
    # with no outgoing loop, [0] stands for the scalar 1
    full = (1 << n_out) - 1
    if flavor == Flavor.KHOVANOV_F2:
        if genus > 0 or dots > 1:
            return []
        if n_out == 0:
            return [0] if dots == 1 else []
        if dots == 1:
            return [full]
        return [full ^ (1 << k) for k in range(n_out)]
    if n_out == 0:
        return [0] if dots >= 1 else []
    if dots >= 1:
        return [full]
    return [mask for mask in range(full + 1) if mask != full]


def _evaluate(flavor: Flavor, dots: tuple, glues: tuple, sources: tuple, targets: tuple,
              opens: tuple) -> dict:
    """
    Evaluates a surface built from disks (`dots` holds the dot count of each piece) glued
    along intervals. `sources`, `targets` and `opens` assign every boundary loop a piece it
    lies on. Returns {(source labels, target labels): set of open dot masks}, labels being dot
    masks as well (bit k set = loop k carries x).
    """
    parent = list(range(len(dots)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in glues:
        parent[find(a)] = find(b)

    components = {}
    for piece, count in enumerate(dots):
        comp = components.setdefault(find(piece), {"pieces": 0, "glues": 0, "dots": 0,
                                                   "loops": ([], [], [])})
        comp["pieces"] += 1
        comp["dots"] += count
    for a, _ in glues:
        components[find(a)]["glues"] += 1
    for kind, loops in enumerate((sources, targets, opens)):
        for k, piece in enumerate(loops):
            components[find(piece)]["loops"][kind].append(k)

    result = {(0, 0): {0}}
    for comp in components.values():
        src, tgt, opn = comp["loops"]
        euler = comp["pieces"] - comp["glues"]
        twice_genus = 2 - len(src) - len(tgt) - len(opn) - euler
        if twice_genus < 0 or twice_genus % 2 != 0:
            raise InvariantError(f"Glued surface has Euler characteristic {euler} with " +
                                 f"{len(src) + len(tgt) + len(opn)} boundary loops")
        outgoing = [(1, k) for k in tgt] + [(2, k) for k in opn]
        options = []
        for assignment in range(1 << len(src)):
            source_bits = sum(1 << src[k] for k in range(len(src)) if (assignment >> k) & 1)
            dots_in = comp["dots"] + bin(assignment).count("1")
            for mask in _frobenius_element(flavor, len(outgoing), dots_in, twice_genus // 2):
                target_bits = open_bits = 0
                for n, (kind, k) in enumerate(outgoing):
                    if (mask >> n) & 1:
                        if kind == 1:
                            target_bits |= 1 << k
                        else:
                            open_bits |= 1 << k
                options.append((source_bits, target_bits, open_bits))

        combined = {}
        for (s, t), masks in result.items():
            for o in masks:
                for s2, t2, o2 in options:
                    combined.setdefault((s | s2, t | t2), set()).symmetric_difference_update(
                        {o | o2})
        result = {key: masks for key, masks in combined.items() if len(masks) > 0}
        if len(result) == 0:
            break
    return result


def _dot_counts(n_loops: int, term: int, extra: int = 0) -> list[int]:
    return [(term >> k) & 1 for k in range(n_loops)] + [0] * extra


@lru_cache(maxsize=None)
def append_map(flavor: Flavor, m1: tuple, m2: tuple, term: int, j: int, r1: int,
               r2: int) -> tuple:
    """
    Stacks a basis cobordism m1 -> m2 with the identity (r1 = r2) or the saddle (r1 != r2)
    between resolutions of a crossing on strands j, j+1. Returns the items
    ((source label, target label), open dot masks) of the result; the labels refer to the
    closed loop split off on either side (0 if there is none).
    """
    b = len(m1) // 2
    top, right = b + j, b + j + 1
    loop, n_loops = loop_partition(m1, m2)
    n1, closed1 = resolve_top(m1, j, r1)
    n2, closed2 = resolve_top(m2, j, r2)

    if r1 == r2 == VERTICAL:
        dots = _dot_counts(n_loops, term, 2)
        glues = ((n_loops, loop[top]), (n_loops + 1, loop[right]))
        piece_at = {top: n_loops, right: n_loops + 1}
    elif r1 == r2:
        # cap strip glued below, free cup strip above
        dots = _dot_counts(n_loops, term, 2)
        glues = ((n_loops, loop[top]), (n_loops, loop[right]))
        piece_at = {top: n_loops + 1, right: n_loops + 1}
    else:
        dots = _dot_counts(n_loops, term, 1)
        glues = ((n_loops, loop[top]), (n_loops, loop[right]))
        piece_at = {top: n_loops, right: n_loops}

    open_loop, n_open = loop_partition(n1, n2)
    opens = [None] * n_open
    for p in range(2 * b):
        if opens[open_loop[p]] is None:
            opens[open_loop[p]] = piece_at.get(p, loop[p])
    sources = (loop[top],) if closed1 else ()
    targets = (loop[top],) if closed2 else ()
    images = _evaluate(flavor, tuple(dots), glues, sources, targets, tuple(opens))
    return tuple((key, frozenset(masks)) for key, masks in images.items())


@lru_cache(maxsize=None)
def compose(flavor: Flavor, ma: tuple, mb: tuple, mc: tuple, t1: int, t2: int) -> frozenset:
    """
    Composes the basis cobordisms t1: ma -> mb and t2: mb -> mc.
    """
    loop1, n1 = loop_partition(ma, mb)
    loop2, n2 = loop_partition(mb, mc)
    dots = _dot_counts(n1, t1) + _dot_counts(n2, t2)
    glues = tuple((loop1[p], n1 + loop2[p]) for p in range(len(mb)) if p < mb[p])
    open_loop, n_open = loop_partition(ma, mc)
    opens = [None] * n_open
    for p in range(len(ma)):
        if opens[open_loop[p]] is None:
            opens[open_loop[p]] = loop1[p]
    images = _evaluate(flavor, tuple(dots), glues, (), (), tuple(opens))
    return frozenset(images.get((0, 0), ()))


def compose_sum(flavor: Flavor, ma: tuple, mb: tuple, mc: tuple, first: frozenset,
                second: frozenset) -> frozenset:
    result = set()
    for t1 in first:
        for t2 in second:
            result.symmetric_difference_update(compose(flavor, ma, mb, mc, t1, t2))
    return frozenset(result)


@lru_cache(maxsize=None)
def closing_map(flavor: Flavor, m1: tuple, m2: tuple, term: int) -> frozenset:
    """
    Closes a basis cobordism m1 -> m2 by the braid closure. Returns the pairs
    (source labels, target labels) with coefficient one; labels are dot masks over the
    loops of the closed matchings.
    """
    b = len(m1) // 2
    closure = identity_matching(b)
    loop, n_loops = loop_partition(m1, m2)
    dots = _dot_counts(n_loops, term, b)
    glues = tuple((n_loops + k, loop[p]) for k in range(b) for p in (k, b + k))
    pieces = []
    for m in (m1, m2):
        closed, n_closed = loop_partition(m, closure)
        assigned = [None] * n_closed
        for p in range(2 * b):
            if assigned[closed[p]] is None:
                assigned[closed[p]] = loop[p]
        pieces.append(tuple(assigned))
    images = _evaluate(flavor, tuple(dots), glues, pieces[0], pieces[1], ())
    return frozenset(key for key, masks in images.items() if 0 in masks)


@dataclass(frozen=True)
class ScannedComplex():
    """
    Result of a tangle-wise computation.

    Attributes
    ----------
    complex : :class:`~khtight.khovanov.complex.CubeComplex`
        Closed complex, homotopy equivalent to the one of the full cube. Generators carry the
        index of their tangle object as state and no skein level (reported as 0).
    psi : :class:`~khtight.khovanov.generators.ChainVector`
        Image of the transverse element (zero chain if it vanished during a cancellation).
    peak : `int`
        Largest number of tangle generators held at once.
    """
    complex: CubeComplex
    psi: ChainVector
    peak: int


class TangleComplex():
    """
    Complex over crossingless matchings of a braid read from the bottom, with morphisms
    stored as sets of dot masks.

    Parameters
    ----------
    strands : `int`
        Number of strands.
    flavor : :class:`~khtight.khovanov.complex.Flavor`
        Khovanov or Bar-Natan--Turner (at h = 1) relations.
    generator_budget : `int`
        Maximum number of generators held at once.
    """
    def __init__(self, strands: int, flavor: Flavor, generator_budget: int):
        self._b = strands
        self._flavor = Flavor(flavor)
        self._budget = generator_budget
        self._identity = identity_matching(strands)
        self._matching = {0: self._identity}
        self._i = {0: 0}
        self._q = {0: 0}
        self._succ = {0: {}}
        self._pred = {0: set()}
        self._psi = {0: frozenset({0})}
        self._next = 1
        self.peak = 1

    def __len__(self) -> int:
        return len(self._matching)

    def _new(self, matching: tuple, i: int, q: int) -> int:
        g = self._next
        self._next += 1
        self._matching[g] = matching
        self._i[g], self._q[g] = i, q
        self._succ[g], self._pred[g] = {}, set()
        return g

    def _toggle(self, x: int, y: int, terms: frozenset) -> None:
        if len(terms) == 0:
            return
        terms = self._succ[x].get(y, frozenset()) ^ terms
        if len(terms) == 0:
            self._succ[x].pop(y, None)
            self._pred[y].discard(x)
        else:
            self._succ[x][y] = terms
            self._pred[y].add(x)

    def append(self, letter: int) -> None:
        """
        Tensors the complex with the two-term complex of one crossing and cancels all
        isomorphisms.
        """
        j = abs(letter) - 1
        sign = 1 if letter > 0 else -1
        resolutions = _RESOLUTIONS[sign]
        matching, degree, grading = self._matching, self._i, self._q
        succ, psi = self._succ, self._psi
        self._matching, self._i, self._q = {}, {}, {}
        self._succ, self._pred, self._psi = {}, {}, {}

        ids = {}
        for g in sorted(matching):
            for eps, (r, di, dq) in enumerate(resolutions):
                m, closed = resolve_top(matching[g], j, r)
                i, q = degree[g] + di, grading[g] + dq
                if closed:
                    ids[g, eps] = (self._new(m, i, q + 1), self._new(m, i, q - 1))
                else:
                    ids[g, eps] = (self._new(m, i, q),)
        if len(self) > self._budget:
            raise ResourceLimitError(f"Tangle complex needs {len(self)} generators " +
                                     f"(budget {self._budget})")

        for g, targets in succ.items():
            for h, terms in targets.items():
                for eps, (r, _, _) in enumerate(resolutions):
                    for term in terms:
                        for (sb, tb), opens in append_map(self._flavor, matching[g],
                                                          matching[h], term, j, r, r):
                            self._toggle(ids[g, eps][sb], ids[h, eps][tb], opens)
        r0, r1 = resolutions[0][0], resolutions[1][0]
        for g in matching:
            for (sb, tb), opens in append_map(self._flavor, matching[g], matching[g], 0, j,
                                              r0, r1):
                self._toggle(ids[g, 0][sb], ids[g, 1][tb], opens)

        vertical = 0 if sign > 0 else 1
        for g, terms in psi.items():
            image = set()
            for term in terms:
                for _, opens in append_map(self._flavor, self._identity, matching[g], term, j,
                                           VERTICAL, VERTICAL):
                    image.symmetric_difference_update(opens)
            if len(image) > 0:
                self._psi[ids[g, vertical][0]] = frozenset(image)

        self.peak = max(self.peak, len(self))
        self.reduce()

    def _cancel(self, x: int, y: int) -> None:
        flavor, matching = self._flavor, self._matching
        outgoing = {w: terms for w, terms in self._succ[x].items() if w != y}
        for z in list(self._pred[y]):
            if z == x:
                continue
            delta = self._succ[z][y]
            for w, gamma in outgoing.items():
                self._toggle(z, w, compose_sum(flavor, matching[z], matching[y], matching[w],
                                               delta, gamma))
        if y in self._psi:
            zeta = self._psi.pop(y)
            for w, gamma in outgoing.items():
                image = self._psi.get(w, frozenset()) ^ compose_sum(
                    flavor, self._identity, matching[y], matching[w], zeta, gamma)
                if len(image) > 0:
                    self._psi[w] = image
                else:
                    self._psi.pop(w, None)
        self._psi.pop(x, None)

        for g in (x, y):
            for w in self._succ[g]:
                self._pred[w].discard(g)
            for z in self._pred[g]:
                self._succ[z].pop(g, None)
        for g in (x, y):
            del self._succ[g], self._pred[g], self._matching[g], self._i[g], self._q[g]

    def _isomorphism(self, x: int) -> Optional[int]:
        for y, terms in self._succ[x].items():
            if terms == {0} and self._q[y] == self._q[x] and \
                    self._matching[y] == self._matching[x]:
                return y
        return None

    def reduce(self) -> int:
        """
        Cancels isomorphisms (identity cobordisms between equal objects) until none is left.
        Returns the number of cancellations.
        """
        cancelled = 0
        changed = True
        while changed:
            changed = False
            for x in sorted(self._succ):
                if x not in self._succ:
                    continue
                y = self._isomorphism(x)
                if y is not None:
                    self._cancel(x, y)
                    cancelled += 1
                    changed = True
        return cancelled

    def close(self, w: BraidWord, reduction: Reduction) -> tuple[CubeComplex, ChainVector]:
        """
        Closes the braid and returns the closed complex and the image of psi.
        """
        reduced = Reduction(reduction) == Reduction.REDUCED
        n_minus = sum(1 for letter in w.letters if letter < 0)
        closure = identity_matching(self._b)
        objects = sorted(self._matching)
        keys = {}
        for state, g in enumerate(objects):
            _, n_loops = loop_partition(self._matching[g], closure)
            for bits in range(1 << n_loops):
                # the marked loop passes through the bottom of strand 0, loop 0
                if reduced and not bits & 1:
                    continue
                dotted = bin(bits).count("1")
                q = self._q[g] + n_loops - 2 * dotted + (1 if reduced else 0)
                keys[g, bits] = ChainGenerator(state, self._i[g] + n_minus,
                                               ((1 << n_loops) - 1) ^ bits, self._i[g], q, 0)
        if len(keys) > self._budget:
            raise ResourceLimitError(f"Closed complex needs {len(keys)} generators " +
                                     f"(budget {self._budget})")

        order = sorted(keys, key=lambda key: (keys[key].i, keys[key].q, keys[key].state,
                                              keys[key].labels))
        index = {key: k for k, key in enumerate(order)}
        differential = [set() for _ in order]
        for g in objects:
            for h, terms in self._succ[g].items():
                for term in terms:
                    for sb, tb in closing_map(self._flavor, self._matching[g],
                                              self._matching[h], term):
                        if (g, sb) in index and (h, tb) in index:
                            differential[index[g, sb]].symmetric_difference_update(
                                {index[h, tb]})

        psi = set()
        all_dotted = (1 << self._b) - 1
        for g, terms in self._psi.items():
            for term in terms:
                for sb, tb in closing_map(self._flavor, self._identity, self._matching[g],
                                          term):
                    if sb == all_dotted and (g, tb) in index:
                        psi.symmetric_difference_update({index[g, tb]})

        c = CubeComplex(closure_diagram(w), self._flavor, reduction,
                        [keys[key] for key in order], [sorted(t) for t in differential])
        q = w.self_linking() + (1 if reduced else 0)
        return c, ChainVector(frozenset(psi), 0, q)


def scan_complex(w: BraidWord, flavor: Flavor = Flavor.KHOVANOV_F2,
                 reduction: Reduction = Reduction.REDUCED,
                 limits: Optional[EngineLimits] = None) -> ScannedComplex:
    """
    Computes the complex of a braid closure crossing by crossing, cancelling isomorphisms
    after every crossing, and tracks psi through the cancellations.

    Parameters
    ----------
    w : :class:`~khtight.braid_link.braid_word.BraidWord`
        Braid word.
    flavor : :class:`~khtight.khovanov.complex.Flavor`, optional
        Differential.

        The default is Flavor.KHOVANOV_F2.
    reduction : :class:`~khtight.khovanov.complex.Reduction`, optional
        Reduced or unreduced complex.

        The default is Reduction.REDUCED.
    limits : :class:`~khtight.config.EngineLimits`, optional
        Resource limits; only the generator budget applies.

        The default is None.

    Returns
    -------
    :class:`~khtight.homology_engine.scanning.ScannedComplex`
        Closed complex and psi.
    """
    if not isinstance(w, BraidWord):
        raise TypeError("'w' must be an instance of 'BraidWord' " +
                        f"but not of '{type(w)}'")
    limits = resolve_limits(limits)
    tangle = TangleComplex(w.strands, flavor, limits.generator_budget)
    for letter in w.letters:
        tangle.append(letter)
        logger.debug("after letter %d: %d tangle generators", letter, len(tangle))
    c, psi = tangle.close(w, reduction)
    if limits.check_d_squared:
        c.check_d_squared()
        c.check_filtration()
    logger.info("scanned %s: peak %d tangle generators, %d closed generators", w.to_text(),
                tangle.peak, len(c))
    return ScannedComplex(c, psi, tangle.peak)


def closure_complex(w: BraidWord, flavor: Flavor = Flavor.KHOVANOV_F2,
                    reduction: Reduction = Reduction.REDUCED,
                    limits: Optional[EngineLimits] = None
                    ) -> tuple[CubeComplex, Optional[ChainVector]]:
    """
    Returns the complex of a braid closure: tangle-wise if the limits ask for it (see
    :meth:`~khtight.config.EngineLimits.use_scanning`), from the full resolution cube otherwise.
    For the Khovanov flavor psi is returned along with it, None for the Bar-Natan flavor of a
    full cube.
    """
    limits = resolve_limits(limits)
    if limits.use_scanning(len(w)):
        scanned = scan_complex(w, flavor, reduction, limits)
        return scanned.complex, scanned.psi
    c = build_complex(closure_diagram(w), flavor, reduction, limits)
    if Flavor(flavor) != Flavor.KHOVANOV_F2:
        return c, None
    return psi_chain(w, reduction, c=c)


__all__ = ["VERTICAL", "HORIZONTAL", "identity_matching", "loop_partition", "resolve_top",
           "append_map", "compose", "closing_map", "ScannedComplex", "TangleComplex",
           "scan_complex", "closure_complex"]
