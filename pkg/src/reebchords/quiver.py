"""The chord quiver, intersection gradings, and obstruction predicates.

The quiver has one vertex per link component and one directed edge per
chord; its cycles index closed-orbit words, which gives a cheap cross-check
of enumeration and a home for the positivity/cyclic-equivalence algebra.
The intersection grading assigns to each null-homologous orbit collection
an integer per bounded face, computed from push-out winding numbers plus a
meridian-disk correction solved against the surgery relation matrix.
"""

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .diagram import DiagramError, Face, ResolvedDiagram
from .geometry import winding_number
from .homology import H1Presentation, orbit_class_monomial
from .words import (CyclicWord, OrbitString, canonical_rotation,
                    push_out)


class Quiver(object):
    """Directed graph with a vertex per component and an edge per chord."""

    def __init__(self, d: ResolvedDiagram):
        if not d.chords:
            raise ValueError("empty diagram has no quiver")
        self.diagram = d
        self.vertices = list(range(len(d.components)))
        self.edges = [(c.id, c.tail_comp, c.tip_comp) for c in d.chords]

    def loops_at(self, vertex: int) -> List[int]:
        return [e for e, a, b in self.edges if a == b == vertex]

    def edges_from(self, vertex: int) -> List[Tuple[int, int]]:
        return [(e, b) for e, a, b in self.edges if a == vertex]

    def collapsed_h1_rank(self) -> int:
        """First Betti number of the one-vertex collapse: one per edge."""
        return len(self.edges)

    def count_cycles(self, length: int) -> int:
        """Number of cyclic edge words of exactly this length, up to rotation."""
        seen = set()
        seq: List[int] = []

        def extend(at):
            if len(seq) == length:
                if self.diagram.composable(seq[-1], seq[0]):
                    seen.add(canonical_rotation(seq))
                return
            for e, b in self.edges_from(at):
                seq.append(e)
                extend(b)
                seq.pop()

        for e, a, b in self.edges:
            seq = [e]
            extend(b)
        return len(seen)

    def count_paths(self, start: int, end: int, length: int) -> int:
        total = 0
        seq: List[int] = []

        def extend(at):
            nonlocal total
            if len(seq) == length:
                if at == end:
                    total += 1
                return
            for e, b in self.edges_from(at):
                seq.append(e)
                extend(b)
                seq.pop()

        extend(start)
        return total


def build_quiver(d: ResolvedDiagram) -> Quiver:
    return Quiver(d)


def cyclic_equivalence(x: Sequence[int], y: Sequence[int]) -> bool:
    """Whether two positive chord words are rotations of one another.

    For positive elements of the free group on chords this decides full
    conjugacy.
    """
    x = tuple(x)
    y = tuple(y)
    if not x or not y:
        raise ValueError("cyclic equivalence needs positive (nonempty) words")
    if any(c <= 0 for c in x) or any(c <= 0 for c in y):
        raise ValueError("words must consist of chord letters only")
    if len(x) != len(y):
        return False
    return canonical_rotation(x) == canonical_rotation(y)


def chord_count_vector(words: Iterable, n_chords: int) -> Tuple[int, ...]:
    counts = [0] * (n_chords + 1)
    for w in words:
        for c in w.chords:
            counts[c] += 1
    return tuple(counts[1:])


def exposed_required(d: ResolvedDiagram,
                     positive: Sequence[CyclicWord],
                     negative: Sequence[CyclicWord]) -> bool:
    """Whether any curve between these asymptotics must cross a face fiber.

    True on homological mismatch in the collapsed quiver, and for filling
    curves (nonempty positive asymptotics, empty negative ones).
    """
    if positive and not negative:
        return True
    n = len(d.chords)
    return chord_count_vector(positive, n) != chord_count_vector(negative, n)


class IGradingVector(object):
    """Integer vector over the bounded faces, additive under unions."""

    def __init__(self, values: Sequence[int]):
        self.values = tuple(int(v) for v in values)

    def __add__(self, other):
        return IGradingVector([a + b for a, b in
                               zip(self.values, other.values)])

    def __sub__(self, other):
        return IGradingVector([a - b for a, b in
                               zip(self.values, other.values)])

    def __eq__(self, other):
        return isinstance(other, IGradingVector) and \
            self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"I{self.values}"


def _component_windings(d: ResolvedDiagram) -> List[List[int]]:
    """windings[i][k]: winding of component i around basepoint k."""
    cached = getattr(d, "_component_windings", None)
    if cached is not None:
        return cached
    out = []
    for cyc in d.components:
        out.append([winding_number(cyc, f.basepoint) for f in d.faces_list])
    d._component_windings = out
    return out


def _pushout_data(d: ResolvedDiagram, w: CyclicWord,
                  s: Optional[OrbitString]):
    """(winding vector over basepoints, linking vector) of a push-out, cached.

    A degenerate tangency with a basepoint fiber regenerates the push-out
    at a smaller offset.
    """
    cache = getattr(d, "_pushout_cache", None)
    if cache is None:
        cache = d._pushout_cache = {}
    key = (w.chords, s.sides if s is not None else None)
    if key not in cache:
        offset = Fraction(1, 8)
        for _attempt in range(8):
            curve = push_out(d, w, s, offset=offset)
            try:
                windings = tuple(curve.winding(f.basepoint)
                                 for f in d.faces_list)
            except ValueError:
                offset /= 2
                continue
            cache[key] = (windings, dict(curve.linking))
            break
        else:
            raise DiagramError("push-out keeps hitting a basepoint fiber")
    return cache[key]


def effective_fiber_vector(d: ResolvedDiagram, h1: H1Presentation,
                           w: CyclicWord, s: Optional[OrbitString] = None
                           ) -> Tuple[Fraction, ...]:
    """Per-orbit rational fiber-count vector; sums to the grading of unions.

    The push-out's winding numbers plus the (here possibly fractional)
    meridian-cap correction solved against the relation matrix; the total
    over a null-homologous collection is integral and is its grading.
    """
    cache = getattr(d, "_fiber_cache", None)
    if cache is None:
        cache = d._fiber_cache = {}
    key = (w.chords, s.sides if s is not None else None)
    if key in cache:
        return cache[key]
    windings, linking = _pushout_data(d, w, s)
    n = len(h1.surgered)
    mat = [[Fraction(h1.matrix[j][i]) for j in range(n)] for i in range(n)]
    rhs = [-Fraction(linking[i]) for i in h1.surgered]
    sol = _solve_square(mat, rhs)
    comp_w = _component_windings(d)
    vec = []
    for k in range(len(d.faces_list)):
        total = Fraction(windings[k])
        # each cap through handle j trades a meridian for a framed push-off,
        # whose spanning surface meets the fiber in the component's winding
        for idx, j in enumerate(h1.surgered):
            total += sol[idx] * comp_w[j][k]
        vec.append(total)
    cache[key] = tuple(vec)
    return cache[key]


def i_grading(d: ResolvedDiagram, h1: H1Presentation,
              collection: Sequence[Tuple[CyclicWord, Optional[OrbitString]]]
              ) -> IGradingVector:
    """Intersection grading of a null-homologous collection of orbits.

    Each entry counts intersections of a spanning surface with the vertical
    fiber over a face basepoint: the push-out's winding number plus the
    contribution of the meridian disks needed to cap its linking with the
    surgered components.  The result does not depend on the capping-side
    choices.
    """
    if not h1.finite:
        raise ValueError("intersection grading needs finite first homology")
    total_class = None
    n_faces = len(d.faces_list)
    totals = [Fraction(0)] * n_faces
    for w, s in collection:
        cls = orbit_class_monomial(d, h1, w)
        total_class = cls if total_class is None else total_class + cls
        vec = effective_fiber_vector(d, h1, w, s)
        totals = [a + b for a, b in zip(totals, vec)]
    if total_class is not None and not total_class.is_zero():
        raise ValueError("collection is not null-homologous; no spanning "
                         "surface exists")
    values = []
    for v in totals:
        if v.denominator != 1:
            raise DiagramError("fractional fiber count on a null-homologous "
                               "collection")
        values.append(int(v))
    return IGradingVector(values)


def _solve_square(mat: List[List[Fraction]], rhs: List[Fraction]
                  ) -> List[Fraction]:
    n = len(mat)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            raise DiagramError("singular relation matrix in grading solve")
        a[col], a[piv] = a[piv], a[col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / a[col][col]
                for cc in range(col, n + 1):
                    a[r][cc] -= f * a[col][cc]
    return [a[i][n] / a[i][i] for i in range(n)]


def delta_i_obstruction(i_plus: IGradingVector,
                        i_minus: IGradingVector) -> bool:
    """True when intersection positivity rules the differential term out."""
    return any(v < 0 for v in (i_plus - i_minus).values)


def energy_lower_bound(delta_i: IGradingVector,
                       areas: Sequence[Fraction]) -> Fraction:
    """Least energy any curve with these fiber intersections can carry."""
    total = Fraction(0)
    for v, area in zip(delta_i.values, areas):
        if v > 0:
            total += v * Fraction(area)
    return total


def bubbling_faces(d: ResolvedDiagram) -> List[Tuple[Face, Tuple[int, ...]]]:
    """Faces whose corners are all positive, with their ccw corner words.

    After +1 surgery on the components meeting such a face, a family of
    holomorphic planes of algebraic count +-1 bounds the orbit named by the
    corner word; faces touching components of other coefficients are
    skipped.
    """
    out = []
    for f in d.faces_list:
        if not f.all_positive():
            continue
        comps = set()
        for cid in f.corner_chords():
            ch = d.chord(cid)
            comps.add(ch.tail_comp)
            comps.add(ch.tip_comp)
        if any(d.surgery[i] != 1 for i in comps):
            continue
        word = canonical_rotation([cid for cid, _, _ in f.corners])
        out.append((f, word))
    return out
