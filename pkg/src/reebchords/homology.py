"""First homology of the surgered manifold and homology classes of orbits.

The presentation matrix has the framing coefficients tb + c on the diagonal
and linking numbers off it, over the surgered components.  Orbit classes
come both from the crossing-monomial formula and from exact linking numbers
of push-out curves; both are reduced to a normal form in the cokernel via
Smith normal form with unimodular transforms.
"""

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .diagram import DiagramError, ResolvedDiagram
from .words import CyclicWord, PushOutCurve


def smith_normal_form(m: Sequence[Sequence[int]]):
    """(D, U, V) with U m V = D diagonal, U and V unimodular."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(map(int, r)) for r in m]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i, j, k):         # row_i += k * row_j
        for t in range(cols):
            a[i][t] += k * a[j][t]
        for t in range(rows):
            u[i][t] += k * u[j][t]

    def col_op(i, j, k):         # col_i += k * col_j
        for t in range(rows):
            a[t][i] += k * a[t][j]
        for t in range(cols):
            v[t][i] += k * v[t][j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for t in range(rows):
            a[t][i], a[t][j] = a[t][j], a[t][i]
        for t in range(cols):
            v[t][i], v[t][j] = v[t][j], v[t][i]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    for k in range(min(rows, cols)):
        while True:
            piv = None
            for i in range(k, rows):
                for j in range(k, cols):
                    if a[i][j] != 0 and (piv is None or
                                         abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            row_swap(k, piv[0])
            col_swap(k, piv[1])
            if any(a[i][k] % a[k][k] for i in range(k + 1, rows)) or \
               any(a[k][j] % a[k][k] for j in range(k + 1, cols)):
                for i in range(k + 1, rows):
                    if a[i][k] % a[k][k]:
                        row_op(i, k, -(a[i][k] // a[k][k]))
                for j in range(k + 1, cols):
                    if a[k][j] % a[k][k]:
                        col_op(j, k, -(a[k][j] // a[k][k]))
                continue        # a smaller pivot now exists
            for i in range(k + 1, rows):
                if a[i][k]:
                    row_op(i, k, -(a[i][k] // a[k][k]))
            for j in range(k + 1, cols):
                if a[k][j]:
                    col_op(j, k, -(a[k][j] // a[k][k]))
            bad = None
            for i in range(k + 1, rows):
                for j in range(k + 1, cols):
                    if a[i][j] % a[k][k]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_op(k, bad, 1)   # drag a non-divisible entry into row k
        if k < min(rows, cols) and a[k][k] < 0:
            row_negate(k)
    return a, u, v


def _det(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for i in range(n):
        piv = None
        for r in range(i, n):
            if a[r][i] != 0:
                piv = r
                break
        if piv is None:
            return 0
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            det = -det
        det *= a[i][i]
        for r in range(i + 1, n):
            f = a[r][i] / a[i][i]
            for c in range(i, n):
                a[r][c] -= f * a[i][c]
    assert det.denominator == 1
    return int(det)


class H1Presentation(object):
    """Meridian presentation of the first homology after surgery."""

    def __init__(self, d: ResolvedDiagram):
        self.diagram = d
        self.surgered = [i for i in range(len(d.components))
                         if d.surgery[i] != 0]
        n = len(self.surgered)
        self.matrix = [[0] * n for _ in range(n)]
        for a, i in enumerate(self.surgered):
            for b, j in enumerate(self.surgered):
                if i == j:
                    self.matrix[a][b] = d.tb[i] + d.surgery[i]
                else:
                    self.matrix[a][b] = d.linking[i][j]
        self.snf, self.u, self.v = smith_normal_form(self.matrix)
        if abs(_det(self.u)) != 1 or abs(_det(self.v)) != 1:
            raise DiagramError("SNF transforms are not unimodular")
        self.diagonal = [self.snf[k][k] for k in range(n)]
        for x, y in zip(self.diagonal, self.diagonal[1:]):
            if (x == 0 and y != 0) or (x != 0 and y % x != 0):
                raise DiagramError(f"SNF divisibility fails: {self.diagonal}")
        self.torsion = [x for x in self.diagonal if x not in (0, 1)]
        self.free_rank = sum(1 for x in self.diagonal if x == 0)
        self.finite = self.free_rank == 0

    def reduce(self, vector: Sequence) -> Tuple[int, ...]:
        """Normal form of a meridian vector in the cokernel coordinates."""
        n = len(self.surgered)
        if len(vector) != n:
            raise ValueError("vector length does not match presentation")
        coords = []
        for i in range(n):
            s = sum(self.u[i][j] * vector[j] for j in range(n))
            dgl = self.diagonal[i]
            coords.append(int(s) % dgl if dgl != 0 else int(s))
        return tuple(coords)

    def is_zero(self, vector: Sequence) -> bool:
        return all(c == 0 for c in self.reduce(vector))

    def group_description(self) -> str:
        parts = [f"Z/{x}" for x in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def h1_presentation(d: ResolvedDiagram) -> H1Presentation:
    return H1Presentation(d)


class OrbitClass(object):
    """Meridian vector of an orbit with its cokernel normal form."""

    def __init__(self, h1: H1Presentation, vector: Sequence[int]):
        self.vector = tuple(int(v) for v in vector)
        self.reduced = h1.reduce(self.vector)
        self.h1 = h1

    def __eq__(self, other):
        return isinstance(other, OrbitClass) and self.reduced == other.reduced

    def __hash__(self):
        return hash(self.reduced)

    def __add__(self, other):
        return OrbitClass(self.h1, [a + b for a, b in
                                    zip(self.vector, other.vector)])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.reduced)

    def __repr__(self):
        return f"OrbitClass{self.vector}"


def crossing_monomials(d: ResolvedDiagram):
    """(cross_j per chord, cross_{j1,j2} per composable pair), mu coefficients.

    Vectors live over all components.  Chord monomials are half-integral in
    general and exactly integral on the surgered sublink.  Memoized per
    diagram.
    """
    cached = getattr(d, "_crossing_monomials", None)
    if cached is not None:
        return cached
    n = len(d.components)
    singles: Dict[int, List[Fraction]] = {}
    for c in d.chords:
        vec = [Fraction(0)] * n
        vec[c.tail_comp] += Fraction(d.surgery[c.tail_comp] + c.sign, 2)
        vec[c.tip_comp] += Fraction(d.surgery[c.tip_comp] + c.sign, 2)
        singles[c.id] = vec
    pairs: Dict[Tuple[int, int], List[int]] = {}
    for c1 in d.chords:
        for c2 in d.chords:
            if not d.composable(c1.id, c2.id):
                continue
            cap = d.capping_path(c1.id, c2.id, "eta")
            vec = [0] * n
            for cid, role in cap.interior:
                ch = d.chord(cid)
                if role == "tail":
                    vec[ch.tip_comp] += ch.sign
                else:
                    vec[ch.tail_comp] += ch.sign
            pairs[(c1.id, c2.id)] = vec
    d._crossing_monomials = (singles, pairs)
    return singles, pairs


def orbit_class_monomial(d: ResolvedDiagram, h1: H1Presentation,
                         w: CyclicWord) -> OrbitClass:
    """Homology class of the orbit of w from its crossing monomials."""
    n = len(d.components)
    total = [Fraction(0)] * n
    singles, pairs = crossing_monomials(d)
    for j1, j2 in w.pairs():
        for i in range(n):
            total[i] += singles[j1][i] + pairs[(j1, j2)][i]
    vec = []
    for i in range(n):
        half = total[i] / 2
        if half.denominator != 1:
            raise DiagramError(f"non-integral class for {w}: {total}")
        if i in h1.surgered:
            vec.append(int(half))
        # meridians of unsurgered components still bound their disks, so
        # their coefficients are null-homologous and drop out
    return OrbitClass(h1, vec)


def orbit_class_pushout(d: ResolvedDiagram, h1: H1Presentation,
                        p: PushOutCurve) -> OrbitClass:
    """Homology class of a pushed-out orbit from exact linking numbers."""
    vec = []
    for i in h1.surgered:
        lk = p.linking[i]
        if Fraction(lk).denominator != 1:
            raise DiagramError("half-integral linking number in push-out")
        vec.append(int(lk))
    return OrbitClass(h1, vec)


def chord_class_relative(d: ResolvedDiagram, h1: H1Presentation,
                         w) -> Tuple[Fraction, ...]:
    """Relative meridian class of a surviving zero-sublink chord word.

    Computed as the linking vector of the open push-out rel its endpoints:
    capping-arc passes between consecutive letters plus the standard local
    count at each chord.  Entries can be half-integral, reflecting paths
    that end on the zero sublink.
    """
    chords = w.chords
    counts = {i: Fraction(0) for i in h1.surgered}
    for a, b in zip(chords, chords[1:]):
        cap = d.capping_path(a, b, "eta")
        for cid, role in cap.interior:
            ch = d.chord(cid)
            comp = ch.tip_comp if role == "tail" else ch.tail_comp
            if comp in counts:
                counts[comp] += ch.sign
    for j in chords:
        ch = d.chord(j)
        for comp, coeff in ((ch.tail_comp, d.surgery[ch.tail_comp]),
                            (ch.tip_comp, d.surgery[ch.tip_comp])):
            if comp in counts:
                counts[comp] += Fraction(coeff + ch.sign, 2)
    return tuple(counts[i] / 2 for i in h1.surgered)
