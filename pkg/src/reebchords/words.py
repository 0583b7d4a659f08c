"""Words of chords: closed-orbit and surgered-chord enumeration, push-outs.

After contact surgery the closed Reeb trajectories are named by cyclic words
of composable chords on the surgered sublink, and the surviving chords of a
zero-coefficient sublink by open words.  This module enumerates both within
length/action bounds, canonicalizes cyclic rotation, and builds the planar
push-out curves used for homology classes and intersection gradings.
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .diagram import DiagramError, ResolvedDiagram
from .geometry import offset_polyline, winding_number


class Word(object):
    """Composable (non-cyclic) sequence of chord ids."""

    def __init__(self, diagram: ResolvedDiagram, chords: Sequence[int]):
        if not chords:
            raise ValueError("empty word")
        self.diagram = diagram
        self.chords = tuple(int(c) for c in chords)
        for a, b in zip(self.chords, self.chords[1:]):
            if not diagram.composable(a, b):
                raise ValueError(f"chords r{a}, r{b} are not composable")

    def __len__(self):
        return len(self.chords)

    def __repr__(self):
        return "".join(f"r{c}" for c in self.chords)

    def action(self) -> Fraction:
        return sum((self.diagram.chord(c).action for c in self.chords),
                   Fraction(0))


def canonical_rotation(chords: Sequence[int]) -> Tuple[int, ...]:
    seq = tuple(chords)
    best = seq
    for k in range(1, len(seq)):
        rot = seq[k:] + seq[:k]
        if rot < best:
            best = rot
    return best


class CyclicWord(Word):
    """Cyclic word in canonical (lexicographically minimal) rotation.

    Cyclic words name closed trajectories, so they may only use chords of
    the surgered sublink.
    """

    def __init__(self, diagram: ResolvedDiagram, chords: Sequence[int]):
        seq = canonical_rotation(chords)
        super().__init__(diagram, seq)
        if not diagram.composable(self.chords[-1], self.chords[0]):
            raise ValueError(
                f"closing pair r{self.chords[-1]}, r{self.chords[0]} "
                f"not composable")
        for c in self.chords:
            ch = diagram.chord(c)
            if diagram.surgery[ch.tail_comp] == 0 \
                    or diagram.surgery[ch.tip_comp] == 0:
                raise ValueError(
                    f"chord r{c} touches an unsurgered component")

    def __eq__(self, other):
        return isinstance(other, CyclicWord) and self.chords == other.chords

    def __hash__(self):
        return hash(("cyc",) + self.chords)

    def __repr__(self):
        return "(" + "".join(f"r{c}" for c in self.chords) + ")"

    def pairs(self) -> List[Tuple[int, int]]:
        """Consecutive pairs including the closing one."""
        n = len(self.chords)
        return [(self.chords[k], self.chords[(k + 1) % n]) for k in range(n)]

    def rotations(self):
        n = len(self.chords)
        return [self.chords[k:] + self.chords[:k] for k in range(n)]


def canonical_cyclic(w: Word) -> CyclicWord:
    """Canonical representative of the cyclic class of a composable word."""
    return CyclicWord(w.diagram, w.chords)


def primitive_decomposition(w: CyclicWord) -> Tuple[CyclicWord, int]:
    """Write w = v^k with v primitive and k maximal."""
    seq = w.chords
    n = len(seq)
    for period in range(1, n + 1):
        if n % period != 0:
            continue
        if seq == seq[period:] + seq[:period]:
            return CyclicWord(w.diagram, seq[:period]), n // period
    raise AssertionError("unreachable")


def _surgered_chords(d: ResolvedDiagram) -> List[int]:
    out = []
    for c in d.chords:
        if d.surgery[c.tail_comp] != 0 and d.surgery[c.tip_comp] != 0:
            out.append(c.id)
    return out


def enumerate_orbit_words(d: ResolvedDiagram,
                          max_len: Optional[int] = None,
                          max_action: Optional[Fraction] = None,
                          epsilon: Optional[Fraction] = None
                          ) -> List[CyclicWord]:
    """All cyclic words of composable chords on the surgered sublink.

    Non-primitive words (multiple covers) are included; each class appears
    once, in canonical rotation.  With ``epsilon`` given, the action bound is
    relaxed by the 3*eps*wordlength slack so that every closed trajectory of
    true action below the bound is guaranteed to appear.
    """
    if not any(v != 0 for v in d.surgery.values()):
        raise ValueError("empty surgery locus: no orbits exist")
    if max_len is None and max_action is None:
        raise ValueError("need a length or action bound")
    chords = _surgered_chords(d)
    slack = 3 * epsilon if epsilon is not None else Fraction(0)
    if max_action is not None and slack > 0:
        min_act = min(d.chord(c).action for c in chords) if chords else None
        if min_act is not None and slack >= min_act:
            raise ValueError("epsilon too large for the action bound")

    def within(action: Fraction, length: int) -> bool:
        if max_len is not None and length > max_len:
            return False
        if max_action is not None and action > max_action + slack * length:
            return False
        return True

    out: List[CyclicWord] = []
    seq: List[int] = []

    def extend(action: Fraction):
        if seq and d.composable(seq[-1], seq[0]):
            if tuple(seq) == canonical_rotation(seq) and within(action, len(seq)):
                out.append(CyclicWord(d, seq))
        for c in chords:
            nxt_action = action + d.chord(c).action
            if not within(nxt_action, len(seq) + 1):
                continue
            if seq and not d.composable(seq[-1], c):
                continue
            # canonical words start with their minimal letter
            if seq and c < seq[0]:
                continue
            seq.append(c)
            extend(nxt_action)
            seq.pop()

    extend(Fraction(0))
    out.sort(key=lambda w: (len(w.chords), w.chords))
    return out


def enumerate_chord_words(d: ResolvedDiagram,
                          lambda0: Optional[Iterable[int]] = None,
                          max_len: Optional[int] = None,
                          max_action: Optional[Fraction] = None,
                          epsilon: Optional[Fraction] = None) -> List[Word]:
    """Words naming chords of the coefficient-0 sublink after surgery.

    The first chord starts on a component of ``lambda0`` (default: every
    component with coefficient 0), the last ends there, and all intermediate
    endpoints lie on the surgered sublink.
    """
    if lambda0 is None:
        lambda0 = {i for i, v in d.surgery.items() if v == 0}
    else:
        lambda0 = set(lambda0)
    if not lambda0:
        raise ValueError("empty zero-coefficient sublink")
    if any(d.surgery[i] != 0 for i in lambda0):
        raise ValueError("lambda0 must consist of coefficient-0 components")
    if max_len is None and max_action is None:
        raise ValueError("need a length or action bound")
    slack = 3 * epsilon if epsilon is not None else Fraction(0)

    def within(action, length):
        if max_len is not None and length > max_len:
            return False
        if max_action is not None and action > max_action + slack * length:
            return False
        return True

    out: List[Word] = []
    seq: List[int] = []

    def extend(action):
        if seq and d.chord(seq[-1]).tip_comp in lambda0:
            out.append(Word(d, seq))
        for c in d.chords:
            if not seq:
                if c.tail_comp not in lambda0:
                    continue
            else:
                if not d.composable(seq[-1], c.id):
                    continue
                if d.chord(seq[-1]).tip_comp in lambda0:
                    continue        # interior endpoints stay on the handles
            nxt = action + c.action
            if not within(nxt, len(seq) + 1):
                continue
            seq.append(c.id)
            extend(nxt)
            seq.pop()

    extend(Fraction(0))
    out.sort(key=lambda w: (len(w.chords), w.chords))
    return out


class OrbitString(object):
    """A side choice (capping arc or its opposite) for each step of a word."""

    def __init__(self, word: CyclicWord, sides: Sequence[str]):
        if len(sides) != len(word.chords):
            raise ValueError("need one side choice per composable pair")
        for s in sides:
            if s not in ("eta", "etabar"):
                raise ValueError(f"bad side {s!r}")
        self.word = word
        self.sides = tuple(sides)

    def __repr__(self):
        return "*".join(self.sides)


def all_orbit_strings(word: CyclicWord) -> List[OrbitString]:
    n = len(word.chords)
    out = []
    for mask in range(1 << n):
        sides = ["eta" if mask & (1 << k) == 0 else "etabar" for k in range(n)]
        out.append(OrbitString(word, sides))
    return out


class PushOutCurve(object):
    """Closed planar curve tracking an orbit pushed off the surgery handles.

    ``points`` is the closed polyline (offset capping arcs joined by short
    jumps at the chords); ``linking`` maps each component to the exact
    linking number of the pushed-out orbit with it.
    """

    def __init__(self, points, linking: Dict[int, Fraction], word, string):
        self.points = points
        self.linking = linking
        self.word = word
        self.string = string

    def winding(self, point) -> int:
        return winding_number(self.points, point)


def push_out(d: ResolvedDiagram, w: CyclicWord,
             s: Optional[OrbitString] = None,
             offset: Fraction = Fraction(1, 8)) -> PushOutCurve:
    """Homotope the orbit of w into the handle complement along s.

    The curve follows each chosen capping arc at a small offset: on the left
    of the component when its coefficient is +1, on the right when -1 (sides
    taken relative to the direction of travel).  Linking numbers combine the
    arc passes past chord endpoints with the standard local count at each
    chord of the word.
    """
    if s is None:
        s = OrbitString(w, ["eta"] * len(w.chords))
    pts: List = []
    counts: Dict[int, int] = {i: 0 for i in d.surgery}
    for k, (j1, j2) in enumerate(w.pairs()):
        side = s.sides[k]
        cap = d.capping_path(j1, j2, side)
        coeff = d.surgery[cap.component]
        if coeff == 0:
            raise ValueError(f"capping path of r{j1}r{j2} rides an "
                             f"unsurgered component")
        ride_side = "left" if coeff == 1 else "right"
        arc = offset_polyline(cap.points, ride_side, offset)
        for p in arc:
            if not pts or pts[-1] != p:
                pts.append(p)
        ride_sign = 1 if side == "eta" else -1
        for cid, role in cap.interior:
            ch = d.chord(cid)
            if role == "tail":
                counts[ch.tip_comp] += ride_sign * ch.sign
            else:
                counts[ch.tail_comp] += ride_sign * ch.sign
    n = len(w.chords)
    for k, j in enumerate(w.chords):
        ch = d.chord(j)
        c_tail = d.surgery[ch.tail_comp]
        c_tip = d.surgery[ch.tip_comp]
        if c_tail == 0 or c_tip == 0:
            raise ValueError(f"chord r{j} touches an unsurgered component")
        counts[ch.tail_comp] += (c_tail + ch.sign) // 2
        counts[ch.tip_comp] += (c_tip + ch.sign) // 2
        # side-dependent local terms: an opposite-side ride reaches the chord
        # across the other strand, trading one crossing with each component
        if s.sides[(k - 1) % n] == "etabar":      # ride into the tail
            counts[ch.tail_comp] -= c_tail
            counts[ch.tip_comp] -= ch.sign
        if s.sides[k] == "etabar":                # ride out of the tip
            counts[ch.tip_comp] -= c_tip
            counts[ch.tail_comp] -= ch.sign
    if pts[0] == pts[-1]:
        pts.pop()
    linking = {}
    for comp, tot in counts.items():
        if tot % 2 != 0:
            raise DiagramError(
                f"odd signed crossing count {tot} with component {comp}")
        linking[comp] = Fraction(tot, 2)
    return PushOutCurve(pts, linking, w, s)
