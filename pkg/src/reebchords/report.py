"""Generator tables and differential-candidate filtering.

Assembles, per orbit word within bounds, everything the chain-level analysis
needs (grading, homology class, action, hyperbolic type, intersection
grading), then filters candidate targets of the degree-1-down differential
with every available obstruction.  Counts are only ever asserted where a
bubbling face forces them; all other survivors stay "count unknown".
"""

from fractions import Fraction
from typing import List, Optional, Tuple

from .diagram import ResolvedDiagram
from .dynamics import hyperbolic_type, is_bad
from .homology import H1Presentation, orbit_class_monomial
from .indices import c1_class, cz_integral
from .quiver import (IGradingVector, bubbling_faces,
                     effective_fiber_vector, i_grading)
from .words import CyclicWord, enumerate_orbit_words


class GeneratorRecord(object):
    """One orbit word with its chain-level invariants."""

    def __init__(self, d: ResolvedDiagram, h1: H1Presentation, w: CyclicWord):
        self.word = w
        self.cz = cz_integral(d, w)
        self.degree = self.cz - 1
        self.orbit_class = orbit_class_monomial(d, h1, w)
        self.action = w.action()
        self.hyperbolic, self.threshold = hyperbolic_type(d, w)
        self.bad = is_bad(d, w)
        self.good = not self.bad
        self.igrading: Optional[IGradingVector] = None
        if h1.finite and self.orbit_class.is_zero():
            self.igrading = i_grading(d, h1, [(w, None)])

    def __repr__(self):
        flag = "good" if self.good else "bad"
        return f"<{self.word} cz={self.cz} {flag}>"


def generators(d: ResolvedDiagram, h1: H1Presentation,
               max_len: Optional[int] = None,
               max_action: Optional[Fraction] = None,
               epsilon: Optional[Fraction] = None) -> List[GeneratorRecord]:
    """All orbit words within bounds, bad ones included and flagged."""
    words = enumerate_orbit_words(d, max_len=max_len, max_action=max_action,
                                  epsilon=epsilon)
    return [GeneratorRecord(d, h1, w) for w in words]


class Candidate(object):
    """A surviving monomial in the filtered differential of a generator."""

    def __init__(self, factors: Tuple[CyclicWord, ...], label: str,
                 faces=None, sign_ambiguous=False, trail=None):
        self.factors = factors           # () is the constant term 1
        self.label = label
        self.faces = faces or []         # bubbling witnesses, constant term only
        self.sign_ambiguous = sign_ambiguous
        self.trail = trail or {}

    def is_constant(self):
        return not self.factors

    def __repr__(self):
        name = "1" if self.is_constant() else \
            "".join(f"({w})" for w in self.factors)
        return f"Candidate[{name}: {self.label}]"


class CandidateReport(object):
    def __init__(self, source: GeneratorRecord, survivors: List[Candidate],
                 z_graded: bool, warning: Optional[str] = None):
        self.source = source
        self.survivors = survivors
        self.z_graded = z_graded
        self.warning = warning


def _pool_length_cap(d: ResolvedDiagram, target_degree: int) -> Optional[int]:
    """Largest word length a degree <= target generator can have, if bounded.

    Every letter of a word adds at least min_step to its index, where
    min_step ranges over rot + [c=+1] of the composable pairs; a positive
    min_step caps the length of candidate factors.
    """
    min_step = None
    for c1 in d.chords:
        for c2 in d.chords:
            if d.surgery[c1.tail_comp] == 0 or d.surgery[c1.tip_comp] == 0:
                continue
            if d.surgery[c2.tail_comp] == 0 or d.surgery[c2.tip_comp] == 0:
                continue
            if not d.composable(c1.id, c2.id):
                continue
            r = d.capping_path(c1.id, c2.id, "eta").theta_half_pi // 2
            if d.surgery[c1.tip_comp] == 1:
                r += 1
            min_step = r if min_step is None else min(min_step, r)
    if min_step is None or min_step <= 0:
        return None
    return max(1, (target_degree + 1) // min_step)


def differential_candidates(g: GeneratorRecord, d: ResolvedDiagram,
                            h1: H1Presentation,
                            epsilon: Fraction,
                            max_pool_len: Optional[int] = None
                            ) -> CandidateReport:
    """Monomials not excluded by grading, homology, action, or intersections.

    Searches products of good generators of total degree one below g, equal
    homology class, and word action under g's with the 3*eps*wordlength
    safety slack, then drops anything whose intersection-grading difference
    has a negative entry.  Constant terms get annotated with the bubbling
    faces whose corner word is g's word.
    """
    epsilon = Fraction(epsilon)
    slack = 3 * epsilon
    z_graded = True
    warning = None
    if any(v != 0 for v in c1_class(d)) or not (
            h1.finite or g.orbit_class.is_zero()):
        z_graded = False
        warning = ("degree grading is only mod 2 here; filtering by parity")
    target_degree = g.degree - 1
    budget = g.action + slack * len(g.word.chords)
    # without a positive per-letter index step the search is action-bounded
    # only, which stays finite but can be slow on large-budget inputs
    pool_len = _pool_length_cap(d, target_degree) if z_graded else None
    if max_pool_len is not None:
        pool_len = max_pool_len if pool_len is None else min(pool_len,
                                                             max_pool_len)
    pool_words = enumerate_orbit_words(d, max_len=pool_len,
                                       max_action=budget, epsilon=epsilon)
    cache = getattr(h1, "_record_cache", None)
    if cache is None:
        cache = h1._record_cache = {}
    pool = []
    for w in pool_words:
        if w.chords not in cache:
            cache[w.chords] = GeneratorRecord(d, h1, w)
        pool.append(cache[w.chords])
    pool = [r for r in pool if r.good]
    if z_graded:
        pool = [r for r in pool if r.degree <= target_degree]
    pool.sort(key=lambda r: (r.action, r.word.chords))
    use_igrading = h1.finite and g.orbit_class.is_zero()

    found: List[Candidate] = []
    chosen: List[GeneratorRecord] = []

    def effective(r: GeneratorRecord) -> Fraction:
        return r.action - slack * len(r.word.chords)

    def consider():
        degree = sum(r.degree for r in chosen)
        if z_graded:
            if degree != target_degree:
                return
        else:
            if (degree - target_degree) % 2 != 0:
                return
        cls = g.orbit_class
        total = None
        for r in chosen:
            total = r.orbit_class if total is None else total + r.orbit_class
        if total is None:
            if not cls.is_zero():
                return
        elif total != cls:
            return
        odd_seen = set()
        for r in chosen:
            if r.degree % 2 != 0:
                if r.word.chords in odd_seen:
                    return          # odd generators square to zero
                odd_seen.add(r.word.chords)
        trail = {"degree": degree, "class": tuple(cls.reduced),
                 "action": sum((r.action for r in chosen), Fraction(0))}
        if use_igrading:
            delta = [Fraction(v) - a for v, a in
                     zip(g.igrading.values, acc_i)]
            if any(v.denominator != 1 for v in delta):
                return          # fractional: the candidate is not class-zero
            trail["delta_i"] = tuple(int(v) for v in delta)
            if any(v < 0 for v in delta):
                return
        if chosen:
            found.append(Candidate(
                tuple(r.word for r in chosen),
                "unobstructed, count unknown", trail=trail))
        else:
            faces = [f for f, word in bubbling_faces(d)
                     if word == g.word.chords]
            if faces:
                label = "constant term, count +-1 (bubbling face witness)"
            else:
                label = "unobstructed, count unknown"
            found.append(Candidate((), label, faces=faces,
                                   sign_ambiguous=len(faces) > 1,
                                   trail=trail))

    min_pool_degree = min((r.degree for r in pool), default=0)
    n_faces = len(d.faces_list)
    acc_i = [Fraction(0)] * n_faces
    fiber = {}
    if use_igrading:
        for r in pool:
            fiber[r.word.chords] = effective_fiber_vector(d, h1, r.word)

    def search(start: int, budget_left: Fraction, degree_sum: int):
        consider()
        if z_graded and min_pool_degree >= 0 and degree_sum >= target_degree:
            extendable = degree_sum == target_degree and min_pool_degree == 0
            if not extendable:
                return
        for i in range(start, len(pool)):
            r = pool[i]
            cost = effective(r)
            if cost >= budget_left:
                continue
            if z_graded and min_pool_degree >= 0 and \
                    degree_sum + r.degree > target_degree:
                continue
            chosen.append(r)
            if use_igrading:
                vec = fiber[r.word.chords]
                for k in range(n_faces):
                    acc_i[k] += vec[k]
            search(i, budget_left - cost, degree_sum + r.degree)
            if use_igrading:
                vec = fiber[r.word.chords]
                for k in range(n_faces):
                    acc_i[k] -= vec[k]
            chosen.pop()

    search(0, budget, 0)
    return CandidateReport(g, found, z_graded, warning)
