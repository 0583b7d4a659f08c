"""Front diagrams and their exact planar resolutions.

A front is an event sequence (left cusps, right cusps, crossings at 1-based
strand positions counted from the top).  ``resolve`` realizes it as oriented
closed polylines on the rational grid with every segment at a multiple of 45
degrees, one double point per crossing and per right cusp, and the height
function z recovered exactly as the line integral of y dx.  All downstream
data (crossing signs, actions, faces, areas, capping paths) is exact.

Template conventions:

* strand at stack position p runs at level y = -4p between events;
* a crossing realizes the descending strand with slope -1 (the strand that
  ends up on top) and the ascending strand with slope +1;
* a right cusp realizes the felled pair as a loop with a single double point
  whose horizontal stretch is a free rational parameter, solved per component
  so that the closed line integral of y dx vanishes identically.
"""

import json
import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .geometry import (
    OCTANT_VECTORS,
    Point,
    Segment,
    boxes_overlap,
    cross,
    merge_collinear,
    point_segment_distance_sq,
    polygon_signed_area,
    polyline_integral_y_dx,
    segment_intersection,
    sub,
    turn_octants,
    turning_number,
    winding_number,
)


class FrontError(ValueError):
    """Invalid input diagram (bad syntax, impossible event sequence...)."""


class DiagramError(RuntimeError):
    """Internal consistency failure of the planar realization."""


EVENT_RE = re.compile(r"^([LRX])(\d+)$")


def _coeff_value(val, what):
    if val == "+":
        return 1
    if val == "-":
        return -1
    try:
        return int(val)
    except (TypeError, ValueError):
        raise FrontError(f"bad {what} value {val!r}")


class FrontCode(object):
    """Validated event-sequence encoding of a Legendrian front.

    The constructor simulates the strand stack, traces the closed components
    and records which component each cusp and crossing touches.  Components
    are numbered 0-based in order of their first left cusp.
    """

    def __init__(self, events, orientations=None, surgery=None):
        self.events: List[Tuple[str, int]] = [(k, int(p)) for k, p in events]
        self._simulate()
        n = self.n_components
        self.orientations = {i: 1 for i in range(n)}
        for key, val in (orientations or {}).items():
            comp = int(key)
            if comp not in self.orientations:
                raise FrontError(f"orientation for unknown component {comp}")
            val = _coeff_value(val, "orientation")
            if val not in (1, -1):
                raise FrontError(f"orientation must be +1 or -1, got {val!r}")
            self.orientations[comp] = val
        self.surgery = {i: 0 for i in range(n)}
        for key, val in (surgery or {}).items():
            comp = int(key)
            if comp not in self.surgery:
                raise FrontError(f"surgery coefficient for unknown component {comp}")
            val = _coeff_value(val, "surgery coefficient")
            if val not in (1, -1, 0):
                raise FrontError(f"surgery coefficient must be +1, -1 or 0, got {val!r}")
            self.surgery[comp] = val

    def _simulate(self):
        stack: List[int] = []           # wire ids by position, top first
        births: Dict[int, Tuple[int, int, str]] = {}   # wid -> (event, sibling, role)
        deaths: Dict[int, Tuple[int, int]] = {}        # wid -> (event, partner)
        death_pairs: Dict[int, Tuple[int, int]] = {}   # event -> (upper, lower)
        next_wid = 0
        n_cusps = 0
        n_crossings = 0
        for idx, (kind, pos) in enumerate(self.events):
            if kind == "L":
                if not 1 <= pos <= len(stack) + 1:
                    raise FrontError(
                        f"event {idx}: left cusp at position {pos} with "
                        f"{len(stack)} strands")
                u, dn = next_wid, next_wid + 1
                next_wid += 2
                births[u] = (idx, dn, "u")
                births[dn] = (idx, u, "d")
                stack[pos - 1:pos - 1] = [u, dn]
                n_cusps += 1
            elif kind == "X":
                if not 1 <= pos <= len(stack) - 1:
                    raise FrontError(
                        f"event {idx}: crossing at position {pos} with "
                        f"{len(stack)} strands")
                stack[pos - 1], stack[pos] = stack[pos], stack[pos - 1]
                n_crossings += 1
            elif kind == "R":
                if not 1 <= pos <= len(stack) - 1:
                    raise FrontError(
                        f"event {idx}: right cusp at position {pos} with "
                        f"{len(stack)} strands")
                w1, w2 = stack[pos - 1], stack[pos]
                deaths[w1] = (idx, w2)
                deaths[w2] = (idx, w1)
                death_pairs[idx] = (w1, w2)
                del stack[pos - 1:pos + 1]
                n_cusps += 1
            else:
                raise FrontError(f"unknown event kind {kind!r}")
        if stack:
            raise FrontError(f"{len(stack)} strands still open after all events")
        self._births = births
        self._deaths = deaths
        self._death_pairs = death_pairs
        # trace components: alternate death-joins and birth-joins
        comp_of_wire: Dict[int, int] = {}
        comps: List[List[int]] = []
        for start in sorted(births):
            if start in comp_of_wire:
                continue
            cid = len(comps)
            cycle = []
            wid = start
            while wid not in comp_of_wire:
                comp_of_wire[wid] = cid
                cycle.append(wid)
                partner = deaths[wid][1]
                comp_of_wire[partner] = cid
                cycle.append(partner)
                wid = births[partner][1]
            comps.append(cycle)
        self.n_components = len(comps)
        self.component_of_wire = comp_of_wire
        self.n_cusps = n_cusps
        self.n_crossings = n_crossings
        self.n_left_cusps = sum(1 for k, _ in self.events if k == "L")
        self.n_right_cusps = sum(1 for k, _ in self.events if k == "R")

    def summary(self):
        return {
            "components": self.n_components,
            "cusps": self.n_cusps,
            "left_cusps": self.n_left_cusps,
            "right_cusps": self.n_right_cusps,
            "crossings": self.n_crossings,
            "surgery": dict(self.surgery),
            "orientations": dict(self.orientations),
        }


def _parse_assoc(body: str, what: str) -> Dict[int, int]:
    body = body.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise FrontError(f"bad {what} block: {body!r}")
    out: Dict[int, int] = {}
    inner = body[1:-1].strip()
    if not inner:
        return out
    for item in inner.split(","):
        if ":" not in item:
            raise FrontError(f"bad {what} entry {item!r}")
        key, val = item.split(":", 1)
        key = key.strip()
        val = val.strip()
        if not key.lstrip("-").isdigit():
            raise FrontError(f"bad component id {key!r}")
        if val == "+":
            ival = 1
        elif val == "-":
            ival = -1
        else:
            try:
                ival = int(val)
            except ValueError:
                raise FrontError(f"bad {what} value {val!r}")
        out[int(key)] = ival
    return out


def parse_front(text) -> FrontCode:
    """Parse a front from grammar text or its JSON-style equivalent.

    Text form: ``L1,L3,X2,X2,X2,R2,R1 / surgery {0:+1} / orientations {0:+}``.
    A dict (or JSON object string) with keys ``events``, ``orientations``,
    ``surgery`` is accepted as the structured equivalent.
    """
    if isinstance(text, dict):
        data = text
    else:
        text = text.strip()
        if text.startswith("{"):
            try:
                data = json.loads(text)
            except json.JSONDecodeError as exc:
                raise FrontError(f"bad JSON front: {exc}")
        else:
            data = None
    if data is not None:
        events = []
        for tok in data.get("events", []):
            if isinstance(tok, str):
                m = EVENT_RE.match(tok.strip())
                if not m:
                    raise FrontError(f"bad event token {tok!r}")
                events.append((m.group(1), int(m.group(2))))
            else:
                events.append((tok[0], int(tok[1])))
        return FrontCode(events, data.get("orientations"), data.get("surgery"))

    parts = [p.strip() for p in text.split("/")]
    if not parts or not parts[0]:
        raise FrontError("empty event list")
    events = []
    for tok in parts[0].split(","):
        m = EVENT_RE.match(tok.strip())
        if not m:
            raise FrontError(f"bad event token {tok!r}")
        events.append((m.group(1), int(m.group(2))))
    orientations = None
    surgery = None
    for part in parts[1:]:
        if not part:
            continue
        if part.startswith("surgery"):
            surgery = _parse_assoc(part[len("surgery"):], "surgery")
        elif part.startswith("orientations"):
            orientations = _parse_assoc(part[len("orientations"):], "orientations")
        else:
            raise FrontError(f"unknown section {part!r}")
    return FrontCode(events, orientations, surgery)


# ---------------------------------------------------------------------------
# geometric realization


class _Wire(object):
    def __init__(self, wid):
        self.wid = wid
        self.points: List[Point] = []
        self.level = None
        self.cur_x = None

    def extend_to(self, x):
        if x > self.cur_x:
            self.points.append((Fraction(x), Fraction(self.level)))
            self.cur_x = Fraction(x)

    def append(self, x, y):
        self.points.append((Fraction(x), Fraction(y)))
        self.cur_x = Fraction(x)
        self.level = Fraction(y)


def _build_wires(front: FrontCode, stretches: Dict[int, Fraction],
                 spacings: Optional[Dict[int, Fraction]] = None):
    """Lay out all wires; returns (wires, slab x-range per event).

    ``stretches`` widens the loop of a right-cusp event; ``spacings`` adds
    extra horizontal room after an event.  Both leave all strand levels
    fixed, so every closure integral and crossing z-gap is affine in them.
    """
    spacings = spacings or {}
    wires: Dict[int, _Wire] = {}
    stack: List[_Wire] = []
    slabs: List[Tuple[Fraction, Fraction]] = []
    x = Fraction(0)
    next_wid = 0
    for idx, (kind, pos) in enumerate(front.events):
        sx = x
        for w in stack:
            w.extend_to(sx)
        if kind == "L":
            width = Fraction(16)
            for p in range(pos - 1, len(stack)):
                w = stack[p]
                w.append(sx + 8, w.level - 8)
                w.extend_to(sx + 16)
            lu = -4 * pos
            u = _Wire(next_wid)
            dn = _Wire(next_wid + 1)
            next_wid += 2
            cusp = (sx + 10, Fraction(lu - 2))
            u.points.append((Fraction(cusp[0]), Fraction(cusp[1])))
            u.append(sx + 12, lu)
            u.extend_to(sx + 16)
            dn.points.append((Fraction(cusp[0]), Fraction(cusp[1])))
            dn.append(sx + 12, lu - 4)
            dn.extend_to(sx + 16)
            wires[u.wid] = u
            wires[dn.wid] = dn
            stack[pos - 1:pos - 1] = [u, dn]
        elif kind == "X":
            width = Fraction(8)
            w1, w2 = stack[pos - 1], stack[pos]
            a = w1.level
            w1.extend_to(sx)
            w1.append(sx + 2, a)
            w1.append(sx + 6, a - 4)
            w1.extend_to(sx + 8)
            w2.append(sx + 2, a - 4)
            w2.append(sx + 6, a)
            w2.extend_to(sx + 8)
            stack[pos - 1], stack[pos] = w2, w1
        else:  # R
            wst = stretches.get(idx, Fraction(2))
            width = Fraction(20) + wst
            w1, w2 = stack[pos - 1], stack[pos]
            a = w1.level
            w1.append(sx + 6, a)
            w1.append(sx + 9, a - 3)
            if wst > 0:
                w1.append(sx + 9 + wst, a - 3)
            w1.append(sx + 10 + wst, a - 2)
            w1.append(sx + 10 + wst, a)
            w1.append(sx + 10, a)
            w1.append(sx + 6, a - 4)
            w1.append(sx, a - 4)
            for p in range(pos + 1, len(stack)):
                w = stack[p]
                w.extend_to(sx + 12 + wst)
                w.append(sx + 20 + wst, w.level + 8)
            del stack[pos - 1:pos + 1]
        slabs.append((sx, sx + width))
        x = sx + width + 4 + spacings.get(idx, Fraction(0))
    return wires, slabs


def _assemble_components(front: FrontCode, wires) -> List[List[Point]]:
    cycles: List[List[Point]] = []
    seen = set()
    order = []
    for start in sorted(front._births):
        if start in seen:
            continue
        pts: List[Point] = []
        wid = start
        forward = True
        while True:
            seen.add(wid)
            chunk = wires[wid].points if forward else wires[wid].points[::-1]
            if pts and pts[-1] == chunk[0]:
                pts.extend(chunk[1:])
            else:
                pts.extend(chunk)
            if forward:
                wid = front._deaths[wid][1]
            else:
                wid = front._births[wid][1]
            forward = not forward
            if wid == start and forward:
                break
        if pts[0] == pts[-1]:
            pts.pop()
        cycles.append(merge_collinear(pts))
        order.append(front.component_of_wire[start])
    # births are sorted, so cycles already come out in component order
    if order != sorted(order):
        raise DiagramError("component assembly out of order")
    return cycles


class ChordRecord(object):
    """A double point of the resolved diagram (one Reeb chord)."""

    def __init__(self, cid, point, sign, tail_comp, tip_comp, action,
                 tail_loc, tip_loc, over_dir, under_dir, event_index):
        self.id = cid
        self.point = point
        self.sign = sign
        self.tail_comp = tail_comp      # l^-: component of the low strand
        self.tip_comp = tip_comp        # l^+: component of the high strand
        self.action = action
        self.tail_loc = tail_loc        # (segment index, parameter) on tail_comp
        self.tip_loc = tip_loc
        self.over_dir = over_dir        # travel octant of the high strand
        self.under_dir = under_dir
        self.event_index = event_index

    def __repr__(self):
        return f"r{self.id}"


class Face(object):
    """Bounded complementary region with its corner data."""

    def __init__(self, fid, corners, area, boundary, basepoint=None):
        self.id = fid
        self.corners = corners          # [(chord id, quadrant, sign)] ccw
        self.area = area
        self.boundary = boundary        # ccw point cycle
        self.basepoint = basepoint

    def corner_chords(self):
        return [c for c, _, _ in self.corners]

    def all_positive(self):
        return all(s == 1 for _, _, s in self.corners)

    def __repr__(self):
        return f"Face({self.id}, corners={self.corners})"


QUADRANT_NAMES = {(1, 0): "E", (0, 1): "N", (-1, 0): "W", (0, -1): "S"}


class ResolvedDiagram(object):
    """Exact polyline realization of a front with all derived chord data."""

    def __init__(self, front: FrontCode, components: List[List[Point]],
                 slabs, z_shifts: Optional[List[Fraction]] = None):
        self.front = front
        self.surgery = dict(front.surgery)
        self.components = components
        self._slabs = slabs
        # the height function of each component is defined up to a constant;
        # these are the constants the template solver chose
        self.z_shifts = z_shifts or [Fraction(0)] * len(components)
        self._analyze()

    # -- construction ------------------------------------------------------

    def _analyze(self):
        self._check_closure()
        self._component_segments()
        self._find_chords()
        self._classical()
        self._build_faces()
        self._pick_basepoints()

    def _check_closure(self):
        for i, cyc in enumerate(self.components):
            res = polyline_integral_y_dx(cyc, closed=True)
            if res != 0:
                raise DiagramError(
                    f"component {i} closure defect: integral y dx = {res}")

    def _component_segments(self):
        self.segments: List[List[Segment]] = []
        self.z_at_vertex: List[List[Fraction]] = []
        self.cheb_len: List[List[Fraction]] = []   # cumulative per vertex
        for cyc in self.components:
            segs = [Segment(cyc[i], cyc[(i + 1) % len(cyc)])
                    for i in range(len(cyc))]
            self.segments.append(segs)
            zs = [Fraction(0)]
            cl = [Fraction(0)]
            for s in segs:
                zs.append(zs[-1] + (s.a[1] + s.b[1]) * (s.b[0] - s.a[0]) / 2)
                cl.append(cl[-1] + max(abs(s.b[0] - s.a[0]),
                                       abs(s.b[1] - s.a[1])))
            if zs[-1] != 0:
                raise DiagramError("z does not close up along component")
            self.z_at_vertex.append(zs[:-1])
            self.cheb_len.append(cl)

    def _z_at(self, comp, seg_idx, point) -> Fraction:
        s = self.segments[comp][seg_idx]
        z0 = self.z_shifts[comp] + self.z_at_vertex[comp][seg_idx]
        return z0 + (s.a[1] + point[1]) * (point[0] - s.a[0]) / 2

    def _param_at(self, comp, seg_idx, point) -> Fraction:
        s = self.segments[comp][seg_idx]
        t = s.param_of(point)
        step = max(abs(s.b[0] - s.a[0]), abs(s.b[1] - s.a[1]))
        return self.cheb_len[comp][seg_idx] + t * step

    def _find_chords(self):
        hits: Dict[Point, List[Tuple[int, int]]] = {}
        all_segs = [(ci, si, s)
                    for ci, segs in enumerate(self.segments)
                    for si, s in enumerate(segs)]
        for a in range(len(all_segs)):
            ci1, si1, s1 = all_segs[a]
            for b in range(a + 1, len(all_segs)):
                ci2, si2, s2 = all_segs[b]
                if ci1 == ci2 and (si1 == si2 or (si1 - si2) % len(
                        self.segments[ci1]) in (1, len(self.segments[ci1]) - 1)):
                    continue
                if not boxes_overlap(s1, s2):
                    continue
                p = segment_intersection(s1, s2)
                if p is None:
                    continue
                for (ci, si, s) in ((ci1, si1, s1), (ci2, si2, s2)):
                    t = s.param_of(p)
                    if not 0 < t < 1:
                        raise DiagramError(
                            f"non-transverse contact at {p} on component {ci}")
                hits.setdefault(p, []).append((ci1, si1))
                hits.setdefault(p, []).append((ci2, si2))
        chords = []
        for p, branches in hits.items():
            if len(branches) != 2:
                raise DiagramError(f"triple point at {p}")
            (c1, s1), (c2, s2) = branches
            o1 = self.segments[c1][s1].octant
            o2 = self.segments[c2][s2].octant
            up = {1, 5}      # slope +1 travel octants
            down = {3, 7}    # slope -1
            if o1 in down and o2 in up:
                over, under = (c1, s1), (c2, s2)
            elif o2 in down and o1 in up:
                over, under = (c2, s2), (c1, s1)
            else:
                raise DiagramError(
                    f"crossing at {p} violates good position "
                    f"(octants {o1}, {o2})")
            z_over = self._z_at(over[0], over[1], p)
            z_under = self._z_at(under[0], under[1], p)
            action = z_over - z_under
            if action <= 0:
                raise DiagramError(
                    f"over/under assignment inconsistent with z at {p} "
                    f"(action {action})")
            ov = OCTANT_VECTORS[self.segments[over[0]][over[1]].octant]
            uv = OCTANT_VECTORS[self.segments[under[0]][under[1]].octant]
            sign = 1 if cross(ov, uv) > 0 else -1
            ev = self._event_of(p)
            chords.append(ChordRecord(
                None, p, sign,
                tail_comp=under[0], tip_comp=over[0], action=action,
                tail_loc=(under[1], self._param_at(under[0], under[1], p)),
                tip_loc=(over[1], self._param_at(over[0], over[1], p)),
                over_dir=self.segments[over[0]][over[1]].octant,
                under_dir=self.segments[under[0]][under[1]].octant,
                event_index=ev))
        chords.sort(key=lambda c: c.event_index)
        expected = [i for i, (k, _) in enumerate(self.front.events)
                    if k in ("X", "R")]
        if [c.event_index for c in chords] != expected:
            raise DiagramError(
                f"chord/event mismatch: {[c.event_index for c in chords]} "
                f"vs {expected}")
        for i, c in enumerate(chords):
            c.id = i + 1
        self.chords = chords

    def _event_of(self, p: Point) -> int:
        for idx, (sx, ex) in enumerate(self._slabs):
            if sx < p[0] < ex:
                return idx
        raise DiagramError(f"crossing at {p} outside every event slab")

    def _classical(self):
        n = len(self.components)
        self.tb = {i: 0 for i in range(n)}
        self.linking = [[0] * n for _ in range(n)]
        for c in self.chords:
            if c.tail_comp == c.tip_comp:
                self.tb[c.tail_comp] += c.sign
            else:
                self.linking[c.tail_comp][c.tip_comp] += c.sign
                self.linking[c.tip_comp][c.tail_comp] += c.sign
        for i in range(n):
            for j in range(n):
                if i != j:
                    if self.linking[i][j] % 2 != 0:
                        raise DiagramError("odd crossing count between components")
                    self.linking[i][j] //= 2
        self.rot = {}
        for i, cyc in enumerate(self.components):
            self.rot[i] = int(turning_number(cyc))

    # -- faces ---------------------------------------------------------------

    def _build_faces(self):
        # split each component cycle at its crossing passages into arcs
        passages: Dict[int, List[Tuple[Fraction, Point, int]]] = {
            i: [] for i in range(len(self.components))}
        for c in self.chords:
            passages[c.tail_comp].append((c.tail_loc[1], c.point, c.id))
            passages[c.tip_comp].append((c.tip_loc[1], c.point, c.id))
        arcs = []   # (points, start chord id, end chord id)
        for ci, plist in passages.items():
            plist.sort(key=lambda item: item[0])
            if not plist:
                continue
            cl = self.cheb_len[ci]
            for k in range(len(plist)):
                p_from = plist[k]
                p_to = plist[(k + 1) % len(plist)]
                pts = [p_from[1]]
                par = p_from[0]
                end_par = p_to[0] if p_to[0] > par else p_to[0] + cl[-1]
                nseg = len(self.segments[ci])
                si = self._seg_of_param(ci, par)
                while True:
                    nxt = (si + 1) % nseg
                    vpar = cl[si + 1]
                    if vpar <= par:
                        vpar += cl[-1]
                    if vpar >= end_par:
                        break
                    pts.append(self.segments[ci][nxt].a)
                    si = nxt
                    par = vpar
                pts.append(p_to[1])
                arcs.append((pts, p_from[2], p_to[2]))
        self._trace_faces(arcs)

    def _seg_of_param(self, comp, par):
        cl = self.cheb_len[comp]
        par = par % cl[-1]
        lo, hi = 0, len(cl) - 1
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if cl[mid] <= par:
                lo = mid
            else:
                hi = mid
        return lo

    def _trace_faces(self, arcs):
        # half edges: (arc index, +1/-1)
        departs: Dict[Point, List[Tuple[int, Tuple[int, int]]]] = {}

        def ends(arc):
            pts = arc[0]
            return pts[0], pts[-1]

        half_edges = []
        for ai, arc in enumerate(arcs):
            pts = arc[0]
            half_edges.append((ai, 1))
            half_edges.append((ai, -1))
            d_fwd = sub(pts[1], pts[0])
            d_bwd = sub(pts[-2], pts[-1])
            departs.setdefault(pts[0], []).append((len(half_edges) - 2, d_fwd))
            departs.setdefault(pts[-1], []).append((len(half_edges) - 1, d_bwd))

        def octant_of(v):
            sx = (v[0] > 0) - (v[0] < 0)
            sy = (v[1] > 0) - (v[1] < 0)
            return OCTANT_VECTORS.index((sx, sy))

        def he_points(he):
            ai, d = half_edges[he]
            pts = arcs[ai][0]
            return pts if d == 1 else pts[::-1]

        next_he = {}
        for he in range(len(half_edges)):
            pts = he_points(he)
            node = pts[-1]
            back = octant_of(sub(pts[-2], pts[-1]))
            best = None
            for cand, vec in departs[node]:
                o = octant_of(vec)
                delta = (back - o) % 8     # clockwise distance from back
                if delta == 0:
                    continue
                if best is None or delta < best[0]:
                    best = (delta, cand)
            if best is None:
                raise DiagramError(f"dead end in arrangement at {node}")
            next_he[he] = best[1]

        visited = set()
        faces = []
        outer_count = 0
        self.outer_area = Fraction(0)
        for he0 in range(len(half_edges)):
            if he0 in visited:
                continue
            cycle = []
            he = he0
            while he not in visited:
                visited.add(he)
                cycle.append(he)
                he = next_he[he]
            if he != he0:
                raise DiagramError("face tracing did not close up")
            boundary: List[Point] = []
            corners = []
            for k, h in enumerate(cycle):
                pts = he_points(h)
                boundary.extend(pts[:-1])
                nxt = he_points(cycle[(k + 1) % len(cycle)])
                node = pts[-1]
                cid = self._chord_at(node)
                d_in = sub(pts[-1], pts[-2])
                d_out = sub(nxt[1], nxt[0])
                corners.append((cid, node, d_in, d_out))
            area = polygon_signed_area(boundary)
            if area < 0:
                outer_count += 1
                self.outer_area -= area
                continue
            if area == 0:
                raise DiagramError("degenerate face of zero area")
            corner_data = []
            for cid, node, d_in, d_out in corners:
                sign = self._corner_sign(cid, d_in, d_out)
                quad = self._quadrant(d_in, d_out)
                corner_data.append((cid, quad, sign))
            faces.append(Face(None, corner_data, area, boundary))
        faces.sort(key=lambda f: (min(p[0] for p in f.boundary),
                                  min(p[1] for p in f.boundary)))
        for i, f in enumerate(faces):
            f.id = i + 1
        self.faces_list = faces
        self._outer_count = outer_count

    def _chord_at(self, node: Point) -> int:
        for c in self.chords:
            if c.point == node:
                return c.id
        raise DiagramError(f"no chord at node {node}")

    def _corner_sign(self, cid, d_in, d_out):
        c = self.chords[cid - 1]
        over_line = {3, 7}

        def is_over(v):
            sx = (v[0] > 0) - (v[0] < 0)
            sy = (v[1] > 0) - (v[1] < 0)
            return OCTANT_VECTORS.index((sx, sy)) in over_line

        in_over = is_over(d_in)
        out_over = is_over(d_out)
        if in_over == out_over:
            raise DiagramError("face corner does not switch strands")
        # positive when ccw traversal jumps from the low strand to the high one
        return 1 if (not in_over and out_over) else -1

    def _quadrant(self, d_in, d_out):
        # wedge between the two boundary rays: reverse of incoming, outgoing
        def unit(v):
            sx = (v[0] > 0) - (v[0] < 0)
            sy = (v[1] > 0) - (v[1] < 0)
            return (sx, sy)

        r1 = unit((-d_in[0], -d_in[1]))
        r2 = unit(d_out)
        bx = (r1[0] + r2[0])
        by = (r1[1] + r2[1])
        sx = (bx > 0) - (bx < 0)
        sy = (by > 0) - (by < 0)
        name = QUADRANT_NAMES.get((sx, sy))
        if name is None:
            raise DiagramError("face corner rays do not span a quadrant")
        return name

    def _pick_basepoints(self):
        all_segs = [s for segs in self.segments for s in segs]
        crossings = [c.point for c in self.chords]
        for f in self.faces_list:
            f.basepoint = self._basepoint_for(f, all_segs, crossings)

    def _basepoint_for(self, face, all_segs, crossings):
        xs = [p[0] for p in face.boundary]
        ys = [p[1] for p in face.boundary]
        scale = Fraction(1)
        while scale >= Fraction(1, 256):
            clear = min(Fraction(1, 2), scale / 2)
            y = _ceil_to(min(ys), scale)
            while y <= max(ys):
                x = _ceil_to(min(xs), scale)
                while x <= max(xs):
                    p = (x, y)
                    if self._good_basepoint(p, face, all_segs, crossings, clear):
                        return p
                    x += scale
                y += scale
            scale /= 2
        raise DiagramError(f"no basepoint found for face {face.id}")

    def _good_basepoint(self, p, face, all_segs, crossings, clear):
        clear_sq = clear * clear
        try:
            if winding_number(face.boundary, p) != 1:
                return False
        except ValueError:
            return False
        for q in crossings:
            d = sub(p, q)
            if d[0] * d[0] + d[1] * d[1] <= clear_sq:
                return False
        for s in all_segs:
            # cheap box rejection before the exact distance
            if p[0] < min(s.a[0], s.b[0]) - clear \
                    or p[0] > max(s.a[0], s.b[0]) + clear \
                    or p[1] < min(s.a[1], s.b[1]) - clear \
                    or p[1] > max(s.a[1], s.b[1]) + clear:
                continue
            if point_segment_distance_sq(p, s) <= clear_sq:
                return False
        return True

    # -- public helpers ------------------------------------------------------

    @property
    def n_chords(self):
        return len(self.chords)

    def chord(self, cid: int) -> ChordRecord:
        return self.chords[cid - 1]

    def composable(self, j1: int, j2: int) -> bool:
        return self.chord(j1).tip_comp == self.chord(j2).tail_comp

    def component_length(self, comp: int) -> Fraction:
        return self.cheb_len[comp][-1]

    def capping_path(self, j1: int, j2: int, side: str = "eta"):
        """Capping arc from the tip of r_j1 to the tail of r_j2.

        side 'eta' follows the component orientation, 'etabar' opposes it.
        Returns a CappingPath with exact turning data and the chord endpoints
        met along the interior.  Results are memoized per diagram.
        """
        if side not in ("eta", "etabar"):
            raise ValueError(f"bad capping side {side!r}")
        cache = getattr(self, "_capping_cache", None)
        if cache is None:
            cache = self._capping_cache = {}
        key = (j1, j2, side)
        if key in cache:
            return cache[key]
        c1, c2 = self.chord(j1), self.chord(j2)
        comp = c1.tip_comp
        if c2.tail_comp != comp:
            raise ValueError(f"chords r{j1}, r{j2} are not composable")
        total = self.cheb_len[comp][-1]
        start = c1.tip_loc[1]
        end = c2.tail_loc[1]
        if side == "eta":
            length = (end - start) % total
            if length == 0:
                length = total
        else:
            length = -((start - end) % total)
            if length == 0:
                length = -total
        pts, turns = self._walk(comp, start, length)
        interior = self._endpoints_between(comp, start, length)
        cap = CappingPath(j1, j2, side, comp, pts, turns,
                          abs(length) / total, interior)
        cache[key] = cap
        return cap

    def _walk(self, comp, start, length):
        """Sub-polyline from parameter start through signed Chebyshev length."""
        cl = self.cheb_len[comp]
        total = cl[-1]
        segs = self.segments[comp]
        forward = length > 0
        par = start % total
        pts = [self._point_at_param(comp, par)]
        turns = 0
        remaining = abs(length)
        si = self._seg_of_param(comp, par)
        prev_oct = segs[si].octant if forward else (segs[si].octant + 4) % 8
        while True:
            gap = (cl[si + 1] - par) if forward else (par - cl[si])
            if gap >= remaining:
                par2 = (par + remaining) if forward else (par - remaining)
                pts.append(self._point_at_param(comp, par2 % total))
                break
            remaining -= gap
            if forward:
                si = (si + 1) % len(segs)
                par = cl[si]
                oct_new = segs[si].octant
                vertex = segs[si].a
            else:
                si = (si - 1) % len(segs)
                par = cl[si + 1]
                oct_new = (segs[si].octant + 4) % 8
                vertex = segs[si].b
            t = turn_octants(prev_oct, oct_new)
            if abs(t) == 4:
                raise DiagramError("capping path reverses direction")
            turns += t
            prev_oct = oct_new
            pts.append(vertex)
        out = [pts[0]]
        for p in pts[1:]:
            if p != out[-1]:
                out.append(p)
        return out, turns

    def _point_at_param(self, comp, par):
        si = self._seg_of_param(comp, par)
        s = self.segments[comp][si]
        step = max(abs(s.b[0] - s.a[0]), abs(s.b[1] - s.a[1]))
        t = (par - self.cheb_len[comp][si]) / step
        return s.point_at(t)

    def _endpoints_between(self, comp, start, length):
        """Chord endpoints in the open parameter interval of the walk."""
        total = self.cheb_len[comp][-1]
        out = []
        for c in self.chords:
            for role, ccomp, loc in (("tail", c.tail_comp, c.tail_loc),
                                     ("tip", c.tip_comp, c.tip_loc)):
                if ccomp != comp:
                    continue
                if length > 0:
                    off = (loc[1] - start) % total
                else:
                    off = -((start - loc[1]) % total)
                if off == 0:
                    continue
                if 0 < off < length or length < off < 0:
                    out.append((c.id, role, off))
        out.sort(key=lambda e: abs(e[2]))
        return [(cid, role) for cid, role, _ in out]


class CappingPath(object):
    """Oriented arc between chord endpoints with exact rotation data."""

    def __init__(self, j1, j2, side, comp, points, turn_eighths,
                 norm_length, interior):
        self.j1 = j1
        self.j2 = j2
        self.side = side
        self.component = comp
        self.points = points
        self.turn_eighths = turn_eighths     # total turning in pi/4 units
        self.norm_length = norm_length       # in (0, 1], component scaled to 1
        self.interior = interior             # [(chord id, 'tail'|'tip')]

    @property
    def theta_half_pi(self) -> int:
        """Rotation angle in units of pi/2 (odd by good position)."""
        if self.turn_eighths % 2 != 0:
            raise DiagramError("capping angle not a multiple of pi/2")
        return self.turn_eighths // 2


def _crossing_z_gaps(components, slabs):
    """Per-event (z-gap, high comp, low comp) at each crossing.

    The gap is z of the slope -1 branch minus z of the slope +1 branch with
    every component's height normalized to start at 0; the per-component
    height constants are solved separately.  Positivity is not enforced
    here.
    """
    seglists = []
    zlists = []
    for cyc in components:
        segs = [Segment(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]
        zs = [Fraction(0)]
        for s in segs:
            zs.append(zs[-1] + (s.a[1] + s.b[1]) * (s.b[0] - s.a[0]) / 2)
        seglists.append(segs)
        zlists.append(zs)
    flat = [(ci, si, s) for ci, segs in enumerate(seglists)
            for si, s in enumerate(segs)]
    gaps: Dict[int, Tuple[Fraction, int, int]] = {}
    for a in range(len(flat)):
        ci1, si1, s1 = flat[a]
        for b in range(a + 1, len(flat)):
            ci2, si2, s2 = flat[b]
            if ci1 == ci2:
                n = len(seglists[ci1])
                if si1 == si2 or (si1 - si2) % n in (1, n - 1):
                    continue
            if not boxes_overlap(s1, s2):
                continue
            p = segment_intersection(s1, s2)
            if p is None:
                continue
            down = {3, 7}
            if s1.octant in down:
                over, under = (ci1, si1, s1), (ci2, si2, s2)
            else:
                over, under = (ci2, si2, s2), (ci1, si1, s1)

            def z_at(ci, si, s):
                return zlists[ci][si] + (s.a[1] + p[1]) * (p[0] - s.a[0]) / 2

            gap = z_at(*over) - z_at(*under)
            ev = None
            for idx, (sx, ex) in enumerate(slabs):
                if sx < p[0] < ex:
                    ev = idx
                    break
            if ev is None:
                raise DiagramError(f"crossing at {p} outside event slabs")
            if ev in gaps:
                raise DiagramError(f"two crossings inside event slab {ev}")
            gaps[ev] = (gap, over[0], under[0])
    return gaps


def resolve(front: FrontCode, action_margin: Fraction = Fraction(32)
            ) -> ResolvedDiagram:
    """Realize a front as an exact Lagrangian-projection polyline diagram.

    Template sizes (right-cusp loop widths, inter-event spacings, and the
    per-component height constants) are the unknowns of a small exact linear
    program: the closed integral of y dx must vanish on every component
    while every crossing keeps a z-gap of at least ``action_margin`` between
    its high and low strands.
    """
    from .lp import solve_lp

    r_events = [i for i, (k, _) in enumerate(front.events) if k == "R"]
    x_events = [i for i, (k, _) in enumerate(front.events) if k in ("X", "R")]
    n_comp = front.n_components
    n_geom = len(r_events) + len(front.events)
    # components beyond the first get a height shift s+ - s-
    n_var = n_geom + 2 * (n_comp - 1)

    def build(theta):
        stretches = {ev: Fraction(2) + theta[i]
                     for i, ev in enumerate(r_events)}
        spacings = {ev: theta[len(r_events) + ev]
                    for ev in range(len(front.events))}
        wires, slabs = _build_wires(front, stretches, spacings)
        comps = _assemble_components(front, wires)
        oriented = []
        for i, cyc in enumerate(comps):
            # default traversal: the lower branch of the component's first
            # left cusp runs eastward (the assembly walk is the opposite)
            if front.orientations.get(i, 1) == 1:
                cyc = cyc[::-1]
            oriented.append(cyc)
        return oriented, slabs

    def measure(theta):
        comps, slabs = build(theta)
        vals = [polyline_integral_y_dx(c, closed=True) for c in comps]
        gaps = _crossing_z_gaps(comps, slabs)
        if sorted(gaps) != x_events:
            raise DiagramError("unexpected crossing pattern while sizing")
        return vals, [gaps[ev] for ev in x_events]

    zero = [Fraction(0)] * n_geom
    base_close, base_gaps = measure(zero)
    cols = []
    for k in range(n_geom):
        unit = list(zero)
        unit[k] = Fraction(1)
        mk_close, mk_gaps = measure(unit)
        cols.append([v - b for v, b in zip(mk_close, base_close)]
                    + [g - b for (g, _, _), (b, _, _) in
                       zip(mk_gaps, base_gaps)])
    eq = []
    for c in range(n_comp):
        eq.append(([cols[k][c] for k in range(n_geom)]
                   + [Fraction(0)] * (2 * (n_comp - 1)), -base_close[c]))
    ge = []
    for j, (gap, hi, lo) in enumerate(base_gaps):
        row = [cols[k][n_comp + j] for k in range(n_geom)]
        shift = [Fraction(0)] * (2 * (n_comp - 1))
        for comp, sgn in ((hi, 1), (lo, -1)):
            if comp > 0:
                shift[2 * (comp - 1)] += sgn
                shift[2 * (comp - 1) + 1] -= sgn
        ge.append((row + shift, action_margin - gap))
    theta = solve_lp(n_var, eq, ge, minimize=[Fraction(1)] * n_var)
    if theta is None:
        raise DiagramError(
            "no template sizing realizes this front in good position")
    comps, slabs = build(theta)
    shifts = [Fraction(0)]
    for i in range(1, n_comp):
        shifts.append(theta[n_geom + 2 * (i - 1)]
                      - theta[n_geom + 2 * (i - 1) + 1])
    return ResolvedDiagram(front, comps, slabs, shifts)


def classical_invariants(d: ResolvedDiagram):
    """(tb per component, rot per component, linking matrix)."""
    return dict(d.tb), dict(d.rot), [row[:] for row in d.linking]


def chord_actions(d: ResolvedDiagram) -> Dict[int, Fraction]:
    return {c.id: c.action for c in d.chords}


def faces(d: ResolvedDiagram) -> List[Face]:
    return list(d.faces_list)


def point_basis(d: ResolvedDiagram) -> List[Point]:
    return [f.basepoint for f in d.faces_list]


def _ceil_to(v: Fraction, scale: Fraction) -> Fraction:
    q = v / scale
    n = q.numerator // q.denominator
    if n * q.denominator < q.numerator:
        n += 1
    return n * scale
