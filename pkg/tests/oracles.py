"""Independent oracles used by the tests.

Everything here deliberately avoids the library's own code paths: polynomial
arithmetic on dicts, convex polygon clipping for the trimmed affine flow,
strand-stack simulation for front combinatorics, and the elementary-divisor
formulas for small integer matrices.
"""

from fractions import Fraction
from math import gcd


# -- tiny polynomial/matrix arithmetic (dict-based, unlike the library) ------

def pzero():
    return {}


def padd(p, q):
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + v
        if out[k] == 0:
            del out[k]
    return out


def pmul(p, q):
    out = {}
    for i, a in p.items():
        for j, b in q.items():
            k = i + j
            out[k] = out.get(k, 0) + a * b
    return {k: v for k, v in out.items() if v != 0}


def pscale(p, c):
    return {k: c * v for k, v in p.items() if c * v != 0}


def mat_mul(m, n):
    (a, b), (c, d) = m
    (e, f), (g, h) = n
    return ((padd(pmul(a, e), pmul(b, g)), padd(pmul(a, f), pmul(b, h))),
            (padd(pmul(c, e), pmul(d, g)), padd(pmul(c, f), pmul(d, h))))


def step_matrix(c):
    """J0 * [[1, -c u], [0, 1]] over the dict-polynomial ring."""
    j0 = (({}, {0: -1}), ({0: 1}, {}))
    shear = (({0: 1}, {1: -c}), ({}, {0: 1}))
    return mat_mul(j0, shear)


def reference_return_map(d, word):
    """Independent product for the linearized return map of a cyclic word."""
    from reebchords.indices import rot_number

    n = len(word)
    prod = (({0: 1}, {}), ({}, {0: 1}))
    sign = 1
    for k in range(n):
        j1, j2 = word[k], word[(k + 1) % n]
        c = d.surgery[d.chord(j1).tip_comp]
        prod = mat_mul(step_matrix(c), prod)
        if rot_number(d, j1, j2) % 2:
            sign = -sign
    return sign, prod


def peval(p, u):
    return sum(Fraction(v) * u ** k for k, v in p.items())


# -- convex polygon clipping for the trimmed affine dynamics -----------------

def clip_halfplane(poly, a, b, c):
    """Vertices of poly cut to the side a*x + b*y <= c."""
    out = []
    n = len(poly)
    for i in range(n):
        p = poly[i]
        q = poly[(i + 1) % n]
        fp = a * p[0] + b * p[1] - c
        fq = a * q[0] + b * q[1] - c
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    dedup = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def _iterate_trim(steps, w, rounds):
    poly = [(-w, -w), (w, -w), (w, w), (-w, w)]
    for _ in range(rounds):
        for mat, off in steps:
            a, b, c, d = mat
            poly = [(a * x + b * y + off[0], c * x + d * y + off[1])
                    for x, y in poly]
            for ha, hb, hc in ((1, 0, w), (-1, 0, w), (0, 1, w), (0, -1, w)):
                poly = clip_halfplane(poly, ha, hb, hc)
                if len(poly) < 1:
                    return []
    return poly


def _invert_steps(steps):
    out = []
    for (a, b, c, d), (e, f) in reversed(steps):
        det = a * d - b * c
        ia, ib, ic, id_ = d / det, -b / det, -c / det, a / det
        out.append(((ia, ib, ic, id_),
                    (-(ia * e + ib * f), -(ic * e + id_ * f))))
    return out


def convex_intersection(p1, p2):
    poly = p1
    n = len(p2)
    for i in range(n):
        a = p2[i]
        b = p2[(i + 1) % n]
        ha = b[1] - a[1]
        hb = -(b[0] - a[0])
        hc = ha * a[0] + hb * a[1]
        poly = clip_halfplane(poly, ha, hb, hc)
        if not poly:
            return []
    return poly


def trimmed_flow_polygon(steps, eps, rounds=60):
    """Trap the model flow in the handle window, forward and backward.

    Forward trimming contracts onto the unstable segment and backward
    trimming onto the stable one; their intersection shrinks to the unique
    periodic point.  Returns that convex polygon (possibly empty).
    """
    w = Fraction(eps)
    fwd = _iterate_trim(steps, w, rounds)
    if not fwd:
        return []
    bwd = _iterate_trim(_invert_steps(steps), w, rounds)
    if not bwd:
        return []
    if len(fwd) < 3:
        return fwd
    if len(bwd) < 3:
        return bwd
    return convex_intersection(fwd, bwd)


def poly_diameter_sq(poly):
    best = Fraction(0)
    for i in range(len(poly)):
        for j in range(i + 1, len(poly)):
            dx = poly[i][0] - poly[j][0]
            dy = poly[i][1] - poly[j][1]
            best = max(best, dx * dx + dy * dy)
    return best


def point_in_convex(poly, p):
    n = len(poly)
    for i in range(n):
        a = poly[i]
        b = poly[(i + 1) % n]
        crossv = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
        if crossv < 0:
            return False
    return True


# -- front combinatorics oracle ----------------------------------------------

def trace_front(events):
    """Strand-stack simulation returning basic front statistics."""
    stack = []
    nxt = 0
    pairs = []
    joins = []
    crossings = 0
    for kind, pos in events:
        if kind == "L":
            a, b = nxt, nxt + 1
            nxt += 2
            stack[pos - 1:pos - 1] = [a, b]
            pairs.append((a, b))
        elif kind == "X":
            stack[pos - 1], stack[pos] = stack[pos], stack[pos - 1]
            crossings += 1
        else:
            joins.append((stack[pos - 1], stack[pos]))
            del stack[pos - 1:pos + 1]
    assert not stack
    parent = list(range(nxt))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs + joins:
        parent[find(a)] = find(b)
    comps = len({find(i) for i in range(nxt)})
    return {"components": comps, "crossings": crossings,
            "left_cusps": len(pairs), "right_cusps": len(joins)}


def front_writhe_and_cusp_counts(front):
    """(front writhe, linking, down cusps, up cusps), by walking the wires.

    The walk reproduces the resolved diagram's traversal purely
    combinatorially: crossings count +1 when their two strands travel the
    same x-direction, and a cusp counts as a down cusp when the traversal
    passes from its upper strand to its lower one.
    """
    births = front._births
    deaths = front._deaths
    comp_of = front.component_of_wire
    n = front.n_components
    direction = {}
    seen = set()
    down = {i: 0 for i in range(n)}
    up = {i: 0 for i in range(n)}
    for start in sorted(births):
        if start in seen:
            continue
        comp = comp_of[start]
        flip = front.orientations.get(comp, 1) == 1   # default reverses walk
        wid = start
        forward = True
        while True:
            seen.add(wid)
            travels_east = forward != flip
            direction[wid] = 1 if travels_east else -1
            if forward:
                ev, partner = deaths[wid]
                upper, _lower = front._death_pairs[ev]
                entering = partner if flip else wid
                if entering == upper:
                    down[comp] += 1
                else:
                    up[comp] += 1
                wid = partner
            else:
                _ev, sib, role = births[wid]
                entering_role = (
                    births[sib][2] if flip else role)
                if entering_role == "u":
                    down[comp] += 1
                else:
                    up[comp] += 1
                wid = sib
            forward = not forward
            if wid == start and forward:
                break
    stack_ids = []
    next_wid = 0
    writhe = {i: 0 for i in range(n)}
    linking = {}
    for kind, pos in front.events:
        if kind == "L":
            stack_ids[pos - 1:pos - 1] = [next_wid, next_wid + 1]
            next_wid += 2
        elif kind == "X":
            a, b = stack_ids[pos - 1], stack_ids[pos]
            ca, cb = comp_of[a], comp_of[b]
            sign = 1 if direction[a] == direction[b] else -1
            if ca == cb:
                writhe[ca] += sign
            else:
                key = frozenset((ca, cb))
                linking[key] = linking.get(key, 0) + sign
            stack_ids[pos - 1], stack_ids[pos] = b, a
        else:
            del stack_ids[pos - 1:pos + 1]
    return writhe, linking, down, up


# -- elementary divisors of small integer matrices ----------------------------

def divisors_2x2(m):
    (a, b), (c, d) = m
    entries = [a, b, c, d]
    if all(v == 0 for v in entries):
        return (0, 0)
    g = 0
    for v in entries:
        g = gcd(g, abs(v))
    det = a * d - b * c
    if det == 0:
        return (g, 0)
    return (g, abs(det) // g)
