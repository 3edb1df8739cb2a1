"""Self-coincidence structure of a path: all (s,t), s<t, with equal values.

The coincidence set lives in the parameter triangle {(s,t) : s < t}.  Proper
crossings contribute isolated points; collinear overlaps (retraces) contribute
closed segments.  A segment endpoint may touch the diagonal s = t (a retrace
closes up exactly there); everywhere else s < t holds.

Computation is all-pairs over breakpoint spans with exact rational
predicates: inputs are desk-scale and exactness keeps the set auditable.  No
sweep line, no floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .paths import DiscretePath, PathHandle, PolylinePath, evaluate

ParamPair = tuple[Fraction, Fraction]
ParamSegment = tuple[ParamPair, ParamPair]


@dataclass(frozen=True)
class CoincidenceSet:
    """Isolated points and closed segments of the coincidence relation.

    `knots` records the source path's breakpoint parameters so candidate
    extraction needs no second look at the path.
    """

    points: tuple[ParamPair, ...]
    segments: tuple[ParamSegment, ...]
    knots: tuple[Fraction, ...]

    def is_empty(self) -> bool:
        return not self.points and not self.segments


def _sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def _parallel(u, v) -> bool:
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            if u[i] * v[j] != u[j] * v[i]:
                return False
    return True


def _solve_crossing(P, u, Q, v, w):
    """Solve P + a*u == Q + b*v exactly; returns (a, b) or None for skew lines.

    Assumes u, v not parallel; w = Q - P.
    """
    n = len(u)
    rows = None
    for i in range(n):
        for j in range(i + 1, n):
            det = -u[i] * v[j] + u[j] * v[i]
            if det != 0:
                rows = (i, j, det)
                break
        if rows:
            break
    i, j, det = rows
    # Cramer on rows i, j of  a*u - b*v = w.
    a = (-w[i] * v[j] + w[j] * v[i]) / det
    b = (u[i] * w[j] - u[j] * w[i]) / det
    for k in range(n):
        if a * u[k] - b * v[k] != w[k]:
            return None
    return a, b


def _spans(path: PolylinePath):
    bps = path.breakpoints
    return [
        (t0, t1, p0, p1) for (t0, p0), (t1, p1) in zip(bps, bps[1:])
    ]


def _point_on_segment(pt: ParamPair, seg: ParamSegment) -> bool:
    (s0, t0), (s1, t1) = seg
    s, t = pt
    if (s - s0) * (t1 - t0) != (t - t0) * (s1 - s0):
        return False
    return min(s0, s1) <= s <= max(s0, s1) and min(t0, t1) <= t <= max(t0, t1)


def _primitive_direction(ds: Fraction, dt: Fraction) -> tuple[int, int]:
    den = ds.denominator * dt.denominator
    a, b = int(ds * den), int(dt * den)
    g = gcd(abs(a), abs(b))
    a, b = a // g, b // g
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return a, b


def _merge_segments(raw: list[ParamSegment]) -> list[ParamSegment]:
    """Merge collinear coincidence segments that touch or overlap."""
    groups: dict[tuple, list[ParamSegment]] = {}
    for seg in raw:
        (s0, t0), (s1, t1) = seg
        a, b = _primitive_direction(s1 - s0, t1 - t0)
        # a*t - b*s is constant along the line.
        key = (a, b, Fraction(a) * t0 - Fraction(b) * s0)
        groups.setdefault(key, []).append(seg)

    merged: list[ParamSegment] = []
    for (a, b, _), segs in groups.items():
        # Position along the line: s when the direction moves in s, else t.
        def pos(pt: ParamPair) -> Fraction:
            return pt[0] if a != 0 else pt[1]

        spans = []
        for seg in segs:
            p, q = seg
            if pos(p) > pos(q):
                p, q = q, p
            spans.append((pos(p), pos(q), p, q))
        spans.sort(key=lambda r: (r[0], r[1]))
        cur = spans[0]
        for nxt in spans[1:]:
            if nxt[0] <= cur[1]:  # touching or overlapping: one closed segment
                if nxt[1] > cur[1]:
                    cur = (cur[0], nxt[1], cur[2], nxt[3])
            else:
                merged.append((cur[2], cur[3]))
                cur = nxt
        merged.append((cur[2], cur[3]))
    return merged


def _polyline_coincidences(path: PolylinePath):
    spans = _spans(path)
    for t0, _, p0, p1 in spans:
        if p0 == p1:
            raise ValueError(f"coincidence set undefined for stalled path (t={t0})")
    points: set[ParamPair] = set()
    segments: list[ParamSegment] = []
    for i in range(len(spans)):
        ti0, ti1, P, P2 = spans[i]
        u = _sub(P2, P)
        for j in range(i + 1, len(spans)):
            tj0, tj1, Q, Q2 = spans[j]
            v = _sub(Q2, Q)
            w = _sub(Q, P)
            if not _parallel(u, v):
                sol = _solve_crossing(P, u, Q, v, w)
                if sol is None:
                    continue
                la, lb = sol
                if not (0 <= la <= 1 and 0 <= lb <= 1):
                    continue
                s = ti0 + la * (ti1 - ti0)
                t = tj0 + lb * (tj1 - tj0)
                if s < t:
                    points.add((s, t))
            else:
                if not _parallel(u, w):
                    continue
                # Collinear spans: overlap along the common line, measured in
                # span-i local coordinates via any coordinate where u moves.
                c = next(k for k in range(len(u)) if u[k] != 0)
                a_lo, a_hi = w[c] / u[c], (w[c] + v[c]) / u[c]
                reversed_dir = a_lo > a_hi
                if reversed_dir:
                    a_lo, a_hi = a_hi, a_lo
                a_lo, a_hi = max(a_lo, Fraction(0)), min(a_hi, Fraction(1))
                if a_lo > a_hi:
                    continue

                def pair(la: Fraction) -> ParamPair:
                    lb = (la * u[c] - w[c]) / v[c]
                    return (ti0 + la * (ti1 - ti0), tj0 + lb * (tj1 - tj0))

                if a_lo == a_hi:
                    s, t = pair(a_lo)
                    if s < t:
                        points.add((s, t))
                else:
                    e0, e1 = pair(a_lo), pair(a_hi)
                    if e0 > e1:
                        e0, e1 = e1, e0
                    segments.append((e0, e1))
    segments = _merge_segments(segments)
    points = {pt for pt in points if not any(_point_on_segment(pt, sg) for sg in segments)}
    return sorted(points), sorted(segments)


def coincidence_set(path: PathHandle) -> CoincidenceSet:
    """Complete coincidence structure of the path.

    Polylines: exact all-pairs segment intersection (crossings give points,
    collinear overlaps give segments).  Discrete paths: all sample index
    pairs with equal labels.
    """
    if isinstance(path, DiscretePath):
        m = len(path.labels) - 1
        pts = [
            (Fraction(i, m), Fraction(j, m))
            for i in range(m + 1)
            for j in range(i + 1, m + 1)
            if path.labels[i] == path.labels[j]
        ]
        return CoincidenceSet(tuple(pts), (), path.knots)

    points, segments = _polyline_coincidences(path)
    for s, t in points:
        assert evaluate(path, s) == evaluate(path, t)
    for (s0, t0), (s1, t1) in segments:
        for s, t in ((s0, t0), (s1, t1), ((s0 + s1) / 2, (t0 + t1) / 2)):
            assert evaluate(path, s) == evaluate(path, t)
    return CoincidenceSet(tuple(points), tuple(segments), path.knots)


def segment_point_at(seg: ParamSegment, axis: int, value: Fraction) -> ParamPair | None:
    """Point of the segment whose s (axis 0) or t (axis 1) coordinate is value."""
    p, q = seg
    lo, hi = sorted((p[axis], q[axis]))
    if not lo <= value <= hi:
        return None
    if p[axis] == q[axis]:
        return None  # degenerate in this axis; endpoints cover it
    w = (value - p[axis]) / (q[axis] - p[axis])
    s = p[0] + w * (q[0] - p[0])
    t = p[1] + w * (q[1] - p[1])
    return (s, t)


def candidate_endpoints(cs: CoincidenceSet) -> tuple[ParamPair, ...]:
    """Finite search grid for maximalization.

    All isolated points, both endpoints of every segment, and segment points
    where either coordinate hits a breakpoint parameter of the path.
    """
    out: set[ParamPair] = set(cs.points)
    for seg in cs.segments:
        out.add(seg[0])
        out.add(seg[1])
        for knot in cs.knots:
            for axis in (0, 1):
                pt = segment_point_at(seg, axis, knot)
                if pt is not None:
                    out.add(pt)
    return tuple(sorted(out))
