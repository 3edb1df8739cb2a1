"""Collapsing maps, reductions, maximalization, and arc extraction.

The engine implements the constructive heart of the pipeline: collapse the
closure of each cancellation interval to a point via a monotone PL surjection
gamma, read off the unique reduced path beta with beta(gamma(t)) equal to the
collapsed path, and grow the cancellation until beta is injective.  The
extension step pulls a witness pair of beta back through gamma to a closed
parameter interval and replaces everything inside it.

All constructions are exact; every reduction is re-verified pointwise at a
checkpoint grid before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cancellation import (
    LoopCancellation,
    check_binding,
    empty_cancellation,
    is_collapsible,
    merge_adjacent,
    validate_cancellation,
)
from .coincidence import coincidence_set, segment_point_at
from .errors import IsLoopError, NotCollapsibleError, ReductionVerificationError
from .params import (
    ONE,
    ZERO,
    IntervalFamily,
    OpenInterval,
    normalize_family,
)
from .paths import (
    Coordinates,
    DiscretePath,
    PathHandle,
    PolylinePath,
    evaluate,
    is_loop,
)


@dataclass(frozen=True)
class CollapsingMap:
    """Monotone, surjective, piecewise-linear self-map of [0,1]."""

    vertices: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        verts = tuple((Fraction(t), Fraction(y)) for t, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if verts[0] != (ZERO, ZERO) or verts[-1] != (ONE, ONE):
            raise ValueError("collapsing map must fix 0 and 1")
        for (t0, y0), (t1, y1) in zip(verts, verts[1:]):
            if not t0 < t1:
                raise ValueError("vertex parameters must strictly increase")
            if y1 < y0:
                raise ValueError("values must be non-decreasing")

    def value(self, t: Fraction) -> Fraction:
        t = Fraction(t)
        for (t0, y0), (t1, y1) in zip(self.vertices, self.vertices[1:]):
            if t0 <= t <= t1:
                if t == t0:
                    return y0
                return y0 + (t - t0) / (t1 - t0) * (y1 - y0)
        raise ValueError(f"parameter {t} outside [0,1]")

    def plateaus(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """Maximal parameter spans on which the map is constant."""
        out: list[tuple[Fraction, Fraction]] = []
        for (t0, y0), (t1, y1) in zip(self.vertices, self.vertices[1:]):
            if y0 == y1:
                if out and out[-1][1] == t0:
                    out[-1] = (out[-1][0], t1)
                else:
                    out.append((t0, t1))
        return tuple(out)

    def preimage(self, y_lo: Fraction, y_hi: Fraction) -> tuple[Fraction, Fraction]:
        """Maximal closed interval [c,d] mapping into [y_lo, y_hi]."""
        if not ZERO <= y_lo <= y_hi <= ONE:
            raise ValueError("value interval outside [0,1]")
        if y_lo == ZERO:
            c = ZERO
        else:
            for (t0, y0), (t1, y1) in zip(self.vertices, self.vertices[1:]):
                if y1 >= y_lo:
                    c = t0 + (y_lo - y0) / (y1 - y0) * (t1 - t0)
                    break
        if y_hi == ONE:
            d = ONE
        else:
            for (t0, y0), (t1, y1) in reversed(
                list(zip(self.vertices, self.vertices[1:]))
            ):
                if y0 <= y_hi:
                    d = t1 - (y1 - y_hi) / (y1 - y0) * (t1 - t0)
                    break
        return c, d


IDENTITY_MAP = CollapsingMap(((ZERO, ZERO), (ONE, ONE)))


@dataclass(frozen=True)
class ReductionResult:
    beta: PathHandle
    gamma: CollapsingMap
    collapsed: PathHandle
    cancellation: LoopCancellation


def simplify_vertices(
    verts: list[tuple[Fraction, Fraction]],
) -> tuple[tuple[Fraction, Fraction], ...]:
    """Drop interior vertices where the slope does not change."""
    out = [verts[0]]
    for i in range(1, len(verts) - 1):
        t0, y0 = out[-1]
        t1, y1 = verts[i]
        t2, y2 = verts[i + 1]
        if (y1 - y0) * (t2 - t1) == (y2 - y1) * (t1 - t0):
            continue
        out.append(verts[i])
    out.append(verts[-1])
    return tuple(out)


def _proportional_map(family: IntervalFamily) -> CollapsingMap:
    """Canonical collapsing map: complement spans keep their relative lengths."""
    total = ONE - sum((iv.hi - iv.lo) for iv in family)
    verts: list[tuple[Fraction, Fraction]] = [(ZERO, ZERO)]
    acc = ZERO
    cur = ZERO
    for iv in family:
        if iv.lo > cur:
            acc += (iv.lo - cur) / total
            verts.append((iv.lo, acc))
        verts.append((iv.hi, acc))
        cur = iv.hi
    if cur < ONE:
        verts.append((ONE, ONE))
    if verts[-1] != (ONE, ONE):
        raise AssertionError("proportional construction must end at (1,1)")
    return CollapsingMap(simplify_vertices(verts))


def collapsing_map(lc: LoopCancellation) -> CollapsingMap:
    """Canonical collapsing map of a collapsible cancellation.

    Plateaus sit exactly on the closures of the family's intervals; the
    complement is mapped linearly with output lengths proportional to input
    lengths.
    """
    if not is_collapsible(lc):
        raise NotCollapsibleError(f"cancellation {lc.family} is not collapsible")
    gamma = _proportional_map(lc.family)
    assert gamma.plateaus() == tuple((iv.lo, iv.hi) for iv in lc.family)
    return gamma


def middle_thirds_family(depth: int) -> IntervalFamily:
    """Middle-third intervals removed through the given stage (2^depth - 1)."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    intervals: list[OpenInterval] = []

    def remove(lo: Fraction, hi: Fraction, n: int) -> None:
        third = (hi - lo) / 3
        intervals.append(OpenInterval(lo + third, hi - third))
        if n > 1:
            remove(lo, lo + third, n - 1)
            remove(hi - third, hi, n - 1)

    remove(ZERO, ONE, depth)
    return normalize_family(intervals)


def cantor_collapsing_map(depth: int) -> CollapsingMap:
    """Canonical collapsing map for the stage-`depth` middle-third family.

    Agrees with the ternary Cantor function at every breakpoint.
    """
    return _proportional_map(middle_thirds_family(depth))


def collapse_path(path: PathHandle, lc: LoopCancellation) -> PathHandle:
    """The path made constant on each interval closure, unchanged elsewhere."""
    check_binding(path, lc)
    if len(lc.family) == 0:
        return path
    if not is_collapsible(lc):
        raise NotCollapsibleError(f"cancellation {lc.family} is not collapsible")
    closures = [(iv.lo, iv.hi) for iv in lc.family]
    if isinstance(path, PolylinePath):
        verts: list[tuple[Fraction, Coordinates]] = []
        for t, p in path.breakpoints:
            if not any(a <= t <= b for a, b in closures):
                verts.append((t, p))
        for a, b in closures:
            v = evaluate(path, a)
            assert evaluate(path, b) == v
            verts.append((a, v))
            verts.append((b, v))
        verts.sort(key=lambda tp: tp[0])
        return PolylinePath(tuple(verts), allow_stalls=True)
    m = len(path.labels) - 1
    labels = list(path.labels)
    for i in range(m + 1):
        t = Fraction(i, m)
        for a, b in closures:
            if a < t < b:
                labels[i] = evaluate(path, a)
                break
    return DiscretePath(tuple(labels), allow_repeats=True)


def _polyline_reduction(
    path: PolylinePath, lc: LoopCancellation, gamma: CollapsingMap
) -> ReductionResult:
    collapsed = collapse_path(path, lc)
    closures = [(iv.lo, iv.hi) for iv in lc.family]
    knots = {ZERO, ONE}
    for t in path.knots:
        if not any(a < t < b for a, b in closures):
            knots.add(t)
    for a, b in closures:
        knots.add(a)
        knots.add(b)
    verts: list[tuple[Fraction, Coordinates]] = []
    for t in sorted(knots):
        y = gamma.value(t)
        p = evaluate(collapsed, t)
        if verts and verts[-1][0] == y:
            assert verts[-1][1] == p
            continue
        verts.append((y, p))
    beta = PolylinePath(tuple(verts))
    return ReductionResult(beta, gamma, collapsed, lc)


def _discrete_reduction(path: DiscretePath, lc: LoopCancellation) -> ReductionResult:
    collapsed = collapse_path(path, lc)
    labels = collapsed.labels
    m = len(labels) - 1
    run = [0]
    for i in range(1, m + 1):
        run.append(run[-1] + (labels[i] != labels[i - 1]))
    n_runs = run[-1]
    if n_runs == 0:
        beta = DiscretePath((labels[0], labels[0]), allow_repeats=True)
        return ReductionResult(beta, IDENTITY_MAP, collapsed, lc)
    dedup = tuple(lab for i, lab in enumerate(labels) if i == 0 or run[i] != run[i - 1])
    beta = DiscretePath(dedup)
    # Step-adapted map: sample i goes to (run index)/(run count), so plateaus
    # sit on the maximal constant runs of the collapsed step path.  For
    # sample-aligned interval endpoints these runs are exactly the closures.
    verts = [(Fraction(i, m), Fraction(run[i], n_runs)) for i in range(m + 1)]
    gamma = CollapsingMap(simplify_vertices(verts))
    return ReductionResult(beta, gamma, collapsed, lc)


def _verify_reduction(path: PathHandle, result: ReductionResult) -> None:
    """Exact recheck of beta(gamma(t)) == collapsed(t) on a checkpoint grid."""
    beta, gamma, collapsed = result.beta, result.gamma, result.collapsed
    checkpoints: set[Fraction] = set(collapsed.knots)
    checkpoints.update(t for t, _ in gamma.vertices)
    for y in beta.knots:
        c, d = gamma.preimage(y, y)
        checkpoints.update((c, d))
    grid = sorted(checkpoints)
    grid += [(a + b) / 2 for a, b in zip(grid, grid[1:])]
    for t in grid:
        if evaluate(beta, gamma.value(t)) != evaluate(collapsed, t):
            raise ReductionVerificationError(
                f"reduction identity fails at t={t}"
            )
    if evaluate(beta, ZERO) != evaluate(path, ZERO) or evaluate(
        beta, ONE
    ) != evaluate(path, ONE):
        raise ReductionVerificationError("reduction does not preserve endpoints")


def u_reduction(
    path: PathHandle, lc: LoopCancellation, gamma: CollapsingMap | None = None
) -> ReductionResult:
    """The unique reduced path beta with beta(gamma(t)) = collapsed(t).

    `gamma` may override the canonical collapsing map for polylines (it must
    plateau exactly on the family's closures); any valid choice yields the
    same beta up to reparameterization.
    """
    check_binding(path, lc)
    if isinstance(path, PolylinePath):
        if len(lc.family) == 0:
            gamma = gamma or IDENTITY_MAP
        else:
            if not is_collapsible(lc):
                raise NotCollapsibleError(
                    f"cancellation {lc.family} is not collapsible"
                )
            gamma = gamma or collapsing_map(lc)
        if gamma.plateaus() != tuple((iv.lo, iv.hi) for iv in lc.family):
            raise ValueError("collapsing map plateaus do not match the family")
        result = _polyline_reduction(path, lc, gamma)
    else:
        if gamma is not None:
            raise ValueError("custom collapsing maps apply to polylines only")
        if len(lc.family) == 0:
            result = ReductionResult(path, IDENTITY_MAP, path, lc)
        else:
            if not is_collapsible(lc):
                raise NotCollapsibleError(
                    f"cancellation {lc.family} is not collapsible"
                )
            result = _discrete_reduction(path, lc)
    _verify_reduction(path, result)
    return result


def _first_stall_run(path: PolylinePath) -> tuple[Fraction, Fraction] | None:
    bps = path.breakpoints
    i = 0
    while i < len(bps) - 1:
        if bps[i][1] == bps[i + 1][1]:
            j = i + 1
            while j < len(bps) - 1 and bps[j + 1][1] == bps[i][1]:
                j += 1
            return bps[i][0], bps[j][0]
        i += 1
    return None


def injectivity_witness(path: PathHandle) -> tuple[Fraction, Fraction] | None:
    """Deterministic self-coincidence pair: smallest x, then largest y.

    None means the path is injective.  Stall-bearing polylines (internal
    collapsed/constant paths) short-circuit to their first stall run.
    """
    if isinstance(path, PolylinePath):
        stall = _first_stall_run(path)
        if stall is not None:
            return stall
    cs = coincidence_set(path)
    if cs.is_empty():
        return None
    xs = [s for s, _ in cs.points]
    xs += [min(seg[0][0], seg[1][0]) for seg in cs.segments]
    x = min(xs)
    ys = [t for s, t in cs.points if s == x]
    for seg in cs.segments:
        pt = segment_point_at(seg, 0, x)
        if pt is not None:
            ys.append(pt[1])
    return x, max(ys)


def _path_size(path: PathHandle) -> int:
    if isinstance(path, PolylinePath):
        return len(path.breakpoints)
    return len(path.labels)


def maximalize(
    path: PathHandle, seed: LoopCancellation, *, stats: dict | None = None
) -> LoopCancellation:
    """Grow a cancellation until its reduction is injective.

    Each round reduces, finds the deterministic witness pair (x, y) of beta,
    pulls [x, y] back through gamma to a closed interval [c, d], and replaces
    every member inside (c, d) by (c, d).  The witness rule (smallest x,
    largest y) makes the output reproducible; taking the largest y absorbs
    nested loops greedily.

    Operational maximality: the loop stops exactly when the reduction has no
    witness, which is what the result certifies.
    """
    check_binding(path, seed)
    if is_loop(path):
        raise IsLoopError("maximalize requires distinct endpoints")
    lc = merge_adjacent(path, seed)
    iterations = 0
    budget = _path_size(path)
    last_size: int | None = None
    while True:
        result = u_reduction(path, lc)
        size = _path_size(result.beta)
        if last_size is not None and size >= last_size:
            raise ReductionVerificationError(
                "maximalize failed to shrink the reduction"
            )
        last_size = size
        witness = injectivity_witness(result.beta)
        if witness is None:
            break
        if iterations >= budget:
            raise ReductionVerificationError("maximalize exceeded iteration budget")
        iterations += 1
        x, y = witness
        c, d = result.gamma.preimage(x, y)
        if evaluate(path, c) != evaluate(path, d):
            raise ReductionVerificationError(
                f"pulled-back pair ({c}, {d}) is not a loop of the path"
            )
        keep = []
        for iv in lc.family:
            if iv.hi <= c or d <= iv.lo:
                keep.append(iv)
            elif not (c <= iv.lo and iv.hi <= d):
                raise ReductionVerificationError(
                    f"member {iv} straddles the pulled-back interval ({c}, {d})"
                )
        fam = normalize_family(keep + [OpenInterval(c, d)])
        lc = merge_adjacent(path, validate_cancellation(path, fam))
    if stats is not None:
        stats["iterations"] = iterations
    return lc


def constant_path_at(path: PathHandle) -> PathHandle:
    """Degenerate arc at the (equal) endpoints of a loop."""
    p = evaluate(path, ZERO)
    if isinstance(path, PolylinePath):
        return PolylinePath(((ZERO, p), (ONE, p)), allow_stalls=True)
    return DiscretePath((p, p), allow_repeats=True)


def extract_arc(path: PathHandle) -> PathHandle:
    """Injective path from path(0) to path(1) inside the original trace.

    Loops short-circuit to the constant path at their basepoint: their only
    maximal cancellation {(0,1)} is non-collapsible by definition, and an arc
    only makes sense between distinct endpoints.
    """
    if is_loop(path):
        return constant_path_at(path)
    best = maximalize(path, empty_cancellation(path))
    return u_reduction(path, best).beta


def point_in_trace(path: PolylinePath, point: Coordinates) -> bool:
    """Exact membership of a point in the image of a polyline."""
    for (_, p0), (_, p1) in zip(path.breakpoints, path.breakpoints[1:]):
        u = tuple(b - a for a, b in zip(p0, p1))
        w = tuple(b - a for a, b in zip(p0, point))
        idx = next((k for k in range(len(u)) if u[k] != 0), None)
        if idx is None:
            if point == p0:
                return True
            continue
        t = w[idx] / u[idx]
        if not ZERO <= t <= ONE:
            continue
        if all(t * u[k] == w[k] for k in range(len(u))):
            return True
    return False


def image_contained(path: PathHandle, arc: PathHandle) -> bool:
    """Every vertex and segment midpoint of the arc lies on the input trace."""
    if isinstance(arc, DiscretePath):
        return set(arc.labels) <= set(path.labels)
    probes = [p for _, p in arc.breakpoints]
    for (_, p0), (_, p1) in zip(arc.breakpoints, arc.breakpoints[1:]):
        probes.append(tuple((a + b) / 2 for a, b in zip(p0, p1)))
    return all(point_in_trace(path, p) for p in probes)
