"""Finitely-described path models with decidable pointwise equality.

Two models of a path [0,1] -> X:

* PolylinePath — exact rational breakpoints in R^d, linear interpolation
  between them.  Evaluation at a rational parameter is an exact rational
  point, so coincidence questions p(s) == p(t) are decidable.
* DiscretePath — a finite label sequence; sample i sits at parameter
  i/(n-1) and evaluation between samples steps to the nearest lower index.

The carrier space is modeled by point equality only: coordinates compare
component-wise, labels by identity.  No ambient topology is represented.
"""

from __future__ import annotations

import hashlib
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import EndpointMismatchError
from .params import ONE, ZERO, as_param

Coordinates = tuple[Fraction, ...]
Label = str
Point = Union[Coordinates, Label]


@dataclass(frozen=True)
class PolylinePath:
    """Piecewise-linear path given by (t, point) breakpoints.

    Invariants: t strictly increasing from 0 to 1, all points of one
    dimension, and no zero-length segments — consecutive points are distinct
    unless the path was built with allow_stalls (used internally for
    collapsed paths and degenerate constant arcs, where a plateau is the
    whole point).
    """

    breakpoints: tuple[tuple[Fraction, Coordinates], ...]
    allow_stalls: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        bps = tuple(
            (as_param(t), tuple(Fraction(c) for c in p)) for t, p in self.breakpoints
        )
        object.__setattr__(self, "breakpoints", bps)
        if len(bps) < 2:
            raise ValueError("a polyline needs at least two breakpoints")
        if bps[0][0] != ZERO or bps[-1][0] != ONE:
            raise ValueError("parameter range must be exactly [0,1]")
        d = len(bps[0][1])
        if d < 1:
            raise ValueError("dimension must be at least 1")
        for (t0, p0), (t1, p1) in zip(bps, bps[1:]):
            if not t0 < t1:
                raise ValueError(f"breakpoint parameters not increasing at t={t1}")
            if len(p1) != d:
                raise ValueError("inconsistent point dimensions")
            if p0 == p1 and not self.allow_stalls:
                raise ValueError(f"zero-length segment at t={t0}")

    @property
    def dim(self) -> int:
        return len(self.breakpoints[0][1])

    @property
    def knots(self) -> tuple[Fraction, ...]:
        return tuple(t for t, _ in self.breakpoints)

    def at(self, t: Fraction) -> Coordinates:
        t = as_param(t)
        ts = self.knots
        i = bisect_right(ts, t) - 1
        if i == len(ts) - 1:
            return self.breakpoints[-1][1]
        t0, p0 = self.breakpoints[i]
        t1, p1 = self.breakpoints[i + 1]
        w = (t - t0) / (t1 - t0)
        return tuple(a + w * (b - a) for a, b in zip(p0, p1))


@dataclass(frozen=True)
class DiscretePath:
    """Step path over a finite label sequence, samples at i/(n-1).

    Consecutive labels may repeat only when built with allow_repeats; repeats
    encode stalls produced by collapsing and are never accepted as primary
    input.
    """

    labels: tuple[Label, ...]
    allow_repeats: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        labs = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labs)
        if len(labs) < 2:
            raise ValueError("a discrete path needs at least two samples")
        if not self.allow_repeats:
            for a, b in zip(labs, labs[1:]):
                if a == b:
                    raise ValueError(f"consecutive repeated label {a!r}")

    @property
    def knots(self) -> tuple[Fraction, ...]:
        m = len(self.labels) - 1
        return tuple(Fraction(i, m) for i in range(m + 1))

    def at(self, t: Fraction) -> Label:
        t = as_param(t)
        m = len(self.labels) - 1
        i = int(t * m)  # floor: nearest lower sample
        return self.labels[i]


PathHandle = Union[PolylinePath, DiscretePath]


def evaluate(path: PathHandle, t: Fraction) -> Point:
    """Exact value of the path at parameter t."""
    return path.at(t)


def is_loop(path: PathHandle) -> bool:
    return evaluate(path, ZERO) == evaluate(path, ONE)


def fingerprint(path: PathHandle) -> str:
    """Content hash binding derived data (cancellations) to one path."""
    h = hashlib.sha256()
    if isinstance(path, PolylinePath):
        h.update(b"polyline")
        for t, p in path.breakpoints:
            h.update(str(t).encode())
            for c in p:
                h.update(b"," + str(c).encode())
            h.update(b";")
    else:
        h.update(b"discrete")
        for lab in path.labels:
            h.update(b"|" + lab.encode())
    return h.hexdigest()


def reverse(path: PathHandle) -> PathHandle:
    """Reverse traversal: value at t becomes value at 1-t.

    For step paths the identity holds at the sample parameters (the step
    convention is not symmetric between samples).
    """
    if isinstance(path, PolylinePath):
        bps = tuple((ONE - t, p) for t, p in reversed(path.breakpoints))
        return PolylinePath(bps, allow_stalls=path.allow_stalls)
    return DiscretePath(tuple(reversed(path.labels)), allow_repeats=path.allow_repeats)


def concat(alpha: PathHandle, beta: PathHandle) -> PathHandle:
    """Concatenation: run alpha, then beta.

    Polylines use the standard parameterization (alpha on [0,1/2], beta on
    [1/2,1]).  Discrete paths join sample sequences, which places the
    junction at (n-1)/(n+k-2); the result is the same path up to
    reparameterization.
    """
    if type(alpha) is not type(beta):
        raise TypeError("cannot concatenate different path variants")
    if evaluate(alpha, ONE) != evaluate(beta, ZERO):
        raise EndpointMismatchError(
            f"first path ends at {evaluate(alpha, ONE)}, second starts at {evaluate(beta, ZERO)}"
        )
    if isinstance(alpha, PolylinePath):
        if alpha.dim != beta.dim:
            raise TypeError("cannot concatenate polylines of different dimensions")
        half = Fraction(1, 2)
        bps = [(t * half, p) for t, p in alpha.breakpoints]
        bps += [(half + t * half, p) for t, p in beta.breakpoints[1:]]
        return PolylinePath(
            tuple(bps), allow_stalls=alpha.allow_stalls or beta.allow_stalls
        )
    labs = alpha.labels + beta.labels[1:]
    return DiscretePath(labs, allow_repeats=alpha.allow_repeats or beta.allow_repeats)


def _positively_parallel(u: Coordinates, v: Coordinates) -> bool:
    """u = c*v for some c > 0 (both nonzero)."""
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            if u[i] * v[j] != u[j] * v[i]:
                return False
    dot = sum(a * b for a, b in zip(u, v))
    return dot > 0


def polyline_normal_form(path: PolylinePath) -> tuple[Coordinates, ...]:
    """Vertex sequence modulo increasing reparameterization.

    Runs of equal consecutive points collapse to a single stall pair (a stall
    of any positive duration is the same up to reparameterization, but a
    stall is not removable), and interior vertices whose adjacent segments
    continue in the same direction are dropped.  Direction-reversing
    collinear vertices (retraces) are essential and stay.
    """
    pts: list[Coordinates] = []
    for _, p in path.breakpoints:
        if len(pts) >= 2 and pts[-1] == pts[-2] == p:
            continue
        pts.append(p)
    out: list[Coordinates] = [pts[0]]
    for i in range(1, len(pts) - 1):
        u = tuple(b - a for a, b in zip(out[-1], pts[i]))
        v = tuple(b - a for a, b in zip(pts[i], pts[i + 1]))
        if any(u) and any(v) and _positively_parallel(u, v):
            continue
        out.append(pts[i])
    out.append(pts[-1])
    return tuple(out)


def discrete_normal_form(path: DiscretePath) -> tuple[Label, ...]:
    """Label sequence with consecutive duplicates collapsed."""
    out: list[Label] = []
    for lab in path.labels:
        if not out or out[-1] != lab:
            out.append(lab)
    return tuple(out)


def reparam_equivalent(alpha: PathHandle, beta: PathHandle) -> bool:
    """True iff the paths agree after an increasing reparameterization."""
    if type(alpha) is not type(beta):
        raise TypeError("cannot compare different path variants")
    if isinstance(alpha, PolylinePath):
        return polyline_normal_form(alpha) == polyline_normal_form(beta)
    return discrete_normal_form(alpha) == discrete_normal_form(beta)
