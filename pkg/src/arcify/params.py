"""Exact rational parameters in [0,1], open intervals, and disjoint interval families.

Everything here is immutable and pure.  All arithmetic is exact (stdlib
fractions), so parameter equality is decidable and the partial order on
interval families is computed without tolerances.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable

from .errors import OverlapError

# A parameter is an exact rational in [0,1].  Fraction already keeps lowest
# terms with a positive denominator; the range constraint is checked at the
# points where parameters enter the system.
Param = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def as_param(value) -> Fraction:
    """Coerce to an exact rational and require 0 <= value <= 1."""
    t = Fraction(value)
    if not ZERO <= t <= ONE:
        raise ValueError(f"parameter {t} outside [0,1]")
    return t


class Ordering(Enum):
    LESS = "LESS"
    GREATER = "GREATER"
    EQUAL = "EQUAL"
    INCOMPARABLE = "INCOMPARABLE"


@dataclass(frozen=True, order=True)
class OpenInterval:
    """Open subinterval (lo, hi) of [0,1] with lo < hi strictly.

    Empty and degenerate intervals are unrepresentable by construction.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_param(self.lo))
        object.__setattr__(self, "hi", as_param(self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"degenerate interval ({self.lo}, {self.hi})")

    def contains(self, t: Fraction) -> bool:
        return self.lo < t < self.hi

    def contains_interval(self, other: "OpenInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "OpenInterval") -> bool:
        # Open intervals: touching endpoints do not overlap.
        return self.lo < other.hi and other.lo < self.hi

    def __str__(self):
        return f"({self.lo}, {self.hi})"


@dataclass(frozen=True)
class IntervalFamily:
    """Sorted family of pairwise-disjoint open intervals.

    Adjacent intervals may share an endpoint (disjoint as open sets); whether
    that is acceptable for collapsing is a separate predicate in the
    cancellation module.
    """

    intervals: tuple[OpenInterval, ...]

    def __post_init__(self):
        ivs = tuple(self.intervals)
        object.__setattr__(self, "intervals", ivs)
        for a, b in zip(ivs, ivs[1:]):
            if not a.hi <= b.lo:
                raise ValueError(f"intervals {a} and {b} out of order or overlapping")

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __str__(self):
        return "{" + ", ".join(str(iv) for iv in self.intervals) + "}"



def normalize_family(raw: Iterable[OpenInterval]) -> IntervalFamily:
    """Sort intervals into a family; reject overlapping input outright.

    Overlaps are an error rather than a silent merge: OverlapError carries the
    two offending positions of the *input* list.
    """
    items = list(raw)
    order = sorted(range(len(items)), key=lambda k: (items[k].lo, items[k].hi))
    for a, b in zip(order, order[1:]):
        if items[a].overlaps(items[b]):
            raise OverlapError(min(a, b), max(a, b))
    return IntervalFamily(tuple(items[k] for k in order))


def _each_contained(inner: IntervalFamily, outer: IntervalFamily) -> bool:
    """True if every interval of `inner` lies inside some interval of `outer`."""
    j = 0
    outs = outer.intervals
    for u in inner.intervals:
        while j < len(outs) and outs[j].hi < u.hi:
            j += 1
        if j == len(outs) or not outs[j].contains_interval(u):
            return False
    return True


def compare_families(U: IntervalFamily, V: IntervalFamily) -> Ordering:
    """Partial order: U <= V iff each interval of U is contained in one of V."""
    if U.intervals == V.intervals:
        return Ordering.EQUAL
    u_le_v = _each_contained(U, V)
    v_le_u = _each_contained(V, U)
    if u_le_v and v_le_u:
        # Mutual containment of disjoint families forces equality.
        return Ordering.EQUAL
    if u_le_v:
        return Ordering.LESS
    if v_le_u:
        return Ordering.GREATER
    return Ordering.INCOMPARABLE


def interval_membership(family: IntervalFamily, t: Fraction) -> int | None:
    """Index of the unique interval with t strictly inside, or None."""
    t = as_param(t)
    los = [iv.lo for iv in family.intervals]
    i = bisect_right(los, t) - 1
    if i >= 0 and family.intervals[i].contains(t):
        return i
    return None
