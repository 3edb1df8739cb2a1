"""Loop-cancellations: validation, collapsibility, merging, chain bounds.

A loop-cancellation is a disjoint open interval family whose endpoint pairs
are loops of a specific path.  The cancellation carries a fingerprint of that
path so it cannot silently be replayed against a different one.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import (
    FingerprintMismatchError,
    NotAChainError,
    NotALoopError,
    PremiseFailedError,
)
from .params import (
    IntervalFamily,
    OpenInterval,
    Ordering,
    compare_families,
)
from .paths import PathHandle, evaluate, fingerprint

FULL_INTERVAL = OpenInterval(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class LoopCancellation:
    family: IntervalFamily
    path_fingerprint: str

    def __len__(self):
        return len(self.family)

    def __str__(self):
        return str(self.family)


def check_binding(path: PathHandle, lc: LoopCancellation) -> None:
    if lc.path_fingerprint != fingerprint(path):
        raise FingerprintMismatchError(
            "cancellation was validated against a different path"
        )


def validate_cancellation(path: PathHandle, family: IntervalFamily) -> LoopCancellation:
    """Check every interval's endpoint pair is a loop; bind to the path."""
    for k, iv in enumerate(family):
        if evaluate(path, iv.lo) != evaluate(path, iv.hi):
            raise NotALoopError(k, iv.lo, iv.hi)
    return LoopCancellation(family, fingerprint(path))


def empty_cancellation(path: PathHandle) -> LoopCancellation:
    return LoopCancellation(IntervalFamily(()), fingerprint(path))


def is_collapsible(lc: LoopCancellation) -> bool:
    """True unless the family is {(0,1)} or two closures touch."""
    ivs = lc.family.intervals
    if len(ivs) == 1 and ivs[0] == FULL_INTERVAL:
        return False
    return all(a.hi < b.lo for a, b in zip(ivs, ivs[1:]))


def merge_adjacent(path: PathHandle, lc: LoopCancellation) -> LoopCancellation:
    """Replace endpoint-sharing pairs (a,b),(b,c) by (a,c) until none remain.

    The merged family compares >= the input and still validates: the loop
    equalities transfer along shared endpoints.
    """
    check_binding(path, lc)
    merged: list[OpenInterval] = []
    for iv in lc.family:
        if merged and merged[-1].hi == iv.lo:
            merged[-1] = OpenInterval(merged[-1].lo, iv.hi)
        else:
            merged.append(iv)
    return validate_cancellation(path, IntervalFamily(tuple(merged)))


def chain_upper_bound(
    path: PathHandle, chain: list[LoopCancellation]
) -> LoopCancellation:
    """Upper bound of a finite ascending chain: components of the union.

    The chain must be pre-sorted ascending and pairwise comparable; this is
    verified, not repaired, so mis-sorted input surfaces with indices.  For a
    finite chain the result equals the maximum element.
    """
    for lc in chain:
        check_binding(path, lc)
    for i in range(len(chain)):
        for j in range(i + 1, len(chain)):
            order = compare_families(chain[i].family, chain[j].family)
            if order is Ordering.INCOMPARABLE:
                raise NotAChainError(i, j)
            if order is Ordering.GREATER:
                raise NotAChainError(i, j, reason="not sorted ascending")
    intervals = sorted(
        (iv for lc in chain for iv in lc.family), key=lambda iv: (iv.lo, iv.hi)
    )
    components: list[OpenInterval] = []
    for iv in intervals:
        # Open intervals: merge only on genuine overlap; touching endpoints
        # leave two components.
        if components and iv.lo < components[-1].hi:
            if iv.hi > components[-1].hi:
                components[-1] = OpenInterval(components[-1].lo, iv.hi)
        else:
            components.append(iv)
    return validate_cancellation(path, IntervalFamily(tuple(components)))


class Verdict(Enum):
    PERMITS = "Permits"
    VIOLATED = "Violated"


def loop_deletion_witness(
    path: PathHandle, pairs: list[tuple[Fraction, Fraction]]
) -> Verdict:
    """Finite-depth certificate for the loop-deletion property.

    `pairs` lists nested parameter pairs innermost first:
    0 <= ... <= a2 <= a1 < b1 <= b2 <= ... <= 1, each with equal path values.
    Violated means the endpoints still differ — the truncated version of the
    scenario where agreeing sequences converge to disagreeing endpoints.
    An empty list is a vacuous premise and Permits.
    """
    prev_a, prev_b = None, None
    for n, (a, b) in enumerate(pairs):
        if not a < b:
            raise PremiseFailedError(n, f"pair ({a}, {b}) is not ordered a < b")
        if prev_a is not None and not (a <= prev_a and prev_b <= b):
            raise PremiseFailedError(n, "pairs are not nested outward")
        if evaluate(path, a) != evaluate(path, b):
            raise PremiseFailedError(n, f"path differs at {a} and {b}")
        prev_a, prev_b = a, b
    if pairs and evaluate(path, Fraction(0)) != evaluate(path, Fraction(1)):
        return Verdict.VIOLATED
    return Verdict.PERMITS
