"""Shared test utilities: shorthand constructors and brute-force oracles."""

from __future__ import annotations

import random
from fractions import Fraction as F
from itertools import product

from arcify import (
    DiscretePath,
    IntervalFamily,
    OpenInterval,
    Ordering,
    PolylinePath,
    compare_families,
    injectivity_witness,
    normalize_family,
    u_reduction,
    validate_cancellation,
)


def iv(a, b) -> OpenInterval:
    return OpenInterval(F(a), F(b))


def fam(*pairs) -> IntervalFamily:
    return normalize_family([iv(a, b) for a, b in pairs])


def poly(*points, ts=None) -> PolylinePath:
    """Polyline through the given points, uniformly parameterized by default."""
    n = len(points)
    if ts is None:
        ts = [F(i, n - 1) for i in range(n)]
    return PolylinePath(
        tuple((F(t), tuple(F(c) for c in p)) for t, p in zip(ts, points))
    )


def double_loop() -> PolylinePath:
    """Loop through two triangles: value repeats at 0, 1/2, and 1."""
    return poly(
        (0, 0), (1, 1), (1, -1), (0, 0), (-1, 1), (-1, -1), (0, 0),
        ts=[0, F(1, 6), F(1, 3), F(1, 2), F(2, 3), F(5, 6), 1],
    )


def all_discrete_paths(n: int, alphabet: int = 3):
    """Every label sequence of length n with no consecutive repeats."""
    letters = [chr(ord("a") + i) for i in range(alphabet)]
    for seq in product(letters, repeat=n):
        if all(a != b for a, b in zip(seq, seq[1:])):
            yield DiscretePath(seq)


def discrete_candidate_pairs(path: DiscretePath) -> list[OpenInterval]:
    """All open intervals between equal-label sample pairs."""
    m = len(path.labels) - 1
    return [
        OpenInterval(F(i, m), F(j, m))
        for i in range(m + 1)
        for j in range(i + 1, m + 1)
        if path.labels[i] == path.labels[j]
    ]


def enumerate_families(candidates: list[OpenInterval]) -> list[IntervalFamily]:
    """Every family assembled from pairwise-disjoint candidate intervals."""
    cands = sorted(candidates, key=lambda v: (v.lo, v.hi))
    out: list[IntervalFamily] = []
    chosen: list[OpenInterval] = []

    def extend(start: int) -> None:
        out.append(IntervalFamily(tuple(chosen)))
        for k in range(start, len(cands)):
            if chosen and cands[k].lo < chosen[-1].hi:
                continue
            chosen.append(cands[k])
            extend(k + 1)
            chosen.pop()

    extend(0)
    return out


def is_maximal_fast(family: IntervalFamily, candidates: list[OpenInterval]) -> bool:
    """Maximality among candidate-generated families via single extensions.

    A family is beaten exactly when some candidate (c,d) outside it contains
    every member it meets; then swapping those members for (c,d) is a
    strictly greater valid family.
    """
    members = set(family.intervals)
    for cd in candidates:
        if cd in members:
            continue
        meeting = [m for m in family if m.lo < cd.hi and m.hi > cd.lo]
        if all(cd.lo <= m.lo and m.hi <= cd.hi for m in meeting):
            return False
    return True


def maximal_families_naive(families: list[IntervalFamily]) -> list[IntervalFamily]:
    """Quadratic reference: maximal iff nothing enumerated is strictly greater."""
    out = []
    for u in families:
        if not any(compare_families(u, v) is Ordering.LESS for v in families):
            out.append(u)
    return out


def reduction_is_injective(path, family: IntervalFamily) -> bool:
    lc = validate_cancellation(path, family)
    return injectivity_witness(u_reduction(path, lc).beta) is None


def random_small_family(rng: random.Random, slots: int = 8) -> IntervalFamily:
    """Random disjoint family on the grid {0, 1/slots, ..., 1}."""
    cuts = sorted(rng.sample(range(slots + 1), rng.randint(0, min(6, slots))))
    ivs = []
    k = 0
    while k + 1 < len(cuts):
        if rng.random() < 0.8:
            ivs.append(OpenInterval(F(cuts[k], slots), F(cuts[k + 1], slots)))
            k += 2 if rng.random() < 0.5 else 1
        else:
            k += 1
    return normalize_family(ivs)
