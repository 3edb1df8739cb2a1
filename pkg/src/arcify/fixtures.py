"""Reproducible fixtures: worked examples and seeded random path generators."""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .coincidence import coincidence_set
from .errors import EndpointMismatchError
from .params import IntervalFamily
from .paths import (
    DiscretePath,
    PathHandle,
    PolylinePath,
    concat,
    evaluate,
    reverse,
)
from .reduction import CollapsingMap, simplify_vertices


class FixtureKind(Enum):
    RETRACE = "retrace"
    FIGURE_EIGHT = "figure_eight"
    NESTED_DISCRETE = "nested_discrete"
    QUOTIENT = "quotient"
    RANDOM_POLYLINE = "random_polyline"
    RANDOM_DISCRETE = "random_discrete"


RANDOM_KINDS = (FixtureKind.RANDOM_POLYLINE, FixtureKind.RANDOM_DISCRETE)


@dataclass(frozen=True)
class FixtureSpec:
    """Recipe for a fixture; equal specs always produce identical fixtures."""

    kind: FixtureKind
    seed: int = 0
    size: int = 8
    depth: int = 2
    loops: int = 1
    alphabet: int = 3


def build_retrace_example(beta: PathHandle, gamma_path: PathHandle) -> PathHandle:
    """The out-and-back-then-across path: beta, its reverse, then gamma.

    Standard parameterization: beta on [0,1/4], its reverse on [1/4,1/2],
    gamma on [1/2,1].  Requires beta and gamma to share both endpoints;
    injectivity and disjoint interiors are the caller's obligation.
    """
    if evaluate(beta, Fraction(0)) != evaluate(gamma_path, Fraction(0)):
        raise EndpointMismatchError("beta and gamma must start at the same point")
    if evaluate(beta, Fraction(1)) != evaluate(gamma_path, Fraction(1)):
        raise EndpointMismatchError("beta and gamma must end at the same point")
    return concat(concat(beta, reverse(beta)), gamma_path)


def standard_retrace() -> PathHandle:
    """Lens-shaped instance: beta arcs over the top, gamma runs straight."""
    beta = PolylinePath(
        (
            (Fraction(0), (Fraction(0), Fraction(0))),
            (Fraction(1, 2), (Fraction(1, 2), Fraction(1))),
            (Fraction(1), (Fraction(1), Fraction(0))),
        )
    )
    gamma = PolylinePath(
        (
            (Fraction(0), (Fraction(0), Fraction(0))),
            (Fraction(1), (Fraction(1), Fraction(0))),
        )
    )
    return build_retrace_example(beta, gamma)


def build_figure_eight() -> PolylinePath:
    """Non-loop path with a single subloop on (1/4, 3/4)."""
    pts = [
        (Fraction(0), (0, 0)),
        (Fraction(1, 4), (1, 0)),
        (Fraction(5, 12), (2, 1)),
        (Fraction(7, 12), (3, 0)),
        (Fraction(3, 4), (1, 0)),
        (Fraction(1), (0, -2)),
    ]
    return PolylinePath(tuple((t, tuple(Fraction(c) for c in p)) for t, p in pts))


def build_nested_discrete(depth: int) -> DiscretePath:
    """Palindrome of distinct labels around a center, plus a fresh tail.

    depth=2 gives [a, b, c, b, a, d]; coincidence pairs are strictly nested.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    arms = [chr(ord("a") + i) for i in range(depth)]
    center = chr(ord("a") + depth)
    tail = chr(ord("a") + depth + 1)
    return DiscretePath(tuple(arms + [center] + arms[::-1] + [tail]))


def build_quotient_fixture(
    N: int,
) -> tuple[DiscretePath, list[tuple[Fraction, Fraction]]]:
    """Label model of the interval with +/- n/(n+1) identified, depth N.

    Returns the path and its N identified parameter pairs in nesting order
    (innermost first).  The identifications are encoded by label equality;
    endpoints keep distinct labels, so the loop-deletion check comes out
    Violated at every finite depth.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    labels = (
        ["end-"]
        + [f"pair{n}" for n in range(N, 0, -1)]
        + ["mid"]
        + [f"pair{n}" for n in range(1, N + 1)]
        + ["end+"]
    )
    m = 2 * N + 2
    pairs = [(Fraction(N + 1 - n, m), Fraction(N + 1 + n, m)) for n in range(1, N + 1)]
    return DiscretePath(tuple(labels)), pairs


def _random_discrete(rng: random.Random, size: int, alphabet: int) -> DiscretePath:
    letters = [chr(ord("a") + i) for i in range(alphabet)]
    for _ in range(1000):
        labels = [rng.choice(letters)]
        for _ in range(size - 1):
            labels.append(rng.choice([x for x in letters if x != labels[-1]]))
        if labels[0] != labels[-1]:
            return DiscretePath(tuple(labels))
    raise RuntimeError("could not draw a discrete path with distinct endpoints")


def _random_polyline(rng: random.Random, size: int, loops: int) -> PolylinePath:
    def draw_point(avoid):
        while True:
            p = (Fraction(rng.randint(-16, 16), 8), Fraction(rng.randint(-16, 16), 8))
            if p != avoid:
                return p

    for _ in range(1000):
        verts = [draw_point(None)]
        for _ in range(size - 1):
            verts.append(draw_point(verts[-1]))
        ok = True
        for _ in range(loops):
            i = rng.randrange(0, len(verts) - 1)
            j = rng.randrange(i + 2, len(verts) + 1)
            revisit = verts[i]
            if verts[j - 1] == revisit or (j < len(verts) and verts[j] == revisit):
                ok = False
                break
            verts.insert(j, revisit)
        if not ok or verts[0] == verts[-1]:
            continue
        n = len(verts)
        path = PolylinePath(
            tuple((Fraction(i, n - 1), p) for i, p in enumerate(verts))
        )
        cs = coincidence_set(path)
        # Generic position: crossings only, never collinear overlaps; with no
        # forced loops the draw must be outright injective.
        if cs.segments:
            continue
        if loops == 0 and cs.points:
            continue
        if loops > 0 and not cs.points:
            continue
        return path
    raise RuntimeError("could not draw a polyline in generic position")


def generate_random_path(spec: FixtureSpec) -> PathHandle:
    """Seed-deterministic random path with guaranteed distinct endpoints."""
    if spec.kind not in RANDOM_KINDS:
        raise ValueError(f"{spec.kind} is not a random fixture kind")
    rng = random.Random(spec.seed)
    if spec.kind is FixtureKind.RANDOM_DISCRETE:
        return _random_discrete(rng, spec.size, spec.alphabet)
    return _random_polyline(rng, spec.size, spec.loops)


def build_fixture(spec: FixtureSpec) -> PathHandle:
    """Dispatch any fixture kind to its builder (quotient: path only)."""
    if spec.kind in RANDOM_KINDS:
        return generate_random_path(spec)
    if spec.kind is FixtureKind.RETRACE:
        return standard_retrace()
    if spec.kind is FixtureKind.FIGURE_EIGHT:
        return build_figure_eight()
    if spec.kind is FixtureKind.NESTED_DISCRETE:
        return build_nested_discrete(spec.depth)
    return build_quotient_fixture(spec.depth)[0]


def perturbed_collapsing_map(family: IntervalFamily, seed: int) -> CollapsingMap:
    """A valid but non-canonical collapsing map for the family.

    Complement spans get seed-dependent positive weights instead of the
    proportional allocation, so the map differs from the canonical one by an
    increasing homeomorphism.
    """
    rng = random.Random(seed)
    spans: list[tuple[Fraction, Fraction]] = []
    cur = Fraction(0)
    for iv in family:
        if iv.lo > cur:
            spans.append((cur, iv.lo))
        cur = iv.hi
    if cur < Fraction(1):
        spans.append((cur, Fraction(1)))
    weights = {span: Fraction(rng.randint(1, 9)) for span in spans}
    total = sum(weights[s] * (s[1] - s[0]) for s in spans)
    verts: list[tuple[Fraction, Fraction]] = [(Fraction(0), Fraction(0))]
    acc = Fraction(0)
    cur = Fraction(0)
    for iv in family:
        if iv.lo > cur:
            acc += weights[(cur, iv.lo)] * (iv.lo - cur) / total
            verts.append((iv.lo, acc))
        verts.append((iv.hi, acc))
        cur = iv.hi
    if cur < Fraction(1):
        verts.append((Fraction(1), Fraction(1)))
    return CollapsingMap(simplify_vertices(verts))
