import random
from fractions import Fraction as F

import pytest

from arcify import (
    CollapsingMap,
    DiscretePath,
    IsLoopError,
    NotCollapsibleError,
    Ordering,
    cantor_collapsing_map,
    collapse_path,
    collapsing_map,
    compare_families,
    empty_cancellation,
    evaluate,
    extract_arc,
    image_contained,
    injectivity_witness,
    is_collapsible,
    maximalize,
    middle_thirds_family,
    reparam_equivalent,
    u_reduction,
    validate_cancellation,
)
from arcify.fixtures import (
    FixtureKind,
    FixtureSpec,
    build_figure_eight,
    generate_random_path,
    perturbed_collapsing_map,
    standard_retrace,
)
from helpers import (
    discrete_candidate_pairs,
    enumerate_families,
    fam,
    is_maximal_fast,
    maximal_families_naive,
    poly,
    reduction_is_injective,
)


def cantor_oracle(x: F) -> F:
    """Recursive dyadic evaluation of the ternary staircase."""
    if x == 0:
        return F(0)
    if x == 1:
        return F(1)
    if x <= F(1, 3):
        return cantor_oracle(3 * x) / 2
    if x < F(2, 3):
        return F(1, 2)
    return F(1, 2) + cantor_oracle(3 * x - 2) / 2


# --- collapsing maps -------------------------------------------------------


def test_collapsing_map_empty_is_identity():
    path = poly((0, 0), (1, 0))
    gamma = u_reduction(path, empty_cancellation(path)).gamma
    assert gamma.vertices == ((F(0), F(0)), (F(1), F(1)))


def test_collapsing_map_middle_third():
    path = DiscretePath(("x", "x", "y"), allow_repeats=True)
    lc = validate_cancellation(path, fam(("1/3", "2/3")))
    gamma = collapsing_map(lc)
    assert gamma.vertices == (
        (F(0), F(0)),
        (F(1, 3), F(1, 2)),
        (F(2, 3), F(1, 2)),
        (F(1), F(1)),
    )


def test_collapsing_map_rejects_whole_interval():
    path = poly((0, 0), (1, 0), (0, 0), ts=[0, F(1, 2), 1])
    lc = validate_cancellation(path, fam((0, 1)))
    with pytest.raises(NotCollapsibleError):
        collapsing_map(lc)


def test_collapsing_map_contract():
    rng = random.Random(4)
    for seed in range(30):
        spec = FixtureSpec(FixtureKind.RANDOM_POLYLINE, seed=seed, size=8, loops=2)
        path = generate_random_path(spec)
        lc = maximalize(path, empty_cancellation(path))
        if len(lc.family) == 0:
            continue
        gamma = collapsing_map(lc)
        assert gamma.vertices[0] == (F(0), F(0))
        assert gamma.vertices[-1] == (F(1), F(1))
        ys = [y for _, y in gamma.vertices]
        assert all(a <= b for a, b in zip(ys, ys[1:]))
        assert gamma.plateaus() == tuple((v.lo, v.hi) for v in lc.family)
        t = F(rng.randint(0, 16), 16)
        assert 0 <= gamma.value(t) <= 1


def test_cantor_map_depth_one():
    gamma = cantor_collapsing_map(1)
    assert gamma.vertices == (
        (F(0), F(0)),
        (F(1, 3), F(1, 2)),
        (F(2, 3), F(1, 2)),
        (F(1), F(1)),
    )


def test_cantor_map_hits_one():
    assert cantor_collapsing_map(3).value(F(1)) == F(1)


def test_cantor_depth_two_plateau_values():
    gamma = cantor_collapsing_map(2)
    plateaus = gamma.plateaus()
    assert len(plateaus) == 3
    assert sorted(gamma.value(a) for a, _ in plateaus) == [F(1, 4), F(1, 2), F(3, 4)]


def test_cantor_matches_recursive_oracle():
    for depth in range(1, 6):
        gamma = cantor_collapsing_map(depth)
        for t, y in gamma.vertices:
            assert y == cantor_oracle(t)
        for lo, hi in gamma.plateaus():
            mid = (lo + hi) / 2
            assert gamma.value(mid) == cantor_oracle(mid)


def test_middle_thirds_count():
    for depth in range(1, 7):
        assert len(middle_thirds_family(depth)) == 2**depth - 1


def test_preimage_is_maximal_closed_interval():
    gamma = cantor_collapsing_map(2)
    # 1/2 is the plateau value of the central removed third.
    assert gamma.preimage(F(1, 2), F(1, 2)) == (F(1, 3), F(2, 3))
    assert gamma.preimage(F(0), F(1)) == (F(0), F(1))
    c, d = gamma.preimage(F(1, 4), F(3, 4))
    assert (c, d) == (F(1, 9), F(8, 9))


# --- collapse and reduce ----------------------------------------------------


def test_collapse_with_empty_family_is_identity():
    path = standard_retrace()
    assert collapse_path(path, empty_cancellation(path)) is path


def test_collapse_figure_eight():
    path = build_figure_eight()
    lc = validate_cancellation(path, fam(("1/4", "3/4")))
    collapsed = collapse_path(path, lc)
    anchor = evaluate(path, F(1, 4))
    for t in (F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(3, 4)):
        assert evaluate(collapsed, t) == anchor
    for t in (F(0), F(1, 8), F(7, 8), F(1)):
        assert evaluate(collapsed, t) == evaluate(path, t)


def test_collapse_retrace_start():
    path = standard_retrace()
    lc = validate_cancellation(path, fam((0, "1/2")))
    collapsed = collapse_path(path, lc)
    start = evaluate(path, F(0))
    for t in (F(0), F(1, 4), F(1, 2)):
        assert evaluate(collapsed, t) == start
    assert evaluate(collapsed, F(3, 4)) == evaluate(path, F(3, 4))


def test_u_reduction_empty_family():
    path = standard_retrace()
    result = u_reduction(path, empty_cancellation(path))
    assert result.beta == path
    assert result.gamma.vertices == ((F(0), F(0)), (F(1), F(1)))


def test_u_reduction_retrace_both_maximal():
    path = standard_retrace()
    gamma_path = poly((0, 0), (1, 0))
    beta_path = poly((0, 0), ("1/2", 1), (1, 0))

    r1 = u_reduction(path, validate_cancellation(path, fam((0, "1/2"))))
    assert injectivity_witness(r1.beta) is None
    assert reparam_equivalent(r1.beta, gamma_path)

    r2 = u_reduction(path, validate_cancellation(path, fam(("1/4", 1))))
    assert injectivity_witness(r2.beta) is None
    assert reparam_equivalent(r2.beta, beta_path)


def test_u_reduction_rejects_non_collapsible():
    path = poly((0, 0), (1, 0), (0, 0), ts=[0, F(1, 2), 1])
    lc = validate_cancellation(path, fam((0, 1)))
    with pytest.raises(NotCollapsibleError):
        u_reduction(path, lc)


def test_u_reduction_discrete_offgrid_intervals():
    # Interval endpoints need not be sample-aligned; the identity still holds.
    path = DiscretePath(("a", "b", "a", "c"))
    lc = validate_cancellation(path, fam(("7/10", "19/20")))
    result = u_reduction(path, lc)
    assert result.beta.labels == ("a", "b", "a", "c")


# --- injectivity witness ----------------------------------------------------


def test_witness_none_for_injective():
    assert injectivity_witness(poly((0, 0), (1, 0))) is None


def test_witness_square_loop():
    square = poly((0, 0), (1, 0), (1, 1), (0, 1), (0, 0))
    assert injectivity_witness(square) == (F(0), F(1))


def test_witness_retrace_smallest_x_largest_y():
    assert injectivity_witness(standard_retrace()) == (F(0), F(1, 2))


def test_witness_discrete():
    path = DiscretePath(("a", "b", "c", "b", "a", "d"))
    assert injectivity_witness(path) == (F(0), F(4, 5))


# --- maximalize -------------------------------------------------------------


def test_maximalize_injective_segment():
    path = poly((0, 0), (1, 0))
    assert maximalize(path, empty_cancellation(path)).family.intervals == ()


def test_maximalize_retrace():
    path = standard_retrace()
    lc = maximalize(path, empty_cancellation(path))
    assert lc.family.intervals == fam((0, "1/2")).intervals


def test_maximalize_nested_discrete():
    path = DiscretePath(("a", "b", "c", "b", "a", "d"))
    lc = maximalize(path, empty_cancellation(path))
    assert lc.family.intervals == fam((0, "4/5")).intervals
    # Confirmed against brute force over all candidate-generated families.
    cands = discrete_candidate_pairs(path)
    assert is_maximal_fast(lc.family, cands)


def test_maximalize_rejects_loops():
    square = poly((0, 0), (1, 0), (1, 1), (0, 1), (0, 0))
    with pytest.raises(IsLoopError):
        maximalize(square, empty_cancellation(square))


def test_maximalize_iteration_budget():
    for seed in range(20):
        spec = FixtureSpec(FixtureKind.RANDOM_POLYLINE, seed=seed, size=9, loops=3)
        path = generate_random_path(spec)
        stats = {}
        maximalize(path, empty_cancellation(path), stats=stats)
        assert stats["iterations"] <= len(path.breakpoints)


# --- extract_arc ------------------------------------------------------------


def test_extract_arc_injective_is_identity():
    path = poly((0, 0), ("1/2", "1/3"), (1, 0))
    assert reparam_equivalent(extract_arc(path), path)


def test_extract_arc_retrace_is_gamma():
    assert reparam_equivalent(extract_arc(standard_retrace()), poly((0, 0), (1, 0)))


def test_extract_arc_nested_discrete():
    assert extract_arc(DiscretePath(("a", "b", "c", "b", "a", "d"))).labels == (
        "a",
        "d",
    )


def test_extract_arc_loop_degenerates():
    square = poly((0, 0), (1, 0), (1, 1), (0, 1), (0, 0))
    arc = extract_arc(square)
    assert evaluate(arc, F(0)) == evaluate(arc, F(1)) == (F(0), F(0))
    assert all(p == (F(0), F(0)) for _, p in arc.breakpoints)


def test_extract_arc_pipeline_properties():
    for seed in range(40):
        spec = FixtureSpec(FixtureKind.RANDOM_POLYLINE, seed=seed, size=9, loops=2)
        path = generate_random_path(spec)
        arc = extract_arc(path)
        assert injectivity_witness(arc) is None
        assert evaluate(arc, F(0)) == evaluate(path, F(0))
        assert evaluate(arc, F(1)) == evaluate(path, F(1))
        assert image_contained(path, arc)
        assert reparam_equivalent(extract_arc(arc), arc)
    for seed in range(40):
        spec = FixtureSpec(FixtureKind.RANDOM_DISCRETE, seed=seed, size=14, alphabet=3)
        path = generate_random_path(spec)
        arc = extract_arc(path)
        assert injectivity_witness(arc) is None
        assert evaluate(arc, F(0)) == evaluate(path, F(0))
        assert evaluate(arc, F(1)) == evaluate(path, F(1))
        assert image_contained(path, arc)
        assert reparam_equivalent(extract_arc(arc), arc)


# --- oracles ----------------------------------------------------------------


def test_fast_maximality_matches_naive_definition():
    rng = random.Random(13)
    for _ in range(60):
        n = rng.randint(3, 6)
        labels = [rng.choice("abc") for _ in range(n)]
        labels = [
            lab if i == 0 or lab != labels[i - 1] else ("a" if lab != "a" else "b")
            for i, lab in enumerate(labels)
        ]
        try:
            path = DiscretePath(tuple(labels))
        except ValueError:
            continue
        cands = discrete_candidate_pairs(path)
        fams = enumerate_families(cands)
        naive = {f.intervals for f in maximal_families_naive(fams)}
        fast = {f.intervals for f in fams if is_maximal_fast(f, cands)}
        assert naive == fast


def test_small_instance_oracle():
    # Lighter version of the acceptance sweep: random paths with n <= 8.
    rng = random.Random(99)
    for _ in range(40):
        n = rng.randint(2, 8)
        spec = FixtureSpec(FixtureKind.RANDOM_DISCRETE, seed=rng.randint(0, 10**6), size=n)
        path = generate_random_path(spec)
        cands = discrete_candidate_pairs(path)
        fams = enumerate_families(cands)
        out = maximalize(path, empty_cancellation(path))
        assert is_maximal_fast(out.family, cands)
        assert not any(
            compare_families(out.family, f) is Ordering.LESS for f in fams
        )
        for f in fams:
            if is_maximal_fast(f, cands) and is_collapsible(
                validate_cancellation(path, f)
            ):
                assert reduction_is_injective(path, f)


def test_reduction_unique_up_to_reparameterization():
    count = 0
    seed = 0
    while count < 15:
        spec = FixtureSpec(FixtureKind.RANDOM_POLYLINE, seed=seed, size=8, loops=2)
        seed += 1
        path = generate_random_path(spec)
        lc = maximalize(path, empty_cancellation(path))
        if len(lc.family) == 0:
            continue
        count += 1
        canonical = u_reduction(path, lc)
        perturbed = u_reduction(
            path, lc, gamma=perturbed_collapsing_map(lc.family, seed)
        )
        assert reparam_equivalent(canonical.beta, perturbed.beta)


def test_collapsing_map_validation():
    with pytest.raises(ValueError):
        CollapsingMap(((F(0), F(0)), (F(1), F(1, 2))))
    with pytest.raises(ValueError):
        CollapsingMap(((F(0), F(0)), (F(1, 2), F(3, 4)), (F(1, 2), F(1)), (F(1), F(1))))
    with pytest.raises(ValueError):
        CollapsingMap(((F(0), F(0)), (F(1, 2), F(3, 4)), (F(1), F(1, 2))))
