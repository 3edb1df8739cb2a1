import random
from fractions import Fraction as F

import pytest

from arcify import (
    DiscretePath,
    FingerprintMismatchError,
    NotAChainError,
    NotALoopError,
    Ordering,
    PremiseFailedError,
    Verdict,
    chain_upper_bound,
    compare_families,
    empty_cancellation,
    is_collapsible,
    loop_deletion_witness,
    merge_adjacent,
    validate_cancellation,
)
from arcify.fixtures import build_quotient_fixture, standard_retrace
from helpers import double_loop, fam, poly


def square_loop():
    return poly((0, 0), (1, 0), (1, 1), (0, 1), (0, 0))


def test_validate_empty_on_anything():
    assert len(validate_cancellation(poly((0, 0), (1, 0)), fam())) == 0


def test_validate_whole_interval_on_loop():
    lc = validate_cancellation(square_loop(), fam((0, 1)))
    assert len(lc) == 1


def test_validate_rejects_non_loop():
    with pytest.raises(NotALoopError) as exc:
        validate_cancellation(poly((0, 0), (1, 0)), fam(("1/4", "3/4")))
    assert exc.value.index == 0


def test_validate_is_order_insensitive():
    path = double_loop()
    a = validate_cancellation(path, fam((0, "1/2"), ("1/2", 1)))
    b = validate_cancellation(path, fam(("1/2", 1), (0, "1/2")))
    assert a.family.intervals == b.family.intervals


def test_collapsible_excludes_whole_interval():
    lc = validate_cancellation(square_loop(), fam((0, 1)))
    assert not is_collapsible(lc)


def test_collapsible_rejects_touching_closures():
    lc = validate_cancellation(double_loop(), fam((0, "1/2"), ("1/2", 1)))
    assert not is_collapsible(lc)


def test_collapsible_accepts_disjoint_closures():
    path = DiscretePath(("a", "a", "b", "a", "a", "c"), allow_repeats=True)
    lc = validate_cancellation(path, fam((0, "1/5"), ("3/5", "4/5")))
    assert is_collapsible(lc)


def test_merge_two_touching_intervals():
    # alpha(0) = alpha(1/4) = alpha(1/2) on a discrete model.
    path = DiscretePath(("x", "x", "x", "y", "z"), allow_repeats=True)
    lc = validate_cancellation(path, fam((0, "1/4"), ("1/4", "1/2")))
    merged = merge_adjacent(path, lc)
    assert merged.family.intervals == fam((0, "1/2")).intervals
    assert compare_families(merged.family, lc.family) is Ordering.GREATER


def test_merge_leaves_collapsible_fixed():
    # Disjoint closures: nothing to merge.
    path = DiscretePath(("a", "b", "a", "c", "c", "d"), allow_repeats=True)
    lc = validate_cancellation(path, fam((0, "2/5"), ("3/5", "4/5")))
    assert merge_adjacent(path, lc).family.intervals == lc.family.intervals


def test_merge_collapses_figure_eight_to_whole_interval():
    path = double_loop()
    lc = validate_cancellation(path, fam((0, "1/2"), ("1/2", 1)))
    merged = merge_adjacent(path, lc)
    assert merged.family.intervals == fam((0, 1)).intervals
    assert not is_collapsible(merged)


def test_merge_chains_three_intervals():
    path = DiscretePath(("x", "x", "x", "x", "y"), allow_repeats=True)
    lc = validate_cancellation(path, fam((0, "1/4"), ("1/4", "1/2"), ("1/2", "3/4")))
    assert merge_adjacent(path, lc).family.intervals == fam((0, "3/4")).intervals


def test_fingerprint_binding_is_enforced():
    lc = validate_cancellation(square_loop(), fam((0, 1)))
    with pytest.raises(FingerprintMismatchError):
        merge_adjacent(poly((0, 0), (1, 0)), lc)


def quotient_path(n):
    return build_quotient_fixture(n)[0]


def test_chain_singleton():
    path = quotient_path(2)
    chain = [empty_cancellation(path)]
    assert chain_upper_bound(path, chain).family.intervals == ()


def test_chain_nested_pair():
    # Pairs (1/3,2/3) and (1/4,3/4) are loops of this 13-sample model.
    path = DiscretePath(("s", "t", "u", "p", "q", "v", "w", "x", "q", "p", "y", "z", "e"))
    chain = [
        validate_cancellation(path, fam(("1/3", "2/3"))),
        validate_cancellation(path, fam(("1/4", "3/4"))),
    ]
    ub = chain_upper_bound(path, chain)
    assert ub.family.intervals == fam(("1/4", "3/4")).intervals


def test_chain_rejects_incomparable():
    path = standard_retrace()
    chain = [
        validate_cancellation(path, fam((0, "1/2"))),
        validate_cancellation(path, fam(("1/4", 1))),
    ]
    with pytest.raises(NotAChainError) as exc:
        chain_upper_bound(path, chain)
    assert (exc.value.i, exc.value.j) == (0, 1)


def test_chain_rejects_descending_order():
    path = DiscretePath(("s", "t", "u", "p", "q", "v", "w", "x", "q", "p", "y", "z", "e"))
    chain = [
        validate_cancellation(path, fam(("1/4", "3/4"))),
        validate_cancellation(path, fam(("1/3", "2/3"))),
    ]
    with pytest.raises(NotAChainError):
        chain_upper_bound(path, chain)


def test_chain_upper_bound_random_nested_chains():
    rng = random.Random(77)
    for _ in range(100):
        depth = rng.randint(1, 6)
        path = quotient_path(max(depth, 1))
        _, pairs = build_quotient_fixture(max(depth, 1))
        chain = [
            validate_cancellation(path, fam((str(a), str(b))))
            for a, b in pairs[: rng.randint(1, len(pairs))]
        ]
        ub = chain_upper_bound(path, chain)
        assert ub.family.intervals == chain[-1].family.intervals
        for member in chain:
            assert compare_families(ub.family, member.family) in (
                Ordering.GREATER,
                Ordering.EQUAL,
            )


def test_witness_permits_on_loop():
    from arcify import concat, reverse

    seg = poly((0, 0), (2, 1))
    path = concat(seg, reverse(seg))  # alpha(t) = alpha(1-t); a loop
    assert loop_deletion_witness(path, [(F(1, 4), F(3, 4))]) is Verdict.PERMITS


def test_witness_vacuous_premise_permits():
    assert loop_deletion_witness(poly((0, 0), (1, 0)), []) is Verdict.PERMITS


def test_witness_quotient_fixture_violated():
    path, pairs = build_quotient_fixture(3)
    assert loop_deletion_witness(path, pairs) is Verdict.VIOLATED


def test_witness_rejects_broken_premise():
    path, pairs = build_quotient_fixture(2)
    with pytest.raises(PremiseFailedError):
        loop_deletion_witness(path, list(reversed(pairs)))
    with pytest.raises(PremiseFailedError):
        loop_deletion_witness(path, [(F(1, 3), F(1, 4))])
    with pytest.raises(PremiseFailedError):
        loop_deletion_witness(path, [(F(0), F(1, 6))])
