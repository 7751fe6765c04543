import pytest
from hypothesis import given, settings, strategies as st

from intervalmonge.errors import TooLarge, TooSmall, TrivialIntervalPresent
from intervalmonge.generate import random_interval, random_ism, shuffle
from intervalmonge.interval import Interval, IntervalMatrix
from intervalmonge.permutation import (
    AllSingleSet,
    Infeasible,
    SplitRow,
    find_split_row,
    flip,
    is_monge_permutable_bruteforce,
    order_from_keys,
    order_permutation,
    permute_general,
    permute_special,
    search_space,
)
from intervalmonge.strong import is_strong_monge


@st.composite
def key_pairs(draw):
    n = draw(st.integers(1, 7))
    right = draw(st.lists(st.integers(-4, 4), min_size=n, max_size=n))
    widths = draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    # left >= right, as for hi - lo versus lo - hi
    return [r + w for r, w in zip(right, widths)], right


@st.composite
def small_matrices(draw):
    m = draw(st.integers(1, 4))
    n = draw(st.integers(1, 4))
    lower = draw(st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=m, max_size=m))
    widths = draw(st.lists(st.lists(st.sampled_from((0, 0, 1, 2)), min_size=n, max_size=n), min_size=m, max_size=m))
    return IntervalMatrix(lower, [[a + w for a, w in zip(r, s)] for r, s in zip(lower, widths)])


def test_flip_small_strong(small_strong):
    assert flip(small_strong) == IntervalMatrix([[0, 0], [5, 0]], [[0, 8], [5, 5]])
    assert is_strong_monge(flip(small_strong))


@given(small_matrices())
def test_flip_is_involution_and_keeps_strong(mat):
    assert flip(flip(mat)) == mat
    assert is_strong_monge(flip(mat)) == is_strong_monge(mat)


def test_order_permutation_examples():
    u = [Interval(5, 5), Interval(0, 0), Interval(3, 3)]
    v = [Interval(0, 0)] * 3
    order, parts = order_permutation(u, v)
    assert order == (1, 2, 0)
    assert parts.sets == ((1,), (2,), (0,))
    # overlapping intervals cannot be ordered either way
    assert order_permutation([Interval(0, 2), Interval(1, 3)], [Interval(0, 0)] * 2) is None
    # identical points tie into one set, listed by index
    order, parts = order_permutation([Interval(1, 1)] * 3, [Interval(0, 0)] * 3)
    assert order == (0, 1, 2) and parts.first_size == 3 and parts.last_size == 3
    with pytest.raises(ValueError):
        order_permutation([Interval(0, 0)], [])


@given(key_pairs())
def test_order_respects_keys(keys):
    left, right = keys
    found = order_from_keys(left, right)
    if found is None:
        # then some pair is blocked in both directions
        assert any(
            left[a] > right[b] and left[b] > right[a]
            for a in range(len(left)) for b in range(a + 1, len(left))
        )
        return
    order, parts = found
    assert sorted(order) == list(range(len(left)))
    for p in range(len(order)):
        for q in range(p + 1, len(order)):
            assert left[order[p]] <= right[order[q]]
    assert [i for s in parts.sets for i in s] == list(order)


@given(key_pairs())
def test_tied_sets_are_degenerate_points(keys):
    left, right = keys
    found = order_from_keys(left, right)
    if found is None:
        return
    for group in found[1].sets:
        if len(group) > 1:
            values = {left[i] for i in group} | {right[i] for i in group}
            assert len(values) == 1


def test_find_split_row_cases():
    assert find_split_row(IntervalMatrix([[0, 1], [1, 0]])) == SplitRow(1)
    assert find_split_row(IntervalMatrix([[3, 3], [3, 3]])) == AllSingleSet()
    assert find_split_row(IntervalMatrix([[0, 0], [0, 1]], [[2, 2], [2, 1]])) == Infeasible(0, 1)
    with pytest.raises(TooSmall):
        find_split_row(IntervalMatrix([[1, 2]]))


def test_permute_general_round_trip(rng):
    for _ in range(60):
        base = random_ism(rng, rng.randint(2, 6), rng.randint(2, 6), tie_prob=0.2)
        mat = shuffle(rng, base)
        found = permute_general(mat)
        assert found is not None
        pair, permuted = found
        assert is_strong_monge(permuted)
        assert mat.permuted(pair.sigma, pair.pi) == permuted


def test_permute_special_round_trip(rng):
    for _ in range(60):
        base = random_ism(rng, rng.randint(2, 6), rng.randint(2, 6), positive_radii=True)
        mat = shuffle(rng, base)
        found = permute_special(mat)
        assert found is not None
        pair, permuted = found
        assert is_strong_monge(permuted)
        assert mat.permuted(pair.sigma, pair.pi) == permuted
        assert pair.rho == pair.pi


def test_permute_special_rejects_degenerate(small_strong):
    with pytest.raises(TrivialIntervalPresent):
        permute_special(small_strong)


def test_small_shapes_are_identity():
    mat = IntervalMatrix([[3, 1, 2]], [[4, 1, 2]])
    pair, permuted = permute_general(mat)
    assert pair.sigma == (0,) and pair.pi == (0, 1, 2) and permuted == mat


def test_non_permutable():
    mat = IntervalMatrix([[0, 1], [1, 0]], [[2, 1], [1, 2]])
    assert is_monge_permutable_bruteforce(mat) is None
    assert permute_general(mat) is None


def test_bruteforce_lexicographic_first():
    mat = IntervalMatrix([[1, 0], [0, 1]])
    pair = is_monge_permutable_bruteforce(mat)
    assert (pair.sigma, pair.pi) == ((0, 1), (1, 0))


def test_bruteforce_guard():
    with pytest.raises(TooLarge):
        is_monge_permutable_bruteforce(IntervalMatrix([[0] * 7]))
    assert search_space(3, 4) == 6 * 24


@settings(max_examples=300, deadline=None)
@given(small_matrices())
def test_general_agrees_with_bruteforce(mat):
    found = permute_general(mat)
    brute = is_monge_permutable_bruteforce(mat)
    assert (found is not None) == (brute is not None)
    if found is not None:
        assert is_strong_monge(found[1])


def test_general_agrees_with_bruteforce_seeded(rng):
    yes = no = 0
    for t in range(200):
        m, n = rng.randint(2, 4), rng.randint(2, 4)
        if t % 2:
            mat = shuffle(rng, random_ism(rng, m, n, tie_prob=0.3, spread=3))
        else:
            mat = random_interval(rng, m, n, spread=3, max_width=2, degenerate_prob=0.6)
        verdict = permute_general(mat) is not None
        assert verdict == (is_monge_permutable_bruteforce(mat) is not None)
        yes += verdict
        no += not verdict
    assert yes > 50 and no > 20


def test_pair_dict_is_one_based():
    mat = IntervalMatrix([[1, 0], [0, 1]])
    pair, _ = permute_general(mat)
    doc = pair.to_dict()
    assert sorted(doc["sigma"]) == [1, 2] and sorted(doc["pi"]) == [1, 2]
