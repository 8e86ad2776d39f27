import pytest
from hypothesis import given
from hypothesis import strategies as st

from cogrowth.words import (
    conjugate,
    cyclic_reduce,
    free_reduce,
    inverse,
    is_cyclically_reduced,
    is_reduced,
    left_insert,
)

letters = st.integers(min_value=-3, max_value=3).filter(lambda x: x != 0)
raw_words = st.lists(letters, max_size=40)


def naive_reduce(seq):
    """Independent oracle: scan for any adjacent inverse pair until none remain."""
    seq = list(seq)
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            if seq[i] == -seq[i + 1]:
                del seq[i : i + 2]
                changed = True
                break
    return tuple(seq)


def test_free_reduce_examples():
    # a b B A -> empty ; a a A b -> a b ; already-reduced stays put
    assert free_reduce([1, 2, -2, -1]) == ()
    assert free_reduce([1, 1, -1, 2]) == (1, 2)
    w = (1, 2, 1, -2, -1, -2)
    assert free_reduce(w) == w


def test_free_reduce_rejects_zero():
    with pytest.raises(ValueError):
        free_reduce([1, 0])


@given(raw_words)
def test_free_reduce_matches_naive_oracle(seq):
    assert free_reduce(seq) == naive_reduce(seq)


@given(raw_words)
def test_free_reduce_idempotent(seq):
    once = free_reduce(seq)
    assert free_reduce(once) == once
    assert is_reduced(once)


def test_conjugate_examples():
    assert conjugate((), 1) == ()
    # conjugate(a b A B, a) lengthens at both ends
    assert conjugate((1, 2, -1, -2), 1) == (1, 1, 2, -1, -2, -1)
    # conjugate(A b a, a): cascading cancellation down to a single letter
    assert conjugate((-1, 2, 1), 1) == (2,)
    assert conjugate((-1, 2, 1), 1) == free_reduce([1, -1, 2, 1, -1])


@given(raw_words, letters)
def test_conjugate_length_change(seq, x):
    w = free_reduce(seq)
    out = conjugate(w, x)
    assert len(out) - len(w) in (-2, 0, 2)
    assert is_reduced(out)


@given(raw_words, letters)
def test_conjugate_reversible(seq, x):
    w = free_reduce(seq)
    assert conjugate(conjugate(w, x), -x) == w


def test_left_insert_examples():
    r = (1, 2, -1, -2)  # abAB
    assert left_insert((), r, 0) == r
    # left boundary a|a does not cancel, right side is empty
    assert left_insert((1,), r, 1) == (1, 1, 2, -1, -2)
    # junction letter of r against v is an inverse pair: rejected
    assert left_insert((1, 2), r, 1) is None


def test_left_insert_full_consumption_is_deletion():
    r = (1, 2, -1, -2)
    w = inverse(r)  # b a B A
    assert left_insert(w, r, len(w)) == ()
    # deletion that would leave an unreduced junction is rejected
    w2 = (2,) + inverse(r) + (-2,)  # b . baBA . B reduced?  b b a B A B
    w2 = free_reduce(w2)
    assert is_reduced(w2)
    out = left_insert(w2, r, 5)
    assert out is None  # head ends with b, v starts with B


def test_left_insert_position_contract():
    with pytest.raises(ValueError):
        left_insert((1,), (1, 2, -1, -2), 2)


@st.composite
def insert_cases(draw):
    w = free_reduce(draw(raw_words))
    base = draw(st.sampled_from([(1, 2, -1, -2), (1, 2, 1, -2, -1, -2), (3, 1, -3, -1, -1)]))
    shift = draw(st.integers(min_value=0, max_value=len(base) - 1))
    invert = draw(st.booleans())
    r = base[shift:] + base[:shift]
    if invert:
        r = inverse(r)
    pos = draw(st.integers(min_value=0, max_value=len(w)))
    return w, r, pos


@given(insert_cases())
def test_left_insert_reversibility(case):
    """Accepted insertions are undone by inserting the inverse after the remnant."""
    w, r, pos = case
    out = left_insert(w, r, pos)
    if out is None:
        return
    assert is_reduced(out)
    k = (len(w) + len(r) - len(out)) // 2
    back = left_insert(out, inverse(r), pos + len(r) - 2 * k)
    assert back == w


def test_cyclic_reduce():
    assert cyclic_reduce((-1, 2, 1)) == (2,)
    assert cyclic_reduce((1, 2, -1, -2)) == (1, 2, -1, -2)
    assert is_cyclically_reduced((1, 2, -1, -2))
    assert not is_cyclically_reduced((-1, 2, 1))
