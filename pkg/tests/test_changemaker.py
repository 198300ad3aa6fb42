from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from prism_surgery.changemaker import (
    GAPPY,
    JUST_RIGHT,
    TIGHT,
    dot,
    enumerate_changemakers,
    is_changemaker,
    irreducible_splits,
    recognize_linear,
    standard_basis,
    subset_sums,
)
from prism_surgery.lattice import LatticeError, gram_det, is_path_gram, gram_of


def brute_is_changemaker(sigma):
    sums = {sum(c) for k in range(len(sigma) + 1) for c in combinations(sigma, k)}
    return all(k in sums for k in range(sum(sigma) + 1))


@given(st.lists(st.integers(0, 6), min_size=1, max_size=6))
def test_changemaker_dp_vs_brute_force(values):
    sigma = sorted(values)
    assert is_changemaker(sigma) == brute_is_changemaker(sigma)


def test_subset_sums_bits():
    assert subset_sums([1, 2]) == 0b1111
    assert subset_sums([2, 2]) == 0b10101


def test_unsorted_rejected():
    with pytest.raises(LatticeError):
        is_changemaker([2, 1])


def test_standard_basis_kinds():
    comp = standard_basis((1, 1, 3, 4))
    # 3 = 1 + (1 + 1) is tight, 4 = 3 + 1 is not
    assert [b.kind for b in comp.basis] == [JUST_RIGHT, TIGHT, JUST_RIGHT]
    assert comp.basis[1].vector == (2, 1, -1, 0)
    gappy = standard_basis((1, 2, 2, 3))
    assert [b.kind for b in gappy.basis] == [TIGHT, JUST_RIGHT, GAPPY]


@given(st.sampled_from(list(enumerate_changemakers(6, 8, min_len=2))))
def test_standard_basis_spans_complement(sigma):
    comp = standard_basis(sigma)
    assert all(dot(v, sigma) == 0 for v in comp.vectors)
    # det of sigma^perp in Z^n equals |sigma|^2 for primitive sigma
    assert gram_det(comp.gram) == sum(s * s for s in sigma)


@pytest.mark.parametrize("sigma, pq, weights", [
    ((1, 1, 1, 2), (11, 7), (3, 2, 2)),
    ((1, 1, 1, 2, 3), (25, 16), (3, 2, 2, 3)),
    ((1, 1, 1, 2, 2), (15, 11), (2, 3, 2, 2)),
])
def test_recognize_examples(sigma, pq, weights):
    rec = recognize_linear(sigma)
    assert (rec.p, rec.q) == pq
    assert rec.weights == weights
    assert is_path_gram(gram_of(rec.vertices))
    assert all(dot(v, sigma) == 0 for v in rec.vertices)


def test_recognize_marks_choose_orientation():
    sigma = (1, 1, 1, 2, 2, 5)
    marked = recognize_linear(sigma, marks=(4, 2, 1, 0))
    assert (marked.p, marked.q) == (49, 36)
    assert marked.p_reversed == 61
    assert (49 * 61) % 36 == 1


@pytest.mark.parametrize("sigma", [(1, 1, 2), (1, 1, 2, 4)])
def test_not_linear(sigma):
    assert recognize_linear(sigma) is None


def test_irreducible_splits():
    v = (1, -1, 0, 1)
    splits = irreducible_splits(v)
    assert len(splits) == 2 ** 3 - 2
    assert all(tuple(a + b for a, b in zip(x, y)) == v for x, y in splits)


def test_enumerate_changemakers_all_valid():
    got = list(enumerate_changemakers(5, 6))
    assert len(got) == len(set(got))
    assert all(s[0] == 1 and is_changemaker(s) for s in got)


@pytest.mark.parametrize("sigma, ok", [((1, 1, 1, 2), True), ((2, 3), False), ((1, 2, 4), True)])
def test_changemaker_examples(sigma, ok):
    assert is_changemaker(sigma) == ok


def test_two_block_complement_is_not_linear():
    # (1, 1, 2)^perp is <2> + <3>: det 6, but no path basis exists
    comp = standard_basis((1, 1, 2))
    assert comp.gram == [[2, 0], [0, 3]]
    assert gram_det(comp.gram) == 6
    assert recognize_linear((1, 1, 2)) is None
