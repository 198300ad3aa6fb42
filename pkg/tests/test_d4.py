from collections import Counter
from fractions import Fraction
from itertools import product

import pytest

from prism_surgery.changemaker import enumerate_changemakers
from prism_surgery.d4 import (
    MarkedEmbedding,
    chi0,
    chi1,
    contains_x0,
    cor_sigma_theta,
    d_k_plus_z,
    genus_from_shorts,
    interval_condition,
    lattice_d_invariant,
    marks_for,
    prism_d_invariants,
    short_covectors,
    short_pairings,
    torsion_from_lattice,
)
from prism_surgery.floer import prism_a1_d, surgery_d_multiset
from prism_surgery.lattice import LatticeError, gram_det, tridiagonal_gram


def test_embedding_validation():
    with pytest.raises(LatticeError):
        MarkedEmbedding((1, 1, 1, 2), (2, 3, 1, 0))
    with pytest.raises(LatticeError):
        MarkedEmbedding((1, 1, 1, 2), (4, 2, 1, 0))
    with pytest.raises(LatticeError):
        MarkedEmbedding((1, 3, 3, 3), (3, 2, 1, 0))


def test_tie_rule():
    # among equal entries the marks must sit on the largest indices
    assert MarkedEmbedding((1, 1, 1, 2, 2), (4, 2, 1, 0)).ties_ok()
    assert not MarkedEmbedding((1, 1, 1, 2, 2), (3, 2, 1, 0)).ties_ok()
    ms = marks_for((1, 1, 1, 2, 2))
    assert (4, 2, 1, 0) in ms and (3, 2, 1, 0) not in ms
    assert all(MarkedEmbedding((1, 1, 1, 2, 2), m).ties_ok() for m in ms)


def test_base_covectors_are_short_characteristic():
    emb = MarkedEmbedding((1, 1, 1, 2, 3), (3, 2, 1, 0))
    even, odd = short_covectors(emb)
    assert chi0(emb) in even and chi1(emb) in odd
    assert len(even) == 2 ** 5
    assert len(odd) == 2 ** 1 * 9


@pytest.mark.parametrize("sigma", list(enumerate_changemakers(6, 7, min_len=4))[::5])
def test_short_pairings_bitset_vs_brute_force(sigma):
    for marks in marks_for(sigma)[:4]:
        emb = MarkedEmbedding(sigma, marks)
        even, odd = short_covectors(emb)
        brute = {sum(c * s for c, s in zip(chi, sigma)) for chi in even + odd}
        assert short_pairings(emb) == brute


def test_genus_and_interval_for_first_member():
    emb = MarkedEmbedding((1, 1, 1, 2), (3, 2, 1, 0))
    assert interval_condition(emb)
    assert genus_from_shorts(emb) == 9
    assert cor_sigma_theta(emb) == -1


def test_interval_fails_off_family():
    emb = MarkedEmbedding((1, 1, 2, 4), (3, 2, 1, 0))
    assert not interval_condition(emb)


def test_contains_x0():
    emb = MarkedEmbedding((1, 1, 1, 2), (3, 2, 1, 0))
    assert contains_x0((1, 1, 1, -1), emb) is False
    assert contains_x0((1, -1, 0, 0), emb) is False
    assert contains_x0((1, 1, 0, -1), emb) is True


def brute_torsion(emb, box=5):
    s = emb.sigma
    q = emb.q
    best = {}
    marks = set(emb.marks)
    for chi in product(range(-box, box + 1), repeat=len(s)):
        if any(chi[i] % 2 == 0 for i in range(len(s)) if i not in marks):
            continue
        if len({chi[i] % 2 for i in marks}) != 1:
            continue
        k = sum(c * v for c, v in zip(chi, s))
        n = sum(c * c for c in chi)
        if k not in best or n < best[k]:
            best[k] = n
    return [-(-(best[2 * q - i] - len(s)) // 8) for i in range(2 * q + 1)]


def test_torsion_dp_vs_brute_force():
    emb = MarkedEmbedding((1, 1, 1, 2), (3, 2, 1, 0))
    prof = torsion_from_lattice(emb)
    assert list(prof.t) == brute_torsion(emb)
    assert prof.t == (3, 3, 3, 2, 2, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0)
    assert prof.genus == genus_from_shorts(emb)


@pytest.mark.parametrize("j", [0, 1, 2, 3])
def test_dk_plus_z(j):
    g = d_k_plus_z(4, j)
    assert gram_det(g) == 4
    d = lattice_d_invariant(g)
    assert d == Counter({Fraction(0): 3, Fraction(-1): 1})
    assert d == prism_a1_d(2)


def test_lens_lattice_d():
    # L(5, 1) bounds the rank-one lattice <5>
    d = lattice_d_invariant([[5]])
    assert sorted(d.elements()) == sorted(
        Fraction((2 * i - 5) ** 2, 20) - Fraction(1, 4) for i in range(5))


def test_lattice_d_size_guard():
    with pytest.raises(LatticeError):
        lattice_d_invariant(tridiagonal_gram([2] * 12))


def test_prism_d_matches_surgery_formula():
    emb = MarkedEmbedding((1, 1, 1, 2), (3, 2, 1, 0))
    d = prism_d_invariants(11, 7)
    assert sum(d.values()) == 28
    assert d == surgery_d_multiset(torsion_from_lattice(emb))


def test_prism_d_scope():
    with pytest.raises(LatticeError):
        prism_d_invariants(15, 7)


def test_interval_examples():
    assert interval_condition(MarkedEmbedding((1, 1, 1, 2), (3, 2, 1, 0)))
    # a on an entry 1 breaks sigma_a = sigma_b + sigma_c + sigma_d ± 1
    assert not interval_condition(MarkedEmbedding((1, 1, 1, 1, 2), (3, 2, 1, 0)))
    sigma = (1, 1, 2, 4, 8)
    from itertools import combinations
    for c in combinations(range(5), 4):
        assert not interval_condition(MarkedEmbedding(sigma, tuple(sorted(c, reverse=True))))


def test_contains_x0_examples():
    emb = MarkedEmbedding((1, 1, 1, 2, 3), (3, 2, 1, 0))
    a, b, c, _ = emb.marks
    w = [0] * 5
    w[a], w[b], w[c] = -1, 1, 1
    assert contains_x0(w, emb)
    assert not contains_x0((1, -1, 0, 0, 0), emb)
    assert not contains_x0(tuple(2 * x for x in w), emb)


def test_more_lattice_d_examples():
    assert lattice_d_invariant([[1]]) == Counter({Fraction(0): 1})
    d8 = lattice_d_invariant(d_k_plus_z(8, 0))
    assert sorted(d8.elements()) == [-2, -1, 0, 0]
    assert sum(prism_d_invariants(25, 16).values()) == 64
