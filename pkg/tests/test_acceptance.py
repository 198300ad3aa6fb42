"""Acceptance criteria, one test each.  Every test prints a PASS/FAIL line;
run ``python tests/test_acceptance.py`` to get just those lines."""

import time
from collections import Counter
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import gcd

import pytest

from prism_surgery.changemaker import is_changemaker
from prism_surgery.classify import (
    decide,
    enumerate_search,
    family_members,
    family_pq,
)
from prism_surgery.d4 import (
    d_k_plus_z,
    genus_from_shorts,
    lattice_d_invariant,
    prism_d_invariants,
    torsion_from_lattice,
)
from prism_surgery.floer import (
    alexander_from_torsion,
    casson_walker_prism,
    casson_walker_surgery,
    prism_a1_d,
    surgery_d_multiset,
)
from prism_surgery.lattice import dedekind_sum, hj_evaluate, hj_expand

MEMBERS_Q = 60


def report(capsys, number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return ok


def _fastest(f, reps=20):
    best = None
    for _ in range(reps):
        t = time.perf_counter()
        out = f()
        dt = time.perf_counter() - t
        best = dt if best is None or dt < best else best
    return out, best


def criterion_1():
    table = [
        ((11, 7), "realizable", -3),
        ((15, 11), "realizable", -5),
        ((25, 16), "realizable", -3),
        ((13, 9), "not-realizable", None),
        ((16, 9), "not-realizable", "parity"),
        ((15, 7), "realizable", "torus-knot"),
        ((17, 7), "not-realizable", None),
    ]
    bad, slowest = [], 0.0
    for pq, status, extra in table:
        v, dt = _fastest(lambda: decide(*pq))
        slowest = max(slowest, dt)
        ok = v.status == status and dt < 1e-3
        if isinstance(extra, int):
            ok = ok and v.witness.get("r") == extra
        elif isinstance(extra, str):
            ok = ok and v.reason == extra
        if not ok:
            bad.append(pq)
    return not bad, f"7 verdicts, mismatches {bad}, slowest {slowest * 1e3:.3f} ms"


def criterion_2():
    t = time.perf_counter()
    hits = enumerate_search(7, 15)
    dt = time.perf_counter() - t
    got = sorted((h.embedding.sigma, h.embedding.marks) for h in hits)
    want = sorted((m.sigma, m.marks) for s in range(4) for tt in range(4 - s)
                  for m in [family_pq(s, tt)] if max(m.sigma) <= 15)
    ok = got == want and dt <= 300
    return ok, f"{len(hits)} hits vs {len(want)} family members, {dt:.1f} s"


def criterion_3():
    target = Counter({Fraction(0): 3, Fraction(-1): 1})
    ok = all(lattice_d_invariant(d_k_plus_z(4, j)) == target for j in range(4))
    ok = ok and prism_a1_d(2) == target
    return ok, "D_4 + Z^j for j = 0..3 and P(2, 1)"


def criterion_4():
    bad, slowest = [], 0.0
    members = family_members(MEMBERS_Q)
    for m in members:
        t = time.perf_counter()
        prof = torsion_from_lattice(m.embedding)
        same = prism_d_invariants(m.p, m.q) == surgery_d_multiset(prof)
        dt = time.perf_counter() - t
        slowest = max(slowest, dt)
        if not same or dt > 120:
            bad.append((m.s, m.t))
    return not bad, f"{len(members)} members with q <= {MEMBERS_Q}, failures {bad}, slowest {slowest:.1f} s"


def criterion_5():
    bad = []
    members = family_members(MEMBERS_Q)
    for m in members:
        _, dm1, d2 = alexander_from_torsion(torsion_from_lattice(m.embedding))
        if casson_walker_prism(m.p, m.q) != casson_walker_surgery(m.q, d2) or abs(dm1) != m.p:
            bad.append((m.s, m.t))
    return not bad, f"{len(members)} members, failures {bad}"


def _brute_changemaker(sigma):
    sums = {sum(c) for k in range(len(sigma) + 1) for c in combinations(sigma, k)}
    return all(k in sums for k in range(sum(sigma) + 1))


def criterion_6():
    t = time.perf_counter()
    parts = {}
    parts["reciprocity"] = all(
        dedekind_sum(a, b) + dedekind_sum(b, a) == Fraction(a * a + b * b + 1, 12 * a * b) - Fraction(1, 4)
        for a in range(1, 201) for b in range(1, 201) if gcd(a, b) == 1)
    parts["continued-fraction"] = all(
        hj_evaluate(hj_expand(p, q)) == (p, q)
        for p in range(2, 501) for q in range(1, p) if gcd(p, q) == 1)
    parts["changemaker"] = all(
        is_changemaker(s) == _brute_changemaker(s)
        for n in range(1, 7) for s in combinations_with_replacement(range(7), n))
    corr, genus = True, True
    for m in family_members(MEMBERS_Q):
        prof = torsion_from_lattice(m.embedding)
        corr &= all(2 * (prof.at(m.q - i) - prof.at(m.q + i)) == i for i in range(0, m.q + 1, 2))
        genus &= genus_from_shorts(m.embedding) == min(i for i, v in enumerate(prof.t) if v == 0)
    parts["corr-equal"] = corr
    parts["genus"] = genus
    dt = time.perf_counter() - t
    failed = [k for k, v in parts.items() if not v]
    return not failed and dt <= 600, f"{len(parts)} suites, failed {failed}, {dt:.1f} s"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6]


@pytest.mark.parametrize("number", range(1, 7))
def test_criterion(number, capsys):
    ok, detail = CRITERIA[number - 1]()
    assert report(capsys, number, ok, detail), detail


if __name__ == "__main__":
    results = [report(None, i, *c()) for i, c in enumerate(CRITERIA, 1)]
    raise SystemExit(0 if all(results) else 1)
