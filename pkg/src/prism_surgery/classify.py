"""Deciding which prism manifolds P(p, q) with q < p arise by surgery, the
closed-form family, and the exhaustive changemaker search behind it."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from math import gcd, isqrt
from typing import NamedTuple

from .changemaker import enumerate_changemakers, norm, recognize_linear
from .d4 import (
    MarkedEmbedding,
    genus_from_shorts,
    interval_condition,
    marks_for,
    prism_d_invariants,
    torsion_from_lattice,
)
from .floer import (
    ProfileError,
    alexander_from_torsion,
    casson_walker_prism,
    casson_walker_surgery,
    corr_equal_violations,
    mod4_obstruction,
    surgery_d_multiset,
)
from .lattice import SearchLimitExceeded

REALIZABLE = "realizable"
NOT_REALIZABLE = "not-realizable"
OUT_OF_SCOPE = "out-of-scope"

MAX_LEN = 8
MAX_ENTRY = 15
MAX_Q = 120


@dataclass(frozen=True)
class FamilyMember:
    s: int
    t: int
    r: int
    p: int
    q: int
    sigma: tuple

    @property
    def marks(self):
        return (self.s + 3, 2, 1, 0)

    @property
    def embedding(self):
        return MarkedEmbedding(self.sigma, self.marks)


def family_pq(s, t):
    if s < 0 or t < 0:
        raise ValueError("s and t must be nonnegative")
    r = -2 * s - 3
    q = 7 + 4 * s + 9 * t + 12 * s * t + 4 * s * s * t
    p = 11 + 4 * s + 14 * t + 16 * s * t + 4 * s * s * t
    sigma = (1, 1, 1) + (2,) * s + (2,) + (2 * s + 3,) * t
    return FamilyMember(s, t, r, p, q, sigma)


def family_members(max_q):
    """All members with q <= max_q, ordered by (s, t)."""
    out = []
    s = 0
    while family_pq(s, 0).q <= max_q:
        t = 0
        while family_pq(s, t).q <= max_q:
            out.append(family_pq(s, t))
            t += 1
        s += 1
    return out


@dataclass(frozen=True)
class PrismVerdict:
    p: int
    q: int
    status: str
    reason: str
    witness: dict = field(default_factory=dict)
    checks: tuple = ()

    @property
    def realizable(self):
        return self.status == REALIZABLE


def _odd_roots(p, q):
    """Odd integer roots r <= -3 of r^2 (p - q) + 2 q r + (q - 1) = 0."""
    a = p - q
    disc = q * q - a * (q - 1)
    if disc < 0:
        return []
    root = isqrt(disc)
    if root * root != disc:
        return []
    out = []
    for num in (-q + root, -q - root):
        if num % a == 0:
            r = num // a
            if r % 2 and r <= -3:
                out.append(r)
    return sorted(set(out))


def decide(p, q):
    """Realizability of P(p, q) by positive integral surgery on a knot in S^3."""
    if p <= 1:
        raise ValueError(f"need p > 1, got {p}")
    if gcd(p, q) != 1:
        raise ValueError(f"({p}, {q}) are not coprime")
    if q <= 0 or q >= p:
        return PrismVerdict(p, q, OUT_OF_SCOPE, "q-not-below-p")
    if p % 2 == 0:
        return PrismVerdict(p, q, NOT_REALIZABLE, "parity")
    if p > 2 * q + 1:
        return PrismVerdict(p, q, NOT_REALIZABLE, "p-too-large")
    if p == 2 * q + 1:
        return PrismVerdict(p, q, REALIZABLE, "torus-knot", {"r": -1})
    roots = _odd_roots(p, q)
    if not roots:
        return PrismVerdict(p, q, NOT_REALIZABLE, "no-odd-root")
    r = roots[0]
    s = (-r - 3) // 2
    t, rest = divmod(q - 7 - 4 * s, r * r)
    mod = r * r - 2 * r - 1
    checks = (
        ("congruence", (p - (-2 * r + 5)) % mod == 0),
        ("relation", q * mod == r * r * p - 1),
        ("t-integral", rest == 0 and t >= 0),
    )
    return PrismVerdict(p, q, REALIZABLE, "quadratic-root",
                        {"r": r, "s": s, "t": t}, checks)


# -- search -------------------------------------------------------------------

class SearchHit(NamedTuple):
    embedding: MarkedEmbedding
    p: int
    q: int
    genus: int


def _hits_for(sigma, norm_bound=None):
    out = []
    q = norm(sigma)
    for marks in marks_for(sigma):
        emb = MarkedEmbedding(sigma, marks)
        if not interval_condition(emb):
            continue
        g = genus_from_shorts(emb)
        if g is None:
            continue
        rec = recognize_linear(sigma, norm_bound=norm_bound, marks=marks)
        if rec is None or rec.q != q or not (q < rec.p < 2 * q):
            continue
        if rec.p % 2 == 0:
            continue
        if q % 2 and not mod4_obstruction(rec.p, q):
            continue
        out.append(SearchHit(emb, rec.p, q, g))
    return out


def enumerate_search(max_len, max_entry, jobs=1, norm_bound=None):
    """Every marked changemaker embedding passing all lattice obstructions.

    Changemakers are sorted with sigma_0 = 1 and have at least four entries
    (one per mark).  The result is sorted by (q, p, sigma, marks).
    """
    if max_len > MAX_LEN or max_entry > MAX_ENTRY:
        raise SearchLimitExceeded(
            f"search bounds above desk scale (max_len <= {MAX_LEN}, max_entry <= {MAX_ENTRY})")
    sigmas = list(enumerate_changemakers(max_len, max_entry, min_len=4))
    work = partial(_hits_for, norm_bound=norm_bound)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(work, sigmas, chunksize=64))
    else:
        parts = map(work, sigmas)
    hits = [h for part in parts for h in part]
    return sorted(hits, key=lambda h: (h.q, h.p, h.embedding.sigma, h.embedding.marks))


def expected_family(max_len, max_entry):
    """Family members whose changemaker fits the search bounds."""
    out = []
    for s in range(max_len):
        for t in range(max_len):
            m = family_pq(s, t)
            if len(m.sigma) <= max_len and max(m.sigma) <= max_entry:
                out.append(m)
    return sorted(out, key=lambda m: (m.q, m.p))


# -- cross-checks -------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    expected: object
    actual: object


@dataclass(frozen=True)
class CrossCheckReport:
    member: FamilyMember
    checks: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.checks)


def cross_check(member, profile=None, max_q=MAX_Q):
    """The five consistency loops for one family member.

    ``profile`` overrides the torsion coefficients read off the lattice,
    which is how a corrupted profile is fed in.
    """
    if member.q > max_q:
        raise SearchLimitExceeded(f"q = {member.q} above bound {max_q}")
    emb = member.embedding
    if profile is None:
        profile = torsion_from_lattice(emb)
    p, q = member.p, member.q
    checks = []

    lattice_d = prism_d_invariants(p, q)
    surgery_d = surgery_d_multiset(profile)
    checks.append(Check("d-invariants", lattice_d == surgery_d,
                        sorted(lattice_d.elements()), sorted(surgery_d.elements())))

    cw = casson_walker_prism(p, q)
    try:
        _, dm1, d2 = alexander_from_torsion(profile)
    except ProfileError as e:
        checks.append(Check("casson-walker", False, cw, str(e)))
        checks.append(Check("alexander-at-minus-one", False, p, str(e)))
    else:
        cws = casson_walker_surgery(q, d2)
        checks.append(Check("casson-walker", cw == cws, cw, cws))
        checks.append(Check("alexander-at-minus-one", abs(dm1) == p, p, abs(dm1)))

    bad = corr_equal_violations(profile)
    checks.append(Check("corr-equal", not bad, [], bad))

    g = genus_from_shorts(emb)
    checks.append(Check("genus", g == profile.genus, g, profile.genus))
    return CrossCheckReport(member, tuple(checks))
