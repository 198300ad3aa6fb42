"""The D_4 + Z^{n-2} sublattice of Z^{n+2}: short characteristic covectors,
test-vector intervals, torsion coefficients, and d-invariants of lattices and
of P(p, q) through the sharp cobordism from P(2, 1)."""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .changemaker import is_changemaker, subset_sums
from .floer import TorsionProfile
from .lattice import (
    LatticeError,
    QuadraticForm,
    discriminant_group,
    inverse,
    linear_lattice,
)


@dataclass(frozen=True)
class MarkedEmbedding:
    """A changemaker sigma in Z^{n+2} with marks a > b > c > d.

    The sublattice D_4 + Z^{n-2} is {v : <v, e_a + e_b + e_c + e_d> even}.
    """

    sigma: tuple
    marks: tuple

    def __post_init__(self):
        sigma, marks = tuple(self.sigma), tuple(self.marks)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "marks", marks)
        if len(marks) != 4 or not all(x > y for x, y in zip(marks, marks[1:])):
            raise LatticeError(f"marks must be a > b > c > d, got {marks}")
        if marks[-1] < 0 or marks[0] >= len(sigma):
            raise LatticeError(f"marks {marks} out of range for length {len(sigma)}")
        if not is_changemaker(sigma):
            raise LatticeError(f"{sigma} is not a changemaker")

    @property
    def n(self):
        return len(self.sigma) - 2

    @property
    def q(self):
        return sum(s * s for s in self.sigma)

    @property
    def others(self):
        return [i for i in range(len(self.sigma)) if i not in self.marks]

    def ties_ok(self):
        """Marks take the largest indices among equal entries."""
        m = set(self.marks)
        s = self.sigma
        return not any(s[i] == s[j] and i < j
                       for i in m for j in range(len(s)) if j not in m)


def marks_for(sigma):
    """All mark choices a > b > c > d respecting the tie convention."""
    m = len(sigma)
    out = []
    for a in range(m):
        for b in range(a):
            for c in range(b):
                for d in range(c):
                    emb = (a, b, c, d)
                    ms = set(emb)
                    if any(sigma[i] == sigma[j] and i < j
                           for i in ms for j in range(m) if j not in ms):
                        continue
                    out.append(emb)
    return out


# -- short characteristic covectors ---------------------------------------

def short_covectors(emb):
    """Both kinds of short characteristic covectors of D_4 + Z^{n-2}.

    Returns ``(even, odd)``.  Even ones have every entry ±1.  Odd ones have
    ±1 off the marks and, on the marks, either all zeros or a single ±2:
    the zero pattern and the ±2 patterns lie in different classes mod 2L,
    and each is of minimal norm in its class.
    """
    m = len(emb.sigma)
    even = [tuple(c) for c in product((-1, 1), repeat=m)]
    marks = list(emb.marks)
    others = emb.others
    mark_patterns = [(0, 0, 0, 0)]
    for k in range(4):
        for s in (2, -2):
            pat = [0, 0, 0, 0]
            pat[k] = s
            mark_patterns.append(tuple(pat))
    odd = []
    for signs in product((-1, 1), repeat=len(others)):
        for pat in mark_patterns:
            v = [0] * m
            for i, s in zip(others, signs):
                v[i] = s
            for i, s in zip(marks, pat):
                v[i] = s
            odd.append(tuple(v))
    return even, odd


def chi0(emb):
    return tuple(-1 for _ in emb.sigma)


def chi1(emb):
    a = emb.marks[0]
    v = [-1] * len(emb.sigma)
    for i in emb.marks:
        v[i] = 0
    v[a] = -2
    return tuple(v)


def _bits_to_set(bits):
    out, k = set(), 0
    while bits:
        if bits & 1:
            out.add(k)
        bits >>= 1
        k += 1
    return out


def test_vector_intervals(emb):
    """Pairings of sigma with the even and odd test vectors.

    Test vectors (chi - chi^k)/2 are 0/1 vectors off the marks; on the marks
    (d, c, b, a) they are one of (±1,0,0,1), (0,±1,0,1), (0,0,±1,1),
    (0,0,0,2), (0,0,0,0) or, for the zero pattern, (0,0,0,1).
    """
    s = emb.sigma
    set0 = _bits_to_set(subset_sums(s))
    a, b, c, d = emb.marks
    base = subset_sums([s[i] for i in emb.others])
    mark_vals = {0, s[a], 2 * s[a]}
    for x in (b, c, d):
        mark_vals |= {s[a] + s[x], s[a] - s[x]}
    bits = 0
    for v in mark_vals:
        bits |= base << v
    return set0, _bits_to_set(bits)


def _is_interval_from_zero(values):
    return min(values) == 0 and len(values) == max(values) + 1


def interval_condition(emb):
    set0, set1 = test_vector_intervals(emb)
    if not (_is_interval_from_zero(set0) and _is_interval_from_zero(set1)):
        return False
    return abs(sum(emb.sigma) - max(set1)) == 1


def short_pairings(emb):
    """The set {<chi, sigma>} over all short characteristic covectors."""
    set0, set1 = test_vector_intervals(emb)
    s = emb.sigma
    lo0 = -sum(s)
    lo1 = -2 * s[emb.marks[0]] - sum(s[i] for i in emb.others)
    return {lo0 + 2 * t for t in set0} | {lo1 + 2 * t for t in set1}


def genus_from_shorts(emb):
    """g = 2q - m when the short pairings are exactly [-m, m]; else None."""
    vals = short_pairings(emb)
    m = max(vals)
    if min(vals) != -m or len(vals) != 2 * m + 1:
        return None
    return 2 * emb.q - m


def contains_x0(v, emb):
    """Odd pairing with e_a + e_b + e_c + e_d (x_0 lies in [v])."""
    return sum(v[i] for i in emb.marks) % 2 == 1


def cor_sigma_theta(emb):
    """theta with sigma_a = sigma_b + sigma_c + sigma_d + theta."""
    a, b, c, d = emb.marks
    s = emb.sigma
    return s[a] - s[b] - s[c] - s[d]


# -- torsion coefficients ---------------------------------------------------

def _min_norms_by_pairing(sigma, allowed, bound):
    """DP over coordinates: min sum chi_i^2 for every reachable <chi, sigma>.

    ``allowed[i]`` is 0 (even entries) or 1 (odd entries); |chi_i| <= bound.
    """
    best = {0: 0}
    for s, par in zip(sigma, allowed):
        vals = [v for v in range(-bound, bound + 1) if v % 2 == par]
        nxt = {}
        for tot, nrm in best.items():
            for v in vals:
                k = tot + v * s
                w = nrm + v * v
                if w < nxt.get(k, w + 1):
                    nxt[k] = w
        best = nxt
    return best


def min_char_norms(emb, targets, start_bound=None):
    """Minimal norm of a characteristic covector of D_4 + Z^{n-2} with
    pairing k with sigma, for each k in ``targets``.

    The coordinate box starts at 2 max(sigma) + 3 and doubles until every
    minimum is at most bound^2; a covector with a coordinate outside the box
    has norm above bound^2, so the minima are then exact.
    """
    s = emb.sigma
    marks = set(emb.marks)
    bound = start_bound or 2 * max(s) + 3
    while True:
        par_even = [1] * len(s)
        par_odd = [0 if i in marks else 1 for i in range(len(s))]
        t_even = _min_norms_by_pairing(s, par_even, bound)
        t_odd = _min_norms_by_pairing(s, par_odd, bound)
        out = {}
        for k in targets:
            cands = [t[k] for t in (t_even, t_odd) if k in t]
            out[k] = min(cands) if cands else None
        if all(v is not None and v <= bound * bound for v in out.values()):
            return out
        bound *= 2
        if bound > 1 << 12:
            raise LatticeError("coordinate bound did not stabilise")


def torsion_from_lattice(emb):
    """t_i = min ceil((|chi| - n - 2)/8) over chi with <chi, sigma> = 2q - i."""
    q = emb.q
    rank = len(emb.sigma)
    norms = min_char_norms(emb, [2 * q - i for i in range(2 * q + 1)])
    t = []
    for i in range(2 * q + 1):
        num = norms[2 * q - i] - rank
        t.append(-(-num // 8))
    return TorsionProfile(q, tuple(t))


# -- lattice d-invariants ---------------------------------------------------

def _min_coset_norm(qf, y):
    """min over k in Z^r of (y + 2k)^T G (y + 2k), with y rational."""
    best, _ = qf.closest([-v / 2 for v in y])
    return 4 * best


def _char_base(gram, ginv, values):
    """Coordinates of the covector whose pairings with the basis are ``values``."""
    r = len(gram)
    return [sum(ginv[i][j] * values[j] for j in range(r)) for i in range(r)]


def char_classes(gram):
    """Coordinate representatives of Char(L)/2L."""
    ginv = inverse(gram)
    r = len(gram)
    base = _char_base(gram, ginv, [gram[i][i] % 2 for i in range(r)])
    return [[b + 2 * dv for b, dv in zip(base, delta)]
            for delta, _ in discriminant_group(gram)]


def lattice_d_invariant(gram, max_rank=10, max_disc=10 ** 4):
    """Multiset of (min |chi'| - rank)/4 over the classes of Char(L)/2L."""
    r = len(gram)
    if r > max_rank:
        raise LatticeError(f"rank {r} above desk-scale limit {max_rank}")
    qf = QuadraticForm(gram)
    reps = char_classes(gram)
    if len(reps) > max_disc:
        raise LatticeError(f"discriminant {len(reps)} above limit {max_disc}")
    return Counter((_min_coset_norm(qf, y) - r) / 4 for y in reps)


def d_k_plus_z(k, j):
    """Gram matrix of D_k + Z^j with basis e_1 - e_2, ..., e_{k-1} - e_k,
    e_{k-1} + e_k followed by the unit vectors."""
    vecs = []
    for i in range(k - 1):
        v = [0] * k
        v[i], v[i + 1] = 1, -1
        vecs.append(v)
    v = [0] * k
    v[k - 2], v[k - 1] = 1, 1
    vecs.append(v)
    g = [[sum(a * b for a, b in zip(u, w)) for w in vecs] for u in vecs]
    n = k + j
    out = [[0] * n for _ in range(n)]
    for i in range(k):
        for l in range(k):
            out[i][l] = g[i][l]
    for i in range(k, n):
        out[i][i] = 1
    return out


# -- d-invariants of P(p, q) -----------------------------------------------

# d(P(2, 1)) on the two Spin^c structures that do not extend over the
# rational ball; the other two are 0.
_D_O0 = Fraction(-1)
_D_O1 = Fraction(0)


def prism_d_invariants(p, q):
    """The 4q correction terms of P(p, q), q < p < 2q, as a multiset.

    Built from Λ(q, -p) with vertex x_0, L_0 = <2x_0, x_1, ..., x_n> and the
    sharp cobordism from P(2, 1): classes of C~/2L inside Char(L) give one
    maximal grading twice; the others split into two 2L_0-torsors combined
    with d(P(2,1)) = -1, 0 on the non-extending structures.
    """
    if not (q < p < 2 * q) or gcd(p, q) != 1:
        raise LatticeError(f"need coprime q < p < 2q, got ({p}, {q})")
    lat = linear_lattice(p, q)
    gram = lat.gram
    r = lat.rank
    ginv = inverse(gram)
    qf = QuadraticForm(gram)
    # L_0 in the basis 2x_0, x_1, ..., x_n
    dg = [[gram[i][j] * (2 if i == 0 else 1) * (2 if j == 0 else 1)
           for j in range(r)] for i in range(r)]
    qf0 = QuadraticForm(dg)

    def grading(min_norm):
        return (-min_norm + r) / 4

    def torsor_min(y):
        # min over k with k_0 even of (y + 2k)^T G (y + 2k)
        t = [-(y[0] / 4)] + [-v / 2 for v in y[1:]]
        best, _ = qf0.closest(t)
        return 4 * best

    out = Counter()
    char_vals = [gram[i][i] % 2 for i in range(r)]
    off_vals = list(char_vals)
    off_vals[0] += 1
    deltas = [dv for dv, _ in discriminant_group(gram)]
    for vals, inside in ((char_vals, True), (off_vals, False)):
        base = _char_base(gram, ginv, vals)
        for delta in deltas:
            y = [b + 2 * dv for b, dv in zip(base, delta)]
            if inside:
                m = grading(4 * qf.closest([-v / 2 for v in y])[0])
                out[m] += 2
            else:
                y1 = [y[0] + 2] + y[1:]
                m0 = grading(torsor_min(y))
                m1 = grading(torsor_min(y1))
                out[max(_D_O0 + m0, _D_O1 + m1)] += 1
                out[max(_D_O0 + m1, _D_O1 + m0)] += 1
    return out
