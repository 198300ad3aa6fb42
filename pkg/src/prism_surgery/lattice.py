"""Exact lattice arithmetic: continued fractions, linear lattices, Gram
determinants, Dedekind sums and bounded short-vector enumeration.

Everything here works over the integers or ``fractions.Fraction``; no
floating point is used to decide anything.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from math import ceil, floor, gcd, isqrt, sqrt

import numpy as np


class LatticeError(ValueError):
    pass


class SearchLimitExceeded(RuntimeError):
    """A bounded enumeration would exceed its configured size."""


# -- continued fractions ----------------------------------------------------

def hj_expand(p, q):
    """Hirzebruch-Jung expansion ``p/q = [a_-1, a_0, ..., a_n]^-``.

    Uses the ceiling rule, so every term is at least 2.
    """
    if q < 1 or p <= q:
        raise LatticeError(f"need p > q >= 1, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise LatticeError(f"({p}, {q}) not coprime")
    terms = []
    while q:
        a = -(-p // q)
        terms.append(a)
        p, q = q, a * q - p
    return terms


def hj_evaluate(terms):
    """Fold ``[c_0, c_1, ..., c_k]^-`` right to left; returns reduced (p, q).

    Terms below 2 (even negative ones) are allowed.  A zero denominator
    part way through raises ``ZeroDivisionError``.
    """
    if not terms:
        raise LatticeError("empty continued fraction")
    value = Fraction(terms[-1])
    for c in reversed(terms[:-1]):
        if value == 0:
            raise ZeroDivisionError("degenerate continued fraction")
        value = c - 1 / value
    return value.numerator, value.denominator


# -- Gram matrices ----------------------------------------------------------

def gram_det(gram):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [list(map(int, row)) for row in gram]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def tridiagonal_gram(weights):
    n = len(weights)
    g = [[0] * n for _ in range(n)]
    for i, a in enumerate(weights):
        g[i][i] = a
        if i + 1 < n:
            g[i][i + 1] = g[i + 1][i] = -1
    return g


def gram_of(vectors):
    return [[sum(a * b for a, b in zip(u, v)) for v in vectors] for u in vectors]


def inverse(gram):
    """Exact inverse of an integer matrix as nested lists of Fractions."""
    n = len(gram)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(gram)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise LatticeError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv_p = 1 / a[col][col]
        a[col] = [x * inv_p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


@dataclass(frozen=True)
class LinearLattice:
    """The linear lattice Λ(q, -p) with its vertex basis x_0..x_n."""

    weights: tuple
    p: int
    q: int

    @property
    def gram(self):
        return tridiagonal_gram(self.weights)

    @property
    def rank(self):
        return len(self.weights)


def linear_lattice(p, q):
    """Λ(q,-p): weights are a_0..a_n of ``p/q = [a_-1, a_0, ..., a_n]^-``.

    The leading term a_-1 is not a vertex; when p/q has a single term the
    lattice would be empty, and that case is rejected.
    """
    terms = hj_expand(p, q)
    weights = tuple(terms[1:])
    if not weights:
        raise LatticeError(f"{p}/{q} has no vertex terms")
    return LinearLattice(weights, p, q)


def weights_to_pq(weights, lead=2):
    """Invert ``linear_lattice``: (p, q) with p/q = [lead, *weights]^-."""
    return hj_evaluate([lead, *weights])


# -- Dedekind sums ----------------------------------------------------------

def _sawtooth(x):
    if x.denominator == 1:
        return Fraction(0)
    return x - floor(x) - Fraction(1, 2)


def dedekind_sum(m, n):
    """s(m, n) = sum_{i=1}^{n-1} ((i/n)) ((i m / n)), exactly.

    For coprime m, n no i m is divisible by n, and with r_i = i m mod n the
    sum collapses to sum(i r_i) / n^2 - (n - 1) / 4.
    """
    if n < 1:
        raise LatticeError("n must be positive")
    if gcd(m, n) != 1:
        raise LatticeError(f"({m}, {n}) not coprime")
    acc = sum(i * (i * m % n) for i in range(1, n))
    return Fraction(acc, n * n) - Fraction(n - 1, 4)


def dedekind_sum_direct(m, n):
    """The defining sum term by term; slow, kept as a reference."""
    if n < 1 or gcd(m, n) != 1:
        raise LatticeError(f"need coprime (m, n) with n >= 1, got ({m}, {n})")
    return sum((_sawtooth(Fraction(i, n)) * _sawtooth(Fraction(i * m, n))
                for i in range(1, n)), Fraction(0))


# -- bounded enumeration ----------------------------------------------------

class QuadraticForm:
    """Positive definite form with an exact LDL^T factorisation.

    ``norm(x) = sum_i d[i] * (x_i + sum_{j>i} mu[j][i] x_j)^2``.
    """

    def __init__(self, gram):
        n = len(gram)
        self.gram = [list(map(int, r)) for r in gram]
        self.n = n
        # Cholesky from the last coordinate so enumeration runs n-1 .. 0.
        g = [[Fraction(x) for x in r] for r in gram]
        d = [Fraction(0)] * n
        mu = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i):
                s = g[i][j] - sum(mu[i][k] * mu[j][k] * d[k] for k in range(j))
                mu[i][j] = s / d[j]
            d[i] = g[i][i] - sum(mu[i][k] ** 2 * d[k] for k in range(i))
            if d[i] <= 0:
                raise LatticeError("Gram matrix is not positive definite")
        # here g = M D M^T with M lower unitriangular (rows i, cols j<i)
        self.d = d
        self.m = mu

    def norm(self, x):
        g = self.gram
        n = self.n
        return sum(g[i][j] * x[i] * x[j] for i in range(n) for j in range(n))

    def enumerate(self, radius, center=None, limit=None):
        """Yield (x, norm) for integer x with norm(x - center) <= radius.

        norm(v) = sum_i d_i * ((M^T v)_i)^2 and M^T is upper triangular, so
        coordinates are fixed from the last index down.
        """
        n = self.n
        c = [Fraction(0)] * n if center is None else [Fraction(v) for v in center]
        radius = Fraction(radius)
        x = [0] * n
        count = 0
        m, d = self.m, self.d

        def rec(i, rem):
            nonlocal count
            if i < 0:
                count += 1
                if limit is not None and count > limit:
                    raise SearchLimitExceeded(f"more than {limit} lattice points")
                yield tuple(x), radius - rem
                return
            # (M^T (x - c))_i = (x_i - c_i) + sum_{j>i} m[j][i] (x_j - c_j)
            shift = sum(m[j][i] * (x[j] - c[j]) for j in range(i + 1, n))
            centre = c[i] - shift
            span = rem / d[i]
            w = isqrt(floor(span)) + 1
            lo, hi = floor(centre) - w, ceil(centre) + w
            for v in range(lo, hi + 1):
                t = v - centre
                used = d[i] * t * t
                if used <= rem:
                    x[i] = v
                    yield from rec(i - 1, rem - used)
            x[i] = 0

        yield from rec(n - 1, radius)

    def babai(self, target):
        """Nearest-plane rounding; returns an integer vector near ``target``."""
        n = self.n
        t = [Fraction(v) for v in target]
        x = [0] * n
        for i in reversed(range(n)):
            shift = sum(self.m[j][i] * (x[j] - t[j]) for j in range(i + 1, n))
            x[i] = round(t[i] - shift)
        return x

    def is_tridiagonal(self):
        g = self.gram
        return all(g[i][j] == 0 for i in range(self.n) for j in range(i + 2, self.n))

    def closest(self, target):
        """Minimum of norm(x - target) over integer x, with a minimiser."""
        if self.is_tridiagonal():
            return self._closest_chain(target)
        return self._closest_search(target)

    def _closest_chain(self, target):
        """Exact dynamic programme along a tridiagonal Gram matrix.

        With R the Babai value, any better z = x - target has
        z_i^2 <= R (G^-1)_ii, which boxes every coordinate.
        """
        n = self.n
        g = self.gram
        t = [Fraction(v) for v in target]
        guess = self.babai(t)
        radius = self.norm([a - b for a, b in zip(guess, t)])
        if not hasattr(self, "_inv_diag"):
            ginv = inverse(g)
            self._inv_diag = [ginv[i][i] for i in range(n)]
        ranges = []
        for i in range(n):
            span = radius * self._inv_diag[i]
            w = isqrt(floor(span)) + 1
            ranges.append([v - t[i] for v in range(floor(t[i]) - w, ceil(t[i]) + w + 1)
                           if (v - t[i]) ** 2 <= span])
        # layer i: z_i -> (best partial norm, back pointer)
        layer = {z: (g[0][0] * z * z, None) for z in ranges[0]}
        back = [layer]
        for i in range(1, n):
            off = 2 * g[i][i - 1]
            nxt = {}
            for z in ranges[i]:
                own = g[i][i] * z * z
                best = None
                for zp, (val, _) in layer.items():
                    c = val + own + off * z * zp
                    if best is None or c < best[0]:
                        best = (c, zp)
                nxt[z] = best
            layer = nxt
            back.append(layer)
        z = min(layer, key=lambda k: layer[k][0])
        val = layer[z][0]
        zs = [z]
        for i in range(n - 1, 0, -1):
            z = back[i][z][1]
            zs.append(z)
        zs.reverse()
        return val, tuple(int(a + b) for a, b in zip(zs, t))

    def _closest_search(self, target):
        """Minimum of norm(x - target) over integer x, with a minimiser.

        Depth-first search from the last coordinate, trying values in order
        of distance from the projected centre and shrinking the radius each
        time a better point is found.
        """
        n = self.n
        t = [Fraction(v) for v in target]
        m, d = self.m, self.d
        guess = self.babai(t)
        best = [self.norm([g - v for g, v in zip(guess, t)]), tuple(guess)]
        x = [0] * n

        def rec(i, used):
            shift = sum(m[j][i] * (x[j] - t[j]) for j in range(i + 1, n))
            centre = t[i] - shift
            base = round(centre)
            # zig-zag outwards from the nearest integer
            for k in count():
                cands = (base,) if k == 0 else (base + k, base - k)
                grew = False
                for v in cands:
                    u = v - centre
                    cost = used + d[i] * u * u
                    if cost > best[0] or (i == 0 and cost == best[0]):
                        continue
                    grew = True
                    x[i] = v
                    if i == 0:
                        best[0], best[1] = cost, tuple(x)
                    else:
                        rec(i - 1, cost)
                if not grew:
                    # both sides only get further away from here on
                    break
            x[i] = 0

        rec(n - 1, Fraction(0))
        return best[0], best[1]


def short_vectors(gram, bound, limit=None):
    """All nonzero coefficient vectors x with x^T G x <= bound, one per ±pair.

    The search is steered by a floating-point Cholesky factor with a little
    slack; every candidate's norm is then recomputed exactly, so the result
    is exact as long as the slack covers the rounding (ranks here are tiny).
    """
    g = np.array(gram, dtype=float)
    n = len(gram)
    if np.any(np.linalg.eigvalsh(g) <= 0):
        raise LatticeError("Gram matrix is not positive definite")
    # g = U^T U with U upper triangular; fix coordinates from the last one
    R = np.linalg.cholesky(g).T
    d = np.diag(R) ** 2
    mu = R / np.diag(R)[:, None]
    slack = 1e-7 * (1 + bound)
    gi = [list(map(int, row)) for row in gram]
    x = [0] * n
    out = []

    def rec(i, rem):
        if i < 0:
            nrm = sum(gi[a][b] * x[a] * x[b] for a in range(n) for b in range(n))
            if 0 < nrm <= bound and next(v for v in reversed(x) if v) > 0:
                if limit is not None and len(out) >= limit:
                    raise SearchLimitExceeded(f"more than {limit} lattice points")
                out.append((tuple(x), nrm))
            return
        shift = sum(mu[i][j] * x[j] for j in range(i + 1, n))
        w = sqrt(max(rem, 0) / d[i])
        for v in range(ceil(-shift - w - 1e-9), floor(-shift + w + 1e-9) + 1):
            u = v + shift
            x[i] = v
            rec(i - 1, rem - d[i] * u * u)
        x[i] = 0

    rec(n - 1, bound + slack)
    return out


# -- linearity recognition ----------------------------------------------------

def is_path_gram(g):
    """True iff ``g`` has the tridiagonal form of a vertex basis."""
    n = len(g)
    for i in range(n):
        if g[i][i] < 2:
            return False
        for j in range(i + 1, n):
            want = -1 if j == i + 1 else 0
            if g[i][j] != want:
                return False
    return True


def path_basis_search(generators, norm_bound, max_vectors=20000, accept=None):
    """Search a basis x_0..x_r with tridiagonal Gram (weights >= 2, off -1).

    ``generators`` is a basis of the lattice, given as integer vectors.
    Returns ``(weights, vectors)`` with vectors in the ambient coordinates,
    or ``None`` when no such basis exists among vectors of norm at most
    ``norm_bound``.  ``accept``, if given, is called on the ambient vectors
    of each complete path and can reject it.
    """
    gens = [tuple(map(int, v)) for v in generators]
    gram = gram_of(gens)
    r = len(gens)
    det = gram_det(gram)
    if det <= 0:
        raise LatticeError("generators do not span a positive definite lattice")
    if r == 1:
        w = gram[0][0]
        if w < 2 or (accept is not None and not accept([gens[0]])):
            return None
        return (w,), [gens[0]]
    cand = [x for x, nrm in short_vectors(gram, norm_bound, limit=max_vectors) if nrm >= 2]
    # both signs needed past the first vertex
    coeffs = np.array(cand + [tuple(-v for v in x) for x in cand], dtype=np.int64)
    if len(coeffs) == 0:
        return None
    G = np.array(gram, dtype=np.int64)
    pair = coeffs @ G @ coeffs.T
    norms = np.diag(pair).copy()
    half = len(cand)
    is_minus1 = pair == -1
    is_zero = pair == 0

    path = []

    def ambient(j):
        c = coeffs[j]
        return tuple(int(sum(int(c[k]) * gens[k][i] for k in range(r)))
                     for i in range(len(gens[0])))

    def extend(allowed):
        k = len(path)
        if k == r:
            sub = [[int(pair[i][j]) for j in path] for i in path]
            if gram_det(sub) != det:
                return False
            return accept is None or accept([ambient(j) for j in path])
        last = path[-1]
        nxt = allowed & is_minus1[last]
        for j in np.flatnonzero(nxt):
            path.append(j)
            if extend(allowed & is_zero[last]):
                return True
            path.pop()
        return False

    for i0 in range(half):
        path[:] = [i0]
        if extend(np.ones(len(coeffs), dtype=bool)):
            break
    else:
        return None
    weights = tuple(int(norms[j]) for j in path)
    return weights, [ambient(j) for j in path]


def discriminant_group(gram):
    """Elements of L*/L with their linking values b(x, x) mod 1.

    L*/L is generated by the dual basis (columns of G^-1 reduced mod 1);
    the group is closed up by breadth-first sums.  Elements are returned as
    rational coefficient vectors in the lattice basis.
    """
    ginv = inverse(gram)
    n = len(gram)
    det = gram_det(gram)

    def reduce(v):
        return tuple(x - floor(x) for x in v)

    gens = [reduce(ginv[i]) for i in range(n)]
    zero = tuple(Fraction(0) for _ in range(n))
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = reduce(a + b for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    if len(seen) != det:
        raise LatticeError("discriminant group size mismatch")
    out = []
    for v in sorted(seen):
        val = sum(gram[i][j] * v[i] * v[j] for i in range(n) for j in range(n))
        out.append((v, val - floor(val)))
    return out
