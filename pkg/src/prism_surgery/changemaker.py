"""Changemaker vectors, the standard basis of their orthogonal complement,
and recognition of that complement as a linear lattice."""

from dataclasses import dataclass, field

from .lattice import (
    LatticeError,
    gram_of,
    hj_evaluate,
    path_basis_search,
)

TIGHT = "tight"
JUST_RIGHT = "just-right"
GAPPY = "gappy"


def _check_sorted(sigma):
    if any(s < 0 for s in sigma):
        raise LatticeError(f"negative entry in {tuple(sigma)}")
    if any(a > b for a, b in zip(sigma, sigma[1:])):
        raise LatticeError(f"{tuple(sigma)} is not sorted")


def subset_sums(values):
    """Bitset of reachable subset sums (bit k set iff k is a subset sum)."""
    bits = 1
    for v in values:
        bits |= bits << v
    return bits


def is_changemaker(sigma):
    """Every 0 <= k <= sum(sigma) is a subset sum of sigma."""
    _check_sorted(sigma)
    total = sum(sigma)
    return subset_sums(sigma) == (1 << (total + 1)) - 1


def norm(v):
    return sum(x * x for x in v)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class StandardBasisVector:
    vector: tuple
    index: int
    kind: str
    gappy_indices: frozenset = field(default_factory=frozenset)

    @property
    def norm(self):
        return norm(self.vector)


@dataclass(frozen=True)
class ComplementLattice:
    sigma: tuple
    basis: tuple

    @property
    def vectors(self):
        return [b.vector for b in self.basis]

    @property
    def gram(self):
        return gram_of(self.vectors)


def _greedy_support(sigma, j):
    # descending scan: taking index i whenever it fits gives the A with the
    # largest sum of 2^i, because the prefix is itself a changemaker
    rem = sigma[j]
    A = []
    for i in range(j - 1, -1, -1):
        if sigma[i] <= rem and sigma[i] > 0:
            A.append(i)
            rem -= sigma[i]
            if rem == 0:
                break
    if rem:
        raise LatticeError(f"sigma_{j} is not a subset sum of its prefix")
    return sorted(A)


def standard_basis(sigma):
    sigma = tuple(sigma)
    if not is_changemaker(sigma):
        raise LatticeError(f"{sigma} is not a changemaker")
    m = len(sigma)
    basis = []
    for j in range(1, m):
        v = [0] * m
        if sigma[j] == 1 + sum(sigma[:j]):
            v[0] = 2
            for i in range(1, j):
                v[i] = 1
            v[j] = -1
            basis.append(StandardBasisVector(tuple(v), j, TIGHT))
            continue
        A = _greedy_support(sigma, j)
        for i in A:
            v[i] = 1
        v[j] = -1
        Aset = set(A)
        gaps = frozenset(i for i in A if i < j - 1 and i + 1 not in Aset)
        kind = GAPPY if gaps else JUST_RIGHT
        basis.append(StandardBasisVector(tuple(v), j, kind, gaps))
    return ComplementLattice(sigma, tuple(basis))


@dataclass(frozen=True)
class LinearRecognition:
    """sigma^perp written in a vertex basis x_0..x_n."""

    p: int
    q: int
    weights: tuple
    vertices: tuple  # x_0..x_n in Z^{n+2}
    vertex_order: tuple  # standard-basis indices j, or None off the fast path

    @property
    def p_reversed(self):
        """p for the opposite orientation; p * p_reversed = 1 mod q."""
        return hj_evaluate([2, *self.weights[::-1]])[0]


def _path_order(gram):
    """Order and signs making ``gram`` tridiagonal with -1 off the diagonal.

    Returns ``(order, signs)`` or None when the nonzero-pairing graph is not
    a path with all pairings ±1.
    """
    n = len(gram)
    if n == 1:
        return [0], [1]
    adj = {i: [j for j in range(n) if j != i and gram[i][j]] for i in range(n)}
    for i in range(n):
        if len(adj[i]) > 2 or any(abs(gram[i][j]) != 1 for j in adj[i]):
            return None
    ends = [i for i in range(n) if len(adj[i]) == 1]
    if len(ends) != 2:
        return None
    order = [ends[0]]
    prev = None
    while len(order) < n:
        cur = order[-1]
        nxt = [j for j in adj[cur] if j != prev]
        if not nxt:
            return None
        prev = cur
        order.append(nxt[0])
    signs = [1]
    for a, b in zip(order, order[1:]):
        signs.append(-signs[-1] * gram[a][b])
    return order, signs


def _marked_end(vertices, marks):
    """0 or -1 for the end vertex pairing oddly with e_a+e_b+e_c+e_d.

    x_0 must be the only vertex with odd pairing, and an end of the path;
    otherwise None.
    """
    parity = [sum(v[i] for i in marks) % 2 for v in vertices]
    if sum(parity) != 1:
        return None
    if parity[0]:
        return 0
    if parity[-1]:
        return -1
    return None


def _should_reverse(vertices, weights, marks):
    if marks is not None:
        return _marked_end(vertices, marks) == -1 and len(vertices) > 1
    # unmarked: take the end giving the larger p
    fwd = hj_evaluate([2, *weights])
    rev = hj_evaluate([2, *weights[::-1]])
    return rev[0] > fwd[0]


def recognize_linear(sigma, norm_bound=None, marks=None, max_vectors=20000):
    """Recognise sigma^perp as Λ(q, -p) and return p, q and a vertex basis.

    The standard basis is tried first: if its pairing graph is a path with
    ±1 pairings it is already a vertex basis up to order and signs.
    Otherwise all vectors of norm <= ``norm_bound`` are searched.  The
    default bound is the largest standard-basis norm; every vertex weight
    is at most that, since each vertex lies in the interval of some
    standard basis vector.

    With ``marks`` (a, b, c, d) the vertex x_0 is the one pairing oddly with
    e_a + e_b + e_c + e_d; None is returned if no vertex basis fits.
    Without marks the orientation giving the larger p is reported.
    """
    sigma = tuple(sigma)
    comp = standard_basis(sigma)
    vecs = comp.vectors
    gram = comp.gram
    q = norm(sigma)

    vertices = weights = vorder = None
    path = _path_order(gram)
    if path is not None:
        idx, signs = path
        cand = [tuple(s * x for x in vecs[i]) for i, s in zip(idx, signs)]
        if marks is None or _marked_end(cand, marks) is not None:
            vertices = cand
            weights = tuple(gram[i][i] for i in idx)
            vorder = tuple(comp.basis[i].index for i in idx)
    if vertices is None:
        if norm_bound is None:
            norm_bound = max(gram[i][i] for i in range(len(gram)))
        accept = None
        if marks is not None:
            accept = lambda vs: _marked_end(vs, marks) is not None
        found = path_basis_search(vecs, norm_bound, max_vectors=max_vectors,
                                  accept=accept)
        if found is None:
            return None
        weights, vertices = found
        weights = tuple(weights)
        vertices = list(vertices)
    if _should_reverse(vertices, weights, marks):
        vertices = vertices[::-1]
        weights = weights[::-1]
        vorder = vorder[::-1] if vorder is not None else None
    p, qq = hj_evaluate([2, *weights])
    if qq != q:
        raise LatticeError(f"determinant {qq} does not match |sigma|^2 = {q}")
    return LinearRecognition(p, q, tuple(weights), tuple(vertices), vorder)


def irreducible_splits(v):
    """All splittings v = x + y (x, y nonzero) by dividing the support.

    For v with entries in {-1, 0, 1} these are the only candidate
    decompositions with <x, y> >= 0.
    """
    supp = [i for i, x in enumerate(v) if x]
    out = []
    for mask in range(1, (1 << len(supp)) - 1):
        x = [0] * len(v)
        for k, i in enumerate(supp):
            if mask >> k & 1:
                x[i] = v[i]
        y = tuple(a - b for a, b in zip(v, x))
        out.append((tuple(x), y))
    return out


def in_complement(v, sigma):
    return dot(v, sigma) == 0


def enumerate_changemakers(max_len, max_entry, min_len=1):
    """Sorted changemakers with sigma_0 = 1 and entries <= max_entry."""
    def rec(prefix, total):
        if len(prefix) >= min_len:
            yield tuple(prefix)
        if len(prefix) == max_len:
            return
        for v in range(prefix[-1], min(max_entry, total + 1) + 1):
            prefix.append(v)
            yield from rec(prefix, total + v)
            prefix.pop()

    yield from rec([1], 1)
