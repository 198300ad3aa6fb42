"""Surgery invariants: correction terms, torsion coefficients, Alexander
polynomial data and the Casson-Walker invariant computed two ways."""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .lattice import LatticeError, dedekind_sum


class ProfileError(ValueError):
    """Torsion coefficients that no L-space knot can have."""


@dataclass(frozen=True)
class TorsionProfile:
    """Torsion coefficients t_0..t_{2q} of a knot with a 4q-surgery.

    t_i for i > 2q is zero (the genus is at most 2q).
    """

    q: int
    t: tuple

    def __post_init__(self):
        if len(self.t) != 2 * self.q + 1:
            raise ProfileError(f"expected {2 * self.q + 1} coefficients, got {len(self.t)}")

    def at(self, i):
        if i < 0:
            raise IndexError(i)
        return self.t[i] if i < len(self.t) else 0

    def wrapped(self, j):
        """t_{min(j, 4q - j)} for j in [0, 4q]."""
        return self.at(min(j, 4 * self.q - j))

    @property
    def genus(self):
        return next((i for i, v in enumerate(self.t) if v == 0), len(self.t))

    @property
    def epsilon(self):
        return tuple(self.at(i) - self.at(i + 1) for i in range(len(self.t)))

    @property
    def alpha(self):
        return alexander_from_torsion(self)[0]

    def bumped(self, i, by=1):
        t = list(self.t)
        t[i] += by
        return TorsionProfile(self.q, tuple(t))


@dataclass(frozen=True)
class AlexanderData:
    alpha: dict  # i -> alpha_i for 0 <= i <= genus
    delta_minus1: int
    delta2: int  # Δ''(1)


def alexander_from_torsion(profile):
    """Alexander coefficients from second differences of t.

    Returns ``(alpha, Δ(-1), Δ''(1))``.  Raises ProfileError if some
    t_i - t_{i+1} is outside {0, 1}.
    """
    eps = profile.epsilon
    bad = [i for i, e in enumerate(eps) if e not in (0, 1)]
    if bad:
        raise ProfileError(f"t_i - t_(i+1) not in {{0,1}} at i = {bad}")
    top = len(profile.t) + 1
    alpha = {}
    for i in range(1, top):
        a = profile.at(i - 1) - 2 * profile.at(i) + profile.at(i + 1)
        if a:
            alpha[i] = a
    alpha[0] = 1 - 2 * sum(alpha.values())
    delta_m1 = 1 - 4 * sum((-1) ** i * e for i, e in enumerate(eps))
    delta2 = 2 * sum(i * i * a for i, a in alpha.items())
    return alpha, delta_m1, delta2


def delta_at_minus_one(alpha):
    """Δ(-1) = α_0 + 2 Σ_{i>0} (-1)^i α_i, by direct evaluation."""
    return alpha.get(0, 0) + 2 * sum((-1) ** i * a for i, a in alpha.items() if i > 0)


def lens_d(n, i):
    """d(L(n, 1), i) = -1/4 + (2i - n)^2 / (4n)."""
    if not 0 <= i < n:
        raise ValueError(f"need 0 <= i < {n}")
    return Fraction(-1, 4) + Fraction((2 * i - n) ** 2, 4 * n)


def surgery_d(n, i, profile):
    """d(S^3_n(K), i) = d(L(n,1), i) - 2 t_{min(i, n - i)}."""
    return lens_d(n, i) - 2 * profile.at(min(i, n - i))


def surgery_d_multiset(profile):
    n = 4 * profile.q
    return Counter(surgery_d(n, i, profile) for i in range(n))


def prism_a1_d(a):
    """Correction terms of P(a, 1): {0, 0, -(a+2)/4, -(a-2)/4}."""
    if a < 1:
        raise ValueError("a must be positive")
    return Counter([Fraction(0), Fraction(0), Fraction(-(a + 2), 4), Fraction(-(a - 2), 4)])


def casson_walker_prism(p, q):
    if p <= 0 or q <= 0 or gcd(p, q) != 1:
        raise LatticeError(f"need coprime positive (p, q), got ({p}, {q})")
    return Fraction(p, 8 * q) - dedekind_sum(p, q)


def casson_walker_prism_lescop(p, q):
    """The longer Lescop form, before reciprocity is applied."""
    return Fraction(1, 12) * (-Fraction(p, q) * (Fraction(1, p * p) - Fraction(1, 2))
                              - Fraction(q, p) + 3 + 12 * dedekind_sum(q, p))


def casson_walker_surgery(q, delta2):
    """λ(S^3_{4q}(K)) from Δ''_K(1)."""
    if delta2 % 2:
        raise ValueError("Δ''(1) must be even")
    return Fraction(-(2 * q - 1) * (4 * q - 1), 24 * q) + Fraction(delta2, 4 * q)


def mod4_obstruction(p, q):
    """For q odd: True iff p = 3 (mod 4).  False rules P(p, q) out."""
    if q <= 0 or q % 2 == 0:
        raise ValueError("the mod 4 condition needs q odd and positive")
    if gcd(p, q) != 1:
        raise LatticeError(f"({p}, {q}) not coprime")
    return p % 4 == 3


def corr_equal_violations(profile):
    """Indices i in [0, q] where the t_{q-i} - t_{q+i} relation fails.

    Even i need exactly i/2; odd i need (i - 1)/2 or (i + 1)/2.
    """
    q = profile.q
    out = []
    for i in range(q + 1):
        diff = profile.at(q - i) - profile.at(q + i)
        ok = diff * 2 == i if i % 2 == 0 else diff * 2 in (i - 1, i + 1)
        if not ok:
            out.append(i)
    return out
