"""The monoid algebra at desk scale, over exact rationals.

Elements are finite sums of monomials x^m with m in a fixed affine
semigroup; the derivation attached to a root alpha with distinguished ray
rho sends x^m to <m, rho> * x^(m+alpha).  Because <alpha, rho> = -1, the
k-th iterate on a monomial carries the falling factorial of <m, rho>, so
every iterate chain terminates and the exponential is a finite sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .lattice import Vec, dot, vadd, vec, vscale
from .semigroup import AffineSemigroup, SemigroupError
from .roots import DEFAULT_BOUND, is_root


class AlgebraError(ValueError):
    """Element outside the semigroup algebra or invalid derivation data."""


class AlgebraElement:
    """A finite rational combination of semigroup monomials."""

    __slots__ = ("semigroup", "terms")

    def __init__(self, semigroup: AffineSemigroup, terms):
        self.semigroup = semigroup
        clean = {}
        for m, c in dict(terms).items():
            c = Fraction(c)
            if c == 0:
                continue
            m = vec(m)
            if not semigroup.contains(m):
                raise AlgebraError(f"exponent {m} lies outside the semigroup")
            clean[m] = c
        self.terms = dict(sorted(clean.items()))

    @staticmethod
    def monomial(semigroup, m, coeff=1) -> "AlgebraElement":
        return AlgebraElement(semigroup, {vec(m): Fraction(coeff)})

    @staticmethod
    def zero(semigroup) -> "AlgebraElement":
        return AlgebraElement(semigroup, {})

    @staticmethod
    def one(semigroup) -> "AlgebraElement":
        return AlgebraElement(semigroup, {(0,) * semigroup.rank: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.semigroup == other.semigroup
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.semigroup.key(), tuple(self.terms.items())))

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return AlgebraElement(self.semigroup, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) - c
        return AlgebraElement(self.semigroup, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgebraElement(
                self.semigroup, {m: c * Fraction(other) for m, c in self.terms.items()}
            )
        self._check(other)
        out: dict[Vec, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = vadd(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return AlgebraElement(self.semigroup, out)

    __rmul__ = __mul__

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.semigroup != self.semigroup:
            raise AlgebraError("operands live in different semigroup algebras")

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m, c in self.terms.items():
            bits.append(f"{c}*x^{m}")
        return " + ".join(bits)


@dataclass(frozen=True)
class DerivationSpec:
    """The homogeneous locally nilpotent derivation attached to a root.

    Validated on construction: (alpha, ray) must be accepted by the root
    decision procedure for the owning semigroup.
    """

    semigroup: AffineSemigroup
    alpha: Vec
    ray: Vec

    def __post_init__(self):
        object.__setattr__(self, "alpha", vec(self.alpha))
        object.__setattr__(self, "ray", vec(self.ray))
        w = is_root(self.semigroup, self.alpha, DEFAULT_BOUND)
        if w is None:
            raise AlgebraError(f"{self.alpha} is not a root of the semigroup")
        if self.ray != w.ray and self.ray not in w.qualifying_rays:
            raise AlgebraError(
                f"{self.ray} is not a distinguished ray for root {self.alpha}"
            )

    @staticmethod
    def unchecked(semigroup, alpha, ray) -> "DerivationSpec":
        """Bypass validation (test harness injection of corrupted data)."""
        obj = object.__new__(DerivationSpec)
        object.__setattr__(obj, "semigroup", semigroup)
        object.__setattr__(obj, "alpha", vec(alpha))
        object.__setattr__(obj, "ray", vec(ray))
        return obj


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def apply_derivation(D: DerivationSpec, a: AlgebraElement) -> AlgebraElement:
    """x^m -> <m, ray> * x^(m + alpha), extended linearly."""
    out: dict[Vec, Fraction] = {}
    for m, c in a.terms.items():
        w = dot(m, D.ray)
        if w == 0:
            continue
        mm = vadd(m, D.alpha)
        out[mm] = out.get(mm, Fraction(0)) + c * w
    return AlgebraElement(a.semigroup, out)


def iterate_derivation(D: DerivationSpec, a: AlgebraElement, k: int) -> AlgebraElement:
    if k < 0:
        raise AlgebraError("negative iterate")
    for _ in range(k):
        if a.is_zero():
            break
        a = apply_derivation(D, a)
    return a


def exponentiate(D: DerivationSpec, t, a: AlgebraElement) -> AlgebraElement:
    """sum_k t^k/k! D^k(a); finite by local nilpotency.

    On a monomial this is x^m * (1 + t*x^alpha)^<m, ray> expanded, since
    the ray pairs -1 with alpha.
    """
    t = Fraction(t)
    out: dict[Vec, Fraction] = {}
    for m, c in a.terms.items():
        w = dot(m, D.ray)
        if w < 0:
            raise AlgebraError(
                f"monomial {m} pairs negatively with the ray; not locally nilpotent"
            )
        for k in range(w + 1):
            mm = vadd(m, vscale(k, D.alpha))
            out[mm] = out.get(mm, Fraction(0)) + c * comb(w, k) * t**k
    return AlgebraElement(a.semigroup, out)


def check_locally_nilpotent(D: DerivationSpec, gens, max_iter: int = 64):
    """Verify D^i kills every generator monomial with i <= <g, ray> + 1.

    Returns (True, max index used) or raises with the offending generator.
    Identically-zero candidates are rejected: a derivation that kills every
    generator at the first step carries no root subgroup.
    """
    worst = 0
    all_zero = True
    for g in gens:
        g = vec(g)
        w = dot(g, D.ray)
        if w > 0:
            all_zero = False
        a = AlgebraElement.monomial(D.semigroup, g)
        i = 0
        while not a.is_zero():
            i += 1
            if i > min(max_iter, w + 1):
                raise AlgebraError(
                    f"iterates on x^{g} did not vanish by step {w + 1}"
                )
            a = apply_derivation(D, a)
        worst = max(worst, i)
    if all_zero:
        raise AlgebraError("trivial derivation: every generator is killed at once")
    return True, worst
