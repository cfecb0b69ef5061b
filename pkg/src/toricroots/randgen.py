"""Seeded random semigroup instances for the verification suites.

Saturated instances sample primitive rays with coordinates in [-6, 6] and
reject cones that are not pointed and full-dimensional, so every instance
has a well-defined Hilbert basis and grading.  Generated and hole-patched
variants are derived from those.
"""

from __future__ import annotations

import random

from .lattice import is_zero, primitive, vec_gcd
from .cones import cone_from_generators
from .semigroup import AffineSemigroup, SemigroupError


def random_saturated(rng: random.Random, rank: int = 2,
                     max_rays: int | None = None) -> AffineSemigroup:
    """Pointed saturated semigroup of the given rank (cone coords in [-6,6])."""
    if max_rays is None:
        max_rays = 3 if rank == 2 else 4
    while True:
        k = rng.randint(rank, max_rays)
        rays = []
        for _ in range(k):
            while True:
                v = tuple(rng.randint(-6, 6) for _ in range(rank))
                if not is_zero(v):
                    break
            rays.append(primitive(v))
        cone = cone_from_generators(rays, rank)
        if not cone.is_pointed() or not cone.is_full_dimensional():
            continue
        return AffineSemigroup.saturated_from_cone(cone)


def random_generated(rng: random.Random, rank: int = 2) -> AffineSemigroup:
    """Pointed generated semigroup: a Hilbert basis with a few elements
    doubled or dropped, so it is usually not saturated."""
    sat = random_saturated(rng, rank)
    hb = list(sat.hilbert_basis().elements)
    gens = []
    for h in hb:
        roll = rng.random()
        if roll < 0.3:
            gens.append(tuple(2 * x for x in h))
            gens.append(tuple(3 * x for x in h))
        else:
            gens.append(h)
    if not gens:
        gens = hb
    try:
        return AffineSemigroup.generated(gens)
    except SemigroupError:
        return AffineSemigroup.generated(hb)


def random_hole_patched(rng: random.Random, rank: int = 2) -> AffineSemigroup:
    """Hole-patched instance: a saturated base minus its first one or two
    decomposition layers (always a valid subsemigroup).

    Very wide cones are resampled so the layer computation stays at desk
    scale; the lemmas are exercised on small instances anyway.
    """
    while True:
        sat = random_saturated(rng, rank)
        hb = sat.hilbert_basis().elements
        u = sat.grading_vector()
        from .lattice import dot

        if len(hb) > 10 or max(dot(h, u) for h in hb) > 8:
            continue
        l = rng.randint(1, 2)
        sl = sat.sl_subsemigroup(l)
        if sl.kind != "hole_patched":
            raise SemigroupError("layer removal should produce a hole description")
        return sl


def random_instance(rng: random.Random, rank: int = 2) -> AffineSemigroup:
    roll = rng.random()
    if roll < 0.4:
        return random_saturated(rng, rank)
    if roll < 0.7:
        return random_generated(rng, rank)
    return random_hole_patched(rng, rank)
