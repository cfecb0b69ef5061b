import itertools
import random

import pytest

from toricroots.cones import (
    Cone,
    IntBox,
    SlicePolyhedron,
    cone_from_generators,
    cone_from_inequalities,
    dual,
    enumerate_lattice_points,
    full_cone,
    slice_lattice_points,
    zero_cone,
)
from toricroots.lattice import (
    dot,
    hnf_basis,
    is_zero,
    left_kernel,
    primitive,
    right_kernel,
    row_rank,
    vneg,
)


def brute_facet_normals(gens, dim):
    """Independent oracle for full-dimensional cones: every facet is spanned
    by a rank d-1 subset of the generators, so enumerate those subsets and
    keep the kernel directions valid on one side."""
    gens = [g for g in gens if not is_zero(g)]
    out = set()
    for sub in itertools.combinations(gens, dim - 1):
        if row_rank(tuple(sub)) != dim - 1:
            continue
        K = right_kernel(tuple(sub))
        assert len(K) == 1
        for cand in (K[0], vneg(K[0])):
            if all(dot(g, cand) >= 0 for g in gens):
                out.add(primitive(cand))
    return out


class TestConstruction:
    def test_redundant_generator_dropped(self):
        C = cone_from_generators([(1, 0), (1, 1), (1, 2)])
        assert C.rays == ((1, 0), (1, 2))
        assert C.facet_normals == ((0, 1), (2, -1))

    def test_skew_cone(self):
        C = cone_from_generators([(1, 0), (3, 4)])
        assert C.rays == ((1, 0), (3, 4))
        assert C.facet_normals == ((0, 1), (4, -3))

    def test_line_cone(self):
        C = cone_from_generators([(1, 0), (-1, 0)])
        assert set(C.rays) == {(1, 0), (-1, 0)}
        assert set(C.facet_normals) == {(0, 1), (0, -1)}
        assert not C.is_pointed()

    def test_zero_cone_is_pointed(self):
        Z = zero_cone(2)
        assert Z.is_pointed()
        assert Z.rays == ()


class TestDual:
    def test_paper_pair(self):
        C = cone_from_generators([(1, 0), (1, 2)])
        assert dual(C).rays == ((0, 1), (2, -1))

    def test_reverse_direction(self):
        C = cone_from_generators([(0, 1), (4, -3)])
        D = dual(C)
        assert D.rays == ((1, 0), (3, 4))

    def test_full_space(self):
        F = full_cone(2)
        assert dual(F).rays == ()
        assert dual(F).cone_dim() == 0

    def test_involution_structural(self):
        for gens in ([(1, 0), (1, 2)], [(1, 0), (-1, 0), (0, 1)], [(2, 3)]):
            C = cone_from_generators(gens)
            assert dual(dual(C)) == C

    def test_involution_from_scratch(self):
        rng = random.Random(11)
        for _ in range(60):
            d = rng.choice((2, 3, 4))
            k = rng.randint(1, d + 1)
            gens = []
            for _ in range(k):
                v = tuple(rng.randint(-4, 4) for _ in range(d))
                if not is_zero(v):
                    gens.append(v)
            if not gens:
                continue
            C = cone_from_generators(gens, d)
            # rebuild the dual from its generator description
            D = cone_from_generators(list(C.facet_normals) or [], d)
            assert D == dual(C)
            assert cone_from_generators(list(D.facet_normals) or [], d) == C


class TestOracle:
    def test_facets_match_brute_force(self):
        rng = random.Random(5)
        for _ in range(80):
            d = rng.choice((2, 3))
            k = rng.randint(d, d + 2)
            gens = []
            while len(gens) < k:
                v = tuple(rng.randint(-4, 4) for _ in range(d))
                if not is_zero(v):
                    gens.append(primitive(v))
            C = cone_from_generators(gens, d)
            if not C.is_full_dimensional():
                continue
            assert set(C.facet_normals) == brute_facet_normals(gens, d)

    def test_farkas_consistency(self):
        rng = random.Random(12)
        C = cone_from_generators([(1, 0), (1, 2)])
        for _ in range(200):
            p = (rng.randint(-6, 6), rng.randint(-6, 6))
            inside = all(dot(p, n) >= 0 for n in C.facet_normals)
            assert C.contains(p) == inside


class TestPointed:
    def test_examples(self):
        assert cone_from_generators([(1, 0), (1, 2)]).is_pointed()
        assert not cone_from_generators([(1, 0), (-1, 0)]).is_pointed()
        assert zero_cone(2).is_pointed()


class TestEnumeration:
    def test_box_enumeration(self):
        C = cone_from_generators([(1, 0), (1, 2)])
        pts = enumerate_lattice_points(C, IntBox((0, 0), (2, 2)))
        assert pts == [(0, 0), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)]

    def test_apex_only(self):
        C = cone_from_generators([(1, 0), (3, 4)])
        assert enumerate_lattice_points(C, IntBox((0, 0), (0, 0))) == [(0, 0)]

    def test_exclusion(self):
        C = cone_from_generators([(1, 0), (3, 4)])
        pts = enumerate_lattice_points(C, IntBox((0, 0), (3, 4)))
        assert (3, 4) in pts and (2, 3) not in pts

    def test_brute_force_agreement(self):
        C = cone_from_generators([(1, 0), (3, 4)])
        box = IntBox((-2, -2), (4, 4))
        brute = [p for p in box.points()
                 if all(dot(p, n) >= 0 for n in C.facet_normals)]
        assert enumerate_lattice_points(C, box) == brute


class TestSlices:
    def test_diagonal_slice(self):
        P = SlicePolyhedron((2, -1), -1, ((0, 1),))
        assert slice_lattice_points(P, IntBox((-2, -2), (3, 3))) == [(0, 1), (1, 3)]

    def test_bottom_row(self):
        P = SlicePolyhedron((0, 1), -1, ((2, -1),))
        got = slice_lattice_points(P, IntBox((-1, -1), (3, 0)))
        assert got == [(0, -1), (1, -1), (2, -1), (3, -1)]

    def test_contradictory_constraints(self):
        P = SlicePolyhedron((0, 1), -1, ((0, 1),))
        assert slice_lattice_points(P, IntBox((-3, -3), (3, 3))) == []


class TestCanonicalEquality:
    def test_permutation_of_generators(self):
        A = cone_from_generators([(1, 2), (1, 0), (1, 1)])
        B = cone_from_generators([(1, 0), (1, 2)])
        assert A == B
        assert hash(A) == hash(B)

    def test_scaled_generators(self):
        A = cone_from_generators([(2, 0), (3, 6)])
        B = cone_from_generators([(1, 0), (1, 2)])
        assert A == B

    def test_from_inequalities(self):
        C = cone_from_inequalities([(0, 1), (2, -1)], 2)
        assert C == cone_from_generators([(1, 0), (1, 2)])
