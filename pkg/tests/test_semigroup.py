import itertools
import random
from fractions import Fraction
from math import ceil, floor

import pytest

from toricroots.cones import IntBox
from toricroots.lattice import dot, is_zero, vadd, vsub
from toricroots.randgen import random_generated, random_saturated
from toricroots.semigroup import (
    AffineSemigroup,
    APFamily,
    SemigroupError,
    to_hole_patched,
)

S1_GENS = [(1, 0), (1, 1), (1, 2)]
FIG4_HOLES = [(1, 0), (1, 1), (3, 2), (3, 3), (3, 4), (5, 6)]


def brute_membership(gens, m, depth=12):
    """Oracle: coefficient search over all bounded combinations."""
    gens = list(gens)

    def rec(target, i):
        if is_zero(target):
            return True
        if i == len(gens):
            return False
        g = gens[i]
        reach = target
        for _ in range(depth + 1):
            if rec(reach, i + 1):
                return True
            reach = vsub(reach, g)
            if sum(abs(x) for x in reach) > sum(abs(x) for x in target) + 10 * depth:
                break
        return False

    return rec(m, 0)


def brute_hilbert_basis(cone):
    """Oracle: grading-bounded box scan plus pairwise irreducibility.

    Irreducibles lie inside a parallelepiped of at most d rays, bounding
    their grading by the sum of the d largest ray gradings.
    """
    d = cone.dim
    rays = cone.extreme_rays
    from toricroots.semigroup import interior_grading

    u = interior_grading(cone)
    B = sum(sorted((dot(r, u) for r in rays), reverse=True)[:d])
    lo, hi = [], []
    for i in range(d):
        qs = [Fraction(B * r[i], dot(r, u)) for r in rays]
        lo.append(floor(min(qs + [Fraction(0)])))
        hi.append(ceil(max(qs + [Fraction(0)])))
    pts = [
        p
        for p in IntBox(tuple(lo), tuple(hi)).points()
        if cone.contains(p) and 0 < dot(p, u) <= B
    ]
    pset = set(pts)
    out = []
    for p in pts:
        if not any(
            q != p and cone.contains(vsub(p, q)) and not is_zero(vsub(p, q))
            for q in pset
        ):
            out.append(p)
    return sorted(out)


class TestMembership:
    def test_generated_examples(self):
        S = AffineSemigroup.generated([(1, 0), (1, 2)])
        assert S.contains((2, 2))
        assert not S.contains((1, 1))

    def test_saturated_example(self):
        S = AffineSemigroup.saturated([(1, 0), (3, 4)])
        assert not S.contains((2, 3))
        assert S.contains((3, 4))

    def test_hole_patched_example(self):
        S = AffineSemigroup.hole_patched([(1, 0), (1, 1), (3, 4)], FIG4_HOLES)
        assert not S.contains((3, 4))
        assert S.contains((4, 4))

    def test_dimension_mismatch(self):
        S = AffineSemigroup.generated([(1, 0), (1, 2)])
        with pytest.raises(SemigroupError):
            S.contains((1, 2, 3))

    def test_against_brute_force(self):
        rng = random.Random(3)
        for _ in range(12):
            S = random_generated(rng, 2)
            u = S.grading_vector()
            for p in IntBox((0, 0), (5, 5)).points():
                if dot(p, u) > 12:
                    continue
                assert S.contains(p) == brute_membership(S.gens, p), (S.gens, p)

    def test_nonpointed_generated(self):
        S = AffineSemigroup.generated([(1, 0), (-1, 0), (0, 1)])
        assert S.contains((-7, 3))
        assert not S.contains((0, -1))
        G2 = AffineSemigroup.generated([(2, 0), (-2, 0), (1, 1)])
        assert G2.contains((-1, 1))
        assert not G2.contains((1, 0))


class TestSaturation:
    def test_small_example(self):
        S = AffineSemigroup.generated([(1, 0), (1, 2)])
        _, hb = S.saturation()
        assert hb.elements == ((1, 0), (1, 1), (1, 2))

    def test_figure_cone(self):
        S = AffineSemigroup.generated([(1, 0), (1, 1), (3, 4)])
        _, hb = S.saturation()
        assert hb.elements == ((1, 0), (1, 1), (3, 4))

    def test_idempotent(self):
        S = AffineSemigroup.saturated(S1_GENS)
        sat, _ = S.saturation()
        assert sat is S

    def test_is_saturated(self):
        assert AffineSemigroup.generated(S1_GENS).is_saturated()
        assert not AffineSemigroup.generated([(1, 0), (1, 2)]).is_saturated()
        assert AffineSemigroup.saturated([(1, 0), (1, 2)]).is_saturated()

    def test_hilbert_oracle_small(self):
        rng = random.Random(9)
        count = 0
        while count < 12:
            S = random_saturated(rng, rng.choice((2, 3)))
            u = S.grading_vector()
            if max(dot(r, u) for r in S.cone.extreme_rays) > 6:
                continue
            count += 1
            assert list(S.hilbert_basis().elements) == brute_hilbert_basis(S.cone)


class TestDualRaysAndFacets:
    def test_dual_rays(self):
        assert AffineSemigroup.saturated(S1_GENS).dual_rays() == ((0, 1), (2, -1))
        assert AffineSemigroup.generated([(1, 0), (1, 1), (3, 4)]).dual_rays() == \
            ((0, 1), (4, -3))
        torus = AffineSemigroup.saturated([(1, 0), (-1, 0), (0, 1), (0, -1)])
        assert torus.dual_rays() == ()

    def test_facets(self):
        S = AffineSemigroup.saturated(S1_GENS)
        assert S.facet((0, 1)).generators == ((1, 0),)
        assert S.facet((2, -1)).generators == ((1, 2),)
        q = AffineSemigroup.saturated([(1, 0), (0, 1)])
        assert q.facet((1, 0)).generators == ((0, 1),)
        with pytest.raises(SemigroupError):
            S.facet((1, 1))

    def test_generated_facet(self):
        S = AffineSemigroup.generated([(1, 0), (1, 2)])
        assert S.facet((0, 1)).generators == ((1, 0),)

    def test_holed_line_facet(self):
        S = AffineSemigroup.hole_patched(
            [(1, 0), (1, 2)], [], [APFamily((1, 2), (2, 4))]
        )
        f = S.facet((2, -1))
        assert f.generators == ((2, 4),)
        assert f.complete


class TestHoles:
    def test_parity_holes(self):
        S = AffineSemigroup.generated([(1, 0), (1, 2)])
        got = S.holes_within(IntBox((0, 0), (3, 3)))
        assert got == [(1, 1), (2, 1), (2, 3), (3, 1), (3, 3)]
        assert all(h[1] % 2 == 1 for h in got)

    def test_figure_holes(self):
        S = AffineSemigroup.hole_patched([(1, 0), (1, 1), (3, 4)], FIG4_HOLES)
        assert S.holes_within(IntBox((0, 0), (6, 8))) == sorted(FIG4_HOLES)

    def test_saturated_no_holes(self):
        S = AffineSemigroup.saturated(S1_GENS)
        assert S.holes_within(IntBox((-2, -2), (6, 6))) == []

    def test_ap_family_holes(self):
        S = AffineSemigroup.hole_patched(
            [(1, 0), (1, 2)], [], [APFamily((1, 2), (2, 4))]
        )
        assert S.holes_within(IntBox((0, 0), (4, 8))) == [(1, 2), (3, 6)]


class TestHolePatchedValidation:
    def test_rejects_open_split(self):
        with pytest.raises(SemigroupError, match="not closed"):
            AffineSemigroup.hole_patched([(1, 0), (0, 1)], [(1, 1)])

    def test_rejects_bad_line_family(self):
        # removing every even multiple on a ray leaves 1+1 = 2 outside
        with pytest.raises(SemigroupError, match="not closed"):
            AffineSemigroup.hole_patched(
                [(1, 0), (0, 1)], [], [APFamily((2, 0), (2, 0))]
            )

    def test_zero_is_never_a_hole(self):
        with pytest.raises(SemigroupError):
            AffineSemigroup.hole_patched([(1, 0), (0, 1)], [(0, 0)])

    def test_hole_outside_cone(self):
        with pytest.raises(SemigroupError):
            AffineSemigroup.hole_patched([(1, 0), (0, 1)], [(-1, 2)])

    def test_paper_families_validate_exactly(self):
        S = AffineSemigroup.hole_patched(
            [(1, 0), (1, 2)], [], [APFamily((1, 2), (2, 4))]
        )
        assert S.closure_exact

    def test_closure_cross_check(self):
        rng = random.Random(21)
        S = AffineSemigroup.hole_patched([(1, 0), (1, 1), (3, 4)], FIG4_HOLES)
        els = S.elements_up_to(8)
        for _ in range(300):
            a = rng.choice(els)
            b = rng.choice(els)
            assert S.contains(vadd(a, b))


class TestIrreducibles:
    def test_natural_numbers(self):
        assert AffineSemigroup.saturated([(1,)]).irreducibles().elements == ((1,),)

    def test_grading_one_layer(self):
        S = AffineSemigroup.generated(S1_GENS)
        assert S.irreducibles().elements == ((1, 0), (1, 1), (1, 2))

    def test_numerical_tail(self):
        S = AffineSemigroup.hole_patched([(1,)], [(1,), (2,)])
        irr = S.irreducibles()
        assert irr.elements == ((3,), (4,), (5,))
        assert irr.complete

    def test_bounded_flag_with_families(self):
        S = AffineSemigroup.hole_patched(
            [(1, 0), (1, 2)], [], [APFamily((1, 2), (2, 4))]
        )
        with pytest.raises(SemigroupError):
            S.irreducibles()
        irr = S.irreducibles(bound=10)
        assert not irr.complete
        assert (2, 3) in irr.elements and (2, 4) in irr.elements

    def test_nonpointed_rejected(self):
        S = AffineSemigroup.saturated([(1, 0), (-1, 0), (0, 1)])
        with pytest.raises(SemigroupError):
            S.irreducibles()


class TestDecomposables:
    def test_natural_numbers(self):
        S = AffineSemigroup.saturated([(1,)])
        for l in (1, 2, 3):
            _, hat = S.decomposables(l)
            assert hat == {(i,) for i in range(1, l + 1)}

    def test_quadrant_first_layer(self):
        S = AffineSemigroup.saturated([(1, 0), (0, 1)])
        H1, _ = S.decomposables(1)
        assert H1 == {(1, 0), (0, 1)}

    def test_paper_second_layer(self):
        S = AffineSemigroup.saturated(S1_GENS)
        H2, _ = S.decomposables(2)
        assert (2, 0) in H2 and (2, 2) in H2
        assert (1, 0) not in H2

    def test_zero_layer(self):
        S = AffineSemigroup.saturated(S1_GENS)
        assert S.decomposables(0) == (set(), set())


class TestSl:
    def test_natural_numbers(self):
        S = AffineSemigroup.saturated([(1,)])
        sl = S.sl_subsemigroup(2)
        assert [sl.contains((i,)) for i in range(5)] == [True, False, False,
                                                         True, True]

    def test_first_layer_of_s1(self):
        S = AffineSemigroup.saturated(S1_GENS)
        sl = S.sl_subsemigroup(1)
        assert sl.finite_holes == ((1, 0), (1, 1), (1, 2))

    def test_l_zero_identity(self):
        S = AffineSemigroup.saturated(S1_GENS)
        assert S.sl_subsemigroup(0) is S

    def test_closure_and_saturation(self):
        rng = random.Random(4)
        for _ in range(6):
            S = random_saturated(rng, 2)
            u = S.grading_vector()
            if max(dot(h, u) for h in S.hilbert_basis().elements) > 6:
                continue
            sl = S.sl_subsemigroup(1)
            assert sl.ambient_cone() == S.cone
            els = sl.elements_up_to(8)
            for a, b in itertools.product(els[:15], els[:15]):
                assert sl.contains(vadd(a, b))


class TestUnitGroup:
    def test_full_lattice(self):
        S = AffineSemigroup.saturated([(1, 0), (-1, 0), (0, 1), (0, -1)])
        ug = S.unit_group()
        assert ug.rank == 2
        assert ug.pointed_part is None

    def test_half_space(self):
        S = AffineSemigroup.saturated([(1, 0), (-1, 0), (0, 1)])
        ug = S.unit_group()
        assert ug.rank == 1
        assert ug.pointed_part.cone.extreme_rays == ((1,),)

    def test_pointed(self):
        S = AffineSemigroup.saturated(S1_GENS)
        ug = S.unit_group()
        assert ug.rank == 0
        assert ug.pointed_part is S

    def test_generated_units(self):
        S = AffineSemigroup.generated([(1, 1), (-1, 0), (0, -1)])
        ug = S.unit_group()
        # (1,1) + (-1,0) + (0,-1) = 0, so everything is invertible
        assert ug.rank == 2


class TestHoleCertificates:
    def test_finite_hole_roundtrip(self):
        hp = AffineSemigroup.hole_patched([(1, 0), (1, 1), (3, 4)], FIG4_HOLES)
        G = AffineSemigroup.generated(list(hp.irreducibles().elements))
        res = to_hole_patched(G)
        assert res is not None
        assert res[0].finite_holes == tuple(sorted(FIG4_HOLES))

    def test_infinite_holes_refused(self):
        # generators of the even-second-coordinate semigroup: holes form
        # entire congruence classes, so no finite certificate can exist
        G = AffineSemigroup.generated([(1, 0), (1, 2)])
        assert to_hole_patched(G) is None

    def test_saturated_passthrough(self):
        S = AffineSemigroup.generated(S1_GENS)
        res = to_hole_patched(S)
        assert res is not None
        assert res[0].finite_holes == ()


class TestMinimalEmbedding:
    def test_index_two(self):
        S = AffineSemigroup.generated([(1, 0), (1, 2)])
        assert S.group_index() == 2
        assert not S.is_minimally_embedded()
        M, basis = S.minimal()
        assert M.gens == ((1, 0), (1, 1))
        assert basis == ((1, 0), (0, 2))

    def test_span_deficient(self):
        S = AffineSemigroup.generated([(1, 1, 0), (2, 2, 0)])
        assert S.rank == 1
        assert S.gens == ((1,), (2,))
