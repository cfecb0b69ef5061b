import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricroots.lattice import (
    LatticeError,
    determinant,
    hermite_normal_form,
    hnf_basis,
    invert_unimodular,
    is_zero,
    left_kernel,
    mat_mul,
    minimal_embedding,
    pairing,
    primitive,
    reduce_mod_lattice,
    solve_left,
    vscale,
)

small_int = st.integers(min_value=-30, max_value=30)


def vectors(dim):
    return st.tuples(*([small_int] * dim))


def matrices(rows, cols):
    return st.lists(vectors(cols), min_size=rows, max_size=rows).map(tuple)


class TestHermite:
    def test_already_diagonal(self):
        H, U = hermite_normal_form(((2, 0), (0, 2)))
        assert H == ((2, 0), (0, 2))
        assert U == ((1, 0), (0, 1))

    def test_gcd_row(self):
        H, U = hermite_normal_form(((2,), (3,)))
        assert H == ((1,), (0,))
        assert mat_mul(U, ((2,), (3,))) == H

    def test_row_space_basis(self):
        assert hnf_basis(((1, 0), (1, 1), (1, 2))) == ((1, 0), (0, 1))

    @given(st.integers(min_value=1, max_value=4).flatmap(
        lambda n: st.integers(min_value=1, max_value=4).flatmap(
            lambda m: matrices(m, n))))
    @settings(max_examples=150, deadline=None)
    def test_transform_is_unimodular(self, A):
        H, U = hermite_normal_form(A)
        assert mat_mul(U, A) == H
        assert determinant(U) in (1, -1)

    @given(matrices(3, 3))
    @settings(max_examples=80, deadline=None)
    def test_lower_triangular_shape(self, A):
        H, _ = hermite_normal_form(A)
        pivots = []
        zero_seen = False
        for row in H:
            if is_zero(row):
                zero_seen = True
                continue
            assert not zero_seen, "zero rows must sink to the bottom"
            c = max(j for j in range(3) if row[j])
            assert row[c] > 0
            pivots.append(c)
        assert pivots == sorted(pivots)
        for i, c in enumerate(pivots):
            for j in range(i + 1, len(pivots)):
                assert 0 <= H[j][c] < H[i][c]


class TestPrimitive:
    @pytest.mark.parametrize(
        "v,expected",
        [((2, 4), (1, 2)), ((4, -3), (4, -3)), ((0, -6), (0, -1))],
    )
    def test_examples(self, v, expected):
        assert primitive(v) == expected

    def test_zero_rejected(self):
        with pytest.raises(LatticeError):
            primitive((0, 0))

    @given(vectors(3), st.integers(min_value=1, max_value=9))
    @settings(max_examples=100, deadline=None)
    def test_scaling_invariance(self, v, k):
        if is_zero(v):
            return
        assert primitive(vscale(k, v)) == primitive(v)


class TestPairing:
    def test_examples(self):
        assert pairing((2, 3), (4, -3)) == -1
        assert pairing((1, 0), (0, 1)) == 0
        assert pairing((5, 7), (0, 0)) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(LatticeError):
            pairing((1, 2), (1, 2, 3))

    @given(vectors(3), vectors(3), vectors(3))
    @settings(max_examples=60, deadline=None)
    def test_bilinear(self, a, b, u):
        lhs = pairing(tuple(x + y for x, y in zip(a, b)), u)
        assert lhs == pairing(a, u) + pairing(b, u)


class TestMinimalEmbedding:
    def test_index_four_sublattice(self):
        gens, basis = minimal_embedding([(2, 0), (0, 2)])
        assert gens == [(1, 0), (0, 1)]
        assert basis == ((2, 0), (0, 2))

    def test_coprime_scalars_unchanged(self):
        gens, basis = minimal_embedding([(2,), (3,)])
        assert gens == [(2,), (3,)]
        assert basis == ((1,),)

    def test_full_lattice_unchanged(self):
        gens, _ = minimal_embedding([(1, 0), (1, 1), (1, 2)])
        assert gens == [(1, 0), (1, 1), (1, 2)]

    def test_all_zero_rejected(self):
        with pytest.raises(LatticeError):
            minimal_embedding([(0, 0), (0, 0)])

    @given(st.lists(vectors(3), min_size=1, max_size=5))
    @settings(max_examples=80, deadline=None)
    def test_output_generates_full_lattice(self, gens):
        if all(is_zero(g) for g in gens):
            return
        out, basis = minimal_embedding(list(gens))
        d = len(out[0])
        assert hnf_basis(tuple(out)) == tuple(
            tuple(1 if i == j else 0 for j in range(d)) for i in range(d)
        )
        # old coordinates recovered through the basis
        for g, x in zip([g for g in gens], out):
            back = tuple(
                sum(x[i] * basis[i][j] for i in range(len(basis)))
                for j in range(len(basis[0]))
            )
            assert back == g


class TestSolvers:
    def test_solve_left(self):
        B = ((1, 0), (0, 2))
        assert solve_left(B, (3, 4)) == (3, 2)
        assert solve_left(B, (3, 3)) is None

    def test_left_kernel(self):
        K = left_kernel(((1, 0), (1, 0), (0, 1)))
        assert len(K) == 1
        assert mat_mul(K, ((1, 0), (1, 0), (0, 1))) == ((0, 0),)

    def test_reduce_mod_lattice(self):
        assert reduce_mod_lattice((5, 3), ((2, 0),)) == (1, 3)
        assert reduce_mod_lattice((5, 3), ()) == (5, 3)

    def test_invert_unimodular(self):
        V = ((1, 2), (0, 1))
        Vi = invert_unimodular(V)
        assert mat_mul(V, Vi) == ((1, 0), (0, 1))
        with pytest.raises(LatticeError):
            invert_unimodular(((2, 0), (0, 1)))
