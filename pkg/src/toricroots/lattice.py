"""Exact integer linear algebra on Z^d.

Hermite forms with their unimodular transforms, integer kernels, exact
solving, and minimal re-embedding of generator sets.  Everything runs on
arbitrary-precision Python integers; vectors are plain tuples and matrices
are tuples of row tuples.  The Hermite convention used throughout the
package is row-style and lower-triangular: the pivot of a row is its last
nonzero entry, pivots are positive and strictly increasing by column from
the top, entries below a pivot are reduced into [0, pivot), and zero rows
sink to the bottom.
"""

from __future__ import annotations

from math import gcd

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


class LatticeError(ValueError):
    """Ill-posed lattice input: zero vectors, dimension mismatch, etc."""


def vec(xs) -> Vec:
    return tuple(int(x) for x in xs)


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def vscale(k: int, a: Vec) -> Vec:
    return tuple(k * x for x in a)


def is_zero(a: Vec) -> bool:
    return all(x == 0 for x in a)


def dot(a: Vec, b: Vec) -> int:
    return sum(x * y for x, y in zip(a, b))


def pairing(m: Vec, u: Vec) -> int:
    """Standard dot product <m, u>, with an explicit dimension check."""
    if len(m) != len(u):
        raise LatticeError(f"pairing of vectors of dims {len(m)} and {len(u)}")
    return dot(m, u)


def vec_gcd(a: Vec) -> int:
    g = 0
    for x in a:
        g = gcd(g, x)
    return g


def primitive(v: Vec) -> Vec:
    """v divided by the gcd of its entries; direction is preserved."""
    g = vec_gcd(v)
    if g == 0:
        raise LatticeError("primitive() of the zero vector")
    return tuple(x // g for x in v)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b), g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(A: Mat) -> Mat:
    return tuple(zip(*A)) if A else ()


def mat_mul(A: Mat, B: Mat) -> Mat:
    cols = list(zip(*B))
    return tuple(tuple(dot(r, c) for c in cols) for r in A)


def vec_mat(x: Vec, A: Mat) -> Vec:
    cols = list(zip(*A))
    return tuple(dot(x, c) for c in cols)


def _check_matrix(A) -> tuple[list[list[int]], int, int]:
    rows = [list(map(int, r)) for r in A]
    if not rows:
        raise LatticeError("empty matrix")
    n = len(rows[0])
    if n == 0 or any(len(r) != n for r in rows):
        raise LatticeError("ragged or zero-width matrix")
    return rows, len(rows), n


def hermite_normal_form(A: Mat) -> tuple[Mat, Mat]:
    """Lower-triangular row Hermite form of A.

    Returns (H, U) with H = U*A and |det U| = 1.
    """
    rows, m, n = _check_matrix(A)
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    free = m  # rows [0, free) still unassigned; pivots fill bottom-up
    pivots: list[tuple[int, int]] = []
    for col in range(n - 1, -1, -1):
        r0 = None
        for i in range(free):
            if rows[i][col]:
                r0 = i
                break
        if r0 is None:
            continue
        for i in range(r0 + 1, free):
            if rows[i][col] == 0:
                continue
            g, x, y = xgcd(rows[r0][col], rows[i][col])
            a, b = rows[r0][col] // g, rows[i][col] // g
            rows[r0], rows[i] = (
                [x * p + y * q for p, q in zip(rows[r0], rows[i])],
                [-b * p + a * q for p, q in zip(rows[r0], rows[i])],
            )
            U[r0], U[i] = (
                [x * p + y * q for p, q in zip(U[r0], U[i])],
                [-b * p + a * q for p, q in zip(U[r0], U[i])],
            )
        free -= 1
        if r0 != free:
            rows[r0], rows[free] = rows[free], rows[r0]
            U[r0], U[free] = U[free], U[r0]
        if rows[free][col] < 0:
            rows[free] = [-x for x in rows[free]]
            U[free] = [-x for x in U[free]]
        pivots.append((free, col))
    # Reduce entries below each pivot; walk pivots right-to-left so earlier
    # reductions are never disturbed (a pivot row has support only left of
    # its pivot column).
    for i, c in pivots:
        for j in range(i + 1, m):
            q = rows[j][c] // rows[i][c]
            if q:
                rows[j] = [p - q * r for p, r in zip(rows[j], rows[i])]
                U[j] = [p - q * r for p, r in zip(U[j], U[i])]
    order = list(range(free, m)) + list(range(free))
    H = tuple(tuple(rows[i]) for i in order)
    Uout = tuple(tuple(U[i]) for i in order)
    return H, Uout


def row_rank(A: Mat) -> int:
    H, _ = hermite_normal_form(A)
    return sum(1 for r in H if not is_zero(r))


def hnf_basis(A: Mat) -> Mat:
    """Canonical (HNF) basis of the lattice generated by the rows of A."""
    H, _ = hermite_normal_form(A)
    return tuple(r for r in H if not is_zero(r))


def left_kernel(A: Mat) -> Mat:
    """Canonical basis of {x : x*A = 0}; the basis is saturated."""
    H, U = hermite_normal_form(A)
    ker = tuple(u for h, u in zip(H, U) if is_zero(h))
    if not ker:
        return ()
    return hnf_basis(ker)


def right_kernel(A: Mat) -> Mat:
    """Canonical basis of {x : A*x = 0} (as row vectors)."""
    return left_kernel(transpose(A))


def solve_left(B: Mat, g: Vec) -> Vec | None:
    """Integer x with x*B = g, or None.  B need not be square."""
    H, U = hermite_normal_form(B)
    n = len(H[0])
    if len(g) != n:
        raise LatticeError("dimension mismatch in solve_left")
    piv = []
    for i, row in enumerate(H):
        if is_zero(row):
            break
        c = max(j for j in range(n) if row[j])
        piv.append((i, c))
    rem = list(g)
    y = [0] * len(H)
    for i, c in reversed(piv):
        if rem[c] % H[i][c]:
            return None
        q = rem[c] // H[i][c]
        y[i] = q
        if q:
            rem = [p - q * r for p, r in zip(rem, H[i])]
    if any(rem):
        return None
    return vec_mat(tuple(y), U)


def lattice_contains(B: Mat, g: Vec) -> bool:
    return solve_left(B, g) is not None


def reduce_mod_lattice(v: Vec, B: Mat) -> Vec:
    """Canonical representative of v modulo the row lattice of B."""
    if not B:
        return v
    H = hnf_basis(B)
    n = len(v)
    out = list(v)
    piv = []
    for i, row in enumerate(H):
        c = max(j for j in range(n) if row[j])
        piv.append((i, c))
    for i, c in reversed(piv):
        q = out[c] // H[i][c]
        if q:
            out = [p - q * r for p, r in zip(out, H[i])]
    return tuple(out)


def determinant(A: Mat) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    rows, m, n = _check_matrix(A)
    if m != n:
        raise LatticeError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k]), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    return sign * rows[-1][-1]


def invert_unimodular(V: Mat) -> Mat:
    """Inverse of a unimodular integer matrix (adjugate scaled by det)."""
    rows, m, n = _check_matrix(V)
    if m != n:
        raise LatticeError("inverse of a non-square matrix")
    d = determinant(V)
    if d not in (1, -1):
        raise LatticeError("matrix is not unimodular")
    cof = [
        [
            (-1) ** (i + j)
            * determinant(
                tuple(
                    tuple(rows[r][c] for c in range(n) if c != j)
                    for r in range(n)
                    if r != i
                )
            )
            for j in range(n)
        ]
        for i in range(n)
    ] if n > 1 else [[1]]
    # adjugate = transpose of cofactors; divide by det (+-1)
    return tuple(tuple(cof[j][i] * d for j in range(n)) for i in range(n))


def complete_to_unimodular(B: Mat) -> tuple[Mat, Mat, Mat]:
    """Complete the rows of a saturated full-rank-k basis B to a Z^d basis.

    Returns (X, V, Vinv) where X are d-k completing rows, V is unimodular
    with B*V = [T | 0] and |det T| = 1, and Vinv its inverse.  Raises if the
    row lattice of B is not saturated.
    """
    rows, k, d = _check_matrix(B)
    Ht, Ut = hermite_normal_form(transpose(B))
    V = transpose(Ut)
    BV = mat_mul(B, V)
    T = tuple(r[:k] for r in BV)
    if any(any(r[k:]) for r in BV):
        raise LatticeError("basis rows are not independent")
    if determinant(T) not in (1, -1):
        raise LatticeError("lattice is not saturated; no unimodular completion")
    Vinv = invert_unimodular(V)
    X = tuple(Vinv[i] for i in range(k, d))
    return X, V, Vinv


class QuotientMap:
    """Coordinates on Z^d / L for a saturated sublattice L of rank k."""

    def __init__(self, basis: Mat, dim: int):
        self.dim = dim
        self.rank = len(basis)
        if self.rank == 0:
            self.basis = ()
            self._V = identity(dim)
            self._Vinv = identity(dim)
        else:
            self.basis = hnf_basis(basis)
            _, self._V, self._Vinv = complete_to_unimodular(self.basis)

    def project(self, x: Vec) -> Vec:
        return vec_mat(x, self._V)[self.rank :]

    def lift(self, y: Vec) -> Vec:
        full = (0,) * self.rank + tuple(y)
        return vec_mat(full, self._Vinv)

    def in_sublattice(self, x: Vec) -> bool:
        return all(c == 0 for c in self.project(x))


def minimal_embedding(gens: list[Vec]) -> tuple[list[Vec], Mat]:
    """Re-embed generators into Z^d, d = rank of the group they generate.

    Returns (new_gens, basis); the rows of ``basis`` are the new coordinate
    vectors expressed in the old coordinates, so old = new * basis.  The new
    generators generate all of Z^d as a group.
    """
    if not gens:
        raise LatticeError("no generators")
    if all(is_zero(g) for g in gens):
        raise LatticeError("all generators are zero; the generated group is trivial")
    B = hnf_basis(tuple(gens))
    out = []
    for g in gens:
        x = solve_left(B, g)
        assert x is not None  # g lies in its own row lattice
        out.append(x)
    return out, B
