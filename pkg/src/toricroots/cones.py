"""Rational polyhedral cones with exact integer arithmetic.

A cone is stored in double description: extreme rays plus a lineality
basis on the generator side, facet normals plus span equations on the
inequality side.  Both sides are canonicalized, so cone equality is plain
data equality and dualization is an exact involution.  Dualization itself
runs the incremental double description method over the integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .lattice import (
    LatticeError,
    Mat,
    Vec,
    dot,
    hnf_basis,
    identity,
    is_zero,
    primitive,
    QuotientMap,
    reduce_mod_lattice,
    right_kernel,
    row_rank,
    vneg,
    vsub,
    vscale,
)


@dataclass(frozen=True)
class IntBox:
    """Axis-aligned finite window of lattice points, lo <= hi coordinatewise."""

    lo: Vec
    hi: Vec

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise LatticeError("box corners have different dimensions")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise LatticeError("box has lo > hi in some coordinate")

    @property
    def dim(self) -> int:
        return len(self.lo)

    def count(self) -> int:
        n = 1
        for a, b in zip(self.lo, self.hi):
            n *= b - a + 1
        return n

    def points(self):
        """All lattice points, in lexicographic order."""
        ranges = [range(a, b + 1) for a, b in zip(self.lo, self.hi)]
        return (tuple(p) for p in itertools.product(*ranges))

    def contains(self, v: Vec) -> bool:
        return all(a <= x <= b for a, x, b in zip(self.lo, v, self.hi))


def _dd_pair(ineqs: list[Vec], dim: int) -> tuple[list[Vec], list[Vec]]:
    """Generators of {x in Q^dim : <a, x> >= 0 for all a}.

    Returns (lines, rays): a lineality basis and the extreme rays modulo
    lineality.  Incremental double description; exact throughout.
    """
    lines: list[Vec] = [tuple(r) for r in identity(dim)]
    rays: list[Vec] = []
    processed: list[Vec] = []

    def zero_set(r: Vec) -> frozenset[int]:
        return frozenset(i for i, a in enumerate(processed) if dot(a, r) == 0)

    for a in ineqs:
        if is_zero(a):
            continue
        pair_l = [(l, dot(l, a)) for l in lines]
        nz = [(l, p) for l, p in pair_l if p != 0]
        if nz:
            l0, p0 = nz[0]
            if p0 < 0:
                l0, p0 = vneg(l0), -p0
            new_lines = []
            for l, p in pair_l:
                if (l, p) == nz[0]:
                    continue
                if p == 0:
                    new_lines.append(l)
                else:
                    new_lines.append(primitive(vsub(vscale(p0, l), vscale(p, l0))))
            new_rays = []
            for r in rays:
                pr = dot(r, a)
                if pr == 0:
                    new_rays.append(r)
                else:
                    new_rays.append(primitive(vsub(vscale(p0, r), vscale(pr, l0))))
            new_rays.append(primitive(l0))
            lines, rays = new_lines, new_rays
            processed.append(a)
        else:
            processed.append(a)
            pos = [r for r in rays if dot(r, a) > 0]
            zer = [r for r in rays if dot(r, a) == 0]
            neg = [r for r in rays if dot(r, a) < 0]
            if not neg:
                continue
            zsets = {r: zero_set(r) for r in rays}
            combos = []
            for p, n in itertools.product(pos, neg):
                common = zsets[p] & zsets[n]
                adjacent = not any(
                    r is not p and r is not n and zsets[r] >= common for r in rays
                )
                if adjacent:
                    combos.append(primitive(vsub(vscale(dot(p, a), n), vscale(dot(n, a), p))))
            rays = pos + zer + combos
        # dedupe and prune non-extreme rays (rank test over tight constraints)
        rays = sorted(set(rays))
        if rays:
            total_rank = row_rank(tuple(processed))
            kept = []
            for r in rays:
                tight = tuple(t for t in processed if dot(t, r) == 0)
                rk = row_rank(tight) if tight else 0
                if rk == total_rank - 1:
                    kept.append(r)
            rays = kept
    # the working lineality basis spans the right space but may generate a
    # proper sublattice; return the saturated kernel lattice instead
    if processed:
        lines = list(right_kernel(tuple(processed)))
    else:
        lines = [tuple(r) for r in identity(dim)]
    return lines, rays


def _canonical_rays(rays, lines_basis: Mat) -> tuple[Vec, ...]:
    """Canonical representative per ray class modulo the lineality lattice."""
    if not lines_basis:
        return tuple(sorted(set(primitive(r) for r in rays)))
    dim = len(lines_basis[0])
    q = QuotientMap(lines_basis, dim)
    out = set()
    for r in rays:
        img = q.project(r)
        if is_zero(img):
            continue
        lifted = q.lift(primitive(img))
        out.add(reduce_mod_lattice(lifted, lines_basis))
    return tuple(sorted(out))


class Cone:
    """Rational polyhedral cone in canonical double description.

    ``rays`` is the generator description (extreme rays, plus both signs of
    each lineality basis vector when the cone is not pointed) and
    ``facet_normals`` the inequality description (facet normals, plus both
    signs of each span equation when the cone is not full-dimensional).
    With this convention ``dual(C).rays == C.facet_normals`` exactly.
    """

    __slots__ = ("dim", "extreme_rays", "lines", "normals", "equations")

    def __init__(self, dim: int, extreme_rays, lines, normals, equations):
        self.dim = dim
        self.extreme_rays: tuple[Vec, ...] = tuple(extreme_rays)
        self.lines: tuple[Vec, ...] = tuple(lines)
        self.normals: tuple[Vec, ...] = tuple(normals)
        self.equations: tuple[Vec, ...] = tuple(equations)

    # -- canonical data --------------------------------------------------
    def _key(self):
        return (self.dim, self.extreme_rays, self.lines, self.normals, self.equations)

    def __eq__(self, other):
        return isinstance(other, Cone) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (
            f"Cone(dim={self.dim}, rays={list(self.extreme_rays)}, "
            f"lines={list(self.lines)}, normals={list(self.normals)})"
        )

    # -- spec surface -----------------------------------------------------
    @property
    def rays(self) -> tuple[Vec, ...]:
        both = [vneg(l) for l in self.lines]
        return tuple(sorted(set(self.extreme_rays) | set(self.lines) | set(both)))

    @property
    def facet_normals(self) -> tuple[Vec, ...]:
        both = [vneg(e) for e in self.equations]
        return tuple(sorted(set(self.normals) | set(self.equations) | set(both)))

    def contains(self, v: Vec) -> bool:
        if len(v) != self.dim:
            raise LatticeError("point has wrong dimension for this cone")
        return all(dot(v, n) >= 0 for n in self.normals) and all(
            dot(v, e) == 0 for e in self.equations
        )

    def is_pointed(self) -> bool:
        return not self.lines

    def is_full_dimensional(self) -> bool:
        return not self.equations

    def cone_dim(self) -> int:
        return self.dim - len(self.equations)

    def lineality_rank(self) -> int:
        return len(self.lines)


def _from_dd(dim, extreme_rays, lines, normals, equations) -> Cone:
    lines_b = hnf_basis(tuple(lines)) if lines else ()
    eqs_b = hnf_basis(tuple(equations)) if equations else ()
    return Cone(
        dim,
        _canonical_rays(extreme_rays, lines_b),
        lines_b,
        _canonical_rays(normals, eqs_b),
        eqs_b,
    )


def cone_from_generators(gens: list[Vec], dim: int | None = None) -> Cone:
    """Cone generated by ``gens``; redundant generators are dropped."""
    gens = [tuple(int(x) for x in g) for g in gens]
    gens = [g for g in gens if not is_zero(g)]
    if dim is None:
        if not gens:
            raise LatticeError("need a dimension for the empty generator list")
        dim = len(gens[0])
    if any(len(g) != dim for g in gens):
        raise LatticeError("generators of mixed dimensions")
    # Dual side first: {u : <g, u> >= 0}.  Its lineality is the span
    # orthogonal of the cone, its rays are the facet normals.
    eq_basis, normals = _dd_pair(gens, dim)
    equations = hnf_basis(tuple(eq_basis)) if eq_basis else ()
    # Back to the primal: inequalities are the normals plus +-equations.
    ineqs = list(normals)
    for e in equations:
        ineqs.append(e)
        ineqs.append(vneg(e))
    lines, rays = _dd_pair(ineqs, dim)
    return _from_dd(dim, rays, lines, normals, equations)


def cone_from_inequalities(normals: list[Vec], dim: int) -> Cone:
    """Cone {x : <x, n> >= 0 for every n}."""
    normals = [tuple(int(x) for x in n) for n in normals]
    lines, rays = _dd_pair([n for n in normals if not is_zero(n)], dim)
    gens = list(rays)
    for l in lines:
        gens.append(l)
        gens.append(vneg(l))
    if not gens:
        return _zero_cone(dim)
    return cone_from_generators(gens, dim)


def _zero_cone(dim: int) -> Cone:
    return _from_dd(dim, [], [], [], list(identity(dim)))


def zero_cone(dim: int) -> Cone:
    return _zero_cone(dim)


def full_cone(dim: int) -> Cone:
    gens = []
    for e in identity(dim):
        gens.append(tuple(e))
        gens.append(vneg(tuple(e)))
    return cone_from_generators(gens, dim)


def dual(C: Cone) -> Cone:
    """Exact dual cone; an involution on canonical cones."""
    return Cone(C.dim, C.normals, C.equations, C.extreme_rays, C.lines)


def is_pointed(C: Cone) -> bool:
    return C.is_pointed()


def enumerate_lattice_points(C: Cone, box: IntBox) -> list[Vec]:
    """Lattice points of C inside box, lexicographically sorted."""
    if box.dim != C.dim:
        raise LatticeError("box dimension does not match the cone")
    return [p for p in box.points() if C.contains(p)]


@dataclass(frozen=True)
class SlicePolyhedron:
    """Lattice points on the hyperplane <., level_normal> = level that also
    satisfy <., n> >= 0 for every inequality normal."""

    level_normal: Vec
    level: int
    inequality_normals: tuple[Vec, ...]

    def contains(self, v: Vec) -> bool:
        if len(v) != len(self.level_normal):
            raise LatticeError("point has wrong dimension for this slice")
        if dot(v, self.level_normal) != self.level:
            return False
        return all(dot(v, n) >= 0 for n in self.inequality_normals)


def slice_lattice_points(P: SlicePolyhedron, box: IntBox) -> list[Vec]:
    """Lattice points of the slice inside box, lexicographically sorted."""
    return [p for p in box.points() if P.contains(p)]
