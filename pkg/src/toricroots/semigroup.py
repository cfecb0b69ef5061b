"""Affine semigroups in three exact representations.

A semigroup here is one of

* ``generated``    -- a finite generator list (minimally embedded),
* ``saturated``    -- all lattice points of a full-dimensional cone,
* ``hole_patched`` -- a saturated semigroup minus a finite point set and
                      finitely many arithmetic-progression families.

Everything is decided exactly.  Hole-patched construction verifies that
the complement really is closed under addition: finite holes and families
supported on extreme-ray lines are certified globally, any other family
only within a reported grading bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd, lcm

from .cones import Cone, IntBox, cone_from_generators, enumerate_lattice_points
from .lattice import (
    LatticeError,
    Mat,
    QuotientMap,
    Vec,
    determinant,
    dot,
    hnf_basis,
    identity,
    is_zero,
    primitive,
    right_kernel,
    solve_left,
    vadd,
    vec,
    vneg,
    vscale,
    vsub,
)


class SemigroupError(ValueError):
    """Invalid semigroup data or an operation outside its preconditions."""


@dataclass(frozen=True)
class APFamily:
    """The arithmetic progression {base + k*step : k >= 0}."""

    base: Vec
    step: Vec

    def __post_init__(self):
        object.__setattr__(self, "base", vec(self.base))
        object.__setattr__(self, "step", vec(self.step))
        if is_zero(self.step):
            raise SemigroupError("AP family with zero step")
        if len(self.base) != len(self.step):
            raise SemigroupError("AP family base/step dimension mismatch")

    def index_of(self, m: Vec) -> int | None:
        """k with m = base + k*step, or None."""
        k = None
        for b, s, x in zip(self.base, self.step, m):
            if s == 0:
                if x != b:
                    return None
            else:
                if (x - b) % s:
                    return None
                ki = (x - b) // s
                if k is None:
                    k = ki
                elif k != ki:
                    return None
        return k if k is not None and k >= 0 else None

    def contains(self, m: Vec) -> bool:
        return self.index_of(m) is not None

    def member(self, k: int) -> Vec:
        return vadd(self.base, vscale(k, self.step))

    def on_line_of(self, ray: Vec) -> bool:
        """True when base and step are positive multiples of ``ray``."""
        try:
            return primitive(self.base) == ray and primitive(self.step) == ray
        except LatticeError:
            return False


@dataclass(frozen=True)
class HilbertBasis:
    """Irreducible elements; ``complete`` is False for answers that are only
    certified up to ``grading_bound``."""

    elements: tuple[Vec, ...]
    complete: bool = True
    grading_bound: int | None = None

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def interior_grading(cone: Cone) -> Vec:
    """Primitive sum of the facet normals; positive on the cone minus 0."""
    if not cone.is_pointed() or not cone.is_full_dimensional():
        raise SemigroupError("grading vector needs a pointed full-dimensional cone")
    s = cone.normals[0]
    for n in cone.normals[1:]:
        s = vadd(s, n)
    return primitive(s)


def _grading_box(cone: Cone, u: Vec, G: int) -> IntBox:
    """A box certainly containing {x in cone : <x,u> <= G}."""
    d = cone.dim
    los, his = [], []
    for i in range(d):
        lo = Fraction(0)
        hi = Fraction(0)
        for r in cone.extreme_rays:
            q = Fraction(G * r[i], dot(r, u))
            lo = min(lo, q)
            hi = max(hi, q)
        los.append(floor(lo))
        his.append(ceil(hi))
    return IntBox(tuple(los), tuple(his))


_POINT_CACHE: dict = {}
_HB_CACHE: dict = {}


def cone_points_up_to_grading(cone: Cone, u: Vec, G: int) -> list[Vec]:
    """Lattice points of a pointed full-dimensional cone with <x,u> <= G.

    Breadth-first over the Hilbert basis: partial sums only ever increase
    the grading, so this touches exactly the points it returns.
    """
    if G < 0:
        return []
    key = (cone._key(), u, G)
    hit = _POINT_CACHE.get(key)
    if hit is None:
        hb = hilbert_basis_of_cone(cone)
        seen = {(0,) * cone.dim}
        frontier = [(0,) * cone.dim]
        while frontier:
            nxt = []
            for x in frontier:
                for h in hb:
                    y = vadd(x, h)
                    if y not in seen and dot(y, u) <= G:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        hit = sorted(seen)
        if len(_POINT_CACHE) > 1024:
            _POINT_CACHE.clear()
        _POINT_CACHE[key] = hit
    return hit


def _parallelepiped_points(B: Mat) -> list[Vec]:
    """Lattice points of {sum t_i B_i : 0 <= t_i < 1} for independent rows B."""
    d = len(B)
    H = hnf_basis(B)
    if len(H) != d:
        raise LatticeError("rows are not independent")
    piv = [max(j for j in range(len(H[i])) if H[i][j]) for i in range(d)]
    reps = itertools.product(*[range(H[i][piv[i]]) for i in range(d)])
    out = []
    for rep in reps:
        c = [0] * len(B[0])
        for i, r in enumerate(rep):
            # representative vector with coordinate r at pivot column piv[i]
            c[piv[i]] = r
        lam = _solve_fractions(B, tuple(c))
        x = tuple(c)
        for i, l in enumerate(lam):
            f = floor(l)
            if f:
                x = vsub(x, vscale(f, B[i]))
        out.append(x)
    return out


def _solve_fractions(B: Mat, g: Vec) -> list[Fraction]:
    """Rational x with x*B = g for square invertible B (rows as basis)."""
    n = len(B)
    M = [[Fraction(B[i][j]) for j in range(n)] for i in range(n)]
    rhs = [Fraction(x) for x in g]
    # Solve x * M = rhs  <=>  M^T y = rhs with y = x^T.
    A = [[M[j][i] for j in range(n)] + [rhs[i]] for i in range(n)]
    for col in range(n):
        p = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[p] = A[p], A[col]
        pivv = A[col][col]
        A[col] = [x / pivv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


def hilbert_basis_of_cone(cone: Cone) -> tuple[Vec, ...]:
    """Hilbert basis of cone ∩ Z^d for a pointed full-dimensional cone.

    Candidates come from the fundamental parallelepipeds of all maximal
    independent ray subsets (every point of the cone lands in one of those
    simplicial subcones), then reduce to the irreducible elements.
    """
    if not cone.is_pointed() or not cone.is_full_dimensional():
        raise SemigroupError("Hilbert basis needs a pointed full-dimensional cone")
    hit = _HB_CACHE.get(cone._key())
    if hit is not None:
        return hit
    d = cone.dim
    rays = cone.extreme_rays
    cand: set[Vec] = set(rays)
    for sub in itertools.combinations(rays, d):
        H = hnf_basis(sub)
        if len(H) != d:
            continue
        for p in _parallelepiped_points(sub):
            if not is_zero(p):
                cand.add(p)
    hb = []
    for h in cand:
        reducible = False
        for c in cand:
            if c == h:
                continue
            r = vsub(h, c)
            if cone.contains(r):
                reducible = True
                break
        if not reducible:
            hb.append(h)
    out = tuple(sorted(hb))
    if len(_HB_CACHE) > 256:
        _HB_CACHE.clear()
    _HB_CACHE[cone._key()] = out
    return out


class AffineSemigroup:
    """One affine semigroup, minimally embedded in Z^rank."""

    __slots__ = (
        "kind",
        "rank",
        "gens",
        "cone",
        "finite_holes",
        "hole_rays",
        "embedding_basis",
        "closure_exact",
        "closure_bound",
        "_cache",
    )

    def __init__(self, *, kind, rank, gens=(), cone=None, finite_holes=(),
                 hole_rays=(), embedding_basis=None, closure_exact=True,
                 closure_bound=None):
        self.kind = kind
        self.rank = rank
        self.gens: tuple[Vec, ...] = tuple(gens)
        self.cone: Cone | None = cone
        self.finite_holes: tuple[Vec, ...] = tuple(finite_holes)
        self.hole_rays: tuple[APFamily, ...] = tuple(hole_rays)
        self.embedding_basis: Mat | None = embedding_basis
        self.closure_exact = closure_exact
        self.closure_bound = closure_bound
        self._cache: dict = {}

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @staticmethod
    def generated(gens) -> "AffineSemigroup":
        gens = [vec(g) for g in gens]
        if not gens:
            raise SemigroupError("no generators")
        dims = {len(g) for g in gens}
        if len(dims) != 1:
            raise SemigroupError("generators of mixed dimensions")
        gens = [g for g in gens if not is_zero(g)]
        if not gens:
            raise SemigroupError("all generators are zero")
        d = len(gens[0])
        basis = None
        if len(hnf_basis(tuple(gens))) < d:
            # span-deficient: re-embed into the saturated span lattice so the
            # cone becomes full-dimensional (coordinates change, rank drops)
            orth = right_kernel(tuple(gens))
            span_basis = right_kernel(orth)
            gens = [solve_left(span_basis, g) for g in gens]
            d = len(span_basis)
            basis = span_basis
        return AffineSemigroup(
            kind="generated",
            rank=d,
            gens=tuple(sorted(set(gens))),
            embedding_basis=basis,
        )

    @staticmethod
    def saturated_from_cone(cone: Cone) -> "AffineSemigroup":
        if not cone.is_full_dimensional():
            raise SemigroupError("saturated semigroup needs a full-dimensional cone")
        return AffineSemigroup(kind="saturated", rank=cone.dim, cone=cone)

    @staticmethod
    def saturated(cone_generators) -> "AffineSemigroup":
        gens = [vec(g) for g in cone_generators]
        if not gens:
            raise SemigroupError("no cone generators")
        nonzero = [g for g in gens if not is_zero(g)]
        if not nonzero:
            raise SemigroupError("all cone generators are zero")
        d = len(gens[0])
        orth = right_kernel(tuple(nonzero))
        if orth:
            # not full-dimensional: re-embed into the span lattice
            span_basis = right_kernel(orth)
            new_gens = [solve_left(span_basis, g) for g in nonzero]
            cone = cone_from_generators([g for g in new_gens], len(span_basis))
            s = AffineSemigroup.saturated_from_cone(cone)
            s.embedding_basis = span_basis
            return s
        return AffineSemigroup.saturated_from_cone(cone_from_generators(nonzero, d))

    @staticmethod
    def hole_patched(cone_generators, finite_holes=(), hole_rays=(),
                     validation_bound: int | None = None) -> "AffineSemigroup":
        base = AffineSemigroup.saturated(cone_generators)
        cone = base.cone
        if not cone.is_pointed():
            raise SemigroupError("hole-patched semigroups must be pointed")
        holes = {vec(h) for h in finite_holes}
        fams = list(hole_rays)
        if base.embedding_basis is not None:
            B = base.embedding_basis

            def remap(v):
                x = solve_left(B, vec(v))
                if x is None:
                    raise SemigroupError(f"{tuple(v)} is not in the semigroup lattice")
                return x

            holes = {remap(h) for h in holes}
            fams = [APFamily(remap(f.base), remap(f.step)) for f in fams]
        holes = tuple(sorted(holes))
        fams = tuple(fams)
        for h in holes:
            if len(h) != cone.dim:
                raise SemigroupError(f"hole {h} has wrong dimension")
            if is_zero(h):
                raise SemigroupError("0 cannot be a hole")
            if not cone.contains(h):
                raise SemigroupError(f"hole {h} lies outside the cone")
        for f in fams:
            if len(f.base) != cone.dim:
                raise SemigroupError("family dimension mismatch")
            if is_zero(f.base):
                raise SemigroupError("0 cannot be a hole (family base)")
            if not cone.contains(f.base) or not cone.contains(f.step):
                raise SemigroupError("AP family leaves the cone")
        s = AffineSemigroup(
            kind="hole_patched",
            rank=cone.dim,
            cone=cone,
            finite_holes=holes,
            hole_rays=fams,
        )
        exact, bound = _validate_closure(s, validation_bound)
        s.closure_exact = exact
        s.closure_bound = bound
        return s

    # ------------------------------------------------------------------
    # canonical identity
    # ------------------------------------------------------------------
    def key(self):
        if self.kind == "generated":
            return ("generated", self.rank, self.gens)
        if self.kind == "saturated":
            return ("saturated", self.rank, self.cone._key())
        return (
            "hole_patched",
            self.rank,
            self.cone._key(),
            self.finite_holes,
            tuple((f.base, f.step) for f in self.hole_rays),
        )

    def __eq__(self, other):
        return isinstance(other, AffineSemigroup) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.kind == "generated":
            return f"AffineSemigroup.generated({list(self.gens)})"
        if self.kind == "saturated":
            return f"AffineSemigroup.saturated(rays={list(self.cone.extreme_rays)})"
        return (
            f"AffineSemigroup.hole_patched(rays={list(self.cone.extreme_rays)}, "
            f"holes={list(self.finite_holes)}, families={len(self.hole_rays)})"
        )

    # ------------------------------------------------------------------
    # basic geometry
    # ------------------------------------------------------------------
    def ambient_cone(self) -> Cone:
        """Cone generated by the semigroup (sigma-dual in M)."""
        if "cone" not in self._cache:
            if self.cone is not None:
                self._cache["cone"] = self.cone
            else:
                self._cache["cone"] = cone_from_generators(list(self.gens), self.rank)
        return self._cache["cone"]

    def dual_rays(self) -> tuple[Vec, ...]:
        """Primitive ray generators of the dual semigroup (facet normals)."""
        return self.ambient_cone().facet_normals

    def group_index(self) -> int:
        """Index in Z^rank of the group generated by the semigroup."""
        if self.kind != "generated":
            return 1
        B = hnf_basis(self.gens)
        return abs(determinant(B))

    def is_minimally_embedded(self) -> bool:
        return self.group_index() == 1

    def minimal(self) -> tuple["AffineSemigroup", Mat]:
        """Re-embed so the generated group is all of Z^rank.

        Returns (semigroup, basis): basis rows are the new coordinate
        vectors in the old coordinates.  Identity transform for semigroups
        that are already minimally embedded.
        """
        if self.is_minimally_embedded():
            return self, identity(self.rank)
        B = hnf_basis(self.gens)
        new_gens = [solve_left(B, g) for g in self.gens]
        return AffineSemigroup.generated(new_gens), B

    def is_pointed(self) -> bool:
        return self.ambient_cone().is_pointed()

    def grading_vector(self) -> Vec:
        if "grading" not in self._cache:
            self._cache["grading"] = interior_grading(self.ambient_cone())
        return self._cache["grading"]

    def is_hole(self, m: Vec) -> bool:
        if self.kind != "hole_patched":
            return False
        return m in self.finite_holes or any(f.contains(m) for f in self.hole_rays)

    # ------------------------------------------------------------------
    # membership
    # ------------------------------------------------------------------
    def contains(self, m) -> bool:
        m = vec(m)
        if len(m) != self.rank:
            raise SemigroupError(
                f"point of dim {len(m)} in a rank-{self.rank} semigroup"
            )
        if self.kind == "saturated":
            return self.ambient_cone().contains(m)
        if self.kind == "hole_patched":
            return self.cone.contains(m) and not self.is_hole(m)
        return self._contains_generated(m)

    def _contains_generated(self, m: Vec) -> bool:
        cone = self.ambient_cone()
        if not cone.contains(m):
            return False
        if cone.is_pointed():
            u = self.grading_vector()
            return self._pointed_membership(self.gens, u, m, cone)
        return self._nonpointed_membership(m)

    def _pointed_membership(self, gens, u, m, cone) -> bool:
        memo = self._cache.setdefault(("member", gens, u), {})

        def rec(x: Vec) -> bool:
            if is_zero(x):
                return True
            hit = memo.get(x)
            if hit is not None:
                return hit
            memo[x] = False  # cycle-safe; gradings strictly decrease anyway
            ok = False
            for g in gens:
                r = vsub(x, g)
                if dot(r, u) >= 0 and cone.contains(r) and rec(r):
                    ok = True
                    break
            memo[x] = ok
            return ok

        return rec(m)

    def _nonpointed_membership(self, m: Vec) -> bool:
        cone = self.ambient_cone()
        q = QuotientMap(cone.lines, self.rank)
        unit_gens = [g for g in self.gens if q.in_sublattice(g)]
        unit_lat = hnf_basis(tuple(unit_gens)) if unit_gens else ()
        point_gens = [g for g in self.gens if not q.in_sublattice(g)]
        img_gens = [q.project(g) for g in point_gens]
        img_cone = cone_from_generators(img_gens, self.rank - len(cone.lines)) \
            if img_gens else None
        target = q.project(m)
        if is_zero(target):
            if is_zero(m):
                return True
            return bool(unit_lat) and solve_left(unit_lat, m) is not None
        if img_cone is None or not img_cone.contains(target):
            return False
        u = interior_grading(img_cone)

        def search(rem: Vec, taken: Vec, i: int) -> bool:
            if is_zero(rem):
                diff = vsub(m, taken)
                if is_zero(diff):
                    return True
                return bool(unit_lat) and solve_left(unit_lat, diff) is not None
            if i == len(point_gens):
                return False
            # skip generator i entirely
            if search(rem, taken, i + 1):
                return True
            g_img, g = img_gens[i], point_gens[i]
            r, t = rem, taken
            while True:
                r = vsub(r, g_img)
                t = vadd(t, g)
                if dot(r, u) < 0 or not img_cone.contains(r):
                    return False
                if search(r, t, i + 1):
                    return True

        return search(target, (0,) * self.rank, 0)

    # ------------------------------------------------------------------
    # saturation and Hilbert bases
    # ------------------------------------------------------------------
    def saturation(self) -> tuple["AffineSemigroup", HilbertBasis]:
        """Smallest saturated over-semigroup plus its Hilbert basis.

        For non-pointed saturations (there is no Hilbert basis then) the
        second component is a minimal generating set: both signs of a unit
        lattice basis together with a lifted basis of the pointed part.
        """
        if "saturation" not in self._cache:
            if self.kind == "saturated":
                sat = self
            else:
                sat = AffineSemigroup.saturated_from_cone(self.ambient_cone())
            cone = sat.cone
            if cone.is_pointed():
                hb = sat.hilbert_basis()
            else:
                ug = sat.unit_group()
                elems = set()
                for l in ug.basis:
                    elems.add(l)
                    elems.add(vneg(l))
                if ug.pointed_part is not None:
                    for h in ug.pointed_part.hilbert_basis():
                        elems.add(ug.quotient.lift(h))
                hb = HilbertBasis(tuple(sorted(elems)), True, None)
            self._cache["saturation"] = (sat, hb)
        return self._cache["saturation"]

    def hilbert_basis(self) -> HilbertBasis:
        """Hilbert basis of this semigroup's *saturation*."""
        if "hb" not in self._cache:
            cone = self.ambient_cone()
            if cone.is_pointed():
                hb = HilbertBasis(hilbert_basis_of_cone(cone))
            else:
                raise SemigroupError("Hilbert basis of a non-pointed semigroup; "
                                     "split the unit group first")
            self._cache["hb"] = hb
        return self._cache["hb"]

    def is_saturated(self) -> bool:
        if self.kind == "saturated":
            return True
        if self.kind == "hole_patched":
            return not self.finite_holes and not self.hole_rays
        _, hb = self.saturation()
        return all(self.contains(h) for h in hb)

    # ------------------------------------------------------------------
    # element enumeration
    # ------------------------------------------------------------------
    def saturation_points_up_to(self, G: int) -> list[Vec]:
        u = self.grading_vector()
        key = ("satpts", G)
        if key not in self._cache:
            self._cache[key] = cone_points_up_to_grading(self.ambient_cone(), u, G)
        return self._cache[key]

    def elements_up_to(self, G: int) -> list[Vec]:
        """All semigroup elements with grading <= G (pointed semigroups)."""
        key = ("elements", G)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if self.kind == "generated":
            u = self.grading_vector()
            seen = {(0,) * self.rank}
            frontier = [(0,) * self.rank]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in self.gens:
                        y = vadd(x, g)
                        if y not in seen and dot(y, u) <= G:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            out = sorted(seen)
        else:
            out = [p for p in self.saturation_points_up_to(G)
                   if not self.is_hole(p)]
        self._cache[key] = out
        return out

    def holes_within(self, box: IntBox) -> list[Vec]:
        """Points of the saturation minus the semigroup inside ``box``."""
        sat, _ = self.saturation()
        out = []
        for p in box.points():
            if sat.contains(p) and not self.contains(p):
                out.append(p)
        return out

    # ------------------------------------------------------------------
    # facets
    # ------------------------------------------------------------------
    def facet(self, rho) -> "FacetDescription":
        rho = vec(rho)
        if rho not in self.dual_rays():
            raise SemigroupError(f"{rho} is not a dual ray of this semigroup")
        cone = self.ambient_cone()
        face_rays = [r for r in cone.extreme_rays if dot(r, rho) == 0]
        if self.kind == "generated":
            gens = tuple(sorted(g for g in self.gens if dot(g, rho) == 0))
            return FacetDescription(rho, gens, True)
        if self.kind == "saturated":
            return FacetDescription(rho, _saturated_face_generators(cone, rho), True)
        # hole-patched: start from the saturated facet and remove holes
        if len(face_rays) == 1:
            r = face_rays[0]
            holes = _line_hole_indices(self, r)
            gens, complete = _line_generators(holes)
            return FacetDescription(rho, tuple(vscale(i, r) for i in gens), complete)
        sat_gens = _saturated_face_generators(cone, rho)
        if not any(self.is_hole(g) for g in sat_gens) and not any(
            dot(f.base, rho) == 0 and dot(f.step, rho) == 0 for f in self.hole_rays
        ) and not any(dot(h, rho) == 0 for h in self.finite_holes):
            return FacetDescription(rho, sat_gens, True)
        raise SemigroupError(
            "facet with holes of dimension > 1 is only supported on extreme rays"
        )

    # ------------------------------------------------------------------
    # irreducibles and decomposable layers
    # ------------------------------------------------------------------
    def irreducibles(self, bound: int | None = None) -> HilbertBasis:
        if not self.is_pointed():
            raise SemigroupError("irreducibles of a non-pointed semigroup")
        u = self.grading_vector()
        if self.kind == "saturated":
            return self.hilbert_basis()
        if self.kind == "generated":
            # irreducibles lie among the generators; decompositions of a
            # generator only involve elements of strictly smaller grading
            gmax = max(dot(g, u) for g in self.gens)
            G = max(bound or 0, gmax)
            elems = set(self.elements_up_to(G))
            irr = [g for g in sorted(set(self.gens))
                   if not _reducible_in(g, elems, u)]
            return HilbertBasis(tuple(irr), True, None)
        # hole-patched
        hb_sat = self.hilbert_basis()
        U = max(dot(h, u) for h in hb_sat)
        if self.hole_rays:
            if bound is None:
                raise SemigroupError(
                    "irreducibles with AP hole families need an explicit bound"
                )
            complete = False
            G = bound
        else:
            Gh = max((dot(h, u) for h in self.finite_holes), default=0)
            G = 2 * Gh + U
            if bound is not None:
                G = max(G, bound)
            complete = True
        elems = set(self.elements_up_to(G))
        irr = sorted(m for m in elems if not is_zero(m)
                     and not _reducible_in(m, elems, u))
        return HilbertBasis(tuple(irr), complete, None if complete else G)

    def max_decomposition_length(self, m: Vec) -> int:
        """Maximal number of irreducibles summing to m (pointed case)."""
        hb = self.irreducibles()
        memo = self._cache.setdefault("maxlen", {})
        u = self.grading_vector()

        def rec(x: Vec) -> int:
            if x in memo:
                return memo[x]
            best = 0
            for h in hb:
                r = vsub(x, h)
                if is_zero(r):
                    best = max(best, 1)
                elif dot(r, u) > 0 and self.contains(r):
                    best = max(best, 1 + rec(r))
            memo[x] = best
            return best

        if not self.contains(m) or is_zero(m):
            raise SemigroupError(f"{m} is not a nonzero element of the semigroup")
        return rec(vec(m))

    def decomposables(self, l: int) -> tuple[set[Vec], set[Vec]]:
        """(H_l, Hhat_l): elements of maximal decomposition length exactly l,
        and of length at most l."""
        if l < 0:
            raise SemigroupError("negative layer index")
        if not self.is_pointed():
            raise SemigroupError("decomposables of a non-pointed semigroup")
        if l == 0:
            return set(), set()
        hb = self.irreducibles()
        u = self.grading_vector()
        U = max(dot(h, u) for h in hb)
        cand = [m for m in self.elements_up_to(l * U) if not is_zero(m)]
        H_l, H_hat = set(), set()
        for m in cand:
            ml = self.max_decomposition_length(m)
            if ml == l:
                H_l.add(m)
            if ml <= l:
                H_hat.add(m)
        return H_l, H_hat

    def sl_subsemigroup(self, l: int) -> "AffineSemigroup":
        """S minus all elements of maximal decomposition length <= l."""
        if not self.is_pointed():
            raise SemigroupError("S_l of a non-pointed semigroup")
        if l == 0:
            return self
        _, H_hat = self.decomposables(l)
        if self.kind == "saturated":
            out = AffineSemigroup.hole_patched(
                [list(r) for r in self.cone.extreme_rays],
                sorted(H_hat),
            )
        elif self.kind == "hole_patched":
            out = AffineSemigroup.hole_patched(
                [list(r) for r in self.cone.extreme_rays],
                sorted(set(self.finite_holes) | H_hat),
                self.hole_rays,
            )
        else:
            hb = self.irreducibles()
            u = self.grading_vector()
            U = max(dot(h, u) for h in hb)
            gens = [
                m
                for m in self.elements_up_to((2 * l + 1) * U)
                if not is_zero(m)
                and l < self.max_decomposition_length(m) <= 2 * l + 1
            ]
            out = AffineSemigroup.generated(gens)
        # the construction never changes the saturation
        assert out.ambient_cone() == self.ambient_cone()
        return out

    # ------------------------------------------------------------------
    # unit group
    # ------------------------------------------------------------------
    def unit_group(self) -> "UnitGroup":
        cone = self.ambient_cone()
        if self.kind == "generated":
            q = QuotientMap(cone.lines, self.rank)
            unit_gens = [g for g in self.gens if q.in_sublattice(g)]
            basis = hnf_basis(tuple(unit_gens)) if unit_gens else ()
        else:
            basis = cone.lines
        if not basis:
            return UnitGroup((), 0, self, identity(self.rank), None)
        # cone.lines is the canonical basis of the saturated lineality lattice
        saturated_units = basis == cone.lines
        if not saturated_units:
            return UnitGroup(basis, len(basis), None, None, None)
        q = QuotientMap(basis, self.rank)
        if self.kind == "generated":
            imgs = [q.project(g) for g in self.gens if not q.in_sublattice(g)]
            pointed = AffineSemigroup.generated(imgs) if imgs else None
        else:
            imgs = [q.project(r) for r in cone.extreme_rays]
            imgs = [i for i in imgs if not is_zero(i)]
            if imgs:
                pointed = AffineSemigroup.saturated_from_cone(
                    cone_from_generators(imgs, self.rank - len(basis))
                )
            else:
                pointed = None
        section = tuple(q.lift(e) for e in identity(self.rank - len(basis))) \
            if len(basis) < self.rank else ()
        return UnitGroup(basis, len(basis), pointed, section, q)


@dataclass(frozen=True)
class FacetDescription:
    ray: Vec
    generators: tuple[Vec, ...]
    complete: bool


@dataclass(frozen=True)
class UnitGroup:
    basis: Mat
    rank: int
    pointed_part: AffineSemigroup | None
    section: Mat | None
    quotient: QuotientMap | None


def _reducible_in(m: Vec, elems: set[Vec], u: Vec) -> bool:
    gm = dot(m, u)
    for a in elems:
        ga = dot(a, u)
        if 0 < ga < gm:
            b = vsub(m, a)
            if b in elems and not is_zero(b):
                return True
    return False


def _saturated_face_generators(cone: Cone, rho: Vec) -> tuple[Vec, ...]:
    """Hilbert basis of the facet rho-perp of a pointed full-dim cone."""
    face_rays = [r for r in cone.extreme_rays if dot(r, rho) == 0]
    if not face_rays:
        return ()
    if len(face_rays) == 1:
        return (face_rays[0],)
    K = right_kernel((rho,))
    in_face = [solve_left(K, r) for r in face_rays]
    sub = cone_from_generators(in_face, len(K))
    if not sub.is_pointed() or not sub.is_full_dimensional():
        raise SemigroupError("degenerate facet")
    hb = hilbert_basis_of_cone(sub)
    lift = lambda y: tuple(sum(y[i] * K[i][j] for i in range(len(K)))
                           for j in range(len(rho)))
    return tuple(sorted(lift(h) for h in hb))


# ----------------------------------------------------------------------
# one-dimensional hole arithmetic on an extreme-ray line
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class LineHoles:
    """Hole indices on the line Z>=0 * r: a finite set plus APs (c, e)."""

    finite: frozenset[int]
    aps: tuple[tuple[int, int], ...]  # (start, step), step >= 1

    def contains(self, i: int) -> bool:
        if i in self.finite:
            return True
        return any(i >= c and (i - c) % e == 0 for c, e in self.aps)

    def horizon(self) -> tuple[int, int]:
        """(T, P): membership is P-periodic for indices > T."""
        P = 1
        for _, e in self.aps:
            P = lcm(P, e)
        T = max([0, *self.finite, *(c for c, _ in self.aps)])
        return T, P


def _line_hole_indices(S: AffineSemigroup, r: Vec) -> LineHoles:
    """Hole set of S restricted to the ray line of r, as indices i (m = i*r)."""
    fin = set()
    aps = []
    for h in S.finite_holes:
        try:
            if primitive(h) == r:
                i = next(h[j] // r[j] for j in range(len(r)) if r[j])
                fin.add(i)
        except LatticeError:
            continue
    for f in S.hole_rays:
        if f.on_line_of(r):
            c = next(f.base[j] // r[j] for j in range(len(r)) if r[j])
            e = next(f.step[j] // r[j] for j in range(len(r)) if r[j])
            aps.append((c, e))
    return LineHoles(frozenset(fin), tuple(aps))


def _line_generators(holes: LineHoles) -> tuple[list[int], bool]:
    """Generators of {i >= 1 : i not a hole} ∪ {0} as a numerical-type set."""
    T, P = holes.horizon()
    W = 2 * (T + P) + 2
    members = [i for i in range(1, W + 1) if not holes.contains(i)]
    mset = set(members)
    gens = []
    for i in members:
        if not any(j in mset and (i - j) in mset for j in range(1, i)):
            gens.append(i)
    # beyond the window everything decomposes through the window (periodic)
    return gens, True


def _line_closed(holes: LineHoles) -> int | None:
    """None if the line-complement is closed; else a hole index that splits."""
    T, P = holes.horizon()
    W = 2 * (T + P) + 2
    for i in range(1, W + 1):
        if not holes.contains(i):
            continue
        for a in range(1, i):
            if not holes.contains(a) and not holes.contains(i - a):
                return i
    return None


# ----------------------------------------------------------------------
# closure validation of hole-patched data
# ----------------------------------------------------------------------
def _validate_closure(S: AffineSemigroup, bound: int | None) -> tuple[bool, int]:
    cone = S.cone
    u = interior_grading(cone)
    hb = hilbert_basis_of_cone(cone)
    U = max(dot(h, u) for h in hb)
    on_ray = {}
    off_ray = []
    for f in S.hole_rays:
        placed = False
        for r in cone.extreme_rays:
            if f.on_line_of(r):
                on_ray.setdefault(r, True)
                placed = True
                break
        if not placed:
            off_ray.append(f)

    # Exact line checks: splittings of a hole on an extreme-ray line stay on
    # the line, so closure there is one-dimensional arithmetic.
    for r in cone.extreme_rays:
        lh = _line_hole_indices(S, r)
        if not lh.finite and not lh.aps:
            continue
        bad = _line_closed(lh)
        if bad is not None:
            raise SemigroupError(
                f"complement is not closed: {vscale(bad, r)} splits into two members"
            )

    # Exact finite-hole checks (all splittings are grading-bounded).
    Gh = max((dot(h, u) for h in S.finite_holes), default=0)
    low_points = cone_points_up_to_grading(cone, u, Gh)
    for h in S.finite_holes:
        gh = dot(h, u)
        for a in low_points:
            if is_zero(a) or not 0 < dot(a, u) < gh:
                continue
            b = vsub(h, a)
            if not cone.contains(b) or is_zero(b):
                continue
            if not S.is_hole(a) and not S.is_hole(b):
                raise SemigroupError(
                    f"complement is not closed: {a} + {b} = {h} with both members"
                )

    exact = not off_ray
    vb = bound if bound is not None else 2 * Gh + U
    if off_ray:
        # bounded certificate for families that live off the extreme rays
        for f in off_ray:
            k = 0
            while True:
                h = f.member(k)
                if dot(h, u) > vb:
                    break
                for a in cone_points_up_to_grading(cone, u, dot(h, u)):
                    if is_zero(a) or not (0 < dot(a, u) < dot(h, u)):
                        continue
                    b = vsub(h, a)
                    if not cone.contains(b) or is_zero(b):
                        continue
                    if not S.is_hole(a) and not S.is_hole(b):
                        raise SemigroupError(
                            f"complement is not closed: {a} + {b} = {h}"
                        )
                k += 1
    return exact, vb


# ----------------------------------------------------------------------
# certified hole enumeration for generated semigroups
# ----------------------------------------------------------------------
def certified_hole_bound(S: AffineSemigroup, piece_cap: int = 200000,
                         widen_steps: int = 8) -> int | None:
    """A grading bound G such that every saturation point with grading > G
    is provably in S, or None when no certificate was found.

    Region argument: points of the cone that cannot be 'peeled' by any
    generator (y - g outside the cone for all g) have bounded grading G*;
    if the band (G, G+Ug] above some G >= G* contains no holes, a minimal
    counterexample above G would peel into a smaller non-hole, forcing it
    into S.
    """
    if S.kind != "generated":
        raise SemigroupError("hole certificates apply to generated semigroups")
    cone = S.ambient_cone()
    if not cone.is_pointed():
        return None
    u = S.grading_vector()
    normals = cone.normals
    gens = S.gens
    if len(normals) ** len(gens) > piece_cap:
        return None
    gstar = 0
    seen_pieces = set()
    for phi in itertools.product(range(len(normals)), repeat=len(gens)):
        caps: dict[int, int] = {}
        for gi, ni in enumerate(phi):
            c = dot(gens[gi], normals[ni]) - 1
            caps[ni] = min(caps.get(ni, c), c)
        piece_key = tuple(sorted(caps.items()))
        if piece_key in seen_pieces:
            continue
        seen_pieces.add(piece_key)
        if any(c < 0 for c in caps.values()):
            continue  # empty piece: <y,n> >= 0 and <= -1
        top = _piece_max_grading(cone, u, caps)
        if top is None:
            return None  # unbounded piece; no certificate
        gstar = max(gstar, top)
    Ug = max(dot(g, u) for g in gens)
    G = gstar
    for _ in range(widen_steps):
        band = [
            p
            for p in cone_points_up_to_grading(cone, u, G + Ug)
            if dot(p, u) > G and not S.contains(p)
        ]
        if not band:
            return G
        G += Ug
    return None


def _piece_max_grading(cone: Cone, u: Vec, caps: dict[int, int]) -> int | None:
    """Max of <y,u> over {y in cone : <y, n_i> <= caps[i]}, None if unbounded."""
    normals = cone.normals
    # recession directions: cone ∩ {<y, n_i> <= 0 for capped i}
    rec_ineqs = list(normals) + [vneg(normals[i]) for i in caps]
    from .cones import cone_from_inequalities

    rec = cone_from_inequalities(rec_ineqs, cone.dim)
    if rec.extreme_rays or rec.lines:
        return None
    best = 0
    for p in _points_capped(cone, caps):
        best = max(best, dot(p, u))
    return best


def _points_capped(cone: Cone, caps: dict[int, int]) -> list[Vec]:
    """Lattice points of {y in cone : <y, n_i> <= caps[i]} (bounded piece)."""
    normals = cone.normals
    d = cone.dim
    # vertices of the rational polytope: intersections of d tight constraints
    rows = []
    rhs = []
    for n in normals:
        rows.append(n)
        rhs.append(0)
    for i, c in caps.items():
        rows.append(vneg(normals[i]))
        rhs.append(-c)
    verts = []
    idxs = range(len(rows))
    for sub in itertools.combinations(idxs, d):
        M = [rows[i] for i in sub]
        b = [Fraction(rhs[i]) for i in sub]
        sol = _solve_affine(M, b)
        if sol is None:
            continue
        if all(
            sum(Fraction(rows[i][j]) * sol[j] for j in range(d)) >= rhs[i]
            for i in idxs
        ):
            verts.append(sol)
    if not verts:
        return []
    los = [floor(min(v[j] for v in verts)) for j in range(d)]
    his = [ceil(max(v[j] for v in verts)) for j in range(d)]
    box = IntBox(tuple(los), tuple(his))
    out = []
    for p in box.points():
        if cone.contains(p) and all(
            dot(p, normals[i]) <= c for i, c in caps.items()
        ):
            out.append(p)
    return out


def _solve_affine(M, b) -> list[Fraction] | None:
    """Solve M y = b exactly; None when singular."""
    n = len(M)
    A = [[Fraction(M[i][j]) for j in range(n)] + [b[i]] for i in range(n)]
    for col in range(n):
        p = next((r for r in range(col, n) if A[r][col] != 0), None)
        if p is None:
            return None
        A[col], A[p] = A[p], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


def to_hole_patched(S: AffineSemigroup) -> tuple[AffineSemigroup, int] | None:
    """Rewrite a generated semigroup as saturation-minus-finite-holes, with a
    certified completeness bound; None when certification fails."""
    if S.kind == "hole_patched":
        return S, S.closure_bound or 0
    if S.kind == "saturated":
        return S, 0
    G = certified_hole_bound(S)
    if G is None:
        return None
    cone = S.ambient_cone()
    u = S.grading_vector()
    holes = [
        p for p in cone_points_up_to_grading(cone, u, G) if not S.contains(p)
    ]
    out = AffineSemigroup.hole_patched(
        [list(r) for r in cone.extreme_rays], sorted(holes)
    )
    return out, G
