"""Coarse classification of saturated affine semigroups and the search
tools built on it.

The trichotomy: the semigroup is a full lattice (torus case), or it
splits off a copy of the natural numbers (affine-line factor), or
neither.  The splitting test is an exhaustive search over the finite
Hilbert-basis x dual-ray grid: a factor exists exactly when some basis
element pairs 1 with one dual ray and 0 with all others, and the induced
re-expression of every other basis element stays in the semigroup.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .cones import IntBox, cone_from_generators
from .lattice import (
    Mat,
    Vec,
    determinant,
    dot,
    identity,
    is_zero,
    right_kernel,
    solve_left,
    vadd,
    vneg,
    vscale,
    vsub,
)
from .semigroup import AffineSemigroup, APFamily, SemigroupError
from .roots import (
    PROVEN_SUBSET,
    RootSet,
    root_set,
    root_subset,
)

TORUS = "torus"
SPLITS_OFF_AFFINE_LINE = "splits_off_affine_line"
GENERAL = "general"


class ClassifyError(SemigroupError):
    def __init__(self, message, classification=None):
        super().__init__(message)
        self.classification = classification


@dataclass(frozen=True)
class Classification:
    case: str
    rank: int
    unit_rank: int
    is_degenerate: bool
    split_vector: Vec | None
    split_ray: Vec | None
    complement: AffineSemigroup | None
    pointed_smooth: bool
    pointed_hilbert_size: int


def classify(S: AffineSemigroup) -> Classification:
    """Classify a saturated semigroup: lattice, line factor, or neither.

    Any representation is accepted as long as the semigroup is actually
    saturated; it is then handled through its saturated form.
    """
    if S.kind != "saturated":
        if not S.is_saturated():
            raise ClassifyError("classification expects a saturated semigroup")
        S, _ = S.saturation()
    cone = S.cone
    d = S.rank
    if not cone.normals and not cone.equations:
        return Classification(TORUS, d, d, False, None, None, None, True, 0)
    ug = S.unit_group()
    u = ug.rank
    pointed = ug.pointed_part
    assert pointed is not None, "full-dimensional non-lattice cone has a pointed part"
    hb = pointed.hilbert_basis().elements
    dp = pointed.rank
    smooth = len(hb) == dp and abs(determinant(hb)) == 1 if hb else dp == 0
    split = _find_line_split(pointed, hb)
    if split is not None:
        h, rho = split
        lift = (lambda v: ug.quotient.lift(v)) if ug.quotient else (lambda v: v)
        complement = _split_complement(pointed, rho, u)
        return Classification(
            SPLITS_OFF_AFFINE_LINE, d, u, u > 0, lift(h), rho, complement,
            smooth, len(hb),
        )
    return Classification(GENERAL, d, u, u > 0, None, None, None, smooth, len(hb))


def _find_line_split(P: AffineSemigroup, hb) -> tuple[Vec, Vec] | None:
    """Search the Hilbert-basis x dual-ray grid for a line factor."""
    rays = P.dual_rays()
    for h in hb:
        for rho in rays:
            if dot(h, rho) != 1:
                continue
            if any(dot(h, r) != 0 for r in rays if r != rho):
                continue
            # every basis element must re-assemble as <b,rho>*h + facet part
            ok = True
            for b in hb:
                rest = vsub(b, vscale(dot(b, rho), h))
                if not P.contains(rest):
                    ok = False
                    break
            if ok:
                return h, rho
    return None


def _split_complement(P: AffineSemigroup, rho: Vec,
                      unit_rank: int) -> AffineSemigroup | None:
    """The complement semigroup: units plus the facet at the split ray.

    None when the complement is the zero semigroup (the input was the
    affine line itself).
    """
    K = right_kernel((rho,))
    face_rays = [r for r in P.cone.extreme_rays if dot(r, rho) == 0]
    face_in_K = [solve_left(K, r) for r in face_rays]
    dim = unit_rank + len(K)
    if dim == 0:
        return None
    gens = []
    for i in range(unit_rank):
        e = tuple(1 if j == i else 0 for j in range(dim))
        gens.append(e)
        gens.append(vneg(e))
    for fr in face_in_K:
        gens.append((0,) * unit_rank + tuple(fr))
    return AffineSemigroup.saturated(gens)


@dataclass(frozen=True)
class SlFamily:
    base: AffineSemigroup
    unit_padding: int
    members: tuple[tuple[int, AffineSemigroup], ...]


def emit_sl_family(S: AffineSemigroup, k: int = 0, L: int = 1) -> SlFamily:
    """Non-saturated companions S minus the first decomposition layers,
    optionally padded by a rank-k unit block.

    Requires the general non-degenerate case: a lattice factor or an
    affine-line factor would contradict the uniqueness theorems, so those
    inputs are refused with their classification attached.
    """
    if L < 1:
        raise ClassifyError("need at least one layer")
    if k < 0:
        raise ClassifyError("negative unit padding")
    if S.kind != "saturated":
        if not S.is_saturated():
            raise ClassifyError("family construction starts from a saturated "
                                "semigroup")
        S, _ = S.saturation()
    cls = classify(S)
    if cls.case != GENERAL or cls.is_degenerate:
        raise ClassifyError(
            f"family construction needs the general non-degenerate case, got "
            f"{cls.case} with unit rank {cls.unit_rank}",
            cls,
        )
    members = []
    hb = S.hilbert_basis().elements
    for l in range(1, L + 1):
        Sl = S.sl_subsemigroup(l)
        assert not Sl.is_saturated(), "a removed basis element witnesses strictness"
        assert all(not Sl.contains(h) for h in hb)
        if k > 0:
            gens = []
            for i in range(k):
                e = tuple(1 if j == i else 0 for j in range(k + S.rank))
                gens.append(e)
                gens.append(vneg(e))
            for g in Sl.irreducibles().elements:
                gens.append((0,) * k + g)
            padded = AffineSemigroup.generated(gens)
            members.append((l, padded))
        else:
            members.append((l, Sl))
    keys = {m.key() for _, m in members}
    assert len(keys) == len(members), "layers are pairwise distinct"
    return SlFamily(S, k, tuple(members))


@dataclass(frozen=True)
class ExploreBudget:
    max_grading: int = 12
    seed_size: int = 2
    family_coeff_bound: int = 2
    forced_cap: int = 64
    max_results: int | None = None


@dataclass(frozen=True)
class ExploreOutcome:
    base: AffineSemigroup
    found: tuple[AffineSemigroup, ...]
    budget: ExploreBudget
    note: str = "found within budget; the search is deliberately restricted"


def explore_same_roots(S: AffineSemigroup,
                       budget: ExploreBudget | None = None) -> ExploreOutcome:
    """Bounded search for hole-patched semigroups with the same saturation
    and provably the same root set.

    Candidate holes are seeded from low-grading points (plus AP families
    along the extreme rays), then closed under the forcing rule: if a root
    translated by a hole lands on a semigroup member, that member must be
    a hole too.  Survivors are validated exactly.  Completeness is never
    claimed.
    """
    if budget is None:
        budget = ExploreBudget()
    if S.kind != "saturated":
        raise ClassifyError("exploration starts from a saturated semigroup")
    if not S.is_pointed():
        raise ClassifyError("exploration needs a pointed semigroup")
    if S.rank > 3:
        raise ClassifyError("exploration is implemented for rank <= 3")
    found: list[AffineSemigroup] = [S]
    seen = {S.finite_holes if S.kind == "hole_patched" else ()}
    if budget.seed_size <= 0 and budget.family_coeff_bound <= 0:
        return ExploreOutcome(S, tuple(found), budget)
    rs_base = root_set(S)
    pts = [p for p in S.saturation_points_up_to(budget.max_grading)
           if not is_zero(p)]
    rays = S.dual_rays()
    cone = S.cone
    usum = rays[0]
    for r in rays[1:]:
        usum = vadd(usum, r)

    def forced_from(h: Vec) -> list[Vec]:
        out = []
        cap = dot(h, usum) + 1
        from .semigroup import cone_points_up_to_grading

        for m in cone_points_up_to_grading(cone, usum, cap):
            if is_zero(m):
                continue
            matched = False
            for rho in rays:
                if dot(m, rho) != dot(h, rho) + 1:
                    continue
                if all(dot(m, r) <= dot(h, r) for r in rays if r != rho):
                    matched = True
                    break
            if matched:
                out.append(m)
        return out

    def propagate(seed) -> frozenset | None:
        H = set(seed)
        queue = list(seed)
        while queue:
            h = queue.pop()
            for m in forced_from(h):
                if m not in H:
                    H.add(m)
                    if len(H) > budget.forced_cap:
                        return None
                    queue.append(m)
        return frozenset(H)

    def consider(holes, families=()):
        key = (tuple(sorted(holes)), tuple(sorted((f.base, f.step) for f in families)))
        if key in seen:
            return
        seen.add(key)
        try:
            cand = AffineSemigroup.hole_patched(
                [list(r) for r in cone.extreme_rays], sorted(holes), tuple(families)
            )
        except SemigroupError:
            return
        if not cand.finite_holes and not cand.hole_rays:
            return
        rs = root_set(cand)
        fwd = root_subset(rs, rs_base)
        bwd = root_subset(rs_base, rs)
        if fwd.kind == PROVEN_SUBSET and bwd.kind == PROVEN_SUBSET:
            found.append(cand)

    for size in range(1, budget.seed_size + 1):
        for seed in itertools.combinations(pts, size):
            H = propagate(seed)
            if H is None:
                continue
            consider(H)
            if budget.max_results and len(found) >= budget.max_results:
                break
        if budget.max_results and len(found) >= budget.max_results:
            break
    for r in cone.extreme_rays:
        for c in range(1, budget.family_coeff_bound + 1):
            for e in range(1, budget.family_coeff_bound + 1):
                consider((), (APFamily(vscale(c, r), vscale(e, r)),))
    uniq = {}
    for s in found:
        uniq.setdefault(s.key(), s)
    ordered = [S] + sorted(
        (s for s in uniq.values() if s is not S),
        key=lambda s: (len(s.finite_holes), s.finite_holes,
                       tuple((f.base, f.step) for f in s.hole_rays)),
    )
    if budget.max_results:
        ordered = ordered[: budget.max_results]
    return ExploreOutcome(S, tuple(ordered), budget)
