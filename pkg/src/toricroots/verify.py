"""Named verification suites behind ``toric-roots verify``.

Each suite runs a property over fixtures plus seeded random instances and
returns a deterministic report.  A failing property is the suite's
*result*, not a crash: the report carries the minimal counterexample.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    AlgebraElement,
    AlgebraError,
    DerivationSpec,
    apply_derivation,
    check_locally_nilpotent,
    exponentiate,
)
from .cones import IntBox
from .lattice import dot, vadd, vscale
from .randgen import random_instance, random_saturated
from .roots import (
    PROVEN_SUBSET,
    is_root,
    root_check,
    root_set,
    root_subset,
    roots_in_box,
)
from .semigroup import AffineSemigroup
from .wire import load_fixture
from .classify import ExploreBudget, emit_sl_family, explore_same_roots, ClassifyError

SUITES = ("prop36", "famous-remark", "subset-lemma", "normalization",
          "sl-family", "algebra")

# generated-representation root checks in the suites certify witnesses up
# to this grading; exact representations are unaffected
SUITE_BOUND = 8


@dataclass
class SuiteReport:
    suite: str
    seed: int
    instances: int
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, description: str, counterexample):
        self.failures.append(
            {"description": description, "counterexample": counterexample}
        )

    def as_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "instances": self.instances,
            "checks": self.checks,
            "passed": self.passed,
            "failures": self.failures,
        }


def worker_count() -> int:
    raw = os.environ.get("TORIC_ROOTS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map(fn, items):
    n = worker_count()
    items = list(items)
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def run_suite(suite: str, seed: int = 7, instances: int = 100) -> SuiteReport:
    if suite == "prop36":
        return suite_prop36(seed, instances)
    if suite == "famous-remark":
        return suite_shift_closure(seed, instances)
    if suite == "subset-lemma":
        return suite_subset(seed, instances)
    if suite == "normalization":
        return suite_normalization(seed, instances)
    if suite == "sl-family":
        return suite_sl_family(seed, instances)
    if suite == "algebra":
        return suite_algebra(seed, instances)
    raise ValueError(f"unknown suite {suite!r}; have {', '.join(SUITES)}")


# ----------------------------------------------------------------------
def suite_prop36(seed: int, instances: int,
                 box: IntBox | None = None) -> SuiteReport:
    """Roots survive saturation: every accepted root of S is accepted for
    the saturation of S, in the same box."""
    rep = SuiteReport("prop36", seed, instances)
    rng = random.Random(seed)
    if box is None:
        box = IntBox((-4, -4), (4, 4))
    cases = [load_fixture(n) for n in ("s1prime", "s2prime", "fig4", "s1")]
    while len(cases) < instances:
        rank = 2 if rng.random() < 0.7 else 3
        cases.append(random_instance(rng, rank))

    def check(S):
        sat, _ = S.saturation()
        b = box if S.rank == 2 else IntBox((-3,) * S.rank, (3,) * S.rank)
        bad = []
        for w in roots_in_box(S, b, bound=SUITE_BOUND):
            if is_root(sat, w.alpha) is None:
                bad.append((S.key(), w.alpha))
        return len(list(b.points())), bad

    for npts, bad in _map(check, cases[:instances]):
        rep.checks += npts
        for key, alpha in bad:
            rep.fail("root lost under saturation", {"semigroup": str(key),
                                                    "alpha": list(alpha)})
    return rep


def suite_shift_closure(seed: int, instances: int) -> SuiteReport:
    """Facet shifts preserve roots: alpha a root with ray rho and m a facet
    element at rho imply alpha + m is a root with the same ray; and for
    saturated pointed instances every dual ray carries at least one root."""
    rep = SuiteReport("famous-remark", seed, instances)
    rng = random.Random(seed)
    cases = [load_fixture(n) for n in ("s1", "s1prime", "fig3", "fig4")]
    while len(cases) < instances:
        rank = 2 if rng.random() < 0.7 else 3
        cases.append(random_instance(rng, rank))

    grading_cap = 8
    for S in cases[:instances]:
        b = IntBox((-3,) * S.rank, (3,) * S.rank)
        witnesses = roots_in_box(S, b, bound=SUITE_BOUND)[:6]
        for w in witnesses:
            shifts = [
                m
                for m in S.elements_up_to(grading_cap)
                if dot(m, w.ray) == 0 and any(m)
            ]
            for m in shifts:
                rep.checks += 1
                again = root_check(S, vadd(w.alpha, m), bound=SUITE_BOUND)
                if not again.accepted or again.ray != w.ray:
                    rep.fail(
                        "facet shift broke the root",
                        {"alpha": list(w.alpha), "m": list(m), "ray": list(w.ray)},
                    )
        if S.kind == "saturated" and S.is_pointed():
            rs = root_set(S)
            for sl in rs.per_ray:
                rep.checks += 1
                found = None
                for p in IntBox((-8,) * S.rank, (8,) * S.rank).points():
                    if sl.polyhedron.contains(p):
                        found = p
                        break
                if found is None:
                    rep.fail("dual ray carries no root in a generous window",
                             {"ray": list(sl.ray)})
    return rep


def suite_subset(seed: int, instances: int) -> SuiteReport:
    """Root-set inclusion pins the semigroup: for distinct saturated pointed
    semigroups, subset verdicts never hold in both directions."""
    rep = SuiteReport("subset-lemma", seed, instances)
    rng = random.Random(seed)
    # the directed pair with its known witness
    s1 = AffineSemigroup.saturated([(1, 0), (1, 2)])
    s2 = AffineSemigroup.saturated([(1, 0), (1, 3)])
    v = root_subset(root_set(s1), root_set(s2))
    rep.checks += 1
    if v.kind != "proven_not_subset" or v.counterexample != (1, 3):
        rep.fail("directed pair witness", {"got": str(v)})
    pairs = []
    while len(pairs) < instances:
        rank = 2 if rng.random() < 0.7 else 3
        A = random_saturated(rng, rank)
        B = random_saturated(rng, rank)
        pairs.append((A, B))

    def check(pair):
        A, B = pair
        ra, rb = root_set(A), root_set(B)
        fwd = root_subset(ra, rb)
        bwd = root_subset(rb, ra)
        both = fwd.kind == PROVEN_SUBSET and bwd.kind == PROVEN_SUBSET
        return A, B, both

    for A, B, both in _map(check, pairs):
        rep.checks += 1
        same = A.cone == B.cone
        if both and not same:
            rep.fail(
                "inclusion certified both ways for distinct cones",
                {"A": [list(r) for r in A.cone.extreme_rays],
                 "B": [list(r) for r in B.cone.extreme_rays]},
            )
        if same and not both:
            rep.fail(
                "equal cones must certify inclusion both ways",
                {"A": [list(r) for r in A.cone.extreme_rays]},
            )
    return rep


def suite_normalization(seed: int, instances: int) -> SuiteReport:
    """Nonempty equal root sets force equal saturations: every discovered
    same-root companion has the base as its saturation, and fixtures with
    strictly smaller root sets are never misreported as equal."""
    rep = SuiteReport("normalization", seed, instances)
    rng = random.Random(seed)
    fig3 = load_fixture("fig3")
    fig4 = load_fixture("fig4")
    rep.checks += 1
    fwd = root_subset(root_set(fig4), root_set(fig3))
    bwd = root_subset(root_set(fig3), root_set(fig4))
    if not (fwd.kind == PROVEN_SUBSET and bwd.kind == PROVEN_SUBSET):
        rep.fail("companion root set must equal the base", {})
    sat4, _ = fig4.saturation()
    rep.checks += 1
    if sat4.cone != fig3.cone:
        rep.fail("companion saturation differs from the base", {})
    s1 = AffineSemigroup.saturated([(1, 0), (1, 2)])
    s1p = load_fixture("s1prime")
    rep.checks += 1
    v = root_subset(root_set(s1), root_set(s1p))
    if v.kind != "proven_not_subset":
        rep.fail("strictly smaller root set reported as containing the base",
                 {"verdict": v.kind})
    count = 0
    budget = ExploreBudget(max_grading=4, seed_size=1, family_coeff_bound=0)
    while count < min(instances, 12):
        S = random_saturated(rng, 2)
        try:
            out = explore_same_roots(S, budget)
        except ClassifyError:
            continue
        count += 1
        for cand in out.found[1:3]:
            rep.checks += 1
            satc, _ = cand.saturation()
            if satc.cone != S.cone:
                rep.fail(
                    "same-root instance with a different saturation",
                    {"holes": [list(h) for h in cand.finite_holes]},
                )
    return rep


def suite_sl_family(seed: int, instances: int) -> SuiteReport:
    """Layer-removal subsemigroups: valid, non-saturated, same saturation."""
    rep = SuiteReport("sl-family", seed, instances)
    rng = random.Random(seed)
    s1 = AffineSemigroup.saturated([(1, 0), (1, 2)])
    fam = emit_sl_family(s1, k=0, L=2)
    for l, m in fam.members:
        rep.checks += 1
        if m.is_saturated() or m.ambient_cone() != s1.cone:
            rep.fail("bad layer member", {"l": l})
    count = 0
    attempts = 0
    while count < min(instances, 10) and attempts < 200:
        attempts += 1
        S = random_saturated(rng, 2)
        try:
            fam = emit_sl_family(S, k=0, L=2)
        except ClassifyError:
            continue
        count += 1
        hb = S.hilbert_basis().elements
        for l, m in fam.members:
            rep.checks += 1
            if m.is_saturated():
                rep.fail("layer member is saturated", {"l": l})
            if m.ambient_cone() != S.cone:
                rep.fail("layer member changed the saturation", {"l": l})
            if any(m.contains(h) for h in hb):
                rep.fail("layer member kept a basis element", {"l": l})
            u = S.grading_vector()
            els = m.elements_up_to(6)
            for a in els[:20]:
                for b in els[:20]:
                    if not m.contains(vadd(a, b)):
                        rep.fail("layer member not closed",
                                 {"a": list(a), "b": list(b)})
                        break
    rep.instances = count
    return rep


def suite_algebra(seed: int, instances: int, corrupt: bool = False) -> SuiteReport:
    """Exact identities of the root derivations on the fixtures: Leibniz,
    exponential multiplicativity, the one-parameter group law, and the
    nilpotency bound.  ``corrupt`` injects a broken application rule to
    prove the Leibniz check can fail."""
    rep = SuiteReport("algebra", seed, instances)
    rng = random.Random(seed)
    fixtures = []
    for name in ("s1", "fig3", "quadrant", "s1prime", "fig4"):
        S = load_fixture(name)
        b = IntBox((-3,) * S.rank, (3,) * S.rank)
        ws = roots_in_box(S, b)
        if ws:
            fixtures.append((S, ws[0]))
    scalars = [Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2),
               Fraction(3)]

    def corrupt_apply(D, a):
        # plausible implementation bug: the pairing enters squared, so the
        # map keeps the same support but stops being a derivation
        out = {}
        for m, c in a.terms.items():
            w = dot(m, D.ray)
            if w:
                out[vadd(m, D.alpha)] = out.get(vadd(m, D.alpha), Fraction(0)) \
                    + c * w * w
        return AlgebraElement(a.semigroup, out)

    applier = corrupt_apply if corrupt else apply_derivation

    for S, w in fixtures:
        D = DerivationSpec(S, w.alpha, w.ray)
        elems = [m for m in S.elements_up_to(4)]
        rng.shuffle(elems)
        mons = [AlgebraElement.monomial(S, m) for m in elems[:4]]
        if not mons:
            continue
        a = mons[0] + 2 * mons[-1]
        b = sum(mons[1:3], AlgebraElement.zero(S)) + AlgebraElement.one(S)
        rep.checks += 1
        lhs = applier(D, a * b)
        rhs = applier(D, a) * b + a * applier(D, b)
        if lhs != rhs:
            rep.fail(
                "Leibniz rule failed",
                {
                    "alpha": list(D.alpha),
                    "ray": list(D.ray),
                    "a": repr(a),
                    "b": repr(b),
                    "difference": repr(lhs - rhs),
                },
            )
            continue
        t = scalars[rep.checks % len(scalars)]
        s = scalars[(rep.checks + 2) % len(scalars)]
        rep.checks += 1
        if exponentiate(D, t, a * b) != exponentiate(D, t, a) * exponentiate(D, t, b):
            rep.fail("exponential is not multiplicative", {"t": str(t)})
        rep.checks += 1
        if exponentiate(D, s, exponentiate(D, t, a)) != exponentiate(D, s + t, a):
            rep.fail("one-parameter group law failed", {"s": str(s), "t": str(t)})
        rep.checks += 1
        try:
            if S.kind == "generated":
                gens = S.gens
            elif S.kind == "saturated":
                gens = S.hilbert_basis().elements
            else:
                gens = S.irreducibles(bound=12).elements
            check_locally_nilpotent(D, gens)
        except AlgebraError as e:
            rep.fail("nilpotency bound violated", {"error": str(e)})
        rep.checks += 1
        for m in elems[:6]:
            img = applier(D, AlgebraElement.monomial(S, m))
            for e in img.terms:
                if e != vadd(m, D.alpha):
                    rep.fail("derivation degree is not the root",
                             {"m": list(m), "got": list(e)})
    return rep
