"""JSON wire format for semigroups, shared by the CLI and the fixtures.

A semigroup spec is an object with a ``rank`` and a tagged
``representation``::

    {"kind": "generated",    "generators": [[1, 0], [1, 2]]}
    {"kind": "saturated",    "cone_generators": [[1, 0], [1, 2]]}
    {"kind": "hole_patched", "cone_generators": [...],
     "finite_holes": [[1, 0], ...],
     "hole_rays": [{"base": [1, 2], "step": [2, 4]}, ...]}

Parsing either returns a validated semigroup or raises ``SpecError`` with
a machine-readable reason.
"""

from __future__ import annotations

import json
from importlib import resources

from .semigroup import AffineSemigroup, APFamily, SemigroupError

FIXTURES = (
    "s1",
    "s2",
    "s1prime",
    "s2prime",
    "fig3",
    "fig4",
    "quadrant",
    "torus",
)


class SpecError(ValueError):
    """Invalid semigroup spec; ``reason`` and ``field`` are stable strings."""

    def __init__(self, reason: str, field: str = ""):
        super().__init__(reason if not field else f"{field}: {reason}")
        self.reason = reason
        self.field = field

    def as_json(self) -> dict:
        return {"error": {"reason": self.reason, "field": self.field}}


def _int_vectors(obj, field) -> list[tuple[int, ...]]:
    if not isinstance(obj, list) or not obj:
        raise SpecError("expected a non-empty list of integer vectors", field)
    out = []
    for i, v in enumerate(obj):
        if not isinstance(v, list) or not all(isinstance(x, int) for x in v):
            raise SpecError("expected a list of integers", f"{field}[{i}]")
        out.append(tuple(v))
    return out


def parse_semigroup(data: dict) -> AffineSemigroup:
    if not isinstance(data, dict):
        raise SpecError("spec must be an object")
    rank = data.get("rank")
    if not isinstance(rank, int) or rank < 1:
        raise SpecError("rank must be a positive integer", "rank")
    rep = data.get("representation")
    if not isinstance(rep, dict):
        raise SpecError("missing representation object", "representation")
    kind = rep.get("kind")
    try:
        if kind == "generated":
            gens = _int_vectors(rep.get("generators"), "representation.generators")
            _check_dims(gens, rank)
            return AffineSemigroup.generated(gens)
        if kind == "saturated":
            gens = _int_vectors(
                rep.get("cone_generators"), "representation.cone_generators"
            )
            _check_dims(gens, rank)
            return AffineSemigroup.saturated(gens)
        if kind == "hole_patched":
            gens = _int_vectors(
                rep.get("cone_generators"), "representation.cone_generators"
            )
            _check_dims(gens, rank)
            holes = rep.get("finite_holes", [])
            if holes:
                holes = _int_vectors(holes, "representation.finite_holes")
                _check_dims(holes, rank)
            fams = []
            for i, f in enumerate(rep.get("hole_rays", [])):
                if not isinstance(f, dict):
                    raise SpecError("expected base/step object",
                                    f"representation.hole_rays[{i}]")
                base = _int_vectors([f.get("base")],
                                    f"representation.hole_rays[{i}].base")[0]
                step = _int_vectors([f.get("step")],
                                    f"representation.hole_rays[{i}].step")[0]
                fams.append(APFamily(base, step))
            return AffineSemigroup.hole_patched(gens, holes, fams)
    except SemigroupError as e:
        raise SpecError(str(e), "representation") from e
    raise SpecError(f"unknown representation kind {kind!r}", "representation.kind")


def _check_dims(vectors, rank):
    for v in vectors:
        if len(v) != rank:
            raise SpecError(
                f"vector {list(v)} has dimension {len(v)}, expected {rank}"
            )


def serialize_semigroup(S: AffineSemigroup) -> dict:
    if S.kind == "generated":
        rep = {"kind": "generated", "generators": [list(g) for g in S.gens]}
    elif S.kind == "saturated":
        rep = {
            "kind": "saturated",
            "cone_generators": [list(r) for r in S.cone.rays],
        }
    else:
        rep = {
            "kind": "hole_patched",
            "cone_generators": [list(r) for r in S.cone.rays],
            "finite_holes": [list(h) for h in S.finite_holes],
            "hole_rays": [
                {"base": list(f.base), "step": list(f.step)} for f in S.hole_rays
            ],
        }
    return {"rank": S.rank, "representation": rep}


def load_spec_text(text: str) -> AffineSemigroup:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"invalid JSON: {e}") from e
    return parse_semigroup(data)


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise SpecError(f"unknown fixture {name!r}; have {', '.join(FIXTURES)}")
    return resources.files("toricroots.fixtures").joinpath(f"{name}.json").read_text()


def load_fixture(name: str) -> AffineSemigroup:
    return load_spec_text(fixture_text(name))
