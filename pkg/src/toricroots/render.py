"""Lattice-dot diagrams of semigroups, their holes, and their roots.

Two deterministic backends: a character grid and an SVG with a fixed
10-unit spacing.  Semigroup members are filled dots, holes are hollow,
roots get their own marker, everything else stays blank; that is the
figure convention used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cones import IntBox
from .roots import DEFAULT_BOUND, roots_in_box
from .semigroup import AffineSemigroup, SemigroupError

MAX_BOX_AREA = 10_000

ASCII_MEMBER = "*"
ASCII_HOLE = "o"
ASCII_ROOT = "R"
ASCII_EMPTY = "."


@dataclass(frozen=True)
class FigureLayers:
    members: frozenset
    holes: frozenset
    roots: frozenset


def compute_layers(S: AffineSemigroup, box: IntBox,
                   bound: int = DEFAULT_BOUND) -> FigureLayers:
    if box.dim != 2:
        raise SemigroupError("figures are two-dimensional")
    if box.count() > MAX_BOX_AREA:
        raise SemigroupError(
            f"box has {box.count()} cells, more than the limit {MAX_BOX_AREA}"
        )
    sat, _ = S.saturation()
    members, holes = set(), set()
    for p in box.points():
        if S.contains(p):
            members.add(p)
        elif sat.contains(p):
            holes.add(p)
    roots = {w.alpha for w in roots_in_box(S, box, bound)}
    return FigureLayers(frozenset(members), frozenset(holes), frozenset(roots))


def render_ascii(S: AffineSemigroup, box: IntBox,
                 bound: int = DEFAULT_BOUND) -> str:
    """Character grid; rows run top-down from the highest y to the lowest."""
    layers = compute_layers(S, box, bound)
    (x0, y0), (x1, y1) = box.lo, box.hi
    lines = []
    for y in range(y1, y0 - 1, -1):
        row = []
        for x in range(x0, x1 + 1):
            p = (x, y)
            if p in layers.roots:
                row.append(ASCII_ROOT)
            elif p in layers.members:
                row.append(ASCII_MEMBER)
            elif p in layers.holes:
                row.append(ASCII_HOLE)
            else:
                row.append(ASCII_EMPTY)
        lines.append(f"{y:>4} " + " ".join(row))
    footer_marks = " ".join(("|" if x == 0 else " ") for x in range(x0, x1 + 1))
    footer = " ".join(_last_digit(x) for x in range(x0, x1 + 1))
    lines.append("     " + footer_marks)
    lines.append("     " + footer)
    legend = (
        f"x: {x0}..{x1}  y: {y0}..{y1}  "
        f"{ASCII_MEMBER}=member {ASCII_HOLE}=hole {ASCII_ROOT}=root"
    )
    return "\n".join(lines + [legend]) + "\n"


def _last_digit(x: int) -> str:
    return str(abs(x) % 10)


SVG_CELL = 10
SVG_MARGIN = 15


def render_svg(S: AffineSemigroup, box: IntBox,
               bound: int = DEFAULT_BOUND) -> str:
    layers = compute_layers(S, box, bound)
    (x0, y0), (x1, y1) = box.lo, box.hi
    w = (x1 - x0) * SVG_CELL + 2 * SVG_MARGIN
    h = (y1 - y0) * SVG_CELL + 2 * SVG_MARGIN

    def pos(p):
        x = SVG_MARGIN + (p[0] - x0) * SVG_CELL
        y = h - (SVG_MARGIN + (p[1] - y0) * SVG_CELL)
        return x, y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        "<style>"
        ".member{fill:#000;}"
        ".hole{fill:#fff;stroke:#000;stroke-width:1;}"
        ".root{fill:#007c00;}"
        ".axis{stroke:#d0d0d0;stroke-width:1;}"
        "</style>",
    ]
    if x0 <= 0 <= x1:
        ax, _ = pos((0, y0))
        parts.append(f'<line class="axis" x1="{ax}" y1="0" x2="{ax}" y2="{h}"/>')
    if y0 <= 0 <= y1:
        _, ay = pos((x0, 0))
        parts.append(f'<line class="axis" x1="0" y1="{ay}" x2="{w}" y2="{ay}"/>')
    for klass, pts, r in (
        ("member", layers.members, 2),
        ("hole", layers.holes, 2),
        ("root", layers.roots, 2),
    ):
        for p in sorted(pts):
            x, y = pos(p)
            parts.append(f'<circle class="{klass}" cx="{x}" cy="{y}" r="{r}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
