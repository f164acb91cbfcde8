"""Static DOT and SVG renderings of balls, patches and tile alphabets.

Everything here is presentational: JSON files are the data of record and
nothing downstream parses these outputs.  The emitters are deterministic
(fixed iteration order, fixed float formatting) so repeated runs produce
byte-identical files.

Tile glyphs are squares with one labeled side per generator, sides
assigned in genset order starting from the east side and proceeding
counterclockwise; a face of count k shows k isoceles triangles centered
on the side, pointing outward for bumps and inward for dents.  Unknown
faces are drawn dashed.  Gensets larger than four wrap onto a regular
polygon with one side per generator.
"""

from __future__ import annotations

import math

from .cayley import CayleyBall, ToyGraph
from .errors import ValidationError
from .tiles import BUMP, PatchTiling, TileSet
from .homology import _graph_view


def _q(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def ball_to_dot(ball: CayleyBall, name: str = "ball") -> str:
    """Undirected DOT graph; vertices grouped into same-rank rows by word
    length so layered layouts show the spheres."""
    lines = [f"graph {_q(name)} {{", "  rankdir=TB;", "  node [shape=circle];"]
    by_distance: dict[int, list[int]] = {}
    for v in range(ball.n_vertices):
        by_distance.setdefault(ball.distance[v], []).append(v)
    for dist in sorted(by_distance):
        for v in by_distance[dist]:
            label = ball.word_str(v) or "1"
            lines.append(f"  v{v} [label={_q(label)}];")
        row = "; ".join(f"v{v}" for v in by_distance[dist])
        lines.append(f"  {{ rank=same; {row}; }}")
    for t, h, s in ball.edges:
        lines.append(f"  v{t} -- v{h} [label={_q(ball.spec.genset[s])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def toy_to_dot(toy: ToyGraph, name: str = "toy") -> str:
    """Directed DOT graph; boundary vertices drawn doubled."""
    lines = [f"digraph {_q(name)} {{", "  node [shape=circle];"]
    for v in range(toy.n_vertices):
        shape = ' [shape=doublecircle]' if v in toy.boundary else ""
        lines.append(f"  v{v}{shape};")
    for t, h, label in toy.edges:
        attr = f" [label={_q(label)}]" if label is not None else ""
        lines.append(f"  v{t} -> v{h}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def patch_to_dot(patch: PatchTiling, name: str = "patch") -> str:
    """Patch adjacency: vertices labeled with their tile index, edges with
    generator and the tail face's signed count."""
    n, edges, _ = _graph_view(patch.graph)
    slot = {g: i for i, g in enumerate(patch.genset)}
    lines = [f"graph {_q(name)} {{", "  node [shape=box];"]
    for v in range(n):
        style = "" if v in patch.interior else ' style=dashed'
        lines.append(f"  v{v} [label={_q(f't{patch.assignment[v]}')}{style}];")
    for t, h, label in edges:
        gname = patch.genset[label] if isinstance(label, int) else label
        face = patch.tile_at(t).faces.__getitem__(slot[gname]) if gname in slot else None
        if face is None:
            text = gname
        else:
            value = face.count if face.polarity == BUMP else -face.count
            text = f"{gname}:{value}"
        lines.append(f"  v{t} -- v{h} [label={_q(text)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _fmt(x: float) -> str:
    out = f"{x:.2f}"
    return "0.00" if out == "-0.00" else out


def _polygon(sides: int, cx: float, cy: float, r: float):
    """Corner coordinates, side i spanning corner i -> corner i+1; side 0
    faces east for a square (corners start at the southeast, going
    counterclockwise in svg's y-down frame)."""
    corners = []
    for i in range(sides):
        angle = -math.pi / sides + 2 * math.pi * i / sides
        corners.append((cx + r * math.cos(angle), cy - r * math.sin(angle)))
    return corners


def _side_marks(ax, ay, bx, by, count, outward, size):
    """Triangle paths along the side from (ax,ay) to (bx,by); outward is
    the unit normal side of the polygon's exterior."""
    dx, dy = bx - ax, by - ay
    length = math.hypot(dx, dy)
    ux, uy = dx / length, dy / length
    nx, ny = -uy, ux  # exterior normal for counterclockwise corners, y-down
    sign = 1.0 if outward else -1.0
    paths = []
    for j in range(count):
        t = (j + 1) / (count + 1)
        mx, my = ax + dx * t, ay + dy * t
        tip = (mx + sign * nx * size, my + sign * ny * size)
        base1 = (mx - ux * size * 0.6, my - uy * size * 0.6)
        base2 = (mx + ux * size * 0.6, my + uy * size * 0.6)
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (base1, tip, base2))
        paths.append(f'<polygon points="{pts}" class="mark"/>')
    return paths


def tileset_to_svg(tileset: TileSet) -> str:
    """One glyph per tile type, laid out in a fixed-width grid in type
    order."""
    sides = max(3, len(tileset.genset))
    cell = 120.0
    radius = 38.0
    mark = 7.0
    per_row = 6
    n = max(1, len(tileset.types))
    rows = (n + per_row - 1) // per_row
    width = per_row * cell
    height = rows * cell

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}"'
        f' height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        "<style>.side{stroke:#222;stroke-width:1.5;fill:none}"
        ".unknown{stroke:#999;stroke-dasharray:4 3;stroke-width:1.5;fill:none}"
        ".mark{fill:#222}.lbl{font:10px monospace;fill:#444}"
        ".idx{font:11px monospace;fill:#000}</style>",
    ]
    for i, tile in enumerate(tileset.types):
        cx = (i % per_row) * cell + cell / 2
        cy = (i // per_row) * cell + cell / 2
        corners = _polygon(sides, cx, cy, radius)
        out.append(f'<g><text class="idx" x="{_fmt(cx - radius)}"'
                   f' y="{_fmt(cy - radius - 8)}">t{i}</text>')
        for s in range(sides):
            ax, ay = corners[s]
            bx, by = corners[(s + 1) % sides]
            face = tile.faces[s] if s < len(tile.faces) else None
            cls = "side" if face is not None else "unknown"
            out.append(f'<line class="{cls}" x1="{_fmt(ax)}" y1="{_fmt(ay)}"'
                       f' x2="{_fmt(bx)}" y2="{_fmt(by)}"/>')
            if s < len(tileset.genset):
                mx, my = (ax + bx) / 2, (ay + by) / 2
                lx = cx + (mx - cx) * 1.45
                ly = cy + (my - cy) * 1.45
                text = tileset.genset[s]
                if face is not None:
                    text += f":{face.count}"
                out.append(f'<text class="lbl" x="{_fmt(lx - 6)}"'
                           f' y="{_fmt(ly + 3)}">{text}</text>')
            if face is not None and face.count:
                out.extend(_side_marks(ax, ay, bx, by, face.count,
                                       face.polarity == BUMP, mark))
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def export_dot(obj, name: str | None = None) -> str:
    if isinstance(obj, CayleyBall):
        return ball_to_dot(obj, name or "ball")
    if isinstance(obj, ToyGraph):
        return toy_to_dot(obj, name or "toy")
    if isinstance(obj, PatchTiling):
        return patch_to_dot(obj, name or "patch")
    raise ValidationError(f"cannot export {type(obj).__name__} as DOT")
