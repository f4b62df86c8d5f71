"""SVG rendering of result documents.

Derived and lossy by design: coordinates are rounded to 6 decimals and
each arc becomes its own path element, so gaps in the data stay gaps on
screen.  Cusps render as triangles, crunodes as circles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scenario import ResultDocument

_COLORS = {
    "progenitor": "#7b2d8b",  # purple
    "left": "#1a7a1a",        # green
    "right": "#1f4fd8",       # blue
    "envelope": "#d87f1f",
    "contour": "#888888",
    "true_oval": "#333333",
}


@dataclass(frozen=True)
class SvgStyle:
    width: int = 640
    height: int = 640
    stroke_width: float = 0.5
    marker_size: float = 1.2


def _fmt(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _path(points, closed: bool) -> str:
    cmds = ["M " + _fmt(points[0][0]) + " " + _fmt(-points[0][1])]
    cmds += ["L " + _fmt(x) + " " + _fmt(-y) for x, y in points[1:]]
    if closed:
        cmds.append("Z")
    return " ".join(cmds)


def _collect(doc: ResultDocument):
    groups = [("progenitor", doc.progenitor)]
    for entry in doc.offsets:
        groups.append((entry["side"], entry["polyline"]))
    for entry in doc.envelopes:
        groups.append(("envelope", entry["polyline"]))
    for name, poly in doc.contours.items():
        groups.append(("contour" if name == "loops" else "true_oval", poly))
    return groups


def emit_svg(doc: ResultDocument, style: SvgStyle = SvgStyle()) -> str:
    groups = _collect(doc)
    xs, ys = [], []
    for _, poly in groups:
        for arc in poly.arcs:
            xs.extend(arc.points[:, 0])
            ys.extend(arc.points[:, 1])
    for p in doc.singular_points:
        xs.append(p.location[0])
        ys.append(p.location[1])
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    margin = 0.05 * max(xmax - xmin, ymax - ymin, 1e-9)
    vb = (
        _fmt(xmin - margin),
        _fmt(-(ymax + margin)),
        _fmt((xmax - xmin) + 2 * margin),
        _fmt((ymax - ymin) + 2 * margin),
    )

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{style.width}" height="{style.height}" '
        f'viewBox="{vb[0]} {vb[1]} {vb[2]} {vb[3]}">'
    ]
    for name, poly in groups:
        color = _COLORS.get(name, "#000000")
        for arc in poly.arcs:
            if len(arc) < 2:
                continue
            lines.append(
                f'<path d="{_path(arc.points, arc.closed)}" fill="none" '
                f'stroke="{color}" stroke-width="{_fmt(style.stroke_width)}"/>'
            )
    r = style.marker_size
    for p in doc.singular_points:
        x, y = p.location[0], -p.location[1]
        if p.kind == "cusp":
            pts = f"{_fmt(x)},{_fmt(y - r)} {_fmt(x - r)},{_fmt(y + r)} {_fmt(x + r)},{_fmt(y + r)}"
            lines.append(f'<polygon points="{pts}" fill="#d82020" data-kind="cusp"/>')
        else:
            lines.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" fill="none" '
                f'stroke="#d82020" stroke-width="{_fmt(style.stroke_width)}" data-kind="{p.kind}"/>'
            )
    lines.append("</svg>")
    return "\n".join(lines)
