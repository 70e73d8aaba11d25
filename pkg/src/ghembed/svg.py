"""SVG 1.1 drawings of scaffolds.

Geometry is written in scaffold coordinates inside a group that applies
the pixel scale and flips the ordinate, so element attributes can be read
back as plane coordinates. Labels live outside that group.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .scaffold import Scaffold, Variant

SCALE = 4.0  # pixels per unit
MARGIN = 20.0  # pixels

_BLOCK_FILL = "#9db4d6"
_MARKER_FILL = "#c0392b"


def _num(v: float) -> str:
    return format(float(v), ".12g")


def render_svg(k: Scaffold) -> str:
    p = k.params
    m = p.bound
    width_units = p.block_left(p.dim) + 2 * m
    width = 2 * MARGIN + SCALE * width_units
    # extra band at the bottom for the axis labels
    height = 2 * MARGIN + SCALE * 2 * m + 24
    origin_y = MARGIN + SCALE * m
    dot = max(m / 12, 0.05)

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">',
        f"<title>{escape(_title(k))}</title>",
        f'<g id="scaffold" transform="translate({_num(MARGIN)},{_num(origin_y)}) '
        f'scale({_num(SCALE)},{_num(-SCALE)})">',
        f'<line class="axis" x1="{_num(-m / 2)}" y1="0" x2="{_num(width_units + m / 2)}" y2="0" '
        'stroke="#999999" stroke-dasharray="2,2" vector-effect="non-scaling-stroke"/>',
    ]
    for b in k.blocks:
        attrs = f'data-block="{b.index}"'
        rect = (
            f'x="{_num(b.x0)}" y="{_num(b.y0)}" '
            f'width="{_num(b.x1 - b.x0)}" height="{_num(b.y1 - b.y0)}"'
        )
        if p.variant is Variant.FULL_SQUARE:
            out.append(
                f'<rect class="block" {attrs} {rect} fill="{_BLOCK_FILL}" stroke="#2c3e50" '
                'vector-effect="non-scaling-stroke"/>'
            )
        elif p.variant is Variant.FRAME:
            out.append(
                f'<rect class="block" {attrs} {rect} fill="none" stroke="#2c3e50" '
                'stroke-width="2" vector-effect="non-scaling-stroke"/>'
            )
        else:
            out.append(
                f'<rect class="block-outline" {attrs} {rect} fill="none" stroke="#bbbbbb" '
                'stroke-dasharray="3,3" vector-effect="non-scaling-stroke"/>'
            )
            for px, py in b.extreme_points():
                out.append(
                    f'<circle class="block-point" {attrs} cx="{_num(px)}" cy="{_num(py)}" '
                    f'r="{_num(dot)}" fill="#2c3e50"/>'
                )
    for n in range(1, p.dim + 1):
        seen = set()
        for sign in "+-":
            px, py = k.marker(n, sign)
            if (px, py) in seen:
                continue
            seen.add((px, py))
            out.append(
                f'<circle class="marker" data-marker="{n}" data-sign="{sign}" '
                f'cx="{_num(px)}" cy="{_num(py)}" r="{_num(dot)}" fill="{_MARKER_FILL}"/>'
            )
    out.append("</g>")

    label_y = origin_y + SCALE * m + 16
    for n in range(1, p.dim + 1):
        ax = MARGIN + SCALE * p.marker_abscissa(n)
        bx = MARGIN + SCALE * p.block_left(n)
        marker_label = "0" if n == 1 else f"D({n - 1})={_num(p.marker_abscissa(n))}"
        block_label = "C" if n == 1 else f"C+D({n - 1})"
        out.append(
            f'<text class="tick" x="{_num(ax)}" y="{_num(label_y)}" font-size="9" '
            f'text-anchor="middle">{escape(marker_label)}</text>'
        )
        out.append(
            f'<text class="tick" x="{_num(bx)}" y="{_num(label_y)}" font-size="9" '
            f'text-anchor="middle">{escape(block_label)}={_num(p.block_left(n))}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _title(k: Scaffold) -> str:
    xs = ", ".join(_num(v) for v in k.x)
    return f"K_x for x=({xs}), N={k.dim}, M={_num(k.bound)}, C={_num(k.params.c)}, D={_num(k.params.d)}, {k.variant.value}"


def write_svg(k: Scaffold, path) -> None:
    with open(path, "w") as fh:
        fh.write(render_svg(k))
