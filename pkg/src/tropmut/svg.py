"""SVG 1.1 drawing of the two chart polygons of a PL polytope."""

from xml.sax.saxutils import escape

from .polyptych import PLPolytope, pl_vertices, sink_source

UNIT = 40
PAD = 30
GAP = 60


def _panel(P, chart, x0):
    poly = P.chart(chart)
    xs = [v[0] for v in poly.vertices]
    ys = [v[1] for v in poly.vertices]
    lo_x, hi_y = min(xs), max(ys)

    def at(p):
        return (x0 + (p[0] - lo_x) * UNIT, PAD + 20 + (hi_y - p[1]) * UNIT)

    out = [f'<g id="chart{chart}">',
           f'<text x="{x0}" y="{PAD}" font-size="14">chart {chart}</text>']
    pts = " ".join(f"{a:g},{b:g}" for a, b in map(at, poly.vertices))
    out.append(f'<polygon points="{pts}" fill="#eef3fb" stroke="#23407a" stroke-width="2"/>')
    for p in sorted(poly.lattice_points):
        a, b = at(p)
        out.append(f'<circle class="lattice" cx="{a:g}" cy="{b:g}" r="3" fill="#222"/>')
    pl = {v.in_chart(chart) for v in pl_vertices(P)}
    for v in poly.vertices:
        a, b = at(v)
        cls, colour = ("pl-vertex", "#c0392b") if v in pl else ("vertex", "#7f8c8d")
        out.append(f'<circle class="{cls}" cx="{a:g}" cy="{b:g}" r="6" fill="none" '
                   f'stroke="{colour}" stroke-width="2"/>')
    nv = len(poly.vertices)
    sink, source = sink_source(P)
    for i, edges in enumerate(P.facet_map[chart]):
        label = f"D{i + 1}"
        if sink.is_divisor and sink.index == i:
            label += " sink"
        if source.is_divisor and source.index == i:
            label += " source"
        for e in edges:
            v, w = poly.vertices[e], poly.vertices[(e + 1) % nv]
            a, b = at(((v[0] + w[0]) / 2, (v[1] + w[1]) / 2))
            out.append(f'<text class="facet" x="{a:g}" y="{b:g}" font-size="12" '
                       f'fill="#23407a">{escape(label)}</text>')
    for name, face in (("sink", sink), ("source", source)):
        if not face.is_divisor:
            a, b = at(face.point.in_chart(chart))
            out.append(f'<text class="{name}" x="{a + 8:g}" y="{b - 8:g}" font-size="12" '
                       f'fill="#c0392b">{name} (nodal)</text>')
    out.append("</g>")
    width = (max(xs) - lo_x) * UNIT
    return out, width, (hi_y - min(ys)) * UNIT


def render_charts(P: PLPolytope) -> str:
    """Both chart polygons with lattice points, facet labels and PL vertices."""
    left, w1, h1 = _panel(P, 1, PAD)
    right, w2, h2 = _panel(P, 2, PAD + w1 + GAP)
    width = PAD * 2 + w1 + GAP + w2
    height = PAD * 2 + 40 + max(h1, h2)
    head = ['<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:g}" '
            f'height="{height:g}" viewBox="0 0 {width:g} {height:g}">',
            f'<rect width="{width:g}" height="{height:g}" fill="#ffffff"/>']
    return "\n".join(head + left + right + ["</svg>"]) + "\n"
