"""Render the chart polygons of E1 and of its double as SVG files in the working directory."""

from pathlib import Path

from tropmut.corpus import e1
from tropmut.svg import render_charts

P = e1().P
for k in (1, 2):
    out = Path(f"e1_x{k}.svg")
    out.write_text(render_charts(P.dilate(k)))
    print(out, len(P.dilate(k).chart1.lattice_points), "lattice points per chart")
