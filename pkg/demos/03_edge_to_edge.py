"""
Edge-to-edge tilings with k non-hexagons
========================================

Gluing 6k unmodified cone copies leaves a regular 6k-gon of area k in the
middle.  Split it into two heptagons (k = 2) or k octagons, or keep it
whole to get total index 6k - 6.
"""
from pathlib import Path

from hextiling import assemble_fk, full_report
from hextiling.files import render_svg

for k in (2, 3, 5):
    report = full_report(assemble_fk(k, rings=3, central_mode="dissect"))
    print(f"k={k}: edge-to-edge={report.edge_to_edge} non-hexagons={report.non_hexagon_count} "
          f"prototiles={report.prototile_count} areas in [{report.area_min:.12f}, {report.area_max:.12f}]")

# %%
# Without the dissection the centre is one 6k-gon.
for k in (2, 6, 10):
    report = full_report(assemble_fk(k, rings=3, central_mode="none"))
    print(f"k={k}: total index {report.total_index} (6k-6 = {6 * k - 6}), "
          f"max diameter {report.max_diameter:.9f}")

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)
(out / "f2.svg").write_text(render_svg(assemble_fk(2, rings=3, central_mode="dissect")))
print("wrote", out / "f2.svg")
