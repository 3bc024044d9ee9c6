"""
Mode chart: frequencies against the major radius
================================================

Holding the minor radius fixed and growing R, most levels fall as the cavity
gets bigger.  The TE+_{k10} family does the opposite.  The chart keeps the
seven lowest levels per geometry and always includes the nodal point R = r.
"""
import numpy as np

from torospec import mode_chart

R = np.round(np.arange(0.009, 0.0301, 0.003), 6)
chart = mode_chart([0.009], R, count=7)

by_R = {}
for row in chart.rows:
    by_R.setdefault(row.R, []).append(row)

for radius, rows in sorted(by_R.items()):
    tag = " (nodal)" if rows[0].nodal else ""
    levels = "  ".join(f"{row.entry.mode.label}:{row.entry.f / 1e9:.2f}" for row in rows)
    print(f"R = {radius * 1e3:4.0f} mm{tag}\n    {levels}")

te = [(row.R, row.entry.f) for row in chart.rows if row.entry.mode.label == "TE+110"]
print("\nTE+110 against R:", ", ".join(f"{f / 1e9:.3f}" for _, f in te), "GHz")
