"""
How lossy are the walls?
========================

A crude quality estimate is the cavity volume over the volume of metal the
fields penetrate, V / (delta A).  For a torus this is r / (2 delta) whatever
the major radius, ahead of every other family compared at the same
characteristic radius.
"""
from torospec import Torus
from torospec.quality import (
    MATERIALS,
    family_comparison,
    photon_lifetime,
    q_ratio,
    ring_mode_frequency,
    skin_depth,
    surface_resistance,
)

aluminium = MATERIALS["aluminium"]
f = 10e9
delta = skin_depth(f, aluminium)
print(f"aluminium at 10 GHz: skin depth {delta * 1e6:.3f} um, R_s {surface_resistance(f, aluminium) * 1e3:.1f} mOhm")

for R in (0.010, 0.020, 0.100):
    print(f"torus r = 10 mm, R = {R * 1e3:.0f} mm: V/(delta A) = {q_ratio(Torus(0.010, R), f, aluminium):.0f}")

print("\nsame radius, same skin depth:")
for name, value in family_comparison(0.010, delta).items():
    print(f"  {name:9s} {value:8.0f}")

# A superconducting cavity with Q = 1e11 keeps a photon for seconds.
f1 = ring_mode_frequency(1, 0.030)
for Q in (1e6, 1e9, 1e11):
    print(f"Q = {Q:.0e}: lifetime {photon_lifetime(Q, f1):.3g} s at {f1 / 1e9:.3f} GHz")
