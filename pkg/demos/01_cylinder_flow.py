"""
Spectral flow of a closed cylinder
==================================

Every cylinder with the same aspect ratio d/h has the same spectrum once
frequencies are measured in units of c/d.  This script sweeps the aspect
ratio, prints the two lowest curves and locates the point where the ground
state changes hands.
"""
import numpy as np

from torospec import Cylinder, CylinderExact, ModeId, cylinder_crossover, flow_sweep, ground_state

TE111 = ModeId.te(1, 1, 1)
TM010 = ModeId.tm(0, 1, 0)

# Dimensionless frequencies F = f d / c on a coarse grid.
eps = np.round(np.arange(0.5, 1.51, 0.1), 2)
points = flow_sweep([TE111, TM010], eps, CylinderExact())
curves = {mode: [p.F for p in points if p.mode == mode] for mode in (TE111, TM010)}

print(" eps    F(TE111)  F(TM010)")
for i, e in enumerate(eps):
    print(f"{e:4.1f}  {curves[TE111][i]:9.5f} {curves[TM010][i]:9.5f}")

# TM010 does not depend on the height at all, TE111 rises with d/h:
# the curves cross exactly once.
eps_c = cylinder_crossover()
print(f"\ncrossover at d/h = {eps_c:.5f}")

# Two cans just either side of the crossover.
for d, h in [(0.019, 0.020), (0.020, 0.020)]:
    print(f"d = {d * 1e3:.0f} mm, h = {h * 1e3:.0f} mm -> ground state {ground_state(Cylinder(d, h), CylinderExact())}")
