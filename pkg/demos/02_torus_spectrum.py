"""
Spectrum of a toroidal cavity and its dark mode
===============================================

A torus with minor radius r = 10 mm and major radius R = 20 mm.  Levels
are computed from the perturbative expansion in the aspect ratio r/R.  The
TM_{010} level is a dark mode: its electric field never reaches the wall.
"""
from torospec import ModeId, Torus, TorusPerturbative, build_spectrum, dark_modes, gaps, mode_rank

torus = Torus(0.010, 0.020)
spectrum = build_spectrum(torus, TorusPerturbative(), 14e9)

print(f"{len(spectrum)} levels below 14 GHz for r/R = {torus.aspect_ratio}")
for rank, entry in enumerate(spectrum, start=1):
    print(f"{rank:2d}  {entry.mode.label:8s} {entry.f / 1e9:8.4f} GHz  x{entry.multiplicity}")

dm = ModeId.tm(0, 1, 0)
print(f"\ndark modes: {[e.mode.label for e in dark_modes(spectrum)]}")
print(f"TM010 sits at rank {mode_rank(spectrum, dm)}")

g = gaps(spectrum, dm)
print(f"neighbours: {g.below} {g.delta_minus / 1e6:+.1f} MHz, {g.above} {g.delta_plus / 1e6:+.1f} MHz")

# Closer to the nodal limit the expansion is pushed past its comfort zone
# and every entry carries the extrapolated flag.
fat = build_spectrum(Torus(0.018, 0.020), TorusPerturbative(), 7e9)
entry = fat.entry(dm)
print(f"\nr = 18 mm: TM010 at {entry.f / 1e9:.3f} GHz, rank {mode_rank(fat, dm)}, "
      f"extrapolated = {entry.extrapolated}")
