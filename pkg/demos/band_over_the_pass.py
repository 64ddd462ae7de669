# Find the minimum-energy path over the barrier of the coupled LEPS surface:
# stretch a 12-image elastic band between the two wells, relax it, and read
# the barrier off the highest image.

import numpy as np

from pesmin.bench.suites import band_endpoints
from pesmin.neb import interpolate_band, optimize_band
from pesmin.potentials import leps2

pes = leps2()
a, b = band_endpoints("leps2")  # the two well bottoms
band = interpolate_band(pes, a, b, n_images=12, k_spring=1.0)

report, band = optimize_band(band, "aare-fr", f_tol=0.01)
print(f"relaxed in {report.n_force_evals} surface evaluations "
      f"({report.stop_reason}), stacked |F| = {report.final_force_norm:.2e}")
print()

energies = band.energies()
barrier = max(energies) - energies[0]
e_lo, e_hi = min(energies), max(energies)

print("image   r_AB       x       energy")
for i, (im, e) in enumerate(zip(band.images, energies)):
    bar = "#" * int(round(34 * (e - e_lo) / (e_hi - e_lo)))
    mark = " <- top" if e == e_hi else ""
    print(f"{i:3d}   {im[0]:7.4f}  {im[1]:+7.4f}  {e:8.4f}  {bar}{mark}")

print(f"\nbarrier from the left well: {barrier:.4f}")
print(f"perpendicular residuals: max {max(band.perpendicular_norms()):.2e}")
