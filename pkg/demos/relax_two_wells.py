# Relax the four-well Himmelblau surface from the origin with three of the
# drivers and compare what they cost. The origin sits on a ridge between
# basins, so this is a nice stress test for the velocity-mixing rules.

import numpy as np

from pesmin.optimizers import run_optimizer
from pesmin.potentials import catalog_lookup

pot = catalog_lookup("himmelblau")
start = pot.start  # (0, 0)

print(f"start {start}, U = {pot.energy(start)}")
print()

for name in ("fire", "aare-pr", "acc-cg"):
    report = run_optimizer(name, pot, start, f_tol=0.01)
    x, y = report.final_coords
    print(f"{name:8s} {report.n_force_evals:4d} force evaluations -> "
          f"({x:+.4f}, {y:+.4f}), U = {report.final_energy:.2e}, "
          f"|F| = {report.final_force_norm:.2e}")

# the event stream shows what the angle-adaptive engine actually did:
# direction-band switches, time-step moves, and overshoot backtracks
print()
report = run_optimizer("aare-pr", pot, start, f_tol=0.01)
for ev in report.events:
    info = ", ".join(f"{k}={v:.3g}" if isinstance(v, float) else f"{k}={v}"
                     for k, v in ev.info.items()
                     if not isinstance(v, np.ndarray))
    print(f"  step {ev.step:3d}  {ev.kind:20s} {info}")
