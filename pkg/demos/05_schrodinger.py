"""Free-particle energy of a phi plane wave on a periodic grid."""
import math

import numpy as np

from hyperalg.algebra import HNum
from hyperalg.analytic import phi_wave_closed
from hyperalg.schrodinger import GridWave, box_spectrum, classify_energy, eigencheck, hamiltonian_apply

# q(y) = k cos y + j sin y satisfies q'' = -q, so H q = q/2 = (k/2) q.
half_k = HNum(0.0, 0.0, 0.0, 0.5)
half = HNum(0.5, 0.0, 0.0, 0.0)

grids = [64, 128, 256, 512]
res = [eigencheck(GridWave.sample(phi_wave_closed, m), half_k) for m in grids]
for m, r in zip(grids, res):
    print(f"M={m:4d}  |Hq - (k/2)q| / |q| = {r:.3e}")
slope = np.polyfit(np.log([2 * math.pi / m for m in grids]), np.log(res), 1)[0]
print(f"convergence order {slope:.3f}")
print("E = k/2 is", classify_energy(half_k).classification)

# On span(j, k) the real 1/2 acts the same way, because k is phi's unity
w = GridWave.sample(phi_wave_closed, 256)
print("\nresidual with E = 1/2:", eigencheck(w, half), " with E = k/2:", eigencheck(w, half_k))

# Hq sampled at a few points
hq = hamiltonian_apply(w).values
print("Hq[0] =", HNum(*hq[0]), " q[0]/2 =", HNum(*w.values[0] / 2))

# Baseline: particle in a box [0, pi], exact n^2 / 2
for n, ev in enumerate(box_spectrum(3, math.pi, 512), 1):
    print(f"box level {n}: {ev.value[0]:.6f}  (exact {n * n / 2})")
