"""Waves that live in span(j, k) and how a psi phase moves them."""
import math

import numpy as np

from hyperalg.algebra import OMEGA, mul
from hyperalg.analytic import I_F, J_F, K_F, exp, phi_wave, phi_wave_closed, printed_coupling_residual, verify_coupling_identity

# exp(j*y) from the Taylor series; its k-multiple stays inside span(j, k)
for y in (0.0, math.pi / 2, math.pi):
    print(f"exp(j*{y:.4f}) = {exp(OMEGA, J_F * y)}")
    print(f"  k*exp(j*y)  = {phi_wave(y)}")

# k is the unity of span(j, k) and j*j = -k, so q(y) = k cos y + j sin y
ys = np.linspace(0, 2 * math.pi, 9)
print("\nmax |series - closed form|:", max((phi_wave(y) - phi_wave_closed(y)).norm() for y in ys))

# q(x) * q(y) = q(x + y): phases add like complex phases
print("q(1)*q(2) - q(3):", (mul(OMEGA, phi_wave(1.0), phi_wave(2.0)) - phi_wave(3.0)).norm())

# A psi phase factor shifts a phi wave: exp(i*x) * q(y) = q(x + y)
grid = np.linspace(0, 2 * math.pi, 13)
print("\ncoupling residual on 13x13 grid:", max(verify_coupling_identity(x, y) for x in grid for y in grid))

# The variant with i inside the phi exponent does not hold
print("variant k*exp(j*(x + i*y)) at (1, 0.5):", printed_coupling_residual(1.0, 0.5))

# k*exp(i*y) and k*exp(j*y) are the same function, since k*i = j
print("k*i =", mul(OMEGA, K_F, I_F))
print("max |k*exp(i*y) - k*exp(j*y)|:", max((phi_wave(y, reading="i") - phi_wave(y)).norm() for y in ys))
