"""A Fourier transform on span(j, k).

The kernel uses k as "1" and j as "i": K(t) = k cos(2 pi t/N) + j sin(2 pi t/N).
"""
import math

import numpy as np

from hyperalg.analytic import phi_wave_closed
from hyperalg.spectral import dft, iso_map, parseval_check, relative_error

n = 8
tone = [phi_wave_closed(2 * math.pi * 3 * m / n) for m in range(n)]
spectrum = dft(tone)
print("spectrum of a phi tone at frequency 3 (columns 1, i, j, k):")
print(np.round(spectrum, 12))

# Inverse brings it back
rng = np.random.default_rng(0)
x = np.zeros((64, 4))
x[:, 2:] = rng.normal(size=(64, 2))
print("\nround trip relative error:", relative_error(dft(dft(x), "inverse"), x))

# Map a psi signal across (1 -> k, i -> j), transform, compare with the
# classical DFT mapped afterwards. Agreement means phi's Fourier theory is
# the complex one in disguise.
z = np.zeros((32, 4))
z[:, :2] = rng.normal(size=(32, 2))
a = iso_map(dft(z, kind="psi"), "psi_to_phi")
b = dft(iso_map(z, "psi_to_phi"), kind="phi")
print("iso(dft_psi(z)) - dft_phi(iso(z)):", np.abs(a - b).max())

# Energy is conserved with the 1/N convention
lhs, rhs = parseval_check(x)
print(f"Parseval: {lhs:.12f} vs {rhs:.12f}")
