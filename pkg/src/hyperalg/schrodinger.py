"""Stationary 1-D Schrodinger checks for omega-valued grid waves.

Units hbar = m = 1; the Hamiltonian is the kinetic operator -(1/2) d^2/dy^2
discretised by second-order central differences.

For the phi plane wave q(y) = k*cos(y) + j*sin(y), q'' = -q, so
H q = q/2 = (k/2) q because k is the unity of phi.  The eigenvalue is
reported as (1/2)k; the real value 1/2 acts identically on phi.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .algebra import OMEGA, HNum, mul_array
from .spectral import as_array

CLASSES = ("real", "i_imaginary", "k_proportional", "mixed")


class GridTooCoarse(ValueError):
    pass


class ZeroWave(ValueError):
    pass


@dataclass(frozen=True)
class GridWave:
    """Samples w[m] at y_m = y_min + m*h, h = (y_max - y_min)/(M - 1).

    ``periodic`` grids wrap index M-1 onto 0 (the period is M*h);
    ``dirichlet`` grids treat values beyond both ends as zero.
    """

    values: np.ndarray
    domain: tuple[float, float]
    boundary: str = "periodic"

    def __post_init__(self):
        vals = as_array(self.values)
        if vals.shape[0] < 3:
            raise GridTooCoarse(f"need at least 3 grid points, got {vals.shape[0]}")
        if self.boundary not in ("periodic", "dirichlet"):
            raise ValueError(f"unknown boundary {self.boundary!r}")
        if not self.domain[1] > self.domain[0]:
            raise ValueError("domain must have y_max > y_min")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def m(self) -> int:
        return self.values.shape[0]

    @property
    def h(self) -> float:
        return (self.domain[1] - self.domain[0]) / (self.m - 1)

    @property
    def y(self) -> np.ndarray:
        return self.domain[0] + self.h * np.arange(self.m)

    @classmethod
    def sample(cls, fn, m: int, period: float = 2 * np.pi, start: float = 0.0) -> "GridWave":
        """Periodic grid of ``m`` points covering [start, start + period)."""
        if m < 3:
            raise GridTooCoarse(f"need at least 3 grid points, got {m}")
        h = period / m
        y = start + h * np.arange(m)
        return cls(np.array([_coeffs(fn(v)) for v in y]), (start, start + period - h), "periodic")


def _coeffs(v) -> np.ndarray:
    if isinstance(v, HNum):
        return v.to_array()
    return np.asarray(v, dtype=float)


@dataclass(frozen=True)
class EnergyValue:
    value: HNum
    classification: str


def hamiltonian_apply(w: GridWave) -> GridWave:
    v = w.values
    if w.boundary == "periodic":
        left, right = np.roll(v, 1, axis=0), np.roll(v, -1, axis=0)
    else:
        pad = np.zeros((1, 4))
        left = np.vstack([pad, v[:-1]])
        right = np.vstack([v[1:], pad])
    out = -0.5 * (left - 2 * v + right) / w.h ** 2
    return GridWave(out, w.domain, w.boundary)


def _max_norm(arr: np.ndarray) -> float:
    return float(np.max(np.linalg.norm(arr, axis=1)))


def eigencheck(w: GridWave, energy) -> float:
    """max_m |H w - E*w| / max_m |w|, products taken in omega."""
    scale = _max_norm(w.values)
    if scale == 0:
        raise ZeroWave("wave is identically zero")
    e = energy.value if isinstance(energy, EnergyValue) else energy
    e = e.to_array() if isinstance(e, HNum) else np.array([float(e), 0.0, 0.0, 0.0])
    ew = mul_array(OMEGA, np.broadcast_to(e, w.values.shape), w.values)
    return _max_norm(hamiltonian_apply(w).values - ew) / scale


def classify_energy(e, tol: float = 1e-10) -> EnergyValue:
    if not isinstance(e, HNum):
        e = HNum(float(e), 0.0, 0.0, 0.0)
    nz = tuple(abs(float(c)) > (0 if e.exact else tol) for c in e.coeffs)
    if not any(nz[1:]):
        cls = "real"
    elif nz == (False, True, False, False):
        cls = "i_imaginary"
    elif nz == (False, False, False, True):
        cls = "k_proportional"
    else:
        cls = "mixed"
    return EnergyValue(e, cls)


def dirichlet_matrix(m: int, length: float) -> np.ndarray:
    """Dense finite-difference Hamiltonian on ``m`` interior points of [0, length]."""
    h = length / (m + 1)
    return (np.diag(np.full(m, 1.0 / h ** 2))
            + np.diag(np.full(m - 1, -0.5 / h ** 2), 1)
            + np.diag(np.full(m - 1, -0.5 / h ** 2), -1))


def box_spectrum(levels: int, length: float, m: int) -> list[EnergyValue]:
    """Lowest ``levels`` energies of a particle in a box [0, length].

    Exact continuum values are n^2 pi^2 / (2 length^2).
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    if m < 8 * levels:
        raise GridTooCoarse(f"m={m} is too coarse for {levels} levels (need >= {8 * levels})")
    h = length / (m + 1)
    diag = np.full(m, 1.0 / h ** 2)
    off = np.full(m - 1, -0.5 / h ** 2)
    vals = eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, levels - 1))
    return [classify_energy(HNum(float(v), 0.0, 0.0, 0.0)) for v in vals]


def write_spectrum_csv(path, energies: list[EnergyValue]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["level", "a", "b", "c", "d", "classification"])
        for n, ev in enumerate(energies, 1):
            w.writerow([n] + [repr(float(c)) for c in ev.value.coeffs] + [ev.classification])
