"""Discrete Fourier transforms over the psi and phi subalgebras of omega.

The phi kernel is built from phi's own complex structure (unity k,
imaginary j): K(t) = k*cos(2*pi*t/N) + j*sin(2*pi*t/N).  Products with the
kernel go through omega's multiplication table, never through the
isomorphism, so ``iso_map`` gives an independent cross-check.

Signals are float arrays of shape (N, 4) holding (a, b, c, d) coefficients;
sequences of :class:`HNum` are accepted everywhere.
"""
from __future__ import annotations

import csv
import math
from typing import Iterable, Sequence

import numpy as np

from .algebra import OMEGA, HNum, conjugate, mul, mul_array

KINDS = ("phi", "psi", "omega")
_SUPPORT = {"phi": (2, 3), "psi": (0, 1)}
_PAIRWISE_ABOVE = 1024


class MalformedSignal(ValueError):
    pass


def as_array(signal) -> np.ndarray:
    if isinstance(signal, np.ndarray):
        arr = np.asarray(signal, dtype=float)
    else:
        arr = np.array([h.to_array() if isinstance(h, HNum) else h for h in signal], dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 4 or arr.shape[0] < 1:
        raise MalformedSignal(f"expected shape (N, 4) with N >= 1, got {arr.shape}")
    return arr


def to_hnums(arr: np.ndarray) -> list[HNum]:
    return [HNum(*map(float, row)) for row in arr]


def check_support(arr: np.ndarray, kind: str) -> None:
    if kind == "omega":
        return
    outside = [c for c in range(4) if c not in _SUPPORT[kind]]
    bad = np.flatnonzero(np.any(arr[:, outside] != 0, axis=1))
    if bad.size:
        raise MalformedSignal(f"sample {bad[0]} has components outside the {kind} subalgebra")


def kernel(kind: str, t: np.ndarray, n: int) -> np.ndarray:
    """Kernel values K(t) as an array (..., 4)."""
    theta = 2 * np.pi * np.asarray(t, dtype=float) / n
    out = np.zeros(theta.shape + (4,))
    if kind == "phi":
        out[..., 3] = np.cos(theta)
        out[..., 2] = np.sin(theta)
    elif kind in ("psi", "omega"):
        out[..., 0] = np.cos(theta)
        out[..., 1] = np.sin(theta)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return out


def _sum_axis(terms: np.ndarray, axis: int) -> np.ndarray:
    if terms.shape[axis] <= _PAIRWISE_ABOVE:
        return terms.sum(axis=axis)
    moved = np.moveaxis(terms, axis, -1)
    flat = moved.reshape(-1, moved.shape[-1])
    return np.array([math.fsum(row) for row in flat]).reshape(moved.shape[:-1])


def dft(signal, direction: str = "forward", kind: str = "phi") -> np.ndarray:
    """Reference O(N^2) transform.

    forward: F[n] = sum_m x[m] * K(-m*n)
    inverse: x[m] = (1/N) sum_n F[n] * K(+m*n)

    ``kind="omega"`` transforms unrestricted omega signals with the psi
    kernel exp(i*theta); it is experimental and carries no guarantees.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    x = as_array(signal)
    check_support(x, kind)
    n = x.shape[0]
    idx = np.arange(n)
    sign = {"forward": -1, "inverse": 1}[direction]
    ker = kernel(kind, sign * np.outer(idx, idx) % n, n)   # (out, in, 4)
    terms = mul_array(OMEGA, x[np.newaxis, :, :], ker)      # x[m] * K(...)
    out = _sum_axis(terms, axis=1)
    if direction == "inverse":
        out /= n
    if kind != "omega":
        outside = [c for c in range(4) if c not in _SUPPORT[kind]]
        out[:, outside] = 0.0   # products stay in the subalgebra; clear -0.0 noise
    return out


def iso_map(x, direction: str = "psi_to_phi"):
    """Algebra isomorphism psi -> phi (1 -> k, i -> j) or its inverse.

    Works on one :class:`HNum` or on an (N, 4) array.
    """
    if isinstance(x, HNum):
        return to_hnums(iso_map(as_array([x]), direction))[0] if not x.exact else _iso_exact(x, direction)
    arr = as_array(x)
    out = np.zeros_like(arr)
    if direction == "psi_to_phi":
        check_support(arr, "psi")
        out[:, 3], out[:, 2] = arr[:, 0], arr[:, 1]
    elif direction == "phi_to_psi":
        check_support(arr, "phi")
        out[:, 0], out[:, 1] = arr[:, 3], arr[:, 2]
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return out


def _iso_exact(x: HNum, direction: str) -> HNum:
    a, b, c, d = x.coeffs
    if direction == "psi_to_phi":
        if c or d:
            raise MalformedSignal(f"{x} is not in psi")
        return HNum(0, 0, b, a)
    if a or b:
        raise MalformedSignal(f"{x} is not in phi")
    return HNum(d, c, 0, 0)


def phi_inner(a: HNum, b: HNum) -> float:
    """<a, b>_phi: k-coefficient of a * conj_phi(b)."""
    return float(mul(OMEGA, a, conjugate(OMEGA, b, "phi")).coeffs[3])


def parseval_check(signal) -> tuple[float, float]:
    """(sum_m <x, x>, (1/N) sum_n <F, F>) for a phi signal."""
    x = as_array(signal)
    check_support(x, "phi")
    f = dft(x, "forward", "phi")
    # <a, a>_phi via the table: a * conj_phi(a), k-part
    conj = lambda arr: arr * np.array([1.0, 1.0, -1.0, 1.0])
    lhs = mul_array(OMEGA, x, conj(x))[:, 3].sum()
    rhs = mul_array(OMEGA, f, conj(f))[:, 3].sum() / x.shape[0]
    return float(lhs), float(rhs)


def relative_error(a: np.ndarray, b: np.ndarray) -> float:
    scale = max(np.linalg.norm(b), np.finfo(float).tiny)
    return float(np.linalg.norm(a - b) / scale)


# -- CSV I/O: columns index, a, b, c, d -----------------------------------------

def write_signal_csv(path, arr) -> None:
    arr = as_array(arr)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "a", "b", "c", "d"])
        for i, row in enumerate(arr):
            w.writerow([i] + [repr(float(v)) for v in row])


def read_signal_csv(path) -> np.ndarray:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise MalformedSignal(f"{path}: no samples")
    try:
        rows.sort(key=lambda r: int(r["index"]))
        return np.array([[float(r[c]) for c in "abcd"] for r in rows])
    except (KeyError, ValueError) as exc:
        raise MalformedSignal(f"{path}: expected columns index,a,b,c,d ({exc})") from exc
