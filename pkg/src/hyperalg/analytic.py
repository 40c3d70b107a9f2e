"""Power series over table-defined algebras, the phi-wave and the coupling identity.

In omega the exponential of a phi element has the closed form

    exp(j*y) = (1 - k) + k*cos(y) + j*sin(y)

so ``k * exp(j*y) = k*cos(y) + j*sin(y)`` stays inside span(j, k).  Because
``k*i = j`` in omega, ``k * exp(i*y)`` is the same function.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import OMEGA, Algebra, HNum, mul

I_F = HNum(0.0, 1.0, 0.0, 0.0)
J_F = HNum(0.0, 0.0, 1.0, 0.0)
K_F = HNum(0.0, 0.0, 0.0, 1.0)
ONE_F = HNum(1.0, 0.0, 0.0, 0.0)


class NoConvergence(ArithmeticError):
    pass


@dataclass(frozen=True)
class SeriesConfig:
    tol: float = 1e-13
    max_terms: int = 200

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


DEFAULT_SERIES = SeriesConfig()


def power(alg: Algebra, x: HNum, n: int) -> HNum:
    """x**n by square-and-multiply; n <= 2 only for non-associative tables."""
    if n < 0:
        raise ValueError("negative powers are not supported; use invert()")
    if n > 2 and not alg.properties.associative:
        raise ValueError(f"x**{n} is ambiguous in the non-associative algebra {alg.name!r}")
    result = HNum.basis(0, exact=x.exact)
    base = x
    while n:
        if n & 1:
            result = mul(alg, result, base)
        n >>= 1
        if n:
            base = mul(alg, base, base)
    return result


def _series(alg, x, cfg, first, step):
    """Sum first + t1 + t2 + ... where t_n = step(t_{n-1}, n)."""
    total = first
    term = first
    for n in range(1, cfg.max_terms + 1):
        term = step(term, n)
        total = total + term
        if term.norm() < cfg.tol:
            return total
    raise NoConvergence(f"series did not reach tol={cfg.tol} within {cfg.max_terms} terms")


def exp(alg: Algebra, x: HNum, cfg: SeriesConfig = DEFAULT_SERIES) -> HNum:
    """Taylor series; associative tables use scaling and squaring when |x| > 1.

    The direct series cancels catastrophically for large arguments
    (terms near y**n/n! for |y| ~ 4*pi reach 1e5 before shrinking).
    """
    x = x.to_float()
    steps = 0
    if x.norm() > 1 and alg.properties.associative:
        steps = math.ceil(math.log2(x.norm()))
        x = x / 2 ** steps
        cfg = SeriesConfig(cfg.tol / 2 ** (steps + 2), cfg.max_terms)
    result = _series(alg, x, cfg, ONE_F, lambda t, n: mul(alg, t, x) / n)
    for _ in range(steps):
        result = mul(alg, result, result)
    return result


def cos(alg: Algebra, x: HNum, cfg: SeriesConfig = DEFAULT_SERIES) -> HNum:
    x = x.to_float()
    x2 = mul(alg, x, x)
    return _series(alg, x, cfg, ONE_F, lambda t, n: -mul(alg, t, x2) / ((2 * n - 1) * (2 * n)))


def sin(alg: Algebra, x: HNum, cfg: SeriesConfig = DEFAULT_SERIES) -> HNum:
    x = x.to_float()
    x2 = mul(alg, x, x)
    return _series(alg, x, cfg, x, lambda t, n: -mul(alg, t, x2) / ((2 * n) * (2 * n + 1)))


def phi_wave(y: float, reading: str = "j", cfg: SeriesConfig = DEFAULT_SERIES) -> HNum:
    """q(y) = k * exp(j*y) in omega.

    ``reading="i"`` evaluates the alternative k * exp(i*y); in omega the two
    coincide since k*i = j.
    """
    unit = {"j": J_F, "i": I_F}[reading]
    return mul(OMEGA, K_F, exp(OMEGA, unit * float(y), cfg))


def phi_wave_closed(y: float) -> HNum:
    return HNum(0.0, 0.0, math.sin(y), math.cos(y))


def verify_coupling_identity(x: float, y: float, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """Residual norm of exp(i*x) * q(y) - q(x + y) in omega."""
    lhs = mul(OMEGA, exp(OMEGA, I_F * float(x), cfg), phi_wave(y, cfg=cfg))
    return (lhs - phi_wave(x + y, cfg=cfg)).norm()


def printed_coupling_residual(x: float, y: float, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """Residual of the literal form exp(i*x) * k*exp(i*y) = k*exp(j*(x + i*y)).

    Kept for comparison with :func:`verify_coupling_identity`; this reading
    does not hold in general.
    """
    lhs = mul(OMEGA, exp(OMEGA, I_F * float(x), cfg), phi_wave(y, reading="i", cfg=cfg))
    arg = mul(OMEGA, J_F, HNum(float(x), float(y), 0.0, 0.0))
    rhs = mul(OMEGA, K_F, exp(OMEGA, arg, cfg))
    return (lhs - rhs).norm()
