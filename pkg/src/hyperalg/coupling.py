"""Monte-Carlo model of phi-phase drift shifting psi interference statistics.

A phi wave drifting from q(y) to q(y + delta) corresponds, through
exp(i*x) * q(y) = q(x + y), to a psi phase factor exp(i*delta').  That
factor multiplies one arm of a two-path amplitude

    a = (exp(i*theta1) + exp(i*(theta2 + delta'))) / 2

and the detection probability is |a|^2.  This is a model of the algebra,
nothing more.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, replace

import numpy as np
from scipy import stats

from .algebra import OMEGA, HNum, conjugate, mul
from .analytic import I_F, exp, phi_wave
from .spectral import iso_map


# |1 + exp(i*pi)|^2 / 4 evaluates to ~1e-32, not 0; treat that as degenerate too
DEGENERATE_TOL = 1e-12


class DegenerateExpectation(ArithmeticError):
    """Null probability is 0 or 1, so the chi-square statistic is undefined."""

    def __init__(self, message, counts=None):
        super().__init__(message)
        self.counts = counts


@dataclass(frozen=True)
class CouplingConfig:
    delta: float = 0.0
    base_phases: tuple[float, float] = (0.0, 0.0)
    samples: int = 10_000
    rng_seed: int = 0

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")


@dataclass(frozen=True)
class ExperimentResult:
    counts: tuple[int, int]          # (outcome 0, outcome 1); outcome 1 has probability p
    expected_probability: float
    null_probability: float
    chi_square: float
    p_value: float
    config: CouplingConfig

    def to_dict(self) -> dict:
        out = asdict(self)
        out["counts"] = list(self.counts)
        out["config"]["base_phases"] = list(self.config.base_phases)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)


def psi_factor(delta: float) -> HNum:
    """psi phase factor induced by a phi drift of ``delta``.

    q(delta) * conj_phi(q(0)) is the unit phi element k*cos + j*sin; mapped
    back to psi it is exp(i*delta').
    """
    q0, q1 = phi_wave(0.0), phi_wave(delta)
    return iso_map(mul(OMEGA, q1, conjugate(OMEGA, q0, "phi")), "phi_to_psi")


def phase_shift(delta: float) -> float:
    z = psi_factor(delta)
    return math.atan2(z[1], z[0])


def modulated_probability(cfg: CouplingConfig) -> float:
    theta1, theta2 = cfg.base_phases
    arm1 = exp(OMEGA, I_F * theta1)
    arm2 = mul(OMEGA, exp(OMEGA, I_F * theta2), psi_factor(cfg.delta))
    amp = (arm1 + arm2) * 0.5
    p = mul(OMEGA, amp, conjugate(OMEGA, amp, "psi"))[0]
    return min(1.0, max(0.0, p))


def _draw(cfg: CouplingConfig, p: float) -> tuple[int, int]:
    rng = np.random.default_rng(cfg.rng_seed)
    hits = int(np.count_nonzero(rng.random(cfg.samples) < p))
    return cfg.samples - hits, hits


def run_experiment(cfg: CouplingConfig) -> ExperimentResult:
    """Seeded Bernoulli draws at the modulated probability, tested against delta = 0."""
    p = modulated_probability(cfg)
    p0 = modulated_probability(replace(cfg, delta=0.0))
    counts = _draw(cfg, p)
    if p0 <= DEGENERATE_TOL or p0 >= 1.0 - DEGENERATE_TOL:
        raise DegenerateExpectation(f"null probability {p0} leaves chi-square undefined", counts)
    expected = (cfg.samples * (1 - p0), cfg.samples * p0)
    chi2 = sum((o - e) ** 2 / e for o, e in zip(counts, expected))
    return ExperimentResult(
        counts=counts,
        expected_probability=p,
        null_probability=p0,
        chi_square=float(chi2),
        p_value=float(stats.chi2.sf(chi2, df=1)),
        config=cfg,
    )


def batch_counts(cfg: CouplingConfig, batches: int) -> list[tuple[int, int]]:
    """Split one seeded run into ``batches`` consecutive blocks of counts."""
    rng = np.random.default_rng(cfg.rng_seed)
    hits = rng.random(cfg.samples) < modulated_probability(cfg)
    return [(len(b) - int(b.sum()), int(b.sum())) for b in np.array_split(hits, batches)]


def write_batches_csv(path, rows: list[tuple[int, int]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["batch", "outcome0", "outcome1"])
        for n, (c0, c1) in enumerate(rows):
            w.writerow([n, c0, c1])
