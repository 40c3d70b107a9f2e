"""Monte-Carlo model: phi phase drift shifting two-path statistics.

A drift delta of a phi wave transfers to a psi phase through
exp(i*x) * q(y) = q(x + y). That phase multiplies one arm of
a = (exp(i*t1) + exp(i*t2)) / 2 and the outcome probability is |a|^2.
"""
import math

from scipy import stats

from hyperalg.coupling import CouplingConfig, modulated_probability, phase_shift, run_experiment

phases = (0.0, math.pi / 3)
for delta in (0.0, math.pi / 2, math.pi):
    cfg = CouplingConfig(delta=delta, base_phases=phases)
    print(f"delta={delta:.4f}  psi shift {phase_shift(delta):+.4f}  P={modulated_probability(cfg):.4f}")

# One experiment with delta = pi: 0.25 against a null of 0.75
res = run_experiment(CouplingConfig(delta=math.pi, base_phases=phases, samples=10_000, rng_seed=1))
print("\ncounts", res.counts, "chi-square", round(res.chi_square, 1), "p", res.p_value)

# Power over 100 seeds
hits = sum(run_experiment(CouplingConfig(delta=math.pi, base_phases=phases, rng_seed=s)).p_value < 1e-3
           for s in range(100))
print("rejections at alpha=0.001:", hits, "/ 100")

# Calibration: with no drift the p-values should look uniform
pv = [run_experiment(CouplingConfig(delta=0.0, base_phases=phases, rng_seed=s)).p_value for s in range(100)]
ks = stats.kstest(pv, "uniform").statistic
print(f"null KS statistic {ks:.3f} (1% critical value {stats.kstwo.ppf(0.99, 100):.3f})")
