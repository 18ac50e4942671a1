"""Exponentially weighted ridge penalty for high-order AR fits.

Distant lags of the true AR sequence shrink geometrically, so it makes
sense to penalize them harder: the weight on lag i is gamma * rho0^(-2i).
On a short record the plain fit spreads noise across all fifteen lags.
"""
# %%
import numpy as np

from latentid import (RegularizationConfig, gen_ring, lsar_fit, lsar_fit_regularized,
                      optimal_ar, r_squared, simulate)

net = gen_ring(40, 0.25, 0.25, [5, 23, 33, 34, 36])
train, holdout = simulate(net, 2_500, seed=3).split(0.8)
tau = 15
truth = optimal_ar(net, tau).stacked()

# %%
print(f"{'gamma':>7} {'tail norm':>10} {'coef gap':>10} {'holdout R^2':>12}")
for gamma in (0.0, 10.0, 100.0, 1000.0, 1e4, 1e5):
    fit = (lsar_fit(train, tau) if gamma == 0 else
           lsar_fit_regularized(train, tau, RegularizationConfig(gamma, rho0=0.9)))
    tail = float(np.sum(fit.block_norms()[5:]))
    gap = float(np.max(np.abs(fit.stacked() - truth)))
    print(f"{gamma:7g} {tail:10.4f} {gap:10.4f} {r_squared(fit, holdout):12.4f}")

# %% [markdown]
# "tail norm" sums the spectral norms of lags 5..14, which are essentially
# zero in the optimal sequence. Raising gamma pulls them toward zero and
# the coefficient gap and holdout fit improve, until the penalty starts
# biting into the informative early lags as well.
