"""Seeded sweeps: LSAR error surfaces and optimal-AR bound tables."""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidArgumentError
from .lsar import RegularizationConfig, lsar_fit, lsar_fit_regularized
from .netgen import PartitionedNetwork
from .simulate import simulate
from .spectral import (DEFAULT_GRID, ar_tf, hinf_distance, manifest_tf, optimal_ar,
                       theory_bound)

SURFACE_HEADER = ("N", "tau", "seed", "hinf_error", "coeff_error", "error")
BOUND_HEADER = ("tau", "optimal_error", "gamma", "bound")


def cell_seed(seed: int, N: int, tau: int) -> int:
    """Per-cell simulation seed, independent of execution order."""
    return int(np.random.SeedSequence([seed, N, tau]).generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class SurfaceRow:
    N: int
    tau: int
    seed: int
    hinf_error: Optional[float]
    coeff_error: Optional[float]
    error: Optional[str] = None

    def as_tuple(self):
        return (self.N, self.tau, self.seed, self.hinf_error, self.coeff_error, self.error)


def _cell(args) -> SurfaceRow:
    net, N, tau, seed, grid_size, reg = args
    try:
        data = simulate(net, N, seed=cell_seed(seed, N, tau))
        fit = lsar_fit(data, tau) if reg is None else lsar_fit_regularized(data, tau, reg)
        herr = hinf_distance(ar_tf(fit), manifest_tf(net), grid_size)
        cerr = float(np.max(np.abs(fit.stacked() - optimal_ar(net, tau).stacked())))
        return SurfaceRow(N, tau, seed, herr, cerr)
    except (ArithmeticError, ValueError) as exc:
        return SurfaceRow(N, tau, seed, None, None, f"{type(exc).__name__}: {exc}")


def error_surface(net: PartitionedNetwork, N_list: Sequence[int], tau_list: Sequence[int],
                  seeds: Sequence[int], grid_size: int = DEFAULT_GRID,
                  reg: Optional[RegularizationConfig] = None, jobs: int = 1) -> list:
    """Simulate, fit and score every ``(N, tau, seed)`` cell; rows sorted by that key.

    Cells that fail numerically are returned with ``error`` set instead of
    aborting the sweep.
    """
    if not (N_list and tau_list and seeds):
        raise InvalidArgumentError("N_list, tau_list and seeds must be nonempty")
    if min(N_list) <= max(tau_list):
        raise InvalidArgumentError("every N must exceed every tau")
    cells = [(net, N, tau, seed, grid_size, reg)
             for N, tau, seed in itertools.product(sorted(set(N_list)), sorted(set(tau_list)),
                                                   sorted(set(seeds)))]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_cell, cells))
    else:
        rows = [_cell(c) for c in cells]
    return sorted(rows, key=lambda r: (r.N, r.tau, r.seed))


def bound_table(net: PartitionedNetwork, tau_max: int = 20, rho_bar: Optional[float] = None,
                grid_size: int = DEFAULT_GRID) -> list:
    """Rows ``(tau, optimal_error, gamma, bound)`` for tau = 1..tau_max."""
    bounds = theory_bound(net, rho_bar, tau_max, grid_size)
    truth = manifest_tf(net)
    rows = []
    for tau in range(1, tau_max + 1):
        err = hinf_distance(ar_tf(optimal_ar(net, tau)), truth, grid_size)
        rows.append((tau, err, bounds.gamma_tau[tau], bounds.bound_tau[tau]))
    return rows
