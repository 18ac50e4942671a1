"""Stochastic simulation of a partitioned network with passive latent nodes."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidArgumentError, NumericOverflowError
from .netgen import PartitionedNetwork, stability_report

RNG_ALGORITHM = "numpy.random.Generator(PCG64).standard_normal[ziggurat]"
OVERFLOW_LIMIT = 1e100
_CHUNK = 4096


@dataclass(frozen=True)
class TimeSeriesData:
    """Manifest record ``y(1..N)`` with an optional input record.

    ``outputs[:, j]`` is ``y(j+1)`` and ``inputs[:, j]`` is ``u_m(j)``, so
    input column ``j`` drives output column ``j+1``.
    """

    outputs: np.ndarray
    inputs: Optional[np.ndarray] = None
    seed: Optional[int] = None
    dt_label: Optional[str] = None
    rng: Optional[str] = None

    def __post_init__(self):
        y = np.array(self.outputs, dtype=float)
        if y.ndim == 1:
            y = y[None, :]
        if y.ndim != 2 or y.shape[1] < 1:
            raise InvalidArgumentError(f"outputs must be n_m x N with N >= 1, got {y.shape}")
        if not np.all(np.isfinite(y)):
            raise InvalidArgumentError("outputs contain non-finite values")
        y.setflags(write=False)
        object.__setattr__(self, "outputs", y)
        if self.inputs is not None:
            u = np.array(self.inputs, dtype=float)
            if u.ndim == 1:
                u = u[None, :]
            if u.shape != y.shape:
                raise InvalidArgumentError(f"inputs shape {u.shape} != outputs shape {y.shape}")
            if not np.all(np.isfinite(u)):
                raise InvalidArgumentError("inputs contain non-finite values")
            u.setflags(write=False)
            object.__setattr__(self, "inputs", u)

    @property
    def n_m(self) -> int:
        return self.outputs.shape[0]

    @property
    def N(self) -> int:
        return self.outputs.shape[1]

    def split(self, fraction: float):
        """Leading ``fraction`` of samples and the remainder, as two records."""
        if not 0 < fraction < 1:
            raise InvalidArgumentError("split fraction must lie in (0, 1)")
        cut = int(round(fraction * self.N))
        if cut < 1 or cut >= self.N:
            raise InvalidArgumentError(f"split at {fraction} leaves an empty part of N={self.N}")

        def part(sl):
            u = None if self.inputs is None else self.inputs[:, sl]
            return TimeSeriesData(self.outputs[:, sl], u, self.seed, self.dt_label, self.rng)

        return part(slice(0, cut)), part(slice(cut, None))


def gaussian_input(n_m: int, N: int, seed: Optional[int]) -> np.ndarray:
    """i.i.d. standard normal input, shape ``(n_m, N)``.

    Samples are drawn time-major, so a shorter record with the same seed is
    a prefix of a longer one.
    """
    if n_m < 1 or N < 1:
        raise InvalidArgumentError("n_m and N must be positive")
    rng = np.random.default_rng(seed)
    return rng.standard_normal((N, n_m)).T


def _run(a, n_m, x, u_tm, out, start, stop):
    for k in range(start, stop):
        x = a @ x
        x[:n_m] += u_tm[k]
        out[k] = x[:n_m]
    return x


def simulate(net: PartitionedNetwork, N: int, seed: Optional[int] = None, x0=None,
             inputs=None, burn_in: int = 0) -> TimeSeriesData:
    """Iterate ``x(k+1) = A x(k) + [u_m(k); 0]`` and record ``y(k) = x_m(k)``.

    ``x0`` is a full state in partitioned (manifest-first) order and defaults
    to zero.  ``inputs`` overrides the Gaussian draw and must have
    ``N + burn_in`` columns.  The first ``burn_in`` samples are discarded.
    """
    if N < 1 or burn_in < 0:
        raise InvalidArgumentError("need N >= 1 and burn_in >= 0")
    report = stability_report(net)
    if not report.stable:
        warnings.warn(f"simulating an unstable network: {report}", RuntimeWarning, stacklevel=2)

    total = N + burn_in
    n_m = net.n_m
    if inputs is None:
        u = gaussian_input(n_m, total, seed)
    else:
        u = np.asarray(inputs, dtype=float)
        if u.shape != (n_m, total):
            raise InvalidArgumentError(f"inputs must have shape {(n_m, total)}, got {u.shape}")
    x = np.zeros(net.n) if x0 is None else np.array(x0, dtype=float)
    if x.shape != (net.n,):
        raise InvalidArgumentError(f"x0 must have length {net.n}")

    a = net.full_matrix()
    u_tm = np.ascontiguousarray(u.T)
    out = np.empty((total, n_m))
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        x_start = x.copy()
        x = _run(a, n_m, x, u_tm, out, start, stop)
        if not (np.all(np.abs(out[start:stop]) <= OVERFLOW_LIMIT)
                and np.all(np.abs(x) <= OVERFLOW_LIMIT)):
            _locate_overflow(a, n_m, x_start, u_tm, start, stop)

    keep = slice(burn_in, None)
    return TimeSeriesData(out[keep].T, u[:, keep], seed=seed, rng=RNG_ALGORITHM)


def _locate_overflow(a, n_m, x, u_tm, start, stop):
    for k in range(start, stop):
        x = a @ x
        x[:n_m] += u_tm[k]
        if not np.all(np.abs(x) <= OVERFLOW_LIMIT):
            raise NumericOverflowError(
                f"state left the finite range at step {k + 1} (|x| > {OVERFLOW_LIMIT:g})",
                step=k + 1)
    raise NumericOverflowError(f"state left the finite range within steps {start + 1}..{stop}",
                               step=start + 1)
