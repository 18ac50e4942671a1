"""Transfer functions, H-infinity norms and the optimal AR sequence.

All frequency responses are evaluated on the unit circle, ``z = exp(j w)``
with ``w`` in ``[-pi, pi]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Callable, Optional

import numpy as np

from .errors import InvalidArgumentError, SingularityError
from .netgen import PartitionedNetwork, spectral_radius

if TYPE_CHECKING:
    from .lsar import RegularizationConfig

DEFAULT_GRID = 4096
SINGULAR_COND = 1e14
KAPPA_MIN_HORIZON = 200
_KAPPA_MAX_HORIZON = 200_000
_INV_GOLDEN = (math.sqrt(5) - 1) / 2


class Provenance(str, Enum):
    OPTIMAL = "optimal-from-network"
    LSAR = "lsar"
    LSAR_REGULARIZED = "lsar-regularized"


@dataclass(frozen=True)
class ARModel:
    """Coefficient blocks ``mats[i]`` multiplying ``x_m(k-i)`` in the prediction of ``x_m(k+1)``."""

    mats: tuple
    provenance: Provenance = Provenance.LSAR
    reg: Optional["RegularizationConfig"] = None
    labels: tuple = ()
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        mats = tuple(np.array(m, dtype=float, ndmin=2) for m in self.mats)
        if not mats:
            raise InvalidArgumentError("an AR model needs at least one coefficient block")
        n_m = mats[0].shape[0]
        for m in mats:
            if m.shape != (n_m, n_m):
                raise InvalidArgumentError("AR blocks must be square and of equal size")
            m.setflags(write=False)
        object.__setattr__(self, "mats", mats)
        object.__setattr__(self, "provenance", Provenance(self.provenance))
        labels = tuple(self.labels) or tuple(range(1, n_m + 1))
        if len(labels) != n_m:
            raise InvalidArgumentError("one label per manifest node is required")
        object.__setattr__(self, "labels", labels)

    @property
    def order(self) -> int:
        return len(self.mats)

    @property
    def n_m(self) -> int:
        return self.mats[0].shape[0]

    def stacked(self) -> np.ndarray:
        """``[A_0 A_1 ... A_{tau-1}]`` as one ``n_m x n_m*tau`` matrix."""
        return np.hstack(self.mats)

    def block_norms(self) -> list:
        return [float(np.linalg.norm(m, 2)) for m in self.mats]


def _as_omegas(omega):
    w = np.asarray(omega, dtype=float)
    return w.reshape(-1), w.ndim == 0


def _check_conditioning(mats, omegas, what):
    sv = np.linalg.svd(mats, compute_uv=False)
    smin = sv[:, -1]
    bad = ~(smin > sv[:, 0] / SINGULAR_COND)
    if np.any(bad):
        w = float(omegas[np.argmax(bad)])
        raise SingularityError(f"{what} is singular at omega = {w:.12g}", omega=w)
    return sv


class TransferFn:
    """Frequency response from manifest inputs to manifest states.

    Built either from a partitioned network or from an AR model; only the
    inverse response is formed directly, the response itself is obtained
    by solving against it.
    """

    def __init__(self, source):
        if isinstance(source, PartitionedNetwork):
            self.kind = "partitioned-state"
        elif isinstance(source, ARModel):
            self.kind = "ar"
        else:
            raise InvalidArgumentError(f"cannot build a transfer function from {type(source)!r}")
        self.source = source

    @property
    def n_m(self) -> int:
        return self.source.n_m

    def inverse(self, omega) -> np.ndarray:
        """``T(w)^{-1}``; stacked ``(G, n_m, n_m)`` for an array of frequencies."""
        w, scalar = _as_omegas(omega)
        z = np.exp(1j * w)[:, None, None]
        eye = np.eye(self.n_m)
        if self.kind == "ar":
            tinv = z * eye - sum(z ** (-i) * m for i, m in enumerate(self.source.mats))
        else:
            net = self.source
            tinv = z * eye - net.a11
            if net.n_l:
                inner = z * np.eye(net.n_l) - net.a22
                _check_conditioning(inner, w, "zI - A22")
                rhs = np.broadcast_to(net.a21.astype(complex), (w.size,) + net.a21.shape)
                tinv = tinv - net.a12 @ np.linalg.solve(inner, rhs)
        tinv = np.broadcast_to(tinv, (w.size, self.n_m, self.n_m))
        return tinv[0] if scalar else tinv

    def __call__(self, omega) -> np.ndarray:
        w, scalar = _as_omegas(omega)
        tinv = self.inverse(w)
        _check_conditioning(tinv, w, "T^-1")
        t = np.linalg.inv(tinv)
        return t[0] if scalar else t

    def sigma_max(self, omega) -> np.ndarray:
        """Largest singular value of ``T(w)``, via the smallest one of ``T(w)^{-1}``."""
        w, scalar = _as_omegas(omega)
        sv = _check_conditioning(self.inverse(w), w, "T^-1")
        out = 1.0 / sv[:, -1]
        return out[0] if scalar else out


def manifest_tf(net: PartitionedNetwork) -> TransferFn:
    return TransferFn(net)


def ar_tf(model: ARModel) -> TransferFn:
    return TransferFn(model)


def frequency_grid(grid_size: int) -> np.ndarray:
    """Uniform periodic grid on [-pi, pi); doubling the size nests the grids."""
    if grid_size < 2:
        raise InvalidArgumentError("grid_size must be at least 2")
    return -np.pi + 2 * np.pi * np.arange(grid_size) / grid_size


def _golden_max(f: Callable[[float], float], a: float, b: float, xtol: float) -> float:
    c = b - _INV_GOLDEN * (b - a)
    d = a + _INV_GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    best = max(fc, fd)
    while b - a > xtol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_GOLDEN * (b - a)
            fc = f(c)
            best = max(best, fc)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_GOLDEN * (b - a)
            fd = f(d)
            best = max(best, fd)
    return best


def _sup_on_circle(f: Callable[[np.ndarray], np.ndarray], grid_size: int,
                   n_peaks: int = 3, rtol: float = 1e-6) -> float:
    """Grid maximum of ``f`` refined by golden-section search around the top peaks."""
    w = frequency_grid(grid_size)
    vals = f(w)
    h = 2 * np.pi / grid_size
    is_peak = (vals >= np.roll(vals, 1)) & (vals >= np.roll(vals, -1))
    peaks = np.flatnonzero(is_peak)
    if peaks.size == 0:
        peaks = np.array([int(np.argmax(vals))])
    peaks = peaks[np.argsort(vals[peaks])[::-1][:n_peaks]]
    best = float(np.max(vals))
    for k in peaks:
        best = max(best, _golden_max(lambda x: float(f(np.array([x]))[0]),
                                     w[k] - h, w[k] + h, rtol * h))
    return best


def hinf_norm(t: TransferFn, grid_size: int = DEFAULT_GRID) -> float:
    """``sup_w sigma_max(T(w))``, a lower bound on the true supremum."""
    return _sup_on_circle(t.sigma_max, grid_size)


def hinf_distance(t1: TransferFn, t2: TransferFn, grid_size: int = DEFAULT_GRID) -> float:
    if t1.n_m != t2.n_m:
        raise InvalidArgumentError(f"transfer functions differ in size: {t1.n_m} vs {t2.n_m}")

    def gap(w):
        return np.linalg.norm(t1(w) - t2(w), ord=2, axis=(1, 2))

    return _sup_on_circle(gap, grid_size)


def optimal_ar(net: PartitionedNetwork, tau: int) -> ARModel:
    """``A11`` followed by the latent relays ``A12 A22^(i-1) A21``, i = 1..tau-1."""
    if tau < 1:
        raise InvalidArgumentError("tau must be >= 1")
    mats = [net.a11]
    relay = net.a21
    for _ in range(1, tau):
        mats.append(net.a12 @ relay)
        relay = net.a22 @ relay
    return ARModel(tuple(mats), Provenance.OPTIMAL, labels=net.manifest_labels)


def default_rho_bar(a22) -> float:
    return (spectral_radius(a22) + 1) / 2


def kappa_for(a22, rho_bar: float, horizon: Optional[int] = None) -> float:
    """Smallest constant with ``||a22^i|| <= kappa * rho_bar^i`` up to the horizon.

    Without an explicit horizon the scan runs at least ``max(n_l, 200)``
    steps and then continues until the current ratio falls below 1e-3 of
    the running maximum.
    """
    a22 = np.asarray(a22, dtype=float)
    rho = spectral_radius(a22)
    if not rho < rho_bar < 1:
        raise InvalidArgumentError(f"rho_bar must lie in (rho(A22), 1) = ({rho:.6g}, 1)")
    n_l = a22.shape[0]
    if horizon is not None and horizon < n_l:
        raise InvalidArgumentError("horizon must be at least n_l")
    if n_l == 0:
        return 1.0
    min_horizon = horizon if horizon is not None else max(n_l, KAPPA_MIN_HORIZON)
    max_horizon = horizon if horizon is not None else _KAPPA_MAX_HORIZON
    power = np.eye(n_l)
    kappa = 1.0
    i = 0
    while True:
        i += 1
        power = power @ a22 / rho_bar
        ratio = float(np.linalg.norm(power, 2))
        kappa = max(kappa, ratio)
        if i >= max_horizon:
            break
        if i >= min_horizon and ratio < 1e-3 * kappa:
            break
    return kappa


@dataclass(frozen=True)
class TheoryBounds:
    rho_bar: float
    kappa: float
    gamma_tau: dict
    bound_tau: dict
    hinf_manifest: float = float("nan")


def theory_bound(net: PartitionedNetwork, rho_bar: Optional[float] = None, tau_max: int = 20,
                 grid_size: int = DEFAULT_GRID) -> TheoryBounds:
    """Tabulate ``gamma(tau)`` and ``gamma(tau) * rho_bar^tau`` for tau = 1..tau_max.

    Uses the computed H-infinity norm of each optimal AR model in place of a
    uniform-in-tau constant.
    """
    if rho_bar is None:
        rho_bar = default_rho_bar(net.a22)
    kappa = kappa_for(net.a22, rho_bar)
    t_true = hinf_norm(manifest_tf(net), grid_size)
    a12 = float(np.linalg.norm(net.a12, 2)) if net.a12.size else 0.0
    a21 = float(np.linalg.norm(net.a21, 2)) if net.a21.size else 0.0
    scale = kappa * t_true * a12 * a21 / (rho_bar - rho_bar ** 2)
    gamma, bound = {}, {}
    for tau in range(1, tau_max + 1):
        g = scale * hinf_norm(ar_tf(optimal_ar(net, tau)), grid_size) if scale else 0.0
        gamma[tau] = g
        bound[tau] = g * rho_bar ** tau
    return TheoryBounds(rho_bar, kappa, gamma, bound, t_true)
