"""Least-squares auto-regressive (LSAR) estimation from manifest data."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
import scipy.linalg
from numpy.lib.stride_tricks import sliding_window_view

from .errors import InvalidArgumentError, UndefinedRatioError
from .netgen import PartitionedNetwork
from .simulate import TimeSeriesData
from .spectral import ARModel, Provenance, optimal_ar

ILL_CONDITIONED = 1e14
PINV_RCOND = 1e-12
_CHUNK = 1 << 15


@dataclass(frozen=True)
class RegressionData:
    """Targets ``y_vec`` (n_m x (N-tau)) and regressors ``phi`` (n_m*tau x (N-tau))."""

    y_vec: np.ndarray
    phi: np.ndarray
    tau: int
    n_used: int


@dataclass(frozen=True)
class RegularizationConfig:
    gamma: float = 10.0
    rho0: float = 0.9

    def __post_init__(self):
        if not self.gamma >= 0:
            raise InvalidArgumentError("gamma must be nonnegative")
        if not 0 < self.rho0 <= 1:
            raise InvalidArgumentError("rho0 must lie in (0, 1]")

    def weights(self, tau: int, n_m: int) -> np.ndarray:
        """Diagonal of ``P P^T`` = ``diag(1, rho0^-2, ..., rho0^-2(tau-1)) (x) I``."""
        return np.repeat(self.rho0 ** (-2.0 * np.arange(tau)), n_m)


def _outputs(y) -> np.ndarray:
    return y.outputs if isinstance(y, TimeSeriesData) else np.atleast_2d(np.asarray(y, float))


def _check_order(tau: int, N: int):
    if not 1 <= tau < N:
        raise InvalidArgumentError(f"model order tau={tau} must satisfy 1 <= tau < N={N}")


def _windows(Y: np.ndarray, tau: int, start: int, stop: int):
    """Targets and regressors for regression columns ``start..stop-1``."""
    n_m = Y.shape[0]
    w = sliding_window_view(Y, tau + 1, axis=1)[:, start:stop, :]
    target = w[:, :, tau]
    phi = w[:, :, tau - 1::-1].transpose(2, 0, 1).reshape(n_m * tau, stop - start)
    return target, phi


def build_regression(y, tau: int) -> RegressionData:
    """Materialize the stacked regression; column k of ``phi`` is ``[y(tau+k-1); ...; y(k)]``."""
    Y = _outputs(y)
    N = Y.shape[1]
    _check_order(tau, N)
    target, phi = _windows(Y, tau, 0, N - tau)
    return RegressionData(np.ascontiguousarray(target), np.ascontiguousarray(phi), tau, N)


def normal_equations(y, tau: int, chunk: int = _CHUNK):
    """Accumulate ``Phi Phi^T``, ``ybar Phi^T`` and ``tr(ybar ybar^T)`` chunk by chunk."""
    Y = _outputs(y)
    N = Y.shape[1]
    _check_order(tau, N)
    d = Y.shape[0] * tau
    gram = np.zeros((d, d))
    cross = np.zeros((Y.shape[0], d))
    energy = 0.0
    for start in range(0, N - tau, chunk):
        stop = min(start + chunk, N - tau)
        target, phi = _windows(Y, tau, start, stop)
        gram += phi @ phi.T
        cross += target @ phi.T
        energy += float(np.sum(target * target))
    return gram, cross, energy


def _solve(gram: np.ndarray, cross: np.ndarray, notes: list):
    """``cross @ gram^+``, via Cholesky when well conditioned."""
    eig = np.linalg.eigvalsh(gram)
    top = float(eig[-1]) if eig.size else 0.0
    cond = top / float(eig[0]) if eig[0] > 0 else np.inf
    if cond <= ILL_CONDITIONED:
        try:
            factor = scipy.linalg.cho_factor(gram)
            return scipy.linalg.cho_solve(factor, cross.T).T, cond
        except np.linalg.LinAlgError:
            pass
    if top > 0:
        notes.append(f"normal matrix ill-conditioned (condition {cond:.3g}); "
                     "using the minimum-norm pseudo-inverse solution")
    return cross @ np.linalg.pinv(gram, rcond=PINV_RCOND, hermitian=True), cond


def _fit(y, tau: int, reg: Optional[RegularizationConfig], labels=()) -> ARModel:
    Y = _outputs(y)
    n_m, N = Y.shape
    gram, cross, energy = normal_equations(Y, tau)
    notes = []
    if N - tau < n_m * tau:
        notes.append(f"fewer regression columns ({N - tau}) than parameters per row "
                     f"({n_m * tau}); solution is the minimum-norm one")
    penalty = None
    if reg is not None and reg.gamma > 0:
        penalty = reg.gamma * reg.weights(tau, n_m)
        a_hat, cond = _solve(gram + np.diag(penalty), cross, notes)
    else:
        a_hat, cond = _solve(gram, cross, notes)
    for note in notes:
        warnings.warn(note, RuntimeWarning, stacklevel=3)

    residual = energy - 2 * float(np.sum(a_hat * cross)) + float(np.sum((a_hat @ gram) * a_hat))
    objective = residual
    if penalty is not None:
        objective += float(np.sum(a_hat * a_hat * penalty))
    info = {"condition": cond, "residual_energy": residual, "objective": objective,
            "n_samples": N, "warnings": notes}
    mats = tuple(a_hat[:, i * n_m:(i + 1) * n_m] for i in range(tau))
    provenance = Provenance.LSAR if reg is None else Provenance.LSAR_REGULARIZED
    return ARModel(mats, provenance, reg=reg, labels=labels, info=info)


def lsar_fit(y, tau: int, labels=()) -> ARModel:
    """Least-squares AR fit ``A = ybar Phi^T (Phi Phi^T)^+``."""
    return _fit(y, tau, None, labels)


def lsar_fit_regularized(y, tau: int, reg: RegularizationConfig, labels=()) -> ARModel:
    """Minimize ``tr(e e^T + gamma A P P^T A^T)``; closed form ``ybar Phi^T (Phi Phi^T + gamma P P^T)^-1``."""
    return _fit(y, tau, reg, labels)


def residuals(y, model: ARModel) -> np.ndarray:
    """``e(k) = y(k+1) - sum_i A_i y(k-i)`` for k = tau..N-1, one column each."""
    Y = _outputs(y)
    n_m, N = Y.shape
    tau = model.order
    if model.n_m != n_m:
        raise InvalidArgumentError(f"model has {model.n_m} channels, data has {n_m}")
    _check_order(tau, N)
    e = Y[:, tau:].copy()
    for i, a in enumerate(model.mats):
        e -= a @ Y[:, tau - 1 - i:N - 1 - i]
    return e


def r_squared(model: ARModel, holdout) -> float:
    """``1 - sum ||e(k)||^2 / sum ||y(k)||^2`` over k = tau..N-1 of the holdout record."""
    Y = _outputs(holdout)
    tau = model.order
    e = residuals(Y, model)
    denom = float(np.sum(Y[:, tau - 1:-1] ** 2))
    if denom == 0:
        raise UndefinedRatioError("holdout signal has zero energy; R^2 is undefined")
    return 1.0 - float(np.sum(e ** 2)) / denom


def objective_value(y, stacked: np.ndarray, tau: int,
                    reg: Optional[RegularizationConfig] = None) -> float:
    """Prediction-error objective (plus the exponential penalty when ``reg`` is given)."""
    Y = _outputs(y)
    n_m = Y.shape[0]
    mats = tuple(stacked[:, i * n_m:(i + 1) * n_m] for i in range(tau))
    e = residuals(Y, ARModel(mats))
    value = float(np.sum(e * e))
    if reg is not None:
        value += reg.gamma * float(np.sum(stacked ** 2 * reg.weights(tau, n_m)))
    return value


def empirical_decay_check(y, net: PartitionedNetwork, tau_list: Iterable[int]) -> dict:
    """Max-norm gap between the LSAR fit and the optimal sequence, per order."""
    out = {}
    for tau in tau_list:
        fit = lsar_fit(y, tau)
        out[tau] = float(np.max(np.abs(fit.stacked() - optimal_ar(net, tau).stacked())))
    return out


def fit_report(model: ARModel) -> dict:
    info = dict(model.info)
    report = {
        "tau": model.order,
        "n_m": model.n_m,
        "provenance": model.provenance.value,
        "condition": info.get("condition"),
        "residual_energy": info.get("residual_energy"),
        "objective": info.get("objective"),
        "block_norms": model.block_norms(),
        "warnings": list(info.get("warnings", [])),
    }
    if model.reg is not None:
        report["reg"] = {"gamma": model.reg.gamma, "rho0": model.reg.rho0}
    return report
