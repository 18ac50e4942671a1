"""Manifest transfer-function identification for networks with latent nodes."""

from .connectivity import ManifestGraph, classify, compare_graphs, min_latent_path
from .errors import (DataFormatError, InvalidArgumentError, NumericOverflowError,
                     SingularityError, UndefinedRatioError)
from .lsar import (RegressionData, RegularizationConfig, build_regression,
                   empirical_decay_check, lsar_fit, lsar_fit_regularized, r_squared, residuals)
from .netgen import (HigherOrderNetwork, PartitionedNetwork, StabilityReport, gen_erdos_renyi,
                     gen_ring, latent_acyclicity_index, lift_higher_order, partition,
                     spectral_radius, stability_report)
from .simulate import TimeSeriesData, gaussian_input, simulate
from .spectral import (ARModel, TheoryBounds, TransferFn, ar_tf, hinf_distance, hinf_norm,
                       kappa_for, manifest_tf, optimal_ar, theory_bound)

__version__ = "0.1.0"

__all__ = [
    "ARModel",
    "DataFormatError",
    "HigherOrderNetwork",
    "InvalidArgumentError",
    "ManifestGraph",
    "NumericOverflowError",
    "PartitionedNetwork",
    "RegressionData",
    "RegularizationConfig",
    "SingularityError",
    "StabilityReport",
    "TheoryBounds",
    "TimeSeriesData",
    "TransferFn",
    "UndefinedRatioError",
    "ar_tf",
    "build_regression",
    "classify",
    "compare_graphs",
    "empirical_decay_check",
    "gaussian_input",
    "gen_erdos_renyi",
    "gen_ring",
    "hinf_distance",
    "hinf_norm",
    "kappa_for",
    "latent_acyclicity_index",
    "lift_higher_order",
    "lsar_fit",
    "lsar_fit_regularized",
    "manifest_tf",
    "min_latent_path",
    "optimal_ar",
    "partition",
    "r_squared",
    "residuals",
    "simulate",
    "spectral_radius",
    "stability_report",
    "theory_bound",
]
