"""Direct versus latent-mediated interactions read off AR coefficient blocks.

Block ``A_0`` carries direct manifest-to-manifest edges; a nonzero entry
``(q, p)`` of ``A_i`` with ``i >= 1`` means ``p`` reaches ``q`` through a
latent relay of order ``i``.  When the latent subnetwork is acyclic the
order equals the number of latent nodes on the path; otherwise it is only
a lower bound.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidArgumentError
from .netgen import PartitionedNetwork
from .spectral import ARModel

PROPORTIONAL = "proportional"
ABSOLUTE = "absolute"


@dataclass(frozen=True)
class ManifestGraph:
    n_m: int
    direct: np.ndarray
    indirect_orders: dict
    threshold_used: float
    labels: tuple = ()
    path_order_exact: bool = False
    indirect_threshold: float = field(default=None)

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, self.n_m + 1)))
        if self.indirect_threshold is None:
            object.__setattr__(self, "indirect_threshold", self.threshold_used)

    def min_order(self, q: int, p: int) -> Optional[int]:
        """Smallest relay order from ``p`` to ``q`` (0-based positions), or None."""
        orders = self.indirect_orders.get((q, p))
        return orders[0] if orders else None

    def direct_edges(self):
        """``(src_label, dst_label, weight)`` for every retained direct edge."""
        q, p = np.nonzero(self.direct)
        return [(self.labels[j], self.labels[i], float(self.direct[i, j]))
                for i, j in sorted(zip(q, p), key=lambda t: (t[1], t[0]))]

    def indirect_edges(self):
        """``(src_label, dst_label, orders)`` for every pair with a latent relay."""
        return [(self.labels[p], self.labels[q], orders)
                for (q, p), orders in sorted(self.indirect_orders.items(),
                                             key=lambda kv: (kv[0][1], kv[0][0]))]


def _threshold(model: ARModel, alpha: float, mode: str, exclude_self_loops: bool) -> float:
    if mode == ABSOLUTE:
        return float(alpha)
    blocks = np.abs(np.stack(model.mats))
    if exclude_self_loops:
        blocks = blocks.copy()
        np.fill_diagonal(blocks[0], 0.0)
    return float(alpha) * float(blocks.max())


def classify(model: ARModel, alpha: float = 0.1, mode: str = PROPORTIONAL,
             exclude_self_loops: bool = False, indirect_threshold: Optional[float] = None,
             acyclic_latent: bool = False) -> ManifestGraph:
    """Threshold the AR blocks into direct edges and indirect relay orders.

    In proportional mode ``alpha`` scales the largest coefficient magnitude
    over all blocks (optionally ignoring the self-loops on the diagonal of
    ``A_0``) and the same cutoff is used for every block.  In absolute mode
    ``alpha`` is the cutoff for ``A_0`` only; higher blocks use
    ``indirect_threshold``, which defaults to keeping every nonzero entry.
    """
    if not model.mats:
        raise InvalidArgumentError("empty model")
    if mode not in (PROPORTIONAL, ABSOLUTE):
        raise InvalidArgumentError(f"unknown threshold mode {mode!r}")
    if mode == PROPORTIONAL and not 0 <= alpha <= 1:
        raise InvalidArgumentError("alpha must lie in [0, 1]")
    if alpha < 0:
        raise InvalidArgumentError("threshold must be nonnegative")

    theta = _threshold(model, alpha, mode, exclude_self_loops)
    if indirect_threshold is None:
        indirect_threshold = theta if mode == PROPORTIONAL else 0.0

    def keep(block, cut):
        mag = np.abs(block)
        return (mag >= cut) & (mag > 0)

    a0 = model.mats[0]
    direct = np.where(keep(a0, theta), a0, 0.0)
    orders: dict = {}
    for i, block in enumerate(model.mats[1:], start=1):
        for q, p in zip(*np.nonzero(keep(block, indirect_threshold))):
            orders.setdefault((int(q), int(p)), []).append(i)
    orders = {k: tuple(v) for k, v in orders.items()}
    return ManifestGraph(model.n_m, direct, orders, theta, model.labels, acyclic_latent,
                         indirect_threshold)


def min_latent_path(model: ARModel, p, q, alpha: float = 0.0,
                    mode: str = PROPORTIONAL) -> Optional[int]:
    """Smallest relay order from node ``p`` to node ``q`` (given as node labels).

    This is the number of latent nodes on a connecting path only if the
    latent subnetwork is acyclic; in general it is a lower bound.
    """
    labels = list(model.labels)
    if p == q:
        raise InvalidArgumentError("p and q must differ")
    try:
        pi, qi = labels.index(p), labels.index(q)
    except ValueError:
        raise InvalidArgumentError(f"nodes {p}, {q} are not both manifest labels {labels}") from None
    return classify(model, alpha, mode).min_order(qi, pi)


def true_indirect_support(net: PartitionedNetwork) -> np.ndarray:
    """Boolean ``(q, p)`` reachability from ``p`` to ``q`` through at least one latent node."""
    n_m, n_l = net.n_m, net.n_l
    if n_l == 0:
        return np.zeros((n_m, n_m), dtype=bool)
    a21 = np.abs(net.a21) > 0
    a22 = (np.abs(net.a22) > 0).astype(int)
    reach = a21.astype(int)
    seen = reach > 0
    for _ in range(n_l):
        reach = ((a22 @ reach) > 0).astype(int)
        seen |= reach > 0
    return ((np.abs(net.a12) > 0).astype(int) @ seen.astype(int)) > 0


@dataclass(frozen=True)
class GraphScore:
    direct_precision: float
    direct_recall: float
    indirect_precision: float
    indirect_recall: float

    @staticmethod
    def _f1(p, r):
        return 0.0 if p + r == 0 else 2 * p * r / (p + r)

    @property
    def direct_f1(self) -> float:
        return self._f1(self.direct_precision, self.direct_recall)

    @property
    def indirect_f1(self) -> float:
        return self._f1(self.indirect_precision, self.indirect_recall)


def _precision_recall(est: np.ndarray, truth: np.ndarray):
    tp = int(np.sum(est & truth))
    n_est, n_true = int(est.sum()), int(truth.sum())
    precision = 1.0 if n_est == 0 else tp / n_est
    recall = 1.0 if n_true == 0 else tp / n_true
    return precision, recall


def compare_graphs(estimated: ManifestGraph, truth: PartitionedNetwork) -> GraphScore:
    """Precision and recall of direct and indirect detections against a known network.

    An empty detection set has precision 1 by convention.
    """
    if estimated.n_m != truth.n_m:
        raise InvalidArgumentError(f"graph has {estimated.n_m} nodes, network has {truth.n_m}")
    est_direct = estimated.direct != 0
    est_indirect = np.zeros_like(est_direct)
    for (q, p) in estimated.indirect_orders:
        est_indirect[q, p] = True
    dp, dr = _precision_recall(est_direct, truth.a11 != 0)
    ip, ir = _precision_recall(est_indirect, true_indirect_support(truth))
    return GraphScore(dp, dr, ip, ir)
